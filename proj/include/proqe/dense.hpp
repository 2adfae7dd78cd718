#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "proqe/corpus.hpp"
#include "proqe/sparse_index.hpp"
#include "proqe/term_table.hpp"
#include "proqe/tokenizer.hpp"

namespace proqe {

struct Embedding {
    std::vector<double> values;

    std::size_t dim() const { return values.size(); }
    bool is_zero() const;

    bool operator==(const Embedding&) const = default;
};

double dot(const Embedding& a, const Embedding& b);
double l2_norm(const Embedding& e);
double cosine(const Embedding& a, const Embedding& b);

/// Mixing weights for the dense query combination.
struct DenseParams {
    double sigma{0.8};  // query weight
    double tau{0.2};    // term weight
    double delta{0.2};  // CoT weight
    bool positive_only{false};  // restrict the term sum to weights > 0
};

class TextEncoder {
public:
    virtual ~TextEncoder() = default;
    virtual std::size_t dim() const = 0;
    virtual Embedding encode(const std::string& text) const = 0;
};

/// Deterministic reference encoder: each token is hashed to one of `dim`
/// buckets with a +/-1 sign hash, summed, then L2-normalized. Empty input
/// yields the zero vector (with a warning).
class HashedBowEncoder : public TextEncoder {
public:
    explicit HashedBowEncoder(std::size_t dim = 1024,
                              TokenizerConfig config = TokenizerConfig::no_stopwords());

    std::size_t dim() const override { return dim_; }
    Embedding encode(const std::string& text) const override;

private:
    std::size_t dim_;
    TokenizerConfig config_;
};

/// E_q+ = sigma * E_q + tau * (1/M) * sum_i w(t_i) * E_ti, where M is the
/// total number of table terms and the sum runs over all of them with their
/// signed weights (positive-only when params.positive_only). M = 0 yields
/// sigma * E_q.
Embedding combine_intermediate(const Embedding& query_embedding, const TermWeightTable& table,
                               const TextEncoder& encoder, const DenseParams& params);

/// E_q' = sigma * E_q+ + delta * E_theta_c.
Embedding combine_final(const Embedding& intermediate, const Embedding& cot_embedding,
                        const DenseParams& params);

enum class Similarity { kDot, kCosine };

Similarity similarity_from_string(const std::string& name);
std::string to_string(Similarity s);

/// Exact-scan vector index. Immutable after build.
class VectorIndex {
public:
    VectorIndex(std::size_t dim, Similarity similarity = Similarity::kDot)
        : dim_(dim), similarity_(similarity) {}

    static VectorIndex build(const Corpus& corpus, const TextEncoder& encoder,
                             Similarity similarity = Similarity::kDot);

    void add(const std::string& doc_id, Embedding vec);

    std::size_t dim() const { return dim_; }
    Similarity similarity() const { return similarity_; }
    std::size_t size() const { return order_.size(); }
    const std::vector<std::string>& doc_ids() const { return order_; }
    const Embedding& vector_of(const std::string& doc_id) const;

    double score(const Embedding& query, const std::string& doc_id) const;

    /// Exact top-k by the configured similarity, descending; ties by ascending
    /// doc_id; excluded ids never returned.
    std::vector<ScoredDoc> search(const Embedding& query, std::size_t k,
                                  const DocIdSet& exclude = {}) const;

    /// Text vector file: header `d=<int>`, then `<doc_id> <f1> ... <fd>` lines.
    void save(const std::string& path) const;
    static VectorIndex load(const std::string& path, Similarity similarity = Similarity::kDot);

private:
    std::size_t dim_;
    Similarity similarity_;
    std::vector<std::string> order_;  // ascending doc_id
    std::map<std::string, Embedding> vectors_;
};

}  // namespace proqe
