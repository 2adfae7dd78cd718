#pragma once

#include <map>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "proqe/corpus.hpp"
#include "proqe/tokenizer.hpp"

namespace proqe {

struct ScoredDoc {
    std::string doc_id;
    double score{0.0};

    bool operator==(const ScoredDoc&) const = default;
};

/// Bag of weighted terms; weights act as query-term multiplicities and may be
/// fractional. All weights are > 0 and terms are tokenizer-normalized.
struct WeightedQuery {
    std::map<std::string, double> term_weights;
    std::string original_text;

    static WeightedQuery from_text(const std::string& text, const TokenizerConfig& config);
};

using DocIdSet = std::unordered_set<std::string>;

/// Okapi BM25 inverted index. Immutable after build; concurrent searches need
/// no synchronization.
class InvertedIndex {
public:
    struct Params {
        double k1{0.9};
        double b{0.4};
    };

    static InvertedIndex build(const Corpus& corpus, const TokenizerConfig& config,
                               Params params);
    static InvertedIndex build(const Corpus& corpus, const TokenizerConfig& config) {
        return build(corpus, config, Params{});
    }

    const TokenizerConfig& tokenizer_config() const { return config_; }
    const Params& params() const { return params_; }
    std::size_t doc_count() const { return doc_ids_.size(); }
    double avg_doc_length() const { return avg_doc_length_; }
    std::size_t doc_length(const std::string& doc_id) const;
    bool contains(const std::string& doc_id) const { return doc_index_.count(doc_id) > 0; }
    const std::vector<std::string>& doc_ids() const { return doc_ids_; }

    /// Document frequency of an index term.
    std::size_t doc_frequency(const std::string& term) const;
    /// Lucene-style idf: ln(1 + (N - df + 0.5) / (df + 0.5)). Zero for unseen terms.
    double idf(const std::string& term) const;
    /// Term frequency of `term` in `doc_id`; 0 when absent.
    std::size_t term_frequency(const std::string& term, const std::string& doc_id) const;
    /// Tokenized document as sorted (term, tf) pairs.
    const std::vector<std::pair<std::string, std::size_t>>& doc_terms(const std::string& doc_id) const;

    double bm25_score(const WeightedQuery& query, const std::string& doc_id) const;

    /// Top-k by descending score, ties by ascending doc_id; excluded ids never
    /// returned; only documents matching at least one query term appear.
    std::vector<ScoredDoc> search(const WeightedQuery& query, std::size_t k,
                                  const DocIdSet& exclude = {}) const;

    /// Versioned single-file JSON serialization.
    void save(const std::string& path) const;
    static InvertedIndex load(const std::string& path);

private:
    struct Posting {
        std::size_t doc;  // position in doc_ids_
        std::size_t tf;
    };

    TokenizerConfig config_;
    Params params_;
    std::vector<std::string> doc_ids_;                       // ascending
    std::unordered_map<std::string, std::size_t> doc_index_; // doc_id -> position
    std::vector<std::size_t> doc_lengths_;
    std::vector<std::vector<std::pair<std::string, std::size_t>>> doc_terms_;  // sorted by term
    std::unordered_map<std::string, std::vector<Posting>> postings_;           // sorted by doc
    double avg_doc_length_{0.0};

    double score_one(double weight, double idf_val, std::size_t tf, std::size_t doc_len) const;
};

}  // namespace proqe
