#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "proqe/dense.hpp"
#include "proqe/sparse_index.hpp"

namespace proqe {

/// Queries accepted by the gateway: weighted terms for sparse retrievers, an
/// embedding for dense ones.
using QueryInput = std::variant<WeightedQuery, Embedding>;

/// Anything the gateway can meter.
class Retriever {
public:
    virtual ~Retriever() = default;
    virtual std::vector<ScoredDoc> search(const QueryInput& query, std::size_t k,
                                          const DocIdSet& exclude) const = 0;
    /// Whether `exclude` is honored natively; when false the gateway
    /// over-fetches and filters.
    virtual bool supports_exclusion() const { return true; }
};

class SparseRetriever : public Retriever {
public:
    explicit SparseRetriever(const InvertedIndex& index) : index_(index) {}
    std::vector<ScoredDoc> search(const QueryInput& query, std::size_t k,
                                  const DocIdSet& exclude) const override;

private:
    const InvertedIndex& index_;
};

class DenseRetriever : public Retriever {
public:
    explicit DenseRetriever(const VectorIndex& index) : index_(index) {}
    std::vector<ScoredDoc> search(const QueryInput& query, std::size_t k,
                                  const DocIdSet& exclude) const override;

private:
    const VectorIndex& index_;
};

/// Per-query state at the metered gateway. charge_accumulated is always
/// unit_cost * |seen|.
struct RetrievalSession {
    std::string query_id;
    DocIdSet seen;
    double charge_accumulated{0.0};
    double unit_cost{0.0};
    bool closed{false};
};

struct CostReport {
    struct PerQuery {
        std::size_t docs_charged{0};
        double charge{0.0};
    };
    std::map<std::string, PerQuery> per_query;
    double total_charge{0.0};
};

std::string to_json(const CostReport& report);

struct RetrievalResult {
    std::vector<ScoredDoc> docs;
    std::size_t newly_charged{0};
};

/// Cost-constrained retrieval API: charges unit_cost per unique new document
/// per session and never re-charges repeats.
class MeteredGateway {
public:
    explicit MeteredGateway(const Retriever& retriever) : retriever_(retriever) {}

    /// One session per query_id per run; a second open is an error.
    RetrievalSession& open_session(const std::string& query_id, double unit_cost);

    RetrievalResult retrieve(RetrievalSession& session, const QueryInput& query, std::size_t k);

    /// Highest-ranked document not yet seen, or nullopt when the retriever is
    /// exhausted. Charges exactly 0 or 1 document.
    std::optional<ScoredDoc> retrieve_top_new(RetrievalSession& session, const QueryInput& query,
                                              std::size_t budget_k);

    void close_session(RetrievalSession& session);

    CostReport ledger_report() const;

private:
    const Retriever& retriever_;
    std::map<std::string, std::unique_ptr<RetrievalSession>> sessions_;
};

}  // namespace proqe
