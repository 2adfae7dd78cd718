#pragma once

#include <map>
#include <string>
#include <vector>

#include "proqe/corpus.hpp"
#include "proqe/sparse_index.hpp"

namespace proqe {

/// TREC run: per query an ordered result list, 1-based ranks consistent with
/// descending score (ties by doc_id).
class RunFile {
public:
    struct Entry {
        std::string doc_id;
        double score{0.0};
        std::size_t rank{0};
    };

    explicit RunFile(std::string tag = "proqe") : tag_(std::move(tag)) {}

    /// Appends a query's ranked results; `hits` must already be sorted.
    void add_query(const std::string& query_id, const std::vector<ScoredDoc>& hits);

    const std::string& tag() const { return tag_; }
    const std::map<std::string, std::vector<Entry>>& queries() const { return queries_; }
    const std::vector<Entry>* results_for(const std::string& query_id) const;

    /// TREC 6-column format: <query_id> Q0 <doc_id> <rank> <score> <tag>.
    std::string to_trec() const;
    void save(const std::string& path) const;
    static RunFile parse(const std::string& path);

private:
    std::string tag_;
    std::map<std::string, std::vector<Entry>> queries_;
};

struct MetricsReport {
    double mrr{0.0};
    std::map<std::size_t, double> recall_at_k;
    struct PerQuery {
        double reciprocal_rank{0.0};
        std::map<std::size_t, bool> hit_at_k;
    };
    std::map<std::string, PerQuery> per_query;
    std::size_t n_queries{0};  // queries entering the MRR mean

    std::string to_json() const;
};

/// Mean over judged queries of 1/rank of the first relevant document within
/// the top-k (0 when none). Judged queries missing from the run score 0;
/// queries without any judgment are excluded.
double mrr(const RunFile& run, const QrelSet& qrels, std::size_t cutoff_k);

/// Mean over queries with at least one relevant judgment of
/// |relevant in top-k| / |relevant|.
double recall_at_k(const RunFile& run, const QrelSet& qrels, std::size_t k);

MetricsReport evaluate_run(const RunFile& run, const QrelSet& qrels, std::size_t mrr_cutoff,
                           const std::vector<std::size_t>& recall_ks);
MetricsReport evaluate_run_files(const std::string& run_path, const std::string& qrels_path,
                                 std::size_t mrr_cutoff, const std::vector<std::size_t>& recall_ks,
                                 int threshold);

}  // namespace proqe
