#pragma once

#include <optional>
#include <string>
#include <vector>

#include "proqe/eval.hpp"
#include "proqe/expansion.hpp"
#include "proqe/gateway.hpp"
#include "proqe/proqe_runner.hpp"

namespace proqe {

enum class Method { kBm25, kRm3, kRocchio, kCot, kQuery2Doc, kProqe, kProqeDense };

Method method_from_string(const std::string& name);
std::string to_string(Method m);

struct ExperimentConfig {
    Method method{Method::kProqe};
    ProqeParams proqe;
    DenseParams dense;
    Rm3Params rm3;
    RocchioParams rocchio;
    double unit_cost{0.0};
    std::size_t retrieval_k{20};
    std::size_t dense_dim{1024};
    Similarity similarity{Similarity::kDot};
    std::string run_tag;  // defaults to the method name
};

/// Ranked lists per query plus the cost ledger and per-query loop traces.
struct RunResult {
    RunFile run{"run"};
    CostReport costs;
    std::vector<ProqeTrace> traces;
};

/// Runs one expansion method over the query set, metering every retrieval
/// (feedback passes included) through the gateway. `doc_vectors`, when given,
/// replaces the reference-encoded corpus vectors for dense methods.
RunResult run_experiment(const Corpus& corpus, const InvertedIndex& index,
                         const std::vector<QueryRecord>& queries, const LlmClient& llm,
                         const ExperimentConfig& config,
                         const VectorIndex* doc_vectors = nullptr);

struct SweepRow {
    std::size_t n{0};
    double mrr{0.0};
    double recall_at_1{0.0};
    double mean_charge{0.0};
};

/// One full ProQE run per iteration count; deterministic with the oracle LLM.
std::vector<SweepRow> sweep_iterations(const Corpus& corpus, const InvertedIndex& index,
                                       const std::vector<QueryRecord>& queries,
                                       const QrelSet& qrels, const LlmClient& llm,
                                       const ExperimentConfig& base,
                                       const std::vector<std::size_t>& n_values);

std::string sweep_to_csv(const std::vector<SweepRow>& rows);

}  // namespace proqe
