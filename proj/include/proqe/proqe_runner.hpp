#pragma once

#include <string>
#include <vector>

#include "proqe/dense.hpp"
#include "proqe/expansion.hpp"
#include "proqe/gateway.hpp"
#include "proqe/llm.hpp"

namespace proqe {

/// Per-iteration audit record: what was retrieved, how it was judged, which
/// terms were extracted, and the table afterwards.
struct IterationTrace {
    std::size_t iteration{0};  // 1-based
    std::string doc_id;
    double doc_score{0.0};
    bool relevant{false};
    std::vector<std::string> extracted_terms;  // tokenizer-normalized unigrams
    std::vector<std::pair<std::string, double>> table_snapshot;
    double charge_after{0.0};
};

struct ProqeTrace {
    std::string query_id;
    std::vector<IterationTrace> iterations;
    bool exhausted{false};  // ran out of unseen documents before n iterations
    std::string cot_text;
    std::string final_query_text;
};

std::string to_json(const ProqeTrace& trace);

struct ProqeSparseResult {
    ExpandedQuery intermediate;  // q+ after the last iteration
    ExpandedQuery final_query;   // q' = concat(q+, theta_c)
    TermWeightTable table;
    ProqeTrace trace;
};

/// The progressive loop: n iterations of {retrieve top-1-new, judge, extract,
/// update weights, reformulate}, then one chain-of-thought concatenation.
/// Iteration 1 retrieves with the original query. Early exhaustion skips the
/// remaining iterations; the CoT step still runs.
ProqeSparseResult run_proqe_sparse(const QueryRecord& query, const Corpus& corpus,
                                   const InvertedIndex& index, MeteredGateway& gateway,
                                   RetrievalSession& session, const LlmClient& llm,
                                   const ProqeParams& params);

struct ProqeDenseResult {
    Embedding intermediate;  // E_q+ with the final table
    Embedding final_query;   // E_q' after CoT mixing
    TermWeightTable table;
    ProqeTrace trace;
};

/// Same loop over a vector index: each iteration retrieves with the current
/// E_q+; after n iterations the CoT embedding is mixed in.
ProqeDenseResult run_proqe_dense(const QueryRecord& query, const Corpus& corpus,
                                 const VectorIndex& vindex, MeteredGateway& gateway,
                                 RetrievalSession& session, const LlmClient& llm,
                                 const TextEncoder& encoder, const ProqeParams& params,
                                 const DenseParams& dense_params);

}  // namespace proqe
