#pragma once

#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "proqe/corpus.hpp"
#include "proqe/llm.hpp"
#include "proqe/sparse_index.hpp"
#include "proqe/term_table.hpp"

namespace proqe {

void proqe_update_weights(TermWeightTable& table, const TermList& terms, const RelVerdict& verdict,
                          const ProqeParams& params);

/// A formulated query string plus the term repetitions that produced it.
struct ExpandedQuery {
    std::string text_form;
    std::vector<std::pair<std::string, std::size_t>> provenance;  // (term, emitted repetitions)
};

/// floor(alpha) copies of the query followed by every positive-weight term
/// repeated floor(w) times, in table insertion order.
ExpandedQuery formulate_sparse_query(const QueryRecord& query, const TermWeightTable& table,
                                     double alpha);

/// Rebuilds text_form from its parts; inverse of formulate_sparse_query.
std::string reconstruct_text_form(const std::string& query_text, double alpha,
                                  const std::vector<std::pair<std::string, std::size_t>>& provenance);

// --- Comparison expansion strategies ---------------------------------------

struct Rm3Params {
    std::size_t fb_docs{10};
    std::size_t fb_terms{10};
    double query_weight{0.5};
};

/// Relevance-model PRF: P(t|R) over the feedback docs with softmax-normalized
/// BM25 document weights, interpolated with the normalized query distribution.
/// No retrievable docs -> the original query unchanged.
WeightedQuery rm3_expand(const QueryRecord& query, const InvertedIndex& index,
                         Rm3Params params = {});

struct RocchioParams {
    std::size_t fb_docs{3};
    std::size_t fb_terms{5};
    double a{1.0};
    double b{0.75};
    double c{0.0};  // no non-relevant feedback exists under PRF, kept for the classic form
};

WeightedQuery rocchio_expand(const QueryRecord& query, const InvertedIndex& index,
                             RocchioParams params = {});

ExpandedQuery cot_expand(const QueryRecord& query, const LlmClient& llm, double alpha = 1.0);
ExpandedQuery query2doc_expand(const QueryRecord& query, const LlmClient& llm, double alpha = 1.0);

}  // namespace proqe
