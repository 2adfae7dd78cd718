#pragma once

#include <string>
#include <vector>

#include "proqe/corpus.hpp"
#include "proqe/sparse_index.hpp"

namespace proqe::testing {

/// A retrieval collection with a built-in vocabulary mismatch: every query's
/// relevant documents carry discriminative terms that never appear in the
/// query, while distractor documents repeat the query's topic term and
/// outrank the relevant ones under plain BM25.
struct SyntheticFixture {
    Corpus corpus;
    std::vector<QueryRecord> queries;
    QrelSet qrels{1};

    /// First-pass BM25 rank of the best relevant doc for each query
    /// (distractor count + 1), index-aligned with `queries`.
    std::vector<std::size_t> first_relevant_rank;
};

/// 25 queries, 200 documents, 1-3 relevant docs per query. Deterministic.
SyntheticFixture make_synthetic_fixture();

/// Five tiny passages around one rare term ("suffrage"); used for the oracle
/// extractor and single-iteration loop tests.
struct SuffrageFixture {
    Corpus corpus;
    QueryRecord query{"q1", "women vote"};
    QrelSet qrels{1};
};

SuffrageFixture make_suffrage_fixture();

/// Feedback-dominance fixture: "pie" saturates every document matching the
/// query "apple".
struct PieFixture {
    Corpus corpus;
    QueryRecord query{"q1", "apple"};
};

PieFixture make_pie_fixture();

/// Deterministic corpus of `n_docs` documents with `max_terms` vocabulary;
/// used by brute-force oracle comparisons. `seed` varies the draw.
Corpus make_random_corpus(std::size_t n_docs, std::size_t vocab, std::size_t max_doc_len,
                          unsigned seed);

std::string make_random_query_text(std::size_t vocab, std::size_t n_terms, unsigned seed);

}  // namespace proqe::testing
