#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "proqe/corpus.hpp"
#include "proqe/sparse_index.hpp"

namespace proqe {

struct QueryContext {
    std::string id;
    std::string text;
};

struct PassageContext {
    std::string id;
    std::string text;
};

/// Pointwise relevance verdict. `relevant` is always derived from
/// `raw_response` via parse_verdict.
struct RelVerdict {
    bool relevant{false};
    std::string raw_response;

    static RelVerdict from_raw(std::string raw);
};

/// Ordered expansion-term candidates, deduplicated case-insensitively with
/// first occurrence kept, at most m entries.
struct TermList {
    std::vector<std::string> terms;

    static TermList from_candidates(const std::vector<std::string>& candidates, std::size_t m);
    /// Splits a model response on commas and newlines, then dedups.
    static TermList parse_response(const std::string& response, std::size_t m);
};

struct CotText {
    std::string text;

    bool empty() const { return text.empty(); }
};

/// Word-boundary scan for a yes/no answer; the first occurrence decides.
/// Neither present -> false with a logged warning.
bool parse_verdict(const std::string& raw);

/// Relevance judging, keyword extraction and chain-of-thought generation.
/// Implementations must be safe for concurrent calls from independent query
/// sessions.
class LlmClient {
public:
    virtual ~LlmClient() = default;
    virtual RelVerdict judge_relevance(const QueryContext& query, const PassageContext& passage) const = 0;
    virtual TermList extract_terms(const QueryContext& query, const PassageContext& passage,
                                   std::size_t m) const = 0;
    virtual CotText generate_cot(const QueryContext& query) const = 0;
    /// Pseudo-document generation for the query2doc baseline.
    virtual std::string generate_passage(const QueryContext& query) const = 0;
};

/// Deterministic stand-in backed by the relevance judgments and the index:
///  - judge_relevance answers from the qrels (grade >= threshold);
///  - extract_terms returns the passage's top-m tf-idf terms not already in
///    the tokenized query;
///  - generate_cot concatenates the query's relevant passages, truncated to
///    max_cot_chars (0 disables CoT text entirely).
class OracleLlm : public LlmClient {
public:
    OracleLlm(const QrelSet& qrels, const InvertedIndex& index, const Corpus& corpus,
              std::size_t max_cot_chars = 500)
        : qrels_(qrels), index_(index), corpus_(corpus), max_cot_chars_(max_cot_chars) {}

    RelVerdict judge_relevance(const QueryContext& query, const PassageContext& passage) const override;
    TermList extract_terms(const QueryContext& query, const PassageContext& passage,
                           std::size_t m) const override;
    CotText generate_cot(const QueryContext& query) const override;
    std::string generate_passage(const QueryContext& query) const override;

private:
    const QrelSet& qrels_;
    const InvertedIndex& index_;
    const Corpus& corpus_;
    std::size_t max_cot_chars_;
};

}  // namespace proqe
