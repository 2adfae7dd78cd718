#pragma once

#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace proqe {

struct Document {
    std::string id;
    std::string text;
};

struct CorpusStats {
    std::size_t doc_count{0};
    std::size_t token_count{0};  // whitespace-separated tokens, pre-normalization
};

/// In-memory document collection. Immutable after load; concurrent reads are safe.
class Corpus {
public:
    Corpus() = default;

    void add(Document doc);

    const Document* find(const std::string& doc_id) const;
    const Document& at(const std::string& doc_id) const;
    bool contains(const std::string& doc_id) const { return by_id_.count(doc_id) > 0; }

    const std::vector<Document>& docs() const { return docs_; }
    std::size_t size() const { return docs_.size(); }
    bool empty() const { return docs_.empty(); }

    CorpusStats stats() const;

    /// Canonical serialization (JSONL, insertion order). Loading the same file
    /// twice yields byte-identical output.
    std::string to_jsonl() const;

private:
    std::vector<Document> docs_;
    std::unordered_map<std::string, std::size_t> by_id_;
};

struct QueryRecord {
    std::string id;
    std::string text;
};

/// Graded relevance judgments in TREC qrels form.
class QrelSet {
public:
    explicit QrelSet(int relevance_threshold = 1) : threshold_(relevance_threshold) {}

    void add(const std::string& query_id, const std::string& doc_id, int grade);

    int relevance_threshold() const { return threshold_; }
    void set_relevance_threshold(int t) { threshold_ = t; }

    bool is_judged(const std::string& query_id, const std::string& doc_id) const;
    std::optional<int> grade(const std::string& query_id, const std::string& doc_id) const;
    bool is_relevant(const std::string& query_id, const std::string& doc_id) const;

    /// Doc ids judged relevant (grade >= threshold) for a query.
    std::vector<std::string> relevant_docs(const std::string& query_id) const;
    /// All (doc_id, grade) judgments for a query, doc_id order.
    std::vector<std::pair<std::string, int>> judgments_for(const std::string& query_id) const;

    bool has_judgments(const std::string& query_id) const;
    std::vector<std::string> judged_query_ids() const;

    std::size_t size() const { return total_; }

    /// Canonical serialization in TREC qrels format (sorted by query, doc).
    std::string to_trec() const;

private:
    // query_id -> doc_id -> grade; std::map keeps serialization canonical.
    std::map<std::string, std::map<std::string, int>> judgments_;
    std::size_t total_{0};
    int threshold_;
};

// --- Loaders --------------------------------------------------------------
//
// Corpus:  JSONL, one object per line: {"id": "...", "contents": "..."}.
//          TSV fallback: lines of the form `id<TAB>text`.
// Qrels:   TREC format, whitespace separated: <query_id> <ignored> <doc_id> <grade>.
// Queries: TSV: <query_id><TAB><query text>.

CorpusStats ingest_corpus(const std::string& path, Corpus& out);
Corpus load_corpus(const std::string& path);

QrelSet load_qrels(const std::string& path, int threshold = 1);

/// Number of qrel doc_ids not present in the corpus (subsampled collections).
std::size_t count_unknown_qrel_docs(const QrelSet& qrels, const Corpus& corpus);

std::vector<QueryRecord> load_queries(const std::string& path);

}  // namespace proqe
