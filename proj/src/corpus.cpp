#include "proqe/corpus.hpp"

#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include <json.hpp>

namespace proqe {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

[[noreturn]] void parse_fail(const std::string& path, std::size_t line_no, const std::string& what) {
    throw std::runtime_error(path + ":" + std::to_string(line_no) + ": " + what);
}

std::size_t whitespace_token_count(const std::string& text) {
    std::istringstream in(text);
    std::string tok;
    std::size_t n = 0;
    while (in >> tok) ++n;
    return n;
}

}  // namespace

void Corpus::add(Document doc) {
    if (by_id_.count(doc.id)) {
        throw std::runtime_error("duplicate doc_id " + doc.id);
    }
    if (trim(doc.text).empty()) {
        throw std::runtime_error("document " + doc.id + " has empty text");
    }
    by_id_.emplace(doc.id, docs_.size());
    docs_.push_back(std::move(doc));
}

const Document* Corpus::find(const std::string& doc_id) const {
    auto it = by_id_.find(doc_id);
    return it == by_id_.end() ? nullptr : &docs_[it->second];
}

const Document& Corpus::at(const std::string& doc_id) const {
    const Document* d = find(doc_id);
    if (!d) throw std::out_of_range("unknown doc_id " + doc_id);
    return *d;
}

CorpusStats Corpus::stats() const {
    CorpusStats s;
    s.doc_count = docs_.size();
    for (const auto& d : docs_) s.token_count += whitespace_token_count(d.text);
    return s;
}

std::string Corpus::to_jsonl() const {
    std::string out;
    for (const auto& d : docs_) {
        nlohmann::json j{{"id", d.id}, {"contents", d.text}};
        out += j.dump();
        out += '\n';
    }
    return out;
}

CorpusStats ingest_corpus(const std::string& path, Corpus& out) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open corpus file: " + path);

    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string stripped = trim(line);
        if (stripped.empty()) continue;

        Document doc;
        if (stripped.front() == '{') {
            nlohmann::json j = nlohmann::json::parse(stripped, nullptr, false);
            if (j.is_discarded() || !j.is_object()) {
                parse_fail(path, line_no, "malformed JSON record");
            }
            if (!j.contains("id") || !j.contains("contents") ||
                !j["id"].is_string() || !j["contents"].is_string()) {
                parse_fail(path, line_no, "record must have string fields 'id' and 'contents'");
            }
            doc.id = j["id"].get<std::string>();
            doc.text = j["contents"].get<std::string>();
        } else {
            // TSV fallback: id<TAB>text
            std::size_t tab = line.find('\t');
            if (tab == std::string::npos) {
                parse_fail(path, line_no, "expected JSON object or id<TAB>text");
            }
            doc.id = trim(line.substr(0, tab));
            doc.text = line.substr(tab + 1);
        }
        if (doc.id.empty()) parse_fail(path, line_no, "empty doc id");
        if (trim(doc.text).empty()) parse_fail(path, line_no, "empty text for doc " + doc.id);
        try {
            out.add(std::move(doc));
        } catch (const std::runtime_error& e) {
            parse_fail(path, line_no, e.what());
        }
    }
    if (out.empty()) {
        std::cerr << "warning: corpus file " << path << " contains no documents\n";
    }
    return out.stats();
}

Corpus load_corpus(const std::string& path) {
    Corpus c;
    ingest_corpus(path, c);
    return c;
}

void QrelSet::add(const std::string& query_id, const std::string& doc_id, int grade) {
    if (grade < 0) throw std::runtime_error("negative relevance grade for " + query_id + " " + doc_id);
    auto& per_query = judgments_[query_id];
    auto [it, inserted] = per_query.emplace(doc_id, grade);
    if (!inserted) {
        throw std::runtime_error("duplicate judgment for (" + query_id + ", " + doc_id + ")");
    }
    ++total_;
}

bool QrelSet::is_judged(const std::string& query_id, const std::string& doc_id) const {
    return grade(query_id, doc_id).has_value();
}

std::optional<int> QrelSet::grade(const std::string& query_id, const std::string& doc_id) const {
    auto qit = judgments_.find(query_id);
    if (qit == judgments_.end()) return std::nullopt;
    auto dit = qit->second.find(doc_id);
    if (dit == qit->second.end()) return std::nullopt;
    return dit->second;
}

bool QrelSet::is_relevant(const std::string& query_id, const std::string& doc_id) const {
    auto g = grade(query_id, doc_id);
    return g.has_value() && *g >= threshold_;
}

std::vector<std::string> QrelSet::relevant_docs(const std::string& query_id) const {
    std::vector<std::string> out;
    auto qit = judgments_.find(query_id);
    if (qit == judgments_.end()) return out;
    for (const auto& [doc, g] : qit->second) {
        if (g >= threshold_) out.push_back(doc);
    }
    return out;
}

std::vector<std::pair<std::string, int>> QrelSet::judgments_for(const std::string& query_id) const {
    std::vector<std::pair<std::string, int>> out;
    auto qit = judgments_.find(query_id);
    if (qit == judgments_.end()) return out;
    out.assign(qit->second.begin(), qit->second.end());
    return out;
}

bool QrelSet::has_judgments(const std::string& query_id) const {
    auto qit = judgments_.find(query_id);
    return qit != judgments_.end() && !qit->second.empty();
}

std::vector<std::string> QrelSet::judged_query_ids() const {
    std::vector<std::string> out;
    out.reserve(judgments_.size());
    for (const auto& [qid, _] : judgments_) out.push_back(qid);
    return out;
}

std::string QrelSet::to_trec() const {
    std::string out;
    for (const auto& [qid, per_query] : judgments_) {
        for (const auto& [doc, g] : per_query) {
            out += qid + " 0 " + doc + " " + std::to_string(g) + "\n";
        }
    }
    return out;
}

QrelSet load_qrels(const std::string& path, int threshold) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open qrels file: " + path);

    QrelSet qrels(threshold);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        std::istringstream fields(line);
        std::string qid, ignored, doc, grade_str;
        if (!(fields >> qid >> ignored >> doc >> grade_str)) {
            parse_fail(path, line_no, "expected 4 whitespace-separated fields");
        }
        int grade = 0;
        try {
            std::size_t pos = 0;
            grade = std::stoi(grade_str, &pos);
            if (pos != grade_str.size()) throw std::invalid_argument(grade_str);
        } catch (const std::exception&) {
            parse_fail(path, line_no, "non-integer relevance grade '" + grade_str + "'");
        }
        try {
            qrels.add(qid, doc, grade);
        } catch (const std::runtime_error& e) {
            parse_fail(path, line_no, e.what());
        }
    }
    return qrels;
}

std::size_t count_unknown_qrel_docs(const QrelSet& qrels, const Corpus& corpus) {
    std::size_t unknown = 0;
    for (const auto& qid : qrels.judged_query_ids()) {
        for (const auto& [doc, _] : qrels.judgments_for(qid)) {
            if (!corpus.contains(doc)) ++unknown;
        }
    }
    return unknown;
}

std::vector<QueryRecord> load_queries(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open queries file: " + path);

    std::vector<QueryRecord> out;
    std::unordered_set<std::string> seen;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty()) continue;
        std::size_t tab = line.find('\t');
        if (tab == std::string::npos) {
            parse_fail(path, line_no, "expected <query_id><TAB><text>");
        }
        QueryRecord q{trim(line.substr(0, tab)), trim(line.substr(tab + 1))};
        if (q.id.empty()) parse_fail(path, line_no, "empty query_id");
        if (q.text.empty()) parse_fail(path, line_no, "empty query text for " + q.id);
        if (!seen.insert(q.id).second) {
            parse_fail(path, line_no, "duplicate query_id " + q.id);
        }
        out.push_back(std::move(q));
    }
    return out;
}

}  // namespace proqe
