#include "proqe/llm.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <iostream>
#include <stdexcept>
#include <unordered_set>

namespace proqe {

namespace {

std::string ascii_lower(const std::string& s) {
    std::string out = s;
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return out;
}

std::vector<std::string> words_of(const std::string& text) {
    std::vector<std::string> words;
    std::string current;
    for (unsigned char c : text) {
        if (std::isalnum(c)) {
            current.push_back(static_cast<char>(std::tolower(c)));
        } else if (!current.empty()) {
            words.push_back(std::move(current));
            current.clear();
        }
    }
    if (!current.empty()) words.push_back(std::move(current));
    return words;
}

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

}  // namespace

bool parse_verdict(const std::string& raw) {
    for (const auto& w : words_of(raw)) {
        if (w == "yes") return true;
        if (w == "no") return false;
    }
    std::cerr << "warning: no yes/no answer in model output, treating as not relevant\n";
    return false;
}

RelVerdict RelVerdict::from_raw(std::string raw) {
    RelVerdict v;
    v.relevant = parse_verdict(raw);
    v.raw_response = std::move(raw);
    return v;
}

TermList TermList::from_candidates(const std::vector<std::string>& candidates, std::size_t m) {
    TermList out;
    std::unordered_set<std::string> seen;
    for (const auto& cand : candidates) {
        std::string t = trim(cand);
        if (t.empty()) continue;
        if (!seen.insert(ascii_lower(t)).second) continue;
        out.terms.push_back(t);
        if (out.terms.size() == m) break;
    }
    return out;
}

TermList TermList::parse_response(const std::string& response, std::size_t m) {
    std::vector<std::string> pieces;
    std::string current;
    for (char c : response) {
        if (c == ',' || c == '\n') {
            pieces.push_back(current);
            current.clear();
        } else {
            current.push_back(c);
        }
    }
    pieces.push_back(current);
    // Strip a leading "1." / "2)" style enumerator if the model numbered its list.
    for (auto& p : pieces) {
        std::string t = trim(p);
        std::size_t i = 0;
        while (i < t.size() && std::isdigit(static_cast<unsigned char>(t[i]))) ++i;
        if (i > 0 && i < t.size() && (t[i] == '.' || t[i] == ')')) t = trim(t.substr(i + 1));
        p = t;
    }
    return from_candidates(pieces, m);
}

RelVerdict OracleLlm::judge_relevance(const QueryContext& query,
                                      const PassageContext& passage) const {
    if (query.text.empty() || passage.text.empty()) {
        throw std::invalid_argument("judge_relevance requires non-empty query and passage");
    }
    return RelVerdict::from_raw(qrels_.is_relevant(query.id, passage.id) ? "yes" : "no");
}

TermList OracleLlm::extract_terms(const QueryContext& query, const PassageContext& passage,
                                  std::size_t m) const {
    if (m < 1) throw std::invalid_argument("m must be >= 1");

    const auto& config = index_.tokenizer_config();
    std::unordered_set<std::string> query_terms;
    for (const auto& t : tokenize(query.text, config)) query_terms.insert(t);

    // tf-idf of passage terms against the index; favors discriminative terms.
    std::vector<std::pair<std::string, std::size_t>> passage_terms;
    if (index_.contains(passage.id)) {
        passage_terms = index_.doc_terms(passage.id);
    } else {
        std::map<std::string, std::size_t> freqs;
        for (const auto& t : tokenize(passage.text, config)) ++freqs[t];
        passage_terms.assign(freqs.begin(), freqs.end());
    }

    // Terms unseen by the index score as rarest possible (df = 0).
    const double unseen_idf =
        std::log(1.0 + (static_cast<double>(index_.doc_count()) + 0.5) / 0.5);
    std::vector<std::pair<double, std::string>> scored;
    for (const auto& [term, tf] : passage_terms) {
        if (query_terms.count(term)) continue;
        double idf = index_.doc_frequency(term) > 0 ? index_.idf(term) : unseen_idf;
        scored.emplace_back(static_cast<double>(tf) * idf, term);
    }
    std::sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return a.second < b.second;
    });

    std::vector<std::string> candidates;
    candidates.reserve(scored.size());
    for (const auto& [_, term] : scored) candidates.push_back(term);
    return TermList::from_candidates(candidates, m);
}

CotText OracleLlm::generate_cot(const QueryContext& query) const {
    if (query.text.empty()) throw std::invalid_argument("generate_cot requires a non-empty query");
    if (max_cot_chars_ == 0) return {};
    std::string text;
    for (const auto& doc_id : qrels_.relevant_docs(query.id)) {
        const Document* doc = corpus_.find(doc_id);
        if (!doc) continue;
        if (!text.empty()) text += ' ';
        text += doc->text;
        if (text.size() >= max_cot_chars_) break;
    }
    if (text.size() > max_cot_chars_) text.resize(max_cot_chars_);
    return {trim(text)};
}

std::string OracleLlm::generate_passage(const QueryContext& query) const {
    return generate_cot(query).text;
}

}  // namespace proqe
