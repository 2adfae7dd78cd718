#include "proqe/sparse_index.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace proqe {

WeightedQuery WeightedQuery::from_text(const std::string& text, const TokenizerConfig& config) {
    WeightedQuery q;
    q.original_text = text;
    for (const auto& term : tokenize(text, config)) {
        q.term_weights[term] += 1.0;
    }
    return q;
}

InvertedIndex InvertedIndex::build(const Corpus& corpus, const TokenizerConfig& config,
                                   Params params) {
    if (corpus.empty()) throw std::runtime_error("cannot build index over empty corpus");

    InvertedIndex idx;
    idx.config_ = config;
    idx.params_ = params;

    idx.doc_ids_.reserve(corpus.size());
    for (const auto& d : corpus.docs()) idx.doc_ids_.push_back(d.id);
    std::sort(idx.doc_ids_.begin(), idx.doc_ids_.end());

    idx.doc_lengths_.resize(idx.doc_ids_.size());
    idx.doc_terms_.resize(idx.doc_ids_.size());
    std::size_t total_len = 0;
    for (std::size_t pos = 0; pos < idx.doc_ids_.size(); ++pos) {
        const std::string& id = idx.doc_ids_[pos];
        idx.doc_index_.emplace(id, pos);
        auto tokens = tokenize(corpus.at(id).text, config);
        idx.doc_lengths_[pos] = tokens.size();
        total_len += tokens.size();

        std::map<std::string, std::size_t> freqs;
        for (auto& t : tokens) ++freqs[t];
        auto& terms = idx.doc_terms_[pos];
        terms.assign(freqs.begin(), freqs.end());
        for (const auto& [term, tf] : terms) {
            idx.postings_[term].push_back({pos, tf});
        }
    }
    // doc positions ascend during the scan, so postings are already sorted by doc.
    idx.avg_doc_length_ = static_cast<double>(total_len) / static_cast<double>(idx.doc_ids_.size());
    return idx;
}

std::size_t InvertedIndex::doc_length(const std::string& doc_id) const {
    auto it = doc_index_.find(doc_id);
    if (it == doc_index_.end()) throw std::out_of_range("unknown doc_id " + doc_id);
    return doc_lengths_[it->second];
}

std::size_t InvertedIndex::doc_frequency(const std::string& term) const {
    auto it = postings_.find(term);
    return it == postings_.end() ? 0 : it->second.size();
}

double InvertedIndex::idf(const std::string& term) const {
    std::size_t df = doc_frequency(term);
    if (df == 0) return 0.0;
    double n = static_cast<double>(doc_count());
    return std::log(1.0 + (n - static_cast<double>(df) + 0.5) / (static_cast<double>(df) + 0.5));
}

std::size_t InvertedIndex::term_frequency(const std::string& term, const std::string& doc_id) const {
    auto pit = postings_.find(term);
    if (pit == postings_.end()) return 0;
    auto dit = doc_index_.find(doc_id);
    if (dit == doc_index_.end()) return 0;
    const auto& list = pit->second;
    auto found = std::lower_bound(list.begin(), list.end(), dit->second,
                                  [](const Posting& p, std::size_t pos) { return p.doc < pos; });
    if (found == list.end() || found->doc != dit->second) return 0;
    return found->tf;
}

const std::vector<std::pair<std::string, std::size_t>>& InvertedIndex::doc_terms(
    const std::string& doc_id) const {
    auto it = doc_index_.find(doc_id);
    if (it == doc_index_.end()) throw std::out_of_range("unknown doc_id " + doc_id);
    return doc_terms_[it->second];
}

double InvertedIndex::score_one(double weight, double idf_val, std::size_t tf,
                                std::size_t doc_len) const {
    if (tf == 0) return 0.0;
    double tf_d = static_cast<double>(tf);
    double norm = 1.0 - params_.b + params_.b * (static_cast<double>(doc_len) / avg_doc_length_);
    return weight * idf_val * (tf_d * (params_.k1 + 1.0)) / (tf_d + params_.k1 * norm);
}

double InvertedIndex::bm25_score(const WeightedQuery& query, const std::string& doc_id) const {
    auto it = doc_index_.find(doc_id);
    if (it == doc_index_.end()) throw std::out_of_range("unknown doc_id " + doc_id);
    std::size_t len = doc_lengths_[it->second];
    double score = 0.0;
    for (const auto& [term, weight] : query.term_weights) {
        std::size_t tf = term_frequency(term, doc_id);
        if (tf == 0) continue;
        score += score_one(weight, idf(term), tf, len);
    }
    return score;
}

std::vector<ScoredDoc> InvertedIndex::search(const WeightedQuery& query, std::size_t k,
                                             const DocIdSet& exclude) const {
    // Term-at-a-time accumulation over candidate documents.
    std::unordered_map<std::size_t, double> acc;
    for (const auto& [term, weight] : query.term_weights) {
        auto pit = postings_.find(term);
        if (pit == postings_.end()) continue;
        double idf_val = idf(term);
        for (const Posting& p : pit->second) {
            acc[p.doc] += score_one(weight, idf_val, p.tf, doc_lengths_[p.doc]);
        }
    }

    std::vector<ScoredDoc> hits;
    hits.reserve(acc.size());
    for (const auto& [pos, score] : acc) {
        if (score <= 0.0) continue;
        if (exclude.count(doc_ids_[pos])) continue;
        hits.push_back({doc_ids_[pos], score});
    }
    std::sort(hits.begin(), hits.end(), [](const ScoredDoc& a, const ScoredDoc& b) {
        if (a.score != b.score) return a.score > b.score;
        return a.doc_id < b.doc_id;
    });
    if (hits.size() > k) hits.resize(k);
    return hits;
}

void InvertedIndex::save(const std::string& path) const {
    nlohmann::json j;
    j["format"] = "proqe-index";
    j["version"] = 1;
    j["k1"] = params_.k1;
    j["b"] = params_.b;
    j["tokenizer"] = {
        {"lowercase", config_.lowercase},
        {"stem", config_.stem},
        {"stopwords", std::vector<std::string>(config_.stopwords.begin(), config_.stopwords.end())},
    };
    std::sort(j["tokenizer"]["stopwords"].begin(), j["tokenizer"]["stopwords"].end());
    nlohmann::json docs = nlohmann::json::array();
    for (std::size_t pos = 0; pos < doc_ids_.size(); ++pos) {
        nlohmann::json terms = nlohmann::json::array();
        for (const auto& [t, tf] : doc_terms_[pos]) terms.push_back({t, tf});
        docs.push_back({{"id", doc_ids_[pos]}, {"len", doc_lengths_[pos]}, {"terms", terms}});
    }
    j["docs"] = std::move(docs);

    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write index file: " + path);
    out << j.dump();
}

InvertedIndex InvertedIndex::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open index file: " + path);
    nlohmann::json j = nlohmann::json::parse(in);
    if (j.value("format", "") != "proqe-index" || j.value("version", 0) != 1) {
        throw std::runtime_error("unsupported index file format: " + path);
    }

    InvertedIndex idx;
    idx.params_.k1 = j.at("k1").get<double>();
    idx.params_.b = j.at("b").get<double>();
    idx.config_.lowercase = j.at("tokenizer").at("lowercase").get<bool>();
    idx.config_.stem = j.at("tokenizer").at("stem").get<bool>();
    idx.config_.stopwords.clear();
    for (const auto& s : j.at("tokenizer").at("stopwords")) {
        idx.config_.stopwords.insert(s.get<std::string>());
    }

    std::size_t total_len = 0;
    for (const auto& d : j.at("docs")) {
        std::size_t pos = idx.doc_ids_.size();
        idx.doc_ids_.push_back(d.at("id").get<std::string>());
        idx.doc_index_.emplace(idx.doc_ids_.back(), pos);
        idx.doc_lengths_.push_back(d.at("len").get<std::size_t>());
        total_len += idx.doc_lengths_.back();
        std::vector<std::pair<std::string, std::size_t>> terms;
        for (const auto& t : d.at("terms")) {
            terms.emplace_back(t.at(0).get<std::string>(), t.at(1).get<std::size_t>());
        }
        idx.doc_terms_.push_back(std::move(terms));
        for (const auto& [term, tf] : idx.doc_terms_.back()) {
            idx.postings_[term].push_back({pos, tf});
        }
    }
    if (idx.doc_ids_.empty()) throw std::runtime_error("index file has no documents: " + path);
    idx.avg_doc_length_ = static_cast<double>(total_len) / static_cast<double>(idx.doc_ids_.size());
    return idx;
}

}  // namespace proqe
