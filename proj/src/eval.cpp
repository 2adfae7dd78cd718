#include "proqe/eval.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include <json.hpp>

namespace proqe {

void RunFile::add_query(const std::string& query_id, const std::vector<ScoredDoc>& hits) {
    if (queries_.count(query_id)) {
        throw std::runtime_error("run already has results for query " + query_id);
    }
    auto& entries = queries_[query_id];
    entries.reserve(hits.size());
    for (std::size_t i = 0; i < hits.size(); ++i) {
        entries.push_back({hits[i].doc_id, hits[i].score, i + 1});
    }
}

const std::vector<RunFile::Entry>* RunFile::results_for(const std::string& query_id) const {
    auto it = queries_.find(query_id);
    return it == queries_.end() ? nullptr : &it->second;
}

std::string RunFile::to_trec() const {
    std::ostringstream out;
    for (const auto& [qid, entries] : queries_) {
        for (const auto& e : entries) {
            char buf[64];
            auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), e.score);
            out << qid << " Q0 " << e.doc_id << ' ' << e.rank << ' '
                << std::string_view(buf, end - buf) << ' ' << tag_ << '\n';
        }
    }
    return out.str();
}

void RunFile::save(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write run file: " + path);
    out << to_trec();
}

RunFile RunFile::parse(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open run file: " + path);

    RunFile run;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
        std::istringstream fields(line);
        std::string qid, q0, doc, rank_str, score_str, tag;
        if (!(fields >> qid >> q0 >> doc >> rank_str >> score_str >> tag)) {
            throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                     ": expected 6 whitespace-separated fields");
        }
        Entry e;
        e.doc_id = doc;
        try {
            e.rank = std::stoul(rank_str);
            e.score = std::stod(score_str);
        } catch (const std::exception&) {
            throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                     ": invalid rank or score");
        }
        run.queries_[qid].push_back(e);
        run.tag_ = tag;
    }
    for (auto& [qid, entries] : run.queries_) {
        std::sort(entries.begin(), entries.end(),
                  [](const Entry& a, const Entry& b) { return a.rank < b.rank; });
        for (std::size_t i = 0; i < entries.size(); ++i) {
            if (entries[i].rank != i + 1) {
                throw std::runtime_error("run file " + path + ": query " + qid +
                                         " has non-contiguous ranks");
            }
            if (i > 0 && entries[i].score > entries[i - 1].score) {
                throw std::runtime_error("run file " + path + ": query " + qid +
                                         " has scores increasing with rank");
            }
        }
    }
    return run;
}

namespace {

double reciprocal_rank(const std::vector<RunFile::Entry>* entries, const QrelSet& qrels,
                       const std::string& qid, std::size_t cutoff_k) {
    if (!entries) return 0.0;
    for (const auto& e : *entries) {
        if (e.rank > cutoff_k) break;
        if (qrels.is_relevant(qid, e.doc_id)) return 1.0 / static_cast<double>(e.rank);
    }
    return 0.0;
}

}  // namespace

double mrr(const RunFile& run, const QrelSet& qrels, std::size_t cutoff_k) {
    auto judged = qrels.judged_query_ids();
    if (judged.empty()) return 0.0;
    double sum = 0.0;
    for (const auto& qid : judged) {
        sum += reciprocal_rank(run.results_for(qid), qrels, qid, cutoff_k);
    }
    return sum / static_cast<double>(judged.size());
}

double recall_at_k(const RunFile& run, const QrelSet& qrels, std::size_t k) {
    double sum = 0.0;
    std::size_t n = 0;
    for (const auto& qid : qrels.judged_query_ids()) {
        auto relevant = qrels.relevant_docs(qid);
        if (relevant.empty()) continue;
        ++n;
        const auto* entries = run.results_for(qid);
        if (!entries) continue;
        std::unordered_set<std::string> rel_set(relevant.begin(), relevant.end());
        std::size_t found = 0;
        for (const auto& e : *entries) {
            if (e.rank > k) break;
            if (rel_set.count(e.doc_id)) ++found;
        }
        sum += static_cast<double>(found) / static_cast<double>(relevant.size());
    }
    return n == 0 ? 0.0 : sum / static_cast<double>(n);
}

MetricsReport evaluate_run(const RunFile& run, const QrelSet& qrels, std::size_t mrr_cutoff,
                           const std::vector<std::size_t>& recall_ks) {
    for (const auto& [qid, _] : run.queries()) {
        if (!qrels.has_judgments(qid)) {
            std::cerr << "warning: run contains unjudged query " << qid << "\n";
        }
    }

    MetricsReport report;
    auto judged = qrels.judged_query_ids();
    report.n_queries = judged.size();
    report.mrr = mrr(run, qrels, mrr_cutoff);
    for (std::size_t k : recall_ks) {
        report.recall_at_k[k] = recall_at_k(run, qrels, k);
    }
    for (const auto& qid : judged) {
        MetricsReport::PerQuery pq;
        pq.reciprocal_rank = reciprocal_rank(run.results_for(qid), qrels, qid, mrr_cutoff);
        for (std::size_t k : recall_ks) {
            bool hit = false;
            if (const auto* entries = run.results_for(qid)) {
                for (const auto& e : *entries) {
                    if (e.rank > k) break;
                    if (qrels.is_relevant(qid, e.doc_id)) {
                        hit = true;
                        break;
                    }
                }
            }
            pq.hit_at_k[k] = hit;
        }
        report.per_query.emplace(qid, std::move(pq));
    }
    return report;
}

MetricsReport evaluate_run_files(const std::string& run_path, const std::string& qrels_path,
                                 std::size_t mrr_cutoff, const std::vector<std::size_t>& recall_ks,
                                 int threshold) {
    RunFile run = RunFile::parse(run_path);
    QrelSet qrels = load_qrels(qrels_path, threshold);
    return evaluate_run(run, qrels, mrr_cutoff, recall_ks);
}

std::string MetricsReport::to_json() const {
    nlohmann::json j;
    j["mrr"] = mrr;
    j["n_queries"] = n_queries;
    nlohmann::json recall = nlohmann::json::object();
    for (const auto& [k, v] : recall_at_k) recall[std::to_string(k)] = v;
    j["recall_at_k"] = std::move(recall);
    nlohmann::json per = nlohmann::json::object();
    for (const auto& [qid, pq] : per_query) {
        nlohmann::json hits = nlohmann::json::object();
        for (const auto& [k, hit] : pq.hit_at_k) hits[std::to_string(k)] = hit;
        per[qid] = {{"reciprocal_rank", pq.reciprocal_rank}, {"hit_at_k", std::move(hits)}};
    }
    j["per_query"] = std::move(per);
    return j.dump(2);
}

}  // namespace proqe
