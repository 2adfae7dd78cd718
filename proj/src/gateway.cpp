#include "proqe/gateway.hpp"

#include <stdexcept>

#include <json.hpp>

namespace proqe {

std::vector<ScoredDoc> SparseRetriever::search(const QueryInput& query, std::size_t k,
                                               const DocIdSet& exclude) const {
    const auto* wq = std::get_if<WeightedQuery>(&query);
    if (!wq) throw std::invalid_argument("sparse retriever expects a weighted-term query");
    return index_.search(*wq, k, exclude);
}

std::vector<ScoredDoc> DenseRetriever::search(const QueryInput& query, std::size_t k,
                                              const DocIdSet& exclude) const {
    const auto* e = std::get_if<Embedding>(&query);
    if (!e) throw std::invalid_argument("dense retriever expects an embedding query");
    return index_.search(*e, k, exclude);
}

std::string to_json(const CostReport& report) {
    nlohmann::json j;
    j["total_charge"] = report.total_charge;
    nlohmann::json per = nlohmann::json::object();
    for (const auto& [qid, entry] : report.per_query) {
        per[qid] = {{"docs_charged", entry.docs_charged}, {"charge", entry.charge}};
    }
    j["per_query"] = std::move(per);
    return j.dump(2);
}

RetrievalSession& MeteredGateway::open_session(const std::string& query_id, double unit_cost) {
    if (unit_cost < 0.0) throw std::invalid_argument("unit_cost must be >= 0");
    auto [it, inserted] = sessions_.emplace(query_id, nullptr);
    if (!inserted) throw std::runtime_error("session already open for query " + query_id);
    it->second = std::make_unique<RetrievalSession>();
    it->second->query_id = query_id;
    it->second->unit_cost = unit_cost;
    return *it->second;
}

namespace {

void check_open(const RetrievalSession& session) {
    if (session.closed) {
        throw std::runtime_error("session for query " + session.query_id + " is closed");
    }
}

}  // namespace

RetrievalResult MeteredGateway::retrieve(RetrievalSession& session, const QueryInput& query,
                                         std::size_t k) {
    check_open(session);
    if (k < 1) throw std::invalid_argument("k must be >= 1");
    std::vector<ScoredDoc> docs = retriever_.search(query, k, {});

    RetrievalResult result;
    result.docs = std::move(docs);
    for (const auto& d : result.docs) {
        if (session.seen.insert(d.doc_id).second) ++result.newly_charged;
    }
    session.charge_accumulated = session.unit_cost * static_cast<double>(session.seen.size());
    return result;
}

std::optional<ScoredDoc> MeteredGateway::retrieve_top_new(RetrievalSession& session,
                                                          const QueryInput& query,
                                                          std::size_t budget_k) {
    check_open(session);
    std::optional<ScoredDoc> top;
    if (retriever_.supports_exclusion()) {
        auto docs = retriever_.search(query, 1, session.seen);
        if (!docs.empty()) top = docs.front();
    } else {
        // Over-fetch and filter; budget_k bounds the extra candidates requested.
        auto docs = retriever_.search(query, budget_k + session.seen.size(), {});
        for (const auto& d : docs) {
            if (!session.seen.count(d.doc_id)) {
                top = d;
                break;
            }
        }
    }
    if (!top) return std::nullopt;
    session.seen.insert(top->doc_id);
    session.charge_accumulated = session.unit_cost * static_cast<double>(session.seen.size());
    return top;
}

void MeteredGateway::close_session(RetrievalSession& session) {
    check_open(session);
    session.closed = true;
}

CostReport MeteredGateway::ledger_report() const {
    CostReport report;
    for (const auto& [qid, session] : sessions_) {
        CostReport::PerQuery entry;
        entry.docs_charged = session->seen.size();
        entry.charge = session->charge_accumulated;
        report.per_query.emplace(qid, entry);
        report.total_charge += entry.charge;
    }
    return report;
}

}  // namespace proqe
