#include "proqe/proqe_runner.hpp"

#include <unordered_set>

#include <json.hpp>

namespace proqe {

namespace {

// Multi-word keywords become unigram entries; duplicates collapse so each
// term receives one update per iteration.
std::vector<std::string> normalize_terms(const TermList& terms, const TokenizerConfig& config) {
    std::vector<std::string> out;
    std::unordered_set<std::string> seen;
    for (const auto& keyword : terms.terms) {
        for (auto& unigram : tokenize(keyword, config)) {
            if (seen.insert(unigram).second) out.push_back(std::move(unigram));
        }
    }
    return out;
}

// Eq. 2 as a weighted bag: alpha copies of the query tokens plus floor(w)
// repetitions per positive-weight term. Terms are already normalized, so no
// re-tokenization happens here.
WeightedQuery weighted_from_parts(const std::string& query_text, const TermWeightTable& table,
                                  double alpha, const TokenizerConfig& config,
                                  const std::string& text_form) {
    WeightedQuery wq;
    wq.original_text = text_form;
    auto alpha_copies = static_cast<double>(static_cast<std::size_t>(std::max(alpha, 0.0)));
    if (alpha_copies > 0.0) {
        for (const auto& tok : tokenize(query_text, config)) wq.term_weights[tok] += alpha_copies;
    }
    for (const auto& [term, weight] : table.entries()) {
        if (weight <= 0.0) continue;
        auto reps = static_cast<double>(static_cast<std::size_t>(weight));
        if (reps > 0.0) wq.term_weights[term] += reps;
    }
    return wq;
}

void record_iteration(ProqeTrace& trace, std::size_t iteration, const ScoredDoc& doc,
                      const RelVerdict& verdict, const std::vector<std::string>& terms,
                      const TermWeightTable& table, const RetrievalSession& session) {
    IterationTrace it;
    it.iteration = iteration;
    it.doc_id = doc.doc_id;
    it.doc_score = doc.score;
    it.relevant = verdict.relevant;
    it.extracted_terms = terms;
    it.table_snapshot = table.entries();
    it.charge_after = session.charge_accumulated;
    trace.iterations.push_back(std::move(it));
}

}  // namespace

std::string to_json(const ProqeTrace& trace) {
    nlohmann::json j;
    j["query_id"] = trace.query_id;
    j["exhausted"] = trace.exhausted;
    j["cot_text"] = trace.cot_text;
    j["final_query_text"] = trace.final_query_text;
    nlohmann::json iters = nlohmann::json::array();
    for (const auto& it : trace.iterations) {
        nlohmann::json snapshot = nlohmann::json::array();
        for (const auto& [term, w] : it.table_snapshot) snapshot.push_back({term, w});
        iters.push_back({{"iteration", it.iteration},
                         {"doc_id", it.doc_id},
                         {"doc_score", it.doc_score},
                         {"relevant", it.relevant},
                         {"extracted_terms", it.extracted_terms},
                         {"table", std::move(snapshot)},
                         {"charge_after", it.charge_after}});
    }
    j["iterations"] = std::move(iters);
    return j.dump();
}

ProqeSparseResult run_proqe_sparse(const QueryRecord& query, const Corpus& corpus,
                                   const InvertedIndex& index, MeteredGateway& gateway,
                                   RetrievalSession& session, const LlmClient& llm,
                                   const ProqeParams& params) {
    const TokenizerConfig& config = index.tokenizer_config();
    QueryContext qctx{query.id, query.text};

    ProqeSparseResult result;
    result.trace.query_id = query.id;
    result.intermediate = formulate_sparse_query(query, result.table, params.alpha);

    for (std::size_t iter = 1; iter <= params.n_iterations; ++iter) {
        WeightedQuery retrieval_query =
            iter == 1 ? WeightedQuery::from_text(query.text, config)
                      : weighted_from_parts(query.text, result.table, params.alpha, config,
                                            result.intermediate.text_form);

        auto hit = gateway.retrieve_top_new(session, retrieval_query, params.candidate_budget_k);
        if (!hit) {
            result.trace.exhausted = true;
            break;
        }
        const Document& passage = corpus.at(hit->doc_id);
        PassageContext pctx{passage.id, passage.text};

        RelVerdict verdict = llm.judge_relevance(qctx, pctx);
        TermList raw_terms = llm.extract_terms(qctx, pctx, params.m_terms);
        std::vector<std::string> terms = normalize_terms(raw_terms, config);

        result.table.update(terms, verdict.relevant, params.beta, params.gamma);
        result.intermediate = formulate_sparse_query(query, result.table, params.alpha);

        record_iteration(result.trace, iter, *hit, verdict, terms, result.table, session);
    }

    CotText cot = llm.generate_cot(qctx);
    result.trace.cot_text = cot.text;
    result.final_query = result.intermediate;
    if (!cot.empty()) {
        if (!result.final_query.text_form.empty()) result.final_query.text_form += ' ';
        result.final_query.text_form += cot.text;
    }
    result.trace.final_query_text = result.final_query.text_form;
    return result;
}

ProqeDenseResult run_proqe_dense(const QueryRecord& query, const Corpus& corpus,
                                 const VectorIndex& vindex, MeteredGateway& gateway,
                                 RetrievalSession& session, const LlmClient& llm,
                                 const TextEncoder& encoder, const ProqeParams& params,
                                 const DenseParams& dense_params) {
    const TokenizerConfig config = TokenizerConfig::no_stopwords();
    QueryContext qctx{query.id, query.text};

    ProqeDenseResult result;
    result.trace.query_id = query.id;
    Embedding query_embedding = encoder.encode(query.text);
    result.intermediate = combine_intermediate(query_embedding, result.table, encoder, dense_params);

    for (std::size_t iter = 1; iter <= params.n_iterations; ++iter) {
        auto hit = gateway.retrieve_top_new(session, result.intermediate, params.candidate_budget_k);
        if (!hit) {
            result.trace.exhausted = true;
            break;
        }
        const Document& passage = corpus.at(hit->doc_id);
        PassageContext pctx{passage.id, passage.text};

        RelVerdict verdict = llm.judge_relevance(qctx, pctx);
        TermList raw_terms = llm.extract_terms(qctx, pctx, params.m_terms);
        std::vector<std::string> terms = normalize_terms(raw_terms, config);

        result.table.update(terms, verdict.relevant, params.beta, params.gamma);
        result.intermediate = combine_intermediate(query_embedding, result.table, encoder, dense_params);

        record_iteration(result.trace, iter, *hit, verdict, terms, result.table, session);
    }

    CotText cot = llm.generate_cot(qctx);
    result.trace.cot_text = cot.text;
    Embedding cot_embedding;
    if (cot.empty()) {
        cot_embedding.values.assign(encoder.dim(), 0.0);
    } else {
        cot_embedding = encoder.encode(cot.text);
    }
    result.final_query = combine_final(result.intermediate, cot_embedding, dense_params);
    result.trace.final_query_text = cot.text;
    return result;
}

}  // namespace proqe
