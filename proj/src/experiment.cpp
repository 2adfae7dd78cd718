#include "proqe/experiment.hpp"

#include <sstream>
#include <stdexcept>

namespace proqe {

Method method_from_string(const std::string& name) {
    if (name == "bm25") return Method::kBm25;
    if (name == "rm3") return Method::kRm3;
    if (name == "rocchio") return Method::kRocchio;
    if (name == "cot") return Method::kCot;
    if (name == "query2doc") return Method::kQuery2Doc;
    if (name == "proqe") return Method::kProqe;
    if (name == "proqe-dense") return Method::kProqeDense;
    throw std::invalid_argument("unknown method '" + name + "'");
}

std::string to_string(Method m) {
    switch (m) {
        case Method::kBm25: return "bm25";
        case Method::kRm3: return "rm3";
        case Method::kRocchio: return "rocchio";
        case Method::kCot: return "cot";
        case Method::kQuery2Doc: return "query2doc";
        case Method::kProqe: return "proqe";
        case Method::kProqeDense: return "proqe-dense";
    }
    return "unknown";
}

RunResult run_experiment(const Corpus& corpus, const InvertedIndex& index,
                         const std::vector<QueryRecord>& queries, const LlmClient& llm,
                         const ExperimentConfig& config, const VectorIndex* doc_vectors) {
    RunResult result;
    result.run = RunFile(config.run_tag.empty() ? to_string(config.method) : config.run_tag);

    const TokenizerConfig& tok = index.tokenizer_config();
    const bool dense = config.method == Method::kProqeDense;

    HashedBowEncoder encoder(dense ? (doc_vectors ? doc_vectors->dim() : config.dense_dim) : 1);
    std::optional<VectorIndex> built_vectors;
    const VectorIndex* vindex = doc_vectors;
    if (dense && !vindex) {
        built_vectors = VectorIndex::build(corpus, encoder, config.similarity);
        vindex = &*built_vectors;
    }

    SparseRetriever sparse_retriever(index);
    std::optional<DenseRetriever> dense_retriever;
    if (dense) dense_retriever.emplace(*vindex);
    MeteredGateway gateway(dense ? static_cast<const Retriever&>(*dense_retriever)
                                 : static_cast<const Retriever&>(sparse_retriever));

    for (const auto& query : queries) {
        RetrievalSession& session = gateway.open_session(query.id, config.unit_cost);
        QueryInput final_query = WeightedQuery::from_text(query.text, tok);

        switch (config.method) {
            case Method::kBm25:
                break;
            case Method::kRm3: {
                // The feedback pass is itself a metered retrieval.
                WeightedQuery original = WeightedQuery::from_text(query.text, tok);
                if (!original.term_weights.empty()) {
                    gateway.retrieve(session, original, config.rm3.fb_docs);
                }
                final_query = rm3_expand(query, index, config.rm3);
                break;
            }
            case Method::kRocchio: {
                WeightedQuery original = WeightedQuery::from_text(query.text, tok);
                if (!original.term_weights.empty()) {
                    gateway.retrieve(session, original, config.rocchio.fb_docs);
                }
                final_query = rocchio_expand(query, index, config.rocchio);
                break;
            }
            case Method::kCot: {
                ExpandedQuery expanded = cot_expand(query, llm, config.proqe.alpha);
                final_query = WeightedQuery::from_text(expanded.text_form, tok);
                break;
            }
            case Method::kQuery2Doc: {
                ExpandedQuery expanded = query2doc_expand(query, llm, config.proqe.alpha);
                final_query = WeightedQuery::from_text(expanded.text_form, tok);
                break;
            }
            case Method::kProqe: {
                ProqeSparseResult proqe =
                    run_proqe_sparse(query, corpus, index, gateway, session, llm, config.proqe);
                final_query = WeightedQuery::from_text(proqe.final_query.text_form, tok);
                result.traces.push_back(std::move(proqe.trace));
                break;
            }
            case Method::kProqeDense: {
                ProqeDenseResult proqe = run_proqe_dense(query, corpus, *vindex, gateway, session,
                                                         llm, encoder, config.proqe, config.dense);
                final_query = std::move(proqe.final_query);
                result.traces.push_back(std::move(proqe.trace));
                break;
            }
        }

        bool empty_sparse_query =
            !dense && std::get<WeightedQuery>(final_query).term_weights.empty();
        if (!empty_sparse_query) {
            RetrievalResult hits = gateway.retrieve(session, final_query, config.retrieval_k);
            result.run.add_query(query.id, hits.docs);
        } else {
            result.run.add_query(query.id, {});
        }
        gateway.close_session(session);
    }
    result.costs = gateway.ledger_report();
    return result;
}

std::vector<SweepRow> sweep_iterations(const Corpus& corpus, const InvertedIndex& index,
                                       const std::vector<QueryRecord>& queries,
                                       const QrelSet& qrels, const LlmClient& llm,
                                       const ExperimentConfig& base,
                                       const std::vector<std::size_t>& n_values) {
    std::vector<SweepRow> rows;
    rows.reserve(n_values.size());
    for (std::size_t n : n_values) {
        ExperimentConfig config = base;
        config.proqe.n_iterations = n;
        RunResult run = run_experiment(corpus, index, queries, llm, config);
        SweepRow row;
        row.n = n;
        row.mrr = mrr(run.run, qrels, config.retrieval_k);
        row.recall_at_1 = recall_at_k(run.run, qrels, 1);
        row.mean_charge =
            queries.empty() ? 0.0 : run.costs.total_charge / static_cast<double>(queries.size());
        rows.push_back(row);
    }
    return rows;
}

std::string sweep_to_csv(const std::vector<SweepRow>& rows) {
    std::ostringstream out;
    out << "n,mrr,recall_at_1,mean_charge\n";
    for (const auto& r : rows) {
        out << r.n << ',' << r.mrr << ',' << r.recall_at_1 << ',' << r.mean_charge << "\n";
    }
    return out.str();
}

}  // namespace proqe
