#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "proqe/experiment.hpp"
#include "proqe/llm_http.hpp"
#include "proqe/prompts.hpp"

namespace py = pybind11;
using namespace proqe;

PYBIND11_MODULE(_proqe, m) {
    m.doc() = "Progressive query expansion over cost-metered retrieval";

    // --- corpus -----------------------------------------------------------
    py::class_<Document>(m, "Document")
        .def(py::init<>())
        .def(py::init([](std::string id, std::string text) {
                 return Document{std::move(id), std::move(text)};
             }),
             py::arg("id"), py::arg("text"))
        .def_readwrite("id", &Document::id)
        .def_readwrite("text", &Document::text);

    py::class_<CorpusStats>(m, "CorpusStats")
        .def_readonly("doc_count", &CorpusStats::doc_count)
        .def_readonly("token_count", &CorpusStats::token_count);

    py::class_<Corpus>(m, "Corpus")
        .def(py::init<>())
        .def("add", &Corpus::add, py::arg("doc"))
        .def("add", [](Corpus& c, const std::string& id, const std::string& text) {
            c.add({id, text});
        })
        .def("__len__", &Corpus::size)
        .def("__contains__", &Corpus::contains)
        .def("text_of", [](const Corpus& c, const std::string& id) { return c.at(id).text; })
        .def("stats", &Corpus::stats)
        .def("to_jsonl", &Corpus::to_jsonl);

    py::class_<QueryRecord>(m, "QueryRecord")
        .def(py::init([](std::string id, std::string text) {
                 return QueryRecord{std::move(id), std::move(text)};
             }),
             py::arg("id"), py::arg("text"))
        .def_readwrite("id", &QueryRecord::id)
        .def_readwrite("text", &QueryRecord::text);

    py::class_<QrelSet>(m, "QrelSet")
        .def(py::init<int>(), py::arg("relevance_threshold") = 1)
        .def("add", &QrelSet::add, py::arg("query_id"), py::arg("doc_id"), py::arg("grade"))
        .def("is_relevant", &QrelSet::is_relevant)
        .def("is_judged", &QrelSet::is_judged)
        .def("grade", &QrelSet::grade)
        .def("relevant_docs", &QrelSet::relevant_docs)
        .def("judged_query_ids", &QrelSet::judged_query_ids)
        .def("__len__", &QrelSet::size)
        .def_property("relevance_threshold", &QrelSet::relevance_threshold,
                      &QrelSet::set_relevance_threshold)
        .def("to_trec", &QrelSet::to_trec);

    m.def("load_corpus", &load_corpus, py::arg("path"));
    m.def("load_qrels", &load_qrels, py::arg("path"), py::arg("threshold") = 1);
    m.def("load_queries", &load_queries, py::arg("path"));

    // --- tokenizer ----------------------------------------------------------
    py::class_<TokenizerConfig>(m, "TokenizerConfig")
        .def(py::init<>())
        .def_static("no_stopwords", &TokenizerConfig::no_stopwords)
        .def_readwrite("lowercase", &TokenizerConfig::lowercase)
        .def_readwrite("stem", &TokenizerConfig::stem)
        .def_readwrite("stopwords", &TokenizerConfig::stopwords);
    m.def("tokenize", &tokenize, py::arg("text"), py::arg("config") = TokenizerConfig{});
    m.def("porter_stem", &porter_stem, py::arg("word"));
    m.def("default_stopwords", [] { return default_stopwords(); });

    // --- sparse index ---------------------------------------------------------
    py::class_<ScoredDoc>(m, "ScoredDoc")
        .def_readonly("doc_id", &ScoredDoc::doc_id)
        .def_readonly("score", &ScoredDoc::score)
        .def("__repr__", [](const ScoredDoc& d) {
            return "ScoredDoc(" + d.doc_id + ", " + std::to_string(d.score) + ")";
        });

    py::class_<WeightedQuery>(m, "WeightedQuery")
        .def(py::init<>())
        .def_static("from_text", &WeightedQuery::from_text, py::arg("text"),
                    py::arg("config") = TokenizerConfig{})
        .def_readwrite("term_weights", &WeightedQuery::term_weights)
        .def_readwrite("original_text", &WeightedQuery::original_text);

    py::class_<InvertedIndex::Params>(m, "IndexParams")
        .def(py::init<>())
        .def_readwrite("k1", &InvertedIndex::Params::k1)
        .def_readwrite("b", &InvertedIndex::Params::b);

    py::class_<InvertedIndex>(m, "InvertedIndex")
        .def_static(
            "build",
            [](const Corpus& corpus, const TokenizerConfig& config, double k1, double b) {
                return InvertedIndex::build(corpus, config, {k1, b});
            },
            py::arg("corpus"), py::arg("config") = TokenizerConfig{}, py::arg("k1") = 0.9,
            py::arg("b") = 0.4)
        .def_property_readonly("doc_count", &InvertedIndex::doc_count)
        .def_property_readonly("avg_doc_length", &InvertedIndex::avg_doc_length)
        .def("doc_frequency", &InvertedIndex::doc_frequency)
        .def("idf", &InvertedIndex::idf)
        .def("term_frequency", &InvertedIndex::term_frequency)
        .def("bm25_score", &InvertedIndex::bm25_score, py::arg("query"), py::arg("doc_id"))
        .def("search", &InvertedIndex::search, py::arg("query"), py::arg("k"),
             py::arg("exclude") = DocIdSet{})
        .def("save", &InvertedIndex::save)
        .def_static("load", &InvertedIndex::load);

    // --- dense ------------------------------------------------------------------
    py::class_<Embedding>(m, "Embedding")
        .def(py::init([](std::vector<double> values) { return Embedding{std::move(values)}; }),
             py::arg("values"))
        .def_readwrite("values", &Embedding::values)
        .def("dim", &Embedding::dim);
    m.def("dot", &dot);
    m.def("cosine", &cosine);
    m.def("l2_norm", &l2_norm);

    py::class_<DenseParams>(m, "DenseParams")
        .def(py::init<>())
        .def_readwrite("sigma", &DenseParams::sigma)
        .def_readwrite("tau", &DenseParams::tau)
        .def_readwrite("delta", &DenseParams::delta)
        .def_readwrite("positive_only", &DenseParams::positive_only);

    py::class_<TextEncoder>(m, "TextEncoder");
    py::class_<HashedBowEncoder, TextEncoder>(m, "HashedBowEncoder")
        .def(py::init<std::size_t, TokenizerConfig>(), py::arg("dim") = 1024,
             py::arg("config") = TokenizerConfig::no_stopwords())
        .def("dim", &HashedBowEncoder::dim)
        .def("encode", &HashedBowEncoder::encode, py::arg("text"));

    py::enum_<Similarity>(m, "Similarity")
        .value("DOT", Similarity::kDot)
        .value("COSINE", Similarity::kCosine);

    py::class_<VectorIndex>(m, "VectorIndex")
        .def(py::init<std::size_t, Similarity>(), py::arg("dim"),
             py::arg("similarity") = Similarity::kDot)
        .def_static("build", &VectorIndex::build, py::arg("corpus"), py::arg("encoder"),
                    py::arg("similarity") = Similarity::kDot)
        .def("add", &VectorIndex::add)
        .def("__len__", &VectorIndex::size)
        .def("search", &VectorIndex::search, py::arg("query"), py::arg("k"),
             py::arg("exclude") = DocIdSet{})
        .def("save", &VectorIndex::save)
        .def_static("load", &VectorIndex::load, py::arg("path"),
                    py::arg("similarity") = Similarity::kDot);

    m.def("combine_intermediate", &combine_intermediate, py::arg("query_embedding"),
          py::arg("table"), py::arg("encoder"), py::arg("params"));
    m.def("combine_final", &combine_final, py::arg("intermediate"), py::arg("cot_embedding"),
          py::arg("params"));

    // --- gateway ---------------------------------------------------------------------
    py::class_<Retriever>(m, "Retriever");
    py::class_<SparseRetriever, Retriever>(m, "SparseRetriever")
        .def(py::init<const InvertedIndex&>(), py::arg("index"), py::keep_alive<1, 2>());
    py::class_<DenseRetriever, Retriever>(m, "DenseRetriever")
        .def(py::init<const VectorIndex&>(), py::arg("index"), py::keep_alive<1, 2>());

    py::class_<RetrievalSession>(m, "RetrievalSession")
        .def_readonly("query_id", &RetrievalSession::query_id)
        .def_readonly("seen", &RetrievalSession::seen)
        .def_readonly("charge_accumulated", &RetrievalSession::charge_accumulated)
        .def_readonly("unit_cost", &RetrievalSession::unit_cost);

    py::class_<CostReport::PerQuery>(m, "PerQueryCost")
        .def_readonly("docs_charged", &CostReport::PerQuery::docs_charged)
        .def_readonly("charge", &CostReport::PerQuery::charge);
    py::class_<CostReport>(m, "CostReport")
        .def_readonly("per_query", &CostReport::per_query)
        .def_readonly("total_charge", &CostReport::total_charge)
        .def("to_json", [](const CostReport& r) { return to_json(r); });

    py::class_<RetrievalResult>(m, "RetrievalResult")
        .def_readonly("docs", &RetrievalResult::docs)
        .def_readonly("newly_charged", &RetrievalResult::newly_charged);

    py::class_<MeteredGateway>(m, "MeteredGateway")
        .def(py::init<const Retriever&>(), py::arg("retriever"), py::keep_alive<1, 2>())
        .def("open_session", &MeteredGateway::open_session, py::arg("query_id"),
             py::arg("unit_cost"), py::return_value_policy::reference_internal)
        .def("retrieve", &MeteredGateway::retrieve, py::arg("session"), py::arg("query"),
             py::arg("k"))
        .def("retrieve_top_new", &MeteredGateway::retrieve_top_new, py::arg("session"),
             py::arg("query"), py::arg("budget_k") = 100)
        .def("close_session", &MeteredGateway::close_session)
        .def("ledger_report", &MeteredGateway::ledger_report);

    // --- llm -------------------------------------------------------------------------
    py::class_<QueryContext>(m, "QueryContext")
        .def(py::init([](std::string id, std::string text) {
                 return QueryContext{std::move(id), std::move(text)};
             }),
             py::arg("id"), py::arg("text"))
        .def_readwrite("id", &QueryContext::id)
        .def_readwrite("text", &QueryContext::text);
    py::class_<PassageContext>(m, "PassageContext")
        .def(py::init([](std::string id, std::string text) {
                 return PassageContext{std::move(id), std::move(text)};
             }),
             py::arg("id"), py::arg("text"))
        .def_readwrite("id", &PassageContext::id)
        .def_readwrite("text", &PassageContext::text);

    py::class_<RelVerdict>(m, "RelVerdict")
        .def_static("from_raw", &RelVerdict::from_raw)
        .def_readonly("relevant", &RelVerdict::relevant)
        .def_readonly("raw_response", &RelVerdict::raw_response);
    py::class_<TermList>(m, "TermList")
        .def_static("parse_response", &TermList::parse_response, py::arg("response"), py::arg("m"))
        .def_readonly("terms", &TermList::terms);
    py::class_<CotText>(m, "CotText")
        .def_readonly("text", &CotText::text)
        .def("empty", &CotText::empty);
    m.def("parse_verdict", &parse_verdict, py::arg("raw"));

    py::class_<LlmClient>(m, "LlmClient")
        .def("judge_relevance", &LlmClient::judge_relevance)
        .def("extract_terms", &LlmClient::extract_terms)
        .def("generate_cot", &LlmClient::generate_cot)
        .def("generate_passage", &LlmClient::generate_passage);

    py::class_<OracleLlm, LlmClient>(m, "OracleLlm")
        .def(py::init<const QrelSet&, const InvertedIndex&, const Corpus&, std::size_t>(),
             py::arg("qrels"), py::arg("index"), py::arg("corpus"),
             py::arg("max_cot_chars") = 500, py::keep_alive<1, 2>(), py::keep_alive<1, 3>(),
             py::keep_alive<1, 4>());

    py::class_<HttpLlmConfig>(m, "HttpLlmConfig")
        .def(py::init<>())
        .def_static("from_env", &HttpLlmConfig::from_env)
        .def_readwrite("endpoint", &HttpLlmConfig::endpoint)
        .def_readwrite("api_key", &HttpLlmConfig::api_key)
        .def_readwrite("model", &HttpLlmConfig::model)
        .def_readwrite("timeout_seconds", &HttpLlmConfig::timeout_seconds)
        .def_readwrite("max_retries", &HttpLlmConfig::max_retries)
        .def_readwrite("max_in_flight", &HttpLlmConfig::max_in_flight)
        .def_readwrite("cache_path", &HttpLlmConfig::cache_path)
        .def_readwrite("log_path", &HttpLlmConfig::log_path);
    py::class_<HttpLlmClient, LlmClient>(m, "HttpLlmClient")
        .def(py::init<HttpLlmConfig>(), py::arg("config"))
        .def("complete", &HttpLlmClient::complete);

    py::class_<PromptSet>(m, "PromptSet")
        .def_static("builtin", &PromptSet::builtin)
        .def_static("load_dir", &PromptSet::load_dir)
        .def_readwrite("judge_relevance", &PromptSet::judge_relevance)
        .def_readwrite("extract_terms", &PromptSet::extract_terms)
        .def_readwrite("generate_cot", &PromptSet::generate_cot)
        .def_readwrite("query2doc", &PromptSet::query2doc);

    // --- expansion ----------------------------------------------------------------------
    py::class_<ProqeParams>(m, "ProqeParams")
        .def(py::init<>())
        .def_readwrite("alpha", &ProqeParams::alpha)
        .def_readwrite("beta", &ProqeParams::beta)
        .def_readwrite("gamma", &ProqeParams::gamma)
        .def_readwrite("n_iterations", &ProqeParams::n_iterations)
        .def_readwrite("m_terms", &ProqeParams::m_terms)
        .def_readwrite("candidate_budget_k", &ProqeParams::candidate_budget_k);

    py::class_<TermWeightTable>(m, "TermWeightTable")
        .def(py::init<>())
        .def("update", &TermWeightTable::update, py::arg("terms"), py::arg("relevant"),
             py::arg("beta"), py::arg("gamma"))
        .def("weight", &TermWeightTable::weight)
        .def("contains", &TermWeightTable::contains)
        .def_property_readonly("total_terms", &TermWeightTable::total_terms)
        .def_property_readonly("entries", &TermWeightTable::entries);

    m.def("proqe_update_weights", &proqe_update_weights, py::arg("table"), py::arg("terms"),
          py::arg("verdict"), py::arg("params"));

    py::class_<ExpandedQuery>(m, "ExpandedQuery")
        .def_readonly("text_form", &ExpandedQuery::text_form)
        .def_readonly("provenance", &ExpandedQuery::provenance);
    m.def("formulate_sparse_query", &formulate_sparse_query, py::arg("query"), py::arg("table"),
          py::arg("alpha"));
    m.def("reconstruct_text_form", &reconstruct_text_form);

    py::class_<Rm3Params>(m, "Rm3Params")
        .def(py::init<>())
        .def_readwrite("fb_docs", &Rm3Params::fb_docs)
        .def_readwrite("fb_terms", &Rm3Params::fb_terms)
        .def_readwrite("query_weight", &Rm3Params::query_weight);
    py::class_<RocchioParams>(m, "RocchioParams")
        .def(py::init<>())
        .def_readwrite("fb_docs", &RocchioParams::fb_docs)
        .def_readwrite("fb_terms", &RocchioParams::fb_terms)
        .def_readwrite("a", &RocchioParams::a)
        .def_readwrite("b", &RocchioParams::b)
        .def_readwrite("c", &RocchioParams::c);
    m.def("rm3_expand", &rm3_expand, py::arg("query"), py::arg("index"),
          py::arg("params") = Rm3Params{});
    m.def("rocchio_expand", &rocchio_expand, py::arg("query"), py::arg("index"),
          py::arg("params") = RocchioParams{});
    m.def("cot_expand", &cot_expand, py::arg("query"), py::arg("llm"), py::arg("alpha") = 1.0);
    m.def("query2doc_expand", &query2doc_expand, py::arg("query"), py::arg("llm"),
          py::arg("alpha") = 1.0);

    // --- loop runners ----------------------------------------------------------------------
    py::class_<IterationTrace>(m, "IterationTrace")
        .def_readonly("iteration", &IterationTrace::iteration)
        .def_readonly("doc_id", &IterationTrace::doc_id)
        .def_readonly("doc_score", &IterationTrace::doc_score)
        .def_readonly("relevant", &IterationTrace::relevant)
        .def_readonly("extracted_terms", &IterationTrace::extracted_terms)
        .def_readonly("table_snapshot", &IterationTrace::table_snapshot)
        .def_readonly("charge_after", &IterationTrace::charge_after);
    py::class_<ProqeTrace>(m, "ProqeTrace")
        .def_readonly("query_id", &ProqeTrace::query_id)
        .def_readonly("iterations", &ProqeTrace::iterations)
        .def_readonly("exhausted", &ProqeTrace::exhausted)
        .def_readonly("cot_text", &ProqeTrace::cot_text)
        .def_readonly("final_query_text", &ProqeTrace::final_query_text)
        .def("to_json", [](const ProqeTrace& t) { return to_json(t); });

    py::class_<ProqeSparseResult>(m, "ProqeSparseResult")
        .def_readonly("intermediate", &ProqeSparseResult::intermediate)
        .def_readonly("final_query", &ProqeSparseResult::final_query)
        .def_readonly("table", &ProqeSparseResult::table)
        .def_readonly("trace", &ProqeSparseResult::trace);
    py::class_<ProqeDenseResult>(m, "ProqeDenseResult")
        .def_readonly("intermediate", &ProqeDenseResult::intermediate)
        .def_readonly("final_query", &ProqeDenseResult::final_query)
        .def_readonly("table", &ProqeDenseResult::table)
        .def_readonly("trace", &ProqeDenseResult::trace);

    m.def("run_proqe_sparse", &run_proqe_sparse, py::arg("query"), py::arg("corpus"),
          py::arg("index"), py::arg("gateway"), py::arg("session"), py::arg("llm"),
          py::arg("params") = ProqeParams{});
    m.def("run_proqe_dense", &run_proqe_dense, py::arg("query"), py::arg("corpus"),
          py::arg("vindex"), py::arg("gateway"), py::arg("session"), py::arg("llm"),
          py::arg("encoder"), py::arg("params") = ProqeParams{},
          py::arg("dense_params") = DenseParams{});

    // --- eval -------------------------------------------------------------------------------
    py::class_<RunFile::Entry>(m, "RunEntry")
        .def_readonly("doc_id", &RunFile::Entry::doc_id)
        .def_readonly("score", &RunFile::Entry::score)
        .def_readonly("rank", &RunFile::Entry::rank);
    py::class_<RunFile>(m, "RunFile")
        .def(py::init<std::string>(), py::arg("tag") = "proqe")
        .def("add_query", &RunFile::add_query, py::arg("query_id"), py::arg("hits"))
        .def_property_readonly("tag", &RunFile::tag)
        .def("results_for",
             [](const RunFile& r, const std::string& qid) {
                 const auto* entries = r.results_for(qid);
                 return entries ? *entries : std::vector<RunFile::Entry>{};
             })
        .def("to_trec", &RunFile::to_trec)
        .def("save", &RunFile::save)
        .def_static("parse", &RunFile::parse);

    py::class_<MetricsReport>(m, "MetricsReport")
        .def_readonly("mrr", &MetricsReport::mrr)
        .def_readonly("recall_at_k", &MetricsReport::recall_at_k)
        .def_readonly("n_queries", &MetricsReport::n_queries)
        .def("to_json", &MetricsReport::to_json);

    m.def("mrr", &mrr, py::arg("run"), py::arg("qrels"), py::arg("cutoff_k"));
    m.def("recall_at_k", &recall_at_k, py::arg("run"), py::arg("qrels"), py::arg("k"));
    m.def("evaluate_run", &evaluate_run, py::arg("run"), py::arg("qrels"), py::arg("mrr_cutoff"),
          py::arg("recall_ks"));

    // --- experiments ---------------------------------------------------------------------------
    py::enum_<Method>(m, "Method")
        .value("BM25", Method::kBm25)
        .value("RM3", Method::kRm3)
        .value("ROCCHIO", Method::kRocchio)
        .value("COT", Method::kCot)
        .value("QUERY2DOC", Method::kQuery2Doc)
        .value("PROQE", Method::kProqe)
        .value("PROQE_DENSE", Method::kProqeDense);

    py::class_<ExperimentConfig>(m, "ExperimentConfig")
        .def(py::init<>())
        .def_readwrite("method", &ExperimentConfig::method)
        .def_readwrite("proqe", &ExperimentConfig::proqe)
        .def_readwrite("dense", &ExperimentConfig::dense)
        .def_readwrite("rm3", &ExperimentConfig::rm3)
        .def_readwrite("rocchio", &ExperimentConfig::rocchio)
        .def_readwrite("unit_cost", &ExperimentConfig::unit_cost)
        .def_readwrite("retrieval_k", &ExperimentConfig::retrieval_k)
        .def_readwrite("dense_dim", &ExperimentConfig::dense_dim)
        .def_readwrite("similarity", &ExperimentConfig::similarity)
        .def_readwrite("run_tag", &ExperimentConfig::run_tag);

    py::class_<RunResult>(m, "RunResult")
        .def_readonly("run", &RunResult::run)
        .def_readonly("costs", &RunResult::costs)
        .def_readonly("traces", &RunResult::traces);

    m.def("run_experiment", &run_experiment, py::arg("corpus"), py::arg("index"),
          py::arg("queries"), py::arg("llm"), py::arg("config"),
          py::arg("doc_vectors") = nullptr);

    py::class_<SweepRow>(m, "SweepRow")
        .def_readonly("n", &SweepRow::n)
        .def_readonly("mrr", &SweepRow::mrr)
        .def_readonly("recall_at_1", &SweepRow::recall_at_1)
        .def_readonly("mean_charge", &SweepRow::mean_charge);
    m.def("sweep_iterations", &sweep_iterations, py::arg("corpus"), py::arg("index"),
          py::arg("queries"), py::arg("qrels"), py::arg("llm"), py::arg("base"),
          py::arg("n_values"));
    m.def("sweep_to_csv", &sweep_to_csv);
}
