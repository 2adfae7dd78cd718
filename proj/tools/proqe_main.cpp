#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "proqe/experiment.hpp"
#include "proqe/llm_http.hpp"

namespace {

using namespace proqe;

struct IndexOptions {
    double k1{0.9};
    double b{0.4};
    bool stem{false};
    std::string stopwords_path;
};

void add_index_flags(CLI::App* cmd, IndexOptions& opts) {
    cmd->add_option("--k1", opts.k1, "BM25 k1")->capture_default_str();
    cmd->add_option("--b", opts.b, "BM25 b")->capture_default_str();
    cmd->add_flag("--stem", opts.stem, "Porter-stem index terms");
    cmd->add_option("--stopwords", opts.stopwords_path, "stopword list file (one word per line)");
}

TokenizerConfig tokenizer_from(const IndexOptions& opts) {
    TokenizerConfig config;
    config.stem = opts.stem;
    if (!opts.stopwords_path.empty()) config.stopwords = load_stopwords(opts.stopwords_path);
    return config;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"ProQE: progressive query expansion over cost-metered retrieval"};
    app.require_subcommand(1);

    // --- index ---------------------------------------------------------
    auto* index_cmd = app.add_subcommand("index", "Build and save an inverted index");
    std::string index_corpus, index_out;
    IndexOptions index_opts;
    index_cmd->add_option("--corpus", index_corpus, "corpus JSONL/TSV")->required();
    index_cmd->add_option("--out", index_out, "output index file")->required();
    add_index_flags(index_cmd, index_opts);

    // --- encode --------------------------------------------------------
    auto* encode_cmd = app.add_subcommand("encode", "Export reference-encoder corpus vectors");
    std::string encode_corpus, encode_out;
    std::size_t encode_dim = 1024;
    encode_cmd->add_option("--corpus", encode_corpus)->required();
    encode_cmd->add_option("--out", encode_out, "vector file (d=<int> header)")->required();
    encode_cmd->add_option("--dim", encode_dim)->capture_default_str();

    // --- run -----------------------------------------------------------
    auto* run_cmd = app.add_subcommand("run", "Run an expansion method over a query set");
    std::string run_corpus, run_index, run_queries, run_qrels, run_out;
    std::string method_name = "proqe", llm_name = "oracle";
    std::string cost_report_path, trace_path, run_tag, vectors_path, prompts_dir;
    std::string llm_cache, llm_log, llm_model;
    int threshold = 1;
    std::size_t oracle_cot_chars = 500;
    ExperimentConfig config;
    IndexOptions run_index_opts;
    std::string similarity_name = "dot";

    run_cmd->add_option("--corpus", run_corpus, "corpus JSONL/TSV")->required();
    run_cmd->add_option("--index", run_index, "pre-built index file (skips indexing)");
    run_cmd->add_option("--queries", run_queries, "TSV query file")->required();
    run_cmd->add_option("--qrels", run_qrels, "qrels (required for --llm oracle)");
    run_cmd->add_option("--threshold", threshold, "relevance grade threshold")
        ->capture_default_str();
    run_cmd->add_option("--method", method_name,
                        "bm25|rm3|rocchio|cot|query2doc|proqe|proqe-dense")
        ->capture_default_str();
    run_cmd->add_option("--llm", llm_name, "oracle|http")->capture_default_str();
    run_cmd->add_option("--out", run_out, "TREC run file")->required();
    run_cmd->add_option("--k", config.retrieval_k, "final retrieval depth")->capture_default_str();
    run_cmd->add_option("--unit-cost", config.unit_cost, "charge per unique document")
        ->capture_default_str();
    run_cmd->add_option("--cost-report", cost_report_path, "write the cost ledger as JSON");
    run_cmd->add_option("--trace", trace_path, "write per-query iteration traces as JSON");
    run_cmd->add_option("--run-tag", run_tag, "tag column for the run file");

    run_cmd->add_option("--n", config.proqe.n_iterations, "loop iterations")->capture_default_str();
    run_cmd->add_option("--m", config.proqe.m_terms, "keywords per iteration")
        ->capture_default_str();
    run_cmd->add_option("--alpha", config.proqe.alpha, "query boost")->capture_default_str();
    run_cmd->add_option("--beta", config.proqe.beta, "relevant increment")->capture_default_str();
    run_cmd->add_option("--gamma", config.proqe.gamma, "irrelevant decrement")
        ->capture_default_str();
    run_cmd->add_option("--budget-k", config.proqe.candidate_budget_k,
                        "candidate over-fetch for top-1-new")
        ->capture_default_str();

    run_cmd->add_option("--sigma", config.dense.sigma, "dense query weight")->capture_default_str();
    run_cmd->add_option("--tau", config.dense.tau, "dense term weight")->capture_default_str();
    run_cmd->add_option("--delta", config.dense.delta, "dense CoT weight")->capture_default_str();
    run_cmd->add_flag("--dense-positive-only", config.dense.positive_only,
                      "restrict the term sum to positive weights");
    run_cmd->add_option("--dim", config.dense_dim, "reference encoder dimension")
        ->capture_default_str();
    run_cmd->add_option("--similarity", similarity_name, "dot|cosine")->capture_default_str();
    run_cmd->add_option("--vectors", vectors_path, "import document vectors from file");

    run_cmd->add_option("--rm3-fb-docs", config.rm3.fb_docs)->capture_default_str();
    run_cmd->add_option("--rm3-fb-terms", config.rm3.fb_terms)->capture_default_str();
    run_cmd->add_option("--rm3-query-weight", config.rm3.query_weight)->capture_default_str();
    run_cmd->add_option("--rocchio-fb-docs", config.rocchio.fb_docs)->capture_default_str();
    run_cmd->add_option("--rocchio-fb-terms", config.rocchio.fb_terms)->capture_default_str();
    run_cmd->add_option("--rocchio-a", config.rocchio.a)->capture_default_str();
    run_cmd->add_option("--rocchio-b", config.rocchio.b)->capture_default_str();
    run_cmd->add_option("--rocchio-c", config.rocchio.c)->capture_default_str();

    run_cmd->add_option("--oracle-cot-chars", oracle_cot_chars,
                        "oracle CoT truncation length (0 disables)")
        ->capture_default_str();
    run_cmd->add_option("--prompts-dir", prompts_dir, "directory with prompt template files");
    run_cmd->add_option("--llm-cache", llm_cache, "JSONL response cache path");
    run_cmd->add_option("--llm-log", llm_log, "JSONL request/response log path");
    run_cmd->add_option("--model", llm_model, "model name for the HTTP client");
    add_index_flags(run_cmd, run_index_opts);

    // --- sweep ---------------------------------------------------------
    auto* sweep_cmd = app.add_subcommand("sweep", "Iteration-count sweep (CSV output)");
    std::string sweep_corpus, sweep_queries, sweep_qrels, sweep_out;
    std::vector<std::size_t> n_values{1, 2, 3, 4, 5, 10, 15};
    int sweep_threshold = 1;
    ExperimentConfig sweep_config;
    IndexOptions sweep_index_opts;
    std::size_t sweep_cot_chars = 0;
    sweep_cmd->add_option("--corpus", sweep_corpus)->required();
    sweep_cmd->add_option("--queries", sweep_queries)->required();
    sweep_cmd->add_option("--qrels", sweep_qrels)->required();
    sweep_cmd->add_option("--threshold", sweep_threshold)->capture_default_str();
    sweep_cmd->add_option("--n-values", n_values, "iteration counts")->capture_default_str();
    sweep_cmd->add_option("--k", sweep_config.retrieval_k)->capture_default_str();
    sweep_cmd->add_option("--unit-cost", sweep_config.unit_cost)->capture_default_str();
    sweep_cmd->add_option("--m", sweep_config.proqe.m_terms)->capture_default_str();
    sweep_cmd->add_option("--oracle-cot-chars", sweep_cot_chars)->capture_default_str();
    sweep_cmd->add_option("--out", sweep_out, "CSV path (stdout if omitted)");
    add_index_flags(sweep_cmd, sweep_index_opts);

    // --- eval ----------------------------------------------------------
    auto* eval_cmd = app.add_subcommand("eval", "Score a TREC run file against qrels");
    std::string eval_run, eval_qrels, eval_out;
    std::size_t eval_k = 20;
    int eval_threshold = 1;
    std::vector<std::size_t> recall_ks{1, 20};
    eval_cmd->add_option("--run", eval_run)->required();
    eval_cmd->add_option("--qrels", eval_qrels)->required();
    eval_cmd->add_option("--k", eval_k, "MRR cutoff")->capture_default_str();
    eval_cmd->add_option("--threshold", eval_threshold, "relevance grade threshold")
        ->capture_default_str();
    eval_cmd->add_option("--recall-k", recall_ks, "recall cutoffs")->capture_default_str();
    eval_cmd->add_option("--out", eval_out, "metrics JSON path (stdout if omitted)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*index_cmd) {
            Corpus corpus = load_corpus(index_corpus);
            InvertedIndex index = InvertedIndex::build(corpus, tokenizer_from(index_opts),
                                                       {index_opts.k1, index_opts.b});
            index.save(index_out);
            std::cout << "indexed " << index.doc_count() << " docs -> " << index_out << "\n";
        } else if (*encode_cmd) {
            Corpus corpus = load_corpus(encode_corpus);
            HashedBowEncoder encoder(encode_dim);
            VectorIndex vectors = VectorIndex::build(corpus, encoder);
            vectors.save(encode_out);
            std::cout << "encoded " << vectors.size() << " docs at d=" << encode_dim << " -> "
                      << encode_out << "\n";
        } else if (*run_cmd) {
            config.method = method_from_string(method_name);
            config.similarity = similarity_from_string(similarity_name);
            config.run_tag = run_tag;

            Corpus corpus = load_corpus(run_corpus);
            InvertedIndex index =
                run_index.empty()
                    ? InvertedIndex::build(corpus, tokenizer_from(run_index_opts),
                                           {run_index_opts.k1, run_index_opts.b})
                    : InvertedIndex::load(run_index);
            std::vector<QueryRecord> queries = load_queries(run_queries);

            QrelSet qrels(threshold);
            if (!run_qrels.empty()) qrels = load_qrels(run_qrels, threshold);

            std::unique_ptr<LlmClient> llm;
            if (llm_name == "oracle") {
                if (run_qrels.empty()) {
                    throw std::runtime_error("--llm oracle requires --qrels");
                }
                llm = std::make_unique<OracleLlm>(qrels, index, corpus, oracle_cot_chars);
            } else if (llm_name == "http") {
                HttpLlmConfig http = HttpLlmConfig::from_env();
                if (!llm_model.empty()) http.model = llm_model;
                http.cache_path = llm_cache;
                http.log_path = llm_log;
                if (!prompts_dir.empty()) http.prompts = PromptSet::load_dir(prompts_dir);
                llm = std::make_unique<HttpLlmClient>(http);
            } else {
                throw std::runtime_error("unknown --llm '" + llm_name + "' (expected oracle|http)");
            }

            std::optional<VectorIndex> imported;
            if (!vectors_path.empty()) {
                imported = VectorIndex::load(vectors_path, config.similarity);
            }

            RunResult result = run_experiment(corpus, index, queries, *llm, config,
                                              imported ? &*imported : nullptr);
            result.run.save(run_out);
            std::cout << "wrote " << result.run.queries().size() << " ranked lists -> " << run_out
                      << " (total charge " << result.costs.total_charge << ")\n";

            if (!cost_report_path.empty()) {
                write_file(cost_report_path, to_json(result.costs));
            }
            if (!trace_path.empty()) {
                std::ostringstream traces;
                traces << "[";
                for (std::size_t i = 0; i < result.traces.size(); ++i) {
                    if (i) traces << ",";
                    traces << to_json(result.traces[i]);
                }
                traces << "]\n";
                write_file(trace_path, traces.str());
            }
        } else if (*sweep_cmd) {
            Corpus corpus = load_corpus(sweep_corpus);
            InvertedIndex index = InvertedIndex::build(corpus, tokenizer_from(sweep_index_opts),
                                                       {sweep_index_opts.k1, sweep_index_opts.b});
            std::vector<QueryRecord> queries = load_queries(sweep_queries);
            QrelSet qrels = load_qrels(sweep_qrels, sweep_threshold);
            OracleLlm llm(qrels, index, corpus, sweep_cot_chars);
            sweep_config.method = Method::kProqe;

            auto rows =
                sweep_iterations(corpus, index, queries, qrels, llm, sweep_config, n_values);
            std::string csv = sweep_to_csv(rows);
            if (sweep_out.empty()) {
                std::cout << csv;
            } else {
                write_file(sweep_out, csv);
                std::cout << "wrote sweep -> " << sweep_out << "\n";
            }
        } else if (*eval_cmd) {
            MetricsReport report =
                evaluate_run_files(eval_run, eval_qrels, eval_k, recall_ks, eval_threshold);
            std::string json = report.to_json();
            if (eval_out.empty()) {
                std::cout << json << "\n";
            } else {
                write_file(eval_out, json);
                std::cout << "wrote metrics -> " << eval_out << "\n";
            }
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
