// Acceptance suite: one verdict line per criterion, nonzero exit on failure.
//
// Everything here re-derives its expected values independently of the library
// code under test (hand formulas, exhaustive scans, counting replays).

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <vector>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "proqe/experiment.hpp"
#include "proqe/llm_http.hpp"
#include "proqe/prompts.hpp"

using namespace proqe;
namespace pt = proqe::testing;

namespace {

struct Criterion {
    std::string name;
    double time_limit_seconds;
    std::function<void(std::vector<std::string>&)> body;
};

void expect(std::vector<std::string>& failures, bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
}

std::string random_term(std::mt19937& rng, std::size_t vocab) {
    return "t" + std::to_string(std::uniform_int_distribution<std::size_t>(0, vocab - 1)(rng));
}

// --- 1. Eq. 1 replay --------------------------------------------------------

void criterion_eq1_replay(std::vector<std::string>& failures) {
    std::mt19937 rng(101);
    for (int seq = 0; seq < 1000; ++seq) {
        bool defaults = seq % 2 == 0;
        double beta = defaults ? 1.0 : static_cast<double>(1 + seq % 3);
        double gamma = defaults ? 0.0 : static_cast<double>(seq % 2);

        TermWeightTable table;
        std::map<std::string, long> rel_count, irrel_count;
        int updates = 5 + seq % 20;
        for (int u = 0; u < updates; ++u) {
            std::vector<std::string> terms;
            std::set<std::string> used;
            int n_terms = 1 + static_cast<int>(rng() % 5);
            for (int t = 0; t < n_terms; ++t) {
                std::string term = random_term(rng, 30);
                if (used.insert(term).second) terms.push_back(term);
            }
            bool relevant = rng() % 2 == 0;
            table.update(terms, relevant, beta, gamma);
            for (const auto& term : terms) {
                if (relevant) ++rel_count[term];
                else ++irrel_count[term];
            }
        }
        for (const auto& [term, w] : table.entries()) {
            double expected = beta * static_cast<double>(rel_count[term]) -
                              gamma * static_cast<double>(irrel_count[term]);
            if (w != expected) {
                expect(failures, false,
                       "seq " + std::to_string(seq) + " term " + term + ": got " +
                           std::to_string(w) + " expected " + std::to_string(expected));
                return;
            }
        }
    }
}

// --- 2. Eq. 2 property ------------------------------------------------------

void criterion_eq2_property(std::vector<std::string>& failures) {
    std::mt19937 rng(202);
    const double weight_pool[] = {-1.0, 0.0, 0.3, 0.5, 1.0, 1.7, 2.0, 3.25};
    for (int trial = 0; trial < 500; ++trial) {
        QueryRecord q{"q", "query word" + std::to_string(trial % 7)};
        double alpha = static_cast<double>(trial % 4);

        TermWeightTable table;
        std::vector<std::pair<std::string, double>> inserted;
        int n_terms = static_cast<int>(rng() % 6);
        for (int t = 0; t < n_terms; ++t) {
            std::string term = "w" + std::to_string(trial) + "x" + std::to_string(t);
            double w = weight_pool[rng() % 8];
            // Reach the target weight through update calls only.
            table.update({term}, true, w, 0.0);
            inserted.emplace_back(term, w);
        }

        // Independent construction of the expected text.
        std::string expected;
        auto append = [&expected](const std::string& s) {
            if (!expected.empty()) expected += ' ';
            expected += s;
        };
        for (int i = 0; i < static_cast<int>(alpha); ++i) append(q.text);
        for (const auto& [term, w] : inserted) {
            if (w <= 0.0) continue;
            for (int r = 0; r < static_cast<int>(std::floor(w)); ++r) append(term);
        }

        ExpandedQuery got = formulate_sparse_query(q, table, alpha);
        expect(failures, got.text_form == expected,
               "trial " + std::to_string(trial) + ": '" + got.text_form + "' != '" + expected + "'");
        expect(failures,
               reconstruct_text_form(q.text, alpha, got.provenance) == got.text_form,
               "trial " + std::to_string(trial) + ": provenance round-trip mismatch");
        for (std::size_t i = 1; i < got.provenance.size(); ++i) {
            // provenance follows table insertion order
            std::size_t a = 0, b = 0;
            for (std::size_t j = 0; j < inserted.size(); ++j) {
                if (inserted[j].first == got.provenance[i - 1].first) a = j;
                if (inserted[j].first == got.provenance[i].first) b = j;
            }
            expect(failures, a < b, "trial " + std::to_string(trial) + ": insertion order broken");
        }
    }
}

// --- 3. Eq. 3 arithmetic ----------------------------------------------------

void criterion_eq3_arithmetic(std::vector<std::string>& failures) {
    std::mt19937 rng(303);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    HashedBowEncoder encoder(32);

    for (int trial = 0; trial < 100; ++trial) {
        DenseParams params;
        params.sigma = std::abs(unit(rng));
        params.tau = std::abs(unit(rng));
        params.delta = std::abs(unit(rng));

        Embedding eq;
        for (int i = 0; i < 32; ++i) eq.values.push_back(unit(rng));

        TermWeightTable table;
        int n_terms = 1 + static_cast<int>(rng() % 5);
        for (int t = 0; t < n_terms; ++t) {
            table.update({"term" + std::to_string(trial) + "n" + std::to_string(t)},
                         rng() % 2 == 0, 1.0 + unit(rng), 0.5);
        }

        // Independent arithmetic.
        std::vector<double> expected(32, 0.0);
        for (int i = 0; i < 32; ++i) expected[i] = params.sigma * eq.values[i];
        double m_total = static_cast<double>(table.total_terms());
        for (const auto& [term, w] : table.entries()) {
            Embedding et = encoder.encode(term);
            for (int i = 0; i < 32; ++i) {
                expected[i] += params.tau * (1.0 / m_total) * w * et.values[i];
            }
        }
        Embedding got = combine_intermediate(eq, table, encoder, params);
        for (int i = 0; i < 32; ++i) {
            expect(failures, std::abs(got.values[i] - expected[i]) < 1e-9,
                   "combine_intermediate trial " + std::to_string(trial));
        }

        Embedding ec;
        for (int i = 0; i < 32; ++i) ec.values.push_back(unit(rng));
        Embedding fin = combine_final(got, ec, params);
        for (int i = 0; i < 32; ++i) {
            double want = params.sigma * got.values[i] + params.delta * ec.values[i];
            expect(failures, std::abs(fin.values[i] - want) < 1e-9,
                   "combine_final trial " + std::to_string(trial));
        }

        // Linearity in the query slot (empty table) and in both final slots.
        double a = unit(rng) * 2.0, b = unit(rng) * 2.0;
        Embedding x, y, combo, zero;
        for (int i = 0; i < 32; ++i) {
            x.values.push_back(unit(rng));
            y.values.push_back(unit(rng));
            combo.values.push_back(a * x.values[i] + b * y.values[i]);
            zero.values.push_back(0.0);
        }
        TermWeightTable empty;
        Embedding lc = combine_intermediate(combo, empty, encoder, params);
        Embedding lx = combine_intermediate(x, empty, encoder, params);
        Embedding ly = combine_intermediate(y, empty, encoder, params);
        Embedding fc = combine_final(zero, combo, params);
        Embedding fx = combine_final(zero, x, params);
        Embedding fy = combine_final(zero, y, params);
        for (int i = 0; i < 32; ++i) {
            expect(failures,
                   std::abs(lc.values[i] - (a * lx.values[i] + b * ly.values[i])) < 1e-9,
                   "linearity (intermediate) trial " + std::to_string(trial));
            expect(failures,
                   std::abs(fc.values[i] - (a * fx.values[i] + b * fy.values[i])) < 1e-9,
                   "linearity (final) trial " + std::to_string(trial));
        }
    }
}

// --- 4. BM25 oracle equivalence ----------------------------------------------

void criterion_bm25_oracle(std::vector<std::string>& failures) {
    auto config = TokenizerConfig::no_stopwords();
    std::mt19937 rng(404);
    for (unsigned corpus_idx = 0; corpus_idx < 20; ++corpus_idx) {
        std::size_t n_docs = 20 + rng() % 81;  // up to ~100 docs
        Corpus corpus = pt::make_random_corpus(n_docs, 15, 12, 1000 + corpus_idx);
        InvertedIndex idx = InvertedIndex::build(corpus, config, {0.9, 0.4});
        pt::Bm25Oracle oracle(corpus, config, 0.9, 0.4);

        WeightedQuery q = WeightedQuery::from_text(
            pt::make_random_query_text(15, 2 + rng() % 3, 1000 + corpus_idx), config);

        auto got = idx.search(q, corpus.size());
        auto expected = oracle.rank_all(q);
        if (got.size() != expected.size()) {
            expect(failures, false, "corpus " + std::to_string(corpus_idx) + ": size mismatch");
            continue;
        }
        for (std::size_t i = 0; i < got.size(); ++i) {
            expect(failures, got[i].doc_id == expected[i].doc_id,
                   "corpus " + std::to_string(corpus_idx) + ": order differs at " +
                       std::to_string(i));
            expect(failures, std::abs(got[i].score - expected[i].score) < 1e-9,
                   "corpus " + std::to_string(corpus_idx) + ": score differs at " +
                       std::to_string(i));
        }
        // Spot-check scalar scores straight from the formula.
        for (const auto& doc : corpus.docs()) {
            double direct = oracle.score(q, doc.id);
            double lib = idx.bm25_score(q, doc.id);
            expect(failures, std::abs(direct - lib) < 1e-9,
                   "corpus " + std::to_string(corpus_idx) + ": scalar score for " + doc.id);
        }
    }
}

// --- 5. Cost-model invariant --------------------------------------------------

class ScriptRetriever : public Retriever {
public:
    explicit ScriptRetriever(std::vector<std::vector<ScoredDoc>> script)
        : script_(std::move(script)) {}
    std::vector<ScoredDoc> search(const QueryInput&, std::size_t k,
                                  const DocIdSet& exclude) const override {
        const auto& docs = script_[std::min(calls_++, script_.size() - 1)];
        std::vector<ScoredDoc> out;
        for (const auto& d : docs) {
            if (!exclude.count(d.doc_id) && out.size() < k) out.push_back(d);
        }
        return out;
    }

private:
    std::vector<std::vector<ScoredDoc>> script_;
    mutable std::size_t calls_{0};
};

void criterion_cost_model(std::vector<std::string>& failures) {
    std::mt19937 rng(505);
    WeightedQuery q;
    q.term_weights["x"] = 1.0;

    for (int trial = 0; trial < 50; ++trial) {
        std::vector<std::vector<ScoredDoc>> script;
        int calls = 2 + static_cast<int>(rng() % 8);
        for (int c = 0; c < calls; ++c) {
            std::vector<ScoredDoc> result;
            DocIdSet used;
            int len = 1 + static_cast<int>(rng() % 5);
            for (int d = 0; d < len; ++d) {
                std::string id = "doc" + std::to_string(rng() % 8);
                if (used.insert(id).second) {
                    result.push_back({id, static_cast<double>(10 - d)});
                }
            }
            script.push_back(std::move(result));
        }
        ScriptRetriever retriever(script);
        MeteredGateway gateway(retriever);
        double unit_cost = 0.1 * static_cast<double>(1 + trial % 5);
        RetrievalSession& s = gateway.open_session("q", unit_cost);
        for (int c = 0; c < calls; ++c) {
            gateway.retrieve(s, q, 5);
            double want = unit_cost * static_cast<double>(s.seen.size());
            expect(failures, std::abs(s.charge_accumulated - want) < 1e-12,
                   "trial " + std::to_string(trial) + ": charge != unit_cost * |seen| after call " +
                       std::to_string(c));
        }
    }

    // A repeated identical query charges nothing new.
    ScriptRetriever fixed({{{"d1", 2.0}, {"d2", 1.0}}});
    MeteredGateway gateway(fixed);
    RetrievalSession& s = gateway.open_session("q", 1.0);
    auto first = gateway.retrieve(s, q, 2);
    auto second = gateway.retrieve(s, q, 2);
    expect(failures, first.newly_charged == 2, "first call should charge both docs");
    expect(failures, second.newly_charged == 0, "repeat query must charge 0");
    expect(failures, s.charge_accumulated == 2.0, "total charge after repeat");
}

// --- 6/7. Directional replication and sweep shape ------------------------------

struct FixtureRun {
    pt::SyntheticFixture fx;
    InvertedIndex index;
    FixtureRun() : fx(pt::make_synthetic_fixture()), index(InvertedIndex::build(fx.corpus, TokenizerConfig{})) {}
};

void criterion_directional(std::vector<std::string>& failures) {
    FixtureRun ctx;
    OracleLlm llm(ctx.fx.qrels, ctx.index, ctx.fx.corpus, 0);

    ExperimentConfig bm25;
    bm25.method = Method::kBm25;
    double bm25_mrr =
        mrr(run_experiment(ctx.fx.corpus, ctx.index, ctx.fx.queries, llm, bm25).run,
            ctx.fx.qrels, 20);

    ExperimentConfig rm3;
    rm3.method = Method::kRm3;
    double rm3_mrr = mrr(run_experiment(ctx.fx.corpus, ctx.index, ctx.fx.queries, llm, rm3).run,
                         ctx.fx.qrels, 20);

    ExperimentConfig proqe;  // n=5, m=5, alpha=1, beta=1, gamma=0 defaults
    proqe.method = Method::kProqe;
    proqe.unit_cost = 0.1;
    double proqe_mrr =
        mrr(run_experiment(ctx.fx.corpus, ctx.index, ctx.fx.queries, llm, proqe).run,
            ctx.fx.qrels, 20);

    std::ostringstream detail;
    detail << "MRR@20 bm25=" << bm25_mrr << " rm3=" << rm3_mrr << " proqe=" << proqe_mrr;
    std::cout << "       " << detail.str() << "\n";

    expect(failures, proqe_mrr > bm25_mrr, "proqe must beat bm25 (" + detail.str() + ")");
    expect(failures, proqe_mrr >= rm3_mrr, "proqe must be >= rm3 (" + detail.str() + ")");
    expect(failures, proqe_mrr - bm25_mrr >= 0.10,
           "margin must be >= 0.10 absolute (" + detail.str() + ")");
}

void criterion_sweep_shape(std::vector<std::string>& failures) {
    FixtureRun ctx;
    OracleLlm llm(ctx.fx.qrels, ctx.index, ctx.fx.corpus, 0);
    ExperimentConfig base;
    base.method = Method::kProqe;
    base.unit_cost = 0.1;
    auto rows = sweep_iterations(ctx.fx.corpus, ctx.index, ctx.fx.queries, ctx.fx.qrels, llm,
                                 base, {1, 2, 3, 4, 5, 10, 15});

    std::ostringstream detail;
    detail << "MRR(n): ";
    for (const auto& r : rows) detail << r.n << "->" << r.mrr << " ";
    std::cout << "       " << detail.str() << "\n";

    for (std::size_t i = 1; i < 5; ++i) {
        expect(failures, rows[i].mrr >= rows[i - 1].mrr - 1e-12,
               "MRR(n) must be non-decreasing for n in 1..5");
    }
    expect(failures, std::abs(rows[6].mrr - rows[5].mrr) < 0.01,
           "MRR must plateau between n=10 and n=15");
}

// --- 8. Baseline degeneracy ----------------------------------------------------

void criterion_degeneracy(std::vector<std::string>& failures) {
    FixtureRun ctx;
    OracleLlm llm(ctx.fx.qrels, ctx.index, ctx.fx.corpus, 0);

    ExperimentConfig bm25;
    bm25.method = Method::kBm25;
    RunResult baseline = run_experiment(ctx.fx.corpus, ctx.index, ctx.fx.queries, llm, bm25);

    ExperimentConfig rm3;
    rm3.method = Method::kRm3;
    rm3.rm3.query_weight = 1.0;
    RunResult rm3_run = run_experiment(ctx.fx.corpus, ctx.index, ctx.fx.queries, llm, rm3);

    ExperimentConfig rocchio;
    rocchio.method = Method::kRocchio;
    rocchio.rocchio.b = 0.0;
    rocchio.rocchio.c = 0.0;
    RunResult rocchio_run = run_experiment(ctx.fx.corpus, ctx.index, ctx.fx.queries, llm, rocchio);

    for (const auto& q : ctx.fx.queries) {
        const auto& expected = *baseline.run.results_for(q.id);
        const auto& rm3_hits = *rm3_run.run.results_for(q.id);
        const auto& rocchio_hits = *rocchio_run.run.results_for(q.id);
        expect(failures, rm3_hits.size() == expected.size(), q.id + ": rm3 list length");
        expect(failures, rocchio_hits.size() == expected.size(), q.id + ": rocchio list length");
        for (std::size_t i = 0; i < expected.size(); ++i) {
            expect(failures, rm3_hits[i].doc_id == expected[i].doc_id,
                   q.id + ": rm3 order differs at rank " + std::to_string(i + 1));
            expect(failures, rocchio_hits[i].doc_id == expected[i].doc_id,
                   q.id + ": rocchio order differs at rank " + std::to_string(i + 1));
        }
    }

    // Same degeneracies on the small fixtures, straight through the expanders.
    auto pie = pt::make_pie_fixture();
    auto config = TokenizerConfig::no_stopwords();
    InvertedIndex pie_idx = InvertedIndex::build(pie.corpus, config);
    WeightedQuery original = WeightedQuery::from_text(pie.query.text, config);
    Rm3Params qw1;
    qw1.query_weight = 1.0;
    RocchioParams b0;
    b0.b = 0.0;
    b0.c = 0.0;
    auto base_hits = pie_idx.search(original, 5);
    auto rm3_hits = pie_idx.search(rm3_expand(pie.query, pie_idx, qw1), 5);
    auto rocchio_hits = pie_idx.search(rocchio_expand(pie.query, pie_idx, b0), 5);
    expect(failures, rm3_hits.size() == base_hits.size(), "pie: rm3 list length");
    expect(failures, rocchio_hits.size() == base_hits.size(), "pie: rocchio list length");
    for (std::size_t i = 0; i < base_hits.size(); ++i) {
        expect(failures, rm3_hits[i].doc_id == base_hits[i].doc_id, "pie: rm3 order");
        expect(failures, rocchio_hits[i].doc_id == base_hits[i].doc_id, "pie: rocchio order");
    }
}

// --- 9. Dense order invariance ---------------------------------------------------

void criterion_dense(std::vector<std::string>& failures) {
    std::mt19937 rng(909);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);

    for (Similarity sim : {Similarity::kDot, Similarity::kCosine}) {
        VectorIndex index(12, sim);
        for (int i = 0; i < 50; ++i) {
            Embedding e;
            for (int d = 0; d < 12; ++d) e.values.push_back(unit(rng));
            index.add("v" + std::to_string(100 + i), e);
        }
        Embedding query;
        for (int d = 0; d < 12; ++d) query.values.push_back(unit(rng));

        // Exhaustive scan with an independent similarity computation.
        std::vector<ScoredDoc> expected;
        for (const auto& id : index.doc_ids()) {
            const Embedding& v = index.vector_of(id);
            double s = 0.0;
            if (sim == Similarity::kDot) {
                for (int d = 0; d < 12; ++d) s += query.values[d] * v.values[d];
            } else {
                double qq = 0.0, vv = 0.0, qv = 0.0;
                for (int d = 0; d < 12; ++d) {
                    qq += query.values[d] * query.values[d];
                    vv += v.values[d] * v.values[d];
                    qv += query.values[d] * v.values[d];
                }
                s = qv / (std::sqrt(qq) * std::sqrt(vv));
            }
            expected.push_back({id, s});
        }
        std::sort(expected.begin(), expected.end(), [](const ScoredDoc& a, const ScoredDoc& b) {
            if (a.score != b.score) return a.score > b.score;
            return a.doc_id < b.doc_id;
        });

        auto got = index.search(query, 50);
        expect(failures, got.size() == expected.size(), "dense scan size");
        for (std::size_t i = 0; i < got.size(); ++i) {
            expect(failures, got[i].doc_id == expected[i].doc_id,
                   to_string(sim) + ": scan order at " + std::to_string(i));
        }

        for (double c : {0.5, 3.0, 42.0}) {
            Embedding scaled = query;
            for (double& v : scaled.values) v *= c;
            auto scaled_hits = index.search(scaled, 50);
            for (std::size_t i = 0; i < got.size(); ++i) {
                expect(failures, scaled_hits[i].doc_id == got[i].doc_id,
                       to_string(sim) + ": scaling by " + std::to_string(c) +
                           " changed the ranking");
            }
        }
    }
}

// --- 10. Metric oracle -------------------------------------------------------------

void criterion_metrics(std::vector<std::string>& failures) {
    QrelSet qrels(1);
    qrels.add("q1", "d1", 1);
    qrels.add("q1", "d9", 1);
    qrels.add("q2", "d2", 1);
    qrels.add("q3", "d3", 1);
    qrels.add("q4", "d4", 1);
    qrels.add("q5", "d5", 0);

    RunFile run("fixture");
    run.add_query("q1", {{"d1", 9.0}, {"d7", 8.0}, {"d9", 7.0}});
    run.add_query("q2", {{"d8", 9.0}, {"d7", 8.0}, {"d6", 7.0}, {"d2", 6.0}});
    run.add_query("q3", {{"d3", 5.0}});
    std::vector<ScoredDoc> q4;
    for (int i = 0; i < 20; ++i) q4.push_back({"x" + std::to_string(100 + i), 30.0 - i});
    q4.push_back({"d4", 1.0});
    run.add_query("q4", q4);
    run.add_query("q5", {{"d5", 2.0}});

    // Spreadsheet: MRR = (1 + 1/4 + 1 + 0 + 0)/5 = 0.45; R@1 = (0.5+0+1+0)/4 = 0.375.
    double got_mrr = mrr(run, qrels, 20);
    double got_r1 = recall_at_k(run, qrels, 1);
    expect(failures, got_mrr == 0.45, "MRR expected 0.45, got " + std::to_string(got_mrr));
    expect(failures, got_r1 == 0.375, "R@1 expected 0.375, got " + std::to_string(got_r1));

    // Cutoff: with k=25, q4's relevant doc at rank 21 counts as 1/21.
    double deep = mrr(run, qrels, 25);
    expect(failures, std::abs(deep - (2.25 + 1.0 / 21.0) / 5.0) < 1e-12,
           "cutoff k=25 must include the rank-21 hit");

    // Thresholding: a judged-2 pair flips to non-relevant at threshold 3.
    QrelSet graded(3);
    graded.add("t1", "a", 3);
    graded.add("t1", "b", 2);
    RunFile trun("t");
    trun.add_query("t1", {{"b", 2.0}, {"a", 1.0}});
    expect(failures, mrr(trun, graded, 20) == 0.5, "threshold 3 must skip the grade-2 doc");
    QrelSet binary(1);
    binary.add("t1", "a", 3);
    binary.add("t1", "b", 2);
    expect(failures, mrr(trun, binary, 20) == 1.0, "threshold 1 must accept the grade-2 doc");
}

// --- 11. Prompt fidelity --------------------------------------------------------------

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return "";
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

void criterion_prompts(std::vector<std::string>& failures) {
    const std::string dir = PROQE_PROMPTS_DIR;
    struct Row {
        const char* file;
        const char* instruction;
    };
    const Row rows[] = {
        {"judge_relevance.txt", "Is the following passage related to the query?"},
        {"extract_terms.txt",
         "extract {m} keywords that may be useful to better retrieve relevant passages."},
        {"generate_cot.txt", "Answer the following query, give rationale before answering."},
    };
    for (const auto& row : rows) {
        std::string text = slurp(dir + "/" + row.file);
        expect(failures, !text.empty(), std::string(row.file) + " missing or empty");
        expect(failures, text.find(row.instruction) != std::string::npos,
               std::string(row.file) + " does not byte-match the instruction");
        std::string first_line = text.substr(0, text.find('\n'));
        expect(failures, first_line.find(row.instruction) != std::string::npos,
               std::string(row.file) + " instruction is not on the first line");
    }
    PromptSet builtin = PromptSet::builtin();
    expect(failures, builtin.judge_relevance == slurp(dir + "/judge_relevance.txt"),
           "builtin judge template differs from the shipped file");
    expect(failures, builtin.extract_terms == slurp(dir + "/extract_terms.txt"),
           "builtin extract template differs from the shipped file");
    expect(failures, builtin.generate_cot == slurp(dir + "/generate_cot.txt"),
           "builtin cot template differs from the shipped file");
    expect(failures, builtin.query2doc == slurp(dir + "/query2doc.txt"),
           "builtin query2doc template differs from the shipped file");
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<Criterion> criteria = {
        {"1. Eq. 1 weight replay over 1000 randomized sequences", 1.0, criterion_eq1_replay},
        {"2. Eq. 2 formulation property and provenance round-trip", 1.0, criterion_eq2_property},
        {"3. Eq. 3 combination arithmetic and linearity to 1e-9", 1.0, criterion_eq3_arithmetic},
        {"4. BM25 search equals the hand-formula oracle on 20 corpora", 10.0, criterion_bm25_oracle},
        {"5. Cost model: charge == unit_cost * |seen|, repeats free", 1.0, criterion_cost_model},
        {"6. Directional replication: ProQE > BM25 (and >= RM3) on the fixture", 30.0,
         criterion_directional},
        {"7. Iteration sweep: non-decreasing in 1..5, plateau at 10..15", 120.0,
         criterion_sweep_shape},
        {"8. RM3(qw=1) and Rocchio(b=c=0) reproduce plain BM25 exactly", 5.0,
         criterion_degeneracy},
        {"9. Dense search equals exhaustive scan; scaling leaves order fixed", 1.0,
         criterion_dense},
        {"10. MRR/R@1 match the hand-computed fixture; cutoff and threshold", 1.0,
         criterion_metrics},
        {"11. Prompt templates byte-match the instructions", 1.0, criterion_prompts},
    };

    int only = argc > 1 ? std::atoi(argv[1]) : 0;
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        if (only > 0 && static_cast<int>(i + 1) != only) continue;
        std::vector<std::string> failures;
        auto start = std::chrono::steady_clock::now();
        criteria[i].body(failures);
        double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (elapsed >= criteria[i].time_limit_seconds) {
            failures.push_back("runtime " + std::to_string(elapsed) + "s exceeds " +
                               std::to_string(criteria[i].time_limit_seconds) + "s");
        }
        if (failures.empty()) {
            std::printf("[PASS] %s (%.2fs)\n", criteria[i].name.c_str(), elapsed);
        } else {
            ++failed;
            std::printf("[FAIL] %s (%.2fs)\n", criteria[i].name.c_str(), elapsed);
            for (const auto& f : failures) std::printf("       - %s\n", f.c_str());
        }
    }
    return failed == 0 ? 0 : 1;
}
