#include "fixtures.hpp"

#include <random>
#include <sstream>

namespace proqe::testing {

SyntheticFixture make_synthetic_fixture() {
    SyntheticFixture fx;
    constexpr std::size_t kQueries = 25;
    constexpr std::size_t kTotalDocs = 200;

    std::size_t docs_made = 0;
    for (std::size_t i = 0; i < kQueries; ++i) {
        std::string qi = std::to_string(i);
        std::string topic = "topic" + qi;
        std::string qid = "q" + qi;
        fx.queries.push_back({qid, topic + " common"});

        std::size_t distractors = 1 + i % 4;
        std::size_t relevants = 1 + i % 3;
        fx.first_relevant_rank.push_back(distractors + 1);

        // Distractors repeat the topic term; relevant docs mention it once and
        // carry the discriminative vocabulary instead.
        for (std::size_t j = 0; j < distractors; ++j) {
            std::string id = qid + "-dist" + std::to_string(j);
            std::string junk = "junk" + qi + "x" + std::to_string(j);
            fx.corpus.add({id, topic + " " + topic + " " + topic + " " + junk + " " + junk + "b"});
            ++docs_made;
        }
        for (std::size_t j = 0; j < relevants; ++j) {
            std::string id = qid + "-rel" + std::to_string(j);
            std::ostringstream text;
            text << topic;
            for (const char* d : {"x", "y", "z"}) {
                for (int rep = 0; rep < 4; ++rep) text << " disc" << qi << d;
            }
            text << " fill" << qi << "n" << j;
            fx.corpus.add({id, text.str()});
            fx.qrels.add(qid, id, 1);
            ++docs_made;
        }
    }
    for (std::size_t j = 0; docs_made + j < kTotalDocs; ++j) {
        std::string id = "zz-bg" + std::string(j < 10 ? "0" : "") + std::to_string(j);
        fx.corpus.add({id, "common noise" + std::to_string(j % 7) + " noise" +
                               std::to_string(j % 5) + "b filler" + std::to_string(j % 11)});
    }
    return fx;
}

SuffrageFixture make_suffrage_fixture() {
    SuffrageFixture fx;
    fx.corpus.add({"d1", "suffrage suffrage suffrage women vote"});
    fx.corpus.add({"d2", "women vote often granted gradually"});
    fx.corpus.add({"d3", "weather stays mild today"});
    fx.corpus.add({"d4", "vote counting machines"});
    fx.corpus.add({"d5", "women serve parliament"});
    fx.qrels.add("q1", "d1", 1);
    return fx;
}

PieFixture make_pie_fixture() {
    PieFixture fx;
    fx.corpus.add({"d1", "apple pie pie pie pie"});
    fx.corpus.add({"d2", "apple pie pie pie banana"});
    fx.corpus.add({"d3", "apple pie pie pie orchard"});
    fx.corpus.add({"d4", "grape vine"});
    fx.corpus.add({"d5", "citrus grove"});
    return fx;
}

Corpus make_random_corpus(std::size_t n_docs, std::size_t vocab, std::size_t max_doc_len,
                          unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<std::size_t> len_dist(1, max_doc_len);
    std::uniform_int_distribution<std::size_t> term_dist(0, vocab - 1);
    Corpus corpus;
    for (std::size_t i = 0; i < n_docs; ++i) {
        std::ostringstream text;
        std::size_t len = len_dist(rng);
        for (std::size_t t = 0; t < len; ++t) {
            if (t) text << ' ';
            text << "term" << term_dist(rng);
        }
        corpus.add({"doc" + std::to_string(i), text.str()});
    }
    return corpus;
}

std::string make_random_query_text(std::size_t vocab, std::size_t n_terms, unsigned seed) {
    std::mt19937 rng(seed ^ 0x9e3779b9u);
    std::uniform_int_distribution<std::size_t> term_dist(0, vocab - 1);
    std::ostringstream text;
    for (std::size_t t = 0; t < n_terms; ++t) {
        if (t) text << ' ';
        text << "term" << term_dist(rng);
    }
    return text.str();
}

}  // namespace proqe::testing
