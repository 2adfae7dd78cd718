#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include "proqe/dense.hpp"

using namespace proqe;

namespace {

Embedding random_embedding(std::size_t dim, std::mt19937& rng) {
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    Embedding e;
    e.values.reserve(dim);
    for (std::size_t i = 0; i < dim; ++i) e.values.push_back(dist(rng));
    return e;
}

}  // namespace

TEST_CASE("reference encoder is deterministic and unit-norm") {
    HashedBowEncoder encoder(1024);
    Embedding a = encoder.encode("progressive query expansion");
    Embedding b = encoder.encode("progressive query expansion");
    CHECK(a == b);
    CHECK(l2_norm(a) == doctest::Approx(1.0).epsilon(1e-9));

    SUBCASE("empty text encodes to the zero vector") {
        Embedding zero = encoder.encode("   ");
        CHECK(zero.is_zero());
    }
}

TEST_CASE("disjoint-vocabulary encodings stay nearly orthogonal") {
    HashedBowEncoder encoder(1024);
    Embedding a = encoder.encode("alpha bravo charlie delta echo");
    Embedding b = encoder.encode("zulu yankee xray whiskey victor");
    double c = cosine(a, b);
    CHECK(std::abs(c) < 0.2);
    // Frozen regression value for these fixture strings at d=1024.
    CHECK(c == doctest::Approx(0.0).epsilon(0.2));
}

TEST_CASE("combine_intermediate implements the weighted-average mix") {
    HashedBowEncoder encoder(64);
    Embedding eq = encoder.encode("query text");

    SUBCASE("tau=0 passes sigma * E_q through") {
        DenseParams params;
        params.sigma = 1.0;
        params.tau = 0.0;
        TermWeightTable table;
        table.update({"anything"}, true, 1.0, 0.0);
        Embedding out = combine_intermediate(eq, table, encoder, params);
        for (std::size_t i = 0; i < eq.dim(); ++i) {
            CHECK(out.values[i] == doctest::Approx(eq.values[i]).epsilon(1e-12));
        }
    }
    SUBCASE("single term with sigma=0, tau=1 returns that term's embedding") {
        DenseParams params;
        params.sigma = 0.0;
        params.tau = 1.0;
        TermWeightTable table;
        table.update({"solar"}, true, 1.0, 0.0);
        Embedding out = combine_intermediate(eq, table, encoder, params);
        Embedding et = encoder.encode("solar");
        for (std::size_t i = 0; i < eq.dim(); ++i) {
            CHECK(out.values[i] == doctest::Approx(et.values[i]).epsilon(1e-12));
        }
    }
    SUBCASE("two unit-weight terms at defaults: 0.8 E_q + 0.1 (E_t1 + E_t2)") {
        DenseParams params;  // sigma 0.8, tau 0.2
        TermWeightTable table;
        table.update({"tide", "lunar"}, true, 1.0, 0.0);
        Embedding out = combine_intermediate(eq, table, encoder, params);
        Embedding t1 = encoder.encode("tide");
        Embedding t2 = encoder.encode("lunar");
        for (std::size_t i = 0; i < eq.dim(); ++i) {
            double expected = 0.8 * eq.values[i] + 0.1 * (t1.values[i] + t2.values[i]);
            CHECK(std::abs(out.values[i] - expected) < 1e-9);
        }
    }
    SUBCASE("an empty table yields sigma * E_q") {
        DenseParams params;
        TermWeightTable table;
        Embedding out = combine_intermediate(eq, table, encoder, params);
        for (std::size_t i = 0; i < eq.dim(); ++i) {
            CHECK(out.values[i] == doctest::Approx(0.8 * eq.values[i]));
        }
    }
    SUBCASE("negative weights contribute signed unless positive_only") {
        DenseParams params;
        params.sigma = 0.0;
        params.tau = 1.0;
        TermWeightTable table;
        table.update({"noise"}, false, 1.0, 2.0);  // weight -2
        Embedding signed_out = combine_intermediate(eq, table, encoder, params);
        Embedding en = encoder.encode("noise");
        for (std::size_t i = 0; i < eq.dim(); ++i) {
            CHECK(signed_out.values[i] == doctest::Approx(-2.0 * en.values[i]));
        }
        params.positive_only = true;
        Embedding positive_out = combine_intermediate(eq, table, encoder, params);
        CHECK(positive_out.is_zero());
    }
    SUBCASE("dimension mismatch is an error") {
        HashedBowEncoder other(32);
        TermWeightTable table;
        CHECK_THROWS_AS(combine_intermediate(eq, table, other, DenseParams{}),
                        std::invalid_argument);
    }
}

TEST_CASE("combine_final mixes the CoT embedding") {
    std::mt19937 rng(5);
    Embedding eq = random_embedding(32, rng);
    Embedding ec = random_embedding(32, rng);

    DenseParams params;  // sigma 0.8, delta 0.2
    Embedding out = combine_final(eq, ec, params);
    for (std::size_t i = 0; i < 32; ++i) {
        CHECK(std::abs(out.values[i] - (0.8 * eq.values[i] + 0.2 * ec.values[i])) < 1e-9);
    }

    SUBCASE("delta=0 drops the CoT side") {
        params.delta = 0.0;
        Embedding o = combine_final(eq, ec, params);
        for (std::size_t i = 0; i < 32; ++i) {
            CHECK(o.values[i] == doctest::Approx(0.8 * eq.values[i]));
        }
    }
    SUBCASE("sigma=0, delta=1 returns the CoT embedding") {
        params.sigma = 0.0;
        params.delta = 1.0;
        Embedding o = combine_final(eq, ec, params);
        for (std::size_t i = 0; i < 32; ++i) CHECK(o.values[i] == doctest::Approx(ec.values[i]));
    }
    SUBCASE("dimension mismatch is an error") {
        Embedding small = random_embedding(16, rng);
        CHECK_THROWS_AS(combine_final(eq, small, params), std::invalid_argument);
    }
}

TEST_CASE("both combinations are linear in every embedding slot") {
    std::mt19937 rng(11);
    DenseParams params;
    params.sigma = 0.7;
    params.tau = 0.3;
    params.delta = 0.4;
    Embedding zero;
    zero.values.assign(24, 0.0);

    for (int trial = 0; trial < 20; ++trial) {
        Embedding x = random_embedding(24, rng);
        Embedding y = random_embedding(24, rng);
        double a = std::uniform_real_distribution<double>(-2, 2)(rng);
        double b = std::uniform_real_distribution<double>(-2, 2)(rng);

        Embedding combo;
        combo.values.resize(24);
        for (std::size_t i = 0; i < 24; ++i) combo.values[i] = a * x.values[i] + b * y.values[i];

        // Intermediate-query slot (empty table isolates it).
        TermWeightTable table;
        HashedBowEncoder encoder(24);
        Embedding lhs = combine_intermediate(combo, table, encoder, params);
        Embedding fx = combine_intermediate(x, table, encoder, params);
        Embedding fy = combine_intermediate(y, table, encoder, params);
        for (std::size_t i = 0; i < 24; ++i) {
            CHECK(std::abs(lhs.values[i] - (a * fx.values[i] + b * fy.values[i])) < 1e-9);
        }

        // Each combine_final slot with the other held at zero.
        Embedding l1 = combine_final(combo, zero, params);
        Embedding f1x = combine_final(x, zero, params);
        Embedding f1y = combine_final(y, zero, params);
        Embedding l2 = combine_final(zero, combo, params);
        Embedding f2x = combine_final(zero, x, params);
        Embedding f2y = combine_final(zero, y, params);
        for (std::size_t i = 0; i < 24; ++i) {
            CHECK(std::abs(l1.values[i] - (a * f1x.values[i] + b * f1y.values[i])) < 1e-9);
            CHECK(std::abs(l2.values[i] - (a * f2x.values[i] + b * f2y.values[i])) < 1e-9);
        }
    }
}

TEST_CASE("dense_search equals the exhaustive scan and respects scaling") {
    std::mt19937 rng(23);
    VectorIndex index(16, Similarity::kDot);
    for (int i = 0; i < 50; ++i) {
        index.add("v" + std::to_string(100 + i), random_embedding(16, rng));
    }
    Embedding query = random_embedding(16, rng);

    auto scan = [&](const Embedding& q, const DocIdSet& exclude) {
        std::vector<ScoredDoc> out;
        for (const auto& id : index.doc_ids()) {
            if (exclude.count(id)) continue;
            out.push_back({id, dot(q, index.vector_of(id))});
        }
        std::sort(out.begin(), out.end(), [](const ScoredDoc& a, const ScoredDoc& b) {
            if (a.score != b.score) return a.score > b.score;
            return a.doc_id < b.doc_id;
        });
        return out;
    };

    auto got = index.search(query, 50);
    auto expected = scan(query, {});
    REQUIRE(got.size() == expected.size());
    for (std::size_t i = 0; i < got.size(); ++i) {
        CHECK(got[i].doc_id == expected[i].doc_id);
        CHECK(got[i].score == doctest::Approx(expected[i].score));
    }

    SUBCASE("positive scaling never changes the ranking") {
        for (double c : {0.1, 2.0, 17.5}) {
            Embedding scaled = query;
            for (double& v : scaled.values) v *= c;
            auto scaled_hits = index.search(scaled, 50);
            REQUIRE(scaled_hits.size() == got.size());
            for (std::size_t i = 0; i < got.size(); ++i) {
                CHECK(scaled_hits[i].doc_id == got[i].doc_id);
            }
        }
    }
    SUBCASE("excluding the top doc promotes the runner-up") {
        auto top = index.search(query, 1);
        auto rest = index.search(query, 1, {top[0].doc_id});
        CHECK(rest[0].doc_id == expected[1].doc_id);
    }
    SUBCASE("cosine ranking matches its own exhaustive scan") {
        VectorIndex cos_index(16, Similarity::kCosine);
        for (const auto& id : index.doc_ids()) cos_index.add(id, index.vector_of(id));
        auto cos_hits = cos_index.search(query, 50);
        std::vector<ScoredDoc> cos_expected;
        for (const auto& id : index.doc_ids()) {
            cos_expected.push_back({id, cosine(query, index.vector_of(id))});
        }
        std::sort(cos_expected.begin(), cos_expected.end(),
                  [](const ScoredDoc& a, const ScoredDoc& b) {
                      if (a.score != b.score) return a.score > b.score;
                      return a.doc_id < b.doc_id;
                  });
        for (std::size_t i = 0; i < cos_hits.size(); ++i) {
            CHECK(cos_hits[i].doc_id == cos_expected[i].doc_id);
        }
    }
}

TEST_CASE("vector files round-trip") {
    std::mt19937 rng(31);
    VectorIndex index(8);
    for (int i = 0; i < 5; ++i) index.add("doc" + std::to_string(i), random_embedding(8, rng));

    std::string path = (std::filesystem::temp_directory_path() / "proqe_vectors.txt").string();
    index.save(path);
    VectorIndex loaded = VectorIndex::load(path);
    std::remove(path.c_str());

    REQUIRE(loaded.size() == index.size());
    CHECK(loaded.dim() == 8);
    for (const auto& id : index.doc_ids()) {
        CHECK(loaded.vector_of(id) == index.vector_of(id));
    }

    SUBCASE("bad headers and rows are rejected") {
        std::string bad = (std::filesystem::temp_directory_path() / "proqe_bad_vectors.txt").string();
        {
            std::ofstream out(bad);
            out << "d=8\nd0 1 2 3\n";
        }
        CHECK_THROWS_AS(VectorIndex::load(bad), std::runtime_error);
        std::remove(bad.c_str());
    }
}

TEST_CASE("vector index rejects mismatched dimensions and duplicates") {
    VectorIndex index(4);
    index.add("a", Embedding{{1, 2, 3, 4}});
    CHECK_THROWS_AS(index.add("b", Embedding{{1, 2}}), std::invalid_argument);
    CHECK_THROWS_AS(index.add("a", Embedding{{1, 2, 3, 4}}), std::runtime_error);
    CHECK_THROWS_AS(index.search(Embedding{{1}}, 1), std::invalid_argument);
}
