#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "streamidx/similarity.hpp"
#include "streamidx/types.hpp"
#include "test_util.hpp"

using namespace streamidx;

TEST_CASE("cosine: identity, orthogonal and analytic cases") {
    Vec v = {0.3, -1.2, 4.0, 0.5};
    CHECK(cosine_similarity(v, v) == doctest::Approx(1.0).epsilon(1e-12));

    Vec a = testutil::axis_vec(4, 0);
    Vec b = testutil::axis_vec(4, 1);
    CHECK(cosine_similarity(a, b) == doctest::Approx(0.0));

    Vec c = {1.0, 1.0, 0.0, 0.0};
    CHECK(cosine_similarity(c, a) == doctest::Approx(0.70710678118654752).epsilon(1e-12));
}

TEST_CASE("cosine: zero-norm input is a domain error") {
    Vec z(4, 0.0);
    Vec v = {1.0, 0.0, 0.0, 0.0};
    CHECK_THROWS_AS(cosine_similarity(z, v), std::domain_error);
    CHECK_THROWS_AS(cosine_similarity(v, z), std::domain_error);
    CHECK_THROWS_AS(cosine_similarity(v, Vec{1.0, 0.0}), std::invalid_argument);
}

TEST_CASE("cosine: symmetry, scale invariance and bound on random inputs") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> coord(-5.0, 5.0);
    std::uniform_real_distribution<double> scale(0.01, 100.0);
    for (int trial = 0; trial < 500; ++trial) {
        Vec a(16), b(16);
        for (auto& x : a) x = coord(rng);
        for (auto& x : b) x = coord(rng);
        if (norm(a) == 0.0 || norm(b) == 0.0) continue;
        const double ab = cosine_similarity(a, b);
        CHECK(ab == cosine_similarity(b, a));
        CHECK(std::abs(ab) <= 1.0 + 1e-12);
        const double c = scale(rng);
        Vec scaled = a;
        for (auto& x : scaled) x *= c;
        CHECK(cosine_similarity(scaled, b) == doctest::Approx(ab).epsilon(1e-12));
    }
}

TEST_CASE("codeword identity audit accepts consistent slots and flags drift") {
    FineCodebook fine;
    fine.slots.push_back(testutil::active_slot({1.0, 2.0, 3.0}, 2.5));
    fine.slots.push_back(testutil::empty_slot(3));
    auto report = audit_codeword_identity(fine);
    CHECK(report.checked == 1);
    CHECK(report.violations == 0);

    fine.slots[0].codeword[1] += 1e-3;
    CHECK(audit_codeword_identity(fine).violations == 1);

    // Empty slot with leftover mass violates the Empty contract.
    fine.slots[0].codeword[1] -= 1e-3;
    fine.slots[1].ema_sum[0] = 0.5;
    CHECK(audit_codeword_identity(fine).violations == 1);
}

TEST_CASE("config defaults match the deployed values and validate") {
    IndexConfig cfg;
    CHECK(cfg.tau == 0.88);
    CHECK(cfg.gamma == 0.9993);
    CHECK(cfg.tau_prime == 0.83);
    CHECK(cfg.lambda == 0.01);
    CHECK(cfg.growth_window == 80);
    CHECK(cfg.min_cluster_size == 4);
    CHECK(cfg.eps1 == 0.25);
    CHECK(cfg.eps2 == 0.2644);
    CHECK(cfg.batch_size == 20480);
    CHECK(cfg.dim == 64);
    CHECK_NOTHROW(cfg.validate());

    cfg.eps2 = 0.1;  // below eps1
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = IndexConfig{};
    cfg.gamma = 1.0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = IndexConfig{};
    cfg.tau = -1.0;  // degenerate always-match mode stays expressible
    cfg.tau_prime = 2.0;
    CHECK_NOTHROW(cfg.validate());
}

TEST_CASE("assignment index keeps forward and reverse consistent") {
    AssignmentIndex index;
    index.assign(10, 0, 3);
    index.assign(11, 0, 3);
    index.assign(12, 1, 5);
    CHECK(index.size() == 3);
    CHECK(index.consistent());
    CHECK(index.lookup(10)->fine == 3);
    CHECK(index.items_in(3)->size() == 2);

    SUBCASE("reassignment moves the reverse entry") {
        index.assign(10, 2, 5);
        CHECK(index.size() == 3);
        CHECK(index.items_in(3)->size() == 1);
        CHECK(index.items_in(5)->size() == 2);
        CHECK(index.consistent());
    }

    SUBCASE("clear_fine drops all items of a slot") {
        auto cleared = index.clear_fine(3);
        CHECK(cleared.size() == 2);
        CHECK(index.size() == 1);
        CHECK(index.items_in(3) == nullptr);
        CHECK(!index.lookup(10));
        CHECK(index.consistent());
    }

    SUBCASE("erase removes a single record") {
        index.erase(11);
        CHECK(index.size() == 2);
        CHECK(index.items_in(3)->size() == 1);
        CHECK(index.consistent());
    }

    SUBCASE("sorted_entries is ordered by item id") {
        auto entries = index.sorted_entries();
        REQUIRE(entries.size() == 3);
        CHECK(entries[0].first == 10);
        CHECK(entries[2].first == 12);
    }
}

TEST_CASE("coarse codebook exposes a dense fine-to-coarse map") {
    CoarseCodebook coarse;
    coarse.prototypes.push_back({{1.0}, 2.0, {0, 2}});
    coarse.prototypes.push_back({{1.0}, 1.0, {1}});
    auto map = coarse.fine_to_coarse(4);
    CHECK(map[0] == 0);
    CHECK(map[1] == 1);
    CHECK(map[2] == 0);
    CHECK(map[3] == CoarseCodebook::kUnmapped);
}
