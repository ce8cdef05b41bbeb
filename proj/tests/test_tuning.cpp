#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numeric>

#include "confopt/problems.hpp"
#include "confopt/tuning.hpp"

using namespace confopt;

TEST_CASE("samples respect per-method parameter roles and bounds") {
    SearchSpace space;
    bool saw_zero_delta = false, saw_positive_delta = false;
    for (std::uint64_t seed = 0; seed < 500; ++seed) {
        const OptimizerParams cm = space.sample(Method::CM, seed);
        CHECK(cm.delta == 0.0);
        CHECK(cm.alpha == 1.0);
        CHECK(cm.epsilon >= space.epsilon_lo);
        CHECK(cm.epsilon <= space.epsilon_hi);
        CHECK(cm.mu >= space.mu_lo);
        CHECK(cm.mu <= space.mu_hi);

        const OptimizerParams nag = space.sample(Method::NAG, seed);
        CHECK(nag.delta == 0.0);
        CHECK(nag.alpha == 0.0);

        const OptimizerParams rgd = space.sample(Method::RGD, seed);
        CHECK(rgd.alpha >= 0.0);
        CHECK(rgd.alpha <= 1.0);
        if (rgd.delta == 0.0)
            saw_zero_delta = true;
        else {
            saw_positive_delta = true;
            CHECK(rgd.delta >= space.delta_lo);
            CHECK(rgd.delta <= space.delta_hi);
        }
    }
    // The delta prior mixes an atom at zero with a log-uniform component.
    CHECK(saw_zero_delta);
    CHECK(saw_positive_delta);
}

TEST_CASE("sampling is a pure function of the seed") {
    SearchSpace space;
    const OptimizerParams a = space.sample(Method::RGD, 777);
    const OptimizerParams b = space.sample(Method::RGD, 777);
    CHECK(a.epsilon == b.epsilon);
    CHECK(a.mu == b.mu);
    CHECK(a.delta == b.delta);
    CHECK(a.alpha == b.alpha);
}

TEST_CASE("search space validation") {
    SearchSpace bad;
    bad.epsilon_lo = 1.0;
    bad.epsilon_hi = 0.1;
    CHECK_THROWS_AS(bad.validate(), ValidationError);
}

TEST_CASE("trial seeds decorrelate consecutive indices") {
    CHECK(trial_seed(42, 0) != trial_seed(42, 1));
    CHECK(trial_seed(42, 0) != trial_seed(43, 0));
    CHECK(trial_seed(42, 5) == trial_seed(42, 5));
}

TEST_CASE("random search: budget respected and bit-for-bit deterministic") {
    Problem booth = make_booth();
    const SearchResult a = random_search(booth, Method::CM, 40, 50, 9);
    const SearchResult b = random_search(booth, Method::CM, 40, 50, 9);
    REQUIRE(a.trials.size() == 40);
    CHECK(a.best.score == b.best.score);
    CHECK(a.best.params.epsilon == b.best.params.epsilon);
    CHECK(a.best.params.mu == b.best.params.mu);
    for (std::size_t i = 0; i < a.trials.size(); ++i) CHECK(a.trials[i].score == b.trials[i].score);

    const SearchResult single = random_search(booth, Method::CM, 1, 10, 9);
    CHECK(single.trials.size() == 1);
    CHECK_THROWS_AS(random_search(booth, Method::CM, 0, 10, 9), ValidationError);
}

TEST_CASE("a diverged trial never wins") {
    Problem booth = make_booth();
    const SearchResult r = random_search(booth, Method::RGD, 100, 100, 4);
    CHECK_FALSE(r.all_diverged);
    CHECK_FALSE(r.best.diverged);
    CHECK(std::isfinite(r.best.score));
    for (const auto& t : r.trials)
        if (!t.diverged) CHECK(r.best.score <= t.score);
}

TEST_CASE("all-diverged searches are flagged, not silently ranked") {
    // Force divergence: a steep quadratic with only huge learning rates in range.
    Problem steep = make_scaled_quadratic(1e6, 2);
    SearchSpace space;
    space.epsilon_lo = 0.9;
    space.epsilon_hi = 1.0;
    const SearchResult r = random_search(steep, Method::CM, 10, 200, 3, space);
    CHECK(r.all_diverged);
    for (const auto& t : r.trials) CHECK(t.score == kInfinity);
}

TEST_CASE("histogram covers converged trials with correct bin geometry") {
    Problem booth = make_booth();
    const SearchResult r = random_search(booth, Method::RGD, 60, 50, 12);
    std::int64_t converged = 0;
    for (const auto& t : r.trials)
        if (!t.diverged) ++converged;

    const Histogram he = histogram(r.trials, "epsilon", 10);
    CHECK(he.counts.size() == 10);
    CHECK(he.edges.size() == 11);
    CHECK_FALSE(he.empty_flagged);
    CHECK(std::accumulate(he.counts.begin(), he.counts.end(), std::int64_t{0}) == converged);
    // Log-spaced bins: constant ratio between consecutive edges.
    const double ratio = he.edges[1] / he.edges[0];
    for (std::size_t i = 1; i + 1 < he.edges.size(); ++i)
        CHECK(he.edges[i + 1] / he.edges[i] == doctest::Approx(ratio).epsilon(1e-10));

    const Histogram hm = histogram(r.trials, "mu", 10);
    CHECK(hm.edges[1] - hm.edges[0] ==
          doctest::Approx(hm.edges[2] - hm.edges[1]).epsilon(1e-10));

    CHECK_THROWS_AS(histogram(r.trials, "beta", 10), ValidationError);
    CHECK_THROWS_AS(histogram(r.trials, "mu", 1), ValidationError);

    const Histogram empty = histogram({}, "mu", 4);
    CHECK(empty.empty_flagged);
}
