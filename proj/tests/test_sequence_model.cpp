#include <doctest.h>

#include <cmath>
#include <random>

#include "supercon/errors.hpp"
#include "supercon/sequence_model.hpp"

using namespace supercon;

TEST_CASE("weight presets") {
    const auto sob = WeightedSeqSpace::sobolev_like(8);
    CHECK(sob.kappa()[0] == 1.0);
    CHECK(sob.kappa()[1] == doctest::Approx(1.0 / 16.0));
    const auto ana = WeightedSeqSpace::analytic_like(8);
    CHECK(ana.kappa()[2] == 0.125);
    CHECK_THROWS_AS(WeightedSeqSpace({1.0, 2.0}), DomainError);
    CHECK_THROWS_AS(WeightedSeqSpace({1.0, 0.0}), DomainError);
}

TEST_CASE("projection") {
    const auto space = WeightedSeqSpace::sobolev_like(6);
    const std::vector<double> f{1, -2, 3, 0.5, 0.25, -1};
    CHECK(seq_project(space, f, IndexSubset::all(6)) == f);
    CHECK(seq_project(space, f, IndexSubset::none(6)) == std::vector<double>(6, 0.0));

    IndexSubset s{{true, false, true, false, false, true}};
    const std::vector<double> p = seq_project(space, f, s);
    CHECK(seq_project(space, p, s) == p);

    std::vector<double> r(6);
    for (int i = 0; i < 6; ++i) r[i] = f[i] - p[i];
    double expected = 0.0;
    for (int n : {1, 3, 4}) expected += f[n] * f[n] / space.kappa()[n];
    CHECK(space.native_norm(r) * space.native_norm(r) == doctest::Approx(expected));
    CHECK_THROWS_AS(seq_project(space, std::vector<double>{1.0}, s), DomainError);
}

TEST_CASE("extremal unit coordinates are sharp for both bounds") {
    for (const auto& space : {WeightedSeqSpace::sobolev_like(), WeightedSeqSpace::analytic_like()}) {
        for (std::size_t j : {0u, 5u, 31u, 63u}) {
            const ExtremalCase ex = extremal_case(space, j);
            CHECK(ex.standard.lhs == 1.0);
            CHECK(std::abs(ex.standard.ratio() - 1.0) <= 1e-12);
            CHECK(std::abs(ex.super.ratio() - 1.0) <= 1e-12);
            CHECK(ex.standard.holds);
            CHECK(ex.super.holds);
        }
    }
}

TEST_CASE("f in the retained span has zero error") {
    const auto space = WeightedSeqSpace::analytic_like(10);
    IndexSubset s = IndexSubset::none(10);
    s.contains[2] = s.contains[7] = true;
    std::vector<double> f(10, 0.0);
    f[2] = 3.0;
    f[7] = -1.0;
    const BoundCheck a = verify_standard_bound(space, f, s);
    const BoundCheck b = verify_superconvergence(space, f, s);
    CHECK(a.lhs == 0.0);
    CHECK(a.rhs == 0.0);
    CHECK(b.lhs == 0.0);
    CHECK(a.holds);
    CHECK(b.holds);
    CHECK(verify_standard_bound(space, f, IndexSubset::all(10)).eps == 0.0);
}

TEST_CASE("seeded random trials always satisfy both bounds") {
    for (const auto& space : {WeightedSeqSpace::sobolev_like(), WeightedSeqSpace::analytic_like()}) {
        const TrialReport r = run_trials(space, 1000, 42);
        CHECK(r.all_pass());
        CHECK(r.min_slack >= -1e-12);
        CHECK(r.max_ratio_standard <= 1.0 + 1e-12);
        CHECK(r.max_ratio_super <= 1.0 + 1e-12);
        CHECK_FALSE(r.counterexample.has_value());

        const TrialReport again = run_trials(space, 1000, 42);
        CHECK(again.min_slack == r.min_slack);
    }
    const TrialReport none = run_trials(WeightedSeqSpace::sobolev_like(), 0, 1);
    CHECK(none.all_pass());
}

TEST_CASE("ratio chain: lhs <= eps |r|_K <= eps^2 |v_f|") {
    const auto space = WeightedSeqSpace::sobolev_like(32);
    std::mt19937_64 rng(5);
    std::normal_distribution<double> g;
    std::bernoulli_distribution coin(0.5);
    for (int t = 0; t < 200; ++t) {
        std::vector<double> f(32);
        IndexSubset s = IndexSubset::none(32);
        for (std::size_t n = 0; n < 32; ++n) {
            f[n] = space.kappa()[n] * g(rng);
            s.contains[n] = coin(rng);
        }
        const BoundCheck a = verify_standard_bound(space, f, s);
        const BoundCheck b = verify_superconvergence(space, f, s);
        CHECK(a.lhs <= a.rhs + 1e-12);
        CHECK(a.rhs <= b.rhs + 1e-12);
    }
}

TEST_CASE("projection is contractive") {
    const auto space = WeightedSeqSpace::analytic_like(20);
    std::mt19937_64 rng(8);
    std::normal_distribution<double> g;
    for (int t = 0; t < 50; ++t) {
        std::vector<double> f(20);
        IndexSubset s = IndexSubset::none(20);
        for (std::size_t n = 0; n < 20; ++n) {
            f[n] = g(rng);
            s.contains[n] = g(rng) > 0.0;
        }
        const std::vector<double> p = seq_project(space, f, s);
        std::vector<double> r(20);
        for (std::size_t n = 0; n < 20; ++n) r[n] = f[n] - p[n];
        CHECK(space.l2_norm(r) <= space.l2_norm(f));
        CHECK(space.native_norm(p) <= space.native_norm(f));
    }
}
