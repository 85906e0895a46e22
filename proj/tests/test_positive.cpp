#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "levyharm/errors.hpp"
#include "levyharm/exit_mc.hpp"
#include "levyharm/function_desc.hpp"
#include "levyharm/mixture.hpp"
#include "levyharm/triplet.hpp"

using namespace levyharm;

namespace {

LevyTriplet drift_diffusion(double a, double b) { return LevyTriplet{a, b, MeasureSpec{}}; }

LevyTriplet with_atoms(double a, double b,
                       std::initializer_list<std::pair<double, double>> atoms) {
    AtomicMeasure am;
    for (const auto& [y, m] : atoms) am.atoms.push_back(Atom{Rational(y), Rational(m)});
    return LevyTriplet{a, b, MeasureSpec(std::move(am))};
}

}  // namespace

TEST_CASE("exponent of exponentials: closed forms") {
    CHECK(laplace_exponent(drift_diffusion(0.0, 2.5), 3.0) ==
          doctest::Approx(7.5).epsilon(1e-15));
    CHECK(laplace_exponent(drift_diffusion(2.0, 0.0), -1.5) ==
          doctest::Approx(4.5).epsilon(1e-15));

    // Atom outside the unit ball: m (e^{lambda y} - 1).
    const LevyTriplet big = with_atoms(0.0, 0.0, {{2.0, 0.5}});
    CHECK(laplace_exponent(big, 0.7) ==
          doctest::Approx(0.5 * (std::exp(1.4) - 1.0)).epsilon(1e-14));

    // Atom strictly inside: m (e^{lambda y} - 1 - lambda y).
    const LevyTriplet small = with_atoms(0.0, 0.0, {{0.5, 2.0}});
    CHECK(laplace_exponent(small, 0.8) ==
          doctest::Approx(2.0 * (std::exp(0.4) - 1.0 - 0.4)).epsilon(1e-14));
}

TEST_CASE("exponent vanishes at zero exactly, for arbitrary triplets") {
    std::mt19937_64 rng(20260814);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int i = 0; i < 20; ++i) {
        const double a = std::fabs(u(rng));
        const double b = u(rng);
        const double y1 = u(rng) + 2.5, m1 = std::fabs(u(rng)) + 0.1;
        const double y2 = u(rng) - 2.5, m2 = std::fabs(u(rng)) + 0.1;
        const LevyTriplet t = with_atoms(a, b, {{y1, m1}, {y2, m2}});
        CHECK(laplace_exponent(t, 0.0) == 0.0);
    }
}

TEST_CASE("exponent is convex") {
    const LevyTriplet t = with_atoms(0.4, -0.9, {{1.5, 0.3}, {-0.5, 1.2}});
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int i = 0; i < 100; ++i) {
        const double l1 = u(rng), l2 = u(rng);
        const double mid = laplace_exponent(t, 0.5 * (l1 + l2));
        const double avg =
            0.5 * (laplace_exponent(t, l1) + laplace_exponent(t, l2));
        CHECK(mid <= avg + 1e-12 * (1.0 + std::fabs(avg)));
    }
}

TEST_CASE("exponential moments diverge beyond the density rate") {
    DensityMeasure d;
    d.name = "exponential";
    d.scale = 1.0;
    d.rate = 1.5;
    const LevyTriplet t{0.0, 0.0, MeasureSpec(d)};
    CHECK(std::isfinite(laplace_exponent(t, 1.4)));
    try {
        laplace_exponent(t, 1.6);
        FAIL("expected a refusal");
    } catch (const DomainError& e) {
        CHECK(e.code() == "divergent-exponential-moment");
    }
}

TEST_CASE("harmonic exponent set of a drift-diffusion") {
    // a = 1, b = -1: kappa(lambda) = lambda (lambda - 1); roots 0 and 1.
    const auto roots = lambda_set(drift_diffusion(1.0, -1.0), -5.0, 5.0, 1e-10);
    REQUIRE(roots.size() == 2);
    CHECK(std::fabs(roots[0] - 0.0) <= 1e-10);
    CHECK(std::fabs(roots[1] - 1.0) <= 1e-10);

    // Tangent root at the origin has no sign change and must still appear.
    const auto sym = lambda_set(drift_diffusion(1.0, 0.0), -1.0, 1.0, 1e-10);
    REQUIRE(sym.size() == 1);
    CHECK(std::fabs(sym[0]) <= 1e-10);

    CHECK_THROWS_AS(lambda_set(drift_diffusion(1.0, 0.0), 1.0, -1.0, 1e-10), DomainError);
}

TEST_CASE("harmonic exponent of a jump process against a frozen root") {
    // kappa(lambda) = e^lambda - 1 - 3 lambda for an atom at 1 with unit mass
    // and drift -3; its positive root was located independently by bisection
    // on the closed form and frozen here.
    const LevyTriplet t = with_atoms(0.0, -3.0, {{1.0, 1.0}});
    const auto roots = lambda_set(t, 0.5, 5.0, 1e-12);
    REQUIRE(roots.size() == 1);
    CHECK(std::fabs(roots[0] - 1.90381369444038) <= 1e-9);
    CHECK(std::fabs(laplace_exponent(t, roots[0])) <= 1e-11);
}

TEST_CASE("mixtures of harmonic exponentials are annihilated") {
    const LevyTriplet t = drift_diffusion(1.0, -1.0);
    ExponentialMixture m;
    m.terms = {{0.0, 3.0}, {1.0, 2.0}};
    std::vector<double> xs;
    for (int i = 0; i <= 20; ++i) xs.push_back(-5.0 + 0.5 * i);
    const auto rep = verify_mixture(m, t, xs);
    CHECK(rep.max_numeric <= 1e-9);
    CHECK(rep.max_analytic <= 1e-12);
    CHECK(rep.per_point.size() == xs.size());

    // A non-root exponent leaves a visible residual.
    ExponentialMixture offkey;
    offkey.terms = {{0.5, 1.0}};
    CHECK(verify_mixture(offkey, t, xs).max_numeric > 1e-3);

    ExponentialMixture bad;
    bad.terms = {{0.0, 1.0}, {0.0, 1.0}};
    CHECK_THROWS_AS(bad.validate(), DomainError);
    bad.terms = {{0.0, -1.0}};
    CHECK_THROWS_AS(bad.validate(), DomainError);
}

TEST_CASE("exit samples always land outside the open interval") {
    ExitMcParams p;
    p.interval_left = 1.0;
    p.interval_right = 2.0;
    p.paths = 500;
    p.dt = 1e-3;
    p.seed = 11;
    const LevyTriplet t = with_atoms(0.5, 0.0, {{3.0, 0.25}, {-3.0, 0.25}});
    const ExitLaw law = exit_distribution_mc(t, p);
    REQUIRE(law.samples.size() == 500);
    for (double s : law.samples) {
        CHECK((s <= -1.0 || s >= 2.0));
    }
    const double f = law.right_exit_fraction();
    CHECK(f >= 0.0);
    CHECK(f <= 1.0);
    CHECK(law.right_exit_se() > 0.0);
}

TEST_CASE("exit law is a pure function of the seed, not the thread count") {
    ExitMcParams p;
    p.interval_left = 1.0;
    p.interval_right = 1.0;
    p.paths = 2000;
    p.dt = 1e-3;
    p.seed = 99;
    const LevyTriplet t = drift_diffusion(1.0, 0.0);

    p.threads = 1;
    const ExitLaw one = exit_distribution_mc(t, p);
    p.threads = 4;
    const ExitLaw four = exit_distribution_mc(t, p);
    CHECK(one.samples == four.samples);

    p.seed = 100;
    const ExitLaw other = exit_distribution_mc(t, p);
    CHECK(one.samples != other.samples);
}

TEST_CASE("symmetric exit from a symmetric interval is a fair coin") {
    ExitMcParams p;
    p.interval_left = 1.0;
    p.interval_right = 1.0;
    p.paths = 20000;
    p.dt = 1e-3;
    p.seed = 20260814;
    const ExitLaw law = exit_distribution_mc(drift_diffusion(1.0, 0.0), p);
    CHECK(std::fabs(law.right_exit_fraction() - 0.5) <= 4.0 * law.right_exit_se());
}

TEST_CASE("paired refinement shares the coarse randomness") {
    ExitMcParams p;
    p.interval_left = 1.0;
    p.interval_right = 2.0;
    p.paths = 5000;
    p.dt = 1e-3;
    p.seed = 3;
    const auto laws = exit_distribution_mc_paired(drift_diffusion(1.0, 0.0), p);
    CHECK(laws.coarse.samples.size() == 5000);
    CHECK(laws.fine.samples.size() == 5000);
    // Antithetic-free CRN: the two arms must be far closer than independent
    // runs (independent SE ~ 0.007; the coupled gap stays within ~1 SE).
    const double gap =
        std::fabs(laws.coarse.right_exit_fraction() - laws.fine.right_exit_fraction());
    CHECK(gap <= 3.0 * laws.fine.right_exit_se());
}

TEST_CASE("exit simulation validates its inputs") {
    ExitMcParams p;
    const LevyTriplet t = drift_diffusion(1.0, 0.0);
    p.x0 = 5.0;
    CHECK_THROWS_AS(exit_distribution_mc(t, p), DomainError);
    p.x0 = 0.0;
    p.paths = 0;
    CHECK_THROWS_AS(exit_distribution_mc(t, p), DomainError);
    p.paths = 10;
    p.dt = 0.0;
    CHECK_THROWS_AS(exit_distribution_mc(t, p), DomainError);
    p.dt = 1e-3;

    DensityMeasure d;
    d.name = "exponential";
    const LevyTriplet td{1.0, 0.0, MeasureSpec(d)};
    CHECK_THROWS_AS(exit_distribution_mc(td, p), DomainError);
}

TEST_CASE("occupation identity closes for linear and quadratic observables") {
    ExitMcParams p;
    p.interval_left = 1.0;
    p.interval_right = 2.0;
    p.paths = 20000;
    p.dt = 1e-3;
    p.seed = 20260814;
    const LevyTriplet t = drift_diffusion(1.0, 0.0);

    const auto lin = dynkin_residual(t, p, fd_polynomial({0.0, 1.0}));
    CHECK(lin.paths == 20000);
    CHECK(std::fabs(lin.estimate) <= 4.0 * lin.standard_error);

    const auto quad = dynkin_residual(t, p, fd_polynomial({0.0, 0.0, 1.0}));
    CHECK(std::fabs(quad.estimate) <= 4.0 * quad.standard_error);
}
