#include <unistd.h>

#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <numbers>

#include "doctest.h"
#include "levyharm/errors.hpp"
#include "levyharm/grid_function.hpp"
#include "levyharm/neumann.hpp"
#include "levyharm/spectrum.hpp"
#include "levyharm/weights.hpp"

using namespace levyharm;

namespace {

GridFunction unit_gaussian() {
    return GridFunction::sample(
        -20.0, 20.0, 0.01,
        [](double x) { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi); },
        3e-88);  // true mass beyond |x| = 20
}

GridFunction inverse_square_weight(double lo, double hi, double dx, double scale) {
    const double tail = 2.0 * scale / (1.0 + hi);
    return GridFunction::sample(
        lo, hi, dx, [scale](double x) { return scale / ((1.0 + std::fabs(x)) * (1.0 + std::fabs(x))); },
        tail);
}

std::filesystem::path temp_csv(const char* stem) {
    return std::filesystem::temp_directory_path() /
           (std::string("levyharm-wiener-") + stem + "-" + std::to_string(::getpid()) + ".csv");
}

}  // namespace

TEST_CASE("sampling and quadrature norms") {
    const GridFunction f = GridFunction::sample(-1.0, 1.0, 0.5, [](double x) { return x; });
    REQUIRE(f.size() == 5);
    CHECK(f.origin == -1.0);
    CHECK(f.x_at(4) == 1.0);
    CHECK(f.l1_norm() == doctest::Approx(1.5).epsilon(1e-15));  // 0.5 * (1+.5+0+.5+1)
    CHECK(f.sup_norm() == 1.0);

    CHECK_THROWS_AS(GridFunction::sample(1.0, -1.0, 0.5, [](double) { return 0.0; }),
                    DomainError);
    GridFunction bad;
    bad.samples = {1.0};
    CHECK_THROWS_AS(bad.validate(), DomainError);
    bad.samples = {1.0, 2.0};
    bad.dx = 0.0;
    CHECK_THROWS_AS(bad.validate(), DomainError);
    bad.dx = 1.0;
    bad.tail_l1 = -1.0;
    CHECK_THROWS_AS(bad.validate(), DomainError);
}

TEST_CASE("CSV persistence round-trips bit-exactly") {
    const GridFunction f = unit_gaussian();
    const auto path = temp_csv("roundtrip");
    save_csv(path, f);
    const GridFunction r = load_csv(path);
    CHECK(r.origin == f.origin);
    CHECK(r.dx == f.dx);
    CHECK(r.tail_l1 == f.tail_l1);
    CHECK(r.samples == f.samples);

    // Infinite declared tails survive the text format.
    GridFunction g = f;
    g.tail_l1 = std::numeric_limits<double>::infinity();
    save_csv(path, g);
    CHECK(std::isinf(load_csv(path).tail_l1));

    {
        std::FILE* out = std::fopen(path.c_str(), "w");
        REQUIRE(out);
        std::fputs("# levyharm-grid v999\norigin,0\n", out);
        std::fclose(out);
    }
    try {
        load_csv(path);
        FAIL("expected a refusal");
    } catch (const DomainError& e) {
        CHECK(e.code() == "version-mismatch");
    }

    {
        std::FILE* out = std::fopen(path.c_str(), "w");
        REQUIRE(out);
        std::fputs("# levyharm-grid v1\norigin,0\nspacing,zero\n", out);
        std::fclose(out);
    }
    CHECK_THROWS_AS(load_csv(path), DomainError);
    std::filesystem::remove(path);
}

TEST_CASE("convolution of indicator boxes is the exact triangle") {
    // a = b = indicator samples on a 0.25 grid; the quadrature convolution at
    // lattice point m is dx times the number of index pairs k + j = m, which
    // is easy to count by hand.
    auto box = GridFunction::sample(0.0, 1.0, 0.25, [](double) { return 1.0; });
    const GridFunction tri = convolve(box, box);
    CHECK(tri.origin == 0.0);
    REQUIRE(tri.size() == 9);
    // dx * number of overlapping lattice points.
    CHECK(tri.samples[0] == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(tri.samples[4] == doctest::Approx(1.25).epsilon(1e-15));
    CHECK(tri.samples[8] == doctest::Approx(0.25).epsilon(1e-15));

    const GridFunction ab = convolve(box, tri);
    const GridFunction ba = convolve(tri, box);
    CHECK(ab.samples == ba.samples);
    CHECK(ab.origin == ba.origin);

    GridFunction other = box;
    other.dx = 0.5;
    CHECK_THROWS_AS(convolve(box, other), DomainError);
}

TEST_CASE("convolution propagates declared tails") {
    GridFunction f = unit_gaussian();
    const GridFunction c0 = convolve(f, f);
    CHECK(c0.tail_l1 <= 1e-80);
    f.tail_l1 = std::numeric_limits<double>::infinity();
    CHECK(std::isinf(convolve(f, f).tail_l1));
}

TEST_CASE("dual-grid transform pair inverts exactly") {
    const GridFunction f = unit_gaussian();
    const auto spectrum = dft_dual(f);
    const auto xi = dual_grid(f);
    REQUIRE(spectrum.size() == f.size());
    REQUIRE(xi.size() == f.size());

    // The mod-n twiddle path must agree with naive single-frequency sums.
    for (std::size_t j : {std::size_t(0), f.size() / 4, f.size() / 2, f.size() - 3}) {
        const auto direct = dft_at(f, xi[j]);
        CHECK(std::abs(spectrum[j] - direct) <= 1e-10 * (1.0 + std::abs(direct)));
    }

    const GridFunction back = inverse_dft(spectrum, f);
    REQUIRE(back.size() == f.size());
    double worst = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i)
        worst = std::max(worst, std::fabs(back.samples[i] - f.samples[i]));
    CHECK(worst <= 1e-12);
}

TEST_CASE("transform turns quadrature convolution into products") {
    const GridFunction a = GridFunction::sample(-3.0, 3.0, 0.1, [](double x) {
        return std::exp(-x * x);
    });
    const GridFunction b = GridFunction::sample(-2.0, 4.0, 0.1, [](double x) {
        return x * std::exp(-2.0 * (x - 1.0) * (x - 1.0));
    });
    const GridFunction c = convolve(a, b);
    for (double xi : {0.0, 0.5, -1.3, 2.0}) {
        const auto lhs = dft_at(c, xi);
        const auto rhs = dft_at(a, xi) * dft_at(b, xi);
        CHECK(std::abs(lhs - rhs) <= 1e-10 * (1.0 + std::abs(rhs)));
    }
}

TEST_CASE("ball truncation splits a function in two") {
    const GridFunction f = unit_gaussian();
    const GridFunction in = truncate_to_ball(f, 5.0);
    const GridFunction out = truncation_tail(f, 5.0);
    REQUIRE(in.size() == f.size());
    REQUIRE(out.size() == f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        CHECK(in.samples[i] + out.samples[i] == f.samples[i]);
        if (std::fabs(f.x_at(i)) <= 5.0) {
            CHECK(out.samples[i] == 0.0);
        } else {
            CHECK(in.samples[i] == 0.0);
        }
    }
    CHECK(out.tail_l1 == f.tail_l1);  // the unsampled tail belongs to the outside part
    CHECK(in.tail_l1 == 0.0);
}

TEST_CASE("weight families: closed forms and submultiplicativity") {
    const WeightSpec pw = WeightSpec::power(2.0);
    CHECK(pw(3.0) == doctest::Approx(15.0).epsilon(1e-15));  // (1+3)^2 - 1
    CHECK(pw(-3.0) == pw(3.0));
    const WeightSpec lg = WeightSpec::log_power(1.5);
    CHECK(lg(0.0) == doctest::Approx(std::pow(2.0, 1.5)).epsilon(1e-15));

    for (double alpha : {0.5, 1.0, 2.0, 3.0}) {
        const double v = check_submultiplicative(WeightSpec::power(alpha),
                                                 weight_sample_pairs(2000, 50.0, 20260814));
        CAPTURE(alpha);
        CHECK(v == 0.0);
    }
    for (double beta : {1.0, 2.0}) {
        const double v = check_submultiplicative(WeightSpec::log_power(beta),
                                                 weight_sample_pairs(2000, 50.0, 20260814));
        CAPTURE(beta);
        CHECK(v == 0.0);
    }

    // Y(x) = x^2 is the classic failure: 1 + (x+y)^2 > (1+x^2)(1+y^2) at (1,1).
    WeightSpec sq;
    sq.family = WeightSpec::Family::callable;
    sq.fn = [](double x) { return x * x; };
    CHECK(check_submultiplicative(sq, {{1.0, 1.0}}) == doctest::Approx(1.0).epsilon(1e-15));

    CHECK_THROWS_AS(WeightSpec::power(-0.5).validate(), DomainError);
}

TEST_CASE("radial tables interpolate and clamp") {
    const WeightSpec w = WeightSpec::radial({1.0, 0.5, 0.25}, 1.0, 2.0);
    CHECK(w(0.0) == 2.0);
    CHECK(w(0.5) == doctest::Approx(1.5).epsilon(1e-15));
    CHECK(w(-2.0) == 0.5);
    CHECK(w(10.0) == 0.5);  // clamped to the last table value
}

TEST_CASE("admissible scaling for the inverse-square profile") {
    std::vector<double> phi;
    const double dr = 0.05;
    for (int i = 0; i <= 8000; ++i) {
        const double r = dr * i;
        phi.push_back(1.0 / ((1.0 + r) * (1.0 + r)));
    }
    const auto res = radial_epsilon(phi, dr, 1);
    // c1 = 2 integral_0^400 (1+r)^-2 dr = 2 (1 - 1/401); c2 is exact at the
    // far end: ((1+400)/(1+200))^2.
    CHECK(res.c1 == doctest::Approx(2.0 * (1.0 - 1.0 / 401.0)).epsilon(1e-6));
    CHECK(res.c2 == doctest::Approx(std::pow(401.0 / 201.0, 2)).epsilon(1e-12));
    CHECK(res.epsilon == doctest::Approx(1.0 / (2.0 * res.c1 * res.c2)).epsilon(1e-12));
    CHECK(std::fabs(res.epsilon - 1.0 / 16.0) <= 1e-3);

    CHECK_THROWS_AS(radial_epsilon({1.0, 2.0, 3.0}, dr, 1), DomainError);  // increasing
    CHECK_THROWS_AS(radial_epsilon(std::vector<double>(1000, 1.0), 1.0, 1),
                    DomainError);  // flat profiles are not integrable
}

TEST_CASE("direct-jump property holds at the admissible scale and fails at 10x") {
    const GridFunction good = inverse_square_weight(-2000.0, 2000.0, 1.0, 1.0 / 16.0);
    const auto ok = check_direct_jump(good, {40.0, 80.0, 160.0, 320.0});
    CHECK(ok.passes);
    CHECK(ok.max_violation == 0.0);
    REQUIRE(ok.tail_ratios.size() == 4);
    for (std::size_t i = 1; i < ok.tail_ratios.size(); ++i)
        CHECK(ok.tail_ratios[i].second <= ok.tail_ratios[i - 1].second + 1e-12);

    const GridFunction bad = inverse_square_weight(-2000.0, 2000.0, 1.0, 10.0 / 16.0);
    const auto fail = check_direct_jump(bad, {40.0, 80.0, 160.0, 320.0});
    CHECK_FALSE(fail.passes);
    CHECK(fail.max_violation > 1e-3);

    GridFunction inf_tail = good;
    inf_tail.tail_l1 = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(check_direct_jump(inf_tail, {40.0}), DomainError);
}

TEST_CASE("band-limited reciprocal: certified Gaussian run") {
    const GridFunction f = unit_gaussian();
    InversionParams p;
    p.k_lo = -1.0;
    p.k_hi = 1.0;
    p.terms = 30;
    const InversionResult res = neumann_invert(f, p);
    REQUIRE(res.status == InversionStatus::ok);
    CHECK(res.epsilon == doctest::Approx(0.10630923762548208).epsilon(1e-9));
    CHECK(res.r == doctest::Approx(1.61).epsilon(1e-12));
    CHECK(res.rho_max == doctest::Approx(0.19480054493791366).epsilon(1e-9));
    CHECK(res.rho_max < 0.5);
    CHECK(res.residual <= 1e-12);
    CHECK(res.oracle_gap <= 1e-12);
    CHECK(res.residual <= res.analytic_bound + res.grid_bound);
    CHECK(res.min_abs_phi_k > 0.6);

    // Independent reciprocal check with naive sums. The certificate pins the
    // product at the dual-grid bins inside the band; there it must be 1 up to
    // roundtrip roundoff.
    std::size_t bins_checked = 0;
    for (double xi : res.xi) {
        if (xi < p.k_lo || xi > p.k_hi) continue;
        const auto prod = dft_at(res.f_tilde, xi) * dft_at(f, xi);
        CHECK(std::abs(prod - 1.0) <= 1e-9);
        ++bins_checked;
    }
    CHECK(bins_checked >= 10);

    // Between bins the finite-aperture reconstruction is free to wobble at the
    // few-1e-3 scale; the coarse bound still separates a converged series from
    // the ~0.19 error a single term would leave.
    for (double xi : {-0.9, -0.33, 0.41, 0.97}) {
        const auto prod = dft_at(res.f_tilde, xi) * dft_at(f, xi);
        CHECK(std::abs(prod - 1.0) <= 2e-2);
    }
}

TEST_CASE("series length buys geometric accuracy until rounding") {
    const GridFunction f = unit_gaussian();
    InversionParams p;
    p.k_lo = -1.0;
    p.k_hi = 1.0;
    double prev = 0.0;
    for (int n : {0, 5, 10}) {
        p.terms = n;
        const InversionResult res = neumann_invert(f, p);
        REQUIRE(res.status == InversionStatus::ok);
        CHECK(res.residual <= res.analytic_bound + res.grid_bound);
        if (n == 0) {
            CHECK(res.residual > 1e-2);
        } else {
            // rho_max < 0.2, so five more terms gain at least 2^-5.
            CHECK(res.residual <= prev * std::ldexp(1.0, -5) + res.grid_bound);
        }
        prev = res.residual;
    }
}

TEST_CASE("vanishing symbol on the band is detected, not inverted") {
    // Indicator of [-pi, pi]: transform 2 sin(pi xi)/xi vanishes at xi = 1,
    // inside the requested band.
    const GridFunction box =
        GridFunction::sample(-std::numbers::pi, std::numbers::pi, 0.01,
                             [](double) { return 1.0; });
    InversionParams p;
    p.k_lo = -1.2;
    p.k_hi = 1.2;
    const InversionResult res = neumann_invert(box, p);
    CHECK(res.status == InversionStatus::symbol_vanishes_on_k);
}

TEST_CASE("unachievable margins are reported, not forced") {
    GridFunction f = unit_gaussian();
    f.tail_l1 = std::numeric_limits<double>::infinity();
    InversionParams p;
    p.k_lo = -1.0;
    p.k_hi = 1.0;
    CHECK(neumann_invert(f, p).status == InversionStatus::epsilon_unachievable);

    p.radius = 0.05;  // forced truncation radius with far too much tail
    const InversionResult forced = neumann_invert(unit_gaussian(), p);
    CHECK(forced.status == InversionStatus::epsilon_unachievable);
}

TEST_CASE("inversion parameter validation") {
    const GridFunction f = unit_gaussian();
    InversionParams p;
    p.k_lo = 1.0;
    p.k_hi = -1.0;
    CHECK_THROWS_AS(neumann_invert(f, p), DomainError);
    p.k_lo = -1.0;
    p.k_hi = 1.0;
    p.terms = -1;
    CHECK_THROWS_AS(neumann_invert(f, p), DomainError);
    p.terms = 10;
    p.window.assign(f.size(), 0.0);  // all-zero window cannot be 1 on K
    try {
        neumann_invert(f, p);
        FAIL("expected a refusal");
    } catch (const DomainError& e) {
        CHECK(e.code() == "window-not-one-on-k");
    }
    p.window.assign(3, 1.0);  // wrong length
    CHECK_THROWS_AS(neumann_invert(f, p), DomainError);
}

TEST_CASE("weighted run certifies the full estimate chain on a wide grid") {
    const GridFunction f = inverse_square_weight(-20000.0, 20000.0, 4.0, 1.0 / 16.0);
    std::vector<double> phi;
    for (int i = 0; i <= 40000; ++i) phi.push_back(1.0 / ((1.0 + i) * (1.0 + i)));
    const WeightSpec Y = WeightSpec::radial(std::move(phi), 1.0, 1.0 / 16.0);

    InversionParams p;
    p.k_lo = -0.5;
    p.k_hi = 0.5;
    p.margin = 0.25;
    p.terms = 20;
    const WeightedInversionReport rep = neumann_invert_weighted(f, Y, p);
    REQUIRE(rep.base.status == InversionStatus::ok);
    CHECK(rep.lambda == doctest::Approx(1.0).epsilon(1e-12));  // f equals its own weight
    CHECK(rep.radius_satisfiable);
    CHECK(rep.funct_r_sup <= rep.funct_r_target);

    REQUIRE(rep.conv_l1_ratio.size() == 6);
    for (std::size_t n = 0; n < rep.conv_l1_ratio.size(); ++n) {
        CAPTURE(n);
        CHECK(rep.conv_l1_ratio[n] <= 1.0 + 1e-9);
    }
    REQUIRE(rep.pointwise_ratio.size() == 4);
    for (std::size_t n = 0; n < rep.pointwise_ratio.size(); ++n) {
        CAPTURE(n);
        CHECK(rep.pointwise_ratio[n] <= 1.0 + 1e-9);
    }
    // The first pointwise bound is tight: the difference itself is lambda Y
    // at worst, against a budget of (lambda + eps) Y.
    CHECK(rep.pointwise_ratio[0] ==
          doctest::Approx(rep.lambda / (rep.lambda + rep.epsilon_target)).epsilon(1e-9));
}

TEST_CASE("weighted run refuses a radius the grid cannot certify") {
    const GridFunction f = unit_gaussian();
    std::vector<double> phi;
    for (int i = 0; i <= 800; ++i) {
        const double r = 0.05 * i;
        phi.push_back(1.0 / ((1.0 + r) * (1.0 + r)));
    }
    const WeightSpec Y = WeightSpec::radial(std::move(phi), 0.05, 1.0 / 16.0);
    InversionParams p;
    p.k_lo = -1.0;
    p.k_hi = 1.0;
    const WeightedInversionReport rep = neumann_invert_weighted(f, Y, p);
    CHECK_FALSE(rep.radius_satisfiable);
    CHECK(rep.funct_r_sup > rep.funct_r_target);
}

TEST_CASE("tapers vanish at the window edges") {
    for (TaperKind k : {TaperKind::hann, TaperKind::blackman}) {
        CHECK(std::fabs(taper_value(k, 0.0)) <= 1e-15);
        CHECK(std::fabs(taper_value(k, 1.0)) <= 1e-15);
        CHECK(taper_value(k, 0.5) > 0.9);
    }
}

TEST_CASE("spectrum mass splits polynomial-like from oscillatory content") {
    const GridFunction smooth =
        GridFunction::sample(-30.0, 30.0, 0.05, [](double x) { return 1.0 + 0.01 * x * x; });
    const auto sm = spectrum_mass(smooth, TaperKind::hann, 0.5);
    CHECK(sm.outside_fraction() <= 1e-2);

    const GridFunction wave =
        GridFunction::sample(-30.0, 30.0, 0.05, [](double x) { return std::cos(5.0 * x); });
    const auto wm = spectrum_mass(wave, TaperKind::hann, 0.5);
    CHECK(wm.outside_fraction() >= 0.9);

    CHECK_THROWS_AS(spectrum_mass(smooth, TaperKind::hann, 0.0), DomainError);
}

TEST_CASE("atom rendering: unit bump mass and spectral factorisation") {
    const GridFunction one = render_atoms({{0.0, 1.0}}, -10.0, 10.0, 0.05, 0.3);
    CHECK(one.l1_norm() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(one.tail_l1 == 0.0);

    // Rendering is a convolution with the bump: transforms factor into
    // bump-envelope times the pure atom sum.
    const std::vector<std::pair<double, double>> atoms = {{-5.0, 2.0}, {1.0, -1.5}, {7.0, 0.5}};
    const GridFunction rendered = render_atoms(atoms, -10.0, 10.0, 0.05, 0.3);
    for (double xi : {0.3, 1.0, 2.7}) {
        std::complex<double> atom_sum = 0.0;
        for (const auto& [pos, w] : atoms)
            atom_sum += w * std::exp(std::complex<double>(0.0, -xi * pos));
        const auto expect = dft_at(one, xi) * atom_sum;
        const auto got = dft_at(rendered, xi);
        CHECK(std::abs(got - expect) <= 1e-9 * (1.0 + std::abs(expect)));
    }

    CHECK_THROWS_AS(render_atoms({{9.9, 1.0}}, -10.0, 10.0, 0.05, 0.3), DomainError);
    CHECK_THROWS_AS(render_atoms({{0.0, 1.0}}, -10.0, 10.0, 0.05, 0.05), DomainError);
}
