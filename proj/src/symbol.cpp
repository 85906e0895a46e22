#include "levyharm/symbol.hpp"

#include <cmath>

namespace levyharm {

namespace {

const Rational kOne(1);

// Largest |xi * y| that still resolves individual oscillations in double.
constexpr double kMaxPhase = 1e15;

// Reduce q modulo 2 into [0, 2).
Rational mod_two(const Rational& q) {
    Rational half = q / 2;
    Rational r = q - 2 * Rational(floor_rational(half));
    return r;
}

}  // namespace

double cos_pi_rational(const Rational& r_in) {
    Rational r = mod_two(r_in);
    if (r == 0) return 1.0;
    if (r == 1) return -1.0;
    Rational twice = 2 * r;
    if (twice == 1 || twice == 3) return 0.0;  // r = 1/2 or 3/2
    return std::cos(M_PI * r.get_d());
}

SymbolValue symbol_eval(const LevyTriplet& t, double xi, SymbolInfo* info) {
    t.validate();
    SymbolValue s;
    s.re = t.diffusion * xi * xi;
    s.im = -t.drift * xi;
    if (info) *info = SymbolInfo{};

    if (t.measure.is_atomic()) {
        for (const auto& a : t.measure.atomic().atoms) {
            double y = a.location.get_d();
            double m = a.mass.get_d();
            double phase = xi * y;
            s.re += m * (1.0 - std::cos(phase));
            s.im += m * (-std::sin(phase));
            if (abs(a.location) < kOne) s.im += m * phase;
        }
    } else if (t.measure.is_sparse_geometric()) {
        const auto& sg = t.measure.sparse_geometric();
        for (int k = 0; k < sg.listed_count(); ++k) {
            double y = mpz_get_d(sg.x[static_cast<size_t>(k)].get_mpz_t());
            if (!std::isfinite(y) || std::fabs(xi) * y > kMaxPhase)
                throw DomainError("symbol-inexact-at-xi",
                                  "|xi| * x_k exceeds double resolution; evaluate at a "
                                  "rational multiple of pi instead");
            double m = SparseGeometricMeasure::mass(k).get_d();
            // Symmetric pair at +-x_k, both outside the open unit ball
            // (x_0 = 1 sits on the boundary): purely real contribution.
            s.re += 2.0 * m * (1.0 - std::cos(xi * y));
        }
        if (info) info->truncation_bound = 2.0 * sg.tail_pair_mass().get_d();
    } else {
        const auto& dm = t.measure.density();
        // Symmetric density: the jump part is purely real, and the drift
        // compensation integrates to zero by oddness.
        QuadratureResult q = integrate_against_density(
            dm, [xi](double y) { return 2.0 * (1.0 - std::cos(xi * y)); }, 2.0);
        s.re += q.value;
        if (info) {
            info->truncation_bound = q.tail_bound;
            info->quad_achieved_tol = q.achieved_tol;
        }
    }
    return s;
}

SymbolValue symbol_eval_pi_multiple(const LevyTriplet& t, const Rational& c, SymbolInfo* info) {
    t.validate();
    double xi = M_PI * c.get_d();
    SymbolValue s;
    s.re = t.diffusion * xi * xi;
    s.im = -t.drift * xi;
    if (info) *info = SymbolInfo{};

    if (t.measure.is_atomic()) {
        for (const auto& a : t.measure.atomic().atoms) {
            double m = a.mass.get_d();
            Rational phase_over_pi = c * a.location;
            s.re += m * (1.0 - cos_pi_rational(phase_over_pi));
            // sin(pi r) = cos(pi (r - 1/2)); exact on the same lattice.
            s.im += m * (-cos_pi_rational(phase_over_pi - make_rational(1, 2)));
            if (abs(a.location) < kOne) s.im += m * xi * a.location.get_d();
        }
    } else if (t.measure.is_sparse_geometric()) {
        const auto& sg = t.measure.sparse_geometric();
        for (int k = 0; k < sg.listed_count(); ++k) {
            double m = SparseGeometricMeasure::mass(k).get_d();
            Rational phase_over_pi = c * Rational(sg.x[static_cast<size_t>(k)]);
            s.re += 2.0 * m * (1.0 - cos_pi_rational(phase_over_pi));
        }
        if (info) info->truncation_bound = 2.0 * sg.tail_pair_mass().get_d();
    } else {
        return symbol_eval(t, xi, info);
    }
    return s;
}

}  // namespace levyharm
