#include "levyharm/levy_operator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "levyharm/errors.hpp"
#include "levyharm/measure.hpp"

namespace levyharm {

namespace {

// Jump part against the symmetric two-sided sparse family. Terms whose
// locations provably exceed `reach` contribute exactly -2 f(x) p_k when f is
// compactly supported; for merely bounded f the remainder is certified, not
// added.
double sparse_jump_part(const SparseGeometricMeasure& sp, const FunctionDesc& f,
                        double x, ApplyInfo* info) {
    const bool compact = f.support.has_value();
    if (!compact && !f.sup_norm.has_value()) {
        throw DomainError("divergent-jump-integral",
                          "function has neither compact support nor a certified "
                          "sup-norm bound; jump sum against the sparse family "
                          "cannot be certified");
    }

    double reach = std::abs(x);
    if (compact) {
        reach += std::max(std::abs(f.support->first), std::abs(f.support->second));
    }
    BigInt reach_int(std::ceil(reach) + 1.0);

    const double fx = f.value(x);
    double acc = 0.0;
    int k = 0;
    for (;; ++k) {
        if (sp.location_lower_bound(k) > reach_int) break;
        if (k >= sp.listed_count()) {
            throw DomainError("truncation-insufficient",
                              "a jump location inside the evaluation reach is "
                              "not listed; extend the location table");
        }
        const double xk = sp.x[static_cast<std::size_t>(k)].get_d();
        const double mass = SparseGeometricMeasure::mass(k).get_d();
        acc += mass * (f.value(x + xk) + f.value(x - xk) - 2.0 * fx);
    }
    // Total mass of the pairs from k0 onward is 2^-k0 exactly.
    const double tail_mass = std::ldexp(1.0, -k);
    if (compact) {
        acc -= fx * tail_mass;  // f vanishes at every omitted location
    } else if (info) {
        info->truncation_bound += 2.0 * (*f.sup_norm) * tail_mass;
    }
    return acc;
}

double atomic_jump_part(const AtomicMeasure& am, const FunctionDesc& f, double x) {
    double acc = 0.0;
    const Rational one(1);
    for (const auto& a : am.atoms) {
        const double y = a.location.get_d();
        const double m = a.mass.get_d();
        double term = f.value(x + y) - f.value(x);
        if (abs(a.location) < one) term -= y * f.deriv1(x);
        acc += m * term;
    }
    return acc;
}

double density_jump_part(const DensityMeasure& dm, const FunctionDesc& f, double x,
                         ApplyInfo* info) {
    if (!f.sup_norm.has_value()) {
        throw DomainError("divergent-jump-integral",
                          "density jump integrals require a certified sup-norm "
                          "bound on the function to control the tail");
    }
    const double fx = f.value(x);
    const double fpx = f.deriv1(x);
    // Symmetric densities: fold both signs, the compensator cancels pairwise
    // inside the unit ball. g(y) = f(x+y) + f(x-y) - 2 f(x) for y >= 1 and the
    // same minus the (cancelling) compensation below 1.
    auto g = [&](double y) {
        double term = f.value(x + y) + f.value(x - y) - 2.0 * fx;
        (void)fpx;
        return term;
    };
    QuadratureResult qr = integrate_against_density(dm, g, 4.0 * (*f.sup_norm));
    if (info) {
        info->quad_achieved_tol = std::max(info->quad_achieved_tol, qr.achieved_tol);
        info->truncation_bound += qr.tail_bound;
    }
    return qr.value;
}

}  // namespace

double apply_operator(const LevyTriplet& t, const FunctionDesc& f, double x,
                      ApplyInfo* info) {
    t.validate();
    double out = t.diffusion * f.deriv2(x) + t.drift * f.deriv1(x);
    if (t.measure.is_empty()) return out;
    if (t.measure.is_atomic()) {
        out += atomic_jump_part(t.measure.atomic(), f, x);
    } else if (t.measure.is_sparse_geometric()) {
        out += sparse_jump_part(t.measure.sparse_geometric(), f, x, info);
    } else {
        out += density_jump_part(t.measure.density(), f, x, info);
    }
    return out;
}

Rational apply_operator_exact(const LevyTriplet& t, const ExactFunction& f,
                              const Rational& x) {
    t.validate();
    if (t.drift != 0.0) {
        throw DomainError("exact-path-unsupported",
                          "exact evaluation carries no first derivative; drift "
                          "must be zero");
    }
    Rational out(0);
    if (t.diffusion != 0.0) {
        if (!f.second_derivative) {
            throw DomainError("exact-path-unsupported",
                              "diffusion term requires an exact second derivative");
        }
        Rational a(t.diffusion);  // doubles are dyadic rationals, conversion exact
        out += a * f.second_derivative(x);
    }
    if (t.measure.is_empty()) return out;
    if (t.measure.is_atomic()) {
        const Rational one(1);
        for (const auto& a : t.measure.atomic().atoms) {
            if (abs(a.location) < one) {
                throw DomainError("exact-path-unsupported",
                                  "atoms inside the unit ball need the compensator; "
                                  "exact evaluation does not carry f'");
            }
            out += a.mass * (f.value(x + a.location) - f.value(x));
        }
        return out;
    }
    if (!t.measure.is_sparse_geometric()) {
        throw DomainError("exact-path-unsupported",
                          "exact evaluation supports atomic and sparse families only");
    }
    const auto& sp = t.measure.sparse_geometric();
    if (!f.support_radius.has_value()) {
        throw DomainError("divergent-jump-integral",
                          "exact sparse sums require compact support");
    }
    Rational reach = abs(x) + *f.support_radius;
    BigInt reach_int = floor_rational(reach) + 1;
    int k = 0;
    Rational listed(0);
    for (;; ++k) {
        if (sp.location_lower_bound(k) > reach_int) break;
        if (k >= sp.listed_count()) {
            throw DomainError("truncation-insufficient",
                              "a jump location inside the evaluation reach is "
                              "not listed; extend the location table");
        }
        const Rational pk = SparseGeometricMeasure::mass(k);
        const Rational xk(sp.x[static_cast<std::size_t>(k)]);
        listed += pk * (f.value(x + xk) + f.value(x - xk));
    }
    // Every location from k0 on lies outside the support, so those pair terms
    // reduce to -2 p_k f(x); together with the listed -2 p_k f(x) pieces the
    // coefficient is the exact total mass 1.
    out += listed - f.value(x);
    return out;
}

namespace {

struct Interval {
    double lo, hi;
};

std::vector<Interval> merge_intervals(std::vector<Interval> v) {
    std::sort(v.begin(), v.end(), [](const Interval& a, const Interval& b) {
        return a.lo < b.lo;
    });
    std::vector<Interval> out;
    for (const auto& iv : v) {
        if (!out.empty() && iv.lo <= out.back().hi) {
            out.back().hi = std::max(out.back().hi, iv.hi);
        } else {
            out.push_back(iv);
        }
    }
    return out;
}

}  // namespace

WeakHarmonicityReport weak_harmonicity_residual(
    const std::function<double(double)>& h, const LevyTriplet& t,
    const std::vector<FunctionDesc>& tests, const IntegrationSpec& spec) {
    t.validate();
    const LevyTriplet dual = dual_triplet(t);
    WeakHarmonicityReport rep;
    for (const auto& phi : tests) {
        if (!phi.support.has_value()) {
            throw DomainError("test-not-compactly-supported",
                              "weak harmonicity pairs against compactly "
                              "supported test functions only");
        }
        const double lo = phi.support->first;
        const double hi = phi.support->second;
        // (L-hat phi)(x) can be nonzero wherever x, or x + (dual jump), lands
        // in the support of phi.
        std::vector<Interval> parts{{lo, hi}};
        if (dual.measure.is_atomic()) {
            for (const auto& a : dual.measure.atomic().atoms) {
                const double y = a.location.get_d();
                parts.push_back({lo - y, hi - y});
            }
        } else if (dual.measure.is_sparse_geometric()) {
            const auto& sp = dual.measure.sparse_geometric();
            for (const auto& xk : sp.x) {
                const double y = xk.get_d();
                if (!(std::abs(y) < 1e15)) {
                    throw DomainError("symbol-inexact-at-xi",
                                      "jump location too large for the generic "
                                      "floating-point pairing");
                }
                parts.push_back({lo - y, hi - y});
                parts.push_back({lo + y, hi + y});
            }
        } else if (dual.measure.is_density()) {
            const double r = dual.measure.density().quad.outer_cut;
            parts.assign(1, {lo - r, hi + r});
        }
        std::vector<Interval> merged = merge_intervals(std::move(parts));

        ApplyInfo info;
        auto integrand = [&](double x) { return h(x) * apply_operator(dual, phi, x, &info); };
        double total = 0.0;
        for (const auto& iv : merged) {
            const int n = std::max(2, spec.subintervals & ~1);
            const double dx = (iv.hi - iv.lo) / n;
            double s = integrand(iv.lo) + integrand(iv.hi);
            for (int i = 1; i < n; ++i) {
                s += integrand(iv.lo + i * dx) * ((i & 1) ? 4.0 : 2.0);
            }
            total += s * dx / 3.0;
        }
        rep.per_test.push_back(std::abs(total));
        rep.max_residual = std::max(rep.max_residual, std::abs(total));
        rep.quad_achieved_tol = std::max(rep.quad_achieved_tol, info.quad_achieved_tol);
    }
    return rep;
}

}  // namespace levyharm
