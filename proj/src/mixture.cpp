#include "levyharm/mixture.hpp"

#include <algorithm>
#include <cmath>

#include "levyharm/errors.hpp"
#include "levyharm/function_desc.hpp"
#include "levyharm/levy_operator.hpp"
#include "levyharm/measure.hpp"

namespace levyharm {

void ExponentialMixture::validate() const {
    for (const auto& [l, w] : terms) {
        (void)l;
        if (w < 0.0) {
            throw DomainError("negative-weight",
                              "mixture weights must be nonnegative");
        }
    }
    for (std::size_t i = 0; i < terms.size(); ++i) {
        for (std::size_t j = i + 1; j < terms.size(); ++j) {
            if (terms[i].first == terms[j].first) {
                throw DomainError("duplicate-lambda", "mixture exponents must be distinct");
            }
        }
    }
}

namespace {

double checked_exp(double v) {
    const double e = std::exp(v);
    if (!std::isfinite(e)) {
        throw DomainError("divergent-exponential-moment",
                          "exponential moment exceeds floating-point range");
    }
    return e;
}

double kappa_atomic(const AtomicMeasure& am, double lambda) {
    double acc = 0.0;
    const Rational one(1);
    for (const auto& a : am.atoms) {
        const double y = a.location.get_d();
        double term = checked_exp(lambda * y) - 1.0;
        if (abs(a.location) < one) term -= lambda * y;
        acc += a.mass.get_d() * term;
    }
    return acc;
}

double kappa_density(const DensityMeasure& dm, double lambda, KappaInfo* info) {
    // Symmetric density: fold both signs; the compensator cancels pairwise.
    if (dm.name == "power_law") {
        throw DomainError("divergent-exponential-moment",
                          "power-law tails admit no nonzero exponential moment");
    }
    // exponential family: e^{-rate |y|}; finite iff |lambda| < rate
    if (!(std::abs(lambda) < dm.rate)) {
        throw DomainError("divergent-exponential-moment",
                          "exponential moment requires |lambda| < tail rate");
    }
    auto g = [&](double y) {
        double term = std::exp(lambda * y) + std::exp(-lambda * y) - 2.0;
        return term;
    };
    // |g(y)| <= 2 e^{|lambda| y} beyond the outer cut; the analytic tail of
    // scale * e^{-rate y} * 2 e^{|lambda| y} is integrable by the check above.
    const double r = dm.quad.outer_cut;
    const double rate_gap = dm.rate - std::abs(lambda);
    const double tail = 2.0 * dm.scale * std::exp(-rate_gap * r) / rate_gap;
    QuadratureResult qr = integrate_against_density(dm, g, 0.0);
    if (info) {
        info->quad_achieved_tol = std::max(info->quad_achieved_tol, qr.achieved_tol);
        info->tail_bound += tail;
    }
    return qr.value;
}

}  // namespace

double laplace_exponent(const LevyTriplet& t, double lambda, KappaInfo* info) {
    t.validate();
    double acc = t.diffusion * lambda * lambda + t.drift * lambda;
    if (t.measure.is_empty() || lambda == 0.0) return acc;  // kappa(0) = 0 exactly
    if (t.measure.is_atomic()) {
        acc += kappa_atomic(t.measure.atomic(), lambda);
    } else if (t.measure.is_sparse_geometric()) {
        // Two-sided tails at locations 2^{2k^2} kill every nonzero moment.
        throw DomainError("divergent-exponential-moment",
                          "the sparse geometric family has no nonzero "
                          "exponential moments");
    } else {
        acc += kappa_density(t.measure.density(), lambda, info);
    }
    return acc;
}

namespace {

double bisect_root(const LevyTriplet& t, double lo, double hi, double flo, double tol) {
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        const double fm = laplace_exponent(t, mid);
        if (fm == 0.0) return mid;
        if ((flo < 0.0) != (fm < 0.0)) {
            hi = mid;
        } else {
            lo = mid;
            flo = fm;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace

std::vector<double> lambda_set(const LevyTriplet& t, double bracket_lo, double bracket_hi,
                               double tol) {
    if (!(bracket_lo < bracket_hi) || !(tol > 0.0)) {
        throw DomainError("invalid-bracket", "need bracket_lo < bracket_hi and tol > 0");
    }
    const double step = 0.01;
    const int cells = std::max(1, static_cast<int>(std::ceil((bracket_hi - bracket_lo) / step)));
    std::vector<double> grid(static_cast<std::size_t>(cells) + 1);
    for (int i = 0; i <= cells; ++i) {
        grid[static_cast<std::size_t>(i)] =
            bracket_lo + (bracket_hi - bracket_lo) * i / cells;
    }
    std::vector<double> vals(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        try {
            vals[i] = laplace_exponent(t, grid[i]);
        } catch (const DomainError& e) {
            throw DomainError("kappa-divergent-on-bracket",
                              std::string("laplace exponent diverges inside the bracket: ") +
                                  e.what());
        }
    }
    std::vector<double> roots;
    // kappa(0) = 0 with possible tangency (no sign change), so 0 is seeded
    // explicitly whenever the bracket contains it.
    if (bracket_lo <= 0.0 && 0.0 <= bracket_hi) roots.push_back(0.0);
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        if (vals[i] == 0.0) {
            roots.push_back(grid[i]);
        } else if ((vals[i] < 0.0) != (vals[i + 1] < 0.0)) {
            roots.push_back(bisect_root(t, grid[i], grid[i + 1], vals[i], tol));
        }
    }
    if (!vals.empty() && vals.back() == 0.0) roots.push_back(grid.back());
    std::sort(roots.begin(), roots.end());
    std::vector<double> merged;
    const double merge_radius = std::max(2.0 * tol, 1e-12);
    for (double r : roots) {
        if (merged.empty() || r - merged.back() > merge_radius) {
            merged.push_back(r);
        } else if (r == 0.0) {
            merged.back() = 0.0;  // prefer the exact root
        }
    }
    return merged;
}

MixtureResidualReport verify_mixture(const ExponentialMixture& m, const LevyTriplet& t,
                                     const std::vector<double>& points) {
    m.validate();
    std::vector<std::pair<double, double>> terms_wl;
    for (const auto& [l, w] : m.terms) terms_wl.emplace_back(w, l);
    const FunctionDesc h = fd_exponential_mixture(terms_wl);
    std::vector<double> kappas;
    for (const auto& [l, w] : m.terms) {
        (void)w;
        kappas.push_back(laplace_exponent(t, l));
    }
    MixtureResidualReport rep;
    for (double x : points) {
        const double numeric = apply_operator(t, h, x);
        double analytic = 0.0;
        for (std::size_t i = 0; i < m.terms.size(); ++i) {
            analytic += m.terms[i].second * kappas[i] * std::exp(m.terms[i].first * x);
        }
        rep.max_numeric = std::max(rep.max_numeric, std::abs(numeric));
        rep.max_analytic = std::max(rep.max_analytic, std::abs(analytic));
        rep.per_point.emplace_back(x, numeric);
    }
    return rep;
}

}  // namespace levyharm
