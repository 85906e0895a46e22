#include "levyharm/neumann.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace levyharm {

namespace {

struct BandIndices {
    std::vector<std::size_t> k;  // dual-grid indices inside K
    std::vector<std::size_t> u;  // dual-grid indices inside U
};

BandIndices band_indices(const std::vector<double>& xi, double k_lo, double k_hi, double margin) {
    BandIndices b;
    for (std::size_t j = 0; j < xi.size(); ++j) {
        if (xi[j] >= k_lo && xi[j] <= k_hi) b.k.push_back(j);
        if (xi[j] >= k_lo - margin && xi[j] <= k_hi + margin) b.u.push_back(j);
    }
    return b;
}

double min_abs_over(const std::vector<std::complex<double>>& v,
                    const std::vector<std::size_t>& idx) {
    double m = std::numeric_limits<double>::infinity();
    for (std::size_t j : idx) m = std::min(m, std::abs(v[j]));
    return m;
}

// Quadrature L1 mass of f outside the closed ball of radius r, plus the
// declared off-grid tail.
double tail_mass(const GridFunction& f, double r) {
    double s = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i)
        if (std::fabs(f.x_at(i)) > r) s += std::fabs(f.samples[i]);
    return f.dx * s + f.tail_l1;
}

double smootherstep(double t) {
    t = std::clamp(t, 0.0, 1.0);
    return t * t * t * (t * (6.0 * t - 15.0) + 10.0);
}

}  // namespace

InversionResult neumann_invert(const GridFunction& f, const InversionParams& p) {
    f.validate();
    if (!(p.k_lo < p.k_hi) || !std::isfinite(p.k_lo) || !std::isfinite(p.k_hi))
        throw DomainError("invalid-interval", "inversion band needs k_lo < k_hi");
    if (p.terms < 0) throw DomainError("invalid-terms", "series length must be >= 0");
    if (p.margin < 0.0 || !std::isfinite(p.margin))
        throw DomainError("invalid-window", "margin must be >= 0 and finite");
    if (p.radius < 0.0) throw DomainError("invalid-interval", "radius must be >= 0");

    InversionResult res;
    res.terms = p.terms;
    res.xi = dual_grid(f);
    res.phi = dft_dual(f);
    const std::size_t n = f.size();

    BandIndices bands = band_indices(res.xi, p.k_lo, p.k_hi, p.margin);
    if (bands.k.empty())
        throw DomainError("invalid-interval", "no dual-grid frequency falls inside K");

    res.min_abs_phi_k = min_abs_over(res.phi, bands.k);

    // Rounding scale of an n-term quadrature DFT sum.
    const double l1 = f.l1_norm();
    const double noise = std::numeric_limits<double>::epsilon() * static_cast<double>(n) * std::max(1.0, l1);

    // Certified-impossible: Phi() vanishes (or crosses zero) inside K. A sign
    // change of the real part with negligible imaginary part pins a zero
    // between grid points even when no sample lands on it.
    bool vanishes = res.min_abs_phi_k <= 32.0 * noise;
    if (!vanishes) {
        // Scan one dual-grid step past each edge: a crossing there pins a
        // zero within one grid step of K, which this resolution cannot
        // distinguish from a zero on K itself.
        std::vector<std::size_t> scan = bands.k;
        if (scan.front() > 0) scan.insert(scan.begin(), scan.front() - 1);
        if (scan.back() + 1 < n) scan.push_back(scan.back() + 1);
        double max_im = 0.0;
        for (std::size_t j : scan) max_im = std::max(max_im, std::fabs(res.phi[j].imag()));
        if (max_im <= 32.0 * noise) {
            for (std::size_t t = 1; t < scan.size(); ++t) {
                const double a = res.phi[scan[t - 1]].real();
                const double b = res.phi[scan[t]].real();
                if ((a < 0.0) != (b < 0.0)) vanishes = true;
            }
        }
    }
    if (vanishes) {
        res.status = InversionStatus::symbol_vanishes_on_k;
        return res;
    }

    // Truncation: smallest grid-aligned radius whose L1 tail drops below the
    // min_K |Phi| / 6 margin (that tail is the epsilon of all certificates).
    const double target = res.min_abs_phi_k / 6.0;
    double r = 0.0;
    if (p.radius > 0.0) {
        r = p.radius;
    } else {
        const double r_max = std::max(std::fabs(f.origin), std::fabs(f.x_at(n - 1)));
        bool found = false;
        for (std::size_t j = 0; !found && f.dx * static_cast<double>(j) <= r_max + f.dx; ++j) {
            r = f.dx * static_cast<double>(j);
            found = tail_mass(f, r) < target;
        }
        if (!found) {
            res.status = InversionStatus::epsilon_unachievable;
            return res;
        }
    }
    res.r = r;
    res.epsilon = tail_mass(f, r);
    if (!(res.epsilon < target)) {
        res.status = InversionStatus::epsilon_unachievable;
        return res;
    }

    // Margin band: shrink until |Phi| > 3 eps throughout U (K itself already
    // satisfies this: eps < min_K/6).
    const double dxi = res.xi[1] - res.xi[0];
    double margin = p.margin;
    while (margin > 0.0 && min_abs_over(res.phi, bands.u) <= 3.0 * res.epsilon) {
        margin = margin < dxi ? 0.0 : margin / 2.0;
        bands = band_indices(res.xi, p.k_lo, p.k_hi, margin);
    }
    res.margin = margin;

    // Window: 1 on K, smooth roll-off across the margin, 0 outside U.
    std::vector<double> w(n, 0.0);
    if (!p.window.empty()) {
        if (p.window.size() != n)
            throw DomainError("invalid-window", "explicit window length must match the dual grid");
        w = p.window;
        for (std::size_t j : bands.k)
            if (w[j] != 1.0)
                throw DomainError("window-not-one-on-k",
                                  "explicit window must equal 1 on the target band");
        for (std::size_t j = 0; j < n; ++j) {
            const bool in_u = res.xi[j] >= p.k_lo - margin && res.xi[j] <= p.k_hi + margin;
            if (!in_u && w[j] != 0.0)
                throw DomainError("invalid-window", "window must vanish outside the margin band");
        }
    } else {
        for (std::size_t j = 0; j < n; ++j) {
            const double x = res.xi[j];
            if (x >= p.k_lo && x <= p.k_hi) {
                w[j] = 1.0;
            } else if (margin > 0.0 && x > p.k_hi && x <= p.k_hi + margin) {
                w[j] = 1.0 - smootherstep((x - p.k_hi) / margin);
            } else if (margin > 0.0 && x < p.k_lo && x >= p.k_lo - margin) {
                w[j] = 1.0 - smootherstep((p.k_lo - x) / margin);
            }
        }
    }

    const GridFunction g = truncate_to_ball(f, r);
    const auto psi = dft_dual(g);

    // rho on the support of the window; |rho| < 1/2 is guaranteed by the
    // margin construction (|Psi| >= |Phi| - eps > 2 eps, |Psi - Phi| <= eps).
    std::vector<std::complex<double>> rho(n, {0.0, 0.0});
    double rho_max = 0.0;
    double sup_w_over_psi = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        if (w[j] == 0.0) continue;
        rho[j] = (psi[j] - res.phi[j]) / psi[j];
        rho_max = std::max(rho_max, std::abs(rho[j]));
        sup_w_over_psi = std::max(sup_w_over_psi, std::fabs(w[j]) / std::abs(psi[j]));
    }
    if (rho_max >= 0.5)
        throw std::logic_error("geometric ratio reached 1/2 despite the 3-eps margin");
    res.rho_max = rho_max;

    res.phi_tilde.assign(n, {0.0, 0.0});
    for (std::size_t j = 0; j < n; ++j) {
        if (w[j] == 0.0) continue;
        std::complex<double> s{1.0, 0.0};
        for (int t = 0; t < p.terms; ++t) s = 1.0 + rho[j] * s;
        res.phi_tilde[j] = w[j] * s / psi[j];
    }

    for (std::size_t j : bands.k) {
        res.residual = std::max(res.residual, std::abs(res.phi[j] * res.phi_tilde[j] - 1.0));
        res.oracle_gap = std::max(res.oracle_gap, std::abs(res.phi_tilde[j] - w[j] / res.phi[j]));
    }
    res.analytic_bound = sup_w_over_psi * std::pow(rho_max, p.terms + 1) / (1.0 - rho_max);
    res.grid_bound = 16.0 * std::numeric_limits<double>::epsilon() * static_cast<double>(n) *
                     (1.0 + l1 / res.min_abs_phi_k) * (1.0 + sup_w_over_psi);

    res.f_tilde = inverse_dft(res.phi_tilde, f);
    return res;
}

WeightedInversionReport neumann_invert_weighted(const GridFunction& f, const WeightSpec& Y,
                                                const InversionParams& p) {
    Y.validate();
    WeightedInversionReport rep;
    rep.base = neumann_invert(f, p);
    if (rep.base.status != InversionStatus::ok) return rep;

    GridFunction yg = f;  // Y sampled on f's grid
    yg.tail_l1 = 0.0;
    for (std::size_t i = 0; i < yg.size(); ++i) {
        yg.samples[i] = Y(yg.x_at(i));
        if (!(yg.samples[i] > 0.0))
            throw DomainError("invalid-weight", "weighted inversion requires Y > 0 on the grid");
    }
    for (std::size_t i = 0; i < f.size(); ++i)
        rep.lambda = std::max(rep.lambda, std::fabs(f.samples[i]) / yg.samples[i]);

    const double eps = rep.base.min_abs_phi_k / 6.0;
    rep.epsilon_target = eps;
    rep.funct_r_target = (eps / rep.lambda) * (eps / rep.lambda);

    auto tail_ratio_sup = [&](double r) {
        const GridFunction yr = truncation_tail(yg, r);
        const GridFunction conv = convolve(yr, yr);
        double sup = 0.0;
        for (std::size_t i = 0; i < yg.size(); ++i) {
            const double x = yg.x_at(i);
            const auto j = static_cast<std::ptrdiff_t>(std::llround((x - conv.origin) / conv.dx));
            if (j < 0 || j >= static_cast<std::ptrdiff_t>(conv.size())) continue;
            sup = std::max(sup, conv.samples[static_cast<std::size_t>(j)] / yg.samples[i]);
        }
        return sup;
    };

    // Grow the radius by doubling until the tail-overlap condition holds too;
    // the L1 tail only shrinks with r, so both constraints stay satisfied.
    const double r_max = std::max(std::fabs(f.origin), std::fabs(f.x_at(f.size() - 1)));
    double r = std::max(rep.base.r, f.dx);
    rep.funct_r_sup = tail_ratio_sup(r);
    while (rep.funct_r_sup > rep.funct_r_target && 2.0 * r <= r_max) {
        r *= 2.0;
        rep.funct_r_sup = tail_ratio_sup(r);
    }
    rep.radius_satisfiable = rep.funct_r_sup <= rep.funct_r_target;

    if (rep.radius_satisfiable && r != rep.base.r) {
        InversionParams p2 = p;
        p2.radius = r;
        rep.base = neumann_invert(f, p2);
        if (rep.base.status != InversionStatus::ok) return rep;
    }

    // Norm chain and pointwise domination for the realized truncation.
    const GridFunction d = truncation_tail(f, rep.base.r);
    const double half_span = r_max;
    GridFunction c = d;
    for (int k = 1; k <= 6; ++k) {
        if (k > 1) c = convolve(c, d);
        rep.conv_l1_ratio.push_back(c.l1_norm() / std::pow(eps, k));
        if (k <= 4) {
            double sup = 0.0;
            const double denom_scale = (rep.lambda + eps) * std::pow(eps, k - 1);
            for (std::size_t i = 0; i < c.size(); ++i) {
                const double x = c.x_at(i);
                if (std::fabs(x) > half_span) continue;
                sup = std::max(sup, std::fabs(c.samples[i]) / (denom_scale * Y(x)));
            }
            rep.pointwise_ratio.push_back(sup);
        }
    }
    return rep;
}

}  // namespace levyharm
