#pragma once

#include <complex>
#include <vector>

#include "levyharm/grid_function.hpp"
#include "levyharm/weights.hpp"

namespace levyharm {

// Local 1/f inversion in the Fourier domain. With Phi = DFT(f) and
// Psi = DFT(g), g = f restricted to |x| <= r, the reciprocal on the target
// band K is assembled as the geometric series
//   Phi~ = W / Psi * sum_{n <= N} rho^n,   rho = (Psi - Phi) / Psi,
// where W is a C^1 window equal to 1 on K and 0 outside the margin band U.
// The truncation radius guarantees |Psi - Phi| <= eps pointwise while
// |Phi| > 3 eps on U, hence |rho| < 1/2 and the tail is certified geometric.
struct InversionParams {
    double k_lo = -1.0;
    double k_hi = 1.0;
    int terms = 30;            // N: series truncated after rho^N
    double margin = 0.5;       // U = [k_lo - margin, k_hi + margin]; auto-shrunk
    double radius = 0.0;       // truncation radius; 0 = smallest feasible (auto)
    std::vector<double> window;  // optional explicit window on the dual grid
};

enum class InversionStatus {
    ok,
    symbol_vanishes_on_k,   // |Phi| ~ 0 (or a sign change) inside K: no radius can work
    epsilon_unachievable,   // even the full grid leaves an L1 tail >= min|Phi|/6
};

struct InversionResult {
    InversionStatus status = InversionStatus::ok;

    GridFunction f_tilde;       // space-domain reconstruction (valid when ok)
    double epsilon = 0.0;       // achieved truncation tail ||f - g||_1
    double r = 0.0;             // truncation radius used
    int terms = 0;
    double margin = 0.0;        // effective margin after auto-shrink

    double residual = 0.0;      // max over K dual-grid points of |Phi Phi~ - 1|
    double oracle_gap = 0.0;    // max over K of |Phi~ - 1/Phi| (direct division)
    double analytic_bound = 0.0;  // sup_U |W/Psi| rho_max^{N+1} / (1 - rho_max)
    double grid_bound = 0.0;      // rounding-noise allowance for the dual-grid sums
    double rho_max = 0.0;       // max over U of |(Psi - Phi)/Psi|
    double min_abs_phi_k = 0.0;

    std::vector<double> xi;                        // dual grid
    std::vector<std::complex<double>> phi;         // DFT(f)
    std::vector<std::complex<double>> phi_tilde;   // assembled reciprocal
};

InversionResult neumann_invert(const GridFunction& f, const InversionParams& p);

// Weighted variant: additionally verifies the hypotheses that make the series
// converge in the weighted norm. With lambda = sup |f|/Y and d = f - g,
//   - the radius must also satisfy sup (Y_r * Y_r) / Y <= (eps/lambda)^2,
//     searched over doubling grid-aligned radii (reported unsatisfiable when
//     no radius on the grid achieves it);
//   - quadrature norm chain  ||d^{*n}||_1 <= eps^n            (n = 1..6);
//   - pointwise domination   |d^{*n}| <= (lambda + eps) eps^(n-1) Y
//     on the sampled window                                    (n = 1..4).
struct WeightedInversionReport {
    InversionResult base;
    double lambda = 0.0;
    double epsilon_target = 0.0;   // margin value min_K|Phi| / 6 used as eps
    bool radius_satisfiable = false;
    double funct_r_sup = 0.0;      // sup (Y_r*Y_r)/Y at the chosen radius
    double funct_r_target = 0.0;   // (eps/lambda)^2
    std::vector<double> conv_l1_ratio;    // ||d^{*n}||_1 / eps^n, n = 1..6
    std::vector<double> pointwise_ratio;  // sup |d^{*n}| / ((lambda+eps) eps^{n-1} Y), n = 1..4
};

WeightedInversionReport neumann_invert_weighted(const GridFunction& f, const WeightSpec& Y,
                                                const InversionParams& p);

}  // namespace levyharm
