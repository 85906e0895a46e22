#pragma once

#include <utility>
#include <vector>

#include "levyharm/triplet.hpp"

namespace levyharm {

// h(x) = sum_i weight_i * exp(lambda_i * x) with nonnegative weights.
struct ExponentialMixture {
    std::vector<std::pair<double, double>> terms;  // (lambda, weight)

    void validate() const;  // weights >= 0, lambdas distinct
};

struct KappaInfo {
    double quad_achieved_tol = 0.0;
    double tail_bound = 0.0;
};

// kappa(lambda) = a lambda^2 + b lambda
//   + sum/integral of (e^{lambda y} - 1 - lambda y 1_{|y|<1}) nu(dy).
// Throws divergent-exponential-moment when the jump tail makes the integral
// infinite (or pushes past floating-point range). kappa(0) = 0 exactly.
double laplace_exponent(const LevyTriplet& t, double lambda, KappaInfo* info = nullptr);

// All roots of kappa in [bracket_lo, bracket_hi], each located to +-tol.
// kappa is convex with kappa(0) = 0, so 0 is always a root (included whenever
// the bracket contains it; tangency at 0 produces no sign change, which is why
// it cannot be left to the scan).
std::vector<double> lambda_set(const LevyTriplet& t, double bracket_lo, double bracket_hi,
                               double tol);

struct MixtureResidualReport {
    double max_numeric = 0.0;   // max over points of |L h(x)| via apply_operator
    double max_analytic = 0.0;  // max over points of |sum_i w_i kappa(lambda_i) e^{lambda_i x}|
    std::vector<std::pair<double, double>> per_point;  // (x, numeric residual)
};

MixtureResidualReport verify_mixture(const ExponentialMixture& m, const LevyTriplet& t,
                                     const std::vector<double>& points);

}  // namespace levyharm
