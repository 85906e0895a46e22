#pragma once

#include <vector>

#include "levyharm/function_desc.hpp"
#include "levyharm/triplet.hpp"

namespace levyharm {

struct ApplyInfo {
    double truncation_bound = 0.0;  // certified bound on omitted jump terms
    double quad_achieved_tol = 0.0;
};

// L f(x) = a f''(x) + b f'(x) + sum/integral of
//   f(x + y) - f(x) - 1_{|y| < 1} y f'(x)  against the jump measure.
// Jump families with unbounded reach are truncated only when the remainder is
// certifiable (compact support, or a sup-norm bound); otherwise this throws.
double apply_operator(const LevyTriplet& t, const FunctionDesc& f, double x,
                      ApplyInfo* info = nullptr);

// Exact-rational variant. Requires drift == 0, a jump measure whose compensated
// part vanishes (atoms at |y| >= 1, or the symmetric sparse family), and a
// dyadic-representable diffusion coefficient (any double qualifies).
Rational apply_operator_exact(const LevyTriplet& t, const ExactFunction& f,
                              const Rational& x);

struct WeakHarmonicityReport {
    double max_residual = 0.0;
    std::vector<double> per_test;
    double quad_achieved_tol = 0.0;
};

struct IntegrationSpec {
    int subintervals = 2048;  // Simpson panels per merged interval
};

// max over test functions phi of | integral h(x) * (L-hat phi)(x) dx | where
// L-hat is the operator of the dual triplet. Each phi must be compactly
// supported; h only needs to be evaluable on the reachable set.
WeakHarmonicityReport weak_harmonicity_residual(
    const std::function<double(double)>& h, const LevyTriplet& t,
    const std::vector<FunctionDesc>& tests, const IntegrationSpec& spec = {});

}  // namespace levyharm
