#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "levyharm/rational.hpp"

namespace levyharm {

// A twice-differentiable function with analytic derivatives. No numerical
// differentiation happens downstream; descriptors must supply d1 and d2.
// `support` (closed interval, exact zero outside) and `sup_norm` feed the
// truncation certificates for infinite jump families.
struct FunctionDesc {
    std::string name;
    std::function<double(double)> value;
    std::function<double(double)> deriv1;
    std::function<double(double)> deriv2;
    std::optional<std::pair<double, double>> support;
    std::optional<double> sup_norm;
    std::vector<double> poly;  // nonempty iff the function is this polynomial

    double operator()(double x) const { return value(x); }
};

// Exact-rational function for the exact operator path: value and second
// derivative map rationals to rationals; beyond support_radius the value is
// literally zero.
struct ExactFunction {
    std::function<Rational(const Rational&)> value;
    std::function<Rational(const Rational&)> second_derivative;  // may be empty if a = 0
    std::optional<Rational> support_radius;
};

FunctionDesc fd_polynomial(const std::vector<double>& coeffs);
FunctionDesc fd_exponential(double lambda);
FunctionDesc fd_exponential_mixture(const std::vector<std::pair<double, double>>& terms);
// ((1 - u^2)^p with u = (x - center)/halfwidth) on |u| <= 1, zero outside.
FunctionDesc fd_poly_bump(double center, double halfwidth, int power);
FunctionDesc fd_gaussian(double center, double sigma);

}  // namespace levyharm
