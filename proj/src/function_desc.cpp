#include "levyharm/function_desc.hpp"

#include <cmath>

#include "levyharm/errors.hpp"

namespace levyharm {

namespace {

double poly_eval(const std::vector<double>& c, double x) {
    double acc = 0.0;
    for (std::size_t i = c.size(); i-- > 0;) acc = acc * x + c[i];
    return acc;
}

std::vector<double> poly_derivative(const std::vector<double>& c) {
    std::vector<double> d;
    for (std::size_t i = 1; i < c.size(); ++i) d.push_back(c[i] * static_cast<double>(i));
    return d;
}

}  // namespace

FunctionDesc fd_polynomial(const std::vector<double>& coeffs) {
    FunctionDesc f;
    f.name = "polynomial";
    f.poly = coeffs;
    auto d1 = poly_derivative(coeffs);
    auto d2 = poly_derivative(d1);
    f.value = [coeffs](double x) { return poly_eval(coeffs, x); };
    f.deriv1 = [d1](double x) { return poly_eval(d1, x); };
    f.deriv2 = [d2](double x) { return poly_eval(d2, x); };
    bool constant = true;
    for (std::size_t i = 1; i < coeffs.size(); ++i) constant = constant && coeffs[i] == 0.0;
    if (constant) f.sup_norm = coeffs.empty() ? 0.0 : std::abs(coeffs[0]);
    return f;
}

FunctionDesc fd_exponential(double lambda) {
    FunctionDesc f;
    f.name = "exponential";
    f.value = [lambda](double x) { return std::exp(lambda * x); };
    f.deriv1 = [lambda](double x) { return lambda * std::exp(lambda * x); };
    f.deriv2 = [lambda](double x) { return lambda * lambda * std::exp(lambda * x); };
    if (lambda == 0.0) f.sup_norm = 1.0;
    return f;
}

FunctionDesc fd_exponential_mixture(const std::vector<std::pair<double, double>>& terms) {
    FunctionDesc f;
    f.name = "exponential-mixture";
    f.value = [terms](double x) {
        double s = 0.0;
        for (const auto& [w, l] : terms) s += w * std::exp(l * x);
        return s;
    };
    f.deriv1 = [terms](double x) {
        double s = 0.0;
        for (const auto& [w, l] : terms) s += w * l * std::exp(l * x);
        return s;
    };
    f.deriv2 = [terms](double x) {
        double s = 0.0;
        for (const auto& [w, l] : terms) s += w * l * l * std::exp(l * x);
        return s;
    };
    return f;
}

FunctionDesc fd_poly_bump(double center, double halfwidth, int power) {
    if (halfwidth <= 0.0 || power < 1) {
        throw DomainError("invalid-bump", "bump needs positive halfwidth and power >= 1");
    }
    FunctionDesc f;
    f.name = "poly-bump";
    const double c = center, w = halfwidth;
    const double p = power;
    f.value = [c, w, p](double x) {
        const double u = (x - c) / w;
        const double s = 1.0 - u * u;
        return s > 0.0 ? std::pow(s, p) : 0.0;
    };
    f.deriv1 = [c, w, p](double x) {
        const double u = (x - c) / w;
        const double s = 1.0 - u * u;
        return s > 0.0 ? -2.0 * p * u * std::pow(s, p - 1.0) / w : 0.0;
    };
    f.deriv2 = [c, w, p](double x) {
        const double u = (x - c) / w;
        const double s = 1.0 - u * u;
        if (!(s > 0.0)) return 0.0;
        return (4.0 * p * (p - 1.0) * u * u * std::pow(s, p - 2.0) -
                2.0 * p * std::pow(s, p - 1.0)) /
               (w * w);
    };
    f.support = std::make_pair(c - w, c + w);
    f.sup_norm = 1.0;
    return f;
}

FunctionDesc fd_gaussian(double center, double sigma) {
    if (sigma <= 0.0) throw DomainError("invalid-gaussian", "sigma must be positive");
    FunctionDesc f;
    f.name = "gaussian";
    const double c = center, s = sigma;
    f.value = [c, s](double x) {
        const double z = (x - c) / s;
        return std::exp(-0.5 * z * z);
    };
    f.deriv1 = [c, s](double x) {
        const double z = (x - c) / s;
        return -z / s * std::exp(-0.5 * z * z);
    };
    f.deriv2 = [c, s](double x) {
        const double z = (x - c) / s;
        return (z * z - 1.0) / (s * s) * std::exp(-0.5 * z * z);
    };
    f.sup_norm = 1.0;
    return f;
}

}  // namespace levyharm
