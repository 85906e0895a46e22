#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "levyharm/grid_function.hpp"

namespace levyharm {

// Weight function families for the weighted-algebra checks. The power and
// log-power families claim submultiplicativity of 1 + Y; radial tables claim
// integrability and the direct-jump property Y*Y <= Y after epsilon-scaling.
struct WeightSpec {
    enum class Family { power, log_power, radial_table, callable };

    Family family = Family::power;
    double alpha = 1.0;                 // power:     (1 + |x|)^alpha - 1
    double beta = 1.0;                  // log_power: (log(e^2 + |x|))^beta
    std::vector<double> phi;            // radial_table: phi(i * dr), decreasing
    double dr = 0.0;
    double scale = 1.0;                 // radial_table: Y = scale * phi(|x|)
    std::function<double(double)> fn;   // callable

    static WeightSpec power(double alpha);
    static WeightSpec log_power(double beta);
    static WeightSpec radial(std::vector<double> phi, double dr, double scale);

    double operator()(double x) const;
    void validate() const;
};

// Max over the pairs of (1 + Y(x+y)) - (1 + Y(x))(1 + Y(y)), clamped below
// at 0; 0 means no violation found.
double check_submultiplicative(const WeightSpec& Y,
                               const std::vector<std::pair<double, double>>& pairs);

// Deterministic uniform sample of `count` pairs in [-range, range]^2.
std::vector<std::pair<double, double>> weight_sample_pairs(std::size_t count, double range,
                                                           std::uint64_t seed);

// Direct-jump property of an integrable weight on its grid: Y*Y <= Y
// pointwise (quadrature convolution), plus the vanishing-tail condition
//   sup_x (Y_r * Y_r)(x) / Y(x) -> 0 as r grows,
// where Y_r = Y restricted to |x| >= r. The primary inequality is held to
// `tol`; the tail ratios must be non-increasing with the last one <= tail_tol
// (the ratio scale is O(tail mass), far coarser than the pointwise check,
// hence the separate tolerance).
struct DirectJumpReport {
    double max_violation = 0.0;                       // max(Y*Y - Y, 0) over the grid
    std::vector<std::pair<double, double>> tail_ratios;  // (r, sup Y_r*Y_r / Y)
    bool passes = false;
};

DirectJumpReport check_direct_jump(const GridFunction& Y, const std::vector<double>& radii,
                                   double tol = 1e-9, double tail_tol = 0.05);

// Admissible scaling for a radial profile: epsilon = 1 / (2 c1 c2) with
//   c1 = integral of phi(|x|) over R^d  (surface measure x radial quadrature),
//   c2 = sup phi(r/2) / phi(r)          (exact at even table indices),
// so that Y = epsilon phi(|x|) satisfies Y*Y <= 2 c1 c2 epsilon Y = Y.
struct RadialEpsilonResult {
    double epsilon = 0.0;
    double c1 = 0.0;
    double c2 = 0.0;
};

RadialEpsilonResult radial_epsilon(const std::vector<double>& phi, double dr, int dim);

}  // namespace levyharm
