#pragma once

#include <complex>
#include <cstddef>
#include <filesystem>
#include <functional>
#include <vector>

#include "levyharm/errors.hpp"

namespace levyharm {

// Uniformly sampled real function on [origin, origin + dx*(n-1)]. All norms
// are quadrature norms (dx-weighted sums, fixed left-to-right reduction
// order). tail_l1 declares the integral of |f| outside the sampled range:
// 0 for compactly supported data, +infinity when no integrable tail is
// claimed. Operations that need integrability refuse an infinite tail.
struct GridFunction {
    double origin = 0.0;
    double dx = 1.0;
    std::vector<double> samples;
    double tail_l1 = 0.0;

    std::size_t size() const { return samples.size(); }
    double x_at(std::size_t i) const { return origin + dx * static_cast<double>(i); }
    double span() const { return dx * static_cast<double>(size() - 1); }

    void validate() const;

    double l1_norm() const;
    double sup_norm() const;

    static GridFunction sample(double lo, double hi, double dx,
                               const std::function<double(double)>& f,
                               double tail_l1 = 0.0);
};

// Quadrature convolution (a*b)(x) = dx * sum_k a_k b_(m-k) on the Minkowski
// sum grid (support grows; nothing wraps around). Spacings must match.
GridFunction convolve(const GridFunction& a, const GridFunction& b);

// f restricted to the closed ball |x| <= r, and its complement. The two parts
// sum back to f; tail declarations split accordingly.
GridFunction truncate_to_ball(const GridFunction& f, double r);
GridFunction truncation_tail(const GridFunction& f, double r);

// Quadrature Fourier transform dx * sum_k f_k exp(-i xi x_k) at a single
// frequency (arbitrary xi, libm trig).
std::complex<double> dft_at(const GridFunction& f, double xi);

// The n-point dual grid xi_j = 2 pi j / (n dx), j centred around 0. On this
// grid forward and inverse transforms below invert each other exactly (up to
// rounding): phases reduce to a mod-n twiddle table, so no accuracy is lost
// to large-argument trig reduction.
std::vector<double> dual_grid(const GridFunction& f);
std::vector<std::complex<double>> dft_dual(const GridFunction& f);

// Inverse of dft_dual back onto the grid of `like` (origin, dx, size copied).
GridFunction inverse_dft(const std::vector<std::complex<double>>& spectrum,
                         const GridFunction& like);

// CSV persistence: tagged header (origin, spacing, tail, count) followed by
// one sample per line, shortest round-trip decimal text throughout.
void save_csv(const std::filesystem::path& path, const GridFunction& f);
GridFunction load_csv(const std::filesystem::path& path);

}  // namespace levyharm
