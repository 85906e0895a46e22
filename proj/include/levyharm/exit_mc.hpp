#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "levyharm/function_desc.hpp"
#include "levyharm/triplet.hpp"

namespace levyharm {

// Deterministic per-path random stream: path engines are seeded through a
// splitmix64 finalizer of (seed, path), and the normal/Poisson samplers are
// pinned implementations (Marsaglia polar, Knuth product) so results are
// identical across platforms, standard libraries, and thread counts.
class RngStream {
  public:
    RngStream(std::uint64_t seed, std::uint64_t path);

    double uniform01();  // in (0, 1]
    double normal();
    int poisson(double mean);

  private:
    std::mt19937_64 eng_;
    bool has_cache_ = false;
    double cache_ = 0.0;
};

struct ExitLaw {
    double left = 0.0;   // interval (-left, right)
    double right = 0.0;
    std::vector<double> samples;  // exit positions, one per path
    long paths = 0;
    std::uint64_t seed = 0;

    double right_exit_fraction() const;  // fraction of samples >= right
    double right_exit_se() const;        // binomial standard error
};

struct ExitMcParams {
    double interval_left = 1.0;   // a in (-a, b)
    double interval_right = 1.0;  // b
    double x0 = 0.0;
    long paths = 10000;
    double dt = 1e-4;
    std::uint64_t seed = 1;
    int threads = 1;
};

// Euler scheme for diffusion + finite-activity atomic jumps: per step a
// Gaussian increment sqrt(2a dt) N(0,1), drift (b - sum_{|y|<1} y nu{y}) dt
// (the generator's drift is ball-compensated), and per-atom Poisson jump
// counts. First position outside the open interval is recorded.
ExitLaw exit_distribution_mc(const LevyTriplet& t, const ExitMcParams& p);

struct PairedExitLaws {
    ExitLaw coarse;  // step dt
    ExitLaw fine;    // step dt/2, driven by the same underlying randomness
};

// Common-random-numbers refinement pair: the coarse arm consumes the fine
// arm's increments pairwise ((g1+g2)/sqrt2 and summed jump counts), so the
// dt-bias check |coarse - fine| is not drowned in fresh MC noise.
PairedExitLaws exit_distribution_mc_paired(const LevyTriplet& t, const ExitMcParams& p);

struct DynkinResult {
    double estimate = 0.0;  // mean of phi(X_tau) - sum Lphi(X_i) dt, minus phi(x0)
    double standard_error = 0.0;
    long paths = 0;
};

// Monte Carlo check of phi(x0) = E[phi(X_tau)] - E[int_0^tau L phi(X_s) ds]
// with a left-endpoint Riemann occupation sum.
DynkinResult dynkin_residual(const LevyTriplet& t, const ExitMcParams& p,
                             const FunctionDesc& phi);

}  // namespace levyharm
