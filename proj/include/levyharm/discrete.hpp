#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "levyharm/rational.hpp"

namespace levyharm {

// Finitely supported exact-rational function on the integers; zero values are
// never stored.
struct SparseSequence {
    int level = -1;  // build level, or -1 for ad-hoc sequences
    std::map<BigInt, Rational> atoms;

    Rational at(const BigInt& n) const;
    BigInt max_support() const;  // max |n| over atoms, 0 if empty
    bool is_symmetric() const;
};

// Parameters of the sparse jump family: mass p_k = 2^{-k-2} at +-x_k with
// x_k = 2^{2 k^2}. Satisfies x_{k+1} >= 2 x_k and x_k >= 2k, which is what
// makes every truncation below exact.
struct CounterexampleParams {
    static Rational p(int k);
    static BigInt x(int k);
};

// L0 f(n) = sum_k p_k (f(n + x_k) + f(n - x_k)) - f(n). The sum truncates
// exactly: once x_k exceeds max|support| + |n| every remaining lookup is zero,
// and the -f(n) term already carries the full mass sum 2 p_k = 1.
// A caller-forced truncation smaller than that threshold is rejected.
Rational apply_L0(const SparseSequence& seq, const BigInt& n,
                  std::optional<int> truncation = std::nullopt);

// Level-M bounded-window-harmonic sequence: h(0) = 1 and atoms a_j at
// +-(j + x_j), chosen so L0 h vanishes on |n| <= M.
SparseSequence build_discrete(int level);

struct HarmonicWindowCertificate {
    int level = 0;
    int window = 0;
    std::vector<std::pair<BigInt, Rational>> values;  // n -> L0 h(n)
    bool all_zero = false;
};

HarmonicWindowCertificate verify_harmonic_window(int level, int window);

// One growth family: natural-log ratios indexed by atom position or level.
struct GrowthFamily {
    std::vector<std::pair<BigInt, double>> entries;  // (index, log ratio)
    double max_log_ratio = 0.0;
    long argmax = -1;
    long trend_index = 0;  // entries are non-increasing from this position on
};

// Ratio diagnostics against the comparison profile (1 + |n|)^epsilon:
//   atom_ratio     |h(n)| / (1+n)^eps          over support points n >= 0
//   level_ratio    p_m |a_m| / (1+m)^eps       over built levels m
//   weighted_sum   sum_k p_k (|h(n+x_k)| + |h(n-x_k)|) / (1+n)^eps
// Ratios are carried in log space so indices far beyond double range still
// report finite numbers.
struct GrowthReport {
    double epsilon = 0.0;
    GrowthFamily atom_ratio;
    GrowthFamily level_ratio;
    GrowthFamily weighted_sum;
};

GrowthReport growth_report(const SparseSequence& seq, double epsilon);

}  // namespace levyharm
