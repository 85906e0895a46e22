#include "levyharm/discrete.hpp"

#include <cmath>
#include <limits>

#include "levyharm/errors.hpp"

namespace levyharm {

Rational SparseSequence::at(const BigInt& n) const {
    auto it = atoms.find(n);
    return it == atoms.end() ? Rational(0) : it->second;
}

BigInt SparseSequence::max_support() const {
    BigInt m(0);
    for (const auto& [n, v] : atoms) {
        (void)v;
        BigInt a = abs(n);
        if (a > m) m = a;
    }
    return m;
}

bool SparseSequence::is_symmetric() const {
    for (const auto& [n, v] : atoms) {
        if (at(-n) != v) return false;
    }
    return true;
}

Rational CounterexampleParams::p(int k) {
    return pow2_inv(static_cast<unsigned long>(k) + 2);
}

BigInt CounterexampleParams::x(int k) {
    return pow2(2UL * static_cast<unsigned long>(k) * static_cast<unsigned long>(k));
}

Rational apply_L0(const SparseSequence& seq, const BigInt& n,
                  std::optional<int> truncation) {
    const BigInt reach = seq.max_support() + abs(n);
    int k_auto = 0;
    while (CounterexampleParams::x(k_auto) <= reach) ++k_auto;
    if (truncation && *truncation < k_auto) {
        throw DomainError("truncation-insufficient",
                          "forced truncation omits jump locations that can "
                          "still land inside the support");
    }
    // Terms with k >= k_auto have both lookups outside the support; together
    // with the listed -2 p_k f(n) pieces, the f(n) coefficient is the exact
    // total mass 1.
    Rational acc(0);
    for (int k = 0; k < k_auto; ++k) {
        acc += CounterexampleParams::p(k) *
               (seq.at(n + CounterexampleParams::x(k)) + seq.at(n - CounterexampleParams::x(k)));
    }
    acc -= seq.at(n);
    return acc;
}

SparseSequence build_discrete(int level) {
    if (level < 0) throw DomainError("invalid-level", "level must be >= 0");
    SparseSequence h;
    h.atoms[BigInt(0)] = Rational(1);
    for (int m = 0; m <= level; ++m) {
        const Rational lm = apply_L0(h, BigInt(m));
        Rational a;
        if (m == 0) {
            // The new pair +-x_0 is reachable from 0 through both signed jumps,
            // so the correction enters with weight 2 p_0.
            a = -lm / (2 * CounterexampleParams::p(0));
        } else {
            a = -lm / CounterexampleParams::p(m);
        }
        if (a != 0) {
            const BigInt s = BigInt(m) + CounterexampleParams::x(m);
            h.atoms[s] = a;
            h.atoms[-s] = a;
        }
        h.level = m;
    }
    h.level = level;
    return h;
}

HarmonicWindowCertificate verify_harmonic_window(int level, int window) {
    if (window > level) {
        throw DomainError("window-exceeds-level",
                          "the level-M build only determines L0 h on |n| <= M");
    }
    if (window < 0) throw DomainError("invalid-window", "window must be >= 0");
    HarmonicWindowCertificate cert;
    cert.level = level;
    cert.window = window;
    cert.all_zero = true;
    const SparseSequence h = build_discrete(level);
    for (int n = -window; n <= window; ++n) {
        Rational v = apply_L0(h, BigInt(n));
        if (v != 0) cert.all_zero = false;
        cert.values.emplace_back(BigInt(n), v);
    }
    return cert;
}

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void finalize_family(GrowthFamily& fam) {
    fam.max_log_ratio = kNegInf;
    fam.argmax = -1;
    for (std::size_t i = 0; i < fam.entries.size(); ++i) {
        if (fam.entries[i].second > fam.max_log_ratio) {
            fam.max_log_ratio = fam.entries[i].second;
            fam.argmax = static_cast<long>(i);
        }
    }
    long trend = 0;
    for (std::size_t i = 1; i < fam.entries.size(); ++i) {
        if (fam.entries[i].second > fam.entries[i - 1].second) {
            trend = static_cast<long>(i);
        }
    }
    fam.trend_index = trend;
}

double log_profile(const BigInt& n, double epsilon) {
    return epsilon * log_abs(BigInt(n + 1));
}

}  // namespace

GrowthReport growth_report(const SparseSequence& seq, double epsilon) {
    if (!(epsilon > 0.0)) {
        throw DomainError("invalid-epsilon", "growth profile exponent must be positive");
    }
    GrowthReport rep;
    rep.epsilon = epsilon;

    for (const auto& [n, v] : seq.atoms) {
        if (n < 0) continue;
        rep.atom_ratio.entries.emplace_back(n, log_abs(v) - log_profile(n, epsilon));
    }

    for (int m = 0; m <= seq.level; ++m) {
        const BigInt s = BigInt(m) + CounterexampleParams::x(m);
        const Rational am = seq.at(s);
        // A level whose coefficient vanished contributes no atom and no ratio.
        if (am == 0) continue;
        const double lr = log_abs(CounterexampleParams::p(m)) + log_abs(am) -
                          epsilon * std::log1p(static_cast<double>(m));
        rep.level_ratio.entries.emplace_back(BigInt(m), lr);
    }

    for (const auto& [n, v] : seq.atoms) {
        (void)v;
        if (n < 0) continue;
        // sum_k p_k (|h(n+x_k)| + |h(n-x_k)|): exact, since beyond the same
        // truncation threshold as apply_L0 every lookup is literally zero.
        const BigInt reach = seq.max_support() + abs(n);
        Rational s(0);
        for (int k = 0; CounterexampleParams::x(k) <= reach; ++k) {
            s += CounterexampleParams::p(k) *
                 (abs(seq.at(n + CounterexampleParams::x(k))) +
                  abs(seq.at(n - CounterexampleParams::x(k))));
        }
        // Outside the harmonic window the sum may be exactly zero (no other
        // atom within jump reach); zero sits below every profile, so skip it.
        if (s == 0) continue;
        rep.weighted_sum.entries.emplace_back(n, log_abs(s) - log_profile(n, epsilon));
    }

    finalize_family(rep.atom_ratio);
    finalize_family(rep.level_ratio);
    finalize_family(rep.weighted_sum);
    return rep;
}

}  // namespace levyharm
