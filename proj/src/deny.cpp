#include "levyharm/deny.hpp"

#include "levyharm/errors.hpp"

namespace levyharm {

IntegerMeasure IntegerMeasure::from_atoms(std::map<BigInt, Rational> m) {
    IntegerMeasure mu;
    mu.masses = std::move(m);
    mu.validate_probability();
    return mu;
}

IntegerMeasure IntegerMeasure::sparse_standard(int listed) {
    if (listed < 0) throw DomainError("invalid-measure", "listed count must be >= 0");
    IntegerMeasure mu;
    for (int k = 0; k < listed; ++k) {
        const Rational pk = CounterexampleParams::p(k);
        const BigInt xk = CounterexampleParams::x(k);
        mu.masses[xk] += pk;
        mu.masses[-xk] += pk;
    }
    mu.sparse_tail = true;
    mu.tail_from = listed;
    return mu;
}

Rational IntegerMeasure::total_mass() const {
    Rational s(0);
    for (const auto& [n, m] : masses) {
        (void)n;
        s += m;
    }
    if (sparse_tail) s += pow2_inv(static_cast<unsigned long>(tail_from));
    return s;
}

void IntegerMeasure::validate_probability() const {
    for (const auto& [n, m] : masses) {
        (void)n;
        if (m < 0) {
            throw DomainError("not-probability-measure", "negative mass");
        }
    }
    if (total_mass() != 1) {
        throw DomainError("not-probability-measure",
                          "masses must sum to exactly 1");
    }
}

DenyResidual deny_check(const SparseSequence& h, const IntegerMeasure& mu, int window) {
    if (window < 0) throw DomainError("invalid-window", "window must be >= 0");
    mu.validate_probability();
    const BigInt maxsupp = h.max_support();
    DenyResidual out;
    out.all_zero = true;
    for (int n = -window; n <= window; ++n) {
        const BigInt nn(n);
        Rational conv(0);
        for (const auto& [y, m] : mu.masses) {
            conv += m * h.at(nn - y);
        }
        if (mu.sparse_tail) {
            // Unlisted locations are bounded below by the doubling recursion;
            // every h-lookup they would trigger must be provably zero.
            const BigInt reach = maxsupp + abs(nn);
            if (CounterexampleParams::x(mu.tail_from) <= reach) {
                throw DomainError("truncation-insufficient",
                                  "sparse measure tail can land inside the "
                                  "support of h; extend the listed prefix");
            }
        }
        Rational r = conv - h.at(nn);
        if (r != 0) out.all_zero = false;
        out.residuals.emplace_back(nn, r);
    }
    return out;
}

}  // namespace levyharm
