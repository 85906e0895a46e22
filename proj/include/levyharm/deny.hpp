#pragma once

#include <map>
#include <vector>

#include "levyharm/discrete.hpp"
#include "levyharm/rational.hpp"

namespace levyharm {

// Probability measure on the integers, exact rational masses. Either fully
// explicit, or the standard sparse family p_k (delta_{x_k} + delta_{-x_k})
// with a finite listed prefix and the analytically known (total-mass) tail.
struct IntegerMeasure {
    std::map<BigInt, Rational> masses;
    bool sparse_tail = false;
    int tail_from = 0;  // first unlisted sparse index (sparse_tail only)

    static IntegerMeasure from_atoms(std::map<BigInt, Rational> m);
    static IntegerMeasure sparse_standard(int listed);

    Rational total_mass() const;  // analytic for the sparse-tail family
    void validate_probability() const;
};

struct DenyResidual {
    std::vector<std::pair<BigInt, Rational>> residuals;  // n -> (h*mu)(n) - h(n)
    bool all_zero = false;
};

// Exact convolution identity check: (h * mu)(n) - h(n) on |n| <= window.
// For the sparse-tail measure the unlisted locations must provably fall
// outside the support of h at every checked n; otherwise this throws.
DenyResidual deny_check(const SparseSequence& h, const IntegerMeasure& mu, int window);

}  // namespace levyharm
