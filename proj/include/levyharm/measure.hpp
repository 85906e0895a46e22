#pragma once

#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "levyharm/errors.hpp"
#include "levyharm/rational.hpp"

namespace levyharm {

// One atom of a purely atomic jump measure. Location and mass are exact
// rationals: doubles convert exactly, "p/q" strings parse exactly.
struct Atom {
    Rational location;
    Rational mass;
};

struct AtomicMeasure {
    std::vector<Atom> atoms;

    void validate() const;  // locations nonzero and distinct, masses > 0
};

// The doubly-exponentially sparse infinite family: mass p_k = 2^{-k-2} at
// +-x_k. Only finitely many locations are listed (default x_k = 2^{2 k^2});
// the unlisted tail has exactly known mass (sum over all k of 2 p_k = 1) and
// locations bounded below by a doubling recursion, which is what makes exact
// truncation possible for compactly supported arguments.
struct SparseGeometricMeasure {
    std::vector<BigInt> x;  // x_0 .. x_K, ascending

    static SparseGeometricMeasure standard(int truncation_k);

    int listed_count() const { return static_cast<int>(x.size()); }
    static Rational mass(int k) { return pow2_inv(static_cast<unsigned long>(k) + 2); }

    // sum_{k > K} 2 p_k where K is the last listed index.
    Rational tail_pair_mass() const { return pow2_inv(x.size()); }

    // Exact location for listed k; a certified lower bound beyond the list.
    BigInt location_lower_bound(int k) const;

    void validate() const;  // x_{k+1} >= 2 x_k, x_k >= 2k, x_k >= 2^{2k^2}
};

struct QuadratureSpec {
    int panels = 512;         // composite panels per side-decade block
    double inner_cut = 1e-8;  // quadrature starts here (integrable singularity at 0)
    double outer_cut = 40.0;  // analytic tail bound applies beyond
    double tol = 1e-9;        // relative convergence target (Richardson check)
};

// Symmetric density families with a declared singularity order at the origin
// and analytic tail bounds. "exponential": scale * e^{-rate |y|};
// "power_law": scale * |y|^{-1-alpha}, 0 < alpha < 2.
struct DensityMeasure {
    std::string name;
    double scale = 1.0;
    double rate = 1.0;   // exponential only
    double alpha = 1.0;  // power_law only
    QuadratureSpec quad;

    double density(double y) const;  // y > 0; the measure is symmetric
    double singularity_order() const;
    double tail_mass_bound(double r) const;  // integral of nu over |y| > r
    void validate() const;
};

struct MeasureSpec {
    std::variant<AtomicMeasure, SparseGeometricMeasure, DensityMeasure> value;

    MeasureSpec() : value(AtomicMeasure{}) {}
    MeasureSpec(AtomicMeasure m) : value(std::move(m)) {}
    MeasureSpec(SparseGeometricMeasure m) : value(std::move(m)) {}
    MeasureSpec(DensityMeasure m) : value(std::move(m)) {}

    bool is_atomic() const { return std::holds_alternative<AtomicMeasure>(value); }
    bool is_empty() const { return is_atomic() && atomic().atoms.empty(); }
    bool is_sparse_geometric() const {
        return std::holds_alternative<SparseGeometricMeasure>(value);
    }
    bool is_density() const { return std::holds_alternative<DensityMeasure>(value); }

    const AtomicMeasure& atomic() const { return std::get<AtomicMeasure>(value); }
    const SparseGeometricMeasure& sparse_geometric() const {
        return std::get<SparseGeometricMeasure>(value);
    }
    const DensityMeasure& density() const { return std::get<DensityMeasure>(value); }

    void validate() const;
    MeasureSpec reflected() const;  // nu_check(A) = nu(-A)
};

struct QuadratureResult {
    double value = 0.0;
    double achieved_tol = 0.0;  // |I(n) - I(n/2)| / (1 + |I(n)|)
    double tail_bound = 0.0;    // certified bound on the omitted |y| > outer_cut part
};

// integral over (0, outer_cut] of g(y) nu(y) dy for a symmetric density; g
// must already fold in both signs of y (callers pass g(y) = f(y) + f(-y)).
// tail_weight bounds |g| on |y| > outer_cut for the tail certificate.
QuadratureResult integrate_against_density(const DensityMeasure& dm,
                                           const std::function<double(double)>& g,
                                           double tail_weight_bound);

}  // namespace levyharm
