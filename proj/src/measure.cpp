#include "levyharm/measure.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace levyharm {

void AtomicMeasure::validate() const {
    std::set<Rational> seen;
    for (const auto& a : atoms) {
        if (a.location == 0)
            throw DomainError("invalid-measure", "atomic measure has an atom at 0");
        if (a.mass <= 0)
            throw DomainError("invalid-measure", "atomic measure has a nonpositive mass");
        if (!seen.insert(a.location).second)
            throw DomainError("invalid-measure", "atomic measure has duplicate locations");
    }
}

SparseGeometricMeasure SparseGeometricMeasure::standard(int truncation_k) {
    if (truncation_k < 0)
        throw DomainError("invalid-measure", "negative truncation index");
    SparseGeometricMeasure m;
    m.x.reserve(static_cast<size_t>(truncation_k) + 1);
    for (int k = 0; k <= truncation_k; ++k)
        m.x.push_back(pow2(2UL * static_cast<unsigned long>(k) * static_cast<unsigned long>(k)));
    return m;
}

BigInt SparseGeometricMeasure::location_lower_bound(int k) const {
    if (k < 0) throw DomainError("invalid-measure", "negative location index");
    if (k < listed_count()) return x[static_cast<size_t>(k)];
    BigInt bound = x.empty() ? BigInt(1) : x.back();
    for (int j = listed_count(); j <= k; ++j) {
        BigInt floor_j = pow2(2UL * static_cast<unsigned long>(j) * static_cast<unsigned long>(j));
        bound = std::max(BigInt(2 * bound), floor_j);
    }
    return bound;
}

void SparseGeometricMeasure::validate() const {
    for (size_t k = 0; k < x.size(); ++k) {
        if (x[k] < 2 * BigInt(static_cast<long>(k)))
            throw DomainError("invalid-measure", "sparse family violates x_k >= 2k");
        if (x[k] < pow2(2 * static_cast<unsigned long>(k) * static_cast<unsigned long>(k)))
            throw DomainError("invalid-measure", "sparse family violates x_k >= 2^(2k^2)");
        if (k > 0 && x[k] < 2 * x[k - 1])
            throw DomainError("invalid-measure", "sparse family violates x_{k+1} >= 2 x_k");
    }
}

double DensityMeasure::density(double y) const {
    if (name == "exponential") return scale * std::exp(-rate * y);
    if (name == "power_law") return scale * std::pow(y, -1.0 - alpha);
    throw DomainError("invalid-measure", "unknown density family: " + name);
}

double DensityMeasure::singularity_order() const {
    if (name == "exponential") return 0.0;
    if (name == "power_law") return 1.0 + alpha;
    throw DomainError("invalid-measure", "unknown density family: " + name);
}

double DensityMeasure::tail_mass_bound(double r) const {
    if (name == "exponential") return 2.0 * scale / rate * std::exp(-rate * r);
    if (name == "power_law") return 2.0 * scale / alpha * std::pow(r, -alpha);
    throw DomainError("invalid-measure", "unknown density family: " + name);
}

void DensityMeasure::validate() const {
    if (scale <= 0) throw DomainError("invalid-measure", "density scale must be positive");
    if (name == "exponential") {
        if (rate <= 0) throw DomainError("invalid-measure", "exponential rate must be positive");
    } else if (name == "power_law") {
        if (alpha <= 0 || alpha >= 2)
            throw DomainError("invalid-measure", "power_law alpha must lie in (0, 2)");
    } else {
        throw DomainError("invalid-measure", "unknown density family: " + name);
    }
    if (singularity_order() >= 3.0)
        throw DomainError("invalid-measure", "declared singularity order must be < 3");
    if (quad.panels < 4 || quad.inner_cut <= 0 || quad.outer_cut <= 1 || quad.tol <= 0)
        throw DomainError("invalid-measure", "malformed quadrature spec");
    // Levy integrability: finite integral of min(1, y^2) nu(dy), checked by
    // the declared quadrature, not assumed from the family formulas.
    QuadratureResult r = integrate_against_density(
        *this, [](double y) { return 2.0 * std::min(1.0, y * y); }, 2.0);
    if (!std::isfinite(r.value))
        throw DomainError("invalid-measure", "min(1, y^2) integral did not converge");
}

void MeasureSpec::validate() const {
    std::visit([](const auto& m) { m.validate(); }, value);
}

MeasureSpec MeasureSpec::reflected() const {
    if (is_atomic()) {
        AtomicMeasure r = atomic();
        for (auto& a : r.atoms) a.location = -a.location;
        return MeasureSpec(std::move(r));
    }
    // Both non-atomic families are symmetric by construction.
    return *this;
}

namespace {

// Composite Simpson over [lo, hi] with n (even) subintervals.
double simpson(const std::function<double(double)>& f, double lo, double hi, int n) {
    if (n % 2 != 0) ++n;
    double h = (hi - lo) / n;
    double sum = f(lo) + f(hi);
    for (int i = 1; i < n; ++i) sum += f(lo + i * h) * (i % 2 == 1 ? 4.0 : 2.0);
    return sum * h / 3.0;
}

// Geometric panel edges from lo to hi (lo < hi), count panels.
std::vector<double> geometric_edges(double lo, double hi, int count) {
    std::vector<double> e(static_cast<size_t>(count) + 1);
    double ratio = std::pow(hi / lo, 1.0 / count);
    e[0] = lo;
    for (int i = 1; i < count; ++i) e[static_cast<size_t>(i)] = e[static_cast<size_t>(i - 1)] * ratio;
    e[static_cast<size_t>(count)] = hi;
    return e;
}

double integrate_with_panels(const DensityMeasure& dm, const std::function<double(double)>& g,
                             int panels) {
    auto integrand = [&](double y) { return g(y) * dm.density(y); };
    double total = 0.0;
    // Geometric panels resolve the integrable singularity at 0 and the decay
    // toward the outer cutoff; 8 Simpson subintervals per panel.
    const int inner = std::max(4, panels);
    auto inner_edges = geometric_edges(dm.quad.inner_cut, 1.0, inner);
    for (size_t i = 0; i + 1 < inner_edges.size(); ++i)
        total += simpson(integrand, inner_edges[i], inner_edges[i + 1], 8);
    if (dm.quad.outer_cut > 1.0) {
        auto edges = geometric_edges(1.0, dm.quad.outer_cut, std::max(4, panels));
        for (size_t i = 0; i + 1 < edges.size(); ++i)
            total += simpson(integrand, edges[i], edges[i + 1], 8);
    }
    return total;
}

}  // namespace

QuadratureResult integrate_against_density(const DensityMeasure& dm,
                                           const std::function<double(double)>& g,
                                           double tail_weight_bound) {
    QuadratureResult out;
    double coarse = integrate_with_panels(dm, g, dm.quad.panels / 2);
    out.value = integrate_with_panels(dm, g, dm.quad.panels);
    out.achieved_tol = std::fabs(out.value - coarse) / (1.0 + std::fabs(out.value));
    out.tail_bound = tail_weight_bound * dm.tail_mass_bound(dm.quad.outer_cut);
    if (!std::isfinite(out.value) || out.achieved_tol > dm.quad.tol)
        throw DomainError("quadrature-non-convergence",
                          "density quadrature achieved tolerance " +
                              std::to_string(out.achieved_tol) + " > declared " +
                              std::to_string(dm.quad.tol));
    return out;
}

}  // namespace levyharm
