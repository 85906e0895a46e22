#include "levyharm/spectrum.hpp"

#include <cmath>
#include <numbers>

namespace levyharm {

double taper_value(TaperKind kind, double t) {
    const double c = std::cos(2.0 * std::numbers::pi * t);
    switch (kind) {
        case TaperKind::hann:
            return 0.5 - 0.5 * c;
        case TaperKind::blackman:
            return 0.42 - 0.5 * c + 0.08 * std::cos(4.0 * std::numbers::pi * t);
    }
    return 0.0;
}

SpectrumMass spectrum_mass(const GridFunction& h, TaperKind taper, double delta) {
    h.validate();
    if (!(delta > 0.0)) throw DomainError("invalid-interval", "hole radius must be > 0");

    GridFunction windowed = h;
    const auto n = windowed.size();
    for (std::size_t i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) / static_cast<double>(n - 1);
        windowed.samples[i] *= taper_value(taper, t);
    }
    windowed.tail_l1 = 0.0;

    const auto xi = dual_grid(windowed);
    const auto spec = dft_dual(windowed);
    const double dxi = xi[1] - xi[0];
    SpectrumMass m;
    for (std::size_t j = 0; j < n; ++j) {
        const double a = dxi * std::abs(spec[j]);
        if (std::fabs(xi[j]) <= delta)
            m.inside += a;
        else
            m.outside += a;
    }
    return m;
}

GridFunction render_atoms(const std::vector<std::pair<double, double>>& atoms, double lo,
                          double hi, double dx, double halfwidth) {
    if (!(halfwidth > 0.0) || halfwidth < 2.0 * dx)
        throw DomainError("invalid-bump", "bump halfwidth must cover at least two grid steps");
    for (const auto& [pos, weight] : atoms) {
        (void)weight;
        if (pos - halfwidth < lo || pos + halfwidth > hi)
            throw DomainError("outside-window", "atom bump extends beyond the grid");
    }
    GridFunction g = GridFunction::sample(lo, hi, dx, [](double) { return 0.0; });

    // Quadrature mass of the discrete bump shape, so each rendered atom
    // integrates to exactly its weight.
    const auto reach = static_cast<std::ptrdiff_t>(std::floor(halfwidth / dx));
    double shape_mass = 0.0;
    for (std::ptrdiff_t k = -reach; k <= reach; ++k) {
        const double u = static_cast<double>(k) * dx / halfwidth;
        const double s = 1.0 - u * u;
        shape_mass += s * s;
    }
    shape_mass *= dx;

    for (const auto& [pos, weight] : atoms) {
        const auto center = static_cast<std::ptrdiff_t>(std::llround((pos - lo) / dx));
        const double off = pos - g.x_at(static_cast<std::size_t>(center));
        for (std::ptrdiff_t k = -reach; k <= reach; ++k) {
            const std::ptrdiff_t i = center + k;
            if (i < 0 || i >= static_cast<std::ptrdiff_t>(g.size())) continue;
            const double u = (static_cast<double>(k) * dx - off) / halfwidth;
            if (std::fabs(u) >= 1.0) continue;
            const double s = 1.0 - u * u;
            g.samples[static_cast<std::size_t>(i)] += weight * s * s / shape_mass;
        }
    }
    return g;
}

}  // namespace levyharm
