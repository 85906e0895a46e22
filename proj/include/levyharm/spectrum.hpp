#pragma once

#include <utility>
#include <vector>

#include "levyharm/grid_function.hpp"

namespace levyharm {

// Smooth compactly supported tapers over the full grid span (both vanish at
// the endpoints, so the windowed signal is compactly supported).
enum class TaperKind { hann, blackman };

double taper_value(TaperKind kind, double t);  // t in [0,1] across the grid

// Windowed-spectrum mass split: |DFT(h * taper)| integrated over the dual
// grid, inside vs outside the band [-delta, delta]. A signal whose spectrum
// is concentrated at 0 (polynomial-like on the window) leaks only the taper's
// sidelobe mass outside; spectral content beyond delta shows up directly.
struct SpectrumMass {
    double inside = 0.0;
    double outside = 0.0;
    double total() const { return inside + outside; }
    double outside_fraction() const { return total() > 0.0 ? outside / total() : 0.0; }
};

SpectrumMass spectrum_mass(const GridFunction& h, TaperKind taper, double delta);

// Render a point-mass list (position, weight) as unit-mass smooth bumps of
// the given halfwidth on a uniform grid, so each atom contributes weight *
// bump-envelope to the spectrum. Positions must lie inside [lo + halfwidth,
// hi - halfwidth].
GridFunction render_atoms(const std::vector<std::pair<double, double>>& atoms, double lo,
                          double hi, double dx, double halfwidth);

}  // namespace levyharm
