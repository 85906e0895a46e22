#pragma once

#include "levyharm/triplet.hpp"

namespace levyharm {

// Value of the characteristic exponent
//   Psi(xi) = a xi^2 - i b xi + integral of [1 - e^{i xi y} + i xi y 1_B(y)] nu(dy).
// Identities: Psi(0) = 0, Psi(-xi) = conj(Psi(xi)), Re Psi >= 0.
struct SymbolValue {
    double re = 0.0;
    double im = 0.0;
};

struct SymbolInfo {
    // Certified bound on the omitted part (unlisted sparse-family atoms, or
    // density mass beyond the outer cutoff).
    double truncation_bound = 0.0;
    double quad_achieved_tol = 0.0;
};

// Double-precision path. For the sparse geometric family this refuses
// (domain error) once |xi| * x_k is too large for cos() to mean anything;
// use the exact pi-rational path below instead.
SymbolValue symbol_eval(const LevyTriplet& t, double xi, SymbolInfo* info = nullptr);

// Exact path for xi = c * pi with c rational: residues (c*y) mod 2 are
// reduced in exact arithmetic, and cos(pi r) is exact for r in
// {0, 1/2, 1, 3/2}. This is the only meaningful way to evaluate the symbol of
// the sparse family at large k (x_23 = 2^1058 overflows double).
SymbolValue symbol_eval_pi_multiple(const LevyTriplet& t, const Rational& c,
                                    SymbolInfo* info = nullptr);

// cos(pi r) with exact values on the quarter lattice; r reduced mod 2 first.
double cos_pi_rational(const Rational& r);

}  // namespace levyharm
