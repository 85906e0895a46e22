#pragma once

#include "levyharm/measure.hpp"

namespace levyharm {

// (a, b, nu): diffusion coefficient, drift, jump measure. The generator is
//   L f(x) = a f''(x) + b f'(x)
//            + integral of [f(x+y) - f(x) - 1_B(y) y f'(x)] nu(dy),
// with B the OPEN unit ball: atoms with |y| = 1 get no drift compensation.
struct LevyTriplet {
    double diffusion = 0.0;
    double drift = 0.0;
    MeasureSpec measure;

    void validate() const {
        if (!(diffusion >= 0.0))
            throw DomainError("invalid-triplet", "diffusion coefficient must be >= 0");
        measure.validate();
    }
};

// Conjugation with the reflection x -> -x: same diffusion, negated drift,
// reflected measure. An involution; its symbol is the pointwise conjugate.
inline LevyTriplet dual_triplet(const LevyTriplet& t) {
    return LevyTriplet{t.diffusion, -t.drift, t.measure.reflected()};
}

}  // namespace levyharm
