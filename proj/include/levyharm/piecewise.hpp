#pragma once

#include <map>
#include <vector>

#include "levyharm/rational.hpp"

namespace levyharm {

// Dense polynomial over exact rationals, monomial basis, ascending powers.
class Polynomial {
  public:
    Polynomial() = default;
    explicit Polynomial(std::vector<Rational> coeffs);

    static Polynomial zero() { return Polynomial(); }

    const std::vector<Rational>& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero

    Polynomial operator+(const Polynomial& o) const;
    Polynomial operator-(const Polynomial& o) const;
    Polynomial operator*(const Polynomial& o) const;
    Polynomial scaled(const Rational& s) const;
    Polynomial derivative() const;
    Polynomial reflected() const;  // p(z) -> p(-z)
    Polynomial pow(int n) const;

    Rational eval(const Rational& z) const;
    double eval_double(double z) const;

    // sum_i |c_i| (1/2)^i: an upper bound for sup |p| on [-1/2, 1/2].
    Rational half_coeff_bound() const;

    bool operator==(const Polynomial& o) const { return c_ == o.c_; }

  private:
    void trim();
    std::vector<Rational> c_;
};

// Piecewise-polynomial even function: one polynomial piece per integer center
// c, living on local coordinate z = x - c with |z| <= 1/2, identically zero
// elsewhere. Centers are exact big integers (they grow like exp(sup-bounds)).
struct PiecewiseBundle {
    int level = -1;
    int q = 0;                        // bump degree of the seed (1/4 - z^2)^q
    std::vector<BigInt> x;            // chosen x_0 .. x_level
    std::vector<unsigned long> t;     // x_m = 2^{t_m}
    std::map<BigInt, Polynomial> pieces;

    const Polynomial* piece_at(const BigInt& center) const;
    BigInt max_center() const;

    // h(u) and h''(u): sum of covering pieces (at most two; at shared
    // half-integer boundaries every piece vanishes, so the sum is honest).
    Rational eval(const Rational& u) const;
    Rational eval_dd(const Rational& u) const;
};

// Level-M construction: seed (1/4 - z^2)^q at center 0, correction pieces
// phi_m at +-(m + x_m) chosen so that the operator
//   L f(x) = f''(x) + sum_k p_k (f(x + x_k) + f(x - x_k) - 2 f(x)),
// p_k = 2^{-k-2}, annihilates h on |x| <= M + 1/2. Requires q >= 2M + 6 so
// that every piece stays C^2 across half-integer boundaries.
PiecewiseBundle build_continuous(int level, int q);

// Exact value of L h(x) for |x| <= level + 1/2 (closed window).
Rational apply_L_continuous(const PiecewiseBundle& bundle, const Rational& x);

struct PieceNormBound {
    int m = 0;
    Rational upper;            // certified sup bound of |phi_m| + |phi_m''|
    double sampled_lower = 0;  // 1001-point grid max (sanity floor)
    Rational log_x_lower;      // t_m * (a rational lower bound of ln 2)
    bool constraint_applies = false;  // m >= 1 (x_0 = 1 is pinned)
    bool satisfied = false;           // log x_m >= upper (when it applies)
};

// Certifies log x_m >= sup(|phi_m| + |phi_m''|) for every m >= 1; throws if a
// built bundle ever violates it (construction should make this impossible).
std::vector<PieceNormBound> piece_norm_bounds(const PiecewiseBundle& bundle);

}  // namespace levyharm
