#pragma once

#include <gmpxx.h>

#include <cmath>
#include <stdexcept>
#include <string>

namespace levyharm {

using BigInt = mpz_class;
using Rational = mpq_class;

// 2^e as an exact integer.
inline BigInt pow2(unsigned long e) {
    BigInt r;
    mpz_ui_pow_ui(r.get_mpz_t(), 2, e);
    return r;
}

// 2^{-e} as an exact rational.
inline Rational pow2_inv(unsigned long e) {
    Rational q(1);
    q /= Rational(pow2(e));
    return q;
}

// Canonical n/d; the two-argument mpq_class constructor does not canonicalize.
inline Rational make_rational(const BigInt& n, const BigInt& d) {
    if (d == 0) throw std::invalid_argument("rational with zero denominator");
    Rational q(n, d);
    q.canonicalize();
    return q;
}

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

// Largest integer <= q.
inline BigInt floor_rational(const Rational& q) {
    BigInt r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
    return r;
}

// True iff the denominator is a power of two (the exact value class of the
// recursion coefficients).
inline bool is_dyadic(const Rational& q) {
    return mpz_popcount(q.get_den().get_mpz_t()) == 1;
}

// ln|z| for integers far beyond double range, via |z| = d * 2^exp.
inline double log_abs(const BigInt& z) {
    if (z == 0) throw std::domain_error("log of zero");
    signed long exp2 = 0;
    double d = mpz_get_d_2exp(&exp2, z.get_mpz_t());
    return std::log(std::fabs(d)) + static_cast<double>(exp2) * M_LN2;
}

inline double log_abs(const Rational& q) {
    return log_abs(BigInt(q.get_num())) - log_abs(BigInt(q.get_den()));
}

// Serialized forms: big integers as decimal strings, rationals always as "p/q".
inline std::string to_decimal_string(const BigInt& z) { return z.get_str(); }

inline std::string to_fraction_string(const Rational& q) {
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline BigInt parse_big_integer(const std::string& s) {
    BigInt z;
    if (s.empty() || mpz_set_str(z.get_mpz_t(), s.c_str(), 10) != 0)
        throw std::invalid_argument("malformed integer string: \"" + s + "\"");
    return z;
}

// Accepts "p/q" and bare "p".
inline Rational parse_fraction(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(parse_big_integer(s));
    BigInt num = parse_big_integer(s.substr(0, slash));
    BigInt den = parse_big_integer(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator: \"" + s + "\"");
    return make_rational(num, den);
}

}  // namespace levyharm
