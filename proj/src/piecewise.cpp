#include "levyharm/piecewise.hpp"

#include <cmath>
#include <stdexcept>

#include "levyharm/discrete.hpp"
#include "levyharm/errors.hpp"

namespace levyharm {

namespace {

const Rational kHalf = make_rational(1, 2);
// Rational lower bound of ln 2; t * kLn2Lower >= B certifies log 2^t >= B.
const Rational kLn2Lower = make_rational(693147, 1000000);

BigInt ceil_rational(const Rational& r) {
    BigInt f = floor_rational(r);
    if (Rational(f) < r) f += 1;
    return f;
}

unsigned long ceil_log2(const BigInt& n) {
    unsigned long t = 0;
    BigInt p(1);
    while (p < n) {
        p *= 2;
        ++t;
    }
    return t;
}

}  // namespace

Polynomial::Polynomial(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

void Polynomial::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
    std::vector<Rational> r(std::max(c_.size(), o.c_.size()), Rational(0));
    for (std::size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
    for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
    return Polynomial(std::move(r));
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
    std::vector<Rational> r(std::max(c_.size(), o.c_.size()), Rational(0));
    for (std::size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
    for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] -= o.c_[i];
    return Polynomial(std::move(r));
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
    if (c_.empty() || o.c_.empty()) return Polynomial();
    std::vector<Rational> r(c_.size() + o.c_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < c_.size(); ++i) {
        for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
    }
    return Polynomial(std::move(r));
}

Polynomial Polynomial::scaled(const Rational& s) const {
    std::vector<Rational> r = c_;
    for (auto& v : r) v *= s;
    return Polynomial(std::move(r));
}

Polynomial Polynomial::derivative() const {
    if (c_.size() <= 1) return Polynomial();
    std::vector<Rational> r(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * Rational(static_cast<long>(i));
    return Polynomial(std::move(r));
}

Polynomial Polynomial::reflected() const {
    std::vector<Rational> r = c_;
    for (std::size_t i = 1; i < r.size(); i += 2) r[i] = -r[i];
    return Polynomial(std::move(r));
}

Polynomial Polynomial::pow(int n) const {
    Polynomial acc(std::vector<Rational>{Rational(1)});
    for (int i = 0; i < n; ++i) acc = acc * *this;
    return acc;
}

Rational Polynomial::eval(const Rational& z) const {
    Rational acc(0);
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * z + c_[i];
    return acc;
}

double Polynomial::eval_double(double z) const {
    double acc = 0.0;
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * z + c_[i].get_d();
    return acc;
}

Rational Polynomial::half_coeff_bound() const {
    Rational acc(0);
    Rational w(1);
    for (const auto& v : c_) {
        acc += abs(v) * w;
        w *= kHalf;
    }
    return acc;
}

const Polynomial* PiecewiseBundle::piece_at(const BigInt& center) const {
    auto it = pieces.find(center);
    return it == pieces.end() ? nullptr : &it->second;
}

BigInt PiecewiseBundle::max_center() const {
    BigInt m(0);
    for (const auto& [c, p] : pieces) {
        (void)p;
        BigInt a = abs(c);
        if (a > m) m = a;
    }
    return m;
}

namespace {

// Covering centers of u: the at-most-two integers within distance 1/2. At a
// shared half-integer boundary both pieces vanish, so summing both is exact.
template <typename F>
Rational sum_covering(const PiecewiseBundle& b, const Rational& u, F&& piece_value) {
    const BigInt hi = floor_rational(u + kHalf);
    const BigInt lo = -floor_rational(-(u - kHalf));  // ceil(u - 1/2)
    Rational acc(0);
    for (BigInt c = lo; c <= hi; c += 1) {
        const Polynomial* p = b.piece_at(c);
        if (!p) continue;
        acc += piece_value(*p, u - Rational(c));
    }
    return acc;
}

}  // namespace

Rational PiecewiseBundle::eval(const Rational& u) const {
    return sum_covering(*this, u,
                        [](const Polynomial& p, const Rational& z) { return p.eval(z); });
}

Rational PiecewiseBundle::eval_dd(const Rational& u) const {
    return sum_covering(*this, u, [](const Polynomial& p, const Rational& z) {
        return p.derivative().derivative().eval(z);
    });
}

namespace {

Polynomial piece_or_zero(const PiecewiseBundle& b, const BigInt& center) {
    const Polynomial* p = b.piece_at(center);
    return p ? *p : Polynomial();
}

}  // namespace

PiecewiseBundle build_continuous(int level, int q) {
    if (level < 0) throw DomainError("invalid-level", "level must be >= 0");
    if (q < 2 * level + 6) {
        throw DomainError("bump-degree-too-small",
                          "level-M certification differentiates through 2M+2 "
                          "orders; require q >= 2M + 6");
    }
    PiecewiseBundle b;
    b.level = level;
    b.q = q;
    const Polynomial seed =
        Polynomial(std::vector<Rational>{make_rational(1, 4), Rational(0), Rational(-1)})
            .pow(q);
    b.pieces[BigInt(0)] = seed;

    for (int m = 0; m <= level; ++m) {
        const BigInt mc(m);
        if (m >= 1) {
            // Unchosen locations x_k, k >= m, are bounded below by
            // max(2 x_{m-1}, 4m, 2^{2m^2}); certify they clear every existing
            // center by at least 1, so their lookups are identically zero.
            BigInt lb = 2 * b.x.back();
            if (lb < 4 * m) lb = 4 * m;
            const BigInt pinned_floor =
                pow2(2UL * static_cast<unsigned long>(m) * static_cast<unsigned long>(m));
            if (lb < pinned_floor) lb = pinned_floor;
            if (lb < b.x.back() + 2 * m) {
                throw std::logic_error("future jump locations could reach existing pieces");
            }
        }
        const Polynomial pm = piece_or_zero(b, mc);
        Polynomial acc = pm.derivative().derivative();
        for (int k = 0; k < m; ++k) {
            acc = acc + (piece_or_zero(b, mc + b.x[static_cast<std::size_t>(k)]) +
                         piece_or_zero(b, mc - b.x[static_cast<std::size_t>(k)]))
                            .scaled(CounterexampleParams::p(k));
        }
        acc = acc - pm;
        // Level 0 corrects through both signed unit jumps, hence 2 p_0.
        const Rational denom =
            (m == 0) ? 2 * CounterexampleParams::p(0) : CounterexampleParams::p(m);
        const Polynomial phi = acc.scaled(Rational(-1) / denom);

        unsigned long tm = 0;
        if (m >= 1) {
            const Rational bound =
                phi.half_coeff_bound() + phi.derivative().derivative().half_coeff_bound();
            tm = b.t.back() + 1;
            tm = std::max(tm, ceil_log2(BigInt(4 * m)));
            tm = std::max(tm, 2UL * static_cast<unsigned long>(m) * static_cast<unsigned long>(m));
            const BigInt treq = ceil_rational(bound / kLn2Lower);
            if (treq > 0 && tm < treq.get_ui()) tm = treq.get_ui();
        }
        const BigInt xm = pow2(tm);
        b.x.push_back(xm);
        b.t.push_back(tm);
        if (!phi.is_zero()) {
            const BigInt s = mc + xm;
            b.pieces[s] = phi;
            b.pieces[-s] = phi.reflected();
        }
    }
    return b;
}

Rational apply_L_continuous(const PiecewiseBundle& bundle, const Rational& x) {
    if (bundle.level < 0 || bundle.x.empty()) {
        throw DomainError("invalid-bundle", "bundle is not built");
    }
    const Rational window = Rational(bundle.level) + kHalf;
    if (abs(x) > window) {
        throw DomainError("outside-window",
                          "harmonicity is only certified on |x| <= level + 1/2");
    }
    // Tail locations beyond the chosen list clear every center from anywhere
    // in the window, so the -h(x) term may carry the exact total mass 1.
    {
        BigInt lb = 2 * bundle.x.back();
        const BigInt next_m(bundle.level + 1);
        if (lb < 4 * next_m) lb = 4 * next_m;
        if (lb < bundle.x.back() + 2 * next_m + 1) {
            throw std::logic_error("tail jump locations could reach existing pieces");
        }
    }
    Rational acc = bundle.eval_dd(x);
    for (std::size_t k = 0; k < bundle.x.size(); ++k) {
        const Rational xk((bundle.x[k]));
        acc += CounterexampleParams::p(static_cast<int>(k)) *
               (bundle.eval(x + xk) + bundle.eval(x - xk));
    }
    acc -= bundle.eval(x);
    return acc;
}

std::vector<PieceNormBound> piece_norm_bounds(const PiecewiseBundle& bundle) {
    std::vector<PieceNormBound> out;
    for (int m = 0; m <= bundle.level; ++m) {
        PieceNormBound row;
        row.m = m;
        const Polynomial phi = piece_or_zero(bundle, BigInt(m) + bundle.x[static_cast<std::size_t>(m)]);
        const Polynomial phidd = phi.derivative().derivative();
        row.upper = phi.half_coeff_bound() + phidd.half_coeff_bound();
        double lower = 0.0;
        for (int i = 0; i <= 1000; ++i) {
            const double z = -0.5 + i / 1000.0;
            lower = std::max(lower, std::abs(phi.eval_double(z)) + std::abs(phidd.eval_double(z)));
        }
        row.sampled_lower = lower;
        row.log_x_lower = Rational(static_cast<long>(bundle.t[static_cast<std::size_t>(m)])) * kLn2Lower;
        row.constraint_applies = m >= 1;
        row.satisfied = !row.constraint_applies || row.log_x_lower >= row.upper;
        if (row.constraint_applies && !row.satisfied) {
            throw DomainError("log-x-bound-violated",
                              "built bundle violates the growth constraint on x_m");
        }
        out.push_back(std::move(row));
    }
    return out;
}

}  // namespace levyharm
