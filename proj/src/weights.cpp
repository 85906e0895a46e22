#include "levyharm/weights.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>

#include "levyharm/exit_mc.hpp"

namespace levyharm {

WeightSpec WeightSpec::power(double alpha) {
    WeightSpec w;
    w.family = Family::power;
    w.alpha = alpha;
    w.validate();
    return w;
}

WeightSpec WeightSpec::log_power(double beta) {
    WeightSpec w;
    w.family = Family::log_power;
    w.beta = beta;
    w.validate();
    return w;
}

WeightSpec WeightSpec::radial(std::vector<double> phi, double dr, double scale) {
    WeightSpec w;
    w.family = Family::radial_table;
    w.phi = std::move(phi);
    w.dr = dr;
    w.scale = scale;
    w.validate();
    return w;
}

void WeightSpec::validate() const {
    switch (family) {
        case Family::power:
            if (!(alpha > 0.0)) throw DomainError("invalid-weight", "power exponent must be > 0");
            break;
        case Family::log_power:
            if (!(beta > 0.0)) throw DomainError("invalid-weight", "log-power exponent must be > 0");
            break;
        case Family::radial_table:
            if (phi.size() < 2 || !(dr > 0.0) || !(scale > 0.0))
                throw DomainError("invalid-weight", "radial table needs >= 2 entries, dr > 0, scale > 0");
            for (double v : phi)
                if (!(v > 0.0)) throw DomainError("invalid-weight", "radial profile must be positive");
            break;
        case Family::callable:
            if (!fn) throw DomainError("invalid-weight", "callable weight has no function");
            break;
    }
}

double WeightSpec::operator()(double x) const {
    const double r = std::fabs(x);
    switch (family) {
        case Family::power:
            return std::pow(1.0 + r, alpha) - 1.0;
        case Family::log_power:
            return std::pow(std::log(std::numbers::e * std::numbers::e + r), beta);
        case Family::radial_table: {
            const double u = r / dr;
            const auto i = static_cast<std::size_t>(u);
            if (i + 1 >= phi.size()) return scale * phi.back();
            const double t = u - static_cast<double>(i);
            return scale * ((1.0 - t) * phi[i] + t * phi[i + 1]);
        }
        case Family::callable:
            return fn(x);
    }
    return 0.0;
}

double check_submultiplicative(const WeightSpec& Y,
                               const std::vector<std::pair<double, double>>& pairs) {
    Y.validate();
    double worst = 0.0;
    for (const auto& [x, y] : pairs) {
        const double lhs = 1.0 + Y(x + y);
        const double rhs = (1.0 + Y(x)) * (1.0 + Y(y));
        worst = std::max(worst, lhs - rhs);
    }
    return worst;
}

std::vector<std::pair<double, double>> weight_sample_pairs(std::size_t count, double range,
                                                           std::uint64_t seed) {
    RngStream rng(seed, 0);
    std::vector<std::pair<double, double>> pairs;
    pairs.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        const double x = (2.0 * rng.uniform01() - 1.0) * range;
        const double y = (2.0 * rng.uniform01() - 1.0) * range;
        pairs.emplace_back(x, y);
    }
    return pairs;
}

namespace {

// Value of a convolution grid at the x-position of index i on the base grid.
double conv_at_base_index(const GridFunction& conv, const GridFunction& base, std::size_t i) {
    const double x = base.x_at(i);
    const auto j = static_cast<std::ptrdiff_t>(std::llround((x - conv.origin) / conv.dx));
    if (j < 0 || j >= static_cast<std::ptrdiff_t>(conv.size())) return 0.0;
    return conv.samples[static_cast<std::size_t>(j)];
}

}  // namespace

DirectJumpReport check_direct_jump(const GridFunction& Y, const std::vector<double>& radii,
                                   double tol, double tail_tol) {
    Y.validate();
    if (!std::isfinite(Y.tail_l1))
        throw DomainError("non-integrable-weight",
                          "direct-jump check requires a declared integrable tail");
    for (double v : Y.samples)
        if (!(v > 0.0))
            throw DomainError("invalid-weight", "direct-jump check requires Y > 0 on the grid");

    DirectJumpReport rep;
    const GridFunction yy = convolve(Y, Y);
    for (std::size_t i = 0; i < Y.size(); ++i) {
        const double diff = conv_at_base_index(yy, Y, i) - Y.samples[i];
        rep.max_violation = std::max(rep.max_violation, diff);
    }
    rep.max_violation = std::max(rep.max_violation, 0.0);

    for (double r : radii) {
        const GridFunction yr = truncation_tail(Y, r);
        const GridFunction yryr = convolve(yr, yr);
        double sup = 0.0;
        for (std::size_t i = 0; i < Y.size(); ++i)
            sup = std::max(sup, conv_at_base_index(yryr, Y, i) / Y.samples[i]);
        rep.tail_ratios.emplace_back(r, sup);
    }

    bool decreasing = true;
    for (std::size_t i = 1; i < rep.tail_ratios.size(); ++i)
        if (rep.tail_ratios[i].second > rep.tail_ratios[i - 1].second + 1e-12) decreasing = false;
    rep.passes = rep.max_violation <= tol && decreasing &&
                 (rep.tail_ratios.empty() || rep.tail_ratios.back().second <= tail_tol);
    return rep;
}

RadialEpsilonResult radial_epsilon(const std::vector<double>& phi, double dr, int dim) {
    if (phi.size() < 3 || !(dr > 0.0))
        throw DomainError("invalid-weight", "radial profile needs >= 3 entries and dr > 0");
    if (dim < 1 || dim > 3)
        throw DomainError("invalid-weight", "dimension must be 1, 2 or 3");
    for (double v : phi)
        if (!(v > 0.0)) throw DomainError("invalid-weight", "radial profile must be positive");
    for (std::size_t i = 1; i < phi.size(); ++i)
        if (phi[i] > phi[i - 1] * (1.0 + 1e-12))
            throw DomainError("phi-not-decreasing", "radial profile must be non-increasing");

    // Doubling condition phi(2r)/phi(r) bounded away from 0 on the table.
    double doubling_min = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; 2 * i < phi.size(); ++i)
        doubling_min = std::min(doubling_min, phi[2 * i] / phi[i]);
    if (doubling_min < 1e-8)
        throw DomainError("doubling-condition-failed",
                          "phi(2r)/phi(r) decays to ~0 on the table range");

    const double surface = dim == 1 ? 2.0 : (dim == 2 ? 2.0 * std::numbers::pi : 4.0 * std::numbers::pi);
    auto integrand = [&](std::size_t i) {
        const double r = dr * static_cast<double>(i);
        return std::pow(r, dim - 1) * phi[i];
    };
    // Composite Simpson over the table; trapezoid on a leftover last interval.
    double integral = 0.0;
    std::size_t i = 0;
    const std::size_t last = phi.size() - 1;
    for (; i + 2 <= last; i += 2)
        integral += dr / 3.0 * (integrand(i) + 4.0 * integrand(i + 1) + integrand(i + 2));
    if (i + 1 <= last) integral += dr / 2.0 * (integrand(i) + integrand(i + 1));
    const double c1 = surface * integral;

    // Tail heuristic: the last slab's mass scale must be small next to c1,
    // otherwise the table does not witness integrability.
    const double rmax = dr * static_cast<double>(last);
    if (surface * phi[last] * std::pow(rmax, dim) > 0.05 * c1)
        throw DomainError("non-integrable-weight",
                          "radial profile tail too heavy for the table to certify integrability");

    double c2 = 0.0;
    for (std::size_t k = 0; k < phi.size(); k += 2) c2 = std::max(c2, phi[k / 2] / phi[k]);

    RadialEpsilonResult res;
    res.c1 = c1;
    res.c2 = c2;
    res.epsilon = 1.0 / (2.0 * c1 * c2);
    return res;
}

}  // namespace levyharm
