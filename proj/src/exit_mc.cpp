#include "levyharm/exit_mc.hpp"

#include <cmath>
#include <functional>
#include <thread>

#include "levyharm/errors.hpp"
#include "levyharm/levy_operator.hpp"
#include "levyharm/measure.hpp"

namespace levyharm {

namespace {

constexpr long kMaxStepsPerPath = 200000000L;

std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t path)
    : eng_(splitmix64(splitmix64(seed) ^
                      splitmix64(path * 0xD2B74407B1CE6E93ULL + 0x9E3779B97F4A7C15ULL))) {}

double RngStream::uniform01() {
    return (static_cast<double>(eng_() >> 11) + 1.0) * 0x1.0p-53;
}

double RngStream::normal() {
    if (has_cache_) {
        has_cache_ = false;
        return cache_;
    }
    // Marsaglia polar method, pinned: rejection on the unit disc, then a
    // single log/sqrt per accepted pair.
    double u, v, s;
    do {
        u = 2.0 * uniform01() - 1.0;
        v = 2.0 * uniform01() - 1.0;
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    cache_ = v * f;
    has_cache_ = true;
    return u * f;
}

int RngStream::poisson(double mean) {
    if (!(mean > 0.0)) return 0;
    const double threshold = std::exp(-mean);
    int k = 0;
    double p = 1.0;
    do {
        ++k;
        p *= uniform01();
    } while (p > threshold);
    return k - 1;
}

double ExitLaw::right_exit_fraction() const {
    if (samples.empty()) return 0.0;
    long n = 0;
    for (double s : samples) {
        if (s >= right) ++n;
    }
    return static_cast<double>(n) / static_cast<double>(samples.size());
}

double ExitLaw::right_exit_se() const {
    if (samples.empty()) return 0.0;
    const double p = right_exit_fraction();
    return std::sqrt(p * (1.0 - p) / static_cast<double>(samples.size()));
}

namespace {

struct SimSetup {
    double lo = 0.0;  // -interval_left
    double hi = 0.0;
    double drift = 0.0;  // ball-compensated effective drift
    double sigma = 0.0;  // sqrt(2 * diffusion)
    std::vector<std::pair<double, double>> jumps;  // (size, rate)
};

SimSetup make_setup(const LevyTriplet& t, const ExitMcParams& p) {
    t.validate();
    if (!(p.interval_left > 0.0) || !(p.interval_right > 0.0)) {
        throw DomainError("invalid-interval", "interval must be (-a, b) with a, b > 0");
    }
    if (!(p.x0 > -p.interval_left) || !(p.x0 < p.interval_right)) {
        throw DomainError("invalid-interval", "start point must lie inside the open interval");
    }
    if (!(p.dt > 0.0)) throw DomainError("invalid-step", "dt must be positive");
    if (p.paths <= 0) throw DomainError("zero-paths", "need at least one path");
    if (!(t.measure.is_empty() || t.measure.is_atomic())) {
        throw DomainError("unsupported-measure-class",
                          "simulation covers diffusion plus finite-activity "
                          "atomic jumps only");
    }
    SimSetup s;
    s.lo = -p.interval_left;
    s.hi = p.interval_right;
    s.sigma = std::sqrt(2.0 * t.diffusion);
    s.drift = t.drift;
    if (t.measure.is_atomic()) {
        const Rational one(1);
        for (const auto& a : t.measure.atomic().atoms) {
            const double y = a.location.get_d();
            const double m = a.mass.get_d();
            s.jumps.emplace_back(y, m);
            // The generator compensates jumps inside the unit ball; the raw
            // process therefore drifts by -y nu{y} relative to the b term.
            if (abs(a.location) < one) s.drift -= y * m;
        }
    }
    if (s.sigma == 0.0 && s.drift == 0.0 && s.jumps.empty()) {
        throw DomainError("degenerate-dynamics", "the process never moves");
    }
    return s;
}

void run_paths(long paths, int threads, const std::function<void(long)>& body) {
    if (threads <= 1) {
        for (long i = 0; i < paths; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    const long chunk = (paths + threads - 1) / threads;
    for (int w = 0; w < threads; ++w) {
        const long begin = w * chunk;
        const long end = std::min(paths, begin + chunk);
        if (begin >= end) break;
        pool.emplace_back([&body, begin, end] {
            for (long i = begin; i < end; ++i) body(i);
        });
    }
    for (auto& th : pool) th.join();
}

double step_increment(RngStream& rng, const SimSetup& s, double dt, double sigma_dt) {
    double dx = s.drift * dt + sigma_dt * rng.normal();
    for (const auto& [y, rate] : s.jumps) {
        const int n = rng.poisson(rate * dt);
        if (n != 0) dx += n * y;
    }
    return dx;
}

}  // namespace

ExitLaw exit_distribution_mc(const LevyTriplet& t, const ExitMcParams& p) {
    const SimSetup s = make_setup(t, p);
    ExitLaw law;
    law.left = p.interval_left;
    law.right = p.interval_right;
    law.paths = p.paths;
    law.seed = p.seed;
    law.samples.assign(static_cast<std::size_t>(p.paths), 0.0);
    const double sigma_dt = s.sigma * std::sqrt(p.dt);
    run_paths(p.paths, p.threads, [&](long i) {
        RngStream rng(p.seed, static_cast<std::uint64_t>(i));
        double x = p.x0;
        for (long step = 0;; ++step) {
            if (step > kMaxStepsPerPath) {
                throw DomainError("path-did-not-exit",
                                  "step budget exhausted before leaving the interval");
            }
            x += step_increment(rng, s, p.dt, sigma_dt);
            if (!(x > s.lo && x < s.hi)) break;
        }
        law.samples[static_cast<std::size_t>(i)] = x;
    });
    return law;
}

PairedExitLaws exit_distribution_mc_paired(const LevyTriplet& t, const ExitMcParams& p) {
    const SimSetup s = make_setup(t, p);
    PairedExitLaws out;
    for (ExitLaw* law : {&out.coarse, &out.fine}) {
        law->left = p.interval_left;
        law->right = p.interval_right;
        law->paths = p.paths;
        law->seed = p.seed;
        law->samples.assign(static_cast<std::size_t>(p.paths), 0.0);
    }
    const double half_dt = 0.5 * p.dt;
    const double sigma_half = s.sigma * std::sqrt(half_dt);
    run_paths(p.paths, p.threads, [&](long i) {
        RngStream rng(p.seed, static_cast<std::uint64_t>(i));
        double xf = p.x0, xc = p.x0;
        bool fine_done = false, coarse_done = false;
        double pending = 0.0;  // coarse-step increment under accumulation
        for (long half = 0;; ++half) {
            if (half > 2 * kMaxStepsPerPath) {
                throw DomainError("path-did-not-exit",
                                  "step budget exhausted before leaving the interval");
            }
            // One fine increment; the coarse arm consumes the same increments
            // two at a time, so its Brownian piece is sqrt(2a dt)(g1+g2)/sqrt2
            // and its jump counts are the summed half-step counts.
            const double dx = step_increment(rng, s, half_dt, sigma_half);
            if (!fine_done) {
                xf += dx;
                if (!(xf > s.lo && xf < s.hi)) fine_done = true;
            }
            pending += dx;
            if (half % 2 == 1) {
                if (!coarse_done) {
                    xc += pending;
                    if (!(xc > s.lo && xc < s.hi)) coarse_done = true;
                }
                pending = 0.0;
            }
            if (fine_done && coarse_done) break;
        }
        out.fine.samples[static_cast<std::size_t>(i)] = xf;
        out.coarse.samples[static_cast<std::size_t>(i)] = xc;
    });
    return out;
}

DynkinResult dynkin_residual(const LevyTriplet& t, const ExitMcParams& p,
                             const FunctionDesc& phi) {
    const SimSetup s = make_setup(t, p);
    // Flattened generator for the per-step occupation integrand; identical in
    // value to apply_operator, minus its per-call validation overhead.
    struct JumpTerm {
        double y, mass, compensate;
    };
    std::vector<JumpTerm> jt;
    if (t.measure.is_atomic()) {
        const Rational one(1);
        for (const auto& a : t.measure.atomic().atoms) {
            jt.push_back({a.location.get_d(), a.mass.get_d(),
                          abs(a.location) < one ? 1.0 : 0.0});
        }
    }
    const double ga = t.diffusion, gb = t.drift;
    auto l_phi = [&](double x) {
        double out = ga * phi.deriv2(x) + gb * phi.deriv1(x);
        if (!jt.empty()) {
            const double fx = phi.value(x);
            const double f1 = phi.deriv1(x);
            for (const auto& j : jt) {
                out += j.mass * (phi.value(x + j.y) - fx - j.compensate * j.y * f1);
            }
        }
        return out;
    };
    std::vector<double> values(static_cast<std::size_t>(p.paths), 0.0);
    const double sigma_dt = s.sigma * std::sqrt(p.dt);
    run_paths(p.paths, p.threads, [&](long i) {
        RngStream rng(p.seed, static_cast<std::uint64_t>(i));
        double x = p.x0;
        double occupation = 0.0;
        for (long step = 0;; ++step) {
            if (step > kMaxStepsPerPath) {
                throw DomainError("path-did-not-exit",
                                  "step budget exhausted before leaving the interval");
            }
            occupation += l_phi(x) * p.dt;
            x += step_increment(rng, s, p.dt, sigma_dt);
            if (!(x > s.lo && x < s.hi)) break;
        }
        values[static_cast<std::size_t>(i)] = phi.value(x) - occupation;
    });
    // Sequential reduction in path order keeps the result independent of the
    // thread count.
    double mean = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        mean += (values[i] - mean) / static_cast<double>(i + 1);
    }
    double var = 0.0;
    for (double v : values) var += (v - mean) * (v - mean);
    var = values.size() > 1 ? var / (static_cast<double>(values.size()) - 1.0) : 0.0;
    DynkinResult r;
    r.estimate = mean - phi.value(p.x0);
    r.standard_error = std::sqrt(var / static_cast<double>(values.size()));
    r.paths = p.paths;
    return r;
}

}  // namespace levyharm
