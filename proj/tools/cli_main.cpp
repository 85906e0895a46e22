// Command-line surface: one binary, one subcommand per operation family.
// Reports are self-contained JSON (effective parameters echoed, certificates
// per module); exit status is 0 for a passing run, 1 for a run that completed
// and certified a failure, 2 for usage errors.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "levyharm/deny.hpp"
#include "levyharm/discrete.hpp"
#include "levyharm/exit_mc.hpp"
#include "levyharm/function_desc.hpp"
#include "levyharm/grid_function.hpp"
#include "levyharm/json_io.hpp"
#include "levyharm/levy_operator.hpp"
#include "levyharm/mixture.hpp"
#include "levyharm/neumann.hpp"
#include "levyharm/piecewise.hpp"
#include "levyharm/spectrum.hpp"
#include "levyharm/symbol.hpp"
#include "levyharm/version.hpp"
#include "levyharm/weights.hpp"

namespace {

using namespace levyharm;
using Clock = std::chrono::steady_clock;

// Usage-shaped failures (malformed requests, files, parameters) exit 2;
// everything else a DomainError reports is a certified mathematical refusal
// and exits 1 through the report.
bool is_usage_code(const std::string& code) {
    return code.rfind("invalid-", 0) == 0 || code == "corrupt-file" ||
           code == "version-mismatch" || code == "grid-mismatch" ||
           code == "window-not-one-on-k" || code == "zero-paths" || code == "unknown-format";
}

std::string iso_utc_now() {
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::filesystem::path resolve_out(const std::string& path) {
    std::filesystem::path p(path);
    if (p.is_relative()) {
        if (const char* dir = std::getenv("LEVYHARM_OUT_DIR"); dir && *dir)
            return std::filesystem::path(dir) / p;
    }
    return p;
}

struct Report {
    Json j;
    bool pass = true;
    std::string out_path;
    bool no_timestamp = false;
    Clock::time_point start = Clock::now();

    explicit Report(const std::string& command) {
        j["command"] = command;
        j["version"] = kVersion;
        j["rng"] = kRngId;
        j["parameters"] = Json::object();
        j["pass"] = true;
        j["certificates"] = Json::object();
    }

    Json& params() { return j["parameters"]; }
    Json& certs() { return j["certificates"]; }

    void fail(const std::string& reason) {
        pass = false;
        j["failure_reason"] = reason;
    }

    int emit() {
        j["pass"] = pass;
        if (!no_timestamp) {
            j["duration_seconds"] = std::chrono::duration<double>(Clock::now() - start).count();
            j["timestamp"] = iso_utc_now();
        }
        if (out_path.empty()) {
            std::cout << j.dump(2) << '\n';
        } else {
            save_json(resolve_out(out_path), j);
        }
        return pass ? 0 : 1;
    }
};

std::vector<std::string> split_csv(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

std::vector<double> split_doubles(const std::string& s) {
    std::vector<double> out;
    for (const auto& tok : split_csv(s)) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(tok, &used));
            if (used != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            throw DomainError("invalid-arguments", "unparseable number '" + tok + "'");
        }
    }
    return out;
}

std::vector<Rational> split_rationals(const std::string& s) {
    std::vector<Rational> out;
    for (const auto& tok : split_csv(s)) out.push_back(rational_from_string(tok));
    return out;
}

LevyTriplet load_triplet(const std::string& path) { return triplet_from_json(load_json(path)); }

FunctionDesc load_function(const std::string& path) {
    const Json j = load_json(path);
    try {
        const std::string type = j.at("type").get<std::string>();
        if (type == "polynomial") return fd_polynomial(j.at("coeffs").get<std::vector<double>>());
        if (type == "gaussian") return fd_gaussian(j.value("center", 0.0), j.value("sigma", 1.0));
        if (type == "bump")
            return fd_poly_bump(j.value("center", 0.0), j.at("halfwidth").get<double>(),
                                j.at("power").get<int>());
        if (type == "exponential") return fd_exponential(j.at("lambda").get<double>());
        if (type == "exponential-mixture")
            return fd_exponential_mixture(
                j.at("terms").get<std::vector<std::pair<double, double>>>());
        throw DomainError("corrupt-file", "unknown function type '" + type + "'");
    } catch (const Json::exception& e) {
        throw DomainError("corrupt-file", std::string("malformed function descriptor: ") + e.what());
    }
}

// Common per-subcommand plumbing: --out / --no-timestamp and the take-last
// policy that lets command-line flags override injected config tokens.
struct CommonOpts {
    std::string out;
    bool no_timestamp = false;
};

template <typename T>
CLI::Option* opt(CLI::App* sc, const std::string& name, T& var, const std::string& desc) {
    return sc->add_option(name, var, desc)->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
}

void add_common(CLI::App* sc, CommonOpts& c) {
    opt(sc, "--out", c.out, "write the JSON report here instead of stdout");
    sc->add_flag("--no-timestamp", c.no_timestamp,
                 "omit timestamp and duration (byte-stable reports)");
}

Report make_report(const CLI::App* sc, const CommonOpts& c) {
    Report rep(sc->get_name());
    rep.out_path = c.out;
    rep.no_timestamp = c.no_timestamp;
    return rep;
}

// ---------------------------------------------------------------- symbol --
int run_symbol(const CLI::App* sc, const CommonOpts& common, const std::string& triplet_path,
               const std::string& xi_csv, const std::string& pi_csv) {
    Report rep = make_report(sc, common);
    rep.params() = {{"triplet", triplet_path}, {"xi", xi_csv}, {"pi-multiples", pi_csv}};
    if (xi_csv.empty() && pi_csv.empty())
        throw DomainError("invalid-arguments", "need --xi and/or --pi-multiples");
    const LevyTriplet t = load_triplet(triplet_path);
    Json values = Json::array();
    for (double xi : split_doubles(xi_csv)) {
        SymbolInfo info;
        const SymbolValue v = symbol_eval(t, xi, &info);
        values.push_back({{"xi", xi},
                          {"re", v.re},
                          {"im", v.im},
                          {"truncation_bound", info.truncation_bound}});
    }
    for (const Rational& c : split_rationals(pi_csv)) {
        SymbolInfo info;
        const SymbolValue v = symbol_eval_pi_multiple(t, c, &info);
        values.push_back({{"pi_multiple", rational_to_string(c)},
                          {"re", v.re},
                          {"im", v.im},
                          {"truncation_bound", info.truncation_bound}});
    }
    rep.certs()["values"] = std::move(values);
    return rep.emit();
}

// ----------------------------------------------------------------- apply --
int run_apply(const CLI::App* sc, const CommonOpts& common, const std::string& triplet_path,
              const std::string& function_path, const std::string& at_csv) {
    Report rep = make_report(sc, common);
    rep.params() = {{"triplet", triplet_path}, {"function", function_path}, {"at", at_csv}};
    const LevyTriplet t = load_triplet(triplet_path);
    const FunctionDesc f = load_function(function_path);
    Json values = Json::array();
    for (double x : split_doubles(at_csv)) {
        ApplyInfo info;
        const double v = apply_operator(t, f, x, &info);
        values.push_back({{"x", x},
                          {"value", v},
                          {"truncation_bound", info.truncation_bound},
                          {"quad_achieved_tol", info.quad_achieved_tol}});
    }
    rep.certs()["values"] = std::move(values);
    return rep.emit();
}

// -------------------------------------------------- counterexample-discrete --
int run_ce_discrete(const CLI::App* sc, const CommonOpts& common, int level, int window,
                    double epsilon, const std::string& save_path) {
    Report rep = make_report(sc, common);
    if (window < 0) window = level;
    rep.params() = {{"level", level},
                    {"verify-window", window},
                    {"epsilon", epsilon},
                    {"save", save_path}};
    const SparseSequence h = build_discrete(level);
    const auto cert = verify_harmonic_window(level, window);
    const auto growth = growth_report(h, epsilon);
    rep.certs()["atoms"] = h.atoms.size();
    rep.certs()["window"] = {{"all_zero", cert.all_zero},
                             {"checked", cert.values.size()}};
    auto family = [](const GrowthFamily& f) {
        return Json{{"max_log_ratio", f.max_log_ratio},
                    {"argmax", f.argmax},
                    {"trend_index", f.trend_index},
                    {"entries", f.entries.size()}};
    };
    rep.certs()["growth"] = {{"epsilon", epsilon},
                             {"atom_ratio", family(growth.atom_ratio)},
                             {"level_ratio", family(growth.level_ratio)},
                             {"weighted_sum", family(growth.weighted_sum)}};
    if (!save_path.empty()) {
        save_json(resolve_out(save_path), sparse_to_json(h));
        rep.certs()["saved"] = save_path;
    }
    if (!cert.all_zero) rep.fail("harmonicity-window-violated");
    return rep.emit();
}

// ------------------------------------------------ counterexample-continuous --
int run_ce_continuous(const CLI::App* sc, const CommonOpts& common, int level, int q,
                      bool grid_check, const std::string& points_csv,
                      const std::string& save_path) {
    Report rep = make_report(sc, common);
    if (q <= 0) q = 2 * level + 6;
    rep.params() = {{"level", level},
                    {"q", q},
                    {"grid-check", grid_check},
                    {"points", points_csv},
                    {"save", save_path}};
    const PiecewiseBundle b = build_continuous(level, q);

    long checked = 0, nonzero = 0;
    auto probe = [&](const Rational& x) {
        ++checked;
        if (apply_L_continuous(b, x) != 0) ++nonzero;
    };
    if (grid_check)
        for (int j = -(4 * level + 2); j <= 4 * level + 2; ++j) probe(make_rational(j, 4));
    for (const Rational& x : split_rationals(points_csv)) probe(x);
    rep.certs()["zeros"] = {{"checked", checked}, {"nonzero", nonzero}};

    Json bounds = Json::array();
    bool bounds_ok = true;
    for (const auto& nb : piece_norm_bounds(b)) {
        bounds.push_back({{"m", nb.m},
                          {"upper", nb.upper.get_d()},
                          {"sampled_lower", nb.sampled_lower},
                          {"applies", nb.constraint_applies},
                          {"satisfied", nb.satisfied}});
        if (nb.constraint_applies && !nb.satisfied) bounds_ok = false;
    }
    rep.certs()["norm_bounds"] = std::move(bounds);

    if (!save_path.empty()) {
        save_json(resolve_out(save_path), bundle_to_json(b));
        rep.certs()["saved"] = save_path;
    }
    if (nonzero > 0) rep.fail("harmonicity-window-violated");
    if (!bounds_ok) rep.fail("log-x-bound-violated");
    return rep.emit();
}

// ---------------------------------------------------------------- lambda --
int run_lambda(const CLI::App* sc, const CommonOpts& common, const std::string& triplet_path,
               const std::vector<double>& bracket, double tol) {
    Report rep = make_report(sc, common);
    rep.params() = {{"triplet", triplet_path}, {"bracket", bracket}, {"tol", tol}};
    const LevyTriplet t = load_triplet(triplet_path);
    const auto roots = lambda_set(t, bracket[0], bracket[1], tol);
    rep.certs()["roots"] = roots;
    return rep.emit();
}

// --------------------------------------------------------------- mixture --
int run_mixture(const CLI::App* sc, const CommonOpts& common, const std::string& triplet_path,
                const std::string& terms_csv, double lo, double hi, int points, double tol) {
    Report rep = make_report(sc, common);
    rep.params() = {{"triplet", triplet_path}, {"terms", terms_csv}, {"range", {lo, hi}},
                    {"points", points}, {"tol", tol}};
    if (points < 2 || !(lo < hi))
        throw DomainError("invalid-arguments", "need points >= 2 and lo < hi");
    ExponentialMixture m;
    for (const auto& tok : split_csv(terms_csv)) {
        const auto colon = tok.find(':');
        if (colon == std::string::npos)
            throw DomainError("invalid-arguments", "terms must be lambda:weight, got '" + tok + "'");
        m.terms.emplace_back(split_doubles(tok.substr(0, colon))[0],
                             split_doubles(tok.substr(colon + 1))[0]);
    }
    const LevyTriplet t = load_triplet(triplet_path);
    std::vector<double> xs(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i)
        xs[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (points - 1);
    const auto res = verify_mixture(m, t, xs);
    rep.certs() = {{"max_numeric", res.max_numeric}, {"max_analytic", res.max_analytic}};
    if (res.max_numeric > tol) rep.fail("mixture-residual-above-tol");
    return rep.emit();
}

// ---------------------------------------------------------------- exit-mc --
struct McOpts {
    std::string triplet;
    std::vector<double> interval{-1.0, 1.0};
    double x0 = 0.0;
    long paths = 10000;
    double dt = 1e-4;
    std::uint64_t seed = 1;
    int threads = 1;
};

ExitMcParams to_params(const McOpts& o) {
    ExitMcParams p;
    if (o.interval.size() != 2 || !(o.interval[0] < o.interval[1]))
        throw DomainError("invalid-interval", "interval must be lo hi with lo < hi");
    p.interval_left = -o.interval[0];
    p.interval_right = o.interval[1];
    p.x0 = o.x0;
    p.paths = o.paths;
    p.dt = o.dt;
    p.seed = o.seed;
    p.threads = o.threads;
    return p;
}

Json mc_params_json(const McOpts& o) {
    return {{"triplet", o.triplet}, {"interval", o.interval}, {"x0", o.x0},
            {"paths", o.paths},     {"dt", o.dt},             {"seed", o.seed},
            {"threads", o.threads}};
}

int run_exit_mc(const CLI::App* sc, const CommonOpts& common, const McOpts& o, bool paired,
                double expect_right, double sigmas) {
    Report rep = make_report(sc, common);
    rep.params() = mc_params_json(o);
    rep.params()["paired"] = paired;
    if (expect_right >= 0.0) rep.params()["expect-right"] = expect_right;
    rep.params()["sigmas"] = sigmas;
    const LevyTriplet t = load_triplet(o.triplet);
    const ExitMcParams p = to_params(o);

    double frac = 0.0, se = 0.0;
    if (paired) {
        const auto laws = exit_distribution_mc_paired(t, p);
        frac = laws.fine.right_exit_fraction();
        se = laws.fine.right_exit_se();
        const double diff = std::fabs(laws.coarse.right_exit_fraction() - frac);
        rep.certs()["coarse_fraction"] = laws.coarse.right_exit_fraction();
        rep.certs()["fine_fraction"] = frac;
        rep.certs()["halving_shift_over_se"] = se > 0.0 ? diff / se : 0.0;
        if (diff > se) rep.fail("dt-halving-shift-above-1-se");
    } else {
        const auto law = exit_distribution_mc(t, p);
        frac = law.right_exit_fraction();
        se = law.right_exit_se();
    }
    rep.certs()["right_exit_fraction"] = frac;
    rep.certs()["standard_error"] = se;
    if (expect_right >= 0.0 && std::fabs(frac - expect_right) > sigmas * se)
        rep.fail("exit-frequency-outside-sigma-band");
    return rep.emit();
}

int run_dynkin(const CLI::App* sc, const CommonOpts& common, const McOpts& o,
               const std::string& phi_path, double sigmas) {
    Report rep = make_report(sc, common);
    rep.params() = mc_params_json(o);
    rep.params()["phi"] = phi_path;
    rep.params()["sigmas"] = sigmas;
    const LevyTriplet t = load_triplet(o.triplet);
    const FunctionDesc phi = load_function(phi_path);
    const auto res = dynkin_residual(t, to_params(o), phi);
    rep.certs() = {{"estimate", res.estimate},
                   {"standard_error", res.standard_error},
                   {"abs_over_se", res.standard_error > 0.0
                                       ? std::fabs(res.estimate) / res.standard_error
                                       : 0.0}};
    if (std::fabs(res.estimate) > sigmas * res.standard_error)
        rep.fail("dynkin-residual-outside-sigma-band");
    return rep.emit();
}

// ------------------------------------------------------------------ deny --
int run_deny(const CLI::App* sc, const CommonOpts& common, const std::string& seq_path,
             int window, const std::string& mu_path) {
    Report rep = make_report(sc, common);
    rep.params() = {{"sequence", seq_path}, {"window", window}, {"mu", mu_path}};
    const SparseSequence h = sparse_from_json(load_json(seq_path));
    if (window < 0) window = h.level >= 0 ? h.level : 0;
    IntegerMeasure mu;
    if (mu_path.empty()) {
        mu = IntegerMeasure::sparse_standard(h.level + 1);
    } else {
        const Json j = load_json(mu_path);
        try {
            const std::string type = j.at("type").get<std::string>();
            if (type == "sparse-standard") {
                mu = IntegerMeasure::sparse_standard(j.at("listed").get<int>());
            } else if (type == "atoms") {
                std::map<BigInt, Rational> masses;
                for (const auto& entry : j.at("atoms"))
                    masses[BigInt(entry[0].get<std::string>())] =
                        rational_from_string(entry[1].get<std::string>());
                mu = IntegerMeasure::from_atoms(std::move(masses));
            } else {
                throw DomainError("corrupt-file", "unknown measure type '" + type + "'");
            }
        } catch (const Json::exception& e) {
            throw DomainError("corrupt-file", std::string("malformed measure: ") + e.what());
        }
    }
    const auto res = deny_check(h, mu, window);
    rep.certs()["checked"] = res.residuals.size();
    rep.certs()["all_zero"] = res.all_zero;
    if (!res.all_zero) rep.fail("convolution-identity-violated");
    return rep.emit();
}

// ----------------------------------------------------------- weight-check --
int run_weight_check(const CLI::App* sc, const CommonOpts& common, const std::string& family,
                     double alpha, double beta, long pairs, std::uint64_t seed, double range,
                     bool direct_jump, const std::string& weight_csv, const std::string& radii_csv,
                     double tol, double tail_tol) {
    Report rep = make_report(sc, common);
    if (direct_jump) {
        rep.params() = {{"direct-jump", true}, {"weight-csv", weight_csv},
                        {"radii", radii_csv},  {"tol", tol},
                        {"tail-tol", tail_tol}};
        const GridFunction Y = load_csv(weight_csv);
        const auto r = check_direct_jump(Y, split_doubles(radii_csv), tol, tail_tol);
        Json ratios = Json::array();
        for (const auto& [rad, sup] : r.tail_ratios)
            ratios.push_back({{"r", rad}, {"sup_ratio", sup}});
        rep.certs() = {{"max_violation", r.max_violation},
                       {"tail_ratios", std::move(ratios)},
                       {"passes", r.passes}};
        if (!r.passes) rep.fail("direct-jump-violated");
        return rep.emit();
    }
    rep.params() = {{"family", family}, {"alpha", alpha}, {"beta", beta},
                    {"pairs", pairs},   {"seed", seed},   {"range", range}};
    WeightSpec Y;
    if (family == "power")
        Y = WeightSpec::power(alpha);
    else if (family == "log-power")
        Y = WeightSpec::log_power(beta);
    else
        throw DomainError("invalid-weight", "family must be power or log-power");
    const double viol = check_submultiplicative(
        Y, weight_sample_pairs(static_cast<std::size_t>(pairs), range, seed));
    rep.certs()["max_violation"] = viol;
    if (viol > 0.0) rep.fail("submultiplicativity-violated");
    return rep.emit();
}

// ------------------------------------------------------------- radial-eps --
int run_radial_eps(const CLI::App* sc, const CommonOpts& common, const std::string& profile_csv,
                   int dim) {
    Report rep = make_report(sc, common);
    rep.params() = {{"profile-csv", profile_csv}, {"dim", dim}};
    const GridFunction prof = load_csv(profile_csv);
    if (prof.origin != 0.0)
        throw DomainError("invalid-weight", "radial profile must start at r = 0");
    const auto res = radial_epsilon(prof.samples, prof.dx, dim);
    rep.certs() = {{"epsilon", res.epsilon}, {"c1", res.c1}, {"c2", res.c2}};
    return rep.emit();
}

// ----------------------------------------------------------------- invert --
const char* status_code(InversionStatus s) {
    switch (s) {
        case InversionStatus::ok: return "ok";
        case InversionStatus::symbol_vanishes_on_k: return "symbol-vanishes-on-k";
        case InversionStatus::epsilon_unachievable: return "epsilon-unachievable";
    }
    return "ok";
}

int run_invert(const CLI::App* sc, const CommonOpts& common, const std::string& input_csv,
               const std::vector<double>& k, int terms, double margin, double radius,
               const std::string& weight_radial_csv, double weight_scale,
               const std::string& save_reconstruction) {
    Report rep = make_report(sc, common);
    rep.params() = {{"input-csv", input_csv},
                    {"k", k},
                    {"terms", terms},
                    {"margin", margin},
                    {"radius", radius},
                    {"weight-radial-csv", weight_radial_csv},
                    {"weight-scale", weight_scale},
                    {"save-reconstruction", save_reconstruction}};
    const GridFunction f = load_csv(input_csv);
    InversionParams p;
    p.k_lo = k[0];
    p.k_hi = k[1];
    p.terms = terms;
    p.margin = margin;
    p.radius = radius;

    InversionResult res;
    Json weighted;
    if (weight_radial_csv.empty()) {
        res = neumann_invert(f, p);
    } else {
        const GridFunction prof = load_csv(weight_radial_csv);
        if (prof.origin != 0.0)
            throw DomainError("invalid-weight", "radial profile must start at r = 0");
        const auto wrep =
            neumann_invert_weighted(f, WeightSpec::radial(prof.samples, prof.dx, weight_scale), p);
        res = wrep.base;
        weighted = {{"lambda", wrep.lambda},
                    {"epsilon_target", wrep.epsilon_target},
                    {"radius_satisfiable", wrep.radius_satisfiable},
                    {"funct_r_sup", wrep.funct_r_sup},
                    {"funct_r_target", wrep.funct_r_target},
                    {"conv_l1_ratio", wrep.conv_l1_ratio},
                    {"pointwise_ratio", wrep.pointwise_ratio}};
        if (res.status == InversionStatus::ok) {
            if (!wrep.radius_satisfiable) rep.fail("weighted-radius-unsatisfiable");
            for (double v : wrep.conv_l1_ratio)
                if (v > 1.0 + 1e-9) rep.fail("norm-chain-violated");
            for (double v : wrep.pointwise_ratio)
                if (v > 1.0 + 1e-9) rep.fail("pointwise-domination-violated");
        }
    }

    rep.certs() = {{"K", {p.k_lo, p.k_hi}},
                   {"epsilon", res.epsilon},
                   {"r", res.r},
                   {"N", res.terms},
                   {"analytic_bound", res.analytic_bound},
                   {"grid_bound", res.grid_bound},
                   {"residual", res.residual},
                   {"status", status_code(res.status)},
                   {"oracle_gap", res.oracle_gap},
                   {"rho_max", res.rho_max},
                   {"margin", res.margin},
                   {"min_abs_phi_on_k", res.min_abs_phi_k}};
    if (!weighted.is_null()) rep.certs()["weighted"] = std::move(weighted);

    if (res.status != InversionStatus::ok) {
        rep.fail(status_code(res.status));
    } else {
        if (res.residual > res.analytic_bound + res.grid_bound)
            rep.fail("residual-above-certified-bound");
        if (!save_reconstruction.empty()) {
            save_csv(resolve_out(save_reconstruction), res.f_tilde);
            rep.certs()["saved_reconstruction"] = save_reconstruction;
        }
    }
    return rep.emit();
}

// --------------------------------------------------------------- spectrum --
int run_spectrum(const CLI::App* sc, const CommonOpts& common, const std::string& input_csv,
                 const std::string& sparse_json, double lo, double hi, double dx,
                 double halfwidth, const std::string& taper_name, double delta,
                 const std::string& mode, double threshold) {
    Report rep = make_report(sc, common);
    rep.params() = {{"input-csv", input_csv}, {"sparse-json", sparse_json},
                    {"lo", lo},               {"hi", hi},
                    {"dx", dx},               {"halfwidth", halfwidth},
                    {"taper", taper_name},    {"delta", delta},
                    {"mode", mode},           {"threshold", threshold}};
    TaperKind taper;
    if (taper_name == "hann")
        taper = TaperKind::hann;
    else if (taper_name == "blackman")
        taper = TaperKind::blackman;
    else
        throw DomainError("invalid-arguments", "taper must be hann or blackman");

    GridFunction h;
    if (!input_csv.empty()) {
        h = load_csv(input_csv);
    } else if (!sparse_json.empty()) {
        const SparseSequence seq = sparse_from_json(load_json(sparse_json));
        std::vector<std::pair<double, double>> atoms;
        for (const auto& [n, v] : seq.atoms) atoms.emplace_back(n.get_d(), v.get_d());
        h = render_atoms(atoms, lo, hi, dx, halfwidth);
    } else {
        throw DomainError("invalid-arguments", "need --input-csv or --sparse-json");
    }
    const auto m = spectrum_mass(h, taper, delta);
    rep.certs() = {{"inside", m.inside},
                   {"outside", m.outside},
                   {"outside_fraction", m.outside_fraction()}};
    if (mode == "expect-hole") {
        if (m.outside_fraction() > threshold) rep.fail("outside-mass-above-leakage");
    } else if (mode == "expect-content") {
        if (!(m.outside_fraction() > threshold)) rep.fail("outside-mass-not-above-leakage");
    } else if (mode != "report") {
        throw DomainError("invalid-arguments", "mode must be report, expect-hole or expect-content");
    }
    return rep.emit();
}

// ---------------------------------------------------------------- driver --
std::vector<std::string> inject_config(std::vector<std::string> tokens) {
    std::string config_path;
    for (std::size_t i = 0; i + 1 < tokens.size(); ++i) {
        if (tokens[i] == "--config") {
            config_path = tokens[i + 1];
            tokens.erase(tokens.begin() + static_cast<std::ptrdiff_t>(i),
                         tokens.begin() + static_cast<std::ptrdiff_t>(i) + 2);
            break;
        }
    }
    if (config_path.empty()) return tokens;

    const Json cfg = load_json(config_path);
    if (!cfg.is_object()) throw DomainError("corrupt-file", "config must be a JSON object");
    std::vector<std::string> cfg_tokens;
    for (const auto& [key, value] : cfg.items()) {
        if (value.is_boolean()) {
            if (value.get<bool>()) cfg_tokens.push_back("--" + key);
        } else if (value.is_array()) {
            cfg_tokens.push_back("--" + key);
            for (const auto& v : value)
                cfg_tokens.push_back(v.is_string() ? v.get<std::string>() : v.dump());
        } else {
            cfg_tokens.push_back("--" + key);
            cfg_tokens.push_back(value.is_string() ? value.get<std::string>() : value.dump());
        }
    }
    // Insert after the subcommand name so explicit flags, parsed later under
    // a take-last policy, override config values.
    auto pos = std::find_if(tokens.begin(), tokens.end(),
                            [](const std::string& t) { return t.empty() || t[0] != '-'; });
    if (pos == tokens.end())
        throw DomainError("invalid-arguments", "--config requires a subcommand");
    ++pos;
    tokens.insert(pos, cfg_tokens.begin(), cfg_tokens.end());
    return tokens;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Levy operator toolkit: exact counterexamples, harmonic exponentials, "
                 "exit-law Monte Carlo, weighted Wiener inversion, windowed spectra"};
    app.require_subcommand(1);
    std::map<const CLI::App*, std::function<int()>> runners;

    {
        auto* sc = app.add_subcommand("symbol", "evaluate the characteristic exponent");
        auto common = std::make_shared<CommonOpts>();
        auto triplet = std::make_shared<std::string>();
        auto xi = std::make_shared<std::string>();
        auto pi = std::make_shared<std::string>();
        opt(sc, "--triplet", *triplet, "triplet JSON file")->required();
        opt(sc, "--xi", *xi, "comma-separated frequencies");
        opt(sc, "--pi-multiples", *pi, "comma-separated rational multiples of pi");
        add_common(sc, *common);
        runners[sc] = [=] { return run_symbol(sc, *common, *triplet, *xi, *pi); };
    }
    {
        auto* sc = app.add_subcommand("apply", "apply the generator to a test function");
        auto common = std::make_shared<CommonOpts>();
        auto triplet = std::make_shared<std::string>();
        auto function = std::make_shared<std::string>();
        auto at = std::make_shared<std::string>();
        opt(sc, "--triplet", *triplet, "triplet JSON file")->required();
        opt(sc, "--function", *function, "function descriptor JSON file")->required();
        opt(sc, "--at", *at, "comma-separated evaluation points")->required();
        add_common(sc, *common);
        runners[sc] = [=] { return run_apply(sc, *common, *triplet, *function, *at); };
    }
    {
        auto* sc = app.add_subcommand("counterexample-discrete",
                                      "build the integer-lattice harmonic counterexample");
        auto common = std::make_shared<CommonOpts>();
        auto level = std::make_shared<int>(4);
        auto window = std::make_shared<int>(-1);
        auto epsilon = std::make_shared<double>(0.5);
        auto save = std::make_shared<std::string>();
        opt(sc, "--level", *level, "construction level M")->required();
        opt(sc, "--verify-window", *window, "check L0 h = 0 on |n| <= window (default: level)");
        opt(sc, "--epsilon", *epsilon, "growth comparison exponent");
        opt(sc, "--save", *save, "write the sequence JSON here");
        add_common(sc, *common);
        runners[sc] = [=] { return run_ce_discrete(sc, *common, *level, *window, *epsilon, *save); };
    }
    {
        auto* sc = app.add_subcommand("counterexample-continuous",
                                      "build the piecewise-polynomial harmonic counterexample");
        auto common = std::make_shared<CommonOpts>();
        auto level = std::make_shared<int>(2);
        auto q = std::make_shared<int>(0);
        auto grid = std::make_shared<bool>(true);
        auto points = std::make_shared<std::string>();
        auto save = std::make_shared<std::string>();
        opt(sc, "--level", *level, "construction level M")->required();
        opt(sc, "--q", *q, "seed bump degree (default 2*level + 6)");
        sc->add_flag("--grid-check,!--no-grid-check", *grid, "probe the quarter-integer grid");
        opt(sc, "--points", *points, "extra rational probe points p/q, comma separated");
        opt(sc, "--save", *save, "write the bundle JSON here");
        add_common(sc, *common);
        runners[sc] = [=] {
            return run_ce_continuous(sc, *common, *level, *q, *grid, *points, *save);
        };
    }
    {
        auto* sc = app.add_subcommand("lambda", "harmonic exponents: roots of the Laplace exponent");
        auto common = std::make_shared<CommonOpts>();
        auto triplet = std::make_shared<std::string>();
        auto bracket = std::make_shared<std::vector<double>>(std::vector<double>{-5.0, 5.0});
        auto tol = std::make_shared<double>(1e-10);
        opt(sc, "--triplet", *triplet, "triplet JSON file")->required();
        opt(sc, "--bracket", *bracket, "search bracket lo hi")->expected(2);
        opt(sc, "--tol", *tol, "root location tolerance");
        add_common(sc, *common);
        runners[sc] = [=] { return run_lambda(sc, *common, *triplet, *bracket, *tol); };
    }
    {
        auto* sc = app.add_subcommand("mixture", "verify an exponential mixture is annihilated");
        auto common = std::make_shared<CommonOpts>();
        auto triplet = std::make_shared<std::string>();
        auto terms = std::make_shared<std::string>();
        auto lo = std::make_shared<double>(-5.0);
        auto hi = std::make_shared<double>(5.0);
        auto points = std::make_shared<int>(21);
        auto tol = std::make_shared<double>(1e-9);
        opt(sc, "--triplet", *triplet, "triplet JSON file")->required();
        opt(sc, "--terms", *terms, "mixture terms lambda:weight, comma separated")->required();
        opt(sc, "--lo", *lo, "evaluation range start");
        opt(sc, "--hi", *hi, "evaluation range end");
        opt(sc, "--points", *points, "number of evaluation points");
        opt(sc, "--tol", *tol, "residual tolerance");
        add_common(sc, *common);
        runners[sc] = [=] {
            return run_mixture(sc, *common, *triplet, *terms, *lo, *hi, *points, *tol);
        };
    }
    {
        auto* sc = app.add_subcommand("exit-mc", "Monte Carlo first-exit law");
        auto common = std::make_shared<CommonOpts>();
        auto o = std::make_shared<McOpts>();
        auto paired = std::make_shared<bool>(false);
        auto expect = std::make_shared<double>(-1.0);
        auto sigmas = std::make_shared<double>(3.0);
        opt(sc, "--triplet", o->triplet, "triplet JSON file")->required();
        opt(sc, "--interval", o->interval, "open interval lo hi")->expected(2);
        opt(sc, "--x0", o->x0, "start point");
        opt(sc, "--paths", o->paths, "number of paths");
        opt(sc, "--dt", o->dt, "time step");
        opt(sc, "--seed", o->seed, "RNG seed");
        opt(sc, "--threads", o->threads, "worker threads (never changes results)");
        sc->add_flag("--paired", *paired, "also run the dt/2 arm on common random numbers");
        opt(sc, "--expect-right", *expect, "assert right-exit frequency near this value");
        opt(sc, "--sigmas", *sigmas, "width of the assertion band");
        add_common(sc, *common);
        runners[sc] = [=] { return run_exit_mc(sc, *common, *o, *paired, *expect, *sigmas); };
    }
    {
        auto* sc = app.add_subcommand("dynkin", "Monte Carlo occupation-identity residual");
        auto common = std::make_shared<CommonOpts>();
        auto o = std::make_shared<McOpts>();
        auto phi = std::make_shared<std::string>();
        auto sigmas = std::make_shared<double>(3.0);
        opt(sc, "--triplet", o->triplet, "triplet JSON file")->required();
        opt(sc, "--interval", o->interval, "open interval lo hi")->expected(2);
        opt(sc, "--x0", o->x0, "start point");
        opt(sc, "--paths", o->paths, "number of paths");
        opt(sc, "--dt", o->dt, "time step");
        opt(sc, "--seed", o->seed, "RNG seed");
        opt(sc, "--threads", o->threads, "worker threads (never changes results)");
        opt(sc, "--phi", *phi, "test function descriptor JSON")->required();
        opt(sc, "--sigmas", *sigmas, "width of the assertion band");
        add_common(sc, *common);
        runners[sc] = [=] { return run_dynkin(sc, *common, *o, *phi, *sigmas); };
    }
    {
        auto* sc = app.add_subcommand("deny", "exact convolution-identity check h * mu = h");
        auto common = std::make_shared<CommonOpts>();
        auto seq = std::make_shared<std::string>();
        auto window = std::make_shared<int>(-1);
        auto mu = std::make_shared<std::string>();
        opt(sc, "--sequence", *seq, "sparse sequence JSON file")->required();
        opt(sc, "--window", *window, "check |n| <= window (default: sequence level)");
        opt(sc, "--mu", *mu, "measure JSON file (default: standard sparse family)");
        add_common(sc, *common);
        runners[sc] = [=] { return run_deny(sc, *common, *seq, *window, *mu); };
    }
    {
        auto* sc = app.add_subcommand("weight-check", "weight-family hypothesis checks");
        auto common = std::make_shared<CommonOpts>();
        auto family = std::make_shared<std::string>("power");
        auto alpha = std::make_shared<double>(1.0);
        auto beta = std::make_shared<double>(1.0);
        auto pairs = std::make_shared<long>(10000);
        auto seed = std::make_shared<std::uint64_t>(1);
        auto range = std::make_shared<double>(50.0);
        auto direct = std::make_shared<bool>(false);
        auto weight_csv = std::make_shared<std::string>();
        auto radii = std::make_shared<std::string>("5,10,20,30");
        auto tol = std::make_shared<double>(1e-9);
        auto tail_tol = std::make_shared<double>(0.05);
        opt(sc, "--family", *family, "power or log-power");
        opt(sc, "--alpha", *alpha, "power exponent");
        opt(sc, "--beta", *beta, "log-power exponent");
        opt(sc, "--pairs", *pairs, "number of random pairs");
        opt(sc, "--seed", *seed, "pair sampler seed");
        opt(sc, "--range", *range, "pair coordinate range");
        sc->add_flag("--direct-jump", *direct, "check Y*Y <= Y on a gridded weight instead");
        opt(sc, "--weight-csv", *weight_csv, "gridded weight CSV (direct-jump mode)");
        opt(sc, "--radii", *radii, "tail radii, comma separated (direct-jump mode)");
        opt(sc, "--tol", *tol, "pointwise violation tolerance");
        opt(sc, "--tail-tol", *tail_tol, "final tail-ratio tolerance");
        add_common(sc, *common);
        runners[sc] = [=] {
            return run_weight_check(sc, *common, *family, *alpha, *beta, *pairs, *seed, *range,
                                    *direct, *weight_csv, *radii, *tol, *tail_tol);
        };
    }
    {
        auto* sc = app.add_subcommand("radial-eps", "admissible scaling for a radial profile");
        auto common = std::make_shared<CommonOpts>();
        auto profile = std::make_shared<std::string>();
        auto dim = std::make_shared<int>(1);
        opt(sc, "--profile-csv", *profile, "radial profile CSV (origin 0)")->required();
        opt(sc, "--dim", *dim, "ambient dimension");
        add_common(sc, *common);
        runners[sc] = [=] { return run_radial_eps(sc, *common, *profile, *dim); };
    }
    {
        auto* sc = app.add_subcommand("invert", "windowed Neumann-series reciprocal of a transform");
        auto common = std::make_shared<CommonOpts>();
        auto input = std::make_shared<std::string>();
        auto k = std::make_shared<std::vector<double>>(std::vector<double>{-1.0, 1.0});
        auto terms = std::make_shared<int>(30);
        auto margin = std::make_shared<double>(0.5);
        auto radius = std::make_shared<double>(0.0);
        auto weight_csv = std::make_shared<std::string>();
        auto weight_scale = std::make_shared<double>(1.0);
        auto save = std::make_shared<std::string>();
        opt(sc, "--input-csv", *input, "grid function CSV")->required();
        opt(sc, "--k", *k, "target band lo hi")->expected(2);
        opt(sc, "--terms", *terms, "series terms N");
        opt(sc, "--margin", *margin, "window margin beyond K");
        opt(sc, "--radius", *radius, "truncation radius (0 = auto)");
        opt(sc, "--weight-radial-csv", *weight_csv, "radial weight profile for the weighted checks");
        opt(sc, "--weight-scale", *weight_scale, "scale applied to the radial profile");
        opt(sc, "--save-reconstruction", *save, "write the reconstructed function CSV here");
        add_common(sc, *common);
        runners[sc] = [=] {
            return run_invert(sc, *common, *input, *k, *terms, *margin, *radius, *weight_csv,
                              *weight_scale, *save);
        };
    }
    {
        auto* sc = app.add_subcommand("spectrum", "tapered windowed-spectrum mass split");
        auto common = std::make_shared<CommonOpts>();
        auto input = std::make_shared<std::string>();
        auto sparse = std::make_shared<std::string>();
        auto lo = std::make_shared<double>(-300.0);
        auto hi = std::make_shared<double>(300.0);
        auto dx = std::make_shared<double>(0.05);
        auto halfwidth = std::make_shared<double>(0.3);
        auto taper = std::make_shared<std::string>("hann");
        auto delta = std::make_shared<double>(0.5);
        auto mode = std::make_shared<std::string>("report");
        auto threshold = std::make_shared<double>(0.01);
        opt(sc, "--input-csv", *input, "grid function CSV");
        opt(sc, "--sparse-json", *sparse, "sparse sequence JSON to render as bumps");
        opt(sc, "--lo", *lo, "render grid start");
        opt(sc, "--hi", *hi, "render grid end");
        opt(sc, "--dx", *dx, "render grid spacing");
        opt(sc, "--halfwidth", *halfwidth, "render bump halfwidth");
        opt(sc, "--taper", *taper, "hann or blackman");
        opt(sc, "--delta", *delta, "hole radius");
        opt(sc, "--mode", *mode, "report, expect-hole or expect-content");
        opt(sc, "--threshold", *threshold, "outside-fraction threshold for expect modes");
        add_common(sc, *common);
        runners[sc] = [=] {
            return run_spectrum(sc, *common, *input, *sparse, *lo, *hi, *dx, *halfwidth, *taper,
                                *delta, *mode, *threshold);
        };
    }

    try {
        std::vector<std::string> tokens(argv + 1, argv + argc);
        tokens = inject_config(std::move(tokens));
        std::reverse(tokens.begin(), tokens.end());
        app.parse(std::move(tokens));
        const auto parsed = app.get_subcommands();
        if (parsed.size() != 1) {
            std::cerr << "error: expected exactly one subcommand\n";
            return 2;
        }
        return runners.at(parsed.front())();
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const DomainError& e) {
        if (is_usage_code(e.code())) {
            std::cerr << "usage error [" << e.code() << "]: " << e.what() << '\n';
            return 2;
        }
        Json j;
        j["pass"] = false;
        j["failure_reason"] = e.code();
        j["message"] = e.what();
        std::cout << j.dump(2) << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
