#include "levyharm/grid_function.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <limits>
#include <numbers>
#include <string>
#include <system_error>

namespace levyharm {

namespace {

constexpr const char* kCsvTag = "# levyharm-grid v1";

std::string render_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

double parse_double(const std::string& s, const char* what) {
    double v = 0.0;
    const char* last = s.data() + s.size();
    auto res = std::from_chars(s.data(), last, v);
    if (res.ec != std::errc{} || res.ptr != last)
        throw DomainError("corrupt-file", std::string("unparseable ") + what + ": '" + s + "'");
    return v;
}

// "name,value" with a fixed expected name.
std::string header_field(std::istream& in, const char* name) {
    std::string line;
    if (!std::getline(in, line))
        throw DomainError("corrupt-file", std::string("missing header field ") + name);
    auto comma = line.find(',');
    if (comma == std::string::npos || line.substr(0, comma) != name)
        throw DomainError("corrupt-file", std::string("expected header field ") + name);
    return line.substr(comma + 1);
}

}  // namespace

void GridFunction::validate() const {
    if (!(dx > 0.0) || !std::isfinite(dx))
        throw DomainError("invalid-grid", "grid spacing must be positive and finite");
    if (samples.size() < 2)
        throw DomainError("invalid-grid", "grid needs at least two samples");
    if (!std::isfinite(origin))
        throw DomainError("invalid-grid", "grid origin must be finite");
    for (double v : samples)
        if (!std::isfinite(v))
            throw DomainError("invalid-grid", "grid samples must be finite");
    if (std::isnan(tail_l1) || tail_l1 < 0.0)
        throw DomainError("invalid-grid", "declared tail mass must be >= 0 (or +inf)");
}

double GridFunction::l1_norm() const {
    double s = 0.0;
    for (double v : samples) s += std::fabs(v);
    return dx * s;
}

double GridFunction::sup_norm() const {
    double s = 0.0;
    for (double v : samples) s = std::max(s, std::fabs(v));
    return s;
}

GridFunction GridFunction::sample(double lo, double hi, double dx,
                                  const std::function<double(double)>& f,
                                  double tail_l1) {
    if (!(dx > 0.0) || !(hi > lo))
        throw DomainError("invalid-grid", "sampling needs lo < hi and dx > 0");
    GridFunction g;
    g.origin = lo;
    g.dx = dx;
    g.tail_l1 = tail_l1;
    auto n = static_cast<std::size_t>(std::llround((hi - lo) / dx)) + 1;
    g.samples.resize(n);
    for (std::size_t i = 0; i < n; ++i) g.samples[i] = f(g.x_at(i));
    g.validate();
    return g;
}

GridFunction convolve(const GridFunction& a, const GridFunction& b) {
    a.validate();
    b.validate();
    if (std::fabs(a.dx - b.dx) > 1e-15 * std::max(a.dx, b.dx))
        throw DomainError("grid-mismatch", "convolution requires equal grid spacing");
    const std::size_t na = a.size(), nb = b.size();
    GridFunction c;
    c.origin = a.origin + b.origin;
    c.dx = a.dx;
    c.samples.assign(na + nb - 1, 0.0);
    for (std::size_t i = 0; i < na; ++i) {
        const double ai = a.samples[i];
        if (ai == 0.0) continue;
        for (std::size_t j = 0; j < nb; ++j) c.samples[i + j] += ai * b.samples[j];
    }
    for (double& v : c.samples) v *= a.dx;
    if (std::isinf(a.tail_l1) || std::isinf(b.tail_l1)) {
        c.tail_l1 = std::numeric_limits<double>::infinity();
    } else {
        // |tail(a*b)| <= ||a|| tail_b + ||b|| tail_a + tail_a tail_b.
        c.tail_l1 = a.l1_norm() * b.tail_l1 + b.l1_norm() * a.tail_l1 + a.tail_l1 * b.tail_l1;
    }
    return c;
}

GridFunction truncate_to_ball(const GridFunction& f, double r) {
    if (!(r >= 0.0)) throw DomainError("invalid-grid", "truncation radius must be >= 0");
    GridFunction g = f;
    for (std::size_t i = 0; i < g.size(); ++i)
        if (std::fabs(g.x_at(i)) > r) g.samples[i] = 0.0;
    g.tail_l1 = 0.0;
    return g;
}

GridFunction truncation_tail(const GridFunction& f, double r) {
    if (!(r >= 0.0)) throw DomainError("invalid-grid", "truncation radius must be >= 0");
    GridFunction g = f;
    for (std::size_t i = 0; i < g.size(); ++i)
        if (std::fabs(g.x_at(i)) <= r) g.samples[i] = 0.0;
    return g;
}

std::complex<double> dft_at(const GridFunction& f, double xi) {
    double re = 0.0, im = 0.0;
    for (std::size_t k = 0; k < f.size(); ++k) {
        const double phase = -xi * f.x_at(k);
        re += f.samples[k] * std::cos(phase);
        im += f.samples[k] * std::sin(phase);
    }
    return {f.dx * re, f.dx * im};
}

std::vector<double> dual_grid(const GridFunction& f) {
    const auto n = static_cast<std::int64_t>(f.size());
    const double step = 2.0 * std::numbers::pi / (static_cast<double>(n) * f.dx);
    std::vector<double> xi(f.size());
    const std::int64_t j0 = -(n / 2);
    for (std::int64_t j = 0; j < n; ++j) xi[static_cast<std::size_t>(j)] = step * static_cast<double>(j0 + j);
    return xi;
}

namespace {

// e^{-2 pi i m / n} for m = 0..n-1; all large-phase products reduce mod n.
std::vector<std::complex<double>> twiddle_table(std::size_t n, double sign) {
    std::vector<std::complex<double>> w(n);
    for (std::size_t m = 0; m < n; ++m) {
        const double phase = sign * 2.0 * std::numbers::pi * static_cast<double>(m) / static_cast<double>(n);
        w[m] = {std::cos(phase), std::sin(phase)};
    }
    return w;
}

}  // namespace

std::vector<std::complex<double>> dft_dual(const GridFunction& f) {
    f.validate();
    const auto n = static_cast<std::int64_t>(f.size());
    const auto w = twiddle_table(f.size(), -1.0);
    const auto xi = dual_grid(f);
    std::vector<std::complex<double>> out(f.size());
    const std::int64_t j0 = -(n / 2);
    for (std::int64_t j = 0; j < n; ++j) {
        // xi_j x_k = xi_j origin + 2 pi (j0+j) k / n: the second factor is a
        // table lookup at (j0+j)k mod n, immune to argument-reduction loss.
        const std::int64_t jj = j0 + j;
        const double phase0 = -xi[static_cast<std::size_t>(j)] * f.origin;
        std::complex<double> rot0{std::cos(phase0), std::sin(phase0)};
        std::complex<double> acc{0.0, 0.0};
        for (std::int64_t k = 0; k < n; ++k) {
            std::int64_t m = (jj * k) % n;
            if (m < 0) m += n;
            acc += f.samples[static_cast<std::size_t>(k)] * w[static_cast<std::size_t>(m)];
        }
        out[static_cast<std::size_t>(j)] = f.dx * rot0 * acc;
    }
    return out;
}

GridFunction inverse_dft(const std::vector<std::complex<double>>& spectrum,
                         const GridFunction& like) {
    if (spectrum.size() != like.size())
        throw DomainError("grid-mismatch", "spectrum length must match the target grid");
    const auto n = static_cast<std::int64_t>(like.size());
    const auto w = twiddle_table(like.size(), 1.0);
    const auto xi = dual_grid(like);
    GridFunction g;
    g.origin = like.origin;
    g.dx = like.dx;
    g.samples.assign(like.size(), 0.0);
    g.tail_l1 = 0.0;
    const std::int64_t j0 = -(n / 2);
    const double scale = 1.0 / (static_cast<double>(n) * like.dx);
    std::vector<std::complex<double>> rotated(like.size());
    for (std::int64_t j = 0; j < n; ++j) {
        const double phase0 = xi[static_cast<std::size_t>(j)] * like.origin;
        rotated[static_cast<std::size_t>(j)] =
            spectrum[static_cast<std::size_t>(j)] *
            std::complex<double>{std::cos(phase0), std::sin(phase0)};
    }
    for (std::int64_t k = 0; k < n; ++k) {
        std::complex<double> acc{0.0, 0.0};
        for (std::int64_t j = 0; j < n; ++j) {
            std::int64_t m = ((j0 + j) * k) % n;
            if (m < 0) m += n;
            acc += rotated[static_cast<std::size_t>(j)] * w[static_cast<std::size_t>(m)];
        }
        g.samples[static_cast<std::size_t>(k)] = scale * acc.real();
    }
    return g;
}

void save_csv(const std::filesystem::path& path, const GridFunction& f) {
    f.validate();
    std::ofstream out(path);
    if (!out) throw DomainError("corrupt-file", "cannot open " + path.string() + " for writing");
    out << kCsvTag << '\n';
    out << "origin," << render_double(f.origin) << '\n';
    out << "spacing," << render_double(f.dx) << '\n';
    out << "tail_l1," << render_double(f.tail_l1) << '\n';
    out << "count," << f.size() << '\n';
    for (double v : f.samples) out << render_double(v) << '\n';
    if (!out) throw DomainError("corrupt-file", "write failure on " + path.string());
}

GridFunction load_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("corrupt-file", "cannot open " + path.string());
    std::string tag;
    if (!std::getline(in, tag)) throw DomainError("corrupt-file", "empty file " + path.string());
    if (tag != kCsvTag) {
        if (tag.rfind("# levyharm-grid", 0) == 0)
            throw DomainError("version-mismatch", "unsupported grid file version: " + tag);
        throw DomainError("corrupt-file", "not a grid file: " + path.string());
    }
    GridFunction g;
    g.origin = parse_double(header_field(in, "origin"), "origin");
    g.dx = parse_double(header_field(in, "spacing"), "spacing");
    g.tail_l1 = parse_double(header_field(in, "tail_l1"), "tail_l1");
    const auto count_s = header_field(in, "count");
    std::size_t count = 0;
    {
        const char* last = count_s.data() + count_s.size();
        auto res = std::from_chars(count_s.data(), last, count);
        if (res.ec != std::errc{} || res.ptr != last)
            throw DomainError("corrupt-file", "unparseable sample count");
    }
    g.samples.reserve(count);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        g.samples.push_back(parse_double(line, "sample"));
    }
    if (g.samples.size() != count)
        throw DomainError("corrupt-file", "sample count mismatch: header says " +
                                              std::to_string(count) + ", file has " +
                                              std::to_string(g.samples.size()));
    g.validate();
    return g;
}

}  // namespace levyharm
