#include "levyharm/json_io.hpp"

#include <fstream>

#include "levyharm/version.hpp"

namespace levyharm {

namespace {

void check_header(const Json& j, const char* kind) {
    if (!j.is_object() || !j.contains("format_version") || !j.contains("kind"))
        throw DomainError("corrupt-file", "payload lacks format_version/kind header");
    if (!j["format_version"].is_number_integer() ||
        j["format_version"].get<int>() != kFileFormatVersion)
        throw DomainError("version-mismatch",
                          "unsupported format_version " + j["format_version"].dump());
    if (j["kind"] != kind)
        throw DomainError("corrupt-file", std::string("expected kind '") + kind + "', found " +
                                              j["kind"].dump());
}

BigInt bigint_from_string(const std::string& s) {
    BigInt z;
    if (mpz_set_str(z.get_mpz_t(), s.c_str(), 10) != 0)
        throw DomainError("corrupt-file", "unparseable integer: '" + s + "'");
    return z;
}

}  // namespace

std::string rational_to_string(const Rational& q) { return q.get_str(); }

Rational rational_from_string(const std::string& s) {
    Rational q;
    if (mpq_set_str(q.get_mpq_t(), s.c_str(), 10) != 0 || q.get_den() == 0)
        throw DomainError("corrupt-file", "unparseable rational: '" + s + "'");
    q.canonicalize();
    return q;
}

Json sparse_to_json(const SparseSequence& seq) {
    Json j;
    j["format_version"] = kFileFormatVersion;
    j["kind"] = "sparse-sequence";
    j["level"] = seq.level;
    Json atoms = Json::array();
    for (const auto& [n, v] : seq.atoms)
        atoms.push_back(Json::array({n.get_str(), rational_to_string(v)}));
    j["atoms"] = std::move(atoms);
    return j;
}

SparseSequence sparse_from_json(const Json& j) {
    check_header(j, "sparse-sequence");
    SparseSequence seq;
    try {
        seq.level = j.at("level").get<int>();
        for (const auto& entry : j.at("atoms")) {
            if (!entry.is_array() || entry.size() != 2)
                throw DomainError("corrupt-file", "atom entries must be [index, value] pairs");
            seq.atoms[bigint_from_string(entry[0].get<std::string>())] =
                rational_from_string(entry[1].get<std::string>());
        }
    } catch (const Json::exception& e) {
        throw DomainError("corrupt-file", std::string("malformed sparse sequence: ") + e.what());
    }
    return seq;
}

Json bundle_to_json(const PiecewiseBundle& bundle) {
    Json j;
    j["format_version"] = kFileFormatVersion;
    j["kind"] = "piecewise-bundle";
    j["level"] = bundle.level;
    j["q"] = bundle.q;
    Json xs = Json::array();
    for (const auto& x : bundle.x) xs.push_back(x.get_str());
    j["x"] = std::move(xs);
    j["t"] = bundle.t;
    Json pieces = Json::array();
    for (const auto& [center, poly] : bundle.pieces) {
        Json coeffs = Json::array();
        for (const auto& c : poly.coeffs()) coeffs.push_back(rational_to_string(c));
        pieces.push_back(Json::array({center.get_str(), std::move(coeffs)}));
    }
    j["pieces"] = std::move(pieces);
    return j;
}

PiecewiseBundle bundle_from_json(const Json& j) {
    check_header(j, "piecewise-bundle");
    PiecewiseBundle b;
    try {
        b.level = j.at("level").get<int>();
        b.q = j.at("q").get<int>();
        for (const auto& x : j.at("x")) b.x.push_back(bigint_from_string(x.get<std::string>()));
        b.t = j.at("t").get<std::vector<unsigned long>>();
        for (const auto& entry : j.at("pieces")) {
            if (!entry.is_array() || entry.size() != 2)
                throw DomainError("corrupt-file", "pieces must be [center, coeffs] pairs");
            std::vector<Rational> coeffs;
            for (const auto& c : entry[1]) coeffs.push_back(rational_from_string(c.get<std::string>()));
            b.pieces[bigint_from_string(entry[0].get<std::string>())] = Polynomial(std::move(coeffs));
        }
    } catch (const Json::exception& e) {
        throw DomainError("corrupt-file", std::string("malformed bundle: ") + e.what());
    }
    return b;
}

Json triplet_to_json(const LevyTriplet& t) {
    Json j;
    j["format_version"] = kFileFormatVersion;
    j["kind"] = "levy-triplet";
    j["diffusion"] = t.diffusion;
    j["drift"] = t.drift;
    Json m;
    if (t.measure.is_atomic()) {
        m["type"] = "atoms";
        Json atoms = Json::array();
        for (const auto& a : t.measure.atomic().atoms)
            atoms.push_back(Json::array(
                {rational_to_string(a.location), rational_to_string(a.mass)}));
        m["atoms"] = std::move(atoms);
    } else if (t.measure.is_sparse_geometric()) {
        m["type"] = "sparse-geometric";
        m["listed"] = t.measure.sparse_geometric().listed_count();
    } else {
        const auto& d = t.measure.density();
        m["type"] = "density";
        m["family"] = d.name;
        m["scale"] = d.scale;
        m["rate"] = d.rate;
        m["alpha"] = d.alpha;
    }
    j["measure"] = std::move(m);
    return j;
}

LevyTriplet triplet_from_json(const Json& j) {
    check_header(j, "levy-triplet");
    LevyTriplet t;
    try {
        t.diffusion = j.at("diffusion").get<double>();
        t.drift = j.at("drift").get<double>();
        const auto& m = j.at("measure");
        const std::string type = m.at("type").get<std::string>();
        if (type == "atoms") {
            AtomicMeasure am;
            for (const auto& entry : m.at("atoms")) {
                if (!entry.is_array() || entry.size() != 2)
                    throw DomainError("corrupt-file", "atoms must be [location, mass] pairs");
                am.atoms.push_back(Atom{rational_from_string(entry[0].get<std::string>()),
                                        rational_from_string(entry[1].get<std::string>())});
            }
            t.measure = MeasureSpec(std::move(am));
        } else if (type == "sparse-geometric") {
            const int listed = m.at("listed").get<int>();
            if (listed < 1)
                throw DomainError("corrupt-file", "sparse-geometric needs listed >= 1");
            t.measure = MeasureSpec(SparseGeometricMeasure::standard(listed - 1));
        } else if (type == "density") {
            DensityMeasure d;
            d.name = m.at("family").get<std::string>();
            d.scale = m.at("scale").get<double>();
            d.rate = m.value("rate", 1.0);
            d.alpha = m.value("alpha", 1.0);
            t.measure = MeasureSpec(std::move(d));
        } else {
            throw DomainError("corrupt-file", "unknown measure type '" + type + "'");
        }
    } catch (const Json::exception& e) {
        throw DomainError("corrupt-file", std::string("malformed triplet: ") + e.what());
    }
    t.validate();
    return t;
}

void save_json(const std::filesystem::path& path, const Json& j) {
    std::ofstream out(path);
    if (!out) throw DomainError("corrupt-file", "cannot open " + path.string() + " for writing");
    out << j.dump(2) << '\n';
    if (!out) throw DomainError("corrupt-file", "write failure on " + path.string());
}

Json load_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("corrupt-file", "cannot open " + path.string());
    try {
        return Json::parse(in);
    } catch (const Json::exception& e) {
        throw DomainError("corrupt-file",
                          "invalid JSON in " + path.string() + ": " + e.what());
    }
}

}  // namespace levyharm
