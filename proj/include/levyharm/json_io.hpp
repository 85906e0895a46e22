#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"
#include "levyharm/discrete.hpp"
#include "levyharm/piecewise.hpp"
#include "levyharm/triplet.hpp"

namespace levyharm {

// Insertion-ordered JSON keeps report bytes deterministic for fixed inputs.
using Json = nlohmann::ordered_json;

// All payloads carry {"format_version", "kind"}; loaders reject unknown
// versions (version-mismatch) and malformed payloads (corrupt-file).
// Rationals and big integers travel as exact decimal / "p/q" strings, so
// save/load is the identity.
Json sparse_to_json(const SparseSequence& seq);
SparseSequence sparse_from_json(const Json& j);

Json bundle_to_json(const PiecewiseBundle& bundle);
PiecewiseBundle bundle_from_json(const Json& j);

Json triplet_to_json(const LevyTriplet& t);
LevyTriplet triplet_from_json(const Json& j);

void save_json(const std::filesystem::path& path, const Json& j);
Json load_json(const std::filesystem::path& path);

std::string rational_to_string(const Rational& q);
Rational rational_from_string(const std::string& s);

}  // namespace levyharm
