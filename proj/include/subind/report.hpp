#pragma once

#include <string>

#include "json.hpp"
#include "subind/boolalg.hpp"
#include "subind/common.hpp"
#include "subind/finset.hpp"
#include "subind/finvect.hpp"
#include "subind/opalg.hpp"
#include "subind/oml.hpp"
#include "subind/pregeom.hpp"

namespace subind::report {

// Ordered maps keep report key order stable, which is what makes decided
// reports byte-identical across runs and thread counts.
using json = nlohmann::ordered_json;

inline constexpr const char* kTool = "subind";
inline constexpr const char* kVersion = "1.0.0";

// Shortest decimal string that parses back to exactly the same double.
std::string format_real(double x);
double parse_real(const std::string& text, const std::string& path);

// Complex matrices travel as flat row-major arrays of decimal strings with
// real and imaginary parts interleaved, so fixtures round-trip bit for bit.
json complex_matrix(const opalg::Mat& m);
opalg::Mat parse_complex_matrix(const json& entries, int rows, int cols,
                                const std::string& path);

json search_stats(const SearchStats& stats);

// Morphism encodings carry their endpoints plus the concrete representation,
// enough to re-check any verdict by hand.
json morphism_json(const fset::Category& cat, const fset::Morphism& f);
json morphism_json(const fvec::Category& cat, const fvec::Morphism& f);
json morphism_json(const pgeo::Category& cat, const pgeo::Morphism& f);
json morphism_json(const balg::Category& cat, const balg::Morphism& f);
json lattice_json(const oml::Lattice& l);

// Report skeleton: tool, version, kind, task, in that order.
json envelope(const std::string& kind, const std::string& task);

std::string to_json_text(const json& body);
// One-line-per-fact rendering for terminals; arrays print their length,
// except a "claims" array which prints one line per claim.
std::string to_text(const json& body);

// Writes to a sibling temp file and renames it into place.
void write_atomic(const std::string& path, const std::string& text);

}  // namespace subind::report
