#pragma once

// JSON and text I/O. Reals are written with 17 significant digits so every
// double survives a print/parse round trip bit for bit.

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "hypoexp/characterization.hpp"
#include "hypoexp/oracle.hpp"
#include "hypoexp/rates.hpp"
#include "hypoexp/series.hpp"

namespace hypoexp::io {

using Json = nlohmann::ordered_json;

/// "%.17g"; non-finite values become "null".
std::string format_real(double x);

/// Compact single-line JSON with ", " and ": " separators and 17-digit reals.
std::string dump(const Json& value);

/// A JSON array of numbers, or one number per line (single-column CSV; a
/// non-numeric first line is taken as a header, blank lines and lines
/// starting with '#' are skipped). Throws Error{parse_error}.
std::vector<double> parse_reals(std::string_view text);

std::string read_stream(std::istream& in);
std::string read_file(const std::string& path);

Json to_json(std::span<const double> values);
Json to_json(const WeightVector& w);
Json to_json(const Series& s);
Json to_json(const StructuralCoefficients& c);
Json to_json(const Lemma2Report& r);
Json to_json(const ResidualReport& r);
Json to_json(const TestReport& r);
Json to_json(const GridDensity& g, bool include_values);

}  // namespace hypoexp::io
