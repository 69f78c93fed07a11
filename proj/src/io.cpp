#include "hypoexp/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <sstream>

#include "hypoexp/error.hpp"

namespace hypoexp::io {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

bool parse_one(std::string_view token, double& out) {
  const std::string s(trim(token));
  if (s.empty()) return false;
  char* end = nullptr;
  out = std::strtod(s.c_str(), &end);
  return end == s.c_str() + s.size();
}

void dump_into(const Json& v, std::string& out) {
  switch (v.type()) {
    case Json::value_t::array: {
      out += '[';
      bool first = true;
      for (const auto& e : v) {
        if (!first) out += ", ";
        first = false;
        dump_into(e, out);
      }
      out += ']';
      break;
    }
    case Json::value_t::object: {
      out += '{';
      bool first = true;
      for (const auto& [key, e] : v.items()) {
        if (!first) out += ", ";
        first = false;
        out += Json(key).dump();
        out += ": ";
        dump_into(e, out);
      }
      out += '}';
      break;
    }
    case Json::value_t::number_float: out += format_real(v.get<double>()); break;
    default: out += v.dump(); break;
  }
}

Json verdict_json(const std::optional<int>& k) { return k ? Json(*k) : Json(nullptr); }

}  // namespace

std::string format_real(double x) {
  if (!std::isfinite(x)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string dump(const Json& value) {
  std::string out;
  dump_into(value, out);
  return out;
}

std::vector<double> parse_reals(std::string_view text) {
  const auto body = trim(text);
  if (body.empty()) throw Error(ErrorCode::parse_error, "no values given");

  if (body.front() == '[') {
    Json parsed;
    try {
      parsed = Json::parse(body);
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::parse_error, e.what());
    }
    std::vector<double> out;
    for (const auto& v : parsed) {
      if (!v.is_number()) throw Error(ErrorCode::parse_error, "array entries must be numbers");
      out.push_back(v.get<double>());
    }
    return out;
  }

  std::vector<double> out;
  std::istringstream lines{std::string(body)};
  std::string line;
  bool first = true;
  std::size_t line_no = 0;
  while (std::getline(lines, line)) {
    ++line_no;
    auto cell = trim(line);
    if (cell.empty() || cell.front() == '#') continue;
    // Single column: the value is everything before the first comma.
    cell = trim(cell.substr(0, cell.find(',')));
    double v = 0.0;
    if (!parse_one(cell, v)) {
      if (first) {
        first = false;
        continue;
      }
      throw Error(ErrorCode::parse_error, "line " + std::to_string(line_no) + ": '" +
                                              std::string(cell) + "' is not a number");
    }
    first = false;
    out.push_back(v);
  }
  if (out.empty()) throw Error(ErrorCode::parse_error, "no values given");
  return out;
}

std::string read_stream(std::istream& in) {
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::parse_error, "cannot open '" + path + "'");
  return read_stream(f);
}

Json to_json(std::span<const double> values) {
  Json a = Json::array();
  for (double v : values) a.push_back(v);
  return a;
}

Json to_json(const WeightVector& w) {
  Json j;
  j["weights"] = to_json(w.values);
  j["signs"] = w.signs;
  j["log_magnitudes"] = to_json(w.log_magnitudes);
  return j;
}

Json to_json(const Series& s) { return to_json(s.coefficients()); }

Json to_json(const StructuralCoefficients& c) {
  Json j;
  j["which"] = c.kind == CoefficientKind::c ? "c" : "d";
  j["order"] = c.order();
  j["values"] = to_json(c.values);
  j["magnitudes"] = to_json(c.magnitudes);
  return j;
}

Json to_json(const Lemma2Report& r) {
  Json j;
  j["order"] = r.order;
  j["tolerance"] = r.tolerance;
  j["weight_sum"] = r.weight_sum;
  j["power_sums"] = to_json(r.power_sums);
  j["inverse_gaps"] = to_json(r.inverse_gaps);
  j["symmetric_residuals"] = to_json(r.symmetric_residuals);
  j["sum_ok"] = r.sum_ok;
  j["power_sums_ok"] = r.power_sums_ok;
  j["gaps_ok"] = r.gaps_ok;
  j["gaps_beyond_range_ok"] = r.gaps_beyond_range_ok;
  j["symmetric_ok"] = r.symmetric_ok;
  j["passed"] = r.passed();
  return j;
}

Json to_json(const ResidualReport& r) {
  Json j;
  j["kind"] = r.kind == ResidualKind::h ? "h" : "q";
  j["order"] = r.order;
  j["residuals"] = to_json(r.residuals);
  j["tolerance"] = r.tolerance;
  j["verdict"] = r.verdict_label();
  j["first_violation_k"] = verdict_json(r.first_violation_k);
  if (r.fitted_lambda) j["fitted_lambda"] = *r.fitted_lambda;
  return j;
}

Json to_json(const TestReport& r) {
  Json j;
  j["statistic"] = r.statistic;
  j["threshold"] = r.threshold;
  j["alpha"] = r.alpha;
  j["sample_size"] = r.sample_size;
  j["tuple_count"] = r.tuple_count;
  j["fitted_lambda"] = r.fitted_lambda;
  j["verdict"] = r.verdict == TestVerdict::reject ? "reject" : "fail-to-reject";
  return j;
}

Json to_json(const GridDensity& g, bool include_values) {
  Json j;
  j["step"] = g.step;
  j["points"] = g.grid.size();
  j["upper"] = g.grid.empty() ? 0.0 : g.grid.back();
  j["integral"] = g.integral();
  if (include_values) j["values"] = to_json(g.values);
  return j;
}

}  // namespace hypoexp::io
