#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <random>
#include <sstream>
#include <vector>

#include "hypoexp/error.hpp"
#include "hypoexp/io.hpp"
#include "test_support.hpp"

namespace hypoexp {
namespace {

using testing::code_of;

TEST(FormatReal, RoundTripsEveryDouble) {
  std::mt19937_64 rng(41);
  for (int i = 0; i < 10000; ++i) {
    double x = 0.0;
    const std::uint64_t bits = rng();
    std::memcpy(&x, &bits, sizeof x);
    if (!std::isfinite(x)) continue;
    const std::string s = io::format_real(x);
    EXPECT_EQ(std::strtod(s.c_str(), nullptr), x) << s;
  }
  EXPECT_EQ(io::format_real(0.5), "0.5");
  EXPECT_EQ(io::format_real(2.0), "2");
  EXPECT_EQ(io::format_real(0.1), "0.10000000000000001");
  EXPECT_EQ(io::format_real(std::nan("")), "null");
}

TEST(Dump, CompactSeparators) {
  io::Json j;
  j["a"] = 1;
  j["b"] = io::Json::array({0.25, -1.0});
  j["c"] = "x";
  j["d"] = nullptr;
  EXPECT_EQ(io::dump(j), R"({"a": 1, "b": [0.25, -1], "c": "x", "d": null})");
  EXPECT_EQ(io::dump(io::Json::array()), "[]");
}

TEST(ParseReals, JsonArray) {
  EXPECT_EQ(io::parse_reals(" [1, 2.5, -3e-2] "), (std::vector<double>{1, 2.5, -3e-2}));
  EXPECT_EQ(code_of([] { io::parse_reals("[1, \"a\"]"); }), ErrorCode::parse_error);
  EXPECT_EQ(code_of([] { io::parse_reals("[1, 2"); }), ErrorCode::parse_error);
}

TEST(ParseReals, LinesAndCsv) {
  EXPECT_EQ(io::parse_reals("1\n2\n3\n"), (std::vector<double>{1, 2, 3}));
  EXPECT_EQ(io::parse_reals("value\n0.5\n# note\n\n1.5\r\n"), (std::vector<double>{0.5, 1.5}));
  EXPECT_EQ(io::parse_reals("x,y\n1,9\n2,8\n"), (std::vector<double>{1, 2}));
  EXPECT_EQ(code_of([] { io::parse_reals("1\nfoo\n"); }), ErrorCode::parse_error);
  EXPECT_EQ(code_of([] { io::parse_reals("   "); }), ErrorCode::parse_error);
  EXPECT_EQ(code_of([] { io::parse_reals("header only\n"); }), ErrorCode::parse_error);
}

TEST(ParseReals, RoundTripThroughFormat) {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(-1e6, 1e6);
  std::vector<double> xs(200);
  for (auto& x : xs) x = u(rng);
  EXPECT_EQ(io::parse_reals(io::dump(io::to_json(xs))), xs);
  std::string lines;
  for (double x : xs) lines += io::format_real(x) + "\n";
  EXPECT_EQ(io::parse_reals(lines), xs);
}

TEST(ReadStream, ReadsEverything) {
  std::istringstream in("1\n2\n");
  EXPECT_EQ(io::read_stream(in), "1\n2\n");
  EXPECT_EQ(code_of([] { io::read_file("/nonexistent/path/x.csv"); }), ErrorCode::parse_error);
}

TEST(ToJson, ResidualReportFields) {
  ResidualReport r;
  r.order = 2;
  r.residuals = {0.0, 0.0, -0.5};
  r.tolerance = 1e-10;
  r.verdict = Verdict::incompatible;
  r.first_violation_k = 2;
  const auto j = io::to_json(r);
  EXPECT_EQ(j["verdict"], "incompatible-at-order-2");
  EXPECT_EQ(j["first_violation_k"], 2);
  EXPECT_FALSE(j.contains("fitted_lambda"));
  EXPECT_EQ(io::dump(j["residuals"]), "[0, 0, -0.5]");
}

}  // namespace
}  // namespace hypoexp
