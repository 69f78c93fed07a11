#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "hypoexp/hypoexp.hpp"

namespace hypoexp {
namespace {

struct Result {
  int code = 0;
  std::string out;
  std::string err;
};

Result run_cli(std::vector<std::string> args, const std::string& stdin_text = "") {
  std::ostringstream out, err;
  std::istringstream in(stdin_text);
  Result r;
  r.code = cli::run(args, out, err, in);
  r.out = out.str();
  r.err = err.str();
  return r;
}

io::Json envelope(const Result& r) { return io::Json::parse(r.out); }

std::string read(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

TEST(Cli, WeightsExample) {
  const auto r = run_cli({"weights", "--scales", "[1,0.5]", "--raw"});
  EXPECT_EQ(r.code, cli::kExitOk);
  EXPECT_EQ(r.out, "[2, -1]\n");
}

TEST(Cli, WeightsKeepInputOrder) {
  const auto r = run_cli({"weights", "--rates", "[2,1]", "--raw"});
  EXPECT_EQ(r.out, "[-1, 2]\n");
  EXPECT_EQ(run_cli({"weights", "--binomial", "4", "--raw"}).out, "[4, -6, 4, -1]\n");
}

TEST(Cli, SolveTheorem2Example) {
  const auto r = run_cli({"solve", "--theorem", "2", "--scales", "[1,0.5,0.3333333333333333]", "--K", "12"});
  EXPECT_EQ(r.code, cli::kExitOk);
  const auto j = envelope(r);
  EXPECT_EQ(j["command"], "solve");
  EXPECT_EQ(j["config"]["K"], 12);
  ASSERT_EQ(j["result"].size(), 13u);
  EXPECT_EQ(j["result"][0].get<double>(), 1.0);
  EXPECT_NEAR(j["result"][1].get<double>(), 1.0, 1e-10);
  for (int k = 2; k <= 12; ++k) EXPECT_NEAR(j["result"][k].get<double>(), 0.0, 1e-10);
  EXPECT_EQ(j["details"]["exponential"], true);
}

TEST(Cli, ResidualIncompatibleExitsTwo) {
  const auto r = run_cli({"residual", "--which", "h", "--psi", "[1,1,1]", "--scales", "[1,0.5]"});
  EXPECT_EQ(r.code, cli::kExitNegativeVerdict);
  const auto j = envelope(r);
  EXPECT_EQ(j["result"]["verdict"], "incompatible-at-order-2");
  // 2 (1 + t/2 + t^2/4) - (1 + t + t^2) = 1 - t^2/2.
  EXPECT_EQ(j["result"]["residuals"][2].get<double>(), -0.5);
  EXPECT_EQ(j["result"]["residuals"].size(), 17u);
}

TEST(Cli, ResidualCompatibleExitsZero) {
  const auto r = run_cli({"residual", "--which", "q", "--psi", "[1,1]", "--scales", "[1,0.5]", "--K", "8"});
  EXPECT_EQ(r.code, cli::kExitOk);
  EXPECT_EQ(envelope(r)["result"]["verdict"], "exponential-compatible");
  EXPECT_EQ(run_cli({"residual", "--which", "h", "--psi", "1", "--scales", "[1,0.5]"}).code,
            cli::kExitNegativeVerdict);
}

TEST(Cli, PointwiseAndMoments) {
  EXPECT_EQ(run_cli({"pdf", "--rates", "[1,2]", "--at", "[0]", "--raw"}).out, "[0]\n");
  const auto sf = envelope(run_cli({"sf", "--rates", "[1,2]", "--at", "0.69314718055994529"}));
  EXPECT_NEAR(sf["result"][0].get<double>(), 0.75, 1e-15);
  EXPECT_EQ(run_cli({"moments", "--rates", "[1,2]", "--k", "3", "--raw"}).out, "[1.5, 3.5, 11.25]\n");
  const auto q = envelope(run_cli({"quantile", "--rates", "[1,2]", "--at", "[0.25]"}));
  EXPECT_NEAR(q["result"][0].get<double>(), std::log(2.0), 1e-12);
}

TEST(Cli, ScalesUseReferenceRate) {
  const auto a = run_cli({"cdf", "--scales", "[1,0.5]", "--lambda", "2", "--at", "[0.3]", "--raw"});
  const auto b = run_cli({"cdf", "--rates", "[2,4]", "--at", "[0.3]", "--raw"});
  EXPECT_EQ(a.out, b.out);
}

TEST(Cli, ValidationErrorsExitOne) {
  auto r = run_cli({"weights", "--rates", "[1,-3]"});
  EXPECT_EQ(r.code, cli::kExitError);
  EXPECT_TRUE(r.out.empty());
  EXPECT_NE(r.err.find("NonPositiveRate"), std::string::npos);
  EXPECT_EQ(std::count(r.err.begin(), r.err.end(), '\n'), 1);

  EXPECT_EQ(run_cli({"weights", "--rates", "[1,1]"}).code, cli::kExitError);
  EXPECT_EQ(run_cli({"weights", "--rates", "[1,2]", "--scales", "[1]"}).code, cli::kExitError);
  EXPECT_EQ(run_cli({"bogus"}).code, cli::kExitError);
  EXPECT_EQ(run_cli({}).code, cli::kExitError);
  EXPECT_EQ(run_cli({"coeffs", "--which", "x", "--scales", "[1,0.5]"}).code, cli::kExitError);
  EXPECT_EQ(run_cli({"pdf", "--rates", "[1,2]"}).code, cli::kExitError);
}

TEST(Cli, HelpListsDefaults) {
  const auto r = run_cli({"--help"});
  EXPECT_EQ(r.code, cli::kExitOk);
  EXPECT_NE(r.out.find("verify-lemma2"), std::string::npos);
  const auto s = run_cli({"sample", "--help"});
  EXPECT_NE(s.out.find(std::to_string(kDefaultSeed)), std::string::npos);
  const auto c = run_cli({"coeffs", "--help"});
  EXPECT_NE(c.out.find("16"), std::string::npos);
}

TEST(Cli, SampleIsDeterministic) {
  const std::vector<std::string> args{"sample", "--rates", "[1,2]", "--n", "50"};
  const auto a = run_cli(args);
  const auto b = run_cli(args);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(envelope(a)["config"]["seed"], kDefaultSeed);
  EXPECT_NE(a.out, run_cli({"sample", "--rates", "[1,2]", "--n", "50", "--seed", "1"}).out);
}

TEST(Cli, StdinData) {
  const auto data = sample_exponential(3.0, 20000, 77);
  std::string text = "x\n";
  for (double v : data) text += io::format_real(v) + "\n";
  const auto r = run_cli({"test-exponential", "--data", "-", "--scales", "[1,0.5]", "--alpha", "0.01"}, text);
  EXPECT_EQ(r.code, cli::kExitOk) << r.err;
  const auto j = envelope(r);
  EXPECT_EQ(j["result"]["verdict"], "fail-to-reject");
  EXPECT_EQ(j["result"]["sample_size"], 20000);

  std::string gamma;
  const auto a = sample_exponential(1.0, 20000, 78);
  const auto b = sample_exponential(1.0, 20000, 79);
  for (std::size_t i = 0; i < a.size(); ++i) gamma += io::format_real(a[i] + b[i]) + "\n";
  EXPECT_EQ(run_cli({"test-exponential", "--data", "-", "--scales", "[1,0.5]"}, gamma).code,
            cli::kExitNegativeVerdict);
  EXPECT_EQ(run_cli({"weights", "--rates", "-", "--raw"}, "1\n2\n").out, "[2, -1]\n");
}

TEST(Cli, TableFormat) {
  const auto r = run_cli({"weights", "--scales", "[1,0.5]", "--format", "table"});
  EXPECT_EQ(r.code, cli::kExitOk);
  EXPECT_NE(r.out.find("[0]\t2\n"), std::string::npos);
  EXPECT_NE(r.out.find("signs[1]\t-1\n"), std::string::npos);
}

// Each subcommand only forwards to the library: its result equals the
// serialized library call byte for byte.
TEST(CliAdapter, ResultsMatchLibraryCalls) {
  const std::vector<double> raw{0.5, 1.5, 4.0};
  const auto rates = validate_rates(raw);
  const HypoexpDistribution dist(rates);
  const std::vector<double> mu_raw{1.0, 0.5, 0.25};
  const auto mu = validate_scales(mu_raw);

  EXPECT_EQ(run_cli({"weights", "--rates", "[0.5,1.5,4]", "--raw"}).out,
            io::dump(io::to_json(lagrange_weights(rates).values)) + "\n");

  EXPECT_EQ(run_cli({"verify-lemma2", "--rates", "[0.5,1.5,4]", "--K", "6", "--raw"}).out,
            io::dump(io::to_json(lemma2_check(rates, 6))) + "\n");

  EXPECT_EQ(run_cli({"coeffs", "--which", "d", "--scales", "[1,0.5,0.25]", "--K", "5", "--raw"}).out,
            io::dump(io::to_json(d_coefficients(mu, 5))) + "\n");

  const auto psi = Series::polynomial(std::vector<double>{1.0, 0.3, 0.2}, 9);
  EXPECT_EQ(run_cli({"residual", "--which", "h", "--psi", "[1,0.3,0.2]", "--scales", "[1,0.5,0.25]", "--K", "9",
                     "--raw"})
                .out,
            io::dump(io::to_json(residual_h(psi, mu))) + "\n");

  EXPECT_EQ(run_cli({"solve", "--theorem", "1", "--a1", "0.7", "--scales", "[1,0.5,0.25]", "--raw"}).out,
            io::dump(io::to_json(forward_solve_theorem1(mu, 0.7))) + "\n");

  EXPECT_EQ(run_cli({"sample", "--rates", "[0.5,1.5,4]", "--n", "100", "--seed", "3", "--raw"}).out,
            io::dump(io::to_json(sample(dist, 100, 3))) + "\n");

  std::vector<double> pdfs;
  for (double x : {0.1, 1.0, 2.5}) pdfs.push_back(pdf(dist, x));
  EXPECT_EQ(run_cli({"pdf", "--rates", "[0.5,1.5,4]", "--at", "[0.1,1,2.5]", "--raw"}).out,
            io::dump(io::to_json(pdfs)) + "\n");

  const auto g = convolve_numeric(std::vector<double>{1.0, 2.0}, GridSpec{2e-3, 30.0});
  io::Json expected = io::to_json(g, false);
  expected["sup_distance"] = sup_distance(g, HypoexpDistribution(validate_rates(std::vector<double>{1.0, 2.0})));
  EXPECT_EQ(run_cli({"oracle-convolve", "--rates", "[1,2]", "--step", "0.002", "--upper", "30", "--raw"}).out,
            io::dump(expected) + "\n");
}

// Full JSON output of representative invocations, pinned on disk. Set
// HYPOEXP_UPDATE_GOLDEN=1 to rewrite the files after an intended change.
struct GoldenCase {
  const char* name;
  std::vector<std::string> args;
};

void PrintTo(const GoldenCase& c, std::ostream* os) { *os << c.name; }

class Golden : public ::testing::TestWithParam<GoldenCase> {};

TEST_P(Golden, MatchesFile) {
  const auto& c = GetParam();
  const auto r = run_cli(c.args);
  const std::filesystem::path file = std::filesystem::path(HYPOEXP_GOLDEN_DIR) / (std::string(c.name) + ".json");
  const std::string actual = r.out + "exit " + std::to_string(r.code) + "\n";
  if (std::getenv("HYPOEXP_UPDATE_GOLDEN") != nullptr) {
    std::ofstream(file, std::ios::binary) << actual;
  }
  ASSERT_TRUE(std::filesystem::exists(file)) << file;
  EXPECT_EQ(actual, read(file));
}

INSTANTIATE_TEST_SUITE_P(
    Cli, Golden,
    ::testing::Values(
        GoldenCase{"weights", {"weights", "--scales", "[1,0.5]"}},
        GoldenCase{"weights_binomial", {"weights", "--binomial", "5"}},
        GoldenCase{"pdf", {"pdf", "--rates", "[1,2]", "--at", "[0,0.6931471805599453,2]"}},
        GoldenCase{"moments", {"moments", "--rates", "[1,2]", "--k", "3"}},
        GoldenCase{"laplace", {"laplace", "--rates", "[1,2,3]", "--t", "[0,1,10]"}},
        GoldenCase{"lemma2", {"verify-lemma2", "--rates", "[1,2]", "--K", "3"}},
        GoldenCase{"coeffs_c", {"coeffs", "--which", "c", "--scales", "[1,0.5]", "--K", "4"}},
        GoldenCase{"residual_h", {"residual", "--which", "h", "--psi", "[1,1,1]", "--scales", "[1,0.5]", "--K", "4"}},
        GoldenCase{"residual_q", {"residual", "--which", "q", "--psi", "[1,2]", "--scales", "[1,0.5]", "--K", "3"}},
        GoldenCase{"solve_theorem1", {"solve", "--theorem", "1", "--a1", "0.5", "--scales", "[1,0.5]", "--K", "5"}},
        GoldenCase{"sample", {"sample", "--rates", "[1,2]", "--n", "5"}}),
    [](const ::testing::TestParamInfo<GoldenCase>& info) { return std::string(info.param.name); });

}  // namespace
}  // namespace hypoexp
