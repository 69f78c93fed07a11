#include "cli.hpp"

#include <algorithm>
#include <functional>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <vector>

#include <CLI11.hpp>

#include "hypoexp/hypoexp.hpp"

namespace hypoexp::cli {

namespace {

using io::Json;

struct CommandConfig {
  std::string subcommand;
  std::string rates;
  std::string scales;
  int order = kDefaultOrder;
  std::uint64_t seed = kDefaultSeed;
  std::size_t count = 100000;
  double tol = kDefaultTolerance;
  double distinct_tol = kDefaultDistinctTolerance;
  double reference_rate = 1.0;
  std::string format = "json";
  bool raw = false;

  std::string at;
  std::string t;
  int k = 4;
  int binomial = 0;
  std::string which;
  std::string psi;
  int theorem = 1;
  double a1 = 1.0;
  std::string data;
  double alpha = 0.01;
  double step = 1e-3;
  double upper = 20.0;
  bool include_grid = false;
};

struct Outcome {
  Json result;
  Json details;
  int exit_code = kExitOk;
};

std::vector<double> load_reals(const std::string& arg, std::istream& in) {
  if (arg == "-") return io::parse_reals(io::read_stream(in));
  std::string_view v(arg);
  while (!v.empty() && std::isspace(static_cast<unsigned char>(v.front()))) v.remove_prefix(1);
  if (!v.empty() && v.front() == '[') return io::parse_reals(v);
  char* end = nullptr;
  const double x = std::strtod(arg.c_str(), &end);
  if (end != arg.c_str() && *end == '\0') return {x};
  return io::parse_reals(io::read_file(arg));
}

class Context {
 public:
  Context(const CommandConfig& cfg, std::istream& in) : cfg_(cfg), in_(in) {}

  bool has_rates() const { return !cfg_.rates.empty(); }
  bool has_scales() const { return !cfg_.scales.empty(); }

  void require_one_source() const {
    if (has_rates() == has_scales()) {
      throw Error(ErrorCode::invalid_argument, "give exactly one of --rates or --scales");
    }
  }

  // Distribution parameters; scales map to rates reference_rate / mu_i.
  RateVector rates() const {
    require_one_source();
    if (has_rates()) return validate_rates(load_reals(cfg_.rates, in_), cfg_.distinct_tol);
    return validate_scales(load_reals(cfg_.scales, in_), cfg_.distinct_tol).to_rates(cfg_.reference_rate);
  }

  // Scale coefficients; rates map to mu_i = 1 / lambda_i.
  ScaleVector scales() const {
    require_one_source();
    auto v = load_reals(has_scales() ? cfg_.scales : cfg_.rates, in_);
    if (has_rates()) {
      for (double& x : v) x = 1.0 / x;
    }
    return validate_scales(v, cfg_.distinct_tol);
  }

  std::vector<double> reals(const std::string& arg, const char* flag) const {
    if (arg.empty()) throw Error(ErrorCode::invalid_argument, std::string(flag) + " is required");
    return load_reals(arg, in_);
  }

  const CommandConfig& cfg() const { return cfg_; }

 private:
  const CommandConfig& cfg_;
  std::istream& in_;
};

std::vector<double> input_order(const RateVector& rates, std::span<const double> sorted) {
  return rates.to_input_order(sorted);
}

std::vector<double> input_order(const ScaleVector& mu, std::span<const double> sorted) {
  std::vector<double> out(sorted.size());
  for (std::size_t k = 0; k < sorted.size(); ++k) out[mu.input_index()[k]] = sorted[k];
  return out;
}

Outcome cmd_weights(const Context& ctx) {
  const auto& cfg = ctx.cfg();
  Outcome o;
  WeightVector w;
  std::vector<double> values, logs;
  std::vector<int> signs;
  if (cfg.binomial > 0) {
    w = binomial_weights(cfg.binomial);
    values = w.values;
    logs = w.log_magnitudes;
    signs = w.signs;
  } else {
    ctx.require_one_source();
    std::vector<std::size_t> index;
    if (ctx.has_scales()) {
      const ScaleVector mu = ctx.scales();
      w = weights_from_scales(mu);
      index.assign(mu.input_index().begin(), mu.input_index().end());
    } else {
      const RateVector r = ctx.rates();
      w = lagrange_weights(r);
      index.assign(r.input_index().begin(), r.input_index().end());
    }
    values.resize(w.size());
    logs.resize(w.size());
    signs.resize(w.size());
    for (std::size_t k = 0; k < w.size(); ++k) {
      values[index[k]] = w.values[k];
      logs[index[k]] = w.log_magnitudes[k];
      signs[index[k]] = w.signs[k];
    }
  }
  o.result = io::to_json(values);
  o.details["signs"] = signs;
  o.details["log_magnitudes"] = io::to_json(logs);
  return o;
}

Outcome cmd_pointwise(const Context& ctx, const std::string& which) {
  const HypoexpDistribution dist(ctx.rates());
  const auto at = ctx.reals(ctx.cfg().at, "--at");
  std::vector<double> values;
  for (double x : at) {
    if (which == "pdf") values.push_back(pdf(dist, x));
    else if (which == "cdf") values.push_back(cdf(dist, x));
    else if (which == "sf") values.push_back(survival(dist, x));
    else values.push_back(quantile(dist, x));
  }
  Outcome o;
  o.result = io::to_json(values);
  o.details["at"] = io::to_json(at);
  return o;
}

Outcome cmd_moments(const Context& ctx) {
  const HypoexpDistribution dist(ctx.rates());
  if (ctx.cfg().k < 1) throw Error(ErrorCode::invalid_argument, "--k must be >= 1");
  std::vector<double> m;
  for (int k = 1; k <= ctx.cfg().k; ++k) m.push_back(moment(dist, k));
  Outcome o;
  o.result = io::to_json(m);
  o.details["mean"] = mean(dist);
  o.details["variance"] = variance(dist);
  return o;
}

Outcome cmd_sample(const Context& ctx) {
  const HypoexpDistribution dist(ctx.rates());
  const auto s = sample(dist, ctx.cfg().count, ctx.cfg().seed);
  CompensatedSum total;
  for (double x : s) total.add(x);
  Outcome o;
  o.result = io::to_json(s);
  o.details["count"] = s.size();
  o.details["empirical_mean"] = total.value() / static_cast<double>(s.size());
  return o;
}

Outcome cmd_laplace(const Context& ctx) {
  const HypoexpDistribution dist(ctx.rates());
  const auto t = ctx.reals(ctx.cfg().t, "--t");
  std::vector<double> product, mixture;
  for (double x : t) {
    product.push_back(laplace(dist, x, LaplaceForm::product));
    mixture.push_back(laplace(dist, x, LaplaceForm::mixture));
  }
  Outcome o;
  o.result["product"] = io::to_json(product);
  o.result["mixture"] = io::to_json(mixture);
  o.details["t"] = io::to_json(t);
  return o;
}

Outcome cmd_lemma2(const Context& ctx) {
  const auto report = lemma2_check(ctx.rates(), ctx.cfg().order, ctx.cfg().tol);
  Outcome o;
  o.result = io::to_json(report);
  o.exit_code = report.passed() ? kExitOk : kExitNegativeVerdict;
  return o;
}

Outcome cmd_coeffs(const Context& ctx) {
  const auto& cfg = ctx.cfg();
  const ScaleVector mu = ctx.scales();
  Outcome o;
  if (cfg.which == "c") {
    o.result = io::to_json(c_coefficients(mu, cfg.order, cfg.tol));
  } else if (cfg.which == "d") {
    o.result = io::to_json(d_coefficients(mu, cfg.order, cfg.tol));
  } else {
    throw Error(ErrorCode::invalid_argument, "--which must be c or d");
  }
  return o;
}

Outcome cmd_residual(const Context& ctx) {
  const auto& cfg = ctx.cfg();
  const ScaleVector mu = ctx.scales();
  const Series psi = Series::polynomial(ctx.reals(cfg.psi, "--psi"), cfg.order);
  ResidualReport report;
  if (cfg.which == "h") {
    report = residual_h(psi, mu, cfg.tol);
  } else if (cfg.which == "q") {
    report = residual_q(psi, mu, cfg.tol);
  } else {
    throw Error(ErrorCode::invalid_argument, "--which must be h or q");
  }
  Outcome o;
  o.result = io::to_json(report);
  o.exit_code = report.verdict == Verdict::exponential_compatible ? kExitOk : kExitNegativeVerdict;
  return o;
}

Outcome cmd_solve(const Context& ctx) {
  const auto& cfg = ctx.cfg();
  const ScaleVector mu = ctx.scales();
  Series s = Series::zero(0);
  if (cfg.theorem == 1) {
    s = forward_solve_theorem1(mu, cfg.a1, cfg.order, cfg.tol);
  } else if (cfg.theorem == 2) {
    s = forward_solve_theorem2(mu, cfg.order, cfg.tol);
  } else {
    throw Error(ErrorCode::invalid_argument, "--theorem must be 1 or 2");
  }
  const auto fit = is_exponential_series(s, cfg.tol);
  Outcome o;
  o.result = io::to_json(s);
  o.details["exponential"] = fit.exponential;
  o.details["fitted_lambda"] = fit.lambda ? Json(*fit.lambda) : Json(nullptr);
  o.exit_code = fit.exponential ? kExitOk : kExitNegativeVerdict;
  return o;
}

Outcome cmd_convolve(const Context& ctx) {
  const auto& cfg = ctx.cfg();
  ctx.require_one_source();
  std::vector<double> rates = ctx.reals(ctx.has_rates() ? cfg.rates : cfg.scales, "--rates");
  if (ctx.has_scales()) {
    for (double& x : rates) x = cfg.reference_rate / x;
  }
  const GridDensity g = convolve_numeric(rates, GridSpec{cfg.step, cfg.upper});
  Outcome o;
  o.result = io::to_json(g, cfg.include_grid);
  if (rates.size() >= 2) {
    const HypoexpDistribution dist(validate_rates(rates, cfg.distinct_tol));
    o.result["sup_distance"] = sup_distance(g, dist);
  }
  return o;
}

Outcome cmd_test_exponential(const Context& ctx) {
  const auto& cfg = ctx.cfg();
  const auto data = ctx.reals(cfg.data, "--data");
  const ScaleVector mu = ctx.scales();
  const TestReport report = exponentiality_test(data, mu, cfg.alpha, cfg.seed);
  Outcome o;
  o.result = io::to_json(report);
  o.exit_code = report.verdict == TestVerdict::reject ? kExitNegativeVerdict : kExitOk;
  return o;
}

void print_table(const Json& v, const std::string& prefix, std::ostream& out) {
  if (v.is_array()) {
    for (std::size_t i = 0; i < v.size(); ++i) print_table(v[i], prefix + "[" + std::to_string(i) + "]", out);
  } else if (v.is_object()) {
    for (const auto& [key, e] : v.items()) print_table(e, prefix.empty() ? key : prefix + "." + key, out);
  } else {
    out << prefix << '\t' << io::dump(v) << '\n';
  }
}

void add_source_options(CLI::App* sub, CommandConfig& cfg) {
  sub->add_option("--rates", cfg.rates, "Rates as a JSON array, a CSV/text file path, or - for stdin");
  sub->add_option("--scales", cfg.scales, "Scale coefficients mu_i (same formats as --rates)");
  sub->add_option("--lambda", cfg.reference_rate, "Reference rate lambda for rates lambda/mu_i")
      ->capture_default_str();
  sub->add_option("--distinct-tol", cfg.distinct_tol, "Minimum relative gap between rates")
      ->capture_default_str();
}

void add_output_options(CLI::App* sub, CommandConfig& cfg) {
  sub->add_option("--format", cfg.format, "Output format")
      ->check(CLI::IsMember({"json", "table"}))
      ->capture_default_str();
  sub->add_flag("--raw", cfg.raw, "Print only the result value");
}

}  // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err, std::istream& in) {
  CommandConfig cfg;
  CLI::App app{"Hypoexponential distributions and exponential characterization checks", "hypoexp"};
  app.require_subcommand(1);
  app.footer("Exit status: 0 success, 1 invalid input, 2 negative verdict.");

  std::map<std::string, std::function<Outcome(const Context&)>> handlers;
  auto add = [&](const std::string& name, const std::string& help,
                 std::function<Outcome(const Context&)> fn) {
    CLI::App* sub = app.add_subcommand(name, help);
    add_source_options(sub, cfg);
    add_output_options(sub, cfg);
    handlers[name] = std::move(fn);
    return sub;
  };

  auto* weights = add("weights", "Lagrange weights l_j", cmd_weights);
  weights->add_option("--binomial", cfg.binomial, "Weights of mu_j = 1/j for this n instead");

  for (const std::string name : {"pdf", "cdf", "sf", "quantile"}) {
    auto* sub = add(name, name == "quantile" ? "Quantiles at probabilities --at" : name + " at points --at",
                    [name](const Context& c) { return cmd_pointwise(c, name); });
    sub->add_option("--at", cfg.at, "Points (or probabilities) as JSON array, number, or path")->required();
  }

  add("moments", "Raw moments E[S^1..S^k]", cmd_moments)
      ->add_option("--k", cfg.k, "Highest moment order")
      ->capture_default_str();

  auto* smp = add("sample", "Draw samples of S", cmd_sample);
  smp->add_option("--n", cfg.count, "Number of draws")->capture_default_str();
  smp->add_option("--seed", cfg.seed, "Random seed")->capture_default_str();

  add("laplace", "Laplace transform in product and mixture form", cmd_laplace)
      ->add_option("--t", cfg.t, "Arguments t >= 0")
      ->required();

  auto* lemma = add("verify-lemma2", "Check the weight identities", cmd_lemma2);
  lemma->add_option("--K", cfg.order, "Highest order checked")->capture_default_str();
  lemma->add_option("--tol", cfg.tol, "Scaled tolerance")->capture_default_str();

  auto* coeffs = add("coeffs", "Structural coefficients c_k or d_k", cmd_coeffs);
  coeffs->add_option("--which", cfg.which, "c or d")->required()->check(CLI::IsMember({"c", "d"}));
  coeffs->add_option("--K", cfg.order, "Truncation order")->capture_default_str();
  coeffs->add_option("--tol", cfg.tol, "Scaled tolerance")->capture_default_str();

  auto* residual = add("residual", "Residuals of a candidate psi = 1/phi", cmd_residual);
  residual->add_option("--psi", cfg.psi, "psi coefficients, constant term first")->required();
  residual->add_option("--which", cfg.which, "h or q")->required()->check(CLI::IsMember({"h", "q"}));
  residual->add_option("--K", cfg.order, "Truncation order")->capture_default_str();
  residual->add_option("--tol", cfg.tol, "Scaled tolerance")->capture_default_str();

  auto* solve = add("solve", "Forward-solve the coefficient recursion", cmd_solve);
  solve->add_option("--theorem", cfg.theorem, "1 or 2")->capture_default_str();
  solve->add_option("--a1", cfg.a1, "Free coefficient a_1 (theorem 1)")->capture_default_str();
  solve->add_option("--K", cfg.order, "Truncation order")->capture_default_str();
  solve->add_option("--tol", cfg.tol, "Scaled tolerance")->capture_default_str();

  auto* conv = add("oracle-convolve", "Trapezoid convolution density vs closed form", cmd_convolve);
  conv->add_option("--step", cfg.step, "Grid step")->capture_default_str();
  conv->add_option("--upper", cfg.upper, "Grid upper end")->capture_default_str();
  conv->add_flag("--grid", cfg.include_grid, "Include grid values in the output");

  auto* test = add("test-exponential", "KS test of exponentiality via weighted sums", cmd_test_exponential);
  test->add_option("--data", cfg.data, "Observations: CSV/text path or - for stdin")->required();
  test->add_option("--alpha", cfg.alpha, "Significance level")->capture_default_str();
  test->add_option("--seed", cfg.seed, "Shuffle seed")->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    const auto subs = app.get_subcommands();
    out << (subs.empty() ? app.help() : subs.front()->help());
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "hypoexp: " << e.what() << '\n';
    return kExitError;
  }

  cfg.subcommand = app.get_subcommands().front()->get_name();
  try {
    const Context ctx(cfg, in);
    Outcome o = handlers.at(cfg.subcommand)(ctx);

    if (cfg.raw) {
      out << io::dump(o.result) << '\n';
    } else if (cfg.format == "table") {
      print_table(o.result, "", out);
      if (!o.details.is_null()) print_table(o.details, "", out);
    } else {
      Json env;
      env["command"] = cfg.subcommand;
      env["config"] = {{"K", cfg.order},
                       {"tol", cfg.tol},
                       {"distinct_tol", cfg.distinct_tol},
                       {"seed", cfg.seed},
                       {"reference_rate", cfg.reference_rate}};
      env["result"] = std::move(o.result);
      if (!o.details.is_null()) env["details"] = std::move(o.details);
      out << io::dump(env) << '\n';
    }
    return o.exit_code;
  } catch (const Error& e) {
    err << "hypoexp: " << e.what() << '\n';
    return kExitError;
  }
}

}  // namespace hypoexp::cli
