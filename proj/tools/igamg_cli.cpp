// Command-line driver: iteration-count tables and verification suites.
#include <fstream>
#include <iostream>
#include <map>
#include <optional>

#include <CLI11.hpp>

#include "igamg/experiments.hpp"

using namespace igamg;

namespace {

constexpr int kExitFail = 1;
constexpr int kExitConfig = 2;

struct Options {
  int dim = 1;
  std::string degrees = "1-15";
  std::string levels = "10-12";
  std::string coarse = "auto";
  std::string cycle = "v";
  int pre = 1;
  int post = 1;
  std::optional<double> tau;
  std::string solver = "mg";
  double tol = 1e-8;
  int max_iter = 500;
  std::string format = "csv";
  std::string out;
  std::string initial = "random";
  std::uint64_t seed = 0;
  std::string damping = "mass";
  std::string suite = "all";
  std::string verify_degrees = "1-8";
};

Damping parse_damping(const std::string& s) {
  if (s == "mass")
    return Damping::MassOnly;
  if (s == "plain")
    return Damping::Plain;
  throw ConfigError("--damping must be 'mass' or 'plain'");
}

ExperimentConfig table_config(const Options& o) {
  ExperimentConfig cfg;
  cfg.dimension = o.dim;
  cfg.degrees = parse_range(o.degrees);
  cfg.levels = parse_range(o.levels);
  if (o.coarse != "auto") {
    try {
      std::size_t pos = 0;
      cfg.coarse_level = std::stoi(o.coarse, &pos);
      if (pos != o.coarse.size())
        throw std::invalid_argument(o.coarse);
    } catch (const std::exception&) {
      throw ConfigError("--coarse must be an integer or 'auto'");
    }
  }
  static const std::map<std::string, CycleType> cycles{
      {"v", CycleType::V}, {"w", CycleType::W}, {"two-grid", CycleType::TwoGrid}};
  const auto c = cycles.find(o.cycle);
  if (c == cycles.end())
    throw ConfigError("--cycle must be v, w or two-grid");
  cfg.cycle.cycle = c->second;
  cfg.cycle.pre_smooth = o.pre;
  cfg.cycle.post_smooth = o.post;
  cfg.cycle.tol = o.tol;
  cfg.cycle.max_iter = o.max_iter;
  if (o.solver == "mg")
    cfg.solver = SolverKind::Multigrid;
  else if (o.solver == "cg-mg")
    cfg.solver = SolverKind::PcgMultigrid;
  else
    throw ConfigError("--solver must be mg or cg-mg");
  cfg.tau = o.tau.value_or(default_tau(o.dim));
  cfg.damping = parse_damping(o.damping);
  if (o.initial == "random")
    cfg.initial = InitialGuess::Random;
  else if (o.initial == "zero")
    cfg.initial = InitialGuess::Zero;
  else
    throw ConfigError("--initial must be random or zero");
  cfg.seed = o.seed;
  if (o.format == "csv")
    cfg.format = OutputFormat::Csv;
  else if (o.format == "markdown")
    cfg.format = OutputFormat::Markdown;
  else
    throw ConfigError("--format must be csv or markdown");
  cfg.output_path = o.out;
  validate(cfg);
  return cfg;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream os(path);
  if (!os)
    throw std::runtime_error("cannot open '" + path + "' for writing");
  os << text;
  if (!os)
    throw std::runtime_error("failed writing '" + path + "'");
}

int run_table_command(const Options& o) {
  const ExperimentConfig cfg = table_config(o);
  const ResultTable t = run_table(cfg);
  const std::string text =
      cfg.format == OutputFormat::Csv ? format_csv(t) : format_markdown(t);
  if (cfg.output_path.empty()) {
    std::cout << text;
  } else {
    write_file(cfg.output_path, text);
    write_file(cfg.output_path + ".timing.csv", format_timing_csv(t));
  }
  if (!t.all_converged()) {
    std::cerr << "some cells did not converge within " << cfg.cycle.max_iter << " iterations\n";
    return kExitFail;
  }
  return 0;
}

int run_verify_command(const Options& o) {
  VerifyConfig cfg;
  cfg.suite = o.suite;
  cfg.dimension = o.dim;
  cfg.degrees = parse_range(o.verify_degrees);
  cfg.tau = o.tau.value_or(default_tau(o.dim));
  cfg.damping = parse_damping(o.damping);
  const auto lines = run_verify(cfg);
  bool failed = false;
  for (const auto& l : lines) {
    std::cout << format_verify_line(l) << '\n';
    failed = failed || l.status == VerifyStatus::Fail;
  }
  return failed ? kExitFail : 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multigrid for B-spline discretizations: experiment tables and checks"};
  app.require_subcommand(1);
  Options o;

  auto* table = app.add_subcommand("table", "Iteration counts over degrees and fine levels");
  table->add_option("--dim", o.dim, "Space dimension (1 or 2)");
  table->add_option("--degrees", o.degrees, "Spline degrees, e.g. 1-15");
  table->add_option("--levels", o.levels, "Fine levels, e.g. 10-12");
  table->add_option("--coarse", o.coarse, "Coarsest level or 'auto'");
  table->add_option("--cycle", o.cycle, "v, w or two-grid");
  table->add_option("--pre", o.pre, "Pre-smoothing steps");
  table->add_option("--post", o.post, "Post-smoothing steps");
  table->add_option("--tau", o.tau, "Damping parameter (default 0.14 in 1D, 0.08 in 2D)");
  table->add_option("--solver", o.solver, "mg or cg-mg");
  table->add_option("--tol", o.tol, "Relative residual reduction");
  table->add_option("--max-iter", o.max_iter, "Iteration limit per cell");
  table->add_option("--format", o.format, "csv or markdown");
  table->add_option("--out", o.out, "Output file (timings go to <out>.timing.csv)");
  table->add_option("--initial", o.initial, "Initial guess: random or zero");
  table->add_option("--seed", o.seed, "Seed of the random initial guess");
  table->add_option("--damping", o.damping, "1D damping: mass or plain");

  auto* verify = app.add_subcommand("verify", "Numerical checks of the theoretical bounds");
  verify->add_option("--suite", o.suite,
                     "inverse, counterexample, approximation, smoothing, ca or all");
  verify->add_option("--dim", o.dim, "Space dimension for smoothing and ca checks");
  verify->add_option("--degrees", o.verify_degrees, "Spline degrees, e.g. 1-8");
  verify->add_option("--tau", o.tau, "Damping parameter");
  verify->add_option("--damping", o.damping, "1D damping: mass or plain");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (table->parsed())
      return run_table_command(o);
    return run_verify_command(o);
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFail;
  }
}
