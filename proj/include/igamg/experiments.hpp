#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "igamg/multigrid.hpp"

namespace igamg {

class ConfigError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

enum class SolverKind { Multigrid, PcgMultigrid };
enum class InitialGuess { Random, Zero };
enum class OutputFormat { Csv, Markdown };

struct Range {
  int first = 1;
  int last = 1;
};

/// Parses "a-b" or "a"; throws ConfigError on malformed or empty ranges.
Range parse_range(const std::string& text);

struct ExperimentConfig {
  int dimension = 1;
  Range degrees{1, 15};
  Range levels{10, 12};
  std::optional<int> coarse_level;  // empty: automatic rule
  CycleConfig cycle;
  SolverKind solver = SolverKind::Multigrid;
  double tau = 0.14;
  Damping damping = Damping::MassOnly;
  InitialGuess initial = InitialGuess::Random;
  std::uint64_t seed = 0;
  OutputFormat format = OutputFormat::Csv;
  std::string output_path;  // empty: standard output
};

/// Default damping parameter per dimension.
double default_tau(int dimension);

void validate(const ExperimentConfig& cfg);

struct TableCell {
  enum class Status { Infeasible, Converged, NotConverged };
  Status status = Status::Infeasible;
  int iterations = 0;
  double wall_time = 0.0;

  bool operator==(const TableCell& o) const {
    return status == o.status && (status == Status::Infeasible || iterations == o.iterations);
  }
};

/// Rows are fine levels in descending order, columns ascending degrees.
struct ResultTable {
  std::vector<int> levels;
  std::vector<int> degrees;
  std::vector<std::vector<TableCell>> cells;
  int max_iter = 500;

  const TableCell& at(int level, int degree) const;
  bool all_converged() const;
};

/// Seeded initial guess shared by the table drivers (uniform on [-1, 1]).
Vector make_initial_guess(InitialGuess kind, Index size, std::uint64_t seed);

/// Solves one (degree, fine level) cell; infeasible when the coarse level is
/// not below the fine level or is too coarse for the degree.
TableCell run_cell(const ExperimentConfig& cfg, int degree, int level);

ResultTable run_table(const ExperimentConfig& cfg);

std::string cell_text(const TableCell& cell, int max_iter);
std::string format_csv(const ResultTable& t);
std::string format_markdown(const ResultTable& t);
std::string format_timing_csv(const ResultTable& t);
ResultTable parse_csv(const std::string& text);

// ---------------------------------------------------------------------------
// Verification suites.

enum class VerifyStatus { Pass, Fail, Skip };

struct VerifyLine {
  std::string check;
  int degree = 0;
  Index intervals = 0;
  double value = 0.0;
  double bound = 0.0;
  bool upper = true;  // value <= bound when true, value >= bound otherwise
  VerifyStatus status = VerifyStatus::Skip;
  std::string note;
};

struct VerifyConfig {
  std::string suite = "all";  // inverse | counterexample | approximation | smoothing | ca | all
  int dimension = 1;
  Range degrees{1, 8};
  double tau = 0.14;
  Damping damping = Damping::MassOnly;
};

std::vector<VerifyLine> run_verify(const VerifyConfig& cfg);
std::string format_verify_line(const VerifyLine& line);

} // namespace igamg
