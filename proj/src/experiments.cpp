#include "igamg/experiments.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <sstream>

#include "igamg/spectral.hpp"

namespace igamg {

Range parse_range(const std::string& text) {
  auto to_int = [&](const std::string& s) {
    std::size_t pos = 0;
    int v = 0;
    try {
      v = std::stoi(s, &pos);
    } catch (const std::exception&) {
      throw ConfigError("malformed range '" + text + "'");
    }
    if (pos != s.size())
      throw ConfigError("malformed range '" + text + "'");
    return v;
  };
  const auto dash = text.find('-', 1);
  Range r;
  if (dash == std::string::npos) {
    r.first = r.last = to_int(text);
  } else {
    r.first = to_int(text.substr(0, dash));
    r.last = to_int(text.substr(dash + 1));
  }
  if (r.last < r.first)
    throw ConfigError("empty range '" + text + "'");
  return r;
}

double default_tau(int dimension) { return dimension == 2 ? 0.08 : 0.14; }

void validate(const ExperimentConfig& cfg) {
  if (cfg.dimension != 1 && cfg.dimension != 2)
    throw ConfigError("--dim must be 1 or 2");
  if (cfg.degrees.last < cfg.degrees.first || cfg.degrees.first < 1)
    throw ConfigError("degree range must be non-empty and start at 1 or above");
  if (cfg.levels.last < cfg.levels.first || cfg.levels.first < 0)
    throw ConfigError("level range must be non-empty and non-negative");
  if (cfg.levels.last > 24)
    throw ConfigError("fine level too large");
  if (cfg.coarse_level && *cfg.coarse_level < 0)
    throw ConfigError("coarse level must be non-negative");
  if (!(cfg.tau > 0.0))
    throw ConfigError("tau must be positive");
  if (!(cfg.cycle.tol > 0.0 && cfg.cycle.tol < 1.0))
    throw ConfigError("tol must lie in (0, 1)");
  if (cfg.cycle.max_iter < 1)
    throw ConfigError("max-iter must be positive");
  if (cfg.cycle.pre_smooth < 0 || cfg.cycle.post_smooth < 0 ||
      cfg.cycle.pre_smooth + cfg.cycle.post_smooth < 1)
    throw ConfigError("need at least one smoothing step");
  if (cfg.solver == SolverKind::PcgMultigrid && cfg.cycle.pre_smooth != cfg.cycle.post_smooth)
    throw ConfigError("cg-mg needs equal pre- and post-smoothing steps");
}

Vector make_initial_guess(InitialGuess kind, Index size, std::uint64_t seed) {
  if (kind == InitialGuess::Zero)
    return Vector::Zero(size);
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Vector u(size);
  for (Index i = 0; i < size; ++i)
    u(i) = dist(gen);
  return u;
}

TableCell run_cell(const ExperimentConfig& cfg, int degree, int level) {
  TableCell cell;
  const int minimal = auto_coarse_level(degree);
  int coarse = cfg.coarse_level.value_or(minimal);
  if (cfg.cycle.cycle == CycleType::TwoGrid)
    coarse = level - 1;  // the coarse problem is solved exactly
  if (coarse < minimal || coarse >= level)
    return cell;

  const MgHierarchy h(cfg.dimension, degree, coarse, level, cfg.tau, cfg.damping);
  const Vector f = assemble_load(h.level(h.num_levels() - 1).space, cfg.dimension);
  const Vector u0 = make_initial_guess(cfg.initial, f.size(), cfg.seed);
  const SolveResult res = cfg.solver == SolverKind::Multigrid ? solve_mg(h, cfg.cycle, f, u0)
                                                              : solve_pcg(h, cfg.cycle, f, u0);
  cell.status = res.report.converged ? TableCell::Status::Converged
                                     : TableCell::Status::NotConverged;
  cell.iterations = res.report.iterations;
  cell.wall_time = res.report.wall_time;
  return cell;
}

ResultTable run_table(const ExperimentConfig& cfg) {
  validate(cfg);
  ResultTable t;
  t.max_iter = cfg.cycle.max_iter;
  for (int l = cfg.levels.last; l >= cfg.levels.first; --l)
    t.levels.push_back(l);
  for (int p = cfg.degrees.first; p <= cfg.degrees.last; ++p)
    t.degrees.push_back(p);
  for (int l : t.levels) {
    std::vector<TableCell> row;
    for (int p : t.degrees)
      row.push_back(run_cell(cfg, p, l));
    t.cells.push_back(std::move(row));
  }
  return t;
}

const TableCell& ResultTable::at(int level, int degree) const {
  for (std::size_t i = 0; i < levels.size(); ++i)
    if (levels[i] == level)
      for (std::size_t j = 0; j < degrees.size(); ++j)
        if (degrees[j] == degree)
          return cells[i][j];
  throw std::out_of_range("no table cell for level " + std::to_string(level) + ", degree " +
                          std::to_string(degree));
}

bool ResultTable::all_converged() const {
  for (const auto& row : cells)
    for (const auto& c : row)
      if (c.status == TableCell::Status::NotConverged)
        return false;
  return true;
}

std::string cell_text(const TableCell& cell, int max_iter) {
  switch (cell.status) {
  case TableCell::Status::Infeasible:
    return "-";
  case TableCell::Status::NotConverged:
    return ">" + std::to_string(max_iter);
  case TableCell::Status::Converged:
    break;
  }
  return std::to_string(cell.iterations);
}

std::string format_csv(const ResultTable& t) {
  std::ostringstream os;
  os << "level/degree";
  for (int p : t.degrees)
    os << ',' << p;
  os << '\n';
  for (std::size_t i = 0; i < t.levels.size(); ++i) {
    os << t.levels[i];
    for (const auto& c : t.cells[i])
      os << ',' << cell_text(c, t.max_iter);
    os << '\n';
  }
  return os.str();
}

std::string format_markdown(const ResultTable& t) {
  std::ostringstream os;
  os << "| l \\ p |";
  for (int p : t.degrees)
    os << ' ' << p << " |";
  os << "\n|---|";
  for (std::size_t j = 0; j < t.degrees.size(); ++j)
    os << "---|";
  os << '\n';
  for (std::size_t i = 0; i < t.levels.size(); ++i) {
    os << "| " << t.levels[i] << " |";
    for (const auto& c : t.cells[i])
      os << ' ' << cell_text(c, t.max_iter) << " |";
    os << '\n';
  }
  return os.str();
}

std::string format_timing_csv(const ResultTable& t) {
  std::ostringstream os;
  os << "level/degree";
  for (int p : t.degrees)
    os << ',' << p;
  os << '\n';
  char buf[32];
  for (std::size_t i = 0; i < t.levels.size(); ++i) {
    os << t.levels[i];
    for (const auto& c : t.cells[i]) {
      if (c.status == TableCell::Status::Infeasible) {
        os << ",-";
      } else {
        std::snprintf(buf, sizeof buf, "%.4f", c.wall_time);
        os << ',' << buf;
      }
    }
    os << '\n';
  }
  return os.str();
}

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream is(line);
  while (std::getline(is, item, sep)) {
    while (!item.empty() && (item.back() == '\r' || item.back() == ' '))
      item.pop_back();
    out.push_back(item);
  }
  return out;
}

int parse_int(const std::string& s) {
  std::size_t pos = 0;
  const int v = std::stoi(s, &pos);
  if (pos != s.size())
    throw std::invalid_argument("not an integer: '" + s + "'");
  return v;
}

} // namespace

ResultTable parse_csv(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  if (!std::getline(is, line))
    throw std::invalid_argument("empty table");
  const auto header = split(line, ',');
  if (header.empty() || header[0] != "level/degree")
    throw std::invalid_argument("table header must start with 'level/degree'");
  ResultTable t;
  for (std::size_t j = 1; j < header.size(); ++j)
    t.degrees.push_back(parse_int(header[j]));
  while (std::getline(is, line)) {
    if (line.empty())
      continue;
    const auto fields = split(line, ',');
    if (fields.size() != header.size())
      throw std::invalid_argument("row has " + std::to_string(fields.size()) + " fields, expected " +
                                  std::to_string(header.size()));
    t.levels.push_back(parse_int(fields[0]));
    std::vector<TableCell> row;
    for (std::size_t j = 1; j < fields.size(); ++j) {
      TableCell c;
      const std::string& f = fields[j];
      if (f == "-") {
        c.status = TableCell::Status::Infeasible;
      } else if (!f.empty() && f[0] == '>') {
        c.status = TableCell::Status::NotConverged;
        t.max_iter = parse_int(f.substr(1));
        c.iterations = t.max_iter;
      } else {
        c.status = TableCell::Status::Converged;
        c.iterations = parse_int(f);
      }
      row.push_back(c);
    }
    t.cells.push_back(std::move(row));
  }
  return t;
}

// ---------------------------------------------------------------------------

namespace {

VerifyLine make_line(std::string check, int p, Index n, double value, double bound, bool upper) {
  VerifyLine l{std::move(check), p, n, value, bound, upper, VerifyStatus::Fail, {}};
  const bool ok = upper ? value <= bound : value >= bound;
  l.status = ok ? VerifyStatus::Pass : VerifyStatus::Fail;
  return l;
}

VerifyLine skip_line(std::string check, int p, Index n, std::string why) {
  VerifyLine l{std::move(check), p, n, 0.0, 0.0, true, VerifyStatus::Skip, std::move(why)};
  return l;
}

template <class F>
void guarded(std::vector<VerifyLine>& out, const std::string& check, int p, Index n, F&& f) {
  try {
    f();
  } catch (const std::invalid_argument& e) {
    out.push_back(skip_line(check, p, n, e.what()));
  }
}

} // namespace

std::vector<VerifyLine> run_verify(const VerifyConfig& cfg) {
  static const char* suites[] = {"inverse", "counterexample", "approximation", "smoothing", "ca",
                                 "all"};
  bool known = false;
  for (const char* s : suites)
    known = known || cfg.suite == s;
  if (!known)
    throw ConfigError("unknown verification suite '" + cfg.suite + "'");
  if (cfg.dimension != 1 && cfg.dimension != 2)
    throw ConfigError("--dim must be 1 or 2");
  if (cfg.degrees.first < 1 || cfg.degrees.last < cfg.degrees.first)
    throw ConfigError("degree range must be non-empty and start at 1 or above");
  if (!(cfg.tau > 0.0))
    throw ConfigError("tau must be positive");

  const auto wants = [&](const char* s) { return cfg.suite == "all" || cfg.suite == s; };
  const double inv_bound = 2.0 * std::sqrt(3.0) + 1e-8;
  const double ap_bound = 2.0 * std::numbers::sqrt2 + 0.01;
  std::vector<VerifyLine> out;

  for (int p = cfg.degrees.first; p <= cfg.degrees.last; ++p) {
    if (wants("inverse")) {
      const Index n = 2 * (p + 1);
      guarded(out, "inverse_constrained", p, n, [&] {
        const auto r = verify_inverse_inequality(p, n);
        out.push_back(make_line("inverse_constrained", p, n, r.constrained, inv_bound, true));
        out.push_back(make_line("inverse_interior", p, n, r.interior, inv_bound, true));
      });
    }
    if (wants("counterexample")) {
      const Index n = 16;
      if (n <= p)
        out.push_back(skip_line("counterexample", p, n, "needs n > p"));
      else
        guarded(out, "counterexample", p, n, [&] {
          out.push_back(make_line("counterexample", p, n, verify_counterexample(p, n), p, false));
        });
    }
    if (wants("approximation")) {
      const Index n = 8;
      guarded(out, "approximation", p, n, [&] {
        out.push_back(make_line("approximation", p, n, verify_approximation_constant(p, n, 4),
                                ap_bound, true));
      });
    }
    if (wants("smoothing")) {
      const Index n = cfg.dimension == 1 ? 32 : 8;
      guarded(out, "smoothing", p, n, [&] {
        for (int nu = 1; nu <= 8; ++nu)
          out.push_back(make_line("smoothing_nu" + std::to_string(nu), p, n,
                                  measure_smoothing_constant(cfg.dimension, p, n, nu, cfg.tau,
                                                             cfg.damping),
                                  1.0 / cfg.tau + 1e-8, true));
        out.push_back(make_line("smoother_energy_norm", p, n,
                                smoother_energy_norm(cfg.dimension, p, n, cfg.tau, cfg.damping),
                                1.0 + 1e-10, true));
      });
    }
  }

  if (wants("ca")) {
    const Index n = cfg.dimension == 1 ? 32 : 8;
    const auto ca = [&](int p) { return measure_CA(cfg.dimension, p, n, cfg.tau, cfg.damping); };
    const double reference = ca(1);
    for (int p = cfg.degrees.first; p <= cfg.degrees.last; ++p)
      guarded(out, "approximation_property", p, n, [&] {
        VerifyLine l = make_line("approximation_property", p, n, ca(p),
                                 3.0 * reference, true);
        l.note = "bound is 3x the p=1 value";
        out.push_back(l);
      });
  }
  return out;
}

std::string format_verify_line(const VerifyLine& l) {
  char buf[256];
  const char* status = l.status == VerifyStatus::Pass   ? "PASS"
                       : l.status == VerifyStatus::Fail ? "FAIL"
                                                        : "SKIP";
  if (l.status == VerifyStatus::Skip) {
    std::snprintf(buf, sizeof buf, "%-24s p=%-2d n=%-4ld %s (%s)", l.check.c_str(), l.degree,
                  static_cast<long>(l.intervals), status, l.note.c_str());
  } else {
    std::snprintf(buf, sizeof buf, "%-24s p=%-2d n=%-4ld value=%-12.6g bound%s%-12.6g %s",
                  l.check.c_str(), l.degree, static_cast<long>(l.intervals), l.value,
                  l.upper ? "<=" : ">=", l.bound, status);
  }
  return buf;
}

} // namespace igamg
