#include "igamg/multigrid.hpp"

#include <chrono>
#include <cmath>

namespace igamg {

int auto_coarse_level(int degree) {
  int level = 0;
  while ((Index{1} << level) < degree + 1)
    ++level;
  return std::max(0, level - 1);
}

MgHierarchy::MgHierarchy(int dimension, int degree, int coarse_level, int fine_level, double tau,
                         Damping damping)
    : dim_(dimension), degree_(degree), coarse_level_(coarse_level), tau_(tau) {
  if (dimension != 1 && dimension != 2)
    throw std::invalid_argument("dimension must be 1 or 2, got " + std::to_string(dimension));
  if (degree < 1)
    throw std::invalid_argument("spline degree must be at least 1");
  if (coarse_level < 0 || fine_level <= coarse_level)
    throw std::invalid_argument("fine level (" + std::to_string(fine_level) +
                                ") must exceed coarse level (" + std::to_string(coarse_level) +
                                ")");
  if (!(tau > 0.0))
    throw std::invalid_argument("damping parameter tau must be positive");
  const int minimal = auto_coarse_level(degree);
  if (coarse_level < minimal)
    throw std::invalid_argument("coarse level too coarse for degree p=" + std::to_string(degree) +
                                ": minimal admissible coarse level is " +
                                std::to_string(minimal));

  for (int l = coarse_level; l <= fine_level; ++l) {
    SplineSpace space(degree, l);
    Discretization1D disc = assemble_1d(space);
    MgLevel level{space, disc, std::nullopt, std::nullopt, std::nullopt, std::nullopt};
    if (dim_ == 2)
      level.op2d.emplace(disc);
    if (l > coarse_level) {
      level.prolongation.emplace(build_prolongation(levels_.back().space, space));
      if (dim_ == 1)
        level.smoother1d.emplace(disc, SmootherConfig{tau, damping, true});
      else
        level.smoother2d.emplace(disc, tau);
    }
    levels_.push_back(std::move(level));
  }

  if (dim_ == 1)
    coarse_banded_.emplace(levels_.front().disc.system, "coarse system matrix");
  else
    coarse_dense_.emplace(levels_.front().op2d->to_dense(), "coarse system matrix");
}

Index MgHierarchy::size(int k) const {
  const Index m = level(k).space.dim();
  return dim_ == 1 ? m : m * m;
}

Vector MgHierarchy::apply_operator(int k, const Vector& x) const {
  const MgLevel& lv = level(k);
  return dim_ == 1 ? Vector(lv.disc.system * x) : lv.op2d->apply(x);
}

void MgHierarchy::smooth(int k, Vector& u, Vector& r) const {
  const MgLevel& lv = level(k);
  if (dim_ == 1)
    lv.smoother1d->step(lv.disc.system, u, r);
  else
    lv.smoother2d->step(*lv.op2d, u, r);
}

Vector MgHierarchy::prolong(int k, const Vector& coarse) const {
  const Prolongation& p = *level(k).prolongation;
  return dim_ == 1 ? igamg::prolong(p, coarse) : prolong_2d(p, coarse);
}

Vector MgHierarchy::restrict(int k, const Vector& fine) const {
  const Prolongation& p = *level(k).prolongation;
  return dim_ == 1 ? igamg::restrict(p, fine) : restrict_2d(p, fine);
}

Vector MgHierarchy::coarse_solve(const Vector& f) const {
  return dim_ == 1 ? coarse_banded_->solve(f) : coarse_dense_->solve(f);
}

DenseMatrix MgHierarchy::operator_dense(int k) const {
  const MgLevel& lv = level(k);
  return dim_ == 1 ? lv.disc.system.to_dense() : lv.op2d->to_dense();
}

MgHierarchy build_hierarchy(int dimension, int degree, int coarse_level, int fine_level,
                            double tau, Damping damping) {
  return MgHierarchy(dimension, degree, coarse_level, fine_level, tau, damping);
}

// ---------------------------------------------------------------------------

void mg_cycle(const MgHierarchy& h, const CycleConfig& cfg, int k, Vector& u, Vector& r) {
  if (k < 0 || k >= h.num_levels())
    throw std::out_of_range("cycle level " + std::to_string(k) + " outside hierarchy");
  if (k == 0) {
    const Vector e = h.coarse_solve(r);
    u += e;
    r -= h.apply_operator(0, e);
    return;
  }
  if (cfg.cycle == CycleType::TwoGrid && h.num_levels() != 2)
    throw std::invalid_argument("two-grid cycle needs a hierarchy with exactly two levels");

  for (int i = 0; i < cfg.pre_smooth; ++i)
    h.smooth(k, u, r);

  Vector rc = h.restrict(k, r);
  Vector ec = Vector::Zero(rc.size());
  const int visits = (cfg.cycle == CycleType::W && k > 1) ? 2 : 1;
  for (int i = 0; i < visits; ++i)
    mg_cycle(h, cfg, k - 1, ec, rc);
  const Vector e = h.prolong(k, ec);
  u += e;
  r -= h.apply_operator(k, e);

  for (int i = 0; i < cfg.post_smooth; ++i)
    h.smooth(k, u, r);
}

void mg_cycle(const MgHierarchy& h, const CycleConfig& cfg, Vector& u, const Vector& f) {
  const int k = h.num_levels() - 1;
  Vector r = f - h.apply_operator(k, u);
  mg_cycle(h, cfg, k, u, r);
}

namespace {

void check_config(const CycleConfig& cfg) {
  if (cfg.pre_smooth < 0 || cfg.post_smooth < 0 || cfg.pre_smooth + cfg.post_smooth < 1)
    throw std::invalid_argument("need a non-negative number of smoothing steps, at least one");
  if (!(cfg.tol > 0.0 && cfg.tol < 1.0))
    throw std::invalid_argument("tolerance must lie in (0, 1)");
  if (cfg.max_iter < 1)
    throw std::invalid_argument("max_iter must be positive");
}

Vector initial_guess(const Vector& u0, Index n) {
  if (u0.size() == 0)
    return Vector::Zero(n);
  if (u0.size() != n)
    throw DimensionError("initial guess has length " + std::to_string(u0.size()) +
                         ", expected " + std::to_string(n));
  return u0;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

} // namespace

SolveResult solve_mg(const MgHierarchy& h, const CycleConfig& cfg, const Vector& f,
                     const Vector& u0) {
  check_config(cfg);
  const auto start = std::chrono::steady_clock::now();
  const int k = h.num_levels() - 1;
  if (f.size() != h.size(k))
    throw DimensionError("right-hand side has wrong length");

  SolveResult res{initial_guess(u0, f.size()), {}};
  Vector r = f - h.apply_operator(k, res.u);
  const double r0 = r.norm();
  res.report.residual_history.push_back(r0);
  double rn = r0;
  while (rn > cfg.tol * r0 && res.report.iterations < cfg.max_iter) {
    mg_cycle(h, cfg, k, res.u, r);
    r = f - h.apply_operator(k, res.u);  // guards against drift in the updated residual
    rn = r.norm();
    res.report.residual_history.push_back(rn);
    ++res.report.iterations;
  }
  res.report.converged = rn <= cfg.tol * r0;
  res.report.wall_time = seconds_since(start);
  return res;
}

SolveResult solve_pcg(const LinearMap& apply_a, const LinearMap& precondition, const Vector& f,
                      const Vector& u0, double tol, int max_iter) {
  const auto start = std::chrono::steady_clock::now();
  SolveResult res{initial_guess(u0, f.size()), {}};
  Vector r = f - apply_a(res.u);
  const double r0 = r.norm();
  res.report.residual_history.push_back(r0);
  double rn = r0;
  if (rn > tol * r0) {
    Vector z = precondition(r);
    Vector d = z;
    double rz = r.dot(z);
    while (res.report.iterations < max_iter) {
      const Vector ad = apply_a(d);
      const double alpha = rz / d.dot(ad);
      res.u += alpha * d;
      r -= alpha * ad;
      rn = r.norm();
      res.report.residual_history.push_back(rn);
      ++res.report.iterations;
      if (rn <= tol * r0)
        break;
      z = precondition(r);
      const double rz_new = r.dot(z);
      d = z + (rz_new / rz) * d;
      rz = rz_new;
    }
  }
  res.report.converged = rn <= tol * r0;
  res.report.wall_time = seconds_since(start);
  return res;
}

Vector mg_precondition(const MgHierarchy& h, const CycleConfig& cfg, const Vector& r) {
  Vector e = Vector::Zero(r.size());
  Vector res = r;
  mg_cycle(h, cfg, h.num_levels() - 1, e, res);
  return e;
}

SolveResult solve_pcg(const MgHierarchy& h, const CycleConfig& cfg, const Vector& f,
                      const Vector& u0) {
  check_config(cfg);
  if (cfg.pre_smooth != cfg.post_smooth)
    throw std::invalid_argument("CG needs a symmetric cycle (pre_smooth == post_smooth)");
  const int k = h.num_levels() - 1;
  if (f.size() != h.size(k))
    throw DimensionError("right-hand side has wrong length");
  return solve_pcg([&](const Vector& x) { return h.apply_operator(k, x); },
                   [&](const Vector& x) { return mg_precondition(h, cfg, x); }, f, u0, cfg.tol,
                   cfg.max_iter);
}

} // namespace igamg
