#pragma once

#include <vector>

#include "igamg/common.hpp"

namespace igamg {

/// Uniform open-knot B-spline space of maximum smoothness on (0,1).
///
/// Level `l` splits the unit interval into n = n0 * 2^l spans; the space has
/// dimension m = n + p and its knot vector repeats 0 and 1 exactly p+1 times.
class SplineSpace {
public:
  SplineSpace(int degree, int level, int coarse_intervals = 1);

  int degree() const noexcept { return degree_; }
  int level() const noexcept { return level_; }
  Index intervals() const noexcept { return intervals_; }
  double mesh_size() const noexcept { return 1.0 / static_cast<double>(intervals_); }
  Index dim() const noexcept { return intervals_ + degree_; }
  const std::vector<double>& knots() const noexcept { return knots_; }

  /// Index of the knot span containing x; interior knots belong to the span on
  /// their right, x = 1 to the last span.
  Index span_of(double x) const;

  /// Left end of knot span `span` (0-based).
  double span_begin(Index span) const { return static_cast<double>(span) * mesh_size(); }

private:
  int degree_;
  int level_;
  Index intervals_;
  std::vector<double> knots_;
};

SplineSpace build_space(int degree, int level, int coarse_intervals = 1);

struct BasisValues {
  Index first_index = 0;        // global index of values[0]
  std::vector<double> values;   // p+1 entries
};

/// Rows are derivative orders 0..max_order, columns the p+1 active functions.
struct BasisDerivatives {
  Index first_index = 0;
  DenseMatrix values;
};

BasisValues eval_basis(const SplineSpace& space, double x);
BasisDerivatives eval_basis_derivatives(const SplineSpace& space, double x, int max_order);

/// Boundary functions are the first and last p basis functions, listed
/// left-ascending then right-ascending. Everything else is interior.
struct IndexSplit {
  std::vector<Index> boundary;
  std::vector<Index> interior;
};

IndexSplit index_split(const SplineSpace& space);

} // namespace igamg
