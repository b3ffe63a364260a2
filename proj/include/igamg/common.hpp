#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace igamg {

using Index = Eigen::Index;
using Vector = Eigen::VectorXd;
using DenseMatrix = Eigen::MatrixXd;
using RowMajorMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Raised by every Cholesky routine when a pivot is not strictly positive.
class NotSpdError : public std::runtime_error {
public:
  NotSpdError(const std::string& what_matrix, Index pivot)
      : std::runtime_error(what_matrix + " is not SPD (pivot " + std::to_string(pivot) + ")"),
        pivot_(pivot) {}

  Index pivot() const noexcept { return pivot_; }

private:
  Index pivot_;
};

class DimensionError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

} // namespace igamg
