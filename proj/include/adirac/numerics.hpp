#pragma once

#include <functional>
#include <vector>

#include "adirac/types.hpp"

namespace adirac {

/// Uniform grid x_j = j*h on [0, T], h = T/(n-1).
struct Grid {
  double T = 0.0;
  int n = 0;

  double h() const { return T / (n - 1); }
  double node(int j) const { return j * h(); }

  /// Index of the node equal to x; throws if x is off-grid.
  int node_index(double x, const char* what = "point") const;

  /// Nearest node index, clamped to [0, n-1].
  int nearest_index(double x) const;

  bool contains_node(double x) const;
};

Grid make_uniform_grid(double T, int n);

/// Composite trapezoid rule over all nodes of `grid`, one sample per node.
/// Exact for affine integrands.
Matrix trapezoid_integrate(const std::vector<Matrix>& samples, const Grid& grid);

/// Trapezoid weights h*(1/2, 1, ..., 1, 1/2) for the first `count` nodes
/// of a grid with spacing h (the rule on [0, x_{count-1}]).
std::vector<double> trapezoid_weights(double h, int count);

using DerivativeFn = std::function<Matrix(double, const Matrix&)>;

/// One classical fourth-order Runge-Kutta update from x to x+h.
Matrix rk4_step(const DerivativeFn& derivative, const Matrix& state, double x, double h);

/// Solve A X = B by partial-pivot LU. Throws numerical_error with the
/// offending pivot magnitude when A is singular to working precision.
Matrix solve_dense(const Matrix& matrix, const Matrix& rhs);

}  // namespace adirac
