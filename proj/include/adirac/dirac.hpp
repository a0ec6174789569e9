#pragma once

#include <functional>
#include <vector>

#include "adirac/numerics.hpp"
#include "adirac/types.hpp"

namespace adirac {

/// Block sizes of the system y' = i(zJ + JV)y with
/// J = diag(I_{m1}, -I_{m2}) and V = [[0, v], [v*, 0]].
struct BlockSignature {
  int m1 = 1;
  int m2 = 1;

  int m() const { return m1 + m2; }
  Matrix J() const;
};

using PotentialFn = std::function<Matrix(double)>;

/// Sampled m1 x m2 potential v on [0, grid.T], compactly supported in
/// [0, support_bound]. Off-node values come from the analytic callback when
/// one is attached, otherwise from cubic interpolation of the samples.
struct Potential {
  BlockSignature signature;
  Grid grid;
  double support_bound = 0.0;
  std::vector<Matrix> samples;
  std::vector<Matrix> derivative_samples;  // optional; finite-differenced when absent
  PotentialFn callback;                    // optional analytic v(x)

  Matrix value(double x) const;
  const Matrix& value_at_node(int j) const { return samples[j]; }
  Matrix derivative_at_node(int j) const;
  Matrix second_derivative_at_node(int j) const;

  /// c = max_j ||v(x_j)|| in the spectral norm.
  double max_norm() const;
};

Potential make_potential(const BlockSignature& sig, const Grid& grid, const PotentialFn& v,
                         const PotentialFn& dv = nullptr);
Potential make_potential_from_samples(const BlockSignature& sig, const Grid& grid,
                                      std::vector<Matrix> samples);

/// Constant scalar potential v = i*c on [0, a], sampled with n nodes.
Potential constant_potential(double c, double a, int n);

/// Fundamental solution samples u(x_j, z) along a grid, normalized to I_m
/// at the node x = ell.
struct MatrixPath {
  Grid grid;
  Complex z;
  int normalization_index = 0;
  std::vector<Matrix> values;

  const Matrix& at(int j) const { return values[j]; }
};

/// V(x) = [[0, v(x)], [v(x)*, 0]]; zero outside the support.
Matrix assemble_v_matrix(const Potential& potential, double x);

/// Integrates u' = i(zJ + JV(x))u with u(ell) = I_m by RK4 over `grid`
/// (forward to grid.T and backward to 0, so every node is populated).
MatrixPath fundamental_solution(const Potential& potential, Complex z, const Grid& grid,
                                double ell);

/// Shifted potential v(. + ell) with support bound a - ell; ell must be a node.
Potential shift_potential(const Potential& potential, double ell);

/// Branch (z^2 - lambda)^{1/2} with positive imaginary part.
Complex branch_sqrt_upper(Complex z, double lambda);

/// Fundamental solution of the scalar system with v = i*c on [0, a],
/// evaluated at x (2x2). Validation error at the branch degeneracy z^2 = c^2.
Matrix closed_form_fundamental_constant(double c, double a, Complex z, double x);

}  // namespace adirac
