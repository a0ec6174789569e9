#include "adirac/dirac.hpp"

#include <cmath>
#include <sstream>

namespace adirac {

Matrix BlockSignature::J() const {
  Matrix j = Matrix::Zero(m(), m());
  for (int i = 0; i < m1; ++i) j(i, i) = 1.0;
  for (int i = m1; i < m(); ++i) j(i, i) = -1.0;
  return j;
}

namespace {

/// Cubic Lagrange interpolation of uniformly spaced samples; the stencil is
/// clamped near the ends. Falls back to linear when fewer than 4 nodes exist.
Matrix interpolate_samples(const std::vector<Matrix>& samples, const Grid& grid, double x) {
  const double h = grid.h();
  const int n = grid.n;
  if (n < 4) {
    const int j = std::min(std::max(static_cast<int>(std::floor(x / h)), 0), n - 2);
    const double t = (x - j * h) / h;
    return (1.0 - t) * samples[j] + t * samples[j + 1];
  }
  int base = static_cast<int>(std::floor(x / h)) - 1;
  base = std::min(std::max(base, 0), n - 4);
  const double t = (x - base * h) / h;
  double w[4];
  // Lagrange weights on stencil offsets {0,1,2,3}.
  w[0] = -(t - 1.0) * (t - 2.0) * (t - 3.0) / 6.0;
  w[1] = t * (t - 2.0) * (t - 3.0) / 2.0;
  w[2] = -t * (t - 1.0) * (t - 3.0) / 2.0;
  w[3] = t * (t - 1.0) * (t - 2.0) / 6.0;
  Matrix out = w[0] * samples[base];
  for (int k = 1; k < 4; ++k) out += w[k] * samples[base + k];
  return out;
}

}  // namespace

Matrix Potential::value(double x) const {
  const int m1 = signature.m1, m2 = signature.m2;
  const double tol = 1e-12 * std::max(1.0, grid.T);
  if (x < -tol || x > support_bound + tol) return Matrix::Zero(m1, m2);
  if (callback) return callback(std::min(std::max(x, 0.0), support_bound));
  if (grid.contains_node(x)) return samples[grid.node_index(x)];
  return interpolate_samples(samples, grid, x);
}

Matrix Potential::derivative_at_node(int j) const {
  if (!derivative_samples.empty()) return derivative_samples[j];
  const double h = grid.h();
  const int n = grid.n;
  if (j > 0 && j < n - 1) return (samples[j + 1] - samples[j - 1]) / (2.0 * h);
  if (j == 0) return (-3.0 * samples[0] + 4.0 * samples[1] - samples[2]) / (2.0 * h);
  return (3.0 * samples[n - 1] - 4.0 * samples[n - 2] + samples[n - 3]) / (2.0 * h);
}

Matrix Potential::second_derivative_at_node(int j) const {
  const double h2 = grid.h() * grid.h();
  const int n = grid.n;
  if (n < 4) return Matrix::Zero(signature.m1, signature.m2);
  if (j > 0 && j < n - 1) return (samples[j + 1] - 2.0 * samples[j] + samples[j - 1]) / h2;
  if (j == 0) return (2.0 * samples[0] - 5.0 * samples[1] + 4.0 * samples[2] - samples[3]) / h2;
  return (2.0 * samples[n - 1] - 5.0 * samples[n - 2] + 4.0 * samples[n - 3] - samples[n - 4]) / h2;
}

double Potential::max_norm() const {
  double c = 0.0;
  for (const auto& s : samples) c = std::max(c, op_norm(s));
  return c;
}

Potential make_potential(const BlockSignature& sig, const Grid& grid, const PotentialFn& v,
                         const PotentialFn& dv) {
  Potential p;
  p.signature = sig;
  p.grid = grid;
  p.support_bound = grid.T;
  p.callback = v;
  p.samples.reserve(grid.n);
  for (int j = 0; j < grid.n; ++j) {
    Matrix vj = v(grid.node(j));
    if (vj.rows() != sig.m1 || vj.cols() != sig.m2)
      throw validation_error("make_potential: callback dimensions do not match the signature");
    if (!all_finite(vj)) throw validation_error("make_potential: non-finite sample");
    p.samples.push_back(std::move(vj));
  }
  if (dv) {
    p.derivative_samples.reserve(grid.n);
    for (int j = 0; j < grid.n; ++j) p.derivative_samples.push_back(dv(grid.node(j)));
  }
  return p;
}

Potential make_potential_from_samples(const BlockSignature& sig, const Grid& grid,
                                      std::vector<Matrix> samples) {
  if (static_cast<int>(samples.size()) != grid.n)
    throw validation_error("make_potential_from_samples: expected one sample per node");
  for (const auto& s : samples) {
    if (s.rows() != sig.m1 || s.cols() != sig.m2)
      throw validation_error("make_potential_from_samples: sample dimensions do not match the signature");
    if (!all_finite(s)) throw validation_error("make_potential_from_samples: non-finite sample");
  }
  Potential p;
  p.signature = sig;
  p.grid = grid;
  p.support_bound = grid.T;
  p.samples = std::move(samples);
  return p;
}

Potential constant_potential(double c, double a, int n) {
  const Matrix v = (Matrix(1, 1) << Complex(0.0, c)).finished();
  return make_potential(BlockSignature{1, 1}, make_uniform_grid(a, n), [v](double) { return v; },
                        [](double) { return Matrix::Zero(1, 1); });
}

Matrix assemble_v_matrix(const Potential& potential, double x) {
  const int m1 = potential.signature.m1, m2 = potential.signature.m2;
  const Matrix v = potential.value(x);
  Matrix V = Matrix::Zero(m1 + m2, m1 + m2);
  V.topRightCorner(m1, m2) = v;
  V.bottomLeftCorner(m2, m1) = v.adjoint();
  return V;
}

MatrixPath fundamental_solution(const Potential& potential, Complex z, const Grid& grid,
                                double ell) {
  const int m1 = potential.signature.m1, m2 = potential.signature.m2;
  const int m = m1 + m2;
  const int start = grid.node_index(ell, "normalization point");

  const auto rhs = [&](double x, const Matrix& u) -> Matrix {
    // i(zJ + JV)u with JV = [[0, v], [-v*, 0]].
    const Matrix v = potential.value(x);
    Matrix a = Matrix::Zero(m, m);
    for (int i = 0; i < m1; ++i) a(i, i) = kI * z;
    for (int i = m1; i < m; ++i) a(i, i) = -kI * z;
    a.topRightCorner(m1, m2) = kI * v;
    a.bottomLeftCorner(m2, m1) = -kI * v.adjoint();
    return a * u;
  };

  MatrixPath path;
  path.grid = grid;
  path.z = z;
  path.normalization_index = start;
  path.values.assign(grid.n, Matrix());
  path.values[start] = Matrix::Identity(m, m);

  const double h = grid.h();
  const auto guard = [&](const Matrix& u, int j) {
    if (!all_finite(u) || u.cwiseAbs().maxCoeff() > 1e150) {
      std::ostringstream msg;
      msg << "fundamental_solution: overflow at x=" << grid.node(j) << " (Im z * T = "
          << z.imag() * grid.T << " too large for the normalization at x=" << ell << ")";
      throw numerical_error(msg.str());
    }
  };
  for (int j = start; j + 1 < grid.n; ++j) {
    path.values[j + 1] = rk4_step(rhs, path.values[j], grid.node(j), h);
    guard(path.values[j + 1], j + 1);
  }
  for (int j = start; j > 0; --j) {
    path.values[j - 1] = rk4_step(rhs, path.values[j], grid.node(j), -h);
    guard(path.values[j - 1], j - 1);
  }
  return path;
}

Potential shift_potential(const Potential& potential, double ell) {
  const int idx = potential.grid.node_index(ell, "shift");
  const double h = potential.grid.h();
  const int n = potential.grid.n;
  Potential shifted;
  shifted.signature = potential.signature;
  if (idx == n - 1) {
    // Full shift: zero potential on a degenerate support.
    shifted.grid = Grid{h, 2};
    shifted.support_bound = 0.0;
    shifted.samples.assign(2, Matrix::Zero(potential.signature.m1, potential.signature.m2));
    return shifted;
  }
  shifted.grid = Grid{potential.grid.T - ell, n - idx};
  shifted.support_bound = std::max(potential.support_bound - ell, 0.0);
  shifted.samples.assign(potential.samples.begin() + idx, potential.samples.end());
  if (!potential.derivative_samples.empty())
    shifted.derivative_samples.assign(potential.derivative_samples.begin() + idx,
                                      potential.derivative_samples.end());
  if (potential.callback) {
    auto base = potential.callback;
    const double bound = shifted.support_bound;
    shifted.callback = [base, ell, bound](double x) {
      return base(std::min(x, bound) + ell);
    };
  }
  return shifted;
}

Complex branch_sqrt_upper(Complex z, double lambda) {
  Complex q = std::sqrt(z * z - lambda);
  if (q.imag() < 0.0) q = -q;
  return q;
}

Matrix closed_form_fundamental_constant(double c, double a, Complex z, double x) {
  if (!(c > 0.0)) throw validation_error("closed_form_fundamental_constant: c must be positive");
  if (std::abs(z * z - Complex(c * c)) < 1e-14 * (std::norm(z) + c * c))
    throw validation_error("closed_form_fundamental_constant: branch degeneracy z^2 = c^2");
  const Complex q = branch_sqrt_upper(z, c * c);

  // Entries of K(z) e^{i x D(z)} K(z)^{-1} written out; the 1/c factors cancel.
  const auto body = [&](double xi) -> Matrix {
    const Complex ep = std::exp(kI * xi * q);
    const Complex em = std::exp(-kI * xi * q);
    Matrix u(2, 2);
    u(0, 0) = ((z + q) * ep - (z - q) * em) / (2.0 * q);
    u(0, 1) = kI * c * (ep - em) / (2.0 * q);
    u(1, 0) = u(0, 1);
    u(1, 1) = ((z + q) * em - (z - q) * ep) / (2.0 * q);
    return u;
  };

  Matrix u = (x <= a) ? body(x) : body(a);
  if (x > a) {
    u.row(0) *= std::exp(kI * (x - a) * z);
    u.row(1) *= std::exp(-kI * (x - a) * z);
  }
  if (!all_finite(u)) throw numerical_error("closed_form_fundamental_constant: overflow");
  return u;
}

}  // namespace adirac
