#include "adirac/weyl.hpp"

#include <cmath>
#include <sstream>

namespace adirac {

namespace {
constexpr double kOdePhaseCap = 0.15;  // target bound on h_ode * |z|
}

int ode_refinement(const Grid& grid, Complex z) {
  const double phase = grid.h() * std::abs(z);
  return std::max(1, static_cast<int>(std::ceil(phase / kOdePhaseCap)));
}

WeylSample weyl_truncated(const Potential& potential, Complex z, int ode_refine) {
  if (!(z.imag() > 0.0))
    throw validation_error("weyl_truncated: requires Im z > 0");
  const int m1 = potential.signature.m1, m2 = potential.signature.m2;
  const double a = potential.support_bound;
  if (a <= 0.0) return WeylSample{z, Matrix::Zero(m2, m1)};

  const int idx_a = potential.grid.node_index(a, "support bound");
  if (ode_refine <= 0) ode_refine = ode_refinement(potential.grid, z);
  const Grid ode_grid{a, idx_a * ode_refine + 1};

  const MatrixPath path = fundamental_solution(potential, z, ode_grid, 0.0);
  const Matrix& ua = path.values.back();
  const Matrix u21 = ua.bottomLeftCorner(m2, m1);
  const Matrix u22 = ua.bottomRightCorner(m2, m2);
  try {
    return WeylSample{z, Matrix(-solve_dense(u22, u21))};
  } catch (const numerical_error& e) {
    std::ostringstream msg;
    msg << "weyl_truncated: u22(a,z) singular at z=(" << z.real() << "," << z.imag()
        << "); " << e.what();
    throw numerical_error(msg.str());
  }
}

WeylSample weyl_transfer(const WeylSample& phi0, const Matrix& u_at_ell) {
  const int m1 = static_cast<int>(phi0.phi.cols());
  const int m2 = static_cast<int>(phi0.phi.rows());
  if (u_at_ell.rows() != m1 + m2 || u_at_ell.cols() != m1 + m2)
    throw validation_error("weyl_transfer: transfer matrix dimensions do not match phi");
  const Matrix num = u_at_ell.bottomLeftCorner(m2, m1) + u_at_ell.bottomRightCorner(m2, m2) * phi0.phi;
  const Matrix den = u_at_ell.topLeftCorner(m1, m1) + u_at_ell.topRightCorner(m1, m2) * phi0.phi;
  try {
    // num * den^{-1} via the transposed system.
    Matrix phi = solve_dense(den.transpose(), num.transpose()).transpose();
    return WeylSample{phi0.z, std::move(phi)};
  } catch (const numerical_error&) {
    throw numerical_error("weyl_transfer: singular denominator u11 + u12 phi0 (invalid Weyl data)");
  }
}

Matrix riccati_derivative(const WeylSample& phi, const Matrix& v_at_ell, Complex z) {
  const auto m2 = phi.phi.rows();
  const auto m1 = phi.phi.cols();
  if (v_at_ell.rows() != m1 || v_at_ell.cols() != m2)
    throw validation_error("riccati_derivative: v must be m1 x m2 against an m2 x m1 phi");
  return -kI * (phi.phi * v_at_ell * phi.phi + v_at_ell.adjoint() + 2.0 * z * phi.phi);
}

WeylSample weyl_constant_closed_form(double c, double a, Complex z) {
  if (!(c > 0.0)) throw validation_error("weyl_constant_closed_form: c must be positive");
  if (!(a >= 0.0)) throw validation_error("weyl_constant_closed_form: a must be nonnegative");
  if (!(z.imag() > 0.0)) throw validation_error("weyl_constant_closed_form: requires Im z > 0");
  if (std::abs(z * z - Complex(c * c)) < 1e-14 * (std::norm(z) + c * c))
    throw validation_error("weyl_constant_closed_form: branch degeneracy z^2 = c^2");
  const Complex q = branch_sqrt_upper(z, c * c);
  const Complex e = std::exp(2.0 * kI * a * q);
  const Complex den = z + q - (z - q) * e;
  if (std::abs(den) < 1e-14 * std::abs(z + q))
    throw numerical_error("weyl_constant_closed_form: vanishing denominator");
  Matrix phi(1, 1);
  phi(0, 0) = kI * c * (1.0 - e) / den;
  return WeylSample{z, std::move(phi)};
}

namespace {

/// Suffix cumulative trapezoid S(t_j) = int_{t_j}^{a} f(x) dx on node samples.
std::vector<Matrix> suffix_cumtrap(const std::vector<Matrix>& f, double h) {
  const int n = static_cast<int>(f.size());
  std::vector<Matrix> s(n);
  s[n - 1] = Matrix::Zero(f[0].rows(), f[0].cols());
  for (int j = n - 2; j >= 0; --j) s[j] = s[j + 1] + (0.5 * h) * (f[j] + f[j + 1]);
  return s;
}

/// Prefix cumulative trapezoid P(t_j) = int_0^{t_j} f(x) dx on node samples.
std::vector<Matrix> prefix_cumtrap(const std::vector<Matrix>& f, double h) {
  const int n = static_cast<int>(f.size());
  std::vector<Matrix> p(n);
  p[0] = Matrix::Zero(f[0].rows(), f[0].cols());
  for (int j = 1; j < n; ++j) p[j] = p[j - 1] + (0.5 * h) * (f[j - 1] + f[j]);
  return p;
}

}  // namespace

WeylSample weyl_neumann_series(const Potential& potential, Complex z, int kmax) {
  if (kmax < 0) throw validation_error("weyl_neumann_series: kmax must be nonnegative");
  if (kmax > 3) throw validation_error("weyl_neumann_series: kmax capped at 3");
  const double c = potential.max_norm();
  const double a = potential.support_bound;
  const double required = std::max(std::sqrt(2.0) * c, 0.5 * a * c * c);
  if (z.imag() < required) {
    std::ostringstream msg;
    msg << "weyl_neumann_series: Im z = " << z.imag()
        << " outside the convergence region; required Im z >= " << required;
    throw validation_error(msg.str());
  }

  const int m1 = potential.signature.m1, m2 = potential.signature.m2;
  if (a <= 0.0) return WeylSample{z, Matrix::Zero(m2, m1)};
  const int idx_a = potential.grid.node_index(a, "support bound");
  const int n = idx_a + 1;
  const double h = potential.grid.h();

  std::vector<Matrix> v(n), vadj(n);
  std::vector<Complex> ep(n), em(n);
  for (int j = 0; j < n; ++j) {
    v[j] = potential.value_at_node(j);
    vadj[j] = v[j].adjoint();
    ep[j] = std::exp(2.0 * kI * z * potential.grid.node(j));
    em[j] = 1.0 / ep[j];
  }

  Matrix phi = Matrix::Zero(m2, m1);
  for (int k = 0; k <= kmax; ++k) {
    // Innermost level: S0(t) = int_t^a e^{2izx} v(x)* dx, then alternate
    // prefix (e^{-2izx} v(x) ...) and suffix (e^{2izx} v(x)* ...) levels.
    std::vector<Matrix> level(n);
    for (int j = 0; j < n; ++j) level[j] = ep[j] * vadj[j];
    std::vector<Matrix> acc = suffix_cumtrap(level, h);
    for (int lev = 1; lev < 2 * k; ++lev) {
      if (lev % 2 == 1) {
        for (int j = 0; j < n; ++j) level[j] = em[j] * (v[j] * acc[j]);
        acc = prefix_cumtrap(level, h);
      } else {
        for (int j = 0; j < n; ++j) level[j] = ep[j] * (vadj[j] * acc[j]);
        acc = suffix_cumtrap(level, h);
      }
    }
    Matrix term;
    if (k == 0) {
      term = acc[0];  // S0(0) = int_0^a e^{2izx} v(x)* dx
    } else {
      for (int j = 0; j < n; ++j) level[j] = ep[j] * (vadj[j] * acc[j]);
      term = suffix_cumtrap(level, h)[0];
    }
    const double sign = (k % 2 == 0) ? -1.0 : 1.0;  // (-1)^{k+1}
    phi -= sign * kI * term;                        // phi = -sum M_{2k+1}
  }
  return WeylSample{z, std::move(phi)};
}

Matrix greens_kernel_free(Complex z, double x, double xp, const BlockSignature& sig) {
  if (x == xp)
    throw validation_error("greens_kernel_free: kernel is discontinuous on the line x = xp");
  const Complex amp = kI * std::exp(kI * z * std::abs(x - xp));
  Matrix g = Matrix::Zero(sig.m(), sig.m());
  if (x > xp) {
    for (int i = 0; i < sig.m1; ++i) g(i, i) = amp;
  } else {
    for (int i = sig.m1; i < sig.m(); ++i) g(i, i) = amp;
  }
  return g;
}

}  // namespace adirac
