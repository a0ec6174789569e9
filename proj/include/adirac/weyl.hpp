#pragma once

#include "adirac/dirac.hpp"

namespace adirac {

/// One evaluation (z, phi(z)) of the Weyl-Titchmarsh function; phi is the
/// m2 x m1 contraction attached to the system on a half-line.
struct WeylSample {
  Complex z;
  Matrix phi;
};

/// ODE refinement factor keeping h_ode * |z| below a fixed threshold, so the
/// RK4 error stays controlled for large |z| without adapting the mesh.
int ode_refinement(const Grid& grid, Complex z);

/// phi(z) = -u22(a,z)^{-1} u21(a,z) from the fundamental solution at the
/// support bound. Exact for compactly supported potentials up to ODE error.
/// `ode_refine` <= 0 picks the automatic refinement.
WeylSample weyl_truncated(const Potential& potential, Complex z, int ode_refine = 0);

/// phi_ell = (u21 + u22 phi0)(u11 + u12 phi0)^{-1} with u = u_0(ell, z).
WeylSample weyl_transfer(const WeylSample& phi0, const Matrix& u_at_ell);

/// Right-hand side -i (phi v phi + v* + 2 z phi) of the Riccati flow of
/// ell -> phi_ell(z).
Matrix riccati_derivative(const WeylSample& phi, const Matrix& v_at_ell, Complex z);

/// Weyl-Titchmarsh function of the scalar constant potential v = i c on
/// [0, a]: i c (1 - e^{2iaq}) / (z + q - (z - q) e^{2iaq}), Im q > 0.
WeylSample weyl_constant_closed_form(double c, double a, Complex z);

/// Truncated iterated-integral series phi ~ -sum_{k<=kmax} M_{2k+1}(z; V),
/// each term evaluated by nested trapezoid quadrature on the potential grid.
/// Requires Im z >= max(sqrt(2) c, a c^2 / 2) and kmax <= 3.
WeylSample weyl_neumann_series(const Potential& potential, Complex z, int kmax);

/// Free-system resolvent kernel: i e^{iz|x-xp|} times the upper-left
/// (x > xp) or lower-right (x < xp) block projector.
Matrix greens_kernel_free(Complex z, double x, double xp, const BlockSignature& sig);

}  // namespace adirac
