#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace adirac {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using RealMatrix = Eigen::MatrixXd;

inline constexpr Complex kI{0.0, 1.0};

/// Bad inputs / violated preconditions. Maps to CLI exit code 1.
struct validation_error : std::runtime_error {
  explicit validation_error(const std::string& what) : std::runtime_error(what) {}
};

/// Failures of the computation itself (singular systems, overflow,
/// blow-up). Maps to CLI exit code 2.
struct numerical_error : std::runtime_error {
  explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

/// Spectral (operator 2-) norm of a dense complex matrix.
inline double op_norm(const Matrix& a) {
  if (a.size() == 0) return 0.0;
  if (a.rows() == 1 && a.cols() == 1) return std::abs(a(0, 0));
  return a.jacobiSvd().singularValues()(0);
}

inline bool all_finite(const Matrix& a) { return a.allFinite(); }

}  // namespace adirac
