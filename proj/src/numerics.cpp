#include "adirac/numerics.hpp"

#include <cmath>
#include <sstream>

namespace adirac {

namespace {
double grid_tolerance(double T) { return 1e-9 * std::max(1.0, std::abs(T)); }
}  // namespace

int Grid::node_index(double x, const char* what) const {
  const double spacing = h();
  const int j = static_cast<int>(std::lround(x / spacing));
  if (j < 0 || j >= n || std::abs(x - j * spacing) > grid_tolerance(T)) {
    std::ostringstream msg;
    msg << what << " x=" << x << " is not a node of the grid [0," << T << "], n=" << n;
    throw validation_error(msg.str());
  }
  return j;
}

int Grid::nearest_index(double x) const {
  const int j = static_cast<int>(std::lround(x / h()));
  return std::min(std::max(j, 0), n - 1);
}

bool Grid::contains_node(double x) const {
  const double spacing = h();
  const int j = static_cast<int>(std::lround(x / spacing));
  return j >= 0 && j < n && std::abs(x - j * spacing) <= grid_tolerance(T);
}

Grid make_uniform_grid(double T, int n) {
  if (!(T > 0.0)) throw validation_error("grid endpoint must be positive, got T=" + std::to_string(T));
  if (n < 2) throw validation_error("grid needs at least two nodes, got n=" + std::to_string(n));
  return Grid{T, n};
}

Matrix trapezoid_integrate(const std::vector<Matrix>& samples, const Grid& grid) {
  if (static_cast<int>(samples.size()) != grid.n)
    throw validation_error("trapezoid_integrate: expected one sample per node");
  const auto rows = samples.front().rows();
  const auto cols = samples.front().cols();
  Matrix acc = Matrix::Zero(rows, cols);
  for (int j = 0; j < grid.n; ++j) {
    if (samples[j].rows() != rows || samples[j].cols() != cols)
      throw validation_error("trapezoid_integrate: sample dimension mismatch at node " + std::to_string(j));
    const double w = (j == 0 || j == grid.n - 1) ? 0.5 : 1.0;
    acc += w * samples[j];
  }
  return grid.h() * acc;
}

std::vector<double> trapezoid_weights(double h, int count) {
  std::vector<double> w(count, h);
  if (count == 1) {
    w[0] = 0.0;
    return w;
  }
  w.front() = 0.5 * h;
  w.back() = 0.5 * h;
  return w;
}

Matrix rk4_step(const DerivativeFn& derivative, const Matrix& state, double x, double h) {
  const Matrix k1 = derivative(x, state);
  const Matrix k2 = derivative(x + 0.5 * h, state + (0.5 * h) * k1);
  const Matrix k3 = derivative(x + 0.5 * h, state + (0.5 * h) * k2);
  const Matrix k4 = derivative(x + h, state + h * k3);
  Matrix next = state + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  if (!all_finite(next))
    throw numerical_error("rk4_step: non-finite state at x=" + std::to_string(x));
  return next;
}

Matrix solve_dense(const Matrix& matrix, const Matrix& rhs) {
  if (matrix.rows() != matrix.cols())
    throw validation_error("solve_dense: matrix must be square");
  if (matrix.rows() != rhs.rows())
    throw validation_error("solve_dense: rhs row count mismatch");
  Eigen::PartialPivLU<Matrix> lu(matrix);
  const auto diag = lu.matrixLU().diagonal();
  double min_pivot = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < diag.size(); ++i)
    min_pivot = std::min(min_pivot, std::abs(diag(i)));
  const double scale = matrix.cwiseAbs().maxCoeff();
  if (!(min_pivot > 1e-14 * std::max(scale, 1e-300))) {
    std::ostringstream msg;
    msg << "solve_dense: matrix singular to working precision (pivot " << min_pivot << ", scale " << scale << ")";
    throw numerical_error(msg.str());
  }
  Matrix x = lu.solve(rhs);
  if (!all_finite(x)) throw numerical_error("solve_dense: non-finite solution");
  return x;
}

}  // namespace adirac
