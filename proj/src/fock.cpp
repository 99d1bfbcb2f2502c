#include "cqed/fock.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <unsupported/Eigen/MatrixFunctions>

namespace cqed {

int default_n_max(double alpha) {
  const double a = std::abs(alpha);
  return std::max(8, static_cast<int>(std::ceil(a * a + 10.0 * a)));
}

FieldState::FieldState(Vector amplitudes) : amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() < 2) throw ContractError("FieldState needs n_max >= 1");
}

void FieldState::normalize() {
  const double n = amplitudes_.norm();
  if (n == 0.0) throw DegenerateStateError("cannot normalize a null field state");
  amplitudes_ /= n;
}

void FieldState::check_truncation() const {
  if (edge_population() > kEdgeTolerance) {
    throw TruncationError("population " + std::to_string(edge_population()) + " at N_max=" +
                          std::to_string(n_max()) + " exceeds truncation tolerance");
  }
}

RealVector FieldState::photon_distribution() const { return amplitudes_.cwiseAbs2(); }

double FieldState::mean_photon_number() const {
  const RealVector p = photon_distribution();
  double mean = 0.0;
  for (int n = 0; n < p.size(); ++n) mean += n * p(n);
  return mean / p.sum();
}

Vector FockOperator::apply(const Vector& v) const {
  if (v.size() != matrix.cols()) throw ContractError("FockOperator dimension mismatch");
  return matrix * v;
}

FieldState FockOperator::apply(const FieldState& s) const { return FieldState(apply(s.amplitudes())); }

FieldState fock_state(int n, int n_max) {
  if (n < 0 || n > n_max) throw ContractError("Fock index outside truncated space");
  Vector v = Vector::Zero(n_max + 1);
  v(n) = 1.0;
  return FieldState(std::move(v));
}

Vector coherent_amplitudes(double alpha, int n_max) {
  Vector v = Vector::Zero(n_max + 1);
  if (alpha == 0.0) {
    v(0) = 1.0;
    return v;
  }
  // log-space keeps alpha^n / sqrt(n!) finite for large n
  const double log_a = std::log(std::abs(alpha));
  for (int n = 0; n <= n_max; ++n) {
    const double mag = std::exp(-0.5 * alpha * alpha + n * log_a - 0.5 * std::lgamma(n + 1.0));
    v(n) = (alpha < 0.0 && (n % 2 == 1)) ? -mag : mag;
  }
  v /= v.norm();
  return v;
}

FieldState coherent_state(double alpha, int n_max) {
  if (alpha < 0.0) throw ContractError("coherent_state expects a non-negative real amplitude");
  if (n_max < default_n_max(alpha)) {
    throw TruncationError("n_max=" + std::to_string(n_max) + " below ceil(alpha^2 + 10 alpha)=" +
                          std::to_string(default_n_max(alpha)));
  }
  return FieldState(coherent_amplitudes(alpha, n_max));
}

FockOperator annihilation(int n_max) {
  Matrix a = Matrix::Zero(n_max + 1, n_max + 1);
  for (int n = 1; n <= n_max; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return {std::move(a), n_max};
}

FockOperator creation(int n_max) {
  FockOperator a = annihilation(n_max);
  a.matrix.adjointInPlace();
  return a;
}

FockOperator number_operator(int n_max) {
  Matrix n = Matrix::Zero(n_max + 1, n_max + 1);
  for (int k = 0; k <= n_max; ++k) n(k, k) = k;
  return {std::move(n), n_max};
}

FockOperator displacement(double alpha, int n_max) {
  const Matrix a = annihilation(n_max).matrix;
  const Matrix generator = alpha * (a.adjoint() - a);
  return {generator.exp(), n_max};
}

double displaced_vacuum_probability(const FieldState& state, double alpha) {
  if (std::abs(state.norm() - 1.0) > 1e-9) {
    throw ContractError("displaced_vacuum_probability expects a normalized state");
  }
  // <0|D(-alpha)|psi> = <alpha|psi>
  const Vector ket = coherent_amplitudes(alpha, state.n_max());
  return std::norm(ket.dot(state.amplitudes()));
}

int photon_width(std::span<const double> distribution, double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw ContractError("photon_width expects 0 < epsilon < 1");
  const int n = static_cast<int>(distribution.size());
  std::vector<double> cumulative(n + 1, 0.0);
  for (int k = 0; k < n; ++k) cumulative[k + 1] = cumulative[k] + distribution[k];
  const double target = cumulative[n] * (1.0 - epsilon);
  int best = n;
  // two-pointer sweep: for each left edge the right edge is non-decreasing
  int right = 0;
  for (int left = 0; left < n; ++left) {
    right = std::max(right, left);
    while (right < n && cumulative[right + 1] - cumulative[left] < target) ++right;
    if (right == n) break;
    best = std::min(best, right - left + 1);
  }
  return best;
}

int photon_width(const FieldState& state, double epsilon) {
  const RealVector p = state.photon_distribution();
  return photon_width(std::span<const double>(p.data(), static_cast<size_t>(p.size())), epsilon);
}

}  // namespace cqed
