#pragma once

#include <span>
#include <vector>

#include "cqed/types.hpp"

namespace cqed {

/// Largest tolerated population in the top Fock level after a protocol step.
inline constexpr double kEdgeTolerance = 1e-12;

/// Truncation bound N_max = ceil(alpha^2 + 10 alpha), at least 10 standard
/// deviations above the Poisson mean. Never below 8 so that alpha = 0 still
/// leaves room for a few atom passages.
int default_n_max(double alpha);

/// Amplitude vector of one cavity mode over photon numbers 0..n_max.
class FieldState {
 public:
  FieldState() = default;
  explicit FieldState(Vector amplitudes);

  const Vector& amplitudes() const { return amplitudes_; }
  int n_max() const { return static_cast<int>(amplitudes_.size()) - 1; }
  int dim() const { return static_cast<int>(amplitudes_.size()); }

  double norm() const { return amplitudes_.norm(); }
  /// Rescales to unit norm; throws DegenerateStateError on a null vector.
  void normalize();
  double edge_population() const { return std::norm(amplitudes_(n_max())); }
  /// Throws TruncationError when |amplitude(N_max)|^2 > kEdgeTolerance.
  void check_truncation() const;

  RealVector photon_distribution() const;
  double mean_photon_number() const;

 private:
  Vector amplitudes_;
};

/// Dense operator on the truncated single-mode space.
struct FockOperator {
  Matrix matrix;
  int n_max = 0;

  Vector apply(const Vector& v) const;
  FieldState apply(const FieldState& s) const;
};

FieldState fock_state(int n, int n_max);

/// exp(-alpha^2/2) sum alpha^n / sqrt(n!) |n>, renormalized over the truncated space.
/// Requires alpha >= 0 and n_max >= default_n_max(alpha).
FieldState coherent_state(double alpha, int n_max);

/// Same amplitudes without the adequacy check; alpha may be negative.
Vector coherent_amplitudes(double alpha, int n_max);

FockOperator annihilation(int n_max);
FockOperator creation(int n_max);
FockOperator number_operator(int n_max);

/// D(alpha) = exp(alpha a^dag - alpha a) from the matrix exponential of the truncated generator.
/// Unitary only on the low-photon block; the edge error is measured by callers.
FockOperator displacement(double alpha, int n_max);

/// |<0| D(-alpha) |state>|^2, i.e. the probability of detecting vacuum after
/// displacing the field by -alpha.
double displaced_vacuum_probability(const FieldState& state, double alpha);

/// Length of the smallest contiguous photon-number window holding at least
/// 1 - epsilon of the probability.
int photon_width(std::span<const double> distribution, double epsilon);
int photon_width(const FieldState& state, double epsilon);

}  // namespace cqed
