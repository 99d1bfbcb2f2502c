#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <string>

#include "cqed/state.hpp"
#include "cqed/types.hpp"

namespace cqed {

/// Eigenvalues below this contribute nothing to an entropy.
inline constexpr double kEntropyCutoff = 1e-12;

/// -sum p log2 p over the eigenvalues of a Hermitian density matrix.
double von_neumann_entropy(const Matrix& rho);

/// Binary entropy H(p) in bits.
double binary_entropy(double p);

/// Entropy (ebits) of the reduced state over `partition`.
double entropy_of_entanglement(const CompositeState& state, std::span<const std::string> partition);
double entropy_of_entanglement(const CompositeState& state, std::initializer_list<std::string> partition);

/// Schmidt coefficients (descending, squared sum 1) across `partition` | rest.
RealVector schmidt_coefficients(const CompositeState& state, std::span<const std::string> partition);

/// Entropy of a two-qubit pure state across A|B.
double pair_entropy(const PairState& psi);

/// 4x4 Hermitian, unit-trace, positive two-qubit density matrix.
class TwoQubitDensity {
 public:
  /// Validates Hermiticity, trace within 1e-9 and eigenvalues >= -1e-10.
  explicit TwoQubitDensity(const Eigen::Matrix4cd& rho);
  static TwoQubitDensity pure(const PairState& psi);
  static TwoQubitDensity maximally_mixed();

  const Eigen::Matrix4cd& matrix() const { return rho_; }
  double purity() const;

 private:
  Eigen::Matrix4cd rho_;
};

/// Wootters concurrence.
double concurrence(const TwoQubitDensity& rho);

/// |<a|b>|^2 for normalized pure states of equal dimension.
double fidelity(const Vector& a, const Vector& b);
double fidelity(const CompositeState& a, const CompositeState& b);

/// Haar-random pure qubit: two standard complex Gaussians, normalized.
Qubit haar_qubit(std::mt19937_64& rng);
Vector haar_state(int dim, std::mt19937_64& rng);

/// Teleportation channel output: Bob's normalized qubit and the branch success probability.
struct ChannelOutput {
  Qubit state;
  double probability = 1.0;
};
using TeleportChannel = std::function<ChannelOutput(const Qubit&)>;

/// Haar-averaged fidelity, sum p_i F_i / sum p_i over `samples` inputs drawn from `seed`.
double average_fidelity(const TeleportChannel& channel, int samples, std::uint64_t seed);

}  // namespace cqed
