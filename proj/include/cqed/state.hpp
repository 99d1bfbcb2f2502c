#pragma once

#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cqed/fock.hpp"
#include "cqed/types.hpp"

namespace cqed {

struct Subsystem {
  std::string label;
  int dim = 0;

  bool operator==(const Subsystem&) const = default;
};

/// Normalized pure state over an ordered register of labeled subsystems.
/// Amplitudes are stored row-major: the first subsystem is the most significant index.
class CompositeState {
 public:
  /// Validates dims and unit norm (within 1e-9).
  CompositeState(Vector amplitudes, std::vector<Subsystem> subsystems);

  /// Normalizes `amplitudes` first; returns the state and the squared norm it had.
  static std::pair<CompositeState, double> from_unnormalized(Vector amplitudes,
                                                             std::vector<Subsystem> subsystems);

  static CompositeState qubit(std::string label, const Qubit& amplitudes);
  static CompositeState atom(std::string label, Level level);
  static CompositeState pair(std::string label_a, std::string label_b, const PairState& amplitudes);
  static CompositeState field(std::string label, const FieldState& state);

  const Vector& amplitudes() const { return amplitudes_; }
  const std::vector<Subsystem>& subsystems() const { return subsystems_; }
  int size() const { return static_cast<int>(subsystems_.size()); }

  /// Position of `label` in the register; throws ContractError if absent.
  int index_of(std::string_view label) const;
  bool has(std::string_view label) const;
  int dim(std::string_view label) const { return subsystems_[index_of(label)].dim; }
  /// Flat-index stride of subsystem `k`.
  long stride(int k) const;

  double norm() const { return amplitudes_.norm(); }

 private:
  Vector amplitudes_;
  std::vector<Subsystem> subsystems_;
};

CompositeState tensor(std::span<const CompositeState> states);
CompositeState tensor(std::initializer_list<CompositeState> states);

/// Reorders subsystems to the given label order (a permutation of the current labels).
CompositeState permute(const CompositeState& state, std::span<const std::string> order);

/// Reduced density matrix over `keep`, with rows indexed in the order of `keep`.
Matrix partial_trace(const CompositeState& state, std::span<const std::string> keep);

/// Applies a local operator to one subsystem. The result is renormalized; the
/// squared norm after the operator is returned through `norm_sq` when given.
CompositeState apply_local(const CompositeState& state, std::string_view label, const Matrix& op,
                           double* norm_sq = nullptr);

/// Contracts subsystem `label` with <v|, removing it from the register.
/// `probability` is the squared norm of the contracted vector; `state` is absent
/// when that probability is below kNegligibleProbability.
struct Conditioned {
  double probability = 0.0;
  std::optional<CompositeState> state;
  /// Unnormalized amplitudes of the remaining register (keeps the global phase).
  Vector raw;
};
Conditioned condition(const CompositeState& state, std::string_view label, const Vector& v);

inline constexpr double kNegligibleProbability = 1e-14;

struct MeasurementRecord {
  std::string outcome_label;
  double probability = 0.0;
  /// Post-measurement state (the measured subsystem left in the basis vector),
  /// absent when probability < kNegligibleProbability.
  std::optional<CompositeState> collapsed;
};

enum class Completeness { complete, partial };

/// Projective measurement of one subsystem. `basis` must be orthonormal within 1e-8.
/// With Completeness::partial an extra "unresolved" record carries the orthogonal
/// complement, so the record probabilities always sum to 1.
std::vector<MeasurementRecord> project(const CompositeState& state, std::string_view label,
                                       std::span<const Vector> basis,
                                       std::span<const std::string> outcome_labels,
                                       Completeness completeness = Completeness::complete);

}  // namespace cqed
