#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cqed/measures.hpp"
#include "cqed/protocols.hpp"
#include "cqed/types.hpp"

namespace cqed {

enum class ChannelKind { depolarizing, amplitude_damping };

ChannelKind parse_channel_kind(std::string_view name);
std::string to_string(ChannelKind k);

struct QubitChannel {
  ChannelKind kind = ChannelKind::depolarizing;
  /// Depolarizing probability p (rho -> (1-p) rho + p I/2) or damping gamma, in [0, 1].
  double strength = 0.0;

  /// Kraus operators in the {|e>, |g>} basis; throws ContractError for strength outside [0, 1].
  std::vector<Eigen::Matrix2cd> kraus() const;
};

enum class Target { first, second, both };

TwoQubitDensity apply_channel(const TwoQubitDensity& rho, const QubitChannel& channel, Target which);

/// Unnormalized Kraus branches K|psi> of a pure pair state; sum of v v^dag is the channel output.
std::vector<PairState> kraus_branches(const PairState& psi, const QubitChannel& channel, Target which);

struct NoiseRow {
  double strength = 0.0;
  double input_concurrence_1 = 0.0;
  double input_concurrence_2 = 0.0;
  double output_concurrence = 0.0;
  double output_purity = 0.0;
  /// Probability of the whole post-selected path, averaged over the ensemble.
  double probability = 0.0;
  /// Output concurrence is nonzero and at least that of both inputs.
  bool enhanced = false;
  TwoQubitDensity output = TwoQubitDensity::maximally_mixed();
};

struct NoiseStudy {
  std::vector<NoiseRow> rows;
  /// First strength of the grid at which the output no longer beats both inputs.
  std::optional<double> crossover;
};

/// Both input pairs pass `channel` (on `which` qubits) before concentration; every
/// Kraus branch pair is run through the pure-state protocol and recombined.
NoiseStudy noisy_concentration_study(double lambda, double gamma, ChannelKind kind, std::span<const double> strengths,
                                     double alpha, double theta1, Target which = Target::both);

}  // namespace cqed
