#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cqed/jc.hpp"
#include "cqed/state.hpp"
#include "cqed/types.hpp"

namespace cqed {

inline const std::string kFieldA = "field-A";
inline const std::string kFieldB = "field-B";

/// A partially entangled atom pair lambda|e,g> + lambda'|g,e> and the theta of its passage.
struct PairSpec {
  double lambda_coeff = 0.0;
  double theta = 0.0;

  double lambda_prime() const;
  /// Validates 0 <= lambda_coeff <= 1.
  PairState state() const;
};

enum class AtomPairOutcome { gg, eg, ge, ee };

AtomPairOutcome parse_outcome(std::string_view label);
std::string to_string(AtomPairOutcome o);
/// Basis vector of the outcome in the pair index convention of PairState.
PairState outcome_vector(AtomPairOutcome o);
inline constexpr AtomPairOutcome kAllOutcomes[] = {AtomPairOutcome::gg, AtomPairOutcome::eg, AtomPairOutcome::ge,
                                                  AtomPairOutcome::ee};

struct Step {
  std::string label;
  double probability = 0.0;
};

struct ProtocolResult {
  CompositeState conditioned_state;
  /// Probability of the last conditioning stage performed by the call.
  double probability = 0.0;
  /// Every conditioning stage leading here, in order.
  std::vector<Step> path;

  double compound_probability() const;
  std::string branch() const;
};

/// |alpha>_A |alpha>_B. n_max <= 0 selects default_n_max(alpha).
CompositeState initial_fields(double alpha, int n_max = 0);

/// Both atoms of `pair` pass their cavity for pair.theta, then are detected in `outcome`.
ProtocolResult accumulate_pair(const CompositeState& fields, const PairSpec& pair, AtomPairOutcome outcome);
/// Same for an arbitrary (possibly non-normalized) pair amplitude vector; the
/// returned probability is relative to |pair|^2 = 1.
ProtocolResult accumulate_pair_state(const CompositeState& fields, const PairState& pair, double theta,
                                     AtomPairOutcome outcome);

/// Fresh atoms in |g,g> pass for theta, both cavities are conditioned on |alpha>.
/// The result register is (atom-A, atom-B).
ProtocolResult retrieve_pair(const CompositeState& fields, double theta, double alpha);

struct TwoPairOptions {
  /// Ratio t2/t1; pair2.theta must equal ratio * pair1.theta.
  double t2_ratio = 2.0;
  int n_max = 0;
};

ProtocolResult accumulate_two_pairs(const PairSpec& pair1, const PairSpec& pair2, double alpha,
                                    std::pair<AtomPairOutcome, AtomPairOutcome> outcomes = {AtomPairOutcome::gg,
                                                                                            AtomPairOutcome::gg},
                                    const TwoPairOptions& options = {});

enum class RetrievalOrder {
  /// The pair at 2*theta1 passes first, the pair at theta1 second.
  last_in_first_out,
  /// The pair at theta1 passes first.
  first_in_first_out,
};

/// Two fresh pairs retrieve a two-pair field. Register (atom-1A, atom-1B, atom-2A, atom-2B);
/// pair 1 is the one passing for theta1, pair 2 for 2*theta1.
ProtocolResult retrieve_two_pairs(const CompositeState& fields, double theta1, double alpha,
                                  RetrievalOrder order = RetrievalOrder::last_in_first_out);

/// Accumulates both pairs (outcomes gg, gg), then one fresh pair retrieves at pair1.theta.
ProtocolResult concentrate(const PairSpec& pair1, const PairSpec& pair2, double alpha,
                           const TwoPairOptions& options = {});

struct Concentrated {
  double theta = 0.0;
  double theta_prime = 0.0;
  /// theta|e,e> + theta'|g,g>
  PairState state() const;
};
Concentrated analytic_concentrated_state(double lambda, double gamma);

/// (lambda gamma'|e,g> + lambda' gamma|g,e>) normalized; DegenerateStateError when both terms vanish.
PairState schmidt_projection_state(double lambda, double gamma);
PairState procrustean_state(double lambda, double cos_phi);

/// Linear map from pair1 (x) pair2 amplitudes to the unnormalized output pair of
/// the concentration protocol (all stages gg / |alpha>|alpha>). The squared norm of
/// the output is the compound probability of the whole path.
class ConcentrationKernel {
 public:
  ConcentrationKernel(double alpha, double theta1, double t2_ratio = 2.0, int n_max = 0);

  PairState apply(const PairState& pair1, const PairState& pair2) const;
  const Eigen::Matrix<Complex, 4, 16>& matrix() const { return map_; }

 private:
  Eigen::Matrix<Complex, 4, 16> map_;
};

/// Photon-number distribution of cavity A displaced by -alpha after fresh |g,g> pairs
/// pass with the given thetas (in order), before any field detection.
RealVector retrieval_photon_distribution(const CompositeState& fields, std::span<const double> thetas, double alpha);

/// Throws TruncationError if any field subsystem (label starting with "field") has
/// more than kEdgeTolerance population in its top Fock level.
void check_field_edges(const CompositeState& state);

}  // namespace cqed
