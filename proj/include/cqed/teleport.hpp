#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cqed/fock.hpp"
#include "cqed/measures.hpp"
#include "cqed/protocols.hpp"
#include "cqed/types.hpp"

namespace cqed {

/// Alice's six atom (x) field outcomes: atom level then field basis index.
enum class AliceOutcome { e0, e1, e2, g0, g1, g2 };
inline constexpr AliceOutcome kAliceOutcomes[] = {AliceOutcome::e0, AliceOutcome::e1, AliceOutcome::e2,
                                                  AliceOutcome::g0, AliceOutcome::g1, AliceOutcome::g2};

AliceOutcome parse_alice_outcome(std::string_view label);
std::string to_string(AliceOutcome o);
Level atom_level(AliceOutcome o);
int field_index(AliceOutcome o);

/// Which vector stands third in Alice's field basis.
enum class ThirdVector {
  /// sqrt(2) u21(t_b)|alpha>, the form used in the appendix expansion (default).
  u21,
  /// sqrt(2) u21^dagger(t_b)|alpha>.
  u21_dagger,
};

struct AliceBasis {
  /// |alpha>, sqrt(2) u22(t_b)|alpha>, third vector; as columns.
  Matrix field_vectors;
  /// Loewdin-orthonormalized columns.
  Matrix orthonormal;
  /// max |Gram - 1| entry before orthonormalization.
  double residual = 0.0;
  double t_base = 0.0;
};

AliceBasis alice_basis(double alpha, double t_base, int n_max = 0, ThirdVector third = ThirdVector::u21);

/// Symmetric orthonormalization V (V^dag V)^(-1/2).
Matrix loewdin(const Matrix& vectors);

enum class Correction { identity, bit_flip, phase_flip, bit_and_phase_flip };
std::string to_string(Correction c);

struct CorrectionOp {
  Correction label = Correction::identity;
  double passage_time = 0.0;
};

/// Bob's local operation for an outcome.
CorrectionOp correction_for(AliceOutcome o, double passage_time);

/// Unitary on the coefficient span implementing a correction. dim 2: basis
/// {u22, u21}; dim 4: {u22 u21, u21 u22, u22 u22, u21 u21}.
Matrix correction_matrix(Correction c, int dim);

struct TeleportQubitResult {
  /// Bob's field after Alice's outcome, before correction.
  FieldState bob_field;
  /// (a_mn, b_mn): least-squares coefficients of bob_field on {u22(t1), u21(t1)}|alpha>.
  Eigen::Vector2cd coefficients;
  CorrectionOp correction;
  /// Probability of Alice's outcome.
  double probability = 0.0;
  FieldState corrected_field;
  /// Bob's fresh atom after retrieval, conditioned on |alpha>.
  Qubit bob_atom;
  double retrieval_probability = 0.0;
};

/// Teleportation over the maximally entangled single-pair field resource.
TeleportQubitResult teleport_qubit(const Qubit& input, double alpha, double theta1, AliceOutcome outcome,
                                   ThirdVector third = ThirdVector::u21);

/// Alice's measurement on the atom and the field through project(); six outcomes
/// plus "unresolved" (the complement of the three field vectors).
std::vector<MeasurementRecord> alice_measurement(const Qubit& input, double alpha, double theta1,
                                                 ThirdVector third = ThirdVector::u21);

enum class QuditOrder {
  /// Both atoms on each side pass for 2*theta1 first, then theta1 (default).
  reversed,
  /// theta1 then 2*theta1.
  forward,
};

struct TeleportQuditResult {
  PairState output;
  double alice_probability = 0.0;
  double bob_probability = 0.0;
};

/// Two-qubit input in the PairState index convention; resource is the maximal two-pair field.
TeleportQuditResult teleport_qudit(const PairState& input, double alpha, double theta1,
                                   QuditOrder order = QuditOrder::reversed);

struct TeleportPartialResult {
  Qubit bob_atom;
  /// Probability of Alice's outcome.
  double probability = 0.0;
  double retrieval_probability = 0.0;
  /// (a_mn, b_mn, c_mn, d_mn) of Bob's field before correction.
  Eigen::Vector4cd coefficients;
  CorrectionOp correction;
};

/// Teleportation over the two-pair field accumulated from lambda and gamma pairs.
TeleportPartialResult teleport_partial(const Qubit& input, double lambda, double gamma, double alpha, double theta1,
                                       AliceOutcome outcome);

/// (a theta, b theta') for outcomes e0, e1, g2 and (a theta', b theta) otherwise, normalized.
Qubit expected_partial_output(const Qubit& input, double lambda, double gamma, AliceOutcome outcome);

/// Precomputed linear map of teleport_partial for one outcome; the probability
/// reported with each output is the squared norm of the unnormalized chain.
TeleportChannel teleport_channel(double lambda, double gamma, double alpha, double theta1,
                                 AliceOutcome outcome = AliceOutcome::e0);

enum class BellOutcome { phi_plus, phi_minus, psi_plus, psi_minus };
inline constexpr BellOutcome kBellOutcomes[] = {BellOutcome::phi_plus, BellOutcome::phi_minus, BellOutcome::psi_plus,
                                                BellOutcome::psi_minus};

/// Textbook teleportation of `input` over the two-qubit `resource`, with the Pauli
/// correction that is exact for the resource (|e,e> + |g,g>)/sqrt(2).
ChannelOutput standard_teleport(const Qubit& input, const PairState& resource, BellOutcome outcome);
TeleportChannel standard_channel(const PairState& resource, BellOutcome outcome);
/// Haar average over all four Bell outcomes, weighted by their probabilities.
double standard_average_fidelity(const PairState& resource, int samples, std::uint64_t seed);

/// One Table column check: coefficient map fitted from the simulation against the printed one.
struct TableColumnCheck {
  AliceOutcome outcome;
  /// rows: coefficients; columns: input a (|g>) and b (|e>).
  Matrix simulated;
  Matrix printed;
  double ratio_error = 0.0;
  /// Largest simulated entry where the printed entry is zero, relative to the reference entry.
  double leakage = 0.0;
  /// Outcome probability averaged over Haar-random inputs (equal mix of |g> and |e>).
  double probability = 0.0;
};

Matrix printed_table1(AliceOutcome o);
Matrix printed_table2(AliceOutcome o, double lambda, double gamma);
/// Ratio error between a fitted and a printed coefficient map (see TableColumnCheck).
double table_ratio_error(const Matrix& simulated, const Matrix& printed, double* leakage = nullptr);

std::vector<TableColumnCheck> check_table1(double alpha, double theta1);
std::vector<TableColumnCheck> check_table2(double lambda, double gamma, double alpha, double theta1);

struct AppendixIdentity {
  std::string name;
  /// max over the operator products of the identity of the vector-norm error
  double error = 0.0;
};
/// The four u.u|alpha> approximations behind the single-resource correction table.
std::vector<AppendixIdentity> appendix_identities(double alpha, double theta1);

struct OverlapStudy {
  double max_error = 0.0;
  std::string worst_state;
};
/// Largest |P_vac(alpha) - P_vac(alpha_ref)| over the single-cavity states
/// u_{mu c}(t1) u_{2y}(t2) u_{2z}(t1)|alpha> of the two-pair teleportation.
OverlapStudy overlap_error_study(double alpha, double theta1, double alpha_ref = 80.0);

}  // namespace cqed
