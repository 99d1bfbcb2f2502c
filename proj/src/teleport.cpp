#include "cqed/teleport.hpp"

#include <cmath>
#include <random>

#include <Eigen/Eigenvalues>

namespace cqed {
namespace {

const double kSqrt2 = std::sqrt(2.0);

Complex bra_alpha(const Vector& alpha, const Vector& v) { return (alpha.transpose() * v).value(); }

// Two-mode field amplitudes as a matrix, rows field-A and columns field-B.
Matrix field_matrix(const CompositeState& s) {
  const std::vector<std::string> order{kFieldA, kFieldB};
  const CompositeState p = permute(s, order);
  using RowMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  return Eigen::Map<const RowMatrix>(p.amplitudes().data(), p.dim(kFieldA), p.dim(kFieldB));
}

Matrix normalized_columns(Matrix m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j) m.col(j) /= m.col(j).norm();
  return m;
}

// Least-squares coefficients of v on the columns of x.
Vector fit(const Matrix& x, const Vector& v) { return x.colPivHouseholderQr().solve(v); }

// Field-A after Alice's atom (amplitudes q over {e, g}) passes and is detected in `mu`,
// contracted with the field vector f: Bob's unnormalized field.
Vector alice_branch(const Matrix& m, const Qubit& q, const JcBlocks& b1, Level mu, const Vector& f) {
  const Matrix mm = q(0) * b1.apply_rows(mu, Level::excited, m) + q(1) * b1.apply_rows(mu, Level::ground, m);
  return mm.transpose() * f.conjugate();
}

Vector apply_correction(const Vector& bob, const Matrix& span, const Matrix& c) {
  const Vector coef = span.adjoint() * bob;
  return bob - span * coef + span * (c * coef);
}

// Bob's fresh atom starting in `start` passes for theta1; field conditioned on |alpha>.
Qubit retrieve_atom(const Vector& bob, const JcBlocks& b1, Level start, const Vector& alpha) {
  return Qubit{bra_alpha(alpha, b1.apply(Level::excited, start, bob)),
               bra_alpha(alpha, b1.apply(Level::ground, start, bob))};
}

Matrix single_pair_span(const JcBlocks& b1, const Vector& alpha) {
  Matrix x(alpha.size(), 2);
  x.col(0) = b1.apply(Level::ground, Level::ground, alpha);
  x.col(1) = b1.apply(Level::ground, Level::excited, alpha);
  return x;
}

Matrix two_pair_span(const JcBlocks& b1, const JcBlocks& b2, const Vector& alpha) {
  const Vector u22 = b1.apply(Level::ground, Level::ground, alpha);
  const Vector u21 = b1.apply(Level::ground, Level::excited, alpha);
  Matrix x(alpha.size(), 4);
  x.col(0) = b2.apply(Level::ground, Level::ground, u21);
  x.col(1) = b2.apply(Level::ground, Level::excited, u22);
  x.col(2) = b2.apply(Level::ground, Level::ground, u22);
  x.col(3) = b2.apply(Level::ground, Level::excited, u21);
  return x;
}

// Everything the single-pair teleportation needs at one operating point.
struct QubitSetup {
  Vector alpha;
  JcBlocks b1;
  Matrix resource;
  AliceBasis basis;
  Matrix span;

  QubitSetup(double a, double theta1, ThirdVector third) {
    const int n_max = default_n_max(a);
    alpha = coherent_state(a, n_max).amplitudes();
    b1 = jc_blocks(theta1, n_max);
    const double r = 1.0 / kSqrt2;
    resource = field_matrix(
        accumulate_pair(initial_fields(a, n_max), PairSpec{r, theta1}, AtomPairOutcome::gg).conditioned_state);
    basis = alice_basis(a, 2.0 * theta1, n_max, third);
    span = single_pair_span(b1, alpha);
  }

  Vector bob(const Qubit& q, AliceOutcome o) const {
    return alice_branch(resource, q, b1, atom_level(o), basis.orthonormal.col(field_index(o)));
  }
};

struct PartialSetup {
  Vector alpha;
  JcBlocks b1, b2;
  Matrix resource;
  AliceBasis basis;
  Matrix span;
  Matrix span_orthonormal;

  PartialSetup(double lambda, double gamma, double a, double theta1) {
    const int n_max = default_n_max(a);
    alpha = coherent_state(a, n_max).amplitudes();
    b1 = jc_blocks(theta1, n_max);
    b2 = jc_blocks(2.0 * theta1, n_max);
    resource = field_matrix(accumulate_two_pairs(PairSpec{lambda, theta1}, PairSpec{gamma, 2.0 * theta1}, a,
                                                 {AtomPairOutcome::gg, AtomPairOutcome::gg}, {2.0, n_max})
                                .conditioned_state);
    basis = alice_basis(a, 4.0 * theta1, n_max);
    span = two_pair_span(b1, b2, alpha);
    span_orthonormal = loewdin(normalized_columns(span));
  }

  Vector bob(const Qubit& q, AliceOutcome o) const {
    return alice_branch(resource, q, b1, atom_level(o), basis.orthonormal.col(field_index(o)));
  }

  // Unnormalized Bob atom for input q: linear in q.
  Qubit chain(const Qubit& q, AliceOutcome o) const {
    const Vector corrected = apply_correction(bob(q, o), span_orthonormal,
                                              correction_matrix(correction_for(o, 0.0).label, 4));
    return retrieve_atom(corrected, b1, Level::excited, alpha);
  }
};

}  // namespace

AliceOutcome parse_alice_outcome(std::string_view label) {
  for (AliceOutcome o : kAliceOutcomes) {
    if (to_string(o) == label) return o;
  }
  throw ContractError("invalid Alice outcome '" + std::string(label) + "' (expected e0, e1, e2, g0, g1 or g2)");
}

std::string to_string(AliceOutcome o) {
  return std::string(1, atom_level(o) == Level::excited ? 'e' : 'g') + std::to_string(field_index(o));
}

Level atom_level(AliceOutcome o) {
  switch (o) {
    case AliceOutcome::e0:
    case AliceOutcome::e1:
    case AliceOutcome::e2:
      return Level::excited;
    default:
      return Level::ground;
  }
}

int field_index(AliceOutcome o) {
  switch (o) {
    case AliceOutcome::e0:
    case AliceOutcome::g0:
      return 0;
    case AliceOutcome::e1:
    case AliceOutcome::g1:
      return 1;
    default:
      return 2;
  }
}

Matrix loewdin(const Matrix& vectors) {
  const Matrix g = vectors.adjoint() * vectors;
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (g + g.adjoint()));
  if (es.eigenvalues().minCoeff() <= 1e-14) throw DegenerateStateError("loewdin: vectors are linearly dependent");
  const Eigen::VectorXd inv_sqrt = es.eigenvalues().cwiseSqrt().cwiseInverse();
  return vectors * (es.eigenvectors() * inv_sqrt.asDiagonal() * es.eigenvectors().adjoint());
}

AliceBasis alice_basis(double alpha, double t_base, int n_max, ThirdVector third) {
  if (n_max <= 0) n_max = default_n_max(alpha);
  const Vector a = coherent_state(alpha, n_max).amplitudes();
  const JcBlocks b = jc_blocks(t_base, n_max);
  AliceBasis out;
  out.t_base = t_base;
  out.field_vectors.resize(a.size(), 3);
  out.field_vectors.col(0) = a;
  out.field_vectors.col(1) = kSqrt2 * b.apply(Level::ground, Level::ground, a);
  // u21^dagger = -u12
  out.field_vectors.col(2) = third == ThirdVector::u21 ? Vector(kSqrt2 * b.apply(Level::ground, Level::excited, a))
                                                       : Vector(-kSqrt2 * b.apply(Level::excited, Level::ground, a));
  const Matrix g = out.field_vectors.adjoint() * out.field_vectors;
  out.residual = (g - Matrix::Identity(3, 3)).cwiseAbs().maxCoeff();
  out.orthonormal = loewdin(out.field_vectors);
  return out;
}

std::string to_string(Correction c) {
  switch (c) {
    case Correction::identity:
      return "identity";
    case Correction::bit_flip:
      return "bit_flip";
    case Correction::phase_flip:
      return "phase_flip";
    case Correction::bit_and_phase_flip:
      return "bit_and_phase_flip";
  }
  return "?";
}

CorrectionOp correction_for(AliceOutcome o, double passage_time) {
  switch (o) {
    case AliceOutcome::e0:
      return {Correction::identity, passage_time};
    case AliceOutcome::g0:
      return {Correction::bit_flip, passage_time};
    case AliceOutcome::e1:
    case AliceOutcome::g2:
      return {Correction::phase_flip, passage_time};
    default:
      return {Correction::bit_and_phase_flip, passage_time};
  }
}

Matrix correction_matrix(Correction c, int dim) {
  if (dim != 2 && dim != 4) throw ContractError("correction_matrix: span dimension must be 2 or 4");
  Matrix x = Matrix::Identity(dim, dim);
  if (dim == 2) {
    x << 0, 1, 1, 0;
  } else {
    // swapping the outer u22 <-> u21 pairs u22u21 with u21u21 and u21u22 with u22u22
    x.setZero();
    x(0, 3) = x(3, 0) = x(1, 2) = x(2, 1) = 1.0;
  }
  Matrix z = Matrix::Identity(dim, dim);
  // u22 -> -u22 on the outer factor
  z(0, 0) = -1.0;
  if (dim == 4) z(2, 2) = -1.0;
  switch (c) {
    case Correction::identity:
      return Matrix::Identity(dim, dim);
    case Correction::bit_flip:
      return x;
    case Correction::phase_flip:
      return z;
    case Correction::bit_and_phase_flip:
      return z * x;
  }
  return Matrix::Identity(dim, dim);
}

TeleportQubitResult teleport_qubit(const Qubit& input, double alpha, double theta1, AliceOutcome outcome,
                                   ThirdVector third) {
  if (std::abs(input.norm() - 1.0) > 1e-9) throw ContractError("teleport_qubit: input must be normalized");
  const QubitSetup setup(alpha, theta1, third);
  Vector bob = setup.bob(input, outcome);
  TeleportQubitResult r;
  r.probability = bob.squaredNorm();
  if (r.probability < kNegligibleProbability) throw DegenerateStateError("teleport_qubit: outcome has zero probability");
  bob /= std::sqrt(r.probability);
  r.bob_field = FieldState(bob);
  r.coefficients = fit(setup.span, bob);
  r.correction = correction_for(outcome, theta1);
  const Vector corrected =
      apply_correction(bob, loewdin(normalized_columns(setup.span)), correction_matrix(r.correction.label, 2));
  r.corrected_field = FieldState(corrected);
  const Qubit atom = retrieve_atom(corrected, setup.b1, Level::ground, setup.alpha);
  r.retrieval_probability = atom.squaredNorm();
  r.bob_atom = atom / atom.norm();
  return r;
}

std::vector<MeasurementRecord> alice_measurement(const Qubit& input, double alpha, double theta1, ThirdVector third) {
  const int n_max = default_n_max(alpha);
  const CompositeState resource =
      accumulate_pair(initial_fields(alpha, n_max), PairSpec{1.0 / kSqrt2, theta1}, AtomPairOutcome::gg)
          .conditioned_state;
  CompositeState s = tensor({CompositeState::qubit("atom-C", input), resource});
  s = apply_jc("atom-C", kFieldA, jc_blocks(theta1, n_max), s);
  const AliceBasis basis = alice_basis(alpha, 2.0 * theta1, n_max, third);
  std::vector<Vector> fields;
  for (int k = 0; k < 3; ++k) fields.emplace_back(basis.orthonormal.col(k));
  const std::vector<std::string> field_labels{"0", "1", "2"};
  const std::vector<Vector> atoms{Vector(Qubit{1.0, 0.0}), Vector(Qubit{0.0, 1.0})};
  const std::vector<std::string> atom_labels{"e", "g"};

  const auto by_field = project(s, kFieldA, fields, field_labels, Completeness::partial);
  std::vector<MeasurementRecord> out;
  for (const auto& f : by_field) {
    if (f.outcome_label == "unresolved") continue;
    if (!f.collapsed) {
      for (const auto& a : atom_labels) out.push_back({a + f.outcome_label, 0.0, std::nullopt});
      continue;
    }
    for (const auto& a : project(*f.collapsed, "atom-C", atoms, atom_labels)) {
      out.push_back({a.outcome_label + f.outcome_label, f.probability * a.probability, a.collapsed});
    }
  }
  // order as kAliceOutcomes, the complement last
  std::vector<MeasurementRecord> sorted;
  for (AliceOutcome o : kAliceOutcomes) {
    for (auto& r : out) {
      if (r.outcome_label == to_string(o)) sorted.push_back(std::move(r));
    }
  }
  sorted.push_back(by_field.back());
  return sorted;
}

TeleportQuditResult teleport_qudit(const PairState& input, double alpha, double theta1, QuditOrder order) {
  if (std::abs(input.norm() - 1.0) > 1e-9) throw ContractError("teleport_qudit: input must be normalized");
  const int n_max = default_n_max(alpha);
  const Vector a = coherent_state(alpha, n_max).amplitudes();
  const JcBlocks b1 = jc_blocks(theta1, n_max);
  const JcBlocks b2 = jc_blocks(2.0 * theta1, n_max);
  const double r = 1.0 / kSqrt2;
  const Matrix m = field_matrix(accumulate_two_pairs(PairSpec{r, theta1}, PairSpec{r, 2.0 * theta1}, alpha,
                                                     {AtomPairOutcome::gg, AtomPairOutcome::gg}, {2.0, n_max})
                                    .conditioned_state);
  const JcBlocks& first = order == QuditOrder::reversed ? b2 : b1;
  const JcBlocks& second = order == QuditOrder::reversed ? b1 : b2;
  auto level = [](int i) { return i == 0 ? Level::excited : Level::ground; };

  // Alice: atom 1 then atom 2 pass, both detected excited, field-A conditioned on |alpha>
  Matrix field = Matrix::Zero(m.rows(), m.cols());
  for (int i1 = 0; i1 < 2; ++i1) {
    for (int i2 = 0; i2 < 2; ++i2) {
      const Complex c = input(2 * i1 + i2);
      if (c == Complex{}) continue;
      field += c * second.apply_rows(Level::excited, level(i2), first.apply_rows(Level::excited, level(i1), m));
    }
  }
  Vector bob = field.transpose() * a;
  TeleportQuditResult out;
  out.alice_probability = bob.squaredNorm();
  if (out.alice_probability < kNegligibleProbability) throw DegenerateStateError("teleport_qudit: null branch");
  bob /= std::sqrt(out.alice_probability);

  PairState v;
  for (int o1 = 0; o1 < 2; ++o1) {
    for (int o2 = 0; o2 < 2; ++o2) {
      v(2 * o1 + o2) =
          bra_alpha(a, second.apply(level(o2), Level::ground, first.apply(level(o1), Level::ground, bob)));
    }
  }
  out.bob_probability = v.squaredNorm();
  out.output = v / v.norm();
  return out;
}

Qubit expected_partial_output(const Qubit& input, double lambda, double gamma, AliceOutcome outcome) {
  const Concentrated c = analytic_concentrated_state(lambda, gamma);
  const bool first_form = outcome == AliceOutcome::e0 || outcome == AliceOutcome::e1 || outcome == AliceOutcome::g2;
  const double tg = first_form ? c.theta : c.theta_prime;
  const double te = first_form ? c.theta_prime : c.theta;
  // storage order {e, g}; input a|g> + b|e> has a = input(1), b = input(0)
  Qubit q{input(0) * te, input(1) * tg};
  return q / q.norm();
}

TeleportPartialResult teleport_partial(const Qubit& input, double lambda, double gamma, double alpha, double theta1,
                                       AliceOutcome outcome) {
  if (std::abs(input.norm() - 1.0) > 1e-9) throw ContractError("teleport_partial: input must be normalized");
  const PartialSetup setup(lambda, gamma, alpha, theta1);
  Vector bob = setup.bob(input, outcome);
  TeleportPartialResult r;
  r.probability = bob.squaredNorm();
  if (r.probability < kNegligibleProbability) {
    throw DegenerateStateError("teleport_partial: outcome has zero probability");
  }
  bob /= std::sqrt(r.probability);
  r.coefficients = fit(setup.span, bob);
  r.correction = correction_for(outcome, 2.0 * theta1);
  const Vector corrected =
      apply_correction(bob, setup.span_orthonormal, correction_matrix(r.correction.label, 4));
  const Qubit atom = retrieve_atom(corrected, setup.b1, Level::excited, setup.alpha);
  r.retrieval_probability = atom.squaredNorm();
  r.bob_atom = atom / atom.norm();
  return r;
}

TeleportChannel teleport_channel(double lambda, double gamma, double alpha, double theta1, AliceOutcome outcome) {
  const PartialSetup setup(lambda, gamma, alpha, theta1);
  Eigen::Matrix2cd t;
  t.col(0) = setup.chain(Qubit{1.0, 0.0}, outcome);
  t.col(1) = setup.chain(Qubit{0.0, 1.0}, outcome);
  return [t](const Qubit& q) {
    const Qubit out = t * q;
    const double p = out.squaredNorm();
    return ChannelOutput{p > 0.0 ? Qubit(out / std::sqrt(p)) : out, p};
  };
}

ChannelOutput standard_teleport(const Qubit& input, const PairState& resource, BellOutcome outcome) {
  // Bell vectors on (C, A), index 2*i_C + i_A with 0 = e, 1 = g
  const double r = 1.0 / kSqrt2;
  Eigen::Vector4cd bell = Eigen::Vector4cd::Zero();
  Eigen::Matrix2cd fix = Eigen::Matrix2cd::Identity();
  const Eigen::Matrix2cd x = (Eigen::Matrix2cd() << 0, 1, 1, 0).finished();
  const Eigen::Matrix2cd z = (Eigen::Matrix2cd() << -1, 0, 0, 1).finished();
  switch (outcome) {
    case BellOutcome::phi_plus:
      bell(3) = r;
      bell(0) = r;
      break;
    case BellOutcome::phi_minus:
      bell(3) = r;
      bell(0) = -r;
      fix = z;
      break;
    case BellOutcome::psi_plus:
      bell(2) = r;
      bell(1) = r;
      fix = x;
      break;
    case BellOutcome::psi_minus:
      bell(2) = r;
      bell(1) = -r;
      fix = z * x;
      break;
  }
  Qubit bob = Qubit::Zero();
  for (int c = 0; c < 2; ++c) {
    for (int a = 0; a < 2; ++a) {
      for (int b = 0; b < 2; ++b) bob(b) += std::conj(bell(2 * c + a)) * input(c) * resource(2 * a + b);
    }
  }
  bob = fix * bob;
  const double p = bob.squaredNorm();
  return {p > 0.0 ? Qubit(bob / std::sqrt(p)) : bob, p};
}

TeleportChannel standard_channel(const PairState& resource, BellOutcome outcome) {
  return [resource, outcome](const Qubit& q) { return standard_teleport(q, resource, outcome); };
}

double standard_average_fidelity(const PairState& resource, int samples, std::uint64_t seed) {
  if (samples < 1) throw ContractError("standard_average_fidelity: samples must be >= 1");
  std::mt19937_64 rng(seed);
  double num = 0.0;
  double den = 0.0;
  for (int i = 0; i < samples; ++i) {
    const Qubit q = haar_qubit(rng);
    for (BellOutcome b : kBellOutcomes) {
      const ChannelOutput out = standard_teleport(q, resource, b);
      num += out.probability * std::norm(q.dot(out.state));
      den += out.probability;
    }
  }
  return num / den;
}

Matrix printed_table1(AliceOutcome o) {
  // rows (a_mn, b_mn), columns (a, b)
  Matrix t = Matrix::Zero(2, 2);
  switch (o) {
    case AliceOutcome::e0:
      t(0, 0) = -1.0;
      t(1, 1) = 1.0;
      break;
    case AliceOutcome::g0:
      t(0, 1) = -1.0;
      t(1, 0) = 1.0;
      break;
    case AliceOutcome::e1:
    case AliceOutcome::g2:
      t(0, 0) = 1.0;
      t(1, 1) = 1.0;
      break;
    default:
      t(0, 1) = 1.0;
      t(1, 0) = 1.0;
      break;
  }
  return t;
}

Matrix printed_table2(AliceOutcome o, double lambda, double gamma) {
  const double lp = std::sqrt(1.0 - lambda * lambda);
  const double gp = std::sqrt(1.0 - gamma * gamma);
  Matrix t = Matrix::Zero(4, 2);
  // column carrying the (a_mn, b_mn) terms and the one carrying (c_mn, d_mn)
  const bool swapped = o == AliceOutcome::g0 || o == AliceOutcome::e2 || o == AliceOutcome::g1;
  const int ab = swapped ? 1 : 0;
  const int cd = swapped ? 0 : 1;
  const double sign = (o == AliceOutcome::e0 || o == AliceOutcome::g0) ? -1.0 : 1.0;
  t(0, ab) = sign * lp * gamma;
  t(1, ab) = lambda * gp;
  t(2, cd) = sign * lambda * gamma;
  t(3, cd) = lp * gp;
  return t;
}

double table_ratio_error(const Matrix& simulated, const Matrix& printed, double* leakage) {
  Eigen::Index rr = 0, rc = 0;
  printed.cwiseAbs().maxCoeff(&rr, &rc);
  const Complex sref = simulated(rr, rc);
  const Complex pref = printed(rr, rc);
  double err = 0.0;
  double leak = 0.0;
  for (Eigen::Index i = 0; i < printed.rows(); ++i) {
    for (Eigen::Index j = 0; j < printed.cols(); ++j) {
      if (std::abs(printed(i, j)) > 1e-14) {
        const Complex rt = printed(i, j) / pref;
        const Complex rs = simulated(i, j) / sref;
        err = std::max(err, std::abs(rs - rt) / std::abs(rt));
      } else {
        leak = std::max(leak, std::abs(simulated(i, j) / sref));
      }
    }
  }
  if (leakage) *leakage = leak;
  return err;
}

std::vector<TableColumnCheck> check_table1(double alpha, double theta1) {
  const QubitSetup setup(alpha, theta1, ThirdVector::u21);
  std::vector<TableColumnCheck> out;
  for (AliceOutcome o : kAliceOutcomes) {
    TableColumnCheck c{o, Matrix(2, 2), printed_table1(o)};
    // column 0: input a (|g>), column 1: input b (|e>)
    const Vector from_g = setup.bob(Qubit{0.0, 1.0}, o);
    const Vector from_e = setup.bob(Qubit{1.0, 0.0}, o);
    c.simulated.col(0) = fit(setup.span, from_g);
    c.simulated.col(1) = fit(setup.span, from_e);
    c.ratio_error = table_ratio_error(c.simulated, c.printed, &c.leakage);
    c.probability = 0.5 * (from_g.squaredNorm() + from_e.squaredNorm());
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<TableColumnCheck> check_table2(double lambda, double gamma, double alpha, double theta1) {
  const PartialSetup setup(lambda, gamma, alpha, theta1);
  std::vector<TableColumnCheck> out;
  for (AliceOutcome o : kAliceOutcomes) {
    TableColumnCheck c{o, Matrix(4, 2), printed_table2(o, lambda, gamma)};
    const Vector from_g = setup.bob(Qubit{0.0, 1.0}, o);
    const Vector from_e = setup.bob(Qubit{1.0, 0.0}, o);
    c.simulated.col(0) = fit(setup.span, from_g);
    c.simulated.col(1) = fit(setup.span, from_e);
    c.ratio_error = table_ratio_error(c.simulated, c.printed, &c.leakage);
    c.probability = 0.5 * (from_g.squaredNorm() + from_e.squaredNorm());
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<AppendixIdentity> appendix_identities(double alpha, double theta1) {
  const int n_max = default_n_max(alpha);
  const Vector a = coherent_state(alpha, n_max).amplitudes();
  const JcBlocks b1 = jc_blocks(theta1, n_max);
  const JcBlocks b2 = jc_blocks(2.0 * theta1, n_max);
  const Vector k0 = a;
  const Vector k1 = kSqrt2 * b2.apply(Level::ground, Level::ground, a);
  const Vector k2 = kSqrt2 * b2.apply(Level::ground, Level::excited, a);
  const Vector plus = 0.5 * k0 + k1 / (2.0 * kSqrt2);
  const Vector minus = -0.5 * k0 + k1 / (2.0 * kSqrt2);
  const Vector dag = k2 / (2.0 * kSqrt2);
  const Level e = Level::excited;
  const Level g = Level::ground;
  // u_{o1 i1} u_{o2 i2} |alpha>: the right factor acts first
  auto uu = [&](Level o1, Level i1, Level o2, Level i2) { return b1.apply(o1, i1, b1.apply(o2, i2, a)); };
  auto err = [](const Vector& x, const Vector& y) { return (x - y).norm(); };
  return {
      {"u22u22 ~ u11u22 ~ |0>/2 + |1>/(2 sqrt2)",
       std::max(err(uu(g, g, g, g), plus), err(uu(e, e, g, g), plus))},
      {"u12u21 ~ u21u21 ~ -|0>/2 + |1>/(2 sqrt2)",
       std::max(err(uu(e, g, g, e), minus), err(uu(g, e, g, e), minus))},
      {"u22u21 ~ u11u21 ~ |2>/(2 sqrt2)", std::max(err(uu(g, g, g, e), dag), err(uu(e, e, g, e), dag))},
      {"u21u22 ~ u12u22 ~ |2>/(2 sqrt2)", std::max(err(uu(g, e, g, g), dag), err(uu(e, g, g, g), dag))},
  };
}

OverlapStudy overlap_error_study(double alpha, double theta1, double alpha_ref) {
  auto probabilities = [theta1](double al) {
    const int n_max = default_n_max(al);
    const Vector a = coherent_state(al, n_max).amplitudes();
    const JcBlocks b1 = jc_blocks(theta1, n_max);
    const JcBlocks b2 = jc_blocks(2.0 * theta1, n_max);
    std::vector<std::pair<std::string, double>> out;
    const Level lv[] = {Level::excited, Level::ground};
    auto name = [](Level l) { return l == Level::excited ? '1' : '2'; };
    for (Level mu : lv) {
      for (Level c : lv) {
        for (Level y : lv) {
          for (Level z : lv) {
            const Vector v = b1.apply(mu, c, b2.apply(Level::ground, y, b1.apply(Level::ground, z, a)));
            const double n2 = v.squaredNorm();
            const double p = n2 > 1e-12 ? std::norm(bra_alpha(a, v)) / n2 : 0.0;
            std::string label = "u";
            label += name(mu);
            label += name(c);
            label += "(t1) u2";
            label += name(y);
            label += "(t2) u2";
            label += name(z);
            label += "(t1)";
            out.emplace_back(label, p);
          }
        }
      }
    }
    return out;
  };
  const auto at = probabilities(alpha);
  const auto ref = probabilities(alpha_ref);
  OverlapStudy s;
  for (size_t i = 0; i < at.size(); ++i) {
    const double e = std::abs(at[i].second - ref[i].second);
    if (e > s.max_error) {
      s.max_error = e;
      s.worst_state = at[i].first;
    }
  }
  return s;
}

}  // namespace cqed
