#include "cqed/measures.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include <Eigen/Eigenvalues>

namespace cqed {

double von_neumann_entropy(const Matrix& rho) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho, Eigen::EigenvaluesOnly);
  double s = 0.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double p = es.eigenvalues()(i);
    if (p > kEntropyCutoff) s -= p * std::log2(p);
  }
  return std::max(s, 0.0);
}

double binary_entropy(double p) {
  double s = 0.0;
  if (p > kEntropyCutoff) s -= p * std::log2(p);
  if (1.0 - p > kEntropyCutoff) s -= (1.0 - p) * std::log2(1.0 - p);
  return s;
}

RealVector schmidt_coefficients(const CompositeState& state, std::span<const std::string> partition) {
  std::vector<std::string> order(partition.begin(), partition.end());
  long dkeep = 1;
  for (const auto& l : partition) dkeep *= state.dim(l);
  for (const auto& s : state.subsystems()) {
    if (std::find(partition.begin(), partition.end(), s.label) == partition.end()) order.push_back(s.label);
  }
  const CompositeState p = permute(state, order);
  const long drest = p.amplitudes().size() / dkeep;
  using RowMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  const Matrix m = Eigen::Map<const RowMatrix>(p.amplitudes().data(), dkeep, drest);
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues();
}

double entropy_of_entanglement(const CompositeState& state, std::span<const std::string> partition) {
  // SVD of the smaller side is cheaper than a reduced density matrix of a large field
  const RealVector s = schmidt_coefficients(state, partition);
  double e = 0.0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    const double p = s(i) * s(i);
    if (p > kEntropyCutoff) e -= p * std::log2(p);
  }
  return std::max(e, 0.0);
}

double entropy_of_entanglement(const CompositeState& state, std::initializer_list<std::string> partition) {
  return entropy_of_entanglement(state, std::span<const std::string>(partition.begin(), partition.size()));
}

double pair_entropy(const PairState& psi) {
  Eigen::Matrix2cd m;
  m << psi(0), psi(1), psi(2), psi(3);
  Eigen::JacobiSVD<Eigen::Matrix2cd> svd(m);
  const double n2 = psi.squaredNorm();
  const double p = svd.singularValues()(0) * svd.singularValues()(0) / n2;
  return binary_entropy(p);
}

TwoQubitDensity::TwoQubitDensity(const Eigen::Matrix4cd& rho) : rho_(rho) {
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-9) throw ContractError("density matrix is not Hermitian");
  if (std::abs(rho.trace() - 1.0) > 1e-9) throw ContractError("density matrix trace differs from 1");
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(rho, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -1e-10) throw ContractError("density matrix has a negative eigenvalue");
  rho_ = 0.5 * (rho + rho.adjoint());
}

TwoQubitDensity TwoQubitDensity::pure(const PairState& psi) {
  const PairState v = psi / psi.norm();
  return TwoQubitDensity(v * v.adjoint());
}

TwoQubitDensity TwoQubitDensity::maximally_mixed() { return TwoQubitDensity(Eigen::Matrix4cd::Identity() / 4.0); }

double TwoQubitDensity::purity() const { return (rho_ * rho_).trace().real(); }

double concurrence(const TwoQubitDensity& rho) {
  Eigen::Matrix4cd yy = Eigen::Matrix4cd::Zero();
  // sigma_y (x) sigma_y is basis-order independent up to sign: anti-diagonal (-1, 1, 1, -1)
  yy(0, 3) = -1.0;
  yy(1, 2) = 1.0;
  yy(2, 1) = 1.0;
  yy(3, 0) = -1.0;
  const Eigen::Matrix4cd& r = rho.matrix();
  const Eigen::Matrix4cd tilde = yy * r.conjugate() * yy;
  // eigenvalues of the Hermitian sqrt(r) tilde sqrt(r) are the squared Wootters lambdas
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(r);
  const Eigen::Vector4d w = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  const Eigen::Matrix4cd sq = es.eigenvectors() * w.asDiagonal() * es.eigenvectors().adjoint();
  const Eigen::Matrix4cd h = sq * tilde * sq;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> eh(0.5 * (h + h.adjoint()), Eigen::EigenvaluesOnly);
  Eigen::Vector4d l = eh.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  std::sort(l.data(), l.data() + 4, std::greater<>());
  return std::clamp(l(0) - l(1) - l(2) - l(3), 0.0, 1.0);
}

double fidelity(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw ContractError("fidelity: dimension mismatch");
  if (std::abs(a.norm() - 1.0) > 1e-9 || std::abs(b.norm() - 1.0) > 1e-9) {
    throw ContractError("fidelity: states must be normalized");
  }
  return std::min(1.0, std::norm(a.dot(b)));
}

double fidelity(const CompositeState& a, const CompositeState& b) {
  if (a.subsystems() != b.subsystems()) throw ContractError("fidelity: registers differ");
  return fidelity(a.amplitudes(), b.amplitudes());
}

Vector haar_state(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  Vector v(dim);
  for (int i = 0; i < dim; ++i) {
    const double re = gauss(rng);
    const double im = gauss(rng);
    v(i) = Complex(re, im);
  }
  return v / v.norm();
}

Qubit haar_qubit(std::mt19937_64& rng) { return haar_state(2, rng); }

double average_fidelity(const TeleportChannel& channel, int samples, std::uint64_t seed) {
  if (samples < 1) throw ContractError("average_fidelity: samples must be >= 1");
  std::mt19937_64 rng(seed);
  double num = 0.0;
  double den = 0.0;
  for (int i = 0; i < samples; ++i) {
    const Qubit in = haar_qubit(rng);
    const ChannelOutput out = channel(in);
    num += out.probability * std::norm(in.dot(out.state));
    den += out.probability;
  }
  if (den <= 0.0) throw DegenerateStateError("average_fidelity: channel never succeeds");
  return num / den;
}

}  // namespace cqed
