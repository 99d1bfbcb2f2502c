#include "cqed/noise.hpp"

#include <cmath>

namespace cqed {
namespace {

Eigen::Matrix4cd kron(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
  Eigen::Matrix4cd k;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) k.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  }
  return k;
}

std::vector<Eigen::Matrix4cd> pair_kraus(const QubitChannel& channel, Target which) {
  const auto ks = channel.kraus();
  const Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
  std::vector<Eigen::Matrix4cd> out;
  switch (which) {
    case Target::first:
      for (const auto& k : ks) out.push_back(kron(k, id));
      break;
    case Target::second:
      for (const auto& k : ks) out.push_back(kron(id, k));
      break;
    case Target::both:
      for (const auto& ka : ks) {
        for (const auto& kb : ks) out.push_back(kron(ka, kb));
      }
      break;
  }
  return out;
}

}  // namespace

ChannelKind parse_channel_kind(std::string_view name) {
  if (name == "depolarizing") return ChannelKind::depolarizing;
  if (name == "amplitude_damping") return ChannelKind::amplitude_damping;
  throw ContractError("unknown channel '" + std::string(name) + "' (expected depolarizing or amplitude_damping)");
}

std::string to_string(ChannelKind k) {
  return k == ChannelKind::depolarizing ? "depolarizing" : "amplitude_damping";
}

std::vector<Eigen::Matrix2cd> QubitChannel::kraus() const {
  if (!(strength >= 0.0 && strength <= 1.0)) throw ContractError("channel strength must lie in [0, 1]");
  std::vector<Eigen::Matrix2cd> ks;
  if (kind == ChannelKind::depolarizing) {
    const Eigen::Matrix2cd x = (Eigen::Matrix2cd() << 0, 1, 1, 0).finished();
    const Eigen::Matrix2cd y = (Eigen::Matrix2cd() << 0, -kI, kI, 0).finished();
    const Eigen::Matrix2cd z = (Eigen::Matrix2cd() << 1, 0, 0, -1).finished();
    ks.push_back(std::sqrt(1.0 - 0.75 * strength) * Eigen::Matrix2cd::Identity());
    const double s = std::sqrt(0.25 * strength);
    ks.push_back(s * x);
    ks.push_back(s * y);
    ks.push_back(s * z);
  } else {
    // decay |e> -> |g>; storage order {e, g}
    Eigen::Matrix2cd k0 = Eigen::Matrix2cd::Zero();
    k0(0, 0) = std::sqrt(1.0 - strength);
    k0(1, 1) = 1.0;
    Eigen::Matrix2cd k1 = Eigen::Matrix2cd::Zero();
    k1(1, 0) = std::sqrt(strength);
    ks.push_back(k0);
    ks.push_back(k1);
  }
  return ks;
}

TwoQubitDensity apply_channel(const TwoQubitDensity& rho, const QubitChannel& channel, Target which) {
  Eigen::Matrix4cd out = Eigen::Matrix4cd::Zero();
  for (const auto& k : pair_kraus(channel, which)) out += k * rho.matrix() * k.adjoint();
  return TwoQubitDensity(out);
}

std::vector<PairState> kraus_branches(const PairState& psi, const QubitChannel& channel, Target which) {
  std::vector<PairState> out;
  for (const auto& k : pair_kraus(channel, which)) {
    const PairState v = k * psi;
    if (v.squaredNorm() > 0.0) out.push_back(v);
  }
  return out;
}

NoiseStudy noisy_concentration_study(double lambda, double gamma, ChannelKind kind, std::span<const double> strengths,
                                     double alpha, double theta1, Target which) {
  const ConcentrationKernel kernel(alpha, theta1);
  const PairState p1 = PairSpec{lambda, theta1}.state();
  const PairState p2 = PairSpec{gamma, 2.0 * theta1}.state();
  NoiseStudy study;
  for (double s : strengths) {
    const QubitChannel ch{kind, s};
    const auto b1 = kraus_branches(p1, ch, which);
    const auto b2 = kraus_branches(p2, ch, which);
    NoiseRow row;
    row.strength = s;
    row.input_concurrence_1 = concurrence(apply_channel(TwoQubitDensity::pure(p1), ch, which));
    row.input_concurrence_2 = concurrence(apply_channel(TwoQubitDensity::pure(p2), ch, which));
    Eigen::Matrix4cd rho = Eigen::Matrix4cd::Zero();
    for (const auto& v1 : b1) {
      for (const auto& v2 : b2) {
        const PairState w = kernel.apply(v1, v2);
        rho += w * w.adjoint();
      }
    }
    const double tr = rho.trace().real();
    if (tr <= 0.0) throw DegenerateStateError("noisy concentration: post-selected path has zero probability");
    row.probability = tr;
    row.output = TwoQubitDensity(rho / tr);
    row.output_concurrence = concurrence(row.output);
    row.output_purity = row.output.purity();
    // a separable output never counts as enhancement, even over separable inputs;
    // concurrence of a product state comes back as rounding noise, not exactly 0
    row.enhanced = row.output_concurrence > 1e-9 &&
                   row.output_concurrence >= std::max(row.input_concurrence_1, row.input_concurrence_2);
    if (!row.enhanced && !study.crossover) study.crossover = s;
    study.rows.push_back(std::move(row));
  }
  return study;
}

}  // namespace cqed
