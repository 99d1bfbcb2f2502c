#include <cmath>
#include <random>

#include "cqed/measures.hpp"
#include "cqed/teleport.hpp"
#include "doctest.h"
#include "oracle.hpp"

using namespace cqed;

namespace {

Eigen::Matrix2cd random_unitary(std::mt19937_64& rng) {
  std::normal_distribution<double> nd;
  Eigen::Matrix2cd m;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) m(i, j) = Complex(nd(rng), nd(rng));
  return Eigen::HouseholderQR<Eigen::Matrix2cd>(m).householderQ();
}

PairState pair_state(double lambda) {
  const double lp = std::sqrt(1 - lambda * lambda);
  return PairState{0, lambda, lp, 0};
}

}  // namespace

TEST_CASE("entropy") {
  CHECK(binary_entropy(0.5) == doctest::Approx(1.0));
  CHECK(binary_entropy(0.0) == 0.0);
  CHECK(pair_entropy(PairState{0, 0, 0, 1}) == doctest::Approx(0.0));
  CHECK(pair_entropy(pair_state(1 / std::sqrt(2.0))) == doctest::Approx(1.0));
  CHECK(pair_entropy(pair_state(0.3)) == doctest::Approx(oracle::binary_entropy(0.09)));

  SUBCASE("complement symmetry and local unitary invariance") {
    std::mt19937_64 rng(4);
    std::normal_distribution<double> nd;
    Vector v(2 * 2 * 3);
    for (int i = 0; i < v.size(); ++i) v(i) = Complex(nd(rng), nd(rng));
    CompositeState s(v.normalized(), {{"a", 2}, {"b", 2}, {"c", 3}});
    const double e = entropy_of_entanglement(s, {"a"});
    CHECK(std::abs(e - entropy_of_entanglement(s, {"b", "c"})) < 1e-9);
    for (int k = 0; k < 5; ++k) {
      s = apply_local(s, "a", random_unitary(rng));
      s = apply_local(s, "b", random_unitary(rng));
      CHECK(std::abs(entropy_of_entanglement(s, {"a"}) - e) < 1e-9);
    }
  }
  SUBCASE("Schmidt coefficients") {
    const CompositeState s = CompositeState::pair("a", "b", pair_state(0.6));
    const std::string part[] = {"a"};
    const RealVector c = schmidt_coefficients(s, part);
    CHECK(c(0) == doctest::Approx(0.8));
    CHECK(c(1) == doctest::Approx(0.6));
  }
}

TEST_CASE("TwoQubitDensity and concurrence") {
  CHECK(concurrence(TwoQubitDensity::maximally_mixed()) < 1e-12);
  CHECK(concurrence(TwoQubitDensity::pure(pair_state(1 / std::sqrt(2.0)))) == doctest::Approx(1.0));
  for (double l : {0.0, 0.1, 0.3, 0.6, 0.9}) {
    const double lp = std::sqrt(1 - l * l);
    CHECK(concurrence(TwoQubitDensity::pure(pair_state(l))) == doctest::Approx(2 * l * lp).epsilon(1e-9));
  }
  // Werner state p |Bell><Bell| + (1-p) I/4 has concurrence max(0, (3p-1)/2)
  const Eigen::Matrix4cd bell = TwoQubitDensity::pure(pair_state(1 / std::sqrt(2.0))).matrix();
  for (double p : {0.2, 0.5, 0.9}) {
    const TwoQubitDensity w(p * bell + (1 - p) * Eigen::Matrix4cd::Identity() / 4.0);
    CHECK(concurrence(w) == doctest::Approx(std::max(0.0, (3 * p - 1) / 2)).epsilon(1e-9));
  }
  CHECK(TwoQubitDensity::maximally_mixed().purity() == doctest::Approx(0.25));
  Eigen::Matrix4cd bad = Eigen::Matrix4cd::Zero();
  bad(0, 0) = 2.0;
  bad(1, 1) = -1.0;
  CHECK_THROWS_AS(TwoQubitDensity{bad}, ContractError);
  Eigen::Matrix4cd nonherm = Eigen::Matrix4cd::Identity() / 4.0;
  nonherm(0, 1) = 0.1;
  CHECK_THROWS_AS(TwoQubitDensity{nonherm}, ContractError);
}

TEST_CASE("fidelity") {
  const Vector a = Vector::Unit(3, 0);
  CHECK(fidelity(a, a) == doctest::Approx(1.0));
  CHECK(fidelity(a, Vector(Vector::Unit(3, 1))) == 0.0);
  CHECK_THROWS_AS(fidelity(a, Vector(Vector::Unit(2, 0))), ContractError);
}

TEST_CASE("average_fidelity") {
  const TeleportChannel identity = [](const Qubit& q) { return ChannelOutput{q, 1.0}; };
  CHECK(average_fidelity(identity, 100, 1) == doctest::Approx(1.0));
  CHECK(average_fidelity(identity, 100, 1) == average_fidelity(identity, 100, 1));

  SUBCASE("linear channels against the closed-form Haar integral") {
    std::mt19937_64 rng(17);
    std::normal_distribution<double> nd;
    for (int trial = 0; trial < 4; ++trial) {
      Eigen::Matrix2cd m;
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) m(i, j) = Complex(nd(rng), nd(rng));
      const TeleportChannel ch = [m](const Qubit& q) {
        const Qubit w = m * q;
        return ChannelOutput{w.normalized(), w.squaredNorm()};
      };
      CHECK(std::abs(average_fidelity(ch, 20000, 99 + trial) - oracle::haar_average_fidelity(m)) < 0.01);
    }
  }
  SUBCASE("standard teleportation over a maximal pair") {
    const PairState phi = PairState{1, 0, 0, 1} / std::sqrt(2.0);
    CHECK(standard_average_fidelity(phi, 10000, 3) == doctest::Approx(1.0).epsilon(1e-3));
  }
  SUBCASE("standard teleportation over the concentrated pair") {
    const auto [t, tp] = oracle::concentrated(0.3, 0.5);
    const PairState res{t, 0, 0, tp};
    CHECK(std::abs(standard_average_fidelity(res, 20000, 5) - (2 + 2 * t * tp) / 3) < 0.01);
  }
}
