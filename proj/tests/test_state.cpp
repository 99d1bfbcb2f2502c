#include <cmath>
#include <random>

#include <Eigen/Eigenvalues>

#include "cqed/state.hpp"
#include "doctest.h"

using namespace cqed;

namespace {

Vector random_vector(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> nd;
  Vector v(dim);
  for (int i = 0; i < dim; ++i) v(i) = Complex(nd(rng), nd(rng));
  return v.normalized();
}

const PairState kBell = PairState{0, 1, 1, 0} / std::sqrt(2.0);

}  // namespace

TEST_CASE("construction contracts") {
  CHECK_THROWS_AS(CompositeState(Vector::Ones(4), {{"a", 2}, {"b", 2}}), ContractError);
  CHECK_THROWS_AS(CompositeState(Vector::Unit(4, 0), {{"a", 2}, {"a", 2}}), ContractError);
  CHECK_THROWS_AS(CompositeState(Vector::Unit(4, 0), {{"a", 2}, {"b", 3}}), ContractError);
  auto [s, n2] = CompositeState::from_unnormalized(Vector::Ones(4), {{"a", 2}, {"b", 2}});
  CHECK(n2 == doctest::Approx(4.0));
  CHECK(s.norm() == doctest::Approx(1.0));
  CHECK_THROWS_AS(CompositeState::from_unnormalized(Vector::Zero(4), {{"a", 2}, {"b", 2}}), DegenerateStateError);
}

TEST_CASE("tensor") {
  const CompositeState s = tensor({CompositeState::atom("atom", Level::excited),
                                   CompositeState::field("field", fock_state(0, 5))});
  CHECK(s.amplitudes().size() == 12);
  CHECK(std::abs(s.amplitudes()(0) - 1.0) < 1e-15);
  CHECK(s.index_of("field") == 1);
  CHECK(s.stride(0) == 6);
  CHECK_THROWS_AS(s.index_of("nope"), ContractError);

  SUBCASE("round trip through partial_trace") {
    std::mt19937_64 rng(5);
    const Vector a = random_vector(3, rng);
    const CompositeState x = tensor({CompositeState(a, {{"x", 3}}), CompositeState(random_vector(4, rng), {{"y", 4}})});
    const std::string keep[] = {"x"};
    const Matrix rho = partial_trace(x, keep);
    CHECK((rho - a * a.adjoint()).norm() < 1e-12);
  }
}

TEST_CASE("permute") {
  std::mt19937_64 rng(8);
  const CompositeState s(random_vector(2 * 3 * 4, rng), {{"a", 2}, {"b", 3}, {"c", 4}});
  const std::string order[] = {"c", "a", "b"};
  const CompositeState p = permute(s, order);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 4; ++k) CHECK(p.amplitudes()(k * 6 + i * 3 + j) == s.amplitudes()(i * 12 + j * 4 + k));
  const std::string back[] = {"a", "b", "c"};
  CHECK((permute(p, back).amplitudes() - s.amplitudes()).norm() == 0.0);
  const std::string dup[] = {"a", "a", "b"};
  CHECK_THROWS_AS(permute(s, dup), ContractError);
}

TEST_CASE("partial_trace") {
  SUBCASE("product state gives a pure reduced state") {
    const CompositeState s = tensor({CompositeState::atom("a", Level::ground), CompositeState::atom("b", Level::excited)});
    const std::string keep[] = {"a"};
    const Matrix rho = partial_trace(s, keep);
    CHECK(std::abs((rho * rho).trace().real() - 1.0) < 1e-9);
  }
  SUBCASE("Bell pair gives the maximally mixed qubit") {
    const CompositeState s = CompositeState::pair("a", "b", kBell);
    const std::string keep[] = {"a"};
    const Eigen::SelfAdjointEigenSolver<Matrix> es(partial_trace(s, keep));
    CHECK(es.eigenvalues()(0) == doctest::Approx(0.5));
    CHECK(es.eigenvalues()(1) == doctest::Approx(0.5));
  }
  SUBCASE("Hermitian, positive, unit trace on random states") {
    std::mt19937_64 rng(21);
    const CompositeState s(random_vector(60, rng), {{"a", 3}, {"b", 4}, {"c", 5}});
    const std::string keep[] = {"c", "a"};
    const Matrix rho = partial_trace(s, keep);
    CHECK(rho.rows() == 15);
    CHECK((rho - rho.adjoint()).norm() < 1e-14);
    CHECK(std::abs(rho.trace() - 1.0) < 1e-9);
    CHECK(Eigen::SelfAdjointEigenSolver<Matrix>(rho).eigenvalues().minCoeff() > -1e-10);
  }
  CHECK_THROWS_AS(partial_trace(CompositeState::pair("a", "b", kBell), std::span<const std::string>{}), ContractError);
}

TEST_CASE("apply_local and condition") {
  const CompositeState s = CompositeState::pair("a", "b", kBell);
  Matrix x(2, 2);
  x << 0, 1, 1, 0;
  const CompositeState f = apply_local(s, "b", x);
  // (|e,g> + |g,e>) -> (|e,e> + |g,g>)
  CHECK(std::abs(f.amplitudes()(0) - 1 / std::sqrt(2.0)) < 1e-15);
  CHECK(std::abs(f.amplitudes()(3) - 1 / std::sqrt(2.0)) < 1e-15);

  const Conditioned c = condition(s, "a", Vector(Vector::Unit(2, 0)));
  CHECK(c.probability == doctest::Approx(0.5));
  REQUIRE(c.state);
  CHECK(std::abs(c.state->amplitudes()(1) - 1.0) < 1e-15);
  const Conditioned none = condition(CompositeState::atom("a", Level::ground), "a", Vector(Vector::Unit(2, 0)));
  CHECK(none.probability == 0.0);
  CHECK_FALSE(none.state);
}

TEST_CASE("project") {
  const std::vector<Vector> eg{Vector::Unit(2, 0), Vector::Unit(2, 1)};
  const std::vector<std::string> labels{"e", "g"};

  SUBCASE("|e,0> measured in {e, g}") {
    const CompositeState s = tensor({CompositeState::atom("atom", Level::excited), CompositeState::field("f", fock_state(0, 4))});
    const auto r = project(s, "atom", eg, labels);
    CHECK(r[0].probability == doctest::Approx(1.0));
    CHECK(r[1].probability == 0.0);
    CHECK_FALSE(r[1].collapsed);
  }
  SUBCASE("complete basis recombines to the reduced state of the rest") {
    std::mt19937_64 rng(2);
    const CompositeState s(random_vector(2 * 2 * 3, rng), {{"a", 2}, {"b", 2}, {"c", 3}});
    const auto r = project(s, "b", eg, labels);
    double total = 0.0;
    Matrix mix = Matrix::Zero(6, 6);
    const std::string keep[] = {"a", "c"};
    for (const auto& rec : r) {
      total += rec.probability;
      const Matrix part = partial_trace(*rec.collapsed, keep);
      mix += rec.probability * part;
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    CHECK((mix - partial_trace(s, keep)).norm() < 1e-9);
  }
  SUBCASE("rank-one coherent projection with explicit complement") {
    const FieldState c = coherent_state(2.0, default_n_max(2.0));
    const CompositeState s = CompositeState::field("f", c);
    const std::vector<Vector> basis{c.amplitudes()};
    const std::vector<std::string> one{"alpha"};
    CHECK_THROWS_AS(project(s, "f", basis, one), ContractError);
    const auto r = project(s, "f", basis, one, Completeness::partial);
    REQUIRE(r.size() == 2);
    CHECK(r[0].probability == doctest::Approx(1.0));
    CHECK(r[1].outcome_label == "unresolved");
    CHECK(r[1].probability < 1e-14);
  }
  SUBCASE("non-orthonormal basis is rejected") {
    const CompositeState s = CompositeState::atom("atom", Level::excited);
    const std::vector<Vector> bad{Vector::Unit(2, 0), Vector(Vector::Ones(2).normalized())};
    CHECK_THROWS_AS(project(s, "atom", bad, labels), ContractError);
  }
}
