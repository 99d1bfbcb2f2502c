#include "cqed/protocols.hpp"

#include <cmath>
#include <map>
#include <numeric>

namespace cqed {
namespace {

const std::string kAtomA = "atom-A";
const std::string kAtomB = "atom-B";

Level level_of(int i) { return i == 0 ? Level::excited : Level::ground; }

std::pair<Level, Level> levels(AtomPairOutcome o) {
  switch (o) {
    case AtomPairOutcome::gg:
      return {Level::ground, Level::ground};
    case AtomPairOutcome::eg:
      return {Level::excited, Level::ground};
    case AtomPairOutcome::ge:
      return {Level::ground, Level::excited};
    case AtomPairOutcome::ee:
      return {Level::excited, Level::excited};
  }
  throw ContractError("unknown atom pair outcome");
}

Vector level_vector(Level l) {
  Vector v = Vector::Zero(2);
  v(index(l)) = 1.0;
  return v;
}

// Blocks cached per (theta, dim) within one protocol call.
class BlockCache {
 public:
  const JcBlocks& get(double theta, int dim) {
    auto key = std::make_pair(theta, dim);
    auto it = cache_.find(key);
    if (it == cache_.end()) it = cache_.emplace(key, jc_blocks(theta, dim - 1)).first;
    return it->second;
  }

 private:
  std::map<std::pair<double, int>, JcBlocks> cache_;
};

void require_fields(const CompositeState& fields) {
  if (!fields.has(kFieldA) || !fields.has(kFieldB)) {
    throw ContractError("expected a register containing '" + kFieldA + "' and '" + kFieldB + "'");
  }
}

Conditioned condition_or_throw(const CompositeState& s, std::string_view label, const Vector& v) {
  Conditioned c = condition(s, label, v);
  if (!c.state) throw DegenerateStateError("conditioning on '" + std::string(label) + "' has negligible probability");
  return c;
}

ProtocolResult chain(const ProtocolResult& before, ProtocolResult after) {
  std::vector<Step> path = before.path;
  path.insert(path.end(), after.path.begin(), after.path.end());
  after.path = std::move(path);
  return after;
}

}  // namespace

double PairSpec::lambda_prime() const { return std::sqrt(std::max(0.0, 1.0 - lambda_coeff * lambda_coeff)); }

PairState PairSpec::state() const {
  if (!(lambda_coeff >= 0.0 && lambda_coeff <= 1.0)) throw ContractError("PairSpec: lambda must lie in [0, 1]");
  PairState p = PairState::Zero();
  p(1) = lambda_coeff;
  p(2) = lambda_prime();
  return p;
}

AtomPairOutcome parse_outcome(std::string_view label) {
  if (label == "gg") return AtomPairOutcome::gg;
  if (label == "eg") return AtomPairOutcome::eg;
  if (label == "ge") return AtomPairOutcome::ge;
  if (label == "ee") return AtomPairOutcome::ee;
  throw ContractError("invalid atom pair outcome '" + std::string(label) + "' (expected gg, eg, ge or ee)");
}

std::string to_string(AtomPairOutcome o) {
  switch (o) {
    case AtomPairOutcome::gg:
      return "gg";
    case AtomPairOutcome::eg:
      return "eg";
    case AtomPairOutcome::ge:
      return "ge";
    case AtomPairOutcome::ee:
      return "ee";
  }
  return "?";
}

PairState outcome_vector(AtomPairOutcome o) {
  const auto [a, b] = levels(o);
  PairState v = PairState::Zero();
  v(2 * index(a) + index(b)) = 1.0;
  return v;
}

double ProtocolResult::compound_probability() const {
  return std::accumulate(path.begin(), path.end(), 1.0, [](double acc, const Step& s) { return acc * s.probability; });
}

std::string ProtocolResult::branch() const {
  std::string out;
  for (const auto& s : path) {
    if (!out.empty()) out += " > ";
    out += s.label;
  }
  return out;
}

CompositeState initial_fields(double alpha, int n_max) {
  if (n_max <= 0) n_max = default_n_max(alpha);
  const FieldState a = coherent_state(alpha, n_max);
  return tensor({CompositeState::field(kFieldA, a), CompositeState::field(kFieldB, a)});
}

void check_field_edges(const CompositeState& state) {
  const Vector& amps = state.amplitudes();
  for (int k = 0; k < state.size(); ++k) {
    const Subsystem& s = state.subsystems()[k];
    if (s.label.rfind("field", 0) != 0) continue;
    const long stride = state.stride(k);
    double edge = 0.0;
    for (long idx = 0; idx < amps.size(); ++idx) {
      if ((idx / stride) % s.dim == s.dim - 1) edge += std::norm(amps(idx));
    }
    if (edge > kEdgeTolerance) {
      throw TruncationError("population " + std::to_string(edge) + " in the top Fock level of '" + s.label +
                            "' exceeds the truncation tolerance; raise n_max");
    }
  }
}

ProtocolResult accumulate_pair_state(const CompositeState& fields, const PairState& pair, double theta,
                                     AtomPairOutcome outcome) {
  require_fields(fields);
  const double n0 = pair.norm();
  if (n0 == 0.0) throw DegenerateStateError("accumulate_pair_state: null pair state");
  BlockCache cache;
  CompositeState s = tensor({CompositeState::pair(kAtomA, kAtomB, pair / n0), fields});
  s = apply_jc(kAtomA, kFieldA, cache.get(theta, s.dim(kFieldA)), s);
  s = apply_jc(kAtomB, kFieldB, cache.get(theta, s.dim(kFieldB)), s);
  const auto [la, lb] = levels(outcome);
  Conditioned ca = condition_or_throw(s, kAtomA, level_vector(la));
  Conditioned cb = condition_or_throw(*ca.state, kAtomB, level_vector(lb));
  check_field_edges(*cb.state);
  const double p = ca.probability * cb.probability;
  return {*cb.state, p, {{"accumulate:" + to_string(outcome), p}}};
}

ProtocolResult accumulate_pair(const CompositeState& fields, const PairSpec& pair, AtomPairOutcome outcome) {
  return accumulate_pair_state(fields, pair.state(), pair.theta, outcome);
}

ProtocolResult retrieve_pair(const CompositeState& fields, double theta, double alpha) {
  require_fields(fields);
  BlockCache cache;
  CompositeState s = tensor({CompositeState::atom(kAtomA, Level::ground), CompositeState::atom(kAtomB, Level::ground),
                             fields});
  s = apply_jc(kAtomA, kFieldA, cache.get(theta, s.dim(kFieldA)), s);
  s = apply_jc(kAtomB, kFieldB, cache.get(theta, s.dim(kFieldB)), s);
  check_field_edges(s);
  Conditioned ca = condition_or_throw(s, kFieldA, coherent_amplitudes(alpha, s.dim(kFieldA) - 1));
  Conditioned cb = condition_or_throw(*ca.state, kFieldB, coherent_amplitudes(alpha, s.dim(kFieldB) - 1));
  const double p = ca.probability * cb.probability;
  return {*cb.state, p, {{"retrieve:alpha,alpha", p}}};
}

ProtocolResult accumulate_two_pairs(const PairSpec& pair1, const PairSpec& pair2, double alpha,
                                    std::pair<AtomPairOutcome, AtomPairOutcome> outcomes,
                                    const TwoPairOptions& options) {
  if (std::abs(pair2.theta - options.t2_ratio * pair1.theta) > 1e-9 * std::max(1.0, pair2.theta)) {
    throw ContractError("accumulate_two_pairs: pair2.theta must equal t2_ratio * pair1.theta");
  }
  const CompositeState fields = initial_fields(alpha, options.n_max);
  const ProtocolResult first = accumulate_pair(fields, pair1, outcomes.first);
  ProtocolResult second = accumulate_pair(first.conditioned_state, pair2, outcomes.second);
  return chain(first, std::move(second));
}

ProtocolResult retrieve_two_pairs(const CompositeState& fields, double theta1, double alpha, RetrievalOrder order) {
  require_fields(fields);
  BlockCache cache;
  const CompositeState g1a = CompositeState::atom("atom-1A", Level::ground);
  const CompositeState g1b = CompositeState::atom("atom-1B", Level::ground);
  const CompositeState g2a = CompositeState::atom("atom-2A", Level::ground);
  const CompositeState g2b = CompositeState::atom("atom-2B", Level::ground);
  CompositeState s = tensor({g1a, g1b, g2a, g2b, fields});
  const JcBlocks& b1 = cache.get(theta1, s.dim(kFieldA));
  const JcBlocks& b2 = cache.get(2.0 * theta1, s.dim(kFieldA));
  auto pass = [&](const std::string& suffix, const JcBlocks& b) {
    s = apply_jc("atom-" + suffix + "A", kFieldA, b, s);
    s = apply_jc("atom-" + suffix + "B", kFieldB, b, s);
  };
  if (order == RetrievalOrder::last_in_first_out) {
    pass("2", b2);
    pass("1", b1);
  } else {
    pass("1", b1);
    pass("2", b2);
  }
  check_field_edges(s);
  Conditioned ca = condition_or_throw(s, kFieldA, coherent_amplitudes(alpha, s.dim(kFieldA) - 1));
  Conditioned cb = condition_or_throw(*ca.state, kFieldB, coherent_amplitudes(alpha, s.dim(kFieldB) - 1));
  const double p = ca.probability * cb.probability;
  return {*cb.state, p, {{"retrieve2:alpha,alpha", p}}};
}

ProtocolResult concentrate(const PairSpec& pair1, const PairSpec& pair2, double alpha, const TwoPairOptions& options) {
  const ProtocolResult acc = accumulate_two_pairs(pair1, pair2, alpha, {AtomPairOutcome::gg, AtomPairOutcome::gg},
                                                  options);
  return chain(acc, retrieve_pair(acc.conditioned_state, pair1.theta, alpha));
}

PairState Concentrated::state() const {
  PairState p = PairState::Zero();
  p(0) = theta;
  p(3) = theta_prime;
  return p;
}

Concentrated analytic_concentrated_state(double lambda, double gamma) {
  if (!(lambda >= 0.0 && lambda <= 1.0 && gamma >= 0.0 && gamma <= 1.0)) {
    throw ContractError("analytic_concentrated_state: inputs must lie in [0, 1]");
  }
  const double lp = std::sqrt(1.0 - lambda * lambda);
  const double gp = std::sqrt(1.0 - gamma * gamma);
  const double t = lambda * gp + lp * gamma;
  const double tp = lambda * gamma + lp * gp;
  const double n = std::hypot(t, tp);
  return {t / n, tp / n};
}

PairState schmidt_projection_state(double lambda, double gamma) {
  if (!(lambda >= 0.0 && lambda <= 1.0 && gamma >= 0.0 && gamma <= 1.0)) {
    throw ContractError("schmidt_projection_state: inputs must lie in [0, 1]");
  }
  const double lp = std::sqrt(1.0 - lambda * lambda);
  const double gp = std::sqrt(1.0 - gamma * gamma);
  const double x = lambda * gp;
  const double y = lp * gamma;
  const double n = std::hypot(x, y);
  if (n < 1e-15) throw DegenerateStateError("Schmidt projection output undefined: lambda*gamma' = lambda'*gamma = 0");
  PairState p = PairState::Zero();
  p(1) = x / n;
  p(2) = y / n;
  return p;
}

PairState procrustean_state(double lambda, double cos_phi) { return schmidt_projection_state(lambda, cos_phi); }

ConcentrationKernel::ConcentrationKernel(double alpha, double theta1, double t2_ratio, int n_max) {
  if (n_max <= 0) n_max = default_n_max(alpha);
  const Vector a = coherent_state(alpha, n_max).amplitudes();
  const JcBlocks b1 = jc_blocks(theta1, n_max);
  const JcBlocks b2 = jc_blocks(t2_ratio * theta1, n_max);
  const Matrix m0 = a * a.transpose();
  auto pass = [](const JcBlocks& b, Level out_a, Level in_a, Level out_b, Level in_b, const Matrix& m) {
    return b.apply_cols(out_b, in_b, b.apply_rows(out_a, in_a, m));
  };
  for (int k1 = 0; k1 < 4; ++k1) {
    const Matrix m1 = pass(b1, Level::ground, level_of(k1 / 2), Level::ground, level_of(k1 % 2), m0);
    for (int k2 = 0; k2 < 4; ++k2) {
      const Matrix m2 = pass(b2, Level::ground, level_of(k2 / 2), Level::ground, level_of(k2 % 2), m1);
      for (int o = 0; o < 4; ++o) {
        const Matrix r = pass(b1, level_of(o / 2), Level::ground, level_of(o % 2), Level::ground, m2);
        map_(o, 4 * k1 + k2) = a.transpose() * r * a;
      }
    }
  }
}

PairState ConcentrationKernel::apply(const PairState& pair1, const PairState& pair2) const {
  Eigen::Matrix<Complex, 16, 1> in;
  for (int i = 0; i < 4; ++i) in.segment<4>(4 * i) = pair1(i) * pair2;
  return map_ * in;
}

RealVector retrieval_photon_distribution(const CompositeState& fields, std::span<const double> thetas, double alpha) {
  require_fields(fields);
  BlockCache cache;
  std::vector<CompositeState> parts;
  for (size_t k = 0; k < thetas.size(); ++k) {
    parts.push_back(CompositeState::atom("atom-" + std::to_string(k) + "A", Level::ground));
    parts.push_back(CompositeState::atom("atom-" + std::to_string(k) + "B", Level::ground));
  }
  parts.push_back(fields);
  CompositeState s = tensor(parts);
  for (size_t k = 0; k < thetas.size(); ++k) {
    s = apply_jc("atom-" + std::to_string(k) + "A", kFieldA, cache.get(thetas[k], s.dim(kFieldA)), s);
    s = apply_jc("atom-" + std::to_string(k) + "B", kFieldB, cache.get(thetas[k], s.dim(kFieldB)), s);
  }
  const std::vector<std::string> keep{kFieldA};
  const Matrix rho = partial_trace(s, keep);
  const Matrix d = displacement(-alpha, s.dim(kFieldA) - 1).matrix;
  return (d * rho * d.adjoint()).diagonal().real();
}

}  // namespace cqed
