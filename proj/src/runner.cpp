#include <cmath>
#include <map>
#include <set>

#include "cqed/cli.hpp"
#include "cqed/measures.hpp"
#include "cqed/protocols.hpp"
#include "cqed/teleport.hpp"
#include "json.hpp"

namespace cqed {
namespace {

using nlohmann::json;

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

// optional flags each protocol understands; the rest are usage errors
const std::map<std::string, std::set<std::string>, std::less<>> kAllowed{
    {"accumulate", {"lambda", "outcome"}},
    {"retrieve", {"lambda", "outcome"}},
    {"accumulate2", {"lambda", "gamma", "t2-ratio"}},
    {"retrieve2", {"lambda", "gamma", "t2-ratio"}},
    {"concentrate", {"lambda", "gamma", "t2-ratio"}},
    {"teleport", {"outcome", "a", "b"}},
    {"teleport-qudit", {"a", "b", "c", "d"}},
    {"teleport-partial", {"lambda", "gamma", "outcome", "a", "b"}},
};

std::set<std::string> given_flags(const RunConfig& c) {
  std::set<std::string> s;
  if (c.lambda) s.insert("lambda");
  if (c.gamma) s.insert("gamma");
  if (c.outcome) s.insert("outcome");
  if (c.seed) s.insert("seed");
  if (c.a) s.insert("a");
  if (c.b) s.insert("b");
  if (c.c) s.insert("c");
  if (c.d) s.insert("d");
  if (c.t2_ratio != 2.0) s.insert("t2-ratio");
  if (c.samples != RunConfig{}.samples) s.insert("samples");
  return s;
}

json complex_list(const Vector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back({v(i).real(), v(i).imag()});
  return out;
}

json path_json(const std::vector<Step>& path) {
  json out = json::array();
  for (const Step& s : path) out.push_back({{"stage", s.label}, {"probability", s.probability}});
  return out;
}

void add_state(json& j, const CompositeState& s, bool dump) {
  json subs = json::array();
  for (const Subsystem& x : s.subsystems()) subs.push_back({{"label", x.label}, {"dim", x.dim}});
  j["register"] = subs;
  if (dump) j["amplitudes"] = complex_list(s.amplitudes());
}

Qubit input_qubit(const RunConfig& c) {
  const Qubit q = qubit_from_ground_excited(c.a.value_or(1.0), c.b.value_or(0.0));
  if (q.norm() == 0.0) throw UsageError("input amplitudes --a/--b must not both be zero");
  return q.normalized();
}

json accumulate_json(const RunConfig& c, bool with_retrieval) {
  const double alpha = c.alpha.value_or(3.0);
  const double lambda = c.lambda.value_or(kInvSqrt2);
  const AtomPairOutcome outcome = c.outcome ? parse_outcome(*c.outcome) : AtomPairOutcome::gg;
  const ProtocolResult acc = accumulate_pair(initial_fields(alpha, c.n_max), PairSpec{lambda, c.theta1}, outcome);
  json j{{"protocol", with_retrieval ? "retrieve" : "accumulate"},
         {"alpha", alpha},
         {"theta1", c.theta1},
         {"lambda", lambda},
         {"outcome", to_string(outcome)},
         {"E_pair", binary_entropy(lambda * lambda)},
         {"E_field", entropy_of_entanglement(acc.conditioned_state, {kFieldA})}};
  if (!with_retrieval) {
    j["probability"] = acc.probability;
    j["path"] = path_json(acc.path);
    add_state(j, acc.conditioned_state, c.dump_amplitudes);
    return j;
  }
  const ProtocolResult ret = retrieve_pair(acc.conditioned_state, c.theta1, alpha);
  j["probability"] = ret.probability;
  j["compound_probability"] = acc.compound_probability() * ret.compound_probability();
  std::vector<Step> path = acc.path;
  path.insert(path.end(), ret.path.begin(), ret.path.end());
  j["path"] = path_json(path);
  j["E_out"] = entropy_of_entanglement(ret.conditioned_state, {"atom-A"});
  add_state(j, ret.conditioned_state, c.dump_amplitudes);
  return j;
}

json two_pair_json(const RunConfig& c, std::string_view protocol) {
  const double alpha = c.alpha.value_or(10.0);
  const double lambda = c.lambda.value_or(kInvSqrt2);
  const double gamma = c.gamma.value_or(kInvSqrt2);
  const PairSpec p1{lambda, c.theta1};
  const PairSpec p2{gamma, c.t2_ratio * c.theta1};
  const TwoPairOptions opts{c.t2_ratio, c.n_max};
  json j{{"protocol", protocol},   {"alpha", alpha},
         {"theta1", c.theta1},     {"t2_ratio", c.t2_ratio},
         {"lambda", lambda},       {"gamma", gamma},
         {"E_pair1", binary_entropy(lambda * lambda)},
         {"E_pair2", binary_entropy(gamma * gamma)}};
  const ProtocolResult acc =
      accumulate_two_pairs(p1, p2, alpha, {AtomPairOutcome::gg, AtomPairOutcome::gg}, opts);
  j["E_field"] = entropy_of_entanglement(acc.conditioned_state, {kFieldA});
  if (protocol == "accumulate2") {
    j["probability"] = acc.probability;
    j["compound_probability"] = acc.compound_probability();
    j["path"] = path_json(acc.path);
    add_state(j, acc.conditioned_state, c.dump_amplitudes);
    return j;
  }
  ProtocolResult out = protocol == "retrieve2" ? retrieve_two_pairs(acc.conditioned_state, c.theta1, alpha)
                                               : retrieve_pair(acc.conditioned_state, c.theta1, alpha);
  std::vector<Step> path = acc.path;
  path.insert(path.end(), out.path.begin(), out.path.end());
  j["probability"] = out.probability;
  j["compound_probability"] = acc.compound_probability() * out.compound_probability();
  j["path"] = path_json(path);
  if (protocol == "retrieve2") {
    const double pair1_vs_rest = entropy_of_entanglement(out.conditioned_state, {"atom-1A", "atom-1B"});
    j["E_atom1A"] = entropy_of_entanglement(out.conditioned_state, {"atom-1A"});
    j["E_atom2A"] = entropy_of_entanglement(out.conditioned_state, {"atom-2A"});
    // pure register: I(pair1 : pair2) = 2 S(pair1)
    j["mutual_information"] = 2.0 * pair1_vs_rest;
  } else {
    const double e_out = entropy_of_entanglement(out.conditioned_state, {"atom-A"});
    j["E_out"] = e_out;
    j["enhanced"] = e_out >= std::max(binary_entropy(lambda * lambda), binary_entropy(gamma * gamma));
    const Concentrated an = analytic_concentrated_state(lambda, gamma);
    j["analytic"] = {{"theta", an.theta}, {"theta_prime", an.theta_prime}};
    j["fidelity_to_analytic"] = fidelity(out.conditioned_state.amplitudes(), Vector(an.state()));
  }
  add_state(j, out.conditioned_state, c.dump_amplitudes);
  return j;
}

json teleport_json(const RunConfig& c) {
  const double alpha = c.alpha.value_or(10.0);
  const AliceOutcome o = c.outcome ? parse_alice_outcome(*c.outcome) : AliceOutcome::e0;
  const Qubit in = input_qubit(c);
  const TeleportQubitResult r = teleport_qubit(in, alpha, c.theta1, o);
  json j{{"protocol", "teleport"},
         {"alpha", alpha},
         {"theta1", c.theta1},
         {"outcome", to_string(o)},
         {"correction", to_string(r.correction.label)},
         {"probability", r.probability},
         {"retrieval_probability", r.retrieval_probability},
         {"fidelity", fidelity(Vector(r.bob_atom), Vector(in))},
         {"coefficients", complex_list(r.coefficients)}};
  if (c.dump_amplitudes) j["bob_atom"] = complex_list(r.bob_atom);
  return j;
}

json teleport_qudit_json(const RunConfig& c) {
  const double alpha = c.alpha.value_or(10.0);
  PairState in;
  // a|gg> + b|eg> + c|ge> + d|ee>
  in << c.d.value_or(0.0), c.b.value_or(0.0), c.c.value_or(0.0), c.a.value_or(1.0);
  if (in.norm() == 0.0) throw UsageError("input amplitudes --a..--d must not all be zero");
  in.normalize();
  const TeleportQuditResult r = teleport_qudit(in, alpha, c.theta1);
  json j{{"protocol", "teleport-qudit"},
         {"alpha", alpha},
         {"theta1", c.theta1},
         {"alice_probability", r.alice_probability},
         {"bob_probability", r.bob_probability},
         {"fidelity", fidelity(Vector(r.output), Vector(in))}};
  if (c.dump_amplitudes) j["output"] = complex_list(r.output);
  return j;
}

json teleport_partial_json(const RunConfig& c) {
  const double alpha = c.alpha.value_or(10.0);
  const double lambda = c.lambda.value_or(0.3);
  const double gamma = c.gamma.value_or(0.5);
  const AliceOutcome o = c.outcome ? parse_alice_outcome(*c.outcome) : AliceOutcome::e0;
  const Qubit in = input_qubit(c);
  const TeleportPartialResult r = teleport_partial(in, lambda, gamma, alpha, c.theta1, o);
  const Qubit expected = expected_partial_output(in, lambda, gamma, o);
  json j{{"protocol", "teleport-partial"},
         {"alpha", alpha},
         {"theta1", c.theta1},
         {"lambda", lambda},
         {"gamma", gamma},
         {"outcome", to_string(o)},
         {"correction", to_string(r.correction.label)},
         {"probability", r.probability},
         {"retrieval_probability", r.retrieval_probability},
         {"fidelity_to_input", fidelity(Vector(r.bob_atom), Vector(in))},
         {"fidelity_to_expected", fidelity(Vector(r.bob_atom), Vector(expected))},
         {"coefficients", complex_list(r.coefficients)}};
  if (c.dump_amplitudes) j["bob_atom"] = complex_list(r.bob_atom);
  return j;
}

}  // namespace

std::string run_protocol(std::string_view protocol, const RunConfig& config) {
  const auto it = kAllowed.find(protocol);
  if (it == kAllowed.end()) throw UsageError("unknown protocol '" + std::string(protocol) + "'");
  for (const std::string& flag : given_flags(config)) {
    if (!it->second.count(flag)) {
      throw UsageError("--" + flag + " is not valid for '" + std::string(protocol) + "'");
    }
  }
  json j;
  try {
    if (protocol == "accumulate") j = accumulate_json(config, false);
    else if (protocol == "retrieve") j = accumulate_json(config, true);
    else if (protocol == "teleport") j = teleport_json(config);
    else if (protocol == "teleport-qudit") j = teleport_qudit_json(config);
    else if (protocol == "teleport-partial") j = teleport_partial_json(config);
    else j = two_pair_json(config, protocol);
  } catch (const ContractError& e) {
    // bad labels and out-of-range parameters come from the command line
    throw UsageError(e.what());
  }
  return j.dump(2) + "\n";
}

}  // namespace cqed
