#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>

#include "cqed/cli.hpp"
#include "cqed/fock.hpp"
#include "cqed/jc.hpp"
#include "cqed/measures.hpp"
#include "cqed/protocols.hpp"
#include "cqed/teleport.hpp"
#include "json.hpp"

namespace cqed {
namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
const double kSeriesAlphas[] = {3.0, 10.0, 20.0};

Check make_check(std::string name, double measured, std::string relation, double threshold) {
  bool pass = false;
  if (relation == "<=") pass = measured <= threshold;
  else if (relation == "<") pass = measured < threshold;
  else if (relation == ">=") pass = measured >= threshold;
  else if (relation == ">") pass = measured > threshold;
  else if (relation == "info") pass = true;
  return {std::move(name), measured, threshold, std::move(relation), pass};
}

// largest step e[k+1] - e[k]; negative iff strictly decreasing
double largest_step(const std::vector<double>& e) {
  double worst = -std::numeric_limits<double>::infinity();
  for (size_t k = 0; k + 1 < e.size(); ++k) worst = std::max(worst, e[k + 1] - e[k]);
  return worst;
}

struct IdentityErrors {
  double cross = 0.0;     // |<alpha| u22^dag u21 |alpha>|
  double balance = 0.0;   // |<u22^dag u22> - <u21^dag u21>|
  double schedule = 0.0;  // worst overlap between distinct u2v(t2) u2z(t1)|alpha>
};

IdentityErrors identity_errors(double alpha, double theta1) {
  const int n_max = default_n_max(alpha);
  const Vector a = coherent_state(alpha, n_max).amplitudes();
  const JcBlocks b1 = jc_blocks(theta1, n_max);
  const JcBlocks b2 = jc_blocks(2.0 * theta1, n_max);
  const Level g = Level::ground;
  const Level e = Level::excited;
  const Vector v22 = b1.apply(g, g, a);
  const Vector v21 = b1.apply(g, e, a);
  IdentityErrors out;
  out.cross = std::abs(v22.dot(v21));
  out.balance = std::abs(v22.squaredNorm() - v21.squaredNorm());
  std::vector<Vector> w;
  for (Level nu : {e, g}) {
    for (Level zeta : {e, g}) w.push_back(b2.apply(g, nu, b1.apply(g, zeta, a)));
  }
  for (size_t i = 0; i < w.size(); ++i) {
    for (size_t j = 0; j < w.size(); ++j) {
      if (i != j) out.schedule = std::max(out.schedule, std::abs(w[i].dot(w[j])));
    }
  }
  return out;
}

VerifyReport identities(const RunConfig& cfg) {
  const double alpha = cfg.alpha.value_or(10.0);
  VerifyReport r{"identities", {}};
  const IdentityErrors at = identity_errors(alpha, cfg.theta1);
  r.checks.push_back(make_check("cross_overlap", at.cross, "<", 0.05));
  r.checks.push_back(make_check("norm_balance", at.balance, "<", 0.05));
  r.checks.push_back(make_check("schedule_orthogonality", at.schedule, "<", 0.1));
  std::vector<double> cross, balance;
  for (double al : kSeriesAlphas) {
    const IdentityErrors e = identity_errors(al, cfg.theta1);
    cross.push_back(e.cross);
    balance.push_back(e.balance);
  }
  r.checks.push_back(make_check("cross_overlap_decreasing_step", largest_step(cross), "<", 0.0));
  r.checks.push_back(make_check("norm_balance_decreasing_step", largest_step(balance), "<", 0.0));
  return r;
}

VerifyReport appendix(const RunConfig& cfg) {
  const double alpha = cfg.alpha.value_or(10.0);
  VerifyReport r{"appendix", {}};
  const auto at = appendix_identities(alpha, cfg.theta1);
  for (size_t i = 0; i < at.size(); ++i) {
    r.checks.push_back(make_check("identity_" + std::to_string(i + 1) + "_error", at[i].error, "<=", 0.15));
  }
  std::vector<std::vector<double>> series(at.size());
  for (double al : kSeriesAlphas) {
    const auto errs = appendix_identities(al, cfg.theta1);
    for (size_t i = 0; i < errs.size(); ++i) series[i].push_back(errs[i].error);
  }
  for (size_t i = 0; i < series.size(); ++i) {
    r.checks.push_back(
        make_check("identity_" + std::to_string(i + 1) + "_decreasing_step", largest_step(series[i]), "<", 0.0));
  }
  return r;
}

// worst post-correction fidelity over a fixed input set; the e/g inputs plus
// equator points and seeded Haar draws
double worst_qubit_fidelity(double alpha, double theta1, AliceOutcome o) {
  std::vector<Qubit> inputs{Qubit{1.0, 0.0}, Qubit{0.0, 1.0}, Qubit{kInvSqrt2, kInvSqrt2},
                            Qubit{kInvSqrt2, kI * kInvSqrt2}};
  std::mt19937_64 rng(7);
  for (int i = 0; i < 4; ++i) inputs.push_back(haar_qubit(rng));
  double worst = 1.0;
  for (const Qubit& in : inputs) {
    const TeleportQubitResult res = teleport_qubit(in, alpha, theta1, o);
    worst = std::min(worst, fidelity(Vector(res.bob_atom), Vector(in)));
  }
  return worst;
}

VerifyReport tables(const RunConfig& cfg) {
  const double alpha = cfg.alpha.value_or(10.0);
  const double lambda = cfg.lambda.value_or(0.3);
  const double gamma = cfg.gamma.value_or(0.5);
  VerifyReport r{"tables", {}};
  for (const TableColumnCheck& c : check_table1(alpha, cfg.theta1)) {
    const std::string o = to_string(c.outcome);
    const double target = field_index(c.outcome) == 0 ? 0.25 : 0.125;
    r.checks.push_back(make_check("table1_" + o + "_ratio_error", c.ratio_error, "<=", 0.05));
    r.checks.push_back(make_check("table1_" + o + "_probability_deviation", std::abs(c.probability - target), "<=",
                                  0.03));
    r.checks.push_back(make_check("table1_" + o + "_leakage", c.leakage, "info", 0.0));
    r.checks.push_back(
        make_check("table1_" + o + "_worst_fidelity", worst_qubit_fidelity(alpha, cfg.theta1, c.outcome), ">=", 0.98));
  }
  for (const TableColumnCheck& c : check_table2(lambda, gamma, alpha, cfg.theta1)) {
    const std::string o = to_string(c.outcome);
    r.checks.push_back(make_check("table2_" + o + "_ratio_error", c.ratio_error, "<=", 0.05));
    r.checks.push_back(make_check("table2_" + o + "_leakage", c.leakage, "info", 0.0));
  }
  return r;
}

VerifyReport widths(const RunConfig& cfg) {
  VerifyReport r{"widths", {}};
  const double eps = 1e-3;
  {
    const double alpha = cfg.alpha.value_or(3.0);
    const CompositeState fields =
        accumulate_pair(initial_fields(alpha, cfg.n_max), PairSpec{kInvSqrt2, cfg.theta1}, AtomPairOutcome::gg)
            .conditioned_state;
    const double thetas[] = {cfg.theta1};
    const RealVector p = retrieval_photon_distribution(fields, thetas, alpha);
    const int w = photon_width(std::span<const double>(p.data(), static_cast<size_t>(p.size())), eps);
    r.checks.push_back(make_check("one_ebit_width", w, "<=", 20));
  }
  {
    const double alpha = 10.0;
    const CompositeState fields =
        accumulate_two_pairs(PairSpec{kInvSqrt2, cfg.theta1}, PairSpec{kInvSqrt2, 2.0 * cfg.theta1}, alpha)
            .conditioned_state;
    const double thetas[] = {2.0 * cfg.theta1, cfg.theta1};
    const RealVector p = retrieval_photon_distribution(fields, thetas, alpha);
    const int w = photon_width(std::span<const double>(p.data(), static_cast<size_t>(p.size())), eps);
    r.checks.push_back(make_check("two_ebit_width", w, "<=", 125));
  }
  return r;
}

VerifyReport overlap(const RunConfig& cfg) {
  VerifyReport r{"overlap", {}};
  const OverlapStudy s = overlap_error_study(cfg.alpha.value_or(10.0), cfg.theta1);
  r.checks.push_back(make_check("max_vacuum_overlap_error", s.max_error, "<=", 0.10));
  return r;
}

VerifyReport timing(const RunConfig& cfg) {
  const double alpha = cfg.alpha.value_or(10.0);
  std::vector<std::pair<double, double>> pairs{{0.2, 0.5}, {0.3, 0.5}, {0.5, 0.7}, {kInvSqrt2, kInvSqrt2}};
  if (cfg.lambda && cfg.gamma) pairs = {{*cfg.lambda, *cfg.gamma}};
  std::vector<double> ratios;
  for (int i = 0; i < 9; ++i) ratios.push_back(1.8 + 0.05 * i);
  std::vector<std::vector<double>> entropy(pairs.size());
  std::vector<double> nominal(pairs.size());
  for (double ratio : ratios) {
    const ConcentrationKernel kernel(alpha, cfg.theta1, ratio, cfg.n_max);
    for (size_t k = 0; k < pairs.size(); ++k) {
      const PairState out = kernel.apply(PairSpec{pairs[k].first, 0.0}.state(), PairSpec{pairs[k].second, 0.0}.state());
      entropy[k].push_back(pair_entropy(out.normalized()));
    }
  }
  VerifyReport r{"timing", {}};
  for (size_t k = 0; k < pairs.size(); ++k) {
    const double at_two = entropy[k][4];
    double drift = 0.0;
    for (double e : entropy[k]) drift = std::max(drift, std::abs(e - at_two));
    char name[64];
    std::snprintf(name, sizeof name, "entropy_drift_l%.3g_g%.3g", pairs[k].first, pairs[k].second);
    r.checks.push_back(make_check(name, drift, "<", 0.05));
  }
  return r;
}

}  // namespace

bool VerifyReport::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

std::string VerifyReport::to_json() const {
  nlohmann::json j;
  j["suite"] = suite;
  j["pass"] = pass();
  j["checks"] = nlohmann::json::array();
  for (const Check& c : checks) {
    j["checks"].push_back(
        {{"name", c.name}, {"measured", c.measured}, {"relation", c.relation}, {"threshold", c.threshold},
         {"pass", c.pass}});
  }
  return j.dump(2) + "\n";
}

VerifyReport verify_suite(std::string_view suite, const RunConfig& config) {
  if (suite == "identities") return identities(config);
  if (suite == "appendix") return appendix(config);
  if (suite == "tables") return tables(config);
  if (suite == "widths") return widths(config);
  if (suite == "overlap") return overlap(config);
  if (suite == "timing") return timing(config);
  throw UsageError("unknown verify suite '" + std::string(suite) + "'");
}

}  // namespace cqed
