#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "cqed/cli.hpp"
#include "cqed/measures.hpp"
#include "cqed/protocols.hpp"
#include "cqed/teleport.hpp"
#include "json.hpp"

namespace cqed {
namespace {

constexpr int kGridPoints = 50;
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = lo + (hi - lo) * i / (n - 1);
  return v;
}

// retrieval passes at theta1 with pair 2 at ratio * theta1
ProtocolResult concentrate_at(double lambda, double gamma, const RunConfig& cfg, double alpha) {
  const PairSpec p1{lambda, cfg.theta1};
  const PairSpec p2{gamma, cfg.t2_ratio * cfg.theta1};
  return concentrate(p1, p2, alpha, {cfg.t2_ratio, cfg.n_max});
}

Table fig2(double gamma, const RunConfig& cfg) {
  const double alpha = cfg.alpha.value_or(10.0);
  Table t{{"lambda", "E_out", "E_field", "E_pair1", "E_pair2", "E_schmidt", "E_procrustean"}, {}};
  for (double lambda : linspace(0.0, kInvSqrt2, kGridPoints)) {
    const PairSpec p1{lambda, cfg.theta1};
    const PairSpec p2{gamma, cfg.t2_ratio * cfg.theta1};
    const ProtocolResult acc = accumulate_two_pairs(p1, p2, alpha, {AtomPairOutcome::gg, AtomPairOutcome::gg},
                                                    {cfg.t2_ratio, cfg.n_max});
    const ProtocolResult out = retrieve_pair(acc.conditioned_state, cfg.theta1, alpha);
    double e_schmidt = std::numeric_limits<double>::quiet_NaN();
    try {
      e_schmidt = pair_entropy(schmidt_projection_state(lambda, gamma));
    } catch (const DegenerateStateError&) {
    }
    t.rows.push_back({lambda, entropy_of_entanglement(out.conditioned_state, {"atom-A"}),
                      entropy_of_entanglement(acc.conditioned_state, {kFieldA}), binary_entropy(lambda * lambda),
                      binary_entropy(gamma * gamma), e_schmidt, pair_entropy(procrustean_state(lambda, gamma))});
  }
  return t;
}

Table fig3(const RunConfig& cfg) {
  const double alpha = cfg.alpha.value_or(10.0);
  const std::vector<double> gammas{0.2, 0.5, 0.7, kInvSqrt2};
  Table t{{"lambda", "p_gamma_0.2", "p_gamma_0.5", "p_gamma_0.7", "p_gamma_0.7071"}, {}};
  for (double lambda : linspace(0.0, kInvSqrt2, kGridPoints)) {
    std::vector<double> row{lambda};
    for (double g : gammas) row.push_back(concentrate_at(lambda, g, cfg, alpha).probability);
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table fig4(const RunConfig& cfg) {
  if (!cfg.seed) throw UsageError("fig4 samples random inputs; --seed is required");
  const double alpha = cfg.alpha.value_or(10.0);
  const AliceOutcome outcome = cfg.outcome ? parse_alice_outcome(*cfg.outcome) : AliceOutcome::e0;
  const std::vector<double> gammas{0.0, 0.2, 0.5, 0.7};
  Table t{{"lambda", "F_gamma_0", "F_gamma_0.2", "F_gamma_0.5", "F_gamma_0.7"}, {}};
  for (double lambda : linspace(0.0, 1.0, kGridPoints)) {
    std::vector<double> row{lambda};
    for (double g : gammas) {
      const TeleportChannel ch = teleport_channel(lambda, g, alpha, cfg.theta1, outcome);
      row.push_back(average_fidelity(ch, cfg.samples, *cfg.seed));
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

}  // namespace

Table figure_table(std::string_view name, const RunConfig& config) {
  if (name == "fig2a") return fig2(config.gamma.value_or(0.2), config);
  if (name == "fig2b") return fig2(config.gamma.value_or(0.5), config);
  if (name == "fig3") return fig3(config);
  if (name == "fig4") return fig4(config);
  throw UsageError("unknown figure '" + std::string(name) + "'");
}

std::string format_table(const Table& table, Format format, std::string_view name) {
  if (format == Format::json) {
    nlohmann::json j;
    if (!name.empty()) j["name"] = name;
    j["columns"] = table.columns;
    j["rows"] = table.rows;
    return j.dump(2) + "\n";
  }
  std::ostringstream os;
  for (size_t i = 0; i < table.columns.size(); ++i) os << (i ? "," : "") << table.columns[i];
  os << "\n";
  char buf[32];
  for (const auto& row : table.rows) {
    for (size_t i = 0; i < row.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%.12g", row[i]);
      os << (i ? "," : "") << buf;
    }
    os << "\n";
  }
  return os.str();
}

}  // namespace cqed
