#include <fstream>
#include <iostream>
#include <map>

#include "CLI11.hpp"
#include "cqed/cli.hpp"

namespace {

constexpr int kExitVerifyFailure = 1;
constexpr int kExitUsage = 2;

void add_physics_flags(CLI::App* cmd, cqed::RunConfig& cfg) {
  cmd->add_option("--alpha", cfg.alpha, "Coherent amplitude of both cavities")->check(CLI::NonNegativeNumber);
  cmd->add_option("--theta1", cfg.theta1, "Interaction angle lambda*t1")->check(CLI::NonNegativeNumber);
  cmd->add_option("--t2-ratio", cfg.t2_ratio, "t2 / t1 for the second pair");
  cmd->add_option("--nmax", cfg.n_max, "Fock truncation (default ceil(alpha^2 + 10 alpha))");
  cmd->add_option("--lambda", cfg.lambda, "Amplitude of |e,g> in the first pair")->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--gamma", cfg.gamma, "Amplitude of |e,g> in the second pair")->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--outcome", cfg.outcome, "Detection outcome (gg/eg/ge/ee or e0..g2)");
  cmd->add_option("--samples", cfg.samples, "Haar samples for averaged fidelities")->check(CLI::PositiveNumber);
  cmd->add_option("--seed", cfg.seed, "RNG seed (required for sampled quantities)");
  cmd->add_option("--a", cfg.a, "Input amplitude of |g> (or |gg>)");
  cmd->add_option("--b", cfg.b, "Input amplitude of |e> (or |eg>)");
  cmd->add_option("--c", cfg.c, "Input amplitude of |ge>");
  cmd->add_option("--d", cfg.d, "Input amplitude of |ee>");
  cmd->add_flag("--dump-amplitudes", cfg.dump_amplitudes, "Include raw amplitudes in the output");
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw cqed::UsageError("cannot open '" + path + "' for writing");
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cavity-QED entanglement accumulation simulator"};
  app.require_subcommand(1);
  cqed::RunConfig cfg;
  std::string name;
  std::string out_path;
  const std::map<std::string, cqed::Format> formats{{"csv", cqed::Format::csv}, {"json", cqed::Format::json}};

  auto* figure = app.add_subcommand("figure", "Write figure data as CSV or JSON");
  figure->add_option("name", name, "fig2a, fig2b, fig3 or fig4")->required()->check(CLI::IsMember(cqed::kFigureNames));
  auto* verify = app.add_subcommand("verify", "Run a verification suite and print a JSON report");
  verify->add_option("suite", name, "identities, appendix, tables, widths, overlap or timing")
      ->required()
      ->check(CLI::IsMember(cqed::kSuiteNames));
  auto* run = app.add_subcommand("run", "Run one protocol and print a JSON summary");
  run->add_option("protocol", name)->required()->check(CLI::IsMember(cqed::kProtocolNames));
  for (auto* cmd : {figure, verify, run}) {
    add_physics_flags(cmd, cfg);
    cmd->add_option("--out", out_path, "Write to this file instead of stdout");
  }
  figure->add_option("--format", cfg.format, "csv or json")->transform(CLI::CheckedTransformer(formats));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (figure->parsed()) {
      emit(cqed::format_table(cqed::figure_table(name, cfg), cfg.format, name), out_path);
      return 0;
    }
    if (verify->parsed()) {
      const cqed::VerifyReport report = cqed::verify_suite(name, cfg);
      emit(report.to_json(), out_path);
      return report.pass() ? 0 : kExitVerifyFailure;
    }
    emit(cqed::run_protocol(name, cfg), out_path);
    return 0;
  } catch (const cqed::UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const cqed::ContractError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const cqed::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitVerifyFailure;
  }
}
