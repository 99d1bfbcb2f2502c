#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cqed/types.hpp"

namespace cqed {

/// Invalid flag combination or value for a command.
class UsageError : public Error {
 public:
  using Error::Error;
};

enum class Format { csv, json };

/// Options shared by the figure, verify and run commands. Unset optionals fall
/// back to the per-command operating point.
struct RunConfig {
  std::optional<double> alpha;
  double theta1 = 3.14159265358979323846;
  double t2_ratio = 2.0;
  int n_max = 0;
  std::optional<double> lambda;
  std::optional<double> gamma;
  std::optional<std::string> outcome;
  int samples = 2000;
  std::optional<std::uint64_t> seed;
  Format format = Format::csv;
  bool dump_amplitudes = false;
  /// Input amplitudes for teleportation: a|g> + b|e> (qubit) or a|gg> + b|eg> + c|ge> + d|ee>.
  std::optional<double> a, b, c, d;
};

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

/// fig2a, fig2b, fig3 or fig4.
Table figure_table(std::string_view name, const RunConfig& config);
/// CSV with a header row and 12 significant digits, or a JSON object.
std::string format_table(const Table& table, Format format, std::string_view name = "");

struct Check {
  std::string name;
  double measured = 0.0;
  double threshold = 0.0;
  /// "<=", "<", ">=" or ">": measured relation threshold must hold.
  std::string relation;
  bool pass = false;
};

struct VerifyReport {
  std::string suite;
  std::vector<Check> checks;

  bool pass() const;
  std::string to_json() const;
};

/// identities, appendix, tables, widths, overlap or timing.
VerifyReport verify_suite(std::string_view suite, const RunConfig& config);

/// Runs accumulate, retrieve, accumulate2, retrieve2, concentrate, teleport,
/// teleport-qudit or teleport-partial; returns a JSON document.
std::string run_protocol(std::string_view protocol, const RunConfig& config);

inline const std::vector<std::string> kFigureNames{"fig2a", "fig2b", "fig3", "fig4"};
inline const std::vector<std::string> kSuiteNames{"identities", "appendix", "tables", "widths", "overlap", "timing"};
inline const std::vector<std::string> kProtocolNames{"accumulate", "retrieve",         "accumulate2",
                                                     "retrieve2",  "concentrate",      "teleport",
                                                     "teleport-qudit", "teleport-partial"};

}  // namespace cqed
