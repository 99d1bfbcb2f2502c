#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cqed/cli.hpp"
#include "cqed/measures.hpp"
#include "cqed/noise.hpp"
#include "cqed/protocols.hpp"
#include "cqed/teleport.hpp"

namespace py = pybind11;
using namespace cqed;

namespace {

constexpr double kPi = 3.14159265358979323846;

py::dict result_dict(const ProtocolResult& r) {
  py::dict d;
  d["amplitudes"] = r.conditioned_state.amplitudes();
  std::vector<std::pair<std::string, int>> dims;
  for (const auto& s : r.conditioned_state.subsystems()) dims.emplace_back(s.label, s.dim);
  d["subsystems"] = dims;
  d["probability"] = r.probability;
  d["compound_probability"] = r.compound_probability();
  d["branch"] = r.branch();
  return d;
}

CompositeState fields_from(double alpha, int n_max) { return initial_fields(alpha, n_max); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Cavity QED entanglement accumulation, concentration and teleportation";

  py::register_exception<TruncationError>(m, "TruncationError", PyExc_ValueError);
  py::register_exception<ContractError>(m, "ContractError", PyExc_ValueError);
  py::register_exception<DegenerateStateError>(m, "DegenerateStateError", PyExc_ValueError);
  py::register_exception<UsageError>(m, "UsageError", PyExc_ValueError);

  m.def("default_n_max", &default_n_max, py::arg("alpha"));
  m.def(
      "coherent_amplitudes",
      [](double alpha, int n_max) {
        return Vector(coherent_amplitudes(alpha, n_max > 0 ? n_max : default_n_max(alpha)));
      },
      py::arg("alpha"), py::arg("n_max") = 0);
  m.def("qubit", &qubit_from_ground_excited, py::arg("a"), py::arg("b"), "a|g> + b|e> in {|e>, |g>} order");

  m.def("binary_entropy", &binary_entropy);
  m.def("pair_entropy", &pair_entropy, py::arg("pair"));
  m.def(
      "concurrence", [](const Eigen::Matrix4cd& rho) { return concurrence(TwoQubitDensity(rho)); }, py::arg("rho"));
  m.def("fidelity", py::overload_cast<const Vector&, const Vector&>(&fidelity));

  m.def(
      "accumulate",
      [](double alpha, double lambda, double theta, const std::string& outcome, int n_max) {
        return result_dict(accumulate_pair(fields_from(alpha, n_max), PairSpec{lambda, theta}, parse_outcome(outcome)));
      },
      py::arg("alpha"), py::arg("lambda_"), py::arg("theta") = kPi, py::arg("outcome") = "gg", py::arg("n_max") = 0);
  m.def(
      "accumulate_two",
      [](double alpha, double lambda, double gamma, double theta1, double t2_ratio, int n_max) {
        return result_dict(accumulate_two_pairs(PairSpec{lambda, theta1}, PairSpec{gamma, t2_ratio * theta1}, alpha,
                                                {AtomPairOutcome::gg, AtomPairOutcome::gg},
                                                TwoPairOptions{t2_ratio, n_max}));
      },
      py::arg("alpha"), py::arg("lambda_"), py::arg("gamma"), py::arg("theta1") = kPi, py::arg("t2_ratio") = 2.0,
      py::arg("n_max") = 0);
  m.def(
      "concentrate",
      [](double alpha, double lambda, double gamma, double theta1, double t2_ratio) {
        return result_dict(
            concentrate(PairSpec{lambda, theta1}, PairSpec{gamma, t2_ratio * theta1}, alpha, TwoPairOptions{t2_ratio, 0}));
      },
      py::arg("alpha"), py::arg("lambda_"), py::arg("gamma"), py::arg("theta1") = kPi, py::arg("t2_ratio") = 2.0);
  m.def(
      "analytic_concentrated",
      [](double lambda, double gamma) {
        const Concentrated c = analytic_concentrated_state(lambda, gamma);
        return std::make_pair(c.theta, c.theta_prime);
      },
      py::arg("lambda_"), py::arg("gamma"));
  m.def("schmidt_projection_state", &schmidt_projection_state, py::arg("lambda_"), py::arg("gamma"));

  py::class_<ConcentrationKernel>(m, "ConcentrationKernel")
      .def(py::init<double, double, double, int>(), py::arg("alpha"), py::arg("theta1") = kPi,
           py::arg("t2_ratio") = 2.0, py::arg("n_max") = 0)
      .def("apply", &ConcentrationKernel::apply, py::arg("pair1"), py::arg("pair2"))
      .def_property_readonly("matrix", [](const ConcentrationKernel& k) { return Matrix(k.matrix()); });

  m.def(
      "teleport_qubit",
      [](const Qubit& input, double alpha, const std::string& outcome, double theta1) {
        const TeleportQubitResult r = teleport_qubit(input, alpha, theta1, parse_alice_outcome(outcome));
        py::dict d;
        d["bob_atom"] = r.bob_atom;
        d["coefficients"] = r.coefficients;
        d["correction"] = to_string(r.correction.label);
        d["probability"] = r.probability;
        d["retrieval_probability"] = r.retrieval_probability;
        return d;
      },
      py::arg("input"), py::arg("alpha") = 10.0, py::arg("outcome") = "e0", py::arg("theta1") = kPi);
  m.def(
      "teleport_partial",
      [](const Qubit& input, double lambda, double gamma, double alpha, const std::string& outcome, double theta1) {
        const TeleportPartialResult r = teleport_partial(input, lambda, gamma, alpha, theta1, parse_alice_outcome(outcome));
        py::dict d;
        d["bob_atom"] = r.bob_atom;
        d["expected"] = expected_partial_output(input, lambda, gamma, parse_alice_outcome(outcome));
        d["probability"] = r.probability;
        d["retrieval_probability"] = r.retrieval_probability;
        return d;
      },
      py::arg("input"), py::arg("lambda_"), py::arg("gamma"), py::arg("alpha") = 10.0, py::arg("outcome") = "e0",
      py::arg("theta1") = kPi);
  m.def(
      "partial_average_fidelity",
      [](double lambda, double gamma, double alpha, int samples, std::uint64_t seed) {
        return average_fidelity(teleport_channel(lambda, gamma, alpha, kPi), samples, seed);
      },
      py::arg("lambda_"), py::arg("gamma"), py::arg("alpha") = 10.0, py::arg("samples") = 2000, py::arg("seed") = 1);
  m.def("standard_average_fidelity", &standard_average_fidelity, py::arg("resource"), py::arg("samples") = 2000,
        py::arg("seed") = 1);

  m.def(
      "noisy_concentration_study",
      [](double lambda, double gamma, const std::string& kind, const std::vector<double>& strengths, double alpha) {
        const NoiseStudy s = noisy_concentration_study(lambda, gamma, parse_channel_kind(kind), strengths, alpha, kPi);
        py::list rows;
        for (const NoiseRow& r : s.rows) {
          py::dict d;
          d["strength"] = r.strength;
          d["input_concurrence"] = std::make_pair(r.input_concurrence_1, r.input_concurrence_2);
          d["output_concurrence"] = r.output_concurrence;
          d["output_purity"] = r.output_purity;
          d["probability"] = r.probability;
          d["enhanced"] = r.enhanced;
          rows.append(d);
        }
        py::dict out;
        out["rows"] = rows;
        out["crossover"] = s.crossover ? py::cast(*s.crossover) : py::none();
        return out;
      },
      py::arg("lambda_"), py::arg("gamma"), py::arg("kind") = "depolarizing", py::arg("strengths"),
      py::arg("alpha") = 10.0);

  m.def(
      "figure",
      [](const std::string& name, std::optional<std::uint64_t> seed, int samples) {
        RunConfig cfg;
        cfg.seed = seed;
        cfg.samples = samples;
        const Table t = figure_table(name, cfg);
        return std::make_pair(t.columns, t.rows);
      },
      py::arg("name"), py::arg("seed") = py::none(), py::arg("samples") = 2000);
  m.def(
      "verify", [](const std::string& suite) { return verify_suite(suite, RunConfig{}).to_json(); },
      py::arg("suite"));
}
