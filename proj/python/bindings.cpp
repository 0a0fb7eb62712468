// Python bindings. Bodies, bases and subspaces are passed as the same dicts
// the instance files use ({"A", "b"}, {"B"}, {"span"}); rationals may be
// ints, floats, fractions.Fraction or "p/q" strings. Results come back as
// the dicts the command line tool prints.

#include "gsieve/error.hpp"
#include "gsieve/generate.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace gsieve;

namespace {

json to_json(const py::object& obj) {
  py::module_ pyjson = py::module_::import("json");
  // Fractions and Decimals serialize through str(), which parse_rational reads.
  py::object s = pyjson.attr("dumps")(obj, py::arg("default") = py::module_::import("builtins").attr("str"));
  return json::parse(s.cast<std::string>());
}

py::object to_py(const json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

CenteredPolytope body_arg(const py::object& o) { return polytope_from_json(to_json(o)); }

LatticeBasis basis_arg(const py::object& o) {
  json j = to_json(o);
  // A bare list of rows is accepted as well as {"B": rows}.
  return basis_from_json(j.is_array() ? json{{"B", j}} : j);
}

RVector vector_arg(const py::object& o) { return vector_from_json(to_json(o)); }

Subspace subspace_arg(const py::object& o, std::size_t n) {
  json j = to_json(o);
  return subspace_from_json(j.is_array() ? json{{"span", j}} : j, n);
}

SieveConfig sieve_config(std::uint64_t seed, double budget, std::optional<double> gamma) {
  SieveConfig cfg;
  cfg.sampler.seed = seed;
  cfg.budget_multiplier = budget;
  cfg.gamma = gamma;
  return cfg;
}

json solution_json(const LatticeSolution& s) {
  return {{"vector", vector_to_json(s.point)},
          {"coefficients", vector_to_json(s.coefficients)},
          {"value", value_json(s.value)}};
}

}  // namespace

PYBIND11_MODULE(gauge_sieve, m) {
  m.doc() = "Lattice problems under asymmetric polytope gauges";

  py::register_exception<InvalidInput>(m, "InvalidInput", PyExc_ValueError);
  py::register_exception<CapExceeded>(m, "CapExceeded", PyExc_RuntimeError);
  py::register_exception<BudgetExhausted>(m, "BudgetExhausted", PyExc_RuntimeError);
  py::register_exception<ContractViolation>(m, "ContractViolation", PyExc_RuntimeError);

  m.def(
      "gauge",
      [](const py::object& body, const py::object& x) {
        return format_rational(gauge_exact(body_arg(body), vector_arg(x)));
      },
      py::arg("body"), py::arg("x"), "Exact ||x||_C as a \"p/q\" string");

  m.def(
      "estimate_gamma",
      [](const py::object& body, std::size_t samples, std::uint64_t seed) {
        CenteredPolytope C = body_arg(body);
        if (!C.is_zero_centered()) throw InvalidInput("body must contain the origin in its interior");
        GammaEstimate g = estimate_gamma(C.origin_centered(), samples, seed);
        return to_py({{"gamma", g.value}, {"ratio", g.ratio}, {"std_error", g.std_error}});
      },
      py::arg("body"), py::arg("samples") = 20000, py::arg("seed") = 0);

  m.def(
      "barycenter",
      [](const py::object& body, double eps, std::uint64_t seed) {
        Eigen::VectorXd b = barycenter_approx(body_arg(body), eps, seed);
        return std::vector<double>(b.data(), b.data() + b.size());
      },
      py::arg("body"), py::arg("eps") = 1.0 / 3.0, py::arg("seed") = 0);

  m.def(
      "approx_cvp",
      [](const py::object& body, const py::object& basis, const py::object& target, double eps,
         std::uint64_t seed, double budget, std::optional<double> gamma) {
        return to_py(report_to_json(approx_cvp(body_arg(body), basis_arg(basis), vector_arg(target), eps,
                                               sieve_config(seed, budget, gamma))));
      },
      py::arg("body"), py::arg("basis"), py::arg("target"), py::arg("eps") = 0.25, py::arg("seed") = 0,
      py::arg("budget_multiplier") = 1.0, py::arg("gamma") = py::none());

  m.def(
      "exact_cvp",
      [](const py::object& body, const py::object& basis, const py::object& target, double t,
         std::uint64_t seed, double budget, std::optional<double> gamma) {
        return to_py(report_to_json(exact_cvp(body_arg(body), basis_arg(basis), vector_arg(target), t,
                                              sieve_config(seed, budget, gamma))));
      },
      py::arg("body"), py::arg("basis"), py::arg("target"), py::arg("t") = 2.0, py::arg("seed") = 0,
      py::arg("budget_multiplier") = 1.0, py::arg("gamma") = py::none());

  m.def(
      "approx_sap",
      [](const py::object& body, const py::object& basis, const py::object& subspace, double eps,
         std::uint64_t seed, double budget, std::optional<double> gamma) {
        LatticeBasis B = basis_arg(basis);
        return to_py(report_to_json(approx_sap(body_arg(body), B, subspace_arg(subspace, B.dim()), eps,
                                               sieve_config(seed, budget, gamma))));
      },
      py::arg("body"), py::arg("basis"), py::arg("subspace") = py::list(), py::arg("eps") = 0.5,
      py::arg("seed") = 0, py::arg("budget_multiplier") = 1.0, py::arg("gamma") = py::none());

  m.def(
      "exact_sap",
      [](const py::object& body, const py::object& basis, const py::object& subspace, double t,
         std::uint64_t seed, double budget, std::optional<double> gamma) {
        LatticeBasis B = basis_arg(basis);
        return to_py(report_to_json(exact_sap(body_arg(body), B, subspace_arg(subspace, B.dim()), t,
                                              sieve_config(seed, budget, gamma))));
      },
      py::arg("body"), py::arg("basis"), py::arg("subspace") = py::list(), py::arg("t") = 2.0,
      py::arg("seed") = 0, py::arg("budget_multiplier") = 1.0, py::arg("gamma") = py::none());

  m.def(
      "approx_ip",
      [](const py::object& body, const py::object& basis, double eps, std::uint64_t seed, double budget) {
        IPConfig cfg;
        cfg.sieve = sieve_config(seed, budget, std::nullopt);
        return to_py(ip_result_to_json(approx_ip(body_arg(body), basis_arg(basis), eps, cfg)));
      },
      py::arg("body"), py::arg("basis"), py::arg("eps") = 0.5, py::arg("seed") = 0,
      py::arg("budget_multiplier") = 1.0);

  m.def(
      "approx_opt",
      [](const py::object& body, const py::object& basis, const py::object& v, double eps, double delta,
         std::uint64_t seed, double budget) {
        OptConfig cfg;
        cfg.ip.sieve = sieve_config(seed, budget, std::nullopt);
        return to_py(opt_result_to_json(approx_opt(body_arg(body), basis_arg(basis), vector_arg(v), eps, delta, cfg)));
      },
      py::arg("body"), py::arg("basis"), py::arg("v"), py::arg("eps") = 0.5, py::arg("delta") = 0.1,
      py::arg("seed") = 0, py::arg("budget_multiplier") = 1.0);

  m.def(
      "blowup_membership",
      [](const py::object& body, const py::object& eps, const py::object& y) {
        return blowup_membership(body_arg(body), rational_from_json(to_json(eps)), vector_arg(y));
      },
      py::arg("body"), py::arg("eps"), py::arg("y"));

  m.def(
      "cvp_brute",
      [](const py::object& body, const py::object& basis, const py::object& target) {
        return to_py(solution_json(cvp_brute(body_arg(body), basis_arg(basis), vector_arg(target))));
      },
      py::arg("body"), py::arg("basis"), py::arg("target"));

  m.def(
      "sap_brute",
      [](const py::object& body, const py::object& basis, const py::object& subspace) {
        LatticeBasis B = basis_arg(basis);
        return to_py(solution_json(sap_brute(body_arg(body), B, subspace_arg(subspace, B.dim()))));
      },
      py::arg("body"), py::arg("basis"), py::arg("subspace") = py::list());

  m.def(
      "ip_brute",
      [](const py::object& body, const py::object& basis) -> py::object {
        auto s = ip_brute(body_arg(body), basis_arg(basis));
        return s ? to_py(solution_json(*s)) : py::none();
      },
      py::arg("body"), py::arg("basis"));

  m.def(
      "generate",
      [](const std::string& kind, std::size_t n, std::uint64_t seed, double eps, double delta) {
        Instance inst;
        if (kind == "random-cvp") inst = gen_random_cvp(n, seed);
        else if (kind == "planted-cvp") inst = gen_planted_cvp(n, seed);
        else if (kind == "sap") inst = gen_sap(n, seed);
        else if (kind == "planted-ip") inst = gen_planted_ip(n, seed, eps);
        else if (kind == "empty-ip") inst = gen_empty_ip(n, seed, eps);
        else if (kind == "opt") inst = gen_opt(n, seed, delta);
        else throw InvalidInput("unknown instance kind '" + kind + "'");
        return to_py(instance_to_json(inst));
      },
      py::arg("kind"), py::arg("n") = 2, py::arg("seed") = 0, py::arg("eps") = 0.5, py::arg("delta") = 0.1);
}
