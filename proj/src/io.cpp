#include "gsieve/io.hpp"

#include "gsieve/error.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace gsieve {

Rational rational_from_json(const json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (j.is_number_unsigned()) return Rational(j.get<std::uint64_t>());
  if (j.is_number_float()) {
    // Read the literal the writer most likely meant: its shortest decimal form.
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, j.get<double>());
    if (ec != std::errc{}) throw InvalidInput("cannot format number");
    return parse_rational(std::string_view(buf, static_cast<std::size_t>(end - buf)));
  }
  throw InvalidInput("expected a rational (string \"p/q\" or number), got " + j.dump());
}

json rational_to_json(const Rational& q) { return format_rational(q); }

RVector vector_from_json(const json& j) {
  if (!j.is_array()) throw InvalidInput("expected an array, got " + j.dump());
  RVector out;
  for (const auto& e : j) out.push_back(rational_from_json(e));
  return out;
}

json vector_to_json(const RVector& v) {
  json out = json::array();
  for (const auto& q : v) out.push_back(rational_to_json(q));
  return out;
}

json vector_to_json(const IVector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

RMatrix matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw InvalidInput("expected a non-empty array of rows");
  std::vector<RVector> rows;
  for (const auto& r : j) {
    rows.push_back(vector_from_json(r));
    if (rows.back().size() != rows.front().size()) throw InvalidInput("matrix rows have different lengths");
  }
  return RMatrix::from_rows(rows);
}

json matrix_to_json(const RMatrix& m) {
  json out = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) out.push_back(vector_to_json(m.row(i)));
  return out;
}

CenteredPolytope polytope_from_json(const json& j) {
  if (!j.is_object() || !j.contains("A") || !j.contains("b")) {
    throw InvalidInput("polytope needs fields \"A\" and \"b\"");
  }
  RMatrix A = matrix_from_json(j.at("A"));
  RVector b = vector_from_json(j.at("b"));
  if (!j.contains("a0")) return CenteredPolytope::from_inequalities(std::move(A), std::move(b));
  RVector a0 = vector_from_json(j.at("a0"));
  double r = 0.0, R = 0.0;
  if (j.contains("r") && j.contains("R")) {
    r = to_double(rational_from_json(j.at("r")));
    R = to_double(rational_from_json(j.at("R")));
  } else {
    CenteredPolytope trial(A, b, a0, 1e-300, 1e300);
    Eigen::VectorXd c = to_eigen(a0);
    r = j.contains("r") ? to_double(rational_from_json(j.at("r")))
                        : inner_radius_about(trial, c) * (1.0 - 1e-9);
    R = j.contains("R") ? to_double(rational_from_json(j.at("R")))
                        : outer_radius_about(trial, c) * (1.0 + 1e-9);
  }
  return CenteredPolytope(std::move(A), std::move(b), std::move(a0), r, R);
}

json polytope_to_json(const CenteredPolytope& P) {
  return json{{"A", matrix_to_json(P.A())},
              {"b", vector_to_json(P.b())},
              {"a0", vector_to_json(P.center())},
              {"r", P.inner_radius()},
              {"R", P.outer_radius()}};
}

LatticeBasis basis_from_json(const json& j) {
  if (!j.is_object() || !j.contains("B")) throw InvalidInput("lattice needs field \"B\"");
  return LatticeBasis(matrix_from_json(j.at("B")));
}

json basis_to_json(const LatticeBasis& B) { return json{{"B", matrix_to_json(B.basis())}}; }

Subspace subspace_from_json(const json& j, std::size_t n) {
  if (!j.is_object() || !j.contains("span")) throw InvalidInput("subspace needs field \"span\"");
  std::vector<RVector> span;
  for (const auto& v : j.at("span")) span.push_back(vector_from_json(v));
  return Subspace(n, std::move(span));
}

json subspace_to_json(const Subspace& M) {
  json span = json::array();
  for (const auto& v : M.span()) span.push_back(vector_to_json(v));
  return json{{"span", span}};
}

Instance instance_from_json(const json& j) {
  if (!j.is_object()) throw InvalidInput("instance must be a JSON object");
  Instance inst;
  try {
    if (j.contains("body")) inst.body = polytope_from_json(j.at("body"));
    if (j.contains("lattice")) inst.lattice = basis_from_json(j.at("lattice"));
    std::optional<std::size_t> n;
    auto check = [&](std::size_t d, const char* what) {
      if (n && *n != d) throw InvalidInput(std::string("dimension of ") + what + " is inconsistent");
      n = d;
    };
    if (inst.body) check(inst.body->dim(), "body");
    if (inst.lattice) check(inst.lattice->dim(), "lattice");
    if (j.contains("target")) {
      inst.target = vector_from_json(j.at("target"));
      check(inst.target->size(), "target");
    }
    if (j.contains("subspace")) {
      if (!n) throw InvalidInput("subspace given without body or lattice");
      inst.subspace = subspace_from_json(j.at("subspace"), *n);
    }
    if (j.contains("objective")) {
      const json& o = j.at("objective");
      Objective obj;
      obj.v = vector_from_json(o.at("v"));
      if (o.contains("delta")) obj.delta = to_double(rational_from_json(o.at("delta")));
      check(obj.v.size(), "objective");
      inst.objective = std::move(obj);
    }
    if (j.contains("params")) {
      const json& p = j.at("params");
      auto real = [&](const char* key, std::optional<double>& out) {
        if (p.contains(key) && !p.at(key).is_null()) out = to_double(rational_from_json(p.at(key)));
      };
      real("eps", inst.params.eps);
      real("budget_multiplier", inst.params.budget_multiplier);
      real("gamma_override", inst.params.gamma);
      real("exact_t", inst.params.exact_t);
      if (p.contains("seed")) inst.params.seed = p.at("seed").get<std::uint64_t>();
    }
    if (j.contains("meta")) inst.meta = j.at("meta");
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("instance: ") + e.what());
  }
  return inst;
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  json j;
  try {
    j = json::parse(buf.str());
  } catch (const json::parse_error& e) {
    throw InvalidInput(path + ": malformed JSON at byte " + std::to_string(e.byte) + ": " + e.what());
  }
  return instance_from_json(j);
}

json instance_to_json(const Instance& inst) {
  json j = json::object();
  if (inst.body) j["body"] = polytope_to_json(*inst.body);
  if (inst.lattice) j["lattice"] = basis_to_json(*inst.lattice);
  if (inst.target) j["target"] = vector_to_json(*inst.target);
  if (inst.subspace) j["subspace"] = subspace_to_json(*inst.subspace);
  if (inst.objective) {
    j["objective"] = json{{"v", vector_to_json(inst.objective->v)}, {"delta", inst.objective->delta}};
  }
  json p = json::object();
  if (inst.params.eps) p["eps"] = *inst.params.eps;
  if (inst.params.seed) p["seed"] = *inst.params.seed;
  if (inst.params.budget_multiplier) p["budget_multiplier"] = *inst.params.budget_multiplier;
  if (inst.params.gamma) p["gamma_override"] = *inst.params.gamma;
  if (inst.params.exact_t) p["exact_t"] = *inst.params.exact_t;
  if (!p.empty()) j["params"] = p;
  if (!inst.meta.empty()) j["meta"] = inst.meta;
  return j;
}

json value_json(const Rational& q) {
  return json{{"decimal", to_double(q)}, {"rational", format_rational(q)}};
}

json report_to_json(const SolveReport& rep) {
  json j;
  j["status"] = status_name(rep.status);
  if (rep.vector) j["vector"] = vector_to_json(*rep.vector);
  if (rep.coefficients) j["coefficients"] = vector_to_json(*rep.coefficients);
  if (rep.value) j["value"] = value_json(*rep.value);
  j["eps"] = rep.eps;
  j["gamma"] = rep.gamma;
  j["nu"] = rep.nu;
  j["seed"] = rep.seed;
  j["budget_multiplier"] = rep.budget_multiplier;
  j["total_pairs"] = rep.total_pairs;
  json guesses = json::array();
  for (const auto& g : rep.guesses) {
    json e{{"beta", g.beta},
           {"initial_pairs", g.initial_pairs},
           {"stages", g.stages},
           {"survivors", g.survivors},
           {"max_centers", g.max_centers},
           {"candidates", g.candidates},
           {"exhausted", g.exhausted}};
    e["best_value"] = g.best_value ? json(*g.best_value) : json(nullptr);
    guesses.push_back(std::move(e));
  }
  j["guesses"] = guesses;
  j["warnings"] = rep.warnings;
  return j;
}

json ip_result_to_json(const IPResult& res) {
  json j;
  j["status"] = ip_status_name(res.status);
  if (res.point) j["vector"] = vector_to_json(*res.point);
  if (res.coefficients) j["coefficients"] = vector_to_json(*res.coefficients);
  j["center"] = vector_to_json(res.center);
  if (res.center_gauge) j["center_gauge"] = value_json(*res.center_gauge);
  j["eps"] = res.eps;
  j["seed"] = res.seed;
  j["cvp"] = report_to_json(res.cvp);
  return j;
}

json opt_result_to_json(const OptResult& res) {
  json j;
  j["status"] = res.status == OptStatus::solved ? "SOLVED" : "EMPTY";
  if (res.point) j["vector"] = vector_to_json(*res.point);
  if (res.coefficients) j["coefficients"] = vector_to_json(*res.coefficients);
  if (res.value) j["value"] = value_json(*res.value);
  if (res.status == OptStatus::solved) {
    j["bracket"] = json{{"lower", value_json(res.lower)}, {"upper", value_json(res.upper)}};
  }
  j["delta"] = value_json(res.delta);
  j["iterations"] = res.iterations;
  j["iteration_cap"] = res.iteration_cap;
  j["repetitions"] = res.repetitions;
  j["ip_calls"] = res.ip_calls;
  j["inconclusive_calls"] = res.inconclusive_calls;
  j["contraction"] = res.contraction;
  j["warnings"] = res.warnings;
  return j;
}

}  // namespace gsieve
