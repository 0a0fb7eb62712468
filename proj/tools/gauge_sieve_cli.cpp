// gauge-sieve: run the lattice solvers and oracles on JSON instance files.

#include "gsieve/error.hpp"
#include "gsieve/generate.hpp"
#include "gsieve/io.hpp"

#include <CLI11.hpp>

#include <sys/wait.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

using namespace gsieve;

namespace {

enum Exit { kOk = 0, kInputError = 1, kEmpty = 2, kInconclusive = 3, kViolation = 4 };

struct Options {
  std::string command;
  std::string instance;
  std::string batch;
  std::optional<double> eps, delta, budget, exact_t, gamma;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> max_stages, repetitions;
  bool verify = false;
  bool exact = false;
  bool timing = false;
  std::string sampler = "rejection";
  std::size_t burn_in = 200;
  std::size_t max_n_oracle = 5;
  std::string target;
  std::size_t samples = 100000;
  std::size_t jobs = 0;
  std::string table;
};

struct Outcome {
  json report;
  int code = kOk;
};

RVector parse_target(const std::string& text) {
  RVector out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_rational(item));
  return out;
}

SamplerMethod sampler_method(const std::string& s) {
  if (s == "rejection") return SamplerMethod::rejection;
  if (s == "hitandrun" || s == "hit-and-run") return SamplerMethod::hit_and_run;
  throw InvalidInput("unknown sampler '" + s + "'");
}

struct Resolved {
  double eps;
  std::uint64_t seed;
  double budget;
  std::optional<double> exact_t;
  std::optional<double> gamma;
  SieveConfig sieve;
};

Resolved resolve(const Options& o, const Instance& inst, double default_eps) {
  Resolved r;
  r.eps = o.eps.value_or(inst.params.eps.value_or(default_eps));
  r.seed = o.seed.value_or(inst.params.seed.value_or(0));
  r.budget = o.budget.value_or(inst.params.budget_multiplier.value_or(1.0));
  r.exact_t = o.exact_t ? o.exact_t : inst.params.exact_t;
  r.gamma = o.gamma ? o.gamma : inst.params.gamma;
  r.sieve.sampler.seed = r.seed;
  r.sieve.sampler.method = sampler_method(o.sampler);
  r.sieve.sampler.burn_in = o.burn_in;
  r.sieve.budget_multiplier = r.budget;
  r.sieve.gamma = r.gamma;
  if (o.max_stages) r.sieve.max_stages = *o.max_stages;
  r.sieve.oracle.max_dim = o.max_n_oracle;
  return r;
}

json params_json(const Resolved& r, const Options& o) {
  json p{{"eps", r.eps}, {"seed", r.seed}, {"budget_multiplier", r.budget}, {"sampler", o.sampler}};
  p["exact_t"] = r.exact_t ? json(*r.exact_t) : json(nullptr);
  p["gamma_override"] = r.gamma ? json(*r.gamma) : json(nullptr);
  return p;
}

const CenteredPolytope& need_body(const Instance& inst) {
  if (!inst.body) throw InvalidInput("instance has no \"body\"");
  return *inst.body;
}

const LatticeBasis& need_lattice(const Instance& inst) {
  if (!inst.lattice) throw InvalidInput("instance has no \"lattice\"");
  return *inst.lattice;
}

int solve_code(Status s) {
  switch (s) {
    case Status::ok: return kOk;
    case Status::empty: return kEmpty;
    default: return kInconclusive;
  }
}

bool oracle_allowed(const Options& o, std::size_t n) { return n <= o.max_n_oracle; }

OracleOptions oracle_options(const Options& o) {
  OracleOptions opts;
  opts.max_dim = o.max_n_oracle;
  return opts;
}

json exact_solution_json(const LatticeSolution& s) {
  return json{{"vector", vector_to_json(s.point)},
              {"coefficients", vector_to_json(s.coefficients)},
              {"value", {{"decimal", s.value_double()}, {"rational", format_rational(s.value)}}}};
}

Outcome run_cvp(const Options& o, const Instance& inst) {
  const auto& C = need_body(inst);
  const auto& B = need_lattice(inst);
  RVector x = o.target.empty() ? inst.target.value_or(RVector{}) : parse_target(o.target);
  if (x.size() != B.dim()) throw InvalidInput("cvp needs a target of dimension " + std::to_string(B.dim()));
  Resolved r = resolve(o, inst, 0.25);
  Outcome out;
  out.report["params"] = params_json(r, o);
  if (o.exact) {
    LatticeSolution s = cvp_brute(C, B, x, oracle_options(o));
    out.report["status"] = "OK";
    out.report["result"] = exact_solution_json(s);
    return out;
  }
  SolveReport rep = r.exact_t ? exact_cvp(C, B, x, *r.exact_t, r.sieve) : approx_cvp(C, B, x, r.eps, r.sieve);
  out.report["status"] = status_name(rep.status);
  out.report["result"] = report_to_json(rep);
  out.code = solve_code(rep.status);
  if (o.verify && oracle_allowed(o, B.dim())) {
    LatticeSolution s = cvp_brute(C, B, x, oracle_options(o));
    json block = exact_solution_json(s);
    bool ok = true;
    if (rep.status == Status::ok) {
      ok = in_lattice(B, *rep.vector) && *rep.value >= s.value;
      if (r.exact_t) {
        ok = ok && *rep.value == s.value;
      } else {
        ok = ok && *rep.value <= (1 + to_rational(rep.eps)) * s.value;
      }
      block["ratio"] = s.value == 0 ? json(rep.value_double() == 0 ? 1.0 : 0.0)
                                    : json(to_double(*rep.value / s.value));
    }
    block["consistent"] = ok;
    out.report["oracle"] = block;
    if (!ok) out.code = kViolation;
  }
  return out;
}

Outcome run_sap(const Options& o, const Instance& inst, bool svp) {
  const auto& C = need_body(inst);
  const auto& B = need_lattice(inst);
  Subspace M = svp || !inst.subspace ? Subspace::zero(B.dim()) : *inst.subspace;
  Resolved r = resolve(o, inst, 0.5);
  Outcome out;
  out.report["params"] = params_json(r, o);
  if (o.exact) {
    LatticeSolution s = sap_brute(C, B, M, oracle_options(o));
    out.report["status"] = "OK";
    out.report["result"] = exact_solution_json(s);
    return out;
  }
  SolveReport rep = r.exact_t ? exact_sap(C, B, M, *r.exact_t, r.sieve) : approx_sap(C, B, M, r.eps, r.sieve);
  out.report["status"] = status_name(rep.status);
  out.report["result"] = report_to_json(rep);
  out.code = solve_code(rep.status);
  if (o.verify && oracle_allowed(o, B.dim())) {
    LatticeSolution s = sap_brute(C, B, M, oracle_options(o));
    json block = exact_solution_json(s);
    bool ok = true;
    if (rep.status == Status::ok) {
      ok = in_lattice(B, *rep.vector) && !M.contains(*rep.vector) && *rep.value >= s.value;
      if (r.exact_t) {
        ok = ok && *rep.value == s.value;
      } else {
        ok = ok && *rep.value <= (1 + to_rational(rep.eps)) * s.value;
      }
      block["ratio"] = to_double(*rep.value / s.value);
    }
    block["consistent"] = ok;
    out.report["oracle"] = block;
    if (!ok) out.code = kViolation;
  }
  return out;
}

IPConfig ip_config(const Resolved& r) {
  IPConfig cfg;
  cfg.sieve = r.sieve;
  cfg.barycenter.method = r.sieve.sampler.method;
  return cfg;
}

Outcome run_ip_feasible(const Options& o, const Instance& inst) {
  const auto& K = need_body(inst);
  const auto& B = need_lattice(inst);
  Resolved r = resolve(o, inst, 0.5);
  Outcome out;
  out.report["params"] = params_json(r, o);
  if (o.exact) {
    auto s = ip_brute(K, B, oracle_options(o));
    out.report["status"] = s ? "FOUND_IN_K" : "EMPTY";
    if (s) out.report["result"] = exact_solution_json(*s);
    out.code = s ? kOk : kEmpty;
    return out;
  }
  IPResult res = approx_ip(K, B, r.eps, ip_config(r));
  out.report["status"] = ip_status_name(res.status);
  out.report["result"] = ip_result_to_json(res);
  out.code = res.found() ? kOk : res.status == IPStatus::empty ? kEmpty : kInconclusive;
  if (o.verify && oracle_allowed(o, B.dim())) {
    auto s = ip_brute(K, B, oracle_options(o));
    json block;
    block["feasible"] = s.has_value();
    if (s) block["witness"] = vector_to_json(s->point);
    bool ok = true;
    if (res.found()) {
      // Soundness is deterministic: the gauge test must hold when recomputed.
      Rational g = gauge_exact(recenter(K, res.center), *res.point - res.center);
      ok = in_lattice(B, *res.point) && g <= 1 + Rational(3) * to_rational(r.eps) / 4;
      if (res.status == IPStatus::found_in_k) ok = ok && K.contains_exact(*res.point);
    }
    block["consistent"] = ok;
    out.report["oracle"] = block;
    if (!ok) out.code = kViolation;
  }
  return out;
}

Outcome run_ip_optimize(const Options& o, const Instance& inst) {
  const auto& K = need_body(inst);
  const auto& B = need_lattice(inst);
  if (!inst.objective) throw InvalidInput("ip-optimize needs an \"objective\"");
  Resolved r = resolve(o, inst, 0.5);
  const double delta = o.delta.value_or(inst.objective->delta);
  Outcome out;
  out.report["params"] = params_json(r, o);
  out.report["params"]["delta"] = delta;
  const RVector& v = inst.objective->v;
  if (o.exact) {
    auto points = ip_enumerate(K, B, oracle_options(o));
    if (points.empty()) {
      out.report["status"] = "EMPTY";
      out.code = kEmpty;
      return out;
    }
    auto best = std::max_element(points.begin(), points.end(), [&](const auto& a, const auto& b) {
      return dot(v, a.point) < dot(v, b.point);
    });
    Rational value = dot(v, best->point);
    out.report["status"] = "SOLVED";
    out.report["result"] = json{{"vector", vector_to_json(best->point)},
                                {"value", {{"decimal", to_double(value)}, {"rational", format_rational(value)}}}};
    return out;
  }
  OptConfig cfg;
  cfg.ip = ip_config(r);
  cfg.repetitions = o.repetitions;
  OptResult res = approx_opt(K, B, v, r.eps, delta, cfg);
  out.report["status"] = res.status == OptStatus::solved ? "SOLVED" : "EMPTY";
  out.report["result"] = opt_result_to_json(res);
  out.code = res.status == OptStatus::solved ? kOk : kEmpty;
  if (o.verify && oracle_allowed(o, B.dim())) {
    auto points = ip_enumerate(K, B, oracle_options(o));
    json block;
    block["feasible"] = !points.empty();
    bool ok = true;
    if (!points.empty()) {
      Rational best = dot(v, points.front().point);
      for (const auto& p : points) best = std::max(best, dot(v, p.point));
      block["max_value"] = json{{"decimal", to_double(best)}, {"rational", format_rational(best)}};
      if (res.status == OptStatus::solved) {
        ok = *res.value >= best - to_rational(delta) &&
             blowup_membership(K, to_rational(r.eps), *res.point);
      }
    }
    block["consistent"] = ok;
    out.report["oracle"] = block;
    if (!ok) out.code = kViolation;
  }
  return out;
}

CenteredPolytope zero_centered(const CenteredPolytope& C) {
  return C.is_zero_centered() ? C : recenter(C, C.center());
}

Outcome run_gamma(const Options& o, const Instance& inst) {
  Resolved r = resolve(o, inst, 0.5);
  CenteredPolytope C = zero_centered(need_body(inst));
  GammaEstimate g = estimate_gamma(C, o.samples, r.seed, r.sieve.sampler.method);
  Outcome out;
  out.report["status"] = "OK";
  out.report["params"] = json{{"seed", r.seed}, {"samples", o.samples}, {"sampler", o.sampler}};
  out.report["result"] = json{{"gamma", g.value}, {"ratio", g.ratio}, {"std_error", g.std_error}};
  return out;
}

Outcome run_barycenter(const Options& o, const Instance& inst) {
  Resolved r = resolve(o, inst, 1.0 / 3.0);
  const auto& K = need_body(inst);
  BarycenterOptions bo;
  bo.method = r.sieve.sampler.method;
  const double eps = o.eps.value_or(1.0 / 3.0);
  Eigen::VectorXd b = barycenter_approx(K, eps, r.seed, bo);
  Outcome out;
  out.report["status"] = "OK";
  out.report["params"] = json{{"eps", eps}, {"seed", r.seed}, {"sampler", o.sampler}};
  out.report["result"] = json{{"barycenter", vector_to_json(to_rvector(b))}};
  if (auto exact = instance_barycenter(inst)) {
    CenteredPolytope Kb = recenter(K, *exact);
    RVector diff = to_rvector(b) - *exact;
    double worst = std::max(to_double(gauge_exact(Kb, diff)), to_double(gauge_exact(Kb, -diff)));
    out.report["result"]["gauge_error"] = worst;
  }
  return out;
}

Outcome dispatch(const Options& o, const Instance& inst) {
  if (o.command == "cvp") return run_cvp(o, inst);
  if (o.command == "sap") return run_sap(o, inst, false);
  if (o.command == "svp") return run_sap(o, inst, true);
  if (o.command == "ip-feasible") return run_ip_feasible(o, inst);
  if (o.command == "ip-optimize") return run_ip_optimize(o, inst);
  if (o.command == "gamma") return run_gamma(o, inst);
  if (o.command == "barycenter") return run_barycenter(o, inst);
  throw InvalidInput("unknown command " + o.command);
}

json error_report(const Options& o, const std::string& status, const std::string& message) {
  return json{{"schema", kSchema}, {"problem", o.command}, {"status", status}, {"error", message}};
}

int run_single(const Options& o) {
  auto start = std::chrono::steady_clock::now();
  try {
    Instance inst = load_instance(o.instance);
    Outcome out = dispatch(o, inst);
    json report{{"schema", kSchema}, {"problem", o.command}, {"instance", o.instance}};
    report.update(out.report);
    if (o.timing) {
      std::chrono::duration<double> dt = std::chrono::steady_clock::now() - start;
      report["timing"] = json{{"seconds", dt.count()}};
    }
    std::cout << report.dump(2) << "\n";
    return out.code;
  } catch (const InvalidInput& e) {
    std::cerr << "error: " << e.what() << "\n";
    std::cout << error_report(o, "INPUT_ERROR", e.what()).dump(2) << "\n";
    return kInputError;
  } catch (const CapExceeded& e) {
    std::cerr << "cap exceeded: " << e.what() << "\n";
    std::cout << error_report(o, "CAP_EXCEEDED", e.what()).dump(2) << "\n";
    return kInconclusive;
  } catch (const BudgetExhausted& e) {
    std::cerr << "budget exhausted: " << e.what() << "\n";
    std::cout << error_report(o, "BUDGET_EXHAUSTED", e.what()).dump(2) << "\n";
    return kInconclusive;
  } catch (const ContractViolation& e) {
    std::cerr << "contract violation: " << e.what() << "\n";
    std::cout << error_report(o, "CONTRACT_VIOLATION", e.what()).dump(2) << "\n";
    return kViolation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    std::cout << error_report(o, "ERROR", e.what()).dump(2) << "\n";
    return kInputError;
  }
}

std::string quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'') out += "'\\''";
    else out += c;
  }
  return out + "'";
}

std::string flag_value(double v) {
  std::ostringstream ss;
  ss.precision(17);
  ss << v;
  return ss.str();
}

// Command line re-running one instance of a batch in a child process.
std::string child_command(const Options& o, const std::string& file, std::uint64_t seed) {
  std::string cmd = quote("/proc/self/exe");
  std::error_code ec;
  auto self = std::filesystem::read_symlink("/proc/self/exe", ec);
  if (!ec) cmd = quote(self.string());
  cmd += " " + o.command + " " + quote(file) + " --seed " + std::to_string(seed);
  if (o.eps) cmd += " --eps " + flag_value(*o.eps);
  if (o.delta) cmd += " --delta " + flag_value(*o.delta);
  if (o.budget) cmd += " --budget-multiplier " + flag_value(*o.budget);
  if (o.exact_t) cmd += " --exact-t " + flag_value(*o.exact_t);
  if (o.gamma) cmd += " --gamma " + flag_value(*o.gamma);
  if (o.max_stages) cmd += " --max-stages " + std::to_string(*o.max_stages);
  if (o.repetitions) cmd += " --repetitions " + std::to_string(*o.repetitions);
  if (o.verify) cmd += " --verify";
  if (o.exact) cmd += " --exact";
  if (o.timing) cmd += " --timing";
  if (!o.target.empty()) cmd += " --target " + quote(o.target);
  cmd += " --sampler " + o.sampler + " --burn-in " + std::to_string(o.burn_in);
  cmd += " --max-n-oracle " + std::to_string(o.max_n_oracle);
  cmd += " --samples " + std::to_string(o.samples);
  return cmd + " 2>/dev/null";
}

int run_batch(const Options& o) {
  std::vector<std::string> files;
  for (const auto& e : std::filesystem::directory_iterator(o.batch)) {
    if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path().string());
  }
  std::sort(files.begin(), files.end());
  const std::uint64_t master = o.seed.value_or(0);
  std::vector<json> results(files.size());
  std::atomic<std::size_t> next{0};
  std::size_t jobs = o.jobs ? o.jobs : std::max(1u, std::thread::hardware_concurrency());
  auto worker = [&] {
    for (std::size_t i = next++; i < files.size(); i = next++) {
      std::uint64_t seed = mix_seed(master, i);
      std::string cmd = child_command(o, files[i], seed);
      std::string text;
      if (FILE* pipe = popen(cmd.c_str(), "r")) {
        char buf[4096];
        std::size_t k;
        while ((k = fread(buf, 1, sizeof buf, pipe)) > 0) text.append(buf, k);
        int status = pclose(pipe);
        int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
        json entry{{"file", files[i]}, {"seed", seed}, {"exit_code", code}};
        try {
          entry["report"] = json::parse(text);
        } catch (const json::parse_error&) {
          entry["report"] = nullptr;
        }
        results[i] = std::move(entry);
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < std::min(jobs, files.size()); ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  if (o.table == "text") {
    std::printf("%-40s %5s %-18s %s\n", "file", "exit", "status", "value");
    for (const auto& r : results) {
      std::string status = "?", value = "";
      if (r.contains("report") && r["report"].is_object()) {
        status = r["report"].value("status", "?");
        const json& res = r["report"].value("result", json::object());
        if (res.contains("value")) value = res["value"].value("rational", "");
      }
      std::printf("%-40s %5d %-18s %s\n", std::filesystem::path(r.value("file", "")).filename().c_str(),
                  r.value("exit_code", -1), status.c_str(), value.c_str());
    }
  } else {
    json out{{"schema", kSchema}, {"problem", o.command}, {"master_seed", master}, {"batch", results}};
    std::cout << out.dump(2) << "\n";
  }
  int worst = 0;
  for (const auto& r : results) worst = std::max(worst, r.value("exit_code", 1));
  return worst;
}

void add_solver_flags(CLI::App* sub, Options& o) {
  sub->add_option("instance", o.instance, "Instance JSON file");
  sub->add_option("--batch", o.batch, "Run every *.json in this directory in child processes");
  sub->add_option("--jobs", o.jobs, "Parallel child processes in batch mode (default: cores)");
  sub->add_option("--table", o.table, "Batch summary format: 'text' for a table, JSON otherwise");
  sub->add_option("--eps", o.eps, "Approximation parameter");
  sub->add_option("--delta", o.delta, "Additive objective tolerance (ip-optimize)");
  sub->add_option("--seed", o.seed, "RNG seed (master seed in batch mode)");
  sub->add_option("--budget-multiplier", o.budget, "Scale factor on the sieve's pair count");
  sub->add_option("--exact-t", o.exact_t, "Exact mode with parameter t >= 2 (cvp, sap, svp)");
  sub->add_option("--gamma", o.gamma, "Override the symmetry parameter of the body");
  sub->add_option("--max-stages", o.max_stages, "Hard cap on sieving stages");
  sub->add_option("--repetitions", o.repetitions, "Feasibility repetitions per step (ip-optimize)");
  sub->add_flag("--verify", o.verify, "Compare against the brute-force oracle");
  sub->add_flag("--exact", o.exact, "Run the brute-force oracle instead of the solver");
  sub->add_flag("--timing", o.timing, "Include wall-clock time in the report");
  sub->add_option("--sampler", o.sampler, "rejection | hitandrun");
  sub->add_option("--burn-in", o.burn_in, "Hit-and-run burn-in steps");
  sub->add_option("--max-n-oracle", o.max_n_oracle, "Largest dimension the oracle will enumerate");
  sub->add_option("--target", o.target, "Override the CVP target, comma-separated rationals");
  sub->add_option("--samples", o.samples, "Monte-Carlo samples (gamma)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lattice sieving under asymmetric polytope gauges"};
  app.require_subcommand(1);
  Options o;
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"cvp", "Approximate (or --exact-t exact) closest vector"},
      {"sap", "Shortest lattice vector outside a subspace"},
      {"svp", "Shortest nonzero lattice vector"},
      {"ip-feasible", "Approximate integer feasibility"},
      {"ip-optimize", "Approximate integer optimization of a linear objective"},
      {"gamma", "Monte-Carlo symmetry estimate of the body"},
      {"barycenter", "Approximate barycenter of the body"},
  };
  for (const auto& [name, help] : commands) {
    auto* sub = app.add_subcommand(name, help);
    add_solver_flags(sub, o);
    sub->callback([&o, name = name] { o.command = name; });
  }

  std::string kind;
  std::size_t n = 2;
  std::uint64_t gen_seed = 0;
  double gen_eps = 0.5, gen_delta = 0.1;
  auto* gen = app.add_subcommand("gen", "Emit a generated instance");
  gen->add_option("kind", kind, "random-cvp | planted-cvp | sap | planted-ip | empty-ip | opt")->required();
  gen->add_option("-n,--n", n, "Dimension");
  gen->add_option("--seed", gen_seed, "Generator seed");
  gen->add_option("--eps", gen_eps, "Blowup parameter for IP kinds");
  gen->add_option("--delta", gen_delta, "Objective tolerance for opt");
  gen->callback([&] { o.command = "gen"; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kInputError;
  }

  if (o.command == "gen") {
    try {
      Instance inst;
      if (kind == "random-cvp") inst = gen_random_cvp(n, gen_seed);
      else if (kind == "planted-cvp") inst = gen_planted_cvp(n, gen_seed);
      else if (kind == "sap") inst = gen_sap(n, gen_seed);
      else if (kind == "planted-ip") inst = gen_planted_ip(n, gen_seed, gen_eps);
      else if (kind == "empty-ip") inst = gen_empty_ip(n, gen_seed, gen_eps);
      else if (kind == "opt") inst = gen_opt(n, gen_seed, gen_delta);
      else throw InvalidInput("unknown instance kind '" + kind + "'");
      std::cout << instance_to_json(inst).dump(2) << "\n";
      return kOk;
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      return kInputError;
    }
  }
  if (!o.batch.empty()) return run_batch(o);
  if (o.instance.empty()) {
    std::cerr << "error: an instance file (or --batch DIR) is required\n";
    return kInputError;
  }
  return run_single(o);
}
