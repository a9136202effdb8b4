#include "weblin/report.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <vector>

#include "weblin/candidates.hpp"
#include "weblin/parser.hpp"
#include "weblin/verify.hpp"

namespace weblin {

namespace {

std::vector<std::string> param_names(const std::map<std::string, double>& m) {
  std::vector<std::string> names;
  for (auto& [k, v] : m) names.push_back(k);
  return names;
}

nlohmann::json params_json(const std::map<std::string, double>& m) {
  nlohmann::json j = nlohmann::json::object();
  for (auto& [k, v] : m) j[k] = sig12(v);
  return j;
}

nlohmann::json check_json(const CheckResult& c) {
  return {{"passed", c.passed},
          {"max_residual", sig12(c.max_residual)},
          {"samples_used", c.used},
          {"samples_skipped", c.skipped}};
}

/// Common head of both reports; returns 0 on success, the exit code on
/// failure after printing the reason.
int prepare(const Config& cfg, const std::map<std::string, double>& params,
            std::ostream& out, WebFunction& w, std::vector<Point>& samples,
            nlohmann::json& j) {
  if (cfg.samples < 10 || !(cfg.x1min < cfg.x1max) ||
      !(cfg.x2min < cfg.x2max)) {
    out << "error: need at least 10 samples and a nondegenerate box\n";
    return 2;
  }
  try {
    w.f = parse_expr(cfg.f_text, param_names(params));
  } catch (const Error& e) {
    out << "error: " << e.what() << "\n";
    return 2;
  }
  w.params = param_names(params);
  w.x1min = cfg.x1min;
  w.x1max = cfg.x1max;
  w.x2min = cfg.x2min;
  w.x2max = cfg.x2max;
  try {
    validate(w);
  } catch (const Error& e) {
    out << "error: " << e.what() << "\n";
    return 3;
  }
  try {
    samples = regular_samples(w, cfg.samples, cfg.seed, params);
  } catch (const Error& e) {
    out << "error: " << e.what() << "\n";
    return 2;
  }
  ChernData cd = chern(w);
  j["schema"] = 1;
  j["f"] = cfg.f_text;
  j["box"] = {sig12(cfg.x1min), sig12(cfg.x1max), sig12(cfg.x2min),
              sig12(cfg.x2max)};
  j["samples"] = cfg.samples;
  j["seed"] = cfg.seed;
  j["params"] = params_json(params);
  j["web"] = {{"c", cd.c.str()},
              {"gamma1", cd.gamma1.str()},
              {"gamma2", cd.gamma2.str()},
              {"r", cd.r.str()}};
  return 0;
}

int finish(const Config& cfg, std::ostream& out, const nlohmann::json& j) {
  out << "verdict: " << j["verdict"].get<std::string>() << "\n";
  if (!cfg.json_path.empty()) {
    std::ofstream f(cfg.json_path);
    if (!f) {
      out << "error: cannot write " << cfg.json_path << "\n";
      return 2;
    }
    f << j.dump(2) << "\n";
  }
  return 0;
}

}  // namespace

double sig12(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return std::strtod(buf, nullptr);
}

int cmd_analyze(const Config& cfg, std::ostream& out) {
  WebFunction w;
  std::vector<Point> samples;
  nlohmann::json j;
  if (int rc = prepare(cfg, cfg.params, out, w, samples, j)) return rc;
  j["command"] = "analyze";

  ParallelVerdict pv = is_parallelizable(w, samples);
  if (pv.parallelizable) {
    j["verdict"] = "PARALLELIZABLE";
    j["parallelizable"] = {{"symbolic", pv.symbolic},
                           {"max_residual", sig12(pv.max_residual)}};
    return finish(cfg, out, j);
  }

  std::vector<BaseCandidate> bases;
  try {
    bases = find_constant_bases(w, samples);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::DegenerateMinor &&
        e.kind() != ErrorKind::ParallelizableBranch)
      throw;
    j["verdict"] = "DEGENERATE";
    j["reason"] = e.what();
    return finish(cfg, out, j);
  }

  j["bases"] = nlohmann::json::array();
  j["candidates"] = nlohmann::json::array();
  bool any = false;
  for (const BaseCandidate& b : bases) {
    nlohmann::json residuals = nlohmann::json::array();
    for (const auto& row : b.residuals) {
      nlohmann::json r = nlohmann::json::array();
      for (double v : row) r.push_back(sig12(v));
      residuals.push_back(r);
    }
    Point init{(w.x1min + w.x1max) / 2, (w.x2min + w.x2max) / 2, cfg.params};
    FrobeniusSolution sol = solve_frobenius(w, b.s, init, 0.0, 0.0);
    GridCheck grid = check_pde_grid(w, b.s, sol, cfg.params);
    bool passed = b.verified && grid.passed;
    any = any || passed;
    if (passed) j["bases"].push_back(sig12(b.s));
    j["candidates"].push_back(
        {{"base", sig12(b.s)},
         {"base_max_residual", sig12(b.max_residual)},
         {"obstruction_residuals", residuals},
         {"grid",
          {{"nodes_checked", grid.used},
           {"max_residual", sig12(grid.max_residual)},
           {"compat_residual", sig12(sol.max_compat_residual)},
           {"escaped", sol.escaped},
           {"passed", grid.passed}}},
         {"passed", passed}});
  }
  j["verdict"] = any ? "LINEARIZABLE" : "NO-CONSTANT-BASE";
  return finish(cfg, out, j);
}

int cmd_verify(const Config& cfg, std::ostream& out) {
  nlohmann::json cand;
  {
    std::ifstream f(cfg.candidate_path);
    if (!f) {
      out << "error: cannot read " << cfg.candidate_path << "\n";
      return 2;
    }
    try {
      f >> cand;
    } catch (const nlohmann::json::exception& e) {
      out << "error: candidate file: " << e.what() << "\n";
      return 2;
    }
  }
  for (const char* key : {"s", "t", "z"})
    if (!cand.contains(key)) {
      out << "error: candidate file is missing \"" << key << "\"\n";
      return 2;
    }

  // CLI parameter bindings override the ones stored in the file
  std::map<std::string, double> params;
  if (cand.contains("params")) {
    if (!cand["params"].is_object()) {
      out << "error: candidate \"params\" must be an object\n";
      return 2;
    }
    for (auto& [k, v] : cand["params"].items()) {
      if (!v.is_number()) {
        out << "error: candidate parameter " << k << " is not a number\n";
        return 2;
      }
      params[k] = v.get<double>();
    }
  }
  for (auto& [k, v] : cfg.params) params[k] = v;

  WebFunction w;
  std::vector<Point> samples;
  nlohmann::json j;
  if (int rc = prepare(cfg, params, out, w, samples, j)) return rc;
  j["command"] = "verify";

  Expr s, t, z;
  try {
    auto field = [&](const char* key) {
      const nlohmann::json& v = cand[key];
      if (v.is_number()) return Expr::constant(Rat(v.get<double>()));
      if (v.is_string())
        return parse_expr(v.get<std::string>(), param_names(params));
      throw Error(ErrorKind::InputError,
                  std::string("candidate \"") + key +
                      "\" must be a number or an expression string");
    };
    s = field("s");
    t = field("t");
    z = field("z");
  } catch (const Error& e) {
    out << "error: " << e.what() << "\n";
    return 2;
  }
  j["candidate"] = {{"s", s.str()}, {"t", t.str()}, {"z", z.str()}};

  Verdict v;
  try {
    v = full_verdict(w, s, t, z, samples);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NoRegularSamples) throw;
    out << "error: " << e.what() << "\n";
    return 2;
  }
  j["checks"] = {
      {"frobenius",
       {{"verified", v.frobenius.verified},
        {"max_residual", sig12(v.frobenius.max_residual)},
        {"samples_used", (int)v.frobenius.used.size()},
        {"samples_skipped", v.frobenius.skipped}}},
      {"pde", check_json(v.pde)},
      {"torsion_free", v.torsion_free},
      {"flat", check_json(v.flat)},
      {"geodesic", check_json(v.geodesic.result)},
  };
  j["geodesic_factor"] = v.geodesic.factor.str();
  j["verdict"] = v.linearization ? "LINEARIZATION" : "REJECTED";
  return finish(cfg, out, j);
}

}  // namespace weblin
