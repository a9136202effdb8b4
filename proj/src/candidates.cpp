#include "weblin/candidates.hpp"

#include <algorithm>
#include <cmath>

#include "weblin/linsys.hpp"
#include "weblin/roots.hpp"

namespace weblin {

namespace {

bool near_root(const std::vector<double>& coeffs, double x, double radius) {
  for (double r : real_roots(coeffs))
    if (std::abs(r - x) <= radius) return true;
  return false;
}

/// |p(x)| normalized by the largest coefficient magnitude.
double normalized_residual(const std::vector<double>& coeffs, double x) {
  double scale = 0.0, acc = 0.0, pw = 1.0;
  for (double c : coeffs) {
    scale = std::max(scale, std::abs(c));
    acc += c * pw;
    pw *= x;
  }
  return scale == 0.0 ? 0.0 : std::abs(acc) / scale;
}

}  // namespace

std::vector<double> common_roots(
    const std::vector<std::vector<std::vector<double>>>& polys,
    double radius) {
  if (polys.empty() || polys[0].empty()) return {};
  std::vector<double> out;
  for (double cand : real_roots(polys[0][0])) {
    bool everywhere = true;
    for (const auto& sample : polys)
      for (const auto& p : sample)
        if (!near_root(p, cand, radius)) {
          everywhere = false;
          break;
        }
    if (!everywhere) continue;
    bool dup = false;
    for (double seen : out)
      if (std::abs(seen - cand) <= radius) dup = true;
    if (!dup) out.push_back(cand);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<BaseCandidate> find_constant_bases(const WebFunction& w,
                                               const std::vector<Point>& samples,
                                               double tol_base) {
  if (samples.empty())
    throw Error(ErrorKind::NoRegularSamples, "no samples for the base search");

  std::vector<std::vector<std::vector<double>>> table;
  table.reserve(samples.size());
  for (const Point& p : samples) {
    Cascade<Taylor> k = run_cascade_at(w, p);
    std::vector<std::vector<double>> qs;
    qs.reserve(k.Q.size());
    for (const SPoly<Taylor>& q : k.Q) qs.push_back(spoly_eval(q, p));
    table.push_back(std::move(qs));
  }

  // Candidates come from Q1, whose roots are well conditioned; the matching
  // radius against the higher-degree obstructions is loose because their
  // companion roots lose accuracy near multiple roots. The residual gate
  // below is what actually decides.
  std::vector<BaseCandidate> out;
  for (double s : common_roots(table, 1e-4)) {
    BaseCandidate b;
    b.s = s;
    for (const auto& sample : table) {
      std::array<double, 7> row{};
      for (int i = 0; i < 7; ++i) {
        row[i] = normalized_residual(sample[i], s);
        b.max_residual = std::max(b.max_residual, row[i]);
      }
      b.residuals.push_back(row);
    }
    b.verified = b.max_residual < tol_base;
    if (b.verified) out.push_back(std::move(b));
  }
  return out;
}

namespace {

struct FrobeniusField {
  // the four right-hand sides with s == base, s1 == s2 == 0
  JetPoly<Expr> t1, t2, z1, z2;
  Expr f1, f2, c;
  double eps_reg;

  static FrobeniusField make(const WebFunction& w, double base) {
    FrobeniusRHS<Expr> f = frobenius_rhs(web_scalars(w));
    Rat sigma(base);
    auto fix = [&](JetPoly<Expr> p) {
      p = p.substitute(jetvar::kS, JetPoly<Expr>::coeff(Expr::constant(sigma)));
      p = p.substitute(jetvar::kS1, JetPoly<Expr>());
      return p.substitute(jetvar::kS2, JetPoly<Expr>());
    };
    ChernData cd = chern(w);
    return {fix(f.t1), fix(f.t2), fix(f.z1), fix(f.z2),
            w.f.derivative(Symbols::kX1), w.f.derivative(Symbols::kX2),
            cd.c, w.eps_reg};
  }

  bool regular(const Point& p) const {
    try {
      return std::abs(f1.eval(p)) > eps_reg && std::abs(f2.eval(p)) > eps_reg &&
             std::abs(c.eval(p)) > eps_reg;
    } catch (const Error&) {
      return false;
    }
  }

  static double eval(const JetPoly<Expr>& rhs, const Point& p, double t,
                     double z) {
    double acc = 0.0;
    for (auto& [m, cf] : rhs.terms()) {
      double term = cf.eval(p);
      for (auto& [v, e] : m) {
        double val = v == jetvar::kT ? t : z;
        for (int k = 0; k < e; ++k) term *= val;
      }
      acc += term;
    }
    return acc;
  }
};

constexpr double kBlowUp = 1e12;

struct LegResult {
  double t = 0.0, z = 0.0;
  bool ok = false;
};

/// One axis-parallel leg with n classical 4th-order steps.
LegResult integrate_leg(const FrobeniusField& fld, Point p, int axis,
                        double target, double t, double z, int n) {
  double& coord = axis == Symbols::kX1 ? p.x1 : p.x2;
  const JetPoly<Expr>& rt = axis == Symbols::kX1 ? fld.t1 : fld.t2;
  const JetPoly<Expr>& rz = axis == Symbols::kX1 ? fld.z1 : fld.z2;
  double h = (target - coord) / n;
  for (int i = 0; i < n; ++i) {
    Point q = p;
    double& qc = axis == Symbols::kX1 ? q.x1 : q.x2;
    if (!fld.regular(q)) return {};
    double k1t = FrobeniusField::eval(rt, q, t, z);
    double k1z = FrobeniusField::eval(rz, q, t, z);
    qc = coord + h / 2;
    if (!fld.regular(q)) return {};
    double k2t = FrobeniusField::eval(rt, q, t + h / 2 * k1t, z + h / 2 * k1z);
    double k2z = FrobeniusField::eval(rz, q, t + h / 2 * k1t, z + h / 2 * k1z);
    double k3t = FrobeniusField::eval(rt, q, t + h / 2 * k2t, z + h / 2 * k2z);
    double k3z = FrobeniusField::eval(rz, q, t + h / 2 * k2t, z + h / 2 * k2z);
    qc = coord + h;
    if (!fld.regular(q)) return {};
    double k4t = FrobeniusField::eval(rt, q, t + h * k3t, z + h * k3z);
    double k4z = FrobeniusField::eval(rz, q, t + h * k3t, z + h * k3z);
    t += h / 6 * (k1t + 2 * k2t + 2 * k3t + k4t);
    z += h / 6 * (k1z + 2 * k2z + 2 * k3z + k4z);
    coord += h;
    if (std::abs(t) > kBlowUp || std::abs(z) > kBlowUp) return {};
  }
  return {t, z, true};
}

/// Two-leg path from init to (x1, x2) with step halving until the endpoint
/// settles below 1e-8.
LegResult integrate_to(const FrobeniusField& fld, const Point& init, double t0,
                       double z0, double x1, double x2, bool x2_first,
                       int& steps_used) {
  int first = x2_first ? Symbols::kX2 : Symbols::kX1;
  int second = x2_first ? Symbols::kX1 : Symbols::kX2;
  double target1 = x2_first ? x2 : x1;
  double target2 = x2_first ? x1 : x2;
  LegResult prev;
  for (int n = 8; n <= 4096; n *= 2) {
    Point p = init;
    LegResult a = integrate_leg(fld, p, first, target1, t0, z0, n);
    if (!a.ok) return {};
    (first == Symbols::kX1 ? p.x1 : p.x2) = target1;
    LegResult b = integrate_leg(fld, p, second, target2, a.t, a.z, n);
    if (!b.ok) return {};
    if (prev.ok && std::abs(b.t - prev.t) < 1e-8 &&
        std::abs(b.z - prev.z) < 1e-8) {
      steps_used = std::max(steps_used, n);
      return b;
    }
    prev = b;
  }
  steps_used = 4096;
  return prev;
}

}  // namespace

FrobeniusSolution solve_frobenius(const WebFunction& w, double base,
                                  const Point& init, double t0, double z0,
                                  int n1, int n2, bool x2_first) {
  FrobeniusField fld = FrobeniusField::make(w, base);
  FrobeniusSolution sol;
  sol.n1 = n1;
  sol.n2 = n2;
  sol.x2_first = x2_first;
  for (int i = 0; i < n1; ++i)
    sol.x1.push_back(w.x1min + (w.x1max - w.x1min) * i / (n1 - 1));
  for (int j = 0; j < n2; ++j)
    sol.x2.push_back(w.x2min + (w.x2max - w.x2min) * j / (n2 - 1));
  sol.t.assign(n1 * n2, 0.0);
  sol.z.assign(n1 * n2, 0.0);
  sol.mask.assign(n1 * n2, 0);

  int steps = 0;
  for (int j = 0; j < n2; ++j)
    for (int i = 0; i < n1; ++i) {
      Point node{sol.x1[i], sol.x2[j], init.params};
      if (!fld.regular(node)) continue;
      LegResult r =
          integrate_to(fld, init, t0, z0, sol.x1[i], sol.x2[j], x2_first, steps);
      if (!r.ok) {
        sol.escaped = true;
        continue;
      }
      sol.t[j * n1 + i] = r.t;
      sol.z[j * n1 + i] = r.z;
      sol.mask[j * n1 + i] = 1;
    }
  double span = std::max(w.x1max - w.x1min, w.x2max - w.x2min);
  sol.step = steps > 0 ? span / steps : 0.0;

  // finite-difference compatibility d2(t1) - d1(t2) and the z analogue
  double h1 = sol.x1.size() > 1 ? sol.x1[1] - sol.x1[0] : 1.0;
  double h2 = sol.x2.size() > 1 ? sol.x2[1] - sol.x2[0] : 1.0;
  auto field = [&](const JetPoly<Expr>& rhs, int i, int j) {
    Point p{sol.x1[i], sol.x2[j], init.params};
    return FrobeniusField::eval(rhs, p, sol.t_at(i, j), sol.z_at(i, j));
  };
  for (int j = 1; j + 1 < n2; ++j)
    for (int i = 1; i + 1 < n1; ++i) {
      bool ok = sol.ok_at(i, j) && sol.ok_at(i - 1, j) && sol.ok_at(i + 1, j) &&
                sol.ok_at(i, j - 1) && sol.ok_at(i, j + 1);
      if (!ok) continue;
      double rt = (field(fld.t1, i, j + 1) - field(fld.t1, i, j - 1)) / (2 * h2) -
                  (field(fld.t2, i + 1, j) - field(fld.t2, i - 1, j)) / (2 * h1);
      double rz = (field(fld.z1, i, j + 1) - field(fld.z1, i, j - 1)) / (2 * h2) -
                  (field(fld.z2, i + 1, j) - field(fld.z2, i - 1, j)) / (2 * h1);
      sol.max_compat_residual =
          std::max({sol.max_compat_residual, std::abs(rt), std::abs(rz)});
    }
  return sol;
}

ClosedFormCheck check_closed_form(const WebFunction& w, const Expr& s,
                                  const Expr& t, const Expr& z,
                                  const std::vector<Point>& samples,
                                  double tol) {
  FrobeniusRHS<Expr> f = frobenius_rhs(web_scalars(w));
  auto as_expr = [&](const JetPoly<Expr>& p) {
    Expr acc;
    for (auto& [m, cf] : p.terms()) {
      Expr term = cf;
      for (auto& [v, e] : m) {
        Expr val;
        switch (v) {
          case jetvar::kT: val = t; break;
          case jetvar::kZ: val = z; break;
          case jetvar::kS: val = s; break;
          case jetvar::kS1: val = s.derivative(Symbols::kX1); break;
          case jetvar::kS2: val = s.derivative(Symbols::kX2); break;
          default:
            throw Error(ErrorKind::EliminationFailure,
                        "unexpected jet " + jetvar::name(v) + " in the system");
        }
        term = term * val.pow(e);
      }
      acc = acc + term;
    }
    return acc;
  };
  std::array<Expr, 4> lhs = {
      t.derivative(Symbols::kX1), t.derivative(Symbols::kX2),
      z.derivative(Symbols::kX1), z.derivative(Symbols::kX2)};
  std::array<Expr, 4> rhs = {as_expr(f.t1), as_expr(f.t2), as_expr(f.z1),
                             as_expr(f.z2)};

  ClosedFormCheck out;
  for (const Point& p : samples) {
    std::array<double, 4> row{};
    bool ok = true;
    for (int k = 0; k < 4 && ok; ++k) {
      try {
        double a = lhs[k].eval(p), b = rhs[k].eval(p);
        row[k] = std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::SingularEvaluation) throw;
        ok = false;
      }
    }
    if (!ok) {
      ++out.skipped;
      continue;
    }
    for (double r : row) out.max_residual = std::max(out.max_residual, r);
    out.residuals.push_back(row);
    out.used.push_back(p);
  }
  if (out.used.empty())
    throw Error(ErrorKind::NoRegularSamples,
                "every sample hit a singularity of the candidate");
  out.verified = out.max_residual < tol;
  return out;
}

bool projectively_equivalent(const BaseCandidate& b1, const BaseCandidate& b2,
                             double tol) {
  return b1.verified && b2.verified && std::abs(b1.s - b2.s) < tol;
}

}  // namespace weblin
