#include "weblin/linsys.hpp"

#include <cmath>

namespace weblin {

namespace jetvar {
std::string name(int id) {
  if (id == kT) return "t";
  if (id == kZ) return "z";
  int d = s_order(id);
  int n2 = id - d * (d + 1) / 2;
  int n1 = d - n2;
  std::string s = "s";
  if (d > 0) s += "_";
  for (int i = 0; i < n1; ++i) s += "1";
  for (int i = 0; i < n2; ++i) s += "2";
  return s;
}
}  // namespace jetvar

WebScalars<Expr> web_scalars(const WebFunction& w) {
  ChernData d = chern(w);
  WebScalars<Expr> s;
  s.c = d.c;
  s.gamma1 = d.gamma1;
  s.gamma2 = d.gamma2;
  s.r = d.r;
  s.f1 = w.f.derivative(Symbols::kX1);
  s.f2 = w.f.derivative(Symbols::kX2);
  s.f11 = s.f1.derivative(Symbols::kX1);
  s.f12 = s.f1.derivative(Symbols::kX2);
  s.f22 = s.f2.derivative(Symbols::kX2);
  s.f112 = s.f11.derivative(Symbols::kX2);
  s.f122 = s.f12.derivative(Symbols::kX2);
  return s;
}

WebScalars<Taylor> web_scalars_at(const WebFunction& w, const Point& p,
                                  int order) {
  WebScalars<Expr> sym = web_scalars(w);
  std::map<int, Taylor> env{
      {Symbols::kX1, Taylor::variable(Symbols::kX1, p.x1, order)},
      {Symbols::kX2, Taylor::variable(Symbols::kX2, p.x2, order)}};
  for (auto& [name, value] : p.params)
    env.emplace(Symbols::instance().param(name), Taylor::constant(value, 0));
  WebScalars<Taylor> out;
  out.c = sym.c.eval_generic<Taylor>(env);
  out.gamma1 = sym.gamma1.eval_generic<Taylor>(env);
  out.gamma2 = sym.gamma2.eval_generic<Taylor>(env);
  out.r = sym.r.eval_generic<Taylor>(env);
  out.f1 = sym.f1.eval_generic<Taylor>(env);
  out.f2 = sym.f2.eval_generic<Taylor>(env);
  out.f11 = sym.f11.eval_generic<Taylor>(env);
  out.f12 = sym.f12.eval_generic<Taylor>(env);
  out.f22 = sym.f22.eval_generic<Taylor>(env);
  out.f112 = sym.f112.eval_generic<Taylor>(env);
  out.f122 = sym.f122.eval_generic<Taylor>(env);
  return out;
}

SPoly<Expr> normalize_content(const SPoly<Expr>& q) {
  if (q.is_zero()) return q;
  // clear the coefficient denominators
  Poly lcm = Poly::constant(Rat(1));
  for (const Expr& c : q.coeffs()) {
    if (c.is_zero()) continue;
    const Poly& den = c.rf().den();
    Poly g = poly_gcd(lcm, den);
    lcm = lcm * *den.divide_exact(g);
  }
  std::vector<Poly> nums;
  nums.reserve(q.coeffs().size());
  for (const Expr& c : q.coeffs()) {
    if (c.is_zero()) {
      nums.push_back(Poly());
      continue;
    }
    nums.push_back(c.rf().num() * *lcm.divide_exact(c.rf().den()));
  }
  // divide out the polynomial content (this also removes overall powers of
  // f1, f2 and c picked up while clearing denominators)
  Poly g;
  for (const Poly& n : nums) {
    if (n.is_zero()) continue;
    g = g.is_zero() ? n : poly_gcd(g, n);
    if (g.is_constant()) break;
  }
  std::vector<Expr> out;
  out.reserve(nums.size());
  bool flip = false;
  for (std::size_t i = nums.size(); i-- > 0;)
    if (!nums[i].is_zero()) {
      flip = (*nums[i].divide_exact(g.monic())).leading_coeff() < 0;
      break;
    }
  for (const Poly& n : nums) {
    if (n.is_zero()) {
      out.push_back(Expr());
      continue;
    }
    Poly r = *n.divide_exact(g.monic());
    if (flip) r = -r;
    out.push_back(Expr::from_ratfunc(RatFunc(r)));
  }
  // common rational content across all coefficients
  Rat cont(0);
  for (const Expr& c : out) {
    if (c.is_zero()) continue;
    Rat cc = c.rf().num().content();
    if (cc < 0) cc = -cc;
    if (cont == 0)
      cont = cc;
    else {
      // gcd of rationals: gcd of numerators over lcm of denominators
      Int gn, gl;
      mpz_gcd(gn.get_mpz_t(), cont.get_num_mpz_t(), cc.get_num_mpz_t());
      mpz_lcm(gl.get_mpz_t(), cont.get_den_mpz_t(), cc.get_den_mpz_t());
      cont = Rat(gn, gl);
      cont.canonicalize();
    }
  }
  if (cont != 0 && cont != 1) {
    for (Expr& c : out)
      if (!c.is_zero())
        c = c * Expr::constant(Rat(1) / cont);
  }
  return SPoly<Expr>(std::move(out));
}

SPoly<Taylor> normalize_content(const SPoly<Taylor>& q) {
  double scale = 0.0;
  for (const Taylor& c : q.coeffs()) scale = std::max(scale, std::abs(c.value()));
  if (scale == 0.0) return q;
  std::vector<Taylor> out;
  Taylor inv = Taylor::constant(1.0 / scale);
  for (const Taylor& c : q.coeffs()) out.push_back(c * inv);
  return SPoly<Taylor>(std::move(out));
}

Cascade<Expr> run_cascade_symbolic(const WebFunction& w) {
  WebScalars<Expr> ws = web_scalars(w);
  if (ws.r.is_zero())
    throw Error(ErrorKind::ParallelizableBranch,
                "curvature is identically zero");
  return run_cascade(std::move(ws));
}

Cascade<Taylor> run_cascade_at(const WebFunction& w, const Point& p, int order) {
  return run_cascade(web_scalars_at(w, p, order));
}

std::vector<double> spoly_eval(const SPoly<Expr>& q, const Point& p) {
  std::vector<double> out;
  out.reserve(q.coeffs().size());
  for (const Expr& c : q.coeffs()) out.push_back(c.eval(p));
  return out;
}

std::vector<double> spoly_eval(const SPoly<Taylor>& q, const Point&) {
  std::vector<double> out;
  out.reserve(q.coeffs().size());
  for (const Taylor& c : q.coeffs()) out.push_back(c.value());
  return out;
}

nlohmann::json spoly_to_json(const SPoly<Expr>& q) {
  nlohmann::json j = nlohmann::json::array();
  for (const Expr& c : q.coeffs()) j.push_back(c.str());
  return j;
}

nlohmann::json jetpoly_to_json(const JetPoly<Expr>& p) {
  nlohmann::json j = nlohmann::json::object();
  for (auto& [m, c] : p.terms()) {
    std::string key;
    if (m.empty()) key = "1";
    for (auto& [v, e] : m) {
      if (!key.empty()) key += "*";
      key += jetvar::name(v);
      if (e > 1) key += "^" + std::to_string(e);
    }
    j[key] = c.str();
  }
  return j;
}

}  // namespace weblin
