#pragma once

// The elimination cascade: Frobenius right-hand sides, the integrability
// equations I and II, equation III, the two quadratic equations, the linear
// system in (s1, s2, s1*s2), the Cramer minors and the obstruction
// polynomials Q1..Q7. Everything is templated on the coefficient ring so the
// same derivation runs fully symbolically (Expr) or per point on truncated
// series (Taylor).

#include <array>

#include "weblin/jet.hpp"
#include "weblin/webgeom.hpp"

namespace weblin {

template <class C>
struct WebScalars {
  C c, gamma1, gamma2, r;
  C f1, f2, f11, f12, f22, f112, f122;
};

WebScalars<Expr> web_scalars(const WebFunction& w);
WebScalars<Taylor> web_scalars_at(const WebFunction& w, const Point& p,
                                  int order);

template <class C>
struct FrobeniusRHS {
  JetPoly<C> t1, t2, z1, z2;
};

template <class C>
struct LinearRow {
  SPoly<C> a, b, c, d;
};

template <class C>
struct CramerMinors {
  SPoly<C> A, B, C_, D;
};

/// All intermediate products of the cascade for one web.
template <class C>
struct Cascade {
  WebScalars<C> ws;
  FrobeniusRHS<C> frob;
  JetPoly<C> I, II, III;
  JetPoly<C> E1, E2;
  // solved jets: s11 and s22 from I and II (still containing s12),
  // s12 from III, third-order jets from the prolongations
  JetPoly<C> s11_sol, s22_sol, s12_sol;
  JetPoly<C> s111_sol, s112_sol, s122_sol, s222_sol;
  std::array<LinearRow<C>, 4> rows;
  CramerMinors<C> minors;
  std::vector<SPoly<C>> Q;  // Q1..Q7
};

namespace cascade_detail {

constexpr double kStripTol = 1e-7;

template <class C>
JetPoly<C> D(const JetPoly<C>& p, int var, const FrobeniusRHS<C>& f) {
  const JetPoly<C>* dt = var == Symbols::kX1 ? &f.t1 : &f.t2;
  const JetPoly<C>* dz = var == Symbols::kX1 ? &f.z1 : &f.z2;
  return p.total_derivative(var, dt, dz);
}

template <class C>
JetPoly<C> D(const JetPoly<C>& p, int var) {
  return p.total_derivative(var);
}

/// Removes every term whose monomial satisfies pred, verifying that the
/// removed coefficients are negligible against the polynomial's scale.
template <class C, class Pred>
JetPoly<C> strip_verified(const JetPoly<C>& p, Pred pred, const char* what) {
  double scale = std::max(p.scale(), 1.0);
  JetPoly<C> out;
  for (auto& [m, c] : p.terms()) {
    bool hit = false;
    for (auto& [v, e] : m)
      if (pred(v)) hit = true;
    if (hit) {
      if (CoeffOps<C>::mag(c) > kStripTol * scale)
        throw Error(ErrorKind::EliminationFailure,
                    std::string("elimination did not close: ") + what);
      continue;
    }
    out.add_term(m, c);
  }
  return out;
}

/// p must be linear in jet variable id with a jet-free coefficient; returns
/// the solved value of that variable (p == 0 solved for id).
template <class C>
JetPoly<C> solve_linear(const JetPoly<C>& p, int id) {
  typename JetPoly<C>::Mon key{{id, 1}};
  C k = p.coeff_of(key);
  if (CoeffOps<C>::is_zero(k))
    throw Error(ErrorKind::EliminationFailure,
                "cannot solve for " + jetvar::name(id) + ": coefficient vanishes");
  double scale = std::max(p.scale(), 1.0);
  JetPoly<C> rest;
  for (auto& [m, c] : p.terms()) {
    if (m == key) continue;
    bool contains = false;
    for (auto& [v, e] : m)
      if (v == id) contains = true;
    if (contains) {
      if (CoeffOps<C>::mag(c) > kStripTol * scale)
        throw Error(ErrorKind::EliminationFailure,
                    jetvar::name(id) + " does not occur linearly");
      continue;
    }
    rest.add_term(m, c);
  }
  return (-rest).scaled(CoeffOps<C>::one() / k);
}

/// Coefficient of s1^e1 * s2^e2 in p, as a polynomial in s. Every other jet
/// variable must already be eliminated from p.
template <class C>
SPoly<C> spoly_at(const JetPoly<C>& p, int e1, int e2) {
  JetPoly<C> picked;
  for (auto& [m, c] : p.terms()) {
    int a = 0, b = 0;
    typename JetPoly<C>::Mon srest;
    for (auto& [v, e] : m) {
      if (v == jetvar::kS1)
        a = e;
      else if (v == jetvar::kS2)
        b = e;
      else if (v == jetvar::kS)
        srest.push_back({v, e});
      else
        throw Error(ErrorKind::EliminationFailure,
                    "unexpected jet variable " + jetvar::name(v));
    }
    if (a == e1 && b == e2) picked.add_term(srest, c);
  }
  return SPoly<C>::from_jet(picked);
}

/// Rewrites powers of s1 and s2 using the two quadratic relations until only
/// the monomials {1, s1, s2, s1*s2} remain. rep1 and rep2 are the solved
/// right-hand sides for s1^2 and s2^2.
template <class C>
class PowerReducer {
 public:
  PowerReducer(const JetPoly<C>& rep1, const JetPoly<C>& rep2) {
    k1_ = rep1.coeff_of({{jetvar::kS1, 1}, {jetvar::kS2, 1}});
    k2_ = rep2.coeff_of({{jetvar::kS1, 1}, {jetvar::kS2, 1}});
    lin1_ = drop_mixed(rep1);
    lin2_ = drop_mixed(rep2);
  }

  JetPoly<C> reduce(const JetPoly<C>& p) {
    JetPoly<C> out;
    for (auto& [m, c] : p.terms()) {
      int a = 0, b = 0;
      typename JetPoly<C>::Mon srest;
      for (auto& [v, e] : m) {
        if (v == jetvar::kS1)
          a = e;
        else if (v == jetvar::kS2)
          b = e;
        else if (v == jetvar::kS)
          srest.push_back({v, e});
        else
          throw Error(ErrorKind::EliminationFailure,
                      "unreduced jet variable " + jetvar::name(v));
      }
      JetPoly<C> piece = nf(a, b);
      JetPoly<C> spart;
      spart.add_term(srest, c);
      out = out + piece * spart;
    }
    return out;
  }

 private:
  JetPoly<C> drop_mixed(const JetPoly<C>& rep) {
    // rep = k * s1*s2 + remainder with remainder of degree <= 1 in (s1, s2)
    JetPoly<C> lin;
    double scale = std::max(rep.scale(), 1.0);
    for (auto& [m, c] : rep.terms()) {
      int a = 0, b = 0;
      for (auto& [v, e] : m) {
        if (v == jetvar::kS1) a = e;
        if (v == jetvar::kS2) b = e;
      }
      if (a == 1 && b == 1 && m.size() == 2) continue;  // the extracted pivot
      if (a + b > 1) {
        if (CoeffOps<C>::mag(c) > cascade_detail::kStripTol * scale)
          throw Error(ErrorKind::EliminationFailure,
                      "quadratic relation is not in solved form");
        continue;
      }
      lin.add_term(m, c);
    }
    return lin;
  }

  static JetPoly<C> mon(int a, int b) {
    typename JetPoly<C>::Mon m;
    if (a > 0) m.push_back({jetvar::kS1, a});
    if (b > 0) m.push_back({jetvar::kS2, b});
    JetPoly<C> p;
    p.add_term(m, CoeffOps<C>::one());
    return p;
  }

  JetPoly<C> nf(int a, int b) {
    if (a <= 1 && b <= 1) return mon(a, b);
    auto hit = memo_.find({a, b});
    if (hit != memo_.end()) return hit->second;
    int d = a + b;
    JetPoly<C> res;
    if (d == 2) {
      res = a == 2 ? lin1_ + mon(1, 1).scaled(k1_) : lin2_ + mon(1, 1).scaled(k2_);
    } else {
      solve_degree(d);
      return memo_.at({a, b});
    }
    memo_.emplace(std::make_pair(a, b), res);
    return res;
  }

  void solve_degree(int d) {
    // v_k := normal form of s1^(d-k) s2^k; rule 1 gives the chain
    // v_k = k1 v_{k+1} + L_k for k <= d-2, rule 2 closes it at v_{d-1}.
    std::vector<JetPoly<C>> L(d - 1);
    for (int k = 0; k <= d - 2; ++k) L[k] = reduce(lin1_ * mon(d - k - 2, k));
    JetPoly<C> M = reduce(lin2_ * mon(1, d - 3));
    C det = CoeffOps<C>::one() - k1_ * k2_;
    JetPoly<C> v = (L[d - 2].scaled(k2_) + M).scaled(CoeffOps<C>::one() / det);
    memo_[{1, d - 1}] = v;
    for (int k = d - 2; k >= 0; --k) {
      v = v.scaled(k1_) + L[k];
      memo_[{d - k, k}] = v;
    }
    JetPoly<C> N = reduce(lin2_ * mon(0, d - 2));
    memo_[{0, d}] = memo_.at({1, d - 1}).scaled(k2_) + N;
  }

  C k1_, k2_;
  JetPoly<C> lin1_, lin2_;
  std::map<std::pair<int, int>, JetPoly<C>> memo_;
};

template <class C>
SPoly<C> det3(const std::array<std::array<SPoly<C>, 3>, 3>& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

}  // namespace cascade_detail

template <class C>
FrobeniusRHS<C> frobenius_rhs(const WebScalars<C>& w) {
  using J = JetPoly<C>;
  const C one = CoeffOps<C>::one();
  const C third = CoeffOps<C>::from_rat(Rat(1, 3));
  J s = J::var(jetvar::kS), s1 = J::var(jetvar::kS1), s2 = J::var(jetvar::kS2);
  J t = J::var(jetvar::kT), z = J::var(jetvar::kZ);

  C den = w.f2 * w.f1;
  C den3 = (w.f2 * w.f2 * w.f1 * w.f1);
  C inv3 = third / den3;

  FrobeniusRHS<C> f;
  f.t1 = t * s + t.scaled((w.f11 * w.f2 - w.f1 * w.f12) / den) + t * t;

  C curv_num_t = w.f11 * w.f2 * w.f2 * w.f12 - w.f1 * w.f1 * w.f12 * w.f22 +
                 w.f1 * w.f1 * w.f122 * w.f2 - w.f1 * w.f112 * w.f2 * w.f2;
  f.t2 = t * z + s1.scaled(w.f2 * w.f2 * w.f2 * w.f1 * inv3) +
         s.scaled((w.f12 * w.f2 * w.f2 * w.f1 - w.f2 * w.f2 * w.f2 * w.f11) * inv3) -
         s2.scaled((w.f2 * w.f2 * w.f1 * w.f1 + w.f2 * w.f2 * w.f1 * w.f1) * inv3) +
         J::coeff(curv_num_t * inv3);

  C curv_num_z = w.f1 * w.f112 * w.f2 * w.f2 - w.f11 * w.f2 * w.f2 * w.f12 +
                 w.f1 * w.f1 * w.f12 * w.f22 - w.f1 * w.f1 * w.f122 * w.f2;
  f.z1 = t * z - s2.scaled(w.f2 * w.f2 * w.f1 * w.f1 * inv3) +
         s1.scaled((w.f2 * w.f2 * w.f2 * w.f1 + w.f2 * w.f2 * w.f2 * w.f1) * inv3) +
         s.scaled((w.f12 * w.f2 * w.f2 * w.f1 - w.f2 * w.f2 * w.f2 * w.f11) * inv3 +
                  (w.f12 * w.f2 * w.f2 * w.f1 - w.f2 * w.f2 * w.f2 * w.f11) * inv3) +
         J::coeff(curv_num_z * inv3);

  f.z2 = z * z - z.scaled((w.f12 * w.f2 - w.f1 * w.f22) / den) -
         (z * s).scaled(w.f2 * w.f2 / den);
  return f;
}

template <class C>
void derive_integrability(Cascade<C>& k) {
  using namespace cascade_detail;
  const auto& f = k.frob;
  JetPoly<C> tdiff = D(f.t1, Symbols::kX2, f) - D(f.t2, Symbols::kX1, f);
  JetPoly<C> zdiff = D(f.z1, Symbols::kX2, f) - D(f.z2, Symbols::kX1, f);
  auto tz = [](int v) { return v == jetvar::kT || v == jetvar::kZ; };
  JetPoly<C> iraw = strip_verified(tdiff, tz, "t survives t12 - t21");
  JetPoly<C> iiraw = strip_verified(zdiff, tz, "z survives z12 - z21");
  C ci = iraw.coeff_of({{jetvar::kS11, 1}});
  C cii = iiraw.coeff_of({{jetvar::kS22, 1}});
  if (CoeffOps<C>::is_zero(ci) || CoeffOps<C>::is_zero(cii))
    throw Error(ErrorKind::EliminationFailure, "leading jet coefficient vanishes");
  k.I = iraw.scaled(CoeffOps<C>::one() / ci);
  k.II = iiraw.scaled(CoeffOps<C>::one() / cii);
  k.s11_sol = solve_linear(k.I, jetvar::kS11);
  k.s22_sol = solve_linear(k.II, jetvar::kS22);
}

template <class C>
void derive_third_order(Cascade<C>& k) {
  using namespace cascade_detail;
  auto reduce2 = [&](JetPoly<C> p) {
    return p.substitute(jetvar::kS11, k.s11_sol).substitute(jetvar::kS22, k.s22_sol);
  };
  JetPoly<C> Pa = reduce2(D(k.I, Symbols::kX1));
  JetPoly<C> Pb = reduce2(D(k.I, Symbols::kX2));
  JetPoly<C> Pc = reduce2(D(k.II, Symbols::kX1));
  JetPoly<C> Pd = reduce2(D(k.II, Symbols::kX2));

  // the (s112, s122) block of Pb and Pc has determinant -3; solve it, then
  // back-substitute into Pa for s111 and Pd for s222
  C b1 = Pb.coeff_of({{jetvar::pack(2, 1), 1}});
  C b2 = Pb.coeff_of({{jetvar::pack(1, 2), 1}});
  C c1 = Pc.coeff_of({{jetvar::pack(2, 1), 1}});
  C c2 = Pc.coeff_of({{jetvar::pack(1, 2), 1}});
  auto rest_of = [](const JetPoly<C>& p) {
    JetPoly<C> rest;
    double scale = std::max(p.scale(), 1.0);
    for (auto& [m, c] : p.terms()) {
      bool third = false;
      for (auto& [v, e] : m)
        if (jetvar::is_s(v) && jetvar::s_order(v) >= 3) third = true;
      if (third) {
        if (m.size() != 1 || m[0].second != 1) {
          if (CoeffOps<C>::mag(c) > kStripTol * scale)
            throw Error(ErrorKind::EliminationFailure,
                        "third-order jet occurs nonlinearly");
        }
        continue;
      }
      rest.add_term(m, c);
    }
    return rest;
  };
  JetPoly<C> lb = rest_of(Pb), lc = rest_of(Pc);
  C det = b1 * c2 - b2 * c1;
  if (CoeffOps<C>::is_zero(det))
    throw Error(ErrorKind::EliminationFailure, "third-order block is singular");
  C inv = CoeffOps<C>::one() / det;
  k.s112_sol = (lc.scaled(b2) - lb.scaled(c2)).scaled(inv);
  k.s122_sol = (lb.scaled(c1) - lc.scaled(b1)).scaled(inv);

  C a1 = Pa.coeff_of({{jetvar::pack(3, 0), 1}});
  C a2 = Pa.coeff_of({{jetvar::pack(2, 1), 1}});
  JetPoly<C> la = rest_of(Pa);
  k.s111_sol = (-(la + k.s112_sol.scaled(a2))).scaled(CoeffOps<C>::one() / a1);

  C d1 = Pd.coeff_of({{jetvar::pack(0, 3), 1}});
  C d2 = Pd.coeff_of({{jetvar::pack(1, 2), 1}});
  JetPoly<C> ld = rest_of(Pd);
  k.s222_sol = (-(ld + k.s122_sol.scaled(d2))).scaled(CoeffOps<C>::one() / d1);
}

template <class C>
void derive_equation_III(Cascade<C>& k) {
  using namespace cascade_detail;
  auto D1 = [](const JetPoly<C>& p) { return D(p, Symbols::kX1); };
  auto D2 = [](const JetPoly<C>& p) { return D(p, Symbols::kX2); };
  C two = CoeffOps<C>::from_rat(Rat(2));
  JetPoly<C> comb = (D1(D1(k.II)) - D2(D2(k.I))).scaled(k.ws.c) +
                    D2(D1(k.I)).scaled(two) -
                    D2(D1(k.II)).scaled(two * k.ws.c * k.ws.c);
  comb = strip_verified(
      comb, [](int v) { return jetvar::is_s(v) && jetvar::s_order(v) == 4; },
      "fourth-order jets survive the III combination");
  comb = comb.substitute(jetvar::pack(3, 0), k.s111_sol)
             .substitute(jetvar::pack(2, 1), k.s112_sol)
             .substitute(jetvar::pack(1, 2), k.s122_sol)
             .substitute(jetvar::pack(0, 3), k.s222_sol);
  comb = comb.substitute(jetvar::kS11, k.s11_sol)
             .substitute(jetvar::kS22, k.s22_sol);
  k.III = comb;
}

template <class C>
void derive_quadratic(Cascade<C>& k) {
  using namespace cascade_detail;
  if (CoeffOps<C>::is_zero(k.ws.r))
    throw Error(ErrorKind::ParallelizableBranch,
                "curvature vanishes: the quadratic equations do not exist");
  k.s12_sol = solve_linear(k.III, jetvar::kS12);
  C rho = CoeffOps<C>::from_rat(Rat(24)) * k.ws.c * k.ws.r;
  C two = CoeffOps<C>::from_rat(Rat(2));
  JetPoly<C> e1 = D(k.I, Symbols::kX2).scaled(rho) - D(k.III, Symbols::kX1) +
                  D(k.III, Symbols::kX2).scaled(two * k.ws.c);
  JetPoly<C> e2 = D(k.II, Symbols::kX1).scaled(rho) - D(k.III, Symbols::kX2) +
                  D(k.III, Symbols::kX1).scaled(two / k.ws.c);
  auto finish = [&](JetPoly<C> p) {
    p = p.substitute(jetvar::pack(3, 0), k.s111_sol)
            .substitute(jetvar::pack(2, 1), k.s112_sol)
            .substitute(jetvar::pack(1, 2), k.s122_sol)
            .substitute(jetvar::pack(0, 3), k.s222_sol);
    p = p.substitute(jetvar::kS11, k.s11_sol).substitute(jetvar::kS22, k.s22_sol);
    p = p.substitute(jetvar::kS12, k.s12_sol);
    return p;
  };
  k.E1 = finish(e1);
  k.E2 = finish(e2);
}

template <class C>
void derive_linear_system(Cascade<C>& k) {
  using namespace cascade_detail;
  auto second_order_free = [&](JetPoly<C> p) {
    p = p.substitute(jetvar::kS11, k.s11_sol).substitute(jetvar::kS22, k.s22_sol);
    return p.substitute(jetvar::kS12, k.s12_sol);
  };
  std::array<JetPoly<C>, 4> raw = {
      second_order_free(D(k.E1, Symbols::kX1)),
      second_order_free(D(k.E1, Symbols::kX2)),
      second_order_free(D(k.E2, Symbols::kX1)),
      second_order_free(D(k.E2, Symbols::kX2))};

  C q1 = k.E1.coeff_of({{jetvar::kS1, 2}});
  C q2 = k.E2.coeff_of({{jetvar::kS2, 2}});
  if (CoeffOps<C>::is_zero(q1) || CoeffOps<C>::is_zero(q2))
    throw Error(ErrorKind::EliminationFailure, "quadratic pivot vanishes");
  auto solved_square = [](const JetPoly<C>& e, int var, const C& pivot) {
    JetPoly<C> rest;
    for (auto& [m, c] : e.terms()) {
      bool sq = false;
      for (auto& [v, x] : m)
        if (v == var && x == 2) sq = m.size() == 1;
      if (sq) continue;
      rest.add_term(m, c);
    }
    return (-rest).scaled(CoeffOps<C>::one() / pivot);
  };
  PowerReducer<C> red(solved_square(k.E1, jetvar::kS1, q1),
                      solved_square(k.E2, jetvar::kS2, q2));

  for (int i = 0; i < 4; ++i) {
    JetPoly<C> row = red.reduce(raw[i]);
    k.rows[i].a = spoly_at(row, 1, 0);
    k.rows[i].b = spoly_at(row, 0, 1);
    k.rows[i].c = spoly_at(row, 1, 1);
    k.rows[i].d = -spoly_at(row, 0, 0);
  }
}

template <class C>
CramerMinors<C> cramer_polynomials(const std::array<LinearRow<C>, 4>& rows) {
  using namespace cascade_detail;
  std::array<std::array<SPoly<C>, 3>, 3> m;
  CramerMinors<C> out;
  auto fill = [&](int dcol) {
    for (int i = 0; i < 3; ++i) {
      m[i][0] = dcol == 0 ? rows[i].d : rows[i].a;
      m[i][1] = dcol == 1 ? rows[i].d : rows[i].b;
      m[i][2] = dcol == 2 ? rows[i].d : rows[i].c;
    }
    return det3(m);
  };
  out.D = fill(-1).trimmed(1e-9);
  out.A = fill(0).trimmed(1e-9);
  out.B = fill(1).trimmed(1e-9);
  out.C_ = fill(2).trimmed(1e-9);
  if (out.D.is_zero())
    throw Error(ErrorKind::DegenerateMinor, "the Cramer determinant vanishes");
  // The minors of the coefficient matrix (a, b, c columns) stay within
  // degree 7; the augmented determinants pick up the free column d, whose
  // entries reach degree 5, so A, B top out at 9 and C at 11. These bounds
  // make deg(AB - CD) <= 18.
  if (out.D.degree() > 7 || out.A.degree() > 9 || out.B.degree() > 9 ||
      out.C_.degree() > 11)
    throw Error(ErrorKind::EliminationFailure,
                "Cramer minor exceeds its degree bound");
  return out;
}

/// Determinant of the coefficient columns (a, b, c) of three of the four
/// rows; skip selects the omitted row. All four such minors have degree <= 7.
template <class C>
SPoly<C> coefficient_minor(const std::array<LinearRow<C>, 4>& rows, int skip) {
  std::array<std::array<SPoly<C>, 3>, 3> m;
  int k = 0;
  for (int i = 0; i < 4; ++i) {
    if (i == skip) continue;
    m[k][0] = rows[i].a;
    m[k][1] = rows[i].b;
    m[k][2] = rows[i].c;
    ++k;
  }
  return cascade_detail::det3(m).trimmed(1e-9);
}

/// Content/denominator normalization hook; specialized per coefficient ring
/// in linsys.cpp (symbolic) and candidates.cpp (numeric).
SPoly<Expr> normalize_content(const SPoly<Expr>& q);
SPoly<Taylor> normalize_content(const SPoly<Taylor>& q);

template <class C>
void derive_q_polynomials(Cascade<C>& k) {
  const auto& mn = k.minors;
  SPoly<C> As = mn.A.derivative_s(), Bs = mn.B.derivative_s(),
           Ds = mn.D.derivative_s();
  SPoly<C> Ax1 = mn.A.derivative_x(Symbols::kX1), Ax2 = mn.A.derivative_x(Symbols::kX2);
  SPoly<C> Bx1 = mn.B.derivative_x(Symbols::kX1), Bx2 = mn.B.derivative_x(Symbols::kX2);
  SPoly<C> Dx1 = mn.D.derivative_x(Symbols::kX1), Dx2 = mn.D.derivative_x(Symbols::kX2);

  std::vector<SPoly<C>> q;
  q.push_back((mn.A * mn.B - mn.C_ * mn.D).trimmed(1e-9));
  if (q[0].degree() > 18)
    throw Error(ErrorKind::EliminationFailure, "Q1 exceeds the degree-18 bound");
  q.push_back(mn.D * (Bx1 - Ax2) + mn.A * Bs - mn.B * As - mn.B * Dx1 +
              mn.A * Dx2);

  // second derivatives of s as fractions H/D^3
  SPoly<C> H11 = mn.D * mn.D * Ax1 + mn.D * mn.A * As - mn.D * mn.A * Dx1 -
                 mn.A * mn.A * Ds;
  SPoly<C> H12 = mn.D * mn.D * Ax2 + mn.D * mn.B * As - mn.D * mn.A * Dx2 -
                 mn.A * mn.B * Ds;
  SPoly<C> H22 = mn.D * mn.D * Bx2 + mn.D * mn.B * Bs - mn.D * mn.B * Dx2 -
                 mn.B * mn.B * Ds;

  // substitute s1 -> A/D, s2 -> B/D, sij -> Hij/D^3 into an equation and
  // clear the D powers
  auto cleared = [&](const JetPoly<C>& eq) {
    auto val = [&](int v) -> std::pair<const SPoly<C>*, int> {
      if (v == jetvar::kS1) return {&mn.A, 1};
      if (v == jetvar::kS2) return {&mn.B, 1};
      if (v == jetvar::kS11) return {&H11, 3};
      if (v == jetvar::kS12) return {&H12, 3};
      if (v == jetvar::kS22) return {&H22, 3};
      throw Error(ErrorKind::EliminationFailure,
                  "unexpected jet variable " + jetvar::name(v) + " in a Q source");
    };
    int K = 0;
    for (auto& [m, c] : eq.terms()) {
      int pw = 0;
      for (auto& [v, e] : m)
        if (v != jetvar::kS) pw += e * val(v).second;
      K = std::max(K, pw);
    }
    SPoly<C> acc;
    SPoly<C> svar(std::vector<C>{CoeffOps<C>::zero(), CoeffOps<C>::one()});
    for (auto& [m, c] : eq.terms()) {
      SPoly<C> term = SPoly<C>::constant(c);
      int pw = 0;
      for (auto& [v, e] : m) {
        if (v == jetvar::kS) {
          for (int i = 0; i < e; ++i) term = term * svar;
        } else {
          auto [num, dp] = val(v);
          for (int i = 0; i < e; ++i) term = term * *num;
          pw += e * dp;
        }
      }
      for (int i = pw; i < K; ++i) term = term * mn.D;
      acc = acc + term;
    }
    return acc;
  };
  q.push_back(cleared(k.I));
  q.push_back(cleared(k.II));
  q.push_back(cleared(k.III));
  q.push_back(cleared(k.E1));
  q.push_back(cleared(k.E2));

  k.Q.clear();
  for (auto& poly : q) k.Q.push_back(normalize_content(poly));
}

template <class C>
Cascade<C> run_cascade(WebScalars<C> ws) {
  Cascade<C> k;
  k.ws = std::move(ws);
  k.frob = frobenius_rhs(k.ws);
  derive_integrability(k);
  derive_third_order(k);
  derive_equation_III(k);
  derive_quadratic(k);
  derive_linear_system(k);
  k.minors = cramer_polynomials(k.rows);
  derive_q_polynomials(k);
  return k;
}

}  // namespace weblin
