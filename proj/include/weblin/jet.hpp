#pragma once

#include <map>
#include <vector>

#include "weblin/expr.hpp"
#include "weblin/taylor.hpp"

namespace weblin {

/// Jet variable ids. The jets of the base s are indexed by the pair of
/// partial-derivative multiplicities (n1, n2) up to total order 4 (order 4
/// appears only transiently inside the elimination); t and z get fixed ids.
namespace jetvar {
constexpr int pack(int n1, int n2) { return (n1 + n2) * (n1 + n2 + 1) / 2 + n2; }
constexpr int kS = pack(0, 0);
constexpr int kS1 = pack(1, 0), kS2 = pack(0, 1);
constexpr int kS11 = pack(2, 0), kS12 = pack(1, 1), kS22 = pack(0, 2);
constexpr int kMaxS = pack(0, 4);
constexpr int kT = 64, kZ = 65;

inline bool is_s(int id) { return id <= kMaxS; }
inline int s_order(int id) {
  int d = 0;
  while ((d + 1) * (d + 2) / 2 <= id) ++d;
  return d;
}
inline int bump(int id, int var) {
  int d = s_order(id);
  int n2 = id - d * (d + 1) / 2;
  int n1 = d - n2;
  if (d >= 4) throw Error(ErrorKind::EliminationFailure, "jet order overflow");
  return var == Symbols::kX1 ? pack(n1 + 1, n2) : pack(n1, n2 + 1);
}
std::string name(int id);
}  // namespace jetvar

/// Coefficient-ring hooks shared by the symbolic and the per-point truncated
/// series pipelines.
template <class C>
struct CoeffOps;

template <>
struct CoeffOps<Expr> {
  static Expr zero() { return Expr(); }
  static Expr one() { return Expr::integer(1); }
  static Expr from_rat(const Rat& q) { return Expr::constant(q); }
  static bool is_zero(const Expr& c) { return c.is_zero(); }
  /// Magnitude proxy used when verifying that terms cancel: symbolic
  /// coefficients are either exactly zero or count as order one.
  static double mag(const Expr& c) { return c.is_zero() ? 0.0 : 1.0; }
  static Expr derivative(const Expr& c, int var) { return c.derivative(var); }
};

template <>
struct CoeffOps<Taylor> {
  static Taylor zero() { return Taylor(); }
  static Taylor one() { return Taylor::constant(1.0); }
  static Taylor from_rat(const Rat& q) { return Taylor::constant(q.get_d()); }
  static bool is_zero(const Taylor& c) {
    for (int d = 0; d <= c.order(); ++d)
      for (int j = 0; j <= d; ++j)
        if (c.coeff(d - j, j) != 0.0) return false;
    return true;
  }
  static double mag(const Taylor& c) {
    // only the value and first-order coefficients are compared: higher ones
    // accumulate truncation garbage once derivatives run out of order
    double m = std::abs(c.value());
    if (c.order() >= 1) {
      m = std::max(m, std::abs(c.coeff(1, 0)));
      m = std::max(m, std::abs(c.coeff(0, 1)));
    }
    return m;
  }
  static Taylor derivative(const Taylor& c, int var) { return c.derivative(var); }
};

/// Sparse polynomial in the jet variables with coefficients in C. Monomial
/// keys are sorted (id, exponent) vectors, so iteration order and all derived
/// outputs are deterministic.
template <class C>
class JetPoly {
 public:
  using Mon = std::vector<std::pair<int, int>>;
  using Ops = CoeffOps<C>;

  JetPoly() = default;
  static JetPoly coeff(C c) {
    JetPoly p;
    if (!Ops::is_zero(c)) p.terms_[Mon{}] = std::move(c);
    return p;
  }
  static JetPoly var(int id) {
    JetPoly p;
    p.terms_[Mon{{id, 1}}] = Ops::one();
    return p;
  }

  const std::map<Mon, C>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  C coeff_of(const Mon& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Ops::zero() : it->second;
  }

  bool has_var(int id) const {
    for (auto& [m, c] : terms_)
      for (auto& [v, e] : m)
        if (v == id) return true;
    return false;
  }

  int degree_in(int id) const {
    int d = 0;
    for (auto& [m, c] : terms_)
      for (auto& [v, e] : m)
        if (v == id) d = std::max(d, e);
    return d;
  }

  JetPoly operator-() const {
    JetPoly p;
    for (auto& [m, c] : terms_) p.terms_[m] = Ops::zero() - c;
    return p;
  }
  JetPoly operator+(const JetPoly& o) const {
    JetPoly p = *this;
    for (auto& [m, c] : o.terms_) p.add_term(m, c);
    return p;
  }
  JetPoly operator-(const JetPoly& o) const { return *this + (-o); }
  JetPoly operator*(const JetPoly& o) const {
    JetPoly p;
    for (auto& [m1, c1] : terms_)
      for (auto& [m2, c2] : o.terms_) p.add_term(mul_mon(m1, m2), c1 * c2);
    return p;
  }
  JetPoly scaled(const C& c) const {
    JetPoly p;
    if (Ops::is_zero(c)) return p;
    for (auto& [m, v] : terms_) p.add_term(m, v * c);
    return p;
  }

  /// Replaces one jet variable by a polynomial value (simultaneously across
  /// all terms; the value must not contain the variable itself).
  JetPoly substitute(int id, const JetPoly& value) const {
    JetPoly out;
    for (auto& [m, c] : terms_) {
      JetPoly term = JetPoly::coeff(c);
      for (auto& [v, e] : m) {
        JetPoly factor = v == id ? value : JetPoly::var(v);
        for (int k = 0; k < e; ++k) term = term * factor;
      }
      out = out + term;
    }
    return out;
  }

  /// Total derivative with respect to x_var. Derivatives of s-jets shift the
  /// jet index; derivatives of t and z are replaced by the supplied
  /// right-hand sides (null means t/z must not occur).
  JetPoly total_derivative(int var, const JetPoly* dt = nullptr,
                           const JetPoly* dz = nullptr) const {
    JetPoly out;
    for (auto& [m, c] : terms_) {
      out.add_term(m, Ops::derivative(c, var));
      for (std::size_t i = 0; i < m.size(); ++i) {
        auto [v, e] = m[i];
        JetPoly dvar;
        if (jetvar::is_s(v)) {
          dvar = JetPoly::var(jetvar::bump(v, var));
        } else {
          const JetPoly* rhs = v == jetvar::kT ? dt : dz;
          if (!rhs)
            throw Error(ErrorKind::EliminationFailure,
                        "derivative of t or z without a Frobenius context");
          dvar = *rhs;
        }
        Mon rest;
        for (std::size_t j = 0; j < m.size(); ++j) {
          int ee = m[j].second - (i == j ? 1 : 0);
          if (ee > 0) rest.push_back({m[j].first, ee});
        }
        JetPoly piece = dvar.scaled(c * Ops::from_rat(Rat(e)));
        for (auto& [mm, cc] : piece.terms_) out.add_term(mul_mon(mm, rest), cc);
      }
    }
    return out;
  }

  /// Largest coefficient magnitude, for relative cancellation checks.
  double scale() const {
    double s = 0.0;
    for (auto& [m, c] : terms_) s = std::max(s, Ops::mag(c));
    return s;
  }

  void add_term(const Mon& m, const C& c) {
    if (Ops::is_zero(c)) return;
    auto [it, fresh] = terms_.try_emplace(m, c);
    if (!fresh) {
      it->second = it->second + c;
      if (Ops::is_zero(it->second)) terms_.erase(it);
    }
  }

 private:
  static Mon mul_mon(const Mon& a, const Mon& b) {
    Mon r;
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
      if (j == b.size() || (i < a.size() && a[i].first < b[j].first))
        r.push_back(a[i++]);
      else if (i == a.size() || b[j].first < a[i].first)
        r.push_back(b[j++]);
      else {
        r.push_back({a[i].first, a[i].second + b[j].second});
        ++i, ++j;
      }
    }
    return r;
  }

  std::map<Mon, C> terms_;
};

/// Univariate polynomial in the base variable s with coefficients in C.
template <class C>
class SPoly {
 public:
  using Ops = CoeffOps<C>;

  SPoly() = default;
  explicit SPoly(std::vector<C> coeffs) : c_(std::move(coeffs)) { trim(); }
  static SPoly constant(C c) { return SPoly(std::vector<C>{std::move(c)}); }

  /// Converts a JetPoly that involves no jet variable other than s itself.
  static SPoly from_jet(const JetPoly<C>& p) {
    SPoly out;
    for (auto& [m, c] : p.terms()) {
      int deg = 0;
      for (auto& [v, e] : m) {
        if (v != jetvar::kS)
          throw Error(ErrorKind::EliminationFailure,
                      "jet variable " + jetvar::name(v) + " survives in an s-polynomial");
        deg = e;
      }
      if ((int)out.c_.size() <= deg) out.c_.resize(deg + 1, Ops::zero());
      out.c_[deg] = out.c_[deg] + c;
    }
    out.trim();
    return out;
  }

  int degree() const { return (int)c_.size() - 1; }  // -1 for the zero poly
  bool is_zero() const { return c_.empty(); }
  const std::vector<C>& coeffs() const { return c_; }
  C coeff(int k) const { return k < (int)c_.size() ? c_[k] : Ops::zero(); }

  SPoly operator+(const SPoly& o) const {
    std::vector<C> r(std::max(c_.size(), o.c_.size()), Ops::zero());
    for (std::size_t i = 0; i < c_.size(); ++i) r[i] = r[i] + c_[i];
    for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] = r[i] + o.c_[i];
    return SPoly(std::move(r));
  }
  SPoly operator-() const {
    std::vector<C> r = c_;
    for (C& v : r) v = Ops::zero() - v;
    return SPoly(std::move(r));
  }
  SPoly operator-(const SPoly& o) const { return *this + (-o); }
  SPoly operator*(const SPoly& o) const {
    if (is_zero() || o.is_zero()) return SPoly();
    std::vector<C> r(c_.size() + o.c_.size() - 1, Ops::zero());
    for (std::size_t i = 0; i < c_.size(); ++i)
      for (std::size_t j = 0; j < o.c_.size(); ++j)
        r[i + j] = r[i + j] + c_[i] * o.c_[j];
    return SPoly(std::move(r));
  }

  /// Partial derivative of the coefficients with respect to x_var.
  SPoly derivative_x(int var) const {
    std::vector<C> r;
    r.reserve(c_.size());
    for (const C& v : c_) r.push_back(Ops::derivative(v, var));
    return SPoly(std::move(r));
  }
  /// Formal derivative with respect to s.
  SPoly derivative_s() const {
    std::vector<C> r;
    for (std::size_t i = 1; i < c_.size(); ++i)
      r.push_back(c_[i] * Ops::from_rat(Rat((long)i)));
    return SPoly(std::move(r));
  }

  /// Drops trailing coefficients that are negligible against the largest
  /// coefficient. A no-op for exact coefficient rings.
  SPoly trimmed(double rel_tol) const {
    double s = 0.0;
    for (const C& v : c_) s = std::max(s, Ops::mag(v));
    std::vector<C> r = c_;
    while (!r.empty() && Ops::mag(r.back()) <= rel_tol * s) r.pop_back();
    return SPoly(std::move(r));
  }

  JetPoly<C> to_jet() const {
    JetPoly<C> out;
    JetPoly<C> s = JetPoly<C>::var(jetvar::kS);
    JetPoly<C> p = JetPoly<C>::coeff(Ops::one());
    for (std::size_t i = 0; i < c_.size(); ++i) {
      out = out + p.scaled(c_[i]);
      p = p * s;
    }
    return out;
  }

 private:
  void trim() {
    while (!c_.empty() && Ops::is_zero(c_.back())) c_.pop_back();
  }
  std::vector<C> c_;
};

}  // namespace weblin
