#include "weblin/ratfunc.hpp"

#include <stdexcept>

namespace weblin {

RatFunc RatFunc::reduced_cross(const Poly& n, const Poly& d) {
  RatFunc r;
  if (n.is_zero()) return r;
  Poly num = n, den = d;
  if (!den.is_constant() && !num.is_constant()) {
    Poly g = poly_gcd(num, den);
    if (!g.is_constant()) {
      num = *num.divide_exact(g);
      den = *den.divide_exact(g);
    }
  }
  // normalize: monic denominator
  Rat lc = den.leading_coeff();
  if (lc != 1) {
    Rat inv = 1 / lc;
    den = den * inv;
    num = num * inv;
  }
  r.num_ = std::move(num);
  r.den_ = std::move(den);
  return r;
}

RatFunc::RatFunc(Poly num, Poly den) {
  if (den.is_zero()) throw std::domain_error("RatFunc: zero denominator");
  *this = reduced_cross(num, den);
}

RatFunc RatFunc::operator-() const {
  RatFunc r = *this;
  r.num_ = -r.num_;
  return r;
}

RatFunc RatFunc::operator+(const RatFunc& o) const {
  if (is_zero()) return o;
  if (o.is_zero()) return *this;
  if (den_ == o.den_) return reduced_cross(num_ + o.num_, den_);
  Poly g = poly_gcd(den_, o.den_);
  if (g.is_constant()) {
    RatFunc r;
    r.num_ = num_ * o.den_ + o.num_ * den_;
    if (r.num_.is_zero()) return RatFunc();
    r.den_ = den_ * o.den_;
    // coprime denominators: numerator cannot share a factor with den
    Rat lc = r.den_.leading_coeff();
    if (lc != 1) {
      Rat inv = 1 / lc;
      r.den_ = r.den_ * inv;
      r.num_ = r.num_ * inv;
    }
    return r;
  }
  Poly da = *den_.divide_exact(g);
  Poly db = *o.den_.divide_exact(g);
  Poly num = num_ * db + o.num_ * da;
  if (num.is_zero()) return RatFunc();
  // any remaining common factor of num with the lcm divides g
  Poly h = poly_gcd(num, g);
  Poly den = den_ * db;
  if (!h.is_constant()) {
    num = *num.divide_exact(h);
    den = *den.divide_exact(h);
  }
  RatFunc r;
  Rat lc = den.leading_coeff();
  if (lc != 1) {
    Rat inv = 1 / lc;
    den = den * inv;
    num = num * inv;
  }
  r.num_ = std::move(num);
  r.den_ = std::move(den);
  return r;
}

RatFunc RatFunc::operator-(const RatFunc& o) const { return *this + (-o); }

RatFunc RatFunc::operator*(const RatFunc& o) const {
  if (is_zero() || o.is_zero()) return RatFunc();
  // cross-cancel before multiplying
  Poly g1 = poly_gcd(num_, o.den_);
  Poly g2 = poly_gcd(o.num_, den_);
  Poly na = g1.is_constant() ? num_ : *num_.divide_exact(g1);
  Poly db = g1.is_constant() ? o.den_ : *o.den_.divide_exact(g1);
  Poly nb = g2.is_constant() ? o.num_ : *o.num_.divide_exact(g2);
  Poly da = g2.is_constant() ? den_ : *den_.divide_exact(g2);
  RatFunc r;
  r.num_ = na * nb;
  r.den_ = da * db;
  Rat lc = r.den_.leading_coeff();
  if (lc != 1) {
    Rat inv = 1 / lc;
    r.den_ = r.den_ * inv;
    r.num_ = r.num_ * inv;
  }
  return r;
}

RatFunc RatFunc::operator/(const RatFunc& o) const {
  if (o.is_zero()) throw std::domain_error("RatFunc: division by zero");
  RatFunc inv;
  inv.num_ = o.den_;
  inv.den_ = o.num_;
  Rat lc = inv.den_.leading_coeff();
  if (lc != 1) {
    Rat s = 1 / lc;
    inv.den_ = inv.den_ * s;
    inv.num_ = inv.num_ * s;
  }
  return *this * inv;
}

RatFunc RatFunc::pow(int e) const {
  if (e == 0) return RatFunc::constant(Rat(1));
  if (e < 0) return RatFunc::constant(Rat(1)) / pow(-e);
  RatFunc r;
  r.num_ = num_.pow(e);
  r.den_ = den_.pow(e);
  return r;  // already reduced: powers of coprime polys stay coprime
}

RatFunc RatFunc::derivative(int id) const {
  if (den_.is_one()) return RatFunc(num_.derivative(id));
  if (!num_.depends_on(id) && !den_.depends_on(id)) return RatFunc();
  // d(n/d) = n'/d - n d'/d^2
  RatFunc a(num_.derivative(id), den_);
  Poly dden = den_.derivative(id);
  if (dden.is_zero()) return a;
  RatFunc b(num_ * dden, den_ * den_);
  return a - b;
}

RatFunc RatFunc::substitute(int id, const RatFunc& value) const {
  if (!depends_on(id)) return *this;
  // substitute into num and den separately as rationals, then divide
  auto subst_poly = [&](const Poly& p) {
    int maxe = p.degree_in(id);
    std::vector<Poly> bucket(maxe + 1);
    for (auto& [m, c] : p.terms()) {
      int e = m.degree_in(id);
      Monomial rest = Monomial::symbol(id, e).divided_into(m);
      bucket[e] = bucket[e] + Poly::term(rest, c);
    }
    RatFunc r(bucket[maxe]);
    for (int e = maxe - 1; e >= 0; --e)
      r = r * value + RatFunc(bucket[e]);
    return r;
  };
  RatFunc n = subst_poly(num_);
  RatFunc d = subst_poly(den_);
  return n / d;
}

}  // namespace weblin
