#pragma once

#include "weblin/poly.hpp"

namespace weblin {

/// Reduced rational function num/den. Invariants: den is monic and shares no
/// common factor with num (up to the gcd heuristic); num == 0 implies den == 1.
class RatFunc {
 public:
  RatFunc() : den_(Poly::constant(Rat(1))) {}
  explicit RatFunc(Poly num)
      : num_(std::move(num)), den_(Poly::constant(Rat(1))) {}
  RatFunc(Poly num, Poly den);  // reduces
  static RatFunc constant(Rat c) { return RatFunc(Poly::constant(std::move(c))); }
  static RatFunc symbol(int id) { return RatFunc(Poly::symbol(id)); }

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const { return num_.is_constant() && den_.is_one(); }
  bool is_polynomial() const { return den_.is_one(); }

  RatFunc operator-() const;
  RatFunc operator+(const RatFunc& o) const;
  RatFunc operator-(const RatFunc& o) const;
  RatFunc operator*(const RatFunc& o) const;
  RatFunc operator/(const RatFunc& o) const;  // throws on division by zero
  RatFunc pow(int e) const;                   // negative exponents allowed

  bool operator==(const RatFunc& o) const {
    return num_ == o.num_ && den_ == o.den_;
  }
  bool operator!=(const RatFunc& o) const { return !(*this == o); }

  /// Formal partial derivative treating all symbols as independent.
  RatFunc derivative(int id) const;

  RatFunc substitute(int id, const RatFunc& value) const;

  bool depends_on(int id) const {
    return num_.depends_on(id) || den_.depends_on(id);
  }
  void symbols(std::vector<int>& out) const {
    num_.symbols(out);
    den_.symbols(out);
  }

  std::size_t node_count() const { return num_.term_count() + den_.term_count(); }
  std::size_t hash() const { return num_.hash() * 31 + den_.hash(); }

 private:
  static RatFunc reduced_cross(const Poly& n, const Poly& d);
  Poly num_;
  Poly den_;
};

}  // namespace weblin
