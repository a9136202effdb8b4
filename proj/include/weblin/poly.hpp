#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace weblin {

using Rat = mpq_class;
using Int = mpz_class;

/// Sparse exponent vector over symbol ids, sorted by id.
/// Compared with the degree-lexicographic order used throughout.
class Monomial {
 public:
  Monomial() = default;
  static Monomial symbol(int id, int exp = 1);

  bool is_one() const { return exps_.empty(); }
  int degree() const;
  int degree_in(int id) const;
  const std::vector<std::pair<int, int>>& exps() const { return exps_; }

  Monomial operator*(const Monomial& o) const;
  bool divides(const Monomial& o) const;  // *this | o
  Monomial divided_into(const Monomial& o) const;  // o / *this, requires divides(o)

  bool operator==(const Monomial& o) const { return exps_ == o.exps_; }
  // deglex: total degree first, ties broken lexicographically by symbol id.
  static int compare(const Monomial& a, const Monomial& b);
  bool operator<(const Monomial& o) const { return compare(*this, o) < 0; }

  std::size_t hash() const;

 private:
  std::vector<std::pair<int, int>> exps_;  // (symbol id, exponent > 0)
};

/// Sparse multivariate polynomial over exact rationals.
/// Terms are kept sorted in descending deglex order with nonzero coefficients.
class Poly {
 public:
  Poly() = default;
  explicit Poly(Rat c);
  static Poly zero() { return Poly(); }
  static Poly constant(Rat c) { return Poly(std::move(c)); }
  static Poly symbol(int id);
  static Poly term(Monomial m, Rat c);

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  bool is_one() const;
  const Rat& constant_value() const;  // requires is_constant (zero -> 0)

  const std::vector<std::pair<Monomial, Rat>>& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }
  int total_degree() const;
  int degree_in(int id) const;
  const Monomial& leading_monomial() const;
  const Rat& leading_coeff() const;
  void symbols(std::vector<int>& out) const;  // appends, deduped by caller
  bool depends_on(int id) const;

  Poly operator-() const;
  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly operator*(const Rat& c) const;
  Poly pow(int e) const;  // e >= 0
  bool operator==(const Poly& o) const { return terms_ == o.terms_; }
  bool operator!=(const Poly& o) const { return !(*this == o); }

  /// Formal partial derivative treating every symbol as independent.
  Poly derivative(int id) const;

  /// Simultaneous is not needed; single-symbol substitution suffices here.
  Poly substitute(int id, const Poly& value) const;

  /// Exact division; nullopt if the division leaves a remainder.
  std::optional<Poly> divide_exact(const Poly& divisor) const;

  /// gcd of coefficient rationals, sign matching the leading coefficient.
  Rat content() const;
  Poly primitive_part() const;
  /// Scaled so the leading coefficient is 1.
  Poly monic() const;

  std::size_t hash() const;

  /// Assembles terms (unsorted, possibly duplicated/zero) into canonical form.
  static Poly from_terms(std::vector<std::pair<Monomial, Rat>> terms);

 private:
  std::vector<std::pair<Monomial, Rat>> terms_;  // descending deglex
};

/// Monic gcd over the rationals. Heuristic (evaluation/reconstruction) with
/// exact-division verification; returns 1 when the heuristic gives up, which
/// is always safe for callers that only use it to cancel fractions.
Poly poly_gcd(const Poly& a, const Poly& b);

}  // namespace weblin
