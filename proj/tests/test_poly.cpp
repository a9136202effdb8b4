#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "weblin/poly.hpp"
#include "weblin/ratfunc.hpp"

using namespace weblin;

namespace {

Poly X() { return Poly::symbol(0); }
Poly Y() { return Poly::symbol(1); }
Poly Z() { return Poly::symbol(2); }
Poly C(long n, long d = 1) { return Poly::constant(Rat(n, d)); }

Poly random_poly(std::mt19937& rng, int nterms, int maxdeg, int nvars) {
  std::uniform_int_distribution<int> deg(0, maxdeg);
  std::uniform_int_distribution<int> coef(-9, 9);
  Poly p;
  for (int i = 0; i < nterms; ++i) {
    Monomial m;
    for (int v = 0; v < nvars; ++v) {
      int e = deg(rng);
      if (e > 0) m = m * Monomial::symbol(v, e);
    }
    int c = coef(rng);
    if (c != 0) p = p + Poly::term(m, Rat(c));
  }
  return p;
}

}  // namespace

TEST_CASE("monomial order is deglex") {
  Monomial x = Monomial::symbol(0);
  Monomial y = Monomial::symbol(1);
  CHECK(Monomial::compare(x * x, x * y) > 0);   // x^2 > x*y
  CHECK(Monomial::compare(x * y, y * y) > 0);   // x*y > y^2
  CHECK(Monomial::compare(y * y, x) > 0);       // degree dominates
  CHECK(Monomial::compare(x, x) == 0);
}

TEST_CASE("basic arithmetic and normalization") {
  Poly p = (X() + Y()) * (X() - Y());
  CHECK(p == X() * X() - Y() * Y());
  CHECK((p - p).is_zero());
  Poly q = (X() + C(1)).pow(3);
  CHECK(q.degree_in(0) == 3);
  CHECK(q.total_degree() == 3);
  CHECK(q == X().pow(3) + C(3) * X() * X() + C(3) * X() + C(1));
}

TEST_CASE("derivative and substitution") {
  Poly p = X().pow(3) * Y() + C(2) * Y() * Y();
  CHECK(p.derivative(0) == C(3) * X() * X() * Y());
  CHECK(p.derivative(1) == X().pow(3) + C(4) * Y());
  CHECK(p.substitute(1, C(1)) == X().pow(3) + C(2));
  CHECK(p.substitute(0, Y()) == Y().pow(4) + C(2) * Y() * Y());
}

TEST_CASE("exact division") {
  Poly a = (X() + Y() + C(1)).pow(2) * (X() - C(3) * Y());
  auto q = a.divide_exact((X() + Y() + C(1)));
  REQUIRE(q.has_value());
  CHECK(*q == (X() + Y() + C(1)) * (X() - C(3) * Y()));
  CHECK(!a.divide_exact(X() + C(7)).has_value());
  CHECK(a.divide_exact(a).value().is_one());
}

TEST_CASE("gcd recovers common factors") {
  Poly g = X() * X() + Y() + C(1);
  Poly a = g * (X() - Y());
  Poly b = g * (X() + Y() + C(2)) * (Y() + C(5));
  Poly got = poly_gcd(a, b);
  CHECK(got == g.monic());
}

TEST_CASE("gcd of coprime polys is 1") {
  CHECK(poly_gcd(X() + C(1), Y() + C(2)).is_one());
  CHECK(poly_gcd(X() * X() + C(1), X() + C(3)).is_one());
}

TEST_CASE("gcd property on random products") {
  std::mt19937 rng(12345);
  for (int iter = 0; iter < 40; ++iter) {
    Poly g = random_poly(rng, 3, 2, 3);
    Poly a = random_poly(rng, 3, 2, 3);
    Poly b = random_poly(rng, 3, 2, 3);
    if (g.is_zero() || a.is_zero() || b.is_zero()) continue;
    Poly got = poly_gcd(g * a, g * b);
    // gcd must be a multiple of g (it may pick up common factors of a and b)
    auto q = got.divide_exact(g.monic());
    CHECK(q.has_value());
    CHECK((g * a).divide_exact(got).has_value());
    CHECK((g * b).divide_exact(got).has_value());
  }
}

TEST_CASE("ratfunc reduces automatically") {
  RatFunc x = RatFunc::symbol(0), y = RatFunc::symbol(1);
  RatFunc one = RatFunc::constant(Rat(1));
  RatFunc r = (x * x - y * y) / (x - y);
  CHECK(r == x + y);
  RatFunc s = one / x + one / y;  // (x+y)/(x*y)
  CHECK(s.num() == (X() + Y()));
  CHECK(s.den() == X() * Y());
  CHECK((s - s).is_zero());
  // (1/(x-1)) * (x-1)^2 == x-1
  RatFunc t = (one / (x - one)) * (x - one) * (x - one);
  CHECK(t == x - one);
}

TEST_CASE("ratfunc derivative") {
  RatFunc x = RatFunc::symbol(0), y = RatFunc::symbol(1);
  RatFunc one = RatFunc::constant(Rat(1));
  // d/dx [ 1/(x+y-1) ] = -1/(x+y-1)^2
  RatFunc f = one / (x + y - one);
  RatFunc df = f.derivative(0);
  CHECK(df == -(one / ((x + y - one) * (x + y - one))));
  // quotient rule on x^2/y
  RatFunc g = x * x / y;
  CHECK(g.derivative(0) == (x + x) / y);
  CHECK(g.derivative(1) == -(x * x) / (y * y));
}

TEST_CASE("ratfunc denominators stay monic") {
  RatFunc x = RatFunc::symbol(0);
  RatFunc r = RatFunc::constant(Rat(1)) / (RatFunc::constant(Rat(3)) * x - RatFunc::constant(Rat(3)));
  CHECK(r.den().leading_coeff() == 1);
  CHECK(r.num() == Poly::constant(Rat(1, 3)));
}
