#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "weblin/expr.hpp"
#include "weblin/parser.hpp"

using namespace weblin;

namespace {

// Random expression generator used by the finite-difference oracle.
Expr random_expr(std::mt19937& rng, int depth) {
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 3 : 9);
  std::uniform_int_distribution<int> small(-3, 3);
  switch (pick(rng)) {
    case 0: return Expr::x1();
    case 1: return Expr::x2();
    case 2: return Expr::integer(small(rng));
    case 3: return Expr::x1() + Expr::x2();
    case 4: return random_expr(rng, depth - 1) + random_expr(rng, depth - 1);
    case 5: return random_expr(rng, depth - 1) * random_expr(rng, depth - 1);
    case 6: return random_expr(rng, depth - 1) - random_expr(rng, depth - 1);
    case 7: return exp(random_expr(rng, depth - 2));
    case 8: return sin(random_expr(rng, depth - 2));
    case 9: {
      Expr d = random_expr(rng, depth - 1);
      if (d.is_zero()) d = Expr::x1() + Expr::integer(2);
      return random_expr(rng, depth - 1) / d;
    }
  }
  return Expr();
}

// Central finite difference, the independent oracle for differentiate.
double fd(const Expr& e, int var, const Point& p, double h = 1e-6) {
  Point lo = p, hi = p;
  (var == Symbols::kX1 ? hi.x1 : hi.x2) += h;
  (var == Symbols::kX1 ? lo.x1 : lo.x2) -= h;
  return (e.eval(hi) - e.eval(lo)) / (2 * h);
}

bool close_rel(double a, double b, double tol) {
  return std::abs(a - b) <= tol * (1 + std::max(std::abs(a), std::abs(b)));
}

}  // namespace

TEST_CASE("parse of the worked web function") {
  Expr e = parse_expr("(x1+x2)*exp(-x1)");
  Expr manual = (Expr::x1() + Expr::x2()) * exp(-Expr::x1());
  CHECK(e == manual);
  CHECK(parse_expr("x1") == Expr::x1());
}

TEST_CASE("syntax error carries position") {
  CHECK_THROWS_AS(parse_expr("x1+"), SyntaxError);
  try {
    parse_expr("x1+");
  } catch (const SyntaxError& err) {
    CHECK(err.offset() == 3);
  }
  CHECK_THROWS_AS(parse_expr("x1*(x2"), SyntaxError);
  CHECK_THROWS_AS(parse_expr("q+1"), Error);  // undeclared identifier
  CHECK_NOTHROW(parse_expr("a*x1", {"a"}));
}

TEST_CASE("normalization folds and flattens") {
  CHECK(parse_expr("x1+x1") == parse_expr("2*x1"));
  CHECK(parse_expr("x1*x1*x1") == parse_expr("x1^3"));
  CHECK(parse_expr("(x1+x2)^2") == parse_expr("x1^2+2*x1*x2+x2^2"));
  CHECK(parse_expr("x1^0") == Expr::integer(1));
  CHECK(parse_expr("0.5*x1") == parse_expr("x1/2"));
  CHECK(parse_expr("x1 - x1").is_zero());
  // rational cancellation through an opaque generator
  Expr a = parse_expr("exp(-x1)^2/exp(-x1)");
  CHECK(a == parse_expr("exp(-x1)"));
}

TEST_CASE("derivative of the worked example") {
  Expr f = parse_expr("(x1+x2)*exp(-x1)");
  Expr d1 = f.derivative(Symbols::kX1);
  CHECK(d1 == parse_expr("(1-x1-x2)*exp(-x1)"));
  CHECK(f.derivative(Symbols::kX2) == parse_expr("exp(-x1)"));
  CHECK(Expr::x1().derivative(Symbols::kX2).is_zero());
}

TEST_CASE("derivative chain rules") {
  Expr u = parse_expr("x1^2+x2");
  CHECK(log(u).derivative(Symbols::kX1) == parse_expr("2*x1/(x1^2+x2)"));
  CHECK(sin(u).derivative(Symbols::kX2) == cos(u));
  CHECK(cos(u).derivative(Symbols::kX2) == -sin(u));
}

TEST_CASE("differentiation matches finite differences on random expressions") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> coord(0.3, 1.7);
  int checked = 0;
  for (int i = 0; i < 100; ++i) {
    Expr e = random_expr(rng, 3);
    for (int var : {Symbols::kX1, Symbols::kX2}) {
      Expr de = e.derivative(var);
      for (int k = 0; k < 20; ++k) {
        Point p{coord(rng), coord(rng), {}};
        double sym, num;
        try {
          sym = de.eval(p);
          num = fd(e, var, p);
        } catch (const SingularEvaluation&) {
          continue;  // stepped on a pole
        }
        if (!std::isfinite(sym) || !std::isfinite(num)) continue;
        if (std::abs(sym) > 1e6) continue;  // fd unreliable near blow-up
        CHECK(close_rel(sym, num, 1e-5));
        ++checked;
      }
    }
  }
  CHECK(checked > 500);
}

TEST_CASE("mixed partials commute") {
  std::mt19937 rng(99);
  for (int i = 0; i < 100; ++i) {
    Expr e = random_expr(rng, 3);
    Expr d12 = e.derivative(Symbols::kX1).derivative(Symbols::kX2);
    Expr d21 = e.derivative(Symbols::kX2).derivative(Symbols::kX1);
    CHECK(d12 == d21);
  }
}

TEST_CASE("normalization is idempotent via print round-trip") {
  std::mt19937 rng(1234);
  for (int i = 0; i < 100; ++i) {
    Expr e = random_expr(rng, 3);
    Expr back = parse_expr(e.str());
    CHECK(back == e);
    CHECK(back.str() == e.str());
  }
}

TEST_CASE("eval basics and singularities") {
  Expr f = parse_expr("(x1+x2)*exp(-x1)");
  CHECK(f.eval({0.0, 1.0, {}}) == doctest::Approx(1.0).epsilon(1e-14));
  Expr g = parse_expr("1/(x1+x2-1)");
  CHECK_THROWS_AS(g.eval({0.5, 0.5, {}}), SingularEvaluation);
  CHECK(g.eval({2.0, 2.0, {}}) == doctest::Approx(1.0 / 3));
  Expr h = parse_expr("log(x1)");
  CHECK_THROWS_AS(h.eval({-1.0, 0.0, {}}), SingularEvaluation);
  Expr q = parse_expr("a*x1+b", {"a", "b"});
  CHECK(q.eval({2.0, 0.0, {{"a", 3.0}, {"b", 1.0}}}) == doctest::Approx(7.0));
  CHECK_THROWS_AS(q.eval({2.0, 0.0, {}}), Error);
}

TEST_CASE("substitution is simultaneous and normalizing") {
  Expr s = Expr::parameter("s");
  std::map<int, Expr> neg1{{Symbols::instance().find_param("s"), Expr::integer(-1)}};
  CHECK((s * Expr::x1()).substitute(neg1) == -Expr::x1());
  Expr e = parse_expr("x1+x2");
  CHECK(e.substitute({}) == e);
  // swap x1 and x2 simultaneously
  std::map<int, Expr> swap{{Symbols::kX1, Expr::x2()}, {Symbols::kX2, Expr::x1()}};
  Expr w = parse_expr("x1^2+x2");
  CHECK(w.substitute(swap) == parse_expr("x2^2+x1"));
  // substitution reaches inside generators
  Expr g = parse_expr("exp(-x1)");
  CHECK(g.substitute({{Symbols::kX1, Expr()}}) == Expr::integer(1));
}

TEST_CASE("structural hash agrees on equal normal forms") {
  Expr a = parse_expr("(x1+x2)^2");
  Expr b = parse_expr("x1^2+2*x1*x2+x2^2");
  CHECK(a == b);
  CHECK(a.hash() == b.hash());
}
