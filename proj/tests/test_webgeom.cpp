#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "weblin/parser.hpp"
#include "weblin/webgeom.hpp"

using namespace weblin;

namespace {

WebFunction example_web() {
  WebFunction w;
  w.f = parse_expr("(x1+x2)*exp(-x1)");
  return w;
}

WebFunction web_of(const std::string& text) {
  WebFunction w;
  w.f = parse_expr(text);
  return w;
}

bool close_rel(double a, double b, double tol) {
  return std::abs(a - b) <= tol * (1 + std::max(std::abs(a), std::abs(b)));
}

}  // namespace

TEST_CASE("slope of the worked example and the trivial webs") {
  CHECK(slope(example_web()) == parse_expr("1-x1-x2"));
  CHECK(slope(web_of("x1+x2")) == Expr::integer(1));
  CHECK(slope(web_of("x1*x2")) == parse_expr("x2/x1"));
}

TEST_CASE("degenerate webs are rejected") {
  CHECK_THROWS_AS(slope(web_of("x1")), Error);
  CHECK_THROWS_AS(slope(web_of("x2^2")), Error);
  try {
    slope(web_of("x1"));
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DegenerateWeb);
  }
}

TEST_CASE("chern data of the worked example matches the closed forms") {
  ChernData d = chern(example_web());
  CHECK(d.gamma1 == parse_expr("1/(x1+x2-1)"));
  CHECK(d.gamma2 == parse_expr("1/(1-x1-x2)"));
  CHECK(d.r == parse_expr("1/(x1+x2-1)^2"));
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(2.0, 3.0);
  for (int i = 0; i < 20; ++i) {
    Point p{u(rng), u(rng), {}};
    CHECK(close_rel(d.gamma1.eval(p), 1.0 / (p.x1 + p.x2 - 1), 1e-12));
    CHECK(close_rel(d.gamma2.eval(p), 1.0 / (1 - p.x1 - p.x2), 1e-12));
    CHECK(close_rel(d.r.eval(p), 1.0 / ((p.x1 + p.x2 - 1) * (p.x1 + p.x2 - 1)), 1e-12));
  }
}

TEST_CASE("chern data satisfies its defining relations") {
  for (const char* text : {"x1*x2", "(x1+x2)*exp(-x1)", "x1^2+x2^3+x1*x2",
                           "sin(x1)+x2^2", "exp(x1*x2)"}) {
    WebFunction w = web_of(text);
    ChernData d = chern(w);
    Expr c1 = d.c.derivative(Symbols::kX1);
    Expr c2 = d.c.derivative(Symbols::kX2);
    CHECK((d.gamma1 * d.c - c1).is_zero());
    CHECK((d.gamma2 * d.c + c2).is_zero());
    CHECK((d.r * d.c * d.c - (c1 * c2 - c1.derivative(Symbols::kX2) * d.c)).is_zero());
  }
}

TEST_CASE("dual curvature formulas agree") {
  for (const char* text : {"x1*x2", "(x1+x2)*exp(-x1)", "x1^2+x2^3+x1*x2",
                           "exp(x1)*sin(x2)+x1"}) {
    WebFunction w = web_of(text);
    Expr ra = curvature(w);
    Expr rb = curvature_from_f(w);
    CHECK((ra - rb).is_zero());
    std::vector<Point> pts = regular_samples(w, 20, 3);
    for (const Point& p : pts) CHECK(close_rel(ra.eval(p), rb.eval(p), 1e-9));
  }
}

TEST_CASE("parallelizability verdicts") {
  WebFunction lin = web_of("x1+x2");
  CHECK(curvature(lin).is_zero());
  std::vector<Point> pts = regular_samples(lin, 20, 1);
  ParallelVerdict v = is_parallelizable(lin, pts);
  CHECK(v.parallelizable);
  CHECK(v.symbolic);

  WebFunction prod = web_of("x1*x2");
  CHECK(curvature(prod).is_zero());
  CHECK(is_parallelizable(prod, regular_samples(prod, 20, 1)).parallelizable);

  WebFunction ex = example_web();
  ParallelVerdict ve = is_parallelizable(ex, regular_samples(ex, 20, 1));
  CHECK(!ve.parallelizable);
  CHECK(ve.max_residual > 0.01);
}

TEST_CASE("regular sampling avoids singular loci and is deterministic") {
  WebFunction w = example_web();
  w.x1min = 0.0; w.x1max = 1.0; w.x2min = 0.0; w.x2max = 1.0;
  // the singular line x1+x2=1 crosses this box
  std::vector<Point> pts = regular_samples(w, 30, 7);
  Expr f2 = w.f.derivative(Symbols::kX2);
  Expr c = slope(w);
  for (const Point& p : pts) {
    CHECK(std::abs(f2.eval(p)) > w.eps_reg);
    CHECK(std::abs(c.eval(p)) > w.eps_reg);
    CHECK(p.x1 >= 0.0);
    CHECK(p.x1 <= 1.0);
  }
  std::vector<Point> again = regular_samples(w, 30, 7);
  REQUIRE(again.size() == pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    CHECK(again[i].x1 == pts[i].x1);
    CHECK(again[i].x2 == pts[i].x2);
  }
  std::vector<Point> other = regular_samples(w, 30, 8);
  CHECK(other[0].x1 != pts[0].x1);
}

TEST_CASE("slope consistency of the adapted product structure") {
  // with e1 = d1 and e2 = c d2, the structure maps d1 to c d2; numerically
  // this is just the statement that c equals f1/f2 at regular points.
  WebFunction w = example_web();
  Expr c = slope(w);
  Expr f1 = w.f.derivative(Symbols::kX1);
  Expr f2 = w.f.derivative(Symbols::kX2);
  for (const Point& p : regular_samples(w, 10, 2))
    CHECK(close_rel(c.eval(p) * f2.eval(p), f1.eval(p), 1e-12));
}
