#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "weblin/parser.hpp"
#include "weblin/verify.hpp"

using namespace weblin;

namespace {

WebFunction example_web() {
  WebFunction w;
  w.f = parse_expr("(x1+x2)*exp(-x1)");
  return w;
}

const std::vector<std::string> kAB = {"a", "b"};

/// The rational solution family: s = -1, t = 0, parameter a.
struct Family1 {
  Expr s = -Expr::integer(1);
  Expr t;
  Expr z = parse_expr("(1-x1-a)/((-1+x1+x2)*(x2-a))", kAB);
};

/// The exponential solution family: s = -1, parameters a and b.
struct Family2 {
  Expr s = -Expr::integer(1);
  Expr t = parse_expr("(-1+x1+x2)*exp(-x1)/((x1+x2)*exp(-x1)+a*x2+b)", kAB);
  Expr z = parse_expr(
      "(exp(-x1)+a-x1*a+b)/(((x1+x2)*exp(-x1)+a*x2+b)*(x1+x2-1))", kAB);
};

double rel_err(double got, double want) {
  return std::abs(got - want) / std::max({1.0, std::abs(got), std::abs(want)});
}

void check_expr_equal(const Expr& got, const Expr& want,
                      const std::vector<Point>& samples, double tol = 1e-10) {
  for (const Point& p : samples) CHECK(rel_err(got.eval(p), want.eval(p)) < tol);
}

}  // namespace

TEST_CASE("build_L reproduces the known deformation tensors") {
  WebFunction w = example_web();
  std::vector<Point> samples = regular_samples(w, 6, 5, {{"a", 0.5}, {"b", 0.25}});

  SUBCASE("rational family") {
    Family1 f;
    DeformationTensor L = build_L(w, f.s, f.t, f.z);
    check_expr_equal(L.L1_11, -Expr::integer(1), samples);
    check_expr_equal(L.L1_12, f.z, samples);
    check_expr_equal(L.L2_12, Expr(), samples);
    check_expr_equal(
        L.L2_22, parse_expr("-(x2-2+2*x1+a)/((x1+x2-1)*(x2-a))", kAB), samples);
  }

  SUBCASE("exponential family") {
    Family2 f;
    DeformationTensor L = build_L(w, f.s, f.t, f.z);
    check_expr_equal(
        L.L1_11,
        parse_expr("((x1+x2-2)*exp(-x1)-a*x2-b)/((x1+x2)*exp(-x1)+a*x2+b)", kAB),
        samples);
    check_expr_equal(
        L.L2_22,
        parse_expr("((2-x1-x2)*exp(-x1)-a*(2*x1+x2-2)+b)"
                   "/((x1+x2-1)*((x1+x2)*exp(-x1)+a*x2+b))",
                   kAB),
        samples);
  }

  SUBCASE("deformation_parameters inverts build_L") {
    Family2 f;
    DeformationTensor L = build_L(w, f.s, f.t, f.z);
    DeformationParameters p = deformation_parameters(w, L);
    CHECK((p.s - f.s).is_zero());
    CHECK((p.t - f.t).is_zero());
    CHECK((p.z - f.z).is_zero());
  }
}

TEST_CASE("deformed connection matches the displayed components") {
  WebFunction w = example_web();
  std::vector<Point> samples = regular_samples(w, 6, 5, {{"a", 1.0}, {"b", 1.0}});

  Family1 f1;
  Connection G1 = deformed_connection(w, build_L(w, f1.s, f1.t, f1.z));
  check_expr_equal(G1.G2_22, parse_expr("2/(a-x2)", kAB), samples);
  CHECK(G1.G2_11.is_zero());
  CHECK(G1.G1_22.is_zero());

  Family2 f2;
  Connection G2 = deformed_connection(w, build_L(w, f2.s, f2.t, f2.z));
  check_expr_equal(
      G2.G2_22,
      parse_expr("-2*(exp(-x1)+a)/((x1+x2)*exp(-x1)+a*x2+b)", kAB), samples);
}

TEST_CASE("the zero deformation keeps the Chern connection and its curvature") {
  WebFunction w = example_web();
  ChernData cd = chern(w);
  Connection G = chern_connection(w);
  CHECK((G.G1_11 - cd.gamma1).is_zero());
  CHECK((G.G2_22 - cd.gamma2).is_zero());

  // the web is not parallelizable, so the Chern connection is not flat and
  // the curvature residual is exactly |r| (equal to 1/9 at (2,2))
  std::vector<Point> one = {{2.0, 2.0, {}}};
  CheckResult flat = check_flat(G, one);
  CHECK(!flat.passed);
  CHECK(rel_err(flat.max_residual, 1.0 / 9.0) < 1e-12);

  // with L = 0 the two curvature-sourced equations keep the residual r
  CheckResult pde = check_pde_system(w, DeformationTensor{}, one);
  CHECK(!pde.passed);
  CHECK(rel_err(pde.max_residual, 1.0 / 9.0) < 1e-12);
}

TEST_CASE("both families pass every verification check") {
  WebFunction w = example_web();
  for (double a : {0.0, 1.0, -1.0, 0.5}) {
    for (double b : {0.0, 1.0, -1.0, 0.5}) {
      std::map<std::string, double> params = {{"a", a}, {"b", b}};
      std::vector<Point> samples = regular_samples(w, 6, 5, params);

      Family1 f1;
      Family2 f2;
      for (auto& [s, t, z] : {std::tie(f1.s, f1.t, f1.z),
                              std::tie(f2.s, f2.t, f2.z)}) {
        DeformationTensor L = build_L(w, s, t, z);
        Connection G = deformed_connection(w, L);
        CheckResult pde = check_pde_system(w, L, samples);
        CHECK(pde.passed);
        CHECK(pde.max_residual < 1e-7);
        CHECK(check_torsion(G));
        CheckResult flat = check_flat(G, samples);
        CHECK(flat.passed);
        CHECK(flat.max_residual < 1e-7);
        GeodesicCheck geo = check_geodesic_foliations(w, G, samples);
        CHECK(geo.result.passed);
      }
    }
  }
}

TEST_CASE("geodesic proportionality factors match the closed forms") {
  WebFunction w = example_web();
  std::vector<Point> samples = regular_samples(w, 6, 9, {{"a", 0.5}, {"b", 1.5}});

  Family1 f1;
  GeodesicCheck g1 = check_geodesic_foliations(
      w, deformed_connection(w, build_L(w, f1.s, f1.t, f1.z)), samples);
  Expr want1 = parse_expr(
      "(2*x1^2+x2^2+3*x1*x2+(a-4)*(x1+x2)+2)/((-1+x1+x2)*(a-x2))", kAB);
  for (const Point& p : samples)
    CHECK(rel_err(g1.factor.eval(p), want1.eval(p)) < 1e-8);

  Family2 f2;
  GeodesicCheck g2 = check_geodesic_foliations(
      w, deformed_connection(w, build_L(w, f2.s, f2.t, f2.z)), samples);
  Expr want2 = parse_expr(
      "((x1+x2)^2*exp(-x1)+(4*a+b)*(x1+x2)-a*(2*x1^2+x2^2+3*x2*x1+2))"
      "/((x1+x2-1)*((x1+x2)*exp(-x1)+a*x2+b))",
      kAB);
  for (const Point& p : samples)
    CHECK(rel_err(g2.factor.eval(p), want2.eval(p)) < 1e-8);
}

TEST_CASE("full_verdict accepts the families and rejects an impostor") {
  WebFunction w = example_web();
  std::vector<Point> samples = regular_samples(w, 6, 5, {{"a", 1.0}, {"b", 1.0}});

  Family1 f1;
  Verdict v1 = full_verdict(w, f1.s, f1.t, f1.z, samples);
  CHECK(v1.linearization);
  CHECK(v1.frobenius.verified);
  CHECK(v1.pde.passed);
  CHECK(v1.flat.passed);
  CHECK(v1.geodesic.result.passed);

  Family2 f2;
  CHECK(full_verdict(w, f2.s, f2.t, f2.z, samples).linearization);

  Verdict bad =
      full_verdict(w, -Expr::integer(1), Expr::integer(1), Expr(), samples);
  CHECK(!bad.linearization);
  CHECK(!bad.frobenius.verified);
}

TEST_CASE("grid verification accepts an integrated solution") {
  WebFunction w = example_web();
  Point init{2.5, 2.5, {}};
  FrobeniusSolution sol = solve_frobenius(w, -1.0, init, 0.8, 0.05);
  GridCheck g = check_pde_grid(w, -1.0, sol);
  CHECK(g.passed);
  CHECK(g.used > 0);

  SUBCASE("corrupted grid values fail") {
    for (double& v : sol.t) v += 0.05;
    GridCheck bad = check_pde_grid(w, -1.0, sol);
    CHECK(!bad.passed);
  }
}
