#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "weblin/candidates.hpp"
#include "weblin/parser.hpp"
#include "weblin/roots.hpp"

using namespace weblin;

namespace {

WebFunction example_web() {
  WebFunction w;
  w.f = parse_expr("(x1+x2)*exp(-x1)");
  return w;
}

double horner(const std::vector<double>& c, double x) {
  double acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

/// Sign-change scan plus bisection, an oracle independent of the companion
/// matrix route.
std::vector<double> bisection_roots(const std::vector<double>& c, double lo,
                                    double hi) {
  std::vector<double> out;
  const int n = 4000;
  double prev = horner(c, lo);
  for (int i = 1; i <= n; ++i) {
    double x = lo + (hi - lo) * i / n;
    double cur = horner(c, x);
    if (prev == 0.0) out.push_back(lo + (hi - lo) * (i - 1) / n);
    if (prev * cur < 0.0) {
      double a = lo + (hi - lo) * (i - 1) / n, b = x;
      for (int k = 0; k < 80; ++k) {
        double m = (a + b) / 2;
        (horner(c, a) * horner(c, m) <= 0 ? b : a) = m;
      }
      out.push_back((a + b) / 2);
    }
    prev = cur;
  }
  return out;
}

}  // namespace

TEST_CASE("companion-matrix roots match bisection") {
  // (s+1)(s-2)(s-1/2) and (s^2+1)(s-3)
  std::vector<std::vector<double>> polys = {
      {1.0, -2.5, -0.5, 1.0},
      {-3.0, 1.0, -3.0, 1.0},
  };
  for (const auto& p : polys) {
    std::vector<double> got = real_roots(p);
    std::vector<double> want = bisection_roots(p, -10.0, 10.0);
    REQUIRE(got.size() == want.size());
    for (std::size_t i = 0; i < got.size(); ++i)
      CHECK(std::abs(got[i] - want[i]) < 1e-9);
  }
  CHECK(real_roots({0.0, 0.0}).empty());
  CHECK(real_roots({5.0}).empty());
  // a negligible leading coefficient must not spray spurious huge roots
  std::vector<double> r = real_roots({-1.0, 1.0, 1e-15});
  REQUIRE(r.size() == 1);
  CHECK(std::abs(r[0] - 1.0) < 1e-9);
}

TEST_CASE("common_roots intersects root sets") {
  // sample tables sharing only the root -1
  std::vector<std::vector<std::vector<double>>> t = {
      {{1.0, 1.0}, {-2.0, -1.0, 1.0}},         // s+1, (s+1)(s-2)
      {{3.0, 4.0, 1.0}, {0.5, 1.5, 1.0}}};     // (s+1)(s+3), (s+1)(s+1/2)
  std::vector<double> r = common_roots(t);
  REQUIRE(r.size() == 1);
  CHECK(std::abs(r[0] + 1.0) < 1e-9);

  SUBCASE("independent of sample order") {
    std::swap(t[0], t[1]);
    std::vector<double> r2 = common_roots(t);
    REQUIRE(r2.size() == 1);
    CHECK(std::abs(r2[0] - r[0]) < 1e-12);
  }

  SUBCASE("no common root gives an empty set") {
    t[1][1] = {-2.0, 1.0};  // s-2
    CHECK(common_roots(t).empty());
  }

  SUBCASE("nearby roots merge into one candidate") {
    std::vector<std::vector<std::vector<double>>> u = {
        {{1.0 + 1e-9, 2.0 + 1e-9, 1.0}},  // roots -1 and -1 - 1e-9ish
        {{1.0, 1.0}}};
    CHECK(common_roots(u, 1e-6).size() == 1);
  }
}

TEST_CASE("the example web has the single constant base -1") {
  WebFunction w = example_web();
  std::vector<Point> samples = regular_samples(w, 6, 7);
  std::vector<BaseCandidate> bases = find_constant_bases(w, samples);
  REQUIRE(bases.size() == 1);
  CHECK(std::abs(bases[0].s + 1.0) < 1e-8);
  CHECK(bases[0].verified);
  CHECK(bases[0].max_residual < 1e-6);
  REQUIRE(bases[0].residuals.size() == samples.size());

  SUBCASE("projective equivalence of bases") {
    BaseCandidate same = bases[0];
    same.s += 1e-12;
    CHECK(projectively_equivalent(bases[0], bases[0]));
    CHECK(projectively_equivalent(bases[0], same));
    BaseCandidate other = bases[0];
    other.s = 0.5;
    CHECK(!projectively_equivalent(bases[0], other));
  }
}

TEST_CASE("Frobenius integration reproduces the known closed forms") {
  WebFunction w = example_web();
  Point init{2.5, 2.5, {}};

  SUBCASE("t = 0, z = (1-x1)/((x1+x2-1)*x2)") {
    auto zf = [](double x1, double x2) {
      return (1.0 - x1) / ((x1 + x2 - 1.0) * x2);
    };
    FrobeniusSolution sol =
        solve_frobenius(w, -1.0, init, 0.0, zf(init.x1, init.x2));
    CHECK(!sol.escaped);
    int checked = 0;
    for (int j = 0; j < sol.n2; ++j)
      for (int i = 0; i < sol.n1; ++i) {
        if (!sol.ok_at(i, j)) continue;
        CHECK(std::abs(sol.t_at(i, j)) < 1e-6);
        CHECK(std::abs(sol.z_at(i, j) - zf(sol.x1[i], sol.x2[j])) < 1e-6);
        ++checked;
      }
    CHECK(checked == sol.n1 * sol.n2);
    CHECK(sol.max_compat_residual < 1e-3);
  }

  SUBCASE("t = (x1+x2-1)/(x1+x2), z = 1/((x1+x2)(x1+x2-1))") {
    auto tf = [](double x1, double x2) {
      return (x1 + x2 - 1.0) / (x1 + x2);
    };
    auto zf = [](double x1, double x2) {
      return 1.0 / ((x1 + x2) * (x1 + x2 - 1.0));
    };
    FrobeniusSolution sol = solve_frobenius(w, -1.0, init, tf(2.5, 2.5),
                                            zf(2.5, 2.5));
    for (int j = 0; j < sol.n2; ++j)
      for (int i = 0; i < sol.n1; ++i) {
        if (!sol.ok_at(i, j)) continue;
        CHECK(std::abs(sol.t_at(i, j) - tf(sol.x1[i], sol.x2[j])) < 1e-6);
        CHECK(std::abs(sol.z_at(i, j) - zf(sol.x1[i], sol.x2[j])) < 1e-6);
      }
  }

  SUBCASE("axis order does not matter") {
    FrobeniusSolution a = solve_frobenius(w, -1.0, init, 0.8, 0.05);
    FrobeniusSolution b = solve_frobenius(w, -1.0, init, 0.8, 0.05, 11, 11,
                                          /*x2_first=*/true);
    for (int j = 0; j < a.n2; ++j)
      for (int i = 0; i < a.n1; ++i) {
        if (!a.ok_at(i, j) || !b.ok_at(i, j)) continue;
        CHECK(std::abs(a.t_at(i, j) - b.t_at(i, j)) < 1e-6);
        CHECK(std::abs(a.z_at(i, j) - b.z_at(i, j)) < 1e-6);
      }
  }
}

TEST_CASE("closed-form families satisfy the Frobenius system") {
  WebFunction w = example_web();
  Expr s = -Expr::integer(1);

  SUBCASE("rational family in a") {
    Expr t = Expr();
    Expr z = parse_expr("(1-x1-a)/((-1+x1+x2)*(x2-a))", {"a"});
    for (double a : {0.0, 0.5}) {
      std::vector<Point> samples = regular_samples(w, 8, 3, {{"a", a}});
      ClosedFormCheck chk = check_closed_form(w, s, t, z, samples);
      CHECK(chk.verified);
      CHECK(chk.max_residual < 1e-8);
    }
  }

  SUBCASE("exponential family in a, b") {
    std::vector<std::string> ps = {"a", "b"};
    Expr t = parse_expr(
        "(-1+x1+x2)*exp(-x1)/((x1+x2)*exp(-x1)+a*x2+b)", ps);
    Expr z = parse_expr(
        "(exp(-x1)+a-x1*a+b)/(((x1+x2)*exp(-x1)+a*x2+b)*(x1+x2-1))", ps);
    std::vector<Point> samples = regular_samples(w, 8, 3, {{"a", 1.0}, {"b", 1.0}});
    ClosedFormCheck chk = check_closed_form(w, s, t, z, samples);
    CHECK(chk.verified);
    CHECK(chk.max_residual < 1e-8);
  }

  SUBCASE("a wrong candidate is rejected") {
    std::vector<Point> samples = regular_samples(w, 8, 3);
    ClosedFormCheck chk =
        check_closed_form(w, s, Expr::integer(1), Expr(), samples);
    CHECK(!chk.verified);
    CHECK(chk.max_residual > 1e-3);
  }
}
