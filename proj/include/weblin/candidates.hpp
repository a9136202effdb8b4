#pragma once

#include <array>
#include <vector>

#include "weblin/expr.hpp"
#include "weblin/point.hpp"
#include "weblin/webgeom.hpp"

namespace weblin {

/// A constant linearization base found on the obstruction variety.
struct BaseCandidate {
  double s = 0.0;
  bool verified = false;
  double max_residual = 0.0;
  // residuals[sample][i] is the normalized residual of Q_{i+1} at the sample
  std::vector<std::array<double, 7>> residuals;
};

/// Values within radius of a real root of every polynomial in the table
/// (polys[sample][i] are ascending coefficients). Candidates come from the
/// first polynomial's roots; the result is independent of sample order.
std::vector<double> common_roots(
    const std::vector<std::vector<std::vector<double>>>& polys,
    double radius = 1e-6);

/// Evaluates the seven obstruction polynomials per sample (numeric
/// coefficient pipeline), finds constant values of s lying on all of them,
/// and verifies the normalized residuals against tol_base.
std::vector<BaseCandidate> find_constant_bases(const WebFunction& w,
                                               const std::vector<Point>& samples,
                                               double tol_base = 1e-6);

/// Numeric solution of the Frobenius system on a rectangular grid for a
/// constant base. Nodes are row-major with x1 varying fastest.
struct FrobeniusSolution {
  int n1 = 0, n2 = 0;
  std::vector<double> x1, x2;
  std::vector<double> t, z;
  std::vector<char> mask;  // 1 = node integrated and regular
  double step = 0.0;       // final integration step after halving
  double max_compat_residual = 0.0;
  bool escaped = false;  // |t| or |z| exceeded the blow-up bound somewhere
  bool x2_first = false;

  double t_at(int i, int j) const { return t[j * n1 + i]; }
  double z_at(int i, int j) const { return z[j * n1 + i]; }
  bool ok_at(int i, int j) const { return mask[j * n1 + i] != 0; }
};

/// Integrates dt = t1 dx1 + t2 dx2, dz = z1 dx1 + z2 dx2 with s == base
/// across the web's domain box from the initial data, along axis-parallel
/// paths (x1 leg first unless x2_first). Classical 4th-order steps; the
/// step is halved until the far-corner values move by less than 1e-8.
FrobeniusSolution solve_frobenius(const WebFunction& w, double base,
                                  const Point& init, double t0, double z0,
                                  int n1 = 11, int n2 = 11,
                                  bool x2_first = false);

/// Residuals of the four Frobenius equations for closed-form (s, t, z),
/// computed with symbolic derivatives and evaluated at the samples.
struct ClosedFormCheck {
  std::vector<std::array<double, 4>> residuals;  // per used sample
  std::vector<Point> used;
  int skipped = 0;
  double max_residual = 0.0;
  bool verified = false;
};

ClosedFormCheck check_closed_form(const WebFunction& w, const Expr& s,
                                  const Expr& t, const Expr& z,
                                  const std::vector<Point>& samples,
                                  double tol = 1e-8);

/// Constant bases are projectively equivalent iff they agree pointwise.
bool projectively_equivalent(const BaseCandidate& b1, const BaseCandidate& b2,
                             double tol = 1e-9);

}  // namespace weblin
