#pragma once

#include <vector>

#include "weblin/expr.hpp"
#include "weblin/point.hpp"

namespace weblin {

/// A planar 3-web in normal form: the foliations x1=const, x2=const and
/// f(x1,x2)=const over a rectangular domain box.
struct WebFunction {
  Expr f;
  std::vector<std::string> params;
  double x1min = 2.0, x1max = 3.0, x2min = 2.0, x2max = 3.0;
  double eps_reg = 1e-6;
};

/// Slope and Chern connection scalars of the web.
struct ChernData {
  Expr c;       // f1/f2
  Expr gamma1;  // c1/c
  Expr gamma2;  // -c2/c
  Expr r;       // curvature scalar
};

struct ParallelVerdict {
  bool parallelizable = false;
  bool symbolic = false;  // decided by the normal form of r, not by sampling
  double max_residual = 0.0;
};

/// Throws DegenerateWeb unless f depends on both variables.
void validate(const WebFunction& w);

Expr slope(const WebFunction& w);
ChernData chern(const WebFunction& w);
Expr curvature(const WebFunction& w);

/// Curvature through the second displayed formula, directly in f-partials.
/// Used as an independent cross-check of curvature().
Expr curvature_from_f(const WebFunction& w);

ParallelVerdict is_parallelizable(const WebFunction& w,
                                  const std::vector<Point>& samples,
                                  double tol = 1e-10);

/// Deterministic low-discrepancy samples inside the domain box, rejecting
/// points within eps_reg of the singular loci of f1, f2 and c. The seed
/// offsets the sequence. Throws when no regular point can be found.
std::vector<Point> regular_samples(const WebFunction& w, int count,
                                   unsigned seed,
                                   const std::map<std::string, double>& params = {});

}  // namespace weblin
