#include "weblin/webgeom.hpp"

#include <cmath>

namespace weblin {

void validate(const WebFunction& w) {
  if (!w.f.depends_on(Symbols::kX1) || !w.f.depends_on(Symbols::kX2))
    throw Error(ErrorKind::DegenerateWeb,
                "web function must depend on both x1 and x2");
  if (!(w.x1min < w.x1max) || !(w.x2min < w.x2max))
    throw Error(ErrorKind::InputError, "degenerate domain box");
}

Expr slope(const WebFunction& w) {
  validate(w);
  Expr f1 = w.f.derivative(Symbols::kX1);
  Expr f2 = w.f.derivative(Symbols::kX2);
  if (f2.is_zero())
    throw Error(ErrorKind::DegenerateWeb, "f2 is identically zero");
  if (f1.is_zero())
    throw Error(ErrorKind::DegenerateWeb, "f1 is identically zero");
  return f1 / f2;
}

ChernData chern(const WebFunction& w) {
  Expr c = slope(w);
  Expr c1 = c.derivative(Symbols::kX1);
  Expr c2 = c.derivative(Symbols::kX2);
  ChernData d;
  d.c = c;
  d.gamma1 = c1 / c;
  d.gamma2 = -(c2 / c);
  d.r = (c1 * c2 - c.derivative(Symbols::kX1).derivative(Symbols::kX2) * c) /
        (c * c);
  return d;
}

Expr curvature(const WebFunction& w) { return chern(w).r; }

Expr curvature_from_f(const WebFunction& w) {
  validate(w);
  Expr f1 = w.f.derivative(Symbols::kX1);
  Expr f2 = w.f.derivative(Symbols::kX2);
  if (f2.is_zero() || f1.is_zero())
    throw Error(ErrorKind::DegenerateWeb, "degenerate web");
  Expr f11 = f1.derivative(Symbols::kX1);
  Expr f12 = f1.derivative(Symbols::kX2);
  Expr f22 = f2.derivative(Symbols::kX2);
  Expr f112 = f11.derivative(Symbols::kX2);
  Expr f122 = f12.derivative(Symbols::kX2);
  Expr num = f11 * f2 * f2 * f12 - f1 * f1 * f12 * f22 - f1 * f112 * f2 * f2 +
             f1 * f1 * f122 * f2;
  return num / (f2 * f2 * f1 * f1);
}

ParallelVerdict is_parallelizable(const WebFunction& w,
                                  const std::vector<Point>& samples,
                                  double tol) {
  Expr r = curvature(w);
  ParallelVerdict v;
  if (r.is_zero()) {
    v.parallelizable = true;
    v.symbolic = true;
    return v;
  }
  bool any = false;
  double worst = 0.0;
  for (const Point& p : samples) {
    double val;
    try {
      val = r.eval(p);
    } catch (const SingularEvaluation&) {
      continue;
    }
    if (!std::isfinite(val)) continue;
    any = true;
    worst = std::max(worst, std::abs(val));
  }
  if (!any)
    throw Error(ErrorKind::NoRegularSamples, "all samples are singular");
  v.max_residual = worst;
  v.parallelizable = worst <= tol;
  return v;
}

namespace {

double halton(unsigned long i, unsigned base) {
  double f = 1.0, r = 0.0;
  while (i > 0) {
    f /= base;
    r += f * (i % base);
    i /= base;
  }
  return r;
}

}  // namespace

std::vector<Point> regular_samples(const WebFunction& w, int count,
                                   unsigned seed,
                                   const std::map<std::string, double>& params) {
  validate(w);
  Expr f1 = w.f.derivative(Symbols::kX1);
  Expr f2 = w.f.derivative(Symbols::kX2);
  std::vector<Point> out;
  unsigned long idx = 1 + (unsigned long)seed * 7919;
  for (unsigned long tries = 0; (int)out.size() < count && tries < 10000u * (count + 1);
       ++tries, ++idx) {
    Point p;
    p.x1 = w.x1min + (w.x1max - w.x1min) * halton(idx, 2);
    p.x2 = w.x2min + (w.x2max - w.x2min) * halton(idx, 3);
    p.params = params;
    try {
      double v1 = f1.eval(p);
      double v2 = f2.eval(p);
      if (std::abs(v2) <= w.eps_reg || std::abs(v1) <= w.eps_reg) continue;
      double c = v1 / v2;
      if (std::abs(c) <= w.eps_reg || !std::isfinite(c)) continue;
    } catch (const SingularEvaluation&) {
      continue;
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::UnboundSymbol) throw;
      continue;
    }
    out.push_back(p);
  }
  if ((int)out.size() < count)
    throw Error(ErrorKind::NoRegularSamples,
                "could not find enough regular sample points");
  return out;
}

}  // namespace weblin
