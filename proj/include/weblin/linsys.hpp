#pragma once

#include "json.hpp"
#include "weblin/cascade.hpp"

namespace weblin {

/// Fully symbolic pipeline for a web. Throws ParallelizableBranch when the
/// curvature normalizes to zero.
Cascade<Expr> run_cascade_symbolic(const WebFunction& w);

/// Per-point pipeline on truncated series. order is the series truncation
/// order at the expansion point.
Cascade<Taylor> run_cascade_at(const WebFunction& w, const Point& p,
                               int order = 16);

/// Evaluates the coefficients of a symbolic s-polynomial at a point.
std::vector<double> spoly_eval(const SPoly<Expr>& q, const Point& p);
std::vector<double> spoly_eval(const SPoly<Taylor>& q, const Point& p);

nlohmann::json spoly_to_json(const SPoly<Expr>& q);
nlohmann::json jetpoly_to_json(const JetPoly<Expr>& p);

}  // namespace weblin
