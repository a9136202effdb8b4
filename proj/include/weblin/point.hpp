#pragma once

#include <cmath>
#include <map>
#include <string>

namespace weblin {

/// Evaluation point: coordinates plus bindings for named parameters.
struct Point {
  double x1 = 0.0;
  double x2 = 0.0;
  std::map<std::string, double> params;

  bool finite() const { return std::isfinite(x1) && std::isfinite(x2); }
};

}  // namespace weblin
