#pragma once

#include <vector>

#include "weblin/expr.hpp"

namespace weblin {

/// Truncated bivariate Taylor series around a fixed expansion point. The
/// coefficients are with respect to the offsets (dx1, dx2); index (i, j)
/// stores the coefficient of dx1^i * dx2^j for i + j <= order.
///
/// Binary operations promote to the larger order (zero padding is exact for
/// the smaller operand when it is a constant or a freshly created variable).
/// derivative() lowers the order by one since the top coefficients are no
/// longer trustworthy.
class Taylor {
 public:
  Taylor() : order_(0), c_(1, 0.0) {}
  static Taylor constant(double v, int order = 0);
  /// which is Symbols::kX1 or kX2; value is the expansion-point coordinate.
  static Taylor variable(int which, double value, int order);

  int order() const { return order_; }
  double value() const { return c_[0]; }
  double coeff(int i, int j) const;

  Taylor operator-() const;
  Taylor operator+(const Taylor& o) const;
  Taylor operator-(const Taylor& o) const;
  Taylor operator*(const Taylor& o) const;
  Taylor operator/(const Taylor& o) const;  // constant term of o must be nonzero

  Taylor derivative(int which) const;

  friend Taylor exp(const Taylor& t);
  friend Taylor log(const Taylor& t);
  friend Taylor sin(const Taylor& t);
  friend Taylor cos(const Taylor& t);

 private:
  static int slots(int order) { return (order + 1) * (order + 2) / 2; }
  static int idx(int i, int j) { return (i + j) * (i + j + 1) / 2 + j; }
  Taylor padded(int order) const;
  Taylor inverse() const;
  /// Evaluates sum d[k] * u^k where u = *this has zero constant term.
  Taylor nilpotent_horner(const std::vector<double>& d) const;

  int order_;
  std::vector<double> c_;
};

Taylor exp(const Taylor& t);
Taylor log(const Taylor& t);
Taylor sin(const Taylor& t);
Taylor cos(const Taylor& t);

template <>
struct ScalarOps<Taylor> {
  static Taylor from_rat(const Rat& r) { return Taylor::constant(r.get_d()); }
  static Taylor apply(FuncTag tag, const Taylor& x);
  static bool is_zero(const Taylor& x) { return x.value() == 0.0; }
  static bool is_nonpositive(const Taylor& x) { return x.value() <= 0.0; }
};

}  // namespace weblin
