#include "weblin/taylor.hpp"

#include <cmath>

namespace weblin {

Taylor Taylor::constant(double v, int order) {
  Taylor t;
  t.order_ = order;
  t.c_.assign(slots(order), 0.0);
  t.c_[0] = v;
  return t;
}

Taylor Taylor::variable(int which, double value, int order) {
  Taylor t = constant(value, order);
  if (order >= 1) t.c_[idx(which == Symbols::kX1 ? 1 : 0, which == Symbols::kX1 ? 0 : 1)] = 1.0;
  return t;
}

double Taylor::coeff(int i, int j) const {
  if (i < 0 || j < 0 || i + j > order_) return 0.0;
  return c_[idx(i, j)];
}

Taylor Taylor::padded(int order) const {
  if (order == order_) return *this;
  Taylor t;
  t.order_ = order;
  t.c_.assign(slots(order), 0.0);
  int keep = order < order_ ? order : order_;
  for (int d = 0; d <= keep; ++d)
    for (int j = 0; j <= d; ++j) t.c_[idx(d - j, j)] = c_[idx(d - j, j)];
  return t;
}

Taylor Taylor::operator-() const {
  Taylor t = *this;
  for (double& v : t.c_) v = -v;
  return t;
}

Taylor Taylor::operator+(const Taylor& o) const {
  int n = order_ > o.order_ ? order_ : o.order_;
  Taylor a = padded(n), b = o.padded(n);
  for (std::size_t k = 0; k < a.c_.size(); ++k) a.c_[k] += b.c_[k];
  return a;
}

Taylor Taylor::operator-(const Taylor& o) const { return *this + (-o); }

Taylor Taylor::operator*(const Taylor& o) const {
  int n = order_ > o.order_ ? order_ : o.order_;
  Taylor a = padded(n), b = o.padded(n);
  Taylor r = constant(0.0, n);
  for (int d1 = 0; d1 <= n; ++d1)
    for (int j1 = 0; j1 <= d1; ++j1) {
      double av = a.c_[idx(d1 - j1, j1)];
      if (av == 0.0) continue;
      for (int d2 = 0; d1 + d2 <= n; ++d2)
        for (int j2 = 0; j2 <= d2; ++j2)
          r.c_[idx(d1 - j1 + d2 - j2, j1 + j2)] += av * b.c_[idx(d2 - j2, j2)];
    }
  return r;
}

Taylor Taylor::nilpotent_horner(const std::vector<double>& d) const {
  // u = *this has zero constant term, so u^(order+1) truncates to zero and
  // the polynomial sum d[k] u^k is exact to this order.
  int n = order_;
  Taylor r = constant(d.empty() ? 0.0 : d[(int)d.size() - 1], n);
  for (int k = (int)d.size() - 2; k >= 0; --k)
    r = r * (*this) + constant(d[k], n);
  return r;
}

Taylor Taylor::inverse() const {
  double a0 = c_[0];
  Taylor u = *this;
  u.c_[0] = 0.0;
  for (double& v : u.c_) v /= a0;  // this = a0 * (1 + u)
  std::vector<double> d(order_ + 1);
  double s = 1.0;
  for (int k = 0; k <= order_; ++k, s = -s) d[k] = s / a0;
  return u.nilpotent_horner(d);
}

Taylor Taylor::operator/(const Taylor& o) const {
  int n = order_ > o.order_ ? order_ : o.order_;
  return padded(n) * o.padded(n).inverse();
}

Taylor Taylor::derivative(int which) const {
  int n = order_ > 0 ? order_ - 1 : 0;
  Taylor r = constant(0.0, n);
  for (int d = 0; d <= n; ++d)
    for (int j = 0; j <= d; ++j) {
      int i = d - j;
      r.c_[idx(i, j)] = which == Symbols::kX1 ? (i + 1) * coeff(i + 1, j)
                                              : (j + 1) * coeff(i, j + 1);
    }
  return r;
}

Taylor exp(const Taylor& t) {
  Taylor u = t;
  double a0 = u.c_[0];
  u.c_[0] = 0.0;
  std::vector<double> d(t.order_ + 1);
  double e = std::exp(a0);
  for (int k = 0; k <= t.order_; ++k) {
    d[k] = e;
    e /= (k + 1);
  }
  return u.nilpotent_horner(d);
}

Taylor log(const Taylor& t) {
  double a0 = t.c_[0];
  Taylor u = t;
  u.c_[0] = 0.0;
  for (double& v : u.c_) v /= a0;
  std::vector<double> d(t.order_ + 1);
  d[0] = std::log(a0);
  double s = 1.0;
  for (int k = 1; k <= t.order_; ++k, s = -s) d[k] = s / k;
  return u.nilpotent_horner(d);
}

Taylor sin(const Taylor& t) {
  Taylor u = t;
  double a0 = u.c_[0];
  u.c_[0] = 0.0;
  std::vector<double> d(t.order_ + 1);
  double fact = 1.0;
  for (int k = 0; k <= t.order_; ++k) {
    double base = (k % 4 == 0)   ? std::sin(a0)
                  : (k % 4 == 1) ? std::cos(a0)
                  : (k % 4 == 2) ? -std::sin(a0)
                                 : -std::cos(a0);
    d[k] = base / fact;
    fact *= (k + 1);
  }
  return u.nilpotent_horner(d);
}

Taylor cos(const Taylor& t) {
  Taylor u = t;
  double a0 = u.c_[0];
  u.c_[0] = 0.0;
  std::vector<double> d(t.order_ + 1);
  double fact = 1.0;
  for (int k = 0; k <= t.order_; ++k) {
    double base = (k % 4 == 0)   ? std::cos(a0)
                  : (k % 4 == 1) ? -std::sin(a0)
                  : (k % 4 == 2) ? -std::cos(a0)
                                 : std::sin(a0);
    d[k] = base / fact;
    fact *= (k + 1);
  }
  return u.nilpotent_horner(d);
}

Taylor ScalarOps<Taylor>::apply(FuncTag tag, const Taylor& x) {
  switch (tag) {
    case FuncTag::Exp: return exp(x);
    case FuncTag::Log: return log(x);
    case FuncTag::Sin: return sin(x);
    case FuncTag::Cos: return cos(x);
  }
  return x;
}

}  // namespace weblin
