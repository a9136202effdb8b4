#include "weblin/roots.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

namespace weblin {

std::vector<double> real_roots(const std::vector<double>& coeffs,
                               double rel_tol) {
  double scale = 0.0;
  for (double c : coeffs) scale = std::max(scale, std::abs(c));
  if (scale == 0.0) return {};

  std::vector<double> c = coeffs;
  while (!c.empty() && std::abs(c.back()) <= rel_tol * scale) c.pop_back();
  int n = (int)c.size() - 1;
  if (n < 1) return {};

  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (int i = 1; i < n; ++i) m(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) m(i, n - 1) = -c[i] / c[n];

  Eigen::EigenSolver<Eigen::MatrixXd> es(m, false);
  std::vector<double> roots;
  for (int i = 0; i < n; ++i) {
    std::complex<double> ev = es.eigenvalues()[i];
    if (std::abs(ev.imag()) < 1e-8 * (1.0 + std::abs(ev.real())))
      roots.push_back(ev.real());
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace weblin
