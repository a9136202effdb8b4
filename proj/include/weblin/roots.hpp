#pragma once

#include <vector>

namespace weblin {

/// Real roots of a real-coefficient polynomial given in ascending order
/// (coeffs[k] multiplies s^k). Uses the companion matrix after normalizing
/// by the leading coefficient; roots with |imag| < 1e-8 * (1 + |real|)
/// count as real. Returns roots sorted ascending. Negligible leading
/// coefficients (below rel_tol of the largest) are trimmed first.
std::vector<double> real_roots(const std::vector<double>& coeffs,
                               double rel_tol = 1e-12);

}  // namespace weblin
