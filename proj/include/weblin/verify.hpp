#pragma once

#include <vector>

#include "weblin/candidates.hpp"
#include "weblin/expr.hpp"
#include "weblin/point.hpp"
#include "weblin/webgeom.hpp"

namespace weblin {

/// Symmetric deformation of the Chern connection. The two components that
/// vanish identically for linearizing deformations (L^2_11 and L^1_22) are
/// not stored.
struct DeformationTensor {
  Expr L1_11, L1_12, L2_12, L2_22;
};

/// Builds L from the base s and the auxiliary pair (t, z):
/// L^1_12 = z, L^2_12 = t, L^2_22 = 2z - s/c, L^1_11 = 2t + s.
DeformationTensor build_L(const WebFunction& w, const Expr& s, const Expr& t,
                          const Expr& z);

/// Inverse of build_L: recovers (s, t, z) as
/// s = 2c L^1_12 - c L^2_22, t = L^2_12, z = L^1_12.
struct DeformationParameters {
  Expr s, t, z;
};
DeformationParameters deformation_parameters(const WebFunction& w,
                                             const DeformationTensor& L);

/// Symmetric affine connection; G^i_jk is stored once per unordered (j,k).
struct Connection {
  Expr G1_11, G2_11, G1_12, G2_12, G1_22, G2_22;
};

Connection chern_connection(const WebFunction& w);
Connection deformed_connection(const WebFunction& w,
                               const DeformationTensor& L);

struct CheckResult {
  bool passed = false;
  double max_residual = 0.0;
  int used = 0;     // samples where every residual evaluated
  int skipped = 0;  // samples lost to singular evaluation
};

/// The four first-order compatibility equations the deformation must satisfy
/// (in terms of the web scalars gamma1, gamma2 and the curvature r).
CheckResult check_pde_system(const WebFunction& w, const DeformationTensor& L,
                             const std::vector<Point>& samples,
                             double tol = 1e-7);

/// Symmetric connections are torsion-free by construction; this guards the
/// two identically-zero components of a linearizing deformation.
bool check_torsion(const Connection& G);

/// Curvature tensor components R^i_j12 of the connection.
CheckResult check_flat(const Connection& G,
                       const std::vector<Point>& samples, double tol = 1e-7);

/// All three web foliations must be totally geodesic for the connection:
/// G^2_11 = 0, G^1_22 = 0, and nabla_X X parallel to X = d1 - c d2.
/// factor is the proportionality coefficient along the third foliation.
struct GeodesicCheck {
  CheckResult result;
  Expr factor;
};
GeodesicCheck check_geodesic_foliations(const WebFunction& w,
                                        const Connection& G,
                                        const std::vector<Point>& samples,
                                        double tol = 1e-7);

/// Full symbolic verification of a closed-form candidate (s, t, z).
struct Verdict {
  bool linearization = false;
  ClosedFormCheck frobenius;
  CheckResult pde;
  bool torsion_free = false;
  CheckResult flat;
  GeodesicCheck geodesic;
};
Verdict full_verdict(const WebFunction& w, const Expr& s, const Expr& t,
                     const Expr& z, const std::vector<Point>& samples);

/// Grid verification of an integrated solution: the four compatibility
/// equations with the L-derivatives taken by central differences.
struct GridCheck {
  bool passed = false;
  double max_residual = 0.0;
  int used = 0;
};
GridCheck check_pde_grid(const WebFunction& w, double base,
                         const FrobeniusSolution& sol,
                         const std::map<std::string, double>& params = {},
                         double tol = 1e-3);

}  // namespace weblin
