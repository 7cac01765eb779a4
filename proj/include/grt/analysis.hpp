#pragma once

#include "grt/invert.hpp"

#include <string>

// Weighted Sobolev norms, the isometry check between data-space and
// field-space norms, the range characterization verifier, and the unique
// continuation experiments.

namespace grt {

struct SobolevIndex {
  double s = 0;
  double t = 0; // requires t > -n/2
};

// ---- Weighted Sobolev norms ------------------------------------------------
// H^s_t(R^n):  int |y|^{2t} (1+|y|^2)^{s-t} |fhat(y)|^2 dy  (multiplicity-
// weighted for tensors). The tensor-weighted variant replaces |fhat|^2 by the
// inner sphere integral over v in S^{n-1} cap y^perp of
// |<fhat(y), y^{sym l1} sym v^{sym l2}>|^2 (n=2: two-point sum, n=3: 32-point
// arclength rule).
double weighted_norm(const TensorField& f, const SobolevIndex& idx);
double weighted_norm_tensor(const TensorField& f, const SobolevIndex& idx, int l1, int l2);

// Data-space norm on S^{n-1} x R (frame-mode rows) or Z (tangent axis
// included): prefactor 1/(2 (2pi)^{n-1}), direction weight 2pi/J or 4pi/J,
// tangent weight = counting measure (n=2) or arclength 2pi/u_count (n=3).
double weighted_norm(const Sinogram& g, const SobolevIndex& idx);

struct ReshetnyakResult {
  double lhs = 0; // data-space norm of the transform
  double rhs = 0; // tensor-weighted field norm
  double rel_gap = 0;
};

// || R^m_{l1 l2} f ||_{H^{s+m+(n-1)/2}_{t+m+(n-1)/2}} vs || f ||_{H^s_{t,l1l2}}.
ReshetnyakResult reshetnyak_check(const TensorField& f, int l1, int l2, const SobolevIndex& idx,
                                  const DirectionGrid& dgrid);

struct MomentFit {
  int k = 0;
  Vec coefficients;       // minimum-norm monomial fit (judged by residual only)
  double rel_residual = 0;
};

struct RangeReport {
  double parity_defect = 0;
  std::vector<MomentFit> moment_fits;
  double parity_tol = 1e-10;
  double moment_tol = 1e-3;
  bool verdict = false;
};

// Parity ((-1)^m) and homogeneous-moment conditions for pair-mode data.
RangeReport range_check(const Sinogram& g, int k_max, double parity_tol = 1e-10,
                        double moment_tol = 1e-3);

struct UcpReport {
  std::string region;      // description of U
  double interior_norm = 0;   // rel. L2 of the recovered component on U
  double exterior_norm = 0;   // rel. L2 on the shell outside U
  double data_norm_on_U_planes = 0;
  double margin = 0;          // even-n probe: data on U-planes / sup norm
  bool verdict = false;
};

// Odd-n non-uniqueness counterexample: data g(omega, p) = h(p) with
// supp(h) in (-a,-1) u (1,a) and parity matching the normal degree i; the
// inversion pipeline recovers a component that vanishes on the unit ball but
// not outside it.
UcpReport ucp_counterexample(int m, int i, double a, const Grid& grid, const DirectionGrid& dgrid,
                             double ratio_tol = 5e-2, double exterior_min = 1e-3);

// The smooth profile used above (exposed for tests): parity (-1)^i bumps
// supported in 1 < |p| < a.
double ucp_profile(double p, double a, int i);

// Even-n contrapositive probe: a shell-supported field with v_i nonzero must
// produce data with nonzero mass on planes meeting the unit ball.
UcpReport ucp_uniqueness_experiment(int m, int i, const TensorField& f, const DirectionGrid& dgrid,
                                    double margin_tol = 1e-3);

// Shell-supported solenoidal vector field on R^2 (rotated gradient of a
// shell-supported scalar): div-free by construction.
TensorField shell_solenoidal_field(const Grid& grid, std::uint64_t seed);

// Shell-supported scalar phantom (bumps centered at radius ~1.5).
TensorField shell_scalar_field(const Grid& grid, std::uint64_t seed);

} // namespace grt
