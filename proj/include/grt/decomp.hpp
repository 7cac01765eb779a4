#pragma once

#include "grt/field.hpp"

// The inner derivative d, divergence delta, the solenoidal-potential
// decomposition f = sum_i d^i v_i, and the delta^i d^i solver. Everything is
// per-frequency dense linear algebra on the compressed coefficients.

namespace grt {

struct DecompositionResult {
  std::vector<TensorField> v; // v[i] has order m - i
  double residual = 0;        // rel. L2 norm of f - sum d^i v_i
  std::vector<double> solenoidality; // max_xi |xi -| vhat_i| / |vhat_i|, i < m
};

// Symmetrized gradient (spectral): vhat -> sigma(i xi (x) vhat).
TensorField apply_d(const TensorField& v);

// Divergence (spectral): uhat -> i xi -| uhat (contract last index).
TensorField apply_delta(const TensorField& u);

// sum_i d^i v[i]
TensorField assemble_potentials(const std::vector<TensorField>& v);

// delta^i d^i as a single per-frequency matrix.
TensorField delta_d_apply(const TensorField& v, int i);

DecompositionResult decompose(const TensorField& f);

struct SolveOptions {
  bool check_range = true;
  double range_tol = 1e-6; // rel. per-frequency residual, weighted by |what|
};

struct SolveReport {
  double worst_residual = 0;
  Vec worst_xi;
};

// Per-frequency solve of delta^i d^i v = w; if solenoidal, v is constrained to
// xi -| vhat = 0. The zero frequency of the solution is dropped for i >= 1.
TensorField solve_delta_d(const TensorField& w, int i, bool solenoidal,
                          const SolveOptions& opt = {}, SolveReport* report = nullptr);

// Real matrix of u -> sigma(xi (x) u) on compressed coefficients (k -> k+1).
Eigen::MatrixXd d_symbol_matrix(int n, int k, const Vec& xi);
// Real matrix of u -> xi -| u (k -> k-1).
Eigen::MatrixXd contraction_matrix(int n, int k, const Vec& xi);
// Columns: orthonormal-ish basis of {u in S^k : xi -| u = 0} built from
// symmetric products of the tangent frame of xi.
Eigen::MatrixXd solenoidal_basis(int n, int k, const Vec& xi);

// L2-orthogonal projection onto the per-frequency solenoidal subspace
// (identity at xi = 0). Used to build solenoidal test fields.
TensorField solenoidal_project(const TensorField& f);

} // namespace grt
