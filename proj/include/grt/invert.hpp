#pragma once

#include "grt/decomp.hpp"
#include "grt/radon.hpp"

#include <map>

// Inversion: scalar Radon inversion by Fourier gridding, and the full
// pipeline recovering the potentials v_i of f = sum_i d^i v_i from the
// complete frame-mode transform data.

namespace grt {

// Complete frame-mode dataset: one sinogram per degree signature
// (l_1, ..., l_n), sum = m, all on a shared direction grid.
struct GrtDataset {
  int n = 2;
  int m = 0;
  DirectionGrid dgrid;
  std::map<std::vector<int>, Sinogram> data;

  const Sinogram& at(const std::vector<int>& degrees) const;
  // throws with the missing signature spelled out
  void require_complete() const;
  // signatures with last degree = i, in canonical order
  std::vector<std::vector<int>> signatures_with_normal_degree(int i) const;
};

enum class ForwardMethod { Quadrature, FourierSlice };

// All frame-mode sinograms of f on dgrid.
GrtDataset make_dataset(const TensorField& f, const DirectionGrid& dgrid,
                        ForwardMethod method = ForwardMethod::FourierSlice);

struct InversionOptions {
  double range_tol = 1e-3; // per-frequency residual gate inside solve_delta_d
  bool check_range = false;
};

struct ComponentReport {
  double gridding_imag_residue = 0; // imag/real ratio after the inverse FFT
  SolveReport solve;
};

struct InversionReport {
  std::vector<ComponentReport> stages;
};

// Classical scalar Radon inversion of one scalar data row set by direct
// Fourier gridding onto `grid` frequencies (Catmull-Rom splat, exact
// |sigma|^{n-1} cell weights, deapodization).
TensorField radon_invert(const Sinogram& sino, const Grid& grid, double* imag_residue = nullptr);

// Componentwise sinograms of delta^i d^i v_i assembled from the data rows
// with normal degree i (spectral d/dp^i, dual-basis multinomial weights).
std::vector<Sinogram> assemble_normal_data(const GrtDataset& ds, int i);

// v_i from the dataset: assemble -> gridding inversion per component ->
// delta^i d^i solve (solenoidal side condition for i < m).
TensorField recover_component(const GrtDataset& ds, int i, const Grid& grid,
                              const InversionOptions& opt = {}, ComponentReport* report = nullptr);

// Full reconstruction f = sum_i d^i v_i.
TensorField invert_full(const GrtDataset& ds, const Grid& grid, const InversionOptions& opt = {},
                        InversionReport* report = nullptr);

} // namespace grt
