#pragma once

#include "grt/symtensor.hpp"

#include <complex>
#include <span>
#include <vector>

// Direction/offset grids on the hyperplane parameter space and the sampled
// transform data container.

namespace grt {

// Transform weight: either the (omega, u) parametrization with degrees
// (l1, l2), or the frame parametrization with a full degree signature
// (l_1, ..., l_n) built on the deterministic tangent frame of omega.
struct Signature {
  enum Kind { PairDegrees, FrameDegrees } kind = FrameDegrees;
  int l1 = 0, l2 = 0;
  std::vector<int> degrees;

  static Signature pair_degrees(int l1, int l2);
  static Signature frame_degrees(std::vector<int> degrees);
  int order() const;
  bool uses_u_axis() const { return kind == PairDegrees; }
};

struct DirectionGrid {
  int n = 2;
  std::vector<Vec> omegas;        // antipodally closed
  std::vector<Frame> frames;      // frame(omega), cached
  std::vector<int> antipode;      // index of -omega
  int u_count = 2;                // tangent directions per omega (u-axis mode)
  std::vector<double> p;          // symmetric offsets, spacing hp
  double hp = 0.1;

  std::size_t dirs() const { return omegas.size(); }
  // tangent direction ui of omega j (cos/sin combination of the frame)
  Vec u_vector(std::size_t j, int ui) const;
  int u_antipode(int ui) const { return (ui + u_count / 2) % u_count; }
  std::size_t p_index_of_neg(std::size_t pi) const { return p.size() - 1 - pi; }
  void validate() const;
};

// Equiangular circle (n=2) or antipode-completed Fibonacci sphere (n=3+);
// offsets (-P..P)*hp with P = round(p_max/hp).
DirectionGrid make_direction_grid(int n, int num_dirs, double p_max, double hp, int u_count = 0);

struct Sinogram {
  Signature sig;
  DirectionGrid dgrid;
  std::vector<double> values; // (omega, u, p) row-major; u axis has extent 1 in frame mode

  Sinogram() = default;
  Sinogram(const Signature& s, const DirectionGrid& g);
  int u_extent() const { return sig.uses_u_axis() ? dgrid.u_count : 1; }
  std::size_t row_len() const { return dgrid.p.size(); }
  double* row(std::size_t dir, int ui);
  const double* row(std::size_t dir, int ui) const;
  double& at(std::size_t dir, int ui, std::size_t pi);
  double at(std::size_t dir, int ui, std::size_t pi) const;
  double max_abs() const;
};

// ---- 1-D transforms along the offset axis ----------------------------------
// Continuum convention: ghat(sigma) = (2pi)^{-1/2} \int g(p) e^{-i p sigma} dp.
// Rows have odd length M; slot l carries sigma = 2 pi l' / (M hp), l' signed.

double sigma_of_slot(std::size_t l, std::size_t M, double hp);
std::vector<std::complex<double>> p_to_sigma(std::span<const double> row, double hp);
std::vector<double> sigma_to_p(std::span<const std::complex<double>> srow, double hp,
                               double* imag_residue = nullptr);
// order-fold spectral d/dp of a sampled row
std::vector<double> p_derivative(std::span<const double> row, double hp, int order);

} // namespace grt
