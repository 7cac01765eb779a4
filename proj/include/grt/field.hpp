#pragma once

#include "grt/symtensor.hpp"

#include <array>
#include <complex>
#include <vector>

// Sampled symmetric tensor fields on uniform grids over [-L, L]^n,
// polynomial-times-Gaussian phantoms with closed-form Fourier transforms,
// and the discrete Fourier machinery (continuum (2pi)^{-n/2} convention).

namespace grt {

struct Grid {
  int n = 2;
  double L = 3.0;    // domain [-L, L]^n
  int N = 64;        // samples per axis, even

  double h() const { return 2.0 * L / N; }
  double dxi() const { return M_PI / L; } // frequency spacing
  double nyquist() const { return M_PI * N / (2.0 * L); }
  std::size_t nodes() const;
  double coord(int idx) const { return -L + idx * h(); }
  // signed frequency index of FFT-order slot k
  int freq_index(int k) const { return k < N / 2 ? k : k - N; }
  double freq(int k) const { return freq_index(k) * dxi(); }

  std::size_t flatten(const std::vector<int>& idx) const;
  std::vector<int> unflatten(std::size_t flat) const;
  void validate() const;
  bool operator==(const Grid&) const = default;
};

struct TensorField {
  Grid grid;
  int m = 0;
  std::vector<double> data; // node-major, coefficient-minor

  TensorField() = default;
  TensorField(const Grid& g, int order);
  std::size_t dim() const { return sym_dim(grid.n, m); }
  double& at(std::size_t node, std::size_t ci) { return data[node * dim() + ci]; }
  double at(std::size_t node, std::size_t ci) const { return data[node * dim() + ci]; }
};

struct SpectralField {
  Grid grid;
  int m = 0;
  std::vector<std::complex<double>> data; // same layout, FFT frequency order

  SpectralField() = default;
  SpectralField(const Grid& g, int order);
  std::size_t dim() const { return sym_dim(grid.n, m); }
  std::complex<double>& at(std::size_t node, std::size_t ci) { return data[node * dim() + ci]; }
  std::complex<double> at(std::size_t node, std::size_t ci) const { return data[node * dim() + ci]; }
};

// Continuum-scaled transforms: forward approximates
// (2pi)^{-n/2} \int f(x) e^{-i x.xi} dx on the grid frequencies.
SpectralField dft_forward(const TensorField& f);
TensorField dft_inverse(const SpectralField& F);
// Inverse keeping the imaginary part (diagnostics for inconsistent data).
TensorField dft_inverse(const SpectralField& F, double* imag_residue);

// Field arithmetic and norms.
void axpy(double a, const TensorField& x, TensorField& y);
double l2_norm(const TensorField& f);      // sqrt(sum_x <f,f> h^n)
double l2_norm(const SpectralField& F);    // sqrt(sum_xi |F|^2 dxi^n), multiplicity-weighted
double max_abs(const TensorField& f);

// ---- Phantoms: p(x - c) * exp(-|x - c|^2 / w^2) ----------------------------

struct PhantomTerm {
  std::size_t component = 0;    // compressed coefficient index
  double coef = 1.0;
  std::vector<int> expo;        // monomial exponents in (x - c), length n
  std::vector<double> center;   // length n
  double width = 1.0;
};

struct PhantomSpec {
  int n = 2;
  int m = 0;
  std::vector<PhantomTerm> terms;
};

// Sampled phantom; throws if a term's Gaussian mass inside the cube
// falls below 1 - 1e-8.
TensorField make_phantom(const Grid& grid, const PhantomSpec& spec);

// Closed-form Fourier transform of the phantom at frequency xi.
CVec phantom_fourier(const PhantomSpec& spec, const Vec& xi);

// Deterministic seedable RNG for test/phantom corpora.
struct SplitMix64 {
  std::uint64_t state;
  explicit SplitMix64(std::uint64_t seed) : state(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double uniform(double a, double b) { return a + (b - a) * uniform(); }
  int below(int k) { return static_cast<int>(next() % static_cast<std::uint64_t>(k)); }
};

// Seeded random phantom corpus member: `terms` Gaussian bumps per component,
// monomial degree <= 2. zero_mean pairs every bump with a negated copy so the
// DC component vanishes.
PhantomSpec random_phantom(int n, int m, double L, std::uint64_t seed, int terms = 2,
                           bool zero_mean = false);

// ---- Polar sampling of the Fourier transform -------------------------------

// Catmull-Rom weights at fractional offset t in [0,1) for taps {-1,0,1,2}.
std::array<double, 4> catmull_rom_weights(double t);

// Holds an oversampled spectrum (field zero-embedded in a cube enlarged by
// `oversample`) and evaluates F(sigma * omega) by separable cubic
// interpolation. Requested |sigma| must stay inside the Nyquist box.
class FourierSampler {
public:
  FourierSampler(const TensorField& f, int oversample = 4);

  int n() const { return spec_.grid.n; }
  std::size_t dim() const { return spec_.dim(); }
  double nyquist() const { return base_nyquist_; }
  // componentwise F(sigma * omega); coefficient vector in compressed layout
  CVec sample(const Vec& omega, double sigma) const;

private:
  SpectralField spec_;
  double base_nyquist_;
};

// Field resampled on a grid refined by `factor` (same L), via spectral
// zero-padding. Used to sharpen interpolation in hyperplane quadrature.
TensorField upsample(const TensorField& f, int factor);

} // namespace grt
