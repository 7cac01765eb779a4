#pragma once

#include "grt/field.hpp"
#include "grt/geometry.hpp"

// Forward transforms: hyperplane quadrature and the Fourier-slice route.
// The two implementations are independent and cross-validate each other.

namespace grt {

struct QuadratureOptions {
  int upsample = 2; // spectral refinement of the field before interpolation
};

struct FourierOptions {
  int oversample = 0; // 0 -> 4 for n = 2, 2 for n >= 3
};

// Classical scalar Radon transform (m = 0 field).
Sinogram radon_scalar(const TensorField& f, const DirectionGrid& dgrid,
                      const QuadratureOptions& opt = {});

// One scalar sinogram per stored coefficient.
std::vector<Sinogram> radon_componentwise(const TensorField& f, const DirectionGrid& dgrid,
                                          const QuadratureOptions& opt = {});

// Generalized Radon transform by hyperplane quadrature.
Sinogram grt(const TensorField& f, const Signature& sig, const DirectionGrid& dgrid,
             const QuadratureOptions& opt = {});

// Same transform through the Fourier slice identity:
// ghat(omega, sigma, u) = (2pi)^{(n-1)/2} <fhat(sigma omega), weight tensor>.
Sinogram grt_fourier(const TensorField& f, const Signature& sig, const DirectionGrid& dgrid,
                     const FourierOptions& opt = {});

// Same, reusing a prepared spectrum (amortizes the FFT across signatures).
Sinogram grt_fourier(const FourierSampler& sampler, const Signature& sig,
                     const DirectionGrid& dgrid);

// Direction weight tensor of a signature at direction j (pair mode: tangent ui).
SymTensor signature_tensor(const Signature& sig, const DirectionGrid& dgrid, std::size_t j, int ui);

// Quadrature of a scalar sample grid over the hyperplane <x, omega> = p,
// Catmull-Rom sampling with zero extension. Exposed for reuse by checks.
double hyperplane_integral(const std::vector<double>& scalar, const Grid& grid, const Frame& fr,
                           double p);

} // namespace grt
