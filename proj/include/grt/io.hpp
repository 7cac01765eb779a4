#pragma once

#include "grt/geometry.hpp"
#include "grt/field.hpp"

#include <stdexcept>
#include <string>

// Binary artifact formats. TFLD: one text header line
//   TFLD1 n=<n> m=<m> N=<N> L=<L> order=lex-nondecreasing
// followed by little-endian float64, node-major C-order, coefficient-minor.
// SINO: text header block ("SINO1" ... "DATA") carrying the signature, the
// explicit direction list, tangent count and p-grid, followed by float64
// payload indexed (omega, u, p). Both round-trip bit-exactly.

namespace grt {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void save_tfld(const std::string& path, const TensorField& f);
TensorField load_tfld(const std::string& path);

void save_sino(const std::string& path, const Sinogram& g);
Sinogram load_sino(const std::string& path);

} // namespace grt
