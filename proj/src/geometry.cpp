#include "grt/geometry.hpp"

#include "grt/fft.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace grt {

Signature Signature::pair_degrees(int l1, int l2) {
  if (l1 < 0 || l2 < 0) throw std::invalid_argument("Signature: negative degree");
  Signature s;
  s.kind = PairDegrees;
  s.l1 = l1;
  s.l2 = l2;
  return s;
}

Signature Signature::frame_degrees(std::vector<int> degrees) {
  Signature s;
  s.kind = FrameDegrees;
  for (int d : degrees)
    if (d < 0) throw std::invalid_argument("Signature: negative degree");
  s.degrees = std::move(degrees);
  return s;
}

int Signature::order() const {
  if (kind == PairDegrees) return l1 + l2;
  int m = 0;
  for (int d : degrees) m += d;
  return m;
}

Vec DirectionGrid::u_vector(std::size_t j, int ui) const {
  const Frame& fr = frames[j];
  if (n == 2) {
    return ui == 0 ? fr.tangent[0] : Vec(-fr.tangent[0]);
  }
  const double a = 2.0 * std::numbers::pi * ui / u_count;
  Vec u = std::cos(a) * fr.tangent[0] + std::sin(a) * fr.tangent[1];
  return u;
}

void DirectionGrid::validate() const {
  if (omegas.size() != frames.size() || omegas.size() != antipode.size())
    throw std::invalid_argument("DirectionGrid: inconsistent tables");
  if (u_count % 2 != 0) throw std::invalid_argument("DirectionGrid: u_count must be even");
  if (p.size() % 2 != 1) throw std::invalid_argument("DirectionGrid: offset count must be odd");
}

DirectionGrid make_direction_grid(int n, int num_dirs, double p_max, double hp, int u_count) {
  if (n < 2) throw std::invalid_argument("make_direction_grid: n must be >= 2");
  if (num_dirs < 2 || num_dirs % 2 != 0)
    throw std::invalid_argument("make_direction_grid: need an even direction count");
  DirectionGrid g;
  g.n = n;
  g.hp = hp;
  g.u_count = u_count > 0 ? u_count : (n == 2 ? 2 : 32);

  const int half = num_dirs / 2;
  if (n == 2) {
    for (int j = 0; j < half; ++j) {
      double th = std::numbers::pi * j / half; // upper half circle
      Vec w(2);
      w << std::cos(th), std::sin(th);
      g.omegas.push_back(w);
    }
  } else if (n == 3) {
    // Fibonacci lattice on the half sphere, antipodes appended below
    const double ga = std::numbers::pi * (3.0 - std::sqrt(5.0));
    for (int j = 0; j < half; ++j) {
      double z = 1.0 - (j + 0.5) / half; // z in (0, 1]
      double r = std::sqrt(std::max(0.0, 1.0 - z * z));
      double th = ga * j;
      Vec w(3);
      w << r * std::cos(th), r * std::sin(th), z;
      g.omegas.push_back(w);
    }
  } else {
    throw std::invalid_argument("make_direction_grid: only n = 2, 3 supported");
  }
  for (int j = 0; j < half; ++j) g.omegas.push_back(Vec(-g.omegas[static_cast<std::size_t>(j)]));
  for (int j = 0; j < num_dirs; ++j) {
    g.antipode.push_back((j + half) % num_dirs);
    g.frames.push_back(frame(g.omegas[static_cast<std::size_t>(j)]));
  }
  const int P = static_cast<int>(std::lround(p_max / hp));
  for (int k = -P; k <= P; ++k) g.p.push_back(k * hp);
  g.validate();
  return g;
}

Sinogram::Sinogram(const Signature& s, const DirectionGrid& g) : sig(s), dgrid(g) {
  values.assign(g.dirs() * static_cast<std::size_t>(u_extent()) * g.p.size(), 0.0);
}

double* Sinogram::row(std::size_t dir, int ui) {
  return values.data() + (dir * static_cast<std::size_t>(u_extent()) + static_cast<std::size_t>(ui)) * row_len();
}
const double* Sinogram::row(std::size_t dir, int ui) const {
  return values.data() + (dir * static_cast<std::size_t>(u_extent()) + static_cast<std::size_t>(ui)) * row_len();
}
double& Sinogram::at(std::size_t dir, int ui, std::size_t pi) { return row(dir, ui)[pi]; }
double Sinogram::at(std::size_t dir, int ui, std::size_t pi) const { return row(dir, ui)[pi]; }

double Sinogram::max_abs() const {
  double m = 0;
  for (double v : values) m = std::max(m, std::abs(v));
  return m;
}

double sigma_of_slot(std::size_t l, std::size_t M, double hp) {
  auto ls = static_cast<std::ptrdiff_t>(l);
  auto Ms = static_cast<std::ptrdiff_t>(M);
  std::ptrdiff_t signedl = ls <= (Ms - 1) / 2 ? ls : ls - Ms;
  return 2.0 * std::numbers::pi * static_cast<double>(signedl) / (static_cast<double>(M) * hp);
}

std::vector<std::complex<double>> p_to_sigma(std::span<const double> row, double hp) {
  const std::size_t M = row.size();
  if (M % 2 != 1) throw std::invalid_argument("p_to_sigma: row length must be odd");
  const std::size_t P = (M - 1) / 2;
  std::vector<std::complex<double>> buf(M);
  for (std::size_t k = 0; k < M; ++k) buf[k] = row[k];
  fft_1d(buf, -1);
  const double scale = hp / std::sqrt(2.0 * std::numbers::pi);
  for (std::size_t l = 0; l < M; ++l) {
    double ph = 2.0 * std::numbers::pi * static_cast<double>(P) * static_cast<double>(l) / static_cast<double>(M);
    buf[l] *= scale * std::complex<double>(std::cos(ph), std::sin(ph));
  }
  return buf;
}

std::vector<double> sigma_to_p(std::span<const std::complex<double>> srow, double hp,
                               double* imag_residue) {
  const std::size_t M = srow.size();
  if (M % 2 != 1) throw std::invalid_argument("sigma_to_p: row length must be odd");
  const std::size_t P = (M - 1) / 2;
  std::vector<std::complex<double>> buf(M);
  for (std::size_t l = 0; l < M; ++l) {
    double ph = -2.0 * std::numbers::pi * static_cast<double>(P) * static_cast<double>(l) / static_cast<double>(M);
    buf[l] = srow[l] * std::complex<double>(std::cos(ph), std::sin(ph));
  }
  fft_1d(buf, +1);
  const double dsigma = 2.0 * std::numbers::pi / (static_cast<double>(M) * hp);
  const double scale = dsigma / std::sqrt(2.0 * std::numbers::pi);
  std::vector<double> out(M);
  double re2 = 0, im2 = 0;
  for (std::size_t k = 0; k < M; ++k) {
    out[k] = scale * buf[k].real();
    re2 += buf[k].real() * buf[k].real();
    im2 += buf[k].imag() * buf[k].imag();
  }
  if (imag_residue) *imag_residue = re2 > 0 ? std::sqrt(im2 / re2) : std::sqrt(im2);
  return out;
}

std::vector<double> p_derivative(std::span<const double> row, double hp, int order) {
  if (order == 0) return std::vector<double>(row.begin(), row.end());
  auto srow = p_to_sigma(row, hp);
  const std::size_t M = srow.size();
  const std::complex<double> I(0, 1);
  for (std::size_t l = 0; l < M; ++l) {
    std::complex<double> f = std::pow(I * sigma_of_slot(l, M, hp), order);
    srow[l] *= f;
  }
  return sigma_to_p(srow, hp);
}

} // namespace grt
