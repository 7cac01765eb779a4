#include "grt/radon.hpp"

#include "grt/parallel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace grt {

namespace {

// Catmull-Rom point sample of a scalar C-order grid, zero outside the cube.
double sample_scalar(const std::vector<double>& data, const Grid& g, const double* x) {
  const int n = g.n;
  int base[3];
  std::array<double, 4> w[3];
  for (int d = 0; d < n; ++d) {
    double u = (x[d] + g.L) / g.h();
    double fl = std::floor(u);
    base[d] = static_cast<int>(fl);
    if (base[d] < -3 || base[d] > g.N + 1) return 0.0;
    w[d] = catmull_rom_weights(u - fl);
  }
  double acc = 0;
  if (n == 2) {
    for (int a = 0; a < 4; ++a) {
      int i0 = base[0] + a - 1;
      if (i0 < 0 || i0 >= g.N) continue;
      double wa = w[0][static_cast<std::size_t>(a)];
      const double* rowp = data.data() + static_cast<std::size_t>(i0) * static_cast<std::size_t>(g.N);
      for (int b = 0; b < 4; ++b) {
        int i1 = base[1] + b - 1;
        if (i1 < 0 || i1 >= g.N) continue;
        acc += wa * w[1][static_cast<std::size_t>(b)] * rowp[i1];
      }
    }
  } else {
    const std::size_t NN = static_cast<std::size_t>(g.N);
    for (int a = 0; a < 4; ++a) {
      int i0 = base[0] + a - 1;
      if (i0 < 0 || i0 >= g.N) continue;
      for (int b = 0; b < 4; ++b) {
        int i1 = base[1] + b - 1;
        if (i1 < 0 || i1 >= g.N) continue;
        double wab = w[0][static_cast<std::size_t>(a)] * w[1][static_cast<std::size_t>(b)];
        const double* rowp = data.data() + (static_cast<std::size_t>(i0) * NN + static_cast<std::size_t>(i1)) * NN;
        for (int c = 0; c < 4; ++c) {
          int i2 = base[2] + c - 1;
          if (i2 < 0 || i2 >= g.N) continue;
          acc += wab * w[2][static_cast<std::size_t>(c)] * rowp[i2];
        }
      }
    }
  }
  return acc;
}

} // namespace

double hyperplane_integral(const std::vector<double>& scalar, const Grid& grid, const Frame& fr,
                           double p) {
  const int n = grid.n;
  const double step = grid.h();
  const double T = grid.L * std::sqrt(static_cast<double>(n)) + step;
  const int K = static_cast<int>(std::ceil(T / step));
  double x[3];
  double acc = 0;
  if (n == 2) {
    for (int a = -K; a <= K; ++a) {
      double t = a * step;
      for (int d = 0; d < 2; ++d) x[d] = p * fr.omega[d] + t * fr.tangent[0][d];
      acc += sample_scalar(scalar, grid, x);
    }
    return acc * step;
  }
  for (int a = -K; a <= K; ++a) {
    for (int b = -K; b <= K; ++b) {
      double ta = a * step, tb = b * step;
      bool inside = true;
      for (int d = 0; d < 3; ++d) {
        x[d] = p * fr.omega[d] + ta * fr.tangent[0][d] + tb * fr.tangent[1][d];
        if (std::abs(x[d]) > grid.L + 2 * step) inside = false;
      }
      if (!inside) continue;
      acc += sample_scalar(scalar, grid, x);
    }
  }
  return acc * step * step;
}

SymTensor signature_tensor(const Signature& sig, const DirectionGrid& dgrid, std::size_t j, int ui) {
  if (sig.kind == Signature::PairDegrees) {
    SymTensor w = sym_power(dgrid.omegas[j], sig.l1);
    return sym_product(w, sym_power(dgrid.u_vector(j, ui), sig.l2));
  }
  if (static_cast<int>(sig.degrees.size()) != dgrid.n)
    throw std::invalid_argument("signature_tensor: degree signature has wrong length");
  return frame_tensor(dgrid.frames[j], sig.degrees);
}

Sinogram grt(const TensorField& f, const Signature& sig, const DirectionGrid& dgrid,
             const QuadratureOptions& opt) {
  if (sig.order() != f.m) throw std::invalid_argument("grt: signature order does not match field");
  TensorField fine = upsample(f, opt.upsample);
  const Grid& g = fine.grid;
  const std::size_t dim = fine.dim();
  const Vec& mult = SymIndexTable::get(g.n, f.m).multiplicities();

  Sinogram out(sig, dgrid);
  const int U = out.u_extent();
  const std::size_t P = out.row_len();
  parallel_for(dgrid.dirs(), [&](std::size_t lo, std::size_t hi) {
    std::vector<double> scalar(g.nodes());
    for (std::size_t j = lo; j < hi; ++j) {
      for (int ui = 0; ui < U; ++ui) {
        SymTensor w = signature_tensor(sig, dgrid, j, ui);
        Vec wv = w.c.cwiseProduct(mult);
        for (std::size_t node = 0; node < g.nodes(); ++node) {
          double acc = 0;
          const double* fp = fine.data.data() + node * dim;
          for (std::size_t ci = 0; ci < dim; ++ci) acc += fp[ci] * wv[static_cast<Eigen::Index>(ci)];
          scalar[node] = acc;
        }
        for (std::size_t pi = 0; pi < P; ++pi)
          out.at(j, ui, pi) = hyperplane_integral(scalar, g, dgrid.frames[j], dgrid.p[pi]);
      }
    }
  });
  return out;
}

Sinogram radon_scalar(const TensorField& f, const DirectionGrid& dgrid,
                      const QuadratureOptions& opt) {
  if (f.m != 0) throw std::invalid_argument("radon_scalar: field must have order 0");
  return grt(f, Signature::frame_degrees(std::vector<int>(static_cast<std::size_t>(f.grid.n), 0)),
             dgrid, opt);
}

std::vector<Sinogram> radon_componentwise(const TensorField& f, const DirectionGrid& dgrid,
                                          const QuadratureOptions& opt) {
  std::vector<Sinogram> out;
  const std::size_t dim = f.dim();
  for (std::size_t ci = 0; ci < dim; ++ci) {
    TensorField comp(f.grid, 0);
    for (std::size_t node = 0; node < f.grid.nodes(); ++node)
      comp.data[node] = f.data[node * dim + ci];
    out.push_back(radon_scalar(comp, dgrid, opt));
  }
  return out;
}

Sinogram grt_fourier(const TensorField& f, const Signature& sig, const DirectionGrid& dgrid,
                     const FourierOptions& opt) {
  if (sig.order() != f.m)
    throw std::invalid_argument("grt_fourier: signature order does not match field");
  const int os = opt.oversample > 0 ? opt.oversample : (f.grid.n == 2 ? 4 : 2);
  FourierSampler sampler(f, os);
  return grt_fourier(sampler, sig, dgrid);
}

Sinogram grt_fourier(const FourierSampler& sampler, const Signature& sig,
                     const DirectionGrid& dgrid) {
  const int n = sampler.n();
  const double slice_scale = std::pow(2.0 * std::numbers::pi, 0.5 * (n - 1));
  const double cutoff = sampler.nyquist() * 0.999;

  Sinogram out(sig, dgrid);
  const int U = out.u_extent();
  const std::size_t M = out.row_len();
  parallel_for(dgrid.dirs(), [&](std::size_t lo, std::size_t hi) {
    std::vector<std::complex<double>> srow(M);
    for (std::size_t j = lo; j < hi; ++j) {
      for (int ui = 0; ui < U; ++ui) {
        SymTensor w = signature_tensor(sig, dgrid, j, ui);
        for (std::size_t l = 0; l < M; ++l) {
          double sigma = sigma_of_slot(l, M, dgrid.hp);
          if (std::abs(sigma) > cutoff) {
            srow[l] = 0;
            continue;
          }
          CVec fh = sampler.sample(dgrid.omegas[j], sigma);
          srow[l] = slice_scale * pair(fh, w);
        }
        auto row = sigma_to_p(srow, dgrid.hp);
        for (std::size_t pi = 0; pi < M; ++pi) out.at(j, ui, pi) = row[pi];
      }
    }
  });
  return out;
}

} // namespace grt
