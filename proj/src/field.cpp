#include "grt/field.hpp"

#include "grt/fft.hpp"
#include "grt/parallel.hpp"

#include <cmath>
#include <stdexcept>

namespace grt {

std::size_t Grid::nodes() const {
  std::size_t t = 1;
  for (int d = 0; d < n; ++d) t *= static_cast<std::size_t>(N);
  return t;
}

std::size_t Grid::flatten(const std::vector<int>& idx) const {
  std::size_t flat = 0;
  for (int d = 0; d < n; ++d) flat = flat * static_cast<std::size_t>(N) + static_cast<std::size_t>(idx[static_cast<std::size_t>(d)]);
  return flat;
}

std::vector<int> Grid::unflatten(std::size_t flat) const {
  std::vector<int> idx(static_cast<std::size_t>(n));
  for (int d = n - 1; d >= 0; --d) {
    idx[static_cast<std::size_t>(d)] = static_cast<int>(flat % static_cast<std::size_t>(N));
    flat /= static_cast<std::size_t>(N);
  }
  return idx;
}

void Grid::validate() const {
  if (n < 1) throw std::invalid_argument("Grid: n must be >= 1");
  if (L <= 0) throw std::invalid_argument("Grid: L must be positive");
  if (N < 8 || N % 2 != 0) throw std::invalid_argument("Grid: N must be even and >= 8");
}

TensorField::TensorField(const Grid& g, int order) : grid(g), m(order) {
  grid.validate();
  data.assign(grid.nodes() * dim(), 0.0);
}

SpectralField::SpectralField(const Grid& g, int order) : grid(g), m(order) {
  grid.validate();
  data.assign(grid.nodes() * dim(), {0.0, 0.0});
}

namespace {

// parity of the sum of (unsigned) frequency indices; equals (-1)^{sum signed}
// because N is even
int index_parity(const Grid& g, std::size_t flat) {
  int s = 0;
  for (int d = 0; d < g.n; ++d) {
    s += static_cast<int>(flat % static_cast<std::size_t>(g.N));
    flat /= static_cast<std::size_t>(g.N);
  }
  return s & 1;
}

} // namespace

SpectralField dft_forward(const TensorField& f) {
  const Grid& g = f.grid;
  SpectralField out(g, f.m);
  const std::size_t dim = f.dim();
  const std::size_t nodes = g.nodes();
  std::vector<int> dims(static_cast<std::size_t>(g.n), g.N);
  const double scale = std::pow(g.h(), g.n) * std::pow(2.0 * M_PI, -0.5 * g.n);
  std::vector<std::complex<double>> buf(nodes);
  for (std::size_t ci = 0; ci < dim; ++ci) {
    for (std::size_t j = 0; j < nodes; ++j) buf[j] = f.data[j * dim + ci];
    fft_nd(buf, dims, -1);
    for (std::size_t k = 0; k < nodes; ++k) {
      double ph = index_parity(g, k) ? -scale : scale;
      out.data[k * dim + ci] = ph * buf[k];
    }
  }
  return out;
}

TensorField dft_inverse(const SpectralField& F, double* imag_residue) {
  const Grid& g = F.grid;
  TensorField out(g, F.m);
  const std::size_t dim = F.dim();
  const std::size_t nodes = g.nodes();
  std::vector<int> dims(static_cast<std::size_t>(g.n), g.N);
  const double scale = std::pow(g.dxi(), g.n) * std::pow(2.0 * M_PI, -0.5 * g.n);
  std::vector<std::complex<double>> buf(nodes);
  double imag2 = 0, real2 = 0;
  for (std::size_t ci = 0; ci < dim; ++ci) {
    for (std::size_t k = 0; k < nodes; ++k) {
      double ph = index_parity(g, k) ? -scale : scale;
      buf[k] = ph * F.data[k * dim + ci];
    }
    fft_nd(buf, dims, +1);
    for (std::size_t j = 0; j < nodes; ++j) {
      out.data[j * dim + ci] = buf[j].real();
      real2 += buf[j].real() * buf[j].real();
      imag2 += buf[j].imag() * buf[j].imag();
    }
  }
  if (imag_residue) *imag_residue = real2 > 0 ? std::sqrt(imag2 / real2) : std::sqrt(imag2);
  return out;
}

TensorField dft_inverse(const SpectralField& F) { return dft_inverse(F, nullptr); }

void axpy(double a, const TensorField& x, TensorField& y) {
  if (x.data.size() != y.data.size() || x.m != y.m)
    throw std::invalid_argument("axpy: shape mismatch");
  for (std::size_t i = 0; i < y.data.size(); ++i) y.data[i] += a * x.data[i];
}

double l2_norm(const TensorField& f) {
  const Vec& w = SymIndexTable::get(f.grid.n, f.m).multiplicities();
  const std::size_t dim = f.dim();
  double acc = 0;
  for (std::size_t j = 0; j < f.grid.nodes(); ++j)
    for (std::size_t ci = 0; ci < dim; ++ci) {
      double v = f.data[j * dim + ci];
      acc += w[static_cast<Eigen::Index>(ci)] * v * v;
    }
  return std::sqrt(acc * std::pow(f.grid.h(), f.grid.n));
}

double l2_norm(const SpectralField& F) {
  const Vec& w = SymIndexTable::get(F.grid.n, F.m).multiplicities();
  const std::size_t dim = F.dim();
  double acc = 0;
  for (std::size_t k = 0; k < F.grid.nodes(); ++k)
    for (std::size_t ci = 0; ci < dim; ++ci)
      acc += w[static_cast<Eigen::Index>(ci)] * std::norm(F.data[k * dim + ci]);
  return std::sqrt(acc * std::pow(F.grid.dxi(), F.grid.n));
}

double max_abs(const TensorField& f) {
  double m = 0;
  for (double v : f.data) m = std::max(m, std::abs(v));
  return m;
}

// ---- Phantoms --------------------------------------------------------------

namespace {

void check_supported(const Grid& g, const PhantomTerm& t) {
  int deg = 0;
  for (int e : t.expo) deg += e;
  for (int d = 0; d < g.n; ++d) {
    double margin = g.L - std::abs(t.center[static_cast<std::size_t>(d)]);
    if (margin < (4.37 + 0.25 * deg) * t.width)
      throw std::runtime_error("make_phantom: Gaussian term not numerically supported in the cube");
  }
}

} // namespace

TensorField make_phantom(const Grid& grid, const PhantomSpec& spec) {
  if (grid.n != spec.n) throw std::invalid_argument("make_phantom: dimension mismatch");
  TensorField out(grid, spec.m);
  const std::size_t dim = out.dim();
  for (const auto& t : spec.terms) {
    if (static_cast<int>(t.expo.size()) != grid.n || static_cast<int>(t.center.size()) != grid.n)
      throw std::invalid_argument("make_phantom: term shape mismatch");
    if (t.component >= dim) throw std::invalid_argument("make_phantom: component out of range");
    check_supported(grid, t);
  }
  parallel_for(grid.nodes(), [&](std::size_t lo, std::size_t hi) {
    std::vector<double> x(static_cast<std::size_t>(grid.n));
    for (std::size_t j = lo; j < hi; ++j) {
      auto idx = grid.unflatten(j);
      for (int d = 0; d < grid.n; ++d) x[static_cast<std::size_t>(d)] = grid.coord(idx[static_cast<std::size_t>(d)]);
      for (const auto& t : spec.terms) {
        double r2 = 0, poly = 1;
        for (int d = 0; d < grid.n; ++d) {
          double u = x[static_cast<std::size_t>(d)] - t.center[static_cast<std::size_t>(d)];
          r2 += u * u;
          for (int e = 0; e < t.expo[static_cast<std::size_t>(d)]; ++e) poly *= u;
        }
        out.data[j * dim + t.component] += t.coef * poly * std::exp(-r2 / (t.width * t.width));
      }
    }
  });
  return out;
}

namespace {

// (i d/ds)^a of (w/sqrt(2)) e^{-w^2 s^2 / 4}, evaluated at s.
std::complex<double> hermite_factor(int a, double w, double s) {
  std::vector<std::complex<double>> P{w / std::sqrt(2.0)};
  const std::complex<double> I(0, 1);
  for (int k = 0; k < a; ++k) {
    std::vector<std::complex<double>> Q(P.size() + 1, {0, 0});
    for (std::size_t j = 0; j + 1 < P.size() + 1; ++j)
      if (j + 1 < P.size()) Q[j] += I * (static_cast<double>(j + 1) * P[j + 1]);
    for (std::size_t j = 0; j < P.size(); ++j) Q[j + 1] -= I * (w * w / 2.0) * P[j];
    P = std::move(Q);
  }
  std::complex<double> val = 0;
  for (std::size_t j = P.size(); j-- > 0;) val = val * s + P[j];
  return val * std::exp(-w * w * s * s / 4.0);
}

} // namespace

CVec phantom_fourier(const PhantomSpec& spec, const Vec& xi) {
  const std::size_t dim = sym_dim(spec.n, spec.m);
  CVec out = CVec::Zero(static_cast<Eigen::Index>(dim));
  const std::complex<double> I(0, 1);
  for (const auto& t : spec.terms) {
    std::complex<double> val = t.coef;
    double phase = 0;
    for (int d = 0; d < spec.n; ++d) {
      val *= hermite_factor(t.expo[static_cast<std::size_t>(d)], t.width, xi[d]);
      phase += t.center[static_cast<std::size_t>(d)] * xi[d];
    }
    out[static_cast<Eigen::Index>(t.component)] += val * std::exp(-I * phase);
  }
  return out;
}

PhantomSpec random_phantom(int n, int m, double L, std::uint64_t seed, int terms, bool zero_mean) {
  SplitMix64 rng(seed * 0x2545F4914F6CDD1DULL + 0x9E3779B9ULL);
  PhantomSpec spec;
  spec.n = n;
  spec.m = m;
  const std::size_t dim = sym_dim(n, m);
  const double cmax = 0.08 * L;
  for (int t = 0; t < terms; ++t) {
    PhantomTerm term;
    term.component = static_cast<std::size_t>(rng.below(static_cast<int>(dim)));
    term.coef = rng.uniform(-1.0, 1.0);
    if (std::abs(term.coef) < 0.2) term.coef = term.coef < 0 ? -0.2 : 0.2;
    // stay clear of the containment guard: (4.37 + 0.25*2) * 0.18 L < 0.92 L
    term.width = rng.uniform(0.13 * L, 0.18 * L);
    term.expo.assign(static_cast<std::size_t>(n), 0);
    int deg = rng.below(3);
    for (int d = 0; d < deg; ++d) ++term.expo[static_cast<std::size_t>(rng.below(n))];
    term.center.resize(static_cast<std::size_t>(n));
    for (int d = 0; d < n; ++d) term.center[static_cast<std::size_t>(d)] = rng.uniform(-cmax, cmax);
    spec.terms.push_back(term);
    if (zero_mean) {
      // cancel the integral exactly: mirrored copy with opposite sign
      PhantomTerm neg = term;
      neg.coef = -term.coef;
      int flips = 0;
      for (int d = 0; d < n; ++d) {
        neg.center[static_cast<std::size_t>(d)] = -term.center[static_cast<std::size_t>(d)];
        flips += term.expo[static_cast<std::size_t>(d)];
      }
      // mirrored monomial picks up (-1)^deg; compensate so masses cancel
      if (flips % 2 == 1) neg.coef = term.coef;
      spec.terms.push_back(neg);
    }
  }
  return spec;
}

// ---- Polar sampling --------------------------------------------------------

std::array<double, 4> catmull_rom_weights(double t) {
  const double t2 = t * t, t3 = t2 * t;
  return {-0.5 * t + t2 - 0.5 * t3,
          1.0 - 2.5 * t2 + 1.5 * t3,
          0.5 * t + 2.0 * t2 - 1.5 * t3,
          -0.5 * t2 + 0.5 * t3};
}

FourierSampler::FourierSampler(const TensorField& f, int oversample) {
  if (oversample < 1) throw std::invalid_argument("FourierSampler: oversample must be >= 1");
  const Grid& g = f.grid;
  base_nyquist_ = g.nyquist();
  Grid big{g.n, g.L * oversample, g.N * oversample};
  if (oversample == 1) {
    spec_ = dft_forward(f);
    return;
  }
  TensorField embedded(big, f.m);
  const std::size_t dim = f.dim();
  const int off = (big.N - g.N) / 2;
  for (std::size_t j = 0; j < g.nodes(); ++j) {
    auto idx = g.unflatten(j);
    for (auto& v : idx) v += off;
    std::size_t jb = big.flatten(idx);
    for (std::size_t ci = 0; ci < dim; ++ci) embedded.data[jb * dim + ci] = f.data[j * dim + ci];
  }
  spec_ = dft_forward(embedded);
}

CVec FourierSampler::sample(const Vec& omega, double sigma) const {
  const Grid& g = spec_.grid;
  const int n = g.n;
  if (std::abs(sigma) * 1.0000001 > base_nyquist_)
    throw std::out_of_range("FourierSampler: frequency outside Nyquist box");
  const std::size_t dim = spec_.dim();
  CVec out = CVec::Zero(static_cast<Eigen::Index>(dim));

  std::vector<int> base(static_cast<std::size_t>(n));
  std::vector<std::array<double, 4>> w(static_cast<std::size_t>(n));
  for (int d = 0; d < n; ++d) {
    double u = sigma * omega[d] / g.dxi();
    double fl = std::floor(u);
    base[static_cast<std::size_t>(d)] = static_cast<int>(fl);
    w[static_cast<std::size_t>(d)] = catmull_rom_weights(u - fl);
  }
  std::vector<int> tap(static_cast<std::size_t>(n), 0);
  while (true) {
    double weight = 1;
    std::size_t flat = 0;
    for (int d = 0; d < n; ++d) {
      int td = tap[static_cast<std::size_t>(d)];
      weight *= w[static_cast<std::size_t>(d)][static_cast<std::size_t>(td)];
      int k = base[static_cast<std::size_t>(d)] + td - 1;
      k = ((k % g.N) + g.N) % g.N;
      flat = flat * static_cast<std::size_t>(g.N) + static_cast<std::size_t>(k);
    }
    if (weight != 0.0)
      for (std::size_t ci = 0; ci < dim; ++ci)
        out[static_cast<Eigen::Index>(ci)] += weight * spec_.data[flat * dim + ci];
    int d = n - 1;
    for (; d >= 0; --d) {
      if (++tap[static_cast<std::size_t>(d)] < 4) break;
      tap[static_cast<std::size_t>(d)] = 0;
    }
    if (d < 0) break;
  }
  return out;
}

TensorField upsample(const TensorField& f, int factor) {
  if (factor < 1) throw std::invalid_argument("upsample: factor must be >= 1");
  if (factor == 1) return f;
  const Grid& g = f.grid;
  SpectralField F = dft_forward(f);
  Grid fine{g.n, g.L, g.N * factor};
  SpectralField Ff(fine, f.m);
  const std::size_t dim = f.dim();
  for (std::size_t k = 0; k < g.nodes(); ++k) {
    auto idx = g.unflatten(k);
    std::vector<int> idx2(idx.size());
    for (int d = 0; d < g.n; ++d) {
      int signedk = g.freq_index(idx[static_cast<std::size_t>(d)]);
      idx2[static_cast<std::size_t>(d)] = ((signedk % fine.N) + fine.N) % fine.N;
    }
    std::size_t k2 = fine.flatten(idx2);
    for (std::size_t ci = 0; ci < dim; ++ci) Ff.data[k2 * dim + ci] = F.data[k * dim + ci];
  }
  return dft_inverse(Ff);
}

} // namespace grt
