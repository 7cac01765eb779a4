#include "grt/invert.hpp"

#include "grt/parallel.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace grt {

namespace {

std::string signature_string(const std::vector<int>& degrees) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < degrees.size(); ++i) os << (i ? "," : "") << degrees[i];
  os << ")";
  return os.str();
}

double factorial(int k) {
  double f = 1;
  for (int j = 2; j <= k; ++j) f *= j;
  return f;
}

// Keys cubic kernel (a = -1/2), support [-2, 2].
double keys_kernel(double t) {
  t = std::abs(t);
  if (t < 1.0) return (1.5 * t - 2.5) * t * t + 1.0;
  if (t < 2.0) return ((-0.5 * t + 2.5) * t - 4.0) * t + 2.0;
  return 0.0;
}

// khat(theta) = int K(t) cos(theta t) dt, Simpson on [-2, 2].
double keys_kernel_ft(double theta) {
  const int segs = 400;
  const double h = 4.0 / segs;
  double acc = 0;
  for (int j = 0; j <= segs; ++j) {
    double t = -2.0 + j * h;
    double w = (j == 0 || j == segs) ? 1.0 : (j % 2 ? 4.0 : 2.0);
    acc += w * keys_kernel(t) * std::cos(theta * t);
  }
  return acc * h / 3.0;
}

// antiderivative of |s|^{n-1}
double radial_antiderivative(int n, double s) {
  double g = std::pow(std::abs(s), n) / n;
  return s >= 0 ? g : -g;
}

} // namespace

const Sinogram& GrtDataset::at(const std::vector<int>& degrees) const {
  auto it = data.find(degrees);
  if (it == data.end())
    throw std::runtime_error("dataset is missing the signature " + signature_string(degrees));
  return it->second;
}

void GrtDataset::require_complete() const {
  for (const auto& sig : degree_signatures(n, m)) at(sig);
}

std::vector<std::vector<int>> GrtDataset::signatures_with_normal_degree(int i) const {
  std::vector<std::vector<int>> out;
  for (auto sig : degree_signatures(n - 1, m - i)) {
    sig.push_back(i);
    out.push_back(std::move(sig));
  }
  return out;
}

GrtDataset make_dataset(const TensorField& f, const DirectionGrid& dgrid, ForwardMethod method) {
  GrtDataset ds;
  ds.n = f.grid.n;
  ds.m = f.m;
  ds.dgrid = dgrid;
  if (method == ForwardMethod::FourierSlice) {
    FourierSampler sampler(f, f.grid.n == 2 ? 4 : 2);
    for (const auto& sig : degree_signatures(ds.n, ds.m))
      ds.data.emplace(sig, grt_fourier(sampler, Signature::frame_degrees(sig), dgrid));
  } else {
    for (const auto& sig : degree_signatures(ds.n, ds.m))
      ds.data.emplace(sig, grt(f, Signature::frame_degrees(sig), dgrid));
  }
  return ds;
}

TensorField radon_invert(const Sinogram& sino, const Grid& grid, double* imag_residue) {
  const DirectionGrid& dg = sino.dgrid;
  const int n = grid.n;
  if (dg.n != n) throw std::invalid_argument("radon_invert: dimension mismatch");
  if (sino.u_extent() != 1)
    throw std::invalid_argument("radon_invert: expected scalar (frame-mode) data rows");
  const std::size_t M = sino.row_len();
  const std::size_t J = dg.dirs();
  const double hp = dg.hp;
  // 2x-oversampled gridding: splat onto a xi-grid of half the spacing (image
  // field of view 2L), deapodize there, and crop the centre afterwards; this
  // pushes the splat kernel's image-space alias replicas out to |x| ~ 4L
  Grid fine{grid.n, 2.0 * grid.L, 2 * grid.N};
  const double dxi = fine.dxi();
  // zero-pad the rows in p before going to sigma: the native sigma spacing
  // 2pi/(M hp) Nyquist-matches the support radius, so corner content would
  // alias back onto the image boundary
  const std::size_t Mp = 4 * M - 3;
  const std::size_t pad = (Mp - M) / 2;
  const double dsigma = 2.0 * std::numbers::pi / (static_cast<double>(Mp) * hp);
  const double domega = (n == 2 ? 2.0 : 4.0) * std::numbers::pi / static_cast<double>(J);
  const double slice = std::pow(2.0 * std::numbers::pi, -0.5 * (n - 1));
  const double dxin = std::pow(dxi, n);

  SpectralField acc(fine, 0);
  std::vector<int> idx(static_cast<std::size_t>(n));
  std::vector<double> padded(Mp);
  for (std::size_t j = 0; j < J; ++j) {
    std::fill(padded.begin(), padded.end(), 0.0);
    const double* row = sino.row(j, 0);
    for (std::size_t k = 0; k < M; ++k) padded[k + pad] = row[k];
    auto gh = p_to_sigma(padded, hp);
    const Vec& w = dg.omegas[j];
    for (std::size_t l = 0; l < Mp; ++l) {
      double sigma = sigma_of_slot(l, Mp, hp);
      double cell = radial_antiderivative(n, sigma + 0.5 * dsigma) -
                    radial_antiderivative(n, sigma - 0.5 * dsigma);
      std::complex<double> val = slice * gh[l] * (cell * domega / (2.0 * dxin));
      // Catmull-Rom splat of the polar sample sigma*omega onto the xi grid
      int base[3];
      std::array<double, 4> cw[3];
      bool ok = true;
      for (int d = 0; d < n; ++d) {
        double u = sigma * w[d] / dxi;
        double fl = std::floor(u);
        base[d] = static_cast<int>(fl);
        if (base[d] < -fine.N / 2 - 2 || base[d] > fine.N / 2 + 1) ok = false;
        cw[d] = catmull_rom_weights(u - fl);
      }
      if (!ok) continue;
      const int lo_f = -fine.N / 2, hi_f = fine.N / 2 - 1;
      if (n == 2) {
        for (int a = 0; a < 4; ++a) {
          int qa = base[0] + a - 1;
          if (qa < lo_f || qa > hi_f) continue;
          idx[0] = qa >= 0 ? qa : qa + fine.N;
          for (int b = 0; b < 4; ++b) {
            int qb = base[1] + b - 1;
            if (qb < lo_f || qb > hi_f) continue;
            idx[1] = qb >= 0 ? qb : qb + fine.N;
            acc.data[fine.flatten(idx)] +=
                val * (cw[0][static_cast<std::size_t>(a)] * cw[1][static_cast<std::size_t>(b)]);
          }
        }
      } else {
        for (int a = 0; a < 4; ++a) {
          int qa = base[0] + a - 1;
          if (qa < lo_f || qa > hi_f) continue;
          idx[0] = qa >= 0 ? qa : qa + fine.N;
          for (int b = 0; b < 4; ++b) {
            int qb = base[1] + b - 1;
            if (qb < lo_f || qb > hi_f) continue;
            idx[1] = qb >= 0 ? qb : qb + fine.N;
            double wab = cw[0][static_cast<std::size_t>(a)] * cw[1][static_cast<std::size_t>(b)];
            for (int c = 0; c < 4; ++c) {
              int qc = base[2] + c - 1;
              if (qc < lo_f || qc > hi_f) continue;
              idx[2] = qc >= 0 ? qc : qc + fine.N;
              acc.data[fine.flatten(idx)] += val * (wab * cw[2][static_cast<std::size_t>(c)]);
            }
          }
        }
      }
    }
  }

  TensorField wide = dft_inverse(acc, imag_residue);
  // deapodize: undo the splat kernel's image-space taper
  std::vector<double> taper(static_cast<std::size_t>(fine.N));
  for (int i = 0; i < fine.N; ++i) taper[static_cast<std::size_t>(i)] = keys_kernel_ft(fine.coord(i) * dxi);
  // crop the centre [-L, L) window back onto the requested grid
  TensorField img(grid, 0);
  parallel_for(grid.nodes(), [&](std::size_t lo, std::size_t hi) {
    std::vector<int> nid(static_cast<std::size_t>(n));
    for (std::size_t node = lo; node < hi; ++node) {
      auto gid = grid.unflatten(node);
      double t = 1.0;
      for (int d = 0; d < n; ++d) {
        nid[static_cast<std::size_t>(d)] = gid[static_cast<std::size_t>(d)] + grid.N / 2;
        t *= taper[static_cast<std::size_t>(nid[static_cast<std::size_t>(d)])];
      }
      img.data[node] = wide.data[fine.flatten(nid)] / t;
    }
  });
  return img;
}

std::vector<Sinogram> assemble_normal_data(const GrtDataset& ds, int i) {
  if (i < 0 || i > ds.m) throw std::invalid_argument("assemble_normal_data: degree out of range");
  const int n = ds.n;
  const int k = ds.m - i;
  const auto& tab = SymIndexTable::get(n, k);
  const std::size_t dim = tab.dim();
  const std::size_t M = ds.dgrid.p.size();

  Signature scalar_sig = Signature::frame_degrees(std::vector<int>(static_cast<std::size_t>(n), 0));
  std::vector<Sinogram> comps(dim, Sinogram(scalar_sig, ds.dgrid));

  auto sigs = ds.signatures_with_normal_degree(i);
  std::vector<const Sinogram*> rows;
  std::vector<double> factors;
  for (const auto& sig : sigs) {
    rows.push_back(&ds.at(sig));
    double denom = 1;
    for (int d = 0; d < n - 1; ++d) denom *= factorial(sig[static_cast<std::size_t>(d)]);
    factors.push_back(factorial(k) / denom);
  }

  parallel_for(ds.dgrid.dirs(), [&](std::size_t lo, std::size_t hi) {
    for (std::size_t j = lo; j < hi; ++j) {
      for (std::size_t s = 0; s < sigs.size(); ++s) {
        auto deriv = p_derivative(std::span<const double>(rows[s]->row(j, 0), M), ds.dgrid.hp, i);
        std::vector<int> tdeg = sigs[s];
        tdeg.back() = 0; // tangential part only
        SymTensor t = frame_tensor(ds.dgrid.frames[j], tdeg);
        for (std::size_t ci = 0; ci < dim; ++ci) {
          double coef = factors[s] * t.c[static_cast<Eigen::Index>(ci)];
          if (coef == 0.0) continue;
          double* out = comps[ci].row(j, 0);
          for (std::size_t pi = 0; pi < M; ++pi) out[pi] += coef * deriv[pi];
        }
      }
    }
  });
  return comps;
}

namespace {

// Determine fhat(0) from the sigma = 0 slice of every available data row by
// least squares: ghat_s(omega, 0) = (2pi)^{(n-1)/2} <fhat(0), b_s(omega)>.
// The backprojection itself only sees the tangential average of fhat(0)
// (the |sigma|^{n-1} filter vanishes at the origin), so the DC of the
// zeroth component has to be pinned separately.
Vec dataset_dc(const GrtDataset& ds) {
  const int n = ds.n;
  const auto& tab = SymIndexTable::get(n, ds.m);
  const Vec& mult = tab.multiplicities();
  const auto dim = static_cast<Eigen::Index>(tab.dim());
  const std::size_t J = ds.dgrid.dirs();
  const std::size_t M = ds.dgrid.p.size();
  const double slice = std::pow(2.0 * std::numbers::pi, 0.5 * (n - 1));
  const double hp = ds.dgrid.hp;

  Eigen::MatrixXd A(static_cast<Eigen::Index>(J * ds.data.size()), dim);
  Vec b(A.rows());
  Eigen::Index r = 0;
  for (const auto& [sig, sino] : ds.data) {
    for (std::size_t j = 0; j < J; ++j, ++r) {
      const double* row = sino.row(j, 0);
      double g0 = 0;
      for (std::size_t pi = 0; pi < M; ++pi) g0 += row[pi];
      b[r] = g0 * hp / std::sqrt(2.0 * std::numbers::pi) / slice;
      SymTensor t = frame_tensor(ds.dgrid.frames[j], sig);
      for (Eigen::Index c = 0; c < dim; ++c) A(r, c) = mult[c] * t.c[c];
    }
  }
  return A.completeOrthogonalDecomposition().solve(b);
}

} // namespace

TensorField recover_component(const GrtDataset& ds, int i, const Grid& grid,
                              const InversionOptions& opt, ComponentReport* report) {
  auto comps = assemble_normal_data(ds, i);
  TensorField w(grid, ds.m - i);
  const std::size_t dim = w.dim();
  double worst_imag = 0;
  for (std::size_t ci = 0; ci < dim; ++ci) {
    double resid = 0;
    TensorField scalar = radon_invert(comps[ci], grid, &resid);
    worst_imag = std::max(worst_imag, resid);
    for (std::size_t node = 0; node < grid.nodes(); ++node)
      w.data[node * dim + ci] = scalar.data[node];
  }
  SolveOptions so;
  so.check_range = opt.check_range;
  so.range_tol = opt.range_tol;
  SolveReport sr;
  TensorField v = solve_delta_d(w, i, /*solenoidal=*/i < ds.m, so, &sr);
  if (i == 0) {
    // pin the DC to fhat(0): the decomposition convention assigns the full
    // zero frequency of f to the zeroth component
    Vec target = dataset_dc(ds);
    const double cells = static_cast<double>(grid.nodes());
    const double to_mean = std::pow(2.0 * std::numbers::pi, 0.5 * grid.n) /
                           (std::pow(grid.h(), grid.n) * cells);
    for (std::size_t ci = 0; ci < dim; ++ci) {
      double mean = 0;
      for (std::size_t node = 0; node < grid.nodes(); ++node) mean += v.data[node * dim + ci];
      mean /= cells;
      double shift = target[static_cast<Eigen::Index>(ci)] * to_mean - mean;
      for (std::size_t node = 0; node < grid.nodes(); ++node) v.data[node * dim + ci] += shift;
    }
  }
  if (report) {
    report->gridding_imag_residue = worst_imag;
    report->solve = sr;
  }
  return v;
}

TensorField invert_full(const GrtDataset& ds, const Grid& grid, const InversionOptions& opt,
                        InversionReport* report) {
  ds.require_complete();
  std::vector<TensorField> v;
  for (int i = 0; i <= ds.m; ++i) {
    ComponentReport cr;
    v.push_back(recover_component(ds, i, grid, opt, &cr));
    if (report) report->stages.push_back(cr);
  }
  return assemble_potentials(v);
}

} // namespace grt
