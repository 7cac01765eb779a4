#include "grt/decomp.hpp"

#include "grt/parallel.hpp"

#include <cmath>
#include <mutex>
#include <stdexcept>

namespace grt {

namespace {

using Mat = Eigen::MatrixXd;
using CMat = Eigen::MatrixXcd;

// Per-axis symbol matrices; D_xi = sum_d xi_d * axis[d] by linearity.
std::vector<Mat> d_axis_matrices(int n, int k) {
  std::vector<Mat> out;
  for (int d = 0; d < n; ++d) {
    Vec e = Vec::Zero(n);
    e[d] = 1.0;
    out.push_back(d_symbol_matrix(n, k, e));
  }
  return out;
}

std::vector<Mat> c_axis_matrices(int n, int k) {
  std::vector<Mat> out;
  for (int d = 0; d < n; ++d) {
    Vec e = Vec::Zero(n);
    e[d] = 1.0;
    out.push_back(contraction_matrix(n, k, e));
  }
  return out;
}

Mat at_xi(const std::vector<Mat>& axis, const Vec& xi) {
  Mat m = Mat::Zero(axis[0].rows(), axis[0].cols());
  for (int d = 0; d < static_cast<int>(axis.size()); ++d) m += xi[d] * axis[d];
  return m;
}

CMat cplx(const Mat& m) { return m.cast<std::complex<double>>(); }

// (delta^i d^i)(xi) without the (-1)^i sign: C_{k+1}..C_{k+i} D_{k+i-1}..D_k.
Mat delta_d_matrix(int n, int k, int i, const Vec& xi) {
  Mat m = Mat::Identity(static_cast<Eigen::Index>(sym_dim(n, k)),
                        static_cast<Eigen::Index>(sym_dim(n, k)));
  for (int j = 0; j < i; ++j) m = d_symbol_matrix(n, k + j, xi) * m;
  for (int j = i; j > 0; --j) m = contraction_matrix(n, k + j, xi) * m;
  return m;
}

Vec frequency(const Grid& g, std::size_t flat) {
  std::vector<int> idx = g.unflatten(flat);
  Vec xi(g.n);
  for (int d = 0; d < g.n; ++d) xi[d] = g.freq(idx[static_cast<std::size_t>(d)]);
  return xi;
}

} // namespace

Mat d_symbol_matrix(int n, int k, const Vec& xi) {
  const auto src = static_cast<Eigen::Index>(sym_dim(n, k));
  const auto dst = static_cast<Eigen::Index>(sym_dim(n, k + 1));
  Mat m(dst, src);
  for (Eigen::Index c = 0; c < src; ++c) {
    SymTensor e(n, k);
    e.c[c] = 1.0;
    m.col(c) = sym_mul_vector(e, xi).c;
  }
  return m;
}

Mat contraction_matrix(int n, int k, const Vec& xi) {
  if (k < 1) throw std::invalid_argument("contraction_matrix: order must be >= 1");
  const auto src = static_cast<Eigen::Index>(sym_dim(n, k));
  const auto dst = static_cast<Eigen::Index>(sym_dim(n, k - 1));
  Mat m(dst, src);
  for (Eigen::Index c = 0; c < src; ++c) {
    SymTensor e(n, k);
    e.c[c] = 1.0;
    m.col(c) = contract(e, xi).c;
  }
  return m;
}

Mat solenoidal_basis(int n, int k, const Vec& xi) {
  Vec unit = xi / xi.norm();
  Frame fr = frame(unit);
  auto sigs = degree_signatures(n - 1, k);
  Mat b(static_cast<Eigen::Index>(sym_dim(n, k)), static_cast<Eigen::Index>(sigs.size()));
  for (std::size_t s = 0; s < sigs.size(); ++s) {
    SymTensor t = sym_power(Vec::Zero(n), 0); // order-0 unit
    for (int j = 0; j < n - 1; ++j)
      t = sym_product(t, sym_power(fr.tangent[static_cast<std::size_t>(j)], sigs[s][static_cast<std::size_t>(j)]));
    double nrm = std::sqrt(pair(t, t));
    b.col(static_cast<Eigen::Index>(s)) = t.c / nrm;
  }
  return b;
}

TensorField apply_d(const TensorField& v) {
  const Grid& g = v.grid;
  SpectralField V = dft_forward(v);
  SpectralField out(g, v.m + 1);
  auto axis = d_axis_matrices(g.n, v.m);
  const auto sd = static_cast<Eigen::Index>(v.dim());
  const auto dd = static_cast<Eigen::Index>(out.dim());
  const std::complex<double> I(0, 1);
  parallel_for(g.nodes(), [&](std::size_t lo, std::size_t hi) {
    for (std::size_t node = lo; node < hi; ++node) {
      Mat m = at_xi(axis, frequency(g, node));
      Eigen::Map<const CVec> in(V.data.data() + node * static_cast<std::size_t>(sd), sd);
      Eigen::Map<CVec> o(out.data.data() + node * static_cast<std::size_t>(dd), dd);
      o = I * (cplx(m) * in);
    }
  });
  return dft_inverse(out);
}

TensorField apply_delta(const TensorField& u) {
  if (u.m < 1) throw std::invalid_argument("apply_delta: order must be >= 1");
  const Grid& g = u.grid;
  SpectralField U = dft_forward(u);
  SpectralField out(g, u.m - 1);
  auto axis = c_axis_matrices(g.n, u.m);
  const auto sd = static_cast<Eigen::Index>(u.dim());
  const auto dd = static_cast<Eigen::Index>(out.dim());
  const std::complex<double> I(0, 1);
  parallel_for(g.nodes(), [&](std::size_t lo, std::size_t hi) {
    for (std::size_t node = lo; node < hi; ++node) {
      Mat m = at_xi(axis, frequency(g, node));
      Eigen::Map<const CVec> in(U.data.data() + node * static_cast<std::size_t>(sd), sd);
      Eigen::Map<CVec> o(out.data.data() + node * static_cast<std::size_t>(dd), dd);
      o = I * (cplx(m) * in);
    }
  });
  return dft_inverse(out);
}

TensorField assemble_potentials(const std::vector<TensorField>& v) {
  if (v.empty()) throw std::invalid_argument("assemble_potentials: empty list");
  const int m = v.front().m;
  TensorField out(v.front().grid, m);
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i].m != m - static_cast<int>(i))
      throw std::invalid_argument("assemble_potentials: order ladder broken");
    TensorField term = v[i];
    for (std::size_t j = 0; j < i; ++j) term = apply_d(term);
    axpy(1.0, term, out);
  }
  return out;
}

TensorField delta_d_apply(const TensorField& v, int i) {
  if (i < 0) throw std::invalid_argument("delta_d_apply: negative power");
  if (i == 0) return v;
  const Grid& g = v.grid;
  SpectralField V = dft_forward(v);
  SpectralField out(g, v.m);
  const auto sd = static_cast<Eigen::Index>(v.dim());
  const double sign = (i % 2 == 0) ? 1.0 : -1.0;
  parallel_for(g.nodes(), [&](std::size_t lo, std::size_t hi) {
    for (std::size_t node = lo; node < hi; ++node) {
      Mat m = delta_d_matrix(g.n, v.m, i, frequency(g, node));
      Eigen::Map<const CVec> in(V.data.data() + node * static_cast<std::size_t>(sd), sd);
      Eigen::Map<CVec> o(out.data.data() + node * static_cast<std::size_t>(sd), sd);
      o = sign * (cplx(m) * in);
    }
  });
  return dft_inverse(out);
}

DecompositionResult decompose(const TensorField& f) {
  const Grid& g = f.grid;
  const int m = f.m;
  const auto fd = static_cast<Eigen::Index>(f.dim());
  SpectralField F = dft_forward(f);

  std::vector<SpectralField> V;
  std::vector<std::vector<Mat>> c_axes; // divergence symbols, for certificates
  for (int i = 0; i <= m; ++i) {
    V.emplace_back(g, m - i);
    c_axes.push_back(m - i >= 1 ? c_axis_matrices(g.n, m - i) : std::vector<Mat>{});
  }
  std::vector<double> div_max(static_cast<std::size_t>(m) + 1, 0.0);
  std::vector<double> amp_max(static_cast<std::size_t>(m) + 1, 0.0);
  std::mutex stats_mutex;

  parallel_for(g.nodes(), [&](std::size_t lo, std::size_t hi) {
    std::vector<double> loc_div(static_cast<std::size_t>(m) + 1, 0.0);
    std::vector<double> loc_amp(static_cast<std::size_t>(m) + 1, 0.0);
    for (std::size_t node = lo; node < hi; ++node) {
      Vec xi = frequency(g, node);
      Eigen::Map<const CVec> fh(F.data.data() + node * static_cast<std::size_t>(fd), fd);
      if (xi.norm() == 0.0) {
        Eigen::Map<CVec>(V[0].data.data() + node * static_cast<std::size_t>(fd), fd) = fh;
        continue;
      }
      // columns of the square system: (i)^i D-chain applied to the solenoidal
      // basis of each order m - i
      CMat sys(fd, fd);
      std::vector<Mat> bases;
      std::vector<Eigen::Index> offsets;
      Eigen::Index col = 0;
      std::complex<double> phase(1, 0);
      const std::complex<double> I(0, 1);
      for (int i = 0; i <= m; ++i) {
        Mat basis = solenoidal_basis(g.n, m - i, xi);
        Mat chain = basis;
        for (int j = m - i; j < m; ++j) chain = d_symbol_matrix(g.n, j, xi) * chain;
        offsets.push_back(col);
        sys.block(0, col, fd, chain.cols()) = phase * cplx(chain);
        col += chain.cols();
        bases.push_back(std::move(basis));
        phase *= I;
      }
      if (col != fd) throw std::logic_error("decompose: basis dimensions inconsistent");
      CVec y = sys.partialPivLu().solve(fh);
      for (int i = 0; i <= m; ++i) {
        const Mat& basis = bases[static_cast<std::size_t>(i)];
        CVec vh = cplx(basis) * y.segment(offsets[static_cast<std::size_t>(i)], basis.cols());
        auto vd = static_cast<std::size_t>(basis.rows());
        for (std::size_t ci = 0; ci < vd; ++ci) V[static_cast<std::size_t>(i)].data[node * vd + ci] = vh[static_cast<Eigen::Index>(ci)];
        loc_amp[static_cast<std::size_t>(i)] = std::max(loc_amp[static_cast<std::size_t>(i)], vh.norm());
        if (m - i >= 1) {
          CVec div = cplx(at_xi(c_axes[static_cast<std::size_t>(i)], xi / xi.norm())) * vh;
          loc_div[static_cast<std::size_t>(i)] = std::max(loc_div[static_cast<std::size_t>(i)], div.norm());
        }
      }
    }
    std::lock_guard<std::mutex> lock(stats_mutex);
    for (int i = 0; i <= m; ++i) {
      div_max[static_cast<std::size_t>(i)] = std::max(div_max[static_cast<std::size_t>(i)], loc_div[static_cast<std::size_t>(i)]);
      amp_max[static_cast<std::size_t>(i)] = std::max(amp_max[static_cast<std::size_t>(i)], loc_amp[static_cast<std::size_t>(i)]);
    }
  });

  DecompositionResult res;
  for (int i = 0; i <= m; ++i) res.v.push_back(dft_inverse(V[static_cast<std::size_t>(i)]));
  for (int i = 0; i < m; ++i)
    res.solenoidality.push_back(amp_max[static_cast<std::size_t>(i)] > 0
                                    ? div_max[static_cast<std::size_t>(i)] / amp_max[static_cast<std::size_t>(i)]
                                    : 0.0);
  TensorField rebuilt = assemble_potentials(res.v);
  axpy(-1.0, f, rebuilt);
  double fn = l2_norm(f);
  res.residual = fn > 0 ? l2_norm(rebuilt) / fn : l2_norm(rebuilt);
  return res;
}

TensorField solve_delta_d(const TensorField& w, int i, bool solenoidal, const SolveOptions& opt,
                          SolveReport* report) {
  if (i < 0) throw std::invalid_argument("solve_delta_d: power out of range");
  const Grid& g = w.grid;
  const auto wd = static_cast<Eigen::Index>(w.dim());
  SpectralField W = dft_forward(w);
  SpectralField V(g, w.m);
  const double sign = (i % 2 == 0) ? 1.0 : -1.0;

  std::mutex stats_mutex;
  double worst_res = 0;
  Vec worst_xi = Vec::Zero(g.n);
  double amp_max = 0;

  parallel_for(g.nodes(), [&](std::size_t lo, std::size_t hi) {
    double loc_res = 0, loc_amp = 0;
    Vec loc_xi = Vec::Zero(g.n);
    for (std::size_t node = lo; node < hi; ++node) {
      Vec xi = frequency(g, node);
      Eigen::Map<const CVec> wh(W.data.data() + node * static_cast<std::size_t>(wd), wd);
      Eigen::Map<CVec> vh(V.data.data() + node * static_cast<std::size_t>(wd), wd);
      loc_amp = std::max(loc_amp, wh.norm());
      if (xi.norm() == 0.0) {
        // delta^i d^i has no zero-frequency content for i >= 1
        vh = (i == 0) ? CVec(wh) : CVec(CVec::Zero(wd));
        double r = (i == 0) ? 0.0 : wh.norm();
        if (r > loc_res) { loc_res = r; loc_xi = xi; }
        continue;
      }
      if (i == 0 && !solenoidal) {
        vh = wh;
        continue;
      }
      CMat a = cplx(sign * delta_d_matrix(g.n, w.m, i, xi));
      double r;
      if (solenoidal) {
        CMat basis = cplx(solenoidal_basis(g.n, w.m, xi));
        CMat ab = a * basis;
        CVec y = ab.colPivHouseholderQr().solve(CVec(wh));
        vh = basis * y;
        r = (ab * y - wh).norm();
      } else {
        vh = a.partialPivLu().solve(CVec(wh));
        r = (a * vh - wh).norm();
      }
      if (r > loc_res) { loc_res = r; loc_xi = xi; }
    }
    std::lock_guard<std::mutex> lock(stats_mutex);
    amp_max = std::max(amp_max, loc_amp);
    if (loc_res > worst_res) { worst_res = loc_res; worst_xi = loc_xi; }
  });

  double rel = amp_max > 0 ? worst_res / amp_max : worst_res;
  if (report) {
    report->worst_residual = rel;
    report->worst_xi = worst_xi;
  }
  if (opt.check_range && rel > opt.range_tol)
    throw std::runtime_error("solve_delta_d: data outside the operator range (relative residual " +
                             std::to_string(rel) + ")");
  return dft_inverse(V);
}

TensorField solenoidal_project(const TensorField& f) {
  if (f.m < 1) return f;
  const Grid& g = f.grid;
  const auto fd = static_cast<Eigen::Index>(f.dim());
  SpectralField F = dft_forward(f);
  const Vec& mult = SymIndexTable::get(g.n, f.m).multiplicities();
  parallel_for(g.nodes(), [&](std::size_t lo, std::size_t hi) {
    for (std::size_t node = lo; node < hi; ++node) {
      Vec xi = frequency(g, node);
      if (xi.norm() == 0.0) continue;
      Eigen::Map<CVec> fh(F.data.data() + node * static_cast<std::size_t>(fd), fd);
      Mat basis = solenoidal_basis(g.n, f.m, xi);
      // W-orthogonal projection, W = diag(multiplicities)
      Mat bw = mult.asDiagonal() * basis;
      Mat gram = basis.transpose() * bw;
      fh = cplx(basis) * cplx(gram).ldlt().solve(CVec(cplx(bw).transpose() * fh));
    }
  });
  return dft_inverse(F);
}

} // namespace grt
