#include "grt/analysis.hpp"

#include "grt/parallel.hpp"

#include <cmath>
#include <mutex>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace grt {

namespace {

// |r|^{2t} (1+r^2)^{s-t}; the r = 0 cell is kept only for t = 0 (t > 0 gives
// weight 0, for t < 0 the cell is dropped from the quadrature).
double spectral_weight(double r, double s, double t) {
  if (r == 0.0) return t == 0.0 ? 1.0 : 0.0;
  return std::pow(r, 2.0 * t) * std::pow(1.0 + r * r, s - t);
}

void check_index(int n, const SobolevIndex& idx) {
  if (!(idx.t > -0.5 * n)) throw std::invalid_argument("SobolevIndex: t must exceed -n/2");
}

double direction_weight(const DirectionGrid& dg) {
  return (dg.n == 2 ? 2.0 : 4.0) * std::numbers::pi / static_cast<double>(dg.dirs());
}

// tangent circle S^{n-1} cap y^perp: two points for n = 2, 32-point
// arclength rule for n = 3
std::vector<std::pair<Vec, double>> tangent_rule(const Frame& fr) {
  std::vector<std::pair<Vec, double>> rule;
  if (static_cast<int>(fr.omega.size()) == 2) {
    rule.emplace_back(fr.tangent[0], 1.0);
    rule.emplace_back(Vec(-fr.tangent[0]), 1.0);
  } else {
    const int Q = 32;
    for (int q = 0; q < Q; ++q) {
      double a = 2.0 * std::numbers::pi * q / Q;
      rule.emplace_back(Vec(std::cos(a) * fr.tangent[0] + std::sin(a) * fr.tangent[1]),
                        2.0 * std::numbers::pi / Q);
    }
  }
  return rule;
}

Vec node_frequency(const Grid& g, std::size_t flat) {
  auto idx = g.unflatten(flat);
  Vec xi(g.n);
  for (int d = 0; d < g.n; ++d) xi[d] = g.freq(idx[static_cast<std::size_t>(d)]);
  return xi;
}

} // namespace

double weighted_norm(const TensorField& f, const SobolevIndex& idx) {
  check_index(f.grid.n, idx);
  SpectralField F = dft_forward(f);
  const Grid& g = f.grid;
  const Vec& mult = SymIndexTable::get(g.n, f.m).multiplicities();
  const std::size_t dim = f.dim();
  const double cell = std::pow(g.dxi(), g.n);
  double acc = 0;
  for (std::size_t node = 0; node < g.nodes(); ++node) {
    double w = spectral_weight(node_frequency(g, node).norm(), idx.s, idx.t);
    if (w == 0.0) continue;
    double e = 0;
    for (std::size_t ci = 0; ci < dim; ++ci)
      e += mult[static_cast<Eigen::Index>(ci)] * std::norm(F.data[node * dim + ci]);
    acc += w * e;
  }
  return std::sqrt(acc * cell);
}

double weighted_norm_tensor(const TensorField& f, const SobolevIndex& idx, int l1, int l2) {
  check_index(f.grid.n, idx);
  if (l1 + l2 != f.m) throw std::invalid_argument("weighted_norm_tensor: degrees must sum to m");
  SpectralField F = dft_forward(f);
  const Grid& g = f.grid;
  const std::size_t dim = f.dim();
  const double cell = std::pow(g.dxi(), g.n);

  std::mutex acc_mutex;
  double acc = 0;
  parallel_for(g.nodes(), [&](std::size_t lo, std::size_t hi) {
    double loc = 0;
    for (std::size_t node = lo; node < hi; ++node) {
      Vec y = node_frequency(g, node);
      double r = y.norm();
      if (r == 0.0) continue; // the tangent sphere of y = 0 is undefined; measure-zero cell
      double w = spectral_weight(r, idx.s, idx.t);
      if (w == 0.0) continue;
      Eigen::Map<const CVec> fh(F.data.data() + node * dim, static_cast<Eigen::Index>(dim));
      SymTensor ypow = sym_power(y, l1);
      double inner = 0;
      for (const auto& [v, dv] : tangent_rule(frame(Vec(y / r)))) {
        // tangent slots carry |y| like the radial ones: the pairing weight is
        // y^{(x)l1} (x) (|y| v)^{(x)l2}
        SymTensor t = sym_product(ypow, sym_power(Vec(r * v), l2));
        inner += dv * std::norm(pair(CVec(fh), t));
      }
      loc += w * inner;
    }
    std::lock_guard<std::mutex> lock(acc_mutex);
    acc += loc;
  });
  return std::sqrt(acc * cell);
}

double weighted_norm(const Sinogram& g, const SobolevIndex& idx) {
  check_index(g.dgrid.n, idx);
  const std::size_t M = g.row_len();
  const double hp = g.dgrid.hp;
  const double dsigma = 2.0 * std::numbers::pi / (static_cast<double>(M) * hp);
  const double domega = direction_weight(g.dgrid);
  const int U = g.u_extent();
  // counting measure on S^0 tangents (n = 2), arclength on the circle (n = 3)
  const double du = (U == 1 || g.dgrid.n == 2) ? 1.0 : 2.0 * std::numbers::pi / U;
  const double pre = 1.0 / (2.0 * std::pow(2.0 * std::numbers::pi, g.dgrid.n - 1));
  double acc = 0;
  for (std::size_t j = 0; j < g.dgrid.dirs(); ++j) {
    for (int ui = 0; ui < U; ++ui) {
      auto gh = p_to_sigma(std::span<const double>(g.row(j, ui), M), hp);
      for (std::size_t l = 0; l < M; ++l) {
        double w = spectral_weight(std::abs(sigma_of_slot(l, M, hp)), idx.s, idx.t);
        acc += w * std::norm(gh[l]);
      }
    }
  }
  return std::sqrt(acc * pre * domega * du * dsigma);
}

ReshetnyakResult reshetnyak_check(const TensorField& f, int l1, int l2, const SobolevIndex& idx,
                                  const DirectionGrid& dgrid) {
  const int n = f.grid.n;
  Sinogram g = grt_fourier(f, Signature::pair_degrees(l1, l2), dgrid);
  SobolevIndex lifted{idx.s + f.m + 0.5 * (n - 1), idx.t + f.m + 0.5 * (n - 1)};
  ReshetnyakResult res;
  res.lhs = weighted_norm(g, lifted);
  res.rhs = weighted_norm_tensor(f, idx, l1, l2);
  double denom = std::max(res.lhs, res.rhs);
  res.rel_gap = denom > 0 ? std::abs(res.lhs - res.rhs) / denom : 0.0;
  return res;
}

RangeReport range_check(const Sinogram& g, int k_max, double parity_tol, double moment_tol) {
  if (!g.sig.uses_u_axis())
    throw std::invalid_argument("range_check: pair-mode data (omega, u) required");
  const DirectionGrid& dg = g.dgrid;
  const int n = dg.n;
  const int m = g.sig.order();
  const std::size_t M = g.row_len();
  const int U = g.u_extent();
  const double sgn = (m % 2 == 0) ? 1.0 : -1.0;
  const double gmax = g.max_abs();

  RangeReport rep;
  rep.parity_tol = parity_tol;
  rep.moment_tol = moment_tol;

  double defect = 0;
  for (std::size_t j = 0; j < dg.dirs(); ++j) {
    auto ja = static_cast<std::size_t>(dg.antipode[j]);
    for (int ui = 0; ui < U; ++ui) {
      int ua = dg.u_antipode(ui);
      for (std::size_t pi = 0; pi < M; ++pi)
        defect = std::max(defect, std::abs(g.at(ja, ua, dg.p_index_of_neg(pi)) - sgn * g.at(j, ui, pi)));
    }
  }
  rep.parity_defect = gmax > 0 ? defect / gmax : 0.0;

  // moment fits: trapezoid in p, pinned least squares against homogeneous
  // monomials omega^alpha u^beta with |alpha| = k + l1, |beta| = l2
  const auto rows = static_cast<Eigen::Index>(dg.dirs() * static_cast<std::size_t>(U));
  bool all_pass = rep.parity_defect <= parity_tol;
  for (int k = 0; k <= k_max; ++k) {
    auto alphas = degree_signatures(n, k + g.sig.l1);
    auto betas = degree_signatures(n, g.sig.l2);
    Eigen::MatrixXd A(rows, static_cast<Eigen::Index>(alphas.size() * betas.size()));
    Vec b(rows);
    Eigen::Index r = 0;
    for (std::size_t j = 0; j < dg.dirs(); ++j) {
      for (int ui = 0; ui < U; ++ui, ++r) {
        const double* row = g.row(j, ui);
        double mom = 0;
        for (std::size_t pi = 0; pi < M; ++pi) {
          double w = (pi == 0 || pi == M - 1) ? 0.5 : 1.0;
          mom += w * std::pow(dg.p[pi], k) * row[pi];
        }
        b[r] = mom * dg.hp;
        const Vec& omega = dg.omegas[j];
        Vec u = dg.u_vector(j, ui);
        Eigen::Index c = 0;
        for (const auto& alpha : alphas) {
          double oa = 1;
          for (int d = 0; d < n; ++d) oa *= std::pow(omega[d], alpha[static_cast<std::size_t>(d)]);
          for (const auto& beta : betas) {
            double ub = 1;
            for (int d = 0; d < n; ++d) ub *= std::pow(u[d], beta[static_cast<std::size_t>(d)]);
            A(r, c++) = oa * ub;
          }
        }
      }
    }
    MomentFit fit;
    fit.k = k;
    fit.coefficients = A.completeOrthogonalDecomposition().solve(b);
    double resid = (A * fit.coefficients - b).norm();
    // normalize by the data-scale moment bound, not by |b| itself: the true
    // moment may vanish identically, leaving b pure quadrature noise
    double pk_sum = 0;
    for (std::size_t pi = 0; pi < M; ++pi) pk_sum += std::pow(std::abs(dg.p[pi]), k);
    double scale = gmax * dg.hp * pk_sum * std::sqrt(static_cast<double>(rows));
    double denom = std::max(b.norm(), scale);
    fit.rel_residual = denom > 0 ? resid / denom : 0.0;
    if (fit.rel_residual > moment_tol) all_pass = false;
    rep.moment_fits.push_back(std::move(fit));
  }
  rep.verdict = all_pass;
  return rep;
}

double ucp_profile(double p, double a, int i) {
  // support strictly inside (1, a): keep the bump clear of |p| = 1 so the
  // reconstruction's resolution-limited decay layer stays outside the unit
  // ball that the data avoids
  const double inner = 1.0 + 0.15 * (a - 1.0);
  const double c = 0.5 * (inner + a);
  const double hw = 0.5 * (a - inner);
  double t = (std::abs(p) - c) / hw;
  if (std::abs(t) >= 1.0) return 0.0;
  double val = std::exp(-1.0 / (1.0 - t * t));
  if (i % 2 != 0 && p < 0) val = -val;
  return val;
}

UcpReport ucp_counterexample(int m, int i, double a, const Grid& grid, const DirectionGrid& dgrid,
                             double ratio_tol, double exterior_min) {
  if (grid.n % 2 == 0) throw std::invalid_argument("ucp_counterexample: n must be odd");
  if (a <= 1.0) throw std::invalid_argument("ucp_counterexample: need a > 1");
  GrtDataset ds;
  ds.n = grid.n;
  ds.m = m;
  ds.dgrid = dgrid;
  const std::size_t M = dgrid.p.size();
  for (const auto& sig : ds.signatures_with_normal_degree(i)) {
    Sinogram s(Signature::frame_degrees(sig), dgrid);
    for (std::size_t j = 0; j < dgrid.dirs(); ++j) {
      double* row = s.row(j, 0);
      for (std::size_t pi = 0; pi < M; ++pi) row[pi] = ucp_profile(dgrid.p[pi], a, i);
    }
    ds.data.emplace(sig, std::move(s));
  }

  InversionOptions opt;
  opt.check_range = false;
  TensorField v = recover_component(ds, i, grid, opt);

  const std::size_t dim = v.dim();
  const Vec& mult = SymIndexTable::get(grid.n, v.m).multiplicities();
  double in2 = 0, out2 = 0, tot2 = 0;
  for (std::size_t node = 0; node < grid.nodes(); ++node) {
    auto idx = grid.unflatten(node);
    double r2 = 0;
    for (int d = 0; d < grid.n; ++d) {
      double x = grid.coord(idx[static_cast<std::size_t>(d)]);
      r2 += x * x;
    }
    double e = 0;
    for (std::size_t ci = 0; ci < dim; ++ci)
      e += mult[static_cast<Eigen::Index>(ci)] * v.data[node * dim + ci] * v.data[node * dim + ci];
    tot2 += e;
    if (r2 < 1.0) in2 += e;
    else if (r2 < a * a) out2 += e;
  }

  UcpReport rep;
  std::ostringstream os;
  os << "U = unit ball; shell 1 < |x| < " << a;
  rep.region = os.str();
  rep.interior_norm = tot2 > 0 ? std::sqrt(in2 / tot2) : 0.0;
  rep.exterior_norm = tot2 > 0 ? std::sqrt(out2 / tot2) : 0.0;
  double dmax = 0;
  for (std::size_t pi = 0; pi < M; ++pi)
    if (std::abs(dgrid.p[pi]) < 1.0) dmax = std::max(dmax, std::abs(ucp_profile(dgrid.p[pi], a, i)));
  rep.data_norm_on_U_planes = dmax;
  rep.verdict = dmax == 0.0 && rep.exterior_norm > exterior_min &&
                rep.interior_norm <= ratio_tol * rep.exterior_norm;
  return rep;
}

UcpReport ucp_uniqueness_experiment(int m, int i, const TensorField& f, const DirectionGrid& dgrid,
                                    double margin_tol) {
  if (f.grid.n % 2 != 0) throw std::invalid_argument("ucp_uniqueness_experiment: n must be even");
  if (f.m != m) throw std::invalid_argument("ucp_uniqueness_experiment: field order mismatch");
  FourierSampler sampler(f, f.grid.n == 2 ? 4 : 2);
  double inner_max = 0, all_max = 0;
  for (auto sig : degree_signatures(f.grid.n - 1, m - i)) {
    sig.push_back(i);
    Sinogram g = grt_fourier(sampler, Signature::frame_degrees(sig), dgrid);
    for (std::size_t j = 0; j < dgrid.dirs(); ++j) {
      const double* row = g.row(j, 0);
      for (std::size_t pi = 0; pi < g.row_len(); ++pi) {
        double v = std::abs(row[pi]);
        all_max = std::max(all_max, v);
        if (std::abs(dgrid.p[pi]) < 1.0) inner_max = std::max(inner_max, v);
      }
    }
  }
  UcpReport rep;
  rep.region = "U = unit ball";
  rep.data_norm_on_U_planes = inner_max;
  rep.margin = all_max > 0 ? inner_max / all_max : 0.0;
  rep.verdict = rep.margin >= margin_tol;
  return rep;
}

TensorField shell_scalar_field(const Grid& grid, std::uint64_t seed) {
  SplitMix64 rng(seed);
  PhantomSpec spec;
  spec.n = grid.n;
  spec.m = 0;
  for (int b = 0; b < 2; ++b) {
    PhantomTerm term;
    term.component = 0;
    term.coef = (b == 0 ? 1.0 : -0.7) * (0.5 + rng.uniform());
    term.width = 0.12 + 0.04 * rng.uniform();
    double radius = 1.3 + 0.4 * rng.uniform();
    term.center.assign(static_cast<std::size_t>(grid.n), 0.0);
    if (grid.n == 2) {
      double th = 2.0 * std::numbers::pi * rng.uniform();
      term.center[0] = radius * std::cos(th);
      term.center[1] = radius * std::sin(th);
    } else {
      double th = 2.0 * std::numbers::pi * rng.uniform();
      double z = 2.0 * rng.uniform() - 1.0;
      double r = std::sqrt(std::max(0.0, 1.0 - z * z));
      term.center[0] = radius * r * std::cos(th);
      term.center[1] = radius * r * std::sin(th);
      term.center[2] = radius * z;
    }
    term.expo.assign(static_cast<std::size_t>(grid.n), 0);
    spec.terms.push_back(std::move(term));
  }
  return make_phantom(grid, spec);
}

TensorField shell_solenoidal_field(const Grid& grid, std::uint64_t seed) {
  if (grid.n != 2) throw std::invalid_argument("shell_solenoidal_field: implemented for n = 2");
  TensorField psi = shell_scalar_field(grid, seed);
  SpectralField P = dft_forward(psi);
  SpectralField V(grid, 1);
  const std::complex<double> I(0, 1);
  for (std::size_t node = 0; node < grid.nodes(); ++node) {
    Vec xi = node_frequency(grid, node);
    V.data[node * 2 + 0] = -I * xi[1] * P.data[node];
    V.data[node * 2 + 1] = I * xi[0] * P.data[node];
  }
  return dft_inverse(V);
}

} // namespace grt
