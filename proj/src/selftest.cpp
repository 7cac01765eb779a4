#include "grt/selftest.hpp"

#include "grt/analysis.hpp"
#include "grt/decomp.hpp"
#include "grt/invert.hpp"
#include "grt/radon.hpp"

#include <chrono>
#include <cmath>
#include <iostream>
#include <numbers>
#include <sstream>

namespace grt {

namespace {

using Clock = std::chrono::steady_clock;

double rel_l2(const TensorField& a, const TensorField& b) {
  TensorField diff = a;
  axpy(-1.0, b, diff);
  double denom = l2_norm(b);
  return denom > 0 ? l2_norm(diff) / denom : l2_norm(diff);
}

double rel_rows(const std::vector<double>& a, const std::vector<double>& b) {
  double num = 0, den = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num += (a[i] - b[i]) * (a[i] - b[i]);
    den += b[i] * b[i];
  }
  return den > 0 ? std::sqrt(num / den) : std::sqrt(num);
}

double rel_sino(const Sinogram& a, const Sinogram& b) { return rel_rows(a.values, b.values); }

DirectionGrid standard_dgrid_2d(const Grid& g, int dirs = 180) {
  double p_max = g.L * std::numbers::sqrt2 + 2.0 * g.h();
  return make_direction_grid(2, dirs, p_max, g.h());
}

// Combinatorial factor of the potential-field derivative identity under the
// plain-average symmetric product: contracting k normal slots out of the
// weight tensor picks up ln!/(ln-k)! * (m-k)!/m!.
double potential_factor(int m, int ln, int k) {
  double f = 1;
  for (int j = 0; j < k; ++j) f *= static_cast<double>(ln - j) / static_cast<double>(m - j);
  return f;
}

TensorField apply_d_times(const TensorField& v, int k) {
  TensorField f = v;
  for (int j = 0; j < k; ++j) f = apply_d(f);
  return f;
}

TensorField apply_delta_times(const TensorField& v, int j) {
  TensorField f = v;
  for (int q = 0; q < j; ++q) f = apply_delta(f);
  return f;
}

// ---- criterion bodies ------------------------------------------------------

CriterionResult criterion_forward_crossval() {
  CriterionResult r;
  r.name = "forward cross-validation (quadrature vs Fourier slice)";
  r.threshold = 1e-3;
  Grid g{2, 3.0, 64};
  DirectionGrid dg = standard_dgrid_2d(g);
  struct Entry { int m; std::uint64_t seed; };
  const Entry corpus[] = {{0, 11}, {1, 21}, {1, 22}, {2, 31}, {2, 32}};
  double worst = 0;
  for (const auto& e : corpus) {
    TensorField f = make_phantom(g, random_phantom(2, e.m, g.L, e.seed));
    FourierSampler sampler(f, 4);
    for (const auto& deg : degree_signatures(2, e.m)) {
      Signature sig = Signature::frame_degrees(deg);
      worst = std::max(worst, rel_sino(grt(f, sig, dg), grt_fourier(sampler, sig, dg)));
    }
  }
  r.value = worst;
  r.pass = worst <= r.threshold;
  return r;
}

CriterionResult criterion_fourier_slice() {
  CriterionResult r;
  r.name = "Fourier slice identity vs closed-form spectrum";
  r.threshold = 1e-3;
  Grid g{2, 3.0, 64};
  DirectionGrid dg = standard_dgrid_2d(g);
  PhantomSpec spec = random_phantom(2, 2, g.L, 31);
  TensorField f = make_phantom(g, spec);
  const double half_nyq = std::numbers::pi / (2.0 * dg.hp);
  const std::size_t M = dg.p.size();
  const double slice = std::pow(2.0 * std::numbers::pi, 0.5);
  double worst = 0;
  for (const Signature& sig : {Signature::pair_degrees(1, 1), Signature::frame_degrees({1, 1})}) {
    Sinogram data = grt(f, sig, dg);
    double num = 0, den = 0;
    for (std::size_t j = 0; j < dg.dirs(); ++j) {
      for (int ui = 0; ui < data.u_extent(); ++ui) {
        auto gh = p_to_sigma(std::span<const double>(data.row(j, ui), M), dg.hp);
        SymTensor w = signature_tensor(sig, dg, j, ui);
        for (std::size_t l = 0; l < M; ++l) {
          double sigma = sigma_of_slot(l, M, dg.hp);
          if (std::abs(sigma) > half_nyq) continue;
          CVec fh = phantom_fourier(spec, Vec(sigma * dg.omegas[j]));
          std::complex<double> ref = slice * pair(fh, w);
          num += std::norm(gh[l] - ref);
          den += std::norm(ref);
        }
      }
    }
    worst = std::max(worst, std::sqrt(num / den));
  }
  r.value = worst;
  r.pass = worst <= r.threshold;
  return r;
}

CriterionResult criterion_kernel_annihilation() {
  CriterionResult r;
  r.name = "potential-field kernel and derivative identity";
  r.threshold = 1.0; // normalized: max(annihilation/1e-4, identity gap/1e-3)
  Grid g{2, 4.0, 64};
  DirectionGrid dg = make_direction_grid(2, 60, g.L * std::numbers::sqrt2 + 2.0 * g.h(), g.h());
  QuadratureOptions tight{4};
  const std::size_t M = dg.p.size();

  double worst = 0;
  struct Case { int m, k; std::uint64_t seed; };
  for (const auto& cs : {Case{1, 1, 41}, Case{2, 1, 42}, Case{2, 2, 43}}) {
    PhantomSpec vs = random_phantom(2, cs.m - cs.k, g.L, cs.seed);
    for (auto& t : vs.terms) t.width = 0.75;
    TensorField v = make_phantom(g, vs);
    TensorField f = apply_d_times(v, cs.k);

    // scale = largest row amplitude across all signatures of f
    std::vector<Sinogram> data;
    double scale = 0;
    for (const auto& deg : degree_signatures(2, cs.m)) {
      data.push_back(grt(f, Signature::frame_degrees(deg), dg, tight));
      scale = std::max(scale, data.back().max_abs());
    }
    for (std::size_t s = 0; s < data.size(); ++s) {
      int ln = degree_signatures(2, cs.m)[s][1];
      if (ln < cs.k) {
        worst = std::max(worst, data[s].max_abs() / (1e-4 * scale));
      } else {
        Sinogram base = grt(v, Signature::frame_degrees({cs.m - cs.k - (ln - cs.k), ln - cs.k}), dg, tight);
        double kappa = potential_factor(cs.m, ln, cs.k);
        Sinogram rhs = base;
        for (std::size_t j = 0; j < dg.dirs(); ++j) {
          auto der = p_derivative(std::span<const double>(base.row(j, 0), M), dg.hp, cs.k);
          for (std::size_t pi = 0; pi < M; ++pi) rhs.row(j, 0)[pi] = kappa * der[pi];
        }
        worst = std::max(worst, rel_sino(data[s], rhs) / 1e-3);
      }
    }
  }
  r.value = worst;
  r.pass = worst <= r.threshold;
  return r;
}

CriterionResult criterion_divergence_identity() {
  CriterionResult r;
  r.name = "divergence identity (transform of delta^j v)";
  r.threshold = 1e-3;
  Grid g{2, 3.0, 64};
  DirectionGrid dg = standard_dgrid_2d(g, 120);
  const std::size_t M = dg.p.size();
  double worst = 0;
  struct Case { int j, k; std::uint64_t seed; };
  for (const auto& cs : {Case{1, 0, 51}, Case{2, 0, 52}, Case{1, 1, 53},
                         Case{2, 1, 54}, Case{1, 2, 55}, Case{2, 2, 56}}) {
    TensorField v = make_phantom(g, random_phantom(2, cs.j + cs.k, g.L, cs.seed));
    TensorField dv = apply_delta_times(v, cs.j);
    FourierSampler sv(v, 4), sdv(dv, 4);
    for (const auto& deg : degree_signatures(2, cs.k)) {
      Sinogram lhs = grt_fourier(sdv, Signature::frame_degrees(deg), dg);
      Sinogram base = grt_fourier(sv, Signature::frame_degrees({deg[0], deg[1] + cs.j}), dg);
      Sinogram rhs = base;
      for (std::size_t jj = 0; jj < dg.dirs(); ++jj) {
        auto der = p_derivative(std::span<const double>(base.row(jj, 0), M), dg.hp, cs.j);
        for (std::size_t pi = 0; pi < M; ++pi) rhs.row(jj, 0)[pi] = der[pi];
      }
      worst = std::max(worst, rel_sino(lhs, rhs));
    }
  }
  r.value = worst;
  r.pass = worst <= r.threshold;
  return r;
}

CriterionResult criterion_decomposition() {
  CriterionResult r;
  r.name = "solenoidal-potential decomposition";
  r.threshold = 1.0; // normalized: residual/1e-6, certificates/1e-8, round trip/1e-6
  Grid g{2, 3.0, 64};
  double worst = 0;
  for (int m = 1; m <= 3; ++m) {
    TensorField f = make_phantom(g, random_phantom(2, m, g.L, 60 + static_cast<std::uint64_t>(m)));
    DecompositionResult dr = decompose(f);
    worst = std::max(worst, dr.residual / 1e-6);
    for (double c : dr.solenoidality) worst = std::max(worst, c / 1e-8);

    // uniqueness: rebuild from hand-made components and re-decompose
    std::vector<TensorField> v;
    for (int i = 0; i <= m; ++i) {
      TensorField w =
          make_phantom(g, random_phantom(2, m - i, g.L, 70 + static_cast<std::uint64_t>(10 * m + i),
                                         2, /*zero_mean=*/true));
      v.push_back(i < m ? solenoidal_project(w) : w);
    }
    DecompositionResult back = decompose(assemble_potentials(v));
    for (int i = 0; i <= m; ++i) {
      double denom = l2_norm(v[static_cast<std::size_t>(i)]);
      if (denom == 0) continue;
      worst = std::max(worst, rel_l2(back.v[static_cast<std::size_t>(i)], v[static_cast<std::size_t>(i)]) / 1e-6);
    }
  }
  r.value = worst;
  r.pass = worst <= r.threshold;
  return r;
}

CriterionResult criterion_inversion() {
  CriterionResult r;
  r.name = "full inversion round trip";
  r.threshold = 1.0; // normalized: round trip/5e-2, perturbation stability/1e-2
  Grid g{2, 3.0, 64};
  DirectionGrid dg = standard_dgrid_2d(g);
  double worst = 0;
  for (int m = 0; m <= 2; ++m) {
    TensorField f = make_phantom(g, random_phantom(2, m, g.L, 80 + static_cast<std::uint64_t>(m)));
    GrtDataset ds = make_dataset(f, dg, ForwardMethod::Quadrature);
    TensorField rec = invert_full(ds, g);
    worst = std::max(worst, rel_l2(rec, f) / 5e-2);
  }
  // component independence: adding a potential term must not move v_0
  TensorField f = make_phantom(g, random_phantom(2, 2, g.L, 83));
  TensorField q = make_phantom(g, random_phantom(2, 1, g.L, 84, 2, true));
  TensorField f2 = f;
  axpy(1.0, apply_d(q), f2);
  GrtDataset d1 = make_dataset(f, dg, ForwardMethod::FourierSlice);
  GrtDataset d2 = make_dataset(f2, dg, ForwardMethod::FourierSlice);
  TensorField v0a = recover_component(d1, 0, g);
  TensorField v0b = recover_component(d2, 0, g);
  worst = std::max(worst, rel_l2(v0b, v0a) / 1e-2);
  r.value = worst;
  r.pass = worst <= r.threshold;
  return r;
}

CriterionResult criterion_reshetnyak() {
  CriterionResult r;
  r.name = "isometry between data and field norms";
  r.threshold = 3e-2;
  double worst64 = 0, worst128 = 0;
  struct Case { int l1, l2; std::uint64_t seed; };
  const Case cases[] = {{0, 0, 91}, {0, 1, 92}, {1, 0, 93}};
  const SobolevIndex indices[] = {{0, 0}, {1, 0}};
  for (int N : {64, 128}) {
    Grid g{2, 3.0, N};
    DirectionGrid dg = standard_dgrid_2d(g);
    for (const auto& cs : cases) {
      TensorField f = make_phantom(g, random_phantom(2, cs.l1 + cs.l2, g.L, cs.seed));
      for (const auto& idx : indices) {
        double gap = reshetnyak_check(f, cs.l1, cs.l2, idx, dg).rel_gap;
        (N == 64 ? worst64 : worst128) = std::max(N == 64 ? worst64 : worst128, gap);
      }
    }
  }
  r.value = worst64;
  r.pass = worst64 <= r.threshold && worst128 < worst64;
  std::ostringstream os;
  os << "gap(N=64)=" << worst64 << " gap(N=128)=" << worst128;
  r.detail = os.str();
  return r;
}

CriterionResult criterion_range() {
  CriterionResult r;
  r.name = "range characterization (necessity + violators)";
  r.threshold = 1.0;
  Grid g{2, 3.0, 64};
  DirectionGrid dg = standard_dgrid_2d(g);
  double worst = 0;
  bool violators_fail = true;

  struct Case { int l1, l2; std::uint64_t seed; };
  for (const auto& cs : {Case{0, 0, 101}, Case{0, 1, 102}, Case{1, 0, 103}, Case{1, 1, 104}}) {
    TensorField f = make_phantom(g, random_phantom(2, cs.l1 + cs.l2, g.L, cs.seed));
    Sinogram data = grt_fourier(f, Signature::pair_degrees(cs.l1, cs.l2), dg);
    RangeReport rep = range_check(data, 4);
    worst = std::max(worst, rep.parity_defect / 1e-10);
    for (const auto& fit : rep.moment_fits) worst = std::max(worst, fit.rel_residual / 1e-3);
  }

  // violator 1: break parity
  {
    TensorField f = make_phantom(g, random_phantom(2, 1, g.L, 103));
    Sinogram bad = grt_fourier(f, Signature::pair_degrees(1, 0), dg);
    bad.values[bad.values.size() / 3] += 0.5 * (bad.max_abs() + 1.0);
    if (range_check(bad, 2).verdict) violators_fail = false;
  }
  // violators 2-3: even data with a non-polynomial / wrong-degree moment
  auto profile_sino = [&](auto&& weight) {
    Sinogram bad(Signature::pair_degrees(0, 0), dg);
    for (std::size_t j = 0; j < dg.dirs(); ++j)
      for (int ui = 0; ui < bad.u_extent(); ++ui)
        for (std::size_t pi = 0; pi < bad.row_len(); ++pi)
          bad.at(j, ui, pi) = weight(dg.omegas[j]) * std::exp(-dg.p[pi] * dg.p[pi]);
    return bad;
  };
  if (range_check(profile_sino([](const Vec& w) { return std::exp(w[0] * w[0]); }), 2).verdict)
    violators_fail = false;
  if (range_check(profile_sino([](const Vec& w) { return w[0] * w[0]; }), 2).verdict)
    violators_fail = false;

  r.value = worst;
  r.pass = worst <= r.threshold && violators_fail;
  if (!violators_fail) r.detail = "a constructed violator was not rejected";
  return r;
}

CriterionResult criterion_ucp_odd() {
  CriterionResult r;
  r.name = "odd-dimension non-uniqueness counterexample";
  r.threshold = 5e-2; // interior/exterior ratio
  Grid g{3, 3.0, 64};
  double hp = g.h();
  DirectionGrid dg = make_direction_grid(3, 500, 4.0, hp);
  double worst_ratio = 0;
  bool ok = true;
  std::ostringstream detail;
  struct Case { int m, i; };
  for (const auto& cs : {Case{0, 0}, Case{2, 1}}) {
    UcpReport rep = ucp_counterexample(cs.m, cs.i, 2.0, g, dg);
    double ratio = rep.exterior_norm > 0 ? rep.interior_norm / rep.exterior_norm : 1.0;
    worst_ratio = std::max(worst_ratio, ratio);
    if (rep.data_norm_on_U_planes != 0.0 || rep.exterior_norm <= 1e-3) ok = false;
    detail << "m=" << cs.m << ",i=" << cs.i << ": ratio=" << ratio
           << " ext=" << rep.exterior_norm << "; ";
  }
  r.value = worst_ratio;
  r.pass = ok && worst_ratio <= r.threshold;
  r.detail = detail.str();
  return r;
}

CriterionResult criterion_ucp_even() {
  CriterionResult r;
  r.name = "even-dimension data margin on interior planes";
  r.threshold = 1e-3; // minimum margin, pass iff value >= threshold
  Grid g{2, 3.0, 64};
  DirectionGrid dg = standard_dgrid_2d(g);
  double worst = 1.0;
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    UcpReport rep = ucp_uniqueness_experiment(0, 0, shell_scalar_field(g, 110 + seed), dg);
    worst = std::min(worst, rep.margin);
  }
  for (std::uint64_t seed = 9; seed <= 10; ++seed) {
    UcpReport rep = ucp_uniqueness_experiment(1, 0, shell_solenoidal_field(g, 110 + seed), dg);
    worst = std::min(worst, rep.margin);
  }
  r.value = worst;
  r.pass = worst >= r.threshold;
  return r;
}

} // namespace

SelftestResult run_selftest(bool verbose) {
  SelftestResult res;
  using Fn = CriterionResult (*)();
  const Fn criteria[] = {
      criterion_forward_crossval, criterion_fourier_slice, criterion_kernel_annihilation,
      criterion_divergence_identity, criterion_decomposition, criterion_inversion,
      criterion_reshetnyak, criterion_range, criterion_ucp_odd, criterion_ucp_even,
  };
  auto t0 = Clock::now();
  res.all_pass = true;
  for (Fn fn : criteria) {
    auto c0 = Clock::now();
    CriterionResult c = fn();
    c.seconds = std::chrono::duration<double>(Clock::now() - c0).count();
    if (!c.pass) res.all_pass = false;
    if (verbose) {
      std::cerr << (c.pass ? "PASS " : "FAIL ") << c.name << "  value=" << c.value
                << " threshold=" << c.threshold << " (" << c.seconds << " s)";
      if (!c.detail.empty()) std::cerr << "  [" << c.detail << "]";
      std::cerr << std::endl;
    }
    res.criteria.push_back(std::move(c));
  }
  res.total_seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  return res;
}

} // namespace grt
