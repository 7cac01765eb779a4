#include "grt/radon.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace grt;

namespace {

PhantomSpec gaussian_spec(int n, double coef, double width, std::vector<double> center,
                          std::size_t component = 0, int m = 0) {
  PhantomSpec spec;
  spec.n = n;
  spec.m = m;
  PhantomTerm t;
  t.component = component;
  t.coef = coef;
  t.expo.assign(static_cast<std::size_t>(n), 0);
  t.center = std::move(center);
  t.width = width;
  spec.terms.push_back(std::move(t));
  return spec;
}

double rel_sino(const Sinogram& a, const Sinogram& b) {
  double num = 0, den = 0;
  for (std::size_t i = 0; i < a.values.size(); ++i) {
    num += (a.values[i] - b.values[i]) * (a.values[i] - b.values[i]);
    den += b.values[i] * b.values[i];
  }
  return den > 0 ? std::sqrt(num / den) : std::sqrt(num);
}

} // namespace

TEST_CASE("radon_scalar: closed-form Gaussian, n=2") {
  Grid g{2, 3.0, 64};
  PhantomSpec spec = gaussian_spec(2, 0.8, 0.6, {0.3, -0.2});
  TensorField f = make_phantom(g, spec);
  DirectionGrid dg = make_direction_grid(2, 40, 4.3, g.h());
  Sinogram s = radon_scalar(f, dg);
  double worst = 0, scale = 0;
  for (std::size_t j = 0; j < dg.dirs(); ++j) {
    for (std::size_t pi = 0; pi < dg.p.size(); ++pi) {
      Vec c(2);
      c << 0.3, -0.2;
      double ref = 0.8 * oracle::gaussian_radon(c, 0.6, dg.omegas[j], dg.p[pi]);
      worst = std::max(worst, std::abs(s.at(j, 0, pi) - ref));
      scale = std::max(scale, std::abs(ref));
    }
  }
  CHECK(worst / scale < 1e-4);
}

TEST_CASE("radon_scalar: closed-form Gaussian, n=3 spot check") {
  Grid g{3, 3.0, 32};
  PhantomSpec spec = gaussian_spec(3, 1.0, 0.55, {0.2, 0.1, -0.3});
  TensorField f = make_phantom(g, spec);
  DirectionGrid dg = make_direction_grid(3, 20, 4.0, g.h());
  Sinogram s = radon_scalar(f, dg);
  double worst = 0, scale = 0;
  for (std::size_t j = 0; j < dg.dirs(); ++j) {
    for (std::size_t pi = 0; pi < dg.p.size(); ++pi) {
      Vec c(3);
      c << 0.2, 0.1, -0.3;
      double ref = oracle::gaussian_radon(c, 0.55, dg.omegas[j], dg.p[pi]);
      worst = std::max(worst, std::abs(s.at(j, 0, pi) - ref));
      scale = std::max(scale, std::abs(ref));
    }
  }
  CHECK(worst / scale < 1e-3);
}

TEST_CASE("grt at order 0 reduces to the scalar transform") {
  Grid g{2, 3.0, 32};
  TensorField f = make_phantom(g, random_phantom(2, 0, g.L, 3));
  DirectionGrid dg = make_direction_grid(2, 24, 4.3, g.h());
  Sinogram a = radon_scalar(f, dg);
  Sinogram b = grt::grt(f, Signature::frame_degrees({0, 0}), dg);
  CHECK(rel_sino(b, a) < 1e-13);
  Sinogram c = grt::grt(f, Signature::pair_degrees(0, 0), dg);
  for (std::size_t j = 0; j < dg.dirs(); ++j)
    for (std::size_t pi = 0; pi < dg.p.size(); ++pi)
      CHECK(c.at(j, 0, pi) == doctest::Approx(a.at(j, 0, pi)).epsilon(1e-12));
}

TEST_CASE("signature tensors match their definitions") {
  DirectionGrid dg = make_direction_grid(2, 12, 2.0, 0.25, 4);
  std::size_t j = 5;
  SymTensor w_pair = signature_tensor(Signature::pair_degrees(1, 1), dg, j, 2);
  SymTensor ref = sym_product(sym_power(dg.omegas[j], 1), sym_power(dg.u_vector(j, 2), 1));
  for (Eigen::Index i = 0; i < ref.c.size(); ++i)
    CHECK(w_pair.c[i] == doctest::Approx(ref.c[i]).epsilon(1e-13));

  SymTensor w_frame = signature_tensor(Signature::frame_degrees({1, 1}), dg, j, 0);
  SymTensor ref2 = frame_tensor(dg.frames[j], {1, 1});
  for (Eigen::Index i = 0; i < ref2.c.size(); ++i)
    CHECK(w_frame.c[i] == doctest::Approx(ref2.c[i]).epsilon(1e-13));
}

TEST_CASE("grt decomposes over stored components") {
  Grid g{2, 3.0, 32};
  TensorField f = make_phantom(g, random_phantom(2, 2, g.L, 7));
  DirectionGrid dg = make_direction_grid(2, 16, 4.3, g.h());
  Signature sig = Signature::frame_degrees({1, 1});
  Sinogram whole = grt::grt(f, sig, dg);
  auto comps = radon_componentwise(f, dg);
  const auto& tab = SymIndexTable::get(2, 2);
  double worst = 0;
  for (std::size_t j = 0; j < dg.dirs(); ++j) {
    SymTensor w = signature_tensor(sig, dg, j, 0);
    for (std::size_t pi = 0; pi < dg.p.size(); ++pi) {
      double acc = 0;
      for (std::size_t ci = 0; ci < tab.dim(); ++ci)
        acc += tab.multiplicity(ci) * w.c[static_cast<Eigen::Index>(ci)] * comps[ci].at(j, 0, pi);
      worst = std::max(worst, std::abs(whole.at(j, 0, pi) - acc));
    }
  }
  CHECK(worst < 1e-10 * (1.0 + whole.max_abs()));
}

TEST_CASE("frame-mode parity: data is even/odd in the normal degree") {
  Grid g{2, 3.0, 32};
  TensorField f = make_phantom(g, random_phantom(2, 2, g.L, 9));
  DirectionGrid dg = make_direction_grid(2, 24, 4.3, g.h());
  for (const auto& deg : degree_signatures(2, 2)) {
    Sinogram s = grt::grt(f, Signature::frame_degrees(deg), dg);
    double sgn = deg[1] % 2 == 0 ? 1.0 : -1.0;
    double worst = 0;
    for (std::size_t j = 0; j < dg.dirs(); ++j) {
      auto ja = static_cast<std::size_t>(dg.antipode[j]);
      for (std::size_t pi = 0; pi < dg.p.size(); ++pi)
        worst = std::max(worst,
                         std::abs(s.at(ja, 0, dg.p_index_of_neg(pi)) - sgn * s.at(j, 0, pi)));
    }
    CHECK(worst < 1e-10 * (1.0 + s.max_abs()));
  }
}

TEST_CASE("quadrature vs Fourier slice route, small case") {
  Grid g{2, 3.0, 32};
  TensorField f = make_phantom(g, random_phantom(2, 1, g.L, 13));
  DirectionGrid dg = make_direction_grid(2, 30, 4.3, g.h());
  for (const auto& deg : degree_signatures(2, 1)) {
    Signature sig = Signature::frame_degrees(deg);
    CHECK(rel_sino(grt::grt(f, sig, dg), grt_fourier(f, sig, dg)) < 2e-3);
  }
}

TEST_CASE("grt is linear in the field") {
  Grid g{2, 3.0, 32};
  TensorField a = make_phantom(g, random_phantom(2, 1, g.L, 15));
  TensorField b = make_phantom(g, random_phantom(2, 1, g.L, 16));
  TensorField sum = a;
  axpy(1.0, b, sum);
  DirectionGrid dg = make_direction_grid(2, 12, 4.3, g.h());
  Signature sig = Signature::frame_degrees({0, 1});
  Sinogram sa = grt::grt(a, sig, dg), sb = grt::grt(b, sig, dg), ss = grt::grt(sum, sig, dg);
  double worst = 0;
  for (std::size_t i = 0; i < ss.values.size(); ++i)
    worst = std::max(worst, std::abs(ss.values[i] - sa.values[i] - sb.values[i]));
  CHECK(worst < 1e-10 * (1.0 + ss.max_abs()));
}

TEST_CASE("hyperplane_integral: Gaussian against the closed form") {
  Grid g{2, 3.0, 64};
  PhantomSpec spec = gaussian_spec(2, 1.0, 0.6, {0.1, 0.2});
  TensorField f = make_phantom(g, spec);
  TensorField up = upsample(f, 2);
  std::vector<double> scalar(up.data);
  Vec omega(2);
  omega << std::cos(0.7), std::sin(0.7);
  Frame fr = frame(omega);
  Vec c(2);
  c << 0.1, 0.2;
  for (double p : {-1.0, 0.0, 0.4, 1.3}) {
    double got = hyperplane_integral(scalar, up.grid, fr, p);
    double ref = oracle::gaussian_radon(c, 0.6, omega, p);
    CHECK(got == doctest::Approx(ref).epsilon(2e-4));
  }
}
