#include "grt/analysis.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace grt;

namespace {

DirectionGrid dgrid_for(const Grid& g, int dirs) {
  double p_max = g.L * std::sqrt(static_cast<double>(g.n)) + 2.0 * g.h();
  return make_direction_grid(g.n, dirs, p_max, g.h());
}

} // namespace

TEST_CASE("weighted_norm at s=t=0 is the plain L2 norm") {
  Grid g{2, 3.0, 32};
  for (int m : {0, 1}) {
    TensorField f = make_phantom(g, random_phantom(2, m, g.L, 40 + static_cast<std::uint64_t>(m)));
    CHECK(weighted_norm(f, {0.0, 0.0}) == doctest::Approx(l2_norm(f)).epsilon(1e-10));
  }
}

TEST_CASE("weighted_norm with s=t: pure |y|^{2t} weight vs direct quadrature") {
  Grid g{2, 3.0, 32};
  TensorField f = make_phantom(g, random_phantom(2, 0, g.L, 43));
  SpectralField F = dft_forward(f);
  const double t = 1.0;
  double acc = 0;
  for (std::size_t node = 0; node < g.nodes(); ++node) {
    auto idx = g.unflatten(node);
    double r2 = 0;
    for (int d = 0; d < 2; ++d) {
      double y = g.freq(idx[static_cast<std::size_t>(d)]);
      r2 += y * y;
    }
    acc += std::pow(r2, t) * std::norm(F.data[node]);
  }
  double ref = std::sqrt(acc * std::pow(g.dxi(), 2));
  CHECK(weighted_norm(f, {t, t}) == doctest::Approx(ref).epsilon(1e-10));
}

TEST_CASE("weighted_norm_tensor at order 0 integrates the tangent sphere measure") {
  Grid g{2, 3.0, 32};
  TensorField f = make_phantom(g, random_phantom(2, 0, g.L, 47));
  // l1 = l2 = 0: the inner integral contributes |S^0| = 2 for every y != 0
  double a = weighted_norm_tensor(f, {0.0, 0.0}, 0, 0);
  double b = weighted_norm(f, {0.0, 0.0});
  // weighted_norm keeps the y = 0 cell; remove it for the comparison
  SpectralField F = dft_forward(f);
  double dc2 = std::norm(F.data[g.flatten({0, 0})]) * std::pow(g.dxi(), 2);
  double ref = std::sqrt(2.0 * (b * b - dc2));
  CHECK(a == doctest::Approx(ref).epsilon(1e-10));
}

TEST_CASE("weighted norms of zero are zero") {
  Grid g{2, 3.0, 16};
  TensorField z(g, 1);
  CHECK(weighted_norm(z, {1.0, 0.0}) == 0.0);
  CHECK(weighted_norm_tensor(z, {1.0, 0.0}, 0, 1) == 0.0);
  DirectionGrid dg = dgrid_for(g, 12);
  Sinogram zs(Signature::pair_degrees(0, 1), dg);
  CHECK(weighted_norm(zs, {1.0, 0.0}) == 0.0);
  ReshetnyakResult res = reshetnyak_check(z, 0, 1, {0.0, 0.0}, dg);
  CHECK(res.lhs == 0.0);
  CHECK(res.rhs == 0.0);
  CHECK(res.rel_gap == 0.0);
}

TEST_CASE("reshetnyak: classical Plancherel case m=0, n=2") {
  Grid g{2, 3.0, 64};
  TensorField f = make_phantom(g, random_phantom(2, 0, g.L, 51));
  DirectionGrid dg = dgrid_for(g, 180);
  ReshetnyakResult res = reshetnyak_check(f, 0, 0, {0.0, 0.0}, dg);
  CHECK(res.rel_gap < 2e-2);
}

TEST_CASE("reshetnyak index guard") {
  Grid g{2, 3.0, 16};
  TensorField f = make_phantom(g, random_phantom(2, 0, g.L, 53));
  CHECK_THROWS(weighted_norm(f, {0.0, -1.5}));
}

TEST_CASE("range_check passes forward data and reports tiny parity defect") {
  Grid g{2, 3.0, 48};
  TensorField f = make_phantom(g, random_phantom(2, 1, g.L, 61));
  DirectionGrid dg = dgrid_for(g, 60);
  Sinogram s = grt::grt(f, Signature::pair_degrees(0, 1), dg);
  RangeReport rep = range_check(s, 3);
  CHECK(rep.parity_defect < 1e-10);
  for (const auto& fit : rep.moment_fits) CHECK(fit.rel_residual < 1e-3);
  CHECK(rep.verdict);
}

TEST_CASE("range_check: constructed violators fail") {
  Grid g{2, 3.0, 32};
  DirectionGrid dg = dgrid_for(g, 40);

  // parity violator: g = p, independent of omega and u (m even)
  Sinogram odd_in_p(Signature::pair_degrees(0, 0), dg);
  for (std::size_t j = 0; j < dg.dirs(); ++j)
    for (int ui = 0; ui < odd_in_p.u_extent(); ++ui)
      for (std::size_t pi = 0; pi < dg.p.size(); ++pi) odd_in_p.at(j, ui, pi) = dg.p[pi];
  RangeReport rep = range_check(odd_in_p, 0);
  CHECK(rep.parity_defect > 0.5);
  CHECK_FALSE(rep.verdict);

  // moment violator: non-polynomial direction dependence
  Sinogram bad(Signature::pair_degrees(0, 0), dg);
  for (std::size_t j = 0; j < dg.dirs(); ++j) {
    double wgt = std::exp(dg.omegas[j][0] * dg.omegas[j][0]);
    for (int ui = 0; ui < bad.u_extent(); ++ui)
      for (std::size_t pi = 0; pi < dg.p.size(); ++pi)
        bad.at(j, ui, pi) = wgt * std::exp(-dg.p[pi] * dg.p[pi]);
  }
  RangeReport rep2 = range_check(bad, 2);
  CHECK(rep2.parity_defect < 1e-12);
  CHECK_FALSE(rep2.verdict);
}

TEST_CASE("range_check: zero data passes vacuously, frame mode rejected") {
  Grid g{2, 3.0, 16};
  DirectionGrid dg = dgrid_for(g, 12);
  Sinogram z(Signature::pair_degrees(0, 0), dg);
  RangeReport rep = range_check(z, 2);
  CHECK(rep.parity_defect == 0.0);
  CHECK(rep.verdict);
  Sinogram fr(Signature::frame_degrees({0, 0}), dg);
  CHECK_THROWS(range_check(fr, 2));
}

TEST_CASE("ucp_profile: support, smoothness at the edges, parity") {
  const double a = 2.0;
  for (int i : {0, 1}) {
    CHECK(ucp_profile(0.5, a, i) == 0.0);
    CHECK(ucp_profile(1.0, a, i) == 0.0);
    CHECK(ucp_profile(a, a, i) == 0.0);
    CHECK(ucp_profile(1.5, a, i) > 0.0);
    double sgn = i % 2 == 0 ? 1.0 : -1.0;
    CHECK(ucp_profile(-1.5, a, i) == doctest::Approx(sgn * ucp_profile(1.5, a, i)));
  }
}

TEST_CASE("even-profile moments of odd order vanish on the symmetric grid") {
  DirectionGrid dg = make_direction_grid(2, 8, 3.0, 0.05);
  const double a = 2.0;
  for (int k : {1, 3}) {
    double mom = 0;
    for (std::size_t pi = 0; pi < dg.p.size(); ++pi)
      mom += std::pow(dg.p[pi], k) * ucp_profile(dg.p[pi], a, 0);
    CHECK(std::abs(mom * dg.hp) < 1e-12);
  }
}

TEST_CASE("shell fields: support and solenoidality") {
  Grid g{2, 3.0, 48};
  TensorField s = shell_scalar_field(g, 7);
  double inside = 0, total = max_abs(s);
  for (std::size_t node = 0; node < g.nodes(); ++node) {
    auto idx = g.unflatten(node);
    double x = g.coord(idx[0]), y = g.coord(idx[1]);
    if (x * x + y * y < 0.5 * 0.5) inside = std::max(inside, std::abs(s.data[node]));
  }
  CHECK(total > 0.0);
  CHECK(inside < 1e-6 * total);

  TensorField v = shell_solenoidal_field(g, 9);
  CHECK(l2_norm(apply_delta(v)) < 1e-8 * (1.0 + l2_norm(v)));
  CHECK(l2_norm(v) > 0.0);
}

TEST_CASE("ucp_uniqueness_experiment: shell data reaches the unit ball") {
  Grid g{2, 3.0, 64};
  DirectionGrid dg = dgrid_for(g, 60);
  TensorField f = shell_scalar_field(g, 3);
  UcpReport rep = ucp_uniqueness_experiment(0, 0, f, dg);
  CHECK(rep.margin >= 1e-3);
  CHECK(rep.verdict);

  TensorField z(g, 0);
  UcpReport zr = ucp_uniqueness_experiment(0, 0, z, dg);
  CHECK(zr.margin == 0.0);
}

TEST_CASE("ucp_counterexample argument guards") {
  Grid g2{2, 3.0, 16};
  DirectionGrid dg = dgrid_for(g2, 12);
  CHECK_THROWS(ucp_counterexample(0, 0, 2.0, g2, dg)); // even n rejected
  Grid g3{3, 3.0, 16};
  DirectionGrid dg3 = make_direction_grid(3, 20, 6.0, g3.h());
  CHECK_THROWS(ucp_counterexample(0, 0, 0.5, g3, dg3)); // a <= 1 rejected
}
