#include "grt/invert.hpp"

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

TEST_CASE("dataset bookkeeping: at, completeness, normal-degree slices") {
  Grid g{2, 3.0, 16};
  TensorField f = make_phantom(g, random_phantom(2, 1, g.L, 5));
  DirectionGrid dg = dgrid_for(g, 12);
  GrtDataset ds = make_dataset(f, dg, ForwardMethod::FourierSlice);
  CHECK(ds.data.size() == degree_signatures(2, 1).size());
  CHECK_NOTHROW(ds.require_complete());
  CHECK_NOTHROW(ds.at({0, 1}));
  CHECK_THROWS(ds.at({3, 0}));

  auto sigs = ds.signatures_with_normal_degree(1);
  REQUIRE(sigs.size() == 1);
  CHECK(sigs[0] == std::vector<int>{0, 1});

  GrtDataset incomplete = ds;
  incomplete.data.erase({1, 0});
  CHECK_THROWS(incomplete.require_complete());
}

TEST_CASE("radon_invert: scalar round trip, n=2") {
  Grid g{2, 3.0, 64};
  TensorField f = make_phantom(g, random_phantom(2, 0, g.L, 11));
  DirectionGrid dg = dgrid_for(g, 180);
  Sinogram s = grt::grt(f, Signature::frame_degrees({0, 0}), dg);
  double resid = 0;
  TensorField back = radon_invert(s, g, &resid);
  CHECK(resid < 1e-6);
  CHECK(oracle::rel_err(back, f) < 3e-2);
}

TEST_CASE("radon_invert: scalar round trip, n=3 spot check") {
  Grid g{3, 3.0, 32};
  TensorField f = make_phantom(g, random_phantom(3, 0, g.L, 13));
  DirectionGrid dg = dgrid_for(g, 800);
  Sinogram s = grt_fourier(f, Signature::frame_degrees({0, 0, 0}), dg);
  TensorField back = radon_invert(s, g);
  CHECK(oracle::rel_err(back, f) < 1e-1);
}

TEST_CASE("assemble_normal_data wiring: bottom and top stages, n=2, m=1") {
  Grid g{2, 3.0, 48};
  TensorField f = make_phantom(g, random_phantom(2, 1, g.L, 17));
  DirectionGrid dg = dgrid_for(g, 40);
  GrtDataset ds = make_dataset(f, dg, ForwardMethod::FourierSlice);
  const std::size_t M = dg.p.size();

  // i = m: single scalar row = d/dp^m of the fully-normal signature
  auto top = assemble_normal_data(ds, 1);
  REQUIRE(top.size() == 1);
  const Sinogram& normal = ds.at({0, 1});
  double worst = 0;
  for (std::size_t j = 0; j < dg.dirs(); ++j) {
    auto der = p_derivative(std::span<const double>(normal.row(j, 0), M), dg.hp, 1);
    for (std::size_t pi = 0; pi < M; ++pi)
      worst = std::max(worst, std::abs(top[0].at(j, 0, pi) - der[pi]));
  }
  CHECK(worst < 1e-10 * (1.0 + normal.max_abs()));

  // i = 0: components weighted by the tangent vector coordinates
  auto bot = assemble_normal_data(ds, 0);
  REQUIRE(bot.size() == 2);
  const Sinogram& tang = ds.at({1, 0});
  worst = 0;
  for (std::size_t j = 0; j < dg.dirs(); ++j) {
    const Vec& u = dg.frames[j].tangent[0];
    for (std::size_t ci = 0; ci < 2; ++ci)
      for (std::size_t pi = 0; pi < M; ++pi)
        worst = std::max(worst, std::abs(bot[ci].at(j, 0, pi) -
                                         u[static_cast<Eigen::Index>(ci)] * tang.at(j, 0, pi)));
  }
  CHECK(worst < 1e-10 * (1.0 + tang.max_abs()));
}

TEST_CASE("recover_component agrees with the spectral decomposition") {
  Grid g{2, 3.0, 64};
  TensorField f = make_phantom(g, random_phantom(2, 1, g.L, 19, 2, true));
  DirectionGrid dg = dgrid_for(g, 180);
  GrtDataset ds = make_dataset(f, dg, ForwardMethod::FourierSlice);
  DecompositionResult dr = decompose(f);
  for (int i = 0; i <= 1; ++i) {
    ComponentReport rep;
    TensorField v = recover_component(ds, i, g, {}, &rep);
    CHECK(rep.gridding_imag_residue < 1e-6);
    CHECK(oracle::rel_err(v, dr.v[static_cast<std::size_t>(i)]) < 5e-2);
  }
}

TEST_CASE("invert_full round trip, n=2, m=1") {
  Grid g{2, 3.0, 64};
  TensorField f = make_phantom(g, random_phantom(2, 1, g.L, 23, 2, true));
  DirectionGrid dg = dgrid_for(g, 180);
  GrtDataset ds = make_dataset(f, dg, ForwardMethod::FourierSlice);
  InversionReport rep;
  TensorField back = invert_full(ds, g, {}, &rep);
  CHECK(rep.stages.size() == 2);
  CHECK(oracle::rel_err(back, f) < 5e-2);
}

TEST_CASE("radon_invert rejects mismatched input") {
  Grid g2{2, 3.0, 16};
  Grid g3{3, 3.0, 16};
  TensorField f = make_phantom(g2, random_phantom(2, 0, g2.L, 29));
  DirectionGrid dg = dgrid_for(g2, 12);
  Sinogram s = grt::grt(f, Signature::frame_degrees({0, 0}), dg);
  CHECK_THROWS(radon_invert(s, g3));
  Sinogram pairmode = grt::grt(f, Signature::pair_degrees(0, 0), dg);
  CHECK_THROWS(radon_invert(pairmode, g2));
}
