#include "grt/geometry.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace grt;

TEST_CASE("direction grid n=2: units, antipodes, symmetric offsets") {
  DirectionGrid dg = make_direction_grid(2, 60, 4.0, 0.1);
  CHECK(dg.dirs() == 60);
  for (std::size_t j = 0; j < dg.dirs(); ++j) {
    CHECK(dg.omegas[j].norm() == doctest::Approx(1.0).epsilon(1e-13));
    auto ja = static_cast<std::size_t>(dg.antipode[j]);
    CHECK((dg.omegas[j] + dg.omegas[ja]).norm() < 1e-12);
    CHECK(static_cast<std::size_t>(dg.antipode[ja]) == j);
  }
  REQUIRE(!dg.p.empty());
  CHECK(dg.p.size() % 2 == 1);
  CHECK(dg.p.front() == doctest::Approx(-dg.p.back()).epsilon(1e-13));
  for (std::size_t k = 1; k < dg.p.size(); ++k)
    CHECK(dg.p[k] - dg.p[k - 1] == doctest::Approx(dg.hp).epsilon(1e-12));
  for (std::size_t k = 0; k < dg.p.size(); ++k)
    CHECK(dg.p[dg.p_index_of_neg(k)] == doctest::Approx(-dg.p[k]).epsilon(1e-12));
}

TEST_CASE("direction grid n=3: Fibonacci sphere, antipodally closed") {
  DirectionGrid dg = make_direction_grid(3, 100, 4.0, 0.2);
  CHECK(dg.dirs() >= 100);
  CHECK(dg.dirs() % 2 == 0);
  for (std::size_t j = 0; j < dg.dirs(); ++j) {
    CHECK(dg.omegas[j].norm() == doctest::Approx(1.0).epsilon(1e-13));
    auto ja = static_cast<std::size_t>(dg.antipode[j]);
    CHECK((dg.omegas[j] + dg.omegas[ja]).norm() < 1e-12);
  }
}

TEST_CASE("tangent vectors: unit, orthogonal to omega, antipodal pairing") {
  DirectionGrid dg = make_direction_grid(3, 20, 3.0, 0.2, 8);
  CHECK(dg.u_count == 8);
  for (std::size_t j = 0; j < dg.dirs(); ++j) {
    for (int ui = 0; ui < dg.u_count; ++ui) {
      Vec u = dg.u_vector(j, ui);
      CHECK(u.norm() == doctest::Approx(1.0).epsilon(1e-13));
      CHECK(std::abs(u.dot(dg.omegas[j])) < 1e-12);
      CHECK((u + dg.u_vector(j, dg.u_antipode(ui))).norm() < 1e-12);
    }
  }
}

TEST_CASE("sinogram indexing") {
  DirectionGrid dg = make_direction_grid(2, 8, 2.0, 0.25);
  Sinogram s(Signature::pair_degrees(1, 1), dg);
  CHECK(s.u_extent() == dg.u_count);
  s.at(3, 1, 5) = 2.5;
  CHECK(s.row(3, 1)[5] == 2.5);
  CHECK(s.max_abs() == 2.5);

  Sinogram fr(Signature::frame_degrees({1, 1}), dg);
  CHECK(fr.u_extent() == 1);
  CHECK(fr.values.size() == dg.dirs() * dg.p.size());
}

TEST_CASE("p_to_sigma matches the closed-form Gaussian transform") {
  const double hp = 0.05, c = 0.4, w = 0.6;
  const std::size_t M = 321;
  std::vector<double> row(M);
  for (std::size_t k = 0; k < M; ++k) {
    double p = (static_cast<double>(k) - static_cast<double>(M / 2)) * hp;
    row[k] = std::exp(-(p - c) * (p - c) / (w * w));
  }
  auto gh = p_to_sigma(row, hp);
  REQUIRE(gh.size() == M);
  double worst = 0;
  for (std::size_t l = 0; l < M; ++l) {
    double s = sigma_of_slot(l, M, hp);
    if (std::abs(s) > 0.5 * std::numbers::pi / hp) continue;
    worst = std::max(worst, std::abs(gh[l] - oracle::gaussian_ft_1d(c, w, s)));
  }
  CHECK(worst < 1e-10);

  double resid = 0;
  auto back = sigma_to_p(gh, hp, &resid);
  CHECK(resid < 1e-12);
  double rt = 0;
  for (std::size_t k = 0; k < M; ++k) rt = std::max(rt, std::abs(back[k] - row[k]));
  CHECK(rt < 1e-12);
}

TEST_CASE("p_derivative: spectral derivative of a Gaussian") {
  const double hp = 0.05, w = 0.5;
  const std::size_t M = 257;
  std::vector<double> row(M);
  for (std::size_t k = 0; k < M; ++k) {
    double p = (static_cast<double>(k) - static_cast<double>(M / 2)) * hp;
    row[k] = std::exp(-p * p / (w * w));
  }
  for (int order : {1, 2}) {
    auto der = p_derivative(row, hp, order);
    double worst = 0;
    for (std::size_t k = 0; k < M; ++k) {
      double p = (static_cast<double>(k) - static_cast<double>(M / 2)) * hp;
      double g = row[k];
      double ref = order == 1 ? -2.0 * p / (w * w) * g
                              : (4.0 * p * p / (w * w * w * w) - 2.0 / (w * w)) * g;
      worst = std::max(worst, std::abs(der[k] - ref));
    }
    CHECK(worst < 1e-9);
  }
}
