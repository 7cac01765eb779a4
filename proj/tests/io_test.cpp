#include "grt/io.hpp"

#include "grt/radon.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cstdio>
#include <cstring>
#include <fstream>
#include <string>

using namespace grt;

namespace {

struct TempFile {
  std::string path;
  explicit TempFile(const char* name) : path(std::string("io_test_") + name) {}
  ~TempFile() { std::remove(path.c_str()); }
};

bool bit_equal(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() &&
         std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

} // namespace

TEST_CASE("TFLD round trip is bit-exact") {
  TempFile tmp("f.tfld");
  Grid g{2, 3.0, 16};
  TensorField f = make_phantom(g, random_phantom(2, 2, g.L, 5));
  save_tfld(tmp.path, f);
  TensorField back = load_tfld(tmp.path);
  CHECK(back.grid == f.grid);
  CHECK(back.m == f.m);
  CHECK(bit_equal(back.data, f.data));
}

TEST_CASE("SINO round trip, frame mode") {
  TempFile tmp("g.sino");
  Grid g{2, 3.0, 16};
  TensorField f = make_phantom(g, random_phantom(2, 1, g.L, 7));
  DirectionGrid dg = make_direction_grid(2, 14, 4.4, g.h());
  Sinogram s = grt::grt(f, Signature::frame_degrees({1, 0}), dg);
  save_sino(tmp.path, s);
  Sinogram back = load_sino(tmp.path);
  CHECK(back.sig.kind == Signature::FrameDegrees);
  CHECK(back.sig.degrees == s.sig.degrees);
  CHECK(back.dgrid.dirs() == dg.dirs());
  CHECK(back.dgrid.hp == dg.hp);
  for (std::size_t j = 0; j < dg.dirs(); ++j) {
    CHECK((back.dgrid.omegas[j] - dg.omegas[j]).norm() == 0.0);
    CHECK(back.dgrid.antipode[j] == dg.antipode[j]);
  }
  CHECK(bit_equal(back.values, s.values));
}

TEST_CASE("SINO round trip, pair mode with tangent axis") {
  TempFile tmp("gp.sino");
  Grid g{3, 3.0, 16};
  TensorField f = make_phantom(g, random_phantom(3, 2, g.L, 9));
  DirectionGrid dg = make_direction_grid(3, 16, 5.5, g.h(), 6);
  Sinogram s = grt_fourier(f, Signature::pair_degrees(1, 1), dg);
  save_sino(tmp.path, s);
  Sinogram back = load_sino(tmp.path);
  CHECK(back.sig.kind == Signature::PairDegrees);
  CHECK(back.sig.l1 == 1);
  CHECK(back.sig.l2 == 1);
  CHECK(back.dgrid.u_count == 6);
  CHECK(bit_equal(back.values, s.values));
}

TEST_CASE("I/O error paths") {
  CHECK_THROWS_AS(load_tfld("does_not_exist.tfld"), IoError);
  CHECK_THROWS_AS(load_sino("does_not_exist.sino"), IoError);

  TempFile bad("bad.tfld");
  {
    std::ofstream os(bad.path);
    os << "WRONG n=2 m=0 N=8 L=3 order=lex-nondecreasing\n";
  }
  CHECK_THROWS_AS(load_tfld(bad.path), IoError);

  TempFile trunc("trunc.tfld");
  {
    std::ofstream os(trunc.path);
    os << "TFLD1 n=2 m=0 N=8 L=3 order=lex-nondecreasing\n";
    double v = 1.0;
    os.write(reinterpret_cast<const char*>(&v), sizeof(v)); // far too short
  }
  CHECK_THROWS_AS(load_tfld(trunc.path), IoError);
}
