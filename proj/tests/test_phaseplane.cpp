#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "critgabor/metaplectic.hpp"
#include "critgabor/phaseplane.hpp"
#include "support.hpp"

using namespace critgabor;

TEST_CASE("symplectic form and J") {
  CHECK(symplectic_form({1, 0}, {0, 1}) == doctest::Approx(1.0));
  CHECK(symplectic_form({0, 1}, {1, 0}) == doctest::Approx(-1.0));
  CHECK(symplectic_form({2, 3}, {2, 3}) == 0.0);
  const PhasePoint j = apply_j({1.5, -2.0});
  CHECK(j.p == -2.0);
  CHECK(j.theta == -1.5);
  // J is the symplectic rotation by -pi/2
  const PhasePoint r = Rotation(-kPi / 2).apply({1.5, -2.0});
  CHECK(r.p == doctest::Approx(j.p));
  CHECK(r.theta == doctest::Approx(j.theta));
}

TEST_CASE("rotations preserve the symplectic form") {
  Rng rng(testing::kSeed);
  for (int t = 0; t < 100; ++t) {
    const Rotation s(rng.uniform(-kPi, kPi));
    const PhasePoint u{rng.uniform(-5, 5), rng.uniform(-5, 5)}, v{rng.uniform(-5, 5), rng.uniform(-5, 5)};
    CHECK(std::abs(symplectic_form(s.apply(u), s.apply(v)) - symplectic_form(u, v)) < 1e-12);
    CHECK(s.a * s.d - s.b * s.c == doctest::Approx(1.0).epsilon(1e-15));
  }
}

TEST_CASE("lattice indices") {
  const LatticeIndex s{2, -1, true};
  CHECK(s.point() == PhasePoint{2.5, -0.5});
  CHECK(LatticeIndex{2, -1, false}.point() == PhasePoint{2, -1});
  CHECK(LatticeIndex{0, 0, false} < LatticeIndex{0, 0, true});
  CHECK(LatticeIndex{-1, 5, true} < LatticeIndex{0, -5, false});
}

TEST_CASE("disk, rectangle, polygon distances") {
  const PhaseDomain d = PhaseDomain::disk({1, 1}, 2);
  CHECK(d.contains({2, 2}));
  CHECK_FALSE(d.contains({3.5, 1}));
  CHECK(d.distance({4, 1}) == doctest::Approx(1.0));

  const PhaseDomain r = PhaseDomain::rect(-1, 1, -2, 2);
  CHECK(r.contains({1, 2}));
  CHECK(r.distance({4, 6}) == doctest::Approx(5.0));
  CHECK(r.distance({0, 3}) == doctest::Approx(1.0));

  const PhaseDomain tri = PhaseDomain::polygon({{0, 0}, {4, 0}, {0, 4}});
  CHECK(tri.contains({1, 1}));
  CHECK_FALSE(tri.contains({3, 3}));
  CHECK(tri.distance({3, 3}) == doctest::Approx(std::sqrt(2.0)));
  CHECK(tri.distance({-1, -1}) == doctest::Approx(std::sqrt(2.0)));

  CHECK_FALSE(PhaseDomain::whole_plane().bounded());
  CHECK_THROWS_AS(lattice_points_in(PhaseDomain::whole_plane(), false), std::invalid_argument);
}

TEST_CASE("neighbourhoods and unions") {
  const PhaseDomain r = PhaseDomain::rect(0, 2, 0, 1);
  const PhaseDomain n = r.neighborhood(1.0);
  CHECK(n.contains({3, 0.5}));
  CHECK(n.contains({2.7, 1.7}));
  CHECK_FALSE(n.contains({2.8, 1.8}));  // rounded corner
  const PhaseDomain u = PhaseDomain::unite({PhaseDomain::disk({0, 0}, 1), PhaseDomain::disk({5, 0}, 1)});
  CHECK(u.contains({5.5, 0}));
  CHECK_FALSE(u.contains({2.5, 0}));
  CHECK(u.distance({2.5, 0}) == doctest::Approx(1.5));
  const PhaseDomain pts = PhaseDomain::points({{0, 0}, {3, 4}});
  CHECK(pts.distance({3, 0}) == doctest::Approx(3.0));
}

TEST_CASE("predicate domain approximates a disk") {
  const PhaseDomain p =
      PhaseDomain::predicate([](PhasePoint u) { return u.norm2() <= 4.0; }, {-2.5, 2.5, -2.5, 2.5}, 1.0 / 64);
  CHECK(p.contains({1, 1}));
  CHECK_FALSE(p.contains({2, 1}));
  CHECK(std::abs(p.distance({3, 0}) - 1.0) < 0.05);
  CHECK(std::abs(p.area(1.0 / 128) - 4.0 * kPi) < 0.05);
}

TEST_CASE("area of a disk") { CHECK(std::abs(PhaseDomain::disk({0.3, -0.2}, 2).area() - 4 * kPi) < 1e-2); }

TEST_CASE("lattice enumeration against brute force") {
  Rng rng(testing::kSeed);
  for (int t = 0; t < 20; ++t) {
    const PhasePoint c{rng.uniform(-2, 2), rng.uniform(-2, 2)};
    const double rad = rng.uniform(0.5, 4);
    const PhaseDomain d = PhaseDomain::disk(c, rad);
    for (bool sharp : {false, true}) {
      std::size_t expect = 0;
      const double off = sharp ? 0.5 : 0.0;
      for (int k = -10; k <= 10; ++k)
        for (int j = -10; j <= 10; ++j)
          if (std::hypot(k + off - c.p, j + off - c.theta) <= rad) ++expect;
      const auto got = lattice_points_in(d, sharp);
      CHECK(got.size() == expect);
      for (std::size_t i = 1; i < got.size(); ++i) CHECK(got[i - 1] < got[i]);
    }
  }
  CHECK(lattice_points_in(PhaseDomain::disk({0, 0}, 2.5), false).size() == 21);
}
