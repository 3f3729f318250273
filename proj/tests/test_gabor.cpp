#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "critgabor/expansion.hpp"
#include "critgabor/gabor.hpp"
#include "support.hpp"

using namespace critgabor;
using testing::baseline;

TEST_CASE("atoms") {
  const Grid g = baseline();
  CHECK(std::abs(l2norm(atom({0, 0}, g)) - 1.0) < 1e-10);
  const SampledSignal a = atom({0, 0}, g), b = atom({0, 2.7}, g);
  for (std::size_t i = 0; i < g.size(); i += 17) {
    CHECK(std::abs(std::abs(b[i]) - std::abs(a[i])) < 1e-15);
    CHECK(std::abs(std::abs(a[i]) - std::pow(2.0, 0.25) * std::exp(-kPi * g.x(i) * g.x(i))) < 1e-15);
  }
  CHECK(std::abs(inner(atom({1, 0}, g), atom({0, 0}, g)) - std::exp(-kPi / 2)) < 1e-8);
  CHECK(std::exp(-kPi / 2) == doctest::Approx(0.207880).epsilon(1e-5));
  CHECK_THROWS_AS(atom({4.5, 0}, g), std::out_of_range);
  CHECK_NOTHROW(atom({4.0, 0}, g));
}

TEST_CASE("closed-form atom inner products") {
  const Grid g = baseline();
  CHECK(std::abs(atom_inner({0.3, 0.4}, {0.3, 0.4}) - 1.0) < 1e-15);
  const cplx v = atom_inner({1, 0}, {0, 0});
  CHECK(v.real() == doctest::Approx(std::exp(-kPi / 2)));
  CHECK(std::abs(v.imag()) < 1e-16);
  // lattice points: <e_lambda|e_mu> = exp(pi i p theta - pi/2 (p^2 + theta^2)) at lambda - mu = (p, theta)
  for (int k = -2; k <= 2; ++k)
    for (int j = -2; j <= 2; ++j) {
      const PhasePoint lam{double(k + 1), double(j)}, mu{1, 0};
      const PhasePoint d = lam - mu;
      const cplx expect = std::exp(cplx(0, kPi * d.p * d.theta) - kPi / 2 * d.norm2());
      CHECK(std::abs(atom_inner(lam, mu) - expect) < 1e-14);
    }
  Rng rng(testing::kSeed);
  for (int t = 0; t < 100; ++t) {
    auto pick = [&rng] {
      const double r = 3.0 * std::sqrt(rng.uniform()), a = rng.uniform(-kPi, kPi);
      return PhasePoint{r * std::cos(a), r * std::sin(a)};
    };
    const PhasePoint a = pick(), b = pick();
    const cplx closed = atom_inner(a, b);
    CHECK(std::abs(closed - inner(atom(a, g), atom(b, g))) < 1e-8);
    CHECK(std::abs(std::abs(closed) - std::exp(-kPi * (a - b).norm2() / 2)) < 1e-14);
  }
}

TEST_CASE("Gabor transform of an atom") {
  const Grid g = baseline();
  const PhasePoint mu{0.7, -0.4};
  const GaborField v = gabor_transform(atom(mu, g), {-3, 3, -3, 3}, 0.25);
  for (std::size_t i = 0; i < v.np(); ++i)
    for (std::size_t j = 0; j < v.nt(); ++j)
      CHECK(std::abs(std::abs(v.at(i, j)) - std::exp(-kPi * (v.point(i, j) - mu).norm2() / 2)) < 1e-12);
  const GaborField z = gabor_transform(SampledSignal(g), {-1, 1, -1, 1}, 0.5);
  for (cplx c : z.values()) CHECK(c == cplx(0.0));
  CHECK_THROWS(gabor_transform(atom(mu, g), {-9, 9, -1, 1}, 0.5));
}

TEST_CASE("Parseval at the baseline discretization") {
  const Grid g = baseline();
  for (int n : {0, 2}) {
    const SampledSignal f = hermite_signal(n, g);
    const GaborField v = gabor_transform(f, baseline_box(g), 1.0 / 16);
    CHECK(std::abs(v.mass() / std::pow(l2norm(f), 2) - 1.0) < 1e-3);
    CHECK(v.mass() <= std::pow(l2norm(f), 2) * (1 + 1e-12));
  }
}

TEST_CASE("real even signal has a symmetric transform modulus") {
  const Grid g = baseline();
  const SampledSignal f = hermite_signal(2, g);
  const GaborField v = gabor_transform(f, {-3, 3, -3, 3}, 0.25);
  const std::size_t np = v.np(), nt = v.nt();
  for (std::size_t i = 0; i < np; ++i)
    for (std::size_t j = 0; j < nt; ++j)
      CHECK(std::abs(std::abs(v.at(i, j)) - std::abs(v.at(np - 1 - i, nt - 1 - j))) < 1e-10);
}

TEST_CASE("weak reconstruction from the transform") {
  const Grid g = baseline();
  for (int n = 0; n <= 3; ++n) {
    const SampledSignal f = hermite_signal(n, g);
    const GaborField v = gabor_transform(f, baseline_box(g), 1.0 / 16);
    const SampledSignal back = reconstruct_from_field(v, g);
    CHECK(l2norm(back - f) / l2norm(f) <= 1e-2);
  }
}

TEST_CASE("synthesis") {
  const Grid g = baseline();
  CoefficientSet one;
  one.set({1, -1, false}, 1.0);
  CHECK(testing::max_abs_diff(synthesize(one, g), atom({1, -1}, g)) < 1e-15);

  double s = 0.0;
  for (int k = 60; k >= 1; --k) s += 2.0 * std::exp(-kPi * k * k / 2.0);
  CHECK(std::abs(sigma0() - (1.0 + s)) < 1e-14);
  CHECK(sigma0() == doctest::Approx(1.419495).epsilon(1e-5));

  Rng rng(testing::kSeed);
  for (int t = 0; t < 20; ++t) {
    CoefficientSet c;
    for (int k = -2; k <= 2; ++k)
      for (int j = -2; j <= 2; ++j) c.set({k, j, false}, rng.complex_normal());
    const double scale = 1.0 / std::sqrt(c.norm2());
    CoefficientSet unit;
    for (const auto& [idx, v] : c.entries()) unit.set(idx, v * scale);
    CHECK(l2norm(synthesize(unit, g)) <= sigma0());
  }
  CoefficientSet far;
  far.set({5, 0, false}, 1.0);
  CHECK_THROWS(synthesize(far, g));
}

TEST_CASE("tail estimate") {
  const TailMass zero = tail_mass(CoefficientSet{}, 1.0);
  CHECK(zero.measured == 0.0);
  CHECK(zero.bound == 0.0);

  CoefficientSet single;
  single.set({0, 0, false}, 1.0);
  const TailMass t1 = tail_mass(single, 1.0);
  CHECK(t1.measured <= std::exp(-kPi));
  CHECK(t1.measured == doctest::Approx(std::exp(-kPi)).epsilon(0.02));  // exact value for one atom

  Rng rng(testing::kSeed);
  for (int t = 0; t < 20; ++t) {
    CoefficientSet c;
    for (int k = -2; k <= 2; ++k)
      for (int j = -2; j <= 2; ++j)
        if (rng.uniform() < 0.4) c.set({k, j, false}, rng.complex_normal());
    if (c.empty()) c.set({0, 0, false}, 1.0);
    const TailMass m = tail_mass(c, 2.0);
    CHECK(m.bound == doctest::Approx(std::exp(-4 * kPi) * c.norm2()));
    CHECK(m.measured <= m.bound);
  }
}

TEST_CASE("tail mass agrees with a grid transform of the synthesized series") {
  const Grid g = baseline();
  CoefficientSet c;
  c.set({0, 0, false}, 1.0);
  c.set({1, 1, false}, cplx(0.5, -0.3));
  c.set({-1, 0, false}, cplx(-0.2, 0.8));
  const double r = 1.0;
  const PhaseDomain near = PhaseDomain::points({{0, 0}, {1, 1}, {-1, 0}}).neighborhood(r);
  auto grid_tail = [&](double spacing) {
    const GaborField v = gabor_transform(synthesize(c, g), {-6, 6, -6, 6}, spacing);
    return v.weighted_mass([&](PhasePoint u) { return near.contains(u) ? 0.0 : 1.0; });
  };
  // The node-sampled indicator is first order in the spacing; halving it estimates the error.
  const double coarse = grid_tail(1.0 / 32), fine = grid_tail(1.0 / 64);
  const double measured = tail_mass(c, r, 1.0 / 64, 16).measured;
  CHECK(std::abs(measured - fine) <= 2.0 * std::abs(coarse - fine));
  // the cell scheme itself converges: successive refinements shrink the change
  const double t8 = tail_mass(c, r, 1.0 / 8, 16).measured, t32 = tail_mass(c, r, 1.0 / 32, 16).measured;
  CHECK(std::abs(measured - t32) < 0.5 * std::abs(t32 - t8));
}

TEST_CASE("half-plane identity") {
  const Grid g = baseline();
  const SampledSignal e0 = atom({0, 0}, g);
  CHECK(half_plane_mass(e0, -8.0) >= 0.999);
  CHECK(half_plane_mass(e0, 0.0) == doctest::Approx(0.5).epsilon(0.02));
  CHECK(half_plane_mass(e0, 6.0) < 1e-20);
  const SampledSignal h1 = hermite_signal(1, g);
  for (double q : {-0.6, 0.3}) {
    const double rhs = half_plane_mass(h1, q);
    CHECK(half_plane_mass_phase(h1, q, baseline_box(g), 1.0 / 16) == doctest::Approx(rhs).epsilon(1e-3));
  }
}
