#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "critgabor/expansion.hpp"
#include "critgabor/gabor.hpp"
#include "critgabor/higher.hpp"
#include "critgabor/metaplectic.hpp"
#include "support.hpp"

using namespace critgabor;
using testing::baseline;

namespace {

// Distance of the best unimodular fit from {+1, -1}.
double sign_defect(const SampledSignal& a, const SampledSignal& b) {
  const cplx c = best_unimodular(a, b);
  return std::min(std::abs(c - 1.0), std::abs(c + 1.0));
}

SampledSignal reflect(const SampledSignal& f) {
  SampledSignal r(f.grid());
  for (std::size_t n = 0; n < f.size(); ++n) r[n] = f[f.size() - 1 - n];
  return r;
}

}  // namespace

TEST_CASE("rotation matrices") {
  Rng rng(testing::kSeed);
  for (int t = 0; t < 20; ++t) {
    const Rotation s(rng.uniform(-2 * kPi, 2 * kPi));
    CHECK(s.a * s.d - s.b * s.c == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(s.a * s.a + s.c * s.c == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(s.a * s.b + s.c * s.d == doctest::Approx(0.0).epsilon(1e-15));
  }
  const PhasePoint u = Rotation(kPi / 2).apply({1, 0});
  CHECK(std::abs(u.p) < 1e-15);
  CHECK(u.theta == doctest::Approx(1.0));
}

TEST_CASE("identity and parity angles") {
  const Grid g = baseline();
  const SampledSignal f = hermite_signal(3, g) + cplx(0.2, 0.7) * atom({1.1, -0.6}, g);
  CHECK(testing::max_abs_diff(metaplectic_apply(Rotation(0.0), f), f) == 0.0);
  const SampledSignal half = metaplectic_apply(Rotation(kPi), f);
  CHECK(testing::max_abs_diff(half, cplx(0, 1) * reflect(f)) < 1e-14);
  CHECK(testing::max_abs_diff(metaplectic_apply(Rotation(kPi), half), cplx(-1) * f) < 1e-14);
}

TEST_CASE("quarter turn maps atom moduli") {
  const Grid g = baseline();
  const Rotation s(kPi / 2);
  const PhasePoint lam{1, 0};
  const SampledSignal out = metaplectic_apply(s, atom(lam, g));
  const SampledSignal target = atom(apply_j(lam), g);
  double worst = 0.0;
  for (std::size_t n = 0; n < g.size(); ++n) worst = std::max(worst, std::abs(std::abs(out[n]) - std::abs(target[n])));
  CHECK(worst <= 1e-4);
}

TEST_CASE("unitarity over a ring of angles") {
  const Grid g = baseline();
  const SampledSignal f = hermite_signal(2, g) + atom({-0.8, 1.3}, g);
  for (int i = 0; i < 12; ++i) {
    const double phi = -kPi + i * kPi / 6.0;
    CHECK(std::abs(l2norm(metaplectic_apply(Rotation(phi), f)) - l2norm(f)) <= 1e-4);
  }
}

TEST_CASE("composition agrees up to sign") {
  const Grid g = baseline();
  const SampledSignal h1 = hermite_signal(1, g);
  const SampledSignal quarter = metaplectic_apply(Rotation(kPi / 4), metaplectic_apply(Rotation(kPi / 4), h1));
  CHECK(l2norm(quarter - best_unimodular(quarter, metaplectic_apply(Rotation(kPi / 2), h1)) *
                             metaplectic_apply(Rotation(kPi / 2), h1)) <= 1e-3);
  CHECK(sign_defect(quarter, metaplectic_apply(Rotation(kPi / 2), h1)) <= 1e-2);

  const SampledSignal f = hermite_signal(2, g) + atom({0.5, -0.5}, g);
  Rng rng(testing::kSeed);
  for (int t = 0; t < 6; ++t) {
    const double a = rng.uniform(-kPi, kPi), b = rng.uniform(-kPi, kPi);
    const SampledSignal two = metaplectic_apply(Rotation(a), metaplectic_apply(Rotation(b), f));
    CHECK(sign_defect(two, metaplectic_apply(Rotation(a + b), f)) <= 1e-2);
  }
}

TEST_CASE("covariance on atoms") {
  const Grid g = baseline();
  const CovarianceResult id = covariance_check(Rotation(0.0), {1, 1}, g);
  CHECK(id.deviation < 1e-12);
  CHECK(std::abs(id.constant - 1.0) < 1e-12);
  CHECK(covariance_check(Rotation(kPi / 2), {1, 0}, g).deviation <= 1e-3);
  CHECK(covariance_check(Rotation(kPi / 4), {1, 1}, g).deviation <= 1e-3);
  Rng rng(testing::kSeed);
  for (int t = 0; t < 10; ++t) {
    const PhasePoint lam{rng.uniform(-2, 2), rng.uniform(-2, 2)};
    const CovarianceResult c = covariance_check(Rotation(rng.uniform(-kPi, kPi)), lam, g);
    CHECK(c.deviation <= 1e-3);
    CHECK(c.phase_error <= 1e-2);
    CHECK(std::abs(std::abs(c.constant) - 1.0) < 1e-12);
  }
  CHECK_THROWS(covariance_check(Rotation(0.3), {5, 0}, g));
}

TEST_CASE("commutation with the ladder operators") {
  const Grid g = baseline();
  CHECK(commutation_check(Rotation(0.0), hermite_signal(1, g)) < 1e-12);
  for (double phi : {kPi / 2, kPi / 5, -2.3})
    for (int n : {1, 2}) {
      CHECK(commutation_check(Rotation(phi), hermite_signal(n, g)) <= 1e-3);
      CHECK(commutation_check(Rotation(phi), hermite_signal(n, g), true) <= 1e-3);
    }
  // h_n is a multiple of (a+)^n h_0 and M_S a+ = e^{i phi} a+ M_S, so M_S h_n / M_S h_0 turns by e^{i n phi}
  const double phi = 0.7;
  const SampledSignal h2 = hermite_signal(2, g), h0 = hermite_signal(0, g);
  const cplx r2 = inner(metaplectic_apply(Rotation(phi), h2), h2);
  const cplx r0 = inner(metaplectic_apply(Rotation(phi), h0), h0);
  CHECK(std::abs(r2 / r0 - std::polar(1.0, 2.0 * phi)) <= 1e-3);
}

TEST_CASE("modulus and H^delta invariance") {
  const Grid g = baseline();
  const SampledSignal h2 = hermite_signal(2, g);
  const InvarianceResult id = hdelta_invariance_check(Rotation(0.0), h2, 2.0);
  CHECK(id.max_deviation < 1e-12);
  CHECK(id.relative_norm_change < 1e-12);
  const InvarianceResult q = hdelta_invariance_check(Rotation(kPi / 2), h2, 2.0);
  CHECK(q.max_deviation <= 1e-3);
  CHECK(q.relative_norm_change <= 1e-2);
  const SampledSignal f = atom({1.0, -0.5}, g) + cplx(0, 0.5) * hermite_signal(1, g);
  const InvarianceResult r = hdelta_invariance_check(Rotation(1.1), f, 1.5);
  CHECK(r.max_deviation <= 1e-3);
  CHECK(r.relative_norm_change <= 1e-2);
}

TEST_CASE("rotated localization") {
  const Grid g = baseline();
  const LocalizationResult r =
      rotated_localization_check(atom({0, 0}, g), PhaseDomain::disk({0, 0}, 1.0), Rotation(kPi / 3));
  // sampled supremum of p over the rotated disk, never below the true value 1
  CHECK(r.q >= 1.0);
  CHECK(r.q <= 1.0 + 1.0 / 32);
  CHECK(r.lhs > 0.0);
  CHECK(r.lhs <= r.rhs + 1e-3);
  // the far side of the half-plane: D moved off-centre
  const LocalizationResult s =
      rotated_localization_check(atom({0.5, 0.2}, g), PhaseDomain::rect(-1, 1.5, -1, 1), Rotation(-0.4));
  CHECK(s.lhs <= s.rhs + 1e-3);
}
