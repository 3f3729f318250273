#include "critgabor/metaplectic.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "critgabor/expansion.hpp"
#include "critgabor/higher.hpp"

namespace critgabor {

Rotation::Rotation(double phi) : angle(phi), a(std::cos(phi)), b(-std::sin(phi)), c(std::sin(phi)), d(std::cos(phi)) {}

namespace {

double normalize_angle(double phi) {
  double r = std::remainder(phi, 2.0 * kPi);
  if (r <= -kPi) r += 2.0 * kPi;
  return r;
}

// Integral kernel with b != 0:
// (ib)^{-1/2} e^{pi i (d/b) x^2} sum_y e^{-2 pi i x y / b} e^{pi i (a/b) y^2} f(y) h
SampledSignal chirp_kernel(double phi, const SampledSignal& f) {
  const Rotation s(phi);
  const Grid& grid = f.grid();
  const std::size_t n = f.size();
  const double h = grid.step();
  std::vector<cplx> u(n);
  for (std::size_t m = 0; m < n; ++m) {
    const double y = grid.x(m);
    u[m] = std::polar(1.0, kPi * (s.a / s.b) * y * y) * f[m] * h;
  }
  const cplx pre = 1.0 / std::sqrt(cplx(0.0, s.b));
  SampledSignal out(grid);
  std::vector<cplx> t(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double x = grid.x(k);
    const double w = -2.0 * kPi * x / s.b;
    for (std::size_t m = 0; m < n; ++m) t[m] = u[m] * std::polar(1.0, w * grid.x(m));
    out[k] = pre * std::polar(1.0, kPi * (s.d / s.b) * x * x) * pairwise_sum(t);
  }
  return out;
}

}  // namespace

SampledSignal metaplectic_apply(const Rotation& s, const SampledSignal& f) {
  const double phi = normalize_angle(s.angle);
  const double quarter = 0.5 * kPi;
  if (phi == 0.0) return f;
  if (phi == kPi) {
    SampledSignal out(f.grid());
    const std::size_t n = f.size();
    for (std::size_t k = 0; k < n; ++k) out[k] = cplx(0.0, 1.0) * f[n - 1 - k];
    return out;
  }
  const double mag = std::abs(phi);
  if (mag >= 0.25 * kPi && mag <= 0.75 * kPi) return chirp_kernel(phi, f);
  if (mag < 0.25 * kPi) return chirp_kernel(phi + quarter, chirp_kernel(-quarter, f));
  if (phi > 0) return chirp_kernel(phi - quarter, chirp_kernel(quarter, f));
  return chirp_kernel(phi + quarter, chirp_kernel(-quarter, f));
}

cplx best_unimodular(const SampledSignal& a, const SampledSignal& b) {
  const cplx c = inner(a, b);
  return std::abs(c) > 0.0 ? c / std::abs(c) : cplx(1.0);
}

CovarianceResult covariance_check(const Rotation& s, PhasePoint lambda, const Grid& grid) {
  const PhasePoint mu = s.apply(lambda);
  const SampledSignal e = atom(lambda, grid);
  const SampledSignal target = atom(mu, grid);
  const SampledSignal g = metaplectic_apply(s, e);
  CovarianceResult out;
  out.constant = best_unimodular(g, target);
  SampledSignal diff = g;
  diff.add_scaled(-out.constant, target);
  out.deviation = l2norm(diff);
  const cplx predicted =
      std::polar(1.0, 0.5 * normalize_angle(s.angle) + kPi * (lambda.p * lambda.theta - mu.p * mu.theta));
  const double err = std::abs(std::arg(out.constant / predicted));
  out.phase_error = std::min(err, kPi - err);
  return out;
}

double commutation_check(const Rotation& s, const SampledSignal& f, bool adjoint) {
  const double phi = normalize_angle(s.angle);
  auto op = [adjoint](const SampledSignal& g) { return adjoint ? create(g) : annihilate(g); };
  const SampledSignal lhs = metaplectic_apply(s, op(f));
  SampledSignal rhs = op(metaplectic_apply(s, f));
  rhs *= std::polar(1.0, adjoint ? phi : -phi);
  return l2norm(lhs - rhs);
}

InvarianceResult hdelta_invariance_check(const Rotation& s, const SampledSignal& f, double delta,
                                         const BoundingBox& lambda_box, double spacing) {
  const SampledSignal g = metaplectic_apply(s, f);
  const GaborField grid_pts(lambda_box, spacing);
  InvarianceResult out;
  for (std::size_t i = 0; i < grid_pts.np(); ++i)
    for (std::size_t j = 0; j < grid_pts.nt(); ++j) {
      const PhasePoint lam = grid_pts.point(i, j);
      const double before = std::abs(inner(f, sample_atom(lam, f.grid())));
      const double after = std::abs(inner(g, sample_atom(s.apply(lam), f.grid())));
      out.max_deviation = std::max(out.max_deviation, std::abs(after - before));
    }
  const double nf = hdelta_norm(f, delta);
  const double ng = hdelta_norm(g, delta);
  out.relative_norm_change = nf > 0.0 ? std::abs(ng - nf) / nf : 0.0;
  return out;
}

LocalizationResult rotated_localization_check(const SampledSignal& f, const PhaseDomain& domain, const Rotation& s,
                                              double spacing) {
  if (!domain.bounded()) throw std::invalid_argument("localization check needs a bounded domain");
  const BoundingBox b = domain.bounds();
  const double res = 1.0 / 64;
  double q = -std::numeric_limits<double>::infinity();
  for (double p = b.p_min; p <= b.p_max + 1e-12; p += res)
    for (double t = b.theta_min; t <= b.theta_max + 1e-12; t += res)
      if (domain.contains({p, t})) q = std::max(q, s.apply({p, t}).p);
  q += res;  // sampled supremum, pushed outward by one sampling step

  LocalizationResult out;
  out.q = q;
  out.lhs = half_plane_mass(metaplectic_apply(s, f), q);
  const GaborField field = gabor_transform(f, baseline_box(f.grid()), spacing);
  out.rhs = field.weighted_mass([&](PhasePoint u) { return domain.contains(u) ? 0.0 : 1.0; });
  return out;
}

}  // namespace critgabor
