#pragma once

#include "critgabor/gabor.hpp"
#include "critgabor/numerics.hpp"
#include "critgabor/phaseplane.hpp"

namespace critgabor {

// S = (a b; c d) = (cos phi, -sin phi; sin phi, cos phi)
struct Rotation {
  double angle = 0.0;
  double a = 1.0, b = 0.0, c = 0.0, d = 1.0;

  explicit Rotation(double phi);
  PhasePoint apply(PhasePoint u) const { return {a * u.p + b * u.theta, c * u.p + d * u.theta}; }
};

// Fractional Fourier operator of the rotation. Angles with |phi| in [pi/4, 3pi/4] use the
// chirp / Fourier / chirp factorisation of the integral kernel with the principal branch of
// (ib)^{-1/2}; other angles are composed with a quarter turn; phi = 0 and phi = pi are the
// identity and i f(-x).
SampledSignal metaplectic_apply(const Rotation& s, const SampledSignal& f);

// Unimodular c minimising ||a - c b||.
cplx best_unimodular(const SampledSignal& a, const SampledSignal& b);

struct CovarianceResult {
  double deviation = 0.0;    // ||M_S e_lambda - c e_{S lambda}||
  double phase_error = 0.0;  // |arg(c / predicted)| up to sign
  cplx constant = 1.0;
};

CovarianceResult covariance_check(const Rotation& s, PhasePoint lambda, const Grid& grid);

// ||M_S(a f) - e^{-i phi} a(M_S f)||, or with a+ and e^{+i phi} when adjoint is set.
double commutation_check(const Rotation& s, const SampledSignal& f, bool adjoint = false);

struct InvarianceResult {
  double max_deviation = 0.0;          // max ||<M_S f|e_{S lambda}>| - |<f|e_lambda>||
  double relative_norm_change = 0.0;   // |(||M_S f||_delta - ||f||_delta)| / ||f||_delta
};

InvarianceResult hdelta_invariance_check(const Rotation& s, const SampledSignal& f, double delta,
                                         const BoundingBox& lambda_box = {-3, 3, -3, 3}, double spacing = 0.25);

struct LocalizationResult {
  double q = 0.0;    // sup of p over S(D)
  double lhs = 0.0;  // int I(x - q) |M_S f|^2 dx
  double rhs = 0.0;  // mass of the Gabor transform of f outside D
};

LocalizationResult rotated_localization_check(const SampledSignal& f, const PhaseDomain& domain, const Rotation& s,
                                              double spacing = 1.0 / 16);

}  // namespace critgabor
