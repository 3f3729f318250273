#pragma once

#include "critgabor/gabor.hpp"
#include "critgabor/numerics.hpp"
#include "critgabor/zak.hpp"

namespace critgabor {

struct ExpansionOptions {
  std::size_t zak_size = 64;
  bool refine = true;     // subdivide the four cells touching the sharp point
  int refine_factor = 8;
  LatticeIndex sharp_shift{};  // relocates the sharp point to (1/2, 1/2) + shift
  ThetaConfig theta{};
};

struct RelaxedExpansion {
  cplx sharp = 0.0;
  LatticeIndex sharp_index{0, 0, true};
  CoefficientSet lattice;
  int cutoff = 0;
  double coefficient_l2 = 0.0;
  double seam_mismatch = 0.0;

  // Lattice coefficients together with the sharp entry.
  CoefficientSet all() const;
};

// (1/(i Theta(0))) sum_q (-1)^q f(q + 1/2)
cplx sharp_functional(const SampledSignal& f, const ThetaConfig& cfg = {});

// Same functional read off the Zak transform at (1/2, 1/2) by bicubic interpolation.
cplx sharp_functional_zak(const SampledSignal& f, std::size_t n, const ThetaConfig& cfg = {});

// Fourier coefficients, |k|, |j| <= R, of F = exp(pi y^2) Zg / Theta(xi + i y) for a signal g
// whose Zak transform vanishes at the sharp point. `seam` receives the largest jump of F
// across the edges of the unit square when non-null.
CoefficientSet quotient_coefficients(const SampledSignal& g, int cutoff, const ExpansionOptions& opt,
                                     double* seam = nullptr);

RelaxedExpansion relaxed_coefficients(const SampledSignal& f, int cutoff, const ExpansionOptions& opt = {});

// Default analysis box |p|, |theta| <= 8, clipped to the signal grid.
BoundingBox baseline_box(const Grid& grid);

double hdelta_norm(const GaborField& field, double delta);
double hdelta_norm(const SampledSignal& f, double delta, double spacing = 1.0 / 16);

struct Reconstruction {
  SampledSignal signal;  // on f's grid padded to hold the outermost atoms
  double residual = 0.0;
  RelaxedExpansion expansion;
};

Reconstruction reconstruct(const SampledSignal& f, int cutoff, const ExpansionOptions& opt = {});

// ||sum c e_lambda|| / ||c|| for a coefficient set that may include sharp entries.
double uniqueness_probe(const CoefficientSet& c, const Grid& grid);

// sum (|lambda| + 1)^{2 eps} |c_lambda|^2
double decay_weighted_sum(const CoefficientSet& c, double eps);

}  // namespace critgabor
