#pragma once

#include <vector>

#include "critgabor/expansion.hpp"
#include "critgabor/gabor.hpp"
#include "critgabor/phaseplane.hpp"

namespace critgabor {

// C_delta in the residual bound at delta = 2, fitted by tools/calibrate over single
// off-lattice atoms in a disk of radius 2 with r in {3, 4, 5}, m = 2, and frozen.
inline constexpr double kCertaintyBoundConstant = 0.050788932079241192;

struct NestedDomains {
  PhaseDomain K, K_plus, U, D_minus, D;
  double r = 0.0;
  double l = 0.0;
  int m = 0;

  static NestedDomains make(const PhaseDomain& K, double r, int m);
  // K in K+ in U in D- in D, checked on a sampling grid over D's bounding box.
  bool nested(double resolution = 1.0 / 16) const;
};

struct ConcentrationResult {
  double outside = 0.0;          // grid integral of |<f|e_mu>|^2 over the box minus D
  double out_of_box_tail = 0.0;  // ||f||^2 minus the mass captured by the box, clipped at 0
  double total() const { return outside + out_of_box_tail; }
};

ConcentrationResult concentration(const SampledSignal& f, const PhaseDomain& domain, double spacing = 1.0 / 16);

struct CertaintyOptions {
  double delta = 2.0;
  double phase_spacing = 1.0 / 8;  // grid for the integrals over the phase plane
  int order_m_cutoff = 8;          // lattice cutoff of the local order-m expansions
  double r_min = 3.0;
  double ridge = 1e-8;
  ExpansionOptions expansion{};
};

struct CertaintyReport {
  double signal_norm = 0.0;
  double hdelta = 0.0;
  double concentration = 0.0;
  double out_of_box_tail = 0.0;
  double residual_norm = 0.0;
  double bound_value = 0.0;
  double bound_constant = kCertaintyBoundConstant;
  int lattice_count = 0;
  int sharp_count = 0;
  int atom_count = 0;
  bool nested = false;
  LatticeIndex sharp_choice{};
  int candidates = 0;
  int points_inner = 0;   // phase-grid points in K+
  int points_middle = 0;  // in D- minus K+
  int points_outer = 0;
  double g_norm = 0.0;
  double g_plus_norm = 0.0;
  double g_minus_norm = 0.0;
  double g_plus_bound = 0.0;  // exp(-pi (r/2 - l)^2) ||f||_delta^2
  double omega_outside_norm = 0.0;
  double residual_model_defect = 0.0;  // ||phi_r - (g+ + g- + sum_outside omega e)||
  double least_squares_residual = 0.0; // comparison baseline, not part of the construction
};

struct CertaintyDecomposition {
  CoefficientSet alpha;  // lattice points of D
  CoefficientSet omega;  // sharp points of D minus K
  SampledSignal residual;
  CertaintyReport report;
};

CertaintyDecomposition decompose(const SampledSignal& f, const PhaseDomain& K, double r, int m,
                                 const CertaintyOptions& opt = {});

struct DofReport {
  double area = 0.0;
  int lattice_count = 0;
  int sharp_count = 0;
  int count = 0;
  double excess = 0.0;
};

DofReport degrees_of_freedom_report(const PhaseDomain& K, double r);

// Residual of the ridge-regularised least-squares fit of f by the given atoms.
double least_squares_residual(const SampledSignal& f, const std::vector<LatticeIndex>& atoms, double ridge);

}  // namespace critgabor
