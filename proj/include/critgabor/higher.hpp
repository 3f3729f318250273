#pragma once

#include <vector>

#include <Eigen/Dense>

#include "critgabor/expansion.hpp"

namespace critgabor {

inline constexpr int kMaxOrder = 6;

// a = (1/2pi) d/dx + x,  a+ = -(1/2pi) d/dx + x
SampledSignal annihilate(const SampledSignal& f);
SampledSignal create(const SampledSignal& f);
SampledSignal annihilate_power(const SampledSignal& f, int k);

// W(s, k) = mu_s^k
Eigen::MatrixXcd vandermonde(const std::vector<cplx>& nodes);

// V with V W = I; V(k, s) is the coefficient of z^k in the Lagrange polynomial of node s,
// built from elementary symmetric polynomials of the remaining nodes.
Eigen::MatrixXcd vandermonde_inverse(const std::vector<cplx>& nodes);

// The m+1 sharp points closest to `center`, ties broken by (k, j).
std::vector<LatticeIndex> nearest_sharp_nodes(PhasePoint center, int m);

struct DualAtomSet {
  std::vector<LatticeIndex> nodes;
  Eigen::MatrixXcd mixing;  // d_j = sum_s mixing(j, s) e_{mu_s}
  std::vector<SampledSignal> atoms;

  int order() const { return static_cast<int>(nodes.size()) - 1; }
};

DualAtomSet dual_atoms(const std::vector<LatticeIndex>& nodes, const Grid& grid);

// (sum_{j <= m} ||a^j f||_delta^2)^{1/2}
double hdelta_m_norm(const SampledSignal& f, double delta, int m, double spacing = 1.0 / 16);

struct OrderMExpansion {
  int m = 0;
  std::vector<LatticeIndex> nodes;
  std::vector<cplx> sharp_block;  // gamma_sharp(a^j f), j = 0..m
  CoefficientSet lattice;
  int cutoff = 0;
  double seam_mismatch = 0.0;
};

// Empty `nodes` selects nearest_sharp_nodes((1/2, 1/2), m).
OrderMExpansion order_m_coefficients(const SampledSignal& f, int m, std::vector<LatticeIndex> nodes, int cutoff,
                                     const ExpansionOptions& opt = {});

SampledSignal synthesize_order_m(const OrderMExpansion& e, const Grid& grid);

// Same expansion written as plain atom coefficients (the sharp block spread over its nodes).
CoefficientSet flatten(const OrderMExpansion& e);

// Slope of log(shell RMS of |c|) against log(radius), shells of unit width centred on
// integer radii lo..hi, returned as a positive decay exponent.
double decay_exponent(const CoefficientSet& c, int lo, int hi);

}  // namespace critgabor
