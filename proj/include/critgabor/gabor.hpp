#pragma once

#include <functional>
#include <map>
#include <vector>

#include "critgabor/numerics.hpp"
#include "critgabor/phaseplane.hpp"

namespace critgabor {

// Atom centres must keep this distance from the truncation boundary.
inline constexpr double kAtomMargin = 4.0;

// e_lambda(x) = 2^{1/4} exp(-pi (x - p)^2 + 2 pi i theta x); requires |p| + 4 <= T.
SampledSignal atom(PhasePoint lambda, const Grid& grid);

// Same samples without the safe-region check (analysis atoms near the box edge).
SampledSignal sample_atom(PhasePoint lambda, const Grid& grid);

// <e_lambda | e_mu> in closed form.
cplx atom_inner(PhasePoint lambda, PhasePoint mu);

// Values V(lambda) = <f | e_lambda> on a square-cell grid over a phase-plane rectangle.
class GaborField {
 public:
  GaborField(BoundingBox box, double spacing);

  const BoundingBox& box() const { return box_; }
  double spacing() const { return spacing_; }
  std::size_t np() const { return np_; }
  std::size_t nt() const { return nt_; }
  double p(std::size_t i) const { return box_.p_min + static_cast<double>(i) * spacing_; }
  double theta(std::size_t j) const { return box_.theta_min + static_cast<double>(j) * spacing_; }
  PhasePoint point(std::size_t i, std::size_t j) const { return {p(i), theta(j)}; }

  cplx& at(std::size_t i, std::size_t j) { return values_[i * nt_ + j]; }
  const cplx& at(std::size_t i, std::size_t j) const { return values_[i * nt_ + j]; }
  const std::vector<cplx>& values() const { return values_; }

  // sum |V|^2 w(lambda) spacing^2
  double weighted_mass(const std::function<double(PhasePoint)>& w) const;
  double mass() const;

 private:
  BoundingBox box_;
  double spacing_;
  std::size_t np_, nt_;
  std::vector<cplx> values_;
};

// Box must satisfy |p| <= T.
GaborField gabor_transform(const SampledSignal& f, const BoundingBox& box, double spacing);

// Grid approximation of the weak-sense integral of V(lambda) e_lambda over the points kept by `keep`.
SampledSignal reconstruct_from_field(const GaborField& field, const Grid& grid,
                                     const std::function<bool(PhasePoint)>& keep = {});

// Finitely supported coefficients over the relaxed lattice.
class CoefficientSet {
 public:
  void set(LatticeIndex idx, cplx c) { entries_[idx] = c; }
  void add(LatticeIndex idx, cplx c) { entries_[idx] += c; }
  cplx get(LatticeIndex idx) const;
  bool contains(LatticeIndex idx) const { return entries_.count(idx) != 0; }
  const std::map<LatticeIndex, cplx>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  double norm2() const;

 private:
  std::map<LatticeIndex, cplx> entries_;
};

SampledSignal synthesize(const CoefficientSet& c, const Grid& grid);
// Zero-pads f (same step) so that every atom with |p| <= reach keeps the margin.
SampledSignal pad_for_atoms(const SampledSignal& f, double reach);

// sigma_0 = sum_k exp(-pi k^2 / 2)
double sigma0();

struct TailMass {
  double measured = 0.0;
  double bound = 0.0;
};

// Mass of the Gabor transform of g = sum c e_lambda outside the r-neighbourhood of the support,
// evaluated from the closed-form transform; cells cut by the boundary are subdivided.
TailMass tail_mass(const CoefficientSet& c, double r, double spacing = 1.0 / 8, int boundary_subdivision = 16);

// int I(x - q) |f(x)|^2 dx
double half_plane_mass(const SampledSignal& f, double q);

// Phase-plane side of the same identity: integral of |V|^2 over p >= q, theta within the box.
double half_plane_mass_phase(const SampledSignal& f, double q, const BoundingBox& box, double spacing);

}  // namespace critgabor
