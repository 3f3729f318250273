#pragma once

#include <vector>

#include "critgabor/numerics.hpp"
#include "critgabor/phaseplane.hpp"

namespace critgabor {

// Values on the midpoint grid y_i = (i + 1/2)/N, xi_j = (j + 1/2)/N of the unit square.
// Off the square: Z(y, xi + 1) = Z(y, xi), Z(y + 1, xi) = exp(-2 pi i xi) Z(y, xi).
class ZakField {
 public:
  explicit ZakField(std::size_t n);

  std::size_t size() const { return n_; }
  double y(std::size_t i) const { return (static_cast<double>(i) + 0.5) / static_cast<double>(n_); }
  double xi(std::size_t j) const { return y(j); }

  cplx& at(std::size_t i, std::size_t j) { return values_[i * n_ + j]; }
  const cplx& at(std::size_t i, std::size_t j) const { return values_[i * n_ + j]; }
  const std::vector<cplx>& values() const { return values_; }
  std::vector<cplx>& values() { return values_; }

  // Value at grid indices outside 0..N-1, using the extension rules.
  cplx extended(long i, long j) const;

  // (1/N^2) sum |Z|^2, the discrete L2(Q) norm squared.
  double norm2() const;

 private:
  std::size_t n_;
  std::vector<cplx> values_;
};

// Zf(y, xi) = sum_q exp(2 pi i q xi) f(y + q). Requires 1/(hN) to be an integer; when
// y_i + q falls between samples the signal is first shifted by half a step spectrally.
ZakField zak(const SampledSignal& f, std::size_t n);

// Inverse of zak on a grid with h = 1/N.
SampledSignal zak_inverse(const ZakField& z, const Grid& grid);

// T_lambda f(x) = exp(2 pi i theta x) f(x - p); throws if mass would leave the grid.
SampledSignal wh_shift(PhasePoint lambda, const SampledSignal& f);

// max |Z(T_lambda f) - exp(2 pi i (p xi + theta y)) Zf| over the grid, lambda in the lattice.
double zak_translate_check(LatticeIndex lambda, const SampledSignal& f, std::size_t n);

// A = (1/(2 pi i)) (d/dxi + i d/dy) + y, spectral in both directions.
ZakField a_operator_zak(const ZakField& z);

// Band-limited evaluation anywhere in the plane: trigonometric in xi, and in y after
// removing the quasi-periodic factor.
class ZakEvaluator {
 public:
  explicit ZakEvaluator(const ZakField& z);
  cplx operator()(double y, double xi) const;

 private:
  std::size_t n_;
  long q_lo_;
  std::vector<cplx> row_coeffs_;  // [i][q - q_lo]
};

// 4x4 Lagrange (bicubic) interpolation on the midpoint grid.
cplx interpolate_bicubic(const ZakField& z, double y, double xi);

// Discrete Sobolev norm: weights (1 + |s|)^delta on the y-spectrum of the trivialised
// columns plus (1 + |t|)^delta on the xi-spectrum of the rows.
double zak_sobolev_norm(const ZakField& z, double delta);

}  // namespace critgabor
