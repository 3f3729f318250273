#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <vector>

#include "critgabor/phaseplane.hpp"

namespace critgabor {

inline constexpr double kPi = 3.14159265358979323846;

// Uniform grid x_n = -T + n h, n = 0..2T/h.
class Grid {
 public:
  Grid(double half_width, double step);

  double half_width() const { return half_width_; }
  double step() const { return step_; }
  std::size_t size() const { return intervals_ + 1; }
  double x(std::size_t n) const { return -half_width_ + static_cast<double>(n) * step_; }

  // Index of the sample at position x if it lies on the grid (within 1e-9 of a step), else -1.
  long index_of(double x) const;

  friend bool operator==(const Grid& a, const Grid& b) {
    return a.intervals_ == b.intervals_ && a.half_width_ == b.half_width_ && a.step_ == b.step_;
  }

 private:
  double half_width_;
  double step_;
  std::size_t intervals_;
};

class SampledSignal {
 public:
  explicit SampledSignal(const Grid& grid) : grid_(grid), values_(grid.size()) {}
  SampledSignal(const Grid& grid, std::vector<cplx> values);

  static SampledSignal from_function(const Grid& grid, const std::function<cplx(double)>& f);

  const Grid& grid() const { return grid_; }
  std::size_t size() const { return values_.size(); }
  double x(std::size_t n) const { return grid_.x(n); }

  cplx& operator[](std::size_t n) { return values_[n]; }
  const cplx& operator[](std::size_t n) const { return values_[n]; }
  const std::vector<cplx>& values() const { return values_; }
  std::vector<cplx>& values() { return values_; }

  SampledSignal& operator+=(const SampledSignal& o);
  SampledSignal& operator-=(const SampledSignal& o);
  SampledSignal& operator*=(cplx s);
  // this += s * o
  SampledSignal& add_scaled(cplx s, const SampledSignal& o);

  friend SampledSignal operator+(SampledSignal a, const SampledSignal& b) { return a += b; }
  friend SampledSignal operator-(SampledSignal a, const SampledSignal& b) { return a -= b; }
  friend SampledSignal operator*(cplx s, SampledSignal a) { return a *= s; }

 private:
  Grid grid_;
  std::vector<cplx> values_;
};

// Deterministic pairwise (cascade) summation; the reduction tree depends only on the length.
cplx pairwise_sum(std::span<const cplx> v);
double pairwise_sum(std::span<const double> v);

cplx inner(const SampledSignal& f, const SampledSignal& g);
double l2norm(const SampledSignal& f);

struct ThetaConfig {
  int terms = 8;  // |q| <= terms
};

// Theta(z) = 2^{1/4} sum_q exp(2 pi i q z - pi q^2); quasi-periodic reduction for |Im z| > 2.
cplx theta(cplx z, const ThetaConfig& cfg = {});

// I(x) = 2^{1/2} int_{-inf}^x exp(-2 pi y^2) dy
double loc_integral(double x);

// Hermite function adapted to the Gaussian 2^{1/4} e^{-pi x^2}, unit discrete norm.
SampledSignal hermite_signal(int n, const Grid& grid);

// d/dx by FFT on the periodic extension of the grid.
SampledSignal spectral_derivative(const SampledSignal& f);

// g(x_n) = f(x_n + s) by band-limited (FFT phase ramp) interpolation.
SampledSignal spectral_shift(const SampledSignal& f, double s);

// Seeded generator with hand-written distributions so streams are identical across
// standard-library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  int uniform_int(int lo, int hi);
  double normal();
  cplx complex_normal() { return {normal(), normal()}; }

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace critgabor
