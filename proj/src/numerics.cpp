#include "critgabor/numerics.hpp"

#include <cmath>
#include <stdexcept>

#include "critgabor/fft.hpp"

namespace critgabor {

Grid::Grid(double half_width, double step) : half_width_(half_width), step_(step) {
  if (!(half_width > 0.0) || !std::isfinite(half_width)) throw std::invalid_argument("T must be positive");
  if (!(step > 0.0) || !std::isfinite(step)) throw std::invalid_argument("h must be positive");
  const double ratio = 2.0 * half_width / step;
  const double rounded = std::round(ratio);
  if (std::abs(ratio - rounded) > 1e-9 * std::max(1.0, ratio) || rounded < 1.0)
    throw std::invalid_argument("2T/h must be a positive integer");
  intervals_ = static_cast<std::size_t>(rounded);
}

long Grid::index_of(double x) const {
  const double u = (x + half_width_) / step_;
  const double r = std::round(u);
  if (std::abs(u - r) > 1e-9 || r < 0.0 || r > static_cast<double>(intervals_)) return -1;
  return static_cast<long>(r);
}

SampledSignal::SampledSignal(const Grid& grid, std::vector<cplx> values) : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size()) throw std::invalid_argument("sample count does not match the grid");
}

SampledSignal SampledSignal::from_function(const Grid& grid, const std::function<cplx(double)>& f) {
  SampledSignal s(grid);
  for (std::size_t n = 0; n < s.size(); ++n) s[n] = f(grid.x(n));
  return s;
}

namespace {
void require_same_grid(const SampledSignal& a, const SampledSignal& b) {
  if (!(a.grid() == b.grid())) throw std::invalid_argument("signals live on different grids");
}

template <class T>
T pairwise(const T* v, std::size_t n) {
  if (n <= 8) {
    T s{};
    for (std::size_t i = 0; i < n; ++i) s += v[i];
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise(v, half) + pairwise(v + half, n - half);
}
}  // namespace

SampledSignal& SampledSignal::operator+=(const SampledSignal& o) {
  require_same_grid(*this, o);
  for (std::size_t n = 0; n < values_.size(); ++n) values_[n] += o.values_[n];
  return *this;
}

SampledSignal& SampledSignal::operator-=(const SampledSignal& o) {
  require_same_grid(*this, o);
  for (std::size_t n = 0; n < values_.size(); ++n) values_[n] -= o.values_[n];
  return *this;
}

SampledSignal& SampledSignal::operator*=(cplx s) {
  for (auto& v : values_) v *= s;
  return *this;
}

SampledSignal& SampledSignal::add_scaled(cplx s, const SampledSignal& o) {
  require_same_grid(*this, o);
  for (std::size_t n = 0; n < values_.size(); ++n) values_[n] += s * o.values_[n];
  return *this;
}

cplx pairwise_sum(std::span<const cplx> v) { return pairwise(v.data(), v.size()); }
double pairwise_sum(std::span<const double> v) { return pairwise(v.data(), v.size()); }

cplx inner(const SampledSignal& f, const SampledSignal& g) {
  require_same_grid(f, g);
  std::vector<cplx> t(f.size());
  for (std::size_t n = 0; n < t.size(); ++n) t[n] = f[n] * std::conj(g[n]);
  return pairwise_sum(t) * f.grid().step();
}

double l2norm(const SampledSignal& f) {
  std::vector<double> t(f.size());
  for (std::size_t n = 0; n < t.size(); ++n) t[n] = std::norm(f[n]);
  return std::sqrt(pairwise_sum(t) * f.grid().step());
}

cplx theta(cplx z, const ThetaConfig& cfg) {
  if (cfg.terms < 1) throw std::invalid_argument("theta truncation must be at least 1");
  const cplx I(0.0, 1.0);
  cplx prefactor = 1.0;
  if (std::abs(z.imag()) > 2.0) {
    // Theta(w + n i) = exp(pi n^2 - 2 pi i n w) Theta(w)
    const double n = std::round(z.imag());
    z -= n * I;
    prefactor = std::exp(kPi * n * n - 2.0 * kPi * I * n * z);
  }
  cplx s = 0.0;
  for (int q = -cfg.terms; q <= cfg.terms; ++q)
    s += std::exp(2.0 * kPi * I * static_cast<double>(q) * z - kPi * q * q);
  return prefactor * std::pow(2.0, 0.25) * s;
}

double loc_integral(double x) { return 0.5 * std::erfc(-std::sqrt(2.0 * kPi) * x); }

SampledSignal hermite_signal(int n, const Grid& grid) {
  if (n < 0) throw std::invalid_argument("hermite index must be nonnegative");
  SampledSignal out(grid);
  const double c = std::sqrt(2.0 * kPi);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    // normalized Hermite recurrence in u = sqrt(2 pi) x
    const double u = c * grid.x(i);
    double prev = std::pow(kPi, -0.25) * std::exp(-0.5 * u * u);
    double cur = std::sqrt(2.0) * u * prev;
    if (n == 0) cur = prev;
    for (int k = 2; k <= n; ++k) {
      const double next = std::sqrt(2.0 / k) * u * cur - std::sqrt((k - 1.0) / k) * prev;
      prev = cur;
      cur = next;
    }
    out[i] = std::pow(2.0 * kPi, 0.25) * cur;
  }
  const double nrm = l2norm(out);
  if (nrm > 0.0) out *= 1.0 / nrm;
  return out;
}

namespace {
// Multiplies the spectrum of f by m(nu), nu the physical frequency of each bin.
SampledSignal spectral_multiply(const SampledSignal& f, const std::function<cplx(double, bool)>& m) {
  std::vector<cplx> d = f.values();
  const std::size_t n = d.size();
  fft_inplace(d, -1);
  const double span = static_cast<double>(n) * f.grid().step();
  for (std::size_t k = 0; k < n; ++k) {
    const long fk = fft_frequency(k, n);
    const bool nyquist = (n % 2 == 0) && 2 * static_cast<std::size_t>(std::labs(fk)) == n;
    d[k] *= m(static_cast<double>(fk) / span, nyquist) / static_cast<double>(n);
  }
  fft_inplace(d, +1);
  return SampledSignal(f.grid(), std::move(d));
}
}  // namespace

SampledSignal spectral_derivative(const SampledSignal& f) {
  return spectral_multiply(f, [](double nu, bool nyquist) {
    return nyquist ? cplx(0.0) : cplx(0.0, 2.0 * kPi * nu);
  });
}

SampledSignal spectral_shift(const SampledSignal& f, double s) {
  return spectral_multiply(f, [s](double nu, bool) { return std::exp(cplx(0.0, 2.0 * kPi * nu * s)); });
}

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

int Rng::uniform_int(int lo, int hi) {
  const double u = uniform();
  const int v = lo + static_cast<int>(u * (hi - lo + 1));
  return v > hi ? hi : v;
}

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  const double rad = std::sqrt(-2.0 * std::log(u1));
  spare_ = rad * std::sin(2.0 * kPi * u2);
  has_spare_ = true;
  return rad * std::cos(2.0 * kPi * u2);
}

}  // namespace critgabor
