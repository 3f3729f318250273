#include "critgabor/zak.hpp"

#include <cmath>
#include <stdexcept>

#include "critgabor/fft.hpp"

namespace critgabor {

namespace {

// Sample bookkeeping: y_i + q sits at index m(i, q) of the signal shifted by `frac` steps.
struct Layout {
  long s = 1;
  double frac = 0.0;
  long q_lo = 0, q_hi = 0;
  std::vector<long> index;  // [i][q - q_lo], -1 when outside the grid

  Layout(const Grid& grid, std::size_t n) {
    const double h = grid.step();
    const double ratio = 1.0 / (h * static_cast<double>(n));
    s = std::lround(ratio);
    if (s < 1 || std::abs(ratio - static_cast<double>(s)) > 1e-9)
      throw std::invalid_argument("Zak grid: 1/(hN) must be a positive integer");
    const double base = 0.5 * static_cast<double>(s) + grid.half_width() / h;
    frac = base - std::floor(base + 1e-9);
    if (std::abs(frac) < 1e-9) frac = 0.0;
    else if (std::abs(frac - 0.5) < 1e-9) frac = 0.5;
    else throw std::invalid_argument("Zak grid: T/h must be a multiple of 1/2");

    const long len = static_cast<long>(grid.size());
    q_lo = static_cast<long>(std::floor(-grid.half_width())) - 2;
    q_hi = static_cast<long>(std::ceil(grid.half_width())) + 2;
    const long nq = q_hi - q_lo + 1;
    index.assign(n * static_cast<std::size_t>(nq), -1);
    long used_lo = q_hi, used_hi = q_lo;
    for (std::size_t i = 0; i < n; ++i)
      for (long q = q_lo; q <= q_hi; ++q) {
        const double u = (static_cast<double>(i) + 0.5) * static_cast<double>(s) +
                         static_cast<double>(q * static_cast<long>(n) * s) + grid.half_width() / h - frac;
        const long m = std::lround(u);
        if (m < 0 || m >= len) continue;
        index[i * static_cast<std::size_t>(nq) + static_cast<std::size_t>(q - q_lo)] = m;
        used_lo = std::min(used_lo, q);
        used_hi = std::max(used_hi, q);
      }
    if (used_hi - used_lo + 1 > static_cast<long>(n))
      throw std::invalid_argument("Zak grid: N too small for the signal support (aliasing in xi)");
  }
  long nq() const { return q_hi - q_lo + 1; }
  long at(std::size_t i, long q) const {
    return index[i * static_cast<std::size_t>(nq()) + static_cast<std::size_t>(q - q_lo)];
  }
};

void require_even(std::size_t n) {
  if (n < 4 || n % 2 != 0) throw std::invalid_argument("Zak grid size N must be even and at least 4");
}

}  // namespace

ZakField::ZakField(std::size_t n) : n_(n), values_(n * n) { require_even(n); }

cplx ZakField::extended(long i, long j) const {
  const long n = static_cast<long>(n_);
  const long a = i >= 0 ? i / n : -((-i + n - 1) / n);
  const long b = j >= 0 ? j / n : -((-j + n - 1) / n);
  const long i0 = i - a * n, j0 = j - b * n;
  const cplx v = at(static_cast<std::size_t>(i0), static_cast<std::size_t>(j0));
  if (a == 0) return v;
  return std::polar(1.0, -2.0 * kPi * static_cast<double>(a) * xi(static_cast<std::size_t>(j0))) * v;
}

double ZakField::norm2() const {
  std::vector<double> t(values_.size());
  for (std::size_t k = 0; k < t.size(); ++k) t[k] = std::norm(values_[k]);
  return pairwise_sum(t) / static_cast<double>(n_ * n_);
}

ZakField zak(const SampledSignal& f, std::size_t n) {
  require_even(n);
  const Layout lay(f.grid(), n);
  const SampledSignal g = lay.frac == 0.0 ? f : spectral_shift(f, lay.frac * f.grid().step());
  ZakField z(n);
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<cplx> phase(static_cast<std::size_t>(lay.nq()));
    for (long q = lay.q_lo; q <= lay.q_hi; ++q)
      phase[static_cast<std::size_t>(q - lay.q_lo)] = std::polar(1.0, 2.0 * kPi * static_cast<double>(q) * z.xi(j));
    for (std::size_t i = 0; i < n; ++i) {
      cplx s = 0.0;
      for (long q = lay.q_lo; q <= lay.q_hi; ++q) {
        const long m = lay.at(i, q);
        if (m >= 0) s += phase[static_cast<std::size_t>(q - lay.q_lo)] * g[static_cast<std::size_t>(m)];
      }
      z.at(i, j) = s;
    }
  }
  return z;
}

SampledSignal zak_inverse(const ZakField& z, const Grid& grid) {
  const std::size_t n = z.size();
  const Layout lay(grid, n);
  if (lay.s != 1) throw std::invalid_argument("zak_inverse needs h = 1/N");
  SampledSignal g(grid);
  for (std::size_t i = 0; i < n; ++i)
    for (long q = lay.q_lo; q <= lay.q_hi; ++q) {
      const long m = lay.at(i, q);
      if (m < 0) continue;
      cplx s = 0.0;
      for (std::size_t j = 0; j < n; ++j)
        s += std::polar(1.0, -2.0 * kPi * static_cast<double>(q) * z.xi(j)) * z.at(i, j);
      g[static_cast<std::size_t>(m)] = s / static_cast<double>(n);
    }
  return lay.frac == 0.0 ? g : spectral_shift(g, -lay.frac * grid.step());
}

SampledSignal wh_shift(PhasePoint lambda, const SampledSignal& f) {
  const Grid& grid = f.grid();
  const double h = grid.step();
  // mass that would be pushed across the truncation boundary
  std::vector<double> lost;
  for (std::size_t k = 0; k < f.size(); ++k) {
    const double x = grid.x(k) + lambda.p;
    if (x > grid.half_width() + 1e-12 || x < -grid.half_width() - 1e-12) lost.push_back(std::norm(f[k]));
  }
  const double lost_norm = std::sqrt(pairwise_sum(lost) * h);
  if (lost_norm > 1e-10 * std::max(l2norm(f), 1e-300))
    throw std::out_of_range("shifted support leaves the signal grid");

  SampledSignal out(grid);
  const double steps = lambda.p / h;
  const long whole = std::lround(steps);
  if (std::abs(steps - static_cast<double>(whole)) < 1e-9) {
    const long len = static_cast<long>(f.size());
    for (long k = 0; k < len; ++k) {
      const long src = k - whole;
      if (src >= 0 && src < len) out[static_cast<std::size_t>(k)] = f[static_cast<std::size_t>(src)];
    }
  } else {
    out = spectral_shift(f, -lambda.p);
  }
  for (std::size_t k = 0; k < out.size(); ++k) out[k] *= std::polar(1.0, 2.0 * kPi * lambda.theta * grid.x(k));
  return out;
}

double zak_translate_check(LatticeIndex lambda, const SampledSignal& f, std::size_t n) {
  if (lambda.sharp) throw std::invalid_argument("translation check needs a lattice point");
  const ZakField lhs = zak(wh_shift(lambda.point(), f), n);
  const ZakField rhs = zak(f, n);
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const cplx ph = std::polar(1.0, 2.0 * kPi * (lambda.k * rhs.xi(j) + lambda.j * rhs.y(i)));
      worst = std::max(worst, std::abs(lhs.at(i, j) - ph * rhs.at(i, j)));
    }
  return worst;
}

namespace {
// Spectral derivative of N midpoint samples of a 1-periodic function; Nyquist mode dropped.
std::vector<cplx> periodic_derivative(std::vector<cplx> v) {
  const std::size_t n = v.size();
  fft_inplace(v, -1);
  for (std::size_t k = 0; k < n; ++k) {
    const long fk = fft_frequency(k, n);
    const bool nyquist = n % 2 == 0 && 2 * static_cast<std::size_t>(std::labs(fk)) == n;
    v[k] *= nyquist ? cplx(0.0) : cplx(0.0, 2.0 * kPi * static_cast<double>(fk) / static_cast<double>(n));
  }
  fft_inplace(v, +1);
  return v;
}
}  // namespace

ZakField a_operator_zak(const ZakField& z) {
  const std::size_t n = z.size();
  ZakField dxi(n), dy(n), out(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<cplx> row(n);
    for (std::size_t j = 0; j < n; ++j) row[j] = z.at(i, j);
    // the midpoint offset only adds a phase that the derivative does not see
    const auto d = periodic_derivative(row);
    for (std::size_t j = 0; j < n; ++j) dxi.at(i, j) = d[j];
  }
  for (std::size_t j = 0; j < n; ++j) {
    const double xi = z.xi(j);
    std::vector<cplx> col(n);
    for (std::size_t i = 0; i < n; ++i) col[i] = std::polar(1.0, 2.0 * kPi * xi * z.y(i)) * z.at(i, j);
    const auto d = periodic_derivative(col);
    for (std::size_t i = 0; i < n; ++i)
      dy.at(i, j) = std::polar(1.0, -2.0 * kPi * xi * z.y(i)) * (d[i] - cplx(0.0, 2.0 * kPi * xi) * col[i]);
  }
  const cplx inv(0.0, -1.0 / (2.0 * kPi));  // 1/(2 pi i)
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      out.at(i, j) = inv * (dxi.at(i, j) + cplx(0.0, 1.0) * dy.at(i, j)) + z.y(i) * z.at(i, j);
  return out;
}

ZakEvaluator::ZakEvaluator(const ZakField& z) : n_(z.size()), q_lo_(-static_cast<long>(z.size()) / 2) {
  row_coeffs_.assign(n_ * n_, cplx(0.0));
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t t = 0; t < n_; ++t) {
      const double q = static_cast<double>(q_lo_ + static_cast<long>(t));
      cplx s = 0.0;
      for (std::size_t j = 0; j < n_; ++j) s += std::polar(1.0, -2.0 * kPi * q * z.xi(j)) * z.at(i, j);
      row_coeffs_[i * n_ + t] = s / static_cast<double>(n_);
    }
}

cplx ZakEvaluator::operator()(double y, double xi) const {
  const double nn = static_cast<double>(n_);
  // trivialised column G(y_i) = exp(2 pi i xi y_i) Z(y_i, xi), periodic in y
  std::vector<cplx> col(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    cplx s = 0.0;
    for (std::size_t t = 0; t < n_; ++t)
      s += row_coeffs_[i * n_ + t] * std::polar(1.0, 2.0 * kPi * static_cast<double>(q_lo_ + static_cast<long>(t)) * xi);
    const double yi = (static_cast<double>(i) + 0.5) / nn;
    col[i] = std::polar(1.0, 2.0 * kPi * xi * yi) * s;
  }
  cplx g = 0.0;
  for (long sidx = -static_cast<long>(n_) / 2; sidx < static_cast<long>(n_) / 2; ++sidx) {
    cplx c = 0.0;
    for (std::size_t i = 0; i < n_; ++i) {
      const double yi = (static_cast<double>(i) + 0.5) / nn;
      c += std::polar(1.0, -2.0 * kPi * static_cast<double>(sidx) * yi) * col[i];
    }
    g += c / nn * std::polar(1.0, 2.0 * kPi * static_cast<double>(sidx) * y);
  }
  return std::polar(1.0, -2.0 * kPi * xi * y) * g;
}

cplx interpolate_bicubic(const ZakField& z, double y, double xi) {
  const double nn = static_cast<double>(z.size());
  const double u = y * nn - 0.5, v = xi * nn - 0.5;
  const long i0 = static_cast<long>(std::floor(u)) - 1, j0 = static_cast<long>(std::floor(v)) - 1;
  auto weights = [](double t, long base, double w[4]) {
    for (int a = 0; a < 4; ++a) {
      double num = 1.0, den = 1.0;
      for (int b = 0; b < 4; ++b) {
        if (a == b) continue;
        num *= t - static_cast<double>(base + b);
        den *= static_cast<double>(a - b);
      }
      w[a] = num / den;
    }
  };
  double wu[4], wv[4];
  weights(u, i0, wu);
  weights(v, j0, wv);
  cplx s = 0.0;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) s += wu[a] * wv[b] * z.extended(i0 + a, j0 + b);
  return s;
}

double zak_sobolev_norm(const ZakField& z, double delta) {
  const std::size_t n = z.size();
  const double nn = static_cast<double>(n);
  std::vector<double> terms;
  terms.reserve(2 * n * n);
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<cplx> col(n);
    for (std::size_t i = 0; i < n; ++i) col[i] = std::polar(1.0, 2.0 * kPi * z.xi(j) * z.y(i)) * z.at(i, j);
    fft_inplace(col, -1);
    for (std::size_t k = 0; k < n; ++k) {
      const double s = static_cast<double>(std::labs(fft_frequency(k, n)));
      terms.push_back(std::pow(1.0 + s, delta) * std::norm(col[k] / nn) / nn);
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<cplx> row(n);
    for (std::size_t j = 0; j < n; ++j) row[j] = z.at(i, j);
    fft_inplace(row, -1);
    for (std::size_t k = 0; k < n; ++k) {
      const double t = static_cast<double>(std::labs(fft_frequency(k, n)));
      terms.push_back(std::pow(1.0 + t, delta) * std::norm(row[k] / nn) / nn);
    }
  }
  return std::sqrt(pairwise_sum(terms));
}

}  // namespace critgabor
