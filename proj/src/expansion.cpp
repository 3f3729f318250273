#include "critgabor/expansion.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace critgabor {

CoefficientSet RelaxedExpansion::all() const {
  CoefficientSet c = lattice;
  c.set(sharp_index, sharp);
  return c;
}

cplx sharp_functional(const SampledSignal& f, const ThetaConfig& cfg) {
  const Grid& grid = f.grid();
  if (grid.index_of(0.5) < 0) throw std::invalid_argument("grid has no samples at half-integers");
  const long qmax = static_cast<long>(std::ceil(grid.half_width())) + 1;
  cplx s = 0.0;
  for (long q = -qmax; q <= qmax; ++q) {
    const long idx = grid.index_of(static_cast<double>(q) + 0.5);
    if (idx < 0) continue;
    s += (q % 2 == 0 ? 1.0 : -1.0) * f[static_cast<std::size_t>(idx)];
  }
  return s / (cplx(0.0, 1.0) * theta(0.0, cfg));
}

cplx sharp_functional_zak(const SampledSignal& f, std::size_t n, const ThetaConfig& cfg) {
  const ZakField z = zak(f, n);
  return interpolate_bicubic(z, 0.5, 0.5) / (cplx(0.0, 1.0) * theta(0.0, cfg));
}

CoefficientSet quotient_coefficients(const SampledSignal& g, int cutoff, const ExpansionOptions& opt, double* seam) {
  if (cutoff < 0) throw std::invalid_argument("cutoff must be nonnegative");
  const std::size_t n = opt.zak_size;
  const ZakField z = zak(g, n);
  const double nn = static_cast<double>(n);

  auto quotient = [&](double y, double xi, cplx zval) {
    const cplx th = theta(cplx(xi, y), opt.theta);
    if (std::abs(th) == 0.0 || !std::isfinite(std::abs(th)))
      throw std::logic_error("theta vanished at a quadrature node");
    return std::exp(kPi * y * y) * zval / th;
  };

  std::vector<cplx> F(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) F[i * n + j] = quotient(z.y(i), z.xi(j), z.at(i, j));

  const int width = 2 * cutoff + 1;
  // A[i][k] = sum_j F_ij exp(-2 pi i k xi_j)
  std::vector<cplx> A(n * static_cast<std::size_t>(width));
  for (std::size_t i = 0; i < n; ++i)
    for (int k = -cutoff; k <= cutoff; ++k) {
      cplx s = 0.0;
      for (std::size_t j = 0; j < n; ++j) s += F[i * n + j] * std::polar(1.0, -2.0 * kPi * k * z.xi(j));
      A[i * width + static_cast<std::size_t>(k + cutoff)] = s;
    }
  std::vector<cplx> c(static_cast<std::size_t>(width * width));
  for (int k = -cutoff; k <= cutoff; ++k)
    for (int jj = -cutoff; jj <= cutoff; ++jj) {
      cplx s = 0.0;
      for (std::size_t i = 0; i < n; ++i)
        s += A[i * width + static_cast<std::size_t>(k + cutoff)] * std::polar(1.0, -2.0 * kPi * jj * z.y(i));
      c[static_cast<std::size_t>((k + cutoff) * width + (jj + cutoff))] = s / (nn * nn);
    }

  if (opt.refine && opt.refine_factor > 1) {
    const ZakEvaluator eval(z);
    const int r = opt.refine_factor;
    const double cell = 1.0 / nn, sub = cell / r;
    for (std::size_t i = n / 2 - 1; i <= n / 2; ++i)
      for (std::size_t j = n / 2 - 1; j <= n / 2; ++j) {
        std::vector<std::pair<PhasePoint, cplx>> pts;  // (y, xi) -> F
        for (int a = 0; a < r; ++a)
          for (int b = 0; b < r; ++b) {
            const double y = z.y(i) - 0.5 * cell + (a + 0.5) * sub;
            const double xi = z.xi(j) - 0.5 * cell + (b + 0.5) * sub;
            pts.push_back({{y, xi}, quotient(y, xi, eval(y, xi))});
          }
        for (int k = -cutoff; k <= cutoff; ++k)
          for (int jj = -cutoff; jj <= cutoff; ++jj) {
            cplx fine = 0.0;
            for (const auto& [pt, fv] : pts) fine += fv * std::polar(1.0, -2.0 * kPi * (k * pt.theta + jj * pt.p));
            const cplx coarse = F[i * n + j] * std::polar(1.0, -2.0 * kPi * (k * z.xi(j) + jj * z.y(i)));
            c[static_cast<std::size_t>((k + cutoff) * width + (jj + cutoff))] +=
                (fine / static_cast<double>(r * r) - coarse) / (nn * nn);
          }
      }
  }

  if (seam) {
    const ZakEvaluator eval(z);
    double worst = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
      const double s = z.y(t);
      worst = std::max(worst, std::abs(quotient(0.0, s, eval(0.0, s)) - quotient(1.0, s, eval(1.0, s))));
      worst = std::max(worst, std::abs(quotient(s, 0.0, eval(s, 0.0)) - quotient(s, 1.0, eval(s, 1.0))));
    }
    *seam = worst;
  }

  CoefficientSet out;
  for (int k = -cutoff; k <= cutoff; ++k)
    for (int jj = -cutoff; jj <= cutoff; ++jj)
      out.set({k, jj, false}, c[static_cast<std::size_t>((k + cutoff) * width + (jj + cutoff))]);
  return out;
}

RelaxedExpansion relaxed_coefficients(const SampledSignal& f, int cutoff, const ExpansionOptions& opt) {
  const LatticeIndex kappa = opt.sharp_shift;
  if (kappa.sharp) throw std::invalid_argument("sharp relocation must be a lattice vector");
  const bool moved = kappa.k != 0 || kappa.j != 0;
  // work in the frame where the sharp point is (1/2, 1/2); T_kappa maps lattice atoms to
  // lattice atoms without phase and e_sharp to (-1)^k e_{sharp + kappa}
  const SampledSignal g = moved ? wh_shift((-1.0) * kappa.point(), f) : f;

  RelaxedExpansion out;
  out.cutoff = cutoff;
  const cplx gs = sharp_functional(g, opt.theta);
  SampledSignal fsharp = g;
  fsharp.add_scaled(-gs, sample_atom(kSharp, g.grid()));
  const CoefficientSet local = quotient_coefficients(fsharp, cutoff, opt, &out.seam_mismatch);

  for (const auto& [idx, v] : local.entries()) out.lattice.set({idx.k + kappa.k, idx.j + kappa.j, false}, v);
  out.sharp = (kappa.k % 2 == 0 ? 1.0 : -1.0) * gs;
  out.sharp_index = {kappa.k, kappa.j, true};
  out.coefficient_l2 = std::sqrt(out.lattice.norm2() + std::norm(out.sharp));
  return out;
}

BoundingBox baseline_box(const Grid& grid) {
  const double P = std::min(8.0, grid.half_width());
  return {-P, P, -8.0, 8.0};
}

double hdelta_norm(const GaborField& field, double delta) {
  if (!(delta >= 0.0)) throw std::invalid_argument("delta must be nonnegative");
  return std::sqrt(field.weighted_mass([delta](PhasePoint u) { return std::pow(u.norm(), delta) + 1.0; }));
}

double hdelta_norm(const SampledSignal& f, double delta, double spacing) {
  if (!(delta >= 0.0)) throw std::invalid_argument("delta must be nonnegative");
  return hdelta_norm(gabor_transform(f, baseline_box(f.grid()), spacing), delta);
}

Reconstruction reconstruct(const SampledSignal& f, int cutoff, const ExpansionOptions& opt) {
  Reconstruction out{SampledSignal(f.grid()), 0.0, relaxed_coefficients(f, cutoff, opt)};
  // Atoms out to |p| = cutoff need a wider grid than f; f is zero outside its own.
  // lattice p runs over kappa.k +- cutoff when the sharp point is relocated
  const double reach = cutoff + std::abs(out.expansion.sharp_index.k) + 0.5;
  const SampledSignal wide = pad_for_atoms(f, reach);
  out.signal = synthesize(out.expansion.all(), wide.grid());
  const double nf = l2norm(f);
  out.residual = nf > 0.0 ? l2norm(wide - out.signal) / nf : 0.0;
  return out;
}

double uniqueness_probe(const CoefficientSet& c, const Grid& grid) {
  const double cn = c.norm2();
  if (!(cn > 0.0)) throw std::invalid_argument("uniqueness probe needs a nonzero coefficient vector");
  return l2norm(synthesize(c, grid)) / std::sqrt(cn);
}

double decay_weighted_sum(const CoefficientSet& c, double eps) {
  std::vector<double> t;
  for (const auto& [idx, v] : c.entries()) t.push_back(std::pow(idx.point().norm() + 1.0, 2.0 * eps) * std::norm(v));
  return pairwise_sum(t);
}

}  // namespace critgabor
