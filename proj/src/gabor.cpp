#include "critgabor/gabor.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace critgabor {

namespace {
const double kAtomScale = std::pow(2.0, 0.25);

std::size_t cell_count(double lo, double hi, double spacing) {
  return static_cast<std::size_t>(std::floor((hi - lo) / spacing + 1e-9)) + 1;
}
}  // namespace

SampledSignal sample_atom(PhasePoint lambda, const Grid& grid) {
  SampledSignal e(grid);
  for (std::size_t n = 0; n < e.size(); ++n) {
    const double x = grid.x(n);
    const double d = x - lambda.p;
    e[n] = kAtomScale * std::exp(-kPi * d * d) * std::polar(1.0, 2.0 * kPi * lambda.theta * x);
  }
  return e;
}

SampledSignal atom(PhasePoint lambda, const Grid& grid) {
  if (std::abs(lambda.p) + kAtomMargin > grid.half_width() + 1e-12)
    throw std::out_of_range("atom centre too close to the truncation boundary");
  return sample_atom(lambda, grid);
}

cplx atom_inner(PhasePoint lambda, PhasePoint mu) {
  const double phase = kPi * (lambda.p + mu.p) * (lambda.theta - mu.theta);
  return std::polar(std::exp(-0.5 * kPi * (lambda - mu).norm2()), phase);
}

GaborField::GaborField(BoundingBox box, double spacing) : box_(box), spacing_(spacing) {
  if (!(spacing > 0.0)) throw std::invalid_argument("phase grid spacing must be positive");
  if (!box.finite() || box.p_max < box.p_min || box.theta_max < box.theta_min)
    throw std::invalid_argument("phase box is empty or unbounded");
  np_ = cell_count(box.p_min, box.p_max, spacing);
  nt_ = cell_count(box.theta_min, box.theta_max, spacing);
  values_.assign(np_ * nt_, cplx(0.0));
}

double GaborField::weighted_mass(const std::function<double(PhasePoint)>& w) const {
  std::vector<double> t(values_.size());
  for (std::size_t i = 0; i < np_; ++i)
    for (std::size_t j = 0; j < nt_; ++j) t[i * nt_ + j] = std::norm(at(i, j)) * w(point(i, j));
  return pairwise_sum(t) * spacing_ * spacing_;
}

double GaborField::mass() const {
  return weighted_mass([](PhasePoint) { return 1.0; });
}

GaborField gabor_transform(const SampledSignal& f, const BoundingBox& box, double spacing) {
  const double T = f.grid().half_width();
  if (std::abs(box.p_min) > T + 1e-12 || std::abs(box.p_max) > T + 1e-12)
    throw std::out_of_range("phase box exceeds the signal grid in p");
  GaborField field(box, spacing);
  const Grid& grid = f.grid();
  const std::size_t n = f.size();
  const double h = grid.step();

  std::vector<cplx> modulation(field.nt() * n);
  for (std::size_t j = 0; j < field.nt(); ++j)
    for (std::size_t k = 0; k < n; ++k)
      modulation[j * n + k] = std::polar(1.0, -2.0 * kPi * field.theta(j) * grid.x(k));

  std::vector<cplx> window(n), term(n);
  for (std::size_t i = 0; i < field.np(); ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const double d = grid.x(k) - field.p(i);
      window[k] = f[k] * (kAtomScale * std::exp(-kPi * d * d) * h);
    }
    for (std::size_t j = 0; j < field.nt(); ++j) {
      const cplx* m = &modulation[j * n];
      for (std::size_t k = 0; k < n; ++k) term[k] = window[k] * m[k];
      field.at(i, j) = pairwise_sum(term);
    }
  }
  return field;
}

SampledSignal reconstruct_from_field(const GaborField& field, const Grid& grid,
                                     const std::function<bool(PhasePoint)>& keep) {
  const std::size_t n = grid.size();
  const double w = field.spacing() * field.spacing();
  std::vector<cplx> modulation(field.nt() * n);
  for (std::size_t j = 0; j < field.nt(); ++j)
    for (std::size_t k = 0; k < n; ++k)
      modulation[j * n + k] = std::polar(1.0, 2.0 * kPi * field.theta(j) * grid.x(k));

  SampledSignal out(grid);
  std::vector<cplx> row(n);
  for (std::size_t i = 0; i < field.np(); ++i) {
    std::fill(row.begin(), row.end(), cplx(0.0));
    bool any = false;
    for (std::size_t j = 0; j < field.nt(); ++j) {
      if (keep && !keep(field.point(i, j))) continue;
      const cplx v = field.at(i, j);
      if (v == cplx(0.0)) continue;
      any = true;
      const cplx* m = &modulation[j * n];
      for (std::size_t k = 0; k < n; ++k) row[k] += v * m[k];
    }
    if (!any) continue;
    for (std::size_t k = 0; k < n; ++k) {
      const double d = grid.x(k) - field.p(i);
      out[k] += row[k] * (kAtomScale * std::exp(-kPi * d * d) * w);
    }
  }
  return out;
}

cplx CoefficientSet::get(LatticeIndex idx) const {
  const auto it = entries_.find(idx);
  return it == entries_.end() ? cplx(0.0) : it->second;
}

double CoefficientSet::norm2() const {
  std::vector<double> t;
  t.reserve(entries_.size());
  for (const auto& [idx, c] : entries_) t.push_back(std::norm(c));
  return pairwise_sum(t);
}

SampledSignal synthesize(const CoefficientSet& c, const Grid& grid) {
  SampledSignal out(grid);
  for (const auto& [idx, v] : c.entries()) {
    if (v == cplx(0.0)) continue;
    out.add_scaled(v, atom(idx.point(), grid));
  }
  return out;
}

double sigma0() {
  double s = 0.0;
  for (int k = 40; k >= 1; --k) s += 2.0 * std::exp(-0.5 * kPi * k * k);
  return 1.0 + s;
}

TailMass tail_mass(const CoefficientSet& c, double r, double spacing, int boundary_subdivision) {
  if (!(r > 0.0)) throw std::invalid_argument("tail radius must be positive");
  std::vector<std::pair<PhasePoint, cplx>> support;
  for (const auto& [idx, v] : c.entries())
    if (v != cplx(0.0)) support.emplace_back(idx.point(), v);
  TailMass out;
  if (support.empty()) return out;
  out.bound = std::exp(-kPi * r * r) * c.norm2();

  BoundingBox b{support[0].first.p, support[0].first.p, support[0].first.theta, support[0].first.theta};
  for (const auto& [pt, v] : support) {
    b.p_min = std::min(b.p_min, pt.p);
    b.p_max = std::max(b.p_max, pt.p);
    b.theta_min = std::min(b.theta_min, pt.theta);
    b.theta_max = std::max(b.theta_max, pt.theta);
  }
  b = b.expanded(r + 6.0);

  auto transform = [&](PhasePoint mu) {
    cplx s = 0.0;
    for (const auto& [pt, v] : support) s += v * atom_inner(pt, mu);
    return std::norm(s);
  };
  auto dist = [&](PhasePoint mu) {
    double d = std::numeric_limits<double>::infinity();
    for (const auto& [pt, v] : support) d = std::min(d, distance(pt, mu));
    return d;
  };

  const long np = static_cast<long>(std::ceil((b.p_max - b.p_min) / spacing));
  const long nt = static_cast<long>(std::ceil((b.theta_max - b.theta_min) / spacing));
  const double half_diag = spacing * std::sqrt(0.5) * 1.001;
  const double sub = spacing / boundary_subdivision;
  std::vector<double> cells;
  cells.reserve(static_cast<std::size_t>(np * nt));
  for (long i = 0; i < np; ++i)
    for (long j = 0; j < nt; ++j) {
      const PhasePoint mu{b.p_min + (i + 0.5) * spacing, b.theta_min + (j + 0.5) * spacing};
      const double d = dist(mu);
      if (d < r - half_diag) continue;
      if (d > r + half_diag) {
        cells.push_back(transform(mu) * spacing * spacing);
        continue;
      }
      double acc = 0.0;
      for (int a = 0; a < boundary_subdivision; ++a)
        for (int e = 0; e < boundary_subdivision; ++e) {
          const PhasePoint nu{mu.p - 0.5 * spacing + (a + 0.5) * sub, mu.theta - 0.5 * spacing + (e + 0.5) * sub};
          if (dist(nu) > r) acc += transform(nu);
        }
      cells.push_back(acc * sub * sub);
    }
  out.measured = pairwise_sum(cells);
  return out;
}

double half_plane_mass(const SampledSignal& f, double q) {
  std::vector<double> t(f.size());
  for (std::size_t n = 0; n < f.size(); ++n) t[n] = loc_integral(f.x(n) - q) * std::norm(f[n]);
  return pairwise_sum(t) * f.grid().step();
}

double half_plane_mass_phase(const SampledSignal& f, double q, const BoundingBox& box, double spacing) {
  if (q >= box.p_max) return 0.0;
  BoundingBox half = box;
  half.p_min = std::max(q, box.p_min);
  GaborField field = gabor_transform(f, half, spacing);
  std::size_t np = field.np();
  if (np % 2 == 0) --np;  // Simpson needs an even number of intervals; the dropped edge row is in the tail
  std::vector<double> weighted(np);
  for (std::size_t i = 0; i < np; ++i) {
    std::vector<double> row(field.nt());
    for (std::size_t j = 0; j < field.nt(); ++j) row[j] = std::norm(field.at(i, j));
    const double w = (i == 0 || i + 1 == np) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
    weighted[i] = w * pairwise_sum(row) * spacing;
  }
  if (np < 3) return field.mass();
  return pairwise_sum(weighted) * spacing / 3.0;
}

SampledSignal pad_for_atoms(const SampledSignal& f, double reach) {
  const Grid& g = f.grid();
  const double need = reach + kAtomMargin;
  if (need <= g.half_width()) return f;
  const long extra = static_cast<long>(std::ceil((need - g.half_width()) / g.step() - 1e-9));
  const Grid wide(g.half_width() + static_cast<double>(extra) * g.step(), g.step());
  SampledSignal out(wide);
  for (std::size_t n = 0; n < f.size(); ++n) out[n + static_cast<std::size_t>(extra)] = f[n];
  return out;
}

}  // namespace critgabor
