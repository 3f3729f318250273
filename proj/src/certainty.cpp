#include "critgabor/certainty.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

#include <Eigen/Dense>

#include "critgabor/higher.hpp"

namespace critgabor {

namespace {

SampledSignal synthesize_any(const CoefficientSet& c, const Grid& grid) {
  SampledSignal out(grid);
  for (const auto& [idx, v] : c.entries())
    if (v != cplx(0.0)) out.add_scaled(v, sample_atom(idx.point(), grid));
  return out;
}

BoundingBox aligned_box(BoundingBox b, double spacing, double p_limit) {
  b.p_min = std::max(std::floor(b.p_min / spacing) * spacing, -p_limit);
  b.p_max = std::min(std::ceil(b.p_max / spacing) * spacing, p_limit);
  b.theta_min = std::floor(b.theta_min / spacing) * spacing;
  b.theta_max = std::ceil(b.theta_max / spacing) * spacing;
  return b;
}

double max_abs_p(const BoundingBox& b) { return std::max(std::abs(b.p_min), std::abs(b.p_max)); }

struct LocalExpansion {
  std::vector<LatticeIndex> nodes;   // relative to the rounded lattice point
  std::vector<cplx> node_coeffs;     // coefficient of e_{nodes[s]}
  CoefficientSet lattice;
};

}  // namespace

NestedDomains NestedDomains::make(const PhaseDomain& K, double r, int m) {
  if (!K.bounded()) throw std::invalid_argument("K must be bounded");
  if (!(r > 0.0)) throw std::invalid_argument("r must be positive");
  if (m < 0) throw std::invalid_argument("m must be nonnegative");
  const double l = std::sqrt((m + 1) / 2.0) + 1.0;
  return NestedDomains{K, K.neighborhood(l), K.neighborhood(r / 2.0), K.neighborhood(std::max(0.0, r - l)),
                       K.neighborhood(r), r, l, m};
}

bool NestedDomains::nested(double resolution) const {
  const BoundingBox b = D.bounds();
  const long np = static_cast<long>(std::ceil((b.p_max - b.p_min) / resolution));
  const long nt = static_cast<long>(std::ceil((b.theta_max - b.theta_min) / resolution));
  for (long i = 0; i <= np; ++i)
    for (long j = 0; j <= nt; ++j) {
      const PhasePoint u{b.p_min + i * resolution, b.theta_min + j * resolution};
      const bool k = K.contains(u), kp = K_plus.contains(u), uu = U.contains(u), dm = D_minus.contains(u),
                 d = D.contains(u);
      if ((k && !kp) || (kp && !uu) || (uu && !dm) || (dm && !d)) return false;
    }
  return true;
}

ConcentrationResult concentration(const SampledSignal& f, const PhaseDomain& domain, double spacing) {
  if (!domain.bounded()) throw std::invalid_argument("concentration needs a bounded domain");
  const BoundingBox box = aligned_box(domain.bounds().expanded(6.0), spacing, f.grid().half_width());
  const GaborField field = gabor_transform(f, box, spacing);
  ConcentrationResult out;
  out.outside = field.weighted_mass([&](PhasePoint u) { return domain.contains(u) ? 0.0 : 1.0; });
  const double nf = l2norm(f);
  out.out_of_box_tail = std::max(0.0, nf * nf - field.mass());
  return out;
}

double least_squares_residual(const SampledSignal& f, const std::vector<LatticeIndex>& atoms, double ridge) {
  if (atoms.empty()) return l2norm(f);
  const auto n = static_cast<Eigen::Index>(atoms.size());
  Eigen::MatrixXcd G(n, n);
  Eigen::VectorXcd y(n);
  std::vector<SampledSignal> e;
  for (const auto& a : atoms) e.push_back(sample_atom(a.point(), f.grid()));
  for (Eigen::Index a = 0; a < n; ++a) {
    y(a) = inner(f, e[static_cast<std::size_t>(a)]);
    for (Eigen::Index b = 0; b < n; ++b)
      G(a, b) = atom_inner(atoms[static_cast<std::size_t>(b)].point(), atoms[static_cast<std::size_t>(a)].point());
    G(a, a) += ridge;
  }
  const Eigen::VectorXcd x = G.ldlt().solve(y);
  SampledSignal rest = f;
  for (Eigen::Index a = 0; a < n; ++a) rest.add_scaled(-x(a), e[static_cast<std::size_t>(a)]);
  return l2norm(rest);
}

CertaintyDecomposition decompose(const SampledSignal& f_in, const PhaseDomain& K, double r, int m,
                                 const CertaintyOptions& opt) {
  if (!K.bounded()) throw std::invalid_argument("K must be bounded");
  if (r < opt.r_min) throw std::invalid_argument("r is below the configured minimum r0");
  if (m > r - 1.0) throw std::invalid_argument("m must not exceed r - 1");
  if (m > kMaxOrder) throw std::invalid_argument("order m exceeds the supported maximum of 6");
  if (m < 0) throw std::invalid_argument("m must be nonnegative");

  const NestedDomains dom = NestedDomains::make(K, r, m);
  const BoundingBox dbox = dom.D.bounds();
  const SampledSignal f = pad_for_atoms(f_in, max_abs_p(dbox));
  const Grid& grid = f.grid();
  const double spacing = opt.phase_spacing;

  CertaintyDecomposition out{{}, {}, SampledSignal(grid), {}};
  CertaintyReport& rep = out.report;
  rep.nested = dom.nested();
  rep.signal_norm = l2norm(f);

  const auto lattice_D = lattice_points_in(dom.D, false);
  std::vector<LatticeIndex> sharp_D;
  for (const auto& s : lattice_points_in(dom.D, true))
    if (!K.contains(s.point())) sharp_D.push_back(s);
  rep.lattice_count = static_cast<int>(lattice_D.size());
  rep.sharp_count = static_cast<int>(sharp_D.size());
  rep.atom_count = rep.lattice_count + rep.sharp_count;

  // f_U: relaxed expansion restricted to U, sharp point chosen in U \ K.
  std::vector<LatticeIndex> candidates;
  for (const auto& s : lattice_points_in(dom.U, true))
    if (!K.contains(s.point())) candidates.push_back(s);
  if (candidates.empty()) throw std::invalid_argument("no sharp point available in U \\ K");
  rep.candidates = static_cast<int>(candidates.size());
  const auto lattice_U = lattice_points_in(dom.U, false);
  const BoundingBox ubox = dom.U.bounds();

  double best = std::numeric_limits<double>::infinity();
  CoefficientSet best_fu;
  SampledSignal g(grid);
  for (const auto& c : candidates) {
    ExpansionOptions eo = opt.expansion;
    eo.sharp_shift = {c.k, c.j, false};
    const double reach = std::max({std::abs(ubox.p_min - c.k), std::abs(ubox.p_max - c.k),
                                   std::abs(ubox.theta_min - c.j), std::abs(ubox.theta_max - c.j)});
    const int cutoff = static_cast<int>(std::ceil(reach)) + 1;
    const RelaxedExpansion ex = relaxed_coefficients(f, cutoff, eo);
    CoefficientSet fu;
    for (const auto& idx : lattice_U) fu.set(idx, ex.lattice.get(idx));
    fu.set(ex.sharp_index, ex.sharp);
    const SampledSignal rest = f - synthesize(fu, grid);
    const double nr = l2norm(rest);
    if (nr < best) {
      best = nr;
      best_fu = fu;
      rep.sharp_choice = ex.sharp_index;
      g = rest;
    }
  }
  rep.g_norm = best;

  // Split of g over the phase plane.
  const BoundingBox box = aligned_box(dbox.expanded(5.0), spacing, grid.half_width());
  const GaborField V = gabor_transform(g, box, spacing);
  auto region = [&](PhasePoint u) {
    if (dom.K_plus.contains(u)) return 0;
    if (dom.D_minus.contains(u)) return 1;
    return 2;
  };
  const SampledSignal g_plus = reconstruct_from_field(V, grid, [&](PhasePoint u) { return region(u) == 0; });
  const SampledSignal g_minus = reconstruct_from_field(V, grid, [&](PhasePoint u) { return region(u) == 2; });
  rep.g_plus_norm = l2norm(g_plus);
  rep.g_minus_norm = l2norm(g_minus);

  CoefficientSet eps, beta, omega_out;
  std::map<std::pair<long, long>, LocalExpansion> cache;
  const double w = spacing * spacing;
  for (std::size_t i = 0; i < V.np(); ++i)
    for (std::size_t j = 0; j < V.nt(); ++j) {
      const PhasePoint mu = V.point(i, j);
      const int reg = region(mu);
      if (reg == 0) ++rep.points_inner;
      else if (reg == 2) ++rep.points_outer;
      if (reg != 1) continue;
      ++rep.points_middle;
      const cplx v = V.at(i, j);
      const int p0 = static_cast<int>(std::round(mu.p)), t0 = static_cast<int>(std::round(mu.theta));
      const PhasePoint delta = mu - PhasePoint{static_cast<double>(p0), static_cast<double>(t0)};
      if (delta.norm() > std::sqrt(0.5) + 1e-12) throw std::logic_error("rounded lattice point too far");
      const std::pair<long, long> key{std::lround(delta.p / spacing), std::lround(delta.theta / spacing)};
      auto it = cache.find(key);
      if (it == cache.end()) {
        LocalExpansion le;
        le.nodes = nearest_sharp_nodes(delta, m);
        const OrderMExpansion ex =
            order_m_coefficients(sample_atom(delta, grid), m, le.nodes, opt.order_m_cutoff, [&] {
              ExpansionOptions eo = opt.expansion;
              eo.sharp_shift = {};
              return eo;
            }());
        const CoefficientSet flat = flatten(ex);
        for (const auto& s : le.nodes) le.node_coeffs.push_back(flat.get(s));
        le.lattice = ex.lattice;
        it = cache.emplace(key, std::move(le)).first;
      }
      const LocalExpansion& le = it->second;
      // e_mu = e^{2 pi i delta_theta p0} T_lambda e_delta; T_lambda takes e_nu to e_{nu+lambda},
      // times (-1)^{p0} on sharp nu
      const cplx weight = v * w * std::polar(1.0, 2.0 * kPi * delta.theta * p0);
      const double sign = (p0 % 2 == 0) ? 1.0 : -1.0;
      for (std::size_t s = 0; s < le.nodes.size(); ++s) {
        const LatticeIndex kappa{le.nodes[s].k + p0, le.nodes[s].j + t0, true};
        if (distance(kappa.point(), mu) > dom.l + 1e-12) throw std::logic_error("sharp node outside Q(mu)");
        beta.add(kappa, weight * sign * le.node_coeffs[s]);
      }
      for (const auto& [nu, c] : le.lattice.entries()) {
        const LatticeIndex idx{nu.k + p0, nu.j + t0, false};
        if (dom.D.contains(idx.point())) eps.add(idx, weight * c);
        else omega_out.add(idx, weight * c);
      }
    }

  for (const auto& idx : lattice_D) out.alpha.set(idx, best_fu.get(idx) + eps.get(idx));
  for (const auto& [idx, v] : eps.entries())
    if (!out.alpha.contains(idx)) out.alpha.set(idx, v);
  for (const auto& idx : sharp_D) {
    const cplx v = beta.get(idx) + best_fu.get(idx);
    out.omega.set(idx, v);
  }
  for (const auto& [idx, v] : beta.entries())
    if (!out.omega.contains(idx)) throw std::logic_error("sharp coefficient outside D \\ K");
  if (!out.omega.contains(rep.sharp_choice)) throw std::logic_error("chosen sharp point outside D \\ K");

  out.residual = f - synthesize(out.alpha, grid);
  out.residual -= synthesize(out.omega, grid);
  rep.residual_norm = l2norm(out.residual);

  SampledSignal model = g_plus + g_minus;
  model += synthesize_any(omega_out, grid);
  rep.omega_outside_norm = std::sqrt(omega_out.norm2());
  rep.residual_model_defect = l2norm(out.residual - model);

  const ConcentrationResult conc = concentration(f, dom.D);
  rep.concentration = conc.outside;
  rep.out_of_box_tail = conc.out_of_box_tail;
  rep.hdelta = hdelta_norm(f, opt.delta);
  rep.bound_value = std::sqrt(conc.total()) +
                    rep.bound_constant * std::pow(r, opt.delta) * std::exp(-r / std::exp(1.0)) * rep.hdelta;
  const double gap = r / 2.0 - dom.l;
  rep.g_plus_bound = std::exp(-kPi * gap * gap) * rep.hdelta * rep.hdelta;

  std::vector<LatticeIndex> all = lattice_D;
  all.insert(all.end(), sharp_D.begin(), sharp_D.end());
  rep.least_squares_residual = least_squares_residual(f, all, opt.ridge);
  return out;
}

DofReport degrees_of_freedom_report(const PhaseDomain& K, double r) {
  if (!K.bounded()) throw std::invalid_argument("K must be bounded");
  const PhaseDomain D = K.neighborhood(r);
  DofReport out;
  out.lattice_count = static_cast<int>(lattice_points_in(D, false).size());
  for (const auto& s : lattice_points_in(D, true))
    if (!K.contains(s.point())) ++out.sharp_count;
  out.count = out.lattice_count + out.sharp_count;
  out.area = D.area();
  out.excess = out.count - out.area;
  return out;
}

}  // namespace critgabor
