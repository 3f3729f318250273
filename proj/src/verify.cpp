#include "critgabor/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include <Eigen/Dense>

#include "critgabor/certainty.hpp"
#include "critgabor/expansion.hpp"
#include "critgabor/gabor.hpp"
#include "critgabor/goldens.hpp"
#include "critgabor/higher.hpp"
#include "critgabor/metaplectic.hpp"
#include "critgabor/zak.hpp"

namespace critgabor {

bool VerifyReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass(); });
}

std::string VerifyReport::text() const {
  std::string out = "config_hash " + config_hash + "\nseed " + std::to_string(seed) + "\n";
  char buf[256];
  for (const auto& c : checks) {
    std::snprintf(buf, sizeof buf, "%s %s measured=%.6e threshold=%s%.6e\n", c.pass() ? "PASS" : "FAIL",
                  c.name.c_str(), c.measured, c.upper ? "<=" : ">=", c.threshold);
    out += buf;
  }
  int failed = 0;
  for (const auto& c : checks) failed += c.pass() ? 0 : 1;
  std::snprintf(buf, sizeof buf, "summary %zu checks, %d failed\n", checks.size(), failed);
  return out + buf;
}

namespace {

double rel_dev(const SampledSignal& a, const SampledSignal& b) {
  const double nb = l2norm(b);
  return l2norm(a - b) / (nb > 0.0 ? nb : 1.0);
}

double theta_min_off_zero(const ThetaConfig& tc) {
  const int n = 200;
  double best = std::numeric_limits<double>::infinity();
  for (int a = 0; a <= n; ++a)
    for (int b = 0; b <= n; ++b) {
      const cplx z(static_cast<double>(a) / n, static_cast<double>(b) / n);
      if (std::abs(z - cplx(0.5, 0.5)) < 0.05) continue;
      best = std::min(best, std::abs(theta(z, tc)));
    }
  return best;
}

class Suite {
 public:
  explicit Suite(const RunConfig& cfg) : cfg_(cfg), grid_(cfg.grid()), rng_(cfg.seed) {}

  VerifyReport run() {
    phaseplane();
    numerics();
    gabor();
    zak_checks();
    expansion();
    higher();
    metaplectic();
    certainty();
    VerifyReport r;
    r.config_hash = config_hash(cfg_);
    r.seed = cfg_.seed;
    r.checks = std::move(checks_);
    return r;
  }

 private:
  void add(std::string name, double measured, double threshold, bool upper = true) {
    if (!std::isfinite(measured)) measured = std::numeric_limits<double>::max();
    checks_.push_back({std::move(name), measured, threshold, upper});
  }

  SampledSignal hermite(int n) const { return hermite_signal(n, grid_); }

  void phaseplane() {
    double worst = 0.0;
    for (int t = 0; t < 20; ++t) {
      const Rotation s(rng_.uniform(-kPi, kPi));
      const PhasePoint u{rng_.uniform(-3, 3), rng_.uniform(-3, 3)}, v{rng_.uniform(-3, 3), rng_.uniform(-3, 3)};
      worst = std::max(worst, std::abs(symplectic_form(s.apply(u), s.apply(v)) - symplectic_form(u, v)));
    }
    add("phaseplane.symplectic_invariance", worst, 1e-12);
    const auto pts = lattice_points_in(PhaseDomain::disk({0, 0}, 2.5), false);
    add("phaseplane.lattice_count_disk_2.5", std::abs(static_cast<double>(pts.size()) - 21.0), 0.0);
  }

  void numerics() {
    const ThetaConfig tc = cfg_.theta();
    add("theta.zero_at_sharp", std::abs(theta({0.5, 0.5}, tc)), 1e-10);
    double per_real = 0.0, per_imag = 0.0;
    for (int a = 0; a < 20; ++a)
      for (int b = 0; b < 20; ++b) {
        const cplx z((a + 0.5) / 20.0, (b + 0.5) / 20.0);
        const cplx tz = theta(z, tc);
        per_real = std::max(per_real, std::abs(theta(z + 1.0, tc) - tz) / std::max(1.0, std::abs(tz)));
        const cplx rhs = std::exp(kPi - 2.0 * kPi * cplx(0, 1) * z) * tz;
        per_imag = std::max(per_imag, std::abs(theta(z + cplx(0, 1), tc) - rhs) / std::max(1.0, std::abs(rhs)));
      }
    add("theta.periodicity_real", per_real, 1e-8);
    add("theta.periodicity_imag", per_imag, 1e-8);
    double theta0 = 0.0;
    for (int q = 40; q >= 1; --q) theta0 += 2.0 * std::exp(-kPi * q * q);
    theta0 = std::pow(2.0, 0.25) * (1.0 + theta0);
    add("theta.value_at_zero", std::abs(theta(0.0, tc) - theta0), 1e-6);
    add("theta.min_off_zero_golden", std::abs(theta_min_off_zero(tc) / golden::kThetaMinOffZero - 1.0), 1e-6);

    double sym = 0.0;
    for (int i = -50; i <= 50; ++i) sym = std::max(sym, std::abs(loc_integral(0.1 * i) + loc_integral(-0.1 * i) - 1.0));
    add("loc_integral.symmetry", sym, 1e-10);
    add("loc_integral.erf_oracle", std::abs(loc_integral(-1.0) - 0.5 * (1.0 + std::erf(-std::sqrt(2.0 * kPi)))), 1e-12);

    add("inner.e0_norm", std::abs(inner(atom({0, 0}, grid_), atom({0, 0}, grid_)).real() - 1.0), 1e-10);
    double ortho = 0.0;
    for (int i = 0; i <= 3; ++i)
      for (int j = 0; j <= 3; ++j)
        ortho = std::max(ortho, std::abs(inner(hermite(i), hermite(j)) - (i == j ? 1.0 : 0.0)));
    add("hermite.orthonormality", ortho, 1e-10);
  }

  void gabor() {
    double worst = 0.0;
    for (int t = 0; t < 100; ++t) {
      const PhasePoint a{rng_.uniform(-2.1, 2.1), rng_.uniform(-2.1, 2.1)};
      const PhasePoint b{rng_.uniform(-2.1, 2.1), rng_.uniform(-2.1, 2.1)};
      worst = std::max(worst, std::abs(atom_inner(a, b) - inner(atom(a, grid_), atom(b, grid_))));
    }
    add("gabor.atom_inner_vs_quadrature", worst, 1e-8);

    double parseval = 0.0;
    for (int n = 0; n <= 3; ++n) {
      const SampledSignal f = hermite(n);
      const GaborField v = gabor_transform(f, cfg_.box, cfg_.phase_spacing);
      parseval = std::max(parseval, std::abs(v.mass() / std::pow(l2norm(f), 2) - 1.0));
    }
    add("gabor.parseval_h0_h3", parseval, 1e-3);

    double synth = 0.0;
    for (int t = 0; t < 10; ++t) {
      CoefficientSet c;
      for (int k = -2; k <= 2; ++k)
        for (int j = -2; j <= 2; ++j) c.set({k, j, false}, rng_.complex_normal());
      synth = std::max(synth, l2norm(synthesize(c, grid_)) / (sigma0() * std::sqrt(c.norm2())));
    }
    add("gabor.synthesis_sigma0_bound", synth, 1.0);

    const SampledSignal h1 = hermite(1);
    const double rhs = half_plane_mass(h1, 0.3);
    const double lhs = half_plane_mass_phase(h1, 0.3, baseline_box(grid_), cfg_.phase_spacing);
    add("gabor.half_plane_identity", std::abs(lhs - rhs) / rhs, 1e-3);

    double tail = 0.0;
    for (int t = 0; t < 10; ++t) {
      CoefficientSet c;
      const int count = rng_.uniform_int(1, 6);
      for (int i = 0; i < count; ++i) c.set({rng_.uniform_int(-2, 2), rng_.uniform_int(-2, 2), false}, rng_.complex_normal());
      const TailMass m = tail_mass(c, 1.0 + (t % 2));
      tail = std::max(tail, m.measured / m.bound);
    }
    add("gabor.tail_bound_ratio", tail, 1.0);
  }

  void zak_checks() {
    const std::size_t n = static_cast<std::size_t>(cfg_.N);
    double unit = 0.0;
    for (int k = 0; k <= 3; ++k) {
      const SampledSignal f = hermite(k);
      unit = std::max(unit, std::abs(zak(f, n).norm2() / std::pow(l2norm(f), 2) - 1.0));
    }
    add("zak.unitarity", unit, 1e-6);

    // Inversion needs h = 1/N; use that grid when the configured one differs.
    const Grid inv_grid = std::abs(cfg_.h * cfg_.N - 1.0) < 1e-12 ? grid_ : Grid(cfg_.T, 1.0 / cfg_.N);
    double trip = 0.0;
    for (int k = 0; k <= 3; ++k) {
      const SampledSignal f = hermite_signal(k, inv_grid);
      trip = std::max(trip, rel_dev(zak_inverse(zak(f, n), inv_grid), f));
    }
    add("zak.round_trip", trip, 1e-8);

    const ZakField z0 = zak(atom({0, 0}, grid_), n);
    double form = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        const double y = z0.y(i), xi = z0.xi(j);
        form = std::max(form, std::abs(z0.at(i, j) - std::exp(-kPi * y * y) * theta({xi, y}, cfg_.theta())));
      }
    add("zak.gaussian_theta_form", form, 1e-8);
    add("zak.gaussian_zero_at_sharp", std::abs(ZakEvaluator(z0)(0.5, 0.5)), 1e-6);

    const double tr = std::max({zak_translate_check({1, 0, false}, hermite(0), n),
                                zak_translate_check({0, 1, false}, hermite(1), n),
                                zak_translate_check({-1, 2, false}, hermite(2), n)});
    add("zak.translation_multiplier", tr, 1e-6);

    const SampledSignal h2 = hermite(2);
    const ZakField lhs = zak(annihilate(h2), n), rhs = a_operator_zak(zak(h2, n));
    double aop = 0.0;
    for (std::size_t i = 0; i < lhs.values().size(); ++i) aop = std::max(aop, std::abs(lhs.values()[i] - rhs.values()[i]));
    add("zak.a_operator", aop, 1e-5);
  }

  void expansion() {
    const ThetaConfig tc = cfg_.theta();
    const ExpansionOptions opt = cfg_.expansion();
    const LatticeIndex sidx{cfg_.sharp_k, cfg_.sharp_j, true};
    double sharp_err = std::abs(sharp_functional(atom(kSharp, grid_), tc) - 1.0);
    const LatticeIndex lam[] = {{0, 0}, {1, 0}, {0, 1}, {-1, 1}, {2, 0}, {0, -2}, {1, 1}, {-1, -1}};
    for (const auto& l : lam) sharp_err = std::max(sharp_err, std::abs(sharp_functional(atom(l.point(), grid_), tc)));
    add("sharp.functional_on_atoms", sharp_err, 1e-6);

    const SampledSignal probe = atom({0.3, 0.2}, grid_) + hermite(2);
    add("sharp.series_vs_zak",
        std::abs(sharp_functional(probe, tc) - sharp_functional_zak(probe, opt.zak_size, tc)), 1e-5);

    // Purity: each atom of the relaxed lattice expands to itself.
    double purity = 0.0;
    const LatticeIndex targets[] = {{0, 0, false}, {1, 0, false}, {0, 1, false}, sidx};
    for (const auto& t : targets) {
      const CoefficientSet all = relaxed_coefficients(atom(t.point(), grid_), cfg_.cutoff, opt).all();
      for (const auto& [idx, c] : all.entries()) purity = std::max(purity, std::abs(c - (idx == t ? 1.0 : 0.0)));
      if (!all.contains(t)) purity = std::max(purity, 1.0);
    }
    add("expansion.purity", purity, 1e-3);

    double idem = 0.0;
    for (int t = 0; t < 3; ++t) {
      CoefficientSet c;
      for (int k = -2; k <= 2; ++k)
        for (int j = -2; j <= 2; ++j) c.set({k, j, false}, rng_.complex_normal());
      const CoefficientSet got = relaxed_coefficients(synthesize(c, grid_), cfg_.cutoff, opt).all();
      for (const auto& [idx, v] : got.entries()) idem = std::max(idem, std::abs(v - c.get(idx)));
    }
    add("expansion.idempotence", idem, 1e-3);

    const SampledSignal h2 = hermite(2);
    const RelaxedExpansion e2 = relaxed_coefficients(h2, cfg_.cutoff, opt);
    add("expansion.seam_mismatch_h2", e2.seam_mismatch, 1e-4);

    // Reconstruction of h_2 against the same run on a doubled discretization.
    const Reconstruction base = reconstruct(h2, cfg_.cutoff, opt);
    ExpansionOptions fine = opt;
    fine.zak_size = 2 * opt.zak_size;
    const Reconstruction oracle = reconstruct(hermite_signal(2, Grid(cfg_.T, cfg_.h / 2)), cfg_.cutoff, fine);
    add("expansion.reconstruction_vs_refined_oracle", std::abs(base.residual - oracle.residual) / oracle.residual, 0.1);
    double mono = 0.0;
    double prev = reconstruct(h2, 2, opt).residual;
    for (int r = 4; r <= 6; r += 2) {
      const double cur = reconstruct(h2, r, opt).residual;
      mono = std::max(mono, cur / prev);
      prev = cur;
    }
    add("expansion.reconstruction_monotone_ratio", mono, 1.1);
    add("expansion.gaussian_residual", reconstruct(atom({0, 0}, grid_), cfg_.cutoff, opt).residual, 2e-3);

    double worst = std::numeric_limits<double>::infinity();
    for (int t = 0; t < 50; ++t) {
      CoefficientSet c;
      for (int k = -2; k <= 2; ++k)
        for (int j = -2; j <= 2; ++j) c.set({k, j, false}, rng_.complex_normal());
      c.set({0, 0, true}, rng_.complex_normal());
      worst = std::min(worst, uniqueness_probe(c, grid_));
    }
    add("expansion.uniqueness_ratio", worst, golden::kUniquenessMinRatio, false);
  }

  void higher() {
    double eig = 0.0;
    for (int t = 0; t < 10; ++t) {
      const double rad = 2.0 * std::sqrt(rng_.uniform()), ang = rng_.uniform(-kPi, kPi);
      const PhasePoint l{rad * std::cos(ang), rad * std::sin(ang)};
      const SampledSignal e = atom(l, grid_);
      eig = std::max(eig, l2norm(annihilate(e) - l.label() * e));
    }
    add("higher.eigen_relation", eig, 1e-6);

    const SampledSignal f = atom({0.4, -0.3}, grid_) + hermite(2), g = hermite(1) + atom({-0.5, 0.7}, grid_);
    add("higher.adjointness", std::abs(inner(annihilate(f), g) - inner(f, create(g))), 1e-6);

    double van = 0.0;
    for (int m = 0; m <= kMaxOrder; ++m) {
      std::vector<cplx> nodes;
      for (const auto& s : nearest_sharp_nodes(kSharp, m)) nodes.push_back(s.point().label());
      const Eigen::MatrixXcd prod = vandermonde_inverse(nodes) * vandermonde(nodes);
      van = std::max(van, (prod - Eigen::MatrixXcd::Identity(m + 1, m + 1)).cwiseAbs().maxCoeff());
    }
    add("higher.vandermonde_inverse", van, 1e-10);

    double bio = 0.0;
    for (int m = 0; m <= 3; ++m) {
      const DualAtomSet d = dual_atoms(nearest_sharp_nodes(kSharp, m), grid_);
      for (int j = 0; j <= m; ++j)
        for (int k = 0; k <= m; ++k)
          bio = std::max(bio, std::abs(sharp_functional(annihilate_power(d.atoms[j], k), cfg_.theta()) -
                                       (j == k ? 1.0 : 0.0)));
    }
    add("higher.dual_biorthogonality", bio, 1e-6);
  }

  void metaplectic() {
    const SampledSignal h2 = hermite(2);
    double unit = 0.0;
    for (int i = 0; i < 12; ++i) {
      const Rotation s(-kPi + (i + 0.5) * kPi / 6.0);
      unit = std::max(unit, std::abs(l2norm(metaplectic_apply(s, h2)) - l2norm(h2)));
    }
    add("metaplectic.unitarity", unit, 1e-4);

    double dev = 0.0, phase = 0.0;
    for (double phi : {kPi / 4, kPi / 2})
      for (PhasePoint l : {PhasePoint{1, 0}, PhasePoint{1, 1}}) {
        const CovarianceResult c = covariance_check(Rotation(phi), l, grid_);
        dev = std::max(dev, c.deviation);
        phase = std::max(phase, c.phase_error);
      }
    add("metaplectic.covariance_deviation", dev, 1e-3);
    add("metaplectic.covariance_phase", phase, 1e-2);

    double comm = 0.0;
    const SampledSignal h1 = hermite(1);
    for (double phi : {kPi / 4, kPi / 2, 2.0})
      for (bool adj : {false, true}) comm = std::max(comm, commutation_check(Rotation(phi), h1, adj));
    add("metaplectic.commutation", comm, 1e-3);

    const SampledSignal twice = metaplectic_apply(Rotation(kPi / 4), metaplectic_apply(Rotation(kPi / 4), h1));
    const SampledSignal direct = metaplectic_apply(Rotation(kPi / 2), h1);
    const cplx c = best_unimodular(twice, direct);
    add("metaplectic.group_law_sign", std::min(std::abs(c - 1.0), std::abs(c + 1.0)), 1e-2);

    const InvarianceResult inv = hdelta_invariance_check(Rotation(kPi / 2), h2, cfg_.delta);
    add("metaplectic.modulus_invariance", inv.max_deviation, 1e-3);
    add("metaplectic.hdelta_invariance", inv.relative_norm_change, 1e-2);
  }

  void certainty() {
    const PhaseDomain K = PhaseDomain::disk({0, 0}, 3.0);
    const SampledSignal f = atom({0, 0}, grid_);
    CertaintyOptions opt = cfg_.certainty();
    const double r = std::max(3.0, cfg_.r_min);
    const CertaintyDecomposition d = decompose(f, K, r, 0, opt);
    SampledSignal rebuilt = synthesize(d.alpha, d.residual.grid());
    rebuilt += synthesize(d.omega, d.residual.grid());
    rebuilt += d.residual;
    SampledSignal padded(d.residual.grid());
    const long off = d.residual.grid().index_of(grid_.x(0));
    for (std::size_t i = 0; i < f.size(); ++i) padded[static_cast<std::size_t>(off) + i] = f[i];
    add("certainty.exact_identity", l2norm(padded - rebuilt), 1e-10);
    add("certainty.deep_atom_residual", d.report.residual_norm / l2norm(f), 0.05);

    const DofReport small = degrees_of_freedom_report(PhaseDomain::disk({0, 0}, 2.0), 3.0);
    const DofReport big = degrees_of_freedom_report(PhaseDomain::disk({0, 0}, 4.0), 6.0);
    const double ratio = static_cast<double>(big.count) / small.count;
    add("certainty.dof_scaling_distance", std::abs(ratio - 4.0), 0.5);
    add("certainty.dof_excess_ratio", std::abs(small.excess) / (3.0 * std::sqrt(small.area)), golden::kDofExcessConstant);
  }

  const RunConfig& cfg_;
  Grid grid_;
  Rng rng_;
  std::vector<Check> checks_;
};

}  // namespace

VerifyReport run_verify(const RunConfig& cfg) {
  validate(cfg);
  return Suite(cfg).run();
}

}  // namespace critgabor
