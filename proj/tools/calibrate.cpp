// Measures the regression constants frozen in include/critgabor/{goldens,certainty}.hpp.
// Output is the list of values; rerun after any numerical change and update the headers.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "critgabor/certainty.hpp"
#include "critgabor/expansion.hpp"
#include "critgabor/gabor.hpp"
#include "critgabor/zak.hpp"

using namespace critgabor;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Largest generalised eigenvalue of two Hermitian forms on span(basis), each given through
// its norm, assembled by polarisation.
double max_form_ratio(std::size_t n, const std::function<double(std::size_t, std::size_t, cplx)>& na,
                      const std::function<double(std::size_t, std::size_t, cplx)>& nb) {
  Eigen::MatrixXcd A(n, n), B(n, n);
  auto form = [&](const auto& norm, std::size_t i, std::size_t j) -> cplx {
    if (i == j) return std::pow(norm(i, i, 0.0), 2);
    cplx acc = 0.0;
    for (cplx w : {cplx(1), cplx(-1), cplx(0, 1), cplx(0, -1)}) acc += w * std::pow(norm(i, j, w), 2);
    return 0.25 * acc;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      A(i, j) = form(na, i, j);
      B(i, j) = form(nb, i, j);
    }
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXcd> es(A, B);
  return es.eigenvalues().maxCoeff();
}

}  // namespace

int main() {
  const Grid grid(8.0, 1.0 / 64);
  auto t0 = std::chrono::steady_clock::now();

  {
    const int n = 200;
    double best = 1e300;
    for (int a = 0; a <= n; ++a)
      for (int b = 0; b <= n; ++b) {
        const cplx z(static_cast<double>(a) / n, static_cast<double>(b) / n);
        if (std::abs(z - cplx(0.5, 0.5)) < 0.05) continue;
        best = std::min(best, std::abs(theta(z)));
      }
    std::printf("theta_min_off_zero %.17g\n", best);
  }

  {
    // Smallest singular value of the synthesis map on the 5x5 block plus the sharp point:
    // a lower bound for every random probe ratio.
    std::vector<PhasePoint> pts;
    for (int k = -2; k <= 2; ++k)
      for (int j = -2; j <= 2; ++j) pts.push_back({double(k), double(j)});
    pts.push_back(kSharp);
    const std::size_t n = pts.size();
    Eigen::MatrixXcd G(n, n);
    for (std::size_t a = 0; a < n; ++a) {
      const SampledSignal ea = atom(pts[a], grid);
      for (std::size_t b = 0; b < n; ++b) G(a, b) = inner(atom(pts[b], grid), ea);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(G);
    std::printf("uniqueness_min_ratio %.17g\n", std::sqrt(es.eigenvalues().minCoeff()));
  }

  {
    std::vector<ZakField> zs;
    std::vector<GaborField> vs;
    for (int k = 0; k <= 7; ++k) {
      const SampledSignal h = hermite_signal(k, grid);
      zs.push_back(zak(h, 64));
      vs.push_back(gabor_transform(h, baseline_box(grid), 1.0 / 16));
    }
    // Both transforms are linear, so combinations are formed on the transformed data.
    auto zak_norm = [&](std::size_t i, std::size_t j, cplx w) {
      ZakField z = zs[i];
      if (i != j)
        for (std::size_t t = 0; t < z.values().size(); ++t) z.values()[t] += w * zs[j].values()[t];
      return zak_sobolev_norm(z, 2.0);
    };
    auto gabor_norm = [&](std::size_t i, std::size_t j, cplx w) {
      GaborField v = vs[i];
      if (i != j)
        for (std::size_t a = 0; a < v.np(); ++a)
          for (std::size_t b = 0; b < v.nt(); ++b) v.at(a, b) += w * vs[j].at(a, b);
      return hdelta_norm(v, 2.0);
    };
    const double c2 = max_form_ratio(zs.size(), zak_norm, gabor_norm);
    std::printf("zak_sobolev_constant %.17g\n", std::sqrt(c2));
  }

  {
    double c = 0.0;
    for (int rad = 2; rad <= 6; ++rad) {
      const DofReport d = degrees_of_freedom_report(PhaseDomain::disk({0, 0}, rad), 3.0);
      const double v = std::abs(d.excess) / (3.0 * std::sqrt(d.area));
      std::printf("  dof radius %d area %.6f count %d excess %.6f ratio %.6f\n", rad, d.area, d.count, d.excess, v);
      c = std::max(c, v);
    }
    std::printf("dof_excess_constant %.17g\n", c);
  }
  std::printf("  elapsed %.1f s\n", seconds_since(t0));

  {
    // C_delta: single off-lattice atoms in a disk of radius 2, r in {3, 4, 5}, m = 2.
    const PhaseDomain K = PhaseDomain::disk({0, 0}, 2.0);
    const PhasePoint atoms[] = {{0.3, -0.4}, {1.2, 0.7}, {-0.8, 0.5}, {0.25, 0.25}, {-1.1, -0.9}};
    double cdelta = 0.0, gplus = 0.0;
    for (double r : {3.0, 4.0, 5.0})
      for (PhasePoint a : atoms) {
        auto t1 = std::chrono::steady_clock::now();
        const CertaintyDecomposition d = decompose(atom(a, grid), K, r, 2);
        const CertaintyReport& rep = d.report;
        const double scale = std::pow(r, 2.0) * std::exp(-r / std::exp(1.0)) * rep.hdelta;
        const double c = std::max(0.0, rep.residual_norm - std::sqrt(rep.concentration + rep.out_of_box_tail)) / scale;
        const double g = rep.g_plus_bound > 0.0 ? rep.g_plus_norm / std::sqrt(rep.g_plus_bound) : 0.0;
        std::printf("  r %.0f atom (%.2f, %.2f) residual %.6e conc %.3e C %.6f g+ %.3e ratio %.6f  [%.1f s]\n", r, a.p,
                    a.theta, rep.residual_norm, rep.concentration, c, rep.g_plus_norm, g, seconds_since(t1));
        cdelta = std::max(cdelta, c);
        gplus = std::max(gplus, g);
      }
    // Three-atom mixture (the acceptance case) joins the g+ family only.
    for (double r : {3.0, 4.0, 5.0}) {
      SampledSignal f = atom(atoms[0], grid) + atom(atoms[1], grid) + atom(atoms[2], grid);
      auto t1 = std::chrono::steady_clock::now();
      const CertaintyReport rep = decompose(f, K, r, 2).report;
      const double g = rep.g_plus_bound > 0.0 ? rep.g_plus_norm / std::sqrt(rep.g_plus_bound) : 0.0;
      std::printf("  r %.0f three atoms residual %.6e bound %.6e g+ ratio %.6f  [%.1f s]\n", r,
                  rep.residual_norm,
                  std::sqrt(rep.concentration + rep.out_of_box_tail) +
                      cdelta * std::pow(r, 2.0) * std::exp(-r / std::exp(1.0)) * rep.hdelta,
                  g, seconds_since(t1));
      gplus = std::max(gplus, g);
    }
    std::printf("certainty_bound_constant %.17g\n", cdelta);
    std::printf("g_plus_constant %.17g\n", gplus);
  }
  std::printf("  elapsed %.1f s\n", seconds_since(t0));
}
