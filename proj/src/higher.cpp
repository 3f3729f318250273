#include "critgabor/higher.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace critgabor {

namespace {
SampledSignal ladder(const SampledSignal& f, double sign) {
  SampledSignal d = spectral_derivative(f);
  SampledSignal out(f.grid());
  for (std::size_t n = 0; n < f.size(); ++n) out[n] = sign * d[n] / (2.0 * kPi) + f.x(n) * f[n];
  return out;
}

void check_order(int m) {
  if (m < 0) throw std::invalid_argument("order m must be nonnegative");
  if (m > kMaxOrder) throw std::invalid_argument("order m exceeds the supported maximum of 6");
}

Eigen::MatrixXcd dual_mixing(const std::vector<LatticeIndex>& nodes) {
  if (nodes.empty()) throw std::invalid_argument("dual atoms need at least one node");
  check_order(static_cast<int>(nodes.size()) - 1);
  std::set<LatticeIndex> seen;
  std::vector<cplx> mu;
  for (const auto& s : nodes) {
    if (!s.sharp) throw std::invalid_argument("dual-atom nodes must be sharp points");
    if (!seen.insert(s).second) throw std::invalid_argument("dual-atom nodes must be distinct");
    mu.push_back(s.point().label());
  }
  Eigen::MatrixXcd h = vandermonde_inverse(mu);
  // gamma_sharp(e_mu) = (-1)^{floor(eta)} for a sharp mu
  for (std::size_t s = 0; s < nodes.size(); ++s)
    if (nodes[s].j % 2 != 0) h.col(static_cast<Eigen::Index>(s)) *= -1.0;
  return h;
}
}  // namespace

SampledSignal annihilate(const SampledSignal& f) { return ladder(f, 1.0); }
SampledSignal create(const SampledSignal& f) { return ladder(f, -1.0); }

SampledSignal annihilate_power(const SampledSignal& f, int k) {
  if (k < 0) throw std::invalid_argument("power must be nonnegative");
  SampledSignal g = f;
  for (int i = 0; i < k; ++i) g = annihilate(g);
  return g;
}

Eigen::MatrixXcd vandermonde(const std::vector<cplx>& nodes) {
  const auto n = static_cast<Eigen::Index>(nodes.size());
  Eigen::MatrixXcd w(n, n);
  for (Eigen::Index s = 0; s < n; ++s) {
    cplx p = 1.0;
    for (Eigen::Index k = 0; k < n; ++k) {
      w(s, k) = p;
      p *= nodes[static_cast<std::size_t>(s)];
    }
  }
  return w;
}

Eigen::MatrixXcd vandermonde_inverse(const std::vector<cplx>& nodes) {
  const std::size_t n = nodes.size();
  if (n == 0) throw std::invalid_argument("no nodes");
  double scale = 1.0;
  for (const auto& z : nodes) scale = std::max(scale, std::abs(z));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      if (std::abs(nodes[a] - nodes[b]) <= 1e-12 * scale) throw std::invalid_argument("repeated Vandermonde nodes");

  const std::size_t m = n - 1;
  Eigen::MatrixXcd v(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t s = 0; s < n; ++s) {
    // e[i] = i-th elementary symmetric polynomial of the nodes other than s
    std::vector<cplx> e(n, cplx(0.0));
    e[0] = 1.0;
    std::size_t count = 0;
    cplx dp = 1.0;
    for (std::size_t t = 0; t < n; ++t) {
      if (t == s) continue;
      ++count;
      for (std::size_t i = count; i >= 1; --i) e[i] += nodes[t] * e[i - 1];
      dp *= nodes[s] - nodes[t];
    }
    for (std::size_t k = 0; k <= m; ++k) {
      const double sign = (m - k) % 2 == 0 ? 1.0 : -1.0;
      v(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(s)) = sign * e[m - k] / dp;
    }
  }
  return v;
}

std::vector<LatticeIndex> nearest_sharp_nodes(PhasePoint center, int m) {
  check_order(m);
  const int reach = static_cast<int>(std::ceil(std::sqrt(m + 1.0))) + 2;
  const int k0 = static_cast<int>(std::floor(center.p)), j0 = static_cast<int>(std::floor(center.theta));
  struct Cand {
    double d2;
    LatticeIndex idx;
  };
  std::vector<Cand> cand;
  for (int k = k0 - reach; k <= k0 + reach; ++k)
    for (int j = j0 - reach; j <= j0 + reach; ++j) {
      const LatticeIndex idx{k, j, true};
      cand.push_back({(idx.point() - center).norm2(), idx});
    }
  std::sort(cand.begin(), cand.end(), [](const Cand& a, const Cand& b) {
    if (a.d2 != b.d2) return a.d2 < b.d2;
    return a.idx < b.idx;
  });
  std::vector<LatticeIndex> out;
  for (int i = 0; i <= m; ++i) out.push_back(cand[static_cast<std::size_t>(i)].idx);
  return out;
}

DualAtomSet dual_atoms(const std::vector<LatticeIndex>& nodes, const Grid& grid) {
  DualAtomSet out;
  out.nodes = nodes;
  out.mixing = dual_mixing(nodes);
  std::vector<SampledSignal> e;
  for (const auto& s : nodes) e.push_back(atom(s.point(), grid));
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    SampledSignal d(grid);
    for (std::size_t s = 0; s < nodes.size(); ++s)
      d.add_scaled(out.mixing(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(s)), e[s]);
    out.atoms.push_back(std::move(d));
  }
  return out;
}

double hdelta_m_norm(const SampledSignal& f, double delta, int m, double spacing) {
  if (m < 0) throw std::invalid_argument("order m must be nonnegative");
  double s = 0.0;
  SampledSignal g = f;
  for (int j = 0; j <= m; ++j) {
    if (j > 0) g = annihilate(g);
    const double nj = hdelta_norm(g, delta, spacing);
    s += nj * nj;
  }
  return std::sqrt(s);
}

OrderMExpansion order_m_coefficients(const SampledSignal& f, int m, std::vector<LatticeIndex> nodes, int cutoff,
                                     const ExpansionOptions& opt) {
  check_order(m);
  if (opt.sharp_shift != LatticeIndex{}) throw std::invalid_argument("order-m expansion places its own sharp nodes");
  if (nodes.empty()) nodes = nearest_sharp_nodes(kSharp, m);
  if (static_cast<int>(nodes.size()) != m + 1) throw std::invalid_argument("order m needs exactly m+1 nodes");

  OrderMExpansion out;
  out.m = m;
  out.nodes = nodes;
  out.cutoff = cutoff;
  const DualAtomSet duals = dual_atoms(nodes, f.grid());
  SampledSignal g = f;
  SampledSignal fsharp = f;
  for (int j = 0; j <= m; ++j) {
    if (j > 0) g = annihilate(g);
    const cplx b = sharp_functional(g, opt.theta);
    out.sharp_block.push_back(b);
    fsharp.add_scaled(-b, duals.atoms[static_cast<std::size_t>(j)]);
  }
  out.lattice = quotient_coefficients(fsharp, cutoff, opt, &out.seam_mismatch);
  return out;
}

CoefficientSet flatten(const OrderMExpansion& e) {
  CoefficientSet c = e.lattice;
  const Eigen::MatrixXcd h = dual_mixing(e.nodes);
  for (std::size_t s = 0; s < e.nodes.size(); ++s) {
    cplx v = 0.0;
    for (std::size_t j = 0; j < e.sharp_block.size(); ++j)
      v += e.sharp_block[j] * h(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(s));
    c.add(e.nodes[s], v);
  }
  return c;
}

SampledSignal synthesize_order_m(const OrderMExpansion& e, const Grid& grid) { return synthesize(flatten(e), grid); }

double decay_exponent(const CoefficientSet& c, int lo, int hi) {
  if (lo < 1 || hi <= lo) throw std::invalid_argument("decay fit needs 1 <= lo < hi");
  std::vector<double> xs, ys;
  for (int s = lo; s <= hi; ++s) {
    double acc = 0.0;
    int count = 0;
    for (const auto& [idx, v] : c.entries()) {
      if (idx.sharp) continue;
      const double r = idx.point().norm();
      if (r > s - 0.5 && r <= s + 0.5) {
        acc += std::norm(v);
        ++count;
      }
    }
    if (count == 0 || acc <= 0.0) continue;
    xs.push_back(std::log(static_cast<double>(s)));
    ys.push_back(0.5 * std::log(acc / count));
  }
  if (xs.size() < 2) throw std::invalid_argument("not enough populated shells for a decay fit");
  const double n = static_cast<double>(xs.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  return -sxy / sxx;
}

}  // namespace critgabor
