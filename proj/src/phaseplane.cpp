#include "critgabor/phaseplane.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace critgabor {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kContainsTol = 1e-12;

double segment_distance(PhasePoint u, PhasePoint a, PhasePoint b) {
  const PhasePoint ab = b - a;
  const PhasePoint au = u - a;
  const double len2 = ab.norm2();
  double t = len2 > 0.0 ? (au.p * ab.p + au.theta * ab.theta) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return distance(u, a + t * ab);
}

struct Disk final : detail::Shape {
  PhasePoint c;
  double radius;
  Disk(PhasePoint c_, double r_) : c(c_), radius(r_) {}
  double distance(PhasePoint u) const override { return std::max(0.0, critgabor::distance(u, c) - radius); }
  BoundingBox bounds() const override {
    return {c.p - radius, c.p + radius, c.theta - radius, c.theta + radius};
  }
};

struct Rect final : detail::Shape {
  BoundingBox box;
  explicit Rect(BoundingBox b) : box(b) {}
  double distance(PhasePoint u) const override {
    const double dp = std::max({box.p_min - u.p, 0.0, u.p - box.p_max});
    const double dt = std::max({box.theta_min - u.theta, 0.0, u.theta - box.theta_max});
    return std::hypot(dp, dt);
  }
  BoundingBox bounds() const override { return box; }
};

struct Polygon final : detail::Shape {
  std::vector<PhasePoint> v;
  explicit Polygon(std::vector<PhasePoint> vv) : v(std::move(vv)) {}

  bool inside(PhasePoint u) const {
    bool in = false;
    for (std::size_t i = 0, j = v.size() - 1; i < v.size(); j = i++) {
      const PhasePoint a = v[i], b = v[j];
      if ((a.theta > u.theta) != (b.theta > u.theta)) {
        const double x = a.p + (u.theta - a.theta) * (b.p - a.p) / (b.theta - a.theta);
        if (u.p < x) in = !in;
      }
    }
    return in;
  }
  double distance(PhasePoint u) const override {
    double d = kInf;
    for (std::size_t i = 0, j = v.size() - 1; i < v.size(); j = i++)
      d = std::min(d, segment_distance(u, v[j], v[i]));
    return inside(u) ? 0.0 : d;
  }
  BoundingBox bounds() const override {
    BoundingBox b{kInf, -kInf, kInf, -kInf};
    for (const auto& x : v) {
      b.p_min = std::min(b.p_min, x.p);
      b.p_max = std::max(b.p_max, x.p);
      b.theta_min = std::min(b.theta_min, x.theta);
      b.theta_max = std::max(b.theta_max, x.theta);
    }
    return b;
  }
};

struct PointSet final : detail::Shape {
  std::vector<PhasePoint> pts;
  explicit PointSet(std::vector<PhasePoint> p) : pts(std::move(p)) {}
  double distance(PhasePoint u) const override {
    double d = kInf;
    for (const auto& x : pts) d = std::min(d, critgabor::distance(u, x));
    return d;
  }
  BoundingBox bounds() const override {
    BoundingBox b{kInf, -kInf, kInf, -kInf};
    for (const auto& x : pts) {
      b.p_min = std::min(b.p_min, x.p);
      b.p_max = std::max(b.p_max, x.p);
      b.theta_min = std::min(b.theta_min, x.theta);
      b.theta_max = std::max(b.theta_max, x.theta);
    }
    return b;
  }
};

struct Union final : detail::Shape {
  std::vector<PhaseDomain> parts;
  explicit Union(std::vector<PhaseDomain> p) : parts(std::move(p)) {}
  double distance(PhasePoint u) const override {
    double d = kInf;
    for (const auto& x : parts) d = std::min(d, x.distance(u));
    return d;
  }
  BoundingBox bounds() const override {
    BoundingBox b{kInf, -kInf, kInf, -kInf};
    for (const auto& x : parts) {
      const auto pb = x.bounds();
      b.p_min = std::min(b.p_min, pb.p_min);
      b.p_max = std::max(b.p_max, pb.p_max);
      b.theta_min = std::min(b.theta_min, pb.theta_min);
      b.theta_max = std::max(b.theta_max, pb.theta_max);
    }
    return b;
  }
};

struct Neighborhood final : detail::Shape {
  PhaseDomain base;
  double r;
  Neighborhood(PhaseDomain b, double r_) : base(std::move(b)), r(r_) {}
  double distance(PhasePoint u) const override { return std::max(0.0, base.distance(u) - r); }
  BoundingBox bounds() const override { return base.bounds().expanded(r); }
};

struct Everything final : detail::Shape {
  double distance(PhasePoint) const override { return 0.0; }
  BoundingBox bounds() const override { return {-kInf, kInf, -kInf, kInf}; }
};

// Predicate region: membership is exact, the distance from outside points is measured
// to the inside cells of a sampling grid that touch the outside.
struct Sampled final : detail::Shape {
  std::function<bool(PhasePoint)> inside;
  BoundingBox box;
  std::vector<PhasePoint> boundary;

  Sampled(std::function<bool(PhasePoint)> f, BoundingBox b, double res) : inside(std::move(f)), box(b) {
    const int np = static_cast<int>(std::ceil((box.p_max - box.p_min) / res));
    const int nt = static_cast<int>(std::ceil((box.theta_max - box.theta_min) / res));
    auto at = [&](int i, int j) { return PhasePoint{box.p_min + i * res, box.theta_min + j * res}; };
    std::vector<char> in(static_cast<std::size_t>((np + 1) * (nt + 1)));
    for (int i = 0; i <= np; ++i)
      for (int j = 0; j <= nt; ++j) in[i * (nt + 1) + j] = inside(at(i, j)) ? 1 : 0;
    auto flag = [&](int i, int j) {
      if (i < 0 || j < 0 || i > np || j > nt) return false;
      return in[i * (nt + 1) + j] != 0;
    };
    for (int i = 0; i <= np; ++i)
      for (int j = 0; j <= nt; ++j)
        if (flag(i, j) && !(flag(i - 1, j) && flag(i + 1, j) && flag(i, j - 1) && flag(i, j + 1)))
          boundary.push_back(at(i, j));
  }
  double distance(PhasePoint u) const override {
    if (box.contains(u) && inside(u)) return 0.0;
    double d = kInf;
    for (const auto& x : boundary) d = std::min(d, critgabor::distance(u, x));
    return d;
  }
  BoundingBox bounds() const override { return box; }
};

}  // namespace

double symplectic_form(PhasePoint u, PhasePoint v) { return v.theta * u.p - u.theta * v.p; }

PhasePoint apply_j(PhasePoint u) { return {u.theta, -u.p}; }

double distance(PhasePoint a, PhasePoint b) { return std::hypot(a.p - b.p, a.theta - b.theta); }

bool BoundingBox::finite() const {
  return std::isfinite(p_min) && std::isfinite(p_max) && std::isfinite(theta_min) && std::isfinite(theta_max);
}

PhaseDomain PhaseDomain::disk(PhasePoint center, double radius) {
  if (!(radius >= 0.0)) throw std::invalid_argument("disk radius must be nonnegative");
  return PhaseDomain(std::make_shared<Disk>(center, radius));
}

PhaseDomain PhaseDomain::rect(double p_min, double p_max, double theta_min, double theta_max) {
  if (!(p_min <= p_max && theta_min <= theta_max)) throw std::invalid_argument("rect bounds are inverted");
  return PhaseDomain(std::make_shared<Rect>(BoundingBox{p_min, p_max, theta_min, theta_max}));
}

PhaseDomain PhaseDomain::polygon(std::vector<PhasePoint> vertices) {
  if (vertices.size() < 3) throw std::invalid_argument("polygon needs at least 3 vertices");
  return PhaseDomain(std::make_shared<Polygon>(std::move(vertices)));
}

PhaseDomain PhaseDomain::points(std::vector<PhasePoint> pts) {
  if (pts.empty()) throw std::invalid_argument("point set is empty");
  return PhaseDomain(std::make_shared<PointSet>(std::move(pts)));
}

PhaseDomain PhaseDomain::unite(const std::vector<PhaseDomain>& parts) {
  if (parts.empty()) throw std::invalid_argument("union of no domains");
  return PhaseDomain(std::make_shared<Union>(parts));
}

PhaseDomain PhaseDomain::predicate(std::function<bool(PhasePoint)> inside, BoundingBox box, double resolution) {
  if (!box.finite()) throw std::invalid_argument("predicate domain needs a finite bounding box");
  if (!(resolution > 0.0)) throw std::invalid_argument("sampling resolution must be positive");
  return PhaseDomain(std::make_shared<Sampled>(std::move(inside), box, resolution));
}

PhaseDomain PhaseDomain::whole_plane() { return PhaseDomain(std::make_shared<Everything>()); }

bool PhaseDomain::contains(PhasePoint u) const { return shape_->distance(u) <= kContainsTol; }

PhaseDomain PhaseDomain::neighborhood(double r) const {
  if (!(r >= 0.0)) throw std::invalid_argument("neighborhood radius must be nonnegative");
  return PhaseDomain(std::make_shared<Neighborhood>(*this, r));
}

double PhaseDomain::area(double resolution) const {
  if (!bounded()) throw std::invalid_argument("area of an unbounded domain");
  const auto b = bounds();
  const long np = std::max(1L, static_cast<long>(std::ceil((b.p_max - b.p_min) / resolution)));
  const long nt = std::max(1L, static_cast<long>(std::ceil((b.theta_max - b.theta_min) / resolution)));
  const double dp = (b.p_max - b.p_min) / np, dt = (b.theta_max - b.theta_min) / nt;
  long count = 0;
  for (long i = 0; i < np; ++i)
    for (long j = 0; j < nt; ++j)
      if (contains({b.p_min + (i + 0.5) * dp, b.theta_min + (j + 0.5) * dt})) ++count;
  return count * dp * dt;
}

std::vector<LatticeIndex> lattice_points_in(const PhaseDomain& domain, bool sharp) {
  if (!domain.bounded()) throw std::invalid_argument("lattice enumeration needs a bounded domain");
  const auto b = domain.bounds();
  const int k0 = static_cast<int>(std::floor(b.p_min)) - 1, k1 = static_cast<int>(std::ceil(b.p_max)) + 1;
  const int j0 = static_cast<int>(std::floor(b.theta_min)) - 1, j1 = static_cast<int>(std::ceil(b.theta_max)) + 1;
  std::vector<LatticeIndex> out;
  for (int k = k0; k <= k1; ++k)
    for (int j = j0; j <= j1; ++j) {
      LatticeIndex idx{k, j, sharp};
      if (domain.contains(idx.point())) out.push_back(idx);
    }
  return out;
}

}  // namespace critgabor
