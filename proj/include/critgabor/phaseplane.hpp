#pragma once

#include <cmath>
#include <compare>
#include <complex>
#include <functional>
#include <memory>
#include <vector>

namespace critgabor {

using cplx = std::complex<double>;

// Point (p, theta) of the phase plane; the complex label is p + i theta.
struct PhasePoint {
  double p = 0.0;
  double theta = 0.0;

  double norm2() const { return p * p + theta * theta; }
  double norm() const { return std::hypot(p, theta); }
  cplx label() const { return {p, theta}; }

  friend PhasePoint operator+(PhasePoint a, PhasePoint b) { return {a.p + b.p, a.theta + b.theta}; }
  friend PhasePoint operator-(PhasePoint a, PhasePoint b) { return {a.p - b.p, a.theta - b.theta}; }
  friend PhasePoint operator*(double s, PhasePoint a) { return {s * a.p, s * a.theta}; }
  friend bool operator==(PhasePoint, PhasePoint) = default;
};

inline constexpr PhasePoint kSharp{0.5, 0.5};

// Index of a point of the relaxed lattice: (k, j) for the lattice, (k + 1/2, j + 1/2) when sharp.
struct LatticeIndex {
  int k = 0;
  int j = 0;
  bool sharp = false;

  PhasePoint point() const {
    const double off = sharp ? 0.5 : 0.0;
    return {k + off, j + off};
  }
  friend auto operator<=>(const LatticeIndex&, const LatticeIndex&) = default;
};

// sigma[(x, xi), (y, eta)] = eta x - xi y
double symplectic_form(PhasePoint u, PhasePoint v);

// J(p, theta) = (theta, -p)
PhasePoint apply_j(PhasePoint u);

double distance(PhasePoint a, PhasePoint b);

struct BoundingBox {
  double p_min = 0.0, p_max = 0.0;
  double theta_min = 0.0, theta_max = 0.0;

  bool finite() const;
  BoundingBox expanded(double r) const { return {p_min - r, p_max + r, theta_min - r, theta_max + r}; }
  bool contains(PhasePoint u) const {
    return u.p >= p_min && u.p <= p_max && u.theta >= theta_min && u.theta <= theta_max;
  }
};

namespace detail {
struct Shape {
  virtual ~Shape() = default;
  // Euclidean distance to the closed set; zero inside.
  virtual double distance(PhasePoint u) const = 0;
  virtual BoundingBox bounds() const = 0;
};
}  // namespace detail

// Closed region of the phase plane. Shapes with a closed-form distance (disk, rectangle,
// polygon, finite point set, unions and neighborhoods of those) are exact; an arbitrary
// predicate falls back to a distance sampled on a grid.
class PhaseDomain {
 public:
  static PhaseDomain disk(PhasePoint center, double radius);
  static PhaseDomain rect(double p_min, double p_max, double theta_min, double theta_max);
  static PhaseDomain polygon(std::vector<PhasePoint> vertices);
  static PhaseDomain points(std::vector<PhasePoint> pts);
  static PhaseDomain unite(const std::vector<PhaseDomain>& parts);
  static PhaseDomain predicate(std::function<bool(PhasePoint)> inside, BoundingBox box,
                               double resolution = 1.0 / 32);
  static PhaseDomain whole_plane();

  bool contains(PhasePoint u) const;
  double distance(PhasePoint u) const { return shape_->distance(u); }
  BoundingBox bounds() const { return shape_->bounds(); }
  bool bounded() const { return bounds().finite(); }

  // Points within distance r of the domain.
  PhaseDomain neighborhood(double r) const;

  // Midpoint-rule estimate over the bounding box.
  double area(double resolution = 1.0 / 128) const;

 private:
  explicit PhaseDomain(std::shared_ptr<const detail::Shape> s) : shape_(std::move(s)) {}
  std::shared_ptr<const detail::Shape> shape_;
};

// Lattice (or sharp-lattice) points inside a bounded domain, sorted by (k, j).
std::vector<LatticeIndex> lattice_points_in(const PhaseDomain& domain, bool sharp);

}  // namespace critgabor
