#pragma once

#include <limits>
#include <vector>

#include <Eigen/Dense>

namespace seaoco {

using Vector = Eigen::VectorXd;

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Closed bounded convex feasible set: an axis-aligned box or a Euclidean ball.
class Domain {
 public:
  enum class Kind { Box, Ball };

  static Domain box(Vector lo, Vector hi);
  static Domain ball(Vector center, double radius);
  /// One-dimensional box [a, b].
  static Domain interval(double a, double b);

  Kind kind() const { return kind_; }
  bool is_box() const { return kind_ == Kind::Box; }
  bool is_ball() const { return kind_ == Kind::Ball; }
  int dimension() const { return static_cast<int>(center_.size()); }

  /// Unsquared diameter: 2 * radius for a ball, ||hi - lo|| for a box.
  double diameter() const;
  /// Midpoint of the box or center of the ball.
  const Vector& center() const { return center_; }
  const Vector& lo() const { return lo_; }
  const Vector& hi() const { return hi_; }
  double radius() const { return radius_; }

  bool contains(const Vector& p, double tol = 1e-12) const;

  /// sup over x in the domain of ||scale * x + offset||.
  double max_affine_norm(double scale, const Vector& offset) const;

  /// A minimizer of <c, x> over the domain. Coordinates (box) or the whole
  /// vector (ball) with a zero linear term fall back to the projection of
  /// `tie_break`.
  Vector linear_minimizer(const Vector& c, const Vector& tie_break) const;

  /// Points of a regular grid with `per_axis` points per coordinate over the
  /// bounding box, projected onto the domain. Used by sup-over-x oracles.
  std::vector<Vector> grid(int per_axis) const;

  /// Corners of the box, or the 2d axis extreme points of the ball.
  std::vector<Vector> extreme_points() const;

 private:
  Domain() = default;

  Kind kind_ = Kind::Box;
  Vector lo_;
  Vector hi_;
  Vector center_;
  double radius_ = 0.0;
};

/// Euclidean projection onto the domain.
Vector project(const Domain& domain, const Vector& p);

/// argmin_{x in domain} <x, theta> + (weight / 2) ||x - center||^2.
///
/// Equals project(center - theta / weight) for weight > 0. With weight = 0
/// the objective is linear; theta = 0 gives project(center) and any other
/// theta throws UnboundedObjective.
Vector prox_step(const Domain& domain, const Vector& theta, double weight, const Vector& center);

/// Same objective written with a step size eta = 1 / weight, where eta may be
/// +infinity. With an infinite step the regularizer vanishes: the linear term
/// is minimized over the (bounded) domain and an all-zero linear term returns
/// `fallback`.
Vector regularized_argmin(const Domain& domain, const Vector& theta, double eta,
                          const Vector& center, const Vector& fallback);

}  // namespace seaoco
