#include "seaoco/geometry.hpp"

#include <cmath>

#include <fmt/format.h>

#include "seaoco/errors.hpp"

namespace seaoco {
namespace {

void require_finite(const Vector& v, const char* what) {
  if (!v.allFinite()) throw NonFiniteInput(fmt::format("{}: non-finite entry", what));
}

void require_dimension(const Domain& domain, const Vector& v, const char* what) {
  if (v.size() != domain.dimension()) {
    throw DimensionMismatch(
        fmt::format("{}: expected dimension {}, got {}", what, domain.dimension(), v.size()));
  }
}

}  // namespace

Domain Domain::box(Vector lo, Vector hi) {
  if (lo.size() == 0 || lo.size() != hi.size()) {
    throw DimensionMismatch("box: lo and hi must be nonempty and of equal size");
  }
  require_finite(lo, "box lo");
  require_finite(hi, "box hi");
  for (Eigen::Index i = 0; i < lo.size(); ++i) {
    if (!(lo[i] < hi[i])) throw InvalidArgument(fmt::format("box: lo[{}] must be < hi[{}]", i, i));
  }
  Domain d;
  d.kind_ = Kind::Box;
  d.center_ = 0.5 * (lo + hi);
  d.lo_ = std::move(lo);
  d.hi_ = std::move(hi);
  return d;
}

Domain Domain::ball(Vector center, double radius) {
  if (center.size() == 0) throw DimensionMismatch("ball: empty center");
  require_finite(center, "ball center");
  if (!(radius > 0.0) || !std::isfinite(radius)) throw InvalidArgument("ball: radius must be > 0");
  Domain d;
  d.kind_ = Kind::Ball;
  d.radius_ = radius;
  d.lo_ = center.array() - radius;
  d.hi_ = center.array() + radius;
  d.center_ = std::move(center);
  return d;
}

Domain Domain::interval(double a, double b) {
  return box(Vector::Constant(1, a), Vector::Constant(1, b));
}

double Domain::diameter() const {
  return is_ball() ? 2.0 * radius_ : (hi_ - lo_).norm();
}

bool Domain::contains(const Vector& p, double tol) const {
  if (p.size() != dimension() || !p.allFinite()) return false;
  if (is_ball()) return (p - center_).norm() <= radius_ * (1.0 + tol);
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    const double slack = tol * std::max(1.0, std::abs(hi_[i] - lo_[i]));
    if (p[i] < lo_[i] - slack || p[i] > hi_[i] + slack) return false;
  }
  return true;
}

double Domain::max_affine_norm(double scale, const Vector& offset) const {
  require_dimension(*this, offset, "max_affine_norm");
  if (is_ball()) return (scale * center_ + offset).norm() + std::abs(scale) * radius_;
  double sq = 0.0;
  for (Eigen::Index i = 0; i < offset.size(); ++i) {
    const double a = std::abs(scale * lo_[i] + offset[i]);
    const double b = std::abs(scale * hi_[i] + offset[i]);
    sq += std::max(a, b) * std::max(a, b);
  }
  return std::sqrt(sq);
}

Vector Domain::linear_minimizer(const Vector& c, const Vector& tie_break) const {
  require_dimension(*this, c, "linear_minimizer");
  if (is_ball()) {
    const double n = c.norm();
    if (n == 0.0) return project(*this, tie_break);
    return center_ - (radius_ / n) * c;
  }
  Vector x = project(*this, tie_break);
  for (Eigen::Index i = 0; i < c.size(); ++i) {
    if (c[i] > 0.0) x[i] = lo_[i];
    if (c[i] < 0.0) x[i] = hi_[i];
  }
  return x;
}

std::vector<Vector> Domain::grid(int per_axis) const {
  if (per_axis < 2) throw InvalidArgument("grid: need at least 2 points per axis");
  const int d = dimension();
  std::size_t total = 1;
  for (int i = 0; i < d; ++i) total *= static_cast<std::size_t>(per_axis);
  std::vector<Vector> points;
  points.reserve(total);
  std::vector<int> idx(static_cast<std::size_t>(d), 0);
  for (std::size_t n = 0; n < total; ++n) {
    Vector p(d);
    for (int i = 0; i < d; ++i) {
      const double frac = static_cast<double>(idx[static_cast<std::size_t>(i)]) / (per_axis - 1);
      p[i] = lo_[i] + frac * (hi_[i] - lo_[i]);
    }
    points.push_back(project(*this, p));
    for (int i = 0; i < d; ++i) {
      if (++idx[static_cast<std::size_t>(i)] < per_axis) break;
      idx[static_cast<std::size_t>(i)] = 0;
    }
  }
  return points;
}

std::vector<Vector> Domain::extreme_points() const {
  const int d = dimension();
  std::vector<Vector> pts;
  if (is_ball()) {
    for (int i = 0; i < d; ++i) {
      for (double s : {-1.0, 1.0}) {
        Vector p = center_;
        p[i] += s * radius_;
        pts.push_back(std::move(p));
      }
    }
    return pts;
  }
  const std::size_t corners = std::size_t{1} << d;
  for (std::size_t mask = 0; mask < corners; ++mask) {
    Vector p(d);
    for (int i = 0; i < d; ++i) p[i] = (mask >> i) & 1U ? hi_[i] : lo_[i];
    pts.push_back(std::move(p));
  }
  return pts;
}

Vector project(const Domain& domain, const Vector& p) {
  require_dimension(domain, p, "project");
  require_finite(p, "project");
  if (domain.is_box()) return p.cwiseMax(domain.lo()).cwiseMin(domain.hi());
  const Vector offset = p - domain.center();
  const double n = offset.norm();
  if (n <= domain.radius()) return p;
  return domain.center() + (domain.radius() / n) * offset;
}

Vector prox_step(const Domain& domain, const Vector& theta, double weight, const Vector& center) {
  require_dimension(domain, theta, "prox_step theta");
  require_dimension(domain, center, "prox_step center");
  require_finite(theta, "prox_step theta");
  require_finite(center, "prox_step center");
  if (!(weight >= 0.0) || !std::isfinite(weight)) {
    throw InvalidArgument("prox_step: weight must be finite and >= 0");
  }
  if (weight == 0.0) {
    if (theta.isZero(0.0)) return project(domain, center);
    throw UnboundedObjective("prox_step: zero weight with a nonzero linear term");
  }
  return project(domain, center - theta / weight);
}

Vector regularized_argmin(const Domain& domain, const Vector& theta, double eta,
                          const Vector& center, const Vector& fallback) {
  if (!(eta > 0.0)) throw InvalidArgument("regularized_argmin: step size must be > 0");
  if (std::isinf(eta)) {
    require_dimension(domain, theta, "regularized_argmin theta");
    if (theta.isZero(0.0)) return project(domain, fallback);
    return domain.linear_minimizer(theta, center);
  }
  return prox_step(domain, theta, 1.0 / eta, center);
}

}  // namespace seaoco
