#include "seaoco/losses.hpp"

#include <cmath>

#include <fmt/format.h>

#include "seaoco/errors.hpp"

namespace seaoco {
namespace {

void check_shapes(const Vector& x, const Sample& xi, LossFamily::Kind kind) {
  if (kind == LossFamily::Kind::GradientOracle) return;
  if (xi.point.size() != x.size()) {
    throw DimensionMismatch(fmt::format("loss: x has {} entries, sample has {}", x.size(), xi.point.size()));
  }
  if (xi.shift.size() != 0 && xi.shift.size() != x.size()) {
    throw DimensionMismatch("loss: shift dimension differs from x");
  }
}

double finite_or_throw(double v) {
  if (!std::isfinite(v)) throw NumericalOverflow("loss value is not finite");
  return v;
}

Vector finite_or_throw(Vector v) {
  if (!v.allFinite()) throw NumericalOverflow("loss gradient is not finite");
  return v;
}

}  // namespace

double softplus(double z) { return z > 0.0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z)); }

double sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

LossFamily LossFamily::linear() {
  LossFamily f;
  f.kind_ = Kind::Linear;
  return f;
}

LossFamily LossFamily::quadratic_tracking(double a) {
  if (!(a > 0.0) || !std::isfinite(a)) throw InvalidArgument("quadratic_tracking: scale must be > 0");
  LossFamily f;
  f.kind_ = Kind::QuadraticTracking;
  f.scale_ = a;
  f.L_ = a;
  f.mu_ = a;
  return f;
}

LossFamily LossFamily::log_smooth() {
  LossFamily f;
  f.kind_ = Kind::LogSmooth;
  return f;
}

LossFamily LossFamily::gradient_oracle(ValueFn value, GradFn grad, double L, double mu) {
  if (!value || !grad) throw InvalidArgument("gradient_oracle: value and gradient maps are required");
  LossFamily f;
  f.kind_ = Kind::GradientOracle;
  f.value_ = std::move(value);
  f.grad_ = std::move(grad);
  f.L_ = L;
  f.mu_ = mu;
  return f;
}

std::string LossFamily::name() const {
  switch (kind_) {
    case Kind::Linear: return "linear";
    case Kind::QuadraticTracking: return "quadratic_tracking";
    case Kind::LogSmooth: return "log_smooth";
    case Kind::GradientOracle: return "gradient_oracle";
  }
  return "unknown";
}

LossFamily::Kind parse_family_kind(const std::string& name) {
  if (name == "linear") return LossFamily::Kind::Linear;
  if (name == "quadratic_tracking" || name == "quadratic") return LossFamily::Kind::QuadraticTracking;
  if (name == "log_smooth") return LossFamily::Kind::LogSmooth;
  if (name == "gradient_oracle") return LossFamily::Kind::GradientOracle;
  throw InvalidArgument(fmt::format("unknown loss family '{}'", name));
}

LossFamily LossFamily::with_constants(double G, double L, double mu) const {
  if (!(G >= 0.0) || !(L >= 0.0) || !(mu >= 0.0)) throw InvalidArgument("loss constants must be >= 0");
  if (mu > 0.0 && mu > L) throw InvalidArgument("loss constants: mu must not exceed L");
  LossFamily f = *this;
  f.G_ = G;
  f.L_ = L;
  f.mu_ = mu;
  return f;
}

double LossFamily::eval(const Vector& x, const Sample& xi) const {
  check_shapes(x, xi, kind_);
  const double corr = xi.shift.size() ? xi.shift.dot(x) : 0.0;
  switch (kind_) {
    case Kind::Linear: return finite_or_throw(xi.point.dot(x) + corr);
    case Kind::QuadraticTracking: return finite_or_throw(0.5 * scale_ * (x - xi.point).squaredNorm() + corr);
    case Kind::LogSmooth: return finite_or_throw(softplus(xi.point.dot(x)) + corr);
    case Kind::GradientOracle: return finite_or_throw(value_(x, xi) + corr);
  }
  return 0.0;
}

Vector LossFamily::grad(const Vector& x, const Sample& xi) const {
  check_shapes(x, xi, kind_);
  Vector g;
  switch (kind_) {
    case Kind::Linear: g = xi.point; break;
    case Kind::QuadraticTracking: g = scale_ * (x - xi.point); break;
    case Kind::LogSmooth: g = sigmoid(xi.point.dot(x)) * xi.point; break;
    case Kind::GradientOracle: g = grad_(x, xi); break;
  }
  if (xi.shift.size()) g += xi.shift;
  return finite_or_throw(std::move(g));
}

}  // namespace seaoco
