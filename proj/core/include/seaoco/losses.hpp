#pragma once

#include <cstdint>
#include <functional>
#include <string>

#include "seaoco/geometry.hpp"

namespace seaoco {

/// One draw from the environment. `point` is the data vector, `shift` an
/// optional linear corruption term added to the loss, `coin` a sign used by
/// oracle-driven constructions, `index` the pool index when drawn from a pool.
struct Sample {
  Vector point;
  Vector shift;
  double coin = 0.0;
  std::int64_t index = -1;
};

class LossFamily {
 public:
  enum class Kind { Linear, QuadraticTracking, LogSmooth, GradientOracle };

  using ValueFn = std::function<double(const Vector&, const Sample&)>;
  using GradFn = std::function<Vector(const Vector&, const Sample&)>;

  /// f(x, xi) = <xi, x>.
  static LossFamily linear();
  /// f(x, xi) = (a / 2) ||x - xi||^2.
  static LossFamily quadratic_tracking(double a);
  /// f(x, xi) = log(1 + exp(<xi, x>)).
  static LossFamily log_smooth();
  /// Value and gradient supplied directly.
  static LossFamily gradient_oracle(ValueFn value, GradFn grad, double L, double mu);

  Kind kind() const { return kind_; }
  std::string name() const;
  double scale() const { return scale_; }

  double G() const { return G_; }
  double L() const { return L_; }
  double mu() const { return mu_; }

  /// Copy with constants set by the environment that owns the sample law.
  LossFamily with_constants(double G, double L, double mu) const;
  LossFamily with_gradient_bound(double G) const { return with_constants(G, L_, mu_); }

  double eval(const Vector& x, const Sample& xi) const;
  Vector grad(const Vector& x, const Sample& xi) const;

 private:
  Kind kind_ = Kind::Linear;
  double scale_ = 1.0;
  double G_ = 0.0;
  double L_ = 0.0;
  double mu_ = 0.0;
  ValueFn value_;
  GradFn grad_;
};

LossFamily::Kind parse_family_kind(const std::string& name);

/// Numerically stable log(1 + exp(z)).
double softplus(double z);
/// 1 / (1 + exp(-z)).
double sigmoid(double z);

}  // namespace seaoco
