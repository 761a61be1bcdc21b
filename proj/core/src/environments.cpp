#include "seaoco/environments.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <boost/math/special_functions/gamma.hpp>
#include <fmt/format.h>

#include "seaoco/errors.hpp"

namespace seaoco {
namespace {

constexpr double kTruncation = 4.0;

bool affine_family(const LossFamily& f) {
  return f.kind() == LossFamily::Kind::Linear || f.kind() == LossFamily::Kind::QuadraticTracking;
}

// grad F(x) = A x + b for linear and quadratic families; returns (A, b).
std::pair<double, Vector> affine_mean_grad(const LossFamily& f, const Distribution& law) {
  Vector b = f.kind() == LossFamily::Kind::Linear ? law.mean_point() : Vector(-f.scale() * law.mean_point());
  if (law.shift.size()) b += law.shift;
  return {f.kind() == LossFamily::Kind::Linear ? 0.0 : f.scale(), std::move(b)};
}

Vector unit(int d, int axis) {
  Vector e = Vector::Zero(d);
  e[axis] = 1.0;
  return e;
}

Vector resolve_mean(const Vector& mean, const Domain& domain) {
  if (mean.size() == 0) return domain.center();
  if (mean.size() != domain.dimension()) throw DimensionMismatch("environment mean has wrong dimension");
  return mean;
}

}  // namespace

Vector Distribution::mean_point() const {
  if (law != Law::Pool) return center;
  Vector m = Vector::Zero((*pool)[0].size());
  for (int i : support) m += (*pool)[static_cast<std::size_t>(i)];
  return m / static_cast<double>(support.size());
}

double Distribution::point_variance() const {
  switch (law) {
    case Law::Dirac: return 0.0;
    case Law::TruncatedGaussian: return noise_m2;
    case Law::Pool: {
      const Vector m = mean_point();
      double s = 0.0;
      for (int i : support) s += ((*pool)[static_cast<std::size_t>(i)] - m).squaredNorm();
      return s / static_cast<double>(support.size());
    }
  }
  return 0.0;
}

double truncated_gaussian_second_moment(int d, double s, double R) {
  if (s == 0.0) return 0.0;
  const double r = (R / s) * (R / s);
  const double num = boost::math::gamma_p(0.5 * (d + 2), 0.5 * r);
  const double den = boost::math::gamma_p(0.5 * d, 0.5 * r);
  return d * s * s * num / den;
}

double gradient_bound(const LossFamily& family, const Domain& domain,
                      const std::vector<std::pair<Vector, double>>& point_balls, double shift_norm) {
  double best = 0.0;
  for (const auto& [c, r] : point_balls) {
    switch (family.kind()) {
      case LossFamily::Kind::Linear:
      case LossFamily::Kind::LogSmooth: best = std::max(best, c.norm() + r); break;
      case LossFamily::Kind::QuadraticTracking:
        best = std::max(best, family.scale() * (domain.max_affine_norm(1.0, -c) + r));
        break;
      case LossFamily::Kind::GradientOracle: throw InvalidArgument("gradient_bound: oracle families declare G directly");
    }
  }
  return best + shift_norm;
}

std::vector<Vector> make_pool(const Vector& mean, double sigma, int n, std::uint64_t pool_seed) {
  if (n <= 0) throw InvalidArgument("pool size must be positive");
  Stream s(pool_seed, 0, Role::Pool);
  const auto d = mean.size();
  const double sd = sigma / std::sqrt(static_cast<double>(d));
  const double R = kTruncation * sigma;
  std::vector<Vector> pool;
  pool.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    Vector z = Vector::Zero(d);
    if (sigma > 0.0) {
      do {
        std::normal_distribution<double> nd(0.0, sd);
        for (Eigen::Index k = 0; k < d; ++k) z[k] = nd(s);
      } while (z.norm() > R);
    }
    pool.push_back(mean + z);
  }
  return pool;
}

// ---------------------------------------------------------------------------

Environment::Environment(std::string kind, LossFamily family, Domain domain, int horizon, std::uint64_t seed,
                         std::uint64_t episode)
    : kind_(std::move(kind)),
      family_(std::move(family)),
      domain_(std::move(domain)),
      horizon_(horizon),
      env_(seed, episode, Role::Env),
      extra_(seed, episode, Role::ExtraSample),
      coins_(seed, episode, Role::Coins) {
  if (horizon_ < 1) throw InvalidArgument("environment horizon must be >= 1");
  sigma_sq_.reserve(static_cast<std::size_t>(horizon_));
  Sigma_sq_.reserve(static_cast<std::size_t>(horizon_));
}

Distribution Environment::gaussian_law(const Vector& mean, double sigma) const {
  if (!(sigma >= 0.0)) throw InvalidArgument("noise level must be >= 0");
  Distribution law;
  law.center = mean;
  if (sigma == 0.0) return law;
  const int d = domain_.dimension();
  law.law = Distribution::Law::TruncatedGaussian;
  law.noise_sd = sigma / std::sqrt(static_cast<double>(d));
  law.radius = kTruncation * sigma;
  law.noise_m2 = truncated_gaussian_second_moment(d, law.noise_sd, law.radius);
  return law;
}

Sample Environment::draw(const Distribution& law, Stream& stream) const {
  Sample xi;
  xi.coin = law.coin;
  xi.shift = law.shift;
  switch (law.law) {
    case Distribution::Law::Dirac: xi.point = law.center; break;
    case Distribution::Law::TruncatedGaussian: {
      Vector z(law.center.size());
      do {
        std::normal_distribution<double> nd(0.0, law.noise_sd);
        for (Eigen::Index k = 0; k < z.size(); ++k) z[k] = nd(stream);
      } while (z.norm() > law.radius);
      xi.point = law.center + z;
      break;
    }
    case Distribution::Law::Pool: {
      const auto pick = stream.below(law.support.size());
      xi.index = law.support[pick];
      xi.point = (*law.pool)[static_cast<std::size_t>(xi.index)];
      break;
    }
  }
  return xi;
}

Vector Environment::mean_grad(const Distribution& law, const Vector& x) const {
  if (affine_family(family_)) {
    auto [a, b] = affine_mean_grad(family_, law);
    return a * x + b;
  }
  switch (law.law) {
    case Distribution::Law::Dirac: {
      Sample s;
      s.point = law.center;
      s.shift = law.shift;
      s.coin = law.coin;
      return family_.grad(x, s);
    }
    case Distribution::Law::Pool: {
      Vector g = Vector::Zero(x.size());
      Sample s;
      s.shift = law.shift;
      s.coin = law.coin;
      for (int i : law.support) {
        s.point = (*law.pool)[static_cast<std::size_t>(i)];
        g += family_.grad(x, s);
      }
      return g / static_cast<double>(law.support.size());
    }
    case Distribution::Law::TruncatedGaussian: break;
  }
  throw InvalidArgument(fmt::format("{} losses need a finite-support law", family_.name()));
}

Vector Environment::mean_minimizer(const Distribution& law) const {
  switch (family_.kind()) {
    case LossFamily::Kind::QuadraticTracking: {
      Vector target = law.mean_point();
      if (law.shift.size()) target -= law.shift / family_.scale();
      return project(domain_, target);
    }
    case LossFamily::Kind::Linear: {
      auto [a, b] = affine_mean_grad(family_, law);
      return domain_.linear_minimizer(b, Vector::Zero(domain_.dimension()));
    }
    default: break;
  }
  throw InvalidArgument(fmt::format("no closed-form minimizer for {} losses", family_.name()));
}

const std::vector<Vector>& Environment::sup_grid() const {
  if (grid_.empty()) {
    if (domain_.dimension() > 2) {
      throw InvalidArgument("grid-based variance oracles support dimension <= 2");
    }
    grid_ = domain_.grid(100);
  }
  return grid_;
}

double Environment::sigma_sq_of(const Distribution& law) const {
  if (law.law == Distribution::Law::Dirac) return 0.0;
  if (affine_family(family_)) {
    const double a = family_.kind() == LossFamily::Kind::Linear ? 1.0 : family_.scale();
    return a * a * law.point_variance();
  }
  if (law.law != Distribution::Law::Pool) {
    throw InvalidArgument(fmt::format("{} losses need a finite-support law", family_.name()));
  }
  double best = 0.0;
  Sample s;
  s.shift = law.shift;
  s.coin = law.coin;
  for (const Vector& x : sup_grid()) {
    const Vector m = mean_grad(law, x);
    double acc = 0.0;
    for (int i : law.support) {
      s.point = (*law.pool)[static_cast<std::size_t>(i)];
      acc += (family_.grad(x, s) - m).squaredNorm();
    }
    best = std::max(best, acc / static_cast<double>(law.support.size()));
  }
  return best;
}

double Environment::Sigma_sq_of(const Distribution& law, const Distribution* prev) const {
  if (affine_family(family_)) {
    auto [a, b] = affine_mean_grad(family_, law);
    if (!prev) {
      const double n = domain_.max_affine_norm(a, b);
      return n * n;
    }
    auto [a0, b0] = affine_mean_grad(family_, *prev);
    return (b - b0).squaredNorm();
  }
  double best = 0.0;
  for (const Vector& x : sup_grid()) {
    Vector diff = mean_grad(law, x);
    if (prev) diff -= mean_grad(*prev, x);
    best = std::max(best, diff.squaredNorm());
  }
  return best;
}

RoundOutcome Environment::step(int t, const Vector& x) {
  if (t != done_ + 1 || t > horizon_) {
    throw ProtocolViolation(fmt::format("round {} requested after round {} (horizon {})", t, done_, horizon_));
  }
  if (!domain_.contains(x, 1e-9)) throw InvalidArgument(fmt::format("round {}: play is not feasible", t));
  RoundOutcome out;
  out.law = choose(t, x);
  out.xi = draw(out.law, env_);
  after_draw(t, out.xi);
  const bool repeat = last_ && out.law.id != 0 && last_->id == out.law.id;
  out.sigma_sq = repeat ? last_sigma_sq_ : sigma_sq_of(out.law);
  out.Sigma_sq = repeat ? 0.0 : Sigma_sq_of(out.law, last_ ? &*last_ : nullptr);
  sigma_sq_.push_back(out.sigma_sq);
  Sigma_sq_.push_back(out.Sigma_sq);
  last_sigma_sq_ = out.sigma_sq;
  last_ = out.law;
  out.mean_grad_at = [this, law = out.law](const Vector& p) { return mean_grad(law, p); };
  done_ = t;
  return out;
}

Sample Environment::extra_sample(int t) {
  if (t <= 1) throw NoPreviousDistribution("no distribution precedes round 1");
  if (t != done_ + 1 || !last_) {
    throw ProtocolViolation(fmt::format("extra sample for round {} requested after round {}", t, done_));
  }
  return draw(*last_, extra_);
}

VarianceProfile Environment::variance_profile() const {
  VarianceProfile p;
  p.sigma_sq = sigma_sq_;
  p.Sigma_sq = Sigma_sq_;
  if (sigma_sq_.empty()) return p;
  double ss = 0.0;
  double SS = 0.0;
  for (std::size_t i = 0; i < sigma_sq_.size(); ++i) {
    ss += sigma_sq_[i];
    p.sigma_max = std::max(p.sigma_max, sigma_sq_[i]);
    if (i == 0) continue;
    SS += Sigma_sq_[i];
    p.Sigma_max = std::max(p.Sigma_max, Sigma_sq_[i]);
  }
  const double T = static_cast<double>(sigma_sq_.size());
  p.sigma_bar = std::sqrt(ss / T);
  p.Sigma_bar = std::sqrt(SS / T);
  p.sigma_max = std::sqrt(p.sigma_max);
  p.Sigma_max = std::sqrt(p.Sigma_max);
  p.Sigma_sq_first = Sigma_sq_.front();
  return p;
}

// ---------------------------------------------------------------------------

namespace {

class IidEnvironment final : public Environment {
 public:
  IidEnvironment(const EnvSpec& spec, const LossFamily& family, const Domain& domain, int T, std::uint64_t seed,
                 std::uint64_t episode)
      : Environment("iid", family, domain, T, seed, episode) {
    const Vector mean = resolve_mean(spec.mean, domain);
    if (spec.law == "pool") {
      auto pool = std::make_shared<const std::vector<Vector>>(make_pool(mean, spec.sigma, spec.pool_size, spec.pool_seed));
      law_.law = Distribution::Law::Pool;
      law_.center = mean;
      law_.pool = pool;
      law_.support.resize(pool->size());
      for (std::size_t i = 0; i < pool->size(); ++i) law_.support[i] = static_cast<int>(i);
    } else if (spec.law == "gaussian") {
      law_ = gaussian_law(mean, spec.sigma);
    } else {
      throw InvalidArgument(fmt::format("iid: unknown law '{}'", spec.law));
    }
    law_.id = 1;
    declare_constants(family, domain, mean, spec.sigma);
  }

  bool is_iid() const override { return true; }

 protected:
  Distribution choose(int, const Vector&) override { return law_; }

 private:
  void declare_constants(const LossFamily& family, const Domain& domain, const Vector& mean, double sigma) {
    if (family.kind() == LossFamily::Kind::GradientOracle) {
      throw InvalidArgument("iid: oracle families are not supported");
    }
    std::vector<std::pair<Vector, double>> balls;
    if (law_.law == Distribution::Law::Pool) {
      for (const Vector& p : *law_.pool) balls.emplace_back(p, 0.0);
    } else {
      balls.emplace_back(mean, law_.radius);
    }
    (void)sigma;
    const double G = gradient_bound(family, domain, balls, 0.0);
    double L = family.L();
    if (family.kind() == LossFamily::Kind::LogSmooth) {
      if (law_.law == Distribution::Law::TruncatedGaussian) {
        throw InvalidArgument("log_smooth losses need a finite-support law (use law: pool)");
      }
      double r = 0.0;
      for (const auto& b : balls) r = std::max(r, b.first.norm() + b.second);
      L = r * r / 4.0;
    }
    set_family(family.with_constants(G, L, family.mu()));
  }

  Distribution law_;
};

class AdversarialEnvironment final : public Environment {
 public:
  AdversarialEnvironment(const EnvSpec& spec, const LossFamily& family, const Domain& domain, int T,
                         std::uint64_t seed, std::uint64_t episode)
      : Environment("adversarial", family, domain, T, seed, episode),
        pattern_(spec.pattern),
        amplitude_(spec.amplitude),
        offset_(spec.offset.size() ? spec.offset : Vector(Vector::Zero(domain.dimension()))),
        points_(spec.points) {
    if (offset_.size() != domain.dimension()) throw DimensionMismatch("adversarial: offset has wrong dimension");
    std::vector<std::pair<Vector, double>> balls;
    if (pattern_ == "cycle") {
      if (points_.empty()) throw InvalidArgument("adversarial: cycle pattern needs points");
      for (const Vector& p : points_) {
        if (p.size() != domain.dimension()) throw DimensionMismatch("adversarial: point has wrong dimension");
        balls.emplace_back(p, 0.0);
      }
    } else if (pattern_ == "alternating" || pattern_ == "random" || pattern_ == "adaptive") {
      if (!(amplitude_ >= 0.0)) throw InvalidArgument("adversarial: amplitude must be >= 0");
      balls.emplace_back(offset_, amplitude_);
    } else {
      throw InvalidArgument(fmt::format("adversarial: unknown pattern '{}'", pattern_));
    }
    if (family.kind() == LossFamily::Kind::GradientOracle) {
      throw InvalidArgument("adversarial: oracle families are not supported");
    }
    double L = family.L();
    if (family.kind() == LossFamily::Kind::LogSmooth) {
      double r = 0.0;
      for (const auto& b : balls) r = std::max(r, b.first.norm() + b.second);
      L = r * r / 4.0;
    }
    set_family(family.with_constants(gradient_bound(family, domain, balls, 0.0), L, family.mu()));
  }

 protected:
  Distribution choose(int t, const Vector& x) override {
    Distribution law;
    const int d = domain().dimension();
    if (pattern_ == "cycle") {
      law.center = points_[static_cast<std::size_t>(t - 1) % points_.size()];
      return law;
    }
    Vector u;
    if (pattern_ == "alternating") {
      u = (t % 2 == 1 ? 1.0 : -1.0) * unit(d, 0);
    } else if (pattern_ == "random") {
      std::normal_distribution<double> nd(0.0, 1.0);
      u.resize(d);
      do {
        for (int i = 0; i < d; ++i) u[i] = nd(coins());
      } while (u.norm() == 0.0);
      u.normalize();
    } else {
      u = x - domain().center();
      if (u.norm() == 0.0) u = unit(d, 0);
      u.normalize();
    }
    law.center = offset_ + amplitude_ * u;
    return law;
  }

 private:
  std::string pattern_;
  double amplitude_;
  Vector offset_;
  std::vector<Vector> points_;
};

class CorruptedEnvironment final : public Environment {
 public:
  CorruptedEnvironment(const EnvSpec& spec, const LossFamily& family, const Domain& domain, int T,
                       std::uint64_t seed, std::uint64_t episode)
      : Environment("corrupted", family, domain, T, seed, episode), budget_(spec.budget), rate_(spec.rate) {
    if (!affine_family(family)) throw InvalidArgument("corrupted: needs linear or quadratic losses");
    if (!(budget_ >= 0.0)) throw InvalidArgument("corrupted: budget must be >= 0");
    if (!(rate_ > 0.0)) throw InvalidArgument("corrupted: rate must be > 0");
    const Vector mean = resolve_mean(spec.mean, domain);
    base_ = gaussian_law(mean, spec.sigma);
    direction_ = spec.direction.size() ? spec.direction : unit(domain.dimension(), 0);
    if (direction_.size() != domain.dimension() || direction_.norm() == 0.0) {
      throw InvalidArgument("corrupted: direction must be a nonzero vector of the domain dimension");
    }
    direction_.normalize();
    const double G = gradient_bound(family, domain, {{mean, base_.radius}}, budget_ > 0.0 ? rate_ : 0.0);
    set_family(family.with_constants(G, family.L(), family.mu()));
  }

  /// Norm of the corruption gradient at round t.
  double magnitude(int t) const {
    const double spent = rate_ * (t - 1);
    return std::clamp(budget_ - spent, 0.0, rate_);
  }

 protected:
  Distribution choose(int t, const Vector&) override {
    Distribution law = base_;
    const double m = magnitude(t);
    law.shift = (t % 2 == 1 ? m : -m) * direction_;
    law.id = m == 0.0 ? 1 : 0;
    return law;
  }

 private:
  double budget_;
  double rate_;
  Distribution base_;
  Vector direction_;
};

class RomEnvironment final : public Environment {
 public:
  RomEnvironment(const EnvSpec& spec, const LossFamily& family, const Domain& domain, int T, std::uint64_t seed,
                 std::uint64_t episode)
      : Environment("rom", family, domain, T, seed, episode) {
    const int n = spec.n > 0 ? spec.n : T;
    if (spec.passes < 1) throw InvalidArgument("rom: passes must be >= 1");
    if (static_cast<long long>(n) * spec.passes < T) throw InvalidArgument("rom: n * passes must cover the horizon");
    const Vector mean = resolve_mean(spec.mean, domain);
    pool_ = std::make_shared<const std::vector<Vector>>(make_pool(mean, spec.sigma, n, spec.pool_seed));
    if (family.kind() == LossFamily::Kind::GradientOracle) throw InvalidArgument("rom: oracle families are not supported");
    std::vector<std::pair<Vector, double>> balls;
    for (const Vector& p : *pool_) balls.emplace_back(p, 0.0);
    double L = family.L();
    if (family.kind() == LossFamily::Kind::LogSmooth) {
      double r = 0.0;
      for (const auto& b : balls) r = std::max(r, b.first.norm());
      L = r * r / 4.0;
    }
    set_family(family.with_constants(gradient_bound(family, domain, balls, 0.0), L, family.mu()));
  }

  const std::vector<Vector>& pool() const { return *pool_; }

 protected:
  Distribution choose(int, const Vector&) override {
    if (remaining_.empty()) {
      remaining_.resize(pool_->size());
      for (std::size_t i = 0; i < pool_->size(); ++i) remaining_[i] = static_cast<int>(i);
    }
    Distribution law;
    law.law = Distribution::Law::Pool;
    law.pool = pool_;
    law.support = remaining_;
    law.center = law.mean_point();
    return law;
  }

  void after_draw(int, const Sample& xi) override {
    auto it = std::find(remaining_.begin(), remaining_.end(), static_cast<int>(xi.index));
    if (it != remaining_.end()) remaining_.erase(it);
  }

 private:
  std::shared_ptr<const std::vector<Vector>> pool_;
  std::vector<int> remaining_;
};

class DriftingEnvironment final : public Environment {
 public:
  DriftingEnvironment(const EnvSpec& spec, const LossFamily& family, const Domain& domain, int T,
                      std::uint64_t seed, std::uint64_t episode)
      : Environment("drifting", family, domain, T, seed, episode), sigma_(spec.sigma), rho_(spec.drift_radius) {
    if (!affine_family(family)) throw InvalidArgument("drifting: needs linear or quadratic losses");
    eps_ = spec.eps ? *spec.eps : std::pow(static_cast<double>(T), -spec.eps_power);
    if (!(eps_ >= 0.0)) throw InvalidArgument("drifting: eps must be >= 0");
    if (!(rho_ > 0.0)) throw InvalidArgument("drifting: drift_radius must be > 0");
    center_ = resolve_mean(spec.mean, domain);
    const double a = family.kind() == LossFamily::Kind::Linear ? 1.0 : family.scale();
    chord_ = std::sqrt(eps_) / a;
    if (chord_ > 2.0 * rho_) throw InvalidArgument("drifting: per-round move exceeds the drift circle");
    angle_ = 2.0 * std::asin(chord_ / (2.0 * rho_));
    const double R = gaussian_law(center_, sigma_).radius;
    set_family(family.with_constants(gradient_bound(family, domain, {{center_, rho_ + R}}, 0.0), family.L(),
                                     family.mu()));
  }

  double eps() const { return eps_; }

  Vector mean_at(int t) const {
    Vector m = center_;
    if (m.size() == 1) {
      // Triangle wave on [c - rho, c + rho] with steps of length chord.
      const double period = 4.0 * rho_;
      double s = std::fmod(chord_ * (t - 1), period);
      const double pos = s <= 2.0 * rho_ ? s : period - s;
      m[0] += pos - rho_;
      return m;
    }
    const double th = angle_ * (t - 1);
    m[0] += rho_ * std::cos(th);
    m[1] += rho_ * std::sin(th);
    return m;
  }

 protected:
  Distribution choose(int t, const Vector&) override { return gaussian_law(mean_at(t), sigma_); }

 private:
  double sigma_;
  double rho_;
  double eps_ = 0.0;
  double chord_ = 0.0;
  double angle_ = 0.0;
  Vector center_;
};

class SwitchingEnvironment final : public Environment {
 public:
  SwitchingEnvironment(const EnvSpec& spec, const LossFamily& family, const Domain& domain, int T,
                       std::uint64_t seed, std::uint64_t episode)
      : Environment("switching", family, domain, T, seed, episode), sigma_(spec.sigma), switches_(spec.switches) {
    if (!affine_family(family)) throw InvalidArgument("switching: needs linear or quadratic losses");
    if (switches_ < 0) throw InvalidArgument("switching: switch count must be >= 0");
    means_ = spec.means;
    if (means_.empty()) means_.push_back(resolve_mean(spec.mean, domain));
    std::vector<std::pair<Vector, double>> balls;
    const double R = gaussian_law(means_.front(), sigma_).radius;
    for (const Vector& m : means_) {
      if (m.size() != domain.dimension()) throw DimensionMismatch("switching: mean has wrong dimension");
      balls.emplace_back(m, R);
    }
    set_family(family.with_constants(gradient_bound(family, domain, balls, 0.0), family.L(), family.mu()));
  }

  /// Index of the segment containing round t; switches are evenly spaced.
  int segment(int t) const {
    const long long T = horizon();
    int k = 0;
    for (int j = 1; j <= switches_; ++j) {
      if (t >= 1 + (j * T) / (switches_ + 1)) k = j;
    }
    return k;
  }

 protected:
  Distribution choose(int t, const Vector&) override {
    const int k = segment(t);
    Distribution law = gaussian_law(means_[static_cast<std::size_t>(k) % means_.size()], sigma_);
    law.id = static_cast<std::uint64_t>(k) + 1;
    return law;
  }

 private:
  double sigma_;
  int switches_;
  std::vector<Vector> means_;
};

class RademacherEnvironment final : public Environment {
 public:
  RademacherEnvironment(const EnvSpec& spec, const Domain& domain, int T, std::uint64_t seed, std::uint64_t episode)
      : Environment("rademacher", oracle_family(domain, spec.G), domain, T, seed, episode), G_(spec.G) {}

  static LossFamily oracle_family(const Domain& domain, double G) {
    require_lower_bound_domain(domain);
    if (!(G > 0.0)) throw InvalidArgument("rademacher: G must be > 0");
    const double b = domain.hi()[0];
    auto value = [G, b](const Vector& x, const Sample& xi) { return xi.coin * G * x[0] * x[0] / (4.0 * b); };
    auto grad = [G, b](const Vector& x, const Sample& xi) {
      return Vector(Vector::Constant(1, xi.coin * G * x[0] / (2.0 * b)));
    };
    return LossFamily::gradient_oracle(value, grad, G / (2.0 * b), 0.0).with_constants(G, G / (2.0 * b), 0.0);
  }

 protected:
  Distribution choose(int t, const Vector&) override {
    Distribution law;
    law.center = Vector::Zero(1);
    law.coin = t % 2 == 1 ? coins().rademacher() : 0.0;
    return law;
  }

 private:
  double G_;
};

}  // namespace

void require_lower_bound_domain(const Domain& domain) {
  if (!domain.is_box() || domain.dimension() != 1) {
    throw InvalidLowerBoundDomain("lower-bound construction needs a one-dimensional interval");
  }
  const double a = domain.lo()[0];
  const double b = domain.hi()[0];
  if (!(a >= 1.0 && a < b && a >= 0.5 * b)) {
    throw InvalidLowerBoundDomain(fmt::format("interval [{}, {}] must satisfy 1 <= a < b and a >= b/2", a, b));
  }
}

double rademacher_lb_gradient(const Domain& domain, int t, double x, double coin, double G) {
  require_lower_bound_domain(domain);
  if (t % 2 == 0) return 0.0;
  return coin * G * x / (2.0 * domain.hi()[0]);
}

std::unique_ptr<Environment> make_environment(const EnvSpec& spec, const LossFamily& family, const Domain& domain,
                                              int horizon, std::uint64_t seed, std::uint64_t episode) {
  const std::string& k = spec.kind;
  if (k == "iid") return std::make_unique<IidEnvironment>(spec, family, domain, horizon, seed, episode);
  if (k == "adversarial" || k == "adversarial_seq") {
    return std::make_unique<AdversarialEnvironment>(spec, family, domain, horizon, seed, episode);
  }
  if (k == "corrupted" || k == "corrupted_iid") {
    return std::make_unique<CorruptedEnvironment>(spec, family, domain, horizon, seed, episode);
  }
  if (k == "rom") return std::make_unique<RomEnvironment>(spec, family, domain, horizon, seed, episode);
  if (k == "drifting") return std::make_unique<DriftingEnvironment>(spec, family, domain, horizon, seed, episode);
  if (k == "switching") return std::make_unique<SwitchingEnvironment>(spec, family, domain, horizon, seed, episode);
  if (k == "rademacher" || k == "rademacher_lb") {
    return std::make_unique<RademacherEnvironment>(spec, domain, horizon, seed, episode);
  }
  throw InvalidArgument(fmt::format("unknown environment kind '{}'", k));
}

}  // namespace seaoco
