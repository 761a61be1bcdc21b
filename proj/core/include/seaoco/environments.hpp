#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "seaoco/geometry.hpp"
#include "seaoco/losses.hpp"
#include "seaoco/random.hpp"

namespace seaoco {

/// The law D_t the adversary commits to in one round.
struct Distribution {
  enum class Law { Dirac, TruncatedGaussian, Pool };

  Law law = Law::Dirac;
  /// Dirac location, or the mean of the untruncated Gaussian.
  Vector center;
  /// Per-coordinate standard deviation and truncation radius of the noise.
  double noise_sd = 0.0;
  double radius = 0.0;
  /// E ||noise||^2 after truncation.
  double noise_m2 = 0.0;
  /// Pool law: uniform over pool[support[i]].
  std::shared_ptr<const std::vector<Vector>> pool;
  std::vector<int> support;
  /// Linear corruption term added to every sample of the round.
  Vector shift;
  /// Sign carried by oracle-driven rounds.
  double coin = 0.0;
  /// Nonzero ids mark laws that repeat unchanged across rounds.
  std::uint64_t id = 0;

  /// E[xi.point].
  Vector mean_point() const;
  /// E ||xi.point - E xi.point||^2.
  double point_variance() const;
};

struct RoundOutcome {
  Sample xi;
  Distribution law;
  double sigma_sq = 0.0;
  double Sigma_sq = 0.0;
  std::function<Vector(const Vector&)> mean_grad_at;
};

struct VarianceProfile {
  std::vector<double> sigma_sq;
  std::vector<double> Sigma_sq;
  double sigma_bar = 0.0;
  double Sigma_bar = 0.0;
  double sigma_max = 0.0;
  double Sigma_max = 0.0;
  /// sup_x ||grad F_1(x)||^2, kept apart from Sigma_bar.
  double Sigma_sq_first = 0.0;
};

class ExtraSampleSource {
 public:
  virtual ~ExtraSampleSource() = default;
  /// An independent draw from D_{t-1}.
  virtual Sample extra_sample(int t) = 0;
};

/// Parameters for every environment kind. Fields not used by a kind are ignored.
struct EnvSpec {
  std::string kind = "iid";
  Vector mean;
  double sigma = 0.0;
  /// iid only: "gaussian" or "pool" (sampling with replacement).
  std::string law = "gaussian";
  int pool_size = 0;
  std::uint64_t pool_seed = 0;

  std::string pattern = "alternating";
  double amplitude = 1.0;
  Vector offset;
  std::vector<Vector> points;

  double budget = 0.0;
  double rate = 1.0;
  Vector direction;

  int n = 0;
  int passes = 1;

  std::optional<double> eps;
  double eps_power = 0.5;
  double drift_radius = 0.5;

  int switches = 0;
  std::vector<Vector> means;

  double G = 1.0;
};

class Environment : public ExtraSampleSource {
 public:
  Environment(std::string kind, LossFamily family, Domain domain, int horizon, std::uint64_t seed,
              std::uint64_t episode);
  ~Environment() override = default;

  /// Run round t against the learner's play x_t. Rounds must be queried in order.
  RoundOutcome step(int t, const Vector& x);
  Sample extra_sample(int t) override;

  VarianceProfile variance_profile() const;

  const std::string& kind() const { return kind_; }
  const LossFamily& family() const { return family_; }
  const Domain& domain() const { return domain_; }
  int horizon() const { return horizon_; }
  int rounds_done() const { return done_; }
  virtual bool is_iid() const { return false; }

  /// grad F(x) for a law of this environment.
  Vector mean_grad(const Distribution& law, const Vector& x) const;
  /// argmin_x F(x) for a law; closed form for linear and quadratic families.
  Vector mean_minimizer(const Distribution& law) const;
  double sigma_sq_of(const Distribution& law) const;
  /// sup_x ||grad F(x) - grad F_prev(x)||^2, with grad F_prev = 0 when prev is null.
  double Sigma_sq_of(const Distribution& law, const Distribution* prev) const;
  Sample draw(const Distribution& law, Stream& stream) const;

 protected:
  virtual Distribution choose(int t, const Vector& x) = 0;
  /// Called with the round's sample before the outcome is returned.
  virtual void after_draw(int /*t*/, const Sample& /*xi*/) {}

  Stream& coins() { return coins_; }
  void set_family(LossFamily family) { family_ = std::move(family); }
  Distribution gaussian_law(const Vector& mean, double sigma) const;

 private:
  const std::vector<Vector>& sup_grid() const;

  std::string kind_;
  LossFamily family_;
  Domain domain_;
  int horizon_;
  Stream env_;
  Stream extra_;
  Stream coins_;
  int done_ = 0;
  std::optional<Distribution> last_;
  double last_sigma_sq_ = 0.0;
  std::vector<double> sigma_sq_;
  std::vector<double> Sigma_sq_;
  mutable std::vector<Vector> grid_;
};

/// Sup of the gradient norm over the domain when xi.point ranges over the
/// union of the given balls and the shift has at most the given norm.
double gradient_bound(const LossFamily& family, const Domain& domain,
                      const std::vector<std::pair<Vector, double>>& point_balls, double shift_norm);

/// E ||Z||^2 for Z ~ N(0, s^2 I_d) conditioned on ||Z|| <= R.
double truncated_gaussian_second_moment(int d, double s, double R);

/// Gradient of the lower-bound construction: zero on even rounds, coin * G x / (2b) on odd ones.
double rademacher_lb_gradient(const Domain& domain, int t, double x, double coin, double G);

/// Checks the interval [a, b] with 1 <= a < b and a >= b / 2.
void require_lower_bound_domain(const Domain& domain);

std::unique_ptr<Environment> make_environment(const EnvSpec& spec, const LossFamily& family,
                                              const Domain& domain, int horizon, std::uint64_t seed,
                                              std::uint64_t episode);

/// Pool of n points drawn around `mean` with truncated Gaussian noise of level sigma.
std::vector<Vector> make_pool(const Vector& mean, double sigma, int n, std::uint64_t pool_seed);

}  // namespace seaoco
