#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "seaoco/dyn_meta.hpp"
#include "seaoco/environments.hpp"
#include "seaoco/losses.hpp"
#include "seaoco/msmwc.hpp"
#include "seaoco/optimistic.hpp"
#include "seaoco/strongly_convex.hpp"

namespace seaoco {

struct LearnerSpec {
  std::string kind = "oftrl";
  /// Strong convexity parameter, used by oftl_sc only.
  double mu = 0.0;
};

/// Online learner driven by the episode loop: play(t) then update(t, xi_t).
class Learner {
 public:
  Learner(LossFamily family, Domain domain) : family_(std::move(family)), domain_(std::move(domain)) {}
  virtual ~Learner() = default;

  virtual std::string name() const = 0;
  virtual Vector play(int t, ExtraSampleSource& extra) = 0;
  virtual void update(int t, const Sample& xi) = 0;
  /// Step size used by the last play: eta_t for single learners, gamma_t for dynMetaGrad.
  virtual double step_size() const = 0;
  /// Point at which the last play's optimism was evaluated with xi_{t-1}; empty at t = 1.
  virtual std::optional<Vector> paired_point() const = 0;

  /// Multiplies the round-t loss by weight(t). Used by the online-to-batch conversion.
  void set_loss_weights(std::function<double(int)> weight) { weight_ = std::move(weight); }

  const LossFamily& family() const { return family_; }
  const Domain& domain() const { return domain_; }

 protected:
  double weight(int t) const { return weight_ ? weight_(t) : 1.0; }
  Vector grad(int t, const Vector& x, const Sample& xi) const { return weight(t) * family_.grad(x, xi); }

  LossFamily family_;
  Domain domain_;

 private:
  std::function<double(int)> weight_;
};

class OftrlLearner final : public Learner {
 public:
  OftrlLearner(LossFamily family, Domain domain);
  std::string name() const override { return "oftrl"; }
  Vector play(int t, ExtraSampleSource& extra) override;
  void update(int t, const Sample& xi) override;
  double step_size() const override { return eta_; }
  std::optional<Vector> paired_point() const override { return paired_; }
  const OftrlState& state() const { return state_; }

 private:
  OftrlState state_;
  Vector x_;
  std::optional<Vector> prev_x_;
  std::optional<Vector> paired_;
  double eta_ = kInfinity;
};

class OmdLearner final : public Learner {
 public:
  OmdLearner(LossFamily family, Domain domain);
  std::string name() const override { return "omd"; }
  Vector play(int t, ExtraSampleSource& extra) override;
  void update(int t, const Sample& xi) override;
  double step_size() const override { return eta_; }
  std::optional<Vector> paired_point() const override { return paired_; }
  const OmdState& state() const { return state_; }

 private:
  OmdState state_;
  std::optional<Sample> prev_xi_;
  std::optional<Vector> paired_;
  double eta_ = kInfinity;
};

class OftlScLearner final : public Learner {
 public:
  OftlScLearner(LossFamily family, Domain domain, double mu);
  std::string name() const override { return "oftl_sc"; }
  Vector play(int t, ExtraSampleSource& extra) override;
  void update(int t, const Sample& xi) override;
  double step_size() const override;
  std::optional<Vector> paired_point() const override { return paired_; }
  const OftlScState& state() const { return state_; }

 private:
  OftlScState state_;
  Vector x_;
  std::optional<Vector> paired_;
};

class MsmwcLearner final : public Learner {
 public:
  struct Record {
    Vector P;
    Vector M;
    Vector L;
    Vector L_hat;
    std::vector<Vector> w;
    Vector W;
    Vector m;
    Vector ell;
    double admissibility = 0.0;
  };

  MsmwcLearner(LossFamily family, Domain domain, int T);
  std::string name() const override { return "msmwc"; }
  Vector play(int t, ExtraSampleSource& extra) override;
  void update(int t, const Sample& xi) override;
  double step_size() const override;
  std::optional<Vector> paired_point() const override { return paired_; }

  void set_recording(bool on) { recording_ = on; }
  const std::vector<Record>& records() const { return records_; }
  const MsmwcGrid& grid() const { return grid_; }
  const MsmwcMeta& meta() const { return meta_; }
  const std::vector<MsmwcWorker>& workers() const { return workers_; }

 private:
  MsmwcGrid grid_;
  MsmwcMeta meta_;
  std::vector<MsmwcWorker> workers_;
  Vector m_;
  Vector W_;
  std::optional<Vector> W_prev_;
  std::optional<Vector> paired_;
  bool recording_ = false;
  std::vector<Record> records_;
};

class DynMetaLearner final : public Learner {
 public:
  struct Record {
    Vector P;
    Vector M;
    Vector L;
    std::vector<Vector> w;
    std::vector<Vector> m_k;
    std::vector<Vector> ell_k;
    Vector W;
    Vector W_hat;
    Vector ell;
    double gamma = 0.0;
    double gap = 0.0;
  };

  DynMetaLearner(LossFamily family, Domain domain, int T);
  std::string name() const override { return "dyn_meta"; }
  Vector play(int t, ExtraSampleSource& extra) override;
  void update(int t, const Sample& xi) override;
  double step_size() const override { return gamma_; }
  std::optional<Vector> paired_point() const override { return paired_; }

  void set_recording(bool on) { recording_ = on; }
  const std::vector<Record>& records() const { return records_; }
  const DynGrid& grid() const { return grid_; }
  const AdaHedgeState& meta() const { return meta_; }

 private:
  DynGrid grid_;
  AdaHedgeState meta_;
  std::vector<DynWorker> workers_;
  std::vector<Vector> m_k_;
  Vector P_prev_;
  Vector P_;
  Vector M_;
  Vector W_;
  Vector W_hat_;
  std::optional<Sample> prev_xi_;
  std::optional<Vector> paired_;
  double gamma_ = kInfinity;
  bool recording_ = false;
  std::vector<Record> records_;
};

std::unique_ptr<Learner> make_learner(const LearnerSpec& spec, const LossFamily& family, const Domain& domain,
                                      int T);

}  // namespace seaoco
