#include "seaoco/learners.hpp"

#include <fmt/format.h>

#include "seaoco/errors.hpp"

namespace seaoco {

// OFTRL ---------------------------------------------------------------------

OftrlLearner::OftrlLearner(LossFamily family, Domain domain)
    : Learner(std::move(family), std::move(domain)), state_(oftrl_init(domain_)) {}

Vector OftrlLearner::play(int, ExtraSampleSource&) {
  eta_ = state_.step.eta();
  x_ = oftrl_step(state_, domain_);
  paired_ = prev_x_;
  return x_;
}

void OftrlLearner::update(int t, const Sample& xi) {
  state_ = oftrl_observe(std::move(state_), grad(t, x_, xi));
  prev_x_ = x_;
}

// OMD -----------------------------------------------------------------------

OmdLearner::OmdLearner(LossFamily family, Domain domain)
    : Learner(std::move(family), std::move(domain)), state_(omd_init(domain_)) {}

Vector OmdLearner::play(int t, ExtraSampleSource&) {
  eta_ = state_.step.eta();
  Vector m = Vector::Zero(domain_.dimension());
  paired_.reset();
  if (prev_xi_) {
    m = grad(t - 1, state_.y, *prev_xi_);
    paired_ = state_.y;
  }
  state_ = omd_step(std::move(state_), domain_, m);
  return state_.x;
}

void OmdLearner::update(int t, const Sample& xi) {
  state_ = omd_observe(std::move(state_), domain_, grad(t, state_.x, xi));
  prev_xi_ = xi;
}

// OFTL on strongly convex surrogates -----------------------------------------

OftlScLearner::OftlScLearner(LossFamily family, Domain domain, double mu)
    : Learner(std::move(family), std::move(domain)), state_(oftl_sc_init(domain_, mu)) {}

Vector OftlScLearner::play(int t, ExtraSampleSource&) {
  x_ = oftl_sc_step(state_, domain_);
  paired_.reset();
  if (t > 1) paired_ = state_.x_prev;
  return x_;
}

void OftlScLearner::update(int t, const Sample& xi) { state_ = oftl_sc_observe(std::move(state_), x_, grad(t, x_, xi)); }

double OftlScLearner::step_size() const {
  return state_.t <= 1 ? kInfinity : 1.0 / (state_.mu * (state_.t - 1));
}

// MsMwC ---------------------------------------------------------------------

MsmwcLearner::MsmwcLearner(LossFamily family, Domain domain, int T)
    : Learner(std::move(family), std::move(domain)),
      grid_(MsmwcGrid::make(domain_.diameter(), family_.G(), T)),
      meta_(msmwc_meta_init(grid_)) {
  for (double eta : grid_.etas) workers_.push_back(msmwc_worker_init(eta, family_.G(), domain_));
}

Vector MsmwcLearner::play(int t, ExtraSampleSource& extra) {
  m_ = Vector::Zero(domain_.dimension());
  paired_.reset();
  if (t > 1 && W_prev_) {
    m_ = grad(t - 1, *W_prev_, extra.extra_sample(t));
    paired_ = W_prev_;
  }
  for (auto& w : workers_) msmwc_worker_play(w, domain_, m_);
  W_ = msmwc_meta_play(meta_, workers_, m_);
  // Rounding can leave a convex combination a hair outside a ball.
  W_ = project(domain_, W_);
  return W_;
}

void MsmwcLearner::update(int t, const Sample& xi) {
  const Vector ell = grad(t, W_, xi);
  Record rec;
  if (recording_) {
    rec.P = meta_.P;
    rec.M = meta_.M;
    for (const auto& w : workers_) rec.w.push_back(w.w);
    rec.W = W_;
    rec.m = m_;
    rec.ell = ell;
  }
  const MsmwcRoundInfo info = msmwc_meta_update(meta_, workers_, ell);
  for (auto& w : workers_) msmwc_worker_update(w, domain_, m_, ell, W_);
  if (recording_) {
    rec.L = info.L;
    rec.L_hat = info.L_hat;
    rec.admissibility = info.admissibility;
    records_.push_back(std::move(rec));
  }
  W_prev_ = W_;
}

double MsmwcLearner::step_size() const {
  double s = 0.0;
  for (std::size_t k = 0; k < workers_.size(); ++k) s += meta_.P[static_cast<Eigen::Index>(k)] / workers_[k].A;
  return s;
}

// dynMetaGrad ----------------------------------------------------------------

DynMetaLearner::DynMetaLearner(LossFamily family, Domain domain, int T)
    : Learner(std::move(family), std::move(domain)),
      grid_(DynGrid::make(domain_.diameter(), family_.L(), T)),
      meta_(adahedge_init(grid_.K)) {
  for (double eta : grid_.etas) workers_.push_back(dyn_worker_init(eta, domain_));
  P_prev_ = Vector::Constant(grid_.K, 1.0 / grid_.K);
  m_k_.assign(workers_.size(), Vector::Zero(domain_.dimension()));
}

Vector DynMetaLearner::play(int t, ExtraSampleSource&) {
  const int d = domain_.dimension();
  for (std::size_t k = 0; k < workers_.size(); ++k) {
    m_k_[k] = prev_xi_ ? grad(t - 1, workers_[k].w_hat, *prev_xi_) : Vector(Vector::Zero(d));
    dyn_worker_play(workers_[k], domain_, m_k_[k]);
  }
  W_hat_ = Vector::Zero(d);
  for (std::size_t k = 0; k < workers_.size(); ++k) W_hat_ += P_prev_[static_cast<Eigen::Index>(k)] * workers_[k].w;
  W_hat_ = project(domain_, W_hat_);
  M_ = Vector::Zero(grid_.K);
  paired_.reset();
  if (prev_xi_) {
    const Vector ell_hat = grad(t - 1, W_hat_, *prev_xi_);
    for (std::size_t k = 0; k < workers_.size(); ++k) M_[static_cast<Eigen::Index>(k)] = ell_hat.dot(workers_[k].w);
    paired_ = W_hat_;
  }
  gamma_ = meta_.gamma();
  P_ = dyn_meta_weights(meta_, M_);
  W_ = Vector::Zero(d);
  for (std::size_t k = 0; k < workers_.size(); ++k) W_ += P_[static_cast<Eigen::Index>(k)] * workers_[k].w;
  W_ = project(domain_, W_);
  return W_;
}

void DynMetaLearner::update(int t, const Sample& xi) {
  const Vector ell = grad(t, W_, xi);
  Vector L(grid_.K);
  for (std::size_t k = 0; k < workers_.size(); ++k) L[static_cast<Eigen::Index>(k)] = ell.dot(workers_[k].w);
  Record rec;
  if (recording_) {
    rec.P = P_;
    rec.M = M_;
    rec.L = L;
    for (const auto& w : workers_) rec.w.push_back(w.w);
    rec.m_k = m_k_;
    rec.W = W_;
    rec.W_hat = W_hat_;
    rec.ell = ell;
    rec.gamma = gamma_;
  }
  const double gap = adahedge_observe(meta_, P_, L, M_);
  for (auto& w : workers_) {
    const Vector ell_k = grad(t, w.w, xi);
    if (recording_) rec.ell_k.push_back(ell_k);
    dyn_worker_update(w, domain_, ell_k);
  }
  if (recording_) {
    rec.gap = gap;
    records_.push_back(std::move(rec));
  }
  P_prev_ = P_;
  prev_xi_ = xi;
}

// ---------------------------------------------------------------------------

std::unique_ptr<Learner> make_learner(const LearnerSpec& spec, const LossFamily& family, const Domain& domain, int T) {
  if (spec.kind == "oftrl") return std::make_unique<OftrlLearner>(family, domain);
  if (spec.kind == "omd") return std::make_unique<OmdLearner>(family, domain);
  if (spec.kind == "oftl_sc") {
    const double mu = spec.mu > 0.0 ? spec.mu : family.mu();
    return std::make_unique<OftlScLearner>(family, domain, mu);
  }
  if (spec.kind == "msmwc") return std::make_unique<MsmwcLearner>(family, domain, T);
  if (spec.kind == "dyn_meta") return std::make_unique<DynMetaLearner>(family, domain, T);
  throw InvalidArgument(fmt::format("unknown learner '{}'", spec.kind));
}

}  // namespace seaoco
