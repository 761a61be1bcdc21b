#include "seaoco/config.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <set>
#include <sstream>

#include <fmt/format.h>
#include <yaml-cpp/yaml.h>

namespace seaoco {
namespace {

constexpr std::array kLearners{"oftrl", "omd", "oftl_sc", "msmwc", "dyn_meta"};
constexpr std::array kEnvironments{"iid",      "adversarial", "adversarial_seq", "corrupted", "corrupted_iid", "rom",
                                   "drifting", "switching",   "rademacher",      "rademacher_lb"};
constexpr std::array kFamilies{"linear", "quadratic_tracking", "quadratic", "log_smooth"};
constexpr std::array kDomains{"ball", "box"};
constexpr std::array kTheorems{"thm1", "thm2", "thm4", "msmwc", "worst_case", "corollary_corrupt", "corollary_rom"};

template <std::size_t N>
bool known(const std::array<const char*, N>& names, const std::string& s) {
  return std::any_of(names.begin(), names.end(), [&](const char* n) { return s == n; });
}

template <std::size_t N>
std::string listing(const std::array<const char*, N>& names) {
  std::string out;
  for (const char* n : names) out += (out.empty() ? "" : ", ") + std::string(n);
  return out;
}

class Reader {
 public:
  explicit Reader(std::string source) : source_(std::move(source)) {}

  [[noreturn]] void fail(const YAML::Node& node, const std::string& field, const std::string& what) const {
    const int line = !node.IsDefined() || node.Mark().is_null() ? 0 : node.Mark().line + 1;
    throw ConfigError(fmt::format("{}:{}: {}: {}", source_, line, field, what), field, line);
  }

  void require_map(const YAML::Node& node, const std::string& field, std::set<std::string> allowed) const {
    if (!node.IsMap()) fail(node, field, "expected a mapping");
    for (const auto& kv : node) {
      const auto key = kv.first.as<std::string>();
      if (!allowed.count(key)) fail(kv.first, field.empty() ? key : field + "." + key, "unknown field");
    }
  }

  template <class T>
  T scalar(const YAML::Node& node, const std::string& field, const char* type) const {
    if (!node.IsScalar()) fail(node, field, fmt::format("expected {}", type));
    try {
      return node.as<T>();
    } catch (const YAML::Exception&) {
      fail(node, field, fmt::format("expected {}", type));
    }
  }

  double number(const YAML::Node& n, const std::string& f) const { return scalar<double>(n, f, "a number"); }
  int integer(const YAML::Node& n, const std::string& f) const { return scalar<int>(n, f, "an integer"); }
  std::string text(const YAML::Node& n, const std::string& f) const { return scalar<std::string>(n, f, "a string"); }
  std::uint64_t u64(const YAML::Node& n, const std::string& f) const {
    return scalar<std::uint64_t>(n, f, "an unsigned integer");
  }

  Vector vec(const YAML::Node& node, const std::string& field) const {
    if (!node.IsSequence()) fail(node, field, "expected a list of numbers");
    Vector v(static_cast<Eigen::Index>(node.size()));
    for (std::size_t i = 0; i < node.size(); ++i) {
      v[static_cast<Eigen::Index>(i)] = number(node[i], fmt::format("{}[{}]", field, i));
    }
    return v;
  }

  std::vector<Vector> vecs(const YAML::Node& node, const std::string& field) const {
    if (!node.IsSequence()) fail(node, field, "expected a list of vectors");
    std::vector<Vector> out;
    for (std::size_t i = 0; i < node.size(); ++i) out.push_back(vec(node[i], fmt::format("{}[{}]", field, i)));
    return out;
  }

  template <std::size_t N>
  std::string choice(const YAML::Node& node, const std::string& field, const std::array<const char*, N>& names) const {
    std::string s = text(node, field);
    if (!known(names, s)) fail(node, field, fmt::format("unknown value '{}' (expected one of {})", s, listing(names)));
    return s;
  }

 private:
  std::string source_;
};

LearnerSpec read_learner(const Reader& r, const YAML::Node& n) {
  r.require_map(n, "learner", {"kind", "mu"});
  LearnerSpec s;
  if (!n["kind"]) r.fail(n, "learner.kind", "missing");
  s.kind = r.choice(n["kind"], "learner.kind", kLearners);
  if (n["mu"]) s.mu = r.number(n["mu"], "learner.mu");
  if (s.mu < 0.0) r.fail(n["mu"], "learner.mu", "must be >= 0");
  return s;
}

FamilySpec read_family(const Reader& r, const YAML::Node& n) {
  r.require_map(n, "family", {"kind", "scale"});
  FamilySpec s;
  if (n["kind"]) s.kind = r.choice(n["kind"], "family.kind", kFamilies);
  if (n["scale"]) s.scale = r.number(n["scale"], "family.scale");
  if (!(s.scale > 0.0)) r.fail(n["scale"], "family.scale", "must be > 0");
  return s;
}

DomainSpec read_domain(const Reader& r, const YAML::Node& n) {
  r.require_map(n, "domain", {"kind", "center", "radius", "lo", "hi"});
  DomainSpec s;
  if (n["kind"]) s.kind = r.choice(n["kind"], "domain.kind", kDomains);
  if (n["center"]) s.center = r.vec(n["center"], "domain.center");
  if (n["radius"]) s.radius = r.number(n["radius"], "domain.radius");
  if (n["lo"]) s.lo = r.vec(n["lo"], "domain.lo");
  if (n["hi"]) s.hi = r.vec(n["hi"], "domain.hi");
  if (s.kind == "box" && (s.lo.size() == 0 || s.lo.size() != s.hi.size())) {
    r.fail(n, "domain", "a box needs lo and hi of equal nonzero length");
  }
  if (s.kind == "ball" && !(s.radius > 0.0)) r.fail(n["radius"], "domain.radius", "must be > 0");
  return s;
}

EnvSpec read_env(const Reader& r, const YAML::Node& n) {
  r.require_map(n, "environment",
                {"kind", "mean", "sigma", "law", "pool_size", "pool_seed", "pattern", "amplitude", "offset", "points",
                 "budget", "rate", "direction", "n", "passes", "eps", "eps_power", "drift_radius", "switches", "means",
                 "G"});
  EnvSpec s;
  if (!n["kind"]) r.fail(n, "environment.kind", "missing");
  s.kind = r.choice(n["kind"], "environment.kind", kEnvironments);
  if (n["mean"]) s.mean = r.vec(n["mean"], "environment.mean");
  if (n["sigma"]) s.sigma = r.number(n["sigma"], "environment.sigma");
  if (s.sigma < 0.0) r.fail(n["sigma"], "environment.sigma", "must be >= 0");
  if (n["law"]) {
    s.law = r.text(n["law"], "environment.law");
    if (s.law != "gaussian" && s.law != "pool") r.fail(n["law"], "environment.law", "expected gaussian or pool");
  }
  if (n["pool_size"]) s.pool_size = r.integer(n["pool_size"], "environment.pool_size");
  if (n["pool_seed"]) s.pool_seed = r.u64(n["pool_seed"], "environment.pool_seed");
  if (n["pattern"]) s.pattern = r.text(n["pattern"], "environment.pattern");
  if (n["amplitude"]) s.amplitude = r.number(n["amplitude"], "environment.amplitude");
  if (n["offset"]) s.offset = r.vec(n["offset"], "environment.offset");
  if (n["points"]) s.points = r.vecs(n["points"], "environment.points");
  if (n["budget"]) s.budget = r.number(n["budget"], "environment.budget");
  if (n["rate"]) s.rate = r.number(n["rate"], "environment.rate");
  if (n["direction"]) s.direction = r.vec(n["direction"], "environment.direction");
  if (n["n"]) s.n = r.integer(n["n"], "environment.n");
  if (n["passes"]) s.passes = r.integer(n["passes"], "environment.passes");
  if (n["eps"]) s.eps = r.number(n["eps"], "environment.eps");
  if (n["eps_power"]) s.eps_power = r.number(n["eps_power"], "environment.eps_power");
  if (n["drift_radius"]) s.drift_radius = r.number(n["drift_radius"], "environment.drift_radius");
  if (n["switches"]) s.switches = r.integer(n["switches"], "environment.switches");
  if (n["means"]) s.means = r.vecs(n["means"], "environment.means");
  if (n["G"]) s.G = r.number(n["G"], "environment.G");
  return s;
}

void emit_vec(YAML::Emitter& e, const Vector& v) {
  e << YAML::Flow << YAML::BeginSeq;
  for (Eigen::Index i = 0; i < v.size(); ++i) e << v[i];
  e << YAML::EndSeq;
}

void emit_vecs(YAML::Emitter& e, const std::vector<Vector>& vs) {
  e << YAML::Flow << YAML::BeginSeq;
  for (const auto& v : vs) emit_vec(e, v);
  e << YAML::EndSeq;
}

bool same(const Vector& a, const Vector& b) { return a.size() == b.size() && (a.size() == 0 || a == b); }

bool same(const std::vector<Vector>& a, const std::vector<Vector>& b) {
  return std::equal(a.begin(), a.end(), b.begin(), b.end(), [](const Vector& x, const Vector& y) { return same(x, y); });
}

bool same(const EnvSpec& a, const EnvSpec& b) {
  return a.kind == b.kind && same(a.mean, b.mean) && a.sigma == b.sigma && a.law == b.law &&
         a.pool_size == b.pool_size && a.pool_seed == b.pool_seed && a.pattern == b.pattern &&
         a.amplitude == b.amplitude && same(a.offset, b.offset) && same(a.points, b.points) && a.budget == b.budget &&
         a.rate == b.rate && same(a.direction, b.direction) && a.n == b.n && a.passes == b.passes && a.eps == b.eps &&
         a.eps_power == b.eps_power && a.drift_radius == b.drift_radius && a.switches == b.switches &&
         same(a.means, b.means) && a.G == b.G;
}

}  // namespace

Config parse_config(const std::string& text, const std::string& source) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    throw ConfigError(fmt::format("{}:{}: syntax error: {}", source, e.mark.line + 1, e.msg), "", e.mark.line + 1);
  }
  const Reader r(source);
  r.require_map(root, "", {"experiment", "learner", "family", "domain", "environment", "T", "seeds", "seed", "out",
                           "theorem", "threads"});
  Config c;
  if (root["experiment"]) c.experiment = r.text(root["experiment"], "experiment");
  if (c.experiment.empty() || c.experiment.find('/') != std::string::npos) {
    r.fail(root["experiment"], "experiment", "must be a nonempty name without '/'");
  }
  if (!root["learner"]) r.fail(root, "learner", "missing");
  c.episode.learner = read_learner(r, root["learner"]);
  if (root["family"]) c.episode.family = read_family(r, root["family"]);
  if (root["domain"]) c.episode.domain = read_domain(r, root["domain"]);
  if (!root["environment"]) r.fail(root, "environment", "missing");
  c.episode.env = read_env(r, root["environment"]);
  if (const auto T = root["T"]) {
    c.horizons.clear();
    if (T.IsSequence()) {
      for (std::size_t i = 0; i < T.size(); ++i) c.horizons.push_back(r.integer(T[i], fmt::format("T[{}]", i)));
    } else {
      c.horizons.push_back(r.integer(T, "T"));
    }
    if (c.horizons.empty()) r.fail(T, "T", "needs at least one horizon");
    for (int h : c.horizons) {
      if (h < 1) r.fail(T, "T", "horizons must be >= 1");
    }
  }
  if (root["seeds"]) c.seeds = r.integer(root["seeds"], "seeds");
  if (c.seeds < 1) r.fail(root["seeds"], "seeds", "must be >= 1");
  if (root["seed"]) c.seed = r.u64(root["seed"], "seed");
  if (root["out"]) c.out_dir = r.text(root["out"], "out");
  if (root["theorem"]) c.theorem = r.choice(root["theorem"], "theorem", kTheorems);
  if (root["threads"]) c.threads = r.integer(root["threads"], "threads");
  if (c.threads < 1) r.fail(root["threads"], "threads", "must be >= 1");
  return c;
}

Config load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(fmt::format("{}: cannot open config file", path), "", 0);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path);
}

std::string serialize_config(const Config& c) {
  YAML::Emitter e;
  e.SetDoublePrecision(17);
  e << YAML::BeginMap;
  e << YAML::Key << "experiment" << YAML::Value << c.experiment;
  e << YAML::Key << "learner" << YAML::Value << YAML::BeginMap;
  e << YAML::Key << "kind" << YAML::Value << c.episode.learner.kind;
  e << YAML::Key << "mu" << YAML::Value << c.episode.learner.mu;
  e << YAML::EndMap;
  e << YAML::Key << "family" << YAML::Value << YAML::BeginMap;
  e << YAML::Key << "kind" << YAML::Value << c.episode.family.kind;
  e << YAML::Key << "scale" << YAML::Value << c.episode.family.scale;
  e << YAML::EndMap;
  const DomainSpec& d = c.episode.domain;
  e << YAML::Key << "domain" << YAML::Value << YAML::BeginMap;
  e << YAML::Key << "kind" << YAML::Value << d.kind;
  if (d.center.size()) {
    e << YAML::Key << "center" << YAML::Value;
    emit_vec(e, d.center);
  }
  e << YAML::Key << "radius" << YAML::Value << d.radius;
  if (d.lo.size()) {
    e << YAML::Key << "lo" << YAML::Value;
    emit_vec(e, d.lo);
  }
  if (d.hi.size()) {
    e << YAML::Key << "hi" << YAML::Value;
    emit_vec(e, d.hi);
  }
  e << YAML::EndMap;
  const EnvSpec& v = c.episode.env;
  e << YAML::Key << "environment" << YAML::Value << YAML::BeginMap;
  e << YAML::Key << "kind" << YAML::Value << v.kind;
  if (v.mean.size()) {
    e << YAML::Key << "mean" << YAML::Value;
    emit_vec(e, v.mean);
  }
  e << YAML::Key << "sigma" << YAML::Value << v.sigma;
  e << YAML::Key << "law" << YAML::Value << v.law;
  e << YAML::Key << "pool_size" << YAML::Value << v.pool_size;
  e << YAML::Key << "pool_seed" << YAML::Value << v.pool_seed;
  e << YAML::Key << "pattern" << YAML::Value << v.pattern;
  e << YAML::Key << "amplitude" << YAML::Value << v.amplitude;
  if (v.offset.size()) {
    e << YAML::Key << "offset" << YAML::Value;
    emit_vec(e, v.offset);
  }
  if (!v.points.empty()) {
    e << YAML::Key << "points" << YAML::Value;
    emit_vecs(e, v.points);
  }
  e << YAML::Key << "budget" << YAML::Value << v.budget;
  e << YAML::Key << "rate" << YAML::Value << v.rate;
  if (v.direction.size()) {
    e << YAML::Key << "direction" << YAML::Value;
    emit_vec(e, v.direction);
  }
  e << YAML::Key << "n" << YAML::Value << v.n;
  e << YAML::Key << "passes" << YAML::Value << v.passes;
  if (v.eps) e << YAML::Key << "eps" << YAML::Value << *v.eps;
  e << YAML::Key << "eps_power" << YAML::Value << v.eps_power;
  e << YAML::Key << "drift_radius" << YAML::Value << v.drift_radius;
  e << YAML::Key << "switches" << YAML::Value << v.switches;
  if (!v.means.empty()) {
    e << YAML::Key << "means" << YAML::Value;
    emit_vecs(e, v.means);
  }
  e << YAML::Key << "G" << YAML::Value << v.G;
  e << YAML::EndMap;
  e << YAML::Key << "T" << YAML::Value << YAML::Flow << c.horizons;
  e << YAML::Key << "seeds" << YAML::Value << c.seeds;
  e << YAML::Key << "seed" << YAML::Value << c.seed;
  e << YAML::Key << "out" << YAML::Value << c.out_dir;
  if (c.theorem) e << YAML::Key << "theorem" << YAML::Value << *c.theorem;
  e << YAML::Key << "threads" << YAML::Value << c.threads;
  e << YAML::EndMap;
  return std::string(e.c_str()) + "\n";
}

bool operator==(const Config& a, const Config& b) {
  const auto& da = a.episode.domain;
  const auto& db = b.episode.domain;
  return a.experiment == b.experiment && a.episode.learner.kind == b.episode.learner.kind &&
         a.episode.learner.mu == b.episode.learner.mu && a.episode.family.kind == b.episode.family.kind &&
         a.episode.family.scale == b.episode.family.scale && da.kind == db.kind && same(da.center, db.center) &&
         da.radius == db.radius && same(da.lo, db.lo) && same(da.hi, db.hi) && same(a.episode.env, b.episode.env) &&
         a.horizons == b.horizons && a.seeds == b.seeds && a.seed == b.seed && a.out_dir == b.out_dir &&
         a.theorem == b.theorem && a.threads == b.threads;
}

}  // namespace seaoco
