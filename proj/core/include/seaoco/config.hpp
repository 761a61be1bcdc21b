#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "seaoco/errors.hpp"
#include "seaoco/harness.hpp"

namespace seaoco {

/// Invalid configuration. `line` is 1-based, 0 when unknown.
class ConfigError : public Error {
 public:
  ConfigError(const std::string& message, std::string field, int line)
      : Error(message), field_(std::move(field)), line_(line) {}
  const std::string& field() const { return field_; }
  int line() const { return line_; }

 private:
  std::string field_;
  int line_;
};

/// One experiment: an episode spec swept over horizons and seeds.
struct Config {
  std::string experiment = "experiment";
  EpisodeSpec episode;
  std::vector<int> horizons{100};
  int seeds = 1;
  std::uint64_t seed = 0;
  std::string out_dir = "out";
  /// Bound to check in the report, if any.
  std::optional<std::string> theorem;
  int threads = 1;
};

Config parse_config(const std::string& text, const std::string& source = "<config>");
Config load_config(const std::string& path);
std::string serialize_config(const Config& config);

bool operator==(const Config& a, const Config& b);

}  // namespace seaoco
