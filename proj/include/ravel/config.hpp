#pragma once

#include "ravel/search.hpp"
#include "ravel/sim.hpp"

namespace ravel {

// Flat "section.key = value" text config; '#' starts a comment. Every key
// has a default, printed by `ravel config --print-defaults`.
struct AppConfig {
  TrackerConfig tracker;
  SceneConfig scene;
  std::string scene_preset = "none";  // none|crossing|exit_reenter|stop_and_turn
};

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

AppConfig parse_config_file(const std::string& path);

// Applies one "key=value" pair; throws ConfigError on unknown keys or
// out-of-range values.
void apply_config_entry(AppConfig& cfg, const std::string& key,
                        const std::string& value);

// Canonical dump of the effective config, used for digests and
// --print-defaults.
std::string dump_config(const AppConfig& cfg);

// FNV-1a 64 over the canonical dump, hex encoded.
std::string config_digest(const AppConfig& cfg);

// Resolves the scene preset (if any) into a concrete SceneConfig.
SceneConfig resolve_scene(const AppConfig& cfg);

}  // namespace ravel
