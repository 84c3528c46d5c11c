#pragma once

#include <map>
#include <optional>
#include <string>

#include "nhwm/errors.hpp"
#include "nhwm/scenarios.hpp"

namespace nhwm {

// Sectioned key-value configuration: `[section]`, `key = value`, `#` comments.
// Unknown sections or keys are rejected with the offending line number; all
// physical quantities carry explicit units in their key names.
class Config {
 public:
  static Config parse_file(const std::string& path);
  static Config parse_string(const std::string& text,
                             const std::string& origin = "<string>");

  bool has(const std::string& section, const std::string& key) const;
  std::string get_string(const std::string& section, const std::string& key,
                         const std::string& fallback) const;
  double get_double(const std::string& section, const std::string& key,
                    double fallback) const;
  int get_int(const std::string& section, const std::string& key,
              int fallback) const;
  bool get_bool(const std::string& section, const std::string& key,
                bool fallback) const;
  // "auto" or a number; nullopt means auto/absent
  std::optional<double> get_auto_double(const std::string& section,
                                        const std::string& key) const;

  const std::string& text() const { return text_; }
  const std::string& origin() const { return origin_; }

 private:
  struct Entry {
    std::string value;
    int line = 0;
  };
  std::map<std::string, std::map<std::string, Entry>> sections_;
  std::string text_;
  std::string origin_;

  const Entry* find(const std::string& section, const std::string& key) const;
};

// Everything a `run` needs, materialized from a Config with defaults.
struct RunSettings {
  ScenarioConfig scenario;
  double dt = 1e-3;               // ms
  double t_end = 14.0;            // ms
  double observer_stride = 0.1;   // ms
  double snapshot_stride = 0.0;   // ms; 0 disables snapshots
  bool dealias = false;
};

RunSettings run_settings_from_config(const Config& cfg);

// Fully-resolved `run` configuration as config text (every default made
// explicit, 17 significant digits); parsing it back yields identical
// settings.
std::string resolved_run_config(const RunSettings& settings);

// Three-mode subcommand settings ([three-mode] section).
struct ThreeModeSettings {
  ThreeModeParams params;
  double seed_signal = 1.0;  // initial |phi_s|
  double seed_idler = 0.0;
  double dt = 1e-4;
  double t_end = 50.0;
  int record_stride = 10;
};
ThreeModeSettings three_mode_settings_from_config(const Config& cfg);
std::string resolved_three_mode_config(const ThreeModeSettings& s);

// Gain-map subcommand settings ([gain-map] section).
struct GainMapSettings {
  double u_d_n0 = 1.0;       // hbar/ms
  double gamma_min = 0.5;    // 1/ms
  double gamma_max = 16.0;
  int gamma_count = 32;
  double delta_e_min = 1.0;  // hbar/ms
  double delta_e_max = 16.0;
  int delta_e_count = 16;
};
GainMapSettings gain_map_settings_from_config(const Config& cfg);
std::string resolved_gain_map_config(const GainMapSettings& s);

// Loss-spectrum subcommand settings ([eit] + [spectrum] sections).
struct SpectrumSettings {
  LambdaParams lambda;
  double mass = 0.0;     // internal units; resolved from [physics]
  double k_min = -16.0;  // um^-1
  double k_max = 16.0;
  int base_samples = 512;
};
SpectrumSettings spectrum_settings_from_config(const Config& cfg);
std::string resolved_spectrum_config(const SpectrumSettings& s);

// formats a double with 17 significant digits (round-trip exact)
std::string format_g17(double v);

// Returns config text with `section.key` replaced (or appended); the result
// is validated against the schema.  Used by the sweep driver.
std::string override_config_text(const std::string& base_text,
                                 const std::string& axis,
                                 const std::string& value);

}  // namespace nhwm
