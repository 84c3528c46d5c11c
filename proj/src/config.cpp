#include "nhwm/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace nhwm {

namespace {

// schema: every key the artifact understands, by section
const std::map<std::string, std::set<std::string>>& schema() {
  static const std::map<std::string, std::set<std::string>> s = {
      {"physics", {"mass_kg", "a_s_m", "omega_perp_hz"}},
      {"scenario",
       {"variant", "n", "n_y", "domain_um", "domain_y_um", "atom_number",
        "box_length_um", "wall_width_um", "wall_height", "k_pump_per_um",
        "t_collision_ms", "cloud_sigma_um", "speed_pump_um_ms",
        "speed_signal_um_ms", "band_halfwidth_per_um"}},
      {"signal", {"k_s_per_um", "sigma_um2", "x0_um", "fraction"}},
      {"solver",
       {"dt_ms", "t_end_ms", "observer_stride_ms", "snapshot_stride_ms",
        "dealias"}},
      {"loss", {"model", "t_on_ms"}},
      {"loss-gaussian",
       {"gamma_a_per_ms", "k_loss_per_um", "sigma_loss_per_um"}},
      {"loss-table", {"file"}},
      {"eit",
       {"omega_p", "omega_c", "delta0", "gamma_decay", "q_um_inv",
        "theta_p_deg", "theta_c_deg", "delta_e_scale"}},
      {"three-mode",
       {"u_d", "n0", "delta_e", "gamma", "convention", "seed_signal",
        "seed_idler", "dt_ms", "t_end_ms", "record_stride"}},
      {"gain-map",
       {"u_d_n0", "gamma_min", "gamma_max", "gamma_count", "delta_e_min",
        "delta_e_max", "delta_e_count"}},
      {"spectrum", {"k_min_per_um", "k_max_per_um", "base_samples"}},
      {"manifest",
       {"version", "input_hash", "command", "output_dir", "outputs"}},
  };
  return s;
}

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  std::size_t b = s.find_last_not_of(" \t\r");
  if (a == std::string::npos) return {};
  return s.substr(a, b - a + 1);
}

}  // namespace

Config Config::parse_string(const std::string& text,
                            const std::string& origin) {
  Config cfg;
  cfg.text_ = text;
  cfg.origin_ = origin;

  std::istringstream in(text);
  std::string raw;
  std::string section;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = raw;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError(origin + ": malformed section header", line_no);
      section = trim(line.substr(1, line.size() - 2));
      if (!schema().count(section))
        throw ConfigError(origin + ": unknown section [" + section + "]",
                          line_no);
      cfg.sections_[section];  // empty section is meaningful (e.g. [loss])
      continue;
    }

    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(origin + ": expected `key = value`, got `" + line + "`",
                        line_no);
    if (section.empty())
      throw ConfigError(origin + ": key outside any section", line_no);
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      throw ConfigError(origin + ": empty key", line_no);
    if (!schema().at(section).count(key))
      throw ConfigError(
          origin + ": unknown key `" + key + "` in section [" + section + "]",
          line_no);
    if (cfg.sections_[section].count(key))
      throw ConfigError(origin + ": duplicate key `" + key + "`", line_no);
    cfg.sections_[section][key] = Entry{value, line_no};
  }
  return cfg;
}

Config Config::parse_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_string(ss.str(), path);
}

const Config::Entry* Config::find(const std::string& section,
                                  const std::string& key) const {
  const auto sit = sections_.find(section);
  if (sit == sections_.end()) return nullptr;
  const auto kit = sit->second.find(key);
  if (kit == sit->second.end()) return nullptr;
  return &kit->second;
}

bool Config::has(const std::string& section, const std::string& key) const {
  return find(section, key) != nullptr;
}

std::string Config::get_string(const std::string& section,
                               const std::string& key,
                               const std::string& fallback) const {
  const Entry* e = find(section, key);
  return e ? e->value : fallback;
}

double Config::get_double(const std::string& section, const std::string& key,
                          double fallback) const {
  const Entry* e = find(section, key);
  if (!e) return fallback;
  try {
    std::size_t pos = 0;
    const double v = std::stod(e->value, &pos);
    if (pos != e->value.size()) throw std::invalid_argument("trailing junk");
    return v;
  } catch (const std::exception&) {
    throw ConfigError(origin_ + ": key `" + key + "` is not a number: `" +
                          e->value + "`",
                      e->line);
  }
}

int Config::get_int(const std::string& section, const std::string& key,
                    int fallback) const {
  const double v = get_double(section, key, static_cast<double>(fallback));
  const int i = static_cast<int>(std::lround(v));
  if (std::abs(v - i) > 0.0) {
    const Entry* e = find(section, key);
    throw ConfigError(origin_ + ": key `" + key + "` must be an integer",
                      e ? e->line : 0);
  }
  return i;
}

bool Config::get_bool(const std::string& section, const std::string& key,
                      bool fallback) const {
  const Entry* e = find(section, key);
  if (!e) return fallback;
  std::string v = e->value;
  std::transform(v.begin(), v.end(), v.begin(), ::tolower);
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError(origin_ + ": key `" + key + "` is not a boolean", e->line);
}

std::optional<double> Config::get_auto_double(const std::string& section,
                                              const std::string& key) const {
  const Entry* e = find(section, key);
  if (!e) return std::nullopt;
  std::string v = e->value;
  std::transform(v.begin(), v.end(), v.begin(), ::tolower);
  if (v == "auto") return std::nullopt;
  return get_double(section, key, 0.0);
}

std::string format_g17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string override_config_text(const std::string& base_text,
                                 const std::string& axis,
                                 const std::string& value) {
  const std::size_t dot = axis.find('.');
  if (dot == std::string::npos)
    throw ConfigError("sweep axis must be `section.key`, got `" + axis + "`");
  const std::string section = axis.substr(0, dot);
  const std::string key = axis.substr(dot + 1);
  Config::parse_string(base_text);  // the base must be valid

  std::string out;
  bool in_section = false, replaced = false;
  std::istringstream in(base_text);
  std::string line;
  while (std::getline(in, line)) {
    std::string stripped = line.substr(0, line.find('#'));
    const auto first = stripped.find_first_not_of(" \t\r");
    if (first != std::string::npos && stripped[first] == '[') {
      const auto close = stripped.find(']');
      const std::string name =
          trim(stripped.substr(first + 1, close - first - 1));
      in_section = (name == section);
    } else if (in_section && !replaced) {
      const auto eq = stripped.find('=');
      if (eq != std::string::npos && trim(stripped.substr(0, eq)) == key) {
        out += key + " = " + value + "\n";
        replaced = true;
        continue;
      }
    }
    out += line + "\n";
  }
  if (!replaced)
    out += "\n[" + section + "]\n" + key + " = " + value + "\n";
  Config::parse_string(out);  // reject bad section/key/duplicates
  return out;
}

RunSettings run_settings_from_config(const Config& cfg) {
  RunSettings rs;
  ScenarioConfig& sc = rs.scenario;

  const std::string variant = cfg.get_string("scenario", "variant", "box1d");
  if (variant == "box1d")
    sc.variant = ScenarioVariant::BoxAmplification1D;
  else if (variant == "homogeneous1d")
    sc.variant = ScenarioVariant::Homogeneous1D;
  else if (variant == "collision2d")
    sc.variant = ScenarioVariant::Collision2D;
  else
    throw ConfigError("unknown scenario variant `" + variant + "`");

  sc.mass_kg = cfg.get_double("physics", "mass_kg", kRb87MassKg);
  sc.a_s_m = cfg.get_double("physics", "a_s_m", kRb87ScatteringLengthM);
  sc.omega_perp_hz = cfg.get_double(
      "physics", "omega_perp_hz",
      sc.variant == ScenarioVariant::Collision2D ? 200.0 : 100.0);

  const bool is2d = sc.variant == ScenarioVariant::Collision2D;
  sc.n = cfg.get_int("scenario", "n", is2d ? 256 : 4096);
  sc.n_y = cfg.get_int("scenario", "n_y", 256);
  sc.domain = cfg.get_double("scenario", "domain_um",
                             is2d ? 160.0
                             : sc.variant == ScenarioVariant::Homogeneous1D
                                 ? 100.0
                                 : 800.0);
  sc.domain_y = cfg.get_double("scenario", "domain_y_um", 160.0);
  sc.atom_number = cfg.get_double(
      "scenario", "atom_number",
      sc.variant == ScenarioVariant::Collision2D ? 1.2e4
      : sc.variant == ScenarioVariant::Homogeneous1D ? 1.0e4
                                                     : 6.4e4);
  sc.box_length = cfg.get_double("scenario", "box_length_um", 640.0);
  sc.wall_width = cfg.get_double("scenario", "wall_width_um", 2.0);
  sc.wall_height = cfg.get_double("scenario", "wall_height", 50.0);
  sc.k_pump = cfg.get_double("scenario", "k_pump_per_um", 0.0);
  sc.collision_time = cfg.get_double("scenario", "t_collision_ms", 60.0);
  sc.cloud_sigma = cfg.get_double("scenario", "cloud_sigma_um", 15.0);
  sc.speed_pump = cfg.get_double("scenario", "speed_pump_um_ms", 0.4);
  sc.speed_signal = cfg.get_double("scenario", "speed_signal_um_ms", 0.66);
  sc.band_half_width =
      cfg.get_double("scenario", "band_halfwidth_per_um", is2d ? 0.35 : 1.0);

  sc.k_signal = cfg.get_double("signal", "k_s_per_um", 2.7);
  sc.signal_sigma = cfg.get_double("signal", "sigma_um2", 400.0);
  sc.signal_x0 = cfg.get_double("signal", "x0_um", -150.0);
  sc.signal_fraction = cfg.get_double("signal", "fraction", 5e-3);

  const std::string loss_model = cfg.get_string("loss", "model", "none");
  if (loss_model == "none")
    sc.loss = LossSelection::None;
  else if (loss_model == "gaussian")
    sc.loss = LossSelection::Gaussian;
  else if (loss_model == "eit")
    sc.loss = LossSelection::Eit;
  else if (loss_model == "tabulated")
    sc.loss = LossSelection::Tabulated;
  else
    throw ConfigError("unknown loss model `" + loss_model + "`");
  sc.loss_t_on = cfg.get_double("loss", "t_on_ms", 0.0);

  sc.loss_amplitude =
      cfg.get_auto_double("loss-gaussian", "gamma_a_per_ms").value_or(-1.0);
  sc.loss_sigma = cfg.get_double("loss-gaussian", "sigma_loss_per_um",
                                 is2d ? 0.15 : 0.3);
  sc.loss_center = cfg.get_auto_double("loss-gaussian", "k_loss_per_um");

  if (sc.loss == LossSelection::Eit || cfg.has("eit", "omega_p")) {
    const LambdaParams def = default_idler_loss_lasers();
    LambdaParams lp;
    lp.omega_p = cfg.get_double("eit", "omega_p", def.omega_p);
    lp.omega_c = cfg.get_double("eit", "omega_c", def.omega_c);
    lp.delta0 = cfg.get_double("eit", "delta0", def.delta0);
    lp.gamma_decay = cfg.get_double("eit", "gamma_decay", def.gamma_decay);
    lp.q = cfg.get_double("eit", "q_um_inv", def.q);
    lp.cos_theta_p =
        std::cos(cfg.get_double("eit", "theta_p_deg", 0.0) * M_PI / 180.0);
    lp.cos_theta_c =
        std::cos(cfg.get_double("eit", "theta_c_deg", 90.0) * M_PI / 180.0);
    sc.lambda = lp;
    sc.delta_e_scale = cfg.get_double("eit", "delta_e_scale", 1.0);
  }

  if (sc.loss == LossSelection::Tabulated) {
    const std::string file = cfg.get_string("loss-table", "file", "");
    if (file.empty())
      throw ConfigError("tabulated loss requires [loss-table] file = ...");
    // table columns: k, gamma, deltaE
    std::ifstream in(file);
    if (!in) throw ConfigError("cannot open loss table: " + file);
    LossSpectrumTable tab;
    std::string line;
    bool header_skipped = false;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      if (!header_skipped && line.find_first_not_of("0123456789+-.eE, \t") !=
                                 std::string::npos) {
        header_skipped = true;
        continue;
      }
      std::replace(line.begin(), line.end(), ',', ' ');
      std::istringstream ls(line);
      double k, g, de;
      if (ls >> k >> g >> de) {
        tab.k.push_back(k);
        tab.gamma.push_back(g);
        tab.delta_e.push_back(de);
      }
    }
    sc.loss_table = tab;
  }

  rs.dt = cfg.get_double("solver", "dt_ms", is2d ? 5e-3 : 1e-3);
  rs.t_end = cfg.get_double(
      "solver", "t_end_ms",
      is2d ? 2.0 * sc.collision_time
           : sc.variant == ScenarioVariant::Homogeneous1D ? 30.0 : 14.0);
  rs.observer_stride = cfg.get_double("solver", "observer_stride_ms", 0.1);
  rs.snapshot_stride = cfg.get_double("solver", "snapshot_stride_ms", 0.0);
  rs.dealias = cfg.get_bool("solver", "dealias", false);
  return rs;
}

std::string resolved_run_config(const RunSettings& rs) {
  const ScenarioConfig& sc = rs.scenario;
  std::ostringstream out;
  const char* variant = sc.variant == ScenarioVariant::BoxAmplification1D
                            ? "box1d"
                        : sc.variant == ScenarioVariant::Homogeneous1D
                            ? "homogeneous1d"
                            : "collision2d";
  out << "[physics]\n";
  out << "mass_kg = " << format_g17(sc.mass_kg) << "\n";
  out << "a_s_m = " << format_g17(sc.a_s_m) << "\n";
  out << "omega_perp_hz = " << format_g17(sc.omega_perp_hz) << "\n";
  out << "\n[scenario]\n";
  out << "variant = " << variant << "\n";
  out << "n = " << sc.n << "\n";
  out << "n_y = " << sc.n_y << "\n";
  out << "domain_um = " << format_g17(sc.domain) << "\n";
  out << "domain_y_um = " << format_g17(sc.domain_y) << "\n";
  out << "atom_number = " << format_g17(sc.atom_number) << "\n";
  out << "box_length_um = " << format_g17(sc.box_length) << "\n";
  out << "wall_width_um = " << format_g17(sc.wall_width) << "\n";
  out << "wall_height = " << format_g17(sc.wall_height) << "\n";
  out << "k_pump_per_um = " << format_g17(sc.k_pump) << "\n";
  out << "t_collision_ms = " << format_g17(sc.collision_time) << "\n";
  out << "cloud_sigma_um = " << format_g17(sc.cloud_sigma) << "\n";
  out << "speed_pump_um_ms = " << format_g17(sc.speed_pump) << "\n";
  out << "speed_signal_um_ms = " << format_g17(sc.speed_signal) << "\n";
  out << "band_halfwidth_per_um = " << format_g17(sc.band_half_width) << "\n";
  out << "\n[signal]\n";
  out << "k_s_per_um = " << format_g17(sc.k_signal) << "\n";
  out << "sigma_um2 = " << format_g17(sc.signal_sigma) << "\n";
  out << "x0_um = " << format_g17(sc.signal_x0) << "\n";
  out << "fraction = " << format_g17(sc.signal_fraction) << "\n";
  out << "\n[loss]\n";
  const char* model = sc.loss == LossSelection::None        ? "none"
                      : sc.loss == LossSelection::Gaussian  ? "gaussian"
                      : sc.loss == LossSelection::Eit       ? "eit"
                                                            : "tabulated";
  out << "model = " << model << "\n";
  out << "t_on_ms = " << format_g17(sc.loss_t_on) << "\n";
  if (sc.loss == LossSelection::Gaussian) {
    out << "\n[loss-gaussian]\n";
    if (sc.loss_amplitude > 0.0)
      out << "gamma_a_per_ms = " << format_g17(sc.loss_amplitude) << "\n";
    else
      out << "gamma_a_per_ms = auto\n";
    if (sc.loss_center)
      out << "k_loss_per_um = " << format_g17(*sc.loss_center) << "\n";
    else
      out << "k_loss_per_um = auto\n";
    out << "sigma_loss_per_um = " << format_g17(sc.loss_sigma) << "\n";
  }
  if (sc.lambda) {
    const LambdaParams& lp = *sc.lambda;
    out << "\n[eit]\n";
    out << "omega_p = " << format_g17(lp.omega_p) << "\n";
    out << "omega_c = " << format_g17(lp.omega_c) << "\n";
    out << "delta0 = " << format_g17(lp.delta0) << "\n";
    out << "gamma_decay = " << format_g17(lp.gamma_decay) << "\n";
    out << "q_um_inv = " << format_g17(lp.q) << "\n";
    out << "theta_p_deg = "
        << format_g17(std::acos(lp.cos_theta_p) * 180.0 / M_PI) << "\n";
    out << "theta_c_deg = "
        << format_g17(std::acos(lp.cos_theta_c) * 180.0 / M_PI) << "\n";
    out << "delta_e_scale = " << format_g17(sc.delta_e_scale) << "\n";
  }
  out << "\n[solver]\n";
  out << "dt_ms = " << format_g17(rs.dt) << "\n";
  out << "t_end_ms = " << format_g17(rs.t_end) << "\n";
  out << "observer_stride_ms = " << format_g17(rs.observer_stride) << "\n";
  out << "snapshot_stride_ms = " << format_g17(rs.snapshot_stride) << "\n";
  out << "dealias = " << (rs.dealias ? "true" : "false") << "\n";
  return out.str();
}

ThreeModeSettings three_mode_settings_from_config(const Config& cfg) {
  ThreeModeSettings s;
  s.params.u_d = cfg.get_double("three-mode", "u_d", 6.6602e-5);
  s.params.n0 = cfg.get_double("three-mode", "n0", 1.0e4);
  s.params.delta_e = cfg.get_double("three-mode", "delta_e", 5.3271);
  s.params.gamma = cfg.get_double("three-mode", "gamma", 5.3271);
  const std::string conv =
      cfg.get_string("three-mode", "convention", "rotating_frame");
  if (conv == "rotating_frame")
    s.params.convention = KappaConvention::RotatingFrame;
  else if (conv == "interaction_shift")
    s.params.convention = KappaConvention::InteractionShift;
  else
    throw ConfigError("unknown three-mode convention `" + conv + "`");
  s.seed_signal = cfg.get_double("three-mode", "seed_signal", 10.0);
  s.seed_idler = cfg.get_double("three-mode", "seed_idler", 0.0);
  s.dt = cfg.get_double("three-mode", "dt_ms", 1e-4);
  s.t_end = cfg.get_double("three-mode", "t_end_ms", 50.0);
  s.record_stride = cfg.get_int("three-mode", "record_stride", 100);
  return s;
}

std::string resolved_three_mode_config(const ThreeModeSettings& s) {
  std::ostringstream out;
  out << "[three-mode]\n";
  out << "u_d = " << format_g17(s.params.u_d) << "\n";
  out << "n0 = " << format_g17(s.params.n0) << "\n";
  out << "delta_e = " << format_g17(s.params.delta_e) << "\n";
  out << "gamma = " << format_g17(s.params.gamma) << "\n";
  out << "convention = "
      << (s.params.convention == KappaConvention::RotatingFrame
              ? "rotating_frame"
              : "interaction_shift")
      << "\n";
  out << "seed_signal = " << format_g17(s.seed_signal) << "\n";
  out << "seed_idler = " << format_g17(s.seed_idler) << "\n";
  out << "dt_ms = " << format_g17(s.dt) << "\n";
  out << "t_end_ms = " << format_g17(s.t_end) << "\n";
  out << "record_stride = " << s.record_stride << "\n";
  return out.str();
}

GainMapSettings gain_map_settings_from_config(const Config& cfg) {
  GainMapSettings s;
  s.u_d_n0 = cfg.get_double("gain-map", "u_d_n0", 0.66602);
  s.gamma_min = cfg.get_double("gain-map", "gamma_min", 0.5);
  s.gamma_max = cfg.get_double("gain-map", "gamma_max", 16.0);
  s.gamma_count = cfg.get_int("gain-map", "gamma_count", 32);
  s.delta_e_min = cfg.get_double("gain-map", "delta_e_min", 1.0);
  s.delta_e_max = cfg.get_double("gain-map", "delta_e_max", 16.0);
  s.delta_e_count = cfg.get_int("gain-map", "delta_e_count", 16);
  if (s.gamma_count < 1 || s.delta_e_count < 1)
    throw ConfigError("gain-map: counts must be >= 1");
  return s;
}

std::string resolved_gain_map_config(const GainMapSettings& s) {
  std::ostringstream out;
  out << "[gain-map]\n";
  out << "u_d_n0 = " << format_g17(s.u_d_n0) << "\n";
  out << "gamma_min = " << format_g17(s.gamma_min) << "\n";
  out << "gamma_max = " << format_g17(s.gamma_max) << "\n";
  out << "gamma_count = " << s.gamma_count << "\n";
  out << "delta_e_min = " << format_g17(s.delta_e_min) << "\n";
  out << "delta_e_max = " << format_g17(s.delta_e_max) << "\n";
  out << "delta_e_count = " << s.delta_e_count << "\n";
  return out.str();
}

SpectrumSettings spectrum_settings_from_config(const Config& cfg) {
  SpectrumSettings s;
  const LambdaParams def = default_idler_loss_lasers();
  LambdaParams& lp = s.lambda;
  lp.omega_p = cfg.get_double("eit", "omega_p", def.omega_p);
  lp.omega_c = cfg.get_double("eit", "omega_c", def.omega_c);
  lp.delta0 = cfg.get_double("eit", "delta0", def.delta0);
  lp.gamma_decay = cfg.get_double("eit", "gamma_decay", def.gamma_decay);
  lp.q = cfg.get_double("eit", "q_um_inv", def.q);
  lp.cos_theta_p =
      std::cos(cfg.get_double("eit", "theta_p_deg", 0.0) * M_PI / 180.0);
  lp.cos_theta_c =
      std::cos(cfg.get_double("eit", "theta_c_deg", 90.0) * M_PI / 180.0);

  const double mass_kg = cfg.get_double("physics", "mass_kg", kRb87MassKg);
  s.mass = UnitSystem::mass_from_kg(mass_kg);
  s.k_min = cfg.get_double("spectrum", "k_min_per_um", -16.0);
  s.k_max = cfg.get_double("spectrum", "k_max_per_um", 16.0);
  s.base_samples = cfg.get_int("spectrum", "base_samples", 512);
  if (!(s.k_max > s.k_min) || s.base_samples < 2)
    throw ConfigError("spectrum: need k_max > k_min and >= 2 samples");
  return s;
}

std::string resolved_spectrum_config(const SpectrumSettings& s) {
  std::ostringstream out;
  out << "[physics]\n";
  out << "mass_kg = " << format_g17(UnitSystem::mass_to_kg(s.mass)) << "\n";
  out << "\n[eit]\n";
  out << "omega_p = " << format_g17(s.lambda.omega_p) << "\n";
  out << "omega_c = " << format_g17(s.lambda.omega_c) << "\n";
  out << "delta0 = " << format_g17(s.lambda.delta0) << "\n";
  out << "gamma_decay = " << format_g17(s.lambda.gamma_decay) << "\n";
  out << "q_um_inv = " << format_g17(s.lambda.q) << "\n";
  out << "theta_p_deg = "
      << format_g17(std::acos(s.lambda.cos_theta_p) * 180.0 / M_PI) << "\n";
  out << "theta_c_deg = "
      << format_g17(std::acos(s.lambda.cos_theta_c) * 180.0 / M_PI) << "\n";
  out << "delta_e_scale = 1\n";
  out << "\n[spectrum]\n";
  out << "k_min_per_um = " << format_g17(s.k_min) << "\n";
  out << "k_max_per_um = " << format_g17(s.k_max) << "\n";
  out << "base_samples = " << s.base_samples << "\n";
  return out.str();
}

}  // namespace nhwm
