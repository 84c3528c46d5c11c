#include <CLI11.hpp>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <thread>

#include "nhwm/compare.hpp"
#include "nhwm/config.hpp"
#include "nhwm/errors.hpp"
#include "nhwm/io.hpp"
#include "nhwm/scenarios.hpp"
#include "nhwm/solver.hpp"
#include "nhwm/three_mode.hpp"

namespace fs = std::filesystem;
using namespace nhwm;

namespace {

int max_threads() {
  const char* env = std::getenv("NHWM_THREADS");
  if (!env) return 1;
  const int n = std::atoi(env);
  return n > 0 ? n : 1;
}

struct RunOutcome {
  double n_final = 0.0;
  double n_lost = 0.0;
  double p_s_initial = 0.0;
  double p_s_final = 0.0;
  double fitted_gain = 0.0;  // growth rate of p_s, 1/ms
};

std::array<double, 2> band_center_for(const RunSettings& rs) {
  const ScenarioConfig& sc = rs.scenario;
  if (sc.variant == ScenarioVariant::Collision2D)
    return {0.0, sc.physical().mass * sc.speed_signal};
  return {sc.k_signal, 0.0};
}

RunOutcome execute_run(const Config& cfg, const std::string& out_dir,
                       bool no_loss, bool quiet = false) {
  RunSettings rs = run_settings_from_config(cfg);
  if (no_loss) rs.scenario.loss = LossSelection::None;

  fs::create_directories(out_dir);
  const std::string manifest_path = out_dir + "/manifest.ini";
  RunManifest manifest;
  manifest.version = version_string();
  manifest.command = no_loss ? "run --no-loss" : "run";
  manifest.input_hash = fnv1a64_hex(cfg.text());
  manifest.output_dir = out_dir;
  manifest.outputs = {"timeseries.csv", "final_state.nhwm"};
  manifest.resolved_config = resolved_run_config(rs);
  write_manifest(manifest_path, manifest);

  SimState state = build_scenario(rs.scenario);
  SolverOptions opts;
  opts.dt = rs.dt;
  opts.dealias = rs.dealias;
  GpeSolver solver(std::move(state), opts);

  RecordOptions rec;
  rec.stride = rs.observer_stride;
  rec.band_center = band_center_for(rs);
  rec.band_half_width = rs.scenario.band_half_width;

  const ScenarioConfig& sc = rs.scenario;
  if (sc.variant != ScenarioVariant::Collision2D) {
    const double k_i = sc.k_idler();
    const double k_0 = sc.k_pump;
    const double bw = sc.band_half_width;
    rec.extras.emplace_back("p_idler", [k_i, bw](const SimState& s) {
      return signal_strength(s.field, k_i, bw);
    });
    rec.extras.emplace_back("p_pump", [k_0, bw](const SimState& s) {
      return signal_strength(s.field, k_0, bw);
    });
  } else {
    const std::array<double, 2> p3{0.0, -sc.physical().mass * sc.speed_signal};
    const double bw = sc.band_half_width;
    rec.extras.emplace_back("p_conjugate", [p3, bw](const SimState& s) {
      return signal_strength(s.field, p3, bw);
    });
  }

  long snap_counter = 0;
  long records_seen = 0;
  if (rs.snapshot_stride > 0.0) {
    fs::create_directories(out_dir + "/snapshots");
    const long every =
        std::max<long>(1, std::lround(rs.snapshot_stride / rs.observer_stride));
    rec.on_record = [&, every](const SimState& s) {
      if (records_seen++ % every) return;
      char name[64];
      std::snprintf(name, sizeof(name), "/snapshots/%06ld.nhwm",
                    snap_counter++);
      write_snapshot(out_dir + name, s.field, s.t);
    };
  }

  const SeriesTable series = solver.evolve(rs.t_end, rec);
  write_csv(out_dir + "/timeseries.csv", series);
  write_snapshot(out_dir + "/final_state.nhwm", solver.state().field,
                 solver.state().t);
  finalize_manifest(manifest_path);

  RunOutcome out;
  out.n_final = solver.atom_number();
  out.n_lost = solver.state().n_lost;
  const auto& ps = series.column("p_s");
  out.p_s_initial = ps.front();
  out.p_s_final = ps.back();
  try {
    out.fitted_gain = 0.5 * fit_growth_rate(series.column("t"), ps,
                                            0.1 * rs.t_end, rs.t_end);
  } catch (const std::exception&) {
    out.fitted_gain = 0.0;
  }
  if (!quiet) {
    std::printf("n_final = %.17g\n", out.n_final);
    std::printf("n_lost = %.17g\n", out.n_lost);
    std::printf("p_s_initial = %.17g\n", out.p_s_initial);
    std::printf("p_s_final = %.17g\n", out.p_s_final);
    std::printf("fitted_gain = %.17g 1/ms\n", out.fitted_gain);
  }
  return out;
}

int cmd_run(const std::string& config_path, const std::string& out_dir,
            bool no_loss) {
  const Config cfg = Config::parse_file(config_path);
  execute_run(cfg, out_dir, no_loss);
  return 0;
}

int cmd_three_mode(const std::string& config_path, const std::string& out_dir) {
  const Config cfg = Config::parse_file(config_path);
  const ThreeModeSettings s = three_mode_settings_from_config(cfg);

  fs::create_directories(out_dir);
  RunManifest manifest;
  manifest.version = version_string();
  manifest.command = "three-mode";
  manifest.input_hash = fnv1a64_hex(cfg.text());
  manifest.output_dir = out_dir;
  manifest.outputs = {"three_mode.csv"};
  manifest.resolved_config = resolved_three_mode_config(s);
  const std::string manifest_path = out_dir + "/manifest.ini";
  write_manifest(manifest_path, manifest);

  ThreeModeState initial;
  initial.pump = std::sqrt(std::max(
      s.params.n0 - s.seed_signal * s.seed_signal - s.seed_idler * s.seed_idler,
      0.0));
  initial.signal = s.seed_signal;
  initial.idler = s.seed_idler;
  const ThreeModeTrajectory traj =
      integrate_three_mode(initial, s.params, s.dt, s.t_end, s.record_stride);

  SeriesTable table;
  table.add_column("t") = traj.t;
  table.add_column("pump") = traj.pump_pop;
  table.add_column("signal") = traj.signal_pop;
  table.add_column("idler") = traj.idler_pop;
  table.add_column("sum") = traj.total;
  write_csv(out_dir + "/three_mode.csv", table);
  finalize_manifest(manifest_path);

  const GainEstimate g = gain_estimate(s.params);
  std::printf("im_lambda_exact = %.17g 1/ms\n", g.exact);
  std::printf("im_lambda_lorentzian = %.17g 1/ms\n", g.lorentzian);
  std::printf("rel_deviation = %.17g\n", g.rel_deviation);
  return 0;
}

int cmd_gain_map(const std::string& config_path, const std::string& out_dir) {
  const Config cfg = Config::parse_file(config_path);
  const GainMapSettings s = gain_map_settings_from_config(cfg);

  fs::create_directories(out_dir);
  RunManifest manifest;
  manifest.version = version_string();
  manifest.command = "gain-map";
  manifest.input_hash = fnv1a64_hex(cfg.text());
  manifest.output_dir = out_dir;
  manifest.outputs = {"gain_map.csv"};
  manifest.resolved_config = resolved_gain_map_config(s);
  const std::string manifest_path = out_dir + "/manifest.ini";
  write_manifest(manifest_path, manifest);

  SeriesTable table;
  for (const char* name : {"gamma", "delta_e", "im_lambda_exact",
                           "im_lambda_lorentzian", "rel_deviation"})
    table.add_column(name);
  auto& col_g = table.columns[0];
  auto& col_de = table.columns[1];
  auto& col_exact = table.columns[2];
  auto& col_lor = table.columns[3];
  auto& col_dev = table.columns[4];
  for (int i = 0; i < s.delta_e_count; ++i) {
    const double de =
        s.delta_e_count == 1
            ? s.delta_e_min
            : s.delta_e_min + (s.delta_e_max - s.delta_e_min) * i /
                                  (s.delta_e_count - 1);
    for (int j = 0; j < s.gamma_count; ++j) {
      const double gamma =
          s.gamma_count == 1
              ? s.gamma_min
              : s.gamma_min +
                    (s.gamma_max - s.gamma_min) * j / (s.gamma_count - 1);
      ThreeModeParams par;
      par.u_d = s.u_d_n0;
      par.n0 = 1.0;
      par.delta_e = de;
      par.gamma = gamma;
      const GainEstimate g = gain_estimate(par);
      col_g.push_back(gamma);
      col_de.push_back(de);
      col_exact.push_back(g.exact);
      col_lor.push_back(g.lorentzian);
      col_dev.push_back(g.rel_deviation);
    }
  }
  write_csv(out_dir + "/gain_map.csv", table);
  finalize_manifest(manifest_path);
  return 0;
}

int cmd_loss_spectrum(const std::string& config_path,
                      const std::string& out_dir) {
  const Config cfg = Config::parse_file(config_path);
  const SpectrumSettings s = spectrum_settings_from_config(cfg);

  fs::create_directories(out_dir);
  RunManifest manifest;
  manifest.version = version_string();
  manifest.command = "loss-spectrum";
  manifest.input_hash = fnv1a64_hex(cfg.text());
  manifest.output_dir = out_dir;
  manifest.outputs = {"loss_spectrum.csv"};
  manifest.resolved_config = resolved_spectrum_config(s);
  const std::string manifest_path = out_dir + "/manifest.ini";
  write_manifest(manifest_path, manifest);

  std::vector<double> samples(s.base_samples);
  for (int i = 0; i < s.base_samples; ++i)
    samples[i] =
        s.k_min + (s.k_max - s.k_min) * i / (s.base_samples - 1);
  const LossSpectrumTable table = loss_spectrum(s.lambda, samples, s.mass);

  SeriesTable out;
  for (const char* name : {"k", "v", "gamma", "delta_e", "gamma_closed_form",
                           "delta_e_closed_form"})
    out.add_column(name);
  auto& col_k = out.columns[0];
  auto& col_v = out.columns[1];
  auto& col_gamma = out.columns[2];
  auto& col_de = out.columns[3];
  auto& col_gcf = out.columns[4];
  auto& col_decf = out.columns[5];
  for (std::size_t i = 0; i < table.k.size(); ++i) {
    const double k = table.k[i];
    const double v = k / s.mass;
    const double dp = s.lambda.delta0 - v * s.lambda.q * s.lambda.cos_theta_p;
    const double dc = s.lambda.delta0 - v * s.lambda.q * s.lambda.cos_theta_c;
    col_k.push_back(k);
    col_v.push_back(v);
    col_gamma.push_back(table.gamma[i]);
    col_de.push_back(table.delta_e[i]);
    col_gcf.push_back(loss_rate_closed_form(s.lambda.omega_p, s.lambda.omega_c,
                                            dp, dc, s.lambda.gamma_decay));
    col_decf.push_back(light_shift_closed_form(
        s.lambda.omega_p, s.lambda.omega_c, dp, dc, s.lambda.gamma_decay));
  }
  write_csv(out_dir + "/loss_spectrum.csv", out);
  finalize_manifest(manifest_path);
  std::printf("peak gamma = %.17g 1/ms at k = %.17g 1/um (%zu samples)\n",
              table.peak_gamma(), table.peak_k(), table.k.size());
  return 0;
}

int cmd_sweep(const std::string& config_path, const std::string& axis,
              const std::string& values_arg, const std::string& out_dir) {
  const Config base = Config::parse_file(config_path);
  std::vector<std::string> values;
  std::istringstream vs(values_arg);
  std::string v;
  while (std::getline(vs, v, ',')) {
    if (!v.empty()) values.push_back(v);
  }
  if (values.empty()) throw ConfigError("sweep: no values given");

  fs::create_directories(out_dir);
  RunManifest manifest;
  manifest.version = version_string();
  manifest.command = "sweep " + axis;
  manifest.input_hash = fnv1a64_hex(base.text());
  manifest.output_dir = out_dir;
  manifest.outputs = {"summary.csv"};
  manifest.resolved_config = base.text();
  const std::string manifest_path = out_dir + "/manifest.ini";
  write_manifest(manifest_path, manifest);

  struct PointResult {
    double value = 0.0;
    RunOutcome outcome;
    bool failed = false;
  };
  std::vector<PointResult> results(values.size());

  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= values.size()) return;
      PointResult& r = results[i];
      r.value = std::stod(values[i]);
      char sub[64];
      std::snprintf(sub, sizeof(sub), "/point_%03zu", i);
      try {
        const std::string text =
            override_config_text(base.text(), axis, values[i]);
        const Config point_cfg = Config::parse_string(text, "<sweep>");
        r.outcome = execute_run(point_cfg, out_dir + sub, false, true);
      } catch (const std::exception& e) {
        r.failed = true;
        std::fprintf(stderr, "sweep point %zu (%s) failed: %s\n", i,
                     values[i].c_str(), e.what());
      }
    }
  };
  const int threads =
      std::min<int>(max_threads(), static_cast<int>(values.size()));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  SeriesTable summary;
  for (const char* name :
       {"value", "status", "p_s_final", "n_lost", "fitted_gain"})
    summary.add_column(name);
  auto& col_value = summary.columns[0];
  auto& col_status = summary.columns[1];
  auto& col_ps = summary.columns[2];
  auto& col_lost = summary.columns[3];
  auto& col_gain = summary.columns[4];
  for (const PointResult& r : results) {
    col_value.push_back(r.value);
    col_status.push_back(r.failed ? 3.0 : 0.0);
    col_ps.push_back(r.failed ? std::nan("") : r.outcome.p_s_final);
    col_lost.push_back(r.failed ? std::nan("") : r.outcome.n_lost);
    col_gain.push_back(r.failed ? std::nan("") : r.outcome.fitted_gain);
  }
  write_csv(out_dir + "/summary.csv", summary);
  finalize_manifest(manifest_path);
  return 0;
}

int cmd_compare(const std::string& path_a, const std::string& path_b,
                const std::string& col_a, const std::string& col_b,
                const std::string& window, const std::string& out_path) {
  double lo = -1e300, hi = 1e300;
  if (!window.empty()) {
    const std::size_t colon = window.find(':');
    if (colon == std::string::npos)
      throw ConfigError("compare: window must be `t_lo:t_hi`");
    lo = std::stod(window.substr(0, colon));
    hi = std::stod(window.substr(colon + 1));
  }
  const SeriesTable a = read_csv(path_a);
  const SeriesTable b = read_csv(path_b);
  const CompareReport rep = compare_runs(a, b, col_a, col_b, lo, hi);
  const std::string text = format_report(rep);
  std::fputs(text.c_str(), stdout);
  if (!out_path.empty()) {
    std::FILE* f = std::fopen(out_path.c_str(), "wb");
    if (!f) throw std::runtime_error("cannot open " + out_path);
    std::fputs(text.c_str(), f);
    std::fclose(f);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"non-Hermitian matter-wave mixing simulator"};
  app.require_subcommand(1);
  bool seedless = false;
  app.add_flag("--seedless", seedless,
               "reject nondeterministic sources (none exist; kept for "
               "compatibility)");

  std::string config_path, out_dir = "out";
  bool no_loss = false;
  auto* run = app.add_subcommand("run", "propagate a configured scenario");
  run->add_option("--config", config_path, "config file")->required();
  run->add_option("--out", out_dir, "output directory");
  run->add_flag("--no-loss", no_loss, "control run with the loss disabled");

  std::string tm_config, tm_out = "out";
  auto* tm = app.add_subcommand("three-mode", "integrate the reduced model");
  tm->add_option("--config", tm_config, "config file")->required();
  tm->add_option("--out", tm_out, "output directory");

  std::string gm_config, gm_out = "out";
  auto* gm = app.add_subcommand("gain-map", "eigenvalue gain over (gamma, dE)");
  gm->add_option("--config", gm_config, "config file")->required();
  gm->add_option("--out", gm_out, "output directory");

  std::string ls_config, ls_out = "out";
  auto* ls = app.add_subcommand("loss-spectrum",
                                "engineered loss spectrum from laser params");
  ls->add_option("--config", ls_config, "config file")->required();
  ls->add_option("--out", ls_out, "output directory");

  std::string sw_config, sw_axis, sw_values, sw_out = "out";
  auto* sw = app.add_subcommand("sweep", "run once per axis value");
  sw->add_option("--config", sw_config, "base config file")->required();
  sw->add_option("--axis", sw_axis, "section.key to sweep")->required();
  sw->add_option("--values", sw_values, "comma-separated values")->required();
  sw->add_option("--out", sw_out, "output directory");

  std::string cmp_a, cmp_b, cmp_col_a = "p_s", cmp_col_b = "p_s", cmp_window,
                            cmp_out;
  auto* cmp = app.add_subcommand("compare", "compare two time series");
  cmp->add_option("--series-a", cmp_a, "first csv")->required();
  cmp->add_option("--series-b", cmp_b, "second csv")->required();
  cmp->add_option("--col-a", cmp_col_a, "column in the first csv");
  cmp->add_option("--col-b", cmp_col_b, "column in the second csv");
  cmp->add_option("--window", cmp_window, "t_lo:t_hi fit window (ms)");
  cmp->add_option("--out", cmp_out, "write the report to a file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*run) return cmd_run(config_path, out_dir, no_loss);
    if (*tm) return cmd_three_mode(tm_config, tm_out);
    if (*gm) return cmd_gain_map(gm_config, gm_out);
    if (*ls) return cmd_loss_spectrum(ls_config, ls_out);
    if (*sw) return cmd_sweep(sw_config, sw_axis, sw_values, sw_out);
    if (*cmp)
      return cmd_compare(cmp_a, cmp_b, cmp_col_a, cmp_col_b, cmp_window,
                         cmp_out);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
  return 0;
}
