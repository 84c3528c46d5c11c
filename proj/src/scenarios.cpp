#include "nhwm/scenarios.hpp"

#include <cmath>
#include <stdexcept>

#include "nhwm/errors.hpp"

namespace nhwm {

namespace {

// Thomas-Fermi-like starting profile: sqrt(max(mu - V, 0)/U) when U > 0,
// else a uniform fill; keeps the gradient flow close to its target.
WaveField initial_guess(const Grid& grid, const std::vector<double>& potential,
                        double interaction, double n_atoms) {
  WaveField f(grid);
  const std::size_t total = grid.size();
  if (potential.empty() || interaction <= 0.0) {
    const double val = std::sqrt(n_atoms / (grid.cell_volume() * total));
    for (auto& a : f.psi) a = val;
    return f;
  }
  double vmin = potential[0], vmax = potential[0];
  for (double v : potential) {
    vmin = std::min(vmin, v);
    vmax = std::max(vmax, v);
  }
  double lo = vmin, hi = vmax + interaction * n_atoms;  // bracket for mu
  for (int it = 0; it < 200; ++it) {
    const double mu = 0.5 * (lo + hi);
    double norm = 0.0;
    for (double v : potential) norm += std::max(mu - v, 0.0) / interaction;
    norm *= grid.cell_volume();
    (norm < n_atoms ? lo : hi) = mu;
  }
  const double mu = 0.5 * (lo + hi);
  for (std::size_t i = 0; i < total; ++i)
    f.psi[i] = std::sqrt(std::max(mu - potential[i], 0.0) / interaction);
  const double n = f.atom_number();
  if (n <= 0.0) {
    const double val = std::sqrt(n_atoms / (grid.cell_volume() * total));
    for (auto& a : f.psi) a = val;
    return f;
  }
  const double scale = std::sqrt(n_atoms / n);
  for (auto& a : f.psi) a *= scale;
  return f;
}

double kinetic_energy(const SpectralTransform& tr, const ComplexArray& psi,
                      const Grid& grid, double mass) {
  const ComplexArray phi = tr.forward(psi);
  const int ny = grid.ndim() == 2 ? grid.n(1) : 1;
  const std::vector<double> kx = grid.wavenumbers(0);
  const std::vector<double> ky =
      grid.ndim() == 2 ? grid.wavenumbers(1) : std::vector<double>{0.0};
  double e = 0.0;
  for (std::size_t idx = 0; idx < phi.size(); ++idx) {
    const int ix = static_cast<int>(idx) / ny;
    const int iy = static_cast<int>(idx) % ny;
    double k2 = kx[ix] * kx[ix];
    if (grid.ndim() == 2) k2 += ky[iy] * ky[iy];
    e += k2 * std::norm(phi[idx]);
  }
  return e * grid.cell_volume_k() / (2.0 * mass);
}

}  // namespace

PhysicalParams ScenarioConfig::physical() const {
  return make_physical_params(mass_kg, a_s_m, omega_perp());
}

double ScenarioConfig::omega_perp() const {
  return UnitSystem::angular_frequency_from_hz(omega_perp_hz);
}

WaveField ground_state_imaginary_time(const Grid& grid,
                                      const std::vector<double>& potential,
                                      const PhysicalParams& params,
                                      double interaction, double n_atoms,
                                      const ImagTimeOptions& opts) {
  if (!(n_atoms > 0.0))
    throw std::invalid_argument("ground state: atom number must be positive");
  if (!potential.empty() && potential.size() != grid.size())
    throw std::invalid_argument("ground state: potential does not match grid");

  SpectralTransform tr(grid);
  WaveField field = initial_guess(grid, potential, interaction, n_atoms);

  const std::size_t total = grid.size();
  const int ny = grid.ndim() == 2 ? grid.n(1) : 1;
  const std::vector<double> kx = grid.wavenumbers(0);
  const std::vector<double> ky =
      grid.ndim() == 2 ? grid.wavenumbers(1) : std::vector<double>{0.0};

  // diffusion factor exp(-k^2/(2m) dtau/2) in momentum space
  std::vector<double> kin_factor(total);
  auto fill_kin = [&](double dtau) {
    for (std::size_t idx = 0; idx < total; ++idx) {
      const int ix = static_cast<int>(idx) / ny;
      const int iy = static_cast<int>(idx) % ny;
      double k2 = kx[ix] * kx[ix];
      if (grid.ndim() == 2) k2 += ky[iy] * ky[iy];
      kin_factor[idx] = std::exp(-k2 / (2.0 * params.mass) * 0.5 * dtau);
    }
  };

  auto energy = [&]() {
    double e = kinetic_energy(tr, field.psi, grid, params.mass);
    double pos = 0.0;
    for (std::size_t i = 0; i < total; ++i) {
      const double dens = std::norm(field.psi[i]);
      pos += (potential.empty() ? 0.0 : potential[i] * dens) +
             0.5 * interaction * dens * dens;
    }
    return e + pos * grid.cell_volume();
  };

  const bool has_v = !potential.empty();
  long iterations = 0;
  double dtau = opts.dtau;
  // anneal the step: each stage runs to the energy criterion, then dtau is
  // halved; the fixed-point bias shrinks as dtau^2
  for (;;) {
    fill_kin(dtau);
    double e_prev = energy();
    ComplexArray prev_psi;
    bool stage_done = false;
    while (!stage_done) {
      if (++iterations > opts.max_iterations)
        throw NumericalError(
            "ground state: gradient flow did not converge within " +
            std::to_string(opts.max_iterations) + " iterations");
      ComplexArray& psi = field.psi;
      if (opts.field_tol > 0.0) prev_psi = psi;
      tr.raw_forward(psi);
      for (std::size_t i = 0; i < total; ++i) psi[i] *= kin_factor[i];
      tr.raw_backward(psi);
      for (std::size_t i = 0; i < total; ++i) {
        const double dens = std::norm(psi[i]);
        psi[i] *= std::exp(
            -(interaction * dens + (has_v ? potential[i] : 0.0)) * dtau);
      }
      tr.raw_forward(psi);
      for (std::size_t i = 0; i < total; ++i) psi[i] *= kin_factor[i];
      tr.raw_backward(psi);

      const double n = field.atom_number();
      if (!(n > 0.0) || !std::isfinite(n))
        throw NumericalError("ground state: norm collapsed during relaxation");
      const double rescale = std::sqrt(n_atoms / n);
      for (auto& a : psi) a *= rescale;

      const double e_now = energy();
      stage_done = std::abs(e_now - e_prev) /
                       std::max(std::abs(e_now), 1e-300) <
                   opts.energy_tol;
      e_prev = e_now;
      if (stage_done && opts.field_tol > 0.0) {
        double diff2 = 0.0, base2 = 0.0;
        for (std::size_t i = 0; i < total; ++i) {
          diff2 += std::norm(psi[i] - prev_psi[i]);
          base2 += std::norm(prev_psi[i]);
        }
        stage_done = std::sqrt(diff2 / base2) < opts.field_tol;
      }
    }
    if (dtau <= opts.dtau_final) break;
    dtau = std::max(0.5 * dtau, opts.dtau_final);
  }

  // phase-fix: gradient flow keeps the field real up to rounding
  for (auto& a : field.psi) a = Complex{std::abs(a), 0.0};
  const double n2 = field.atom_number();
  const double s = std::sqrt(n_atoms / n2);
  for (auto& a : field.psi) a *= s;
  return field;
}

double imprint_amplitude_for_fraction(double fraction, double n_atoms,
                                      double sigma_var) {
  // norm of A*exp(-(x-x0)^2/(2 sigma_var)) is A^2 sqrt(pi sigma_var)
  return std::sqrt(fraction * n_atoms / std::sqrt(M_PI * sigma_var));
}

void imprint_signal(WaveField& field, double amplitude, double sigma_var,
                    double x0, double ks, const WarningSink& warn) {
  if (field.grid.ndim() != 1)
    throw std::invalid_argument("imprint_signal: 1D fields only");
  if (!(sigma_var > 0.0))
    throw std::invalid_argument("imprint_signal: sigma must be positive");
  if (amplitude == 0.0) return;
  const double n_before = field.atom_number();
  const std::vector<double> x = field.grid.positions(0);
  for (std::size_t i = 0; i < field.psi.size(); ++i) {
    const double envelope =
        amplitude * std::exp(-(x[i] - x0) * (x[i] - x0) / (2.0 * sigma_var));
    field.psi[i] += std::polar(envelope, ks * x[i]);
  }
  const double added = field.atom_number() - n_before;
  if (warn && added > 0.05 * n_before)
    warn("signal imprint adds " + std::to_string(added) +
         " atoms (> 5% of the condensate); undepleted regime violated");
}

double scenario_delta_e(const ScenarioConfig& cfg) {
  const PhysicalParams p = cfg.physical();
  if (cfg.variant == ScenarioVariant::Collision2D) {
    const double kp = p.mass * cfg.speed_pump;
    const double ks = p.mass * cfg.speed_signal;
    return ks * ks / p.mass - kp * kp / p.mass;
  }
  const double e0 = cfg.k_pump * cfg.k_pump / (2.0 * p.mass);
  const double es = cfg.k_signal * cfg.k_signal / (2.0 * p.mass);
  const double ki = cfg.k_idler();
  const double ei = ki * ki / (2.0 * p.mass);
  return es + ei - 2.0 * e0;
}

namespace {

LossModel make_loss(const ScenarioConfig& cfg, double k_center_default,
                    int axis, const Grid& grid) {
  switch (cfg.loss) {
    case LossSelection::None:
      return LossModel::none();
    case LossSelection::Gaussian: {
      LossModel::Gaussian g;
      g.amplitude = cfg.loss_amplitude > 0.0 ? cfg.loss_amplitude
                                             : scenario_delta_e(cfg);
      g.sigma = cfg.loss_sigma;
      g.axis = {axis == 0, axis == 1};
      g.k_center[axis] = cfg.loss_center.value_or(k_center_default);
      return LossModel::gaussian(g, cfg.loss_t_on);
    }
    case LossSelection::Eit:
      if (!cfg.lambda)
        throw ConfigError("eit loss selected but no laser parameters given");
      return LossModel::eit(*cfg.lambda, axis, cfg.loss_t_on,
                            cfg.delta_e_scale);
    case LossSelection::Tabulated:
      if (!cfg.loss_table)
        throw ConfigError("tabulated loss selected but no table given");
      return LossModel::tabulated(*cfg.loss_table, axis, cfg.loss_t_on);
  }
  throw std::logic_error("unreachable");
  (void)grid;
}

}  // namespace

namespace {
void normalize_to(WaveField& field, double n_atoms) {
  const double n = field.atom_number();
  if (!(n > 0.0)) throw NumericalError("builder produced an empty field");
  const double s = std::sqrt(n_atoms / n);
  for (auto& a : field.psi) a *= s;
}
}  // namespace

SimState build_homogeneous_1d(const ScenarioConfig& cfg) {
  const PhysicalParams p = cfg.physical();
  const Grid grid = Grid::make_1d(cfg.n, cfg.domain);
  const double dk = grid.dk(0);

  auto on_grid = [&](double k) {
    const double j = k / dk;
    return std::abs(j - std::round(j)) < 1e-9;
  };
  if (!on_grid(cfg.k_pump) || !on_grid(cfg.k_signal))
    throw ConfigError(
        "homogeneous scenario: k0 and ks must be integer multiples of 2*pi/L");

  WaveField field(grid);
  const std::vector<double> x = grid.positions(0);
  const double root_density = std::sqrt(cfg.atom_number / cfg.domain);
  const double a_pump = root_density * std::sqrt(1.0 - cfg.signal_fraction);
  const double a_sig = root_density * std::sqrt(cfg.signal_fraction);
  for (std::size_t i = 0; i < field.psi.size(); ++i)
    field.psi[i] = std::polar(a_pump, cfg.k_pump * x[i]) +
                   std::polar(a_sig, cfg.k_signal * x[i]);
  normalize_to(field, cfg.atom_number);

  LossModel loss = make_loss(cfg, cfg.k_idler(), 0, grid);
  return SimState::create(std::move(field), {}, p, p.u1d, std::move(loss));
}

SimState build_box_1d(const ScenarioConfig& cfg) {
  if (!(cfg.domain >= 1.2 * cfg.box_length))
    throw ConfigError("box scenario: domain must be at least 1.2x box length");
  const PhysicalParams p = cfg.physical();
  const Grid grid = Grid::make_1d(cfg.n, cfg.domain);

  std::vector<double> potential(grid.size());
  const std::vector<double> x = grid.positions(0);
  const double half = 0.5 * cfg.box_length;
  for (std::size_t i = 0; i < potential.size(); ++i) {
    const double wells = 0.5 * (std::tanh((x[i] + half) / cfg.wall_width) -
                                std::tanh((x[i] - half) / cfg.wall_width));
    potential[i] = cfg.wall_height * (1.0 - wells);
  }

  // the imprint budget is reserved so the total comes out at atom_number
  WaveField field = ground_state_imaginary_time(
      grid, potential, p, p.u1d,
      cfg.atom_number * (1.0 - cfg.signal_fraction));
  const double amp = imprint_amplitude_for_fraction(
      cfg.signal_fraction, cfg.atom_number, cfg.signal_sigma);
  imprint_signal(field, amp, cfg.signal_sigma, cfg.signal_x0, cfg.k_signal);
  normalize_to(field, cfg.atom_number);

  LossModel loss = make_loss(cfg, -cfg.k_signal, 0, grid);
  return SimState::create(std::move(field), std::move(potential), p, p.u1d,
                          std::move(loss));
}

SimState build_collision_2d(const ScenarioConfig& cfg) {
  const PhysicalParams p = cfg.physical();
  const Grid grid = Grid::make_2d(cfg.n, cfg.n_y, cfg.domain, cfg.domain_y);

  struct Cloud {
    double x, y, kx, ky;
  };
  const double tc = cfg.collision_time;
  // imprint momenta snapped to the k lattice: keeps the construction's
  // total momentum exact and avoids phase wrap at the periodic boundary
  const double k_pump =
      std::round(p.mass * cfg.speed_pump / grid.dk(0)) * grid.dk(0);
  const double k_sig =
      std::round(p.mass * cfg.speed_signal / grid.dk(1)) * grid.dk(1);
  const std::array<Cloud, 3> clouds = {
      Cloud{-cfg.speed_pump * tc, 0.0, k_pump, 0.0},
      Cloud{cfg.speed_pump * tc, 0.0, -k_pump, 0.0},
      Cloud{0.0, -cfg.speed_signal * tc, 0.0, k_sig}};

  // all four momenta (including the empty p3 = -p1) must fit the k lattice
  const double k_max_needed =
      std::max(p.mass * cfg.speed_pump, p.mass * cfg.speed_signal) +
      5.0 / cfg.cloud_sigma;
  if (k_max_needed > grid.nyquist(0) || k_max_needed > grid.nyquist(1))
    throw ConfigError("collision scenario: grid does not resolve the momenta");

  // pairwise separation: require < 1e-4 relative density overlap
  for (int a = 0; a < 3; ++a)
    for (int b = a + 1; b < 3; ++b) {
      const double dx = clouds[a].x - clouds[b].x;
      const double dy = clouds[a].y - clouds[b].y;
      const double d2 = dx * dx + dy * dy;
      if (std::exp(-d2 / (cfg.cloud_sigma * cfg.cloud_sigma)) > 1e-4)
        throw ConfigError(
            "collision scenario: clouds overlap initially; increase the "
            "collision time or shrink the clouds");
    }

  WaveField field(grid);
  const std::vector<double> xs = grid.positions(0);
  const std::vector<double> ys = grid.positions(1);
  const double s2 = cfg.cloud_sigma * cfg.cloud_sigma;
  const double peak = std::sqrt(cfg.atom_number / (M_PI * s2));
  const int ny = grid.n(1);
  for (std::size_t idx = 0; idx < field.psi.size(); ++idx) {
    const int ix = static_cast<int>(idx) / ny;
    const int iy = static_cast<int>(idx) % ny;
    Complex val{};
    for (const Cloud& c : clouds) {
      // envelope periodized over the torus; the on-grid imprint phase is
      // already periodic, so the summed field is smooth at the seam
      double env = 0.0;
      for (int wx = -1; wx <= 1; ++wx) {
        for (int wy = -1; wy <= 1; ++wy) {
          const double rx = xs[ix] - c.x + wx * grid.length(0);
          const double ry = ys[iy] - c.y + wy * grid.length(1);
          env += std::exp(-(rx * rx + ry * ry) / (2.0 * s2));
        }
      }
      val += std::polar(peak * env, c.kx * xs[ix] + c.ky * ys[iy]);
    }
    field.psi[idx] = val;
  }
  normalize_to(field, 3.0 * cfg.atom_number);

  // loss stripe in k_y around p3 = -p1, independent of k_x
  LossModel loss = make_loss(cfg, -k_sig, 1, grid);
  return SimState::create(std::move(field), {}, p, p.u2d, std::move(loss));
}

SimState build_scenario(const ScenarioConfig& cfg) {
  switch (cfg.variant) {
    case ScenarioVariant::Homogeneous1D:
      return build_homogeneous_1d(cfg);
    case ScenarioVariant::BoxAmplification1D:
      return build_box_1d(cfg);
    case ScenarioVariant::Collision2D:
      return build_collision_2d(cfg);
  }
  throw std::logic_error("unreachable");
}

ThreeModeParams three_mode_params_for(const ScenarioConfig& cfg) {
  const PhysicalParams p = cfg.physical();
  const double dk = 2.0 * M_PI / cfg.domain;
  const double u_d = p.u1d * dk / (2.0 * M_PI);
  const double gamma =
      cfg.loss_amplitude > 0.0 ? cfg.loss_amplitude : scenario_delta_e(cfg);
  ThreeModeParams par = ThreeModeParams::from_modes(
      cfg.k_pump, cfg.k_signal, cfg.k_idler(), p.mass, u_d,
      (1.0 - cfg.signal_fraction) * cfg.atom_number, gamma);
  return par;
}

}  // namespace nhwm
