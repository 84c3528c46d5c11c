#pragma once

#include <array>
#include <optional>
#include <string>

#include "nhwm/solver.hpp"
#include "nhwm/three_mode.hpp"

namespace nhwm {

// Builders for the three standard experiments: homogeneous 1D verification,
// 1D box-trap signal amplification, and the 2D three-condensate collision.
// Builders are deterministic: identical configuration gives a bit-identical
// initial state.

enum class ScenarioVariant { Homogeneous1D, BoxAmplification1D, Collision2D };
enum class LossSelection { None, Gaussian, Eit, Tabulated };

struct ScenarioConfig {
  ScenarioVariant variant = ScenarioVariant::BoxAmplification1D;

  // physics ([physics] section)
  double mass_kg = kRb87MassKg;
  double a_s_m = kRb87ScatteringLengthM;
  double omega_perp_hz = 100.0;

  // geometry/grid
  int n = 4096;
  int n_y = 256;            // collision2d only
  double domain = 800.0;    // um
  double domain_y = 160.0;  // um, collision2d
  double atom_number = 6.4e4;

  // box trap (box1d)
  double box_length = 640.0;  // um
  double wall_width = 2.0;    // um
  double wall_height = 50.0;  // hbar/ms

  // signal imprint / seed
  double k_signal = 2.7;          // um^-1
  double signal_sigma = 400.0;    // um^2, variance of the imprint envelope
  double signal_x0 = -150.0;      // um
  double signal_fraction = 5e-3;  // imprint (or seed) norm as fraction of N
  double k_pump = 0.0;            // um^-1, homogeneous pump momentum

  // collision2d geometry
  double collision_time = 60.0;    // ms until the clouds meet at the origin
  double cloud_sigma = 15.0;       // um
  double speed_pump = 0.4;         // um/ms, |v| of the counterpropagating pair
  double speed_signal = 0.66;      // um/ms, |v| of the seed cloud

  // loss selection
  LossSelection loss = LossSelection::None;
  double loss_t_on = 0.0;
  // Gaussian loss; amplitude <= 0 means "gain-optimal", i.e. deltaE/hbar
  double loss_amplitude = -1.0;       // 1/ms
  double loss_sigma = 0.3;            // um^-1
  std::optional<double> loss_center;  // um^-1; default = idler wavenumber
  std::optional<LambdaParams> lambda;          // EIT loss
  double delta_e_scale = 1.0;
  std::optional<LossSpectrumTable> loss_table;  // tabulated loss

  // analysis band
  double band_half_width = 1.0;  // um^-1 around the signal wavenumber

  PhysicalParams physical() const;
  double omega_perp() const;  // rad/ms
  // idler wavenumber of the degenerate process, 2*k0 - ks
  double k_idler() const { return 2.0 * k_pump - k_signal; }
};

struct ImagTimeOptions {
  double dtau = 0.01;         // ms of imaginary time per iteration
  double dtau_final = 6.25e-4;  // last annealing stage (halved down to this)
  double energy_tol = 1e-10;  // relative energy change per step
  // relative field change per step; energy alone is blind to state errors
  // below its square root.  0 disables.
  double field_tol = 1e-9;
  long max_iterations = 400000;
};

// Ground state by normalized gradient flow: propagate in imaginary time,
// renormalizing to n_atoms each step, until the energy change per step is
// below tolerance.  The step is halved stage by stage down to dtau_final to
// shrink the splitting bias of the fixed point.  Returns a real nonnegative
// field (global phase fixed).
WaveField ground_state_imaginary_time(const Grid& grid,
                                      const std::vector<double>& potential,
                                      const PhysicalParams& params,
                                      double interaction, double n_atoms,
                                      const ImagTimeOptions& opts = {});

// Additive Gaussian wave-packet imprint
//   psi(x) += amplitude * exp(-(x-x0)^2/(2*sigma_var) + i*ks*x),
// sigma_var carrying units of length^2.  Warns through `warn` when the added
// norm exceeds 5% of the atom number (undepleted-signal regime violated).
void imprint_signal(WaveField& field, double amplitude, double sigma_var,
                    double x0, double ks,
                    const WarningSink& warn = stderr_warning_sink());

// amplitude that makes the imprint norm equal fraction*n_atoms on vacuum
double imprint_amplitude_for_fraction(double fraction, double n_atoms,
                                      double sigma_var);

// Plane-wave pump with a seeded signal mode on a periodic domain,
//   psi = sqrt(N/L) (sqrt(1-A_s) e^{i k0 x} + sqrt(A_s) e^{i ks x}),
// loss centered on the idler 2*k0 - ks.  k0, ks must sit on the grid.
SimState build_homogeneous_1d(const ScenarioConfig& cfg);

// Smooth-wall box trap, imaginary-time ground state, imprinted signal,
// loss centered on -ks.
SimState build_box_1d(const ScenarioConfig& cfg);

// Three Gaussian clouds converging on the origin; stripe loss in k_y around
// the fourth (empty) momentum of the pair process p0 + p2 -> p1 + p3.
SimState build_collision_2d(const ScenarioConfig& cfg);

SimState build_scenario(const ScenarioConfig& cfg);

// Three-mode parameters matching a homogeneous scenario (mode populations
// and the discrete interaction u_d = U*dk/(2*pi)).
ThreeModeParams three_mode_params_for(const ScenarioConfig& cfg);

// deltaE = Es + Ei - 2*E0 of the configured process, hbar/ms
double scenario_delta_e(const ScenarioConfig& cfg);

}  // namespace nhwm
