#pragma once

#include <array>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "nhwm/loss.hpp"
#include "nhwm/series.hpp"
#include "nhwm/units.hpp"
#include "nhwm/wavefield.hpp"

namespace nhwm {

using WarningSink = std::function<void(const std::string&)>;
WarningSink stderr_warning_sink();

// Full simulation state: condensate field, static trap potential, atom-loss
// bookkeeping.  N(t) + n_lost stays equal to n_initial (the loss updates use
// the exact norm decrease of the momentum half-steps).
struct SimState {
  WaveField field;
  double t = 0.0;
  double n_initial = 0.0;
  double n_lost = 0.0;
  std::vector<double> potential;  // hbar/ms, grid layout; empty means V = 0
  PhysicalParams params;
  double interaction = 0.0;  // reduced U for the grid dimensionality
  LossModel loss;

  static SimState create(WaveField field, std::vector<double> potential,
                         const PhysicalParams& params, double interaction,
                         LossModel loss, double t0 = 0.0);
};

struct SolverOptions {
  double dt = 1e-3;  // ms; negative allowed for unitary (lossless) reversal
  bool dealias = false;             // 2/3-rule mask on the nonlinear step
  double nonlinear_phase_warn = 0.5;  // rad per step
  WarningSink warn = stderr_warning_sink();
};

struct RecordOptions {
  double stride = 0.1;  // ms between recorded rows
  // band-integrated signal strength column "p_s"
  std::optional<std::array<double, 2>> band_center;
  double band_half_width = 1.0;
  bool record_energy = false;
  // extra named columns evaluated at record time
  std::vector<std::pair<std::string, std::function<double(const SimState&)>>>
      extras;
  std::function<void(const SimState&)> on_record;  // e.g. snapshot writer
};

// Strang-split propagator for the GPE with momentum-diagonal loss and light
// shift: half momentum step exp(-i[k^2/(2m) + dE(k)]dt/2 - gamma(k)dt/2),
// full position step exp(-i[V + U|psi|^2]dt), half momentum step.  The loss
// factor participates only from the model's switch-on time.
class GpeSolver {
 public:
  GpeSolver(SimState state, SolverOptions options = {});
  ~GpeSolver();
  GpeSolver(const GpeSolver&) = delete;
  GpeSolver& operator=(const GpeSolver&) = delete;

  const SimState& state() const { return state_; }
  const SolverOptions& options() const { return options_; }
  long steps_taken() const { return steps_; }

  void step();

  // Advances to t_end (rounded to whole steps), recording observables every
  // stride.  Records the initial row; t_end == t records exactly that row.
  SeriesTable evolve(double t_end, const RecordOptions& rec = {});

  double atom_number() const { return state_.field.atom_number(); }
  // E = sum (k^2/2m)|phi|^2 dk + sum (V|psi|^2 + U/2 |psi|^4) dx
  double total_energy() const;
  // 2 * sum gamma(k) |phi(k)|^2 dk, the instantaneous loss flux
  double loss_flux() const;
  const std::vector<double>& gamma_on_grid() const { return gamma_k_; }
  const std::vector<double>& delta_e_on_grid() const { return delta_e_k_; }

 private:
  void apply_momentum_half(double t_half_start);
  double momentum_norm() const;  // atoms, from the raw spectrum buffer

  SimState state_;
  SolverOptions options_;
  std::unique_ptr<SpectralTransform> transform_;
  std::vector<double> gamma_k_;
  std::vector<double> delta_e_k_;
  ComplexArray factor_plain_;  // kinetic-only half-step multiplier
  ComplexArray factor_loss_;   // kinetic + light shift + loss
  std::vector<bool> dealias_mask_;
  double knorm_scale_ = 0.0;
  long steps_ = 0;
  bool warned_phase_ = false;
};

// Energy functional evaluated standalone (own transform).
double total_energy(const SimState& state);

// Residual of dN/dt = -2 sum gamma |phi|^2 dk at recorded row `index`,
// using centered differences of the "n" column against the "loss_flux"
// column: |dN/dt + flux| / flux.
double loss_rate_residual(const SeriesTable& series, std::size_t index);
// maximum residual over interior rows with meaningful flux
double max_loss_rate_residual(const SeriesTable& series);

}  // namespace nhwm
