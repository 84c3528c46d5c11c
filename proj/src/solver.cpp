#include "nhwm/solver.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "nhwm/errors.hpp"

namespace nhwm {

WarningSink stderr_warning_sink() {
  return [](const std::string& msg) {
    std::fprintf(stderr, "warning: %s\n", msg.c_str());
  };
}

SimState SimState::create(WaveField field, std::vector<double> potential,
                          const PhysicalParams& params, double interaction,
                          LossModel loss, double t0) {
  if (!potential.empty() && potential.size() != field.grid.size())
    throw std::invalid_argument("potential does not match the grid");
  SimState s{std::move(field), t0, 0.0, 0.0, std::move(potential), params,
             interaction, std::move(loss)};
  s.n_initial = s.field.atom_number();
  return s;
}

GpeSolver::GpeSolver(SimState state, SolverOptions options)
    : state_(std::move(state)), options_(options) {
  if (options_.dt == 0.0) throw std::invalid_argument("solver: dt must be nonzero");
  if (options_.dt < 0.0 && state_.loss.active())
    throw std::invalid_argument("solver: reverse stepping requires no loss");
  if (!state_.field.finite())
    throw NumericalError("solver: non-finite initial amplitudes");

  const Grid& g = state_.field.grid;
  transform_ = std::make_unique<SpectralTransform>(g);
  state_.loss.sample(g, state_.params.mass, gamma_k_, delta_e_k_);
  knorm_scale_ = g.cell_volume() / static_cast<double>(g.size());

  const std::size_t total = g.size();
  factor_plain_.resize(total);
  factor_loss_.resize(total);
  const int ny = g.ndim() == 2 ? g.n(1) : 1;
  const std::vector<double> kx = g.wavenumbers(0);
  const std::vector<double> ky =
      g.ndim() == 2 ? g.wavenumbers(1) : std::vector<double>{0.0};
  const double half_dt = 0.5 * options_.dt;
  const double inv2m = 1.0 / (2.0 * state_.params.mass);
  for (std::size_t idx = 0; idx < total; ++idx) {
    const int ix = static_cast<int>(idx) / ny;
    const int iy = static_cast<int>(idx) % ny;
    double k2 = kx[ix] * kx[ix];
    if (g.ndim() == 2) k2 += ky[iy] * ky[iy];
    const double kinetic = k2 * inv2m;
    factor_plain_[idx] = std::polar(1.0, -kinetic * half_dt);
    factor_loss_[idx] = std::polar(std::exp(-gamma_k_[idx] * half_dt),
                                   -(kinetic + delta_e_k_[idx]) * half_dt);
  }

  if (options_.dealias) {
    dealias_mask_.assign(total, false);
    for (std::size_t idx = 0; idx < total; ++idx) {
      const int ix = static_cast<int>(idx) / ny;
      const int iy = static_cast<int>(idx) % ny;
      bool masked = std::abs(kx[ix]) > (2.0 / 3.0) * g.nyquist(0);
      if (g.ndim() == 2)
        masked = masked || std::abs(ky[iy]) > (2.0 / 3.0) * g.nyquist(1);
      dealias_mask_[idx] = masked;
    }
  }
}

GpeSolver::~GpeSolver() = default;

double GpeSolver::momentum_norm() const {
  double s = 0.0;
  for (const Complex& a : state_.field.psi) s += std::norm(a);
  return s * knorm_scale_;
}

void GpeSolver::apply_momentum_half(double t_half_start) {
  ComplexArray& psi = state_.field.psi;  // spectrum while inside this call
  const bool loss_on =
      state_.loss.active() &&
      t_half_start >= state_.loss.switch_on_time() - 1e-12;

  if (!dealias_mask_.empty()) {
    // masked-bin norm goes into the loss ledger so bookkeeping stays closed
    double removed = 0.0;
    for (std::size_t i = 0; i < psi.size(); ++i) {
      if (dealias_mask_[i]) {
        removed += std::norm(psi[i]);
        psi[i] = Complex{};
      }
    }
    state_.n_lost += removed * knorm_scale_;
  }

  const ComplexArray& factor = loss_on ? factor_loss_ : factor_plain_;
  if (loss_on) {
    const double before = momentum_norm();
    for (std::size_t i = 0; i < psi.size(); ++i) psi[i] *= factor[i];
    state_.n_lost += before - momentum_norm();
  } else {
    for (std::size_t i = 0; i < psi.size(); ++i) psi[i] *= factor[i];
  }
}

void GpeSolver::step() {
  ComplexArray& psi = state_.field.psi;
  const double dt = options_.dt;
  const double t0 = state_.t;

  transform_->raw_forward(psi);
  apply_momentum_half(t0);
  transform_->raw_backward(psi);

  const double u = state_.interaction;
  const bool has_v = !state_.potential.empty();
  double max_density = 0.0;
  for (std::size_t i = 0; i < psi.size(); ++i) {
    const double dens = std::norm(psi[i]);
    if (dens > max_density) max_density = dens;
    const double phase = -(u * dens + (has_v ? state_.potential[i] : 0.0)) * dt;
    psi[i] *= std::polar(1.0, phase);
  }
  if (!warned_phase_ && options_.warn &&
      std::abs(u) * max_density * std::abs(dt) > options_.nonlinear_phase_warn) {
    warned_phase_ = true;
    options_.warn("nonlinear phase per step exceeds " +
                  std::to_string(options_.nonlinear_phase_warn) +
                  " rad; consider a smaller dt");
  }

  transform_->raw_forward(psi);
  apply_momentum_half(t0 + 0.5 * dt);
  const double n_after = momentum_norm();
  transform_->raw_backward(psi);

  ++steps_;
  state_.t = t0 + dt;
  if (!std::isfinite(n_after))
    throw NumericalError("solver: non-finite amplitudes after step " +
                         std::to_string(steps_));
}

SeriesTable GpeSolver::evolve(double t_end, const RecordOptions& rec) {
  const double dt = options_.dt;
  const double span = t_end - state_.t;
  if (span * dt < 0.0)
    throw std::invalid_argument("evolve: t_end lies behind the step direction");
  const long nsteps = std::lround(span / dt);
  const long stride =
      std::max<long>(1, std::lround(rec.stride / std::abs(dt)));

  SeriesTable table;
  table.add_column("t");
  table.add_column("n");
  table.add_column("n_lost");
  const bool with_band = rec.band_center.has_value();
  if (with_band) table.add_column("p_s");
  const bool with_flux = state_.loss.active();
  if (with_flux) table.add_column("loss_flux");
  if (rec.record_energy) table.add_column("energy");
  for (const auto& [name, fn] : rec.extras) table.add_column(name);

  auto record = [&]() {
    std::size_t c = 0;
    table.columns[c++].push_back(state_.t);
    table.columns[c++].push_back(atom_number());
    table.columns[c++].push_back(state_.n_lost);
    if (with_band)
      table.columns[c++].push_back(signal_strength(
          state_.field, *rec.band_center, rec.band_half_width));
    if (with_flux) table.columns[c++].push_back(loss_flux());
    if (rec.record_energy) table.columns[c++].push_back(total_energy());
    for (const auto& [name, fn] : rec.extras)
      table.columns[c++].push_back(fn(state_));
    if (rec.on_record) rec.on_record(state_);
  };

  record();
  for (long s = 0; s < nsteps; ++s) {
    step();
    if ((s + 1) % stride == 0 || s + 1 == nsteps) record();
  }
  return table;
}

double GpeSolver::total_energy() const {
  const ComplexArray phi = transform_->forward(state_.field.psi);
  const Grid& g = state_.field.grid;
  const int ny = g.ndim() == 2 ? g.n(1) : 1;
  const std::vector<double> kx = g.wavenumbers(0);
  const std::vector<double> ky =
      g.ndim() == 2 ? g.wavenumbers(1) : std::vector<double>{0.0};
  const double inv2m = 1.0 / (2.0 * state_.params.mass);
  double kinetic = 0.0;
  for (std::size_t idx = 0; idx < phi.size(); ++idx) {
    const int ix = static_cast<int>(idx) / ny;
    const int iy = static_cast<int>(idx) % ny;
    double k2 = kx[ix] * kx[ix];
    if (g.ndim() == 2) k2 += ky[iy] * ky[iy];
    kinetic += k2 * inv2m * std::norm(phi[idx]);
  }
  kinetic *= g.cell_volume_k();

  double pos = 0.0;
  const bool has_v = !state_.potential.empty();
  for (std::size_t i = 0; i < state_.field.psi.size(); ++i) {
    const double dens = std::norm(state_.field.psi[i]);
    pos += (has_v ? state_.potential[i] * dens : 0.0) +
           0.5 * state_.interaction * dens * dens;
  }
  pos *= g.cell_volume();
  return kinetic + pos;
}

double GpeSolver::loss_flux() const {
  if (!state_.loss.active()) return 0.0;
  ComplexArray spec = state_.field.psi;
  transform_->raw_forward(spec);
  double s = 0.0;
  for (std::size_t i = 0; i < spec.size(); ++i)
    s += gamma_k_[i] * std::norm(spec[i]);
  return 2.0 * s * knorm_scale_;
}

double total_energy(const SimState& state) {
  GpeSolver solver(state, SolverOptions{});
  return solver.total_energy();
}

double loss_rate_residual(const SeriesTable& series, std::size_t index) {
  const auto& t = series.column("t");
  const auto& n = series.column("n");
  const auto& flux = series.column("loss_flux");
  if (index == 0 || index + 1 >= t.size())
    throw std::invalid_argument("loss_rate_residual: interior index required");
  const double dndt =
      (n[index + 1] - n[index - 1]) / (t[index + 1] - t[index - 1]);
  const double f = flux[index];
  if (f <= 0.0) return std::abs(dndt) > 0.0 ? 0.0 : 0.0;
  return std::abs(dndt + f) / f;
}

double max_loss_rate_residual(const SeriesTable& series) {
  const auto& flux = series.column("loss_flux");
  double peak_flux = 0.0;
  for (double f : flux) peak_flux = std::max(peak_flux, f);
  double worst = 0.0;
  for (std::size_t i = 1; i + 1 < series.rows(); ++i) {
    if (flux[i] < 1e-3 * peak_flux) continue;  // avoid 0/0 at startup
    worst = std::max(worst, loss_rate_residual(series, i));
  }
  return worst;
}

}  // namespace nhwm
