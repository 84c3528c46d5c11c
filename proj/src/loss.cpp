#include "nhwm/loss.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace nhwm {

LossModel LossModel::none() { return LossModel{}; }

LossModel LossModel::gaussian(const Gaussian& g, double switch_on_time) {
  if (g.amplitude < 0.0)
    throw std::invalid_argument("loss: Gaussian amplitude must be >= 0");
  if (!(g.sigma > 0.0))
    throw std::invalid_argument("loss: Gaussian width must be positive");
  LossModel m;
  m.kind_ = Kind::Gaussian;
  m.gaussian_ = g;
  m.switch_on_time_ = switch_on_time;
  return m;
}

LossModel LossModel::tabulated(const LossSpectrumTable& table, int axis,
                               double switch_on_time) {
  if (table.k.size() < 2 || table.k.size() != table.gamma.size() ||
      table.k.size() != table.delta_e.size())
    throw std::invalid_argument("loss: malformed spectrum table");
  for (double g : table.gamma)
    if (!(g >= 0.0) || !std::isfinite(g))
      throw std::invalid_argument("loss: table gamma must be finite and >= 0");
  for (double d : table.delta_e)
    if (!std::isfinite(d))
      throw std::invalid_argument("loss: table deltaE must be finite");
  LossModel m;
  m.kind_ = Kind::Tabulated;
  m.table_ = table;
  m.axis_ = axis;
  m.switch_on_time_ = switch_on_time;
  return m;
}

LossModel LossModel::eit(const LambdaParams& params, int axis,
                         double switch_on_time, double delta_e_scale) {
  params.validate();
  LossModel m;
  m.kind_ = Kind::Eit;
  m.lambda_ = params;
  m.axis_ = axis;
  m.switch_on_time_ = switch_on_time;
  m.delta_e_scale_ = delta_e_scale;
  return m;
}

void LossModel::sample(const Grid& grid, double mass,
                       std::vector<double>& gamma_k,
                       std::vector<double>& delta_e_k) const {
  const std::size_t total = grid.size();
  gamma_k.assign(total, 0.0);
  delta_e_k.assign(total, 0.0);
  if (kind_ == Kind::None) return;

  const int ny = grid.ndim() == 2 ? grid.n(1) : 1;
  const std::vector<double> kx = grid.wavenumbers(0);
  const std::vector<double> ky =
      grid.ndim() == 2 ? grid.wavenumbers(1) : std::vector<double>{0.0};

  if (kind_ == Kind::Gaussian) {
    const Gaussian& g = *gaussian_;
    const double inv2s2 = 1.0 / (2.0 * g.sigma * g.sigma);
    for (std::size_t idx = 0; idx < total; ++idx) {
      const int ix = static_cast<int>(idx) / ny;
      const int iy = static_cast<int>(idx) % ny;
      double arg = 0.0;
      if (g.axis[0]) {
        const double d = kx[ix] - g.k_center[0];
        arg += d * d;
      }
      if (grid.ndim() == 2 && g.axis[1]) {
        const double d = ky[iy] - g.k_center[1];
        arg += d * d;
      }
      gamma_k[idx] = g.amplitude * std::exp(-arg * inv2s2);
    }
    return;
  }

  const LossSpectrumTable tab = table(grid, mass);
  for (std::size_t idx = 0; idx < total; ++idx) {
    const int ix = static_cast<int>(idx) / ny;
    const int iy = static_cast<int>(idx) % ny;
    const double ka = axis_ == 0 ? kx[ix] : ky[iy];
    gamma_k[idx] = std::max(tab.interp_gamma(ka), 0.0);
    delta_e_k[idx] = delta_e_scale_ * tab.interp_delta_e(ka);
  }
}

LossSpectrumTable LossModel::table(const Grid& grid, double mass) const {
  if (kind_ == Kind::Tabulated) return *table_;
  if (kind_ == Kind::Eit) {
    // base sampling: every grid wavenumber along the loss axis, sorted;
    // adaptive refinement inside loss_spectrum resolves the narrow feature
    std::vector<double> ks = grid.wavenumbers(axis_);
    std::sort(ks.begin(), ks.end());
    return loss_spectrum(*lambda_, ks, mass);
  }
  if (kind_ == Kind::Gaussian) {
    const Gaussian& g = *gaussian_;
    int axis = 0;
    for (int d = 0; d < grid.ndim(); ++d)
      if (g.axis[d]) axis = d;
    std::vector<double> ks = grid.wavenumbers(axis);
    std::sort(ks.begin(), ks.end());
    LossSpectrumTable tab;
    tab.k = ks;
    tab.gamma.resize(ks.size());
    tab.delta_e.assign(ks.size(), 0.0);
    const double inv2s2 = 1.0 / (2.0 * g.sigma * g.sigma);
    for (std::size_t i = 0; i < ks.size(); ++i) {
      const double d = ks[i] - g.k_center[axis];
      tab.gamma[i] = g.amplitude * std::exp(-d * d * inv2s2);
    }
    return tab;
  }
  throw std::logic_error("loss: no spectrum for the None variant");
}

}  // namespace nhwm
