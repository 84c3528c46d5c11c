#include "nhwm/wavefield.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <stdexcept>

namespace nhwm {

namespace {
// fftw plan creation/destruction is not thread safe (execution is)
std::mutex& plan_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

double WaveField::atom_number() const {
  double s = 0.0;
  for (const Complex& a : psi) s += std::norm(a);
  return s * grid.cell_volume();
}

bool WaveField::finite() const {
  for (const Complex& a : psi)
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) return false;
  return true;
}

struct SpectralTransform::Plans {
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;
  fftw_complex* buf = nullptr;
  std::size_t n = 0;
  ~Plans() {
    std::lock_guard<std::mutex> lock(plan_mutex());
    if (fwd) fftw_destroy_plan(fwd);
    if (bwd) fftw_destroy_plan(bwd);
    if (buf) fftw_free(buf);
  }
};

SpectralTransform::SpectralTransform(const Grid& g) : grid_(g) {
  plans_ = std::make_unique<Plans>();
  plans_->n = g.size();
  {
    std::lock_guard<std::mutex> lock(plan_mutex());
    plans_->buf = fftw_alloc_complex(plans_->n);
    if (!plans_->buf) throw std::bad_alloc();
    // FFTW_ESTIMATE keeps plan creation deterministic (no runtime timing)
    if (g.ndim() == 1) {
      plans_->fwd = fftw_plan_dft_1d(g.n(0), plans_->buf, plans_->buf,
                                     FFTW_FORWARD, FFTW_ESTIMATE);
      plans_->bwd = fftw_plan_dft_1d(g.n(0), plans_->buf, plans_->buf,
                                     FFTW_BACKWARD, FFTW_ESTIMATE);
    } else {
      plans_->fwd = fftw_plan_dft_2d(g.n(0), g.n(1), plans_->buf, plans_->buf,
                                     FFTW_FORWARD, FFTW_ESTIMATE);
      plans_->bwd = fftw_plan_dft_2d(g.n(0), g.n(1), plans_->buf, plans_->buf,
                                     FFTW_BACKWARD, FFTW_ESTIMATE);
    }
  }

  // continuum normalization: phi_j = dV/(2pi)^(d/2) e^{-i k_j.x0} F_j
  scale_fwd_ = grid_.cell_volume() / std::pow(2.0 * M_PI, 0.5 * grid_.ndim());
  scale_inv_ =
      grid_.cell_volume_k() / std::pow(2.0 * M_PI, 0.5 * grid_.ndim());

  const std::size_t total = grid_.size();
  phase_fwd_.resize(total);
  phase_inv_.resize(total);
  std::vector<std::vector<double>> ks;
  for (int d = 0; d < grid_.ndim(); ++d) ks.push_back(grid_.wavenumbers(d));
  const int ny = grid_.ndim() == 2 ? grid_.n(1) : 1;
  for (std::size_t idx = 0; idx < total; ++idx) {
    const int ix = static_cast<int>(idx) / ny;
    const int iy = static_cast<int>(idx) % ny;
    double kx0 = ks[0][ix] * (-0.5 * grid_.length(0));
    if (grid_.ndim() == 2) kx0 += ks[1][iy] * (-0.5 * grid_.length(1));
    phase_fwd_[idx] = std::polar(1.0, -kx0);
    phase_inv_[idx] = std::polar(1.0, kx0);
  }
}

SpectralTransform::~SpectralTransform() = default;

void SpectralTransform::raw_forward(ComplexArray& data) const {
  if (data.size() != plans_->n)
    throw std::invalid_argument("transform size mismatch");
  fftw_execute_dft(plans_->fwd, reinterpret_cast<fftw_complex*>(data.data()),
                   reinterpret_cast<fftw_complex*>(data.data()));
}

void SpectralTransform::raw_backward(ComplexArray& data) const {
  if (data.size() != plans_->n)
    throw std::invalid_argument("transform size mismatch");
  fftw_execute_dft(plans_->bwd, reinterpret_cast<fftw_complex*>(data.data()),
                   reinterpret_cast<fftw_complex*>(data.data()));
  const double inv_n = 1.0 / static_cast<double>(plans_->n);
  for (Complex& a : data) a *= inv_n;
}

ComplexArray SpectralTransform::forward(const ComplexArray& psi) const {
  ComplexArray phi = psi;
  raw_forward(phi);
  for (std::size_t i = 0; i < phi.size(); ++i)
    phi[i] *= scale_fwd_ * phase_fwd_[i];
  return phi;
}

ComplexArray SpectralTransform::inverse(const ComplexArray& phi) const {
  ComplexArray psi(phi.size());
  const double n = static_cast<double>(plans_->n);
  for (std::size_t i = 0; i < phi.size(); ++i)
    psi[i] = phi[i] * (scale_inv_ * n) * phase_inv_[i];
  raw_backward(psi);
  return psi;
}

ComplexArray to_momentum(const WaveField& field) {
  if (!field.finite())
    throw std::runtime_error("to_momentum: non-finite field amplitudes");
  SpectralTransform tr(field.grid);
  return tr.forward(field.psi);
}

WaveField from_momentum(const Grid& grid, const ComplexArray& phi) {
  SpectralTransform tr(grid);
  WaveField f(grid);
  f.psi = tr.inverse(phi);
  return f;
}

std::vector<double> momentum_density(const WaveField& field) {
  const ComplexArray phi = to_momentum(field);
  std::vector<double> d(phi.size());
  for (std::size_t i = 0; i < phi.size(); ++i) d[i] = std::norm(phi[i]);
  return d;
}

double signal_strength(const WaveField& field,
                       const std::array<double, 2>& k_center,
                       double half_width) {
  const Grid& g = field.grid;
  if (!(half_width > 0.0))
    throw std::invalid_argument("signal_strength: half_width must be > 0");
  for (int d = 0; d < g.ndim(); ++d) {
    if (std::abs(k_center[d]) + half_width > g.nyquist(d))
      throw std::invalid_argument(
          "signal_strength: band exceeds the Nyquist range");
  }
  const ComplexArray phi = to_momentum(field);
  const std::vector<double> kx = g.wavenumbers(0);
  const std::vector<double> ky =
      g.ndim() == 2 ? g.wavenumbers(1) : std::vector<double>{0.0};
  const int ny = g.ndim() == 2 ? g.n(1) : 1;
  const double w2 = half_width * half_width;
  double s = 0.0;
  for (std::size_t idx = 0; idx < phi.size(); ++idx) {
    const int ix = static_cast<int>(idx) / ny;
    const int iy = static_cast<int>(idx) % ny;
    const double dkx = kx[ix] - k_center[0];
    const double dky = g.ndim() == 2 ? ky[iy] - k_center[1] : 0.0;
    if (dkx * dkx + dky * dky <= w2) s += std::norm(phi[idx]);
  }
  return s * g.cell_volume_k();
}

double signal_strength(const WaveField& field, double k_center,
                       double half_width) {
  return signal_strength(field, {k_center, 0.0}, half_width);
}

}  // namespace nhwm
