#pragma once

#include <complex>
#include <memory>
#include <vector>

#include "nhwm/grid.hpp"

namespace nhwm {

using Complex = std::complex<double>;
using ComplexArray = std::vector<Complex>;

// Condensate amplitude on a Grid, stored in position space.
// Atom number N = sum |psi|^2 * dV.
struct WaveField {
  explicit WaveField(const Grid& g) : grid(g), psi(g.size(), Complex{}) {}
  Grid grid;
  ComplexArray psi;

  double atom_number() const;
  bool finite() const;
};

// Forward/inverse transforms between position amplitudes psi(x) and the
// continuum-normalized momentum amplitudes phi(k), with the convention
//   psi(x) = (2*pi)^(-d/2) Integral dk e^{i k.x} phi(k),
// discretized so that sum |phi|^2 * dk == sum |psi|^2 * dx exactly.
// Plans are created once per instance (FFTW, deterministic ESTIMATE mode).
class SpectralTransform {
 public:
  explicit SpectralTransform(const Grid& g);
  ~SpectralTransform();
  SpectralTransform(const SpectralTransform&) = delete;
  SpectralTransform& operator=(const SpectralTransform&) = delete;

  const Grid& grid() const { return grid_; }

  // continuum-normalized phi(k), FFT-ordered
  ComplexArray forward(const ComplexArray& psi) const;
  ComplexArray inverse(const ComplexArray& phi) const;

  // raw unnormalized DFT pair used by the propagator hot loop; backward
  // includes the 1/N normalization so backward(forward(x)) == x
  void raw_forward(ComplexArray& data) const;
  void raw_backward(ComplexArray& data) const;

 private:
  Grid grid_;
  struct Plans;
  std::unique_ptr<Plans> plans_;
  ComplexArray phase_fwd_;  // exp(-i k_j x0) factors, flattened over the grid
  ComplexArray phase_inv_;
  double scale_fwd_;
  double scale_inv_;
};

ComplexArray to_momentum(const WaveField& field);
WaveField from_momentum(const Grid& grid, const ComplexArray& phi);

// |phi(k)|^2 on the FFT-ordered k lattice; integrates to N
std::vector<double> momentum_density(const WaveField& field);

// Atoms within |k - k_center| <= half_width of the momentum density
// (interval in 1D, disk in 2D).  Rejects bands beyond the Nyquist range.
double signal_strength(const WaveField& field,
                       const std::array<double, 2>& k_center,
                       double half_width);
double signal_strength(const WaveField& field, double k_center,
                       double half_width);

}  // namespace nhwm
