#pragma once

#include <array>
#include <cstddef>
#include <vector>

namespace nhwm {

// Periodic 1D/2D lattice with its conjugate wavenumber lattice.
// Positions run over [-L/2, L/2) with spacing dx = L/n; wavenumbers are
// FFT-ordered, k_j = dk*j for j < n/2 and dk*(j-n) otherwise, dk = 2*pi/L.
// Grid sizes are powers of two.  Row-major storage in 2D (x outer, y inner).
class Grid {
 public:
  static Grid make_1d(int n, double length);
  static Grid make_2d(int nx, int ny, double lx, double ly);

  int ndim() const { return ndim_; }
  int n(int d) const { return n_[d]; }
  double length(int d) const { return length_[d]; }
  double dx(int d) const { return length_[d] / n_[d]; }
  double dk(int d) const;
  std::size_t size() const;
  // product of dx over dimensions (position-space volume element)
  double cell_volume() const;
  // product of dk over dimensions
  double cell_volume_k() const;

  std::vector<double> positions(int d) const;
  std::vector<double> wavenumbers(int d) const;
  double nyquist(int d) const;

  bool operator==(const Grid& other) const;

 private:
  Grid(int ndim, std::array<int, 2> n, std::array<double, 2> length);
  int ndim_;
  std::array<int, 2> n_;
  std::array<double, 2> length_;
};

}  // namespace nhwm
