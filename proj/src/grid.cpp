#include "nhwm/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace nhwm {

namespace {
bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }
}  // namespace

Grid::Grid(int ndim, std::array<int, 2> n, std::array<double, 2> length)
    : ndim_(ndim), n_(n), length_(length) {
  for (int d = 0; d < ndim_; ++d) {
    if (!is_power_of_two(n_[d]))
      throw std::invalid_argument("grid size must be a power of two");
    if (!(length_[d] > 0.0))
      throw std::invalid_argument("grid length must be positive");
  }
}

Grid Grid::make_1d(int n, double length) {
  return Grid(1, {n, 1}, {length, 0.0});
}

Grid Grid::make_2d(int nx, int ny, double lx, double ly) {
  return Grid(2, {nx, ny}, {lx, ly});
}

double Grid::dk(int d) const { return 2.0 * M_PI / length_[d]; }

std::size_t Grid::size() const {
  std::size_t s = 1;
  for (int d = 0; d < ndim_; ++d) s *= static_cast<std::size_t>(n_[d]);
  return s;
}

double Grid::cell_volume() const {
  double v = 1.0;
  for (int d = 0; d < ndim_; ++d) v *= dx(d);
  return v;
}

double Grid::cell_volume_k() const {
  double v = 1.0;
  for (int d = 0; d < ndim_; ++d) v *= dk(d);
  return v;
}

std::vector<double> Grid::positions(int d) const {
  std::vector<double> x(n_[d]);
  const double step = dx(d);
  for (int j = 0; j < n_[d]; ++j) x[j] = -0.5 * length_[d] + j * step;
  return x;
}

std::vector<double> Grid::wavenumbers(int d) const {
  std::vector<double> k(n_[d]);
  const double step = dk(d);
  for (int j = 0; j < n_[d]; ++j)
    k[j] = (j < n_[d] / 2) ? step * j : step * (j - n_[d]);
  return k;
}

double Grid::nyquist(int d) const { return dk(d) * (n_[d] / 2); }

bool Grid::operator==(const Grid& other) const {
  if (ndim_ != other.ndim_) return false;
  for (int d = 0; d < ndim_; ++d)
    if (n_[d] != other.n_[d] || length_[d] != other.length_[d]) return false;
  return true;
}

}  // namespace nhwm
