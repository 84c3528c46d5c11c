#include <doctest.h>

#include <cmath>
#include <complex>

#include "nhwm/wavefield.hpp"

using namespace nhwm;

TEST_CASE("wavenumber lattice") {
  const Grid g = Grid::make_1d(8, 2.0 * M_PI);
  const std::vector<double> k = g.wavenumbers(0);
  const std::vector<double> expect = {0, 1, 2, 3, -4, -3, -2, -1};
  REQUIRE(k.size() == 8);
  for (int i = 0; i < 8; ++i) CHECK(k[i] == doctest::Approx(expect[i]));
  CHECK(g.dx(0) * g.dk(0) * g.n(0) == doctest::Approx(2.0 * M_PI).epsilon(1e-13));
}

TEST_CASE("dk for the box-experiment domain") {
  const Grid g = Grid::make_1d(4096, 640.0);
  CHECK(g.dk(0) == doctest::Approx(2.0 * M_PI / 640.0).epsilon(1e-14));
  CHECK(g.dk(0) == doctest::Approx(9.8175e-3).epsilon(1e-4));
}

TEST_CASE("2D wavenumbers are independent per dimension") {
  const Grid g = Grid::make_2d(8, 16, 4.0, 8.0);
  CHECK(g.wavenumbers(0).size() == 8);
  CHECK(g.wavenumbers(1).size() == 16);
  CHECK(g.dk(0) == doctest::Approx(2.0 * M_PI / 4.0));
  CHECK(g.dk(1) == doctest::Approx(2.0 * M_PI / 8.0));
}

TEST_CASE("grid validation") {
  CHECK_THROWS(Grid::make_1d(100, 1.0));  // not a power of two
  CHECK_THROWS(Grid::make_1d(64, -1.0));
}

TEST_CASE("plane wave transforms to a single bin") {
  const Grid g = Grid::make_1d(256, 40.0);
  const double k0 = 16 * g.dk(0);
  WaveField f(g);
  const std::vector<double> x = g.positions(0);
  for (int i = 0; i < g.n(0); ++i)
    f.psi[i] = std::polar(2.0, k0 * x[i]);

  const ComplexArray phi = to_momentum(f);
  const std::vector<double> k = g.wavenumbers(0);
  double peak = 0.0;
  int peak_idx = -1;
  for (std::size_t i = 0; i < phi.size(); ++i) {
    if (std::abs(phi[i]) > peak) {
      peak = std::abs(phi[i]);
      peak_idx = static_cast<int>(i);
    }
  }
  CHECK(k[peak_idx] == doctest::Approx(k0).epsilon(1e-12));
  for (std::size_t i = 0; i < phi.size(); ++i) {
    if (static_cast<int>(i) != peak_idx) CHECK(std::abs(phi[i]) < 1e-12 * peak);
  }
  // all atoms in one bin: |phi|^2 dk == N
  CHECK(peak * peak * g.dk(0) ==
        doctest::Approx(f.atom_number()).epsilon(1e-12));
}

TEST_CASE("transform round trip is the identity") {
  const Grid g = Grid::make_1d(128, 17.0);
  WaveField f(g);
  const std::vector<double> x = g.positions(0);
  for (int i = 0; i < g.n(0); ++i)
    f.psi[i] = Complex(std::sin(0.7 * x[i]), std::cos(1.3 * x[i] * x[i]));

  const WaveField back = from_momentum(g, to_momentum(f));
  for (std::size_t i = 0; i < f.psi.size(); ++i)
    CHECK(std::abs(back.psi[i] - f.psi[i]) < 1e-12);
}

TEST_CASE("Gaussian transforms to the analytic Gaussian") {
  // exp(-x^2/(2 s^2)) -> s exp(-k^2 s^2/2) under the (2pi)^(-1/2) convention
  const Grid g = Grid::make_1d(1024, 80.0);
  const double s = 1.7;
  WaveField f(g);
  const std::vector<double> x = g.positions(0);
  for (int i = 0; i < g.n(0); ++i)
    f.psi[i] = std::exp(-x[i] * x[i] / (2.0 * s * s));

  const ComplexArray phi = to_momentum(f);
  const std::vector<double> k = g.wavenumbers(0);
  for (std::size_t i = 0; i < phi.size(); ++i) {
    const double expect = s * std::exp(-k[i] * k[i] * s * s / 2.0);
    CHECK(std::abs(phi[i] - expect) < 1e-8);
  }
}

TEST_CASE("Parseval holds for 1D and 2D") {
  const Grid g1 = Grid::make_1d(256, 31.0);
  WaveField f1(g1);
  const std::vector<double> x = g1.positions(0);
  for (int i = 0; i < g1.n(0); ++i)
    f1.psi[i] = Complex(std::exp(-0.01 * x[i] * x[i]), 0.3 * std::sin(x[i]));
  const ComplexArray phi1 = to_momentum(f1);
  double nk = 0.0;
  for (const Complex& a : phi1) nk += std::norm(a);
  nk *= g1.cell_volume_k();
  CHECK(nk == doctest::Approx(f1.atom_number()).epsilon(1e-12));

  const Grid g2 = Grid::make_2d(32, 64, 11.0, 23.0);
  WaveField f2(g2);
  for (std::size_t i = 0; i < f2.psi.size(); ++i)
    f2.psi[i] = Complex(std::cos(0.1 * i), std::sin(0.02 * i));
  const ComplexArray phi2 = to_momentum(f2);
  nk = 0.0;
  for (const Complex& a : phi2) nk += std::norm(a);
  nk *= g2.cell_volume_k();
  CHECK(nk == doctest::Approx(f2.atom_number()).epsilon(1e-12));
}

TEST_CASE("transform linearity and Hermitian symmetry") {
  const Grid g = Grid::make_1d(128, 9.0);
  WaveField f(g), h(g);
  const std::vector<double> x = g.positions(0);
  for (int i = 0; i < g.n(0); ++i) {
    f.psi[i] = Complex(std::sin(x[i]), std::cos(2.0 * x[i]));
    h.psi[i] = Complex(x[i] / 9.0, std::exp(-x[i] * x[i]));
  }
  const Complex alpha{0.3, -1.1}, beta{-2.0, 0.7};
  WaveField combo(g);
  for (int i = 0; i < g.n(0); ++i)
    combo.psi[i] = alpha * f.psi[i] + beta * h.psi[i];
  const ComplexArray pf = to_momentum(f), ph = to_momentum(h),
                     pc = to_momentum(combo);
  for (std::size_t i = 0; i < pc.size(); ++i)
    CHECK(std::abs(pc[i] - (alpha * pf[i] + beta * ph[i])) < 1e-12);

  // real field: phi(-k) == conj(phi(k)) bin-wise
  WaveField real_field(g);
  for (int i = 0; i < g.n(0); ++i)
    real_field.psi[i] = Complex(std::exp(-0.2 * x[i] * x[i]), 0.0);
  const ComplexArray pr = to_momentum(real_field);
  const int n = g.n(0);
  for (int j = 1; j < n; ++j) {
    const Complex mirrored = pr[(n - j) % n];
    CHECK(std::abs(mirrored - std::conj(pr[j])) < 1e-12);
  }
}

TEST_CASE("plane-wave kinetic energy from the spectrum") {
  const Grid g = Grid::make_1d(512, 64.0);
  const double k0 = 24 * g.dk(0);
  const double mass = 1.3684802;
  WaveField f(g);
  const std::vector<double> x = g.positions(0);
  for (int i = 0; i < g.n(0); ++i) f.psi[i] = std::polar(0.8, k0 * x[i]);
  const double n_atoms = f.atom_number();

  const ComplexArray phi = to_momentum(f);
  const std::vector<double> k = g.wavenumbers(0);
  double e = 0.0;
  for (std::size_t i = 0; i < phi.size(); ++i)
    e += k[i] * k[i] / (2.0 * mass) * std::norm(phi[i]);
  e *= g.cell_volume_k();
  CHECK(e == doctest::Approx(k0 * k0 / (2.0 * mass) * n_atoms).epsilon(1e-10));
}

TEST_CASE("signal strength band logic") {
  const Grid g = Grid::make_1d(256, 100.0);
  const double ks = 40 * g.dk(0);
  WaveField f(g);
  const std::vector<double> x = g.positions(0);
  for (int i = 0; i < g.n(0); ++i) f.psi[i] = std::polar(1.0, ks * x[i]);
  const double n_atoms = f.atom_number();

  CHECK(signal_strength(f, ks, 2.0 * g.dk(0)) ==
        doctest::Approx(n_atoms).epsilon(1e-10));
  // far-away band holds nothing
  CHECK(signal_strength(f, -ks, 2.0 * g.dk(0)) < 1e-12 * n_atoms);
  // band past Nyquist rejected
  CHECK_THROWS(signal_strength(f, g.nyquist(0), 1.0));
  CHECK_THROWS(signal_strength(f, 0.0, -1.0));
}

TEST_CASE("momentum density integrates to N") {
  const Grid g = Grid::make_1d(128, 20.0);
  WaveField f(g);
  const std::vector<double> x = g.positions(0);
  for (int i = 0; i < g.n(0); ++i)
    f.psi[i] = Complex(std::exp(-x[i] * x[i] / 4.0), 0.1 * x[i] / 20.0);
  const std::vector<double> d = momentum_density(f);
  double total = 0.0;
  for (double v : d) total += v;
  total *= g.cell_volume_k();
  CHECK(total == doctest::Approx(f.atom_number()).epsilon(1e-12));
}

TEST_CASE("non-finite fields are rejected") {
  const Grid g = Grid::make_1d(16, 4.0);
  WaveField f(g);
  f.psi[3] = Complex(std::nan(""), 0.0);
  CHECK_FALSE(f.finite());
  CHECK_THROWS(to_momentum(f));
}
