#include "nhwm/units.hpp"

#include <cmath>
#include <stdexcept>

namespace nhwm {

double UnitSystem::angular_frequency_from_hz(double hz) {
  return 2.0 * M_PI * hz * time_unit_s;  // rad/ms
}

double PhysicalParams::sigma_perp() const {
  return std::sqrt(UnitSystem::hbar / (mass * omega_perp));
}

PhysicalParams make_physical_params(double mass_kg, double a_s_m,
                                    double omega_perp) {
  if (mass_kg <= 0.0) throw std::invalid_argument("mass must be positive");
  if (a_s_m < 0.0) throw std::invalid_argument("scattering length must be >= 0");
  if (omega_perp <= 0.0)
    throw std::invalid_argument("omega_perp must be positive");

  PhysicalParams p;
  p.mass = UnitSystem::mass_from_kg(mass_kg);
  p.a_s = UnitSystem::length_from_m(a_s_m);
  p.omega_perp = omega_perp;
  p.u3d = 4.0 * M_PI * UnitSystem::hbar * UnitSystem::hbar * p.a_s / p.mass;
  p.u1d = reduced_interaction_1d(p);
  p.u2d = reduced_interaction_2d(p);
  return p;
}

PhysicalParams rubidium87_params(double omega_perp) {
  return make_physical_params(kRb87MassKg, kRb87ScatteringLengthM, omega_perp);
}

double reduced_interaction_1d(const PhysicalParams& p) {
  const double s = p.sigma_perp();
  return p.u3d / (2.0 * M_PI * s * s);
}

double reduced_interaction_2d(const PhysicalParams& p) {
  // Gaussian transverse profile integrated out in a pancake trap.
  return p.u3d / (std::sqrt(2.0 * M_PI) * p.sigma_perp());
}

}  // namespace nhwm
