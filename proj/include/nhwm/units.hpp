#pragma once

namespace nhwm {

// Internal unit system: lengths in micrometers, times in milliseconds,
// hbar = 1.  The derived mass unit is hbar*ms/um^2, energies come out in
// hbar/ms.  SI only appears at I/O boundaries.
struct UnitSystem {
  static constexpr double length_unit_m = 1e-6;   // meters per internal length
  static constexpr double time_unit_s = 1e-3;     // seconds per internal time
  static constexpr double hbar = 1.0;
  static constexpr double hbar_si = 1.054571817e-34;  // J s

  static double mass_from_kg(double kg) {
    return kg * length_unit_m * length_unit_m / (hbar_si * time_unit_s);
  }
  static double mass_to_kg(double internal) {
    return internal * hbar_si * time_unit_s / (length_unit_m * length_unit_m);
  }
  static double length_from_m(double m) { return m / length_unit_m; }
  static double length_to_m(double internal) { return internal * length_unit_m; }
  static double velocity_from_m_per_s(double v) {
    return v * time_unit_s / length_unit_m;
  }
  // rad/ms from cyclic frequency in Hz
  static double angular_frequency_from_hz(double hz);
};

// Atomic and interaction parameters in internal units.
struct PhysicalParams {
  double mass = 0.0;        // hbar*ms/um^2
  double a_s = 0.0;         // um, s-wave scattering length (repulsive only)
  double omega_perp = 0.0;  // rad/ms transverse trap frequency
  double u3d = 0.0;         // hbar*um^3/ms
  double u1d = 0.0;         // hbar*um/ms
  double u2d = 0.0;         // hbar*um^2/ms

  // transverse oscillator ground-state width sqrt(hbar/(m*omega_perp)), um
  double sigma_perp() const;
};

// Rb-87 mass, CODATA: 86.909180531 u.
inline constexpr double kRb87MassKg = 1.44316060e-25;
// Rb-87 background s-wave scattering length ~100 a0; overridable from config.
inline constexpr double kRb87ScatteringLengthM = 5.3e-9;

// Derives u3d = 4*pi*hbar^2*a_s/m and the quasi-1D/2D reductions
// u1d = u3d/(2*pi*sigma_perp^2), u2d = u3d/(sqrt(2*pi)*sigma_perp).
PhysicalParams make_physical_params(double mass_kg, double a_s_m,
                                    double omega_perp);

PhysicalParams rubidium87_params(double omega_perp);

double reduced_interaction_1d(const PhysicalParams& p);
double reduced_interaction_2d(const PhysicalParams& p);

}  // namespace nhwm
