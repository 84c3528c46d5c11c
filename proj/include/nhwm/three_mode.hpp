#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace nhwm {

// Reduced pump/signal/idler description of degenerate four-wave mixing:
// full nonlinear three-mode ODEs in the interaction picture, the linearized
// two-mode system in the rotating frame, its closed-form eigenvalues and the
// dissipative gain they imply.

// Convention for the rotating-frame detuning kappa.  RotatingFrame uses
// kappa = (delta_e - 2*u_d*n0)/hbar, consistent with the frame in which the
// linearized system below is time independent; InteractionShift uses
// kappa = (delta_e - u_d*n0)/hbar.  The two differ by u_d*n0/hbar; both are
// implemented, the first is the default.
enum class KappaConvention { RotatingFrame, InteractionShift };

struct ThreeModeParams {
  double u_d = 0.0;     // hbar/ms per unit mode occupation
  double n0 = 0.0;      // pump occupation |phi0|^2
  double delta_e = 0.0; // hbar/ms, Es + Ei - 2*E0
  double gamma = 0.0;   // 1/ms idler loss rate
  KappaConvention convention = KappaConvention::RotatingFrame;

  double kappa() const {
    const double shift =
        (convention == KappaConvention::RotatingFrame) ? 2.0 : 1.0;
    return delta_e - shift * u_d * n0;  // hbar = 1
  }

  // builds params from the mode wavenumbers; enforces momentum closure
  // ks + ki == 2*k0
  static ThreeModeParams from_modes(double k0, double ks, double ki,
                                    double mass, double u_d, double n0,
                                    double gamma);
};

struct ThreeModeState {
  std::complex<double> pump{0.0, 0.0};
  std::complex<double> signal{0.0, 0.0};
  std::complex<double> idler{0.0, 0.0};
  double t = 0.0;

  double total_population() const;
};

struct ThreeModeTrajectory {
  std::vector<double> t;
  std::vector<double> pump_pop;
  std::vector<double> signal_pop;
  std::vector<double> idler_pop;
  std::vector<double> total;
  ThreeModeState final_state;
};

// Fixed-step RK4 integration of the full nonlinear three-mode system.
// Rejects steps that under-resolve the interaction or mismatch rates
// (dt * max(u_d*n0, |delta_e|, gamma) must stay below 0.05).
ThreeModeTrajectory integrate_three_mode(const ThreeModeState& initial,
                                         const ThreeModeParams& params,
                                         double dt, double t_end,
                                         int record_stride = 1);

struct ModeEigenSystem {
  std::complex<double> lambda_plus;   // larger imaginary part (amplifying)
  std::complex<double> lambda_minus;
  Eigen::Vector2cd vec_plus;
  Eigen::Vector2cd vec_minus;
};

// 2x2 non-Hermitian matrix of the linearized (undepleted pump) system,
// i d/dt [Phi_s, Phi_i]^T = M [Phi_s, Phi_i]^T, in units of 1/ms.
Eigen::Matrix2cd linearized_matrix(const ThreeModeParams& params);

// Closed-form eigenvalues
//   lambda_pm = -i*gamma/2 +- (1/2) sqrt(-gamma^2 + 4a^2 - 4b^2 + 4i*gamma*a)
// with a = 2*u_d*n0 + kappa/2, b = u_d*n0, principal square root, labels
// assigned so lambda_plus carries the larger imaginary part.
ModeEigenSystem mode_eigensystem(const ThreeModeParams& params);

struct GainEstimate {
  double lorentzian = 0.0;     // (u_d*n0)^2 gamma / (gamma^2 + delta_e^2)
  double exact = 0.0;          // Im lambda_plus from the closed form
  double rel_deviation = 0.0;  // |exact - lorentzian| / max(|exact|, eps)
};

// Lorentzian gain estimate, valid for delta_e >> u_d*n0; maximal at
// gamma == delta_e with value (u_d*n0)^2/(2*delta_e).
GainEstimate gain_estimate(const ThreeModeParams& params);

// Propagates the linearized system from (Phi_s, Phi_i) at t=0 by
// eigendecomposition.  Assumes a real pump amplitude sqrt(n0).  The idler
// variable is the conjugated one of the rotating frame: Phi_i(0) ==
// conj(phi_i(0)); magnitudes |Phi| equal the physical mode magnitudes.
std::pair<std::complex<double>, std::complex<double>> analytic_solution(
    std::complex<double> phi_s0, std::complex<double> phi_i0,
    const ThreeModeParams& params, double t);

}  // namespace nhwm
