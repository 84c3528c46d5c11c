#pragma once

#include <Eigen/Dense>
#include <vector>

namespace nhwm {

// Three-level Lambda system {g, r, h}: ground |g> and hyperfine |h> coupled
// to a decaying excited |r> by probe/coupling lasers.  Produces the
// momentum-selective loss rate gamma(k) = Gamma * rho_rr and the dressed
// ground-state light shift deltaE(k) = Tr[rho H] via the Doppler map
// Delta_{p,c}(v) = delta0 - v*|q|*cos(theta_{p,c}).

struct LambdaParams {
  double omega_p = 0.0;      // probe Rabi frequency, rad/ms
  double omega_c = 0.0;      // coupling Rabi frequency, rad/ms
  double delta0 = 0.0;       // common base detuning, rad/ms
  double gamma_decay = 0.0;  // excited-state decay rate Gamma, 1/ms
  double q = 0.0;            // laser wavenumber magnitude, um^-1
  double cos_theta_p = 1.0;  // beam projection a_p onto the condensate axis
  double cos_theta_c = 0.0;  // beam projection a_c

  void validate() const;
};

using DensityMatrix3 = Eigen::Matrix3cd;

// basis indices
inline constexpr int kG = 0;
inline constexpr int kR = 1;
inline constexpr int kH = 2;

// Rotating-wave Hamiltonian (hbar = 1):
//   H = -Omega_p/2 (|r><g| + h.c.) - Omega_c/2 (|r><h| + h.c.)
//       + Delta_p |r><r| + (Delta_p - Delta_c) |h><h|
Eigen::Matrix3cd lambda_hamiltonian(double omega_p, double omega_c,
                                    double delta_p, double delta_c);

// 9x9 Liouvillian acting on vec(rho) (column-major), from the master
// equation with jump operators sqrt(Gamma/2)|g><r| and sqrt(Gamma/2)|h><r|.
Eigen::MatrixXcd liouvillian(double omega_p, double omega_c, double delta_p,
                             double delta_c, double gamma);

// Steady state of the master equation: dense solve of the vectorized
// Liouvillian with the trace row replacing one redundant equation.
// Throws if the Liouvillian kernel is more than one dimensional (no unique
// steady state, e.g. both lasers off) or if the residual check fails.
DensityMatrix3 steady_state(double omega_p, double omega_c, double delta_p,
                            double delta_c, double gamma);

// Validation helper: Hermiticity, unit trace, positive semidefiniteness.
struct DensityCheck {
  double hermiticity_error = 0.0;  // max |rho - rho^dagger|
  double trace_error = 0.0;        // |tr(rho) - 1|
  double min_eigenvalue = 0.0;
  bool ok(double herm_tol = 1e-12, double trace_tol = 1e-12,
          double psd_tol = 1e-10) const {
    return hermiticity_error < herm_tol && trace_error < trace_tol &&
           min_eigenvalue > -psd_tol;
  }
};
DensityCheck check_density_matrix(const DensityMatrix3& rho);

// Loss rate Gamma * <r|rho_ss|r>; canonical route via the steady state.
double loss_rate(double omega_p, double omega_c, double delta_p,
                 double delta_c, double gamma);

// Closed-form rational expression for the loss spectrum with
// delta_eff = delta_p - delta_c.  Cross-check only; the steady-state route
// above is canonical (the loss-spectrum CSV reports both).
double loss_rate_closed_form(double omega_p, double omega_c, double delta_p,
                             double delta_c, double gamma);

// Light shift Tr[rho_ss H] of the dressed ground-state manifold (canonical).
double light_shift(double omega_p, double omega_c, double delta_p,
                   double delta_c, double gamma);

// Closed-form expression for the light shift with delta = delta_c - delta_p.
// Cross-check only; disagrees with the trace formula in parts of parameter
// space.
double light_shift_closed_form(double omega_p, double omega_c, double delta_p,
                               double delta_c, double gamma);

// Sampled loss spectrum over wavenumber, with linear interpolation.
struct LossSpectrumTable {
  std::vector<double> k;        // um^-1, strictly increasing
  std::vector<double> gamma;    // 1/ms
  std::vector<double> delta_e;  // hbar/ms

  double interp_gamma(double kk) const;
  double interp_delta_e(double kk) const;
  double peak_gamma() const;
  double peak_k() const;
};

// Samples gamma(k) and deltaE(k) on k_samples via the Doppler map
// v = hbar*k/m, refining adaptively until mid-interval linear interpolation
// errs by less than interp_tol of the spectrum peak.
LossSpectrumTable loss_spectrum(const LambdaParams& params,
                                std::vector<double> k_samples, double mass,
                                double interp_tol = 1e-3);

// Laser set tuned so the narrow dressed-state resonance sits near the idler
// wavenumber -2.7 um^-1 for Rb-87 while the exact EIT zero protects the bulk
// condensate at k = 0.  Probe along the condensate axis, coupling
// perpendicular.
LambdaParams default_idler_loss_lasers();

// Separation of time scales: excited-state lifetime tau = 1/Gamma, recoil
// ejection time T_rec = a_perp / v_rec with a_perp = sqrt(hbar/(m omega_perp))
// and v_rec = 2 hbar |q| / m, against the condensate dynamics time t_bec.
struct Timescales {
  double tau = 0.0;    // ms
  double t_rec = 0.0;  // ms
  double t_bec = 0.0;  // ms
  bool ordered = false;  // tau < T_rec/10 and T_rec < T_BEC/10
};
Timescales timescale_check(const LambdaParams& params, double omega_perp,
                           double mass, double t_bec);

}  // namespace nhwm
