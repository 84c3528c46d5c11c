#include "nhwm/three_mode.hpp"

#include <cmath>
#include <stdexcept>

namespace nhwm {

namespace {
using Cd = std::complex<double>;
constexpr Cd kI{0.0, 1.0};

struct Modes {
  Cd p, s, i;
};

// Right-hand side of the interaction-picture three-mode system: pairwise
// 2*pump -> signal+idler conversion with mismatch phase plus self/cross
// phase modulation; idler damped at rate gamma.
Modes rhs(const Modes& m, double t, const ThreeModeParams& par) {
  const double np = std::norm(m.p);
  const double ns = std::norm(m.s);
  const double ni = std::norm(m.i);
  const Cd mix = std::polar(1.0, par.delta_e * t);  // e^{+i dE t / hbar}
  Modes d;
  d.p = -kI * par.u_d *
        (2.0 * std::conj(m.p) * m.s * m.i * std::conj(mix) +
         (np + 2.0 * (ns + ni)) * m.p);
  d.s = -kI * par.u_d *
        (std::conj(m.i) * m.p * m.p * mix + (ns + 2.0 * (np + ni)) * m.s);
  d.i = -kI * par.u_d *
            (std::conj(m.s) * m.p * m.p * mix + (ni + 2.0 * (np + ns)) * m.i) -
        par.gamma * m.i;
  return d;
}

Modes axpy(const Modes& a, double c, const Modes& b) {
  return {a.p + c * b.p, a.s + c * b.s, a.i + c * b.i};
}
}  // namespace

double ThreeModeState::total_population() const {
  return std::norm(pump) + std::norm(signal) + std::norm(idler);
}

ThreeModeParams ThreeModeParams::from_modes(double k0, double ks, double ki,
                                            double mass, double u_d, double n0,
                                            double gamma) {
  const double closure = std::abs(ks + ki - 2.0 * k0);
  const double scale = std::max({std::abs(k0), std::abs(ks), std::abs(ki), 1.0});
  if (closure > 1e-12 * scale)
    throw std::invalid_argument("three-mode: ks + ki must equal 2*k0");
  ThreeModeParams p;
  p.u_d = u_d;
  p.n0 = n0;
  p.gamma = gamma;
  const double e0 = k0 * k0 / (2.0 * mass);
  const double es = ks * ks / (2.0 * mass);
  const double ei = ki * ki / (2.0 * mass);
  p.delta_e = es + ei - 2.0 * e0;
  return p;
}

ThreeModeTrajectory integrate_three_mode(const ThreeModeState& initial,
                                         const ThreeModeParams& params,
                                         double dt, double t_end,
                                         int record_stride) {
  if (!(dt > 0.0)) throw std::invalid_argument("three-mode: dt must be > 0");
  const double fastest =
      std::max({params.u_d * params.n0, std::abs(params.delta_e), params.gamma});
  if (dt * fastest > 0.05)
    throw std::invalid_argument(
        "three-mode: dt too large for the interaction/mismatch rates");
  if (record_stride < 1) record_stride = 1;

  const long nsteps = std::lround((t_end - initial.t) / dt);
  Modes m{initial.pump, initial.signal, initial.idler};
  double t = initial.t;

  ThreeModeTrajectory traj;
  auto record = [&](double tt, const Modes& mm) {
    traj.t.push_back(tt);
    traj.pump_pop.push_back(std::norm(mm.p));
    traj.signal_pop.push_back(std::norm(mm.s));
    traj.idler_pop.push_back(std::norm(mm.i));
    traj.total.push_back(std::norm(mm.p) + std::norm(mm.s) + std::norm(mm.i));
  };
  record(t, m);

  for (long step = 0; step < nsteps; ++step) {
    const Modes k1 = rhs(m, t, params);
    const Modes k2 = rhs(axpy(m, 0.5 * dt, k1), t + 0.5 * dt, params);
    const Modes k3 = rhs(axpy(m, 0.5 * dt, k2), t + 0.5 * dt, params);
    const Modes k4 = rhs(axpy(m, dt, k3), t + dt, params);
    m.p += dt / 6.0 * (k1.p + 2.0 * k2.p + 2.0 * k3.p + k4.p);
    m.s += dt / 6.0 * (k1.s + 2.0 * k2.s + 2.0 * k3.s + k4.s);
    m.i += dt / 6.0 * (k1.i + 2.0 * k2.i + 2.0 * k3.i + k4.i);
    t = initial.t + (step + 1) * dt;
    if ((step + 1) % record_stride == 0 || step + 1 == nsteps) record(t, m);
  }

  traj.final_state = ThreeModeState{m.p, m.s, m.i, t};
  return traj;
}

Eigen::Matrix2cd linearized_matrix(const ThreeModeParams& params) {
  const double a = 2.0 * params.u_d * params.n0 + 0.5 * params.kappa();
  const double b = params.u_d * params.n0;
  Eigen::Matrix2cd m;
  m << Cd{a, 0.0}, Cd{b, 0.0}, Cd{-b, 0.0}, Cd{-a, -params.gamma};
  return m;
}

ModeEigenSystem mode_eigensystem(const ThreeModeParams& params) {
  const double g = params.gamma;
  const double a = 2.0 * params.u_d * params.n0 + 0.5 * params.kappa();
  const double b = params.u_d * params.n0;
  const Cd disc =
      Cd{-g * g + 4.0 * a * a - 4.0 * b * b, 4.0 * g * a};
  const Cd root = std::sqrt(disc);  // principal branch
  Cd lp = Cd{0.0, -0.5 * g} + 0.5 * root;
  Cd lm = Cd{0.0, -0.5 * g} - 0.5 * root;
  if (lp.imag() < lm.imag() ||
      (lp.imag() == lm.imag() && lp.real() < lm.real()))
    std::swap(lp, lm);

  auto eigvec = [&](Cd lambda) {
    Eigen::Vector2cd v;
    v << Cd{-b, 0.0}, Cd{a, 0.0} - lambda;
    const double n = v.norm();
    if (n > 0.0) v /= n;
    return v;
  };
  return ModeEigenSystem{lp, lm, eigvec(lp), eigvec(lm)};
}

GainEstimate gain_estimate(const ThreeModeParams& params) {
  GainEstimate g;
  const double un = params.u_d * params.n0;
  const double denom =
      params.gamma * params.gamma + params.delta_e * params.delta_e;
  g.lorentzian = denom > 0.0 ? un * un * params.gamma / denom : 0.0;
  g.exact = mode_eigensystem(params).lambda_plus.imag();
  const double ref = std::max(std::abs(g.exact), 1e-300);
  g.rel_deviation = std::abs(g.exact - g.lorentzian) / ref;
  return g;
}

std::pair<Cd, Cd> analytic_solution(Cd phi_s0, Cd phi_i0,
                                    const ThreeModeParams& params, double t) {
  const ModeEigenSystem es = mode_eigensystem(params);
  Eigen::Matrix2cd v;
  v.col(0) = es.vec_plus;
  v.col(1) = es.vec_minus;
  Eigen::JacobiSVD<Eigen::Matrix2cd> svd(v);
  const double cond =
      svd.singularValues()(0) / std::max(svd.singularValues()(1), 1e-300);
  if (cond > 1e12)
    throw std::runtime_error(
        "analytic_solution: eigenvector matrix is numerically degenerate");

  // rotating-frame variables: Phi_s = phi_s, Phi_i = conj(phi_i) at t = 0
  Eigen::Vector2cd initial;
  initial << phi_s0, std::conj(phi_i0);
  const Eigen::Vector2cd coeff = v.fullPivLu().solve(initial);
  const Eigen::Vector2cd phi =
      coeff(0) * es.vec_plus * std::exp(-kI * es.lambda_plus * t) +
      coeff(1) * es.vec_minus * std::exp(-kI * es.lambda_minus * t);
  return {phi(0), phi(1)};
}

}  // namespace nhwm
