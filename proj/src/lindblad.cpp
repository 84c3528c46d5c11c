#include "nhwm/lindblad.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace nhwm {

namespace {
using Cd = std::complex<double>;
using Mat3 = Eigen::Matrix3cd;
using Mat9 = Eigen::MatrixXcd;

Mat9 kron3(const Mat3& a, const Mat3& b) {
  Mat9 out(9, 9);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      out.block<3, 3>(3 * i, 3 * j) = a(i, j) * b;
  return out;
}
}  // namespace

void LambdaParams::validate() const {
  if (!(gamma_decay > 0.0))
    throw std::invalid_argument("lambda system: Gamma must be positive");
  if (omega_p < 0.0 || omega_c < 0.0)
    throw std::invalid_argument("lambda system: Rabi frequencies must be >= 0");
  if (std::abs(cos_theta_p) > 1.0 || std::abs(cos_theta_c) > 1.0)
    throw std::invalid_argument("lambda system: |cos(theta)| must be <= 1");
}

Mat3 lambda_hamiltonian(double omega_p, double omega_c, double delta_p,
                        double delta_c) {
  Mat3 h = Mat3::Zero();
  h(kR, kG) = -0.5 * omega_p;
  h(kG, kR) = -0.5 * omega_p;
  h(kR, kH) = -0.5 * omega_c;
  h(kH, kR) = -0.5 * omega_c;
  h(kR, kR) = delta_p;
  h(kH, kH) = delta_p - delta_c;
  return h;
}

Mat9 liouvillian(double omega_p, double omega_c, double delta_p,
                 double delta_c, double gamma) {
  const Mat3 h = lambda_hamiltonian(omega_p, omega_c, delta_p, delta_c);
  const Mat3 id = Mat3::Identity();

  // vec(A X B) = (B^T kron A) vec(X), column-major vec
  Mat9 lv = Cd{0.0, -1.0} * (kron3(id, h) - kron3(h.transpose(), id));

  Mat3 jump_g = Mat3::Zero();
  jump_g(kG, kR) = std::sqrt(0.5 * gamma);
  Mat3 jump_h = Mat3::Zero();
  jump_h(kH, kR) = std::sqrt(0.5 * gamma);
  for (const Mat3& l : {jump_g, jump_h}) {
    const Mat3 ldl = l.adjoint() * l;
    lv += kron3(l.conjugate(), l) - 0.5 * kron3(id, ldl) -
          0.5 * kron3(ldl.transpose(), id);
  }
  return lv;
}

DensityMatrix3 steady_state(double omega_p, double omega_c, double delta_p,
                            double delta_c, double gamma) {
  if (!(gamma > 0.0))
    throw std::invalid_argument("steady_state: Gamma must be positive");
  const Mat9 lv = liouvillian(omega_p, omega_c, delta_p, delta_c, gamma);

  // uniqueness: the kernel of the Liouvillian must be one dimensional
  Eigen::JacobiSVD<Mat9> svd(lv);
  const auto& sv = svd.singularValues();
  const double tol = 1e-10 * std::max(sv(0), 1.0);
  int kernel_dim = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) < tol) ++kernel_dim;
  if (kernel_dim != 1)
    throw std::runtime_error(
        "steady_state: Liouvillian kernel dimension != 1; steady state is "
        "ambiguous (are both lasers off?)");

  // replace the equation for d/dt rho_gg with the trace constraint
  Mat9 a = lv;
  Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(9);
  a.row(0).setZero();
  a(0, 0) = a(0, 4) = a(0, 8) = Cd{1.0, 0.0};  // diagonal of vec(rho)
  rhs(0) = Cd{1.0, 0.0};
  const Eigen::VectorXcd x = a.fullPivLu().solve(rhs);

  // residual against the true Liouvillian, relative to its scale
  const double residual = (lv * x).norm() / std::max(lv.norm(), 1.0);
  if (!(residual < 1e-12))
    throw std::runtime_error("steady_state: Liouvillian residual too large");

  DensityMatrix3 rho;
  for (int j = 0; j < 3; ++j)
    for (int i = 0; i < 3; ++i) rho(i, j) = x(3 * j + i);
  // symmetrize away the last-ulp Hermiticity error
  rho = 0.5 * (rho + rho.adjoint().eval());
  return rho;
}

DensityCheck check_density_matrix(const DensityMatrix3& rho) {
  DensityCheck c;
  c.hermiticity_error = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
  c.trace_error = std::abs(rho.trace() - Cd{1.0, 0.0});
  Eigen::SelfAdjointEigenSolver<Mat3> es(0.5 * (rho + rho.adjoint()));
  c.min_eigenvalue = es.eigenvalues().minCoeff();
  return c;
}

double loss_rate(double omega_p, double omega_c, double delta_p,
                 double delta_c, double gamma) {
  const DensityMatrix3 rho =
      steady_state(omega_p, omega_c, delta_p, delta_c, gamma);
  return gamma * rho(kR, kR).real();
}

double loss_rate_closed_form(double omega_p, double omega_c, double delta_p,
                             double delta_c, double gamma) {
  const double de = delta_p - delta_c;
  const double op2 = omega_p * omega_p;
  const double oc2 = omega_c * omega_c;
  const double num = 8.0 * de * de * op2 * oc2;
  const double den =
      (16.0 * (delta_c * delta_c + oc2) * de * de + 3.0 * oc2 * oc2) * op2 +
      (3.0 * oc2 - 8.0 * delta_c * de) * op2 * op2 + op2 * op2 * op2 +
      4.0 * gamma * gamma * de * de * (op2 + oc2) +
      std::pow(4.0 * de * delta_p * omega_c + oc2 * omega_c, 2);
  if (std::abs(den) < 1e-300)
    throw std::runtime_error("loss_rate_closed_form: singular parameters");
  return num / den;
}

double light_shift(double omega_p, double omega_c, double delta_p,
                   double delta_c, double gamma) {
  const DensityMatrix3 rho =
      steady_state(omega_p, omega_c, delta_p, delta_c, gamma);
  const Mat3 h = lambda_hamiltonian(omega_p, omega_c, delta_p, delta_c);
  return (rho * h).trace().real();
}

double light_shift_closed_form(double omega_p, double omega_c, double delta_p,
                               double delta_c, double gamma) {
  // the cubic term's decay-rate symbol is read as Gamma
  const double d = delta_c - delta_p;
  const double g = gamma;
  const double op2 = omega_p * omega_p;
  const double op4 = op2 * op2;
  const double oc2 = omega_c * omega_c;
  const double oc4 = oc2 * oc2;

  const double num =
      -d * op2 *
      (1.5 * g * g * g * d * d +
       0.5 * g * oc2 * (4.0 * delta_p * d + oc2 + oc2) +
       0.5 * g *
           (4.0 * d *
                (d * (4.0 * delta_c * delta_c + 0.5 * g * g) +
                 oc2 * (3.0 * delta_c - 2.0 * delta_p)) +
            op2 * (oc2 - 8.0 * delta_c * d) + op4));
  const double den =
      0.5 * g * oc2 *
          (4.0 * (g * g + 4.0 * delta_p * delta_p) * d * d +
           8.0 * delta_p * d * oc2 + oc4) +
      op2 * (2.0 * g * (g * g + 4.0 * delta_c * delta_c) * d * d +
             8.0 * g * d * d * oc2 + 1.5 * g * oc4) +
      op4 * (1.5 * g * oc2 - 4.0 * g * delta_c * d) +
      0.5 * g * op2 * op4;
  if (std::abs(den) < 1e-300)
    throw std::runtime_error("light_shift_closed_form: singular parameters");
  return num / den;
}

double LossSpectrumTable::interp_gamma(double kk) const {
  if (k.empty()) return 0.0;
  if (kk <= k.front()) return gamma.front();
  if (kk >= k.back()) return gamma.back();
  const auto it = std::upper_bound(k.begin(), k.end(), kk);
  const std::size_t hi = static_cast<std::size_t>(it - k.begin());
  const double w = (kk - k[hi - 1]) / (k[hi] - k[hi - 1]);
  return gamma[hi - 1] + w * (gamma[hi] - gamma[hi - 1]);
}

double LossSpectrumTable::interp_delta_e(double kk) const {
  if (k.empty()) return 0.0;
  if (kk <= k.front()) return delta_e.front();
  if (kk >= k.back()) return delta_e.back();
  const auto it = std::upper_bound(k.begin(), k.end(), kk);
  const std::size_t hi = static_cast<std::size_t>(it - k.begin());
  const double w = (kk - k[hi - 1]) / (k[hi] - k[hi - 1]);
  return delta_e[hi - 1] + w * (delta_e[hi] - delta_e[hi - 1]);
}

double LossSpectrumTable::peak_gamma() const {
  double g = 0.0;
  for (double v : gamma) g = std::max(g, v);
  return g;
}

double LossSpectrumTable::peak_k() const {
  std::size_t best = 0;
  for (std::size_t i = 1; i < gamma.size(); ++i)
    if (gamma[i] > gamma[best]) best = i;
  return k.empty() ? 0.0 : k[best];
}

LossSpectrumTable loss_spectrum(const LambdaParams& params,
                                std::vector<double> k_samples, double mass,
                                double interp_tol) {
  params.validate();
  if (!(mass > 0.0)) throw std::invalid_argument("loss_spectrum: mass <= 0");
  if (k_samples.size() < 2)
    throw std::invalid_argument("loss_spectrum: need at least two k samples");
  std::sort(k_samples.begin(), k_samples.end());

  auto eval = [&](double k) {
    const double v = k / mass;  // hbar k / m
    const double dp = params.delta0 - v * params.q * params.cos_theta_p;
    const double dc = params.delta0 - v * params.q * params.cos_theta_c;
    const DensityMatrix3 rho = steady_state(params.omega_p, params.omega_c, dp,
                                            dc, params.gamma_decay);
    const Mat3 h = lambda_hamiltonian(params.omega_p, params.omega_c, dp, dc);
    return std::pair<double, double>{
        params.gamma_decay * rho(kR, kR).real(), (rho * h).trace().real()};
  };

  struct Node {
    double k, gamma, de;
  };
  std::vector<Node> nodes;
  nodes.reserve(k_samples.size());
  for (double k : k_samples) {
    const auto [g, de] = eval(k);
    nodes.push_back({k, g, de});
  }

  // bisect intervals until linear interpolation of both curves is accurate
  // at the scale of the gamma peak (the narrow resonance needs this)
  const int max_rounds = 24;
  for (int round = 0; round < max_rounds; ++round) {
    double peak = 0.0;
    for (const Node& n : nodes) peak = std::max(peak, n.gamma);
    const double tol = interp_tol * std::max(peak, 1e-300);
    std::vector<Node> refined;
    refined.reserve(2 * nodes.size());
    bool any = false;
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
      refined.push_back(nodes[i]);
      const double km = 0.5 * (nodes[i].k + nodes[i + 1].k);
      if (km <= nodes[i].k || km >= nodes[i + 1].k) continue;  // fp limit
      const auto [gm, dem] = eval(km);
      const double g_lin = 0.5 * (nodes[i].gamma + nodes[i + 1].gamma);
      const double de_lin = 0.5 * (nodes[i].de + nodes[i + 1].de);
      if (std::abs(gm - g_lin) > tol || std::abs(dem - de_lin) > tol) {
        refined.push_back({km, gm, dem});
        any = true;
      }
    }
    refined.push_back(nodes.back());
    nodes.swap(refined);
    if (!any) break;
  }

  LossSpectrumTable table;
  table.k.reserve(nodes.size());
  for (const Node& n : nodes) {
    table.k.push_back(n.k);
    table.gamma.push_back(std::max(n.gamma, 0.0));
    table.delta_e.push_back(n.de);
  }
  return table;
}

LambdaParams default_idler_loss_lasers() {
  LambdaParams p;
  p.omega_p = 30.0;
  p.omega_c = 640.0;
  p.delta0 = 2411.0;
  p.gamma_decay = 300.0;
  p.q = 2.0 * M_PI / 0.297;  // UV transition wavelength 297 nm
  p.cos_theta_p = 1.0;       // theta_p = 0
  p.cos_theta_c = 0.0;       // theta_c = 90 deg
  return p;
}

Timescales timescale_check(const LambdaParams& params, double omega_perp,
                           double mass, double t_bec) {
  params.validate();
  if (!(omega_perp > 0.0) || !(mass > 0.0) || !(t_bec > 0.0))
    throw std::invalid_argument("timescale_check: inputs must be positive");
  Timescales ts;
  ts.tau = 1.0 / params.gamma_decay;
  const double a_perp = std::sqrt(1.0 / (mass * omega_perp));
  const double v_rec = 2.0 * params.q / mass;
  ts.t_rec = a_perp / v_rec;
  ts.t_bec = t_bec;
  ts.ordered = ts.tau < 0.1 * ts.t_rec && ts.t_rec < 0.1 * ts.t_bec;
  return ts;
}

}  // namespace nhwm
