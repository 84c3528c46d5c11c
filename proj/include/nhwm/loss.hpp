#pragma once

#include <array>
#include <optional>
#include <vector>

#include "nhwm/grid.hpp"
#include "nhwm/lindblad.hpp"

namespace nhwm {

// Momentum-dependent loss rate gamma(k) >= 0 and light shift deltaE(k),
// evaluated on a solver grid.  Variants: none, analytic Gaussian, tabulated
// samples, or derived from the Lambda-system steady state.
class LossModel {
 public:
  enum class Kind { None, Gaussian, Tabulated, Eit };

  struct Gaussian {
    double amplitude = 0.0;                  // 1/ms
    std::array<double, 2> k_center{0.0, 0.0};  // um^-1 per axis
    double sigma = 1.0;                      // um^-1 (stored as sigma)
    // axes entering the exponent; a 2D stripe uses a single axis
    std::array<bool, 2> axis{true, false};
  };

  static LossModel none();
  static LossModel gaussian(const Gaussian& g, double switch_on_time = 0.0);
  static LossModel tabulated(const LossSpectrumTable& table, int axis = 0,
                             double switch_on_time = 0.0);
  static LossModel eit(const LambdaParams& params, int axis = 0,
                       double switch_on_time = 0.0,
                       double delta_e_scale = 1.0);

  Kind kind() const { return kind_; }
  bool active() const { return kind_ != Kind::None; }
  double switch_on_time() const { return switch_on_time_; }
  double delta_e_scale() const { return delta_e_scale_; }
  const std::optional<Gaussian>& gaussian_params() const { return gaussian_; }
  const std::optional<LambdaParams>& lambda_params() const { return lambda_; }

  // Samples gamma(k) (and deltaE(k) for the EIT/tabulated variants) over
  // the FFT-ordered grid; for EIT, the Lambda steady state is tabulated once
  // along the loss axis and interpolated.  gamma is clamped at zero.
  void sample(const Grid& grid, double mass, std::vector<double>& gamma_k,
              std::vector<double>& delta_e_k) const;

  // spectrum along the loss axis, for diagnostics and CSV output
  LossSpectrumTable table(const Grid& grid, double mass) const;

 private:
  Kind kind_ = Kind::None;
  double switch_on_time_ = 0.0;
  double delta_e_scale_ = 1.0;
  int axis_ = 0;
  std::optional<Gaussian> gaussian_;
  std::optional<LossSpectrumTable> table_;
  std::optional<LambdaParams> lambda_;
};

}  // namespace nhwm
