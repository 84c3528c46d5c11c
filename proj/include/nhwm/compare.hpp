#pragma once

#include <string>

#include "nhwm/series.hpp"

namespace nhwm {

// Least-squares exponential growth rate: slope of log(y) over t in
// [t_lo, t_hi].  Rows with y <= 0 are skipped; needs at least two points.
double fit_growth_rate(const std::vector<double>& t,
                       const std::vector<double>& y, double t_lo, double t_hi);

struct CompareReport {
  double max_rel_deviation = 0.0;
  double mean_rel_deviation = 0.0;
  double growth_rate_a = 0.0;  // 1/ms, fitted over the window
  double growth_rate_b = 0.0;
  double window_lo = 0.0;
  double window_hi = 0.0;
  std::size_t samples = 0;
};

// Compares one observable across two time series.  Series B is resampled
// onto series A's time grid by linear interpolation over the overlap window
// (optionally clipped to [t_lo, t_hi]); relative deviations are measured
// against series A.
CompareReport compare_runs(const SeriesTable& a, const SeriesTable& b,
                           const std::string& column_a,
                           const std::string& column_b,
                           double t_lo = -1e300, double t_hi = 1e300);

std::string format_report(const CompareReport& report);

}  // namespace nhwm
