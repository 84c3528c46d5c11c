#include "nhwm/compare.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace nhwm {

double fit_growth_rate(const std::vector<double>& t,
                       const std::vector<double>& y, double t_lo,
                       double t_hi) {
  double st = 0.0, sy = 0.0, stt = 0.0, sty = 0.0;
  std::size_t n = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] < t_lo || t[i] > t_hi || !(y[i] > 0.0)) continue;
    const double ly = std::log(y[i]);
    st += t[i];
    sy += ly;
    stt += t[i] * t[i];
    sty += t[i] * ly;
    ++n;
  }
  if (n < 2)
    throw std::invalid_argument("fit_growth_rate: fewer than two usable points");
  const double denom = n * stt - st * st;
  if (denom == 0.0)
    throw std::invalid_argument("fit_growth_rate: degenerate time window");
  return (n * sty - st * sy) / denom;
}

namespace {
double interp(const std::vector<double>& t, const std::vector<double>& y,
              double tt) {
  const auto it = std::upper_bound(t.begin(), t.end(), tt);
  if (it == t.begin()) return y.front();
  if (it == t.end()) return y.back();
  const std::size_t hi = static_cast<std::size_t>(it - t.begin());
  const double w = (tt - t[hi - 1]) / (t[hi] - t[hi - 1]);
  return y[hi - 1] + w * (y[hi] - y[hi - 1]);
}
}  // namespace

CompareReport compare_runs(const SeriesTable& a, const SeriesTable& b,
                           const std::string& column_a,
                           const std::string& column_b, double t_lo,
                           double t_hi) {
  const auto& ta = a.column("t");
  const auto& tb = b.column("t");
  const auto& ya = a.column(column_a);
  const auto& yb = b.column(column_b);
  if (ta.empty() || tb.empty())
    throw std::invalid_argument("compare_runs: empty series");

  const double lo = std::max({ta.front(), tb.front(), t_lo});
  const double hi = std::min({ta.back(), tb.back(), t_hi});
  if (!(hi >= lo))
    throw std::invalid_argument("compare_runs: empty overlap window");

  CompareReport rep;
  rep.window_lo = lo;
  rep.window_hi = hi;
  double sum = 0.0;
  for (std::size_t i = 0; i < ta.size(); ++i) {
    if (ta[i] < lo || ta[i] > hi) continue;
    const double va = ya[i];
    const double vb = interp(tb, yb, ta[i]);
    const double ref = std::abs(va);
    const double dev = ref > 0.0 ? std::abs(va - vb) / ref
                                 : (vb == va ? 0.0 : 1e300);
    rep.max_rel_deviation = std::max(rep.max_rel_deviation, dev);
    sum += dev;
    ++rep.samples;
  }
  if (rep.samples == 0)
    throw std::invalid_argument("compare_runs: no samples in window");
  rep.mean_rel_deviation = sum / static_cast<double>(rep.samples);
  rep.growth_rate_a = fit_growth_rate(ta, ya, lo, hi);
  rep.growth_rate_b = fit_growth_rate(tb, yb, lo, hi);
  return rep;
}

std::string format_report(const CompareReport& r) {
  std::ostringstream out;
  out.precision(17);
  out << "window = [" << r.window_lo << ", " << r.window_hi << "] ms, samples = "
      << r.samples << "\n";
  out << "max_rel_deviation = " << r.max_rel_deviation << "\n";
  out << "mean_rel_deviation = " << r.mean_rel_deviation << "\n";
  out << "growth_rate_a = " << r.growth_rate_a << " 1/ms\n";
  out << "growth_rate_b = " << r.growth_rate_b << " 1/ms\n";
  return out.str();
}

}  // namespace nhwm
