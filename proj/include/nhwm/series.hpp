#pragma once

#include <string>
#include <vector>

namespace nhwm {

// Column-oriented numeric table; the common currency between the solver's
// recorded observables, CSV files and the comparison harness.
struct SeriesTable {
  std::vector<std::string> names;
  std::vector<std::vector<double>> columns;

  std::size_t rows() const { return columns.empty() ? 0 : columns[0].size(); }
  int column_index(const std::string& name) const;
  const std::vector<double>& column(const std::string& name) const;
  // the returned reference is invalidated by the next add_column call
  std::vector<double>& add_column(const std::string& name);
};

}  // namespace nhwm
