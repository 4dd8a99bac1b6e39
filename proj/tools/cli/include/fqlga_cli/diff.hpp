#pragma once

#include <stdexcept>

#include "fqlga_cli/result_table.hpp"

namespace fqlga::cli {

struct DiffMetrics {
  double max_abs = 0.0;
  double rms = 0.0;
  // max over t of |mass_a(t) - mass_b(t)| / |mass_a(t)|, or the same over the
  // whole table when there is no `t` column.
  double mass_drift = 0.0;
  std::size_t compared = 0;
};

class ShapeMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Compares the value column (`rho` if present, otherwise every real column)
// of two tables whose columns and integer key cells match row for row.
// Throws ShapeMismatch otherwise.
DiffMetrics diff_trajectories(const ResultTable& a, const ResultTable& b);

}  // namespace fqlga::cli
