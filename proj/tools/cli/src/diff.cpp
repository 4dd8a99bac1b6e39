#include "fqlga_cli/diff.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace fqlga::cli {

DiffMetrics diff_trajectories(const ResultTable& a, const ResultTable& b) {
  if (a.columns() != b.columns()) throw ShapeMismatch("diff: column sets differ");
  if (a.row_count() != b.row_count())
    throw ShapeMismatch("diff: row counts differ (" + std::to_string(a.row_count()) + " vs " +
                        std::to_string(b.row_count()) + ")");

  std::vector<std::size_t> values;
  std::vector<std::size_t> keys;
  const auto& cols = a.columns();
  for (std::size_t k = 0; k < cols.size(); ++k) {
    if (cols[k].type == ColumnType::integer) keys.push_back(k);
    else if (!a.has_column("rho") || cols[k].name == "rho") values.push_back(k);
  }
  if (values.empty()) throw ShapeMismatch("diff: no real-valued column to compare");
  const bool by_time = a.has_column("t") && cols[a.column_index("t")].type == ColumnType::integer;
  const std::size_t t_col = by_time ? a.column_index("t") : 0;

  DiffMetrics m;
  double sum_sq = 0.0;
  std::map<std::int64_t, std::pair<double, double>> mass;
  for (std::size_t r = 0; r < a.row_count(); ++r) {
    const auto& ra = a.rows()[r];
    const auto& rb = b.rows()[r];
    for (std::size_t k : keys)
      if (ra[k] != rb[k])
        throw ShapeMismatch("diff: key column '" + cols[k].name + "' differs at data row " + std::to_string(r + 1));
    const std::int64_t group = by_time ? std::get<std::int64_t>(ra[t_col]) : 0;
    for (std::size_t k : values) {
      const double va = std::get<double>(ra[k]);
      const double vb = std::get<double>(rb[k]);
      const double d = std::abs(va - vb);
      m.max_abs = std::max(m.max_abs, d);
      sum_sq += d * d;
      ++m.compared;
      auto& [ma, mb] = mass[group];
      ma += va;
      mb += vb;
    }
  }
  if (m.compared) m.rms = std::sqrt(sum_sq / static_cast<double>(m.compared));
  for (const auto& [t, totals] : mass) {
    const double diff = std::abs(totals.first - totals.second);
    const double scale = std::abs(totals.first);
    m.mass_drift = std::max(m.mass_drift, scale > 0.0 ? diff / scale : diff);
  }
  return m;
}

}  // namespace fqlga::cli
