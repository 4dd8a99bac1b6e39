#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "fqlga/pcqubit.hpp"

namespace fqlga::pcqubit {

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n), minima_(n, 0) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  std::size_t& minima(std::size_t root) { return minima_[root]; }
  void attach(std::size_t child_root, std::size_t root) {
    parent_[child_root] = root;
    minima_[root] += minima_[child_root];
  }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> minima_;
};

}  // namespace

PotentialGrid potential_grid(const PotentialParams& params, std::size_t resolution) {
  params.validate();
  if (resolution < 8) throw std::invalid_argument("potential_grid: resolution must be >= 8");
  PotentialGrid grid;
  grid.resolution = resolution;
  grid.axis.resize(resolution);
  for (std::size_t i = 0; i < resolution; ++i)
    grid.axis[i] = -M_PI + 2.0 * M_PI * static_cast<double>(i) / static_cast<double>(resolution);
  grid.energy.resize(resolution * resolution);
  for (std::size_t i = 0; i < resolution; ++i)
    for (std::size_t j = 0; j < resolution; ++j)
      grid.energy[i * resolution + j] = potential_2d(grid.axis[i], grid.axis[j], params);
  return grid;
}

LandscapeSummary analyze_landscape(const PotentialGrid& grid) {
  const std::size_t n = grid.resolution;
  if (n < 3 || grid.energy.size() != n * n)
    throw std::invalid_argument("analyze_landscape: malformed grid");
  auto wrap = [n](std::size_t i, int d) {
    return (i + static_cast<std::size_t>(static_cast<long>(n) + d)) % n;
  };

  std::vector<char> is_minimum(n * n, 0);
  std::size_t minima = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const double e = grid.at(i, j);
      bool lowest = true;
      for (int di = -1; di <= 1 && lowest; ++di)
        for (int dj = -1; dj <= 1; ++dj) {
          if (di == 0 && dj == 0) continue;
          if (!(e < grid.at(wrap(i, di), wrap(j, dj)))) {
            lowest = false;
            break;
          }
        }
      if (lowest) {
        is_minimum[i * n + j] = 1;
        ++minima;
      }
    }

  // Sweep sublevel sets upward; record the level at which two components that
  // each hold minima first touch.
  std::vector<std::size_t> order(n * n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return grid.energy[a] < grid.energy[b]; });

  DisjointSets sets(n * n);
  std::vector<char> active(n * n, 0);
  struct Merge {
    double level;
    std::size_t left;
    std::size_t right;
  };
  std::vector<Merge> merges;
  for (std::size_t idx : order) {
    active[idx] = 1;
    if (is_minimum[idx]) sets.minima(idx) = 1;
    const std::size_t i = idx / n;
    const std::size_t j = idx % n;
    const std::size_t neighbours[] = {wrap(i, -1) * n + j, wrap(i, 1) * n + j,
                                      i * n + wrap(j, -1), i * n + wrap(j, 1)};
    for (std::size_t nb : neighbours) {
      if (!active[nb]) continue;
      const std::size_t a = sets.find(idx);
      const std::size_t b = sets.find(nb);
      if (a == b) continue;
      const std::size_t ma = sets.minima(a);
      const std::size_t mb = sets.minima(b);
      if (ma > 0 && mb > 0) merges.push_back({grid.energy[idx], ma, mb});
      sets.attach(a, b);
    }
  }

  LandscapeSummary summary;
  summary.minima = minima;
  summary.unit_cells = (2.0 * M_PI) * (2.0 * M_PI) / (2.0 * M_PI * M_PI);
  const std::size_t pairs = minima / 2;
  if (minima >= 4 && minima % 2 == 0 && merges.size() >= pairs + 1) {
    summary.pairs_merge_first = std::all_of(merges.begin(), merges.begin() + static_cast<long>(pairs),
                                            [](const Merge& m) { return m.left == 1 && m.right == 1; });
    summary.intra_barrier = merges[pairs - 1].level;
    summary.inter_barrier = merges[pairs].level;
  }
  return summary;
}

}  // namespace fqlga::pcqubit
