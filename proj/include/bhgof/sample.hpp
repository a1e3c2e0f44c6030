#pragma once

#include <algorithm>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

namespace bhgof {

/// A sequence of nonnegative integer count pairs.
struct BivariateSample {
  std::vector<std::pair<int, int>> pairs;

  int n() const { return static_cast<int>(pairs.size()); }

  int max_x() const {
    int m = 0;
    for (const auto& [x, y] : pairs) m = std::max(m, x);
    return m;
  }
  int max_y() const {
    int m = 0;
    for (const auto& [x, y] : pairs) m = std::max(m, y);
    return m;
  }

  void require_valid() const {
    if (pairs.empty()) throw std::invalid_argument("empty sample");
    for (const auto& [x, y] : pairs)
      if (x < 0 || y < 0) throw std::invalid_argument("negative count in sample");
  }
};

/// Unique cells with multiplicities; the hot-path representation for the
/// epgf, the statistic and the likelihood.
struct CellCounts {
  struct Cell {
    int x, y, count;
  };
  std::vector<Cell> cells;
  int n = 0;
  int max_x = 0, max_y = 0;

  static CellCounts from(const BivariateSample& s) {
    std::map<std::pair<int, int>, int> acc;
    for (const auto& xy : s.pairs) ++acc[xy];
    CellCounts cc;
    cc.n = s.n();
    cc.cells.reserve(acc.size());
    for (const auto& [xy, m] : acc) {
      cc.cells.push_back({xy.first, xy.second, m});
      cc.max_x = std::max(cc.max_x, xy.first);
      cc.max_y = std::max(cc.max_y, xy.second);
    }
    return cc;
  }
};

}  // namespace bhgof
