#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "halfscan/geom.hpp"
#include "halfscan/rng.hpp"

namespace halfscan {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Vertical trapezoid; absent top/bottom and infinite x-bounds mean unbounded.
struct TrapCell {
  double x_lo = -kInf;
  double x_hi = kInf;
  std::optional<Line> top;
  std::optional<Line> bottom;

  /// Closed containment with tolerance kEpsGeom.
  bool contains(double x, double y) const;
  /// Containment used for point location: a point on the top edge belongs to
  /// the cell above, so the top edge is excluded.
  bool locates(double x, double y) const;
};

enum class LineClass : std::uint8_t { Crosses, Below, Above };

/// Below: line <= bottom (+eps) over the whole x-range; Above: line >= top (-eps).
/// Lines that only touch the cell boundary are Below/Above, not Crosses.
LineClass classify_line(const TrapCell &cell, const Line &ln);

// Cell boundaries unpacked for the classification inner loop.
struct CellProbe {
  explicit CellProbe(const TrapCell &c)
      : lo(c.x_lo), hi(c.x_hi), has_bottom(c.bottom.has_value()), has_top(c.top.has_value()) {
    if (c.bottom) bottom = *c.bottom;
    if (c.top) top = *c.top;
  }

  LineClass classify(const Line &ln) const {
    if (has_bottom && sup(ln.a - bottom.a, ln.b - bottom.b) <= kEpsGeom) return LineClass::Below;
    if (has_top && -sup(top.a - ln.a, top.b - ln.b) >= -kEpsGeom) return LineClass::Above;
    return LineClass::Crosses;
  }

 private:
  // sup of da*x + db over [lo, hi]
  double sup(double da, double db) const {
    if (da > 0) return hi == std::numeric_limits<double>::infinity() ? hi : da * hi + db;
    if (da < 0) return lo == -std::numeric_limits<double>::infinity() ? -lo : da * lo + db;
    return db;
  }

  double lo, hi;
  bool has_bottom, has_top;
  Line bottom, top;
};

/// Slab-based point location over the cells of one cutting.
struct CellLocator {
  std::vector<double> breaks;         // slab boundaries, ascending; slabs = breaks.size() + 1
  std::vector<std::uint32_t> offsets;  // per slab into `pieces`, size slabs + 1
  std::vector<std::uint32_t> pieces;   // cell ids bottom to top within each slab

  std::size_t locate(std::span<const TrapCell> cells, double x, double y) const {
    return locate(x, y, [&](std::uint32_t id) -> const std::optional<Line> & { return cells[id].top; });
  }

  /// `top_of(id)` returns the top boundary of cell `id`.
  template <typename TopOf>
  std::size_t locate(double x, double y, TopOf &&top_of) const {
    const auto slab =
        static_cast<std::size_t>(std::upper_bound(breaks.begin(), breaks.end(), x) - breaks.begin());
    const auto first = pieces.begin() + offsets[slab];
    const auto last = pieces.begin() + offsets[slab + 1];
    auto it = std::partition_point(first, last, [&](std::uint32_t id) {
      const std::optional<Line> &top = top_of(id);
      return top && y > top->at(x) - 2 * kEpsGeom;
    });
    if (it == last) --it;
    return *it;
  }
};

struct Cutting {
  std::vector<TrapCell> cells;
  std::vector<std::vector<std::uint32_t>> conflicts;  // indices into the input lines
  std::vector<std::vector<std::uint32_t>> below;  // unordered; empty unless keep_below
  std::vector<std::size_t> below_count;
  CellLocator locator;
  int attempts = 0;
};

struct CuttingOptions {
  double c_net = 2.0;
  int max_attempts = 16;
  bool keep_below = true;  // the counter only needs below_count
};

/// Upper bound on any conflict list of a 1/t-cutting of m lines.
std::size_t conflict_bound(std::size_t m, double t);

/// 1/t-cutting of `parent` by `lines` (each line must cross or touch the parent).
/// Las Vegas: retries with a fresh sample until every conflict list obeys
/// conflict_bound(); throws Error(CuttingFailed) when the attempt budget runs out.
Cutting build_cutting(const TrapCell &parent, std::span<const Line> lines, double t, Rng &rng,
                      const CuttingOptions &opts = {});

/// Vertical decomposition of the arrangement of `sample` clipped to `parent`
/// (no conflict lists). Exposed for tests and the bench.
Cutting decompose(const TrapCell &parent, std::span<const Line> sample);

}  // namespace halfscan
