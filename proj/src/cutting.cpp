#include "halfscan/cutting.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace halfscan {
namespace {

double slab_rep(double lo, double hi) {
  const bool lo_inf = std::isinf(lo);
  const bool hi_inf = std::isinf(hi);
  if (!lo_inf && !hi_inf) return 0.5 * (lo + hi);
  if (lo_inf && !hi_inf) return hi - std::max(1.0, std::abs(hi));
  if (!lo_inf && hi_inf) return lo + std::max(1.0, std::abs(lo));
  return 0.0;
}

struct Distinct {
  std::vector<Line> lines;
  std::vector<std::vector<std::uint32_t>> members;  // input indices per distinct line
};

Distinct dedupe(std::span<const Line> lines) {
  std::vector<std::uint32_t> order(lines.size());
  std::iota(order.begin(), order.end(), 0u);
  std::sort(order.begin(), order.end(), [&](std::uint32_t i, std::uint32_t j) {
    if (lines[i].a != lines[j].a) return lines[i].a < lines[j].a;
    if (lines[i].b != lines[j].b) return lines[i].b < lines[j].b;
    return i < j;
  });
  Distinct d;
  for (std::uint32_t idx : order) {
    if (d.lines.empty() || !(d.lines.back() == lines[idx])) {
      d.lines.push_back(lines[idx]);
      d.members.emplace_back();
    }
    d.members.back().push_back(idx);
  }
  return d;
}

bool within_vertical(const TrapCell &c, double x, double y) {
  const double tol = 1e-9 * (1.0 + std::abs(y));
  if (c.bottom && y < c.bottom->at(x) - tol) return false;
  if (c.top && y > c.top->at(x) + tol) return false;
  return true;
}

}  // namespace

bool TrapCell::contains(double x, double y) const {
  if (x < x_lo || x > x_hi) return false;
  if (bottom && y < bottom->at(x) - kEpsGeom) return false;
  if (top && y > top->at(x) + kEpsGeom) return false;
  return true;
}

bool TrapCell::locates(double x, double y) const {
  if (x < x_lo || x > x_hi) return false;
  if (bottom && y < bottom->at(x) - kEpsGeom) return false;
  if (top && y > top->at(x) - 2 * kEpsGeom) return false;
  return true;
}

LineClass classify_line(const TrapCell &cell, const Line &ln) { return CellProbe(cell).classify(ln); }

std::size_t conflict_bound(std::size_t m, double t) {
  if (t <= 1.0) return m;
  return static_cast<std::size_t>(std::ceil(static_cast<double>(m) / t - 1e-9));
}

Cutting decompose(const TrapCell &parent, std::span<const Line> sample) {
  const Distinct d = dedupe(sample);
  const auto &ls = d.lines;

  std::vector<double> events;
  auto push_event = [&](double x, double y) {
    if (!(x > parent.x_lo && x < parent.x_hi) || !std::isfinite(x)) return;
    if (!within_vertical(parent, x, y)) return;
    events.push_back(x);
  };
  for (std::size_t i = 0; i < ls.size(); ++i) {
    for (std::size_t j = i + 1; j < ls.size(); ++j) {
      if (ls[i].a == ls[j].a) continue;
      const double x = (ls[j].b - ls[i].b) / (ls[i].a - ls[j].a);
      push_event(x, ls[i].at(x));
    }
    for (const auto &bound : {parent.bottom, parent.top}) {
      if (!bound || bound->a == ls[i].a) continue;
      const double x = (bound->b - ls[i].b) / (ls[i].a - bound->a);
      push_event(x, ls[i].at(x));
    }
  }
  std::sort(events.begin(), events.end());
  std::vector<double> breaks;
  for (double x : events)
    if (breaks.empty() || x - breaks.back() > 1e-12 * std::max(1.0, std::abs(x))) breaks.push_back(x);

  Cutting out;
  out.locator.breaks = breaks;
  out.locator.offsets.push_back(0);

  constexpr int kBottom = -1;
  constexpr int kTop = -2;
  // open[below + 1] = (above, cell) for the pieces of the previous slab; a line
  // bounds at most one piece from below within a slab.
  constexpr int kNone = -3;
  std::vector<std::pair<int, std::uint32_t>> open(ls.size() + 1, {kNone, 0});
  std::vector<std::pair<int, std::uint32_t>> next(ls.size() + 1, {kNone, 0});
  std::vector<int> touched, next_touched;
  // all distinct lines, kept sorted by height at the current slab; adjacent slabs
  // differ by a few swaps, so insertion sort is near linear
  std::vector<int> sorted(ls.size());
  std::iota(sorted.begin(), sorted.end(), 0);
  std::vector<double> h(ls.size());
  std::vector<int> order;
  for (std::size_t s = 0; s <= breaks.size(); ++s) {
    const double lo = s == 0 ? parent.x_lo : breaks[s - 1];
    const double hi = s == breaks.size() ? parent.x_hi : breaks[s];
    const double xm = slab_rep(lo, hi);

    for (std::size_t i = 0; i < ls.size(); ++i) h[i] = ls[i].at(xm);
    for (std::size_t k = 1; k < sorted.size(); ++k) {
      const int v = sorted[k];
      std::size_t j = k;
      while (j > 0 && h[sorted[j - 1]] > h[v]) {
        sorted[j] = sorted[j - 1];
        --j;
      }
      sorted[j] = v;
    }
    order.clear();
    const double y_lo = parent.bottom ? parent.bottom->at(xm) : -kInf;
    const double y_hi = parent.top ? parent.top->at(xm) : kInf;
    for (int i : sorted)
      if (h[i] > y_lo && h[i] < y_hi) order.push_back(i);

    next_touched.clear();
    int below_id = kBottom;
    for (std::size_t k = 0; k <= order.size(); ++k) {
      const int above_id = k == order.size() ? kTop : order[k];
      const auto &prev = open[below_id + 1];
      std::uint32_t cell_id;
      if (prev.first == above_id) {
        cell_id = prev.second;
        out.cells[cell_id].x_hi = hi;
      } else {
        TrapCell c;
        c.x_lo = lo;
        c.x_hi = hi;
        c.bottom = below_id == kBottom ? parent.bottom : std::optional<Line>(ls[below_id]);
        c.top = above_id == kTop ? parent.top : std::optional<Line>(ls[above_id]);
        cell_id = static_cast<std::uint32_t>(out.cells.size());
        out.cells.push_back(c);
      }
      next[below_id + 1] = {above_id, cell_id};
      next_touched.push_back(below_id + 1);
      out.locator.pieces.push_back(cell_id);
      below_id = above_id;
    }
    out.locator.offsets.push_back(static_cast<std::uint32_t>(out.locator.pieces.size()));
    for (int k : touched) open[k] = {kNone, 0};
    std::swap(open, next);
    std::swap(touched, next_touched);
  }
  return out;
}

Cutting build_cutting(const TrapCell &parent, std::span<const Line> lines, double t, Rng &rng,
                      const CuttingOptions &opts) {
  const std::size_t m = lines.size();
  if (t <= 1.0 || m == 0) {
    Cutting out;
    out.cells.push_back(parent);
    out.conflicts.emplace_back(m);
    std::iota(out.conflicts[0].begin(), out.conflicts[0].end(), 0u);
    out.below.emplace_back();
    out.below_count.push_back(0);
    out.locator.offsets = {0, 1};
    out.locator.pieces = {0};
    out.attempts = 0;
    return out;
  }

  const Distinct all = dedupe(lines);
  const std::size_t bound = conflict_bound(m, t);
  const auto want = static_cast<std::size_t>(
      std::ceil(opts.c_net * t * std::log(t * static_cast<double>(m) + 2.0)));

  std::uniform_int_distribution<std::size_t> pick(0, m - 1);
  std::vector<Line> sample;
  for (int attempt = 1; attempt <= opts.max_attempts; ++attempt) {
    sample.clear();
    if (want >= all.lines.size()) {
      sample = all.lines;
    } else {
      sample.reserve(want);
      for (std::size_t k = 0; k < want; ++k) sample.push_back(lines[pick(rng)]);
    }
    Cutting cut = decompose(parent, sample);
    const std::size_t ncell = cut.cells.size();
    cut.conflicts.assign(ncell, {});
    cut.below.assign(opts.keep_below ? ncell : 0, {});
    cut.below_count.assign(ncell, 0);
    bool ok = true;
    for (std::size_t c = 0; c < ncell && ok; ++c) {
      const CellProbe probe(cut.cells[c]);
      auto &conf = cut.conflicts[c];
      std::size_t below = 0;
      for (std::size_t j = 0; j < all.lines.size(); ++j) {
        const LineClass cls = probe.classify(all.lines[j]);
        if (cls == LineClass::Above) continue;
        const auto &mem = all.members[j];
        if (cls == LineClass::Crosses) {
          conf.insert(conf.end(), mem.begin(), mem.end());
        } else {
          below += mem.size();
          if (opts.keep_below) cut.below[c].insert(cut.below[c].end(), mem.begin(), mem.end());
        }
      }
      cut.below_count[c] = below;
      if (conf.size() > bound) ok = false;
    }
    if (ok) {
      for (auto &conf : cut.conflicts) std::sort(conf.begin(), conf.end());
      cut.attempts = attempt;
      return cut;
    }
    if (want >= all.lines.size()) break;  // the full arrangement cannot do better
  }
  throw Error(ErrorCode::CuttingFailed, "conflict bound " + std::to_string(bound) + " not met for " +
                                            std::to_string(m) + " lines at t=" + std::to_string(t));
}

}  // namespace halfscan
