#include "halfscan/geom.hpp"

#include <algorithm>
#include <numeric>

namespace halfscan {

const char *to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::EmptyColorClass: return "EmptyColorClass";
    case ErrorCode::EmptyDataset: return "EmptyDataset";
    case ErrorCode::CuttingFailed: return "CuttingFailed";
    case ErrorCode::InvalidMu: return "InvalidMu";
    case ErrorCode::InvalidWeight: return "InvalidWeight";
    case ErrorCode::TooLargeForOracle: return "TooLargeForOracle";
    case ErrorCode::InvalidK: return "InvalidK";
    case ErrorCode::Guard: return "Guard";
    case ErrorCode::Parse: return "Parse";
  }
  return "Unknown";
}

bool contains(const Halfplane &h, double x, double y) {
  const double lv = h.line.at(x);
  return h.side == Side::Below ? y <= lv + kEpsGeom : y >= lv - kEpsGeom;
}

bool point_below(const LabeledPoint &p, const Halfplane &h) { return contains(h, p.x, p.y); }

DualPoint to_dual(const Line &l) { return {l.a, -l.b}; }
Line to_dual(const LabeledPoint &p) { return {p.x, -p.y}; }
Line to_dual(const DualPoint &q) { return {q.u, -q.v}; }

std::vector<Vec2> lower_envelope(std::span<const LabeledPoint> pts) {
  std::vector<std::size_t> order(pts.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    if (pts[i].x != pts[j].x) return pts[i].x < pts[j].x;
    return pts[i].y < pts[j].y;
  });

  std::vector<Vec2> chain;
  chain.reserve(pts.size());
  for (std::size_t idx : order) {
    const Vec2 p{pts[idx].x, pts[idx].y};
    // Same x: only the lowest survives (it was pushed first).
    if (!chain.empty() && chain.back().x == p.x) continue;
    while (chain.size() >= 2 && cross(chain[chain.size() - 2], chain.back(), p) <= 0.0)
      chain.pop_back();
    chain.push_back(p);
  }
  return chain;
}

double envelope_at(std::span<const Vec2> chain, double x) {
  if (chain.empty()) return 0.0;
  if (x <= chain.front().x) return chain.front().y;
  if (x >= chain.back().x) return chain.back().y;
  auto it = std::upper_bound(chain.begin(), chain.end(), x,
                             [](double v, const Vec2 &c) { return v < c.x; });
  const Vec2 &hi = *it;
  const Vec2 &lo = *(it - 1);
  const double t = (x - lo.x) / (hi.x - lo.x);
  return lo.y + t * (hi.y - lo.y);
}

double color_mass(std::span<const LabeledPoint> points, Color color) {
  double s = 0.0;
  for (const auto &p : points)
    if (p.color == color) s += p.weight;
  return s;
}

std::size_t color_count(std::span<const LabeledPoint> points, Color color) {
  return static_cast<std::size_t>(
      std::count_if(points.begin(), points.end(), [&](const LabeledPoint &p) { return p.color == color; }));
}

double mu(std::span<const LabeledPoint> points, const Halfplane &h, Color color) {
  if (color_count(points, color) == 0)
    throw Error(ErrorCode::EmptyColorClass, "no points of the requested color");
  double inside = 0.0;
  double total = 0.0;
  for (const auto &p : points) {
    if (p.color != color) continue;
    total += p.weight;
    if (point_below(p, h)) inside += p.weight;
  }
  if (total == 0.0) throw Error(ErrorCode::InvalidWeight, "color class has zero total weight");
  return inside / total;
}

}  // namespace halfscan
