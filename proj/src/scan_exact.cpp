#include <algorithm>
#include <cmath>
#include <limits>

#include "halfscan/scan.hpp"

namespace halfscan {
namespace {

// on-line points closer than this along the line cannot be split apart
constexpr double kTieT = 1e-9;
constexpr double kCollinear = 1e-12;

struct Mass {
  double r = 0.0;
  double b = 0.0;
  Mass &operator+=(const Mass &o) {
    r += o.r;
    b += o.b;
    return *this;
  }
  Mass &operator-=(const Mass &o) {
    r -= o.r;
    b -= o.b;
    return *this;
  }
  friend Mass operator+(Mass a, const Mass &o) { return a += o; }
  friend Mass operator-(Mass a, const Mass &o) { return a -= o; }
};

Mass mass_of(const LabeledPoint &p) {
  return p.color == Color::Red ? Mass{p.weight, 0.0} : Mass{0.0, p.weight};
}

struct OnLine {
  double t;
  std::uint32_t id;
};

enum class ChoiceKind { Empty, All, Split };

// Enough to rebuild the winning halfplane once the sweep is done.
struct Choice {
  ChoiceKind kind = ChoiceKind::Empty;
  Vec2 pivot;
  Vec2 dir;
  std::vector<OnLine> on;
  bool left = true;
  bool prefix = true;
  std::size_t split = 0;
};

struct Scorer {
  std::span<const LabeledPoint> pts;
  const PhiSpec &spec;
  Mass total;

  double best = -std::numeric_limits<double>::infinity();
  Mass best_in;
  Choice choice;
  std::size_t evaluated = 0;

  Scorer(std::span<const LabeledPoint> p, const PhiSpec &s) : pts(p), spec(s) {
    for (const auto &q : pts) total += mass_of(q);
    if (total.r == 0.0) throw Error(ErrorCode::EmptyColorClass, "no red mass");
    if (spec.needs_blue() && total.b == 0.0) throw Error(ErrorCode::EmptyColorClass, "no blue mass");
  }

  double mu_r(const Mass &in) const { return in.r / total.r; }
  double mu_b(const Mass &in) const { return total.b != 0.0 ? in.b / total.b : 0.0; }
  double value(const Mass &in) const { return spec.eval(mu_r(in), mu_b(in)); }

  bool offer(const Mass &in) {
    ++evaluated;
    const double v = value(in);
    if (!(v > best)) return false;
    best = v;
    best_in = in;
    return true;
  }

  void trivial() {
    if (offer(Mass{})) {
      choice = Choice{};
      choice.kind = ChoiceKind::Empty;
    }
    if (offer(total)) {
      choice = Choice{};
      choice.kind = ChoiceKind::All;
    }
  }

  // Closed halfplanes whose boundary is near the line (pivot, dir): the strict
  // side plus a prefix or suffix (by t) of the points on the line.
  void line(Mass left, Mass right, std::vector<OnLine> &on, Vec2 pivot, Vec2 dir) {
    std::sort(on.begin(), on.end(), [](const OnLine &a, const OnLine &b) {
      return a.t != b.t ? a.t < b.t : a.id < b.id;
    });
    Mass on_total;
    for (const auto &o : on) on_total += mass_of(pts[o.id]);
    Mass pre;
    const std::size_t k = on.size();
    for (std::size_t j = 0; j <= k; ++j) {
      if (j > 0) pre += mass_of(pts[on[j - 1].id]);
      if (j > 0 && j < k && on[j].t - on[j - 1].t <= kTieT) continue;
      const Mass suf = on_total - pre;
      const struct {
        Mass in;
        bool left, prefix;
      } variants[4] = {{left + pre, true, true}, {left + suf, true, false},
                       {right + pre, false, true}, {right + suf, false, false}};
      for (const auto &v : variants) {
        if (offer(v.in)) choice = Choice{ChoiceKind::Split, pivot, dir, on, v.left, v.prefix, j};
      }
    }
  }
};

Halfplane realize(std::span<const LabeledPoint> pts, const Choice &c) {
  double y_lo = std::numeric_limits<double>::infinity();
  double y_hi = -y_lo;
  for (const auto &p : pts) {
    y_lo = std::min(y_lo, p.y);
    y_hi = std::max(y_hi, p.y);
  }
  if (c.kind == ChoiceKind::Empty) return {{0.0, y_lo - 1.0}, Side::Below};
  if (c.kind == ChoiceKind::All) return {{0.0, y_hi + 1.0}, Side::Below};

  // Rotate the line about a point z between on-line positions: counterclockwise
  // sends the points before z (smaller t) to the left side.
  const auto &on = c.on;
  const std::size_t k = on.size();
  const double span = std::max(1.0, on.back().t - on.front().t);
  double tz;
  if (c.split == 0) tz = on.front().t - span;
  else if (c.split == k) tz = on.back().t + span;
  else tz = 0.5 * (on[c.split - 1].t + on[c.split].t);
  const Vec2 z{c.pivot.x + c.dir.x * tz, c.pivot.y + c.dir.y * tz};

  std::vector<char> is_on(pts.size(), 0);
  for (const auto &o : on) is_on[o.id] = 1;
  double off = std::numeric_limits<double>::infinity();
  double far = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const Vec2 d{pts[i].x - c.pivot.x, pts[i].y - c.pivot.y};
    if (!is_on[i]) off = std::min(off, std::abs(c.dir.x * d.y - c.dir.y * d.x));
    far = std::max(far, std::hypot(pts[i].x - z.x, pts[i].y - z.y));
  }
  if (!std::isfinite(off)) off = 1.0;
  const double sign = c.left == c.prefix ? 1.0 : -1.0;
  double s = std::min(0.25, off / (4.0 * std::max(far, 1e-300)));
  const Vec2 n{-c.dir.y, c.dir.x};
  Vec2 d2;
  for (;;) {
    const double cs = std::sqrt(1.0 - s * s);
    d2 = {c.dir.x * cs + sign * s * n.x, c.dir.y * cs + sign * s * n.y};
    if (d2.x != 0.0) break;
    s *= 0.5;
  }
  const double a = d2.y / d2.x;
  const Line ln{a, z.y - a * z.x};
  const bool left_is_above = d2.x > 0.0;
  return {ln, c.left == left_is_above ? Side::Above : Side::Below};
}

ScanResult finish(std::span<const LabeledPoint> pts, const Scorer &sc) {
  ScanResult out;
  out.best_h = realize(pts, sc.choice);
  out.value = sc.best;
  out.mu_r = sc.mu_r(sc.best_in);
  out.mu_b = sc.mu_b(sc.best_in);
  out.rounds = 1;
  out.candidates_evaluated = sc.evaluated;
  return out;
}

}  // namespace

ScanResult exact_max_halfspace(std::span<const LabeledPoint> points, const PhiSpec &spec) {
  if (points.empty()) throw Error(ErrorCode::EmptyDataset, "scan needs at least one point");
  Scorer sc(points, spec);
  sc.trivial();

  struct Item {
    double key;
    Vec2 u;
    double t;
    std::uint32_t id;
    bool fwd;
  };
  const std::size_t m = points.size();
  std::vector<Item> items;
  std::vector<OnLine> on;
  for (std::size_t i = 0; i < m; ++i) {
    const Vec2 p{points[i].x, points[i].y};
    items.clear();
    std::vector<std::uint32_t> dups{static_cast<std::uint32_t>(i)};
    Mass left, others;
    for (std::size_t j = 0; j < m; ++j) {
      if (j == i) continue;
      const Vec2 d{points[j].x - p.x, points[j].y - p.y};
      if (d.x == 0.0 && d.y == 0.0) {
        dups.push_back(static_cast<std::uint32_t>(j));
        continue;
      }
      // canonical direction in [0, pi); the sign says which way along it the point lies
      const bool fwd = d.y > 0.0 || (d.y == 0.0 && d.x > 0.0);
      const Vec2 u = fwd ? d : Vec2{-d.x, -d.y};
      const double len = std::hypot(d.x, d.y);
      items.push_back({std::atan2(u.y, u.x), u, fwd ? len : -len, static_cast<std::uint32_t>(j), fwd});
      others += mass_of(points[j]);
      if (fwd) left += mass_of(points[j]);
    }
    std::sort(items.begin(), items.end(), [](const Item &a, const Item &b) {
      return a.key != b.key ? a.key < b.key : a.id < b.id;
    });

    // Sweeping the direction from 0 to pi, `left` holds the mass strictly left
    // of the directed line just before the current group.
    for (std::size_t g = 0; g < items.size();) {
      const Vec2 u0 = items[g].u;
      const double n0 = std::hypot(u0.x, u0.y);
      std::size_t e = g + 1;
      while (e < items.size()) {
        const Vec2 u = items[e].u;
        if (std::abs(u0.x * u.y - u0.y * u.x) > kCollinear * n0 * std::hypot(u.x, u.y)) break;
        ++e;
      }
      Mass fwd, bwd;
      on.clear();
      for (auto id : dups) on.push_back({0.0, id});
      for (std::size_t q = g; q < e; ++q) {
        (items[q].fwd ? fwd : bwd) += mass_of(points[items[q].id]);
        on.push_back({items[q].t, items[q].id});
      }
      const Mass strict_left = left - fwd;
      const Mass strict_right = others - strict_left - fwd - bwd;
      sc.line(strict_left, strict_right, on, p, Vec2{u0.x / n0, u0.y / n0});
      left = left - fwd + bwd;
      g = e;
    }
  }
  return finish(points, sc);
}

ScanResult brute_force_scan(std::span<const LabeledPoint> points, const PhiSpec &spec) {
  if (points.size() > kBruteForceLimit)
    throw Error(ErrorCode::TooLargeForOracle, "brute force scan limited to " + std::to_string(kBruteForceLimit) + " points");
  if (points.empty()) throw Error(ErrorCode::EmptyDataset, "scan needs at least one point");
  Scorer sc(points, spec);
  sc.trivial();
  const std::size_t m = points.size();
  std::vector<OnLine> on;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      const Vec2 p{points[i].x, points[i].y};
      const Vec2 d{points[j].x - p.x, points[j].y - p.y};
      const double len = std::hypot(d.x, d.y);
      if (len == 0.0) continue;
      const Vec2 dir{d.x / len, d.y / len};
      Mass left, right;
      on.clear();
      for (std::size_t k = 0; k < m; ++k) {
        const Vec2 e{points[k].x - p.x, points[k].y - p.y};
        const double h = d.x * e.y - d.y * e.x;
        if (std::abs(h) <= kCollinear * len * std::hypot(e.x, e.y)) {
          on.push_back({e.x * dir.x + e.y * dir.y, static_cast<std::uint32_t>(k)});
        } else {
          (h > 0 ? left : right) += mass_of(points[k]);
        }
      }
      sc.line(left, right, on, p, dir);
    }
  }
  return finish(points, sc);
}

ScanResult evaluate_halfplane(std::span<const LabeledPoint> points, const PhiSpec &spec, const Halfplane &h) {
  Mass total, in;
  for (const auto &p : points) {
    total += mass_of(p);
    if (point_below(p, h)) in += mass_of(p);
  }
  if (total.r == 0.0) throw Error(ErrorCode::EmptyColorClass, "no red mass");
  if (spec.needs_blue() && total.b == 0.0) throw Error(ErrorCode::EmptyColorClass, "no blue mass");
  ScanResult out;
  out.best_h = h;
  out.mu_r = in.r / total.r;
  out.mu_b = total.b != 0.0 ? in.b / total.b : 0.0;
  out.value = spec.eval(out.mu_r, out.mu_b);
  out.rounds = 0;
  out.candidates_evaluated = 1;
  return out;
}

}  // namespace halfscan
