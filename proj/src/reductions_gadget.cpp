#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "halfscan/reductions.hpp"

namespace halfscan {
namespace {

// Unit-normal form n.p = c, rotated clockwise by theta.
struct NormalLine {
  double nx, ny, c;
};

NormalLine rotate_cw(const NormalLine &l, double theta) {
  const double cs = std::cos(theta), sn = std::sin(theta);
  return {l.nx * cs + l.ny * sn, -l.nx * sn + l.ny * cs, l.c};
}

Line to_slope(const NormalLine &l) { return {-l.nx / l.ny, l.c / l.ny}; }

double perp_distance(const Line &l, double x, double y) {
  return std::abs(l.a * x - y + l.b) / std::hypot(l.a, 1.0);
}

bool intersect(const Line &p, const Line &q, double &x, double &y) {
  if (p.a == q.a) return false;
  x = (q.b - p.b) / (p.a - q.a);
  y = p.at(x);
  return true;
}

}  // namespace

GadgetInstance gen_clique_gadget(const TripartiteGraph &g, double theta) {
  const int n = g.n;
  if (n < 1) throw Error(ErrorCode::Guard, "gadget needs n >= 1");
  const auto nn = static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
  if (g.w_ab.size() != nn || g.w_ac.size() != nn || g.w_bc.size() != nn)
    throw Error(ErrorCode::Guard, "weight tables must be n x n");

  double w_max = 0.0;
  for (const auto *tab : {&g.w_ab, &g.w_ac, &g.w_bc})
    for (double w : *tab) {
      if (!std::isfinite(w)) throw Error(ErrorCode::InvalidWeight, "edge weights must be finite");
      w_max = std::max(w_max, std::abs(w));
    }

  GadgetInstance inst;
  inst.n = n;
  inst.w_bar = 2.0 * w_max + 1.0;
  inst.alpha = 0.1 / (5.0 * n * n + 3.0 * n);
  inst.theta = theta;

  const double n2 = static_cast<double>(n) * n;
  const double r2 = std::numbers::sqrt2;
  auto add = [&](EdgeColor color, int u, int v, double w, NormalLine mid) {
    DoubleLine d;
    d.color = color;
    d.u = u;
    d.v = v;
    d.weight = w + inst.w_bar;
    NormalLine lo = mid, hi = mid;
    lo.c -= inst.alpha / 2;
    hi.c += inst.alpha / 2;
    Line a = to_slope(rotate_cw(lo, theta));
    Line b = to_slope(rotate_cw(hi, theta));
    if (a.b > b.b) std::swap(a, b);  // b is now the upper member
    d.mid = to_slope(rotate_cw(mid, theta));
    d.lower = inst.lines.size();
    inst.lines.push_back({a, d.weight});
    d.upper = inst.lines.size();
    inst.lines.push_back({b, -d.weight});
    inst.doubles.push_back(d);
  };

  // 1-based i, j, k in the layout formulas
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      add(EdgeColor::Blue, i - 1, j - 1, g.ab(i - 1, j - 1), {0.0, 1.0, -j - 5.0 * n2 * i});
  for (int i = 1; i <= n; ++i)
    for (int k = 1; k <= n; ++k) {
      const double o = -3.0 * n * k - 5.0 * n2 * i;
      add(EdgeColor::Red, i - 1, k - 1, g.ac(i - 1, k - 1), {-1.0 / r2, 1.0 / r2, o / r2});
    }
  for (int j = 1; j <= n; ++j)
    for (int k = 1; k <= n; ++k)
      add(EdgeColor::Black, j - 1, k - 1, g.bc(j - 1, k - 1), {1.0, 0.0, -j + 3.0 * n * k});
  return inst;
}

double point_weight(std::span<const WeightedLine> lines, double x, double y) {
  double w = 0.0;
  for (const auto &l : lines)
    if (l.line.at(x) <= y + kEpsGeom) w += l.weight;
  return w;
}

WeightPoint max_weight_point(std::span<const WeightedLine> lines) {
  if (lines.empty()) throw Error(ErrorCode::EmptyDataset, "max_weight_point needs at least one line");
  if (lines.size() > kMaxWeightPointLimit)
    throw Error(ErrorCode::TooLargeForOracle,
                "max_weight_point limited to " + std::to_string(kMaxWeightPointLimit) + " lines");

  WeightPoint best;
  best.weight = -std::numeric_limits<double>::infinity();
  auto score = [&](double x, double y) {
    const double w = point_weight(lines, x, y);
    if (w > best.weight) best = {x, y, w};
  };

  const std::size_t m = lines.size();
  std::vector<double> ang;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      double vx, vy;
      if (!intersect(lines[i].line, lines[j].line, vx, vy)) continue;
      score(vx, vy);
      // one point inside each sector around the vertex
      ang.clear();
      double gap = std::numeric_limits<double>::infinity();
      for (const auto &l : lines) {
        const double d = perp_distance(l.line, vx, vy);
        if (d <= 1e-9 * (1.0 + std::abs(vy))) {
          const double t = std::atan(l.line.a);
          ang.push_back(t);
          ang.push_back(t + std::numbers::pi);
        } else {
          gap = std::min(gap, d);
        }
      }
      const double r = std::isfinite(gap) ? 0.5 * gap : 1.0;
      std::sort(ang.begin(), ang.end());
      for (std::size_t s = 0; s < ang.size(); ++s) {
        const double nxt = s + 1 < ang.size() ? ang[s + 1] : ang[0] + 2 * std::numbers::pi;
        const double mid = 0.5 * (ang[s] + nxt);
        score(vx + r * std::cos(mid), vy + r * std::sin(mid));
      }
    }
  }

  // on, just above and just below every line (covers lines without vertices)
  double lowest = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < m; ++i) {
    const double y = lines[i].line.at(0.0);
    lowest = std::min(lowest, y);
    double gap = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < m; ++j) {
      const double d = std::abs(lines[j].line.at(0.0) - y);
      if (d > 1e-9 * (1.0 + std::abs(y))) gap = std::min(gap, d);
    }
    const double r = std::isfinite(gap) ? 0.5 * gap : 1.0;
    score(0.0, y);
    score(0.0, y + r);
    score(0.0, y - r);
  }
  score(0.0, lowest - 1.0);
  return best;
}

double max_triangle_weight(const TripartiteGraph &g) {
  double best = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < g.n; ++i)
    for (int j = 0; j < g.n; ++j)
      for (int k = 0; k < g.n; ++k) best = std::max(best, g.ab(i, j) + g.ac(i, k) + g.bc(j, k));
  return best;
}

GadgetReport verify_gadget(const TripartiteGraph &g, const GadgetInstance &inst) {
  if (g.n > 8) throw Error(ErrorCode::TooLargeForOracle, "verify_gadget limited to n <= 8");
  GadgetReport rep;
  const WeightPoint top = max_weight_point(inst.lines);
  rep.max_weight = top.weight;
  rep.expected = 3.0 * inst.w_bar + max_triangle_weight(g);
  rep.max_ok = std::abs(rep.max_weight - rep.expected) <= 1e-6;

  std::vector<const DoubleLine *> blue, red, black;
  for (const auto &d : inst.doubles) {
    if (d.color == EdgeColor::Blue) blue.push_back(&d);
    else if (d.color == EdgeColor::Red) red.push_back(&d);
    else black.push_back(&d);
  }
  // inside a band = within half its width of the midline
  const double tol = inst.alpha / 2;

  // triple intersections: a blue/red crossing that a black double line passes through
  for (const auto *b : blue)
    for (const auto *r : red) {
      double x, y;
      if (!intersect(b->mid, r->mid, x, y)) continue;
      for (const auto *k : black) {
        if (perp_distance(k->mid, x, y) > tol) continue;
        ++rep.triples;
        // blue (i, j), red (i, k), black (j, k)
        if (!(b->u == r->u && b->v == k->u && r->v == k->v)) ++rep.unintended;
      }
    }
  const auto nn = static_cast<std::size_t>(g.n);
  rep.no_unintended_triples = rep.unintended == 0 && rep.triples == nn * nn * nn;

  // double-intersection witnesses: crossings of two colors off every line of the third
  auto witness = [&](const std::vector<const DoubleLine *> &p, const std::vector<const DoubleLine *> &q,
                     const std::vector<const DoubleLine *> &third) {
    for (const auto *d1 : p)
      for (const auto *d2 : q) {
        double x, y;
        if (!intersect(d1->mid, d2->mid, x, y)) continue;
        bool on_third = false;
        for (const auto *d3 : third) on_third = on_third || perp_distance(d3->mid, x, y) <= tol;
        if (on_third) continue;
        ++rep.witnesses;
        const double w = point_weight(inst.lines, x, y);
        rep.worst_witness = rep.witnesses == 1 ? w : std::max(rep.worst_witness, w);
        if (!(w < 1.5 * inst.w_bar)) ++rep.bad_witnesses;
      }
  };
  witness(blue, red, black);
  witness(blue, black, red);
  witness(red, black, blue);
  rep.witnesses_ok = rep.bad_witnesses == 0;
  return rep;
}

TripartiteGraph random_graph(int n, double w_max, Rng &rng) {
  std::uniform_real_distribution<double> w(-w_max, w_max);
  TripartiteGraph g;
  g.n = n;
  const auto nn = static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
  for (auto *tab : {&g.w_ab, &g.w_ac, &g.w_bc}) {
    tab->resize(nn);
    for (auto &x : *tab) x = w(rng);
  }
  return g;
}

}  // namespace halfscan
