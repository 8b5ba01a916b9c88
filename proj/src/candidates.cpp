#include <algorithm>
#include <cmath>
#include <numeric>

#include "halfscan/scan.hpp"

namespace halfscan {
namespace {

// Offsets must beat the kEpsGeom membership slack to actually move a point
// out of a closed halfplane.
constexpr double kNudge = 4 * kEpsGeom;
constexpr double kPairNudge = 1e-7;
constexpr double kSteep = 1e7;

struct Pt {
  double x, y;
};

// Closed halfplanes bounded by (a perturbation of) the line through p and q.
// drop_p / drop_q push that point just outside.
void pair_lines(Pt p, Pt q, bool drop_p, bool drop_q, std::vector<Halfplane> &out) {
  for (Side side : {Side::Below, Side::Above}) {
    // moving a point to the outside of a Below halfplane means raising it
    const double out_dir = side == Side::Below ? 1.0 : -1.0;
    const double np = drop_p ? kPairNudge * (1.0 + std::abs(p.y)) * out_dir : 0.0;
    const double nq = drop_q ? kPairNudge * (1.0 + std::abs(q.y)) * out_dir : 0.0;
    const Pt p2{p.x, p.y + np};
    const Pt q2{q.x, q.y + nq};
    if (p2.x != q2.x) {
      const double a = (q2.y - p2.y) / (q2.x - p2.x);
      out.push_back({{a, p2.y - a * p2.x}, side});
    } else {
      // vertical pair: steep line through it, both slopes, shifted sideways for drops
      const double shift = (drop_p || drop_q) ? kPairNudge * (1.0 + std::abs(p.x)) : 0.0;
      for (double a : {kSteep, -kSteep}) {
        // Below a steep line is the side x > line^-1(y) when a > 0
        const double dx = (side == Side::Below) == (a > 0) ? shift : -shift;
        const double x0 = p.x + dx;
        const double ym = 0.5 * (p.y + q.y);
        out.push_back({{a, ym - a * x0}, side});
      }
    }
  }
}

}  // namespace

std::vector<Halfplane> generate_candidates(std::span<const LabeledPoint> points, double eps, Rng &rng,
                                           const CandidateOptions &opts) {
  if (points.size() < 2) throw Error(ErrorCode::Guard, "candidate generation needs at least two points");
  if (!(eps > 0.0 && eps < 1.0)) throw Error(ErrorCode::Guard, "eps must lie in (0,1)");
  const auto want = static_cast<std::size_t>(std::ceil(opts.c_cand / eps));
  const std::size_t n0 = std::min(points.size(), want);

  // X0 without replacement (partial Fisher-Yates)
  std::vector<std::uint32_t> idx(points.size());
  std::iota(idx.begin(), idx.end(), 0u);
  for (std::size_t i = 0; i < n0; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, idx.size() - 1);
    std::swap(idx[i], idx[pick(rng)]);
  }
  idx.resize(n0);

  std::vector<Halfplane> out;
  out.reserve(n0 * (n0 - 1) * (opts.pair_variants ? 4 : 1) + 4 * n0 + 2);
  for (std::size_t i = 0; i < n0; ++i) {
    const Pt p{points[idx[i]].x, points[idx[i]].y};
    for (std::size_t j = i + 1; j < n0; ++j) {
      const Pt q{points[idx[j]].x, points[idx[j]].y};
      if (p.x == q.x && p.y == q.y) continue;
      pair_lines(p, q, false, false, out);
      if (opts.pair_variants) {
        pair_lines(p, q, true, false, out);
        pair_lines(p, q, false, true, out);
        pair_lines(p, q, true, true, out);
      }
    }
  }
  double y_lo = points[0].y, y_hi = points[0].y;
  for (const auto &p : points) {
    y_lo = std::min(y_lo, p.y);
    y_hi = std::max(y_hi, p.y);
  }
  for (auto id : idx) {
    const double y = points[id].y;
    for (double b : {y + kNudge, y - kNudge}) {
      out.push_back({{0.0, b}, Side::Below});
      out.push_back({{0.0, b}, Side::Above});
    }
  }
  out.push_back({{0.0, y_hi + 1.0}, Side::Below});
  out.push_back({{0.0, y_lo - 1.0}, Side::Below});
  return out;
}

}  // namespace halfscan
