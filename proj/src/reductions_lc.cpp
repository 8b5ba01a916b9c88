#include <algorithm>
#include <cmath>

#include "halfscan/reductions.hpp"

namespace halfscan {
namespace {

constexpr double kNudge = 1e-7;
constexpr double kSteep = 1e7;

}  // namespace

std::vector<double> clipped_lower_ends(std::span<const Ray> rays) {
  Dataset ends;
  ends.reserve(rays.size());
  for (const auto &r : rays) ends.push_back({r.x, r.y, Color::Red, 1.0});
  const std::vector<Vec2> env = lower_envelope(ends);
  std::vector<double> lower(rays.size());
  for (std::size_t i = 0; i < rays.size(); ++i) {
    if (rays[i].dir == RayDir::Up) {
      lower[i] = rays[i].y;
    } else {
      // an endpoint on (or within the gap of) the envelope keeps a resolvable
      // sliver between its Blue and Red points
      lower[i] = std::min(envelope_at(env, rays[i].x), rays[i].y - kEnvelopeGap);
    }
  }
  return lower;
}

LineCoveringInstance gen_line_covering(std::span<const Ray> rays, int k) {
  const auto m = static_cast<int>(rays.size());
  if (k < 1 || k > m / 2) throw Error(ErrorCode::InvalidK, "k must lie in [1, m/2], got " + std::to_string(k));
  for (const auto &r : rays)
    if (!std::isfinite(r.x) || !std::isfinite(r.y)) throw Error(ErrorCode::Guard, "ray origin must be finite");

  const std::vector<double> lower = clipped_lower_ends(rays);
  Dataset ends;
  for (const auto &r : rays) ends.push_back({r.x, r.y, Color::Red, 1.0});
  const std::vector<Vec2> env = lower_envelope(ends);

  LineCoveringInstance out;
  for (std::size_t i = 0; i < rays.size(); ++i) {
    const Ray &r = rays[i];
    if (r.dir == RayDir::Up) {
      out.points.push_back({r.x, r.y, Color::Red, 1.0});
      ++out.n_red;
    } else {
      out.points.push_back({r.x, r.y, Color::Blue, 1.0});
      out.points.push_back({r.x, lower[i], Color::Red, 1.0});
      ++out.n_blue;
      ++out.n_red;
      if (lower[i] < envelope_at(env, r.x)) out.shifted.push_back(i);
    }
  }
  out.phi = phi_line_cover(k, static_cast<double>(out.n_red), static_cast<double>(out.n_blue));
  return out;
}

std::size_t rays_cut(std::span<const Ray> rays, std::span<const double> lower_ends, const Line &ln) {
  std::size_t cut = 0;
  for (std::size_t i = 0; i < rays.size(); ++i) {
    const double v = ln.at(rays[i].x) + kEpsGeom;
    if (rays[i].dir == RayDir::Up) {
      cut += rays[i].y <= v;
    } else {
      cut += lower_ends[i] <= v && rays[i].y > v;
    }
  }
  return cut;
}

bool ray_cover_exists(std::span<const Ray> rays, int k) {
  if (k < 0) return false;
  const auto want = static_cast<std::size_t>(k);
  const std::vector<double> lower = clipped_lower_ends(rays);
  std::vector<Vec2> crit;
  for (std::size_t i = 0; i < rays.size(); ++i) {
    crit.push_back({rays[i].x, rays[i].y});
    if (rays[i].dir == RayDir::Down) crit.push_back({rays[i].x, lower[i]});
  }
  auto hit = [&](const Line &ln) { return rays_cut(rays, lower, ln) == want; };
  auto nudge = [](double y) { return kNudge * (1.0 + std::abs(y)); };

  if (want == 0 && hit(Line{0.0, -1e300})) return true;
  for (const auto &c : crit)
    for (double s : {-1.0, 0.0, 1.0})
      if (hit(Line{0.0, c.y + s * nudge(c.y)})) return true;

  for (std::size_t i = 0; i < crit.size(); ++i) {
    for (std::size_t j = i + 1; j < crit.size(); ++j) {
      const Vec2 p = crit[i], q = crit[j];
      if (p.x == q.x && p.y == q.y) continue;
      if (p.x != q.x) {
        for (double sp : {-1.0, 0.0, 1.0}) {
          for (double sq : {-1.0, 0.0, 1.0}) {
            const double py = p.y + sp * nudge(p.y);
            const double qy = q.y + sq * nudge(q.y);
            const double a = (qy - py) / (q.x - p.x);
            if (hit(Line{a, py - a * p.x})) return true;
          }
        }
      } else {
        const double ym = 0.5 * (p.y + q.y);
        for (double a : {kSteep, -kSteep})
          for (double s : {-1.0, 0.0, 1.0})
            if (hit(Line{a, ym - a * (p.x + s * nudge(p.x))})) return true;
      }
    }
  }
  return false;
}

bool reaches_full_red(const ScanResult &result, std::size_t n_red) {
  const auto r = static_cast<double>(n_red);
  return std::abs(result.value - r) <= 1e-9 * std::max(1.0, r);
}

bool verify_line_covering(std::span<const Ray> rays, int k, const ScanResult &result) {
  std::size_t n_red = rays.size();
  return reaches_full_red(result, n_red) && ray_cover_exists(rays, k);
}

double exactify(std::size_t n_red) {
  if (n_red == 0) throw Error(ErrorCode::Guard, "exactify needs |R| >= 1");
  return 1.0 / (2.0 * static_cast<double>(n_red));
}

std::vector<Ray> random_rays(std::size_t m, double p_up, Rng &rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Ray> rays(m);
  for (auto &r : rays) {
    r.x = unit(rng);
    r.y = unit(rng);
    r.dir = unit(rng) < p_up ? RayDir::Up : RayDir::Down;
  }
  return rays;
}

std::vector<Ray> convex_rays(std::size_t m, std::size_t n_up, Rng &rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Ray> rays(m);
  for (std::size_t i = 0; i < m; ++i) {
    Ray &r = rays[i];
    r.x = unit(rng);
    const double curve = (r.x - 0.5) * (r.x - 0.5);
    if (i < n_up) {
      r.dir = RayDir::Up;
      r.y = curve + 0.05 + 0.5 * unit(rng);
    } else {
      r.dir = RayDir::Down;
      r.y = curve;
    }
  }
  return rays;
}

}  // namespace halfscan
