#include <cmath>
#include <numbers>

#include "halfscan/generate.hpp"

namespace halfscan {

Dataset uniform_points(std::size_t n, double red_frac, Rng &rng) {
  if (!(red_frac >= 0.0 && red_frac <= 1.0)) throw Error(ErrorCode::Guard, "red fraction must lie in [0,1]");
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Dataset pts(n);
  for (auto &p : pts) {
    p.x = unit(rng);
    p.y = unit(rng);
    p.color = unit(rng) < red_frac ? Color::Red : Color::Blue;
  }
  return pts;
}

Halfplane random_halfplane(Rng &rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double ang = (unit(rng) - 0.5) * 0.95 * std::numbers::pi;
  const double a = std::tan(ang);
  const double px = unit(rng), py = unit(rng);
  const Side side = unit(rng) < 0.5 ? Side::Below : Side::Above;
  return {{a, py - a * px}, side};
}

Planted planted_points(std::size_t n, double gap, Rng &rng) {
  if (!(gap >= 0.0 && gap <= 1.0)) throw Error(ErrorCode::Guard, "gap must lie in [0,1]");
  if (n < 2) throw Error(ErrorCode::Guard, "planted instance needs n >= 2");
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Planted out;
  // a line through the middle region so both sides have room
  const double a = std::tan((unit(rng) - 0.5) * 0.5 * std::numbers::pi);
  const double cx = 0.3 + 0.4 * unit(rng), cy = 0.3 + 0.4 * unit(rng);
  out.plant = {{a, cy - a * cx}, Side::Below};

  const std::size_t n_red = n / 2, n_blue = n - n_red;
  const auto red_in = static_cast<std::size_t>(std::ceil(n_red * (1.0 + gap) / 2.0));
  const auto blue_in = static_cast<std::size_t>(std::floor(n_blue * (1.0 - gap) / 2.0));
  auto place = [&](Color c, bool inside) {
    for (;;) {
      const LabeledPoint p{unit(rng), unit(rng), c, 1.0};
      // keep a margin so the plant's own boundary cannot be ambiguous
      const double d = p.y - out.plant.line.at(p.x);
      if (inside ? d < -1e-6 : d > 1e-6) {
        out.points.push_back(p);
        return;
      }
    }
  };
  for (std::size_t i = 0; i < n_red; ++i) place(Color::Red, i < red_in);
  for (std::size_t i = 0; i < n_blue; ++i) place(Color::Blue, i < blue_in);
  return out;
}

double exact_count(std::span<const LabeledPoint> pts, const Halfplane &h) {
  double c = 0.0;
  for (const auto &p : pts)
    if (point_below(p, h)) c += p.weight;
  return c;
}

}  // namespace halfscan
