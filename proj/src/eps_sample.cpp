#include <cmath>

#include "halfscan/scan.hpp"

namespace halfscan {

std::size_t eps_sample_size(double eps, double delta, double c_s) {
  if (!(eps > 0.0 && eps < 1.0) || !(delta > 0.0 && delta < 1.0) || !(c_s > 0.0))
    throw Error(ErrorCode::Guard, "eps_sample_size needs eps, delta in (0,1) and c_s > 0");
  return static_cast<std::size_t>(std::ceil(c_s / (eps * eps) * (2.0 + std::log(1.0 / delta))));
}

double max_range_deviation(std::span<const Vec2> population, std::span<const Vec2> sample) {
  if (population.empty() || sample.empty()) throw Error(ErrorCode::EmptyDataset, "need a population and a sample");
  // population as red, sample as blue: disc = |mu_R - mu_B| is exactly the deviation
  Dataset pts;
  pts.reserve(population.size() + sample.size());
  for (const auto &p : population) pts.push_back({p.x, p.y, Color::Red, 1.0});
  for (const auto &p : sample) pts.push_back({p.x, p.y, Color::Blue, 1.0});
  return exact_max_halfspace(pts, phi_disc()).value;
}

}  // namespace halfscan
