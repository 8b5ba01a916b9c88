#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "halfscan/parallel.hpp"
#include "halfscan/scan.hpp"

namespace halfscan {

ScanResult approx_max_halfspace(std::span<const LabeledPoint> points, const PhiSpec &spec, double eps,
                                double delta, std::uint64_t seed, const ScanParams &params) {
  if (!(eps > 0.0 && eps < 1.0)) throw Error(ErrorCode::Guard, "eps must lie in (0,1)");
  if (!(delta > 0.0 && delta < 1.0)) throw Error(ErrorCode::Guard, "delta must lie in (0,1)");
  Dataset red, blue;
  for (const auto &p : points) (p.color == Color::Red ? red : blue).push_back(p);
  if (red.empty()) throw Error(ErrorCode::EmptyColorClass, "no red points");
  if (blue.empty() && spec.needs_blue()) throw Error(ErrorCode::EmptyColorClass, "no blue points");

  const int rounds = params.rounds > 0 ? params.rounds
                                       : std::max(1, static_cast<int>(std::ceil(std::log2(1.0 / delta))));
  CounterParams cp = params.counter;
  cp.eps = eps / (4.0 * spec.lipschitz_c);
  cp.delta = delta;
  cp.threads = params.threads;
  const double mass_r = color_mass(red, Color::Red);
  const double mass_b = blue.empty() ? 0.0 : color_mass(blue, Color::Blue);

  ScanResult best;
  best.value = -std::numeric_limits<double>::infinity();
  std::optional<CounterIndex> idx_r, idx_b;
  std::vector<double> val, est_r, est_b;
  for (int round = 0; round < rounds; ++round) {
    // An exact-mode index answers every query exactly, so rebuilding it for
    // the next round would only repeat the same counts.
    if (!idx_r || !idx_r->exact_mode()) idx_r = CounterIndex::build(red, cp, derive_seed(seed, "counter-red", round));
    if (!blue.empty() && (!idx_b || !idx_b->exact_mode()))
      idx_b = CounterIndex::build(blue, cp, derive_seed(seed, "counter-blue", round));

    // Region closeness eps/c keeps the discretization error in phi within eps.
    Rng rng = make_rng(seed, "candidates", static_cast<std::uint64_t>(round));
    const double cand_eps = eps / spec.lipschitz_c;
    const std::vector<Halfplane> cands = generate_candidates(points, cand_eps, rng, params.candidates);
    val.assign(cands.size(), 0.0);
    est_r.assign(cands.size(), 0.0);
    est_b.assign(cands.size(), 0.0);
    parallel_for(cands.size(), params.threads, [&](std::size_t c) {
      est_r[c] = std::clamp(idx_r->query(cands[c]) / mass_r, 0.0, 1.0);
      est_b[c] = idx_b ? std::clamp(idx_b->query(cands[c]) / mass_b, 0.0, 1.0) : 0.0;
      val[c] = spec.eval(est_r[c], est_b[c]);
    });
    for (std::size_t c = 0; c < cands.size(); ++c) {
      if (val[c] > best.value) {
        best.value = val[c];
        best.best_h = cands[c];
        best.mu_r = est_r[c];
        best.mu_b = est_b[c];
      }
    }
    best.candidates_evaluated += cands.size();
    best.rounds = round + 1;
    // X0 = all points over an exact index: another round would redo the same work
    const bool whole = std::ceil(params.candidates.c_cand / cand_eps) >= static_cast<double>(points.size());
    if (whole && idx_r->exact_mode() && (!idx_b || idx_b->exact_mode())) break;
  }
  return best;
}

}  // namespace halfscan
