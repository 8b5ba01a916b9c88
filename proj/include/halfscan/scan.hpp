#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "halfscan/counter.hpp"
#include "halfscan/geom.hpp"
#include "halfscan/phi.hpp"
#include "halfscan/rng.hpp"

namespace halfscan {

struct ScanResult {
  Halfplane best_h;
  double value = 0.0;
  double mu_r = 0.0;
  double mu_b = 0.0;
  int rounds = 0;
  std::size_t candidates_evaluated = 0;
};

struct CandidateOptions {
  double c_cand = 2.0;
  // Also emit the three perturbed versions of every pair line (one or both of
  // the pair points pushed out of the closed halfplane).
  bool pair_variants = true;
};

std::vector<Halfplane> generate_candidates(std::span<const LabeledPoint> points, double eps, Rng &rng,
                                           const CandidateOptions &opts = {});

struct ScanParams {
  CounterParams counter;  // eps/delta/threads are overridden per call
  CandidateOptions candidates;
  int rounds = 0;  // 0: ceil(log2(1/delta))
  unsigned threads = 1;
};

/// Approximate scanner over sampled candidate halfplanes. Unit (or positive integer) weights only.
ScanResult approx_max_halfspace(std::span<const LabeledPoint> points, const PhiSpec &spec, double eps,
                                double delta, std::uint64_t seed, const ScanParams &params = {});

/// Rotational sweep over every combinatorially distinct closed halfplane, O(m^2 log m).
ScanResult exact_max_halfspace(std::span<const LabeledPoint> points, const PhiSpec &spec);

/// O(m^3) pair enumeration; guard m <= 500.
ScanResult brute_force_scan(std::span<const LabeledPoint> points, const PhiSpec &spec);

inline constexpr std::size_t kBruteForceLimit = 500;

/// ceil((c_s/eps^2)(2 + ln(1/delta)))
std::size_t eps_sample_size(double eps, double delta, double c_s = 1.0);

/// Largest |density in population - density in sample| over all closed halfplanes
/// (exact sweep over the union of both sets).
double max_range_deviation(std::span<const Vec2> population, std::span<const Vec2> sample);

/// Value of h recomputed from exact (tolerant) membership counts.
ScanResult evaluate_halfplane(std::span<const LabeledPoint> points, const PhiSpec &spec, const Halfplane &h);

}  // namespace halfscan
