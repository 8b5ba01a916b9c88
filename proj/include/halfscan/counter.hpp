#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "halfscan/cutting.hpp"
#include "halfscan/geom.hpp"

namespace halfscan {

struct CounterParams {
  double eps = 0.05;
  double delta = 0.1;
  int r = 4;
  double c_H = 0.5;
  int leaf_cap = 0;  // 0: max(ceil(log2(1/eps)), 4)
  double c_net = 2.0;
  // Capped inputs (|H| below the root-sample target) no larger than this are
  // built without subsampling, which makes the structure an exact counter.
  std::size_t exact_limit = 1024;
  unsigned threads = 1;
};

int default_leaf_cap(double eps);

/// Root sample size and level count for n lines (fixed point of the two formulas).
struct SampleSizing {
  std::size_t target = 0;  // ceil(c_H * L^3 / eps^2 * ln(L / delta))
  std::size_t root_size = 0;  // min(n, target)
  int levels = 1;             // L
  int leaf_cap = 4;
  bool capped = false;
};
SampleSizing size_root_sample(std::size_t n, const CounterParams &params);

struct CountNode {
  std::uint32_t level = 0;
  TrapCell cell;
  std::vector<std::uint32_t> sample_ids;  // into CounterIndex::root_sample
  double m_hat = 0.0;                     // root-sample lines estimated fully below `cell`
  double weight = 1.0;                    // multiplicity of each sample line at this level
  std::uint32_t first_child = 0;
  std::uint32_t child_count = 0;
  bool is_leaf = true;
  CellLocator locator;  // over the children
};

struct LevelStats {
  std::size_t nodes = 0;
  std::size_t leaves = 0;
  std::size_t max_sample = 0;
};

class CounterIndex {
 public:
  /// Builds the hierarchy over the dual lines of `points`. Weights must be
  /// positive integers (expanded by multiplicity).
  static CounterIndex build(std::span<const LabeledPoint> points, const CounterParams &params,
                            std::uint64_t seed);

  /// Estimated number of points inside h (point units).
  double query(const Halfplane &h) const;
  std::size_t node_visit_count(const Halfplane &h) const;

  /// Estimated count, in root-sample units, of dual lines on or below (x, y).
  double estimate_below(double x, double y, std::size_t *visits = nullptr) const;
  std::size_t leaf_scan_size(const Halfplane &h) const;

  const std::vector<CountNode> &nodes() const { return nodes_; }
  const CountNode &root() const { return nodes_.front(); }
  const std::vector<Line> &root_sample() const { return root_sample_; }
  double total_mass() const { return total_mass_; }
  const CounterParams &params() const { return params_; }
  int levels() const { return levels_; }
  int leaf_cap() const { return leaf_cap_; }
  bool exact_mode() const { return exact_mode_; }
  std::vector<LevelStats> level_stats() const;

  void save(std::ostream &out) const;
  static CounterIndex load(std::istream &in);

 private:
  std::size_t descend(double x, double y, std::size_t *visits) const;

  std::vector<CountNode> nodes_;  // breadth-first; children of a node are contiguous
  std::vector<Line> root_sample_;
  double total_mass_ = 0.0;
  CounterParams params_;
  int levels_ = 1;
  int leaf_cap_ = 4;
  bool exact_mode_ = false;
};

}  // namespace halfscan
