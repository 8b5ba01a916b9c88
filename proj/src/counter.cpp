#include "halfscan/counter.hpp"

#include <algorithm>
#include <cmath>

#include "halfscan/parallel.hpp"
#include "halfscan/rng.hpp"

namespace halfscan {

int default_leaf_cap(double eps) {
  return std::max(static_cast<int>(std::ceil(std::log2(1.0 / eps))), 4);
}

SampleSizing size_root_sample(std::size_t n, const CounterParams &params) {
  if (!(params.eps > 0.0 && params.eps < 1.0)) throw Error(ErrorCode::Guard, "eps must lie in (0,1)");
  if (!(params.delta > 0.0 && params.delta < 1.0)) throw Error(ErrorCode::Guard, "delta must lie in (0,1)");
  if (params.r < 2) throw Error(ErrorCode::Guard, "r must be >= 2");

  SampleSizing s;
  s.leaf_cap = params.leaf_cap > 0 ? params.leaf_cap : default_leaf_cap(params.eps);
  const double log_r = std::log(static_cast<double>(params.r));
  auto levels_for = [&](double size) {
    if (size <= s.leaf_cap) return 1;
    return std::max(1, static_cast<int>(std::ceil(0.5 * std::log(size / s.leaf_cap) / log_r)));
  };
  auto target_for = [&](int L) {
    const double l = L;
    const double v = params.c_H * l * l * l / (params.eps * params.eps) * std::log(l / params.delta);
    return v >= 1e18 ? std::size_t{1} << 60 : static_cast<std::size_t>(std::ceil(v));
  };

  int L = levels_for(static_cast<double>(n));
  for (int iter = 0; iter < 32; ++iter) {
    const std::size_t size = std::min(n, target_for(L));
    const int next = levels_for(static_cast<double>(size));
    if (next == L) break;
    L = next;
  }
  s.target = target_for(L);
  s.capped = s.target >= n;
  s.root_size = std::min(n, s.target);
  s.levels = levels_for(static_cast<double>(s.root_size));
  return s;
}

CounterIndex CounterIndex::build(std::span<const LabeledPoint> points, const CounterParams &params,
                                 std::uint64_t seed) {
  if (points.empty()) throw Error(ErrorCode::EmptyDataset, "counter needs at least one point");

  std::vector<Line> lines;
  lines.reserve(points.size());
  for (const auto &p : points) {
    const double k = std::round(p.weight);
    if (!(p.weight > 0.0) || std::abs(p.weight - k) > 1e-9)
      throw Error(ErrorCode::InvalidWeight, "approximate counter needs positive integer weights");
    for (long c = 0; c < static_cast<long>(k); ++c) lines.push_back(to_dual(p));
  }

  CounterIndex idx;
  idx.params_ = params;
  const SampleSizing sizing = size_root_sample(lines.size(), params);
  idx.levels_ = sizing.levels;
  idx.leaf_cap_ = sizing.leaf_cap;
  idx.total_mass_ = static_cast<double>(lines.size());
  idx.exact_mode_ = sizing.capped && lines.size() <= params.exact_limit;

  if (sizing.capped) {
    idx.root_sample_ = std::move(lines);
  } else {
    Rng rng = make_rng(seed, "root-sample");
    std::uniform_int_distribution<std::size_t> pick(0, lines.size() - 1);
    idx.root_sample_.reserve(sizing.root_size);
    for (std::size_t k = 0; k < sizing.root_size; ++k) idx.root_sample_.push_back(lines[pick(rng)]);
  }

  const auto hat = static_cast<double>(idx.root_sample_.size());
  const int r = params.r;
  const int L = idx.levels_;
  const auto leaf_cap = static_cast<std::size_t>(idx.leaf_cap_);
  const CuttingOptions cut_opts{params.c_net, 16, false};

  CountNode root;
  root.sample_ids.resize(idx.root_sample_.size());
  for (std::uint32_t k = 0; k < root.sample_ids.size(); ++k) root.sample_ids[k] = k;
  root.is_leaf = root.sample_ids.size() <= leaf_cap;
  idx.nodes_.push_back(std::move(root));

  std::size_t level_begin = 0;
  for (int level = 0; level <= L; ++level) {
    const std::size_t level_end = idx.nodes_.size();
    if (level_begin == level_end) break;
    std::vector<std::vector<CountNode>> produced(level_end - level_begin);

    parallel_for(level_end - level_begin, params.threads, [&](std::size_t ord) {
      CountNode &node = idx.nodes_[level_begin + ord];
      if (node.is_leaf) return;
      const double m = static_cast<double>(node.sample_ids.size());
      const int extra = idx.exact_mode_ ? 1 : 0;
      const double t = std::max(m * std::pow(r, 2 * level + 1 + extra) / hat, 1.0);

      std::vector<Line> local;
      local.reserve(node.sample_ids.size());
      for (auto id : node.sample_ids) local.push_back(idx.root_sample_[id]);
      Rng rng = make_rng(seed, "cell", static_cast<std::uint64_t>(level), ord);
      Cutting cut = build_cutting(node.cell, local, t, rng, cut_opts);

      auto &kids = produced[ord];
      kids.resize(cut.cells.size());
      for (std::size_t c = 0; c < cut.cells.size(); ++c) {
        CountNode &kid = kids[c];
        kid.level = static_cast<std::uint32_t>(level + 1);
        kid.cell = cut.cells[c];
        kid.m_hat = node.weight * static_cast<double>(cut.below_count[c]) + node.m_hat;
        const auto &conf = cut.conflicts[c];
        if (idx.exact_mode_) {
          kid.weight = 1.0;
          kid.sample_ids.reserve(conf.size());
          for (auto k : conf) kid.sample_ids.push_back(node.sample_ids[k]);
        } else {
          kid.weight = node.weight * r;
          const std::size_t want = (conf.size() + r - 1) / r;
          if (want > 0) {
            std::uniform_int_distribution<std::size_t> pick(0, conf.size() - 1);
            kid.sample_ids.reserve(want);
            for (std::size_t k = 0; k < want; ++k) kid.sample_ids.push_back(node.sample_ids[conf[pick(rng)]]);
          }
        }
        kid.is_leaf = kid.sample_ids.size() <= leaf_cap || level + 1 >= L;
      }
      node.locator = std::move(cut.locator);
    });

    for (std::size_t ord = 0; ord < produced.size(); ++ord) {
      const std::size_t at = level_begin + ord;
      if (idx.nodes_[at].is_leaf) continue;
      idx.nodes_[at].first_child = static_cast<std::uint32_t>(idx.nodes_.size());
      idx.nodes_[at].child_count = static_cast<std::uint32_t>(produced[ord].size());
      for (auto &kid : produced[ord]) idx.nodes_.push_back(std::move(kid));
    }
    level_begin = level_end;
  }
  return idx;
}

std::size_t CounterIndex::descend(double x, double y, std::size_t *visits) const {
  std::size_t cur = 0;
  std::size_t count = 1;
  while (!nodes_[cur].is_leaf) {
    const CountNode &node = nodes_[cur];
    const std::size_t k = node.locator.locate(x, y, [&](std::uint32_t id) -> const std::optional<Line> & {
      return nodes_[node.first_child + id].cell.top;
    });
    cur = node.first_child + k;
    ++count;
  }
  if (visits) *visits = count;
  return cur;
}

double CounterIndex::estimate_below(double x, double y, std::size_t *visits) const {
  const CountNode &leaf = nodes_[descend(x, y, visits)];
  std::size_t below = 0;
  for (auto id : leaf.sample_ids)
    if (root_sample_[id].at(x) <= y + kEpsGeom) ++below;
  return leaf.m_hat + leaf.weight * static_cast<double>(below);
}

namespace {
// Dual query point for h: "Above" counts lines on/below (a, -b); "Below" is the
// complement of lines strictly below, probed just under the dual point.
std::pair<double, double> probe_point(const Halfplane &h) {
  const double qy = -h.line.b;
  return {h.line.a, h.side == Side::Above ? qy : qy - 3 * kEpsGeom};
}
}  // namespace

double CounterIndex::query(const Halfplane &h) const {
  const auto [x, y] = probe_point(h);
  const double scale = total_mass_ / static_cast<double>(root_sample_.size());
  const double below = estimate_below(x, y) * scale;
  const double count = h.side == Side::Above ? below : total_mass_ - below;
  return std::clamp(count, 0.0, total_mass_);
}

std::size_t CounterIndex::node_visit_count(const Halfplane &h) const {
  const auto [x, y] = probe_point(h);
  std::size_t visits = 0;
  descend(x, y, &visits);
  return visits;
}

std::size_t CounterIndex::leaf_scan_size(const Halfplane &h) const {
  const auto [x, y] = probe_point(h);
  return nodes_[descend(x, y, nullptr)].sample_ids.size();
}

std::vector<LevelStats> CounterIndex::level_stats() const {
  std::vector<LevelStats> out;
  for (const auto &n : nodes_) {
    if (n.level >= out.size()) out.resize(n.level + 1);
    auto &s = out[n.level];
    ++s.nodes;
    if (n.is_leaf) ++s.leaves;
    s.max_sample = std::max(s.max_sample, n.sample_ids.size());
  }
  return out;
}

}  // namespace halfscan
