// Binary index format, little-endian:
//   "HSCI" u32 version
//   params: f64 eps, f64 delta, i32 r, f64 c_H, i32 leaf_cap, f64 c_net, u64 exact_limit
//   i32 levels, i32 leaf_cap (effective), u8 exact_mode, f64 total_mass
//   u64 |root sample|, then (f64 a, f64 b) per line
//   u64 node count, then nodes in preorder:
//     u32 level, cell, f64 m_hat, f64 weight, u8 is_leaf, u64 |ids| + u32 ids,
//     u32 child_count, locator (u64 + f64 breaks, u64 + u32 offsets, u64 + u32 pieces)
//   cell: f64 x_lo, f64 x_hi, u8 has_top [f64 a, f64 b], u8 has_bottom [f64 a, f64 b]
#include <bit>
#include <cstring>
#include <istream>
#include <ostream>

#include "halfscan/counter.hpp"

namespace halfscan {
namespace {

static_assert(std::endian::native == std::endian::little, "index format assumes a little-endian host");

constexpr char kMagic[4] = {'H', 'S', 'C', 'I'};
constexpr std::uint32_t kVersion = 1;

template <typename T>
void put(std::ostream &out, T v) {
  out.write(reinterpret_cast<const char *>(&v), sizeof(T));
}

template <typename T>
T get(std::istream &in) {
  T v{};
  in.read(reinterpret_cast<char *>(&v), sizeof(T));
  if (!in) throw Error(ErrorCode::Parse, "truncated index file");
  return v;
}

template <typename T>
void put_vec(std::ostream &out, const std::vector<T> &v) {
  put<std::uint64_t>(out, v.size());
  if (!v.empty()) out.write(reinterpret_cast<const char *>(v.data()), static_cast<std::streamsize>(v.size() * sizeof(T)));
}

template <typename T>
std::vector<T> get_vec(std::istream &in) {
  const auto n = get<std::uint64_t>(in);
  if (n > (std::uint64_t{1} << 34)) throw Error(ErrorCode::Parse, "implausible vector length in index file");
  std::vector<T> v(n);
  if (n) in.read(reinterpret_cast<char *>(v.data()), static_cast<std::streamsize>(n * sizeof(T)));
  if (!in) throw Error(ErrorCode::Parse, "truncated index file");
  return v;
}

void put_line(std::ostream &out, const std::optional<Line> &l) {
  put<std::uint8_t>(out, l.has_value());
  if (l) {
    put(out, l->a);
    put(out, l->b);
  }
}

std::optional<Line> get_line(std::istream &in) {
  if (!get<std::uint8_t>(in)) return std::nullopt;
  Line l;
  l.a = get<double>(in);
  l.b = get<double>(in);
  return l;
}

void put_node(std::ostream &out, const std::vector<CountNode> &nodes, std::size_t at) {
  const CountNode &n = nodes[at];
  put(out, n.level);
  put(out, n.cell.x_lo);
  put(out, n.cell.x_hi);
  put_line(out, n.cell.top);
  put_line(out, n.cell.bottom);
  put(out, n.m_hat);
  put(out, n.weight);
  put<std::uint8_t>(out, n.is_leaf);
  put_vec(out, n.sample_ids);
  put(out, n.child_count);
  put_vec(out, n.locator.breaks);
  put_vec(out, n.locator.offsets);
  put_vec(out, n.locator.pieces);
  for (std::uint32_t c = 0; c < n.child_count; ++c) put_node(out, nodes, n.first_child + c);
}

// Reads the subtree rooted at slot `at`, laying children out contiguously.
void get_node(std::istream &in, std::vector<CountNode> &nodes, std::size_t at) {
  CountNode n;
  n.level = get<std::uint32_t>(in);
  n.cell.x_lo = get<double>(in);
  n.cell.x_hi = get<double>(in);
  n.cell.top = get_line(in);
  n.cell.bottom = get_line(in);
  n.m_hat = get<double>(in);
  n.weight = get<double>(in);
  n.is_leaf = get<std::uint8_t>(in) != 0;
  n.sample_ids = get_vec<std::uint32_t>(in);
  n.child_count = get<std::uint32_t>(in);
  n.locator.breaks = get_vec<double>(in);
  n.locator.offsets = get_vec<std::uint32_t>(in);
  n.locator.pieces = get_vec<std::uint32_t>(in);
  n.first_child = static_cast<std::uint32_t>(nodes.size());
  const std::uint32_t kids = n.child_count;
  nodes[at] = std::move(n);
  nodes.resize(nodes.size() + kids);
  const std::size_t first = nodes[at].first_child;
  for (std::uint32_t c = 0; c < kids; ++c) get_node(in, nodes, first + c);
}

}  // namespace

void CounterIndex::save(std::ostream &out) const {
  out.write(kMagic, 4);
  put(out, kVersion);
  put(out, params_.eps);
  put(out, params_.delta);
  put<std::int32_t>(out, params_.r);
  put(out, params_.c_H);
  put<std::int32_t>(out, params_.leaf_cap);
  put(out, params_.c_net);
  put<std::uint64_t>(out, params_.exact_limit);
  put<std::int32_t>(out, levels_);
  put<std::int32_t>(out, leaf_cap_);
  put<std::uint8_t>(out, exact_mode_);
  put(out, total_mass_);
  put<std::uint64_t>(out, root_sample_.size());
  for (const auto &l : root_sample_) {
    put(out, l.a);
    put(out, l.b);
  }
  put<std::uint64_t>(out, nodes_.size());
  put_node(out, nodes_, 0);
}

CounterIndex CounterIndex::load(std::istream &in) {
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, kMagic, 4) != 0) throw Error(ErrorCode::Parse, "not a counter index file");
  if (get<std::uint32_t>(in) != kVersion) throw Error(ErrorCode::Parse, "unsupported index version");
  CounterIndex idx;
  idx.params_.eps = get<double>(in);
  idx.params_.delta = get<double>(in);
  idx.params_.r = get<std::int32_t>(in);
  idx.params_.c_H = get<double>(in);
  idx.params_.leaf_cap = get<std::int32_t>(in);
  idx.params_.c_net = get<double>(in);
  idx.params_.exact_limit = get<std::uint64_t>(in);
  idx.levels_ = get<std::int32_t>(in);
  idx.leaf_cap_ = get<std::int32_t>(in);
  idx.exact_mode_ = get<std::uint8_t>(in) != 0;
  idx.total_mass_ = get<double>(in);
  const auto ns = get<std::uint64_t>(in);
  idx.root_sample_.resize(ns);
  for (auto &l : idx.root_sample_) {
    l.a = get<double>(in);
    l.b = get<double>(in);
  }
  const auto count = get<std::uint64_t>(in);
  idx.nodes_.reserve(count);
  idx.nodes_.resize(1);
  get_node(in, idx.nodes_, 0);
  if (idx.nodes_.size() != count) throw Error(ErrorCode::Parse, "node count mismatch in index file");
  return idx;
}

}  // namespace halfscan
