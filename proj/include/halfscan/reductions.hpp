#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "halfscan/geom.hpp"
#include "halfscan/phi.hpp"
#include "halfscan/rng.hpp"
#include "halfscan/scan.hpp"

namespace halfscan {

// ---- Line-Covering -> Max-Halfspace ----

enum class RayDir : std::uint8_t { Up, Down };

struct Ray {
  double x = 0.0;
  double y = 0.0;
  RayDir dir = RayDir::Up;
};

struct LineCoveringInstance {
  Dataset points;
  PhiSpec phi;
  std::size_t n_red = 0;
  std::size_t n_blue = 0;
  // Down rays whose envelope point had to be pushed below the endpoint.
  std::vector<std::size_t> shifted;
};

/// Gap kept between a Down ray's endpoint and its Red envelope point.
inline constexpr double kEnvelopeGap = 1e-6;

/// Lower end used for each ray when counting cuts: the envelope height (less
/// the gap when needed) for Down rays, the endpoint for Up rays.
std::vector<double> clipped_lower_ends(std::span<const Ray> rays);

/// Throws Error(InvalidK) unless 1 <= k <= m/2.
LineCoveringInstance gen_line_covering(std::span<const Ray> rays, int k);

/// Brute force over lines through pairs of critical points (endpoints and
/// envelope points) and their small perturbations: is there a line cutting
/// exactly k rays, with Down rays clipped at the lower envelope?
bool ray_cover_exists(std::span<const Ray> rays, int k);

/// Number of rays cut by y = a x + b under the closed, clipped semantics.
std::size_t rays_cut(std::span<const Ray> rays, std::span<const double> lower_ends, const Line &ln);

/// value == |R| (within rounding of the count arithmetic) and the checker agrees.
bool verify_line_covering(std::span<const Ray> rays, int k, const ScanResult &result);
bool reaches_full_red(const ScanResult &result, std::size_t n_red);

/// eps at which an approximate scan resolves integer counts (off by < 1/2).
double exactify(std::size_t n_red);

std::vector<Ray> random_rays(std::size_t m, double p_up, Rng &rng);
/// Down rays with endpoints on a convex curve (so on the lower envelope) plus
/// n_up Up rays above it; a line then cuts at most two Down rays, which makes
/// "no" instances common once k > n_up + 2.
std::vector<Ray> convex_rays(std::size_t m, std::size_t n_up, Rng &rng);

// ---- Max-Weight-3-Clique -> Max-Weight-Point ----

struct TripartiteGraph {
  int n = 1;
  // n x n, row-major: w_ab[i*n + j] = w(a_i, b_j), likewise for ac and bc
  std::vector<double> w_ab, w_ac, w_bc;

  double ab(int i, int j) const { return w_ab[static_cast<std::size_t>(i * n + j)]; }
  double ac(int i, int k) const { return w_ac[static_cast<std::size_t>(i * n + k)]; }
  double bc(int j, int k) const { return w_bc[static_cast<std::size_t>(j * n + k)]; }
};

enum class EdgeColor : std::uint8_t { Blue, Red, Black };  // ab, ac, bc

struct DoubleLine {
  EdgeColor color = EdgeColor::Blue;
  int u = 0, v = 0;     // 0-based endpoints within their parts
  double weight = 0.0;  // w(e) + w_bar
  Line mid;             // midline after rotation
  std::size_t upper = 0, lower = 0;  // indices into GadgetInstance::lines
};

struct GadgetInstance {
  int n = 1;
  std::vector<WeightedLine> lines;  // 6 n^2
  std::vector<DoubleLine> doubles;  // 3 n^2
  double alpha = 0.0;
  double theta = 0.0;
  double w_bar = 0.0;
};

GadgetInstance gen_clique_gadget(const TripartiteGraph &g, double theta = 0.02);

struct WeightPoint {
  double x = 0.0;
  double y = 0.0;
  double weight = 0.0;
};

inline constexpr std::size_t kMaxWeightPointLimit = 2000;

/// Sum of weights of lines on or below (x, y).
double point_weight(std::span<const WeightedLine> lines, double x, double y);

/// O(m^3) oracle: scores every arrangement vertex plus one sample point in each
/// sector around it, and points just above/below every line.
WeightPoint max_weight_point(std::span<const WeightedLine> lines);

double max_triangle_weight(const TripartiteGraph &g);

struct GadgetReport {
  bool max_ok = false;
  bool no_unintended_triples = false;
  bool witnesses_ok = false;
  double max_weight = 0.0;
  double expected = 0.0;
  std::size_t triples = 0;
  std::size_t unintended = 0;
  std::size_t witnesses = 0;
  std::size_t bad_witnesses = 0;
  double worst_witness = 0.0;  // highest witness score

  bool ok() const { return max_ok && no_unintended_triples && witnesses_ok; }
};

/// Checks the three gadget claims; n <= 8.
GadgetReport verify_gadget(const TripartiteGraph &g, const GadgetInstance &inst);

TripartiteGraph random_graph(int n, double w_max, Rng &rng);

}  // namespace halfscan
