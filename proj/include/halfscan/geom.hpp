#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace halfscan {

/// Absolute tolerance for boundary predicates. Inputs are expected in |x|,|y| <= 1e6.
inline constexpr double kEpsGeom = 1e-9;

enum class ErrorCode {
  EmptyColorClass,
  EmptyDataset,
  CuttingFailed,
  InvalidMu,
  InvalidWeight,
  TooLargeForOracle,
  InvalidK,
  Guard,
  Parse,
};

const char *to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string &what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

enum class Color : std::uint8_t { Red, Blue };

struct LabeledPoint {
  double x = 0.0;
  double y = 0.0;
  Color color = Color::Red;
  double weight = 1.0;
};

using Dataset = std::vector<LabeledPoint>;

/// Non-vertical line y = a*x + b.
struct Line {
  double a = 0.0;
  double b = 0.0;

  double at(double x) const { return a * x + b; }
  friend bool operator==(const Line &, const Line &) = default;
};

enum class Side : std::uint8_t { Below, Above };

/// Closed halfplane: {y <= line(x)} for Below, {y >= line(x)} for Above.
struct Halfplane {
  Line line;
  Side side = Side::Below;
};

struct DualPoint {
  double u = 0.0;
  double v = 0.0;
};

struct WeightedLine {
  Line line;
  double weight = 0.0;
};

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

bool point_below(const LabeledPoint &p, const Halfplane &h);
bool contains(const Halfplane &h, double x, double y);

// Duality: Line(a, b) <-> DualPoint(a, -b), point (u, v) <-> line y = u*x - v.
// Convention: p lies on/below line l  iff  dual(l) lies on/below dual(p).
DualPoint to_dual(const Line &l);
Line to_dual(const LabeledPoint &p);
Line to_dual(const DualPoint &q);

/// Lowest convex chain of the points, sorted by x. Ties broken by input index.
std::vector<Vec2> lower_envelope(std::span<const LabeledPoint> pts);

/// Height of a lower envelope chain at x (linear interpolation; clamps outside).
double envelope_at(std::span<const Vec2> chain, double x);

/// Weighted fraction of `color` mass inside h.
double mu(std::span<const LabeledPoint> points, const Halfplane &h, Color color);

double color_mass(std::span<const LabeledPoint> points, Color color);
std::size_t color_count(std::span<const LabeledPoint> points, Color color);

inline double cross(Vec2 o, Vec2 a, Vec2 b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

}  // namespace halfscan
