#include <doctest.h>

#include <random>

#include "halfscan/cutting.hpp"

using namespace halfscan;

namespace {

TrapCell box(double lo, double hi, double bot, double top) {
  TrapCell c;
  c.x_lo = lo;
  c.x_hi = hi;
  c.bottom = Line{0, bot};
  c.top = Line{0, top};
  return c;
}

// lines through a random point of the box, so each crosses it
std::vector<Line> crossing_lines(std::size_t m, Rng &rng) {
  std::uniform_real_distribution<double> u(-1, 1), s(-3, 3);
  std::vector<Line> out;
  for (std::size_t i = 0; i < m; ++i) {
    const double a = s(rng), x = u(rng), y = u(rng);
    out.push_back({a, y - a * x});
  }
  return out;
}

}  // namespace

TEST_SUITE("cutting") {
  TEST_CASE("classify_line examples") {
    const TrapCell c = box(-1, 1, 0, 1);
    CHECK(classify_line(c, {0, -10}) == LineClass::Below);
    CHECK(classify_line(c, {0, 10}) == LineClass::Above);
    CHECK(classify_line(c, {1, 0.5}) == LineClass::Crosses);
    // touching a corner only: outside by the touch convention
    CHECK(classify_line(c, {-1, -1}) == LineClass::Below);  // through (-1, 0)
    CHECK(classify_line(c, {-1, 2}) == LineClass::Above);  // through (1, 1)
  }

  TEST_CASE("unbounded cells") {
    TrapCell plane;
    CHECK(classify_line(plane, {3, 4}) == LineClass::Crosses);
    TrapCell upper;
    upper.bottom = Line{0, 0};
    CHECK(classify_line(upper, {0, -1}) == LineClass::Below);
    CHECK(classify_line(upper, {0.001, -1}) == LineClass::Crosses);  // rises above eventually
    CHECK(upper.contains(1e6, 1e6));
    CHECK_FALSE(upper.contains(0, -1));
  }

  TEST_CASE("t = 1 returns the parent with every line in conflict") {
    Rng rng(1);
    const auto lines = crossing_lines(20, rng);
    const TrapCell parent = box(-1, 1, -1, 1);
    const Cutting cut = build_cutting(parent, lines, 1.0, rng);
    REQUIRE(cut.cells.size() == 1);
    CHECK(cut.conflicts[0].size() == lines.size());
    CHECK(cut.cells[0].x_lo == parent.x_lo);
    CHECK(cut.cells[0].x_hi == parent.x_hi);
  }

  TEST_CASE("three crossing lines, t = 3: every conflict list has at most one line") {
    Rng rng(2);
    const std::vector<Line> lines{{1, 0}, {-1, 0.2}, {0.3, -0.4}};
    const Cutting cut = build_cutting(box(-10, 10, -10, 10), lines, 3.0, rng);
    CHECK(conflict_bound(3, 3.0) == 1);
    for (const auto &c : cut.conflicts) CHECK(c.size() <= 1);
  }

  TEST_CASE("conflict bound arithmetic") {
    CHECK(conflict_bound(100, 1.0) == 100);
    CHECK(conflict_bound(100, 4.0) == 25);
    CHECK(conflict_bound(101, 4.0) == 26);
  }

  TEST_CASE("random cuttings: bound, classification, coverage") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      Rng rng(seed);
      const auto lines = crossing_lines(200, rng);
      const TrapCell parent = box(-1, 1, -1, 1);
      const double t = 2.0 + static_cast<double>(seed);
      const Cutting cut = build_cutting(parent, lines, t, rng);
      const std::size_t bound = conflict_bound(lines.size(), t);
      for (std::size_t c = 0; c < cut.cells.size(); ++c) {
        REQUIRE(cut.conflicts[c].size() <= bound);
        // crossing + below + above = all lines, and the records agree with classify_line
        std::size_t below = 0, cross = 0;
        for (const auto &ln : lines) {
          const LineClass k = classify_line(cut.cells[c], ln);
          below += k == LineClass::Below;
          cross += k == LineClass::Crosses;
        }
        REQUIRE(cross == cut.conflicts[c].size());
        REQUIRE(below == cut.below_count[c]);
        REQUIRE(below == cut.below[c].size());
        // corners of a bounded cell agree with the classification
        const TrapCell &cell = cut.cells[c];
        for (std::uint32_t id : cut.below[c])
          for (double x : {cell.x_lo, cell.x_hi}) REQUIRE(lines[id].at(x) <= cell.bottom->at(x) + 1e-9);
      }
      std::uniform_real_distribution<double> u(-1, 1);
      for (int q = 0; q < 1000; ++q) {
        const double x = u(rng), y = u(rng);
        const std::size_t id = cut.locator.locate(cut.cells, x, y);
        REQUIRE(cut.cells[id].contains(x, y));
        int strictly_inside = 0;
        for (const auto &cell : cut.cells) {
          const bool in = x > cell.x_lo + 1e-7 && x < cell.x_hi - 1e-7 &&
                          (!cell.bottom || y > cell.bottom->at(x) + 1e-7) && (!cell.top || y < cell.top->at(x) - 1e-7);
          strictly_inside += in;
        }
        REQUIRE(strictly_inside <= 1);
      }
    }
  }

  TEST_CASE("the attempt budget surfaces as CuttingFailed") {
    Rng rng(4);
    const auto lines = crossing_lines(300, rng);
    CuttingOptions opts;
    opts.c_net = 1e-3;  // samples too small to ever certify
    opts.max_attempts = 2;
    try {
      build_cutting(box(-1, 1, -1, 1), lines, 30.0, rng, opts);
      FAIL("expected CuttingFailed");
    } catch (const Error &e) {
      CHECK(e.code() == ErrorCode::CuttingFailed);
    }
  }
}
