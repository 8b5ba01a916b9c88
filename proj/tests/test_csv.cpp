#include <doctest.h>

#include <sstream>

#include "halfscan/csv.hpp"
#include "halfscan/generate.hpp"

using namespace halfscan;

namespace {

std::size_t error_line(const std::string &text, Dataset (*reader)(std::istream &)) {
  std::istringstream in(text);
  try {
    reader(in);
  } catch (const CsvError &e) {
    return e.line();
  }
  return 0;
}

}  // namespace

TEST_SUITE("csv") {
  TEST_CASE("points round trip losslessly") {
    Rng rng(1);
    Dataset pts = uniform_points(500, 0.4, rng);
    pts[3].weight = 2.5;
    std::stringstream buf;
    write_points(buf, pts);
    const Dataset back = read_points(buf);
    REQUIRE(back.size() == pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
      REQUIRE(back[i].x == pts[i].x);
      REQUIRE(back[i].y == pts[i].y);
      REQUIRE(back[i].color == pts[i].color);
      REQUIRE(back[i].weight == pts[i].weight);
    }
  }

  TEST_CASE("points: optional header, weight and blank lines") {
    std::istringstream in("1,2,R\n\n 3 , 4 , B , 2\n");
    const Dataset pts = read_points(in);
    REQUIRE(pts.size() == 2);
    CHECK(pts[0].weight == 1.0);
    CHECK(pts[1].color == Color::Blue);
    CHECK(pts[1].weight == 2.0);
  }

  TEST_CASE("malformed rows report their line") {
    CHECK(error_line("x,y,color\n1,2,R\n3,zz,B\n", read_points) == 3);
    CHECK(error_line("1,2,G\n", read_points) == 1);
    CHECK(error_line("x,y,color\n1,2\n", read_points) == 2);
    CHECK(error_line("x,y,color\n1,2,R,1,9\n", read_points) == 2);
    CHECK(error_line("x,y,color\n1,inf,R\n", read_points) == 2);
    CHECK(error_line("x,y,color\n\n\n1,2,R\n1e400,2,R\n", read_points) == 5);
  }

  TEST_CASE("halfplanes, rays, weighted lines round trip") {
    const std::vector<Halfplane> hs{{{0.1, -3.25}, Side::Below}, {{1e-17, 2.0 / 3.0}, Side::Above}};
    std::stringstream a;
    write_halfplanes(a, hs);
    const auto hb = read_halfplanes(a);
    REQUIRE(hb.size() == 2);
    CHECK(hb[1].line == hs[1].line);
    CHECK(hb[1].side == Side::Above);

    const std::vector<Ray> rays{{0.5, 1.0 / 3.0, RayDir::Down}, {2, 3, RayDir::Up}};
    std::stringstream b;
    write_rays(b, rays);
    const auto rb = read_rays(b);
    REQUIRE(rb.size() == 2);
    CHECK(rb[0].y == rays[0].y);
    CHECK(rb[0].dir == RayDir::Down);

    const std::vector<WeightedLine> wl{{{-0.02, 7.1}, -3.5}, {{1, 2}, 0.125}};
    std::stringstream c;
    write_weighted_lines(c, wl);
    const auto wb = read_weighted_lines(c);
    REQUIRE(wb.size() == 2);
    CHECK(wb[0].line == wl[0].line);
    CHECK(wb[0].weight == wl[0].weight);
  }

  TEST_CASE("graphs round trip") {
    Rng rng(2);
    const TripartiteGraph g = random_graph(3, 5.0, rng);
    std::stringstream buf;
    write_graph(buf, g);
    const TripartiteGraph back = read_graph(buf);
    CHECK(back.n == 3);
    CHECK(back.w_ab == g.w_ab);
    CHECK(back.w_ac == g.w_ac);
    CHECK(back.w_bc == g.w_bc);
  }

  TEST_CASE("graph edges may be listed in either direction") {
    std::istringstream in("C,1,A,0,4.5\nB,0,A,1,-2\n");
    const TripartiteGraph g = read_graph(in);
    CHECK(g.n == 2);
    CHECK(g.ac(0, 1) == 4.5);
    CHECK(g.ab(1, 0) == -2);
    std::istringstream bad("A,0,A,1,3\n");
    CHECK_THROWS_AS(read_graph(bad), CsvError);
    std::istringstream bad_part("A,0,D,1,3\n");
    CHECK_THROWS_AS(read_graph(bad_part), CsvError);
  }

  TEST_CASE("halfplane side must be spelled out") {
    std::istringstream in("a,b,side\n1,2,left\n");
    try {
      read_halfplanes(in);
      FAIL("expected CsvError");
    } catch (const CsvError &e) {
      CHECK(e.line() == 2);
    }
  }
}
