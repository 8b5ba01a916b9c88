#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "halfscan/geom.hpp"
#include "halfscan/reductions.hpp"

namespace halfscan {

// Readers accept an optional header row, blank lines and surrounding spaces.
// Malformed rows throw CsvError carrying the 1-based line number.
class CsvError : public Error {
 public:
  CsvError(std::size_t line, const std::string &what)
      : Error(ErrorCode::Parse, "line " + std::to_string(line) + ": " + what), line_(line), detail_(what) {}
  std::size_t line() const noexcept { return line_; }
  const std::string &detail() const noexcept { return detail_; }

 private:
  std::size_t line_;
  std::string detail_;
};

// x,y,color,weight  (color R|B, weight optional, default 1)
Dataset read_points(std::istream &in);
void write_points(std::ostream &out, const Dataset &pts);

// a,b,side  (side below|above)
std::vector<Halfplane> read_halfplanes(std::istream &in);
void write_halfplanes(std::ostream &out, const std::vector<Halfplane> &hs);

// x,y,dir  (dir up|down)
std::vector<Ray> read_rays(std::istream &in);
void write_rays(std::ostream &out, const std::vector<Ray> &rays);

// part1,idx1,part2,idx2,weight  (parts A,B,C; 0-based indices; absent edges weigh 0)
TripartiteGraph read_graph(std::istream &in);
void write_graph(std::ostream &out, const TripartiteGraph &g);

// a,b,weight
std::vector<WeightedLine> read_weighted_lines(std::istream &in);
void write_weighted_lines(std::ostream &out, const std::vector<WeightedLine> &lines);

}  // namespace halfscan
