#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <string_view>

#include "halfscan/csv.hpp"

namespace halfscan {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (auto &c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

struct Row {
  std::size_t line;
  std::vector<std::string_view> f;

  double num(std::size_t i) const {
    const std::string_view s = f[i];
    double v = 0.0;
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size() || s.empty())
      throw CsvError(line, "field " + std::to_string(i + 1) + " is not a number: '" + std::string(s) + "'");
    if (!std::isfinite(v)) throw CsvError(line, "field " + std::to_string(i + 1) + " is not finite");
    return v;
  }
  long integer(std::size_t i) const {
    const std::string_view s = f[i];
    long v = 0;
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size() || s.empty())
      throw CsvError(line, "field " + std::to_string(i + 1) + " is not an integer: '" + std::string(s) + "'");
    return v;
  }
};

// Calls fn(row) for every data row. `first_col` names the header's first column.
template <class Fn>
void each_row(std::istream &in, std::string_view first_col, std::size_t min_fields, std::size_t max_fields, Fn fn) {
  std::string text;
  std::size_t line = 0;
  bool seen_data = false;
  while (std::getline(in, text)) {
    ++line;
    const std::string_view t = trim(text);
    if (t.empty()) continue;
    Row row{line, {}};
    std::size_t start = 0;
    for (;;) {
      const std::size_t comma = t.find(',', start);
      row.f.push_back(trim(t.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (!seen_data && lower(row.f[0]) == first_col) {
      seen_data = true;
      continue;
    }
    seen_data = true;
    if (row.f.size() < min_fields || row.f.size() > max_fields)
      throw CsvError(line, "expected " + std::to_string(min_fields) +
                               (min_fields == max_fields ? "" : "-" + std::to_string(max_fields)) + " fields, got " +
                               std::to_string(row.f.size()));
    fn(row);
  }
}

std::ostream &precise(std::ostream &out) {
  out.precision(17);
  return out;
}

}  // namespace

Dataset read_points(std::istream &in) {
  Dataset pts;
  each_row(in, "x", 3, 4, [&](const Row &r) {
    LabeledPoint p;
    p.x = r.num(0);
    p.y = r.num(1);
    const std::string c = lower(r.f[2]);
    if (c == "r" || c == "red") p.color = Color::Red;
    else if (c == "b" || c == "blue") p.color = Color::Blue;
    else throw CsvError(r.line, "color must be R or B, got '" + std::string(r.f[2]) + "'");
    if (r.f.size() == 4 && !r.f[3].empty()) p.weight = r.num(3);
    pts.push_back(p);
  });
  return pts;
}

void write_points(std::ostream &out, const Dataset &pts) {
  precise(out) << "x,y,color,weight\n";
  for (const auto &p : pts)
    out << p.x << ',' << p.y << ',' << (p.color == Color::Red ? 'R' : 'B') << ',' << p.weight << '\n';
}

std::vector<Halfplane> read_halfplanes(std::istream &in) {
  std::vector<Halfplane> hs;
  each_row(in, "a", 3, 3, [&](const Row &r) {
    Halfplane h{{r.num(0), r.num(1)}, Side::Below};
    const std::string s = lower(r.f[2]);
    if (s == "below") h.side = Side::Below;
    else if (s == "above") h.side = Side::Above;
    else throw CsvError(r.line, "side must be below or above, got '" + std::string(r.f[2]) + "'");
    hs.push_back(h);
  });
  return hs;
}

void write_halfplanes(std::ostream &out, const std::vector<Halfplane> &hs) {
  precise(out) << "a,b,side\n";
  for (const auto &h : hs) out << h.line.a << ',' << h.line.b << ',' << (h.side == Side::Below ? "below" : "above") << '\n';
}

std::vector<Ray> read_rays(std::istream &in) {
  std::vector<Ray> rays;
  each_row(in, "x", 3, 3, [&](const Row &r) {
    Ray ray{r.num(0), r.num(1), RayDir::Up};
    const std::string d = lower(r.f[2]);
    if (d == "up") ray.dir = RayDir::Up;
    else if (d == "down") ray.dir = RayDir::Down;
    else throw CsvError(r.line, "dir must be up or down, got '" + std::string(r.f[2]) + "'");
    rays.push_back(ray);
  });
  return rays;
}

void write_rays(std::ostream &out, const std::vector<Ray> &rays) {
  precise(out) << "x,y,dir\n";
  for (const auto &r : rays) out << r.x << ',' << r.y << ',' << (r.dir == RayDir::Up ? "up" : "down") << '\n';
}

TripartiteGraph read_graph(std::istream &in) {
  struct Edge {
    int pair;  // 0 ab, 1 ac, 2 bc
    long u, v;
    double w;
  };
  std::vector<Edge> edges;
  long n = 0;
  each_row(in, "part1", 5, 5, [&](const Row &r) {
    auto part = [&](std::size_t i) {
      const std::string p = lower(r.f[i]);
      if (p.size() != 1 || p[0] < 'a' || p[0] > 'c')
        throw CsvError(r.line, "part must be A, B or C, got '" + std::string(r.f[i]) + "'");
      return p[0] - 'a';
    };
    int p1 = part(0), p2 = part(2);
    long i1 = r.integer(1), i2 = r.integer(3);
    if (i1 < 0 || i2 < 0) throw CsvError(r.line, "negative vertex index");
    if (p1 == p2) throw CsvError(r.line, "edge inside one part");
    if (p1 > p2) {
      std::swap(p1, p2);
      std::swap(i1, i2);
    }
    const int pair = p1 == 0 ? (p2 == 1 ? 0 : 1) : 2;
    edges.push_back({pair, i1, i2, r.num(4)});
    n = std::max({n, i1 + 1, i2 + 1});
  });
  if (n == 0) throw Error(ErrorCode::EmptyDataset, "graph has no edges");
  TripartiteGraph g;
  g.n = static_cast<int>(n);
  const auto nn = static_cast<std::size_t>(n * n);
  g.w_ab.assign(nn, 0.0);
  g.w_ac.assign(nn, 0.0);
  g.w_bc.assign(nn, 0.0);
  for (const auto &e : edges) {
    auto &tab = e.pair == 0 ? g.w_ab : e.pair == 1 ? g.w_ac : g.w_bc;
    tab[static_cast<std::size_t>(e.u * n + e.v)] = e.w;
  }
  return g;
}

void write_graph(std::ostream &out, const TripartiteGraph &g) {
  precise(out) << "part1,idx1,part2,idx2,weight\n";
  const struct {
    char p1, p2;
    const std::vector<double> *tab;
  } parts[3] = {{'A', 'B', &g.w_ab}, {'A', 'C', &g.w_ac}, {'B', 'C', &g.w_bc}};
  for (const auto &pt : parts)
    for (int u = 0; u < g.n; ++u)
      for (int v = 0; v < g.n; ++v)
        out << pt.p1 << ',' << u << ',' << pt.p2 << ',' << v << ',' << (*pt.tab)[static_cast<std::size_t>(u * g.n + v)]
            << '\n';
}

std::vector<WeightedLine> read_weighted_lines(std::istream &in) {
  std::vector<WeightedLine> lines;
  each_row(in, "a", 3, 3, [&](const Row &r) { lines.push_back({{r.num(0), r.num(1)}, r.num(2)}); });
  return lines;
}

void write_weighted_lines(std::ostream &out, const std::vector<WeightedLine> &lines) {
  precise(out) << "a,b,weight\n";
  for (const auto &l : lines) out << l.line.a << ',' << l.line.b << ',' << l.weight << '\n';
}

}  // namespace halfscan
