// halfscan command-line frontend: scan, count, gen, bench.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>
#include <spdlog/sinks/stdout_sinks.h>
#include <spdlog/spdlog.h>

#include "halfscan/counter.hpp"
#include "halfscan/csv.hpp"
#include "halfscan/generate.hpp"
#include "halfscan/phi.hpp"
#include "halfscan/reductions.hpp"
#include "halfscan/scan.hpp"

using json = nlohmann::ordered_json;
using namespace halfscan;

namespace {

constexpr const char *kVersion = "0.1.0";

// Bad input files: exit 2. Everything the library rejects as a guard: exit 3.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using Clock = std::chrono::steady_clock;
std::int64_t ns_since(Clock::time_point t0) {
  return std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - t0).count();
}

void setup_logging() {
  auto logger = spdlog::stderr_logger_mt("halfscan");
  logger->set_pattern("[%l] %v");
  spdlog::set_default_logger(logger);
  spdlog::set_level(spdlog::level::warn);
  if (const char *lvl = std::getenv("HALFSCAN_LOG")) {
    const auto parsed = spdlog::level::from_str(lvl);
    // from_str maps unknown names to off; only honour "off" when asked for
    if (parsed != spdlog::level::off || std::string(lvl) == "off") spdlog::set_level(parsed);
    else spdlog::warn("HALFSCAN_LOG='{}' not recognised, keeping warn", lvl);
  }
}

std::ifstream open_in(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  return in;
}

// Parses `path` with `reader`, prefixing CSV errors with the file name.
template <class Reader>
auto read_csv(const std::string &path, Reader reader) {
  auto in = open_in(path);
  try {
    return reader(in);
  } catch (const CsvError &e) {
    throw CsvError(e.line(), e.detail() + " (in " + path + ")");
  }
}

// Writes to --out, or stdout when empty.
void emit(const std::string &out, const std::string &text) {
  if (out.empty() || out == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream f(out);
  if (!f) throw InputError("cannot write '" + out + "'");
  f << text;
}

json halfplane_json(const Halfplane &h) {
  return {{"a", h.line.a}, {"b", h.line.b}, {"side", h.side == Side::Below ? "below" : "above"}};
}

json structure_json(const CounterIndex &idx) {
  json levels = json::array();
  for (const auto &s : idx.level_stats())
    levels.push_back({{"nodes", s.nodes}, {"leaves", s.leaves}, {"max_sample", s.max_sample}});
  std::vector<std::size_t> leaf_sizes;
  for (const auto &n : idx.nodes())
    if (n.is_leaf) leaf_sizes.push_back(n.sample_ids.size());
  std::sort(leaf_sizes.begin(), leaf_sizes.end());
  json leaf = json::object();
  if (!leaf_sizes.empty())
    leaf = {{"count", leaf_sizes.size()},
            {"min", leaf_sizes.front()},
            {"median", leaf_sizes[leaf_sizes.size() / 2]},
            {"max", leaf_sizes.back()}};
  return {{"levels", idx.levels()},    {"leaf_cap", idx.leaf_cap()}, {"root_sample", idx.root_sample().size()},
          {"nodes", idx.nodes().size()}, {"exact_mode", idx.exact_mode()}, {"per_level", levels},
          {"leaf_samples", leaf}};
}

json percentiles(std::vector<std::int64_t> v) {
  if (v.empty()) return json::object();
  std::sort(v.begin(), v.end());
  auto at = [&](double q) { return v[std::min(v.size() - 1, static_cast<std::size_t>(q * v.size()))]; };
  return {{"p50", at(0.5)}, {"p90", at(0.9)}, {"p99", at(0.99)}, {"max", v.back()}};
}

json versions() {
  return {{"halfscan", kVersion}, {"compiler", __VERSION__}, {"cxx", __cplusplus}};
}

// ---- shared option blocks ----

struct Common {
  std::uint64_t seed = 1;
  unsigned threads = 1;
  std::string out;
};

void add_common(CLI::App *app, Common &c) {
  app->add_option("--seed", c.seed, "64-bit seed; every random draw is derived from it")->capture_default_str();
  app->add_option("--threads", c.threads, "worker threads (results do not depend on it)")
      ->capture_default_str()
      ->check(CLI::Range(1u, 1024u));
  app->add_option("--out", c.out, "output path (default stdout)");
}

struct CounterOpts {
  double eps = 0.05;
  double delta = 0.1;
  int r = 4;
  double c_H = 0.5;
  double c_net = 2.0;
  int leaf_cap = 0;
};

void add_counter(CLI::App *app, CounterOpts &o, bool with_eps) {
  if (with_eps) {
    app->add_option("--eps", o.eps, "accuracy, in (0,1)")->capture_default_str();
    app->add_option("--delta", o.delta, "failure probability, in (0,1)")->capture_default_str();
  }
  app->add_option("--r", o.r, "branching parameter r >= 2")->capture_default_str();
  app->add_option("--c-h", o.c_H, "root-sample constant")->capture_default_str();
  app->add_option("--c-net", o.c_net, "cutting sample constant")->capture_default_str();
  app->add_option("--leaf-cap", o.leaf_cap, "leaf size (0: max(ceil(log2(1/eps)), 4))")->capture_default_str();
}

void check_unit(double v, const char *name) {
  if (!(v > 0.0 && v < 1.0)) throw Error(ErrorCode::Guard, std::string(name) + " must lie in (0,1)");
}

CounterParams counter_params(const CounterOpts &o, unsigned threads) {
  check_unit(o.eps, "eps");
  check_unit(o.delta, "delta");
  if (o.r < 2) throw Error(ErrorCode::Guard, "r must be >= 2");
  if (!(o.c_H > 0.0) || !(o.c_net > 0.0)) throw Error(ErrorCode::Guard, "constants must be positive");
  if (o.leaf_cap < 0) throw Error(ErrorCode::Guard, "leaf cap must be >= 0");
  CounterParams p;
  p.eps = o.eps;
  p.delta = o.delta;
  p.r = o.r;
  p.c_H = o.c_H;
  p.c_net = o.c_net;
  p.leaf_cap = o.leaf_cap;
  p.threads = threads;
  return p;
}

json counter_config(const CounterParams &p) {
  return {{"eps", p.eps},     {"delta", p.delta},       {"r", p.r}, {"c_H", p.c_H},
          {"c_net", p.c_net}, {"leaf_cap", p.leaf_cap}, {"exact_limit", p.exact_limit}};
}

}  // namespace

// ---- scan ----

struct ScanOpts {
  Common common;
  CounterOpts counter;
  std::string input;
  std::string mode = "approx";
  std::string phi = "disc";
  double c_cand = 2.0;
  int rounds = 0;
};

int cmd_scan(const ScanOpts &o) {
  const Dataset pts = read_csv(o.input, read_points);
  const PhiSpec spec = phi_by_name(o.phi);
  spdlog::info("scan: {} points, mode {}, phi {}", pts.size(), o.mode, spec.name);

  json config = {{"command", "scan"}, {"input", o.input}, {"mode", o.mode}, {"phi", spec.name},
                 {"seed", o.common.seed}, {"threads", o.common.threads}};
  const auto t0 = Clock::now();
  ScanResult res;
  if (o.mode == "exact") {
    res = exact_max_halfspace(pts, spec);
  } else if (o.mode == "brute") {
    res = brute_force_scan(pts, spec);
  } else if (o.mode == "approx") {
    ScanParams sp;
    sp.counter = counter_params(o.counter, o.common.threads);
    sp.candidates.c_cand = o.c_cand;
    sp.rounds = o.rounds;
    sp.threads = o.common.threads;
    config["eps"] = o.counter.eps;
    config["delta"] = o.counter.delta;
    config["c_cand"] = o.c_cand;
    config["rounds"] = o.rounds;
    config["counter"] = counter_config(sp.counter);
    res = approx_max_halfspace(pts, spec, o.counter.eps, o.counter.delta, o.common.seed, sp);
  } else {
    throw Error(ErrorCode::Guard, "mode must be approx, exact or brute");
  }
  const std::int64_t elapsed = ns_since(t0);

  json report = {
      {"result",
       {{"value", res.value},
        {"mu_r", res.mu_r},
        {"mu_b", res.mu_b},
        {"halfplane", halfplane_json(res.best_h)},
        {"rounds", res.rounds},
        {"candidates_evaluated", res.candidates_evaluated}}},
      {"timings", {{"total_ns", elapsed}}},
      {"config", config},
      {"versions", versions()}};
  emit(o.common.out, report.dump(2) + "\n");
  return 0;
}

// ---- count ----

struct CountOpts {
  Common common;
  CounterOpts counter;
  std::string input;
  std::string queries;
  std::size_t random_queries = 0;
  std::string color = "all";
  bool oracle = false;
  std::string save_index;
  std::string load_index;
};

int cmd_count(const CountOpts &o) {
  const Dataset all = read_csv(o.input, read_points);
  Dataset pts;
  if (o.color == "all") pts = all;
  else if (o.color == "R" || o.color == "B") {
    const Color want = o.color == "R" ? Color::Red : Color::Blue;
    for (const auto &p : all)
      if (p.color == want) pts.push_back(p);
  } else {
    throw Error(ErrorCode::Guard, "color must be R, B or all");
  }

  std::vector<Halfplane> qs;
  if (!o.queries.empty()) qs = read_csv(o.queries, read_halfplanes);
  Rng qrng = make_rng(o.common.seed, "queries");
  for (std::size_t i = 0; i < o.random_queries; ++i) qs.push_back(random_halfplane(qrng));

  const CounterParams params = counter_params(o.counter, o.common.threads);
  auto t0 = Clock::now();
  std::optional<CounterIndex> idx;
  if (!o.load_index.empty()) {
    std::ifstream in(o.load_index, std::ios::binary);
    if (!in) throw InputError("cannot open '" + o.load_index + "'");
    try {
      idx = CounterIndex::load(in);
    } catch (const Error &e) {
      throw InputError(o.load_index + ": " + e.what());
    }
  } else {
    idx = CounterIndex::build(pts, params, o.common.seed);
  }
  const std::int64_t build_ns = ns_since(t0);
  spdlog::info("count: index over {} points ready in {:.3f}s", pts.size(), build_ns * 1e-9);
  if (!o.save_index.empty()) {
    std::ofstream f(o.save_index, std::ios::binary);
    if (!f) throw InputError("cannot write '" + o.save_index + "'");
    idx->save(f);
  }

  std::vector<std::int64_t> qns;
  json results = json::array();
  double max_err = 0.0, sum_err = 0.0;
  std::size_t max_visits = 0;
  for (const auto &h : qs) {
    t0 = Clock::now();
    const double est = idx->query(h);
    qns.push_back(ns_since(t0));
    max_visits = std::max(max_visits, idx->node_visit_count(h));
    json row = {{"halfplane", halfplane_json(h)}, {"estimate", est}};
    if (o.oracle) {
      const double ex = exact_count(pts, h);
      row["exact"] = ex;
      row["error"] = est - ex;
      max_err = std::max(max_err, std::abs(est - ex));
      sum_err += std::abs(est - ex);
    }
    results.push_back(row);
  }

  const double n = idx->total_mass();
  json stats = structure_json(*idx);
  stats["max_node_visits"] = max_visits;
  json report = {{"result", {{"n", n}, {"queries", results}}}};
  if (o.oracle && !qs.empty())
    report["result"]["oracle"] = {{"max_abs_error", max_err},
                                  {"mean_abs_error", sum_err / static_cast<double>(qs.size())},
                                  {"max_error_over_n", max_err / n},
                                  {"within_eps", max_err <= idx->params().eps * n}};
  report["structure"] = stats;
  report["timings"] = {{"build_ns", build_ns}, {"query_ns", percentiles(qns)}};
  report["config"] = {{"command", "count"},      {"input", o.input},  {"queries", o.queries},
                      {"random_queries", o.random_queries}, {"color", o.color}, {"seed", o.common.seed},
                      {"threads", o.common.threads},        {"counter", counter_config(idx->params())},
                      {"loaded_index", !o.load_index.empty()}};
  report["versions"] = versions();
  emit(o.common.out, report.dump(2) + "\n");
  return 0;
}

// ---- gen ----

struct GenOpts {
  Common common;
  std::string kind;
  std::size_t n = 1000;
  double red_frac = 0.5;
  double gap = 0.6;
  std::size_t m = 40;
  double p_up = 0.5;
  int k = 0;
  bool convex = false;
  std::size_t n_up = 0;
  std::string rays_in;
  std::string rays_out;
  int graph_n = 3;
  double w_max = 10.0;
  std::string graph_in;
  std::string graph_out;
  double theta = 0.02;
};

int cmd_gen(const GenOpts &o) {
  std::ostringstream csv;
  json meta = {{"command", "gen"}, {"kind", o.kind}, {"seed", o.common.seed}};
  if (o.kind == "uniform") {
    Rng rng = make_rng(o.common.seed, "gen-uniform");
    write_points(csv, uniform_points(o.n, o.red_frac, rng));
    meta["n"] = o.n;
  } else if (o.kind == "planted") {
    Rng rng = make_rng(o.common.seed, "gen-planted");
    const Planted pl = planted_points(o.n, o.gap, rng);
    write_points(csv, pl.points);
    meta["n"] = o.n;
    meta["gap"] = o.gap;
    meta["plant"] = halfplane_json(pl.plant);
  } else if (o.kind == "line-covering") {
    std::vector<Ray> rays;
    if (!o.rays_in.empty()) {
      rays = read_csv(o.rays_in, read_rays);
    } else {
      Rng rng = make_rng(o.common.seed, "gen-rays");
      rays = o.convex ? convex_rays(o.m, o.n_up, rng) : random_rays(o.m, o.p_up, rng);
    }
    const int k = o.k > 0 ? o.k : std::max(1, static_cast<int>(rays.size()) / 4);
    const LineCoveringInstance inst = gen_line_covering(rays, k);
    write_points(csv, inst.points);
    if (!o.rays_out.empty()) {
      std::ostringstream r;
      write_rays(r, rays);
      emit(o.rays_out, r.str());
    }
    meta["rays"] = rays.size();
    meta["k"] = k;
    meta["n_red"] = inst.n_red;
    meta["n_blue"] = inst.n_blue;
    meta["shifted"] = inst.shifted;
  } else if (o.kind == "clique-gadget") {
    TripartiteGraph g;
    if (!o.graph_in.empty()) {
      g = read_csv(o.graph_in, read_graph);
    } else {
      if (o.graph_n < 1) throw Error(ErrorCode::Guard, "graph size must be >= 1");
      Rng rng = make_rng(o.common.seed, "gen-graph");
      g = random_graph(o.graph_n, o.w_max, rng);
    }
    const GadgetInstance inst = gen_clique_gadget(g, o.theta);
    write_weighted_lines(csv, inst.lines);
    if (!o.graph_out.empty()) {
      std::ostringstream gs;
      write_graph(gs, g);
      emit(o.graph_out, gs.str());
    }
    meta["graph_n"] = g.n;
    meta["lines"] = inst.lines.size();
    meta["alpha"] = inst.alpha;
    meta["w_bar"] = inst.w_bar;
    meta["max_triangle"] = max_triangle_weight(g);
  } else {
    throw Error(ErrorCode::Guard, "unknown generator '" + o.kind + "'");
  }
  emit(o.common.out, csv.str());
  spdlog::info("gen: {}", meta.dump());
  return 0;
}

// ---- bench ----

struct BenchOpts {
  Common common;
  CounterOpts counter;
  std::size_t n = 100000;
  std::vector<double> eps_grid{0.2, 0.1, 0.05, 0.025};
  int reps = 1;
  std::size_t queries = 1000;
  std::string csv;
};

int cmd_bench(const BenchOpts &o) {
  if (o.reps < 1) throw Error(ErrorCode::Guard, "reps must be >= 1");
  for (double e : o.eps_grid) check_unit(e, "eps");
  Rng prng = make_rng(o.common.seed, "bench-points");
  const Dataset pts = uniform_points(o.n, 1.0, prng);
  Rng qrng = make_rng(o.common.seed, "bench-queries");
  std::vector<Halfplane> qs;
  std::vector<double> exact;
  for (std::size_t i = 0; i < o.queries; ++i) {
    qs.push_back(random_halfplane(qrng));
    exact.push_back(exact_count(pts, qs.back()));
  }

  std::ostringstream table;
  table.precision(17);
  table << "eps,seed,n,build_s,query_ns_mean,max_err,mean_err,levels,nodes,root_sample,fit_c\n";
  json rows = json::array();
  for (double eps : o.eps_grid) {
    for (int rep = 0; rep < o.reps; ++rep) {
      CounterOpts co = o.counter;
      co.eps = eps;
      const CounterParams params = counter_params(co, o.common.threads);
      const std::uint64_t seed = derive_seed(o.common.seed, "bench-build", static_cast<std::uint64_t>(rep));
      auto t0 = Clock::now();
      const CounterIndex idx = CounterIndex::build(pts, params, seed);
      const double build_s = ns_since(t0) * 1e-9;
      double max_err = 0.0, sum_err = 0.0;
      t0 = Clock::now();
      std::vector<double> est(qs.size());
      for (std::size_t q = 0; q < qs.size(); ++q) est[q] = idx.query(qs[q]);
      const double q_ns = qs.empty() ? 0.0 : static_cast<double>(ns_since(t0)) / static_cast<double>(qs.size());
      for (std::size_t q = 0; q < qs.size(); ++q) {
        const double err = std::abs(est[q] - exact[q]) / static_cast<double>(o.n);
        max_err = std::max(max_err, err);
        sum_err += err;
      }
      const double mean_err = qs.empty() ? 0.0 : sum_err / static_cast<double>(qs.size());
      // build time against (1/eps^2) log^4(1/eps); a flat or falling constant is the expected trend
      const double shape = std::pow(std::log(1.0 / eps), 4) / (eps * eps);
      const double fit_c = build_s / shape;
      spdlog::info("bench eps={} rep={} build {:.3f}s max_err {:.4f}", eps, rep, build_s, max_err);
      table << eps << ',' << seed << ',' << o.n << ',' << build_s << ',' << q_ns << ',' << max_err << ','
            << mean_err << ',' << idx.levels() << ',' << idx.nodes().size() << ',' << idx.root_sample().size()
            << ',' << fit_c << '\n';
      rows.push_back({{"eps", eps},           {"seed", seed},        {"build_s", build_s},
                      {"query_ns_mean", q_ns}, {"max_err", max_err},  {"mean_err", mean_err},
                      {"levels", idx.levels()}, {"nodes", idx.nodes().size()},
                      {"root_sample", idx.root_sample().size()}, {"fit_c", fit_c}});
    }
  }
  if (!o.csv.empty()) emit(o.csv, table.str());
  json report = {{"result", {{"rows", rows}}},
                 {"config",
                  {{"command", "bench"},
                   {"n", o.n},
                   {"eps_grid", o.eps_grid},
                   {"reps", o.reps},
                   {"queries", o.queries},
                   {"seed", o.common.seed},
                   {"threads", o.common.threads}}},
                 {"versions", versions()}};
  emit(o.common.out, report.dump(2) + "\n");
  return 0;
}

int main(int argc, char **argv) {
  setup_logging();
  CLI::App app{"halfscan: approximate halfspace range counting and max-discrepancy scanning"};
  app.require_subcommand(1);

  ScanOpts scan;
  auto *s = app.add_subcommand("scan", "maximize phi over halfplanes of a point CSV");
  add_common(s, scan.common);
  add_counter(s, scan.counter, true);
  s->add_option("--input", scan.input, "points CSV (x,y,color[,weight])")->required();
  s->add_option("--mode", scan.mode, "approx | exact | brute")->capture_default_str();
  s->add_option("--phi", scan.phi, "disc | balance[:f] | kulldorff")->capture_default_str();
  s->add_option("--c-cand", scan.c_cand, "candidate sample constant")->capture_default_str();
  s->add_option("--rounds", scan.rounds, "rounds override (0: ceil(log2(1/delta)))")->capture_default_str();

  CountOpts count;
  auto *c = app.add_subcommand("count", "build a counting index and answer halfplane queries");
  add_common(c, count.common);
  add_counter(c, count.counter, true);
  c->add_option("--input", count.input, "points CSV")->required();
  c->add_option("--queries", count.queries, "query CSV (a,b,side)");
  c->add_option("--random-queries", count.random_queries, "additional random queries")->capture_default_str();
  c->add_option("--color", count.color, "R | B | all")->capture_default_str();
  c->add_flag("--oracle", count.oracle, "also report brute-force counts and errors");
  c->add_option("--save-index", count.save_index, "write the built index here");
  c->add_option("--load-index", count.load_index, "load an index instead of building");

  GenOpts gen;
  auto *g = app.add_subcommand("gen", "synthetic instances");
  add_common(g, gen.common);
  g->add_option("kind", gen.kind, "uniform | planted | line-covering | clique-gadget")
      ->required()
      ->check(CLI::IsMember({"uniform", "planted", "line-covering", "clique-gadget"}));
  g->add_option("--n", gen.n, "points (uniform, planted)")->capture_default_str();
  g->add_option("--red-frac", gen.red_frac, "red probability (uniform)")->capture_default_str();
  g->add_option("--gap", gen.gap, "planted mu_R - mu_B gap")->capture_default_str();
  g->add_option("--m", gen.m, "rays (line-covering)")->capture_default_str();
  g->add_option("--p-up", gen.p_up, "probability of an Up ray")->capture_default_str();
  g->add_option("--k", gen.k, "target cut count (0: m/4)")->capture_default_str();
  g->add_flag("--convex", gen.convex, "Down rays on a convex curve (mostly no-instances)");
  g->add_option("--n-up", gen.n_up, "Up rays with --convex")->capture_default_str();
  g->add_option("--rays", gen.rays_in, "read rays CSV instead of generating");
  g->add_option("--rays-out", gen.rays_out, "write the rays CSV here");
  g->add_option("--graph-n", gen.graph_n, "vertices per part (clique-gadget)")->capture_default_str();
  g->add_option("--w-max", gen.w_max, "edge weights uniform in [-w, w]")->capture_default_str();
  g->add_option("--graph", gen.graph_in, "read graph CSV instead of generating");
  g->add_option("--graph-out", gen.graph_out, "write the graph CSV here");
  g->add_option("--theta", gen.theta, "clockwise rotation in radians")->capture_default_str();

  BenchOpts bench;
  auto *b = app.add_subcommand("bench", "build time, query time and error over an eps grid");
  add_common(b, bench.common);
  add_counter(b, bench.counter, false);
  b->add_option("--n", bench.n, "uniform points")->capture_default_str();
  b->add_option("--eps-grid", bench.eps_grid, "eps values")->delimiter(',')->capture_default_str();
  b->add_option("--reps", bench.reps, "builds per eps")->capture_default_str();
  b->add_option("--queries", bench.queries, "random queries per build")->capture_default_str();
  b->add_option("--csv", bench.csv, "flat CSV, one row per (eps, seed)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return 3;
  }

  try {
    if (*s) return cmd_scan(scan);
    if (*c) return cmd_count(count);
    if (*g) return cmd_gen(gen);
    if (*b) return cmd_bench(bench);
  } catch (const CsvError &e) {
    spdlog::error("{}", e.what());
    return 2;
  } catch (const InputError &e) {
    spdlog::error("{}", e.what());
    return 2;
  } catch (const Error &e) {
    spdlog::error("{}", e.what());
    return 3;
  }
  return 0;
}
