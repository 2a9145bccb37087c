#include "pcover/cli.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <iterator>
#include <mutex>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "pcover/error.hpp"
#include "pcover/exact.hpp"
#include "pcover/facility.hpp"
#include "pcover/generators.hpp"
#include "pcover/io.hpp"
#include "pcover/log.hpp"
#include "pcover/rounding.hpp"

namespace pcover {
namespace {

using io::Json;
using Clock = std::chrono::steady_clock;

struct Options {
  std::string input;
  std::string output;
  std::uint64_t seed = 0;
  double alpha = 6.0;
  double c = 4.0;
  std::string rounder = "greedy";
  int max_restarts = 20;
  int trials = 0;
  bool table = false;
  int exact_limit = 20;
  std::string trace_path;
  std::string cuts_path;
  std::string lp_path;
  std::string cover_path;
  int max_sets = kExactMaxSets;

  // generate
  int n = 16;
  int m = 8;
  int r = 2;
  double density = 0.3;
  double min_weight = 1.0;
  double max_weight = 10.0;
  std::string from;
  int facilities = 4;
  int clients = 8;
  double gamma = 1.0;
  int side = 3;

  // bench
  std::string suite = "random";
  int count = 20;
  int jobs = 1;
};

// Failure of the checked property itself (e.g. an infeasible cover).
struct Rejected {
  std::string message;
};

class Context {
 public:
  Context(const Options& opts, std::istream& in, std::ostream& out)
      : opts_(opts), in_(in), out_(out) {}

  const Options& opts() const { return opts_; }

  std::string read(const std::string& path) const {
    if (path.empty() || path == "-") {
      return std::string(std::istreambuf_iterator<char>(in_), {});
    }
    std::ifstream file(path);
    if (!file) throw InputError("cannot open " + path);
    return std::string(std::istreambuf_iterator<char>(file), {});
  }

  Json read_json(const std::string& path) const { return io::parse(read(path)); }
  Json input() const { return read_json(opts_.input); }

  void emit(const std::string& text) const {
    if (opts_.output.empty() || opts_.output == "-") {
      out_ << text;
      return;
    }
    std::ofstream file(opts_.output);
    if (!file) throw InputError("cannot write " + opts_.output);
    file << text;
  }

  void emit_report(const Json& report) const {
    emit(opts_.table ? render_pairs(report) : report.dump(2) + "\n");
  }

  static void write_file(const std::string& path, const std::string& text) {
    std::ofstream file(path);
    if (!file) throw InputError("cannot write " + path);
    file << text;
  }

  RoundingConfig config() const {
    RoundingConfig cfg;
    cfg.alpha = opts_.alpha;
    cfg.c = opts_.c;
    cfg.max_restarts = opts_.max_restarts;
    cfg.seed = opts_.seed;
    cfg.rounder = opts_.rounder;
    validate(cfg);
    make_rounder(cfg.rounder);
    return cfg;
  }

  Json params() const {
    return {{"alpha", opts_.alpha},
            {"c", opts_.c},
            {"max_restarts", opts_.max_restarts},
            {"rounder", opts_.rounder},
            {"seed", opts_.seed}};
  }

  static std::string render_pairs(const Json& report) {
    std::size_t width = 0;
    for (const auto& item : report.items()) width = std::max(width, item.key().size());
    std::ostringstream os;
    for (const auto& item : report.items()) {
      os << std::left << std::setw(static_cast<int>(width) + 2) << item.key();
      os << (item.value().is_string() ? item.value().get<std::string>()
                                      : item.value().dump())
         << '\n';
    }
    return os.str();
  }

 private:
  const Options& opts_;
  std::istream& in_;
  std::ostream& out_;
};

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

Json ratio_json(double weight, double exact) {
  if (exact > 0.0) return weight / exact;
  return weight <= 0.0 ? Json(1.0) : Json(nullptr);
}

Json monte_carlo(const Instance& instance, const StrengthenedSolution& sol,
                 const Options& opts) {
  const ResidualState state = residual(instance, sol.base);
  Json per_color = Json::array();
  for (ColorId t = 0; t < instance.num_colors(); ++t) {
    if (state.satisfied(t)) continue;
    const double p = estimate_iteration_success(instance, sol.frac.x, sol.base, t,
                                                opts.trials, opts.seed, opts.alpha);
    per_color.push_back({{"color", t},
                         {"residual", state.residual_per_color[t]},
                         {"success", p}});
  }
  double total = 0.0;
  for (int k = 0; k < opts.trials; ++k) {
    const RandomStream rng(opts.seed, 1, static_cast<std::uint64_t>(k));
    total += cover_weight(instance, randomized_round_once(instance, sol.frac.x,
                                                          sol.base, opts.alpha, rng));
  }
  return {{"trials", opts.trials},
          {"per_color", per_color},
          {"expected_iteration_weight",
           expected_iteration_weight(instance, sol.frac.x, sol.base)},
          {"mean_iteration_weight", total / opts.trials}};
}

int cmd_solve(const Context& ctx) {
  const Options& opts = ctx.opts();
  const Instance instance = io::instance_from_json(ctx.input());
  const RoundingConfig cfg = ctx.config();

  FindOptions find;
  std::ofstream cuts;
  if (!opts.cuts_path.empty()) {
    cuts.open(opts.cuts_path);
    if (!cuts) throw InputError("cannot write " + opts.cuts_path);
    find.on_cut = [&cuts](const CutRecord& cut) {
      cuts << Json{{"color", cut.color},
                   {"base_size", cut.base_size},
                   {"rhs", cut.rhs},
                   {"violation", cut.violation},
                   {"delta", cut.delta}}
                  .dump()
           << '\n';
    };
  }

  const auto start = Clock::now();
  SolveResult result;
  try {
    result = solve(instance, cfg, find);
  } catch (const RoundingFailure& failure) {
    if (!opts.trace_path.empty()) {
      Context::write_file(opts.trace_path, io::to_json(failure.trace()).dump(2) + "\n");
    }
    throw;
  }
  const double solve_ms = elapsed_ms(start);
  const auto& sol = result.strengthened;

  Json report = {{"command", "solve"},
                 {"instance_digest", io::digest(io::to_json(instance))},
                 {"params", ctx.params()},
                 {"cover", result.cover.chosen},
                 {"weight", result.weight},
                 {"feasible", verify_cover(instance, result.cover).feasible},
                 {"delta", sol.delta},
                 {"lp_value", sol.lp_value},
                 {"root_value", sol.root_value},
                 {"heavy_cover", sol.heavy_cover.chosen},
                 {"cuts", {{"root", sol.root_cuts}, {"separated", sol.separated_cuts}}},
                 {"restarts", result.trace.restarts.size()},
                 {"seed", opts.seed},
                 {"wall_time_ms", solve_ms}};
  if (instance.num_sets() <= opts.exact_limit) {
    const OracleResult exact = exact_opt(instance, opts.exact_limit);
    report["exact_weight"] = exact.weight;
    report["ratio"] = ratio_json(result.weight, exact.weight);
  }
  if (opts.trials > 0) report["monte_carlo"] = monte_carlo(instance, sol, opts);
  if (!opts.trace_path.empty()) {
    Context::write_file(opts.trace_path, io::to_json(result.trace).dump(2) + "\n");
  }
  if (!opts.lp_path.empty()) Context::write_file(opts.lp_path, to_text(sol.lp));
  ctx.emit_report(report);
  return 0;
}

int cmd_solve_fl(const Context& ctx) {
  const Options& opts = ctx.opts();
  const FLInstance fl = io::fl_from_json(ctx.input());
  const auto start = Clock::now();
  const FLSolveResult result = solve_fl(fl, ctx.config());
  const double solve_ms = elapsed_ms(start);

  Json report = {{"command", "solve-fl"},
                 {"instance_digest", io::digest(io::to_json(fl))},
                 {"params", ctx.params()},
                 {"solution", io::to_json(result.solution)},
                 {"cost", result.solution.cost},
                 {"feasible", fl_feasible(fl, result.solution)},
                 {"delta", result.search.delta},
                 {"lp_value", result.search.lp_value},
                 {"heavy_clients", result.search.heavy},
                 {"heavy_open", result.heavy_open},
                 {"copies", result.copies.size()},
                 {"cuts", {{"root", result.search.root_cuts},
                           {"separated", result.search.separated_cuts}}},
                 {"seed", opts.seed},
                 {"wall_time_ms", solve_ms}};
  if (fl.num_facilities() <= std::min(opts.exact_limit, 12)) {
    const FLSolution exact = exact_fl(fl);
    report["exact_cost"] = exact.cost;
    report["ratio"] = ratio_json(result.solution.cost, exact.cost);
  }
  if (!opts.trace_path.empty()) {
    Context::write_file(opts.trace_path, io::to_json(result.trace).dump(2) + "\n");
  }
  if (!opts.lp_path.empty()) Context::write_file(opts.lp_path, to_text(result.search.lp));
  ctx.emit_report(report);
  return 0;
}

int cmd_solve_mcc(const Context& ctx) {
  const Options& opts = ctx.opts();
  const MCCInstance mcc = io::mcc_from_json(ctx.input());
  const auto start = Clock::now();
  const MCCSolveResult result = solve_mcc(mcc, ctx.config());
  const double solve_ms = elapsed_ms(start);

  Json report = {{"command", "solve-mcc"},
                 {"instance_digest", io::digest(io::to_json(mcc))},
                 {"params", ctx.params()},
                 {"solution", io::to_json(result.solution)},
                 {"cost", result.solution.cost},
                 {"feasible", result.solution.feasible},
                 {"delta", result.partition.strengthened.delta},
                 {"selected_before_pruning", result.partition.cover.chosen.size()},
                 {"seed", opts.seed},
                 {"wall_time_ms", solve_ms}};
  if (mcc.space.num_facilities() <= opts.exact_limit) {
    try {
      const MCCSolution exact = exact_mcc(mcc);
      report["exact_cost"] = exact.cost;
      report["ratio"] = ratio_json(result.solution.cost, exact.cost);
    } catch (const InputError&) {
      // search space too large for the oracle; report without it
    }
  }
  if (!opts.trace_path.empty()) {
    Context::write_file(opts.trace_path,
                        io::to_json(result.partition.trace).dump(2) + "\n");
  }
  ctx.emit_report(report);
  return 0;
}

int cmd_exact(const Context& ctx) {
  const Instance instance = io::instance_from_json(ctx.input());
  const auto start = Clock::now();
  const OracleResult result = exact_opt(instance, ctx.opts().max_sets);
  Json report = {{"command", "exact"},
                 {"instance_digest", io::digest(io::to_json(instance))},
                 {"cover", result.cover.chosen},
                 {"weight", result.weight},
                 {"nodes", result.nodes},
                 {"wall_time_ms", elapsed_ms(start)}};
  ctx.emit_report(report);
  return 0;
}

int cmd_verify(const Context& ctx) {
  const Options& opts = ctx.opts();
  if (opts.cover_path.empty()) throw InputError("--cover is required");
  const Instance instance = io::instance_from_json(ctx.input());
  const Json raw_cover = ctx.read_json(opts.cover_path);
  // Accept a solve report as well as a bare cover.
  const Json& cover_json =
      raw_cover.is_object() && raw_cover.contains("cover") ? raw_cover["cover"] : raw_cover;
  const CoverageReport report = verify_cover(instance, io::cover_from_json(cover_json));
  Json out = io::to_json(report);
  out["command"] = "verify";
  out["instance_digest"] = io::digest(io::to_json(instance));
  ctx.emit_report(out);
  if (!report.feasible) {
    std::ostringstream msg;
    msg << "cover is infeasible; deficits per color:";
    for (std::size_t t = 0; t < report.deficit_per_color.size(); ++t) {
      if (report.deficit_per_color[t] > 0) {
        msg << " " << t << ":" << report.deficit_per_color[t];
      }
    }
    throw Rejected{msg.str()};
  }
  return 0;
}

int cmd_generate(const Context& ctx, const std::string& kind) {
  const Options& o = ctx.opts();
  Json j;
  if (kind == "gap") {
    j = io::to_json(gap_instance(o.n));
  } else if (kind == "random") {
    j = io::to_json(random_instance(
        {o.n, o.m, o.r, o.density, o.min_weight, o.max_weight, o.seed}));
  } else if (kind == "setcover") {
    j = io::to_json(random_setcover(o.n, o.m, o.density, o.seed, o.min_weight, o.max_weight));
  } else if (kind == "intervals") {
    const std::string& path = o.from.empty() ? o.input : o.from;
    j = io::to_json(setcover_to_intervals(io::instance_from_json(ctx.read_json(path))));
  } else if (kind == "fl") {
    j = io::to_json(random_fl(o.facilities, o.clients, o.r, o.seed));
  } else if (kind == "fl-gap") {
    j = io::to_json(fl_gap_instance(o.side));
  } else if (kind == "mcc") {
    j = io::to_json(random_mcc(o.facilities, o.clients, o.r, o.gamma, o.seed));
  }
  ctx.emit(j.dump(2) + "\n");
  return 0;
}

struct BenchRow {
  int index = 0;
  std::uint64_t seed = 0;
  std::string shape;
  double weight = 0.0;
  double exact = 0.0;
  bool has_exact = false;
  bool feasible = false;
  std::string error;
};

BenchRow bench_one(const std::string& suite, int index, const Options& o) {
  BenchRow row;
  row.index = index;
  row.seed = splitmix64(o.seed ^ static_cast<std::uint64_t>(index));
  RoundingConfig cfg;
  cfg.alpha = o.alpha;
  cfg.c = o.c;
  cfg.max_restarts = o.max_restarts;
  cfg.rounder = o.rounder;
  cfg.seed = row.seed;
  const auto pick = [&](int lo, int hi, int salt) {
    return lo + static_cast<int>(splitmix64(row.seed + static_cast<std::uint64_t>(salt)) %
                                 static_cast<std::uint64_t>(hi - lo + 1));
  };
  try {
    if (suite == "random" || suite == "gap" || suite == "setcover") {
      const Instance instance = [&] {
        if (suite == "gap") {
          const int s = 1 + index % 5;
          return gap_instance(s * s);
        }
        const int n = pick(4, 12, 1);
        const int m = pick(3, 10, 2);
        const double density = 0.15 + 0.05 * pick(0, 6, 4);
        if (suite == "setcover") return random_setcover(n, m, density, row.seed);
        return random_instance(
            {n, m, pick(1, std::min(4, n), 3), density, 1.0, 10.0, row.seed});
      }();
      row.shape = "n=" + std::to_string(instance.num_elements()) +
                  " m=" + std::to_string(instance.num_sets()) +
                  " r=" + std::to_string(instance.num_colors());
      const SolveResult result = solve(instance, cfg);
      row.weight = result.weight;
      row.feasible = verify_cover(instance, result.cover).feasible;
      if (instance.num_sets() <= o.exact_limit) {
        row.exact = exact_opt(instance, o.exact_limit).weight;
        row.has_exact = true;
      }
    } else if (suite == "fl") {
      const int clients = pick(3, 8, 2);
      const FLInstance fl = random_fl(pick(2, 5, 1), clients,
                                      pick(1, std::min(3, clients), 3), row.seed);
      row.shape = "F=" + std::to_string(fl.num_facilities()) +
                  " C=" + std::to_string(fl.num_clients) +
                  " r=" + std::to_string(fl.num_colors());
      const FLSolveResult result = solve_fl(fl, cfg);
      row.weight = result.solution.cost;
      row.feasible = fl_feasible(fl, result.solution);
      row.exact = exact_fl(fl).cost;
      row.has_exact = true;
    } else if (suite == "mcc") {
      const int clients = pick(3, 8, 2);
      const MCCInstance mcc = random_mcc(pick(2, 5, 1), clients,
                                         pick(1, std::min(3, clients), 3),
                                         pick(1, 2, 5), row.seed);
      row.shape = "F=" + std::to_string(mcc.space.num_facilities()) +
                  " C=" + std::to_string(mcc.space.num_clients) +
                  " r=" + std::to_string(mcc.space.num_colors());
      const MCCSolveResult result = solve_mcc(mcc, cfg);
      row.weight = result.solution.cost;
      row.feasible = result.solution.feasible;
      row.exact = exact_mcc(mcc).cost;
      row.has_exact = true;
    } else {
      throw InputError("unknown suite '" + suite + "'");
    }
  } catch (const InputError&) {
    throw;
  } catch (const std::exception& e) {
    row.feasible = false;
    row.error = e.what();
  }
  return row;
}

int cmd_bench(const Context& ctx) {
  const Options& o = ctx.opts();
  if (o.count < 1) throw InputError("--count must be positive");
  if (o.jobs < 1) throw InputError("--jobs must be positive");
  ctx.config();
  bench_one(o.suite, 0, o);  // rejects an unknown suite before spawning workers

  std::vector<BenchRow> rows(o.count);
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto worker = [&]() {
    for (int k = next++; k < o.count; k = next++) {
      try {
        rows[k] = bench_one(o.suite, k, o);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mu);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const auto start = Clock::now();
  std::vector<std::thread> pool;
  for (int t = 1; t < std::min(o.jobs, o.count); ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);

  int feasible = 0;
  int with_exact = 0;
  double sum_ratio = 0.0;
  double max_ratio = 0.0;
  Json instances = Json::array();
  for (const auto& row : rows) {
    feasible += row.feasible ? 1 : 0;
    Json entry = {{"index", row.index},
                  {"seed", row.seed},
                  {"shape", row.shape},
                  {"feasible", row.feasible}};
    if (row.error.empty()) entry["weight"] = row.weight;
    if (!row.error.empty()) entry["error"] = row.error;
    if (row.has_exact && row.error.empty()) {
      entry["exact"] = row.exact;
      const Json ratio = ratio_json(row.weight, row.exact);
      entry["ratio"] = ratio;
      if (ratio.is_number()) {
        sum_ratio += ratio.get<double>();
        max_ratio = std::max(max_ratio, ratio.get<double>());
        ++with_exact;
      }
    }
    instances.push_back(std::move(entry));
  }
  const Json summary = {{"count", o.count},
                        {"feasible", feasible},
                        {"failures", o.count - feasible},
                        {"mean_ratio", with_exact ? Json(sum_ratio / with_exact) : Json(nullptr)},
                        {"max_ratio", with_exact ? Json(max_ratio) : Json(nullptr)}};

  if (o.table) {
    std::ostringstream os;
    os << std::left << std::setw(7) << "index" << std::setw(22) << "shape"
       << std::right << std::setw(12) << "weight" << std::setw(12) << "exact"
       << std::setw(9) << "ratio" << "  feasible\n";
    os << std::fixed << std::setprecision(4);
    for (const auto& row : rows) {
      os << std::left << std::setw(7) << row.index << std::setw(22) << row.shape
         << std::right << std::setw(12) << row.weight << std::setw(12);
      if (row.has_exact) {
        os << row.exact << std::setw(9)
           << (row.exact > 0.0 ? row.weight / row.exact : 1.0);
      } else {
        os << "-" << std::setw(9) << "-";
      }
      os << "  " << (row.feasible ? "yes" : "NO " + row.error) << '\n';
    }
    os << "\nsuite " << o.suite << ": " << feasible << "/" << o.count << " feasible";
    if (with_exact) {
      os << ", mean ratio " << sum_ratio / with_exact << ", max ratio " << max_ratio;
    }
    os << '\n';
    ctx.emit(os.str());
  } else {
    const Json report = {{"command", "bench"},
                         {"suite", o.suite},
                         {"params", ctx.params()},
                         {"summary", summary},
                         {"instances", instances},
                         {"wall_time_ms", elapsed_ms(start)}};
    ctx.emit(report.dump(2) + "\n");
  }
  log::info("bench " + o.suite + ": " + std::to_string(feasible) + "/" +
            std::to_string(o.count) + " feasible");
  return feasible == o.count ? 0 : 2;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in,
            std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Partition Set Cover solver with facility location and covering extensions",
               "pcover"};
  app.require_subcommand(1, 1);
  app.fallthrough();
  app.add_option("--input", o.input, "Input JSON file (stdin when absent)");
  app.add_option("--output", o.output, "Output file (stdout when absent)");
  app.add_option("--seed", o.seed, "Random seed");
  app.add_option("--alpha", o.alpha, "Heavy/light scale parameter (> 1)");
  app.add_option("--c", o.c, "Iterations per restart are ceil(c ln(r+1))");
  app.add_option("--rounder", o.rounder, "Heavy-cover rounder")
      ->check(CLI::IsMember({"greedy", "frequency"}));
  app.add_option("--max-restarts", o.max_restarts, "Restarts before raising the guess");
  app.add_option("--trials", o.trials, "Monte Carlo trials for per-iteration estimates");
  app.add_flag("--table", o.table, "Render aligned text instead of JSON");
  app.add_option("--exact-limit", o.exact_limit,
                 "Run the exact oracle when the instance has at most this many sets");

  auto* generate = app.add_subcommand("generate", "Emit an instance");
  generate->require_subcommand(1, 1);
  generate->fallthrough();
  auto* gen_gap = generate->add_subcommand("gap", "Integrality-gap family");
  gen_gap->add_option("--n", o.n, "Number of elements (a perfect square)")->required();
  auto* gen_random = generate->add_subcommand("random", "Random partition instance");
  auto* gen_sc = generate->add_subcommand("setcover", "Random plain set cover instance");
  for (auto* sub : {gen_random, gen_sc}) {
    sub->add_option("--n", o.n, "Elements");
    sub->add_option("--m", o.m, "Sets");
    sub->add_option("--density", o.density, "Incidence probability");
    sub->add_option("--min-weight", o.min_weight, "Smallest set weight");
    sub->add_option("--max-weight", o.max_weight, "Largest set weight");
  }
  gen_random->add_option("--r", o.r, "Colors");
  auto* gen_intervals = generate->add_subcommand("intervals", "Interval encoding of a set cover");
  gen_intervals->add_option("--from", o.from, "Set cover instance JSON");
  auto* gen_fl = generate->add_subcommand("fl", "Random facility location instance");
  auto* gen_mcc = generate->add_subcommand("mcc", "Random covering instance");
  for (auto* sub : {gen_fl, gen_mcc}) {
    sub->add_option("--facilities", o.facilities, "Facilities");
    sub->add_option("--clients", o.clients, "Clients");
    sub->add_option("--r", o.r, "Colors");
  }
  gen_mcc->add_option("--gamma", o.gamma, "Radius exponent (>= 1)");
  auto* gen_fl_gap = generate->add_subcommand("fl-gap", "Facility location gap family");
  gen_fl_gap->add_option("--s", o.side, "Groups")->required();
  for (auto* sub : generate->get_subcommands({})) sub->fallthrough();

  auto* solve_cmd = app.add_subcommand("solve", "Solve a partition set cover instance");
  auto* fl_cmd = app.add_subcommand("solve-fl", "Solve facility location with outliers");
  auto* mcc_cmd = app.add_subcommand("solve-mcc", "Solve minimum cost covering");
  for (auto* sub : {solve_cmd, fl_cmd, mcc_cmd}) {
    sub->add_option("--trace", o.trace_path, "Write the rounding trace here");
  }
  for (auto* sub : {solve_cmd, fl_cmd}) {
    sub->add_option("--dump-lp", o.lp_path, "Write the final LP here");
  }
  solve_cmd->add_option("--dump-cuts", o.cuts_path, "Write each separated cut as a JSON line");
  auto* exact_cmd = app.add_subcommand("exact", "Exact optimum by branch and bound");
  exact_cmd->add_option("--max-sets", o.max_sets, "Refuse instances with more sets");
  auto* verify_cmd = app.add_subcommand("verify", "Check a cover against an instance");
  verify_cmd->add_option("--cover", o.cover_path, "Cover JSON")->required();
  auto* bench_cmd = app.add_subcommand("bench", "Solve a seeded suite and compare to the oracle");
  bench_cmd->add_option("--suite", o.suite, "random | gap | setcover | fl | mcc")
      ->check(CLI::IsMember({"random", "gap", "setcover", "fl", "mcc"}));
  bench_cmd->add_option("--count", o.count, "Instances");
  bench_cmd->add_option("--jobs", o.jobs, "Worker threads");
  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  const Context ctx(o, in, out);
  try {
    if (generate->parsed()) {
      for (auto* sub : generate->get_subcommands({})) {
        if (sub->parsed()) return cmd_generate(ctx, sub->get_name());
      }
    }
    if (solve_cmd->parsed()) return cmd_solve(ctx);
    if (fl_cmd->parsed()) return cmd_solve_fl(ctx);
    if (mcc_cmd->parsed()) return cmd_solve_mcc(ctx);
    if (exact_cmd->parsed()) return cmd_exact(ctx);
    if (verify_cmd->parsed()) return cmd_verify(ctx);
    if (bench_cmd->parsed()) return cmd_bench(ctx);
  } catch (const Rejected& r) {
    err << "pcover: " << r.message << '\n';
    return 1;
  } catch (const InputError& e) {
    err << "pcover: invalid input: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "pcover: internal error: " << e.what() << '\n';
    return 2;
  }
  err << "pcover: no command\n";
  return 1;
}

}  // namespace pcover
