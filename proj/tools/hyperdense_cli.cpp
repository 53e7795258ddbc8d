// Command-line frontend: dataset ingestion, algorithm selection, benchmark
// tables, subset statistics, and ILP export. See docs/formats.md for the
// file formats and output schemas.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hyperdense/hyperdense.hpp"

namespace hd = hyperdense;
using ordered_json = nlohmann::ordered_json;

namespace {

// Exit codes: 0 success, 2 usage, 3 data error, 4 capacity/limit refusal.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

constexpr const char* kAlgoNames[] = {"peel-zero", "peel-max",  "greedy",      "deg-peel",
                                      "proj-flow", "proj-greedy", "flow-exact", "brute"};

bool known_algo(const std::string& name) {
  for (const char* a : kAlgoNames) {
    if (name == a) return true;
  }
  return false;
}

struct CommonOptions {
  std::string reward;
  bool json = false;
  bool csv = false;
  bool project = false;
  bool deg_intersecting = false;
  int brute_limit = 20;
  long seed = 0;  // reserved; all bundled algorithms are deterministic
};

std::ifstream open_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw hd::DataError("cannot open '" + path + "'");
  return in;
}

hd::Hypergraph load_instance(const std::string& input, const std::string& labels) {
  std::ifstream edges = open_file(input);
  hd::Hypergraph h;
  if (!labels.empty()) {
    std::ifstream label_stream = open_file(labels);
    h = hd::parse_hypergraph(edges, &label_stream);
  } else {
    h = hd::parse_hypergraph(edges);
  }
  return hd::preprocess(h);
}

void attach_by_name(hd::Hypergraph& h, const std::string& reward) {
  if (auto family = hd::parse_reward_family(reward)) {
    hd::attach_rewards(h, *family);
  } else if (std::filesystem::exists(reward)) {
    std::ifstream in = open_file(reward);
    hd::attach_rewards(h, hd::load_custom_rewards(in));
  } else {
    throw UsageError("unknown reward '" + reward + "' (not a built-in name or readable file)");
  }
  hd::fold_weights(h);
}

std::string guarantee_tag(const hd::Hypergraph& h, const std::string& algo, double rho) {
  int k = h.max_edge_size();
  std::string ks = std::to_string(k);
  if (algo == "peel-zero" || algo == "peel-max") {
    hd::PeelStrategy s = algo == "peel-zero" ? hd::PeelStrategy::Zero : hd::PeelStrategy::Max;
    return hd::bounds_valid(h, s) ? "1/k where k=" + ks : "no guarantee (heuristic)";
  }
  if (algo == "greedy") {
    return hd::bounds_valid(h, hd::PeelStrategy::Greedy) ? "1/k where k=" + ks
                                                         : "no guarantee (heuristic)";
  }
  if (algo == "deg-peel") return "no guarantee (heuristic)";
  if (algo == "proj-flow") {
    return "1/rho where rho=" + hd::detail::format_double(rho) + " (rho <= k=" + ks + ")";
  }
  if (algo == "proj-greedy") return "1/k^2 where k=" + ks;
  return "exact";
}

struct CellResult {
  std::string dataset;
  std::string reward;
  std::string algo;
  double objective = 0.0;
  int size = 0;
  double seconds = 0.0;
  std::string guarantee;
  std::optional<std::string> error;
  std::vector<hd::NodeId> members;
};

bool snapped_convex(const hd::Hypergraph& h) {
  for (const auto& e : h.edges) {
    if (!hd::is_convex_exact(hd::snap_table(hd::effective_table(e)))) return false;
  }
  return true;
}

// Runs one algorithm on a prepared (preprocessed, attached, folded) instance.
CellResult run_cell(const hd::Hypergraph& h, const std::string& dataset, const std::string& reward,
                    const std::string& algo, const CommonOptions& opt) {
  CellResult cell;
  cell.dataset = dataset;
  cell.reward = reward;
  cell.algo = algo;

  std::string effective_algo = algo;
  if (algo == "flow-exact" && !snapped_convex(h)) {
    if (!opt.project) {
      throw UsageError(
          "flow-exact requires convex rewards; pass --project to project first or use proj-flow");
    }
    effective_algo = "proj-flow";
  }

  auto start = std::chrono::steady_clock::now();
  double rho = 1.0;
  if (effective_algo == "peel-zero" || effective_algo == "peel-max" || effective_algo == "greedy") {
    hd::PeelStrategy s = effective_algo == "peel-zero"  ? hd::PeelStrategy::Zero
                         : effective_algo == "peel-max" ? hd::PeelStrategy::Max
                                                        : hd::PeelStrategy::Greedy;
    hd::PeelResult r = hd::peel(h, s);
    cell.members = std::move(r.best_set);
    cell.objective = r.best_density;
  } else if (effective_algo == "deg-peel") {
    hd::PeelResult r = hd::peel_degree(
        h, opt.deg_intersecting ? hd::DegreeMode::Intersecting : hd::DegreeMode::Contained);
    cell.members = std::move(r.best_set);
    cell.objective = r.best_density;
  } else if (effective_algo == "proj-flow") {
    hd::ProjectedResult r = hd::solve_projected(h);
    cell.members = std::move(r.set);
    cell.objective = r.original_density;
    rho = hd::to_double(r.rho);
  } else if (effective_algo == "proj-greedy") {
    hd::ProjectedHypergraph projected = hd::project_hypergraph(h);
    hd::PeelResult r = hd::peel(projected.graph, hd::PeelStrategy::Greedy);
    cell.members = std::move(r.best_set);
    cell.objective = hd::density(h, cell.members);
  } else if (effective_algo == "flow-exact") {
    hd::ExactResult r = hd::solve_convex_exact(h);
    cell.members = std::move(r.set);
    cell.objective = r.density_double();
  } else if (effective_algo == "brute") {
    hd::BruteForceResult r = hd::brute_force(h, opt.brute_limit);
    cell.members = std::move(r.set);
    cell.objective = r.density;
  } else {
    throw UsageError("unknown algorithm '" + algo + "'");
  }
  auto stop = std::chrono::steady_clock::now();
  cell.seconds = std::chrono::duration<double>(stop - start).count();
  cell.size = static_cast<int>(cell.members.size());
  cell.guarantee = guarantee_tag(h, effective_algo, rho);
  return cell;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

constexpr const char* kCellHeader = "dataset,reward,algo,objective,size,seconds,guarantee";

std::string cell_to_csv(const CellResult& c) {
  std::ostringstream row;
  row << csv_escape(c.dataset) << ',' << c.reward << ',' << c.algo << ','
      << (c.error ? "ERROR" : hd::detail::format_double(c.objective)) << ',' << c.size << ','
      << hd::detail::format_double(c.seconds) << ','
      << csv_escape(c.error ? "error: " + *c.error : c.guarantee);
  return row.str();
}

ordered_json cell_to_json(const CellResult& c, const std::vector<std::string>& tokens,
                          bool with_members) {
  ordered_json j;
  j["dataset"] = c.dataset;
  j["reward"] = c.reward;
  j["algo"] = c.algo;
  if (c.error) {
    j["objective"] = nullptr;
    j["error"] = *c.error;
  } else {
    j["objective"] = c.objective;
  }
  j["size"] = c.size;
  j["seconds"] = c.seconds;
  j["guarantee"] = c.guarantee;
  if (with_members && !c.error) {
    ordered_json members = ordered_json::array();
    for (hd::NodeId v : c.members) {
      if (static_cast<std::size_t>(v) < tokens.size()) {
        members.push_back(tokens[static_cast<std::size_t>(v)]);
      } else {
        members.push_back(v);
      }
    }
    j["members"] = members;
  }
  return j;
}

void print_cell_text(const CellResult& c, const std::vector<std::string>& tokens,
                     bool with_members) {
  std::cout << "dataset: " << c.dataset << "\n";
  std::cout << "reward: " << c.reward << "\n";
  std::cout << "algo: " << c.algo << "\n";
  if (c.error) {
    std::cout << "error: " << *c.error << "\n";
    return;
  }
  std::cout << "objective: " << hd::detail::format_double(c.objective) << "\n";
  std::cout << "size: " << c.size << "\n";
  std::cout << "seconds: " << hd::detail::format_double(c.seconds) << "\n";
  std::cout << "guarantee: " << c.guarantee << "\n";
  if (with_members) {
    std::cout << "members:";
    for (hd::NodeId v : c.members) {
      if (static_cast<std::size_t>(v) < tokens.size()) {
        std::cout << ' ' << tokens[static_cast<std::size_t>(v)];
      } else {
        std::cout << ' ' << v;
      }
    }
    std::cout << "\n";
  }
}

int cmd_dense(const std::string& input, const std::string& labels, const std::string& algo,
              bool members, const CommonOptions& opt) {
  if (!known_algo(algo)) throw UsageError("unknown algorithm '" + algo + "'");
  hd::Hypergraph h = load_instance(input, labels);
  attach_by_name(h, opt.reward);
  CellResult cell = run_cell(h, input, opt.reward, algo, opt);
  if (opt.json) {
    std::cout << cell_to_json(cell, h.tokens, members).dump(2) << "\n";
  } else if (opt.csv) {
    std::cout << kCellHeader << "\n" << cell_to_csv(cell) << "\n";
  } else {
    print_cell_text(cell, h.tokens, members);
  }
  return 0;
}

int cmd_bench(const std::vector<std::string>& inputs, std::vector<std::string> rewards,
              std::vector<std::string> algos, const std::string& labels,
              const CommonOptions& opt) {
  if (rewards.size() == 1 && rewards[0] == "all") {
    rewards.assign(std::begin(hd::kRewardFamilyNames), std::end(hd::kRewardFamilyNames));
  }
  if (algos.size() == 1 && algos[0] == "all") {
    algos = {"peel-zero", "peel-max", "greedy", "deg-peel", "proj-flow", "proj-greedy",
             "flow-exact"};
  }
  for (const auto& a : algos) {
    if (!known_algo(a)) throw UsageError("unknown algorithm '" + a + "'");
  }

  std::vector<CellResult> cells;
  for (const std::string& input : inputs) {
    std::optional<hd::Hypergraph> base;
    std::optional<std::string> load_error;
    try {
      base = load_instance(input, labels);
    } catch (const hd::DataError& e) {
      load_error = e.what();
    }
    for (const std::string& reward : rewards) {
      for (const std::string& algo : algos) {
        CellResult cell;
        cell.dataset = input;
        cell.reward = reward;
        cell.algo = algo;
        if (load_error) {
          cell.error = *load_error;
        } else {
          try {
            hd::Hypergraph h = *base;
            attach_by_name(h, reward);
            cell = run_cell(h, input, reward, algo, opt);
          } catch (const std::exception& e) {
            cell.error = e.what();
          }
        }
        cells.push_back(std::move(cell));
      }
    }
  }

  if (opt.json) {
    ordered_json rows = ordered_json::array();
    for (const auto& c : cells) rows.push_back(cell_to_json(c, {}, false));
    std::cout << rows.dump(2) << "\n";
  } else {
    std::cout << kCellHeader << "\n";
    for (const auto& c : cells) std::cout << cell_to_csv(c) << "\n";
  }
  return 0;
}

std::vector<hd::NodeId> parse_set_argument(const std::string& arg) {
  std::string text = arg;
  if (std::filesystem::exists(arg)) {
    std::ifstream in = open_file(arg);
    std::stringstream buffer;
    buffer << in.rdbuf();
    text = buffer.str();
  }
  for (char& c : text) {
    if (c == ',' || c == '\n' || c == '\t') c = ' ';
  }
  std::istringstream stream(text);
  std::vector<hd::NodeId> ids;
  long v = 0;
  while (stream >> v) ids.push_back(static_cast<hd::NodeId>(v));
  if (!stream.eof()) throw hd::DataError("malformed node id list");
  if (ids.empty()) throw hd::DataError("empty node set");
  return ids;
}

int cmd_stats(const std::string& input, const std::string& labels, const std::string& set_arg,
              const std::string& algo, const CommonOptions& opt) {
  hd::Hypergraph h = load_instance(input, labels);
  attach_by_name(h, opt.reward);

  std::vector<hd::NodeId> set;
  std::string source;
  if (!set_arg.empty()) {
    set = parse_set_argument(set_arg);
    source = "explicit";
  } else if (!algo.empty()) {
    if (!known_algo(algo)) throw UsageError("unknown algorithm '" + algo + "'");
    set = run_cell(h, input, opt.reward, algo, opt).members;
    source = algo;
  } else {
    throw UsageError("stats needs --set or --algo");
  }
  hd::SubsetStats st = hd::subset_stats(h, set);

  if (opt.json) {
    ordered_json j;
    j["dataset"] = input;
    j["reward"] = opt.reward;
    j["set"] = source;
    j["atleast_two"] = st.atleast_two;
    j["atleast_half"] = st.atleast_half;
    j["all_but_one"] = st.all_but_one;
    j["contained"] = st.contained;
    j["size"] = st.size;
    j["density"] = st.density;
    std::cout << j.dump(2) << "\n";
  } else if (opt.csv) {
    std::cout << "dataset,reward,set,atleast_two,atleast_half,all_but_one,contained,size,density\n";
    std::cout << csv_escape(input) << ',' << opt.reward << ',' << source << ',' << st.atleast_two
              << ',' << st.atleast_half << ',' << st.all_but_one << ',' << st.contained << ','
              << st.size << ',' << hd::detail::format_double(st.density) << "\n";
  } else {
    std::cout << "dataset: " << input << "\nreward: " << opt.reward << "\nset: " << source
              << "\natleast-two: " << st.atleast_two << "\natleast-half: " << st.atleast_half
              << "\nall-but-one: " << st.all_but_one << "\ncontained: " << st.contained
              << "\nsize: " << st.size << "\ndensity: " << hd::detail::format_double(st.density)
              << "\n";
  }
  return 0;
}

int cmd_export_ilp(const std::string& input, const std::string& labels, double alpha,
                   const std::string& output, const CommonOptions& opt) {
  hd::Hypergraph h = load_instance(input, labels);
  attach_by_name(h, opt.reward);
  hd::IlpInfo info;
  if (output.empty() || output == "-") {
    info = hd::write_ilp(h, alpha, std::cout);
  } else {
    std::ofstream out(output);
    if (!out) throw hd::DataError("cannot open '" + output + "' for writing");
    info = hd::write_ilp(h, alpha, out);
  }
  std::cerr << "node variables: " << info.node_vars << "\n"
            << "edge variables: " << info.edge_vars << "\n"
            << "constraints: " << info.constraints << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Densest-subhypergraph toolkit for monotone partial-edge rewards"};
  app.require_subcommand(1);

  CommonOptions opt;
  std::string input;
  std::string labels;
  std::string algo;
  bool members = false;

  auto add_common = [&](CLI::App* cmd, bool with_reward = true) {
    if (with_reward) {
      cmd->add_option("--reward", opt.reward, "built-in reward name or custom table file")
          ->required();
    }
    cmd->add_option("--labels", labels, "node label file (token,color per line)");
    cmd->add_flag("--json", opt.json, "machine-readable JSON output");
    cmd->add_flag("--csv", opt.csv, "CSV output");
    cmd->add_option("--seed", opt.seed, "seed recorded for reproducibility");
  };

  CLI::App* dense = app.add_subcommand("dense", "find a densest subhypergraph");
  dense->add_option("--input", input, "edge file")->required();
  dense->add_option("--algo", algo, "peel-zero|peel-max|greedy|deg-peel|proj-flow|proj-greedy|flow-exact|brute")
      ->required();
  add_common(dense);
  dense->add_flag("--members", members, "print the chosen node set");
  dense->add_flag("--project", opt.project, "project non-convex rewards before flow-exact");
  dense->add_flag("--deg-intersecting", opt.deg_intersecting,
                  "deg-peel counts intersecting instead of contained edges");
  dense->add_option("--brute-limit", opt.brute_limit, "max node count for brute force");

  CLI::App* bench = app.add_subcommand("bench", "cross-product benchmark table");
  std::vector<std::string> bench_inputs;
  std::vector<std::string> bench_rewards;
  std::vector<std::string> bench_algos;
  bench->add_option("--input", bench_inputs, "edge files")->required()->delimiter(',');
  bench->add_option("--rewards", bench_rewards, "reward names or 'all'")->required()->delimiter(',');
  bench->add_option("--algos", bench_algos, "algorithm names or 'all'")->required()->delimiter(',');
  bench->add_option("--labels", labels, "node label file");
  bench->add_flag("--json", opt.json, "JSON output (default CSV)");
  bench->add_option("--seed", opt.seed, "seed recorded for reproducibility");
  bench->add_option("--brute-limit", opt.brute_limit, "max node count for brute force");
  bench->add_flag("--project", opt.project, "project non-convex rewards before flow-exact");

  CLI::App* stats = app.add_subcommand("stats", "edge-composition statistics of a node set");
  std::string set_arg;
  stats->add_option("--input", input, "edge file")->required();
  stats->add_option("--set", set_arg, "inline id list or file of ids (preprocessed id space)");
  stats->add_option("--algo", algo, "compute the set with this algorithm");
  add_common(stats);
  stats->add_flag("--project", opt.project, "project non-convex rewards before flow-exact");
  stats->add_option("--brute-limit", opt.brute_limit, "max node count for brute force");

  CLI::App* export_ilp = app.add_subcommand("export-ilp", "write the decision ILP in LP format");
  double alpha = 0.0;
  std::string output;
  export_ilp->add_option("--input", input, "edge file")->required();
  export_ilp->add_option("--alpha", alpha, "density threshold")->required();
  export_ilp->add_option("--output", output, "output path (default stdout)");
  add_common(export_ilp);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  }

  try {
    if (opt.json && opt.csv) throw UsageError("--json and --csv are mutually exclusive");
    if (app.got_subcommand(dense)) return cmd_dense(input, labels, algo, members, opt);
    if (app.got_subcommand(bench)) return cmd_bench(bench_inputs, bench_rewards, bench_algos, labels, opt);
    if (app.got_subcommand(stats)) return cmd_stats(input, labels, set_arg, algo, opt);
    if (app.got_subcommand(export_ilp)) return cmd_export_ilp(input, labels, alpha, output, opt);
    throw UsageError("no subcommand");
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const hd::CapacityError& e) {
    std::cerr << "refused: " << e.what() << "\n";
    return 4;
  } catch (const hd::DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
