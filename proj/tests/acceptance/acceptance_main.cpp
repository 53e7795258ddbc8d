// Acceptance suite: runs every release criterion and prints one PASS/FAIL
// line per criterion. Dataset-dependent checks are skipped (not failed) when
// the data directory is absent; see README.md for how to fetch the datasets.
//
// The corpus attaches built-in family tables quantized at the library's
// rational precision (1e-6 denominator), so the floating pipeline and the
// exact pipeline describe the same instance and oracle comparisons can be
// exact.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "support/instances.hpp"

using namespace hyperdense;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

void report(int criterion, bool pass, const std::string& detail) {
  std::cout << "criterion " << criterion << ": " << (pass ? "PASS" : "FAIL") << " - " << detail
            << std::endl;
  if (!pass) ++g_failures;
}

void report_skip(int criterion, const std::string& detail) {
  std::cout << "criterion " << criterion << ": SKIP - " << detail << std::endl;
}

struct Corpus {
  std::vector<Hypergraph> instances;
};

// Built-in family tables are re-quantized at the snapping precision so the
// double and rational pipelines agree bit for bit.
void quantize_rewards(Hypergraph& h) {
  for (auto& e : h.edges) e.reward = to_double_table(snap_table(e.reward));
}

Corpus build_corpus() {
  Corpus corpus;
  tsup::Rng rng(20250810);
  tsup::InstanceOptions opt{.max_n = 12, .max_edges = 20, .max_edge_size = 5};
  for (int f = 0; f < 6; ++f) {
    for (int i = 0; i < 30; ++i) {
      Hypergraph h = tsup::random_instance(rng, tsup::RewardMode::Family, opt,
                                           static_cast<RewardFamily>(f));
      quantize_rewards(h);
      corpus.instances.push_back(std::move(h));
    }
  }
  for (int i = 0; i < 180; ++i) {
    tsup::InstanceOptions o = opt;
    o.weighted = i % 5 == 0;
    Hypergraph h = tsup::random_instance(rng, tsup::RewardMode::RandomMonotone, o);
    if (o.weighted) fold_weights(h);
    corpus.instances.push_back(std::move(h));
  }
  for (int i = 0; i < 160; ++i) {
    Hypergraph h = tsup::random_instance(rng, tsup::RewardMode::RandomConvex, opt);
    corpus.instances.push_back(std::move(h));
  }
  return corpus;
}

// --- Criterion 1: flow-based exact solving equals exhaustive search --------

void criterion_oracle_equivalence(const Corpus& corpus) {
  auto start = std::chrono::steady_clock::now();
  int convex_count = 0;
  int mismatches = 0;
  for (const Hypergraph& h : corpus.instances) {
    if (!tsup::instance_convex(h)) continue;
    ++convex_count;
    auto tables = snap_rewards(h);
    ExactResult flow_result = solve_convex_exact(h, tables);
    ExactResult brute_result = brute_force_exact(h, tables);
    if (flow_result.density != brute_result.density) ++mismatches;
  }
  double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::ostringstream detail;
  detail << corpus.instances.size() << " instances, " << convex_count
         << " convex; exact density equality on all convex instances; " << mismatches
         << " mismatches; " << seconds << " s";
  report(1, mismatches == 0 && convex_count >= 150 && seconds < 60.0 &&
                corpus.instances.size() >= 500,
         detail.str());
}

// --- Criterion 2: 1/k peeling guarantee ------------------------------------

void criterion_peeling_guarantee(const Corpus& corpus) {
  int violations = 0;
  int greedy_bound_violations = 0;
  int greedy_guarantee_misses = 0;
  const Rational slack(1, 1'000'000'000);  // float-vs-exact measurement tolerance
  for (const Hypergraph& h : corpus.instances) {
    auto tables = snap_rewards(h);
    Rational opt = brute_force_exact(h, tables).density;
    int k = h.max_edge_size();
    for (PeelStrategy strategy : {PeelStrategy::Zero, PeelStrategy::Max}) {
      PeelResult r = peel(h, strategy);
      Rational achieved = density_exact(h, tables, r.best_set);
      if (achieved * k < opt * (1 - slack)) ++violations;
    }
    // Classical greedy peeling: record (expected) bound violations on
    // non-convex rewards, and still measure it against the oracle.
    if (!bounds_valid(h, PeelStrategy::Greedy)) {
      ++greedy_bound_violations;
      PeelResult r = peel(h, PeelStrategy::Greedy);
      Rational achieved = density_exact(h, tables, r.best_set);
      if (achieved * k < opt * (1 - slack)) ++greedy_guarantee_misses;
    }
  }
  std::ostringstream detail;
  detail << "peel(zero) and peel(max) within 1/k of the optimum on 100% of instances ("
         << violations << " violations); greedy bound invalid on " << greedy_bound_violations
         << " non-convex instances as expected, missing 1/k on " << greedy_guarantee_misses
         << " of them";
  report(2, violations == 0 && greedy_bound_violations > 0, detail.str());
}

// --- Criterion 3: projection sandwich and hull optimality -------------------

void criterion_projection(const Corpus&) {
  tsup::Rng rng(424242);
  int tables_checked = 0;
  int failures = 0;
  auto check_table = [&](const RationalTable& r) {
    ++tables_checked;
    int m = static_cast<int>(r.size()) - 1;
    ConvexProjection proj = lower_convex_hull(r);
    bool ok = is_convex_exact(proj.hull) && proj.hull == tsup::pairwise_hull(r);
    for (int i = 0; ok && i <= m; ++i) {
      const Rational& hull_i = proj.hull[static_cast<std::size_t>(i)];
      const Rational& r_i = r[static_cast<std::size_t>(i)];
      ok = hull_i <= r_i && (r_i == 0 || r_i <= m * hull_i);
    }
    if (!ok) ++failures;
  };

  for (int trial = 0; trial < 300; ++trial) {
    int m = 1 + static_cast<int>(rng() % 30);
    RationalTable r(static_cast<std::size_t>(m) + 1, Rational(0));
    for (int i = 1; i <= m; ++i) {
      r[static_cast<std::size_t>(i)] =
          r[static_cast<std::size_t>(i) - 1] + Rational(static_cast<int>(rng() % 7), 1 + static_cast<int>(rng() % 9));
    }
    check_table(r);
  }
  for (int f = 0; f < 6; ++f) {
    for (int m = 1; m <= 30; ++m) {
      check_table(snap_table(builtin_reward(static_cast<RewardFamily>(f), m)));
    }
  }

  // The all-or-nothing table must reproduce hull(i) = i/k and rho = k.
  bool atleast_one_ok = true;
  for (int k = 1; k <= 30; ++k) {
    RationalTable r(static_cast<std::size_t>(k) + 1, Rational(1));
    r[0] = 0;
    ConvexProjection proj = lower_convex_hull(r);
    for (int i = 0; i <= k; ++i) {
      atleast_one_ok = atleast_one_ok && proj.hull[static_cast<std::size_t>(i)] == Rational(i, k);
    }
    atleast_one_ok = atleast_one_ok && proj.rho == k;
  }

  std::ostringstream detail;
  detail << tables_checked << " tables: hull convex, equals the pairwise oracle, and satisfies "
         << "hull <= r <= k*hull (" << failures << " failures); all-or-nothing hull is i/k with rho=k: "
         << (atleast_one_ok ? "yes" : "no");
  report(3, failures == 0 && atleast_one_ok, detail.str());
}

// --- Criterion 4: constrained guarantees ------------------------------------

void criterion_constrained() {
  tsup::Rng rng(515151);
  int card_violations = 0;
  int fair_violations = 0;
  int fair_checked = 0;
  int trials = 120;
  for (int trial = 0; trial < trials; ++trial) {
    Hypergraph h = tsup::random_instance(rng, tsup::RewardMode::RandomMonotone,
                                         {.max_n = 10, .max_edges = 14});
    int k = h.max_edge_size();
    int ell = 1 + static_cast<int>(rng() % std::max(1, h.n / 2));
    std::vector<NodeId> s = card_swamp(h, ell);
    double opt = tsup::best_density_at_least(h, ell);
    if (static_cast<int>(s.size()) < ell || density(h, s) < opt / (k + 1) - 1e-9) {
      ++card_violations;
    }

    h.labels.assign(static_cast<std::size_t>(h.n), 0);
    int blues = 0;
    for (NodeId v = 0; v < h.n; ++v) {
      if (rng() % 2 == 0) {
        h.labels[static_cast<std::size_t>(v)] = 1;
        ++blues;
      }
    }
    int reds = h.n - blues;
    if (reds == 0 || blues == 0) continue;
    std::map<int, int> floors{{0, 1 + static_cast<int>(rng() % std::max(1, reds / 2))},
                              {1, 1 + static_cast<int>(rng() % std::max(1, blues / 2))}};
    ++fair_checked;
    std::vector<NodeId> fair = fair_swamp(h, floors);
    std::map<int, int> have;
    for (NodeId v : fair) ++have[h.labels[static_cast<std::size_t>(v)]];
    bool feasible = have[0] >= floors[0] && have[1] >= floors[1];
    double fair_opt = tsup::best_density_fair(h, floors);
    if (!feasible || density(h, fair) < fair_opt / (2 * k + 2) - 1e-9) ++fair_violations;
  }
  std::ostringstream detail;
  detail << trials << " cardinality instances within 1/(k+1) of the constrained optimum ("
         << card_violations << " violations); " << fair_checked
         << " two-class instances within 1/(2k+2) (" << fair_violations << " violations)";
  report(4, card_violations == 0 && fair_violations == 0 && fair_checked > 40, detail.str());
}

// --- Criterion 5: benchmark-table reproduction (dataset dependent) ----------

struct DatasetCheck {
  std::string file;
  int expect_n, expect_m, expect_k;
};

void criterion_datasets() {
  const char* env = std::getenv("HYPERDENSE_DATA");
  fs::path dir = env != nullptr ? fs::path(env) : fs::path("data");
  bool any_present = false;
  bool all_pass = true;
  std::ostringstream log;

  auto load = [&](const std::string& name) -> std::optional<Hypergraph> {
    fs::path p = dir / name;
    if (!fs::exists(p)) return std::nullopt;
    any_present = true;
    std::ifstream in(p);
    return preprocess(parse_hypergraph(in));
  };

  auto check_value = [&](const std::string& what, double got, double want, double tol) {
    bool ok = std::abs(got - want) <= tol;
    log << "\n    " << what << ": got " << got << ", expected " << want << " (tol " << tol << ") "
        << (ok ? "ok" : "MISMATCH");
    all_pass = all_pass && ok;
  };

  if (auto chs = load("chs.txt")) {
    if (chs->n != 327 || chs->edges.size() != 7818 || chs->max_edge_size() != 5) {
      log << "\n    chs preprocess divergence: n=" << chs->n << " m=" << chs->edges.size()
          << " k=" << chs->max_edge_size() << " (expected 327/7818/5)";
      all_pass = false;
    }
    Hypergraph h = *chs;
    attach_rewards(h, RewardFamily::Standard);
    fold_weights(h);
    check_value("chs standard flow-exact", solve_convex_exact(h).density_double(), 25.597, 1e-3);
    Hypergraph q = *chs;
    attach_rewards(q, RewardFamily::Quadratic);
    fold_weights(q);
    check_value("chs quadratic flow-exact", solve_convex_exact(q).density_double(), 71.45, 1e-3);
    Hypergraph d = *chs;
    attach_rewards(d, RewardFamily::AtLeastTwo);
    fold_weights(d);
    check_value("chs atleast-two deg-peel", peel_degree(d).best_density, 26.725, 26.725 * 0.02);
  }
  if (auto cps = load("cps.txt")) {
    Hypergraph h = *cps;
    attach_rewards(h, RewardFamily::Standard);
    fold_weights(h);
    check_value("cps standard flow-exact", solve_convex_exact(h).density_double(), 54.475, 1e-3);
  }
  if (auto triv = load("triv.txt")) {
    Hypergraph h = *triv;
    attach_rewards(h, RewardFamily::AtLeastTwo);
    fold_weights(h);
    check_value("triv atleast-two peel-zero", peel(h, PeelStrategy::Zero).best_density, 11.09,
                11.09 * 0.02);
    log << "\n    triv atleast-two optimum (11.53): unverified here, n=" << triv->n
        << " exceeds the brute-force limit; reproduce via the exported-ILP workflow";
  }

  if (!any_present) {
    report_skip(5, "datasets not bundled; place chs.txt/cps.txt/triv.txt under " + dir.string() +
                       " (see README)");
    return;
  }
  report(5, all_pass, "benchmark-table reproduction" + log.str());
}

// --- Criterion 6: ILP semantics ---------------------------------------------

void criterion_ilp_semantics() {
  tsup::Rng rng(616161);
  int trials = 150;
  int failures = 0;
  for (int trial = 0; trial < trials; ++trial) {
    Hypergraph h = tsup::random_instance(rng, tsup::RewardMode::RandomMonotone,
                                         {.max_n = 10, .max_edges = 12});
    BruteForceResult opt = brute_force(h);
    double alpha = trial % 4 == 0 ? 0.0 : opt.density * (trial % 4) / 4.0;

    std::ostringstream out;
    write_ilp(h, alpha, out);
    tsup::ParsedLp lp = tsup::parse_lp(out.str());

    std::map<std::string, double> assignment;
    std::vector<bool> mask(static_cast<std::size_t>(h.n), false);
    for (NodeId v : opt.set) mask[static_cast<std::size_t>(v)] = true;
    for (NodeId v = 0; v < h.n; ++v) {
      assignment["x_" + std::to_string(v)] = mask[static_cast<std::size_t>(v)] ? 1 : 0;
    }
    for (std::size_t ei = 0; ei < h.edges.size(); ++ei) {
      int c = 0;
      for (NodeId v : h.edges[ei].nodes) c += mask[static_cast<std::size_t>(v)] ? 1 : 0;
      for (int i = 1; i <= h.edges[ei].size(); ++i) {
        assignment["y_" + std::to_string(ei) + "_" + std::to_string(i)] = c >= i ? 1 : 0;
      }
    }

    bool ok = true;
    for (const auto& c : lp.constraints) {
      double lhs = 0.0;
      for (const auto& [var, coef] : c.coefficients) lhs += coef * assignment.at(var);
      ok = ok && lhs <= c.rhs + 1e-9;
    }
    double objective = 0.0;
    for (const auto& [var, coef] : lp.objective) objective += coef * assignment.at(var);
    double expected = total_reward(h, opt.set) - alpha * static_cast<double>(opt.set.size());
    ok = ok && std::abs(objective - expected) <= 1e-9 * std::max(1.0, std::abs(expected));
    if (!ok) ++failures;
  }
  report(6, failures == 0,
         std::to_string(trials) +
             " instances: the optimum's indicator assignment is feasible and reproduces "
             "f(S*) - alpha|S*| (" +
             std::to_string(failures) + " failures)");
}

// --- Criterion 7: peeling performance ----------------------------------------

void criterion_performance() {
  tsup::Rng rng(717171);
  int n = 50'000;
  int edges = 100'000;
  int k = 10;  // p = edges * k = 1e6
  Hypergraph h;
  h.n = n;
  h.edges.reserve(static_cast<std::size_t>(edges));
  std::uniform_int_distribution<int> node_dist(0, n - 1);
  for (int e = 0; e < edges; ++e) {
    std::set<NodeId> nodes;
    while (static_cast<int>(nodes.size()) < k) nodes.insert(node_dist(rng));
    Hyperedge edge;
    edge.nodes.assign(nodes.begin(), nodes.end());
    // Quadratic rewards change the peeling score at every intersection size,
    // so each removal really pays the O(k*deg) maintenance.
    edge.reward = builtin_reward(RewardFamily::Quadratic, k);
    h.edges.push_back(std::move(edge));
  }

  auto start = std::chrono::steady_clock::now();
  PeelResult r = peel(h, PeelStrategy::Zero);
  double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::ostringstream detail;
  detail << "peel(zero) on p=1e6, k=10: " << seconds << " s (limit 10), best density "
         << r.best_density;
  report(7, seconds < 10.0 && r.density_trace.size() == static_cast<std::size_t>(n), detail.str());
}

}  // namespace

int main() {
  std::cout << "acceptance suite" << std::endl;
  Corpus corpus = build_corpus();
  criterion_oracle_equivalence(corpus);
  criterion_peeling_guarantee(corpus);
  criterion_projection(corpus);
  criterion_constrained();
  criterion_datasets();
  criterion_ilp_semantics();
  criterion_performance();
  std::cout << (g_failures == 0 ? "all run criteria passed" : "FAILURES: " + std::to_string(g_failures))
            << std::endl;
  return g_failures == 0 ? 0 : 1;
}
