#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>
#include <sstream>

#include "support/instances.hpp"

using namespace hyperdense;
using Catch::Approx;

TEST_CASE("parsing interns tokens in first-appearance order", "[hypercore]") {
  std::istringstream in("a,b,c\nb,c,d\n");
  Hypergraph h = parse_hypergraph(in);
  CHECK(h.n == 4);
  REQUIRE(h.edges.size() == 2);
  CHECK(h.edges[0].nodes == std::vector<NodeId>{0, 1, 2});
  CHECK(h.edges[1].nodes == std::vector<NodeId>{1, 2, 3});
  CHECK(h.edges[0].weight == 1.0);
  CHECK(h.tokens == std::vector<std::string>{"a", "b", "c", "d"});
}

TEST_CASE("parsing weights, comments, and duplicate tokens", "[hypercore]") {
  std::istringstream in("# comment\n\na,b | 2.5\na,a,b\n");
  ParseStats stats;
  Hypergraph h = parse_hypergraph(in, nullptr, &stats);
  REQUIRE(h.edges.size() == 2);
  CHECK(h.edges[0].weight == 2.5);
  CHECK(h.edges[1].nodes == std::vector<NodeId>{0, 1});
  CHECK(stats.duplicate_node_tokens == 1);
}

TEST_CASE("parse errors carry line numbers", "[hypercore]") {
  std::istringstream empty("# only comments\n");
  CHECK_THROWS_AS(parse_hypergraph(empty), DataError);

  std::istringstream blank_token("a,b\na,,b\n");
  try {
    parse_hypergraph(blank_token);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }

  std::istringstream negative("a,b | -1\n");
  CHECK_THROWS_AS(parse_hypergraph(negative), ParseError);
  std::istringstream junk_weight("a,b | 2x\n");
  CHECK_THROWS_AS(parse_hypergraph(junk_weight), ParseError);
}

TEST_CASE("label files attach color classes", "[hypercore]") {
  std::istringstream edges("a,b\nc,d\n");
  std::istringstream labels("a,red\nb,blue\nc,red\nghost,green\n");
  ParseStats stats;
  Hypergraph h = parse_hypergraph(edges, &labels, &stats);
  CHECK(h.labels == std::vector<int>{0, 1, 0, -1});
  CHECK(h.color_names == std::vector<std::string>{"red", "blue"});
  CHECK(stats.unknown_label_tokens == 1);
}

TEST_CASE("preprocess removes self-loops and dangling nodes", "[hypercore]") {
  Hypergraph h = tsup::make_hypergraph(3, {{0}, {1, 2}});
  Hypergraph p = preprocess(h);
  CHECK(p.n == 2);
  REQUIRE(p.edges.size() == 1);
  CHECK(p.edges[0].nodes == std::vector<NodeId>{0, 1});
}

TEST_CASE("component tie-break keeps the smallest contained node id", "[hypercore]") {
  // Both components have two nodes; edge multiplicity must not sway the pick.
  Hypergraph h = tsup::make_hypergraph(4, {{0, 1}, {2, 3}, {2, 3}, {2, 3}});
  Hypergraph p = preprocess(h);
  CHECK(p.n == 2);
  REQUIRE(p.edges.size() == 1);
  CHECK(p.edges[0].nodes == std::vector<NodeId>{0, 1});
}

TEST_CASE("larger component wins and multi-edges survive", "[hypercore]") {
  Hypergraph h = tsup::make_hypergraph(5, {{0, 1}, {2, 3, 4}, {2, 3}, {2, 3}});
  Hypergraph p = preprocess(h);
  CHECK(p.n == 3);
  CHECK(p.edges.size() == 3);
}

TEST_CASE("preprocess is idempotent", "[hypercore]") {
  tsup::Rng rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    Hypergraph h = tsup::random_instance(rng, tsup::RewardMode::RandomMonotone,
                                         {.max_n = 10, .max_edges = 8});
    Hypergraph once = preprocess(h);
    CHECK(preprocess(once) == once);
  }
  Hypergraph loops_only = tsup::make_hypergraph(2, {{0}, {1}});
  CHECK_THROWS_AS(preprocess(loops_only), DataError);
}

TEST_CASE("density evaluates the weighted reward ratio", "[hypercore]") {
  Hypergraph h = tsup::h0(RewardFamily::AtLeastTwo);
  std::vector<NodeId> s{1, 2};
  CHECK(density(h, s) == 1.0);

  Hypergraph std_h = tsup::h0(RewardFamily::Standard);
  std::vector<NodeId> all{0, 1, 2, 3};
  CHECK(density(std_h, all) == 0.5);
  auto opt = brute_force(std_h);
  CHECK(opt.density == 0.5);  // the full set is also the optimum

  std::vector<NodeId> empty;
  CHECK(density(std_h, empty) == 0.0);

  Hypergraph zero = tsup::make_hypergraph(3, {{0, 1, 2}});
  zero.edges[0].reward = RewardTable{{0, 0, 0, 0}};
  std::vector<NodeId> everything{0, 1, 2};
  CHECK(density(zero, everything) == 0.0);

  std::vector<NodeId> bad{7};
  CHECK_THROWS_AS(density(h, bad), DataError);
  Hypergraph unattached = tsup::make_hypergraph(2, {{0, 1}});
  CHECK_THROWS_AS(density(unattached, s), DataError);
}

TEST_CASE("density is invariant under node relabeling and weight scaling", "[hypercore]") {
  tsup::Rng rng(17);
  for (int trial = 0; trial < 30; ++trial) {
    Hypergraph h = tsup::random_instance(rng, tsup::RewardMode::RandomMonotone,
                                         {.max_n = 9, .max_edges = 10, .weighted = true});
    std::vector<NodeId> perm(static_cast<std::size_t>(h.n));
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    Hypergraph relabeled = h;
    for (auto& e : relabeled.edges) {
      for (NodeId& v : e.nodes) v = perm[static_cast<std::size_t>(v)];
      std::sort(e.nodes.begin(), e.nodes.end());
    }
    Hypergraph scaled = h;
    for (auto& e : scaled.edges) e.weight *= 3.0;

    std::vector<NodeId> s;
    for (NodeId v = 0; v < h.n; ++v) {
      if (rng() % 2 == 0) s.push_back(v);
    }
    std::vector<NodeId> mapped;
    for (NodeId v : s) mapped.push_back(perm[static_cast<std::size_t>(v)]);
    CHECK(density(relabeled, mapped) == Approx(density(h, s)).margin(1e-12));
    CHECK(density(scaled, s) == Approx(3.0 * density(h, s)).margin(1e-12));
  }
}

TEST_CASE("subset_stats counts threshold crossings", "[hypercore]") {
  Hypergraph h = tsup::h0(RewardFamily::AtLeastTwo);
  std::vector<NodeId> s{1, 2};
  SubsetStats st = subset_stats(h, s);
  CHECK(st.size == 2);
  CHECK(st.contained == 0);
  CHECK(st.atleast_two == 2);
  CHECK(st.atleast_half == 2);   // both size-3 edges meet the ceil(3/2)=2 threshold
  CHECK(st.all_but_one == 2);
  CHECK(st.density == 1.0);

  std::vector<NodeId> empty;
  CHECK_THROWS_AS(subset_stats(h, empty), DataError);
}

TEST_CASE("subset_stats invariants on preprocessed instances", "[hypercore]") {
  tsup::Rng rng(23);
  for (int trial = 0; trial < 30; ++trial) {
    Hypergraph raw = tsup::random_instance(rng, tsup::RewardMode::RandomMonotone,
                                           {.max_n = 10, .max_edges = 12});
    Hypergraph h = preprocess(raw);
    attach_rewards(h, RewardFamily::Standard);
    std::vector<NodeId> all(static_cast<std::size_t>(h.n));
    std::iota(all.begin(), all.end(), 0);
    SubsetStats st = subset_stats(h, all);
    CHECK(st.contained == static_cast<long>(h.edges.size()));

    std::vector<NodeId> s;
    for (NodeId v = 0; v < h.n; ++v) {
      if (rng() % 2 == 0) s.push_back(v);
    }
    if (s.empty()) s.push_back(0);
    SubsetStats sub = subset_stats(h, s);
    CHECK(sub.contained <= sub.all_but_one);
    CHECK(sub.contained <= sub.atleast_half);
    CHECK(sub.contained <= sub.atleast_two);
  }
}

TEST_CASE("attach and fold pipelines", "[hypercore]") {
  Hypergraph h = tsup::make_hypergraph(3, {{0, 1}, {0, 1, 2}}, {2.0, 1.0});
  attach_rewards(h, RewardFamily::Standard);
  fold_weights(h);
  CHECK(h.edges[0].weight == 1.0);
  CHECK(h.edges[0].reward.values == std::vector<double>{0, 0, 2});

  CustomRewards custom;
  custom.by_size[2] = RewardTable{{0, 0, 1}};
  Hypergraph missing = tsup::make_hypergraph(3, {{0, 1, 2}});
  CHECK_THROWS_AS(attach_rewards(missing, custom), DataError);
}
