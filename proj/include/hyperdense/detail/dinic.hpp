#pragma once

#include <cstddef>
#include <vector>

namespace hyperdense::detail {

using Flow = __int128;

// Dinic max-flow on integer capacities. The networks built here are shallow
// (source -> hinge -> node -> sink), so the blocking-flow recursion stays
// within a fixed depth.
class Dinic {
 public:
  explicit Dinic(int n) : head_(static_cast<std::size_t>(n), -1) {}

  int add_arc(int from, int to, Flow cap) {
    int id = static_cast<int>(arcs_.size());
    arcs_.push_back({to, head_[static_cast<std::size_t>(from)], cap});
    head_[static_cast<std::size_t>(from)] = id;
    arcs_.push_back({from, head_[static_cast<std::size_t>(to)], 0});
    head_[static_cast<std::size_t>(to)] = id + 1;
    return id;
  }

  Flow max_flow(int s, int t) {
    Flow total = 0;
    while (bfs(s, t)) {
      iter_ = head_;
      while (Flow pushed = dfs(s, t, kInfinite)) total += pushed;
    }
    return total;
  }

  // Maximal source side of a minimum cut: the complement of the vertices that
  // can still reach the sink in the residual graph. Call after max_flow.
  std::vector<bool> max_source_side(int t) const {
    std::vector<bool> reaches_sink(head_.size(), false);
    std::vector<int> stack{t};
    reaches_sink[static_cast<std::size_t>(t)] = true;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int a = head_[static_cast<std::size_t>(v)]; a != -1; a = arcs_[static_cast<std::size_t>(a)].next) {
        // The paired arc (u -> v) has positive residual iff arcs_[a^1].cap > 0.
        int u = arcs_[static_cast<std::size_t>(a)].to;
        if (!reaches_sink[static_cast<std::size_t>(u)] && arcs_[static_cast<std::size_t>(a ^ 1)].cap > 0) {
          reaches_sink[static_cast<std::size_t>(u)] = true;
          stack.push_back(u);
        }
      }
    }
    std::vector<bool> source_side(head_.size());
    for (std::size_t v = 0; v < head_.size(); ++v) source_side[v] = !reaches_sink[v];
    return source_side;
  }

 private:
  struct Arc {
    int to;
    int next;
    Flow cap;
  };

  static constexpr Flow kInfinite = Flow(1) << 126;

  bool bfs(int s, int t) {
    level_.assign(head_.size(), -1);
    level_[static_cast<std::size_t>(s)] = 0;
    std::vector<int> queue{s};
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      int v = queue[qi];
      for (int a = head_[static_cast<std::size_t>(v)]; a != -1; a = arcs_[static_cast<std::size_t>(a)].next) {
        const Arc& arc = arcs_[static_cast<std::size_t>(a)];
        if (arc.cap > 0 && level_[static_cast<std::size_t>(arc.to)] == -1) {
          level_[static_cast<std::size_t>(arc.to)] = level_[static_cast<std::size_t>(v)] + 1;
          queue.push_back(arc.to);
        }
      }
    }
    return level_[static_cast<std::size_t>(t)] != -1;
  }

  Flow dfs(int v, int t, Flow limit) {
    if (v == t || limit == 0) return limit;
    for (int& a = iter_[static_cast<std::size_t>(v)]; a != -1; a = arcs_[static_cast<std::size_t>(a)].next) {
      Arc& arc = arcs_[static_cast<std::size_t>(a)];
      if (arc.cap > 0 && level_[static_cast<std::size_t>(arc.to)] == level_[static_cast<std::size_t>(v)] + 1) {
        Flow pushed = dfs(arc.to, t, limit < arc.cap ? limit : arc.cap);
        if (pushed > 0) {
          arc.cap -= pushed;
          arcs_[static_cast<std::size_t>(a ^ 1)].cap += pushed;
          return pushed;
        }
      }
    }
    level_[static_cast<std::size_t>(v)] = -1;
    return 0;
  }

  std::vector<int> head_;
  std::vector<int> iter_;
  std::vector<int> level_;
  std::vector<Arc> arcs_;
};

}  // namespace hyperdense::detail
