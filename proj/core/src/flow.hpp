#pragma once

// Small Dinic max-flow used by the angle-marking feasibility check and the
// bounded-orientation search. Internal to the core library.

#include <algorithm>
#include <limits>
#include <queue>
#include <vector>

namespace markgame::detail {

class MaxFlow {
 public:
  explicit MaxFlow(int nodes) : graph_(nodes), level_(nodes), iter_(nodes) {}

  // Returns the arc index so callers can read back the flow on it.
  int add_arc(int from, int to, int capacity) {
    const int id = static_cast<int>(arcs_.size());
    arcs_.push_back({to, capacity});
    graph_[from].push_back(id);
    arcs_.push_back({from, 0});
    graph_[to].push_back(id + 1);
    return id;
  }

  int flow_on(int arc) const { return arcs_[arc ^ 1].cap; }

  int run(int source, int sink) {
    int total = 0;
    while (bfs(source, sink)) {
      std::fill(iter_.begin(), iter_.end(), 0);
      while (int pushed = dfs(source, sink, std::numeric_limits<int>::max())) total += pushed;
    }
    return total;
  }

 private:
  struct Arc {
    int to;
    int cap;
  };

  bool bfs(int source, int sink) {
    std::fill(level_.begin(), level_.end(), -1);
    std::queue<int> queue;
    level_[source] = 0;
    queue.push(source);
    while (!queue.empty()) {
      const int u = queue.front();
      queue.pop();
      for (int id : graph_[u]) {
        const Arc& a = arcs_[id];
        if (a.cap > 0 && level_[a.to] < 0) {
          level_[a.to] = level_[u] + 1;
          queue.push(a.to);
        }
      }
    }
    return level_[sink] >= 0;
  }

  int dfs(int u, int sink, int limit) {
    if (u == sink) return limit;
    for (int& i = iter_[u]; i < static_cast<int>(graph_[u].size()); ++i) {
      const int id = graph_[u][i];
      Arc& a = arcs_[id];
      if (a.cap <= 0 || level_[a.to] != level_[u] + 1) continue;
      if (int pushed = dfs(a.to, sink, std::min(limit, a.cap))) {
        a.cap -= pushed;
        arcs_[id ^ 1].cap += pushed;
        return pushed;
      }
    }
    return 0;
  }

  std::vector<Arc> arcs_;
  std::vector<std::vector<int>> graph_;
  std::vector<int> level_;
  std::vector<int> iter_;
};

}  // namespace markgame::detail
