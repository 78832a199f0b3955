#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <optional>
#include <queue>
#include <vector>

namespace interleave {

/** @brief Bipartite graph with left vertices 0..L-1 and right vertices 0..R-1. */
class BipartiteGraph {
 public:
  BipartiteGraph(std::size_t left, std::size_t right) : adj_(left), right_(right) {}

  void add_edge(std::size_t u, std::size_t v) { adj_.at(u).push_back(v); }

  std::size_t left() const { return adj_.size(); }
  std::size_t right() const { return right_; }
  const std::vector<std::size_t>& neighbors(std::size_t u) const { return adj_[u]; }

  /** @brief Sorts and dedups adjacency so that matching output is reproducible. */
  void normalize() {
    for (auto& a : adj_) {
      std::sort(a.begin(), a.end());
      a.erase(std::unique(a.begin(), a.end()), a.end());
    }
  }

 private:
  std::vector<std::vector<std::size_t>> adj_;
  std::size_t right_;
};

inline constexpr std::size_t kUnmatched = std::numeric_limits<std::size_t>::max();

/** @brief Maximum matching; result[u] is the right partner of u or kUnmatched. */
inline std::vector<std::size_t> hopcroft_karp(const BipartiteGraph& g) {
  const std::size_t L = g.left(), R = g.right(), inf = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> ml(L, kUnmatched), mr(R, kUnmatched), dist(L);

  auto bfs = [&] {
    std::queue<std::size_t> q;
    bool found = false;
    for (std::size_t u = 0; u < L; ++u) {
      dist[u] = ml[u] == kUnmatched ? 0 : inf;
      if (ml[u] == kUnmatched) q.push(u);
    }
    while (!q.empty()) {
      std::size_t u = q.front();
      q.pop();
      for (std::size_t v : g.neighbors(u)) {
        std::size_t w = mr[v];
        if (w == kUnmatched) {
          found = true;
        } else if (dist[w] == inf) {
          dist[w] = dist[u] + 1;
          q.push(w);
        }
      }
    }
    return found;
  };

  // iterative DFS along the layered graph
  std::vector<std::size_t> it(L);
  auto dfs = [&](std::size_t root) {
    std::vector<std::size_t> stack{root};
    while (!stack.empty()) {
      std::size_t u = stack.back();
      const auto& nb = g.neighbors(u);
      if (it[u] == nb.size()) {
        dist[u] = inf;
        stack.pop_back();
        continue;
      }
      std::size_t v = nb[it[u]];
      std::size_t w = mr[v];
      if (w == kUnmatched) {
        // augment along the stack
        for (std::size_t x : stack) {
          std::size_t y = g.neighbors(x)[it[x]];
          ml[x] = y;
          mr[y] = x;
        }
        return true;
      }
      if (dist[w] == dist[u] + 1) {
        stack.push_back(w);
      } else {
        ++it[u];
      }
    }
    return false;
  };

  while (bfs()) {
    std::fill(it.begin(), it.end(), 0);
    for (std::size_t u = 0; u < L; ++u)
      if (ml[u] == kUnmatched) dfs(u);
  }
  return ml;
}

/** @brief Left neighborhood size of a vertex set. */
inline std::size_t neighborhood_size(const BipartiteGraph& g, const std::vector<std::size_t>& S) {
  std::vector<char> seen(g.right(), 0);
  std::size_t n = 0;
  for (std::size_t u : S)
    for (std::size_t v : g.neighbors(u))
      if (!seen[v]) {
        seen[v] = 1;
        ++n;
      }
  return n;
}

/**
 * @brief Left set S with |N(S)| < |S| when the matching misses some left
 * vertex: the alternating tree of the first free vertex, then pruned one
 * vertex at a time while the deficiency survives. nullopt when every left
 * vertex is matched.
 */
inline std::optional<std::vector<std::size_t>> hall_violator(const BipartiteGraph& g,
                                                             const std::vector<std::size_t>& ml) {
  std::vector<std::size_t> mr(g.right(), kUnmatched);
  for (std::size_t u = 0; u < ml.size(); ++u)
    if (ml[u] != kUnmatched) mr[ml[u]] = u;
  auto free = std::find(ml.begin(), ml.end(), kUnmatched);
  if (free == ml.end()) return std::nullopt;

  std::vector<char> in_s(g.left(), 0), seen(g.right(), 0);
  std::queue<std::size_t> q;
  std::size_t root = static_cast<std::size_t>(free - ml.begin());
  in_s[root] = 1;
  q.push(root);
  while (!q.empty()) {
    std::size_t u = q.front();
    q.pop();
    for (std::size_t v : g.neighbors(u)) {
      if (seen[v]) continue;
      seen[v] = 1;
      std::size_t w = mr[v];  // matched, else the matching was not maximum
      if (w != kUnmatched && !in_s[w]) {
        in_s[w] = 1;
        q.push(w);
      }
    }
  }
  std::vector<std::size_t> S;
  for (std::size_t u = 0; u < g.left(); ++u)
    if (in_s[u]) S.push_back(u);

  for (bool shrunk = true; shrunk;) {
    shrunk = false;
    for (std::size_t k = 0; k < S.size() && S.size() > 1; ++k) {
      std::vector<std::size_t> T = S;
      T.erase(T.begin() + static_cast<std::ptrdiff_t>(k));
      if (neighborhood_size(g, T) < T.size()) {
        S = std::move(T);
        shrunk = true;
        break;
      }
    }
  }
  return S;
}

}  // namespace interleave
