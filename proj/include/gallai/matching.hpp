#pragma once

#include <algorithm>
#include <queue>
#include <vector>

#include "gallai/core.hpp"

namespace gallai {

struct MatchingPartition {
  std::vector<Edge> m12, m13, m23;    // matched edges, labelled by colour pair
  std::vector<int> v12, v13, v23, d;  // endpoint sets and the leftover vertices
};

namespace detail {

// Maximum cardinality matching on a general graph via augmenting paths with
// blossom contraction, O(V^3). Deterministic: free vertices are tried in
// increasing order, adjacency lists are scanned in increasing order, so the
// search explores lexicographically-least augmenting paths first.
class BlossomMatching {
 public:
  explicit BlossomMatching(int n) : n_(n), adj_(static_cast<std::size_t>(n)) {}

  void add_edge(int u, int v) {
    adj_[static_cast<std::size_t>(u)].push_back(v);
    adj_[static_cast<std::size_t>(v)].push_back(u);
  }

  // match[v] = partner of v, or -1.
  std::vector<int> solve() {
    for (auto& a : adj_) std::sort(a.begin(), a.end());
    match_.assign(static_cast<std::size_t>(n_), -1);
    for (int v = 0; v < n_; ++v) {
      if (match_[static_cast<std::size_t>(v)] != -1) continue;
      int u = find_path(v);
      while (u != -1) {  // flip the alternating path back to the root
        int pu = p_[static_cast<std::size_t>(u)];
        int ppu = match_[static_cast<std::size_t>(pu)];
        match_[static_cast<std::size_t>(u)] = pu;
        match_[static_cast<std::size_t>(pu)] = u;
        u = ppu;
      }
    }
    return match_;
  }

 private:
  int lca(int a, int b) {
    std::vector<bool> seen(static_cast<std::size_t>(n_), false);
    for (;;) {
      a = base_[static_cast<std::size_t>(a)];
      seen[static_cast<std::size_t>(a)] = true;
      if (match_[static_cast<std::size_t>(a)] == -1) break;
      a = p_[static_cast<std::size_t>(match_[static_cast<std::size_t>(a)])];
    }
    for (;;) {
      b = base_[static_cast<std::size_t>(b)];
      if (seen[static_cast<std::size_t>(b)]) return b;
      b = p_[static_cast<std::size_t>(match_[static_cast<std::size_t>(b)])];
    }
  }

  void mark_path(int v, int b, int child, std::vector<bool>& blossom) {
    while (base_[static_cast<std::size_t>(v)] != b) {
      blossom[static_cast<std::size_t>(base_[static_cast<std::size_t>(v)])] = true;
      int mv = match_[static_cast<std::size_t>(v)];
      blossom[static_cast<std::size_t>(base_[static_cast<std::size_t>(mv)])] = true;
      p_[static_cast<std::size_t>(v)] = child;
      child = mv;
      v = p_[static_cast<std::size_t>(mv)];
    }
  }

  // BFS for an augmenting path from root; returns its free endpoint or -1.
  int find_path(int root) {
    used_.assign(static_cast<std::size_t>(n_), false);
    p_.assign(static_cast<std::size_t>(n_), -1);
    base_.resize(static_cast<std::size_t>(n_));
    for (int i = 0; i < n_; ++i) base_[static_cast<std::size_t>(i)] = i;
    used_[static_cast<std::size_t>(root)] = true;
    std::queue<int> q;
    q.push(root);
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (int to : adj_[static_cast<std::size_t>(v)]) {
        if (base_[static_cast<std::size_t>(v)] == base_[static_cast<std::size_t>(to)] ||
            match_[static_cast<std::size_t>(v)] == to)
          continue;
        if (to == root ||
            (match_[static_cast<std::size_t>(to)] != -1 &&
             p_[static_cast<std::size_t>(match_[static_cast<std::size_t>(to)])] != -1)) {
          int curbase = lca(v, to);
          std::vector<bool> blossom(static_cast<std::size_t>(n_), false);
          mark_path(v, curbase, to, blossom);
          mark_path(to, curbase, v, blossom);
          for (int i = 0; i < n_; ++i)
            if (blossom[static_cast<std::size_t>(base_[static_cast<std::size_t>(i)])]) {
              base_[static_cast<std::size_t>(i)] = curbase;
              if (!used_[static_cast<std::size_t>(i)]) {
                used_[static_cast<std::size_t>(i)] = true;
                q.push(i);
              }
            }
        } else if (p_[static_cast<std::size_t>(to)] == -1) {
          p_[static_cast<std::size_t>(to)] = v;
          if (match_[static_cast<std::size_t>(to)] == -1) return to;
          int mto = match_[static_cast<std::size_t>(to)];
          used_[static_cast<std::size_t>(mto)] = true;
          q.push(mto);
        }
      }
    }
    return -1;
  }

  int n_;
  std::vector<std::vector<int>> adj_;
  std::vector<int> match_, p_, base_;
  std::vector<bool> used_;
};

}  // namespace detail

/// Maximum matching in the graph of bi-chromatic pairs, with the induced
/// vertex partition. Each matched edge is labelled by a single colour pair:
/// its two classes when it lies in exactly two, and {1,2} by convention for
/// rainbow edges (nested rainbow-edge-free inputs never hit that case).
inline MatchingPartition max_bichromatic_matching(const ColouringTemplate& t) {
  const int n = t.vertex_count();
  detail::BlossomMatching bm(n);
  auto bich = t.bichromatic_edges();
  for (const auto& b : bich) bm.add_edge(b.edge.first, b.edge.second);
  std::vector<int> match = bm.solve();

  MatchingPartition part;
  std::vector<char> in_matched(static_cast<std::size_t>(n), 0);
  for (int u = 0; u < n; ++u) {
    int v = match[static_cast<std::size_t>(u)];
    if (v == -1 || v < u) continue;
    std::array<bool, 3> in{t.has_edge(0, u, v), t.has_edge(1, u, v), t.has_edge(2, u, v)};
    if (in[0] && in[1]) {
      part.m12.emplace_back(u, v);
    } else if (in[0] && in[2]) {
      part.m13.emplace_back(u, v);
    } else {
      part.m23.emplace_back(u, v);
    }
    in_matched[static_cast<std::size_t>(u)] = in_matched[static_cast<std::size_t>(v)] = 1;
  }
  auto endpoints = [](const std::vector<Edge>& m) {
    std::vector<int> v;
    for (const Edge& e : m) {
      v.push_back(e.first);
      v.push_back(e.second);
    }
    std::sort(v.begin(), v.end());
    return v;
  };
  part.v12 = endpoints(part.m12);
  part.v13 = endpoints(part.m13);
  part.v23 = endpoints(part.m23);
  for (int u = 0; u < n; ++u)
    if (!in_matched[static_cast<std::size_t>(u)]) part.d.push_back(u);
  return part;
}

}  // namespace gallai
