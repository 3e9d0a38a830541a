#pragma once

#include <array>
#include <random>
#include <vector>

#include "gallai/core.hpp"

namespace testutil {

using gallai::ColouringTemplate;
using gallai::Edge;

// Naive O(n^3 * 6) rainbow triple scan, independent of the bitset path.
inline std::vector<std::array<int, 3>> naive_rainbow_triangles(const ColouringTemplate& t) {
  static constexpr int kPerm[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                      {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  const int n = t.vertex_count();
  std::vector<std::array<int, 3>> out;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      for (int w = v + 1; w < n; ++w) {
        bool rainbow = false;
        for (const auto& p : kPerm)
          if (t.has_edge(p[0], u, v) && t.has_edge(p[1], u, w) && t.has_edge(p[2], v, w)) {
            rainbow = true;
            break;
          }
        if (rainbow) out.push_back({u, v, w});
      }
  return out;
}

// Arbitrary random template: each (pair, colour) bit on with probability p.
inline ColouringTemplate random_template(int n, double p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(p);
  std::array<std::vector<Edge>, 3> classes;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      for (int c = 0; c < 3; ++c)
        if (coin(rng)) classes[static_cast<std::size_t>(c)].emplace_back(u, v);
  return ColouringTemplate(n, std::move(classes));
}

// Random gallai template built by rejection: random insertion order, keep a
// bit only if it does not complete a rainbow triple.
inline ColouringTemplate random_gallai_template(int n, std::uint64_t seed, double keep = 1.0) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(keep);
  struct Bit {
    int u, v, c;
  };
  std::vector<Bit> bits;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      for (int c = 0; c < 3; ++c) bits.push_back({u, v, c});
  std::shuffle(bits.begin(), bits.end(), rng);
  std::array<std::vector<std::vector<char>>, 3> adj;
  for (auto& a : adj)
    a.assign(static_cast<std::size_t>(n), std::vector<char>(static_cast<std::size_t>(n), 0));
  auto creates_rainbow = [&](int c, int u, int v) {
    int j = (c + 1) % 3, k = (c + 2) % 3;
    for (int w = 0; w < n; ++w) {
      if (w == u || w == v) continue;
      if ((adj[static_cast<std::size_t>(j)][static_cast<std::size_t>(u)][static_cast<std::size_t>(w)] &&
           adj[static_cast<std::size_t>(k)][static_cast<std::size_t>(v)][static_cast<std::size_t>(w)]) ||
          (adj[static_cast<std::size_t>(k)][static_cast<std::size_t>(u)][static_cast<std::size_t>(w)] &&
           adj[static_cast<std::size_t>(j)][static_cast<std::size_t>(v)][static_cast<std::size_t>(w)]))
        return true;
    }
    return false;
  };
  std::array<std::vector<Edge>, 3> classes;
  for (const Bit& b : bits) {
    if (!coin(rng)) continue;
    if (creates_rainbow(b.c, b.u, b.v)) continue;
    adj[static_cast<std::size_t>(b.c)][static_cast<std::size_t>(b.u)][static_cast<std::size_t>(b.v)] = 1;
    adj[static_cast<std::size_t>(b.c)][static_cast<std::size_t>(b.v)][static_cast<std::size_t>(b.u)] = 1;
    classes[static_cast<std::size_t>(b.c)].emplace_back(b.u, b.v);
  }
  return ColouringTemplate(n, std::move(classes));
}

// Exact maximum matching size by branch and bound on the lowest covered vertex.
inline int brute_force_max_matching(int n, const std::vector<Edge>& edges) {
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
  for (const Edge& e : edges) {
    adj[static_cast<std::size_t>(e.first)].push_back(e.second);
    adj[static_cast<std::size_t>(e.second)].push_back(e.first);
  }
  std::vector<char> used(static_cast<std::size_t>(n), 0);
  auto rec = [&](auto&& self, int v) -> int {
    while (v < n && used[static_cast<std::size_t>(v)]) ++v;
    if (v >= n) return 0;
    int best = self(self, v + 1);  // leave v unmatched
    used[static_cast<std::size_t>(v)] = 1;
    for (int w : adj[static_cast<std::size_t>(v)]) {
      if (used[static_cast<std::size_t>(w)]) continue;
      used[static_cast<std::size_t>(w)] = 1;
      best = std::max(best, 1 + self(self, v + 1));
      used[static_cast<std::size_t>(w)] = 0;
    }
    used[static_cast<std::size_t>(v)] = 0;
    return best;
  };
  return rec(rec, 0);
}

}  // namespace testutil
