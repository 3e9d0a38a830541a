#pragma once

#include <string>
#include <vector>

#include "gallai/core.hpp"
#include "gallai/matching.hpp"
#include "gallai/search.hpp"

namespace gallai {

struct TraceRecord {
  int step = 0;        // 1, 2 or 3
  std::string action;  // drop, add, move_drop, move_add, delete
  Edge edge{};
  int colour_from = 0;  // 1-based colour removed; 0 = none
  int colour_to = 0;    // 1-based colour added; 0 = none
  double g_after = 0.0;
};

struct NormalizationTrace {
  std::vector<TraceRecord> records;
  double g_before = 0.0, g_after = 0.0;
  bool early_exit = false;
  MatchingPartition partition;  // computed on the input template
};

/// The cleaned-template shape: for j in {2,3} every colour-j edge lies inside
/// V1j or between V1j and D, and at most half of the (V1j, D) pairs carry
/// colour j. Defined for partitions with no 23-matching.
inline bool satisfies_structure_property(const ColouringTemplate& t, const MatchingPartition& p) {
  if (!p.m23.empty()) return false;
  const int n = t.vertex_count();
  std::vector<int> side(static_cast<std::size_t>(n), 2);  // 0 = V12, 1 = V13, 2 = D
  for (int v : p.v12) side[static_cast<std::size_t>(v)] = 0;
  for (int v : p.v13) side[static_cast<std::size_t>(v)] = 1;
  for (int cls = 1; cls <= 2; ++cls) {  // colour 2 lives with V12, colour 3 with V13
    const int home = cls - 1;
    long long cross_to_d = 0;
    for (const Edge& e : t.class_edges(cls)) {
      int su = side[static_cast<std::size_t>(e.first)];
      int sv = side[static_cast<std::size_t>(e.second)];
      if (su == home && sv == home) continue;
      if ((su == home && sv == 2) || (su == 2 && sv == home)) {
        ++cross_to_d;
        continue;
      }
      return false;
    }
    long long v1j = home == 0 ? static_cast<long long>(p.v12.size())
                              : static_cast<long long>(p.v13.size());
    if (2 * cross_to_d > v1j * static_cast<long long>(p.d.size())) return false;
  }
  return true;
}

/// g(G'') <= 3N for a structure-satisfying template; errors otherwise.
inline bool hard_case_bound_check(const ColouringTemplate& t, const MatchingPartition& p) {
  if (!satisfies_structure_property(t, p))
    throw std::invalid_argument("hard_case_bound_check: structure property violated");
  return t.g_value() <= 3.0 * t.vertex_count() + 1e-9;
}

namespace detail {

class HardCaseNormalizer {
 public:
  HardCaseNormalizer(const ColouringTemplate& input, double c_param)
      : input_(input), c_param_(c_param), n_(input.vertex_count()), cur_(input) {}

  std::pair<ColouringTemplate, NormalizationTrace> run() {
    check_preconditions();
    trace_.partition = max_bichromatic_matching(input_);
    if (!trace_.partition.m23.empty())
      throw std::logic_error("normalize_hard_case: unexpected 23-matching edge");
    trace_.g_before = cur_.g();
    threshold_ = static_cast<double>(binom2(n_)) / 4.0 + n_;
    build_auxiliary_graph();

    if (!exit_if_small()) {
      step1();
      step2();
      step3();
    }

    trace_.early_exit = exited_;
    trace_.g_after = cur_.g();
    if (trace_.g_after < trace_.g_before - 2.0 * n_ - 1e-6)
      throw std::logic_error("normalize_hard_case: g dropped by more than 2N");
    ColouringTemplate out = cur_.freeze();
    if (exited_) {
      if (trace_.g_after > 2.0 * n_ + 1e-6)
        throw std::logic_error("normalize_hard_case: early exit with g above 2N");
    } else if (!satisfies_structure_property(out, trace_.partition)) {
      throw std::logic_error("normalize_hard_case: structure property not reached");
    }
    return {std::move(out), std::move(trace_)};
  }

 private:
  void check_preconditions() {
    if (!input_.is_gallai())
      throw std::invalid_argument("normalize_hard_case: template contains a rainbow triangle");
    if (!input_.rainbow_edges().empty())
      throw std::invalid_argument("normalize_hard_case: rainbow edges present");
    for (int c = 1; c <= 2; ++c)
      for (const Edge& e : input_.class_edges(c))
        if (!input_.has_edge(0, e.first, e.second))
          throw std::invalid_argument(
              "normalize_hard_case: classes 2 and 3 are not contained in class 1");
    // G2 and G3 are then disjoint: a shared pair would be a rainbow edge
  }

  bool exit_if_small() {
    if (exited_) return true;
    if (std::max(cur_.class_size(1), cur_.class_size(2)) < threshold_) exited_ = true;
    return exited_;
  }

  void record(int step, const char* action, Edge e, int from, int to) {
    trace_.records.push_back({step, action, e, from, to, cur_.g()});
  }

  static Edge norm(int u, int v) { return u < v ? Edge{u, v} : Edge{v, u}; }

  std::array<Edge, 4> cross_pairs(Edge x, Edge y) const {
    std::array<Edge, 4> p{norm(x.first, y.first), norm(x.first, y.second),
                          norm(x.second, y.first), norm(x.second, y.second)};
    std::sort(p.begin(), p.end());
    return p;
  }

  // A is fixed before any modification: X, X' in M1j are adjacent when they
  // span at most 3 colour-j pairs; X in M12, Y in M13 are adjacent when the
  // four pairs between them carry 5 class memberships in total.
  void build_auxiliary_graph() {
    const auto& m12 = trace_.partition.m12;
    const auto& m13 = trace_.partition.m13;
    auto count_in = [&](int cls, Edge a, Edge b) {
      int cnt = 0;
      for (const Edge& e : cross_pairs(a, b))
        if (input_.has_edge(cls, e.first, e.second)) ++cnt;
      return cnt;
    };
    for (std::size_t i = 0; i < m12.size(); ++i)
      for (std::size_t j = i + 1; j < m12.size(); ++j)
        if (count_in(1, m12[i], m12[j]) <= 3) a12_.emplace_back(i, j);
    for (std::size_t i = 0; i < m13.size(); ++i)
      for (std::size_t j = i + 1; j < m13.size(); ++j)
        if (count_in(2, m13[i], m13[j]) <= 3) a13_.emplace_back(i, j);
    across_.assign(m12.size(), std::vector<char>(m13.size(), 0));
    ecross_ = 0;
    for (std::size_t i = 0; i < m12.size(); ++i)
      for (std::size_t j = 0; j < m13.size(); ++j) {
        int total = 0;
        for (int cls = 0; cls < 3; ++cls) total += count_in(cls, m12[i], m13[j]);
        if (total == 5) {
          across_[i][j] = 1;
          ++ecross_;
        }
      }
    e12_ = static_cast<long long>(a12_.size());
    e13_ = static_cast<long long>(a13_.size());
    // imported bound |A[M12,M13]| <= |A[M12]| + |A[M13]| + (|M12|+|M13|)/2;
    // guaranteed on the intended inputs, surfaced as a diagnostic otherwise
    if (2 * ecross_ > 2 * (e12_ + e13_) + static_cast<long long>(m12.size() + m13.size()))
      throw std::logic_error("normalize_hard_case: auxiliary graph bound violated");
  }

  // Step 1: edges between D and the matched pairs.
  void step1() {
    const auto& part = trace_.partition;
    // 1a/1b: a bi-chromatic edge from v in D to X in M1j in the off colour
    // forces the other (v, X) pair empty; recolour both pairs to colour 1.
    for (int pass = 0; pass < 2 && !exited_; ++pass) {
      const auto& m = pass == 0 ? part.m12 : part.m13;
      const int off = pass == 0 ? 2 : 1;  // class index of the off colour
      for (const Edge& x : m) {
        if (exited_) return;
        for (int v : part.d) {
          for (int s = 0; s < 2; ++s) {
            int a = s == 0 ? x.first : x.second;
            int b = s == 0 ? x.second : x.first;
            if (!cur_.has(off, v, a)) continue;
            cur_.remove(off, v, a);
            record(1, "drop", norm(v, a), off + 1, 0);
            if (!cur_.has(0, v, b)) {
              cur_.add(0, v, b);
              record(1, "add", norm(v, b), 0, 1);
            }
            if (exit_if_small()) return;
          }
        }
      }
    }
    // 1c: at most one v in D sends home-coloured edges to both endpoints of a
    // matched pair (matching maximality); delete the smaller of the two.
    for (int pass = 0; pass < 2 && !exited_; ++pass) {
      const auto& m = pass == 0 ? part.m12 : part.m13;
      const int home = pass == 0 ? 1 : 2;
      for (const Edge& x : m) {
        if (exited_) return;
        for (int v : part.d) {
          if (cur_.has(home, v, x.first) && cur_.has(home, v, x.second)) {
            Edge e = std::min(norm(v, x.first), norm(v, x.second));
            cur_.remove(home, e.first, e.second);
            record(1, "delete", e, home + 1, 0);
            if (exit_if_small()) return;
          }
        }
      }
    }
  }

  // Step 2: off-coloured edges between two matched pairs of the same side.
  void step2() {
    const auto& part = trace_.partition;
    for (int pass = 0; pass < 2 && !exited_; ++pass) {
      const auto& m = pass == 0 ? part.m12 : part.m13;
      const int off = pass == 0 ? 2 : 1;
      for (std::size_t i = 0; i < m.size() && !exited_; ++i) {
        for (std::size_t j = i + 1; j < m.size(); ++j) {
          auto pairs = cross_pairs(m[i], m[j]);
          for (;;) {
            const Edge* bad = nullptr;
            for (const Edge& e : pairs)
              if (cur_.has(off, e.first, e.second)) {
                bad = &e;
                break;
              }
            if (!bad) break;
            const Edge* slot = nullptr;
            for (const Edge& e : pairs)
              if (!cur_.has(0, e.first, e.second)) {
                slot = &e;
                break;
              }
            if (!slot) throw std::logic_error("normalize_hard_case: no free slot for a rewrite");
            cur_.remove(off, bad->first, bad->second);
            record(2, "drop", *bad, off + 1, 0);
            cur_.add(0, slot->first, slot->second);
            record(2, "add", *slot, 0, 1);
            if (exit_if_small()) return;
          }
        }
      }
    }
  }

  // Lexicographically least pair between V12 and V13 in class cls; false if none.
  bool find_cross_class_edge(int cls, Edge& out) const {
    bool found = false;
    for (int u : trace_.partition.v12)
      for (int w : trace_.partition.v13) {
        if (!cur_.has(cls, u, w)) continue;
        Edge e = norm(u, w);
        if (!found || e < out) {
          out = e;
          found = true;
        }
      }
    return found;
  }

  bool find_cross_missing_g1(Edge& out) const {
    bool found = false;
    for (int u : trace_.partition.v12)
      for (int w : trace_.partition.v13) {
        if (cur_.has(0, u, w)) continue;
        Edge e = norm(u, w);
        if (!found || e < out) {
          out = e;
          found = true;
        }
      }
    return found;
  }

  // Step 3: edges across V12 x V13.
  void step3() {
    const auto& part = trace_.partition;
    const auto& m12 = part.m12;
    const auto& m13 = part.m13;
    // 3a: non-adjacent pairs of A span at most 4 memberships, so every 2/3
    // edge between them can be turned into a fresh colour-1 edge.
    for (std::size_t i = 0; i < m12.size() && !exited_; ++i) {
      for (std::size_t j = 0; j < m13.size(); ++j) {
        if (across_[i][j]) continue;
        auto pairs = cross_pairs(m12[i], m13[j]);
        for (;;) {
          const Edge* bad = nullptr;
          int bad_cls = 0;
          for (const Edge& e : pairs) {
            for (int cls = 1; cls <= 2; ++cls)
              if (cur_.has(cls, e.first, e.second)) {
                bad = &e;
                bad_cls = cls;
                break;
              }
            if (bad) break;
          }
          if (!bad) break;
          const Edge* slot = nullptr;
          for (const Edge& e : pairs)
            if (!cur_.has(0, e.first, e.second)) {
              slot = &e;
              break;
            }
          if (!slot) throw std::logic_error("normalize_hard_case: no free slot for a rewrite");
          cur_.remove(bad_cls, bad->first, bad->second);
          record(3, "drop", *bad, bad_cls + 1, 0);
          cur_.add(0, slot->first, slot->second);
          record(3, "add", *slot, 0, 1);
          if (exit_if_small()) return;
        }
      }
    }
    // 3b: move up to min(e1j, e) cross edges of colour j into free slots at
    // A-edges inside M1j; the class sizes are unchanged.
    move_phase(1, m12, a12_);
    move_phase(2, m13, a13_);
    // replacement subprocess: prefer the current second largest colour class
    while (!exited_) {
      int j = cur_.class_size(1) >= cur_.class_size(2) ? 1 : 2;
      bool did = false;
      for (int cls : {j, 3 - j}) {
        Edge bad, slot;
        if (find_cross_class_edge(cls, bad) && find_cross_missing_g1(slot)) {
          cur_.remove(cls, bad.first, bad.second);
          record(3, "drop", bad, cls + 1, 0);
          cur_.add(0, slot.first, slot.second);
          record(3, "add", slot, 0, 1);
          if (exit_if_small()) return;
          did = true;
          break;
        }
      }
      if (!did) break;
    }
    // whatever is left gets deleted outright
    std::vector<std::pair<Edge, int>> rest;
    for (int u : part.v12)
      for (int w : part.v13)
        for (int cls = 1; cls <= 2; ++cls)
          if (cur_.has(cls, u, w)) rest.emplace_back(norm(u, w), cls);
    std::sort(rest.begin(), rest.end());
    if (static_cast<long long>(rest.size()) > static_cast<long long>(n_))
      throw std::logic_error("normalize_hard_case: too many leftover cross edges");
    for (const auto& [e, cls] : rest) {
      if (exited_) return;
      cur_.remove(cls, e.first, e.second);
      record(3, "delete", e, cls + 1, 0);
      if (exit_if_small()) return;
    }
  }

  void move_phase(int cls, const std::vector<Edge>& m,
                  const std::vector<std::pair<std::size_t, std::size_t>>& slots) {
    if (exited_) return;
    long long quota = std::min(cls == 1 ? e12_ : e13_, ecross_);
    std::vector<char> used(slots.size(), 0);
    for (long long moved = 0; moved < quota; ++moved) {
      Edge bad;
      if (!find_cross_class_edge(cls, bad)) break;
      int slot_idx = -1;
      Edge target;
      for (std::size_t s = 0; s < slots.size() && slot_idx < 0; ++s) {
        if (used[s]) continue;
        for (const Edge& e : cross_pairs(m[slots[s].first], m[slots[s].second]))
          if (!cur_.has(cls, e.first, e.second)) {
            slot_idx = static_cast<int>(s);
            target = e;
            break;
          }
      }
      if (slot_idx < 0) break;
      cur_.remove(cls, bad.first, bad.second);
      record(3, "move_drop", bad, cls + 1, 0);
      cur_.add(cls, target.first, target.second);
      record(3, "move_add", target, 0, cls + 1);
      if (!cur_.has(0, target.first, target.second)) {
        cur_.add(0, target.first, target.second);
        record(3, "move_add", target, 0, 1);
      }
      used[static_cast<std::size_t>(slot_idx)] = 1;
    }
  }

  const ColouringTemplate& input_;
  double c_param_;
  int n_;
  MutableTemplate cur_;
  NormalizationTrace trace_;
  double threshold_ = 0.0;
  bool exited_ = false;
  std::vector<std::pair<std::size_t, std::size_t>> a12_, a13_;
  std::vector<std::vector<char>> across_;
  long long e12_ = 0, e13_ = 0, ecross_ = 0;
};

}  // namespace detail

/// The three-step cleanup of a nested, rainbow-edge-free Gallai template with
/// respect to its maximum bi-chromatic matching. Stops early (early_exit set,
/// no error) whenever the second largest class drops below C(N,2)/4 + N,
/// including immediately at entry. On a full run the output satisfies the
/// structure property and g(G'') >= g(G) - 2N.
inline std::pair<ColouringTemplate, NormalizationTrace> normalize_hard_case(
    const ColouringTemplate& input, double c_param = 6.0) {
  return detail::HardCaseNormalizer(input, c_param).run();
}

}  // namespace gallai
