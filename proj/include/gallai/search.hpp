#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>

#include "gallai/constructions.hpp"
#include "gallai/core.hpp"
#include "gallai/io.hpp"
#include "gallai/matching.hpp"

namespace gallai {

namespace detail {

// Working copy of a template for algorithms that edit edges in place.
class MutableTemplate {
 public:
  explicit MutableTemplate(int n) : n_(n), words_((n + 63) / 64) {
    for (auto& b : bits_) b.assign(static_cast<std::size_t>(n) * words_, 0);
    counts_ = {0, 0, 0};
  }

  explicit MutableTemplate(const ColouringTemplate& t) : MutableTemplate(t.vertex_count()) {
    for (int c = 0; c < 3; ++c)
      for (const Edge& e : t.class_edges(c)) add(c, e.first, e.second);
  }

  int n() const { return n_; }
  long long class_size(int c) const { return counts_[static_cast<std::size_t>(c)]; }
  std::array<long long, 3> class_sizes() const { return counts_; }

  bool has(int c, int u, int v) const {
    return (row(c, u)[static_cast<std::size_t>(v) >> 6] >> (v & 63)) & 1u;
  }

  void add(int c, int u, int v) {
    set_bit(c, u, v);
    set_bit(c, v, u);
    ++counts_[static_cast<std::size_t>(c)];
  }

  void remove(int c, int u, int v) {
    clear_bit(c, u, v);
    clear_bit(c, v, u);
    --counts_[static_cast<std::size_t>(c)];
  }

  // Would adding (u,v) to class c complete a rainbow triangle?
  bool addition_creates_rainbow(int c, int u, int v) const {
    int j = (c + 1) % 3, k = (c + 2) % 3;
    return intersects(row(j, u), row(k, v)) || intersects(row(k, u), row(j, v));
  }

  double g() const {
    int big = 0;
    for (int c = 1; c < 3; ++c)
      if (counts_[static_cast<std::size_t>(c)] > counts_[static_cast<std::size_t>(big)]) big = c;
    long long m = 0;
    for (int c = 0; c < 3; ++c)
      if (c != big) m = std::max(m, counts_[static_cast<std::size_t>(c)]);
    double cn2 = static_cast<double>(binom2(n_));
    double total = static_cast<double>(counts_[0] + counts_[1] + counts_[2]);
    return total - 2.0 * cn2 - 2.0 * static_cast<double>(m) +
           2.0 * std::sqrt(cn2 * static_cast<double>(m));
  }

  ColouringTemplate freeze() const {
    std::array<std::vector<Edge>, 3> classes;
    for (int c = 0; c < 3; ++c) {
      classes[static_cast<std::size_t>(c)].reserve(
          static_cast<std::size_t>(counts_[static_cast<std::size_t>(c)]));
      for (int u = 0; u < n_; ++u) {
        const std::uint64_t* r = row(c, u);
        for (int w = (u + 1) >> 6; w < words_; ++w) {
          std::uint64_t m = r[w];
          if (w == ((u + 1) >> 6)) m &= ~std::uint64_t{0} << ((u + 1) & 63);
          while (m) {
            int v = w * 64 + std::countr_zero(m);
            m &= m - 1;
            classes[static_cast<std::size_t>(c)].emplace_back(u, v);
          }
        }
      }
    }
    return ColouringTemplate::from_sorted_edges(n_, std::move(classes));
  }

  const std::uint64_t* row(int c, int v) const {
    return bits_[static_cast<std::size_t>(c)].data() +
           static_cast<std::size_t>(v) * static_cast<std::size_t>(words_);
  }

 private:
  bool intersects(const std::uint64_t* a, const std::uint64_t* b) const {
    for (int w = 0; w < words_; ++w)
      if (a[w] & b[w]) return true;
    return false;
  }

  void set_bit(int c, int u, int v) {
    bits_[static_cast<std::size_t>(c)][static_cast<std::size_t>(u) * words_ +
                                       (static_cast<std::size_t>(v) >> 6)] |= std::uint64_t{1}
                                                                              << (v & 63);
  }
  void clear_bit(int c, int u, int v) {
    bits_[static_cast<std::size_t>(c)][static_cast<std::size_t>(u) * words_ +
                                       (static_cast<std::size_t>(v) >> 6)] &=
        ~(std::uint64_t{1} << (v & 63));
  }

  int n_;
  int words_;
  std::array<std::vector<std::uint64_t>, 3> bits_;
  std::array<long long, 3> counts_{};
};

}  // namespace detail

enum class Objective { Sum, MinClass, GeometricMean };

inline std::string to_string(Objective o) {
  switch (o) {
    case Objective::Sum: return "sum";
    case Objective::MinClass: return "min";
    default: return "geomean";
  }
}

inline double evaluate_objective(Objective o, const std::array<long long, 3>& sizes) {
  switch (o) {
    case Objective::Sum: return static_cast<double>(sizes[0] + sizes[1] + sizes[2]);
    case Objective::MinClass:
      return static_cast<double>(std::min({sizes[0], sizes[1], sizes[2]}));
    default:
      return std::cbrt(static_cast<double>(sizes[0]) * static_cast<double>(sizes[1]) *
                       static_cast<double>(sizes[2]));
  }
}

struct SearchResult {
  ColouringTemplate best;
  std::string objective;
  double value = 0.0;
  bool exhaustive = false;
  std::uint64_t templates_visited = 0;  // complete gallai templates evaluated
  std::uint64_t accepted_steps = 0;     // local search only
  std::uint64_t seed = 0;
};

namespace detail {

// Pair ordering for the enumeration: walk triples lexicographically and append
// each triple's pairs as they first appear, so a triple's three slots sit as
// early and as close together as possible (earliest rainbow pruning).
inline std::vector<Edge> triangles_first_pair_order(int n) {
  std::vector<Edge> order;
  std::vector<std::vector<char>> seen(static_cast<std::size_t>(n),
                                      std::vector<char>(static_cast<std::size_t>(n), 0));
  auto push = [&](int u, int v) {
    if (!seen[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)]) {
      seen[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] = 1;
      order.emplace_back(u, v);
    }
  };
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      for (int w = v + 1; w < n; ++w) {
        push(u, v);
        push(u, w);
        push(v, w);
      }
  if (n == 2) push(0, 1);
  return order;
}

struct EnumerationState {
  int n = 0;
  std::vector<Edge> order;
  // for slot t: triples (t1, t2) with t1, t2 < t completing a triangle at t
  std::vector<std::vector<std::pair<int, int>>> completions;
  std::vector<int> mask;  // colour subset chosen per slot
  std::array<long long, 3> sizes{};
  Objective objective = Objective::Sum;
  bool prune = true;
  std::uint64_t leaves = 0;
  double best_value = -1.0;
  std::optional<ColouringTemplate> best;
  std::string best_json;

  bool completes_rainbow(int t) const {
    int m0 = mask[static_cast<std::size_t>(t)];
    for (const auto& [t1, t2] : completions[static_cast<std::size_t>(t)]) {
      int m1 = mask[static_cast<std::size_t>(t1)], m2 = mask[static_cast<std::size_t>(t2)];
      for (int c0 = 0; c0 < 3; ++c0) {
        if (!((m0 >> c0) & 1)) continue;
        for (int c1 = 0; c1 < 3; ++c1) {
          if (c1 == c0 || !((m1 >> c1) & 1)) continue;
          int c2 = 3 - c0 - c1;
          if ((m2 >> c2) & 1) return true;
        }
      }
    }
    return false;
  }

  ColouringTemplate materialize() const {
    std::array<std::vector<Edge>, 3> classes;
    for (std::size_t t = 0; t < order.size(); ++t)
      for (int c = 0; c < 3; ++c)
        if ((mask[t] >> c) & 1) classes[static_cast<std::size_t>(c)].push_back(order[t]);
    for (auto& cls : classes) std::sort(cls.begin(), cls.end());
    return ColouringTemplate::from_sorted_edges(n, std::move(classes));
  }

  void leaf() {
    ++leaves;
    double v = evaluate_objective(objective, sizes);
    if (v < best_value) return;
    ColouringTemplate t = materialize();
    std::string j = to_json(t);
    // ties broken by canonical serialization, smallest wins
    if (v > best_value || j < best_json) {
      best_value = v;
      best = std::move(t);
      best_json = std::move(j);
    }
  }

  void dfs(std::size_t t) {
    if (t == order.size()) {
      leaf();
      return;
    }
    for (int m = 0; m < 8; ++m) {
      mask[t] = m;
      for (int c = 0; c < 3; ++c)
        if ((m >> c) & 1) ++sizes[static_cast<std::size_t>(c)];
      if (!prune || !completes_rainbow(static_cast<int>(t))) dfs(t + 1);
      for (int c = 0; c < 3; ++c)
        if ((m >> c) & 1) --sizes[static_cast<std::size_t>(c)];
    }
    mask[t] = 0;
  }
};

}  // namespace detail

/// Exhaustive optimum over all Gallai templates on n vertices, by depth-first
/// assignment of the 3 C(n,2) edge-membership bits with rainbow pruning.
/// n <= 4 by default; n = 5 takes a while and must be opted into.
inline SearchResult enumerate_gallai(int n, Objective objective, bool allow_n5 = false) {
  if (n < 0 || n > (allow_n5 ? 5 : 4))
    throw std::invalid_argument("enumerate_gallai: n above the exhaustive limit");
  detail::EnumerationState st;
  st.n = n;
  st.order = detail::triangles_first_pair_order(n);
  st.completions.resize(st.order.size());
  std::map<Edge, int> slot;
  for (std::size_t t = 0; t < st.order.size(); ++t) slot[st.order[t]] = static_cast<int>(t);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      for (int w = v + 1; w < n; ++w) {
        int t0 = slot[{u, v}], t1 = slot[{u, w}], t2 = slot[{v, w}];
        int last = std::max({t0, t1, t2});
        std::pair<int, int> rest;
        if (last == t0)
          rest = {t1, t2};
        else if (last == t1)
          rest = {t0, t2};
        else
          rest = {t0, t1};
        st.completions[static_cast<std::size_t>(last)].push_back(rest);
      }
  st.mask.assign(st.order.size(), 0);
  st.objective = objective;
  st.dfs(0);

  SearchResult res;
  res.best = st.best ? *st.best : ColouringTemplate(n, std::array<std::vector<Edge>, 3>{});
  res.objective = to_string(objective);
  res.value = st.best ? st.best_value : evaluate_objective(objective, {0, 0, 0});
  res.exhaustive = true;
  res.templates_visited = st.leaves;
  return res;
}

/// Hill climbing over single edge-bit toggles that keep the template
/// rainbow-triangle-free. Only strict improvements are accepted. Deterministic
/// for a fixed seed. The objective sees the class sizes.
inline SearchResult local_search_counts(
    const ColouringTemplate& init,
    const std::function<double(const std::array<long long, 3>&)>& objective,
    const std::string& objective_name, std::uint64_t budget, std::uint64_t seed) {
  if (!init.is_gallai()) throw std::invalid_argument("local_search: init contains a rainbow triangle");
  const int n = init.vertex_count();
  detail::MutableTemplate cur(init);
  double value = objective(cur.class_sizes());
  std::mt19937_64 rng(seed);
  std::vector<Edge> pairs;
  pairs.reserve(static_cast<std::size_t>(binom2(n)));
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
  SearchResult res;
  res.objective = objective_name;
  res.exhaustive = false;
  res.seed = seed;
  if (pairs.empty()) {
    res.best = init;
    res.value = value;
    return res;
  }
  std::uniform_int_distribution<std::size_t> pick_pair(0, pairs.size() - 1);
  std::uniform_int_distribution<int> pick_colour(0, 2);
  for (std::uint64_t step = 0; step < budget; ++step) {
    auto [u, v] = pairs[pick_pair(rng)];
    int c = pick_colour(rng);
    ++res.templates_visited;
    auto sizes = cur.class_sizes();
    if (cur.has(c, u, v)) {
      --sizes[static_cast<std::size_t>(c)];
      if (objective(sizes) > value) {
        cur.remove(c, u, v);
        value = objective(sizes);
        ++res.accepted_steps;
      }
    } else {
      ++sizes[static_cast<std::size_t>(c)];
      if (objective(sizes) > value && !cur.addition_creates_rainbow(c, u, v)) {
        cur.add(c, u, v);
        value = objective(sizes);
        ++res.accepted_steps;
      }
    }
  }
  res.best = cur.freeze();
  res.value = value;
  return res;
}

inline SearchResult local_search(int n, Objective objective, const ColouringTemplate& init,
                                 std::uint64_t budget, std::uint64_t seed) {
  if (init.vertex_count() != n)
    throw std::invalid_argument("local_search: init vertex count mismatch");
  return local_search_counts(
      init, [objective](const std::array<long long, 3>& s) { return evaluate_objective(objective, s); },
      to_string(objective), budget, seed);
}

/// Stochastic probe for a Gallai template whose class sizes exceed
/// alpha_i C(n,2) + c_param n for every class (c_param may be negative: the
/// regression tests ask for sizes within 2n below the targets). Starts from a
/// small deterministic set of construction-based candidates and hill-climbs
/// the minimum margin. Absence within budget is evidence, not proof.
inline std::optional<ColouringTemplate> forcing_probe(double a1, double a2, double a3, int n,
                                                      double c_param, std::uint64_t budget,
                                                      std::uint64_t seed) {
  const double cn2 = static_cast<double>(binom2(n));
  auto margin = [&](const std::array<long long, 3>& sizes) {
    return std::min({static_cast<double>(sizes[0]) - a1 * cn2,
                     static_cast<double>(sizes[1]) - a2 * cn2,
                     static_cast<double>(sizes[2]) - a3 * cn2});
  };
  const double threshold = c_param * n;

  std::vector<ColouringTemplate> candidates;
  try {
    candidates.push_back(theorem_witness(a1, a2, n));
  } catch (const std::domain_error&) {
  }
  int t = static_cast<int>(std::ceil(constants().tau * n));
  if (n - 2 * t >= 0) candidates.push_back(build_F(n - 2 * t, t, t));
  int au = static_cast<int>(std::ceil(constants().upsilon * n));
  if (au <= n) candidates.push_back(build_H(au, n - au, 0));
  candidates.push_back(build_F(n, 0, 0));
  candidates.push_back(build_F(0, (n + 1) / 2, n - (n + 1) / 2));

  const ColouringTemplate* best_init = nullptr;
  double best_margin = -std::numeric_limits<double>::infinity();
  for (const auto& cand : candidates) {
    double m = margin(cand.class_sizes());
    if (m > best_margin) {
      best_margin = m;
      best_init = &cand;
    }
  }
  if (best_margin > threshold) return *best_init;
  SearchResult run = local_search_counts(*best_init, margin, "min_margin", budget, seed);
  if (run.value > threshold) return run.best;
  return std::nullopt;
}

}  // namespace gallai
