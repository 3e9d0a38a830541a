#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <bit>
#include <cmath>
#include <cstdint>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gallai {

/// Vertex pair (u, v), always stored with u < v.
using Edge = std::pair<int, int>;

inline long long binom2(long long n) { return n < 2 ? 0 : n * (n - 1) / 2; }

/// f_n(x) = x - sqrt(x * C(n,2)) for x >= 0. Strictly decreasing on
/// [0, C(n,2)/4], strictly increasing on [C(n,2)/4, C(n,2)], minimum -C(n,2)/4.
inline double f_value(int n, double x) {
  if (!(x >= 0.0)) throw std::domain_error("f_value: x must be non-negative");
  return x - std::sqrt(x * static_cast<double>(binom2(n)));
}

struct DensityVector {
  std::array<double, 3> rho{0.0, 0.0, 0.0};
  long long normalizer = 0;  // C(n,2); rho is all-zero when n < 2
};

struct BichromaticEdge {
  Edge edge;
  std::array<bool, 3> in_class{};  // class membership; all three = rainbow edge
};

// A triple of graphs on one vertex set 0..n-1. Classes may overlap (this is
// not a proper colouring). Edges are kept both as sorted pair lists and as
// symmetric per-vertex adjacency bitsets; the bitsets drive triangle
// detection and are materialized from the lists on first use. Instances are
// immutable after construction, so all queries are const and safe to run
// concurrently.
class ColouringTemplate {
 public:
  static constexpr int kMaxVertices = 5000;

  ColouringTemplate() = default;

  ColouringTemplate(int n, std::array<std::vector<Edge>, 3> classes) : n_(n) {
    if (n < 0 || n > kMaxVertices)
      throw std::invalid_argument("ColouringTemplate: vertex count out of range");
    for (auto& cls : classes) {
      for (auto& [u, v] : cls) {
        if (u == v) throw std::invalid_argument("ColouringTemplate: self-loop");
        if (u > v) std::swap(u, v);
        if (u < 0 || v >= n)
          throw std::invalid_argument("ColouringTemplate: vertex out of range");
      }
      std::sort(cls.begin(), cls.end());
      if (std::adjacent_find(cls.begin(), cls.end()) != cls.end())
        throw std::invalid_argument("ColouringTemplate: duplicate pair within a class");
    }
    classes_ = std::move(classes);
  }

  /// Trusted constructor: lists must already be sorted, unique and in range.
  static ColouringTemplate from_sorted_edges(int n, std::array<std::vector<Edge>, 3> classes) {
    ColouringTemplate t;
    t.n_ = n;
    t.classes_ = std::move(classes);
    return t;
  }

  ColouringTemplate(const ColouringTemplate& o) : n_(o.n_), classes_(o.classes_) {
    if (const Bits* b = o.bits_ptr_.load(std::memory_order_acquire)) {
      owned_bits_ = std::make_unique<Bits>(*b);
      bits_ptr_.store(owned_bits_.get(), std::memory_order_release);
    }
  }
  ColouringTemplate(ColouringTemplate&& o) noexcept
      : n_(o.n_), classes_(std::move(o.classes_)), owned_bits_(std::move(o.owned_bits_)) {
    bits_ptr_.store(owned_bits_.get(), std::memory_order_release);
    o.bits_ptr_.store(nullptr, std::memory_order_release);
  }
  ColouringTemplate& operator=(const ColouringTemplate& o) {
    if (this != &o) *this = ColouringTemplate(o);
    return *this;
  }
  ColouringTemplate& operator=(ColouringTemplate&& o) noexcept {
    if (this != &o) {
      n_ = o.n_;
      classes_ = std::move(o.classes_);
      owned_bits_ = std::move(o.owned_bits_);
      bits_ptr_.store(owned_bits_.get(), std::memory_order_release);
      o.bits_ptr_.store(nullptr, std::memory_order_release);
    }
    return *this;
  }

  int vertex_count() const { return n_; }
  const std::vector<Edge>& class_edges(int c) const { return classes_.at(static_cast<std::size_t>(c)); }
  long long class_size(int c) const { return static_cast<long long>(class_edges(c).size()); }
  std::array<long long, 3> class_sizes() const {
    return {class_size(0), class_size(1), class_size(2)};
  }

  bool has_edge(int c, int u, int v) const {
    const Bits& b = bits();
    return (b.row(c, u, b.words)[static_cast<std::size_t>(v) >> 6] >> (v & 63)) & 1u;
  }

  DensityVector density_vector() const {
    DensityVector d;
    d.normalizer = binom2(n_);
    if (d.normalizer == 0) return d;
    for (int c = 0; c < 3; ++c)
      d.rho[static_cast<std::size_t>(c)] =
          static_cast<double>(class_size(c)) / static_cast<double>(d.normalizer);
    return d;
  }

  /// Unordered triples {u,v,w} admitting a rainbow assignment: some bijection
  /// of the three colours onto the three pairs puts each pair in its class.
  /// Sorted lexicographically; each triple reported once.
  std::vector<std::array<int, 3>> rainbow_triangles() const {
    std::vector<std::array<int, 3>> out;
    scan_rainbow(&out);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  bool is_gallai() const { return !scan_rainbow(nullptr); }

  /// Pairs present in all three classes.
  std::vector<Edge> rainbow_edges() const {
    std::vector<Edge> out;
    for (const Edge& e : classes_[0])
      if (has_edge(1, e.first, e.second) && has_edge(2, e.first, e.second)) out.push_back(e);
    return out;
  }

  /// Pairs present in at least two classes, with their class memberships.
  /// Rainbow edges are included (all three classes set).
  std::vector<BichromaticEdge> bichromatic_edges() const {
    std::vector<Edge> all;
    for (const auto& cls : classes_) all.insert(all.end(), cls.begin(), cls.end());
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    std::vector<BichromaticEdge> out;
    for (const Edge& e : all) {
      BichromaticEdge b{e, {has_edge(0, e.first, e.second), has_edge(1, e.first, e.second),
                            has_edge(2, e.first, e.second)}};
      if (b.in_class[0] + b.in_class[1] + b.in_class[2] >= 2) out.push_back(b);
    }
    return out;
  }

  /// Balanced blow-up: vertex v becomes the k-set {k*v, ..., k*v+k-1}; each
  /// edge of class i becomes the complete bipartite pattern between the two
  /// sets; no edges inside a set. |G(k)_i| = k^2 |G_i|.
  ColouringTemplate blow_up(int k) const {
    if (k < 1) throw std::invalid_argument("blow_up: k must be >= 1");
    long long n2 = static_cast<long long>(n_) * k;
    if (n2 > kMaxVertices) throw std::length_error("blow_up: vertex limit exceeded");
    std::array<std::vector<Edge>, 3> classes;
    for (int c = 0; c < 3; ++c) {
      auto& out = classes[static_cast<std::size_t>(c)];
      out.reserve(classes_[static_cast<std::size_t>(c)].size() * static_cast<std::size_t>(k) *
                  static_cast<std::size_t>(k));
      for (const Edge& e : classes_[static_cast<std::size_t>(c)])
        for (int s = 0; s < k; ++s)
          for (int t = 0; t < k; ++t) out.emplace_back(e.first * k + s, e.second * k + t);
      std::sort(out.begin(), out.end());
    }
    return from_sorted_edges(static_cast<int>(n2), std::move(classes));
  }

  /// Subtemplate induced by `subset`, relabelled 0..|S|-1 preserving order.
  ColouringTemplate induced(const std::vector<int>& subset) const {
    std::vector<int> s = subset;
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end())
      throw std::invalid_argument("induced: duplicate vertex in subset");
    if (!s.empty() && (s.front() < 0 || s.back() >= n_))
      throw std::invalid_argument("induced: vertex out of range");
    std::vector<int> relabel(static_cast<std::size_t>(n_), -1);
    for (std::size_t i = 0; i < s.size(); ++i) relabel[static_cast<std::size_t>(s[i])] = static_cast<int>(i);
    std::array<std::vector<Edge>, 3> classes;
    for (int c = 0; c < 3; ++c)
      for (const Edge& e : classes_[static_cast<std::size_t>(c)]) {
        int u = relabel[static_cast<std::size_t>(e.first)], v = relabel[static_cast<std::size_t>(e.second)];
        if (u >= 0 && v >= 0) classes[static_cast<std::size_t>(c)].emplace_back(u, v);
      }
    return from_sorted_edges(static_cast<int>(s.size()), std::move(classes));
  }

  /// The hard-case potential. Classes are permuted so the largest (ties: lowest
  /// index) plays the role of G1; with m = max of the other two sizes this is
  /// |G1|+|G2|+|G3| - 2 C(N,2) - 2m + 2 sqrt(C(N,2) m).
  double g_value() const {
    auto s = class_sizes();
    int big = 0;
    for (int c = 1; c < 3; ++c)
      if (s[static_cast<std::size_t>(c)] > s[static_cast<std::size_t>(big)]) big = c;
    long long m = 0;
    for (int c = 0; c < 3; ++c)
      if (c != big) m = std::max(m, s[static_cast<std::size_t>(c)]);
    double total = static_cast<double>(s[0] + s[1] + s[2]);
    double cn2 = static_cast<double>(binom2(n_));
    return total - 2.0 * cn2 - 2.0 * static_cast<double>(m) +
           2.0 * std::sqrt(cn2 * static_cast<double>(m));
  }

  bool operator==(const ColouringTemplate& o) const { return n_ == o.n_ && classes_ == o.classes_; }

  // Low-level: adjacency bitset row of vertex v in class c (row_words() words).
  const std::uint64_t* row(int c, int v) const {
    const Bits& b = bits();
    return b.row(c, v, b.words);
  }
  int row_words() const { return bits().words; }

 private:
  struct Bits {
    int words = 0;
    std::array<std::vector<std::uint64_t>, 3> data;
    const std::uint64_t* row(int c, int v, int w) const {
      return data[static_cast<std::size_t>(c)].data() +
             static_cast<std::size_t>(v) * static_cast<std::size_t>(w);
    }
  };

  // Built once on first use; reads are lock-free afterwards.
  const Bits& bits() const {
    if (const Bits* b = bits_ptr_.load(std::memory_order_acquire)) return *b;
    static std::mutex build_mutex;
    std::lock_guard<std::mutex> lock(build_mutex);
    if (const Bits* b = bits_ptr_.load(std::memory_order_relaxed)) return *b;
    auto fresh = std::make_unique<Bits>();
    fresh->words = (n_ + 63) / 64;
    for (int c = 0; c < 3; ++c) {
      auto& bv = fresh->data[static_cast<std::size_t>(c)];
      bv.assign(static_cast<std::size_t>(n_) * static_cast<std::size_t>(fresh->words), 0);
      for (const Edge& e : classes_[static_cast<std::size_t>(c)]) {
        bv[static_cast<std::size_t>(e.first) * fresh->words +
           (static_cast<std::size_t>(e.second) >> 6)] |= std::uint64_t{1} << (e.second & 63);
        bv[static_cast<std::size_t>(e.second) * fresh->words +
           (static_cast<std::size_t>(e.first) >> 6)] |= std::uint64_t{1} << (e.first & 63);
      }
    }
    owned_bits_ = std::move(fresh);
    bits_ptr_.store(owned_bits_.get(), std::memory_order_release);
    return *owned_bits_;
  }

  // Reports all (u,v,w) hits; when out == nullptr stops at the first.
  // Returns true iff a rainbow triple exists.
  bool scan_rainbow(std::vector<std::array<int, 3>>* out) const {
    static constexpr int kPerm[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                        {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    const Bits& b = bits();
    bool found = false;
    for (const auto& p : kPerm) {
      for (const Edge& e : classes_[static_cast<std::size_t>(p[0])]) {
        const std::uint64_t* ru = b.row(p[1], e.first, b.words);
        const std::uint64_t* rv = b.row(p[2], e.second, b.words);
        for (int w = 0; w < b.words; ++w) {
          std::uint64_t m = ru[w] & rv[w];
          if (!m) continue;
          if (!out) return true;
          while (m) {
            int x = w * 64 + std::countr_zero(m);
            m &= m - 1;
            std::array<int, 3> t{e.first, e.second, x};
            std::sort(t.begin(), t.end());
            out->push_back(t);
            found = true;
          }
        }
      }
    }
    return found;
  }

  int n_ = 0;
  std::array<std::vector<Edge>, 3> classes_;
  mutable std::unique_ptr<Bits> owned_bits_;
  mutable std::atomic<const Bits*> bits_ptr_{nullptr};
};

}  // namespace gallai
