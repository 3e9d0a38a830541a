#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

#include "gallai/boundary.hpp"
#include "gallai/core.hpp"

namespace gallai {

struct ConstructionParams {
  int a = 0, b = 0, c = 0;
  int n() const { return a + b + c; }
};

enum class ConstructionKind { F, H };

namespace detail {
inline void check_parts(int a, int b, int c) {
  if (a < 0 || b < 0 || c < 0)
    throw std::invalid_argument("construction: part sizes must be non-negative");
  long long n = static_cast<long long>(a) + b + c;
  if (n > ColouringTemplate::kMaxVertices)
    throw std::length_error("construction: vertex limit exceeded");
}

// floor/ceil with a 1e-9 nudge so values that are integers up to solver
// round-off land on the intended integer
inline int floor_nudged(double x) { return static_cast<int>(std::floor(x + 1e-9)); }
inline int ceil_nudged(double x) { return static_cast<int>(std::ceil(x - 1e-9)); }
}  // namespace detail

/// F(a,b,c) on parts A = [0,a), B = [a,a+b), C = [a+b,n):
/// F1 = A^2 u B^2, F2 = A^2 u C^2, F3 = all pairs minus A^2.
/// Rainbow-triangle-free for every choice of parts.
inline ColouringTemplate build_F(int a, int b, int c) {
  detail::check_parts(a, b, c);
  const int n = a + b + c;
  std::array<std::vector<Edge>, 3> cls;
  auto clique = [](std::vector<Edge>& out, int lo, int hi) {
    for (int u = lo; u < hi; ++u)
      for (int v = u + 1; v < hi; ++v) out.emplace_back(u, v);
  };
  cls[0].reserve(static_cast<std::size_t>(binom2(a) + binom2(b)));
  clique(cls[0], 0, a);
  clique(cls[0], a, a + b);
  cls[1].reserve(static_cast<std::size_t>(binom2(a) + binom2(c)));
  clique(cls[1], 0, a);
  clique(cls[1], a + b, n);
  cls[2].reserve(static_cast<std::size_t>(binom2(n) - binom2(a)));
  for (int u = 0; u < n; ++u)
    for (int v = (u < a ? a : u + 1); v < n; ++v) cls[2].emplace_back(u, v);
  return ColouringTemplate::from_sorted_edges(n, std::move(cls));
}

/// H(a,b,c) on parts A = [0,a), B = [a,a+b), C = [a+b,n):
/// H1 = A^2 u (BuC)^2 u (A,C), H2 = A^2, H3 = (BuC)^2 u (A,B).
/// Rainbow-triangle-free for every choice of parts.
inline ColouringTemplate build_H(int a, int b, int c) {
  detail::check_parts(a, b, c);
  const int n = a + b + c;
  std::array<std::vector<Edge>, 3> cls;
  // H1: for u in A pair with A beyond u and with C; for u in BuC pair with the rest of BuC
  cls[0].reserve(static_cast<std::size_t>(binom2(a) + binom2(b + c) + static_cast<long long>(a) * c));
  for (int u = 0; u < a; ++u) {
    for (int v = u + 1; v < a; ++v) cls[0].emplace_back(u, v);
    for (int v = a + b; v < n; ++v) cls[0].emplace_back(u, v);
  }
  for (int u = a; u < n; ++u)
    for (int v = u + 1; v < n; ++v) cls[0].emplace_back(u, v);
  cls[1].reserve(static_cast<std::size_t>(binom2(a)));
  for (int u = 0; u < a; ++u)
    for (int v = u + 1; v < a; ++v) cls[1].emplace_back(u, v);
  cls[2].reserve(static_cast<std::size_t>(binom2(b + c) + static_cast<long long>(a) * b));
  for (int u = 0; u < a; ++u)
    for (int v = a; v < a + b; ++v) cls[2].emplace_back(u, v);
  for (int u = a; u < n; ++u)
    for (int v = u + 1; v < n; ++v) cls[2].emplace_back(u, v);
  return ColouringTemplate::from_sorted_edges(n, std::move(cls));
}

inline ColouringTemplate build_construction(ConstructionKind kind, int a, int b, int c) {
  return kind == ConstructionKind::F ? build_F(a, b, c) : build_H(a, b, c);
}

/// Asymptotic density vector of F or H with part fractions (x, y, z), x+y+z = 1:
/// F -> (x^2+y^2, x^2+z^2, 1-x^2); H -> (1-2xy, x^2, (1-x)^2+2xy).
inline std::array<double, 3> predicted_density(ConstructionKind kind, double x, double y, double z) {
  if (x < 0.0 || y < 0.0 || z < 0.0)
    throw std::invalid_argument("predicted_density: negative part fraction");
  if (std::abs(x + y + z - 1.0) > 1e-12)
    throw std::invalid_argument("predicted_density: fractions must sum to 1");
  if (kind == ConstructionKind::F)
    return {x * x + y * y, x * x + z * z, 1.0 - x * x};
  return {1.0 - 2.0 * x * y, x * x, (1.0 - x) * (1.0 - x) + 2.0 * x * y};
}

struct NonForcingWitness {
  char case_label;  // 'a'..'d'
  ConstructionParams params;
  ColouringTemplate tmpl;
  double epsilon = 0.0;  // the 2^-k pick for cases (c)/(d); 0 otherwise
};

namespace detail {
// Largest eps in {2^-k : k = 3..30} satisfying pred; nullopt if none does.
template <typename Pred>
inline std::optional<double> pick_epsilon(Pred pred) {
  for (int k = 3; k <= 30; ++k) {
    double eps = std::ldexp(1.0, -k);
    if (pred(eps)) return eps;
  }
  return std::nullopt;
}
}  // namespace detail

/// A witness that (a1, a2, a3) with a1 >= a2 >= a3 is not a forcing triple:
/// the first applicable of the four parameter recipes
///   (a) a1 < (1+tau^2)/2          -> F(n - 2 ceil(tau n), ceil(tau n), ceil(tau n))
///   (b) a2 < 1/4                  -> F(0, ceil(n/2), rest)
///   (c) a1 + a2 < 1               -> F(ceil(n sqrt(a2+2 eps)), rest, 0)
///   (d) canonical rep has 2x^2+z^2 < 1 -> F(floor((x+eps) n), floor((y-eps) n), rest)
/// For n large enough the witness's sorted density vector strictly dominates
/// the sorted input triple; the templates are rainbow-triangle-free at any n.
inline NonForcingWitness witness_non_forcing(double a1, double a2, double a3, int n) {
  if (!(a1 >= a2 && a2 >= a3 && a3 >= 0.0 && a1 <= 1.0))
    throw std::invalid_argument("witness_non_forcing: need 1 >= a1 >= a2 >= a3 >= 0");
  if (n < 3) throw std::invalid_argument("witness_non_forcing: n too small");

  if (a1 < constants().tau_threshold) {
    int t = detail::ceil_nudged(constants().tau * n);
    ConstructionParams p{n - 2 * t, t, t};
    return {'a', p, build_F(p.a, p.b, p.c), 0.0};
  }
  if (a2 < 0.25) {
    int b = (n + 1) / 2;
    ConstructionParams p{0, b, n - b};
    return {'b', p, build_F(p.a, p.b, p.c), 0.0};
  }
  if (a1 + a2 < 1.0) {
    auto eps = detail::pick_epsilon([&](double e) { return 1.0 - a2 - 4.0 * e > a1; });
    if (eps) {
      int a = detail::ceil_nudged(n * std::sqrt(a2 + 2.0 * *eps));
      ConstructionParams p{a, n - a, 0};
      return {'c', p, build_F(p.a, p.b, p.c), *eps};
    }
  }
  if (a1 >= 0.5 && a1 <= 1.0) {
    double lower = (a1 + std::sqrt(2.0 * a1 - 1.0)) / 2.0;
    if (a2 >= lower - 1e-10 && a2 <= a1) {
      CanonicalRep rep = canonical_representation(a1, a2);
      if (2.0 * rep.x * rep.x + rep.z * rep.z < 1.0) {
        auto eps = detail::pick_epsilon([&](double e) {
          return a2 + e * e < 1.0 - (rep.x + e) * (rep.x + e) && e < rep.y;
        });
        if (eps) {
          int a = detail::floor_nudged((rep.x + *eps) * n);
          int b = detail::floor_nudged((rep.y - *eps) * n);
          ConstructionParams p{a, b, n - a - b};
          return {'d', p, build_F(p.a, p.b, p.c), *eps};
        }
      }
    }
  }
  throw std::domain_error("witness_non_forcing: no case applies (the triple may be forcing)");
}

/// Extremal witness for the forcing regions: F(floor(x n), floor(y n), rest)
/// from the canonical representation on R1', H(floor(sqrt(a2) n),
/// floor((1-a1)/(2 sqrt(a2)) n), rest) on R2. Class sizes reach
/// a_i C(n,2) - O(n).
inline ColouringTemplate theorem_witness(double a1, double a2, int n) {
  RegionClassification cls = classify(a1, a2);
  if (cls.label == RegionLabel::R1prime) {
    int a = detail::floor_nudged(cls.canonical->x * n);
    int b = detail::floor_nudged(cls.canonical->y * n);
    return build_F(a, b, n - a - b);
  }
  if (cls.label == RegionLabel::R2) {
    double sq = std::sqrt(a2);
    int a = detail::floor_nudged(sq * n);
    int b = detail::floor_nudged((1.0 - a1) / (2.0 * sq) * n);
    return build_H(a, b, n - a - b);
  }
  throw std::domain_error("theorem_witness: pair outside R1' and R2");
}

}  // namespace gallai
