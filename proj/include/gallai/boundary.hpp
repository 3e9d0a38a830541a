#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gallai/core.hpp"

namespace gallai {

/// h(x) = (x^2 + (1-x)^2) x^2 (1 - x^2) on [0,1].
inline double h_function(double x) {
  if (!(x >= 0.0 && x <= 1.0)) throw std::domain_error("h_function: x outside [0,1]");
  return (x * x + (1.0 - x) * (1.0 - x)) * x * x * (1.0 - x * x);
}

namespace detail {
// h'(x) = 2x * (-6x^4 + 5x^3 + 2x^2 - 3x + 1); same sign as the quartic for x > 0.
inline double h_derivative(double x) {
  double q = ((((-6.0 * x) + 5.0) * x + 2.0) * x - 3.0) * x + 1.0;
  return 2.0 * x * q;
}
}  // namespace detail

/// Interior maximiser of h on [0,1], computed by bisecting h' on the sign
/// change bracketing the maximum. Accurate to ~1e-12; never hard-coded.
inline double upsilon() {
  static const double value = [] {
    // locate the sign change of h' on a coarse grid, then bisect
    const int grid = 1 << 12;
    double lo = 0.0, hi = 0.0;
    double best = 0.0, best_val = -1.0;
    for (int i = 1; i < grid; ++i) {
      double x = static_cast<double>(i) / grid;
      double v = h_function(x);
      if (v > best_val) {
        best_val = v;
        best = x;
      }
    }
    lo = best - 1.0 / grid;
    hi = best + 1.0 / grid;
    if (!(detail::h_derivative(lo) > 0.0 && detail::h_derivative(hi) < 0.0))
      throw std::logic_error("upsilon: failed to bracket the interior critical point");
    for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
      double mid = 0.5 * (lo + hi);
      (detail::h_derivative(mid) > 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
  }();
  return value;
}

struct Constants {
  double tau;            // (4 - sqrt(7)) / 9
  double tau_threshold;  // (1 + tau^2) / 2 = (52 - 4 sqrt(7)) / 81
  double upsilon;
  double h_upsilon;
};

inline const Constants& constants() {
  static const Constants c = [] {
    double tau = (4.0 - std::sqrt(7.0)) / 9.0;
    double u = upsilon();
    return Constants{tau, (1.0 + tau * tau) / 2.0, u, h_function(u)};
  }();
  return c;
}

struct CanonicalRep {
  double x, y, z;
  double residual1;  // |x^2 + y^2 - alpha1|
  double residual2;  // |x^2 + z^2 - alpha2|
};

/// Solves alpha1 = x^2 + y^2, alpha2 = x^2 + z^2 with x + y + z = 1, x >= 1/2.
/// Requires alpha1 >= 1/2 and (alpha1 + sqrt(2 alpha1 - 1))/2 <= alpha2 <= alpha1.
/// Bisection in x over the bracketing interval [x0, x1]; the solution is unique
/// there (the residual function is strictly increasing), which is re-checked by
/// a 10^4-point sign-change scan unless `verify_unique` is cleared.
inline CanonicalRep canonical_representation(double alpha1, double alpha2,
                                             bool verify_unique = true) {
  constexpr double kTol = 1e-10;
  if (!(alpha1 >= 0.5 - 1e-12 && alpha1 <= 1.0 + 1e-12))
    throw std::domain_error("canonical_representation: alpha1 outside [1/2, 1]");
  alpha1 = std::min(std::max(alpha1, 0.5), 1.0);
  double root = std::sqrt(std::max(2.0 * alpha1 - 1.0, 0.0));
  double lower = (alpha1 + root) / 2.0;
  if (alpha2 < lower - kTol || alpha2 > alpha1 + kTol)
    throw std::domain_error("canonical_representation: alpha2 outside [(alpha1+sqrt(2 alpha1-1))/2, alpha1]");
  alpha2 = std::min(std::max(alpha2, lower), alpha1);

  double x0 = (1.0 + root) / 2.0;
  double x1 = std::min((1.0 + 2.0 * std::sqrt(5.0 * alpha1 - 1.0)) / 5.0, std::sqrt(alpha1));
  auto residual = [&](double x) {
    double y = std::sqrt(std::max(alpha1 - x * x, 0.0));
    double z = 1.0 - x - y;
    return x * x + z * z - alpha2;
  };
  if (verify_unique) {
    const int m = 10000;
    int sign_changes = 0;
    bool prev_neg = residual(x0) < 0.0;
    for (int i = 1; i <= m; ++i) {
      bool neg = residual(x0 + (x1 - x0) * i / m) < 0.0;
      if (prev_neg != neg) ++sign_changes;
      prev_neg = neg;
    }
    if (sign_changes > 1)
      throw std::logic_error("canonical_representation: multiple roots in bracket");
  }
  double lo = x0, hi = x1;
  double x = 0.5 * (lo + hi);
  bool converged = false;
  for (int it = 0; it < 200; ++it) {
    x = 0.5 * (lo + hi);
    double r = residual(x);
    if (std::abs(r) <= 1e-13 || hi - lo <= 1e-15) {
      converged = true;
      break;
    }
    (r < 0.0 ? lo : hi) = x;
  }
  // the endpoints themselves may already solve the equation (degenerate bracket)
  if (!converged) {
    for (double cand : {x0, x1, x})
      if (std::abs(residual(cand)) <= 1e-12) {
        x = cand;
        converged = true;
        break;
      }
  }
  if (!converged) throw std::runtime_error("canonical_representation: bisection did not converge");
  double y = std::sqrt(std::max(alpha1 - x * x, 0.0));
  double z = std::max(1.0 - x - y, 0.0);
  CanonicalRep rep{x, y, z, std::abs(x * x + y * y - alpha1), std::abs(x * x + z * z - alpha2)};
  if (rep.residual2 > 1e-12)
    throw std::runtime_error("canonical_representation: residual above tolerance");
  return rep;
}

/// Good pair test: alpha2 >= max{1/4, (alpha1+sqrt(2 alpha1-1))/2},
/// alpha1 >= max{alpha2, 1-alpha2, (1+tau^2)/2}, and 2x^2 + z^2 >= 1 on the
/// canonical representation. Returns false (never throws) when any fails.
inline std::pair<bool, std::optional<CanonicalRep>> is_good_pair(double alpha1, double alpha2) {
  constexpr double kTol = 1e-12;
  if (alpha1 < 0.5 || alpha1 > 1.0 + kTol || alpha2 < 0.0) return {false, std::nullopt};
  double lower = (alpha1 + std::sqrt(2.0 * alpha1 - 1.0)) / 2.0;
  if (alpha2 + kTol < std::max(0.25, lower)) return {false, std::nullopt};
  if (alpha1 + kTol < std::max({alpha2, 1.0 - alpha2, constants().tau_threshold}))
    return {false, std::nullopt};
  CanonicalRep rep = canonical_representation(alpha1, std::min(alpha2, alpha1));
  bool ok = 2.0 * rep.x * rep.x + rep.z * rep.z >= 1.0 - kTol;
  return {ok, rep};
}

enum class RegionLabel { R1prime, R1MinusR1prime, R2, Outside };

inline std::string to_string(RegionLabel l) {
  switch (l) {
    case RegionLabel::R1prime: return "R1prime";
    case RegionLabel::R1MinusR1prime: return "R1_minus_R1prime";
    case RegionLabel::R2: return "R2";
    default: return "outside";
  }
}

struct RegionClassification {
  RegionLabel label = RegionLabel::Outside;
  bool on_shared_curve = false;           // within tolerance of alpha1 = 1-2 sqrt(a2)+2 a2, in both regions
  std::optional<double> alpha3;           // present iff label is R1prime or R2
  std::optional<CanonicalRep> canonical;  // present iff the pair lies in R1
};

/// Region membership and the forcing alpha3 surface. R1 requires
/// max(1-a2, (1+tau^2)/2, a2) <= a1 <= 1-2 sqrt(a2)+2 a2 together with the
/// canonical-representation existence bound; R1' additionally 2x^2+z^2 >= 1.
/// R2 requires a1 >= max(2-2 sqrt(a2), 1-2 sqrt(a2)+2 a2). Closed regions,
/// membership tolerance 1e-12. alpha3 = 1-x^2 on R1', 2-a1-2 sqrt(a2)+a2 on
/// R2; on the shared curve both are evaluated and must agree to 1e-9.
inline RegionClassification classify(double alpha1, double alpha2) {
  constexpr double kTol = 1e-12;
  if (!(alpha1 >= 0.0 && alpha1 <= 1.0 && alpha2 >= 0.0 && alpha2 <= 1.0))
    throw std::domain_error("classify: alphas outside [0,1]");
  if (alpha2 > alpha1 + kTol) throw std::domain_error("classify: alpha2 > alpha1");
  alpha2 = std::min(alpha2, alpha1);

  double sq = std::sqrt(alpha2);
  double curve = 1.0 - 2.0 * sq + 2.0 * alpha2;
  bool in_r2 = alpha1 + kTol >= std::max(2.0 - 2.0 * sq, curve);

  bool in_r1 = alpha1 + kTol >= std::max({1.0 - alpha2, constants().tau_threshold, alpha2}) &&
               alpha1 <= curve + kTol;
  std::optional<CanonicalRep> rep;
  if (in_r1) {
    double lower = (alpha1 + std::sqrt(std::max(2.0 * alpha1 - 1.0, 0.0))) / 2.0;
    if (alpha2 + 1e-10 >= lower)
      rep = canonical_representation(alpha1, alpha2);
    else
      in_r1 = false;  // the display inequalities admit no (x,y,z) solution here
  }
  bool in_r1prime = false;
  if (rep) in_r1prime = 2.0 * rep->x * rep->x + rep->z * rep->z >= 1.0 - kTol;

  RegionClassification out;
  out.canonical = rep;
  if (in_r1 && in_r1prime)
    out.label = RegionLabel::R1prime;
  else if (in_r1)
    out.label = RegionLabel::R1MinusR1prime;
  else if (in_r2)
    out.label = RegionLabel::R2;
  else
    out.label = RegionLabel::Outside;

  out.on_shared_curve = in_r1 && in_r1prime && in_r2;
  if (out.label == RegionLabel::R1prime) {
    double a3 = 1.0 - rep->x * rep->x;
    if (out.on_shared_curve) {
      double a3_r2 = 2.0 - alpha1 - 2.0 * sq + alpha2;
      if (std::abs(a3 - a3_r2) > 1e-9)
        throw std::logic_error("classify: branch formulas disagree on the shared curve");
    }
    out.alpha3 = a3;
  } else if (out.label == RegionLabel::R2) {
    out.alpha3 = 2.0 - alpha1 - 2.0 * sq + alpha2;
  }
  return out;
}

/// The least forcing alpha3 for an in-region pair; errors outside R1' u R2.
inline double forcing_alpha3(double alpha1, double alpha2) {
  RegionClassification c = classify(alpha1, alpha2);
  if (!c.alpha3) throw std::domain_error("forcing_alpha3: pair outside R1' and R2");
  return *c.alpha3;
}

inline double f_H_surface(double x, double y) {
  return (1.0 - 2.0 * x * y) * x * x * ((1.0 - x) * (1.0 - x) + 2.0 * x * y);
}

inline double f_F_surface(double x, double y) {
  double z = 1.0 - x - y;
  return (x * x + y * y) * (x * x + z * z) * (1.0 - x * x);
}

struct SurfaceMaximum {
  double value;
  double x, y;
};

namespace detail {

// Grid plus iterated window refinement over an axis-aligned feasible region
// described by x-range and per-x y-range.
template <typename F, typename YLo, typename YHi>
SurfaceMaximum maximize_2d(F f, double xlo, double xhi, YLo ylo, YHi yhi) {
  const int grid = 240;
  SurfaceMaximum best{-1.0, 0.0, 0.0};
  auto consider = [&](double x, double y) {
    double v = f(x, y);
    if (v > best.value) best = {v, x, y};
  };
  for (int i = 0; i <= grid; ++i) {
    double x = xlo + (xhi - xlo) * i / grid;
    double lo = ylo(x), hi = yhi(x);
    if (hi < lo) continue;
    for (int j = 0; j <= grid; ++j) consider(x, lo + (hi - lo) * j / grid);
  }
  double wx = (xhi - xlo) / grid, wy = wx;
  for (int round = 0; round < 60; ++round) {
    SurfaceMaximum centre = best;
    for (int i = -10; i <= 10; ++i) {
      double x = centre.x + wx * i / 10.0;
      if (x < xlo || x > xhi) continue;
      double lo = ylo(x), hi = yhi(x);
      if (hi < lo) continue;
      for (int j = -10; j <= 10; ++j) {
        double y = centre.y + wy * j / 10.0;
        consider(x, std::min(std::max(y, lo), hi));
      }
    }
    wx *= 0.5;
    wy *= 0.5;
  }
  return best;
}

}  // namespace detail

/// Maximises f_H over {x,y >= 0, x+y <= 1} and f_F over
/// {x >= 1/2, (1-x)/2 <= y <= 1-x}. Both maxima equal h(upsilon); f_H peaks
/// on the segment y = 1-x.
inline std::pair<SurfaceMaximum, SurfaceMaximum> corollary_maxima() {
  SurfaceMaximum mh = detail::maximize_2d(
      f_H_surface, 0.0, 1.0, [](double) { return 0.0; }, [](double x) { return 1.0 - x; });
  SurfaceMaximum mf = detail::maximize_2d(
      f_F_surface, 0.5, 1.0, [](double x) { return (1.0 - x) / 2.0; },
      [](double x) { return 1.0 - x; });
  return {mh, mf};
}

struct BoundaryGridRow {
  double alpha1, alpha2;
  std::string label;  // classification label, or "invalid" when alpha2 > alpha1
  std::optional<double> alpha3;
};

/// Classification table over a uniform resolution x resolution grid of [0,1]^2,
/// alpha1 outer, alpha2 inner, endpoints included.
inline std::vector<BoundaryGridRow> boundary_grid(int resolution) {
  if (resolution < 2) throw std::invalid_argument("boundary_grid: resolution must be >= 2");
  std::vector<BoundaryGridRow> rows;
  rows.reserve(static_cast<std::size_t>(resolution) * static_cast<std::size_t>(resolution));
  for (int i = 0; i < resolution; ++i) {
    for (int j = 0; j < resolution; ++j) {
      double a1 = static_cast<double>(i) / (resolution - 1);
      double a2 = static_cast<double>(j) / (resolution - 1);
      BoundaryGridRow row{a1, a2, "invalid", std::nullopt};
      if (a2 <= a1) {
        RegionClassification c = classify(a1, a2);
        row.label = to_string(c.label);
        row.alpha3 = c.alpha3;
      }
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

}  // namespace gallai
