#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include "gallai/boundary.hpp"

namespace gallai {

struct CertificationFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// The certified integrand: k(d) >= 0 on [0,1] is the inequality behind the
/// hard-case monotonicity argument and the verify-appendix certificate.
inline double k_of_d(double d) {
  if (!(d >= 0.0 && d <= 1.0)) throw std::domain_error("k_of_d: d outside [0,1]");
  const double tau = constants().tau;
  const double q = 1.0 - 2.0 * tau;
  double w = std::sqrt(d * d + q * q);
  double radicand = 4.0 * d * w - 3.0 * d * d + 16.0 * tau * tau;
  if (!(radicand > 0.0)) throw std::logic_error("k_of_d: inner radicand not positive");
  return d / (2.0 * std::sqrt(d * d + 4.0 * tau * tau)) +
         (4.0 * d * d / w + 4.0 * w - 6.0 * d) / (4.0 * std::sqrt(radicand)) + d / w - 1.0;
}

namespace detail {

// The majorant chain for |k'|: each stage upper-bounds the previous pointwise
// on [0,1]; the last is the closed-form constant.

// Stage 1: modulus distributed over the terms of k'.
inline double k_bound_stage1(double d) {
  const double tau = constants().tau;
  const double q = 1.0 - 2.0 * tau;
  double s = std::sqrt(d * d + 4.0 * tau * tau);
  double w = std::sqrt(d * d + q * q);
  double r = 4.0 * d * w - 3.0 * d * d + 16.0 * tau * tau;
  double num = 4.0 * d * d / w + 4.0 * w + 6.0 * d;
  return d * d / (2.0 * s * s * s) + 1.0 / (2.0 * s) +
         (4.0 * d * d * d / (w * w * w) + 12.0 * d / w + 6.0) / (4.0 * std::sqrt(r)) +
         num * num / (8.0 * r * std::sqrt(r)) + d * d / (w * w * w) + 1.0 / w;
}

// Stage 2: d = 1 substituted where that maximises a term.
inline double k_bound_stage2(double d) {
  const double tau = constants().tau;
  const double q = 1.0 - 2.0 * tau;
  double s = std::sqrt(d * d + 4.0 * tau * tau);
  double w = std::sqrt(d * d + q * q);
  double r = 4.0 * d * w - 3.0 * d * d + 16.0 * tau * tau;
  double num = 4.0 / w + 4.0 * std::sqrt(q * q + 1.0) + 6.0;
  return num * num / (8.0 * r * std::sqrt(r)) + 1.0 / (2.0 * s) +
         (12.0 / w + 4.0 / (w * w * w) + 6.0) / (4.0 * std::sqrt(r)) +
         1.0 / (2.0 * s * s * s) + 1.0 / w + 1.0 / (w * w * w);
}

// Stage 3: d = 0 substituted in the closed terms, 1-2 tau for sqrt((1-2 tau)^2).
inline double k_bound_stage3(double d) {
  const double tau = constants().tau;
  const double q = 1.0 - 2.0 * tau;
  double w = std::sqrt(d * d + q * q);
  double r = 4.0 * d * w - 3.0 * d * d + 16.0 * tau * tau;
  double num = 4.0 * std::sqrt(q * q + 1.0) + 4.0 / q + 6.0;
  return num * num / (8.0 * r * std::sqrt(r)) +
         (12.0 / q + 4.0 / (q * q * q) + 6.0) / (4.0 * std::sqrt(r)) + 1.0 / (4.0 * tau) +
         1.0 / (16.0 * tau * tau * tau) + 1.0 / q + 1.0 / (q * q * q);
}

// Stage 4: the remaining radicand minimised at d = 0 (value 16 tau^2).
inline double k_bound_stage4() {
  const double tau = constants().tau;
  const double q = 1.0 - 2.0 * tau;
  double num = 4.0 * std::sqrt(q * q + 1.0) + 4.0 / q + 6.0;
  return num * num / (512.0 * tau * tau * tau) +
         (12.0 / q + 4.0 / (q * q * q) + 6.0) / (16.0 * tau) + 1.0 / (4.0 * tau) +
         1.0 / (16.0 * tau * tau * tau) + 1.0 / q + 1.0 / (q * q * q);
}

}  // namespace detail

/// Closed-form Lipschitz bound for k on [0,1]:
/// (66716 + 31943 sqrt(7) + 12 sqrt(19825442 + 7493276 sqrt(7))) / 1152,
/// roughly 196.868. Validated against the majorant chain: the stage functions
/// dominate each other and sampled |k'| (central differences) on a 10^4 grid.
inline double k_derivative_bound() {
  static const double value = [] {
    double s7 = std::sqrt(7.0);
    double closed = (66716.0 + 31943.0 * s7 + 12.0 * std::sqrt(19825442.0 + 7493276.0 * s7)) / 1152.0;
    double staged = detail::k_bound_stage4();
    if (std::abs(closed - staged) > 1e-9 * closed)
      throw std::logic_error("k_derivative_bound: closed form disagrees with the staged bound");
    if (!(closed <= 200.0 && closed > 196.8 && closed < 196.9))
      throw std::logic_error("k_derivative_bound: value outside the expected range");
    const int m = 10000;
    const double h = 1e-6;
    for (int i = 0; i < m; ++i) {
      double d = (i + 0.5) / m;
      double deriv = std::abs(k_of_d(std::min(d + h, 1.0)) - k_of_d(std::max(d - h, 0.0))) /
                     (std::min(d + h, 1.0) - std::max(d - h, 0.0));
      double b1 = detail::k_bound_stage1(d);
      double b2 = detail::k_bound_stage2(d);
      double b3 = detail::k_bound_stage3(d);
      if (!(deriv <= b1 + 1e-3 && b1 <= b2 + 1e-9 && b2 <= b3 + 1e-9 && b3 <= staged + 1e-9))
        throw std::logic_error("k_derivative_bound: majorant chain violated");
    }
    return closed;
  }();
  return value;
}

struct LipschitzCertificate {
  double a = 0.0, b = 0.0;
  int grid_count = 0;
  double lipschitz_bound = 0.0;
  double grid_min = 0.0;
  double grid_argmin = 0.0;
  double spacing = 0.0;                // (b-a)/(m-1), endpoints included
  double certified_lower_bound = 0.0;  // grid_min - L * spacing
  bool success = false;                // certified_lower_bound > 0
};

/// Evaluates f at m evenly spaced points of [a,b] (endpoints included) and
/// certifies min f >= grid_min - L * spacing. L must be a valid Lipschitz
/// bound for f on [a,b]; that is the caller's responsibility.
inline LipschitzCertificate certify_nonnegative(const std::function<double(double)>& f, double a,
                                                double b, double L, int m) {
  if (m < 2) throw std::invalid_argument("certify_nonnegative: need at least 2 grid points");
  if (!(b > a)) throw std::invalid_argument("certify_nonnegative: empty interval");
  if (!(L >= 0.0)) throw std::invalid_argument("certify_nonnegative: negative Lipschitz bound");
  LipschitzCertificate cert;
  cert.a = a;
  cert.b = b;
  cert.grid_count = m;
  cert.lipschitz_bound = L;
  cert.spacing = (b - a) / (m - 1);
  double best = std::numeric_limits<double>::infinity();
  double best_x = a;
  for (int i = 0; i < m; ++i) {
    double x = a + (b - a) * i / (m - 1);
    double v = f(x);
    if (!std::isfinite(v)) throw std::runtime_error("certify_nonnegative: non-finite value");
    if (v < best) {
      best = v;
      best_x = x;
    }
  }
  cert.grid_min = best;
  cert.grid_argmin = best_x;
  cert.certified_lower_bound = best - L * cert.spacing;
  cert.success = cert.certified_lower_bound > 0.0;
  return cert;
}

/// Certifies k(d) > 0 on [0,1] with L = 200 (the derivative bound rounded up)
/// and an m-point grid. Throws CertificationFailure when the certificate does
/// not close; that would indicate an implementation bug.
inline LipschitzCertificate verify_appendix(int grid_count = 8000) {
  double bound = k_derivative_bound();
  double L = std::max(200.0, std::ceil(bound));
  LipschitzCertificate cert = certify_nonnegative(k_of_d, 0.0, 1.0, L, grid_count);
  if (!cert.success)
    throw CertificationFailure("verify_appendix: certified lower bound not positive");
  if (std::abs(cert.grid_argmin - 0.0948007) > 2e-3)
    throw CertificationFailure("verify_appendix: grid argmin far from the expected minimiser");
  return cert;
}

struct PartitionProfile {
  double a12 = 0.0, a13 = 0.0, a23 = 0.0, d = 0.0;  // normalised part sizes

  // slack in a13(a13 + d) = y^2 + delta
  double delta(const CanonicalRep& rep) const { return a13 * (a13 + d) - rep.y * rep.y; }
};

/// The seven strict inequalities (5)-(11) of the easy-case system for a
/// partition profile against a canonical representation (alpha1 = x^2+y^2,
/// alpha2 = x^2+z^2, alpha3 = 1-x^2). Truth value per inequality.
inline std::array<bool, 7> easy_case_inequalities(const PartitionProfile& p,
                                                  const CanonicalRep& rep) {
  const double x = rep.x, y = rep.y, z = rep.z;
  const double a1 = x * x + y * y, a2 = x * x + z * z, a3 = 1.0 - x * x;
  const double s12 = p.a12 * p.a12, s13 = p.a13 * p.a13, s23 = p.a23 * p.a23;
  std::array<bool, 7> r{};
  r[0] = p.a12 * (p.a12 + p.d) > a1 + a2 - 1.0;
  r[1] = p.a13 * (p.a13 + p.d) > y * y;
  r[2] = p.a23 * (p.a23 + p.d) > z * z;
  r[3] = p.a12 * (p.a12 + p.d) + p.a13 * (p.a13 + p.d) + p.a23 * (p.a23 + p.d) >
         x * x + y * y + z * z;
  r[4] = s12 + 2.0 * s13 + 2.0 * s23 + 2.0 * p.a13 * p.d + 2.0 * p.a23 * p.d >
         x * x + 2.0 * y * y + 2.0 * z * z;
  r[5] = 2.0 * s12 + s13 + 2.0 * s23 + 2.0 * p.a12 * p.d + 2.0 * p.a23 * p.d >
         2.0 * a1 + 3.0 * a2 + 2.0 * a3 - 3.0;
  r[6] = 2.0 * s12 + 2.0 * s13 + s23 + 2.0 * p.a12 * p.d + 2.0 * p.a13 * p.d >
         3.0 * a1 + 2.0 * a2 + 2.0 * a3 - 3.0;
  return r;
}

/// Grid search (step-spaced, with local refinement around the least-infeasible
/// points) for a profile with a12+a13+a23+d <= sum_bound satisfying all seven
/// inequalities. For a good pair and sum_bound 1 this is expected to come back
/// empty, matching the analytic infeasibility result; a returned profile is a
/// numeric counterexample. `relax_a23` turns inequality (7) non-strict.
inline std::optional<PartitionProfile> lemma28_search(double a1, double a2, double step,
                                                      double sum_bound = 1.0,
                                                      bool relax_a23 = false) {
  auto [good, rep] = is_good_pair(a1, a2);
  if (!good) throw std::domain_error("lemma28_search: not a good pair");
  if (!(step > 0.0)) throw std::invalid_argument("lemma28_search: step must be positive");
  const double x = rep->x, y = rep->y, z = rep->z;
  const double aa1 = x * x + y * y, aa2 = x * x + z * z, aa3 = 1.0 - x * x;
  const double rhs0 = aa1 + aa2 - 1.0;
  const double rhs1 = y * y;
  const double rhs2 = z * z;
  const double rhs3 = x * x + y * y + z * z;
  const double rhs4 = x * x + 2.0 * y * y + 2.0 * z * z;
  const double rhs5 = 2.0 * aa1 + 3.0 * aa2 + 2.0 * aa3 - 3.0;
  const double rhs6 = 3.0 * aa1 + 2.0 * aa2 + 2.0 * aa3 - 3.0;

  // worst violation across the seven; > 0 means feasible
  auto slack = [&](double v12, double v13, double v23, double d) {
    double s = v12 * (v12 + d) - rhs0;
    s = std::min(s, v13 * (v13 + d) - rhs1);
    double t2 = v23 * (v23 + d) - rhs2;
    if (relax_a23 && t2 == 0.0) t2 = std::numeric_limits<double>::min();
    s = std::min(s, t2);
    s = std::min(s, v12 * (v12 + d) + v13 * (v13 + d) + v23 * (v23 + d) - rhs3);
    s = std::min(s, v12 * v12 + 2.0 * v13 * v13 + 2.0 * v23 * v23 + 2.0 * v13 * d +
                        2.0 * v23 * d - rhs4);
    s = std::min(s, 2.0 * v12 * v12 + v13 * v13 + 2.0 * v23 * v23 + 2.0 * v12 * d +
                        2.0 * v23 * d - rhs5);
    s = std::min(s, 2.0 * v12 * v12 + 2.0 * v13 * v13 + v23 * v23 + 2.0 * v12 * d +
                        2.0 * v13 * d - rhs6);
    return s;
  };

  const int steps = static_cast<int>(std::floor(sum_bound / step + 1e-9));
  struct Candidate {
    double slack;
    PartitionProfile p;
  };
  std::vector<Candidate> near;
  const std::size_t kKeep = 8;
  for (int i = 0; i <= steps; ++i) {
    double v12 = i * step;
    for (int j = 0; i + j <= steps; ++j) {
      double v13 = j * step;
      for (int k = 0; i + j + k <= steps; ++k) {
        double v23 = k * step;
        for (int l = 0; i + j + k + l <= steps; ++l) {
          double d = l * step;
          double s = slack(v12, v13, v23, d);
          if (s > 0.0) return PartitionProfile{v12, v13, v23, d};
          if (near.size() < kKeep || s > near.back().slack) {
            near.push_back({s, {v12, v13, v23, d}});
            std::sort(near.begin(), near.end(),
                      [](const Candidate& a, const Candidate& b) { return a.slack > b.slack; });
            if (near.size() > kKeep) near.pop_back();
          }
        }
      }
    }
  }
  // refine around the least-infeasible grid points
  const double fine = step / 10.0;
  for (const Candidate& c : near) {
    for (int i = -10; i <= 10; ++i)
      for (int j = -10; j <= 10; ++j)
        for (int k = -10; k <= 10; ++k)
          for (int l = -10; l <= 10; ++l) {
            double v12 = c.p.a12 + i * fine, v13 = c.p.a13 + j * fine;
            double v23 = c.p.a23 + k * fine, d = c.p.d + l * fine;
            if (v12 < 0 || v13 < 0 || v23 < 0 || d < 0) continue;
            if (v12 + v13 + v23 + d > sum_bound + 1e-12) continue;
            if (slack(v12, v13, v23, d) > 0.0) return PartitionProfile{v12, v13, v23, d};
          }
  }
  return std::nullopt;
}

struct SumOfSquaresResult {
  std::array<double, 3> argmax;
  double value = 0.0;
};

/// Maximum of a^2+b^2+c^2 subject to a+b+c = s, a >= b >= c, b >= b0, c >= c0:
/// attained at (s-b0-c0, b0, c0). The claim is re-checked against a 10^6-point
/// grid of feasible triples.
inline SumOfSquaresResult prop_sum_of_squares(double b0, double c0, double s) {
  if (!(0.0 <= c0 && c0 <= b0 && 2.0 * b0 + c0 <= s + 1e-12))
    throw std::invalid_argument("prop_sum_of_squares: need 0 <= c0 <= b0 and 2 b0 + c0 <= s");
  SumOfSquaresResult res;
  res.argmax = {s - b0 - c0, b0, c0};
  res.value = res.argmax[0] * res.argmax[0] + res.argmax[1] * res.argmax[1] +
              res.argmax[2] * res.argmax[2];
  const int grid = 1000;
  for (int i = 0; i <= grid; ++i) {
    double b = b0 + (s - b0) * i / grid;
    for (int j = 0; j <= grid; ++j) {
      double c = c0 + (b - c0) * j / grid;
      double a = s - b - c;
      if (a < b - 1e-12) continue;
      double v = a * a + b * b + c * c;
      if (v > res.value + 1e-9)
        throw std::logic_error("prop_sum_of_squares: grid point beats the claimed maximum");
    }
  }
  return res;
}

}  // namespace gallai
