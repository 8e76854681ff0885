#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "dessin/error.hpp"
#include "dessin/hypermap.hpp"
#include "dessin/monodromy.hpp"
#include "dessin/poly.hpp"
#include "dessin/shabat.hpp"

namespace dessin {

/// Discrete Riemann-Hilbert data over the sphere minus {0, 1, infinity}: the
/// images of the two free generators (loops around 0 and 1) acting
/// transitively on the edge set {1..edge_count}.
struct RHInstance {
  int edge_count;
  Permutation sigma;
  Permutation alpha;

  /// The fixed singular locus {0, 1, infinity}; infinity is not listed.
  static std::vector<cplx> finite_singular_points() { return {0.0, 1.0}; }

  Hypermap to_hypermap() const { return Hypermap::from_pair(edge_count, sigma, alpha); }
};

inline RHInstance rh_instance(const Hypermap& h) { return {h.n(), h.sigma(), h.alpha()}; }

/// q2 y'' + q1 y' + q0 y = 0 with exact rational polynomial coefficients.
struct ODESpec {
  int order;
  RationalPoly q2, q1, q0;
  Family family;
  int n;
};

/// The explicit ODE solved by the inverse branches of the family's Belyi
/// polynomial (see family_polynomial):
///   star      x y' - (1/n) y = 0
///   two_star  x(1-x) y'' + ((1/n - 3/2) x + 1/2) y' + (1/(4n))(1 - 1/n) y = 0
///   chain     x(1-x) y'' + (1/2 - x) y' + (1/n^2) y = 0
/// The star equation is y' - y/(n x) = 0 multiplied through by x. The chain
/// equation is read in the variable of (1 + T_n)/2, whose inverse branches
/// are cos(arccos(2x - 1)/n).
inline ODESpec ode_for_family(Family f, int n) {
  if (n < 1) throw Error(ErrorKind::invalid_size, "family parameter must be >= 1");
  const Rational inv_n{1, n};
  switch (f) {
    case Family::star:
      return {1, {}, {0, 1}, {-inv_n}, f, n};
    case Family::two_star:
      return {2, {0, 1, -1}, {Rational{1, 2}, inv_n - Rational{3, 2}}, {Rational{1, 4 * n} * (Rational{1} - inv_n)}, f,
              n};
    case Family::chain:
      return {2, {0, 1, -1}, {Rational{1, 2}, -1}, {Rational{1, static_cast<std::int64_t>(n) * n}}, f, n};
  }
  throw Error(ErrorKind::precondition, "unknown family");
}

/// Belyi polynomial whose inverse branches solve ode.
inline ShabatPolynomial paired_polynomial(const ODESpec& ode) { return family_polynomial(ode.family, ode.n); }

struct BranchDerivatives {
  cplx first;
  cplx second;
};

/// Derivatives of the local inverse of p through y, i.e. of the branch with
/// p(branch(x)) = x at x = p(y): y' = 1/p'(y), y'' = -p''(y)/p'(y)^3.
inline BranchDerivatives branch_derivatives(const Poly& p, cplx y, double tol = 1e-12) {
  const Poly d1 = derivative(p);
  const cplx p1 = d1(y);
  if (std::abs(p1) <= tol * std::max(1.0, d1.magnitude_at(y)))
    throw NumericError(ErrorKind::branch_singularity, "y is a critical point of p; the inverse branch is singular",
                       std::abs(p1));
  const cplx p2 = derivative(d1)(y);
  return {1.0 / p1, -p2 / (p1 * p1 * p1)};
}

/// q2(x) y'' + q1(x) y' + q0(x) y along the inverse branch of p through y,
/// where x = p(y).
inline cplx residual(const ODESpec& ode, const Poly& p, cplx x, cplx y) {
  if (std::abs(p(y) - x) > 1e-10 * std::max(1.0, p.magnitude_at(y)))
    throw Error(ErrorKind::precondition, "residual needs p(y) = x");
  const BranchDerivatives d = branch_derivatives(p, y);
  return ode.q2.to_poly()(x) * d.second + ode.q1.to_poly()(x) * d.first + ode.q0.to_poly()(x) * y;
}

/// Parameters (a, b, c) of z(1-z) y'' + [c - (a+b+1) z] y' - ab y = 0.
struct HypergeometricParams {
  cplx a, b, c;
};

/// Matches an order-2 ODESpec against the hypergeometric template; nullopt if
/// q2 is not a multiple of x(1-x) or q1, q0 have too high a degree.
inline std::optional<HypergeometricParams> hypergeometric_params(const ODESpec& ode) {
  if (ode.order != 2 || ode.q2.degree() != 2) return std::nullopt;
  const Rational k = ode.q2.coeff(1);
  if (k == Rational{} || ode.q2.coeff(0) != Rational{} || ode.q2.coeff(2) != -k) return std::nullopt;
  if (ode.q1.degree() > 1 || ode.q0.degree() > 0) return std::nullopt;
  const Rational c = ode.q1.coeff(0) / k;
  const Rational sum = -(ode.q1.coeff(1) / k) - Rational{1};  // a + b
  const Rational prod = -(ode.q0.coeff(0) / k);               // a b
  const double s = sum.to_double(), p = prod.to_double();
  const cplx disc = std::sqrt(cplx{s * s - 4.0 * p});
  return HypergeometricParams{(s + disc) / 2.0, (s - disc) / 2.0, c.to_double()};
}

/// True when the ODE has order <= 2, polynomial coefficients of degree <= 2,
/// and its finite singular points (roots of the leading coefficient) lie in
/// {0, 1}; order-2 equations must additionally match the hypergeometric
/// template.
inline bool matches_template(const ODESpec& ode) {
  if (ode.order < 1 || ode.order > 2) return false;
  if (ode.q2.degree() > 2 || ode.q1.degree() > 2 || ode.q0.degree() > 2) return false;
  if (ode.order == 1) {
    // leading coefficient q1 must be a nonzero multiple of x
    return ode.q2.is_zero() && ode.q1.degree() == 1 && ode.q1.coeff(0) == Rational{};
  }
  return hypergeometric_params(ode).has_value();
}

struct VerifyConfig {
  std::uint64_t seed = 7;
  double sample_radius = 2.0;
  double singular_guard = 0.05;
  /// Pass thresholds: order-1 and order-2 equations.
  double threshold_order1 = 1e-10;
  double threshold_order2 = 1e-8;
};

struct VerificationReport {
  Family family;
  int n;
  int samples;
  int degree;
  std::vector<cplx> points;
  std::vector<double> branch_max;  // max |residual| per branch index over samples
  double max_residual = 0.0;
  double threshold = 0.0;
  bool template_ok = false;
  bool pass = false;
  std::string failure;  // first error encountered, if any
};

/// Samples points in the disc of radius cfg.sample_radius outside guard
/// discs around 0 and 1, computes every inverse branch there via fiber(),
/// and records the residual of the family ODE on each. Failures land in the
/// report rather than being thrown.
inline VerificationReport verify_family(Family f, int n, int samples, const VerifyConfig& cfg = {}) {
  VerificationReport rep{f, n, samples, 0, {}, {}, 0.0, 0.0, false, false, {}};
  try {
    const ODESpec ode = ode_for_family(f, n);
    const ShabatPolynomial sp = paired_polynomial(ode);
    rep.degree = sp.degree();
    rep.threshold = ode.order == 1 ? cfg.threshold_order1 : cfg.threshold_order2;
    rep.template_ok = matches_template(ode);
    rep.branch_max.assign(static_cast<std::size_t>(rep.degree), 0.0);

    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> unif(-cfg.sample_radius, cfg.sample_radius);
    while (static_cast<int>(rep.points.size()) < samples) {
      const cplx x{unif(rng), unif(rng)};
      if (std::abs(x) > cfg.sample_radius) continue;
      if (std::abs(x) < cfg.singular_guard || std::abs(x - 1.0) < cfg.singular_guard) continue;
      rep.points.push_back(x);
    }
    for (const cplx x : rep.points) {
      const std::vector<cplx> branches = fiber(sp.poly, x);
      for (std::size_t k = 0; k < branches.size(); ++k) {
        const double r = std::abs(residual(ode, sp.poly, x, branches[k]));
        rep.branch_max[k] = std::max(rep.branch_max[k], r);
        rep.max_residual = std::max(rep.max_residual, r);
      }
    }
    rep.pass = rep.template_ok && rep.max_residual <= rep.threshold;
  } catch (const Error& e) {
    rep.failure = std::string(to_string(e.kind())) + ": " + e.what();
    rep.pass = false;
  }
  return rep;
}

}  // namespace dessin
