#pragma once

#include <cmath>
#include <numbers>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dessin/error.hpp"
#include "dessin/hypermap.hpp"
#include "dessin/poly.hpp"

namespace dessin {

struct RootMult {
  cplx root;
  int multiplicity;
};

/// A polynomial with critical values in {y0, y1} together with its factored
/// fibres: P - y0 vanishes on the black roots, P - y1 on the white roots.
struct ShabatPolynomial {
  Poly poly;
  std::pair<cplx, cplx> critical_values{0.0, 1.0};
  std::vector<RootMult> black_roots;
  std::vector<RootMult> white_roots;

  int degree() const { return poly.degree(); }
};

enum class Family { star, two_star, chain };

inline std::string_view to_string(Family f) {
  switch (f) {
    case Family::star: return "star";
    case Family::two_star: return "two_star";
    case Family::chain: return "chain";
  }
  return "?";
}

inline Family parse_family(std::string_view s) {
  if (s == "star") return Family::star;
  if (s == "two_star" || s == "two-star" || s == "2-star" || s == "2star") return Family::two_star;
  if (s == "chain" || s == "chebyshev") return Family::chain;
  throw Error(ErrorKind::parse, "unknown family '" + std::string(s) + "' (expected star, two_star or chain)");
}

/// Combinatorial hypermap of a family member: star(n), two_star(n) (2n
/// edges) or chain(n).
inline Hypermap family_hypermap(Family f, int n) {
  switch (f) {
    case Family::star: return star(n);
    case Family::two_star: return two_star(n);
    case Family::chain: return chain(n);
  }
  throw Error(ErrorKind::precondition, "unknown family");
}

/// Closed-form Belyi polynomial with critical values {0, 1}:
///   star      z^n
///   two_star  (z^n - 1)^2
///   chain     (1 + T_n(z)) / 2
inline ShabatPolynomial family_polynomial(Family f, int n) {
  if (n < 1) throw Error(ErrorKind::invalid_size, "family parameter must be >= 1");
  using std::numbers::pi;
  ShabatPolynomial sp;
  auto unit_root = [n](int k, double radius = 1.0) { return std::polar(radius, 2.0 * pi * k / n); };
  switch (f) {
    case Family::star:
      sp.poly = Poly::monomial(n);
      sp.black_roots.push_back({0.0, n});
      for (int k = 0; k < n; ++k) sp.white_roots.push_back({unit_root(k), 1});
      break;
    case Family::two_star: {
      const Poly inner = Poly::monomial(n) + cplx{-1.0};
      sp.poly = inner * inner;
      for (int k = 0; k < n; ++k) sp.black_roots.push_back({unit_root(k), 2});
      // P = 1  <=>  z^n = 0 or z^n = 2
      sp.white_roots.push_back({0.0, n});
      for (int k = 0; k < n; ++k) sp.white_roots.push_back({unit_root(k, std::pow(2.0, 1.0 / n)), 1});
      break;
    }
    case Family::chain: {
      sp.poly = cplx{0.5} * (chebyshev(n) + cplx{1.0});
      // T_n(cos(j pi / n)) = (-1)^j; interior extrema are double roots.
      for (int j = 0; j <= n; ++j) {
        const cplx z = std::cos(pi * j / n);
        const int mult = (j == 0 || j == n) ? 1 : 2;
        (j % 2 == 1 ? sp.black_roots : sp.white_roots).push_back({z, mult});
      }
      break;
    }
  }
  return sp;
}

/// Checks the factored data against the polynomial: multiplicities sum to
/// the degree on both sides and every root lies on its fibre within tol
/// (relative to the evaluation scale).
inline double shabat_fibre_residual(const ShabatPolynomial& sp) {
  double worst = 0.0;
  for (const auto& [r, m] : sp.black_roots)
    worst = std::max(worst, std::abs(sp.poly(r) - sp.critical_values.first) / std::max(1.0, sp.poly.magnitude_at(r)));
  for (const auto& [r, m] : sp.white_roots)
    worst = std::max(worst, std::abs(sp.poly(r) - sp.critical_values.second) / std::max(1.0, sp.poly.magnitude_at(r)));
  return worst;
}

inline bool multiplicities_consistent(const ShabatPolynomial& sp) {
  int b = 0, w = 0;
  for (const auto& r : sp.black_roots) b += r.multiplicity;
  for (const auto& r : sp.white_roots) w += r.multiplicity;
  return b == sp.degree() && w == sp.degree();
}

}  // namespace dessin
