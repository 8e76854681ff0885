#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "dessin/error.hpp"

namespace dessin {

using cplx = std::complex<double>;

/// Polynomial with complex coefficients in ascending degree. Trailing exact
/// zeros are trimmed, so the leading coefficient is nonzero; the zero
/// polynomial has no coefficients and degree -1.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<cplx> coeffs) : c_(std::move(coeffs)) { trim(); }
  Poly(std::initializer_list<cplx> coeffs) : c_(coeffs) { trim(); }

  static Poly monomial(int degree, cplx coeff = 1.0) {
    std::vector<cplx> c(static_cast<std::size_t>(degree) + 1, 0.0);
    c.back() = coeff;
    return Poly(std::move(c));
  }

  /// coeff * prod (z - root)^mult
  static Poly from_roots(const std::vector<std::pair<cplx, int>>& roots, cplx coeff = 1.0) {
    std::vector<cplx> c{coeff};
    for (const auto& [r, m] : roots) {
      for (int k = 0; k < m; ++k) {
        c.push_back(0.0);
        for (std::size_t i = c.size() - 1; i > 0; --i) c[i] = c[i - 1] - r * c[i];
        c[0] = -r * c[0];
      }
    }
    return Poly(std::move(c));
  }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<cplx>& coeffs() const { return c_; }
  cplx coeff(int k) const { return k >= 0 && k <= degree() ? c_[static_cast<std::size_t>(k)] : cplx{}; }
  cplx leading() const { return c_.empty() ? cplx{} : c_.back(); }

  cplx operator()(cplx z) const {
    cplx acc = 0.0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + *it;
    return acc;
  }

  /// Sum of |a_k| |z|^k: the natural scale for rounding error in p(z).
  double magnitude_at(cplx z) const {
    double acc = 0.0;
    const double r = std::abs(z);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * r + std::abs(*it);
    return acc;
  }

  friend Poly operator+(const Poly& a, const Poly& b) {
    std::vector<cplx> c(std::max(a.c_.size(), b.c_.size()), 0.0);
    for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
    return Poly(std::move(c));
  }
  friend Poly operator-(const Poly& a, const Poly& b) { return a + (-1.0) * b; }
  friend Poly operator*(cplx s, const Poly& p) {
    std::vector<cplx> c = p.c_;
    for (auto& x : c) x *= s;
    return Poly(std::move(c));
  }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<cplx> c(a.c_.size() + b.c_.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return Poly(std::move(c));
  }
  friend Poly operator+(const Poly& p, cplx s) { return p + Poly{s}; }

  bool operator==(const Poly&) const = default;

 private:
  void trim() {
    while (!c_.empty() && c_.back() == cplx{}) c_.pop_back();
  }
  std::vector<cplx> c_;
};

inline cplx evaluate(const Poly& p, cplx z) { return p(z); }

inline Poly derivative(const Poly& p) {
  if (p.degree() < 1) return {};
  std::vector<cplx> c(static_cast<std::size_t>(p.degree()));
  for (int k = 1; k <= p.degree(); ++k) c[static_cast<std::size_t>(k - 1)] = static_cast<double>(k) * p.coeff(k);
  return Poly(std::move(c));
}

inline Poly derivative(const Poly& p, int order) {
  Poly d = p;
  for (int i = 0; i < order; ++i) d = derivative(d);
  return d;
}

/// p(a z + b)
inline Poly compose_affine(const Poly& p, cplx a, cplx b) {
  const Poly lin{b, a};
  Poly acc;
  for (int k = p.degree(); k >= 0; --k) acc = acc * lin + p.coeff(k);
  return acc;
}

/// Roots of p from the eigenvalues of its companion matrix, each refined by
/// a few Newton steps when that lowers |p|.
inline std::vector<cplx> roots(const Poly& p) {
  const int d = p.degree();
  if (d < 1) return {};
  if (d == 1) return {-p.coeff(0) / p.coeff(1)};
  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(d, d);
  for (int i = 1; i < d; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < d; ++i) companion(i, d - 1) = -p.coeff(i) / p.leading();
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
  if (solver.info() != Eigen::Success)
    throw Error(ErrorKind::conditioning, "companion eigenvalue iteration did not converge");
  const Poly dp = derivative(p);
  std::vector<cplx> out;
  out.reserve(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) {
    cplx z = solver.eigenvalues()(i);
    for (int it = 0; it < 4; ++it) {
      const cplx fz = p(z), dfz = dp(z);
      if (dfz == cplx{}) break;
      const cplx next = z - fz / dfz;
      if (!(std::abs(p(next)) < std::abs(fz))) break;
      z = next;
    }
    out.push_back(z);
  }
  return out;
}

/// Integer-coefficient Chebyshev polynomial T_n via T_{k+1} = 2z T_k - T_{k-1}.
inline std::vector<std::int64_t> chebyshev_integer(int n) {
  if (n < 0) throw Error(ErrorKind::invalid_size, "Chebyshev index must be >= 0");
  std::vector<std::int64_t> prev{1}, cur{0, 1};
  if (n == 0) return prev;
  for (int k = 1; k < n; ++k) {
    std::vector<std::int64_t> next(cur.size() + 1, 0);
    for (std::size_t i = 0; i < cur.size(); ++i) next[i + 1] += 2 * cur[i];
    for (std::size_t i = 0; i < prev.size(); ++i) next[i] -= prev[i];
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

inline Poly chebyshev(int n) {
  if (n < 1) throw Error(ErrorKind::invalid_size, "chebyshev(n) needs n >= 1");
  std::vector<cplx> c;
  for (auto v : chebyshev_integer(n)) c.emplace_back(static_cast<double>(v), 0.0);
  return Poly(std::move(c));
}

// ---------------------------------------------------------------------------
// Critical points and values

struct CriticalPoint {
  cplx z;
  int multiplicity;  // m >= 2: p' ... p^(m-1) vanish at z
  cplx value;
};

struct CriticalData {
  std::vector<CriticalPoint> points;
  std::vector<cplx> values;  // distinct, sorted by (real, imag)
};

namespace detail {

inline bool lex_less(cplx a, cplx b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

inline std::size_t uf_find(std::vector<std::size_t>& parent, std::size_t i) {
  while (parent[i] != i) i = parent[i] = parent[parent[i]];
  return i;
}

}  // namespace detail

/// Critical points of p (roots of p' clustered within tol) and the distinct
/// critical values. Roots of p' of high multiplicity scatter well beyond tol
/// in floating point, so clusters whose critical values agree within tol are
/// merged when they lie within 10*sqrt(tol) of each other. Distinct points
/// or values separated by less than 10*tol are reported as an ambiguity.
inline CriticalData critical_data(const Poly& p, double tol = 1e-6) {
  if (!(tol > 0)) throw Error(ErrorKind::precondition, "critical_data tolerance must be positive");
  if (p.degree() < 1) throw Error(ErrorKind::precondition, "critical_data needs degree >= 1");
  CriticalData out;
  const std::vector<cplx> zs = roots(derivative(p));
  const std::size_t m = zs.size();
  if (m == 0) return out;

  std::vector<std::size_t> parent(m);
  std::iota(parent.begin(), parent.end(), 0);
  auto unite = [&](std::size_t i, std::size_t j) { parent[detail::uf_find(parent, i)] = detail::uf_find(parent, j); };
  auto value_scale = [](cplx v) { return std::max(1.0, std::abs(v)); };

  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      if (std::abs(zs[i] - zs[j]) <= tol) unite(i, j);

  const double merge_radius = 10.0 * std::sqrt(tol);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) {
      if (detail::uf_find(parent, i) == detail::uf_find(parent, j)) continue;
      const cplx vi = p(zs[i]), vj = p(zs[j]);
      if (std::abs(zs[i] - zs[j]) <= merge_radius && std::abs(vi - vj) <= tol * value_scale(vi)) unite(i, j);
    }

  std::vector<std::size_t> root_ids;
  for (std::size_t i = 0; i < m; ++i) root_ids.push_back(detail::uf_find(parent, i));
  std::vector<std::size_t> reps = root_ids;
  std::sort(reps.begin(), reps.end());
  reps.erase(std::unique(reps.begin(), reps.end()), reps.end());
  for (std::size_t r : reps) {
    cplx sum = 0.0;
    int count = 0;
    for (std::size_t i = 0; i < m; ++i)
      if (root_ids[i] == r) {
        sum += zs[i];
        ++count;
      }
    const cplx z = sum / static_cast<double>(count);
    out.points.push_back({z, count + 1, p(z)});
  }
  std::sort(out.points.begin(), out.points.end(),
            [](const CriticalPoint& a, const CriticalPoint& b) { return detail::lex_less(a.z, b.z); });

  for (std::size_t i = 0; i < out.points.size(); ++i)
    for (std::size_t j = i + 1; j < out.points.size(); ++j) {
      const double gap = std::abs(out.points[i].z - out.points[j].z);
      if (gap <= 10.0 * tol)
        throw NumericError(ErrorKind::ambiguity, "critical points straddle the clustering tolerance (gap " +
                                                     std::to_string(gap) + ")",
                           gap);
    }

  for (const auto& cp : out.points) {
    bool found = false;
    for (const cplx v : out.values) {
      const double gap = std::abs(v - cp.value);
      if (gap <= tol * value_scale(v)) {
        found = true;
        break;
      }
      if (gap <= 10.0 * tol * value_scale(v))
        throw NumericError(ErrorKind::ambiguity, "critical values straddle the clustering tolerance (gap " +
                                                     std::to_string(gap) + ")",
                           gap);
    }
    if (!found) out.values.push_back(cp.value);
  }
  std::sort(out.values.begin(), out.values.end(), detail::lex_less);
  return out;
}

// ---------------------------------------------------------------------------
// Affine equivalence Q(z) = A P(a z + b) + B

struct AffineEquivalence {
  cplx A{1.0};
  cplx B{0.0};
  cplx a{1.0};
  cplx b{0.0};
};

inline void validate(const AffineEquivalence& e) {
  if (e.A == cplx{} || e.a == cplx{})
    throw Error(ErrorKind::precondition, "affine equivalence needs A != 0 and a != 0");
}

inline Poly apply_equivalence(const Poly& p, const AffineEquivalence& e) {
  validate(e);
  return e.A * compose_affine(p, e.a, e.b) + e.B;
}

/// The transform undoing e: apply_equivalence(apply_equivalence(p, e), inverse(e)) == p.
inline AffineEquivalence inverse(const AffineEquivalence& e) {
  validate(e);
  return {1.0 / e.A, -e.B / e.A, 1.0 / e.a, -e.b / e.a};
}

/// Image of a critical value under e.
inline cplx transform_value(const AffineEquivalence& e, cplx y) { return e.A * y + e.B; }

/// The equivalence with a = 1, b = 0 mapping critical values (y0, y1) to (0, 1).
inline AffineEquivalence normalizing_equivalence(cplx y0, cplx y1) {
  if (y0 == y1) throw Error(ErrorKind::precondition, "critical values must be distinct to normalize");
  const cplx A = 1.0 / (y1 - y0);
  return {A, -A * y0, 1.0, 0.0};
}

// ---------------------------------------------------------------------------
// Exact rationals for ODE coefficients

class Rational {
 public:
  constexpr Rational(std::int64_t num = 0, std::int64_t den = 1) : num_(num), den_(den) {
    if (den_ == 0) throw Error(ErrorKind::precondition, "zero denominator");
    normalize();
  }

  constexpr std::int64_t num() const { return num_; }
  constexpr std::int64_t den() const { return den_; }
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  std::string to_string() const {
    return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
  }

  friend constexpr Rational operator+(Rational a, Rational b) {
    return {a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_};
  }
  friend constexpr Rational operator-(Rational a, Rational b) {
    return {a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_};
  }
  friend constexpr Rational operator*(Rational a, Rational b) { return {a.num_ * b.num_, a.den_ * b.den_}; }
  friend constexpr Rational operator/(Rational a, Rational b) {
    if (b.num_ == 0) throw Error(ErrorKind::precondition, "division by zero rational");
    return {a.num_ * b.den_, a.den_ * b.num_};
  }
  constexpr Rational operator-() const { return {-num_, den_}; }
  constexpr bool operator==(const Rational&) const = default;

 private:
  constexpr void normalize() {
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    const std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
  }

  std::int64_t num_;
  std::int64_t den_;
};

/// Polynomial with exact rational coefficients, ascending degree, trimmed.
struct RationalPoly {
  std::vector<Rational> coeffs;

  RationalPoly() = default;
  RationalPoly(std::initializer_list<Rational> c) : coeffs(c) { trim(); }
  explicit RationalPoly(std::vector<Rational> c) : coeffs(std::move(c)) { trim(); }

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  bool is_zero() const { return coeffs.empty(); }
  Rational coeff(int k) const { return k >= 0 && k <= degree() ? coeffs[static_cast<std::size_t>(k)] : Rational{}; }

  Poly to_poly() const {
    std::vector<cplx> c;
    for (const auto& r : coeffs) c.emplace_back(r.to_double(), 0.0);
    return Poly(std::move(c));
  }

  bool operator==(const RationalPoly&) const = default;

 private:
  void trim() {
    while (!coeffs.empty() && coeffs.back() == Rational{}) coeffs.pop_back();
  }
};

}  // namespace dessin
