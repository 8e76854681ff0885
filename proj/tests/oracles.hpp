#pragma once

// Reference computations for the tests. Nothing here calls into the library
// paths being checked: permutations are raw 0-based vectors, isomorphism is
// an exhaustive conjugation search, derivatives are finite differences.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <random>
#include <vector>

namespace oracle {

using Raw = std::vector<int>;  // 0-based image table
using cplx = std::complex<double>;

inline Raw then(const Raw& p, const Raw& q) {  // x -> q(p(x))
  Raw r(p.size());
  for (std::size_t x = 0; x < p.size(); ++x) r[x] = q[static_cast<std::size_t>(p[x])];
  return r;
}

inline Raw inv(const Raw& p) {
  Raw r(p.size());
  for (std::size_t x = 0; x < p.size(); ++x) r[static_cast<std::size_t>(p[x])] = static_cast<int>(x);
  return r;
}

inline bool connected(const Raw& s, const Raw& a) {
  std::vector<int> parent(s.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)];
    return x;
  };
  for (std::size_t x = 0; x < s.size(); ++x) {
    parent[static_cast<std::size_t>(find(static_cast<int>(x)))] = find(s[x]);
    parent[static_cast<std::size_t>(find(static_cast<int>(x)))] = find(a[x]);
  }
  for (std::size_t x = 0; x < s.size(); ++x)
    if (find(static_cast<int>(x)) != find(0)) return false;
  return true;
}

inline int cycle_count(const Raw& p) {
  std::vector<bool> seen(p.size(), false);
  int c = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i]) continue;
    ++c;
    for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(p[j])) seen[j] = true;
  }
  return c;
}

inline std::vector<Raw> all_perms(int n) {
  std::vector<Raw> out;
  Raw p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

/// Exists tau with tau^-1 s1 tau = s2 and tau^-1 a1 tau = a2.
inline bool conjugate(const std::pair<Raw, Raw>& x, const std::pair<Raw, Raw>& y, const std::vector<Raw>& group) {
  for (const Raw& t : group) {
    const Raw ti = inv(t);
    if (then(then(ti, x.first), t) == y.first && then(then(ti, x.second), t) == y.second) return true;
  }
  return false;
}

/// One representative per isomorphism class of transitive pairs on n labels,
/// by pairwise conjugation search; no canonical forms involved.
inline std::vector<std::pair<Raw, Raw>> brute_force_classes(int n) {
  const auto sn = all_perms(n);
  std::vector<std::pair<Raw, Raw>> reps;
  for (const Raw& s : sn)
    for (const Raw& a : sn) {
      if (!connected(s, a)) continue;
      const std::pair<Raw, Raw> cand{s, a};
      bool known = false;
      for (const auto& r : reps)
        if (conjugate(cand, r, sn)) {
          known = true;
          break;
        }
      if (!known) reps.push_back(cand);
    }
  return reps;
}

inline Raw random_perm(int n, std::mt19937_64& rng) {
  Raw p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

/// Central second-order finite differences of the inverse branch of f through
/// y0 (f(y0) = x0), obtained by Newton-solving f(y) = x0 +- h.
template <class F, class DF>
inline std::pair<cplx, cplx> inverse_branch_fd(F f, DF df, cplx y0, double h = 1e-4) {
  const cplx x0 = f(y0);
  auto solve = [&](cplx x) {
    cplx y = y0;
    for (int i = 0; i < 60; ++i) y -= (f(y) - x) / df(y);
    return y;
  };
  const cplx yp = solve(x0 + h), ym = solve(x0 - h);
  return {(yp - ym) / (2.0 * h), (yp - 2.0 * y0 + ym) / (h * h)};
}

/// Rotation at the vertices lying over `value` (0 or 1), read off the picture:
/// each fibre point over 1/2 is followed along the preimage of the segment
/// towards `value`, and edges ending at the same vertex (nearest entry of
/// `vertices`) are ordered counterclockwise by arrival angle.
template <class F, class DF>
inline Raw rotation_from_geometry(F f, DF df, const std::vector<cplx>& fibre, double value,
                                  const std::vector<cplx>& vertices, double eps = 1e-4, int steps = 600) {
  const std::size_t n = fibre.size();
  std::vector<cplx> end(n);
  std::vector<std::size_t> at(n);
  for (std::size_t k = 0; k < n; ++k) {
    cplx z = fibre[k];
    for (int j = 1; j <= steps; ++j) {
      const double d = 0.5 * std::pow(eps / 0.5, static_cast<double>(j) / steps);  // distance to value
      const double x = value == 0.0 ? d : 1.0 - d;
      for (int i = 0; i < 30; ++i) z -= (f(z) - x) / df(z);
    }
    end[k] = z;
    std::size_t best = 0;
    for (std::size_t v = 1; v < vertices.size(); ++v)
      if (std::abs(z - vertices[v]) < std::abs(z - vertices[best])) best = v;
    at[k] = best;
  }
  Raw img(n);
  const double two_pi = 2.0 * std::acos(-1.0);
  for (std::size_t k = 0; k < n; ++k) {
    const double ak = std::arg(end[k] - vertices[at[k]]);
    double best_gap = two_pi + 1.0;
    img[k] = static_cast<int>(k);
    for (std::size_t j = 0; j < n; ++j) {
      if (j == k || at[j] != at[k]) continue;
      double gap = std::arg(end[j] - vertices[at[j]]) - ak;
      while (gap <= 0) gap += two_pi;
      if (gap < best_gap) {
        best_gap = gap;
        img[k] = static_cast<int>(j);
      }
    }
  }
  return img;
}

}  // namespace oracle
