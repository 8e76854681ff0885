#pragma once

#include <algorithm>
#include <compare>
#include <set>
#include <string>
#include <vector>

#include "dessin/error.hpp"
#include "dessin/perm.hpp"

namespace dessin {

/// A connected bipartite map on an oriented surface, stored as the rotation
/// permutations of its black (sigma) and white (alpha) vertices acting on
/// half-edge labels {1..n}. The face permutation phi is derived so that
/// sigma * alpha * phi = identity (left-to-right).
class Hypermap {
 public:
  /// Validating constructor: rejects size mismatches and disconnected pairs.
  static Hypermap from_pair(int n, Permutation sigma, Permutation alpha) {
    if (n < 1) throw Error(ErrorKind::invalid_size, "hypermap needs at least one half-edge");
    if (sigma.size() != n || alpha.size() != n)
      throw Error(ErrorKind::degree_mismatch, "sigma and alpha must both act on " + std::to_string(n) + " labels");
    if (!is_transitive({sigma, alpha}, n))
      throw Error(ErrorKind::disconnected, "<sigma, alpha> is not transitive: the dessin would be disconnected");
    Permutation phi = inverse(compose(sigma, alpha));
    return Hypermap(n, std::move(sigma), std::move(alpha), std::move(phi));
  }

  int n() const { return n_; }
  const Permutation& sigma() const { return sigma_; }
  const Permutation& alpha() const { return alpha_; }
  const Permutation& phi() const { return phi_; }

  /// Ordering by (sigma table, alpha table); phi is determined by those.
  std::strong_ordering operator<=>(const Hypermap& o) const {
    if (auto c = n_ <=> o.n_; c != 0) return c;
    if (auto c = sigma_ <=> o.sigma_; c != 0) return c;
    return alpha_ <=> o.alpha_;
  }
  bool operator==(const Hypermap& o) const { return n_ == o.n_ && sigma_ == o.sigma_ && alpha_ == o.alpha_; }

 private:
  Hypermap(int n, Permutation s, Permutation a, Permutation f)
      : n_(n), sigma_(std::move(s)), alpha_(std::move(a)), phi_(std::move(f)) {}

  int n_;
  Permutation sigma_;
  Permutation alpha_;
  Permutation phi_;
};

/// Degree multisets (each sorted ascending) of black vertices, white
/// vertices and faces.
struct Passport {
  std::vector<int> black_degrees;
  std::vector<int> white_degrees;
  std::vector<int> face_degrees;

  bool operator==(const Passport&) const = default;
  auto operator<=>(const Passport&) const = default;
};

struct GenusReport {
  int black = 0;
  int white = 0;
  int faces = 0;
  int n = 0;
  int chi = 0;
  int genus = 0;
};

inline GenusReport genus(const Hypermap& h) {
  GenusReport r;
  r.black = static_cast<int>(h.sigma().cycles().count());
  r.white = static_cast<int>(h.alpha().cycles().count());
  r.faces = static_cast<int>(h.phi().cycles().count());
  r.n = h.n();
  r.chi = r.black + r.white + r.faces - r.n;
  if (r.chi > 2 || r.chi % 2 != 0)
    throw Error(ErrorKind::internal_inconsistency, "Euler characteristic " + std::to_string(r.chi) + " is not 2-2g");
  r.genus = (2 - r.chi) / 2;
  return r;
}

inline Passport passport(const Hypermap& h) {
  return {h.sigma().cycles().cycle_type(), h.alpha().cycles().cycle_type(), h.phi().cycles().cycle_type()};
}

/// Genus 0 with a single face, i.e. B + W = n + 1.
inline bool is_plane_tree(const Hypermap& h) {
  const GenusReport g = genus(h);
  return g.genus == 0 && g.faces == 1;
}

/// Simultaneous relabeling: half-edge x becomes tau(x).
inline Hypermap relabel(const Hypermap& h, const Permutation& tau) {
  return Hypermap::from_pair(h.n(), relabel(h.sigma(), tau), relabel(h.alpha(), tau));
}

namespace detail {

/// Breadth-first relabeling from `seed`, visiting sigma then alpha images.
/// Returns the relabeled (sigma, alpha) tables (0-based, concatenated).
inline std::vector<int> bfs_relabel_tables(const Hypermap& h, int seed) {
  const auto n = static_cast<std::size_t>(h.n());
  const auto s = h.sigma().table();
  const auto a = h.alpha().table();
  std::vector<int> fresh(n, -1);
  std::vector<int> order;
  order.reserve(n);
  fresh[static_cast<std::size_t>(seed)] = 0;
  order.push_back(seed);
  for (std::size_t head = 0; head < order.size(); ++head) {
    const auto x = static_cast<std::size_t>(order[head]);
    for (int y : {s[x], a[x]}) {
      if (fresh[static_cast<std::size_t>(y)] < 0) {
        fresh[static_cast<std::size_t>(y)] = static_cast<int>(order.size());
        order.push_back(y);
      }
    }
  }
  std::vector<int> out(2 * n);
  for (std::size_t x = 0; x < n; ++x) {
    const auto fx = static_cast<std::size_t>(fresh[x]);
    out[fx] = fresh[static_cast<std::size_t>(s[x])];
    out[n + fx] = fresh[static_cast<std::size_t>(a[x])];
  }
  return out;
}

}  // namespace detail

/// Canonical representative of the relabeling class: the lexicographically
/// smallest (sigma, alpha) table pair over breadth-first relabelings seeded
/// at every label.
inline Hypermap canonical_form(const Hypermap& h) {
  std::vector<int> best;
  for (int seed = 0; seed < h.n(); ++seed) {
    std::vector<int> cand = detail::bfs_relabel_tables(h, seed);
    if (best.empty() || cand < best) best = std::move(cand);
  }
  const auto n = static_cast<std::size_t>(h.n());
  std::vector<Label> s(n), a(n);
  for (std::size_t i = 0; i < n; ++i) {
    s[i] = best[i] + 1;
    a[i] = best[n + i] + 1;
  }
  return Hypermap::from_pair(h.n(), Permutation::from_images(s), Permutation::from_images(a));
}

inline bool is_isomorphic(const Hypermap& a, const Hypermap& b) {
  if (a.n() != b.n()) return false;
  if (passport(a) != passport(b)) return false;
  return canonical_form(a) == canonical_form(b);
}

/// Largest n accepted by enumerate().
inline constexpr int kEnumerationLimit = 7;
/// Above this n enumerate() still runs but callers should warn about time.
inline constexpr int kEnumerationFast = 6;

namespace detail {

inline void partitions(int n, int max_part, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (n == 0) {
    out.push_back(cur);
    return;
  }
  for (int k = std::min(n, max_part); k >= 1; --k) {
    cur.push_back(k);
    partitions(n - k, k, cur, out);
    cur.pop_back();
  }
}

}  // namespace detail

/// All isomorphism classes of hypermaps with n half-edges, as sorted
/// canonical forms. Sigma runs over one representative per cycle type,
/// alpha over the whole symmetric group.
inline std::vector<Hypermap> enumerate(int n) {
  if (n < 1) throw Error(ErrorKind::invalid_size, "enumerate needs n >= 1");
  if (n > kEnumerationLimit)
    throw Error(ErrorKind::limit_exceeded, "enumerate is limited to n <= " + std::to_string(kEnumerationLimit) +
                                               " (requested " + std::to_string(n) + ")");
  std::vector<std::vector<int>> types;
  std::vector<int> cur;
  detail::partitions(n, n, cur, types);

  std::set<Hypermap> classes;
  std::vector<Label> alpha_img(static_cast<std::size_t>(n));
  for (const auto& type : types) {
    std::vector<std::vector<Label>> cycles;
    Label next = 1;
    for (int len : type) {
      std::vector<Label> c;
      for (int k = 0; k < len; ++k) c.push_back(next++);
      cycles.push_back(std::move(c));
    }
    const Permutation sigma = Permutation::from_cycles(n, cycles);
    std::iota(alpha_img.begin(), alpha_img.end(), 1);
    do {
      const Permutation alpha = Permutation::from_images(alpha_img);
      if (!is_transitive({sigma, alpha}, n)) continue;
      classes.insert(canonical_form(Hypermap::from_pair(n, sigma, alpha)));
    } while (std::next_permutation(alpha_img.begin(), alpha_img.end()));
  }
  return {classes.begin(), classes.end()};
}

/// Plane trees among enumerate(n).
inline std::vector<Hypermap> enumerate_trees(int n) {
  std::vector<Hypermap> out;
  for (auto& h : enumerate(n))
    if (is_plane_tree(h)) out.push_back(std::move(h));
  return out;
}

// Tree families. Labels are chosen so that the combinatorial rotation matches
// the counterclockwise order of the edges of the corresponding polynomial.

/// One black vertex with n white leaves: sigma = (1 2 ... n), alpha = id.
inline Hypermap star(int n) {
  std::vector<Label> c(static_cast<std::size_t>(n));
  std::iota(c.begin(), c.end(), 1);
  return Hypermap::from_pair(n, Permutation::from_cycles(n, {c}), identity(n));
}

/// 2n edges: a white centre of degree n joined to n black vertices of
/// degree 2, each carrying a white leaf. Edge k (k <= n) joins the centre to
/// black vertex k; edge n+k continues to the leaf.
inline Hypermap two_star(int n) {
  const int m = 2 * n;
  std::vector<std::vector<Label>> black;
  for (int k = 1; k <= n; ++k) black.push_back({k, n + k});
  std::vector<Label> centre(static_cast<std::size_t>(n));
  std::iota(centre.begin(), centre.end(), 1);
  return Hypermap::from_pair(m, Permutation::from_cycles(m, black), Permutation::from_cycles(m, {centre}));
}

/// Path with n edges, starting at a white leaf: edge i joins vertex i-1 to
/// vertex i, and vertex i is black iff i is odd.
inline Hypermap chain(int n) {
  std::vector<std::vector<Label>> black, white;
  for (int i = 1; i < n; ++i) (i % 2 == 1 ? black : white).push_back({i, i + 1});
  return Hypermap::from_pair(n, Permutation::from_cycles(n, black), Permutation::from_cycles(n, white));
}

}  // namespace dessin
