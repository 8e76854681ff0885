#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <numbers>
#include <random>
#include <string>
#include <tuple>
#include <vector>

#include <Eigen/Dense>

#include "dessin/error.hpp"
#include "dessin/hypermap.hpp"
#include "dessin/monodromy.hpp"
#include "dessin/poly.hpp"
#include "dessin/shabat.hpp"

namespace dessin {

struct SolverConfig {
  std::uint64_t seed = 1;
  int max_starts = 50;
  int max_iterations = 200;
  /// Newton stops once the update is below this (relative to the unknowns).
  double step_tol = 1e-12;
  /// Maximal coefficient residual of c*prod(z-b)^d - 1 - c*prod(z-w)^e.
  double residual_tol = 1e-10;
  /// Distinct roots closer than this count as a collapsed solution.
  double cluster_tol = 1e-6;
  int degree_limit = 10;
  TrackConfig track{};
};

struct SolverReport {
  std::uint64_t seed = 0;
  int start = -1;          // index of the accepted start
  int starts_tried = 0;
  int iterations = 0;      // Newton iterations of the accepted start
  int wrong_class = 0;     // converged starts whose dessin was a different tree
  double residual = 0.0;
};

struct SolvedTree {
  ShabatPolynomial shabat;
  SolverReport report;
};

namespace detail {

/// A plane tree viewed as vertices with degrees and incident edge lists.
struct TreeVertices {
  // black vertices are sigma cycles, white vertices alpha cycles
  std::vector<std::vector<Label>> black, white;
  std::vector<int> black_of, white_of;  // edge label - 1 -> vertex index
};

inline TreeVertices tree_vertices(const Hypermap& t) {
  TreeVertices tv;
  tv.black = t.sigma().cycles().cycles;
  tv.white = t.alpha().cycles().cycles;
  tv.black_of.assign(static_cast<std::size_t>(t.n()), -1);
  tv.white_of.assign(static_cast<std::size_t>(t.n()), -1);
  for (std::size_t i = 0; i < tv.black.size(); ++i)
    for (Label e : tv.black[i]) tv.black_of[static_cast<std::size_t>(e - 1)] = static_cast<int>(i);
  for (std::size_t j = 0; j < tv.white.size(); ++j)
    for (Label e : tv.white[j]) tv.white_of[static_cast<std::size_t>(e - 1)] = static_cast<int>(j);
  return tv;
}

/// Radial drawing of the tree rooted at black vertex `root`. Children of a vertex
/// are laid out in the rotation order following the edge to the parent, in
/// increasing angle, so the drawing respects the counterclockwise rotations.
/// With an rng, wedge widths and edge lengths are randomly distorted; the
/// drawing stays a plane embedding of the same tree.
/// Returns (black positions, white positions).
inline std::pair<std::vector<cplx>, std::vector<cplx>> radial_layout(const TreeVertices& tv, int root,
                                                                     std::mt19937_64* rng = nullptr) {
  std::uniform_real_distribution<double> distort(0.5, 2.0);
  auto factor = [&] { return rng ? distort(*rng) : 1.0; };
  struct Node {
    bool black;
    int index;
  };
  const auto& cycle_of = [&](Node v) -> const std::vector<Label>& {
    return v.black ? tv.black[static_cast<std::size_t>(v.index)] : tv.white[static_cast<std::size_t>(v.index)];
  };
  const auto& across = [&](Node v, Label e) {
    return v.black ? Node{false, tv.white_of[static_cast<std::size_t>(e - 1)]}
                   : Node{true, tv.black_of[static_cast<std::size_t>(e - 1)]};
  };

  // Leaves hanging below edge e when entered from `from`.
  std::function<int(Node, Label)> leaves = [&](Node from, Label e) -> int {
    const Node to = across(from, e);
    const auto& cyc = cycle_of(to);
    int total = 0;
    for (Label f : cyc)
      if (f != e) total += leaves(to, f);
    return std::max(total, 1);
  };

  std::vector<cplx> bpos(tv.black.size()), wpos(tv.white.size());
  std::function<void(Node, Label, double, double, double)> place = [&](Node v, Label parent_edge, double lo,
                                                                      double hi, double radius) {
    const auto& cyc = cycle_of(v);
    std::vector<Label> kids;
    if (parent_edge == 0) {
      kids = cyc;
    } else {
      const auto it = std::find(cyc.begin(), cyc.end(), parent_edge);
      const std::size_t k = static_cast<std::size_t>(std::distance(cyc.begin(), it));
      for (std::size_t i = 1; i < cyc.size(); ++i) kids.push_back(cyc[(k + i) % cyc.size()]);
    }
    std::vector<double> w;
    double total = 0.0;
    for (Label e : kids) {
      w.push_back(leaves(v, e) * factor());
      total += w.back();
    }
    double a = lo;
    for (std::size_t i = 0; i < kids.size(); ++i) {
      const double b = a + (hi - lo) * w[i] / total;
      const Node child = across(v, kids[i]);
      const double r = radius + factor();
      (child.black ? bpos : wpos)[static_cast<std::size_t>(child.index)] = std::polar(r, 0.5 * (a + b));
      place(child, kids[i], a, b, r);
      a = b;
    }
  };
  bpos[static_cast<std::size_t>(root)] = 0.0;
  place(Node{true, root}, 0, 0.0, 2.0 * std::numbers::pi, 0.0);
  return {bpos, wpos};
}

/// Unknowns: black roots 1..B-1, white roots 1..W-1, then c. Black root 0
/// is pinned at 0 and white root 0 at 1.
struct NewtonSystem {
  std::vector<int> bdeg, wdeg;
  int n;

  std::size_t size() const { return bdeg.size() + wdeg.size() - 1; }

  void unpack(const Eigen::VectorXcd& u, std::vector<cplx>& b, std::vector<cplx>& w, cplx& c) const {
    b.assign(bdeg.size(), 0.0);
    w.assign(wdeg.size(), 1.0);
    std::size_t k = 0;
    for (std::size_t i = 1; i < bdeg.size(); ++i) b[i] = u(static_cast<Eigen::Index>(k++));
    for (std::size_t j = 1; j < wdeg.size(); ++j) w[j] = u(static_cast<Eigen::Index>(k++));
    c = u(static_cast<Eigen::Index>(k));
  }

  static Poly product(const std::vector<cplx>& roots, const std::vector<int>& deg, int skip = -1) {
    std::vector<std::pair<cplx, int>> rm;
    for (std::size_t i = 0; i < roots.size(); ++i)
      rm.emplace_back(roots[i], deg[i] - (static_cast<int>(i) == skip ? 1 : 0));
    return Poly::from_roots(rm);
  }

  /// Coefficients 0..n-1 of c*(prod_B - prod_W) - 1.
  Eigen::VectorXcd residual(const Eigen::VectorXcd& u) const {
    std::vector<cplx> b, w;
    cplx c;
    unpack(u, b, w, c);
    const Poly diff = c * (product(b, bdeg) - product(w, wdeg));
    Eigen::VectorXcd r(n);
    for (int k = 0; k < n; ++k) r(k) = diff.coeff(k) - (k == 0 ? 1.0 : 0.0);
    return r;
  }

  Eigen::MatrixXcd jacobian(const Eigen::VectorXcd& u) const {
    std::vector<cplx> b, w;
    cplx c;
    unpack(u, b, w, c);
    Eigen::MatrixXcd J(n, static_cast<Eigen::Index>(size()));
    Eigen::Index col = 0;
    auto put = [&](const Poly& q) {
      for (int k = 0; k < n; ++k) J(k, col) = q.coeff(k);
      ++col;
    };
    for (std::size_t i = 1; i < b.size(); ++i)
      put(cplx(-bdeg[i]) * c * product(b, bdeg, static_cast<int>(i)));
    for (std::size_t j = 1; j < w.size(); ++j)
      put(cplx(wdeg[j]) * c * product(w, wdeg, static_cast<int>(j)));
    put(product(b, bdeg) - product(w, wdeg));
    return J;
  }
};

inline double max_abs(const Eigen::VectorXcd& v) { return v.size() ? v.cwiseAbs().maxCoeff() : 0.0; }

}  // namespace detail

/// Realizes a plane tree as a polynomial with critical values {0, 1} whose
/// dessin is the tree, by damped Newton on the coefficient identity
///   c * prod (z - b_i)^{d_i} - 1 = c * prod (z - w_j)^{e_j}
/// with b_0 = 0 and w_0 = 1 pinned. Start 0 is a radial drawing of the tree;
/// later starts alternate between randomly distorted drawings and random
/// roots in the unit disc, seeded by cfg.seed + start index.
inline SolvedTree solve_tree(const Hypermap& tree, const SolverConfig& cfg = {}) {
  if (!is_plane_tree(tree)) throw Error(ErrorKind::precondition, "solve_tree needs a plane tree");
  const int n = tree.n();
  if (n > cfg.degree_limit)
    throw Error(ErrorKind::limit_exceeded, "solve_tree is limited to " + std::to_string(cfg.degree_limit) + " edges");

  const detail::TreeVertices tv = detail::tree_vertices(tree);
  // Pin the ends of the edge joining the heaviest pair of vertices; leaf
  // edges tend to be short and make the other unknowns blow up.
  int pinned = 0;
  {
    auto weight = [&](int e) {
      const auto db = tv.black[static_cast<std::size_t>(tv.black_of[static_cast<std::size_t>(e)])].size();
      const auto dw = tv.white[static_cast<std::size_t>(tv.white_of[static_cast<std::size_t>(e)])].size();
      return std::pair{std::min(db, dw), db + dw};
    };
    for (int e = 1; e < n; ++e)
      if (weight(e) > weight(pinned)) pinned = e;
  }
  const int b0 = tv.black_of[static_cast<std::size_t>(pinned)], w0 = tv.white_of[static_cast<std::size_t>(pinned)];
  std::vector<int> border, worder;
  border.push_back(b0);
  for (int i = 0; i < static_cast<int>(tv.black.size()); ++i)
    if (i != b0) border.push_back(i);
  worder.push_back(w0);
  for (int j = 0; j < static_cast<int>(tv.white.size()); ++j)
    if (j != w0) worder.push_back(j);

  detail::NewtonSystem sys;
  sys.n = n;
  for (int i : border) sys.bdeg.push_back(static_cast<int>(tv.black[static_cast<std::size_t>(i)].size()));
  for (int j : worder) sys.wdeg.push_back(static_cast<int>(tv.white[static_cast<std::size_t>(j)].size()));

  SolverReport report;
  report.seed = cfg.seed;

  if (n == 1) {
    ShabatPolynomial sp;
    sp.poly = Poly{0.0, 1.0};
    sp.black_roots = {{0.0, 1}};
    sp.white_roots = {{1.0, 1}};
    report.start = 0;
    report.starts_tried = 1;
    return {sp, report};
  }

  // Tree drawings normalized so that the pinned vertices sit at 0 and 1.
  auto drawing = [&](std::mt19937_64* rng) {
    auto [bd, wd] = detail::radial_layout(tv, b0, rng);
    const cplx origin = bd[static_cast<std::size_t>(b0)];
    const cplx unit = wd[static_cast<std::size_t>(w0)] - origin;
    std::vector<cplx> b, w;
    for (int i : border) b.push_back((bd[static_cast<std::size_t>(i)] - origin) / unit);
    for (int j : worder) w.push_back((wd[static_cast<std::size_t>(j)] - origin) / unit);
    return std::pair{b, w};
  };

  double best_residual = std::numeric_limits<double>::infinity();
  std::optional<Passport> wrong_passport;
  const std::size_t dim = sys.size();

  for (int start = 0; start < cfg.max_starts; ++start) {
    ++report.starts_tried;
    std::mt19937_64 rng(cfg.seed + static_cast<std::uint64_t>(start));
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    auto disc_point = [&] {
      for (;;) {
        const cplx z{unif(rng), unif(rng)};
        if (std::norm(z) <= 1.0) return z;
      }
    };

    std::vector<cplx> b(border.size()), w(worder.size());
    if (start % 2 == 0) {
      std::tie(b, w) = drawing(start == 0 ? nullptr : &rng);
    } else {
      for (auto& z : b) z = disc_point();
      for (auto& z : w) z = disc_point();
    }
    b[0] = 0.0;
    w[0] = 1.0;

    // Least-squares c for the initial roots.
    const Poly gap = detail::NewtonSystem::product(b, sys.bdeg) - detail::NewtonSystem::product(w, sys.wdeg);
    double denom = 0.0;
    for (int k = 0; k < n; ++k) denom += std::norm(gap.coeff(k));
    const cplx c0 = denom > 0 ? std::conj(gap.coeff(0)) / denom : cplx{1.0};

    Eigen::VectorXcd u(static_cast<Eigen::Index>(dim));
    {
      Eigen::Index k = 0;
      for (std::size_t i = 1; i < b.size(); ++i) u(k++) = b[i];
      for (std::size_t j = 1; j < w.size(); ++j) u(k++) = w[j];
      u(k) = c0;
    }

    Eigen::VectorXcd r = sys.residual(u);
    double res = detail::max_abs(r);
    int iter = 0;
    bool converged = false;
    for (; iter < cfg.max_iterations; ++iter) {
      const Eigen::MatrixXcd J = sys.jacobian(u);
      const Eigen::VectorXcd delta = J.colPivHouseholderQr().solve(-r);
      if (!delta.allFinite()) break;
      double lambda = 1.0;
      bool improved = false;
      for (int half = 0; half < 30; ++half, lambda *= 0.5) {
        const Eigen::VectorXcd trial = u + lambda * delta;
        const Eigen::VectorXcd rt = sys.residual(trial);
        const double rr = detail::max_abs(rt);
        if (std::isfinite(rr) && rr < res) {
          u = trial;
          r = rt;
          res = rr;
          improved = true;
          break;
        }
      }
      const double step = lambda * detail::max_abs(delta);
      if (res <= cfg.residual_tol && (step <= cfg.step_tol * (1.0 + detail::max_abs(u)) || !improved)) {
        converged = true;
        break;
      }
      if (!improved) break;
    }
    best_residual = std::min(best_residual, res);
    if (!converged) continue;

    std::vector<cplx> bs, ws;
    cplx c;
    sys.unpack(u, bs, ws, c);
    std::vector<cplx> all = bs;
    all.insert(all.end(), ws.begin(), ws.end());
    if (detail::min_separation(all) < 1e3 * cfg.cluster_tol || !(std::abs(c) > 0)) continue;

    ShabatPolynomial sp;
    std::vector<std::pair<cplx, int>> factors;
    for (std::size_t i = 0; i < bs.size(); ++i) {
      sp.black_roots.push_back({bs[i], sys.bdeg[i]});
      factors.emplace_back(bs[i], sys.bdeg[i]);
    }
    for (std::size_t j = 0; j < ws.size(); ++j) sp.white_roots.push_back({ws[j], sys.wdeg[j]});
    sp.poly = Poly::from_roots(factors, c);

    try {
      const Hypermap realized = dessin_of(sp, cfg.track);
      if (!is_isomorphic(realized, tree)) {
        ++report.wrong_class;
        wrong_passport = passport(realized);
        continue;
      }
    } catch (const Error&) {
      continue;
    }
    report.start = start;
    report.iterations = iter;
    report.residual = res;
    return {sp, report};
  }

  if (wrong_passport) {
    auto fmt = [](const std::vector<int>& v) {
      std::string s = "{";
      for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
      return s + "}";
    };
    auto pass = [&](const Passport& pp) {
      return fmt(pp.black_degrees) + "/" + fmt(pp.white_degrees) + "/" + fmt(pp.face_degrees);
    };
    throw Error(ErrorKind::wrong_class, "every converged start realized a different tree; target passport " +
                                            pass(passport(tree)) + ", realized passport " + pass(*wrong_passport));
  }
  throw NumericError(ErrorKind::nonconvergence,
                     "no start converged within " + std::to_string(cfg.max_starts) + " starts (best residual " +
                         std::to_string(best_residual) + ")",
                     best_residual);
}

}  // namespace dessin
