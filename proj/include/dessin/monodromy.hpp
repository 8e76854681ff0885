#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "dessin/error.hpp"
#include "dessin/hypermap.hpp"
#include "dessin/perm.hpp"
#include "dessin/poly.hpp"
#include "dessin/shabat.hpp"

namespace dessin {

struct TrackConfig {
  cplx basepoint{0.5, 0.0};
  double loop_radius = 0.25;
  /// Initial and maximal step, as a fraction of the path length.
  double initial_step = 1e-2;
  /// Smallest step before giving up, as a fraction of the path length.
  double min_step = 1e-9;
  /// A step is rejected when a point moves further than guard_factor times
  /// the current minimal separation, or when two points come closer than that.
  double guard_factor = 0.5;
  double infinity_radius = 2.0;
  /// Polygon vertices used to discretize each circle.
  int circle_segments = 96;
  int max_newton = 12;
  /// Tolerance used to locate critical values and to test normalization.
  double critical_tol = 1e-6;
  /// Closest a path may pass to a ramification point.
  double path_guard = 1e-3;
};

/// Closed polygonal loop starting and ending at `basepoint`.
struct LoopPath {
  std::vector<cplx> vertices;
  cplx basepoint;

  double length() const {
    double l = 0.0;
    for (std::size_t i = 1; i < vertices.size(); ++i) l += std::abs(vertices[i] - vertices[i - 1]);
    return l;
  }
};

namespace detail {

inline void append_circle(std::vector<cplx>& out, cplx centre, double radius, double start_angle, bool ccw,
                          int segments) {
  const double dir = ccw ? 1.0 : -1.0;
  for (int k = 1; k <= segments; ++k)
    out.push_back(centre + std::polar(radius, start_angle + dir * 2.0 * std::numbers::pi * k / segments));
}

inline double segment_distance(cplx p, cplx a, cplx b) {
  const cplx ab = b - a;
  const double len2 = std::norm(ab);
  if (len2 == 0.0) return std::abs(p - a);
  const double t = std::clamp(((p - a) * std::conj(ab)).real() / len2, 0.0, 1.0);
  return std::abs(p - (a + t * ab));
}

}  // namespace detail

/// Segment from the basepoint to the nearest point of the circle |z - centre|
/// = radius, one full turn, and back.
inline LoopPath lollipop(cplx basepoint, cplx centre, double radius, bool ccw = true, int segments = 96) {
  const cplx offset = basepoint - centre;
  if (std::abs(offset) <= radius)
    throw Error(ErrorKind::invalid_path, "basepoint lies inside the loop circle");
  const double angle = std::arg(offset);
  const cplx entry = centre + std::polar(radius, angle);
  LoopPath path{{basepoint, entry}, basepoint};
  detail::append_circle(path.vertices, centre, radius, angle, ccw, segments);
  path.vertices.back() = entry;
  path.vertices.push_back(basepoint);
  return path;
}

/// Vertical segment up from the basepoint to the circle |z| = radius, one
/// clockwise turn (counterclockwise around infinity), and back.
inline LoopPath infinity_loop(cplx basepoint, double radius, int segments = 96) {
  if (std::abs(basepoint.real()) >= radius || std::abs(basepoint) >= radius)
    throw Error(ErrorKind::invalid_path, "basepoint must lie inside the infinity circle");
  const double t = std::sqrt(radius * radius - basepoint.real() * basepoint.real());
  const cplx entry{basepoint.real(), t};
  LoopPath path{{basepoint, entry}, basepoint};
  detail::append_circle(path.vertices, 0.0, radius, std::arg(entry), false, segments);
  path.vertices.back() = entry;
  path.vertices.push_back(basepoint);
  return path;
}

/// Throws invalid_path unless the loop is closed at its basepoint and stays
/// at least `guard` away from every point in `avoid`.
inline void validate_path(const LoopPath& path, const std::vector<cplx>& avoid, double guard) {
  if (path.vertices.empty() || path.vertices.front() != path.basepoint || path.vertices.back() != path.basepoint)
    throw Error(ErrorKind::invalid_path, "loop must start and end at its basepoint");
  for (std::size_t i = 1; i < path.vertices.size(); ++i)
    for (const cplx q : avoid)
      if (detail::segment_distance(q, path.vertices[i - 1], path.vertices[i]) < guard)
        throw Error(ErrorKind::invalid_path, "loop passes within " + std::to_string(guard) +
                                                 " of ramification point (" + std::to_string(q.real()) + ", " +
                                                 std::to_string(q.imag()) + ")");
}

// ---------------------------------------------------------------------------
// Fibres

namespace detail {

/// Newton on p(z) = x from z; nullopt if it does not settle.
inline std::optional<cplx> newton_solve(const Poly& p, const Poly& dp, cplx x, cplx z, int max_iter) {
  for (int it = 0; it < max_iter; ++it) {
    const cplx d = dp(z);
    if (d == cplx{}) return std::nullopt;
    const cplx step = (p(z) - x) / d;
    z -= step;
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return std::nullopt;
    if (std::abs(step) <= 1e-14 * (1.0 + std::abs(z))) return z;
  }
  const double scale = std::max(1.0, p.magnitude_at(z));
  if (std::abs(p(z) - x) <= 1e-12 * scale) return z;
  return std::nullopt;
}

inline double min_separation(const std::vector<cplx>& pts) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) best = std::min(best, std::abs(pts[i] - pts[j]));
  return best;
}

/// Lexicographic order on (real, imag) after rounding to 1e-9, so that
/// roundoff cannot reorder points with equal real parts.
inline bool fibre_less(cplx a, cplx b) {
  const double ra = std::round(a.real() * 1e9), rb = std::round(b.real() * 1e9);
  if (ra != rb) return ra < rb;
  return a.imag() < b.imag();
}

}  // namespace detail

/// The degree-many solutions of p(z) = x0, Newton-polished and sorted by
/// (real, imag). Index k of the result is edge label k+1.
inline std::vector<cplx> fiber(const Poly& p, cplx x0, double critical_tol = 1e-6) {
  if (p.degree() < 1) throw Error(ErrorKind::precondition, "fiber needs degree >= 1");
  for (const cplx v : critical_data(p, critical_tol).values)
    if (std::abs(v - x0) <= critical_tol * std::max(1.0, std::abs(v)))
      throw NumericError(ErrorKind::basepoint_too_close, "basepoint is within tolerance of a critical value",
                         std::abs(v - x0));
  Poly shifted = p + (-x0);
  std::vector<cplx> zs = roots(shifted);
  const Poly dp = derivative(p);
  for (auto& z : zs) {
    const auto polished = detail::newton_solve(p, dp, x0, z, 50);
    if (!polished) throw NumericError(ErrorKind::conditioning, "fibre point failed to polish", std::abs(p(z) - x0));
    z = *polished;
  }
  const double sep = detail::min_separation(zs);
  if (sep < 1e-8) throw NumericError(ErrorKind::conditioning, "fibre points collide", sep);
  std::sort(zs.begin(), zs.end(), detail::fibre_less);
  return zs;
}

// ---------------------------------------------------------------------------
// Path tracking

struct TrackStats {
  int accepted = 0;
  int rejected = 0;
  double smallest_step = 0.0;  // fraction of path length
};

struct TrackResult {
  Permutation perm;
  TrackStats stats;
};

/// Continues every fibre point along the loop in lockstep: predict by the
/// previous point, correct by Newton on p(z) = path point. The step halves
/// on a guard violation or a Newton failure and doubles back up to the
/// initial step after each success. perm sends start index to end index.
inline TrackResult track_with_stats(const Poly& p, const std::vector<cplx>& start, const LoopPath& path,
                                    const TrackConfig& cfg = {}) {
  const int n = static_cast<int>(start.size());
  if (n < 1) throw Error(ErrorKind::precondition, "cannot track an empty fibre");
  if (n != p.degree()) throw Error(ErrorKind::degree_mismatch, "fibre size does not match the polynomial degree");
  if (path.vertices.empty() || path.vertices.front() != path.basepoint || path.vertices.back() != path.basepoint)
    throw Error(ErrorKind::invalid_path, "loop must start and end at its basepoint");
  for (const cplx z : start)
    if (std::abs(p(z) - path.basepoint) > 1e-8 * std::max(1.0, p.magnitude_at(z)))
      throw Error(ErrorKind::precondition, "fibre does not lie over the path basepoint");

  TrackStats stats;
  const double total = path.length();
  if (total == 0.0) return {identity(n), stats};

  std::vector<double> cum{0.0};
  for (std::size_t i = 1; i < path.vertices.size(); ++i)
    cum.push_back(cum.back() + std::abs(path.vertices[i] - path.vertices[i - 1]));
  auto position = [&](double s) {
    if (s >= total) return path.vertices.back();
    const auto it = std::upper_bound(cum.begin(), cum.end(), s);
    const std::size_t seg = static_cast<std::size_t>(std::distance(cum.begin(), it)) - 1;
    const double len = cum[seg + 1] - cum[seg];
    const double t = len > 0 ? (s - cum[seg]) / len : 0.0;
    return path.vertices[seg] + t * (path.vertices[seg + 1] - path.vertices[seg]);
  };

  const Poly dp = derivative(p);
  const double h_max = cfg.initial_step * total;
  const double h_min = cfg.min_step * total;
  double h = h_max;
  double s = 0.0;
  stats.smallest_step = cfg.initial_step;
  std::vector<cplx> pts = start, next(start.size());

  while (s < total) {
    const double step = std::min(h, total - s);
    const cplx target = position(s + step);
    const double guard = cfg.guard_factor * detail::min_separation(pts);
    bool ok = true;
    for (std::size_t i = 0; i < pts.size() && ok; ++i) {
      const auto z = detail::newton_solve(p, dp, target, pts[i], cfg.max_newton);
      if (!z || std::abs(*z - pts[i]) > guard) ok = false;
      else next[i] = *z;
    }
    if (ok && n > 1 && detail::min_separation(next) < guard) ok = false;
    if (ok) {
      pts.swap(next);
      s += step;
      ++stats.accepted;
      h = std::min(2.0 * h, h_max);
    } else {
      ++stats.rejected;
      h *= 0.5;
      stats.smallest_step = std::min(stats.smallest_step, h / total);
      if (h < h_min) {
        const cplx at = position(s);
        throw NumericError(ErrorKind::tracking_failure,
                           "step underflow while tracking near (" + std::to_string(at.real()) + ", " +
                               std::to_string(at.imag()) + ")",
                           h / total);
      }
    }
  }

  const double match_guard = cfg.guard_factor * (n > 1 ? detail::min_separation(start) : 1.0);
  std::vector<Label> img(static_cast<std::size_t>(n));
  std::vector<bool> hit(static_cast<std::size_t>(n), false);
  for (int i = 0; i < n; ++i) {
    int best = -1;
    double best_d = std::numeric_limits<double>::infinity();
    for (int j = 0; j < n; ++j) {
      const double d = std::abs(pts[static_cast<std::size_t>(i)] - start[static_cast<std::size_t>(j)]);
      if (d < best_d) {
        best_d = d;
        best = j;
      }
    }
    if (best_d > match_guard || hit[static_cast<std::size_t>(best)])
      throw NumericError(ErrorKind::tracking_failure, "tracked endpoints do not match the fibre bijectively", best_d);
    hit[static_cast<std::size_t>(best)] = true;
    img[static_cast<std::size_t>(i)] = best + 1;
  }
  return {Permutation::from_images(img), stats};
}

inline Permutation track(const Poly& p, const std::vector<cplx>& start, const LoopPath& path,
                         const TrackConfig& cfg = {}) {
  return track_with_stats(p, start, path, cfg).perm;
}

// ---------------------------------------------------------------------------
// Monodromy of a polynomial Belyi map

struct MonodromyResult {
  cplx basepoint;
  std::vector<cplx> fiber;
  Permutation sigma;        // counterclockwise loop around 0
  Permutation alpha;        // counterclockwise loop around 1
  Permutation phi;          // inverse(sigma * alpha)
  Permutation phi_tracked;  // loop around infinity, tracked independently
  TrackStats sigma_stats, alpha_stats, phi_stats;
};

/// Throws precondition unless every critical value of p is 0 or 1.
inline void require_belyi_normalized(const Poly& p, double tol) {
  if (p.degree() < 1) throw Error(ErrorKind::precondition, "Belyi polynomial must have degree >= 1");
  for (const cplx v : critical_data(p, tol).values)
    if (std::abs(v) > tol && std::abs(v - 1.0) > tol)
      throw Error(ErrorKind::precondition, "critical value (" + std::to_string(v.real()) + ", " +
                                               std::to_string(v.imag()) + ") is not in {0, 1}");
}

inline MonodromyResult monodromy_pair(const Poly& p, const TrackConfig& cfg = {}) {
  require_belyi_normalized(p, cfg.critical_tol);
  const int n = p.degree();
  MonodromyResult r{cfg.basepoint, fiber(p, cfg.basepoint, cfg.critical_tol), identity(n), identity(n),
                    identity(n),   identity(n), {}, {}, {}};

  const std::vector<cplx> ramification{0.0, 1.0};
  const LoopPath around0 = lollipop(cfg.basepoint, 0.0, cfg.loop_radius, true, cfg.circle_segments);
  const LoopPath around1 = lollipop(cfg.basepoint, 1.0, cfg.loop_radius, true, cfg.circle_segments);
  const LoopPath around_inf = infinity_loop(cfg.basepoint, cfg.infinity_radius, 2 * cfg.circle_segments);
  for (const auto* loop : {&around0, &around1, &around_inf}) validate_path(*loop, ramification, cfg.path_guard);

  auto ts = track_with_stats(p, r.fiber, around0, cfg);
  r.sigma = ts.perm;
  r.sigma_stats = ts.stats;
  ts = track_with_stats(p, r.fiber, around1, cfg);
  r.alpha = ts.perm;
  r.alpha_stats = ts.stats;
  ts = track_with_stats(p, r.fiber, around_inf, cfg);
  r.phi_tracked = ts.perm;
  r.phi_stats = ts.stats;
  r.phi = inverse(compose(r.sigma, r.alpha));

  if (!is_transitive({r.sigma, r.alpha}, n))
    throw Error(ErrorKind::internal_inconsistency,
                "tracked monodromy is not transitive; the polynomial is not Belyi-normalized or tracking failed");
  if (r.phi != r.phi_tracked)
    throw Error(ErrorKind::internal_inconsistency, "loop around infinity gives " + r.phi_tracked.to_string() +
                                                       " but sigma*alpha*phi = 1 requires " + r.phi.to_string());
  return r;
}

inline MonodromyResult monodromy_pair(const ShabatPolynomial& sp, const TrackConfig& cfg = {}) {
  if (sp.critical_values.first != cplx{0.0} || sp.critical_values.second != cplx{1.0})
    throw Error(ErrorKind::precondition, "monodromy_pair expects critical values normalized to (0, 1)");
  return monodromy_pair(sp.poly, cfg);
}

/// The dessin of a polynomial Belyi map: edges are the fibre points over the
/// basepoint, rotations come from the loops around 0 and 1.
inline Hypermap dessin_of(const Poly& p, const TrackConfig& cfg = {}) {
  const MonodromyResult r = monodromy_pair(p, cfg);
  return Hypermap::from_pair(p.degree(), r.sigma, r.alpha);
}

inline Hypermap dessin_of(const ShabatPolynomial& sp, const TrackConfig& cfg = {}) {
  const MonodromyResult r = monodromy_pair(sp, cfg);
  return Hypermap::from_pair(sp.degree(), r.sigma, r.alpha);
}

}  // namespace dessin
