#pragma once

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstddef>
#include <deque>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "dessin/error.hpp"

namespace dessin {

/// Half-edge labels are 1-based: a permutation of degree n acts on {1..n}.
using Label = int;

/// Disjoint cycles of a permutation. Each cycle starts at its smallest label,
/// cycles are sorted by that label, and fixed points are kept as 1-cycles.
struct CycleDecomposition {
  std::vector<std::vector<Label>> cycles;

  std::size_t count() const { return cycles.size(); }

  /// Cycle lengths, sorted ascending.
  std::vector<int> cycle_type() const {
    std::vector<int> lens;
    lens.reserve(cycles.size());
    for (const auto& c : cycles) lens.push_back(static_cast<int>(c.size()));
    std::sort(lens.begin(), lens.end());
    return lens;
  }

  bool operator==(const CycleDecomposition&) const = default;
};

class Permutation {
 public:
  /// The identity on a single label.
  Permutation() : image_{0} {}

  static Permutation identity(int n) {
    if (n < 1) throw Error(ErrorKind::invalid_size, "permutation degree must be >= 1");
    Permutation p;
    p.image_.resize(static_cast<std::size_t>(n));
    std::iota(p.image_.begin(), p.image_.end(), 0);
    return p;
  }

  /// Build from the image list [p(1), ..., p(n)] (1-based labels).
  static Permutation from_images(std::span<const Label> images) {
    if (images.empty()) throw Error(ErrorKind::invalid_size, "permutation degree must be >= 1");
    const int n = static_cast<int>(images.size());
    std::vector<int> table(images.size());
    std::vector<bool> seen(images.size(), false);
    for (std::size_t i = 0; i < images.size(); ++i) {
      const Label y = images[i];
      if (y < 1 || y > n || seen[static_cast<std::size_t>(y - 1)])
        throw Error(ErrorKind::parse, "image list is not a bijection of {1.." + std::to_string(n) + "}");
      seen[static_cast<std::size_t>(y - 1)] = true;
      table[i] = y - 1;
    }
    return Permutation(std::move(table));
  }

  static Permutation from_images(std::initializer_list<Label> images) {
    return from_images(std::span<const Label>(images.begin(), images.size()));
  }

  /// Build from disjoint cycles on {1..n}; labels not mentioned are fixed.
  static Permutation from_cycles(int n, const std::vector<std::vector<Label>>& cycles) {
    Permutation p = identity(n);
    std::vector<bool> used(static_cast<std::size_t>(n), false);
    for (const auto& cyc : cycles) {
      for (std::size_t k = 0; k < cyc.size(); ++k) {
        const Label x = cyc[k];
        if (x < 1 || x > n)
          throw Error(ErrorKind::parse, "label " + std::to_string(x) + " outside {1.." + std::to_string(n) + "}");
        if (used[static_cast<std::size_t>(x - 1)])
          throw Error(ErrorKind::parse, "label " + std::to_string(x) + " appears in more than one cycle position");
        used[static_cast<std::size_t>(x - 1)] = true;
        p.image_[static_cast<std::size_t>(x - 1)] = cyc[(k + 1) % cyc.size()] - 1;
      }
    }
    return p;
  }

  /// Parse disjoint-cycle notation such as "(1 7 6)(2 3)(4 8 5)(9)".
  /// A cycle written without separators, e.g. "(176)", is read one digit per
  /// label. When n is 0 the degree is the largest label mentioned.
  static Permutation parse(std::string_view text, int n = 0) {
    std::vector<std::vector<Label>> cycles;
    std::size_t i = 0;
    auto skip_ws = [&] {
      while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    skip_ws();
    while (i < text.size()) {
      if (text[i] != '(') throw Error(ErrorKind::parse, "expected '(' in \"" + std::string(text) + "\"");
      const std::size_t close = text.find(')', i);
      if (close == std::string_view::npos)
        throw Error(ErrorKind::parse, "unterminated cycle in \"" + std::string(text) + "\"");
      cycles.push_back(parse_cycle(text.substr(i + 1, close - i - 1)));
      i = close + 1;
      skip_ws();
    }
    Label max_label = 0;
    for (const auto& c : cycles)
      for (Label x : c) max_label = std::max(max_label, x);
    if (n == 0) n = std::max(max_label, 1);
    if (max_label > n)
      throw Error(ErrorKind::parse, "label " + std::to_string(max_label) + " exceeds degree " + std::to_string(n));
    return from_cycles(n, cycles);
  }

  int size() const { return static_cast<int>(image_.size()); }

  /// Image of a 1-based label.
  Label operator()(Label x) const { return image_[static_cast<std::size_t>(x - 1)] + 1; }

  /// 0-based image table: table()[i] is the image of label i+1, minus one.
  std::span<const int> table() const { return image_; }

  bool is_identity() const {
    for (std::size_t i = 0; i < image_.size(); ++i)
      if (image_[i] != static_cast<int>(i)) return false;
    return true;
  }

  CycleDecomposition cycles() const {
    CycleDecomposition out;
    std::vector<bool> seen(image_.size(), false);
    for (std::size_t start = 0; start < image_.size(); ++start) {
      if (seen[start]) continue;
      std::vector<Label> cyc;
      for (std::size_t x = start; !seen[x]; x = static_cast<std::size_t>(image_[x])) {
        seen[x] = true;
        cyc.push_back(static_cast<Label>(x) + 1);
      }
      out.cycles.push_back(std::move(cyc));
    }
    return out;
  }

  /// Disjoint-cycle string with space-separated labels, fixed points included.
  std::string to_string() const {
    std::string s;
    for (const auto& cyc : cycles().cycles) {
      s += '(';
      for (std::size_t k = 0; k < cyc.size(); ++k) {
        if (k) s += ' ';
        s += std::to_string(cyc[k]);
      }
      s += ')';
    }
    return s;
  }

  auto operator<=>(const Permutation&) const = default;
  bool operator==(const Permutation&) const = default;

 private:
  explicit Permutation(std::vector<int> table) : image_(std::move(table)) {}

  static std::vector<Label> parse_cycle(std::string_view body) {
    std::vector<Label> out;
    const bool separated = body.find_first_of(" \t\n\r,") != std::string_view::npos;
    std::size_t i = 0;
    while (i < body.size()) {
      const char c = body[i];
      if (std::isspace(static_cast<unsigned char>(c)) || c == ',') {
        ++i;
        continue;
      }
      if (!std::isdigit(static_cast<unsigned char>(c)))
        throw Error(ErrorKind::parse, std::string("unexpected character '") + c + "' in cycle");
      if (!separated) {
        out.push_back(c - '0');
        ++i;
        continue;
      }
      Label v = 0;
      while (i < body.size() && std::isdigit(static_cast<unsigned char>(body[i]))) {
        v = v * 10 + (body[i] - '0');
        ++i;
      }
      out.push_back(v);
    }
    for (Label x : out)
      if (x < 1) throw Error(ErrorKind::parse, "labels start at 1");
    return out;
  }

  std::vector<int> image_;
};

inline Permutation identity(int n) { return Permutation::identity(n); }

/// Left-to-right product: the result sends x to q(p(x)).
inline Permutation compose(const Permutation& p, const Permutation& q) {
  if (p.size() != q.size())
    throw Error(ErrorKind::degree_mismatch, "cannot compose permutations of degree " + std::to_string(p.size()) +
                                                " and " + std::to_string(q.size()));
  std::vector<Label> img(static_cast<std::size_t>(p.size()));
  for (Label x = 1; x <= p.size(); ++x) img[static_cast<std::size_t>(x - 1)] = q(p(x));
  return Permutation::from_images(img);
}

inline Permutation inverse(const Permutation& p) {
  std::vector<Label> img(static_cast<std::size_t>(p.size()));
  for (Label x = 1; x <= p.size(); ++x) img[static_cast<std::size_t>(p(x) - 1)] = x;
  return Permutation::from_images(img);
}

/// Conjugate p by a relabeling tau: the result sends tau(x) to tau(p(x)).
inline Permutation relabel(const Permutation& p, const Permutation& tau) {
  return compose(compose(inverse(tau), p), tau);
}

inline CycleDecomposition cycle_decomposition(const Permutation& p) { return p.cycles(); }

namespace detail {

inline void check_degrees(std::span<const Permutation> gens, int n) {
  if (n < 1) throw Error(ErrorKind::invalid_size, "degree must be >= 1");
  for (const auto& g : gens)
    if (g.size() != n)
      throw Error(ErrorKind::degree_mismatch,
                  "generator of degree " + std::to_string(g.size()) + " in a group on " + std::to_string(n) + " labels");
}

struct TableHash {
  std::size_t operator()(const std::vector<int>& v) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (int x : v) {
      h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h;
  }
};

}  // namespace detail

/// Orbit of `start` under the group generated by gens (breadth-first).
inline std::vector<Label> orbit(std::span<const Permutation> gens, int n, Label start = 1) {
  detail::check_degrees(gens, n);
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  std::vector<Label> out{start};
  seen[static_cast<std::size_t>(start - 1)] = true;
  for (std::size_t head = 0; head < out.size(); ++head) {
    for (const auto& g : gens) {
      const Label y = g(out[head]);
      if (!seen[static_cast<std::size_t>(y - 1)]) {
        seen[static_cast<std::size_t>(y - 1)] = true;
        out.push_back(y);
      }
    }
  }
  return out;
}

/// True iff the orbit of label 1 is all of {1..n}.
inline bool is_transitive(std::span<const Permutation> gens, int n) {
  return orbit(gens, n).size() == static_cast<std::size_t>(n);
}

inline bool is_transitive(std::initializer_list<Permutation> gens, int n) {
  return is_transitive(std::span<const Permutation>(gens.begin(), gens.size()), n);
}

/// Order of the generated group by breadth-first closure under right
/// multiplication. Returns nullopt once more than `cap` elements are found.
inline std::optional<std::size_t> group_order(std::span<const Permutation> gens, int n, std::size_t cap) {
  detail::check_degrees(gens, n);
  if (cap == 0) throw Error(ErrorKind::invalid_size, "group order cap must be positive");
  const Permutation id = identity(n);
  std::unordered_set<std::vector<int>, detail::TableHash> seen;
  std::deque<std::vector<int>> queue;
  auto as_vec = [](const Permutation& p) { return std::vector<int>(p.table().begin(), p.table().end()); };
  seen.insert(as_vec(id));
  queue.push_back(as_vec(id));
  const auto un = static_cast<std::size_t>(n);
  while (!queue.empty()) {
    const std::vector<int> g = std::move(queue.front());
    queue.pop_front();
    for (const auto& s : gens) {
      std::vector<int> h(un);
      for (std::size_t x = 0; x < un; ++x) h[x] = s.table()[static_cast<std::size_t>(g[x])];
      if (seen.insert(h).second) {
        if (seen.size() > cap) return std::nullopt;
        queue.push_back(std::move(h));
      }
    }
  }
  return seen.size();
}

inline std::optional<std::size_t> group_order(std::initializer_list<Permutation> gens, int n, std::size_t cap) {
  return group_order(std::span<const Permutation>(gens.begin(), gens.size()), n, cap);
}

}  // namespace dessin
