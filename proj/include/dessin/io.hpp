#pragma once

#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "dessin/error.hpp"
#include "dessin/hypermap.hpp"
#include "dessin/monodromy.hpp"
#include "dessin/poly.hpp"
#include "dessin/rh_ode.hpp"
#include "dessin/shabat.hpp"
#include "dessin/shabat_solver.hpp"

namespace dessin::io {

using json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Dessins: {"n": int, "sigma": [[int]], "alpha": [[int]]}

inline json cycles_json(const Permutation& p) {
  json arr = json::array();
  for (const auto& c : p.cycles().cycles) arr.push_back(c);
  return arr;
}

inline json to_json(const Hypermap& h) {
  json j;
  j["n"] = h.n();
  j["sigma"] = cycles_json(h.sigma());
  j["alpha"] = cycles_json(h.alpha());
  return j;
}

namespace detail {

inline Permutation perm_from_json(const json& j, int n, const char* field) {
  if (j.is_string()) return Permutation::parse(j.get<std::string>(), n);
  if (!j.is_array()) throw Error(ErrorKind::parse, std::string("'") + field + "' must be an array of cycles");
  std::vector<std::vector<Label>> cycles;
  for (const auto& c : j) {
    if (!c.is_array()) throw Error(ErrorKind::parse, std::string("'") + field + "' cycles must be arrays of labels");
    std::vector<Label> cyc;
    for (const auto& x : c) {
      if (!x.is_number_integer()) throw Error(ErrorKind::parse, std::string("'") + field + "' labels must be integers");
      cyc.push_back(x.get<Label>());
    }
    cycles.push_back(std::move(cyc));
  }
  return Permutation::from_cycles(n, cycles);
}

inline json parse_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::parse, std::string("invalid JSON: ") + e.what());
  }
}

inline cplx complex_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  throw Error(ErrorKind::parse, "complex numbers are [re, im] pairs");
}

}  // namespace detail

/// Cycles may be given as arrays of labels or as a cycle string.
inline Hypermap hypermap_from_json(const json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("sigma") || !j.contains("alpha"))
    throw Error(ErrorKind::parse, "dessin JSON needs fields n, sigma, alpha");
  if (!j["n"].is_number_integer()) throw Error(ErrorKind::parse, "'n' must be an integer");
  const int n = j["n"].get<int>();
  if (n < 1) throw Error(ErrorKind::invalid_size, "'n' must be >= 1");
  return Hypermap::from_pair(n, detail::perm_from_json(j["sigma"], n, "sigma"),
                             detail::perm_from_json(j["alpha"], n, "alpha"));
}

inline Hypermap hypermap_from_text(const std::string& text) { return hypermap_from_json(detail::parse_text(text)); }

// ---------------------------------------------------------------------------
// Polynomials: {"coeffs": [[re, im], ...]} ascending degree

inline json to_json(cplx z) { return json::array({z.real(), z.imag()}); }

inline json to_json(const Poly& p) {
  json arr = json::array();
  for (const cplx c : p.coeffs()) arr.push_back(to_json(c));
  json j;
  j["coeffs"] = arr;
  return j;
}

inline Poly poly_from_json(const json& j) {
  if (!j.is_object() || !j.contains("coeffs") || !j["coeffs"].is_array())
    throw Error(ErrorKind::parse, "polynomial JSON needs a 'coeffs' array");
  std::vector<cplx> c;
  for (const auto& x : j["coeffs"]) c.push_back(detail::complex_from_json(x));
  Poly p(std::move(c));
  if (p.is_zero()) throw Error(ErrorKind::parse, "polynomial is identically zero");
  return p;
}

inline Poly poly_from_text(const std::string& text) { return poly_from_json(detail::parse_text(text)); }

inline json roots_json(const std::vector<RootMult>& roots) {
  json arr = json::array();
  for (const auto& r : roots) {
    json e;
    e["root"] = to_json(r.root);
    e["multiplicity"] = r.multiplicity;
    arr.push_back(e);
  }
  return arr;
}

/// Polynomial JSON extended with the factored fibres and the solver report.
inline json to_json(const SolvedTree& s, const Hypermap& input) {
  json j = to_json(s.shabat.poly);
  j["critical_values"] = json::array({to_json(s.shabat.critical_values.first), to_json(s.shabat.critical_values.second)});
  j["black_roots"] = roots_json(s.shabat.black_roots);
  j["white_roots"] = roots_json(s.shabat.white_roots);
  json r;
  r["input"] = to_json(input);
  r["seed"] = s.report.seed;
  r["start"] = s.report.start;
  r["starts_tried"] = s.report.starts_tried;
  r["iterations"] = s.report.iterations;
  r["wrong_class"] = s.report.wrong_class;
  r["residual"] = s.report.residual;
  j["report"] = r;
  return j;
}

inline json to_json(const TrackStats& s) {
  json j;
  j["accepted"] = s.accepted;
  j["rejected"] = s.rejected;
  j["smallest_step"] = s.smallest_step;
  return j;
}

/// Dessin JSON of the monodromy pair with a "report" block.
inline json to_json(const MonodromyResult& r) {
  json j;
  j["n"] = r.sigma.size();
  j["sigma"] = cycles_json(r.sigma);
  j["alpha"] = cycles_json(r.alpha);
  json rep;
  rep["basepoint"] = to_json(r.basepoint);
  json fib = json::array();
  for (const cplx z : r.fiber) fib.push_back(to_json(z));
  rep["fiber"] = fib;
  rep["sigma"] = r.sigma.to_string();
  rep["alpha"] = r.alpha.to_string();
  rep["phi"] = r.phi.to_string();
  rep["phi_tracked"] = r.phi_tracked.to_string();
  json steps;
  steps["sigma"] = to_json(r.sigma_stats);
  steps["alpha"] = to_json(r.alpha_stats);
  steps["infinity"] = to_json(r.phi_stats);
  rep["steps"] = steps;
  j["report"] = rep;
  return j;
}

// ---------------------------------------------------------------------------
// ODEs: {"order": int, "q2": poly, "q1": poly, "q0": poly, "family": str, "n": int}

inline json to_json(const RationalPoly& p) {
  json j = to_json(p.to_poly());
  json exact = json::array();
  for (const auto& r : p.coeffs) exact.push_back(r.to_string());
  j["rational"] = exact;
  return j;
}

inline json to_json(const ODESpec& ode) {
  json j;
  j["order"] = ode.order;
  j["q2"] = to_json(ode.q2);
  j["q1"] = to_json(ode.q1);
  j["q0"] = to_json(ode.q0);
  j["family"] = std::string(to_string(ode.family));
  j["n"] = ode.n;
  return j;
}

inline json to_json(const VerificationReport& r) {
  json j;
  j["family"] = std::string(to_string(r.family));
  j["n"] = r.n;
  j["samples"] = r.samples;
  j["degree"] = r.degree;
  j["branch_max_residual"] = r.branch_max;
  j["max_residual"] = r.max_residual;
  j["threshold"] = r.threshold;
  j["template_ok"] = r.template_ok;
  j["pass"] = r.pass;
  if (!r.failure.empty()) j["failure"] = r.failure;
  return j;
}

inline json error_json(const Error& e) {
  json j;
  j["error"] = std::string(to_string(e.kind()));
  j["message"] = e.what();
  if (const auto* ne = dynamic_cast<const NumericError*>(&e)) j["value"] = ne->value();
  return j;
}

// ---------------------------------------------------------------------------
// DOT

/// Undirected DOT graph: black vertices filled, white vertices open, one
/// edge per half-edge label, faces listed in a leading comment block.
inline std::string to_dot(const Hypermap& h) {
  const auto black = h.sigma().cycles().cycles;
  const auto white = h.alpha().cycles().cycles;
  std::vector<std::size_t> bof(static_cast<std::size_t>(h.n())), wof(static_cast<std::size_t>(h.n()));
  for (std::size_t i = 0; i < black.size(); ++i)
    for (Label e : black[i]) bof[static_cast<std::size_t>(e - 1)] = i;
  for (std::size_t i = 0; i < white.size(); ++i)
    for (Label e : white[i]) wof[static_cast<std::size_t>(e - 1)] = i;

  std::ostringstream os;
  os << "// faces (phi): " << h.phi().to_string() << "\n";
  for (const auto& face : h.phi().cycles().cycles) {
    os << "// face of degree " << face.size() << ":";
    for (Label e : face) os << ' ' << e;
    os << "\n";
  }
  os << "graph dessin {\n";
  os << "  node [shape=circle, label=\"\", width=0.2];\n";
  for (std::size_t i = 0; i < black.size(); ++i)
    os << "  b" << i + 1 << " [style=filled, fillcolor=black];\n";
  for (std::size_t i = 0; i < white.size(); ++i)
    os << "  w" << i + 1 << " [style=solid, fillcolor=white];\n";
  for (Label e = 1; e <= h.n(); ++e)
    os << "  b" << bof[static_cast<std::size_t>(e - 1)] + 1 << " -- w" << wof[static_cast<std::size_t>(e - 1)] + 1
       << " [label=\"" << e << "\"];\n";
  os << "}\n";
  return os.str();
}

}  // namespace dessin::io
