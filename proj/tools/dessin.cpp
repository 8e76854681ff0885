// Command-line front end: dessin <subcommand> [options]
//
// Reads dessin / polynomial JSON from --input (or stdin), writes JSON, DOT or
// text to --output (or stdout). Exit codes: 0 success, 1 domain error (error
// JSON on stderr), 2 usage error.

#include <complex>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dessin/dessin.hpp"

namespace {

using dessin::io::json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_all(const std::string& path) {
  if (path == "-") {
    return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  }
  std::ifstream in(path);
  if (!in) throw dessin::Error(dessin::ErrorKind::parse, "cannot open input '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string join(const std::vector<int>& v) {
  std::string s = "{";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + "}";
}

struct Options {
  std::string input = "-";
  std::string output = "-";
  std::string format = "json";
  std::uint64_t seed = 1;

  dessin::TrackConfig track;
  std::complex<double> basepoint{0.5, 0.0};
  int max_starts = 50;
  std::size_t group_cap = 1000000;

  int enum_n = 0;
  std::string family;
  int ode_n = 0;
  bool verify = false;
  int samples = 20;
  std::vector<std::string> iso_inputs;
};

void require_format(const Options& o, std::initializer_list<const char*> allowed, const std::string& cmd) {
  for (const char* f : allowed)
    if (o.format == f) return;
  throw UsageError("--format " + o.format + " is not supported by '" + cmd + "'");
}

std::string dump(const json& j) { return j.dump() + "\n"; }

std::string run_validate(const Options& o) {
  require_format(o, {"json", "text"}, "validate");
  const dessin::Hypermap h = dessin::io::hypermap_from_text(read_all(o.input));
  const bool relation = dessin::compose(dessin::compose(h.sigma(), h.alpha()), h.phi()).is_identity();
  const bool transitive = dessin::is_transitive({h.sigma(), h.alpha()}, h.n());
  if (o.format == "text") return std::string("valid: n=") + std::to_string(h.n()) + "\n";
  json j;
  j["valid"] = relation && transitive;
  j["n"] = h.n();
  j["relation"] = relation;
  j["transitive"] = transitive;
  j["phi"] = dessin::io::cycles_json(h.phi());
  return dump(j);
}

std::string run_info(const Options& o) {
  require_format(o, {"json", "text"}, "info");
  const dessin::Hypermap h = dessin::io::hypermap_from_text(read_all(o.input));
  const dessin::GenusReport g = dessin::genus(h);
  const dessin::Passport pp = dessin::passport(h);
  const auto order = dessin::group_order({h.sigma(), h.alpha()}, h.n(), o.group_cap);
  if (o.format == "text") {
    std::ostringstream os;
    os << "n: " << h.n() << "\n"
       << "genus: " << g.genus << " (chi " << g.chi << ")\n"
       << "black: " << join(pp.black_degrees) << "\n"
       << "white: " << join(pp.white_degrees) << "\n"
       << "faces: " << join(pp.face_degrees) << "\n"
       << "phi: " << h.phi().to_string() << "\n"
       << "plane_tree: " << (dessin::is_plane_tree(h) ? "true" : "false") << "\n"
       << "group_order: " << (order ? std::to_string(*order) : "> " + std::to_string(o.group_cap)) << "\n";
    return os.str();
  }
  json j;
  j["n"] = h.n();
  j["genus"] = g.genus;
  j["chi"] = g.chi;
  j["black"] = pp.black_degrees;
  j["white"] = pp.white_degrees;
  j["faces"] = pp.face_degrees;
  j["phi"] = dessin::io::cycles_json(h.phi());
  j["plane_tree"] = dessin::is_plane_tree(h);
  j["group_order"] = order ? json(*order) : json(nullptr);
  j["group_order_overflow"] = !order.has_value();
  j["group_order_cap"] = o.group_cap;
  return dump(j);
}

std::string run_canon(const Options& o) {
  require_format(o, {"json", "text", "dot"}, "canon");
  const dessin::Hypermap c = dessin::canonical_form(dessin::io::hypermap_from_text(read_all(o.input)));
  if (o.format == "dot") return dessin::io::to_dot(c);
  if (o.format == "text") return c.sigma().to_string() + " " + c.alpha().to_string() + "\n";
  return dump(dessin::io::to_json(c));
}

std::string run_iso(const Options& o) {
  require_format(o, {"json", "text"}, "iso");
  std::vector<std::string> files = o.iso_inputs;
  if (files.size() == 1) files.insert(files.begin(), o.input);
  if (files.size() != 2) throw UsageError("iso needs two dessins");
  if (files[0] == "-" && files[1] == "-") throw UsageError("iso can read at most one dessin from stdin");
  const dessin::Hypermap a = dessin::io::hypermap_from_text(read_all(files[0]));
  const dessin::Hypermap b = dessin::io::hypermap_from_text(read_all(files[1]));
  return dessin::is_isomorphic(a, b) ? "true\n" : "false\n";
}

std::string run_enumerate(const Options& o) {
  require_format(o, {"json", "text"}, "enumerate");
  if (o.enum_n > dessin::kEnumerationFast && o.enum_n <= dessin::kEnumerationLimit)
    std::cerr << "warning: enumerating n=" << o.enum_n << " may take a while\n";
  const auto all = dessin::enumerate(o.enum_n);
  if (o.format == "text") {
    std::string s;
    for (const auto& h : all) s += h.sigma().to_string() + " " + h.alpha().to_string() + "\n";
    return s;
  }
  json arr = json::array();
  for (const auto& h : all) arr.push_back(dessin::io::to_json(h));
  return dump(arr);
}

std::string run_shabat(const Options& o) {
  require_format(o, {"json"}, "shabat");
  const dessin::Hypermap tree = dessin::io::hypermap_from_text(read_all(o.input));
  dessin::SolverConfig cfg;
  cfg.seed = o.seed;
  cfg.max_starts = o.max_starts;
  cfg.track = o.track;
  cfg.track.basepoint = o.basepoint;
  const dessin::SolvedTree s = dessin::solve_tree(tree, cfg);
  return dump(dessin::io::to_json(s, tree));
}

std::string run_monodromy(const Options& o) {
  require_format(o, {"json", "text"}, "monodromy");
  const dessin::Poly p = dessin::io::poly_from_text(read_all(o.input));
  dessin::TrackConfig cfg = o.track;
  cfg.basepoint = o.basepoint;
  const dessin::MonodromyResult r = dessin::monodromy_pair(p, cfg);
  if (o.format == "text")
    return "sigma: " + r.sigma.to_string() + "\nalpha: " + r.alpha.to_string() + "\nphi: " + r.phi.to_string() + "\n";
  return dump(dessin::io::to_json(r));
}

std::string run_ode(const Options& o) {
  require_format(o, {"json", "text"}, "ode");
  const dessin::Family f = dessin::parse_family(o.family);
  const dessin::ODESpec ode = dessin::ode_for_family(f, o.ode_n);
  json j = dessin::io::to_json(ode);
  dessin::VerificationReport rep;
  if (o.verify) {
    dessin::VerifyConfig vc;
    vc.seed = o.seed;
    rep = dessin::verify_family(f, o.ode_n, o.samples, vc);
    j["verification"] = dessin::io::to_json(rep);
  }
  if (o.format == "text") {
    std::ostringstream os;
    auto poly = [](const dessin::RationalPoly& p) {
      std::string s;
      for (int k = 0; k <= p.degree(); ++k) s += (k ? " " : "") + p.coeff(k).to_string();
      return "[" + s + "]";
    };
    os << "family: " << dessin::to_string(f) << " n=" << o.ode_n << " order " << ode.order << "\n"
       << "q2: " << poly(ode.q2) << "\nq1: " << poly(ode.q1) << "\nq0: " << poly(ode.q0) << "\n";
    if (o.verify) os << "verify: " << (rep.pass ? "pass" : "FAIL") << " max residual " << rep.max_residual << "\n";
    return os.str();
  }
  return dump(j);
}

std::string run_render(const Options& o) {
  if (o.format != "json" && o.format != "dot") throw UsageError("render emits DOT only");
  return dessin::io::to_dot(dessin::io::hypermap_from_text(read_all(o.input)));
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"Dessins d'enfants: permutation pairs, Shabat polynomials, monodromy and hypergeometric ODEs"};
  app.require_subcommand(1, 1);
  app.fallthrough();
  app.set_config("--config", "", "key=value file mirroring the long options");

  app.add_option("--input", o.input, "input file, '-' for stdin");
  app.add_option("--output", o.output, "output file, '-' for stdout");
  app.add_option("--format", o.format, "output format")->check(CLI::IsMember({"json", "dot", "text"}));
  app.add_option("--seed", o.seed, "random seed for solver starts and ODE sampling");
  app.add_option("--loop-radius,--loop_radius", o.track.loop_radius, "radius of the loops around 0 and 1");
  app.add_option("--initial-step,--initial_step", o.track.initial_step, "initial tracking step (fraction of path length)");
  app.add_option("--min-step,--min_step", o.track.min_step, "minimal tracking step (fraction of path length)");
  app.add_option("--guard-factor,--guard_factor", o.track.guard_factor, "collision guard as a fraction of point separation");
  app.add_option("--infinity-radius,--infinity_radius", o.track.infinity_radius, "radius of the loop around infinity");
  app.add_option("--basepoint", o.basepoint, "basepoint of the loops (complex)");
  app.add_option("--max-starts,--max_starts", o.max_starts, "Shabat solver start budget")->check(CLI::PositiveNumber);
  app.add_option("--group-cap,--group_cap", o.group_cap, "element cap for the cartographic group order")
      ->check(CLI::PositiveNumber);

  app.add_subcommand("validate", "check sigma*alpha*phi = 1 and transitivity of a dessin");
  app.add_subcommand("info", "genus, passport, tree flag and cartographic group order");
  app.add_subcommand("canon", "canonical form of a dessin");
  auto* iso = app.add_subcommand("iso", "test two dessins for isomorphism");
  iso->add_option("dessins", o.iso_inputs, "one or two dessin files ('-' for stdin)")->expected(1, 2);
  auto* en = app.add_subcommand("enumerate", "all dessins with n edges up to isomorphism");
  en->add_option("--n", o.enum_n, "number of edges")->required()->check(CLI::PositiveNumber);
  app.add_subcommand("shabat", "realize a plane tree as a Shabat polynomial");
  app.add_subcommand("monodromy", "dessin of a polynomial Belyi map by path tracking");
  auto* ode = app.add_subcommand("ode", "hypergeometric ODE of a tree family");
  ode->add_option("--family", o.family, "star, two_star or chain")->required();
  ode->add_option("--n", o.ode_n, "family parameter")->required()->check(CLI::PositiveNumber);
  ode->add_flag("--verify", o.verify, "check that every inverse branch solves the ODE");
  ode->add_option("--samples", o.samples, "sample points for --verify")->check(CLI::PositiveNumber);
  app.add_subcommand("render", "DOT drawing of a dessin");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  const std::string cmd = app.get_subcommands().front()->get_name();
  try {
    std::string out;
    if (cmd == "validate") out = run_validate(o);
    else if (cmd == "info") out = run_info(o);
    else if (cmd == "canon") out = run_canon(o);
    else if (cmd == "iso") out = run_iso(o);
    else if (cmd == "enumerate") out = run_enumerate(o);
    else if (cmd == "shabat") out = run_shabat(o);
    else if (cmd == "monodromy") out = run_monodromy(o);
    else if (cmd == "ode") out = run_ode(o);
    else if (cmd == "render") out = run_render(o);

    if (o.output == "-") {
      std::cout << out;
    } else {
      std::ofstream f(o.output);
      if (!f) throw dessin::Error(dessin::ErrorKind::parse, "cannot open output '" + o.output + "'");
      f << out;
    }
    return 0;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const dessin::Error& e) {
    std::cerr << dessin::io::error_json(e).dump() << "\n";
    return 1;
  }
}
