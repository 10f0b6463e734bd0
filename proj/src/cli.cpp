#include "freemv/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

#include "freemv/json_io.hpp"
#include "freemv/term.hpp"

namespace freemv::cli {

namespace {

using json::Json;

// Input the user got wrong: reported with exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw UsageError("'" + path + "' is not valid JSON: " + e.what());
  }
}

// lebesgue | farey:D | mix:D | inline JSON | path to a JSON file
StateSpec parse_state(const std::string& spec) {
  auto number = [&](const std::string& text) {
    try {
      std::size_t used = 0;
      unsigned long d = std::stoul(text, &used);
      if (used != text.size() || d == 0) throw std::invalid_argument("");
      return d;
    } catch (const std::exception&) {
      throw UsageError("bad denominator in state '" + spec + "'");
    }
  };
  if (spec == "lebesgue") return StateSpec::lebesgue();
  if (spec.rfind("farey:", 0) == 0) return StateSpec::farey(number(spec.substr(6)));
  if (spec.rfind("mix:", 0) == 0) return StateSpec::half_mixture(number(spec.substr(4)));
  Json j;
  if (!spec.empty() && spec.front() == '{') {
    try {
      j = Json::parse(spec);
    } catch (const Json::parse_error& e) {
      throw UsageError(std::string("state is not valid JSON: ") + e.what());
    }
  } else {
    j = read_json_file(spec);
  }
  try {
    return json::decode_state(j);
  } catch (const std::exception& e) {
    throw UsageError(std::string("bad state: ") + e.what());
  }
}

// Builds the term on its own variables, then cylinders up to n (n = 0: no
// bound, the term decides).
PwlFunction term_function(const std::string& text, std::size_t n) {
  Term t;
  try {
    t = parse_term(text, n == 0 ? std::numeric_limits<std::size_t>::max() : n);
  } catch (const ParseError& e) {
    throw UsageError(e.what());
  } catch (const std::out_of_range& e) {
    throw UsageError(e.what());
  }
  const std::size_t used = std::max<std::size_t>(1, max_variable(t));
  PwlFunction f = term_to_pwl(t, used);
  return used < n ? cylinder(f, n) : f;
}

Rational parse_rational_arg(const std::string& text) {
  try {
    return parse_rational(text);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

std::size_t state_dim_check(std::size_t n) {
  if (n == 0) throw UsageError("--n must be positive");
  return n;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact computations with McNaughton functions, states and homeomorphisms of the cube"};
  app.require_subcommand(1);
  int indent = -1;
  app.add_option("--json-indent", indent, "Pretty-print JSON with this indent");

  int code = kOk;
  Json result;

  // integrate
  std::size_t n = 1;
  std::string term, state = "lebesgue";
  auto* integrate = app.add_subcommand("integrate", "Evaluate a state on a term");
  integrate->add_option("--n", n, "Ambient dimension")->required();
  integrate->add_option("--term", term, "Term, e.g. \"!( !x1 + !x1 )\"")->required();
  integrate->add_option("--state", state, "lebesgue | farey:D | mix:D | JSON | file");
  integrate->callback([&] {
    PwlFunction f = term_function(term, state_dim_check(n));
    result = Json{{"value", json::encode(state_eval(parse_state(state), f))}};
  });

  // farey
  unsigned long d = 1;
  auto* farey = app.add_subcommand("farey", "List the points of denominator d");
  farey->add_option("--n", n)->required();
  farey->add_option("--d", d)->required()->check(CLI::PositiveNumber);
  farey->callback([&] {
    auto pts = farey_points(state_dim_check(n), d);
    Json ps = Json::array();
    for (const auto& p : pts) ps.push_back(json::encode(p));
    result = Json{{"n", n}, {"d", d}, {"count", pts.size()}, {"points", ps}};
  });

  // validate-map
  std::string map_file;
  auto* validate_cmd = app.add_subcommand("validate-map", "Check the McNaughton homeomorphism conditions");
  validate_cmd->add_option("--map", map_file, "PwlMap JSON file")->required();
  validate_cmd->callback([&] {
    PwlMap m = [&] {
      try {
        return json::decode_map(read_json_file(map_file));
      } catch (const std::invalid_argument& e) {
        throw UsageError(std::string("bad map: ") + e.what());
      }
    }();
    ValidationReport r = validate(m);
    result = json::encode(r);
    if (!r.passed) code = kViolation;
  });

  // gen-map
  std::string kind;
  unsigned k = 0;
  std::string out_file;
  std::size_t map_n = 2;
  auto* gen = app.add_subcommand("gen-map", "Emit a generator as PwlMap JSON");
  gen->add_option("--kind", kind)->required()->check(CLI::IsMember({"id", "flip", "perm", "Rprime", "R", "Sprime", "S"}));
  gen->add_option("--k", k);
  gen->add_option("--n", map_n, "Dimension for id, flip and perm");
  gen->add_option("--out", out_file, "Write to this file instead of stdout");
  gen->callback([&] {
    PwlMap m = PwlMap::identity(1);
    std::vector<std::size_t> perm(state_dim_check(map_n));
    for (std::size_t i = 0; i < map_n; ++i) perm[i] = i + 1;
    std::vector<bool> flip(map_n, false);
    if (kind == "id") {
      m = gen_symmetry(map_n, perm, flip).map();
    } else if (kind == "flip") {
      flip[0] = true;
      m = gen_symmetry(map_n, perm, flip).map();
    } else if (kind == "perm") {
      if (map_n < 2) throw UsageError("perm needs --n >= 2");
      std::swap(perm[0], perm[1]);
      m = gen_symmetry(map_n, perm, flip).map();
    } else if (kind == "Rprime") {
      m = gen_R_prime(k).map();
    } else if (kind == "R") {
      m = gen_R(k).map();
    } else if (kind == "Sprime") {
      m = gen_S_prime(k);
    } else {
      m = gen_S(k).map();
    }
    if (out_file.empty()) {
      result = json::encode(m);
    } else {
      std::ofstream f(out_file);
      if (!f) throw UsageError("cannot write '" + out_file + "'");
      f << json::encode(m).dump(indent) << '\n';
      result = Json{{"written", out_file}, {"cells", m.complex().size()}};
    }
  });

  // invariance
  std::uint64_t seed = 0;
  std::size_t terms = 10, word_len = 6, term_depth = 6;
  auto* inv = app.add_subcommand("invariance", "Compare a state with its push-forward under a random word");
  inv->add_option("--n", n)->required();
  inv->add_option("--seed", seed);
  inv->add_option("--terms", terms);
  inv->add_option("--word-len", word_len);
  inv->add_option("--depth", term_depth, "Maximum depth of the random terms");
  inv->add_option("--state", state);
  inv->callback([&] {
    const std::size_t dim = state_dim_check(n);
    McNaughtonHomeo w = random_word(dim, seed, word_len);
    std::mt19937_64 rng(seed);
    std::vector<PwlFunction> fs;
    Json ts = Json::array();
    for (std::size_t i = 0; i < terms; ++i) {
      Term t = random_term(dim, term_depth, rng);
      ts.push_back(to_string(t));
      fs.push_back(term_to_pwl(t, dim));
    }
    InvarianceReport r = invariance_check(parse_state(state), w, fs);
    result = json::encode(r);
    result["terms"] = ts;
    result["word_cells"] = w.map().complex().size();
    if (!r.all_equal) code = kViolation;
  });

  // coherence
  auto* coh = app.add_subcommand("coherence", "Compare mu^n(f) with mu^{n+1}(cylinder f), mu = 1/2 lambda + 1/2 nu_d");
  coh->add_option("--d", d)->required()->check(CLI::PositiveNumber);
  coh->add_option("--term", term)->required();
  std::size_t coh_n = 0;
  coh->add_option("--n", coh_n, "Dimension of the lower cube (default: variables of the term)");
  coh->callback([&] {
    PwlFunction f = term_function(term, coh_n);
    CoherenceReport r = coherence_check(d, f);
    result = json::encode(r);
    result["n"] = f.n();
    if (!r.coherent) code = kViolation;
  });

  // conjugacy
  std::size_t samples = 1000;
  auto* conj = app.add_subcommand("conjugacy", "Exact chart conjugation checks");
  conj->add_option("--kind", kind)->required()->check(CLI::IsMember({"R", "S", "Rprime", "Sprime", "ell"}));
  conj->add_option("--k", k);
  conj->add_option("--samples", samples);
  conj->callback([&] {
    if (kind == "ell") {
      auto r = ell::conjugacy_check_simplex(samples);
      result = json::encode(r);
      if (!r.all_equal) code = kViolation;
      return;
    }
    const ChartKind ck = kind.front() == 'R' ? ChartKind::SquareM : ChartKind::RhombusN;
    ConjugationReport r = kind.size() == 1 ? conjugation_check(ck, k, samples) : quarter_step_check(ck, k, samples);
    result = json::encode(r);
    if (!r.all_equal) code = kViolation;
  });

  // birkhoff
  std::string alpha = "golden";
  std::size_t iters = 100000, bins = 16;
  auto* birk = app.add_subcommand("birkhoff", "Empirical equidistribution of a twist circle (floating point)");
  birk->add_option("--k", k);
  birk->add_option("--alpha", alpha, "golden or a number in [0,1)");
  birk->add_option("--iters", iters);
  birk->add_option("--bins", bins)->check(CLI::PositiveNumber);
  birk->callback([&] {
    double a = 0;
    if (alpha == "golden") {
      a = (std::sqrt(5.0) - 1) / 2;
    } else {
      try {
        std::size_t used = 0;
        a = std::stod(alpha, &used);
        if (used != alpha.size()) throw std::invalid_argument("");
      } catch (const std::exception&) {
        throw UsageError("--alpha must be 'golden' or a number");
      }
    }
    if (!(a >= 0 && a < 1)) throw UsageError("--alpha must lie in [0,1)");
    result = Json{{"k", k}, {"alpha", a}, {"iterations", iters}, {"bins", bins},
                  {"sup_deviation", birkhoff_equidistribution(k, a, iters, bins)}};
  });

  // orbit
  std::string t0 = "9/10";
  bool as_float = false;
  auto* orb = app.add_subcommand("orbit", "Iterate the dual map S on [0,1]");
  orb->add_option("--t0", t0);
  std::size_t orbit_iters = 100;
  orb->add_option("--iters", orbit_iters);
  orb->add_flag("--float", as_float, "Double precision (for long orbits)");
  orb->callback([&] {
    Rational start = parse_rational_arg(t0);
    if (start < 0 || start > 1) throw UsageError("--t0 must lie in [0,1]");
    Json xs = Json::array();
    if (as_float) {
      for (double x : ell::orbit_float(start.get_d(), orbit_iters)) xs.push_back(x);
    } else {
      for (const auto& x : ell::orbit(start, orbit_iters)) xs.push_back(json::encode(x));
    }
    result = Json{{"t0", json::encode(start)}, {"orbit", xs}};
  });

  // boxcheck
  unsigned depth = 2;
  std::size_t box_n = 2;
  auto* box = app.add_subcommand("boxcheck", "Tent probes of a state over dyadic boxes of the cube");
  box->add_option("--state", state)->required();
  box->add_option("--depth", depth);
  box->add_option("--n", box_n);
  box->callback([&] {
    result = json::encode(box_density_check(parse_state(state), unit_cube_polytope(state_dim_check(box_n)), depth));
  });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return kUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  out << result.dump(indent) << '\n';
  return code;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, out, err);
}

}  // namespace freemv::cli
