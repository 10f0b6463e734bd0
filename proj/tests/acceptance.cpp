// End-to-end acceptance run: one line per criterion, with its runtime budget.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <type_traits>
#include <vector>

#include "freemv/dynamics.hpp"
#include "freemv/ellgroup.hpp"
#include "freemv/homeo.hpp"
#include "freemv/measures.hpp"
#include "freemv/pwl.hpp"
#include "freemv/term.hpp"
#include "support.hpp"

using namespace freemv;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

struct Criterion {
  int id;
  const char* title;
  double limit_seconds;
  std::function<Outcome()> run;
  // Set when the stated target is known to be out of reach; the run still
  // reports FAIL but does not fail the process.
  const char* known_gap = nullptr;
};

PwlFunction fn(const char* src, std::size_t n) { return term_to_pwl(parse_term(src, n), n); }

std::string str(const Rational& q) { return to_string(q); }

Outcome mixture_values() {
  Outcome o;
  const PwlFunction f = fn("!( !x1 + !x1 )", 1);
  const Rational mu1 = state_eval(StateSpec::half_mixture(4), f);
  const Rational mu2 = state_eval(StateSpec::half_mixture(4), cylinder(f, 2));
  o.require(mu1 == frac(1, 4), "mu^1(f) = " + str(mu1));
  o.require(mu2 == frac(17, 64), "mu^2(f) = " + str(mu2));
  o.require(farey_points(1, 4).size() == 2, "#A^1_4");
  o.require(farey_points(2, 4).size() == 16, "#A^2_4");
  o.require(testsupport::farey_numerators(2, 4).size() == 16, "#A^2_4 oracle");
  const CoherenceReport c = coherence_check(4, f);
  o.require(!c.coherent && c.value_n == mu1 && c.value_n_plus_1 == mu2, "coherence report");
  if (o.ok) o.detail = "mu^1 = 1/4, mu^2 = 17/64, #A^1_4 = 2, #A^2_4 = 16, incoherent";
  return o;
}

Outcome reference_matrix() {
  Outcome o;
  for (unsigned k = 0; k <= 5; ++k) {
    const PwlMap m = gen_R_prime(k).map();
    const long kk = k;
    const Matrix expect = Matrix::from_rows({{1, 0, 0}, {Rational(-2 * kk - 1), 1, Rational(kk + 1)}, {0, 0, 1}});
    const std::size_t cell = r_prime_reference_cell(k);
    std::vector<Point> tri = m.complex().cell_points(cell);
    const std::set<Point> want{p_point(k + 1, 0), p_point(k, 0), p_point(k, 1)};
    o.require(std::set<Point>(tri.begin(), tri.end()) == want, "reference cell k=" + std::to_string(k));
    o.require(m.matrices()[cell] == expect, "reference matrix k=" + std::to_string(k));
    o.require(validate(m).passed, "validate k=" + std::to_string(k));
    for (const auto& p : m.matrices()) o.require(p.determinant() == 1, "determinant k=" + std::to_string(k));
  }
  if (o.ok) o.detail = "k=0..5 entry-for-entry, all determinants +1";
  return o;
}

Outcome conjugation() {
  Outcome o;
  for (unsigned k = 0; k <= 3; ++k) {
    const ConjugationReport r = conjugation_check(ChartKind::SquareM, k, 1000);
    o.require(r.all_equal && r.samples == 1000, "R_k o M = M o T_k, k=" + std::to_string(k));
  }
  for (unsigned k = 0; k <= 2; ++k) {
    const ConjugationReport r = conjugation_check(ChartKind::RhombusN, k, 1000);
    o.require(r.all_equal && r.samples == 1000, "S_k o N = N o twist, k=" + std::to_string(k));
  }
  if (o.ok) o.detail = "square k=0..3, rhombus k=0..2, 1000 samples each";
  return o;
}

Outcome s_prime() {
  Outcome o;
  for (unsigned k = 0; k <= 3; ++k) {
    const PwlMap sp = gen_S_prime(k);
    const ValidationReport r = validate(sp);
    bool integrality = false;
    for (const auto& f : r.failures) integrality = integrality || f.condition == "integrality";
    o.require(!r.passed && integrality, "S'_k integrality failure, k=" + std::to_string(k));
    const PwlMap sq = power(sp, 2);
    o.require(validate(sq).passed, "(S'_k)^2, k=" + std::to_string(k));
    o.require(validate(power(sq, 2)).passed, "(S'_k)^4, k=" + std::to_string(k));
  }
  if (o.ok) o.detail = "k=0..3: S'_k non-integral, squares and fourth powers valid";
  return o;
}

Outcome invariance() {
  Outcome o;
  std::size_t checked = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const McNaughtonHomeo w = random_word(2, seed, 6);
    std::mt19937_64 rng(seed);
    std::vector<PwlFunction> fs;
    for (int i = 0; i < 50; ++i) fs.push_back(term_to_pwl(random_term(2, 6, rng), 2));
    const InvarianceReport leb = invariance_check(StateSpec::lebesgue(), w, fs);
    o.require(leb.all_equal, "Lebesgue, seed " + std::to_string(seed));
    checked += leb.values.size();
    const std::vector<PwlFunction> few(fs.begin(), fs.begin() + 5);
    for (unsigned long d = 2; d <= 5; ++d) {
      o.require(invariance_check(StateSpec::farey(d), w, few).all_equal,
                "Farey d=" + std::to_string(d) + ", seed " + std::to_string(seed));
      for (const auto& p : farey_points(2, d))
        o.require(denominator(apply_map(w, p)) == d, "den(S(p)) at seed " + std::to_string(seed));
    }
  }
  if (o.ok)
    o.detail = std::to_string(checked) +
               " Lebesgue equalities; Farey d=2..5 invariant and denominators preserved on 20 words";
  return o;
}

Outcome pseudotruth() {
  Outcome o;
  static_assert(std::is_same_v<decltype(integrate(std::declval<PwlFunction>())), Rational>);
  std::mt19937_64 rng(6);
  int zeros = 0;
  for (int i = 0; i < 200; ++i) {
    const std::size_t n = 1 + i % 2;
    const PwlFunction f = term_to_pwl(random_term(n, 5, rng), n);
    o.require((integrate(f) == 0) == f.is_zero(), "faithfulness on random term " + std::to_string(i));
    zeros += f.is_zero();
  }
  const unsigned ks[] = {1, 2, 4, 8, 16, 32};
  const auto family_sup = [&](const PwlFunction& f, const Rational& sup, const std::string& name) {
    Rational prev = -1;
    for (unsigned k : ks) {
      const Rational v = integrate(k_fold(f, k));
      o.require(v >= prev, name + ": lambda(kf) decreases at k=" + std::to_string(k));
      o.require(v <= sup, name + ": lambda(kf) exceeds its supremum");
      // Piecewise-linear: the gap to the supremum closes at least like 1/k.
      o.require((sup - v) * k <= 1, name + ": gap at k=" + std::to_string(k));
      prev = v;
    }
    o.require(support_volume(f) == sup, name + ": lambda(supp f)");
  };
  family_sup(PwlFunction::constant(2, 1), 1, "1");
  family_sup(fn("((x1 - x2) + (x2 - x1))", 2), 1, "|x1-x2|");
  family_sup(fn("(x1 + !x1)", 2), 1, "x1 + !x1");
  family_sup(fn("(x1 | !x1)", 2), 1, "x1 | !x1");
  family_sup(fn("((x1 + !x2) & (x2 + !x1))", 2), 1, "(x1 + !x2) & (x2 + !x1)");
  for (unsigned k : ks) {
    const Rational d = integrate(k_fold(fn("((x1 - x2) + (x2 - x1))", 2), k));
    o.require(d == 1 - Rational(1, k) + Rational(1, 3 * k * k), "|x1-x2| closed form");
  }
  const PwlFunction half = fn("(x1 . x1)", 1);
  family_sup(half, frac(1, 2), "max(0, 2x1-1)");
  for (unsigned k : ks)
    o.require(integrate(k_fold(half, k)) == frac(1, 2) - Rational(1, 4 * k), "max(0,2x1-1) closed form");
  o.require(!is_pseudotrue(half), "max(0,2x1-1) is not pseudotrue");
  if (o.ok)
    o.detail = "200 random terms (" + std::to_string(zeros) +
               " zero); pseudotrue family sup 1; max(0,2x1-1) sup 1/2";
  return o;
}

Outcome ergodicity() {
  Outcome o;
  const double golden = (std::sqrt(5.0) - 1) / 2;
  const double dev = birkhoff_equidistribution(1, golden, 100000, 16);
  const double control = birkhoff_equidistribution(1, 0.0, 100000, 16);
  o.require(dev < 0.01, "golden deviation " + std::to_string(dev));
  o.require(control > 0.5, "rational control deviation " + std::to_string(control));
  std::ostringstream s;
  s << "golden sup deviation " << dev << ", rotation 0 control " << control;
  if (o.ok) o.detail = s.str();
  return o;
}

Outcome ell_demo() {
  Outcome o;
  o.require(ell::dual_S(frac(1, 2)) == frac(1, 3), "S(1/2)");
  o.require(frac(1, 2) / (1 + frac(1, 2)) == frac(1, 3) && (1 - frac(1, 2)) / (4 - 5 * frac(1, 2)) == frac(1, 3),
            "branches at 1/2");
  o.require(ell::dual_S(frac(2, 3)) == frac(1, 2), "S(2/3)");
  o.require((1 - frac(2, 3)) / (4 - 5 * frac(2, 3)) == frac(1, 2) && (2 * frac(2, 3) - 1) / frac(2, 3) == frac(1, 2),
            "branches at 2/3");
  o.require(ell::conjugacy_check_simplex(1000).all_equal, "conjugacy on 1000 samples");
  const auto fixed = ell::orbit(1, 100);
  for (const auto& t : fixed) o.require(t == 1, "t=1 is not fixed");
  const auto orb = ell::orbit(frac(9, 10), 100);
  std::size_t first = orb.size();
  for (std::size_t i = 0; i < orb.size() && first == orb.size(); ++i)
    if (orb[i] < frac(1, 100)) first = i;
  o.require(first < orb.size(), "orbit of 9/10 after 100 steps is " + str(orb.back()) + " (not < 1/100)");
  if (o.ok) o.detail = "branch agreement, 1000-sample conjugacy, orbit below 1/100 at step " + std::to_string(first);
  return o;
}

Outcome oracles() {
  Outcome o;
  std::mt19937_64 rng(9);
  std::size_t points = 0;
  double worst = 0;
  for (int i = 0; i < 100; ++i) {
    const std::size_t n = 1 + i % 2;
    const Term t = random_term(n, 5, rng);
    const PwlFunction f = term_to_pwl(t, n);
    const double exact = integrate(f).get_d();
    const double riemann = testsupport::riemann(
        [&t](const std::vector<double>& x) { return testsupport::interpret<double>(t, x); }, n, 512);
    const double tol = 4 * lipschitz_bound(t).get_d() / 512;
    worst = std::max(worst, std::abs(exact - riemann));
    o.require(std::abs(exact - riemann) <= tol, "Riemann oracle on " + to_string(t));
    for (int j = 0; j < 100; ++j, ++points) {
      const Point p = testsupport::random_point(n, rng, 1000);
      o.require(eval(f, p) == testsupport::interpret_exact(t, p), "eval vs interpretation on " + to_string(t));
    }
  }
  std::ostringstream s;
  s << "100 terms, max |integral - riemann| = " << worst << ", " << points << " exact evaluations";
  if (o.ok) o.detail = s.str();
  return o;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "mixture states on one and two cubes", 1, mixture_values},
      {2, "quarter-turn reference matrix", 1, reference_matrix},
      {3, "chart conjugations", 120, conjugation},
      {4, "S'_k status", 60, s_prime},
      {5, "invariance at scale", 600, invariance},
      {6, "rationality, faithfulness, pseudotruth", 300, pseudotruth},
      {7, "Birkhoff equidistribution", 5, ergodicity},
      {8, "l-group demo", 10, ell_demo,
       "under the stated S the orbit of 9/10 is 1/(m-6) from step 8 on, so it first drops below 1/100 at step 107"},
      {9, "oracle equivalence", 600, oracles},
  };
  int unexpected = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o = c.run();
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs >= c.limit_seconds) o.require(false, "runtime over budget");
    std::printf("criterion %d %s: %s (%.2f s, limit %.0f s) -- %s\n", c.id, c.title, o.ok ? "PASS" : "FAIL", secs,
                c.limit_seconds, o.detail.c_str());
    if (!o.ok && c.known_gap) std::printf("  known gap: %s\n", c.known_gap);
    if (!o.ok && !c.known_gap) ++unexpected;
    std::fflush(stdout);
  }
  return unexpected == 0 ? 0 : 1;
}
