#include "freemv/measures.hpp"

#include <numeric>
#include <stdexcept>

namespace freemv {

StateSpec StateSpec::farey(unsigned long d) {
  if (d == 0) throw std::invalid_argument("farey: d must be positive");
  return {FareyCounting{d}};
}

StateSpec StateSpec::mixture(std::vector<std::pair<Rational, StateSpec>> parts) {
  Rational total = 0;
  for (const auto& [w, s] : parts) {
    if (w < 0 || w > 1) throw std::invalid_argument("mixture weight outside [0,1]");
    total += w;
  }
  if (total != 1) throw std::invalid_argument("mixture weights sum to " + to_string(total));
  return {Mixture{std::move(parts)}};
}

StateSpec StateSpec::pushforward(StateSpec base, McNaughtonHomeo map) {
  return {PushForward{std::make_shared<const StateSpec>(std::move(base)),
                      std::make_shared<const McNaughtonHomeo>(std::move(map))}};
}

StateSpec StateSpec::half_mixture(unsigned long d) {
  return mixture({{Rational(1, 2), lebesgue()}, {Rational(1, 2), farey(d)}});
}

std::string StateSpec::describe() const {
  struct Visitor {
    std::string operator()(const Lebesgue&) const { return "lebesgue"; }
    std::string operator()(const FareyCounting& f) const { return "farey:" + std::to_string(f.d); }
    std::string operator()(const Mixture& m) const {
      std::string s = "mixture(";
      for (std::size_t i = 0; i < m.parts.size(); ++i)
        s += (i ? ", " : "") + to_string(m.parts[i].first) + "*" + m.parts[i].second.describe();
      return s + ")";
    }
    std::string operator()(const PushForward& p) const { return "pushforward(" + p.base->describe() + ")"; }
  };
  return std::visit(Visitor{}, v);
}

std::vector<Point> farey_points(std::size_t n, unsigned long d) {
  if (d == 0) throw std::invalid_argument("farey_points: d must be positive");
  if (n == 0) throw std::invalid_argument("farey_points: n must be positive");
  std::vector<Point> out;
  std::vector<unsigned long> a(n, 0);
  // Odometer over {0..d}^n in lexicographic order.
  while (true) {
    unsigned long g = d;
    for (auto x : a) g = std::gcd(g, x);
    if (g == 1) {
      Point p;
      p.coords.reserve(n);
      for (auto x : a) p.coords.emplace_back(frac(static_cast<long>(x), static_cast<long>(d)));
      out.push_back(std::move(p));
    }
    std::size_t i = n;
    while (i > 0 && a[i - 1] == d) a[--i] = 0;
    if (i == 0) break;
    ++a[i - 1];
  }
  return out;
}

Integer farey_count(std::size_t n, unsigned long d) {
  // Mobius inversion: #{a in {0..d}^n : gcd(a, d) = 1} = sum_{e | d} mu(e) (d/e + 1)^n.
  Integer total = 0;
  for (unsigned long e = 1; e <= d; ++e) {
    if (d % e) continue;
    int mu = 1;
    unsigned long m = e;
    bool square = false;
    for (unsigned long p = 2; p * p <= m; ++p) {
      if (m % p) continue;
      m /= p;
      if (m % p == 0) square = true;
      while (m % p == 0) m /= p;
      mu = -mu;
    }
    if (m > 1) mu = -mu;
    if (square) continue;
    Integer term;
    mpz_ui_pow_ui(term.get_mpz_t(), d / e + 1, n);
    total += mu * term;
  }
  return total;
}

Rational state_eval(const StateSpec& s, const PwlFunction& f) {
  struct Visitor {
    const PwlFunction& f;
    Rational operator()(const Lebesgue&) const { return integrate(f); }
    Rational operator()(const FareyCounting& c) const {
      auto pts = farey_points(f.n(), c.d);
      Rational sum = 0;
      for (const auto& p : pts) sum += eval(f, p);
      return sum / Rational(static_cast<long>(pts.size()));
    }
    Rational operator()(const Mixture& m) const {
      Rational sum = 0;
      for (const auto& [w, part] : m.parts)
        if (w != 0) sum += w * state_eval(part, f);
      return sum;
    }
    Rational operator()(const PushForward& p) const {
      if (p.map->n() != f.n()) throw std::invalid_argument("state_eval: dimension mismatch");
      return state_eval(*p.base, compose(f, p.map->map()));
    }
  };
  return std::visit(Visitor{f}, s.v);
}

InvarianceReport invariance_check(const StateSpec& s, const McNaughtonHomeo& map, const std::vector<PwlFunction>& fs) {
  InvarianceReport rep;
  rep.state = s.describe();
  const StateSpec pushed = StateSpec::pushforward(s, map);
  for (const auto& f : fs) {
    Rational a = state_eval(s, f);
    Rational b = state_eval(pushed, f);
    rep.all_equal = rep.all_equal && a == b;
    rep.values.emplace_back(std::move(a), std::move(b));
  }
  return rep;
}

CoherenceReport coherence_check(const StateSpec& lower, const StateSpec& upper, const PwlFunction& f) {
  CoherenceReport rep;
  rep.value_n = state_eval(lower, f);
  rep.value_n_plus_1 = state_eval(upper, cylinder(f, f.n() + 1));
  rep.coherent = rep.value_n == rep.value_n_plus_1;
  return rep;
}

CoherenceReport coherence_check(unsigned long d, const PwlFunction& f) {
  const StateSpec mu = StateSpec::half_mixture(d);
  return coherence_check(mu, mu, f);
}

FaithfulnessReport faithfulness_check(const StateSpec& s, const std::vector<PwlFunction>& fs) {
  FaithfulnessReport rep;
  for (const auto& f : fs) {
    FaithfulnessEntry e;
    e.value = state_eval(s, f);
    e.nonzero_function = !f.is_zero();
    e.ok = !e.nonzero_function || e.value > 0;
    rep.faithful = rep.faithful && e.ok;
    rep.entries.push_back(std::move(e));
  }
  return rep;
}

}  // namespace freemv
