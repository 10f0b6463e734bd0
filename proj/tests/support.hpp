#pragma once

// Independent oracles for the test suites. Nothing here calls into the
// piecewise-linear machinery: terms are interpreted directly, areas come from
// the shoelace formula, integrals from midpoint Riemann sums.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <random>
#include <vector>

#include "freemv/geometry.hpp"
#include "freemv/term.hpp"

namespace testsupport {

using freemv::Point;
using freemv::Rational;
using freemv::Term;

/// Random point of [0,1]^n with denominators up to max_den (endpoints included).
inline Point random_point(std::size_t n, std::mt19937_64& rng, long max_den = 64) {
  Point p;
  for (std::size_t i = 0; i < n; ++i) {
    const long den = 1 + static_cast<long>(rng() % static_cast<std::uint64_t>(max_den));
    const long num = static_cast<long>(rng() % static_cast<std::uint64_t>(den + 1));
    p.coords.push_back(freemv::frac(num, den));
  }
  return p;
}

template <class T>
T clamp01(T x) {
  return std::min<T>(T(1), std::max<T>(T(0), x));
}

/// Lukasiewicz semantics, evaluated straight from the syntax tree.
template <class T>
T interpret(const Term& t, const std::vector<T>& x) {
  using K = Term::Kind;
  switch (t.kind) {
    case K::Zero: return T(0);
    case K::One: return T(1);
    case K::Var: return x.at(t.var - 1);
    case K::Neg: return T(1) - interpret(*t.lhs, x);
    default: break;
  }
  const T a = interpret(*t.lhs, x);
  const T b = interpret(*t.rhs, x);
  switch (t.kind) {
    case K::Oplus: return std::min<T>(T(1), T(a + b));
    case K::Odot: return std::max<T>(T(0), T(a + b - 1));
    case K::Ominus: return std::max<T>(T(0), T(a - b));
    case K::Min: return std::min<T>(a, b);
    default: return std::max<T>(a, b);
  }
}

inline Rational interpret_exact(const Term& t, const Point& p) { return interpret<Rational>(t, p.coords); }

/// Midpoint rule with `per_axis` cells per axis (n <= 2).
inline double riemann(const std::function<double(const std::vector<double>&)>& f, std::size_t n, int per_axis) {
  const double h = 1.0 / per_axis;
  double sum = 0;
  std::vector<double> x(n);
  if (n == 1) {
    for (int i = 0; i < per_axis; ++i) {
      x[0] = (i + 0.5) * h;
      sum += f(x);
    }
    return sum * h;
  }
  for (int i = 0; i < per_axis; ++i)
    for (int j = 0; j < per_axis; ++j) {
      x[0] = (i + 0.5) * h;
      x[1] = (j + 0.5) * h;
      sum += f(x);
    }
  return sum * h * h;
}

/// Shoelace area of a simple polygon given in boundary order.
inline Rational shoelace(const std::vector<Point>& poly) {
  Rational twice = 0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Point& a = poly[i];
    const Point& b = poly[(i + 1) % poly.size()];
    twice += a[0] * b[1] - a[1] * b[0];
  }
  return freemv::abs(twice) / 2;
}

/// A^n_d by plain enumeration with integer gcds.
inline std::vector<std::vector<long>> farey_numerators(std::size_t n, long d) {
  std::vector<std::vector<long>> out;
  std::vector<long> a(n, 0);
  while (true) {
    long g = d;
    for (long v : a) g = std::gcd(g, v);
    if (g == 1) out.push_back(a);
    std::size_t i = 0;
    while (i < n && a[i] == d) a[i++] = 0;
    if (i == n) break;
    ++a[i];
  }
  return out;
}

}  // namespace testsupport
