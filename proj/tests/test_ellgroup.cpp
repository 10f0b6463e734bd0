#include <doctest.h>

#include <algorithm>

#include "freemv/ellgroup.hpp"

using namespace freemv;
using namespace freemv::ell;

namespace {

ConePoint cp(const Rational& a, const Rational& b) { return ConePoint::make(a, b); }

// The three fractional branches written out directly.
Rational branch(int i, const Rational& t) {
  if (i == 1) return t / (1 + t);
  if (i == 2) return (1 - t) / (4 - 5 * t);
  return (2 * t - 1) / t;
}

}  // namespace

TEST_CASE("sigma on the vertex data") {
  CHECK(sigma_eval(1, cp(1, 1)) == 2);
  CHECK(sigma_eval(2, cp(1, 1)) == 1);
  CHECK(sigma_eval(1, cp(1, 0)) == 1);
  CHECK(sigma_eval(2, cp(1, 0)) == 0);
  CHECK(sigma_eval(1, cp(0, 1)) == 0);
  CHECK(sigma_eval(2, cp(0, 1)) == 1);
  CHECK(sigma_eval(1, cp(1, 2)) == 1);
  CHECK(sigma_eval(2, cp(1, 2)) == 1);
  CHECK(apply_cone_map(cp(1, 1)) == cp(2, 1));
  CHECK(apply_cone_map(cp(1, 2)) == cp(1, 1));
  CHECK(apply_cone_map(cp(3, 0)) == cp(3, 0));
  CHECK_THROWS(cp(-1, 1));
  CHECK_THROWS(cp(0, 0));
}

TEST_CASE("cone pieces") {
  const auto& pieces = cone_pieces();
  for (const auto& piece : pieces) {
    CHECK(piece.matrix.is_integral());
    for (const ConePoint& ray : {piece.ray_a, piece.ray_b}) {
      const Vector img = piece.matrix * Vector{ray.p1, ray.p2};
      CHECK(img[0] >= 0);
      CHECK(img[1] >= 0);
      CHECK(cp(img[0], img[1]) == apply_cone_map(ray));
    }
  }
  // Neighbors agree on the shared ray.
  for (std::size_t i = 0; i + 1 < pieces.size(); ++i) {
    REQUIRE(pieces[i].ray_b == pieces[i + 1].ray_a);
    const ConePoint& ray = pieces[i].ray_b;
    CHECK(pieces[i].matrix * Vector{ray.p1, ray.p2} == pieces[i + 1].matrix * Vector{ray.p1, ray.p2});
  }
  // The lattice expression and the cone matrices agree everywhere tested.
  for (long a = 0; a <= 12; ++a)
    for (long b = 0; b <= 12; ++b) {
      if (a == 0 && b == 0) continue;
      const ConePoint p = cp(a, b);
      CHECK(apply_cone_map(p) == cp(sigma_eval(1, p), sigma_eval(2, p)));
    }
}

TEST_CASE("dual map") {
  CHECK(dual_S(frac(1, 2)) == frac(1, 3));
  CHECK(branch(1, frac(1, 2)) == frac(1, 3));
  CHECK(branch(2, frac(1, 2)) == frac(1, 3));
  CHECK(dual_S(frac(2, 3)) == frac(1, 2));
  CHECK(branch(2, frac(2, 3)) == frac(1, 2));
  CHECK(branch(3, frac(2, 3)) == frac(1, 2));
  CHECK(dual_S(1) == 1);
  CHECK(dual_S(0) == 0);
  for (long i = 1; i < 200; ++i) {
    const Rational t = frac(i, 200);
    const int b = t < frac(1, 2) ? 1 : (t < frac(2, 3) ? 2 : 3);
    CHECK(dual_S(t) == branch(b, t));
    if (t < frac(1, 2)) CHECK(dual_S(t) < t);
    // Normalized second coordinate of the cone image of (1 - t, t).
    const ConePoint img = apply_cone_map(cp(1 - t, t));
    CHECK(dual_S(t) == img.p2 / (img.p1 + img.p2));
  }
}

TEST_CASE("conjugacy report") {
  const ConjugacyReport r = conjugacy_check_simplex(300);
  CHECK(r.samples == 300);
  CHECK(r.all_equal);
  CHECK_FALSE(r.first_failure.has_value());
}

TEST_CASE("orbits") {
  const auto fixed = orbit(1, 10);
  CHECK(fixed.size() == 11);
  CHECK(std::all_of(fixed.begin(), fixed.end(), [](const Rational& t) { return t == 1; }));
  const auto zero = orbit(0, 5);
  CHECK(std::all_of(zero.begin(), zero.end(), [](const Rational& t) { return t == 0; }));

  const auto o = orbit(frac(9, 10), 100);
  REQUIRE(o.size() == 101);
  // 9/10 -> 8/9 -> ... -> 2/3 -> 1/2 (eight steps), then 1/t grows by one
  // per step: t_m = 1/(m - 6) for m >= 8.
  for (std::size_t m = 0; m <= 8; ++m) CHECK(o[m] == Rational(9 - static_cast<long>(m), 10 - static_cast<long>(m)));
  for (std::size_t m = 8; m < o.size(); ++m) CHECK(o[m] == Rational(1, static_cast<long>(m) - 6));
  CHECK(o.back() == frac(1, 94));
  const auto longer = orbit(frac(9, 10), 107);
  CHECK(longer[106] == frac(1, 100));
  CHECK(longer[107] < frac(1, 100));
  std::size_t entry = 0;
  while (o[entry] >= frac(1, 2)) ++entry;
  for (std::size_t i = entry; i + 1 < o.size(); ++i) CHECK(o[i + 1] < o[i]);
  // Once in [0,1/2): t -> t/(1+t), i.e. 1/t grows by exactly one per step.
  for (std::size_t i = entry; i + 1 < o.size(); ++i) CHECK(1 / o[i + 1] == 1 / o[i] + 1);

  const auto f = orbit_float(0.9, 100);
  REQUIRE(f.size() == 101);
  for (std::size_t i = 0; i < f.size(); ++i) CHECK(f[i] == doctest::Approx(o[i].get_d()));
}
