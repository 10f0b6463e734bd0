#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "freemv/dynamics.hpp"
#include "freemv/pwl.hpp"
#include "support.hpp"

using namespace freemv;

namespace {

const ChartKind kSquare = ChartKind::SquareM;
const ChartKind kRhombus = ChartKind::RhombusN;

TwistPoint tp(const Rational& r, const Rational& s) { return TwistPoint::make(r, s); }

Point lerp2(const Point& a, const Point& b) {
  // 2a - b: the affine extrapolation back to the branch boundary.
  return Point{Rational(2 * a[0] - b[0]), Rational(2 * a[1] - b[1])};
}

}  // namespace

TEST_CASE("twist points normalize the angle") {
  CHECK(tp(frac(1, 2), -1).s == 1);
  CHECK(tp(frac(1, 2), 3).s == 1);
  CHECK(tp(frac(1, 2), frac(5, 2)).s == frac(1, 2));
  CHECK(tp(frac(1, 2), frac(-3, 2)).s == frac(1, 2));
  CHECK_THROWS_AS(tp(2, 0), std::domain_error);
  CHECK_THROWS_AS(tp(-1, 0), std::domain_error);
}

TEST_CASE("charts") {
  for (const Rational r : {Rational(0), frac(1, 3), frac(1, 2), Rational(1)})
    CHECK(chart(kSquare, tp(r, 0)) == Point{(1 + r) / 2, (1 - r) / 2});
  for (const Rational s : {Rational(0), frac(1, 3), frac(-3, 4), Rational(1)})
    CHECK(chart(kSquare, tp(0, s)) == Point{frac(1, 2), frac(1, 2)});
  CHECK(chart(kRhombus, tp(1, 0)) == Point{1, frac(1, 2)});
  CHECK(chart(kRhombus, tp(1, frac(1, 2))) == Point{frac(1, 2), 1});
  CHECK(chart(kSquare, tp(1, frac(1, 2))) == Point{1, 1});
  CHECK(chart(kSquare, tp(1, 1)) == Point{0, 1});

  const TwistPoint back = chart_inverse(kSquare, {frac(3, 4), frac(1, 4)});
  CHECK(back.r == frac(1, 2));
  CHECK(back.s == 0);
  CHECK_THROWS_AS(chart_inverse(kRhombus, {0, 0}), std::domain_error);
  CHECK_THROWS_AS(chart_inverse(kSquare, {2, 0}), std::domain_error);
}

TEST_CASE("charts are exact mutual inverses") {
  std::mt19937_64 rng(13);
  for (const ChartKind kind : {kSquare, kRhombus})
    for (int i = 0; i < 1000; ++i) {
      const long den = 1 + static_cast<long>(rng() % 40);
      const TwistPoint p = tp(frac(1 + static_cast<long>(rng() % den), den),
                              frac(static_cast<long>(rng() % (4 * den)) - 2 * den, 2 * den));
      const Point q = chart(kind, p);
      CHECK(chart_inverse(kind, q) == p);
    }
  // Radius is constant along each level set: Q_{3/4} is the square with
  // corners (1/8,1/8) and (7/8,7/8).
  for (long a = 1; a <= 7; ++a) {
    const Rational x = frac(a, 8);
    CHECK(chart_inverse(kSquare, {x, frac(1, 8)}).r == frac(3, 4));
    CHECK(chart_inverse(kSquare, {frac(7, 8), x}).r == frac(3, 4));
    // V_{1/2}: |x - 1/2| + |y - 1/2| = 1/4.
    const Rational u = x / 4;
    CHECK(chart_inverse(kRhombus, {frac(1, 2) + u, frac(3, 4) - u}).r == frac(1, 2));
    CHECK(chart_inverse(kRhombus, {frac(1, 2) - u, frac(1, 4) + u}).r == frac(1, 2));
  }
}

TEST_CASE("branches agree on their boundaries") {
  const Rational delta = frac(1, 64);
  for (const ChartKind kind : {kSquare, kRhombus})
    for (const Rational r : {frac(1, 5), frac(2, 3), Rational(1)}) {
      for (const Rational s : {frac(-1, 2), Rational(0), frac(1, 2)}) {
        const Point above = lerp2(chart(kind, tp(r, s + delta)), chart(kind, tp(r, s + 2 * delta)));
        const Point below = lerp2(chart(kind, tp(r, s - delta)), chart(kind, tp(r, s - 2 * delta)));
        CHECK(above == chart(kind, tp(r, s)));
        CHECK(below == chart(kind, tp(r, s)));
      }
      const Point wrap = lerp2(chart(kind, tp(r, -1 + delta)), chart(kind, tp(r, -1 + 2 * delta)));
      CHECK(wrap == chart(kind, tp(r, 1)));
    }
}

TEST_CASE("twist parameters") {
  CHECK(twist_param(kSquare, 1, frac(1, 4)) == frac(1, 2));
  for (unsigned k = 0; k < 6; ++k) {
    CHECK(twist_param(kSquare, k, Rational(1, 2 * k + 1)) == 0);
    CHECK(twist_param(kSquare, k, Rational(1, 2 * k + 3)) == 1);
    CHECK(twist_param(kSquare, k, 1) == 0);
    CHECK(twist_param(kSquare, k, 0) == 1);
    CHECK(twist_param(kRhombus, k, Rational(1, k + 1)) == 0);
    CHECK(twist_param(kRhombus, k, Rational(1, k + 2)) == 1);
  }
  CHECK(twist_param(kRhombus, 1, frac(1, 6)) == 1);
  CHECK(twist_param(kRhombus, 0, frac(2, 3)) == frac(1, 2));
}

TEST_CASE("twist maps") {
  for (unsigned k = 0; k < 4; ++k) {
    const TwistPoint p = tp(1, frac(1, 3));
    CHECK(twist_map(kSquare, k, p) == p);
  }
  CHECK(twist_map(kSquare, 1, tp(frac(1, 4), 0)) == tp(frac(1, 4), 1));
  for (const Rational r : {frac(1, 4), frac(2, 7), frac(3, 10)}) {
    CHECK(quarter_twist(kSquare, 1, tp(r, 0)) == tp(r, twist_param(kSquare, 1, r) / 2));
    const TwistPoint q = twist_map(kRhombus, 0, tp(r, frac(1, 5)));
    CHECK(q.r == r);
  }
}

TEST_CASE("conjugation") {
  for (unsigned k = 0; k <= 2; ++k) {
    const ConjugationReport square = conjugation_check(kSquare, k, 150);
    CHECK(square.samples == 150);
    CHECK(square.all_equal);
    CHECK_FALSE(square.first_failure.has_value());
    CHECK(conjugation_check(kRhombus, k, 100).all_equal);
    CHECK(quarter_step_check(kSquare, k, 100).all_equal);
    CHECK(quarter_step_check(kRhombus, k, 100).all_equal);
  }
  // A mismatched pairing fails with a witness.
  const auto samples = conjugation_samples(kSquare, 1, 50);
  const ConjugationReport wrong = conjugation_check(gen_R(0), kSquare, twist_map, 1, samples);
  CHECK_FALSE(wrong.all_equal);
  REQUIRE(wrong.first_failure.has_value());
  CHECK(wrong.first_failure->map_side != wrong.first_failure->chart_side);
}

TEST_CASE("quarter step on the positive axis") {
  for (unsigned k = 0; k <= 3; ++k) {
    const McNaughtonHomeo r = gen_R_prime(k);
    for (long j = 1; j < 8; ++j) {
      // r strictly inside the band (1/(2k+3), 1/(2k+1)).
      const Rational lo(1, 2 * k + 3), hi(1, 2 * k + 1);
      const Rational rad = lo + (hi - lo) * frac(j, 8);
      const Point image = apply_map(r, chart(kSquare, tp(rad, 0)));
      CHECK(image == Point{(1 + rad) / 2, Rational(1 - (k + 1) * rad)});
      CHECK(image == chart(kSquare, tp(rad, twist_param(kSquare, k, rad) / 2)));
    }
  }
}

TEST_CASE("oriented distance along level squares") {
  for (unsigned k = 0; k <= 2; ++k) {
    const McNaughtonHomeo r = gen_R(k);
    const Rational lo(1, 2 * k + 3), hi(1, 2 * k + 1);
    for (long j = 1; j < 5; ++j) {
      const Rational rad = lo + (hi - lo) * frac(j, 5);
      for (const Rational s1 : {frac(-7, 9), frac(1, 10)})
        for (const Rational s2 : {frac(1, 3), frac(5, 6)}) {
          const TwistPoint a = chart_inverse(kSquare, apply_map(r, chart(kSquare, tp(rad, s1))));
          const TwistPoint b = chart_inverse(kSquare, apply_map(r, chart(kSquare, tp(rad, s2))));
          CHECK(a.r == rad);
          CHECK(b.r == rad);
          CHECK(tp(1, a.s - b.s).s == tp(1, s1 - s2).s);
        }
    }
  }
}

TEST_CASE("Birkhoff statistics") {
  const double golden = (std::sqrt(5.0) - 1) / 2;
  const double d1 = birkhoff_equidistribution(1, golden, 100000, 16);
  CHECK(d1 < 0.01);
  const double d2 = birkhoff_equidistribution(1, golden, 200000, 16);
  CHECK(d2 < 0.01);
  CHECK(birkhoff_equidistribution(1, 0.0, 1000, 16) == doctest::Approx(1 - 1.0 / 16));
  // A quarter turn visits 4 of the 16 bins.
  CHECK(birkhoff_equidistribution(0, 0.5, 1000, 16) == doctest::Approx(1.0 / 4 - 1.0 / 16));
}

TEST_CASE("box densities") {
  const Point origin{frac(1, 4), frac(1, 2)};
  const PwlFunction tent = box_tent(origin, 2);
  CHECK(tent.has_integral_forms());
  CHECK(eval(tent, {frac(3, 8), frac(5, 8)}) == 1);
  CHECK(eval(tent, origin) == 0);
  CHECK(eval(tent, {0, 0}) == 0);
  // Pyramid of height 1 over a square of side 1/4.
  CHECK(integrate(tent) == frac(1, 3) * frac(1, 16));

  const Polytope cube = unit_cube_polytope(2);
  const BoxDensityReport leb = box_density_check(StateSpec::lebesgue(), cube, 2);
  CHECK(leb.constant);
  CHECK(leb.estimates.size() == 1 + 4 + 16);
  for (const auto& e : leb.estimates) CHECK(e.ratio == 1);

  const StateSpec pushed = StateSpec::pushforward(StateSpec::lebesgue(), gen_R_prime(1));
  const BoxDensityReport inv = box_density_check(pushed, cube, 2);
  CHECK(inv.constant);
  for (const auto& e : inv.estimates) CHECK(e.ratio == 1);

  const BoxDensityReport mix = box_density_check(StateSpec::half_mixture(4), cube, 2);
  CHECK_FALSE(mix.constant);
  // Depth <= 1: the atom (1/4,1/4) (or its images) sits at a tent apex,
  // (1/2 * 1/12 + 1/2 * 1/16) / (1/12) = 7/8. Depth 2: every atom lies on a
  // box boundary where the tent vanishes, leaving only half of lambda.
  for (const auto& e : mix.estimates) CHECK(e.ratio == (e.depth <= 1 ? frac(7, 8) : frac(1, 2)));
}
