#include "freemv/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "freemv/pwl.hpp"

namespace freemv {

namespace {

const Rational kHalf(1, 2);

int branch_of(const Rational& s) {
  // Half-open branches (-1,-1/2], (-1/2,0], (0,1/2], (1/2,1].
  if (s <= Rational(-1, 2)) return 0;
  if (s <= 0) return 1;
  if (s <= kHalf) return 2;
  return 3;
}

// Direction vector d(s) with chart(r, s) = (1/2, 1/2) + r d(s).
std::pair<Rational, Rational> direction(ChartKind kind, const Rational& s) {
  const int b = branch_of(s);
  if (kind == ChartKind::SquareM) {
    switch (b) {
      case 0: return {Rational(-1, 2), -2 * s - Rational(3, 2)};
      case 1: return {2 * s + kHalf, Rational(-1, 2)};
      case 2: return {kHalf, 2 * s - kHalf};
      default: return {-2 * s + Rational(3, 2), kHalf};
    }
  }
  switch (b) {
    case 0: return {s + kHalf, -s - 1};
    case 1: return {s + kHalf, s};
    case 2: return {-s + kHalf, s};
    default: return {-s + kHalf, -s + 1};
  }
}

Rational wrap_angle(const Rational& s) { return wrap_half_open(s, -1, 2); }

}  // namespace

TwistPoint TwistPoint::make(const Rational& r, const Rational& s) {
  if (r < 0 || r > 1) throw std::domain_error("TwistPoint: radius outside [0,1]");
  return {r, wrap_angle(s)};
}

Point chart(ChartKind kind, const TwistPoint& p) {
  auto [dx, dy] = direction(kind, p.s);
  return {kHalf + p.r * dx, kHalf + p.r * dy};
}

TwistPoint chart_inverse(ChartKind kind, const Point& q) {
  if (q.dim() != 2) throw std::domain_error("chart_inverse: expected a point of the square");
  const Rational dx = q[0] - kHalf, dy = q[1] - kHalf;
  Rational r = kind == ChartKind::SquareM ? Rational(2 * std::max(abs(dx), abs(dy))) : Rational(2 * (abs(dx) + abs(dy)));
  if (r > 1) throw std::domain_error("chart_inverse: point outside the chart image");
  if (r == 0) return {0, 0};
  const Rational u = dx / r, v = dy / r;
  // Candidate angle on each branch, accepted when it lies in that branch and
  // reproduces both coordinates.
  Rational candidates[4];
  if (kind == ChartKind::SquareM) {
    candidates[0] = -(v + Rational(3, 2)) / 2;
    candidates[1] = (u - kHalf) / 2;
    candidates[2] = (v + kHalf) / 2;
    candidates[3] = (Rational(3, 2) - u) / 2;
  } else {
    candidates[0] = -1 - v;
    candidates[1] = u - kHalf;
    candidates[2] = v;
    candidates[3] = 1 - v;
  }
  for (int b = 0; b < 4; ++b) {
    const Rational& s = candidates[b];
    if (s <= -1 || s > 1 || branch_of(s) != b) continue;
    auto [ex, ey] = direction(kind, s);
    if (ex == u && ey == v) return {r, s};
  }
  throw std::domain_error("chart_inverse: point outside the chart image");
}

Rational twist_param(ChartKind kind, unsigned k, const Rational& r) {
  if (r < 0 || r > 1) throw std::domain_error("twist_param: radius outside [0,1]");
  if (r == 0) return 1;
  // Rhombus level sets are half as far out as a 1/(2r) normalization would
  // put them: q^h lies on V_{1/(h+1)}.
  Rational t = kind == ChartKind::SquareM ? Rational(1 / (2 * r) - k - kHalf) : Rational(1 / r - k - 1);
  if (t < 0) return 0;
  if (t > 1) return 1;
  return t;
}

TwistPoint twist_map(ChartKind kind, unsigned k, const TwistPoint& p) {
  return {p.r, wrap_angle(p.s + 2 * twist_param(kind, k, p.r))};
}

TwistPoint quarter_twist(ChartKind kind, unsigned k, const TwistPoint& p) {
  return {p.r, wrap_angle(p.s + twist_param(kind, k, p.r) / 2)};
}

std::vector<TwistPoint> conjugation_samples(ChartKind kind, unsigned k, std::size_t count) {
  std::vector<TwistPoint> out;
  if (count == 0) return out;
  const Rational lo = kind == ChartKind::SquareM ? Rational(1, 2 * k + 3) : Rational(1, k + 2);
  const Rational hi = kind == ChartKind::SquareM ? Rational(1, 2 * k + 1) : Rational(1, k + 1);
  const std::size_t rows = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(count))));
  const std::size_t cols = (count + rows - 1) / rows;
  const std::size_t band_rows = (rows + 1) / 2, other_rows = rows / 2;
  out.reserve(count);
  for (std::size_t i = 0; i < rows && out.size() < count; ++i) {
    Rational r;
    if (i % 2 == 0)
      r = lo + (hi - lo) * frac(static_cast<long>(i / 2 + 1), static_cast<long>(band_rows + 1));
    else
      r = frac(static_cast<long>(i / 2 + 1), static_cast<long>(other_rows));
    for (std::size_t j = 0; j < cols && out.size() < count; ++j)
      out.push_back(TwistPoint::make(r, Rational(-1) + frac(2 * static_cast<long>(j + 1), static_cast<long>(cols))));
  }
  return out;
}

ConjugationReport conjugation_check(const PwlMap& map, ChartKind kind,
                                    TwistPoint (*twist)(ChartKind, unsigned, const TwistPoint&), unsigned k,
                                    const std::vector<TwistPoint>& samples) {
  ConjugationReport rep;
  for (const auto& p : samples) {
    if (p.r == 0) continue;  // the center is fixed by both sides
    ++rep.samples;
    Point lhs = apply_map(map, chart(kind, p));
    Point rhs = chart(kind, twist(kind, k, p));
    if (lhs != rhs) {
      rep.all_equal = false;
      if (!rep.first_failure) rep.first_failure = ConjugationFailure{p, lhs, rhs};
    }
  }
  return rep;
}

ConjugationReport conjugation_check(ChartKind kind, unsigned k, std::size_t samples) {
  const McNaughtonHomeo h = kind == ChartKind::SquareM ? gen_R(k) : gen_S(k);
  return conjugation_check(h.map(), kind, &twist_map, k, conjugation_samples(kind, k, samples));
}

ConjugationReport quarter_step_check(ChartKind kind, unsigned k, std::size_t samples) {
  const PwlMap m = kind == ChartKind::SquareM ? gen_R_prime(k).map() : gen_S_prime(k);
  return conjugation_check(m, kind, &quarter_twist, k, conjugation_samples(kind, k, samples));
}

double birkhoff_equidistribution(unsigned k, double alpha, std::size_t iterations, std::size_t bins) {
  if (bins == 0) throw std::invalid_argument("birkhoff: bins must be positive");
  if (iterations == 0) throw std::invalid_argument("birkhoff: iterations must be positive");
  const double r = 1.0 / (alpha + 2.0 * k + 1.0);
  const double t = std::clamp(1.0 / (2.0 * r) - k - 0.5, 0.0, 1.0);
  const double step = 2.0 * t;  // full twist in s = theta / pi units
  std::vector<std::size_t> hits(bins, 0);
  double s = 0.0;
  for (std::size_t i = 0; i < iterations; ++i) {
    auto b = static_cast<std::size_t>(std::floor((s + 1.0) / 2.0 * static_cast<double>(bins)));
    ++hits[std::min(b, bins - 1)];
    s += step;
    s -= 2.0 * std::ceil((s - 1.0) / 2.0);  // back into (-1, 1]
  }
  double worst = 0.0;
  for (auto h : hits)
    worst = std::max(worst, std::abs(static_cast<double>(h) / static_cast<double>(iterations) - 1.0 / static_cast<double>(bins)));
  return worst;
}

// ---------------------------------------------------------------------------

Polytope unit_cube_polytope(std::size_t n) {
  std::vector<Halfspace> hs;
  for (std::size_t i = 0; i < n; ++i) {
    Halfspace up{Vector(n), 1}, down{Vector(n), 0};
    up.a[i] = 1;
    down.a[i] = -1;
    hs.push_back(up);
    hs.push_back(down);
  }
  return Polytope::from_halfspaces(n, std::move(hs));
}

PwlFunction box_tent(const Point& origin, unsigned depth) {
  const std::size_t n = origin.dim();
  Integer scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 2, depth + 1);
  const Rational slope(scale);
  const Rational width = 2 / slope;
  std::optional<PwlFunction> acc;
  const Complex base = cube_triangulation(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Rational center = origin[i] + width / 2;
    AffineForm up = AffineForm::coordinate(n, i) * slope + AffineForm::constant(n, 1 - slope * center);
    AffineForm down = AffineForm::constant(n, 1 + slope * center) - AffineForm::coordinate(n, i) * slope;
    // max(0, min(up, down))
    std::vector<detail::FormTriple> mins(base.size(), {down - up, down, up});
    auto [c1, f1] = detail::select_by_sign(base, mins);
    std::vector<detail::FormTriple> clamps;
    clamps.reserve(f1.size());
    for (const auto& f : f1) clamps.push_back({f, AffineForm::constant(n, 0), f});
    auto [c2, f2] = detail::select_by_sign(c1, clamps);
    PwlFunction tent(std::move(c2), std::move(f2));
    acc = acc ? meet(*acc, tent) : tent;
  }
  return *acc;
}

BoxDensityReport box_density_check(const StateSpec& s, const Polytope& region, unsigned max_depth) {
  BoxDensityReport rep;
  const std::size_t n = region.ambient_dim;
  std::optional<Rational> first;
  for (unsigned depth = 0; depth <= max_depth; ++depth) {
    Integer cells_per_axis;
    mpz_ui_pow_ui(cells_per_axis.get_mpz_t(), 2, depth);
    const unsigned long m = cells_per_axis.get_ui();
    const Rational w(1, static_cast<long>(m));
    std::vector<unsigned long> idx(n, 0);

    while (true) {
      Point origin;
      for (auto a : idx) origin.coords.emplace_back(Rational(static_cast<long>(a)) * w);
      // All 2^n corners inside the region.
      bool inside = true;
      for (std::size_t mask = 0; mask < (std::size_t{1} << n) && inside; ++mask) {
        Point corner = origin;
        for (std::size_t i = 0; i < n; ++i)
          if ((mask >> i) & 1) corner[i] += w;
        inside = region.contains(corner);
      }
      if (inside) {
        PwlFunction tent = box_tent(origin, depth);
        BoxEstimate e{depth, origin, state_eval(s, tent), integrate(tent), 0};
        e.ratio = e.state_value / e.lebesgue_value;
        if (!first) first = e.ratio;
        rep.constant = rep.constant && e.ratio == *first;
        rep.estimates.push_back(std::move(e));
      }
      std::size_t i = n;
      while (i > 0 && idx[i - 1] == m - 1) idx[--i] = 0;
      if (i == 0) break;
      ++idx[i - 1];
    }
  }
  return rep;
}

}  // namespace freemv
