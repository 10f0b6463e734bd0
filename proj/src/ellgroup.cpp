#include "freemv/ellgroup.hpp"

#include <algorithm>
#include <stdexcept>

namespace freemv::ell {

ConePoint ConePoint::make(const Rational& p1, const Rational& p2) {
  if (p1 < 0 || p2 < 0 || (p1 == 0 && p2 == 0)) throw std::domain_error("ConePoint: outside the positive cone");
  return {p1, p2};
}

namespace {

// 2x2 linear map taking (a, b) to (a2, b2).
Matrix map_rays(const ConePoint& a, const ConePoint& b, const ConePoint& a2, const ConePoint& b2) {
  Matrix src = Matrix::from_rows({{a.p1, b.p1}, {a.p2, b.p2}});
  Matrix dst = Matrix::from_rows({{a2.p1, b2.p1}, {a2.p2, b2.p2}});
  return dst * *src.inverse();
}

// p lies in the cone spanned by a, b (a before b counterclockwise).
bool in_cone(const ConePoint& p, const ConePoint& a, const ConePoint& b) {
  auto cross = [](const ConePoint& u, const ConePoint& v) -> Rational { return u.p1 * v.p2 - u.p2 * v.p1; };
  return cross(a, p) >= 0 && cross(p, b) >= 0;
}

}  // namespace

const std::array<ConePiece, 3>& cone_pieces() {
  static const std::array<ConePiece, 3> pieces = [] {
    const ConePoint e1{1, 0}, e2{0, 1}, p1{1, 1}, p2{1, 2}, p1img{2, 1}, p2img{1, 1};
    return std::array<ConePiece, 3>{ConePiece{e1, p1, map_rays(e1, p1, e1, p1img)},
                                    ConePiece{p1, p2, map_rays(p1, p2, p1img, p2img)},
                                    ConePiece{p2, e2, map_rays(p2, e2, p2img, e2)}};
  }();
  return pieces;
}

ConePoint apply_cone_map(const ConePoint& p) {
  for (const auto& piece : cone_pieces()) {
    if (!in_cone(p, piece.ray_a, piece.ray_b)) continue;
    Vector img = piece.matrix * Vector{p.p1, p.p2};
    return {img[0], img[1]};
  }
  throw std::domain_error("apply_cone_map: point outside the positive cone");
}

Rational sigma_eval(int i, const ConePoint& p) {
  const Rational& x1 = p.p1;
  const Rational& x2 = p.p2;
  if (i == 1) return std::max(x1, std::min(Rational(3 * x1 - x2), Rational(x1 + x2)));
  if (i == 2) return std::max(Rational(x2 - x1), std::min(x1, x2));
  throw std::out_of_range("sigma_eval: index must be 1 or 2");
}

Rational dual_S(const Rational& t) {
  if (t < 0 || t > 1) throw std::domain_error("dual_S: t outside [0,1]");
  if (t < Rational(1, 2)) return t / (1 + t);
  if (t < Rational(2, 3)) return (1 - t) / (4 - 5 * t);
  return (2 * t - 1) / t;
}

ConjugacyReport conjugacy_check_simplex(std::size_t samples) {
  ConjugacyReport rep;
  for (std::size_t i = 0; i < samples; ++i) {
    // Endpoints, the branch points, then an evenly spaced grid.
    Rational t;
    switch (i) {
      case 0: t = 0; break;
      case 1: t = 1; break;
      case 2: t = Rational(1, 2); break;
      case 3: t = Rational(2, 3); break;
      default: t = frac(static_cast<long>(i - 3), static_cast<long>(samples > 4 ? samples - 3 : 1)); break;
    }
    if (t > 1) t = 1;
    const ConePoint p{1 - t, t};
    const ConePoint sig{sigma_eval(1, p), sigma_eval(2, p)};
    const ConePoint cone = apply_cone_map(p);
    const Rational a = sig.p2 / (sig.p1 + sig.p2);
    const Rational b = cone.p2 / (cone.p1 + cone.p2);
    const Rational c = dual_S(t);
    ++rep.samples;
    if (a != c || b != c) {
      rep.all_equal = false;
      if (!rep.first_failure) rep.first_failure = ConjugacyFailure{t, a, b, c};
    }
  }
  return rep;
}

std::vector<Rational> orbit(const Rational& t0, std::size_t iterations) {
  if (t0 < 0 || t0 > 1) throw std::domain_error("orbit: t0 outside [0,1]");
  std::vector<Rational> out{t0};
  out.reserve(iterations + 1);
  for (std::size_t i = 0; i < iterations; ++i) out.push_back(dual_S(out.back()));
  return out;
}

std::vector<double> orbit_float(double t0, std::size_t iterations) {
  if (t0 < 0 || t0 > 1) throw std::domain_error("orbit: t0 outside [0,1]");
  std::vector<double> out{t0};
  out.reserve(iterations + 1);
  for (std::size_t i = 0; i < iterations; ++i) {
    const double t = out.back();
    out.push_back(t < 0.5 ? t / (1 + t) : t < 2.0 / 3.0 ? (1 - t) / (4 - 5 * t) : (2 * t - 1) / t);
  }
  return out;
}

}  // namespace freemv::ell
