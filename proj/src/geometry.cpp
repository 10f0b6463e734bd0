#include "freemv/geometry.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace freemv {

// ---------------------------------------------------------------------------
// Point / AffineForm / Halfspace / Box

Vector Point::homogeneous() const {
  Vector h = coords;
  h.emplace_back(1);
  return h;
}

Point Point::from_homogeneous(const Vector& h) {
  if (h.empty() || h.back() == 0) throw std::invalid_argument("point at infinity");
  Vector c(h.begin(), h.end() - 1);
  if (h.back() != 1)
    for (auto& x : c) x /= h.back();
  return Point(std::move(c));
}

bool Point::in_unit_cube() const {
  return std::all_of(coords.begin(), coords.end(), [](const Rational& x) { return x >= 0 && x <= 1; });
}

AffineForm AffineForm::constant(std::size_t n, const Rational& c) { return {Vector(n), c}; }

AffineForm AffineForm::coordinate(std::size_t n, std::size_t i) {
  AffineForm f{Vector(n), 0};
  f.a.at(i) = 1;
  return f;
}

Rational AffineForm::operator()(const Point& p) const { return dot(a, p.coords) + b; }

bool AffineForm::is_integral() const {
  return is_integer(b) && std::all_of(a.begin(), a.end(), [](const Rational& x) { return is_integer(x); });
}

bool AffineForm::is_zero() const {
  return b == 0 && std::all_of(a.begin(), a.end(), [](const Rational& x) { return x == 0; });
}

AffineForm AffineForm::pullback(const Matrix& m) const {
  const std::size_t n = a.size();
  if (m.rows() != n + 1 || m.cols() != n + 1) throw std::invalid_argument("pullback: size mismatch");
  AffineForm out{Vector(n), b};
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < n; ++j) out.a[j] += a[i] * m(i, j);
    out.b += a[i] * m(i, n);
  }
  return out;
}

AffineForm AffineForm::operator+(const AffineForm& o) const {
  AffineForm r = *this;
  for (std::size_t i = 0; i < a.size(); ++i) r.a[i] += o.a.at(i);
  r.b += o.b;
  return r;
}

AffineForm AffineForm::operator-(const AffineForm& o) const {
  AffineForm r = *this;
  for (std::size_t i = 0; i < a.size(); ++i) r.a[i] -= o.a.at(i);
  r.b -= o.b;
  return r;
}

AffineForm AffineForm::operator*(const Rational& c) const {
  AffineForm r = *this;
  for (auto& x : r.a) x *= c;
  r.b *= c;
  return r;
}

Halfspace Halfspace::normalized() const {
  Integer l = b.get_den();
  for (const auto& x : a) l = lcm(l, x.get_den());
  Integer g = 0;
  for (const auto& x : a) g = gcd(g, Integer(x * l));
  if (g == 0) return *this;
  g = gcd(g, Integer(b * l));
  Rational scale = Rational(l) / Rational(g);
  Halfspace h{a, b * scale};
  for (auto& x : h.a) x *= scale;
  return h;
}

bool Box::overlaps(const Box& o) const {
  for (std::size_t i = 0; i < lo.size(); ++i)
    if (hi[i] < o.lo[i] || o.hi[i] < lo[i]) return false;
  return true;
}

Box Box::of(const std::vector<Point>& pts) {
  Box b{pts.front().coords, pts.front().coords};
  for (const auto& p : pts)
    for (std::size_t i = 0; i < p.dim(); ++i) {
      if (p[i] < b.lo[i]) b.lo[i] = p[i];
      if (p[i] > b.hi[i]) b.hi[i] = p[i];
    }
  return b;
}

// ---------------------------------------------------------------------------
// Simplex

namespace {

Matrix vertex_matrix(const std::vector<Point>& vs) {
  const std::size_t n = vs.front().dim();
  Matrix m(n + 1, n + 1);
  for (std::size_t j = 0; j <= n; ++j) {
    for (std::size_t i = 0; i < n; ++i) m(i, j) = vs[j][i];
    m(n, j) = 1;
  }
  return m;
}

}  // namespace

std::size_t affine_dim(const std::vector<Point>& pts) {
  if (pts.size() <= 1) return 0;
  std::vector<Vector> rows;
  rows.reserve(pts.size() - 1);
  for (std::size_t j = 1; j < pts.size(); ++j) {
    Vector d = pts[j].coords;
    for (std::size_t i = 0; i < d.size(); ++i) d[i] -= pts[0][i];
    rows.push_back(std::move(d));
  }
  return rank(std::move(rows));
}

std::size_t Simplex::dim() const { return affine_dim(vertices); }

std::optional<Vector> Simplex::barycentric(const Point& p) const {
  if (vertices.size() != ambient_dim() + 1) return std::nullopt;
  return solve(vertex_matrix(vertices), p.homogeneous());
}

bool Simplex::contains(const Point& p) const {
  auto bc = barycentric(p);
  return bc && std::all_of(bc->begin(), bc->end(), [](const Rational& x) { return x >= 0; });
}

std::vector<Halfspace> Simplex::halfspaces() const {
  const std::size_t n = ambient_dim();
  if (vertices.size() != n + 1) throw std::invalid_argument("halfspaces: not a top-dimensional simplex");
  auto inv = vertex_matrix(vertices).inverse();
  if (!inv) throw std::invalid_argument("halfspaces: degenerate simplex");
  std::vector<Halfspace> hs;
  hs.reserve(n + 1);
  for (std::size_t j = 0; j <= n; ++j) {
    Halfspace h{Vector(n), (*inv)(j, n)};
    for (std::size_t i = 0; i < n; ++i) h.a[i] = -(*inv)(j, i);
    hs.push_back(h.normalized());
  }
  return hs;
}

Point Simplex::centroid() const {
  Vector c(ambient_dim());
  for (const auto& v : vertices)
    for (std::size_t i = 0; i < c.size(); ++i) c[i] += v[i];
  for (auto& x : c) x /= static_cast<long>(vertices.size());
  return Point(std::move(c));
}

Rational simplex_volume(const Simplex& s) {
  const std::size_t n = s.ambient_dim();
  if (s.vertices.size() != n + 1) return 0;
  Matrix m(n, n);
  for (std::size_t j = 1; j <= n; ++j)
    for (std::size_t i = 0; i < n; ++i) m(i, j - 1) = s.vertices[j][i] - s.vertices[0][i];
  Rational det = abs(m.determinant());
  Integer fact = 1;
  for (std::size_t k = 2; k <= n; ++k) fact *= static_cast<unsigned long>(k);
  return det / Rational(fact);
}

// ---------------------------------------------------------------------------
// Polytope

bool Polytope::contains(const Point& p) const {
  return std::all_of(halfspaces.begin(), halfspaces.end(), [&](const Halfspace& h) { return h.contains(p); });
}

Polytope Polytope::from_halfspaces(std::size_t n, std::vector<Halfspace> hs) {
  Polytope out;
  out.ambient_dim = n;
  std::set<Halfspace> unique;
  for (const auto& h : hs) {
    Halfspace nh = h.normalized();
    bool zero_normal = std::all_of(nh.a.begin(), nh.a.end(), [](const Rational& x) { return x == 0; });
    if (zero_normal) {
      if (nh.b < 0) return out;  // infeasible
      continue;
    }
    unique.insert(nh);
  }
  out.halfspaces.assign(unique.begin(), unique.end());
  const std::size_t m = out.halfspaces.size();
  if (m < n) return out;

  std::set<Point> found;
  std::vector<std::size_t> pick(n);
  Matrix a(n, n);
  Vector rhs(n);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t depth, std::size_t start) {
    if (depth == n && n == 2) {
      // Cramer's rule; the generic solver dominates profiles in the plane.
      const Halfspace& h0 = out.halfspaces[pick[0]];
      const Halfspace& h1 = out.halfspaces[pick[1]];
      Rational det = h0.a[0] * h1.a[1] - h0.a[1] * h1.a[0];
      if (det == 0) return;
      Point p{Vector{(h0.b * h1.a[1] - h0.a[1] * h1.b) / det, (h0.a[0] * h1.b - h0.b * h1.a[0]) / det}};
      if (found.count(p)) return;
      if (out.contains(p)) found.insert(std::move(p));
      return;
    }
    if (depth == n) {
      for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) a(r, c) = out.halfspaces[pick[r]].a[c];
        rhs[r] = out.halfspaces[pick[r]].b;
      }
      auto x = solve(a, rhs);
      if (!x) return;
      Point p(std::move(*x));
      if (found.count(p)) return;
      if (out.contains(p)) found.insert(std::move(p));
      return;
    }
    for (std::size_t i = start; i + (n - depth) <= m; ++i) {
      pick[depth] = i;
      rec(depth + 1, i + 1);
    }
  };
  rec(0, 0);
  out.vertices.assign(found.begin(), found.end());
  out.dim = affine_dim(out.vertices);
  return out;
}

Polytope Polytope::from_simplex(const Simplex& s) {
  Polytope p;
  p.ambient_dim = s.ambient_dim();
  p.vertices = s.vertices;
  std::sort(p.vertices.begin(), p.vertices.end());
  p.halfspaces = s.halfspaces();
  p.dim = p.ambient_dim;
  return p;
}

Polytope intersect_cells(const Simplex& s, const Simplex& t) {
  if (s.ambient_dim() != t.ambient_dim()) throw std::invalid_argument("intersect_cells: dimension mismatch");
  auto hs = s.halfspaces();
  auto ht = t.halfspaces();
  hs.insert(hs.end(), ht.begin(), ht.end());
  return Polytope::from_halfspaces(s.ambient_dim(), std::move(hs));
}

// ---------------------------------------------------------------------------
// Pulling triangulation

namespace {

void pull(const std::vector<Point>& verts, const std::vector<std::vector<char>>& tight,
          const std::vector<std::size_t>& face, std::size_t d, std::vector<std::vector<std::size_t>>& out) {
  if (d == 0) {
    out.push_back({face.front()});
    return;
  }
  const std::size_t apex = face.front();  // faces are kept sorted, vertices are lex-sorted
  std::set<std::vector<std::size_t>> facets;
  for (const auto& row : tight) {
    if (row[apex]) continue;
    std::vector<std::size_t> sub;
    for (std::size_t v : face)
      if (row[v]) sub.push_back(v);
    if (sub.size() < d || facets.count(sub)) continue;
    std::vector<Point> pts;
    pts.reserve(sub.size());
    for (std::size_t v : sub) pts.push_back(verts[v]);
    if (affine_dim(pts) == d - 1) facets.insert(std::move(sub));
  }
  for (const auto& f : facets) {
    std::vector<std::vector<std::size_t>> sub_out;
    pull(verts, tight, f, d - 1, sub_out);
    for (auto& s : sub_out) {
      s.insert(s.begin(), apex);
      out.push_back(std::move(s));
    }
  }
}

}  // namespace

std::vector<Simplex> triangulate(const Polytope& p) {
  if (p.empty()) return {};
  std::vector<Point> verts = p.vertices;
  std::sort(verts.begin(), verts.end());
  if (p.dim == p.ambient_dim && verts.size() == p.dim + 1) return {Simplex{verts}};
  std::vector<std::vector<char>> tight;
  tight.reserve(p.halfspaces.size());
  for (const auto& h : p.halfspaces) {
    std::vector<char> row(verts.size());
    for (std::size_t i = 0; i < verts.size(); ++i) row[i] = h.tight(verts[i]) ? 1 : 0;
    tight.push_back(std::move(row));
  }
  std::vector<std::size_t> all(verts.size());
  std::iota(all.begin(), all.end(), 0);
  std::vector<std::vector<std::size_t>> idx;
  pull(verts, tight, all, p.dim, idx);
  std::vector<Simplex> out;
  out.reserve(idx.size());
  for (const auto& s : idx) {
    Simplex sx;
    for (std::size_t i : s) sx.vertices.push_back(verts[i]);
    out.push_back(std::move(sx));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Complex

Simplex Complex::cell(std::size_t i) const { return Simplex{cell_points(i)}; }

std::vector<Point> Complex::cell_points(std::size_t i) const {
  std::vector<Point> pts;
  pts.reserve(cells[i].size());
  for (std::size_t v : cells[i]) pts.push_back(vertices[v]);
  return pts;
}

Rational Complex::volume() const {
  Rational v = 0;
  for (std::size_t i = 0; i < cells.size(); ++i) v += simplex_volume(cell(i));
  return v;
}

std::optional<std::size_t> Complex::locate(const Point& p) const {
  if (p.dim() != ambient_dim) throw std::invalid_argument("locate: dimension mismatch");
  for (std::size_t i = 0; i < cells.size(); ++i) {
    auto pts = cell_points(i);
    if (!Box::of(pts).overlaps(Box{p.coords, p.coords})) continue;
    if (Simplex{std::move(pts)}.contains(p)) return i;
  }
  return std::nullopt;
}

std::size_t ComplexBuilder::vertex(const Point& p) {
  auto [it, inserted] = index_.try_emplace(p, complex_.vertices.size());
  if (inserted) complex_.vertices.push_back(p);
  return it->second;
}

void ComplexBuilder::add_cell(const std::vector<Point>& pts) {
  std::vector<std::size_t> idx;
  idx.reserve(pts.size());
  for (const auto& p : pts) idx.push_back(vertex(p));
  complex_.cells.push_back(std::move(idx));
}

Complex cube_triangulation(std::size_t n) {
  if (n == 0) throw std::invalid_argument("cube_triangulation: n must be positive");
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  ComplexBuilder b(n);
  do {
    std::vector<Point> pts;
    Point v{Vector(n)};
    pts.push_back(v);
    for (std::size_t j = 0; j < n; ++j) {
      v[perm[j]] = 1;
      pts.push_back(v);
    }
    b.add_cell(pts);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return std::move(b).build();
}

// ---------------------------------------------------------------------------
// Refinements

namespace {

Rational cross2(const Point& o, const Point& a, const Point& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

// Strictly convex hull, counterclockwise (monotone chain). For n = 1 the two
// endpoints.
std::vector<Point> hull(std::vector<Point> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.front().dim() == 1) return {pts.front(), pts.back()};
  if (pts.size() < 3) return pts;
  std::vector<Point> h(2 * pts.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && cross2(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross2(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  return h;
}

Rational hull_measure(const std::vector<Point>& h) {
  if (h.front().dim() == 1) return h.back()[0] - h.front()[0];
  Rational twice = 0;
  for (std::size_t i = 0; i < h.size(); ++i) {
    const Point& a = h[i];
    const Point& b = h[(i + 1) % h.size()];
    twice += a[0] * b[1] - a[1] * b[0];
  }
  return twice / 2;
}

struct Region {
  std::vector<Point> hull;
  Rational measure;
  Box box;
  std::size_t origin;
};

bool touches(const Box& a, const Box& b) {
  for (std::size_t i = 0; i < a.lo.size(); ++i)
    if (a.hi[i] < b.lo[i] || b.hi[i] < a.lo[i]) return false;
  return true;
}


// Convex polygon clipped by a.x <= b.
std::vector<Point> clip(const std::vector<Point>& poly, const Halfspace& h) {
  std::vector<Point> out;
  const std::size_t m = poly.size();
  for (std::size_t i = 0; i < m; ++i) {
    const Point& p = poly[i];
    const Point& q = poly[(i + 1) % m];
    Rational vp = dot(h.a, p.coords) - h.b;
    Rational vq = dot(h.a, q.coords) - h.b;
    if (vp <= 0) out.push_back(p);
    if ((vp < 0 && vq > 0) || (vp > 0 && vq < 0)) {
      Rational t = vp / (vp - vq);
      out.push_back(Point{Vector{p[0] + (q[0] - p[0]) * t, p[1] + (q[1] - p[1]) * t}});
    }
  }
  return out;
}

// Triangulated intersection of a cell with extra halfspaces. In the plane
// this clips and fans from the smallest vertex, which is exactly the pulling
// triangulation; elsewhere it goes through vertex enumeration.
std::vector<Simplex> pieces(const std::vector<Point>& cell, const std::vector<Halfspace>& cell_hs,
                            const std::vector<Halfspace>& extra) {
  const std::size_t n = cell.front().dim();
  if (n != 2) {
    auto hs = cell_hs;
    hs.insert(hs.end(), extra.begin(), extra.end());
    auto poly = Polytope::from_halfspaces(n, std::move(hs));
    if (poly.empty() || poly.dim < n) return {};
    return triangulate(poly);
  }
  std::vector<Point> poly = hull(cell);
  for (const auto& h : extra) {
    poly = clip(poly, h);
    if (poly.size() < 3) return {};
  }
  poly = hull(std::move(poly));
  if (poly.size() < 3) return {};
  std::vector<Simplex> out;
  for (std::size_t k = 1; k + 1 < poly.size(); ++k) out.push_back(Simplex{{poly[0], poly[k], poly[k + 1]}});
  return out;
}

struct CellGeometry {
  std::vector<Point> pts;
  std::vector<Halfspace> hs;
  Box box;
};

std::vector<CellGeometry> cell_geometry(const Complex& c) {
  std::vector<CellGeometry> out;
  out.reserve(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    auto pts = c.cell_points(i);
    Simplex s{pts};
    out.push_back({pts, s.halfspaces(), Box::of(pts)});
  }
  return out;
}

bool all_inside(const std::vector<Point>& pts, const std::vector<Halfspace>& hs) {
  for (const auto& p : pts)
    for (const auto& h : hs)
      if (!h.contains(p)) return false;
  return true;
}

// True when some halfspace has every point on or beyond its boundary, which
// rules out a full-dimensional overlap.
bool separated(const std::vector<Point>& pts, const std::vector<Halfspace>& hs) {
  for (const auto& h : hs) {
    bool all_out = true;
    for (const auto& p : pts)
      if (dot(h.a, p.coords) < h.b) {
        all_out = false;
        break;
      }
    if (all_out) return true;
  }
  return false;
}

void emit(Refinement& r, ComplexBuilder& b, const std::vector<Point>& pts, std::size_t pa, std::size_t pb) {
  b.add_cell(pts);
  r.parent_a.push_back(pa);
  r.parent_b.push_back(pb);
}

}  // namespace

Refinement refine(const Complex& a, const Complex& b) {
  if (a.ambient_dim != b.ambient_dim) throw std::invalid_argument("refine: dimension mismatch");
  const std::size_t n = a.ambient_dim;
  auto ga = cell_geometry(a);
  auto gb = cell_geometry(b);
  Refinement r;
  ComplexBuilder builder(n);
  for (std::size_t i = 0; i < ga.size(); ++i) {
    for (std::size_t j = 0; j < gb.size(); ++j) {
      if (!ga[i].box.overlaps(gb[j].box)) continue;
      if (separated(gb[j].pts, ga[i].hs) || separated(ga[i].pts, gb[j].hs)) continue;
      if (all_inside(ga[i].pts, gb[j].hs)) {
        emit(r, builder, ga[i].pts, i, j);
        continue;
      }
      if (all_inside(gb[j].pts, ga[i].hs)) {
        emit(r, builder, gb[j].pts, i, j);
        continue;
      }
      for (const auto& s : pieces(ga[i].pts, ga[i].hs, gb[j].hs)) emit(r, builder, s.vertices, i, j);
    }
  }
  r.complex = std::move(builder).build();
  return r;
}

Complex common_refinement(const Complex& a, const Complex& b) {
  Rational va = a.volume();
  if (va != b.volume()) throw std::invalid_argument("common_refinement: supports differ");
  Refinement r = refine(a, b);
  if (r.complex.volume() != va) throw std::invalid_argument("common_refinement: supports differ");
  return std::move(r.complex);
}

Refinement split_cells(const Complex& c, const std::vector<AffineForm>& forms) {
  if (forms.size() != c.size()) throw std::invalid_argument("split_cells: one form per cell required");
  const std::size_t n = c.ambient_dim;
  Refinement r;
  ComplexBuilder builder(n);
  for (std::size_t i = 0; i < c.size(); ++i) {
    auto pts = c.cell_points(i);
    bool any_neg = false, any_pos = false;
    for (const auto& p : pts) {
      Rational v = forms[i](p);
      any_neg |= v < 0;
      any_pos |= v > 0;
    }
    if (!any_neg || !any_pos) {
      emit(r, builder, pts, i, any_neg ? 0 : (any_pos ? 2 : 1));
      continue;
    }
    auto hs = n == 2 ? std::vector<Halfspace>{} : Simplex{pts}.halfspaces();
    for (int side : {0, 2}) {
      Halfspace cut = side == 0 ? Halfspace{forms[i].a, -forms[i].b} : Halfspace{(forms[i] * -1).a, forms[i].b};
      for (const auto& s : pieces(pts, hs, {cut})) emit(r, builder, s.vertices, i, static_cast<std::size_t>(side));
    }
  }
  r.complex = std::move(builder).build();
  return r;
}

Complex split_by_form(const Complex& c, const AffineForm& f) {
  if (f.dim() != c.ambient_dim) throw std::invalid_argument("split_by_form: dimension mismatch");
  return split_cells(c, std::vector<AffineForm>(c.size(), f)).complex;
}

Refinement pullback_refinement(const Complex& domain, const std::vector<Matrix>& maps, const Complex& target) {
  if (domain.ambient_dim != target.ambient_dim) throw std::invalid_argument("pullback: dimension mismatch");
  if (maps.size() != domain.size()) throw std::invalid_argument("pullback: one matrix per cell required");
  const std::size_t n = domain.ambient_dim;
  auto gt = cell_geometry(target);
  Refinement r;
  ComplexBuilder builder(n);
  for (std::size_t i = 0; i < domain.size(); ++i) {
    auto pts = domain.cell_points(i);
    const Matrix& m = maps[i];
    std::vector<Point> img;
    img.reserve(pts.size());
    for (const auto& p : pts) img.push_back(apply_homogeneous(m, p));
    Box ib = Box::of(img);
    std::vector<Halfspace> hs_dom;
    for (std::size_t j = 0; j < gt.size(); ++j) {
      if (!ib.overlaps(gt[j].box)) continue;
      if (separated(img, gt[j].hs)) continue;
      if (all_inside(img, gt[j].hs)) {
        emit(r, builder, pts, i, j);
        continue;
      }
      if (hs_dom.empty() && n != 2) hs_dom = Simplex{pts}.halfspaces();
      std::vector<Halfspace> hs;
      for (const auto& h : gt[j].hs) {
        // a.(A x + t) <= b
        Halfspace ph{Vector(n), h.b};
        for (std::size_t k = 0; k < n; ++k) {
          if (h.a[k] == 0) continue;
          for (std::size_t l = 0; l < n; ++l) ph.a[l] += h.a[k] * m(k, l);
          ph.b -= h.a[k] * m(k, n);
        }
        hs.push_back(std::move(ph));
      }
      for (const auto& s : pieces(pts, hs_dom, hs)) emit(r, builder, s.vertices, i, j);
    }
  }
  r.complex = std::move(builder).build();
  return r;
}

// ---------------------------------------------------------------------------
// Coarsening

Refinement merge_convex(const Complex& c, const std::vector<std::size_t>& labels) {
  if (labels.size() != c.size()) throw std::invalid_argument("merge_convex: one label per cell required");
  const std::size_t n = c.ambient_dim;
  Refinement r;
  ComplexBuilder builder(n);
  if (n > 2) {
    for (std::size_t i = 0; i < c.size(); ++i) emit(r, builder, c.cell_points(i), i, labels[i]);
    r.complex = std::move(builder).build();
    return r;
  }
  std::map<std::size_t, std::vector<Region>> groups;
  for (std::size_t i = 0; i < c.size(); ++i) {
    auto h = hull(c.cell_points(i));
    Rational m = hull_measure(h);
    Box b = Box::of(h);
    groups[labels[i]].push_back({std::move(h), std::move(m), std::move(b), i});
  }
  for (auto& [label, regions] : groups) {
    // Merge pairs until no union of two regions is convex. The union of two
    // interior-disjoint convex sets is convex iff its hull has the summed measure.
    for (bool changed = true; changed;) {
      changed = false;
      for (std::size_t i = 0; i < regions.size(); ++i) {
        for (std::size_t j = i + 1; j < regions.size(); ++j) {
          if (!touches(regions[i].box, regions[j].box)) continue;
          std::vector<Point> pts = regions[i].hull;
          pts.insert(pts.end(), regions[j].hull.begin(), regions[j].hull.end());
          auto h = hull(std::move(pts));
          Rational m = hull_measure(h);
          if (m != regions[i].measure + regions[j].measure) continue;
          regions[i].box = Box::of(h);
          regions[i].hull = std::move(h);
          regions[i].measure = std::move(m);
          regions[i].origin = std::min(regions[i].origin, regions[j].origin);
          regions.erase(regions.begin() + static_cast<std::ptrdiff_t>(j));
          changed = true;
          j = i;  // rescan partners of the grown region
        }
      }
    }
    for (const auto& reg : regions) {
      if (n == 1) {
        emit(r, builder, reg.hull, reg.origin, label);
        continue;
      }
      for (std::size_t k = 1; k + 1 < reg.hull.size(); ++k)
        emit(r, builder, {reg.hull[0], reg.hull[k], reg.hull[k + 1]}, reg.origin, label);
    }
  }
  r.complex = std::move(builder).build();
  return r;
}

// ---------------------------------------------------------------------------

Integer denominator(const Point& p) {
  Integer d = 1;
  for (const auto& x : p.coords) d = lcm(d, x.get_den());
  return d;
}

Point apply_homogeneous(const Matrix& m, const Point& p) { return Point::from_homogeneous(m * p.homogeneous()); }

std::optional<Matrix> affine_from_vertices(const std::vector<Point>& vertices, const std::vector<Point>& images) {
  if (vertices.size() != images.size() || vertices.empty()) return std::nullopt;
  auto inv = vertex_matrix(vertices).inverse();
  if (!inv) return std::nullopt;
  return vertex_matrix(images) * (*inv);
}

}  // namespace freemv
