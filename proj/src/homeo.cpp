#include "freemv/homeo.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <stdexcept>

namespace freemv {

PwlMap::PwlMap(Complex complex, std::vector<Matrix> matrices)
    : complex_(std::move(complex)), matrices_(std::move(matrices)) {
  if (matrices_.size() != complex_.size()) throw std::invalid_argument("PwlMap: one matrix per cell required");
  const std::size_t h = complex_.ambient_dim + 1;
  for (const auto& m : matrices_)
    if (m.rows() != h || m.cols() != h) throw std::invalid_argument("PwlMap: matrix size mismatch");
}

PwlMap PwlMap::identity(std::size_t n) {
  Complex c = cube_triangulation(n);
  std::vector<Matrix> ms(c.size(), Matrix::identity(n + 1));
  return {std::move(c), std::move(ms)};
}

// ---------------------------------------------------------------------------
// Validation

namespace {

std::string point_text(const Point& p) {
  std::string s = "(";
  for (std::size_t i = 0; i < p.dim(); ++i) s += (i ? ", " : "") + to_string(p[i]);
  return s + ")";
}

void fail(ValidationReport& r, std::string cond, std::optional<std::size_t> cell, std::string detail) {
  r.passed = false;
  r.failures.push_back({std::move(cond), cell, std::move(detail)});
}

}  // namespace

ValidationReport validate(const PwlMap& m) {
  ValidationReport rep;
  const Complex& c = m.complex();
  const std::size_t n = m.n();
  if (c.size() == 0) {
    fail(rep, "structure", std::nullopt, "empty complex");
    return rep;
  }
  if (c.volume() != 1) fail(rep, "structure", std::nullopt, "complex does not cover the unit cube");

  int sign = 0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    const Matrix& p = m.matrices()[i];
    for (std::size_t j = 0; j <= n; ++j) {
      Rational want = j == n ? 1 : 0;
      if (p(n, j) != want) {
        fail(rep, "last_row", i, "entry (" + std::to_string(n) + "," + std::to_string(j) + ") = " + to_string(p(n, j)));
        break;
      }
    }
    for (std::size_t r = 0; r <= n; ++r)
      for (std::size_t col = 0; col <= n; ++col)
        if (!is_integer(p(r, col))) {
          fail(rep, "integrality", i,
               "entry (" + std::to_string(r) + "," + std::to_string(col) + ") = " + to_string(p(r, col)));
          r = col = n + 1;  // one witness per cell
        }
    Rational det = p.determinant();
    if (det != 1 && det != -1) {
      fail(rep, "determinant", i, "determinant " + to_string(det));
    } else {
      int s = det > 0 ? 1 : -1;
      if (sign == 0)
        sign = s;
      else if (s != sign)
        fail(rep, "determinant", i, "determinant sign differs from earlier pieces");
    }
  }

  // Images of every vertex, per incident cell; also vertices lying on a cell
  // without being one of its vertices.
  std::vector<std::optional<Point>> image(c.vertices.size());
  std::vector<Box> boxes;
  boxes.reserve(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) boxes.push_back(Box::of(c.cell_points(i)));
  for (std::size_t i = 0; i < c.size(); ++i) {
    for (std::size_t v : c.cells[i]) {
      Point img = apply_homogeneous(m.matrices()[i], c.vertices[v]);
      if (!image[v]) {
        image[v] = img;
        if (!img.in_unit_cube())
          fail(rep, "range", i, "vertex " + point_text(c.vertices[v]) + " maps to " + point_text(img));
      } else if (*image[v] != img) {
        fail(rep, "continuity", i,
             "vertex " + point_text(c.vertices[v]) + " maps to " + point_text(*image[v]) + " and " + point_text(img));
      }
    }
  }
  for (std::size_t v = 0; v < c.vertices.size(); ++v) {
    const Point& p = c.vertices[v];
    Box pb{p.coords, p.coords};
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (!boxes[i].overlaps(pb)) continue;
      const auto& cell = c.cells[i];
      if (std::find(cell.begin(), cell.end(), v) != cell.end()) continue;
      if (!c.cell(i).contains(p)) continue;
      Point img = apply_homogeneous(m.matrices()[i], p);
      if (image[v] && img != *image[v])
        fail(rep, "continuity", i, "boundary point " + point_text(p) + " maps to two different images");
    }
  }

  // Image tiling.
  std::vector<Simplex> imgs;
  imgs.reserve(c.size());
  Rational total = 0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    Simplex s;
    for (const auto& p : c.cell_points(i)) s.vertices.push_back(apply_homogeneous(m.matrices()[i], p));
    total += simplex_volume(s);
    imgs.push_back(std::move(s));
  }
  if (total != 1) fail(rep, "tiling", std::nullopt, "image volumes sum to " + to_string(total));
  std::vector<Box> ibox;
  std::vector<std::vector<Halfspace>> ihs(imgs.size());
  for (std::size_t i = 0; i < imgs.size(); ++i) {
    ibox.push_back(Box::of(imgs[i].vertices));
    if (simplex_volume(imgs[i]) == 0)
      fail(rep, "tiling", i, "degenerate image cell");
    else
      ihs[i] = imgs[i].halfspaces();
  }
  for (std::size_t i = 0; i < imgs.size(); ++i) {
    if (ihs[i].empty()) continue;
    for (std::size_t j = i + 1; j < imgs.size(); ++j) {
      if (ihs[j].empty() || !ibox[i].overlaps(ibox[j])) continue;
      auto separated = [](const std::vector<Point>& pts, const std::vector<Halfspace>& hs) {
        return std::any_of(hs.begin(), hs.end(), [&](const Halfspace& h) {
          return std::all_of(pts.begin(), pts.end(), [&](const Point& p) { return dot(h.a, p.coords) >= h.b; });
        });
      };
      if (separated(imgs[j].vertices, ihs[i]) || separated(imgs[i].vertices, ihs[j])) continue;
      auto hs = ihs[i];
      hs.insert(hs.end(), ihs[j].begin(), ihs[j].end());
      auto poly = Polytope::from_halfspaces(n, std::move(hs));
      if (!poly.empty() && poly.dim == n)
        fail(rep, "tiling", i, "image overlaps the image of cell " + std::to_string(j));
    }
  }
  return rep;
}

McNaughtonHomeo McNaughtonHomeo::certify(PwlMap m) {
  ValidationReport r = validate(m);
  if (!r.passed) {
    const auto& f = r.failures.front();
    throw std::invalid_argument("not a McNaughton homeomorphism: " + f.condition + ": " + f.detail);
  }
  int sign = m.matrices().front().determinant() > 0 ? 1 : -1;
  return {std::move(m), sign};
}

// ---------------------------------------------------------------------------
// Group operations

Point apply_map(const PwlMap& m, const Point& p) {
  if (p.dim() != m.n()) throw std::invalid_argument("apply_map: dimension mismatch");
  if (!p.in_unit_cube()) throw std::out_of_range("apply_map: point outside the unit cube");
  auto cell = m.complex().locate(p);
  if (!cell) throw std::logic_error("apply_map: complex does not cover the point");
  return apply_homogeneous(m.matrices()[*cell], p);
}

PwlMap compose_maps(const PwlMap& a, const PwlMap& b) {
  if (a.n() != b.n()) throw std::invalid_argument("compose_maps: dimension mismatch");
  Refinement r = pullback_refinement(b.complex(), b.matrices(), a.complex());
  std::vector<Matrix> ms;
  ms.reserve(r.complex.size());
  for (std::size_t i = 0; i < r.complex.size(); ++i) ms.push_back(a.matrices()[r.parent_b[i]] * b.matrices()[r.parent_a[i]]);
  return coarsen({std::move(r.complex), std::move(ms)});
}

PwlMap coarsen(const PwlMap& m) {
  // Label cells by their matrix, then merge convex same-label unions.
  std::map<std::string, std::size_t> ids;
  std::vector<std::size_t> labels;
  std::vector<const Matrix*> by_label;
  labels.reserve(m.complex().size());
  for (const auto& p : m.matrices()) {
    std::string key;
    for (std::size_t r = 0; r <= m.n(); ++r)
      for (std::size_t c = 0; c <= m.n(); ++c) key += to_string(p(r, c)) + ",";
    auto [it, fresh] = ids.emplace(std::move(key), by_label.size());
    if (fresh) by_label.push_back(&p);
    labels.push_back(it->second);
  }
  Refinement r = merge_convex(m.complex(), labels);
  std::vector<Matrix> ms;
  ms.reserve(r.complex.size());
  for (std::size_t label : r.parent_b) ms.push_back(*by_label[label]);
  return {std::move(r.complex), std::move(ms)};
}

McNaughtonHomeo compose_homeos(const McNaughtonHomeo& a, const McNaughtonHomeo& b) {
  return {compose_maps(a.map(), b.map()), a.determinant_sign() * b.determinant_sign()};
}

McNaughtonHomeo invert_map(const McNaughtonHomeo& a) {
  const PwlMap& m = a.map();
  ComplexBuilder builder(m.n());
  std::vector<Matrix> ms;
  ms.reserve(m.complex().size());
  for (std::size_t i = 0; i < m.complex().size(); ++i) {
    std::vector<Point> img;
    for (const auto& p : m.complex().cell_points(i)) img.push_back(apply_homogeneous(m.matrices()[i], p));
    builder.add_cell(img);
    ms.push_back(*m.matrices()[i].inverse());
  }
  return {PwlMap(std::move(builder).build(), std::move(ms)), a.determinant_sign()};
}

PwlMap power(const PwlMap& m, unsigned times) {
  if (times == 0) throw std::invalid_argument("power: exponent must be positive");
  PwlMap acc = m;
  for (unsigned i = 1; i < times; ++i) acc = compose_maps(m, acc);
  return acc;
}

McNaughtonHomeo gen_symmetry(std::size_t n, const std::vector<std::size_t>& perm, const std::vector<bool>& flip) {
  if (perm.size() != n || flip.size() != n) throw std::invalid_argument("gen_symmetry: size mismatch");
  std::vector<std::size_t> sorted = perm;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < n; ++i)
    if (sorted[i] != i + 1) throw std::invalid_argument("gen_symmetry: not a permutation of 1..n");
  Matrix p(n + 1, n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    if (flip[i]) {
      p(i, perm[i] - 1) = -1;
      p(i, n) = 1;
    } else {
      p(i, perm[i] - 1) = 1;
    }
  }
  p(n, n) = 1;
  Complex c = cube_triangulation(n);
  std::vector<Matrix> ms(c.size(), p);
  return McNaughtonHomeo::certify(PwlMap(std::move(c), std::move(ms)));
}

// ---------------------------------------------------------------------------
// The square and rhombus generators

Point p_point(unsigned h, unsigned i) {
  const long a = h, d = 2L * h + 1;
  switch (i % 4) {
    case 0: return {Rational(a + 1, d), Rational(a, d)};
    case 1: return {Rational(a + 1, d), Rational(a + 1, d)};
    case 2: return {Rational(a, d), Rational(a + 1, d)};
    default: return {Rational(a, d), Rational(a, d)};
  }
}

Point q_point(unsigned h, unsigned i) {
  const long a = h, d = 2L * h + 2;
  Point p;
  switch (i % 4) {
    case 0: p = {Rational(a + 2), Rational(a + 1)}; break;
    case 1: p = {Rational(a + 1), Rational(a + 2)}; break;
    case 2: p = {Rational(a), Rational(a + 1)}; break;
    default: p = {Rational(a + 1), Rational(a)}; break;
  }
  for (auto& x : p.coords) x /= d;
  return p;
}

namespace {

struct VertexAction {
  std::vector<std::vector<Point>> cells;
  std::map<Point, Point> moved;  // vertices not listed are fixed

  void add(std::vector<Point> cell) { cells.push_back(std::move(cell)); }

  PwlMap build() const {
    ComplexBuilder b(2);
    std::vector<Matrix> ms;
    for (const auto& cell : cells) {
      std::vector<Point> img;
      for (const auto& p : cell) {
        auto it = moved.find(p);
        img.push_back(it == moved.end() ? p : it->second);
      }
      auto m = affine_from_vertices(cell, img);
      if (!m) throw std::logic_error("degenerate cell in generator complex");
      b.add_cell(cell);
      ms.push_back(*m);
    }
    return {std::move(b).build(), std::move(ms)};
  }
};

const Point kCenter{Rational(1, 2), Rational(1, 2)};

// Concentric polygons ring(0) (outermost) ... with ring(k+1) rotated a quarter
// turn; identity on the annulus between ring(0) and ring(k).
void twist_annuli(VertexAction& act, const std::function<Point(unsigned, unsigned)>& ring, unsigned k) {
  for (unsigned i = 0; i < 4; ++i) {
    const unsigned j = (i + 1) % 4;
    if (k > 0) {
      act.add({ring(k, i), ring(0, i), ring(0, j)});
      act.add({ring(k, i), ring(k, j), ring(0, j)});
    }
    act.add({ring(k + 1, i), ring(k, i), ring(k, j)});
    act.add({ring(k + 1, i), ring(k + 1, j), ring(k, j)});
    act.add({kCenter, ring(k + 1, i), ring(k + 1, j)});
    act.moved[ring(k + 1, i)] = ring(k + 1, j);
  }
}

}  // namespace

McNaughtonHomeo gen_R_prime(unsigned k) {
  VertexAction act;
  twist_annuli(act, p_point, k);
  return McNaughtonHomeo::certify(act.build());
}

std::size_t r_prime_reference_cell(unsigned k) {
  const McNaughtonHomeo r = gen_R_prime(k);
  const Complex& c = r.map().complex();
  std::vector<Point> want{p_point(k + 1, 0), p_point(k, 0), p_point(k, 1)};
  std::sort(want.begin(), want.end());
  for (std::size_t i = 0; i < c.size(); ++i) {
    auto pts = c.cell_points(i);
    std::sort(pts.begin(), pts.end());
    if (pts == want) return i;
  }
  throw std::logic_error("reference triangle missing from R'_k complex");
}

McNaughtonHomeo gen_R(unsigned k) {
  const McNaughtonHomeo r = gen_R_prime(k);
  McNaughtonHomeo acc = r;
  for (int i = 1; i < 4; ++i) acc = compose_homeos(r, acc);
  return acc;
}

PwlMap gen_S_prime(unsigned k) {
  VertexAction act;
  const Point corners[4] = {{1, 1}, {0, 1}, {0, 0}, {1, 0}};
  for (unsigned i = 0; i < 4; ++i) act.add({corners[i], q_point(0, i), q_point(0, (i + 1) % 4)});
  twist_annuli(act, q_point, k);
  return act.build();
}

McNaughtonHomeo gen_S(unsigned k) { return McNaughtonHomeo::certify(power(gen_S_prime(k), 4)); }

// ---------------------------------------------------------------------------

namespace {

std::vector<McNaughtonHomeo> symmetries(std::size_t n) {
  std::vector<McNaughtonHomeo> out;
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 1);
  do {
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
      std::vector<bool> flip(n);
      for (std::size_t i = 0; i < n; ++i) flip[i] = (mask >> i) & 1;
      out.push_back(gen_symmetry(n, perm, flip));
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

const std::vector<McNaughtonHomeo>& square_generators() {
  static const std::vector<McNaughtonHomeo> gens = [] {
    auto g = symmetries(2);
    for (unsigned k = 0; k <= 3; ++k) g.push_back(gen_R(k));
    for (unsigned k = 0; k <= 3; ++k) g.push_back(gen_S(k));
    return g;
  }();
  return gens;
}

}  // namespace

McNaughtonHomeo random_word(std::size_t n, std::uint64_t seed, std::size_t length) {
  if (n == 0) throw std::invalid_argument("random_word: n must be positive");
  std::mt19937_64 rng(seed);
  std::vector<McNaughtonHomeo> local;
  const std::vector<McNaughtonHomeo>* gens = nullptr;
  if (n == 2) {
    gens = &square_generators();
  } else {
    local = symmetries(n);
    gens = &local;
  }
  McNaughtonHomeo acc = gen_symmetry(n, [n] {
    std::vector<std::size_t> id(n);
    std::iota(id.begin(), id.end(), 1);
    return id;
  }(), std::vector<bool>(n, false));
  for (std::size_t i = 0; i < length; ++i) {
    const auto& g = (*gens)[rng() % gens->size()];
    acc = i == 0 ? g : compose_homeos(g, acc);
  }
  return acc;
}

}  // namespace freemv
