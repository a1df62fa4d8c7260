#include "dp4kit/pencil.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <thread>

#include "dp4kit/error.hpp"

namespace dp4kit {

namespace {

void check_square5(const Matrix& m, const char* name) {
  if (m.rows() != 5 || m.cols() != 5)
    throw ValidationError(std::string(name) + " must be 5x5");
  if (!m.is_symmetric()) throw ValidationError(std::string(name) + " must be symmetric");
}

// Degree over the field of the pencil of the smallest field containing v.
int relative_degree(const Vec& v, const FieldSpec& base) {
  if (!base.is_finite()) return 1;
  int e = 1;
  for (const auto& x : v) e = std::lcm(e, minimal_field_degree(x));
  const int kb = base.degree();
  return std::lcm(e, kb) / kb;
}

bool independent(const Matrix& a, const Matrix& b) {
  std::vector<Vec> rows(2);
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = i; j < 5; ++j) {
      rows[0].push_back(a(i, j));
      rows[1].push_back(b(i, j));
    }
  return Matrix::from_rows(a.field(), rows).rank() == 2;
}

// Roots [x : y] of a x^2 + b x y + c y^2 in the field; all_zero set if the
// form vanishes identically.
std::vector<std::pair<FieldElement, FieldElement>> binary_quadratic_roots(
    const FieldElement& a, const FieldElement& b, const FieldElement& c, bool* all_zero) {
  const FieldSpec f = a.field();
  std::vector<std::pair<FieldElement, FieldElement>> out;
  *all_zero = a.is_zero() && b.is_zero() && c.is_zero();
  if (*all_zero) return out;
  if (a.is_zero()) out.emplace_back(FieldElement::one(f), FieldElement::zero(f));
  UniPoly g(f, Vec{c, b, a});
  for (const auto& r : roots(g)) out.emplace_back(r, FieldElement::one(f));
  return out;
}

// Basis of W / <x> for W = {v : g.v = 0} containing x.
std::vector<Vec> complement_basis(const Vec& g, const Vec& x) {
  const FieldSpec f = g[0].field();
  Matrix gm = Matrix::from_rows(f, {g});
  std::vector<Vec> w = gm.kernel();
  std::vector<Vec> chosen{x};
  std::vector<Vec> out;
  for (const auto& v : w) {
    chosen.push_back(v);
    if (Matrix::from_rows(f, chosen).rank() == chosen.size()) {
      out.push_back(v);
    } else {
      chosen.pop_back();
    }
  }
  return out;
}

bool ordinary_at(const Matrix& m, const Matrix& other, const Vec& x) {
  Vec g = other * x;
  if (is_zero_vec(g)) return false;
  auto basis = complement_basis(g, x);
  if (basis.size() != 3) return false;
  Matrix h(m.field(), 3, 3);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) h(i, j) = bilinear(m, basis[i], basis[j]);
  return h.rank() == 3;
}

// Singular points over exactly the field of p (relative degree filter applied
// by the caller).  complete is cleared when a kernel line meets the other
// quadric outside the field.
void singular_points_here(const QuadricPencil& p, const BinaryForm& quintic, SingularLocus& out,
                          bool& complete) {
  const FieldSpec f = p.field();
  std::vector<std::pair<FieldElement, FieldElement>> members;
  if (quintic.coeff(0).is_zero()) members.emplace_back(FieldElement::one(f), FieldElement::zero(f));
  for (const auto& r : roots(quintic.dehomogenize()))
    members.emplace_back(r, FieldElement::one(f));
  for (const auto& [s0, s1] : members) {
    Matrix m = p.A.scaled(s0) + p.B.scaled(s1);
    const Matrix& other = s1.is_zero() ? p.B : p.A;
    std::vector<Vec> ker = m.kernel();
    std::vector<Vec> pts;
    if (ker.size() == 1) {
      if (bilinear(other, ker[0], ker[0]).is_zero()) pts.push_back(ker[0]);
    } else if (ker.size() == 2) {
      const Vec& u = ker[0];
      const Vec& w = ker[1];
      bool all_zero = false;
      auto rts = binary_quadratic_roots(bilinear(other, u, u),
                                        bilinear(other, u, w) + bilinear(other, u, w),
                                        bilinear(other, w, w), &all_zero);
      if (all_zero) {
        out.positive_dimensional = true;
        continue;
      }
      std::size_t mult = 0;
      for (const auto& [a, b] : rts) {
        Vec v(5);
        for (int i = 0; i < 5; ++i) v[i] = a * u[i] + b * w[i];
        pts.push_back(v);
        ++mult;
      }
      // A quadratic with no roots in the field contributes points over an
      // extension; only an issue over Q.
      if (mult == 0) complete = false;
    } else if (ker.size() >= 3) {
      out.positive_dimensional = true;
      continue;
    }
    for (auto& v : pts) {
      SingularPoint sp;
      sp.coords = normalize_projective(v);
      sp.ordinary = ordinary_at(m, other, sp.coords);
      sp.root_s0 = s0;
      sp.root_s1 = s1;
      out.points.push_back(std::move(sp));
    }
  }
}

bool point_less(const SingularPoint& a, const SingularPoint& b) {
  if (a.field_degree != b.field_degree) return a.field_degree < b.field_degree;
  return a.coords < b.coords;
}

}  // namespace

QuadricPencil make_pencil(const Matrix& A, const Matrix& B) {
  check_square5(A, "Q0");
  check_square5(B, "Q1");
  if (A.field() != B.field()) throw ValidationError("Q0 and Q1 over different fields");
  return QuadricPencil{A, B};
}

QuadricPencil diagonal_pencil(const Vec& c) {
  if (c.size() != 5) throw ValidationError("diagonal pencil needs 5 entries");
  const FieldSpec f = c[0].field();
  Matrix B(f, 5, 5);
  for (std::size_t i = 0; i < 5; ++i) B(i, i) = c[i];
  return QuadricPencil{Matrix::identity(f, 5), B};
}

Matrix quadric_matrix(const MultiPoly& q) {
  if (q.nvars() != 5) throw ValidationError("quadric must be in 5 variables");
  std::vector<std::size_t> all{0, 1, 2, 3, 4};
  if (!q.is_zero() && !q.is_homogeneous_in(all, 2))
    throw ValidationError("quadric must be homogeneous of degree 2");
  const FieldSpec f = q.field();
  const FieldElement half = FieldElement::one(f) / FieldElement(f, 2);
  Matrix m(f, 5, 5);
  for (const auto& [mon, c] : q.terms()) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < 5; ++i)
      for (int e = 0; e < mon[i]; ++e) idx.push_back(i);
    if (idx[0] == idx[1]) {
      m(idx[0], idx[0]) = c;
    } else {
      m(idx[0], idx[1]) = c * half;
      m(idx[1], idx[0]) = c * half;
    }
  }
  return m;
}

MultiPoly quadric_form(const Matrix& m, const std::vector<std::string>& vars) {
  MultiPoly q(m.field(), vars);
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = i; j < 5; ++j) {
      Monomial e(vars.size(), 0);
      e[i] += 1;
      e[j] += 1;
      q.add_term(e, i == j ? m(i, j) : m(i, j) + m(j, i));
    }
  return q;
}

QuadricPencil congruence(const QuadricPencil& p, const Matrix& m) {
  Matrix mt = m.transpose();
  return QuadricPencil{mt * p.A * m, mt * p.B * m};
}

QuadricPencil pencil_basis_change(const QuadricPencil& p, const Matrix& g) {
  if (g.rows() != 2 || g.cols() != 2) throw ValidationError("basis change must be 2x2");
  return QuadricPencil{p.A.scaled(g(0, 0)) + p.B.scaled(g(0, 1)),
                       p.A.scaled(g(1, 0)) + p.B.scaled(g(1, 1))};
}

QuadricPencil map_field(const QuadricPencil& p, const FieldEmbedding& e) {
  return QuadricPencil{p.A.map(e.target(), e), p.B.map(e.target(), e)};
}

BinaryForm determinantal_quintic(const QuadricPencil& p) {
  const FieldSpec f = p.field();
  if (!independent(p.A, p.B)) throw MathError("degenerate pencil: Q0 and Q1 are dependent");
  std::vector<std::vector<UniPoly>> m(5, std::vector<UniPoly>(5));
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 5; ++j) m[i][j] = UniPoly(f, Vec{p.B(i, j), p.A(i, j)});
  UniPoly d = det_poly_matrix(m);
  if (d.is_zero())
    throw MathError("degenerate pencil: determinant vanishes identically");
  return BinaryForm::from_dehomogenized(d, 5);
}

SingularLocus singular_points(const QuadricPencil& p, int k_max) {
  if (k_max < 1) throw ValidationError("k_max must be at least 1");
  const BinaryForm quintic = determinantal_quintic(p);
  const FieldSpec base = p.field();
  SingularLocus out;
  bool complete = true;
  const int kmax = base.is_finite() ? k_max : 1;
  for (int k = 1; k <= kmax; ++k) {
    SingularLocus here;
    if (k == 1) {
      singular_points_here(p, quintic, here, complete);
    } else {
      FieldEmbedding e(base, base.extend(k));
      QuadricPencil pk = map_field(p, e);
      singular_points_here(pk, quintic.map(e.target(), e), here, complete);
    }
    out.positive_dimensional = out.positive_dimensional || here.positive_dimensional;
    for (auto& sp : here.points) {
      sp.field_degree = relative_degree(sp.coords, base);
      if (sp.field_degree == k) out.points.push_back(std::move(sp));
    }
  }
  std::sort(out.points.begin(), out.points.end(), point_less);
  out.points.erase(std::unique(out.points.begin(), out.points.end(),
                               [](const SingularPoint& a, const SingularPoint& b) {
                                 return a.field_degree == b.field_degree && a.coords == b.coords;
                               }),
                   out.points.end());
  if (!base.is_finite() && !complete)
    throw MathError("singular points not all rational; use a finite field");
  return out;
}

std::string to_string(Stability s) {
  switch (s) {
    case Stability::stable: return "stable";
    case Stability::strictly_semistable: return "strictly-semistable";
    case Stability::unstable: return "unstable";
    case Stability::degenerate_pencil: return "degenerate-pencil";
  }
  return "?";
}

bool StabilityVerdict::single_node() const {
  return status == Stability::strictly_semistable && singular.size() == 1 && singular[0].ordinary;
}

StabilityVerdict classify_stability(const QuadricPencil& p) {
  make_pencil(p.A, p.B);
  StabilityVerdict v;
  BinaryForm quintic;
  try {
    quintic = determinantal_quintic(p);
  } catch (const MathError&) {
    // Dependent generators describe a single quadric.  Otherwise every member
    // is singular, which forces a singular base locus.
    v.status = independent(p.A, p.B) ? Stability::unstable : Stability::degenerate_pencil;
    return v;
  }
  v.partition = root_multiplicity_partition(quintic);
  if (v.partition.front() == 1) {
    v.status = Stability::stable;
    return v;
  }
  if (!p.field().is_finite()) {
    UniPoly g = quintic.dehomogenize();
    for (const auto& sf : squarefree_decomposition(g))
      if (sf.multiplicity >= 2 && sf.factor.degree() >= 2)
        throw MathError("repeated roots of the determinantal quintic are irrational; use a finite field");
  }
  // Repeated roots have degree at most 2 and kernel lines meet the other
  // quadric over a further quadratic extension.
  SingularLocus loc = singular_points(p, 4);
  v.singular = loc.points;
  v.positive_dimensional = loc.positive_dimensional;
  bool all_ordinary = !loc.points.empty();
  for (const auto& sp : loc.points) all_ordinary = all_ordinary && sp.ordinary;
  v.status = (!loc.positive_dimensional && all_ordinary) ? Stability::strictly_semistable
                                                          : Stability::unstable;
  return v;
}

Diagonalization diagonalize(const QuadricPencil& p) {
  make_pencil(p.A, p.B);
  const BinaryForm quintic = determinantal_quintic(p);
  const FieldSpec f = p.field();
  if (quintic.coeff(0).is_zero()) throw MathError("cannot diagonalize: Q0 is singular");
  UniPoly g = quintic.dehomogenize();
  if (!is_squarefree(g)) throw MathError("cannot diagonalize: repeated roots");
  std::vector<FieldElement> rts = roots(g);
  if (rts.size() != 5) {
    if (f.is_finite())
      throw MathError("determinantal quintic does not split; splitting degree " +
                      std::to_string(splitting_degree(g)));
    throw MathError("determinantal quintic does not split over Q");
  }
  Diagonalization d;
  d.transform = Matrix(f, 5, 5);
  d.exact = true;
  for (std::size_t i = 0; i < 5; ++i) {
    Matrix m = p.A.scaled(rts[i]) + p.B;
    std::vector<Vec> ker = m.kernel();
    if (ker.size() != 1) throw MathError("unexpected kernel dimension");
    Vec v = ker[0];
    FieldElement a = bilinear(p.A, v, v);
    FieldElement b = bilinear(p.B, v, v);
    d.c.push_back(b / a);
    FieldElement r;
    if (a.sqrt(r)) {
      for (auto& x : v) x /= r;
      a = FieldElement::one(f);
    } else {
      d.exact = false;
    }
    d.a.push_back(a);
    for (std::size_t j = 0; j < 5; ++j) d.transform(j, i) = v[j];
  }
  return d;
}

QuadricPencil rho_limit(const QuadricPencil& p, const std::array<int, 5>& w) {
  make_pencil(p.A, p.B);
  const FieldSpec f = p.field();
  using Laurent = std::map<int, FieldElement>;
  using Row = std::vector<Laurent>;  // upper-triangle entries (i <= j)
  auto to_row = [&](const Matrix& m) {
    Row r;
    for (int i = 0; i < 5; ++i)
      for (int j = i; j < 5; ++j) {
        Laurent l;
        if (!m(i, j).is_zero()) l[w[i] + w[j]] = m(i, j);
        r.push_back(l);
      }
    return r;
  };
  auto valuation = [](const Row& r, bool* zero) {
    int v = 0;
    *zero = true;
    for (const auto& l : r)
      if (!l.empty() && (*zero || l.begin()->first < v)) {
        v = l.begin()->first;
        *zero = false;
      }
    return v;
  };
  auto leading = [&](const Row& r, int v) {
    Vec out;
    for (const auto& l : r) {
      auto it = l.find(v);
      out.push_back(it == l.end() ? FieldElement::zero(f) : it->second);
    }
    return out;
  };
  auto to_matrix = [&](const Vec& lead) {
    Matrix m(f, 5, 5);
    std::size_t k = 0;
    for (int i = 0; i < 5; ++i)
      for (int j = i; j < 5; ++j, ++k) {
        m(i, j) = lead[k];
        m(j, i) = lead[k];
      }
    return m;
  };
  Row r1 = to_row(p.A), r2 = to_row(p.B);
  for (int iter = 0; iter < 64; ++iter) {
    bool z1, z2;
    int v1 = valuation(r1, &z1), v2 = valuation(r2, &z2);
    if (z1 || z2) throw MathError("degenerate pencil: generators are dependent");
    Vec l1 = leading(r1, v1), l2 = leading(r2, v2);
    if (Matrix::from_rows(f, {l1, l2}).rank() == 2) {
      QuadricPencil lim{to_matrix(l1), to_matrix(l2)};
      try {
        determinantal_quintic(lim);
      } catch (const MathError&) {
        throw MathError("limit pencil is degenerate (determinant vanishes identically)");
      }
      return lim;
    }
    // l2 = c l1: cancel the leading part of r2 with a shifted copy of r1.
    std::size_t k = 0;
    while (l1[k].is_zero()) ++k;
    FieldElement c = l2[k] / l1[k];
    const int shift = v2 - v1;
    for (std::size_t e = 0; e < r2.size(); ++e) {
      for (const auto& [deg, coef] : r1[e]) {
        FieldElement& slot = r2[e][deg + shift];
        slot -= c * coef;
        if (slot.is_zero()) r2[e].erase(deg + shift);
      }
    }
  }
  throw MathError("rho limit did not stabilize");
}

bool Line::operator<(const Line& o) const {
  if (p != o.p) return p < o.p;
  return q < o.q;
}

Line make_line(const Vec& a, const Vec& b) {
  const FieldSpec f = a[0].field();
  Matrix r = Matrix::from_rows(f, {a, b}).rref();
  Line l{r.row(0), r.row(1)};
  if (is_zero_vec(l.q)) throw ValidationError("points do not span a line");
  return l;
}

bool line_on_surface(const QuadricPencil& p, const Line& l) {
  for (const Matrix* m : {&p.A, &p.B})
    if (!bilinear(*m, l.p, l.p).is_zero() || !bilinear(*m, l.p, l.q).is_zero() ||
        !bilinear(*m, l.q, l.q).is_zero())
      return false;
  return true;
}

namespace {

using u64 = std::uint64_t;

// Point enumeration on {A = B = 0} with raw field indices: for each point
// (x0..x3) of P^3 both quadrics become quadratics in x4.
class RawSurface {
 public:
  explicit RawSurface(const QuadricPencil& p) : fd_(p.field().data()), q_(p.field().order()) {
    if (!p.field().is_finite()) throw ValidationError("point enumeration needs a finite field");
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j < 5; ++j) {
        a_[i][j] = p.A(i, j).index();
        b_[i][j] = p.B(i, j).index();
      }
    two_ = fd_.from_int(2);
    four_ = fd_.from_int(4);
    if (q_ <= (u64(1) << 22)) {
      sqrt_.assign(q_, ~u64(0));
      for (u64 x = 0; x < q_; ++x) sqrt_[fd_.mul(x, x)] = x;
    }
  }

  // Calls fn(x4) for each x4 completing (x0..x3) to a point.
  template <class F>
  void solve(const u64* x, F&& fn) const {
    u64 a1, b1, c1, a2, b2, c2;
    coeffs(a_, x, a1, b1, c1);
    coeffs(b_, x, a2, b2, c2);
    u64 r[2];
    int n;
    bool all1 = roots_of(a1, b1, c1, r, n);
    if (all1) {
      bool all2 = roots_of(a2, b2, c2, r, n);
      if (all2) {
        for (u64 t = 0; t < q_; ++t) fn(t);
      } else {
        for (int i = 0; i < n; ++i) fn(r[i]);
      }
      return;
    }
    for (int i = 0; i < n; ++i)
      if (eval(a2, b2, c2, r[i]) == 0) fn(r[i]);
  }

  bool vertex_on_surface() const { return a_[4][4] == 0 && b_[4][4] == 0; }

  // Iterates normalized (x0..x3) in P^3.
  template <class F>
  void for_each_prefix(F&& fn) const {
    u64 x[4];
    for (int lead = 0; lead < 4; ++lead) {
      for (int i = 0; i < lead; ++i) x[i] = 0;
      x[lead] = 1;
      const int free = 3 - lead;
      u64 total = 1;
      for (int i = 0; i < free; ++i) total *= q_;
      for (u64 c = 0; c < total; ++c) {
        u64 rest = c;
        for (int i = 3; i > lead; --i) {
          x[i] = rest % q_;
          rest /= q_;
        }
        fn(x);
      }
    }
  }

  const detail::FieldData& fd() const { return fd_; }
  u64 order() const { return q_; }

 private:
  void coeffs(const u64 (&m)[5][5], const u64* x, u64& a, u64& b, u64& c) const {
    a = m[4][4];
    u64 lin = 0;
    c = 0;
    for (int i = 0; i < 4; ++i) {
      if (x[i] == 0) continue;
      lin = fd_.add(lin, fd_.mul(m[i][4], x[i]));
      u64 row = fd_.mul(m[i][i], x[i]);
      for (int j = i + 1; j < 4; ++j)
        if (x[j] != 0) row = fd_.add(row, fd_.mul(fd_.mul(two_, m[i][j]), x[j]));
      c = fd_.add(c, fd_.mul(row, x[i]));
    }
    b = fd_.mul(two_, lin);
  }

  u64 eval(u64 a, u64 b, u64 c, u64 t) const {
    return fd_.add(fd_.mul(fd_.add(fd_.mul(a, t), b), t), c);
  }

  // Returns true if the quadratic vanishes identically.
  bool roots_of(u64 a, u64 b, u64 c, u64* r, int& n) const {
    n = 0;
    if (a == 0) {
      if (b == 0) return c == 0;
      r[n++] = fd_.mul(fd_.neg(c), fd_.inv(b));
      return false;
    }
    u64 disc = fd_.sub(fd_.mul(b, b), fd_.mul(four_, fd_.mul(a, c)));
    u64 s;
    if (!sqrt_.empty()) {
      s = sqrt_[disc];
      if (s == ~u64(0)) return false;
    } else if (!fd_.sqrt(disc, s)) {
      return false;
    }
    u64 inv2a = fd_.inv(fd_.mul(two_, a));
    r[n++] = fd_.mul(fd_.add(fd_.neg(b), s), inv2a);
    if (s != 0) r[n++] = fd_.mul(fd_.sub(fd_.neg(b), s), inv2a);
    return false;
  }

  const detail::FieldData& fd_;
  u64 q_;
  u64 a_[5][5], b_[5][5];
  u64 two_, four_;
  std::vector<u64> sqrt_;
};

std::vector<std::array<u64, 5>> raw_points(const RawSurface& s) {
  std::vector<std::array<u64, 5>> pts;
  s.for_each_prefix([&](const u64* x) {
    s.solve(x, [&](u64 t) { pts.push_back({x[0], x[1], x[2], x[3], t}); });
  });
  if (s.vertex_on_surface()) pts.push_back({0, 0, 0, 0, 1});
  std::sort(pts.begin(), pts.end());
  return pts;
}

}  // namespace

std::vector<Vec> surface_points(const QuadricPencil& p) {
  RawSurface s(p);
  const FieldSpec f = p.field();
  std::vector<Vec> out;
  for (const auto& pt : raw_points(s)) {
    Vec v;
    for (u64 x : pt) v.push_back(FieldElement::from_index(f, x));
    out.push_back(std::move(v));
  }
  return out;
}

std::uint64_t surface_point_count(const QuadricPencil& p) {
  RawSurface s(p);
  u64 n = s.vertex_on_surface() ? 1 : 0;
  s.for_each_prefix([&](const u64* x) { s.solve(x, [&](u64) { ++n; }); });
  return n;
}

std::vector<Line> lines_on_surface(const QuadricPencil& p0, int k, int threads) {
  if (k < 1) throw ValidationError("extension degree must be at least 1");
  const FieldSpec base = p0.field();
  if (!base.is_finite()) throw ValidationError("line enumeration needs a finite field");
  QuadricPencil p = p0;
  if (k > 1) p = map_field(p0, FieldEmbedding(base, base.extend(k)));
  const FieldSpec f = p.field();
  RawSurface s(p);
  const auto& fd = s.fd();
  const auto pts = raw_points(s);
  const std::size_t n = pts.size();
  std::vector<std::array<u64, 5>> ap(n), bp(n);
  for (std::size_t i = 0; i < n; ++i)
    for (int r = 0; r < 5; ++r) {
      u64 x = 0, y = 0;
      for (int c = 0; c < 5; ++c) {
        x = fd.add(x, fd.mul(p.A(r, c).index(), pts[i][c]));
        y = fd.add(y, fd.mul(p.B(r, c).index(), pts[i][c]));
      }
      ap[i][r] = x;
      bp[i][r] = y;
    }
  using Key = std::array<u64, 10>;
  auto canonical = [&](const std::array<u64, 5>& u, const std::array<u64, 5>& v) {
    u64 m[2][5];
    for (int c = 0; c < 5; ++c) {
      m[0][c] = u[c];
      m[1][c] = v[c];
    }
    int row = 0;
    for (int c = 0; c < 5 && row < 2; ++c) {
      int piv = -1;
      for (int r = row; r < 2; ++r)
        if (m[r][c] != 0) {
          piv = r;
          break;
        }
      if (piv < 0) continue;
      if (piv != row)
        for (int j = 0; j < 5; ++j) std::swap(m[row][j], m[piv][j]);
      u64 inv = fd.inv(m[row][c]);
      for (int j = 0; j < 5; ++j) m[row][j] = fd.mul(m[row][j], inv);
      int other = 1 - row;
      u64 factor = m[other][c];
      if (factor != 0)
        for (int j = 0; j < 5; ++j) m[other][j] = fd.sub(m[other][j], fd.mul(factor, m[row][j]));
      ++row;
    }
    Key key;
    for (int j = 0; j < 5; ++j) {
      key[j] = m[0][j];
      key[5 + j] = m[1][j];
    }
    return key;
  };
  auto dot5 = [&](const std::array<u64, 5>& a, const std::array<u64, 5>& b) {
    u64 s = 0;
    for (int c = 0; c < 5; ++c) s = fd.add(s, fd.mul(a[c], b[c]));
    return s;
  };
  const int nt = std::max(1, threads);
  std::vector<std::set<Key>> found(nt);
  auto work = [&](int t) {
    for (std::size_t i = t; i < n; i += nt)
      for (std::size_t j = i + 1; j < n; ++j)
        if (dot5(ap[i], pts[j]) == 0 && dot5(bp[i], pts[j]) == 0)
          found[t].insert(canonical(pts[i], pts[j]));
  };
  if (nt == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < nt; ++t) pool.emplace_back(work, t);
    for (auto& th : pool) th.join();
  }
  std::set<Key> all;
  for (auto& s2 : found) all.insert(s2.begin(), s2.end());
  std::vector<Line> out;
  for (const auto& key : all) {
    Line l;
    for (int j = 0; j < 5; ++j) {
      l.p.push_back(FieldElement::from_index(f, key[j]));
      l.q.push_back(FieldElement::from_index(f, key[5 + j]));
    }
    out.push_back(std::move(l));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace dp4kit
