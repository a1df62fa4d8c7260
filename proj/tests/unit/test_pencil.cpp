#include <algorithm>
#include <set>

#include "doctest.h"
#include "dp4kit/error.hpp"
#include "dp4kit/pencil.hpp"
#include "helpers.hpp"

using namespace dp4kit;
using namespace testutil;

namespace {

QuadricPencil rand_pencil(const FieldSpec& f, Rng& rng) {
  return QuadricPencil{rand_symmetric(f, rng, 5), rand_symmetric(f, rng, 5)};
}

Vec ints(const FieldSpec& f, std::initializer_list<int> v) {
  Vec out;
  for (int x : v) out.push_back(FieldElement(f, x));
  return out;
}

// Q0 = x0 x4 + Q2(x0..x3), Q1 = Q1(x0..x3): node at [0,0,0,0,1].
QuadricPencil planted_node(const FieldSpec& f, Rng& rng) {
  Matrix A(f, 5, 5), B(f, 5, 5);
  Matrix a4 = rand_symmetric(f, rng, 4), b4 = rand_symmetric(f, rng, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      A(i, j) = a4(i, j);
      B(i, j) = b4(i, j);
    }
  const FieldElement half = FieldElement::one(f) / FieldElement(f, 2);
  A(0, 4) = A(4, 0) = half;
  return QuadricPencil{A, B};
}

// Normal form {x4 x0 + R2 = x0 l1 + R1 = 0}, R_i in x1..x3.
QuadricPencil normal_form(const FieldSpec& f, Rng& rng, Matrix* r1_out = nullptr) {
  Matrix A(f, 5, 5), B(f, 5, 5);
  Matrix r2 = rand_symmetric(f, rng, 3), r1 = rand_symmetric(f, rng, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      A(i + 1, j + 1) = r2(i, j);
      B(i + 1, j + 1) = r1(i, j);
    }
  const FieldElement half = FieldElement::one(f) / FieldElement(f, 2);
  A(0, 4) = A(4, 0) = half;
  // x0 * l1 with l1 = l0 x0 + ... + l3 x3
  B(0, 0) = rand_elem(f, rng);
  for (int j = 1; j < 4; ++j) {
    FieldElement l = rand_nonzero(f, rng) * half;
    B(0, j) += l;
    B(j, 0) += l;
  }
  if (r1_out) {
    Matrix lim(f, 5, 5);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) lim(i + 1, j + 1) = r1(i, j);
    *r1_out = lim;
  }
  return QuadricPencil{A, B};
}

// Jacobian of the base locus at x has rank <= 1.
bool jacobian_degenerate(const QuadricPencil& p, const Vec& x) {
  return Matrix::from_rows(p.field(), {p.A * x, p.B * x}).rank() <= 1;
}

// Every line of P^4(F_q) by reduced echelon pairs.
std::vector<Line> brute_force_lines(const QuadricPencil& p) {
  const FieldSpec f = p.field();
  const auto elems = all_elements(f);
  const std::uint64_t q = f.order();
  std::vector<Line> out;
  for (int c0 = 0; c0 < 5; ++c0)
    for (int c1 = c0 + 1; c1 < 5; ++c1) {
      std::vector<int> free0, free1;
      for (int j = c0 + 1; j < 5; ++j)
        if (j != c1) free0.push_back(j);
      for (int j = c1 + 1; j < 5; ++j) free1.push_back(j);
      std::uint64_t n0 = 1, n1 = 1;
      for (std::size_t i = 0; i < free0.size(); ++i) n0 *= q;
      for (std::size_t i = 0; i < free1.size(); ++i) n1 *= q;
      for (std::uint64_t a = 0; a < n0; ++a)
        for (std::uint64_t b = 0; b < n1; ++b) {
          Line l{Vec(5, FieldElement::zero(f)), Vec(5, FieldElement::zero(f))};
          l.p[c0] = FieldElement::one(f);
          l.q[c1] = FieldElement::one(f);
          std::uint64_t r = a;
          for (int j : free0) {
            l.p[j] = elems[r % q];
            r /= q;
          }
          r = b;
          for (int j : free1) {
            l.q[j] = elems[r % q];
            r /= q;
          }
          if (line_on_surface(p, l)) out.push_back(l);
        }
    }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("pencil: determinantal quintic of a diagonal pencil") {
  for (auto f : {FieldSpec::rationals(), FieldSpec::prime(101), FieldSpec::extension(3, 2)}) {
    Vec c = ints(f, {0, 1, 2, 5, 7});
    BinaryForm prod(f, Vec{FieldElement::one(f)});
    for (const auto& ci : c) prod = prod * BinaryForm(f, Vec{FieldElement::one(f), ci});
    BinaryForm got = determinantal_quintic(diagonal_pencil(c));
    CHECK(got == prod);
  }
  const auto f = FieldSpec::prime(101);
  CHECK(classify_stability(diagonal_pencil(ints(f, {0, 1, 2, 3, 4}))).status == Stability::stable);
  // c1 = c2: a corank-two member whose kernel line meets Q0 in two nodes.
  auto v = classify_stability(diagonal_pencil(ints(f, {0, 1, 1, 3, 4})));
  CHECK(v.status == Stability::strictly_semistable);
  CHECK(v.partition == std::vector<int>{2, 1, 1, 1});
  REQUIRE(v.singular.size() == 2);
  CHECK(v.singular[0].ordinary);
  CHECK(v.singular[1].ordinary);
  CHECK_FALSE(v.single_node());
  // Three equal entries: a conic of singular points.
  auto w = classify_stability(diagonal_pencil(ints(f, {0, 1, 1, 1, 4})));
  CHECK(w.status == Stability::unstable);
  CHECK(w.positive_dimensional);
}

TEST_CASE("pencil: degenerate and unstable pencils") {
  const auto f = FieldSpec::prime(101);
  Rng rng(11);
  Matrix a = rand_symmetric(f, rng, 5);
  QuadricPencil same{a, a};
  CHECK_THROWS_AS(determinantal_quintic(same), MathError);
  CHECK(classify_stability(same).status == Stability::degenerate_pencil);
  CHECK(classify_stability(QuadricPencil{a, a.scaled(FieldElement(f, 3))}).status ==
        Stability::degenerate_pencil);

  // Column 5 of both quadrics zero: the vertex is a common singular point.
  QuadricPencil p = rand_pencil(f, rng);
  for (int i = 0; i < 5; ++i) {
    p.A(i, 4) = p.A(4, i) = FieldElement::zero(f);
    p.B(i, 4) = p.B(4, i) = FieldElement::zero(f);
  }
  CHECK(classify_stability(p).status == Stability::unstable);
  CHECK(jacobian_degenerate(p, ints(f, {0, 0, 0, 0, 1})));

  CHECK_THROWS_AS(make_pencil(Matrix(f, 4, 4), Matrix(f, 4, 4)), ValidationError);
  Matrix ns = rand_matrix(f, rng, 5, 5);
  ns(0, 1) = ns(1, 0) + FieldElement::one(f);
  CHECK_THROWS_AS(make_pencil(ns, a), ValidationError);
}

TEST_CASE("pencil: random pencils are stable with no singular points") {
  const auto f = FieldSpec::prime(101);
  Rng rng(5);
  for (int trial = 0; trial < 5; ++trial) {
    QuadricPencil p = rand_pencil(f, rng);
    BinaryForm q = determinantal_quintic(p);
    CHECK(q.degree() == 5);
    CHECK_FALSE(discriminant_binary(q).is_zero());
    auto v = classify_stability(p);
    CHECK(v.status == Stability::stable);
    CHECK(v.partition == std::vector<int>{1, 1, 1, 1, 1});
    CHECK(singular_points(p, trial == 0 ? 5 : 2).points.empty());
  }
}

TEST_CASE("pencil: planted node found and matches an exhaustive Jacobian search") {
  const auto f = FieldSpec::prime(13);
  Rng rng(21);
  const Vec e4 = ints(f, {0, 0, 0, 0, 1});
  int single = 0;
  for (int trial = 0; trial < 12; ++trial) {
    QuadricPencil p = planted_node(f, rng);
    auto v = classify_stability(p);
    if (v.positive_dimensional) continue;
    std::vector<Vec> found;
    for (const auto& sp : v.singular)
      if (sp.field_degree == 1) found.push_back(sp.coords);
    CHECK(std::find(found.begin(), found.end(), e4) != found.end());
    std::vector<Vec> brute;
    for (const auto& x : surface_points(p))
      if (jacobian_degenerate(p, x)) brute.push_back(x);
    std::sort(found.begin(), found.end());
    CHECK(brute == found);
    if (v.single_node()) {
      ++single;
      CHECK(v.singular[0].coords == e4);
      CHECK(v.partition == std::vector<int>{2, 1, 1, 1});
    }
  }
  CHECK(single >= 6);
}

TEST_CASE("pencil: verdict invariant under congruence and basis change") {
  const auto f = FieldSpec::prime(31);
  Rng rng(8);
  std::vector<QuadricPencil> seeds{rand_pencil(f, rng), planted_node(f, rng)};
  seeds.push_back(rho_limit(normal_form(f, rng), {1, 0, 0, 0, -1}));
  for (const auto& p : seeds) {
    auto v0 = classify_stability(p);
    for (int i = 0; i < 12; ++i) {
      QuadricPencil q = congruence(p, rand_invertible(f, rng, 5));
      q = pencil_basis_change(q, rand_invertible(f, rng, 2));
      auto v = classify_stability(q);
      CHECK(v.status == v0.status);
      CHECK(v.partition == v0.partition);
      CHECK(v.singular.size() == v0.singular.size());
    }
  }
}

TEST_CASE("pencil: rho limit of the nodal normal form") {
  const auto f = FieldSpec::prime(101);
  Rng rng(3);
  Matrix r1;
  QuadricPencil p = normal_form(f, rng, &r1);
  QuadricPencil same = rho_limit(p, {0, 0, 0, 0, 0});
  CHECK(same.A == p.A);
  CHECK(same.B == p.B);

  QuadricPencil lim = rho_limit(p, {1, 0, 0, 0, -1});
  CHECK(lim.A == p.A);
  CHECK(lim.B == r1);
  auto loc = singular_points(lim, 2);
  CHECK_FALSE(loc.positive_dimensional);
  REQUIRE(loc.points.size() == 2);
  CHECK(loc.points[0].coords == ints(f, {0, 0, 0, 0, 1}));
  CHECK(loc.points[1].coords == ints(f, {1, 0, 0, 0, 0}));
  CHECK(loc.points[0].ordinary);
  CHECK(loc.points[1].ordinary);
  auto v = classify_stability(lim);
  CHECK(v.status == Stability::strictly_semistable);
  CHECK(v.partition == std::vector<int>{2, 1, 1, 1});  // both nodes on the member R1

  // Dependent leading terms: Q1 = Q0 + x0^2 has the limit pencil (Q0, x0^2).
  QuadricPencil twin{p.A, p.A};
  twin.B(0, 0) += FieldElement::one(f);
  QuadricPencil tl = rho_limit(twin, {1, 0, 0, 0, -1});
  Matrix e00(f, 5, 5);
  e00(0, 0) = FieldElement::one(f);
  CHECK(tl.A == p.A);
  CHECK(tl.B == e00);

  // Weights that collapse everything onto x0^2 give a degenerate limit.
  QuadricPencil d = rand_pencil(f, rng);
  CHECK_THROWS_AS(rho_limit(d, {-9, 0, 0, 0, 0}), MathError);
}

TEST_CASE("pencil: diagonalize recovers the diagonal entries") {
  const auto f = FieldSpec::prime(101);
  Rng rng(13);
  Vec c = ints(f, {0, 1, 2, 3, 4});
  std::multiset<std::uint64_t> want;
  for (const auto& x : c) want.insert(x.index());
  for (int trial = 0; trial < 10; ++trial) {
    QuadricPencil p = congruence(diagonal_pencil(c), rand_invertible(f, rng, 5));
    Diagonalization d = diagonalize(p);
    std::multiset<std::uint64_t> got;
    for (const auto& x : d.c) got.insert(x.index());
    CHECK(got == want);
    QuadricPencil t = congruence(p, d.transform);
    for (std::size_t i = 0; i < 5; ++i)
      for (std::size_t j = 0; j < 5; ++j) {
        CHECK(t.A(i, j) == (i == j ? d.a[i] : FieldElement::zero(f)));
        CHECK(t.B(i, j) == (i == j ? d.a[i] * d.c[i] : FieldElement::zero(f)));
      }
  }

  // Trace forms of F_{p^5}: the quintic is the minimal polynomial of a
  // generator, irreducible over F_p.
  const auto big = FieldSpec::extension(101, 5);
  FieldEmbedding emb(f, big);
  const FieldElement g = FieldElement::from_index(big, 101);
  auto trace = [&](const FieldElement& y) {
    FieldElement s = y, z = y;
    for (int i = 1; i < 5; ++i) {
      z = z.frobenius();
      s += z;
    }
    return emb.pull_back(s);
  };
  Matrix A(f, 5, 5), B(f, 5, 5);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) {
      A(i, j) = trace(g.pow(i + j));
      B(i, j) = trace(g.pow(i + j + 1));
    }
  try {
    diagonalize(QuadricPencil{A, B});
    FAIL("expected failure");
  } catch (const MathError& e) {
    CHECK(std::string(e.what()).find("splitting degree 5") != std::string::npos);
  }
  CHECK_THROWS_AS(diagonalize(diagonal_pencil(ints(f, {0, 1, 1, 3, 4}))), MathError);
}

TEST_CASE("pencil: surface points agree with exhaustive evaluation") {
  Rng rng(17);
  for (auto f : {FieldSpec::prime(7), FieldSpec::extension(3, 2)}) {
    for (auto p : {rand_pencil(f, rng), planted_node(f, rng)}) {
      std::vector<Vec> brute;
      const auto elems = all_elements(f);
      const std::uint64_t q = f.order();
      std::uint64_t total = q * q * q * q * q;
      for (std::uint64_t c = 1; c < total; ++c) {
        Vec x(5);
        std::uint64_t r = c;
        for (int i = 4; i >= 0; --i) {
          x[i] = elems[r % q];
          r /= q;
        }
        if (normalize_projective(x) != x) continue;
        if (bilinear(p.A, x, x).is_zero() && bilinear(p.B, x, x).is_zero()) brute.push_back(x);
      }
      std::sort(brute.begin(), brute.end());
      auto got = surface_points(p);
      std::sort(got.begin(), got.end());
      CHECK(got == brute);
      CHECK(surface_point_count(p) == brute.size());
    }
  }
}

TEST_CASE("pencil: lines agree with a search over all lines of P^4") {
  Rng rng(29);
  const auto f = FieldSpec::prime(7);
  std::vector<QuadricPencil> ps{diagonal_pencil(ints(f, {0, 1, 2, 3, 4})), rand_pencil(f, rng)};
  for (const auto& p : ps) {
    auto got = lines_on_surface(p, 1, 2);
    CHECK(got == brute_force_lines(p));
    for (const auto& l : got) CHECK(line_on_surface(p, l));
  }
}

TEST_CASE("pencil: quadric matrix round trip") {
  const auto f = FieldSpec::rationals();
  std::vector<std::string> vars{"x0", "x1", "x2", "x3", "x4"};
  Rng rng(2);
  Matrix m = rand_symmetric(f, rng, 5);
  CHECK(quadric_matrix(quadric_form(m, vars)) == m);
  MultiPoly x0 = MultiPoly::variable(f, vars, 0), x4 = MultiPoly::variable(f, vars, 4);
  Matrix q = quadric_matrix(x0 * x4);
  CHECK(q(0, 4) == FieldElement(f, mpq_class(1, 2)));
  CHECK_THROWS_AS(quadric_matrix(x0 * x4 * x4), ValidationError);
}
