#include "doctest.h"
#include "dp4kit/error.hpp"
#include "helpers.hpp"

using namespace dp4kit;
using namespace testutil;

namespace {

UniPoly P(const FieldSpec& f, std::initializer_list<std::int64_t> c) {
  Vec v;
  for (auto x : c) v.emplace_back(f, x);
  return UniPoly(f, v);
}

UniPoly linear(const FieldElement& r) {  // x - r
  return UniPoly(r.field(), Vec{-r, FieldElement::one(r.field())});
}

}  // namespace

TEST_CASE("resultant of x^2+1 and x^2-2 over Q is 9") {
  FieldSpec q = FieldSpec::rationals();
  CHECK(resultant(P(q, {1, 0, 1}), P(q, {-2, 0, 1})) == FieldElement(q, 9));
}

TEST_CASE("resultant matches the product formula on split polynomials") {
  Rng rng(1);
  FieldSpec f = FieldSpec::prime(101);
  for (int it = 0; it < 50; ++it) {
    const int df = 1 + static_cast<int>(rng.below(5));
    Vec rts;
    auto lc = rand_nonzero(f, rng);
    UniPoly fp = UniPoly::constant(f, lc);
    for (int i = 0; i < df; ++i) {
      rts.push_back(rand_elem(f, rng));
      fp = fp * linear(rts.back());
    }
    UniPoly g = rand_poly(f, rng, 1 + static_cast<int>(rng.below(5)));
    FieldElement expect = lc.pow(g.degree());
    for (const auto& r : rts) expect *= g(r);
    CHECK(resultant(fp, g) == expect);
  }
}

TEST_CASE("planted common factor forces a zero resultant") {
  Rng rng(2);
  for (FieldSpec f : {FieldSpec::rationals(), FieldSpec::prime(7), FieldSpec::extension(3, 2)}) {
    for (int it = 0; it < 30; ++it) {
      UniPoly h = rand_poly(f, rng, 1 + static_cast<int>(rng.below(2)));
      UniPoly a = h * rand_poly(f, rng, static_cast<int>(rng.below(3)));
      UniPoly b = h * rand_poly(f, rng, static_cast<int>(rng.below(3)));
      CHECK(resultant(a, b).is_zero());
    }
  }
}

TEST_CASE("quadratic discriminant") {
  FieldSpec q = FieldSpec::rationals();
  CHECK(discriminant(P(q, {3, 5, 1})) == FieldElement(q, 25 - 12));
  CHECK(discriminant(P(q, {1, 2, 1})).is_zero());
}

TEST_CASE("binary discriminant vanishes exactly on repeated roots") {
  Rng rng(3);
  for (FieldSpec f : {FieldSpec::rationals(), FieldSpec::prime(3), FieldSpec::prime(5), FieldSpec::prime(7),
                      FieldSpec::prime(101), FieldSpec::extension(3, 2)}) {
    int zeros = 0;
    for (int it = 0; it < 200; ++it) {
      Vec a;
      for (int i = 0; i <= 5; ++i) a.push_back(rand_elem(f, rng, 2));
      // Plant a repeated root in a third of the samples; push some roots to infinity.
      BinaryForm b(f, a);
      if (it % 3 == 0) {
        Vec l{rand_elem(f, rng, 2), rand_elem(f, rng, 2)};
        if (l[0].is_zero() && l[1].is_zero()) l[1] = FieldElement::one(f);
        Vec c{rand_elem(f, rng, 2), rand_elem(f, rng, 2), rand_elem(f, rng, 2), rand_elem(f, rng, 2)};
        b = BinaryForm(f, l) * BinaryForm(f, l) * BinaryForm(f, c);
      } else if (it % 3 == 1) {
        a[0] = FieldElement::zero(f);
        b = BinaryForm(f, a);
      }
      if (b.is_zero()) continue;
      auto part = root_multiplicity_partition(b);
      const bool repeated = part.front() >= 2;
      CHECK(discriminant_binary(b).is_zero() == repeated);
      if (repeated) ++zeros;
    }
    CHECK(zeros >= 60);
  }
}

TEST_CASE("squarefree decomposition examples") {
  FieldSpec q = FieldSpec::rationals();
  UniPoly f = P(q, {-1, 1}).pow(2) * P(q, {1, 1});
  auto d = squarefree_decomposition(f);
  REQUIRE(d.size() == 2);
  CHECK(d[0].multiplicity == 1);
  CHECK(d[0].factor == P(q, {1, 1}));
  CHECK(d[1].multiplicity == 2);
  CHECK(d[1].factor == P(q, {-1, 1}));

  FieldSpec f5 = FieldSpec::prime(5);
  UniPoly g = P(f5, {0, -1, 0, 0, 0, 1});  // x^5 - x
  CHECK(is_squarefree(g));
  CHECK(squarefree_decomposition(g).size() == 1);

  // Over F_3, (x^3 + 2)^2 (x + 1) = (x + 2)^6 (x + 1) exercises the p-th root branch.
  FieldSpec f3 = FieldSpec::prime(3);
  UniPoly h = P(f3, {2, 0, 0, 1}).pow(2) * P(f3, {1, 1});
  auto dh = squarefree_decomposition(h);
  REQUIRE(dh.size() == 2);
  CHECK(dh[0].factor == P(f3, {1, 1}));
  CHECK(dh[1].multiplicity == 6);
  CHECK(dh[1].factor == P(f3, {2, 1}));
}

TEST_CASE("squarefree decomposition reassembles the input") {
  Rng rng(4);
  for (FieldSpec f : {FieldSpec::rationals(), FieldSpec::prime(3), FieldSpec::prime(5), FieldSpec::extension(3, 2)}) {
    for (int it = 0; it < 40; ++it) {
      UniPoly g = rand_poly(f, rng, 1).pow(1 + rng.below(4)) * rand_poly(f, rng, 2).pow(1 + rng.below(3)) *
                  rand_poly(f, rng, static_cast<int>(rng.below(3)));
      UniPoly r = UniPoly::constant(f, g.leading());
      for (const auto& sf : squarefree_decomposition(g)) {
        CHECK(is_squarefree(sf.factor));
        r = r * sf.factor.pow(sf.multiplicity);
      }
      CHECK(r == g);
    }
  }
}

TEST_CASE("roots agree with exhaustive search") {
  Rng rng(5);
  for (FieldSpec f : {FieldSpec::prime(101), FieldSpec::extension(3, 3), FieldSpec::extension(5, 2)}) {
    for (int it = 0; it < 30; ++it) {
      UniPoly g = rand_poly(f, rng, 1 + static_cast<int>(rng.below(8)));
      if (it % 2) g = g * linear(rand_elem(f, rng)) * linear(rand_elem(f, rng));
      std::vector<FieldElement> brute;
      for (const auto& x : all_elements(f))
        if (g(x).is_zero()) brute.push_back(x);
      CHECK(roots(g) == brute);
    }
  }
  FieldSpec q = FieldSpec::rationals();
  auto r = roots(P(q, {-2, 1}) * P(q, {3, 2}) * P(q, {1, 0, 1}));
  REQUIRE(r.size() == 2);
  CHECK(r[0] == FieldElement(q, mpq_class(-3, 2)));
  CHECK(r[1] == FieldElement(q, 2));
}

TEST_CASE("irreducible factor degrees and splitting degree") {
  FieldSpec f = FieldSpec::prime(7);
  // x^2 + 1 is irreducible mod 7; x^3 - 2 is irreducible mod 7 (2 is not a cube).
  UniPoly g = P(f, {1, 0, 1}) * P(f, {-2, 0, 0, 1}) * P(f, {-1, 1});
  CHECK(irreducible_factor_degrees(g) == std::vector<int>{1, 2, 3});
  CHECK(splitting_degree(g) == 6);
}

TEST_CASE("interpolation round trip") {
  Rng rng(6);
  FieldSpec f = FieldSpec::prime(101);
  for (int it = 0; it < 20; ++it) {
    UniPoly g = rand_poly(f, rng, static_cast<int>(rng.below(10)));
    Vec xs, ys;
    for (int i = 0; i <= 10; ++i) {
      xs.emplace_back(f, 3 * i + 1);
      ys.push_back(g(xs.back()));
    }
    CHECK(interpolate(xs, ys) == g);
  }
}

TEST_CASE("det_poly_matrix agrees with cofactor expansion") {
  Rng rng(7);
  for (FieldSpec f : {FieldSpec::rationals(), FieldSpec::prime(101), FieldSpec::prime(3), FieldSpec::extension(3, 2)}) {
    for (int it = 0; it < 10; ++it) {
      const std::size_t n = 2 + rng.below(3);
      std::vector<std::vector<UniPoly>> m(n);
      for (auto& row : m)
        for (std::size_t j = 0; j < n; ++j)
          row.push_back(rng.below(4) == 0 ? UniPoly(f) : rand_poly(f, rng, static_cast<int>(rng.below(3))));
      UniPoly expect = laplace_det(m, [&] { return UniPoly(f); },
                                   [&] { return UniPoly::constant(f, FieldElement::one(f)); });
      CHECK(det_poly_matrix(m) == expect);
    }
  }
}

TEST_CASE("binary form substitution composes") {
  Rng rng(8);
  FieldSpec f = FieldSpec::prime(101);
  Vec a;
  for (int i = 0; i <= 5; ++i) a.push_back(rand_elem(f, rng));
  BinaryForm b(f, a);
  Matrix g = rand_invertible(f, rng, 2), h = rand_invertible(f, rng, 2);
  CHECK(b.substitute(g).substitute(h) == b.substitute(g * h));
  auto s = rand_elem(f, rng), t = rand_elem(f, rng);
  CHECK(b.substitute(g).eval(s, t) == b.eval(g(0, 0) * s + g(0, 1) * t, g(1, 0) * s + g(1, 1) * t));
}

TEST_CASE("multivariate derivative and substitution") {
  FieldSpec q = FieldSpec::rationals();
  std::vector<std::string> v{"x", "y"};
  auto x = MultiPoly::variable(q, v, 0), y = MultiPoly::variable(q, v, 1);
  auto p = x.pow(3) * y + y * y * FieldElement(q, 2);
  CHECK(p.derivative(0) == x.pow(2) * y * FieldElement(q, 3));
  auto sub = p.substitute({x + y, x - y});
  Vec pt{FieldElement(q, 3), FieldElement(q, -2)};
  Vec img{FieldElement(q, 1), FieldElement(q, 5)};
  CHECK(sub.eval(pt) == p.eval(img));
  CHECK(p.is_homogeneous_in({0, 1}, 4) == false);
  CHECK(p.degree_in({0}) == 3);
}
