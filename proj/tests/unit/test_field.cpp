#include <string>

#include "doctest.h"
#include "dp4kit/error.hpp"
#include "helpers.hpp"

using namespace dp4kit;
using namespace testutil;

namespace {

// Evaluate a raw F_p polynomial (low-to-high) at a point of F_p.
std::uint64_t eval_raw(const std::vector<std::uint64_t>& f, std::uint64_t x, std::uint64_t p) {
  std::uint64_t r = 0;
  for (std::size_t i = f.size(); i-- > 0;) r = (r * x + f[i]) % p;
  return r;
}

bool has_root(const std::vector<std::uint64_t>& f, std::uint64_t p) {
  for (std::uint64_t x = 0; x < p; ++x)
    if (eval_raw(f, x, p) == 0) return true;
  return false;
}

}  // namespace

TEST_CASE("field_build rejects characteristic two and composite p") {
  try {
    field_build(FieldKind::prime, 2);
    FAIL("expected an error");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()) == "characteristic two unsupported");
  }
  CHECK_THROWS_AS(field_build(FieldKind::prime, 9), ValidationError);
  CHECK_THROWS_AS(field_build(FieldKind::extension, 15, 2), ValidationError);
  CHECK_NOTHROW(field_build(FieldKind::prime, 101));
}

TEST_CASE("canonical modulus of F_9 is x^2 + 1") {
  FieldSpec f = field_build(FieldKind::extension, 3, 2);
  CHECK(f.order() == 9);
  CHECK(f.modulus() == std::vector<std::uint64_t>{1, 0, 1});
}

TEST_CASE("canonical moduli are irreducible and lexicographically minimal (degree 2 and 3)") {
  for (std::uint64_t p : {3ULL, 5ULL, 7ULL, 11ULL}) {
    for (int k : {2, 3}) {
      FieldSpec f = FieldSpec::extension(p, k);
      const auto& m = f.modulus();
      REQUIRE(m.size() == static_cast<std::size_t>(k + 1));
      CHECK(m.back() == 1);
      CHECK_FALSE(has_root(m, p));
      // Every candidate that precedes it (c_0 most significant) must have a root.
      std::vector<std::uint64_t> digits(k, 0);
      while (true) {
        std::vector<std::uint64_t> cand(digits.begin(), digits.end());
        cand.push_back(1);
        if (cand == m) break;
        CHECK(has_root(cand, p));
        int i = k - 1;
        while (i >= 0 && ++digits[i] == p) digits[i--] = 0;
        REQUIRE(i >= 0);
      }
    }
  }
}

TEST_CASE("field axioms hold on random triples") {
  Rng rng(11);
  for (FieldSpec f : {FieldSpec::rationals(), FieldSpec::prime(101), FieldSpec::extension(3, 2),
                      FieldSpec::extension(5, 3), FieldSpec::extension(101, 2), FieldSpec::extension(3, 20)}) {
    for (int it = 0; it < 200; ++it) {
      auto a = rand_elem(f, rng), b = rand_elem(f, rng), c = rand_elem(f, rng);
      CHECK((a + b) + c == a + (b + c));
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * (b + c) == a * b + a * c);
      CHECK(a + b == b + a);
      CHECK(a * b == b * a);
      CHECK(a - a == FieldElement::zero(f));
      if (!a.is_zero()) CHECK(a * a.inv() == FieldElement::one(f));
    }
  }
}

TEST_CASE("table and schoolbook multiplication agree") {
  // F_3^11 has no tables, F_3^4 does; compare against manual coordinates.
  FieldSpec f = FieldSpec::extension(3, 4);
  Rng rng(3);
  const auto& m = f.modulus();
  for (int it = 0; it < 300; ++it) {
    auto a = rand_elem(f, rng), b = rand_elem(f, rng);
    auto ca = a.coordinates(), cb = b.coordinates();
    std::vector<std::uint64_t> r(7, 0);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) r[i + j] = (r[i + j] + ca[i] * cb[j]) % 3;
    for (int top = 6; top >= 4; --top) {
      auto c = r[top];
      r[top] = 0;
      for (int i = 0; i < 4; ++i) r[top - 4 + i] = (r[top - 4 + i] + 3 * 3 - c * m[i]) % 3;
    }
    r.resize(4);
    CHECK((a * b).coordinates() == r);
  }
}

TEST_CASE("Frobenius fixes exactly the prime subfield") {
  FieldSpec f = FieldSpec::extension(3, 4);
  int fixed = 0, deg_le2 = 0;
  for (const auto& x : all_elements(f)) {
    if (x.frobenius() == x) ++fixed;
    if (minimal_field_degree(x) <= 2) ++deg_le2;
    CHECK(x.pow_u(f.order()) == x);
  }
  CHECK(fixed == 3);
  CHECK(deg_le2 == 9);
}

TEST_CASE("square roots") {
  Rng rng(5);
  for (FieldSpec f : {FieldSpec::prime(101), FieldSpec::prime(97), FieldSpec::extension(7, 2),
                      FieldSpec::extension(3, 21)}) {
    int squares = 0;
    for (int it = 0; it < 200; ++it) {
      auto a = rand_elem(f, rng);
      FieldElement r;
      if (a.sqrt(r)) {
        ++squares;
        CHECK(r * r == a);
      } else {
        CHECK_FALSE(a.is_square());
      }
      FieldElement s;
      CHECK((a * a).sqrt(s));
      CHECK(s * s == a * a);
    }
    CHECK(squares > 50);
  }
  FieldElement r;
  CHECK(FieldElement(FieldSpec::rationals(), mpq_class(9, 4)).sqrt(r));
  CHECK(r * r == FieldElement(FieldSpec::rationals(), mpq_class(9, 4)));
  CHECK_FALSE(FieldElement(FieldSpec::rationals(), 2).sqrt(r));
}

TEST_CASE("parse and print round trip") {
  FieldSpec q = FieldSpec::rationals();
  CHECK(FieldElement::parse(q, "-3/6").to_string() == "-1/2");
  FieldSpec f = FieldSpec::prime(101);
  CHECK(FieldElement::parse(f, "1/2") * FieldElement(f, 2) == FieldElement::one(f));
  CHECK(FieldElement::parse(f, "-1").to_string() == "100");
  FieldSpec e = FieldSpec::extension(3, 2);
  CHECK(FieldElement::parse(e, "7").index() == 7);
  CHECK_THROWS_AS(FieldElement::parse(e, "9"), ValidationError);
  CHECK_THROWS_AS(FieldElement::parse(f, "abc"), ValidationError);
}

TEST_CASE("embeddings are ring homomorphisms with a working inverse") {
  Rng rng(9);
  for (auto [a, b] : std::vector<std::pair<int, int>>{{1, 2}, {2, 4}, {2, 6}, {3, 6}}) {
    FieldSpec s = FieldSpec::extension(3, a), t = FieldSpec::extension(3, b);
    FieldEmbedding phi(s, t);
    for (int it = 0; it < 50; ++it) {
      auto x = rand_elem(s, rng), y = rand_elem(s, rng);
      CHECK(phi(x + y) == phi(x) + phi(y));
      CHECK(phi(x * y) == phi(x) * phi(y));
      CHECK(phi.pull_back(phi(x)) == x);
    }
    int in_image = 0;
    for (int it = 0; it < 200; ++it)
      if (phi.in_image(rand_elem(t, rng))) ++in_image;
    CHECK(in_image < 200);
  }
}
