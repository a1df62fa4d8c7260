#include <set>

#include "doctest.h"
#include "dp4kit/error.hpp"
#include "dp4kit/lattice.hpp"
#include "dp4kit/rng.hpp"

using namespace dp4kit;

namespace {

// The sixteen lines written out by hand: E_i, L - E_i - E_j, 2L - E_1 - ... - E_5.
std::set<PicClass> hand_lines() {
  std::set<PicClass> s;
  for (int i = 0; i < 5; ++i) {
    PicClass e;
    e.m[i] = -1;
    s.insert(e);
    for (int j = i + 1; j < 5; ++j) {
      PicClass l{1, {0, 0, 0, 0, 0}};
      l.m[i] = l.m[j] = 1;
      s.insert(l);
    }
  }
  s.insert(PicClass{2, {1, 1, 1, 1, 1}});
  return s;
}

GramTable table(std::vector<std::string> labels, IntMatrix g) { return GramTable{std::move(labels), std::move(g)}; }

}  // namespace

TEST_CASE("canonical class and exceptional classes") {
  const PicClass k = canonical_class();
  CHECK(pairing(k, k) == 4);
  auto ex = exceptional_classes();
  CHECK(ex.size() == 16);
  CHECK(std::set<PicClass>(ex.begin(), ex.end()) == hand_lines());
  CHECK(std::find(ex.begin(), ex.end(), exceptional_E(1)) != ex.end());
  CHECK(exceptional_E(1) == PicClass{0, {-1, 0, 0, 0, 0}});
}

TEST_CASE("K-perp basis reproduces the Gram matrix") {
  const auto b = lambda_basis();
  const auto g = lambda_gram();
  for (int i = 0; i < 5; ++i) {
    CHECK(pairing(b[i], canonical_class()) == 0);
    for (int j = 0; j < 5; ++j) CHECK(pairing(b[i], b[j]) == g[i][j]);
  }
}

TEST_CASE("W(D5) has order 1920 and preserves the Gram matrix") {
  auto w = weyl_group();
  CHECK(w.size() == 1920);
  const auto g = lambda_gram();
  int kernel = 0;
  for (const auto& e : w) {
    auto m = weyl_matrix_lambda(e);
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j < 5; ++j) {
        long long s = 0;
        for (int a = 0; a < 5; ++a)
          for (int b = 0; b < 5; ++b) s += m[a][i] * g[a][b] * m[b][j];
        CHECK(s == g[i][j]);
      }
    if (e.perm == std::array<int, 5>{0, 1, 2, 3, 4}) ++kernel;
  }
  CHECK(kernel == 16);
}

TEST_CASE("signed permutations with an odd number of sign changes are rejected") {
  SignedPerm w;
  w.sign = {-1, 1, 1, 1, 1};
  CHECK_FALSE(in_weyl_d5(w));
  CHECK_THROWS_AS(weyl_matrix_lambda(w), ValidationError);
  w.sign = {-1, -1, 1, 1, 1};
  CHECK(in_weyl_d5(w));
}

TEST_CASE("the action is a homomorphism into a closed set of matrices") {
  auto w = weyl_group();
  std::set<IntMatrix> mats;
  for (const auto& e : w) mats.insert(weyl_matrix_lambda(e));
  CHECK(mats.size() == 1920);
  Rng rng(1);
  for (int it = 0; it < 50; ++it) {
    auto a = weyl_matrix_lambda(w[rng.below(w.size())]);
    auto b = weyl_matrix_lambda(w[rng.below(w.size())]);
    IntMatrix c(5, std::vector<long long>(5, 0));
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j < 5; ++j)
        for (int k = 0; k < 5; ++k) c[i][j] += a[i][k] * b[k][j];
    CHECK(mats.count(c) == 1);
  }
}

TEST_CASE("Picard action fixes K, preserves the pairing, and permutes the lines transitively") {
  Rng rng(2);
  auto w = weyl_group();
  auto lines = exceptional_classes();
  for (int it = 0; it < 100; ++it) {
    const auto& e = w[rng.below(w.size())];
    CHECK(weyl_act(e, canonical_class()) == canonical_class());
    const auto& a = lines[rng.below(16)];
    const auto& b = lines[rng.below(16)];
    CHECK(pairing(weyl_act(e, a), weyl_act(e, b)) == pairing(a, b));
  }
  auto orb = weyl_orbit(exceptional_E(1));
  CHECK(orb == lines);
}

TEST_CASE("Smith invariants and discriminant group") {
  auto g = discriminant_group(lambda_gram());
  CHECK(g.invariants == std::vector<long long>{4});
  CHECK(g.name() == "Z/4");
  CHECK(smith_invariants({{2, 0}, {0, 3}}) == std::vector<long long>{1, 6});
  CHECK(smith_invariants({{2, 4}, {6, 8}}) == std::vector<long long>{2, 4});
  CHECK(discriminant_group({{2, 0}, {0, 2}}).name() == "Z/2 x Z/2");
  CHECK_THROWS_AS(discriminant_group({{1, 2}, {2, 4}}), MathError);
  // Unimodular after an integral change of basis.
  CHECK(discriminant_group({{0, 1}, {1, 0}}).order == 1);
}

TEST_CASE("Smith invariants multiply to |det| on random matrices") {
  Rng rng(3);
  for (int it = 0; it < 40; ++it) {
    IntMatrix m(3, std::vector<long long>(3));
    for (auto& r : m)
      for (auto& x : r) x = rng.range(-6, 6);
    long long det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                    m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    auto d = smith_invariants(m);
    long long prod = 1;
    for (auto x : d) prod *= x;
    CHECK(prod == std::llabs(det));
    for (std::size_t i = 0; i + 1 < d.size(); ++i)
      if (d[i + 1] != 0) CHECK(d[i + 1] % d[i] == 0);
  }
}

TEST_CASE("twisted cubic table: R = 2h - C + R'") {
  auto t = table({"h", "C", "E", "R'"}, {{4, 8, 1, 3}, {8, 12, 4, 4}, {1, 4, -2, 2}, {3, 4, 2, -2}});
  auto r = k3_class_arith(t, "2h - C + R'");
  CHECK(r.coefficients == std::vector<long long>{2, -1, 0, 1});
  CHECK(r.self_intersection == -2);
  CHECK(r.pairings[1] == 8);
  CHECK(r.genus == 0);
}

TEST_CASE("quartic table: R' = 2h - R") {
  auto t = table({"h", "C", "R"}, {{4, 8, 4}, {8, 12, 11}, {4, 11, -2}});
  auto r = k3_class_arith(t, "2h - R");
  CHECK(r.pairings[0] == 4);
  CHECK(r.self_intersection == -2);
  CHECK(r.pairings[1] == 5);
}

TEST_CASE("sextic table: R' = 3h - R") {
  auto t = table({"h", "C", "R"}, {{4, 8, 6}, {8, 12, 17}, {6, 17, -2}});
  auto rp = parse_class_expr(t, "3h - R");
  CHECK(gram_pair(t, parse_class_expr(t, "C - h"), rp) == 1);
  CHECK(k3_class_arith(t, rp).pairings[1] == 7);
  CHECK(k3_class_arith(t, "C").genus == 7);
}

TEST_CASE("class expression parsing") {
  auto t = table({"h", "C", "R", "R'"}, {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}});
  CHECK(parse_class_expr(t, "R' - 2*R + 3 h") == std::vector<long long>{3, 0, -2, 1});
  CHECK(parse_class_expr(t, "-C") == std::vector<long long>{0, -1, 0, 0});
  CHECK_THROWS_AS(parse_class_expr(t, "2x"), ValidationError);
  CHECK_THROWS_AS(parse_class_expr(t, "h C"), ValidationError);
  CHECK_THROWS_AS(parse_class_expr(t, ""), ValidationError);
  CHECK_THROWS_AS(k3_class_arith(table({"h", "C"}, {{1, 2}, {3, 1}}), "h"), ValidationError);
}
