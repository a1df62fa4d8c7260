#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace dp4kit {

using IntMatrix = std::vector<std::vector<long long>>;

// The class d L - sum m_i E_i on the blow-up of P^2 in five points.
struct PicClass {
  int d = 0;
  std::array<int, 5> m{};
  bool operator==(const PicClass& o) const { return d == o.d && m == o.m; }
  bool operator<(const PicClass& o) const { return d != o.d ? d < o.d : m < o.m; }
};

int pairing(const PicClass& a, const PicClass& b);
PicClass canonical_class();  // (-3; -1, -1, -1, -1, -1)
PicClass exceptional_E(int i);  // E_i, i in 1..5
// All C with C.C = C.K = -1, searched in |d| <= 3, |m_i| <= 2; sorted.
std::vector<PicClass> exceptional_classes();
std::string to_string(const PicClass& c);

// Gram matrix of K-perp in the basis E1-E2, E2-E3, E3-E4, E4-E5, L-E1-E2-E3.
IntMatrix lambda_gram();
// The basis above as Picard classes.
std::array<PicClass, 5> lambda_basis();

// x -> y with y[perm[i]] = sign[i] * x[i] on the orthonormal coordinates of
// the D5 root system.
struct SignedPerm {
  std::array<int, 5> perm{0, 1, 2, 3, 4};
  std::array<int, 5> sign{1, 1, 1, 1, 1};
  bool operator==(const SignedPerm& o) const { return perm == o.perm && sign == o.sign; }
};

// det(matrix) = sign(permutation), i.e. an even number of sign changes.
bool in_weyl_d5(const SignedPerm& w);
// All 1920 elements, in lexicographic order of (perm, sign).
std::vector<SignedPerm> weyl_group();
IntMatrix signed_perm_matrix(const SignedPerm& w);
// Action on coordinates in the K-perp basis; preserves lambda_gram().
IntMatrix weyl_matrix_lambda(const SignedPerm& w);
// Action on (d, m_1..m_5), fixing K.
IntMatrix weyl_matrix_pic(const SignedPerm& w);
std::array<long long, 5> weyl_act(const SignedPerm& w, const std::array<long long, 5>& v);
PicClass weyl_act(const SignedPerm& w, const PicClass& c);
std::vector<PicClass> weyl_orbit(const PicClass& c);

// Invariant factors d_1 | d_2 | ... (zeros last for singular input).
std::vector<long long> smith_invariants(const IntMatrix& m);

struct DiscriminantGroup {
  std::vector<long long> invariants;  // nontrivial cyclic factors
  long long order = 1;
  std::string name() const;  // "Z/4", "Z/2 x Z/2", "0"
};
DiscriminantGroup discriminant_group(const IntMatrix& gram);

struct GramTable {
  std::vector<std::string> labels;
  IntMatrix gram;
};
void validate(const GramTable& t);

struct ClassReport {
  std::vector<long long> coefficients;
  long long self_intersection = 0;
  std::vector<long long> pairings;  // with each generator
  std::optional<long long> genus;   // 1 + D^2/2 when D^2 is even
};

std::vector<long long> parse_class_expr(const GramTable& t, const std::string& expr);
ClassReport k3_class_arith(const GramTable& t, const std::vector<long long>& coefficients);
ClassReport k3_class_arith(const GramTable& t, const std::string& expr);
long long gram_pair(const GramTable& t, const std::vector<long long>& a, const std::vector<long long>& b);

}  // namespace dp4kit
