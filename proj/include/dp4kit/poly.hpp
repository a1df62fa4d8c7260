#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "dp4kit/field.hpp"
#include "dp4kit/matrix.hpp"

namespace dp4kit {

// Dense univariate polynomial, coefficients low-to-high, no trailing zeros.
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(const FieldSpec& f, std::string var = "x");
  UniPoly(const FieldSpec& f, Vec coeffs, std::string var = "x");
  static UniPoly constant(const FieldSpec& f, const FieldElement& c);
  static UniPoly x(const FieldSpec& f);
  static UniPoly monomial(const FieldElement& c, int deg);

  const FieldSpec& field() const { return field_; }
  const std::string& var() const { return var_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const Vec& coeffs() const { return c_; }
  FieldElement coeff(int i) const;
  FieldElement leading() const;
  void set_coeff(int i, const FieldElement& c);

  UniPoly operator+(const UniPoly& o) const;
  UniPoly operator-(const UniPoly& o) const;
  UniPoly operator*(const UniPoly& o) const;
  UniPoly operator*(const FieldElement& c) const;
  UniPoly operator-() const;
  UniPoly operator/(const UniPoly& o) const;
  UniPoly operator%(const UniPoly& o) const;
  bool operator==(const UniPoly& o) const { return field_ == o.field_ && c_ == o.c_; }
  bool operator!=(const UniPoly& o) const { return !(*this == o); }

  UniPoly derivative() const;
  FieldElement operator()(const FieldElement& x) const;
  UniPoly monic() const;
  UniPoly pow(unsigned e) const;
  template <class F>
  UniPoly map(const FieldSpec& g, F&& fn) const {
    Vec c;
    c.reserve(c_.size());
    for (const auto& x : c_) c.push_back(fn(x));
    return UniPoly(g, std::move(c), var_);
  }
  std::string to_string() const;

 private:
  void trim();
  FieldSpec field_;
  Vec c_;
  std::string var_ = "x";
};

std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b);
// Monic gcd (zero if both are zero).
UniPoly gcd(const UniPoly& a, const UniPoly& b);
UniPoly powmod(const UniPoly& base, std::uint64_t e, const UniPoly& mod);

// Sylvester-matrix determinant.  The formal version treats f, g as having
// degrees df >= deg f and dg >= deg g (leading zeros allowed).
FieldElement resultant(const UniPoly& f, const UniPoly& g);
FieldElement resultant_formal(const UniPoly& f, int df, const UniPoly& g, int dg);
Matrix sylvester_matrix(const UniPoly& f, int df, const UniPoly& g, int dg);
// (-1)^(d(d-1)/2) Res(f, f') / lc(f) with formal degree d - 1 for f'.
FieldElement discriminant(const UniPoly& f);

struct SquarefreeFactor {
  UniPoly factor;  // monic
  int multiplicity;
};
// f = lc(f) * prod factor^multiplicity, factors pairwise coprime, sorted by
// multiplicity.  Works in positive characteristic (p-th roots handled).
std::vector<SquarefreeFactor> squarefree_decomposition(const UniPoly& f);
// Product of the distinct monic irreducible factors of f.
UniPoly squarefree_part(const UniPoly& f);
bool is_squarefree(const UniPoly& f);

// Distinct roots lying in the coefficient field, sorted.  Finite fields use
// Cantor-Zassenhaus; over Q only rational roots are returned.
std::vector<FieldElement> roots(const UniPoly& f);
// Degrees of the irreducible factors of a squarefree f over a finite field.
std::vector<int> irreducible_factor_degrees(const UniPoly& f);
// Smallest m such that f splits into linear factors over F_{q^m}.
int splitting_degree(const UniPoly& f);

UniPoly interpolate(const Vec& xs, const Vec& ys);

// Determinant of a square matrix of univariate polynomials: evaluation and
// interpolation when the field has enough points, fraction-free elimination
// otherwise.
UniPoly det_poly_matrix(const std::vector<std::vector<UniPoly>>& m);

using Monomial = std::vector<int>;

// Sparse multivariate polynomial over a field.
class MultiPoly {
 public:
  MultiPoly() = default;
  MultiPoly(const FieldSpec& f, std::vector<std::string> vars);
  static MultiPoly variable(const FieldSpec& f, const std::vector<std::string>& vars, std::size_t i);
  static MultiPoly constant(const FieldSpec& f, const std::vector<std::string>& vars, const FieldElement& c);

  const FieldSpec& field() const { return field_; }
  const std::vector<std::string>& vars() const { return vars_; }
  std::size_t nvars() const { return vars_.size(); }
  const std::map<Monomial, FieldElement>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  void add_term(const Monomial& m, const FieldElement& c);
  FieldElement coeff(const Monomial& m) const;

  MultiPoly operator+(const MultiPoly& o) const;
  MultiPoly operator-(const MultiPoly& o) const;
  MultiPoly operator*(const MultiPoly& o) const;
  MultiPoly operator*(const FieldElement& c) const;
  MultiPoly operator-() const;
  MultiPoly pow(unsigned e) const;
  bool operator==(const MultiPoly& o) const;
  bool operator!=(const MultiPoly& o) const { return !(*this == o); }

  MultiPoly derivative(std::size_t i) const;
  FieldElement eval(const Vec& x) const;
  // Replace variable i by images[i]; all images share one ring.
  MultiPoly substitute(const std::vector<MultiPoly>& images) const;
  int total_degree() const;
  // Degree in the variables listed; -1 for the zero polynomial.
  int degree_in(const std::vector<std::size_t>& idx) const;
  bool is_homogeneous_in(const std::vector<std::size_t>& idx, int deg) const;
  // Same polynomial viewed in a ring with more (or renamed) variables:
  // variable i of this ring becomes variable pos[i] of the new ring.
  MultiPoly embed(const std::vector<std::string>& vars, const std::vector<std::size_t>& pos) const;
  template <class F>
  MultiPoly map(const FieldSpec& g, F&& fn) const {
    MultiPoly r(g, vars_);
    for (const auto& [m, c] : terms_) r.add_term(m, fn(c));
    return r;
  }
  std::string to_string() const;

 private:
  FieldSpec field_;
  std::vector<std::string> vars_;
  std::map<Monomial, FieldElement> terms_;
};

// Binary form sum a_i s^(d-i) t^i.  a_0 = f(1, 0).
class BinaryForm {
 public:
  BinaryForm() = default;
  BinaryForm(const FieldSpec& f, Vec coeffs);
  static BinaryForm zero(const FieldSpec& f, int degree);
  // Homogenize g(x) with formal degree d: f(s, t) = t^d g(s/t).
  static BinaryForm from_dehomogenized(const UniPoly& g, int d);

  const FieldSpec& field() const { return field_; }
  int degree() const { return static_cast<int>(a_.size()) - 1; }
  const Vec& coeffs() const { return a_; }
  const FieldElement& coeff(int i) const { return a_.at(i); }
  bool is_zero() const;

  BinaryForm operator+(const BinaryForm& o) const;
  BinaryForm operator-(const BinaryForm& o) const;
  BinaryForm operator*(const BinaryForm& o) const;
  BinaryForm operator*(const FieldElement& c) const;
  bool operator==(const BinaryForm& o) const { return field_ == o.field_ && a_ == o.a_; }
  bool operator!=(const BinaryForm& o) const { return !(*this == o); }

  FieldElement eval(const FieldElement& s, const FieldElement& t) const;
  BinaryForm ds() const;
  BinaryForm dt() const;
  // f(g00 s + g01 t, g10 s + g11 t).
  BinaryForm substitute(const Matrix& g) const;
  // g(x) = f(x, 1); its degree drops by the multiplicity of the root [1:0].
  UniPoly dehomogenize() const;
  int multiplicity_at_infinity() const;
  template <class F>
  BinaryForm map(const FieldSpec& g, F&& fn) const {
    Vec c;
    for (const auto& x : a_) c.push_back(fn(x));
    return BinaryForm(g, std::move(c));
  }
  std::string to_string() const;

 private:
  FieldSpec field_;
  Vec a_;
};

// Vanishes exactly when f has a repeated root on P^1 (over the closure).
FieldElement discriminant_binary(const BinaryForm& f);
// Multiplicities of the roots of f on P^1 over the algebraic closure, sorted
// descending, with each irreducible factor of degree e contributing e entries.
std::vector<int> root_multiplicity_partition(const BinaryForm& f);

}  // namespace dp4kit
