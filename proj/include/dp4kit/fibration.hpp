#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dp4kit/pencil.hpp"
#include "dp4kit/poly.hpp"

namespace dp4kit {

// Multiset (a_1 <= ... <= a_r) for the bundle sum O(a_i) on P^1.
struct SplittingType {
  std::vector<int> a;
  SplittingType() = default;
  explicit SplittingType(std::vector<int> v);
  int rank() const { return static_cast<int>(a.size()); }
  int degree() const;
  bool operator==(const SplittingType& o) const { return a == o.a; }
  std::string to_string() const;
};

SplittingType sym2(const SplittingType& s);
SplittingType twist(const SplittingType& s, int m);
int h0(const SplittingType& s);
// -2 deg S; S must have rank 5.
int height_from_splitting(const SplittingType& s);

// Case 1..5 has case - 1 linear forms of bidegree (1,1); parity 0 = even,
// 1 = odd (quadric bidegrees (n,2), (n + parity, 2)).
struct CaseSpec {
  int case_no = 1;
  int parity = 0;
  int n = 0;
  int linear_forms() const { return case_no - 1; }
  std::string parity_name() const { return parity ? "odd" : "even"; }
  bool operator==(const CaseSpec& o) const {
    return case_no == o.case_no && parity == o.parity && n == o.n;
  }
};

CaseSpec parse_case(int case_no, const std::string& parity, int n);

struct CaseSplitting {
  SplittingType V;  // pi_* O_X(0,1)
  SplittingType W;  // pi_* omega^{-1} = twist(V, alpha)
  int alpha = 0;    // omega^{-1} = O_X(alpha, 1)
  int degree = 0;   // deg W
  int height = 0;
};

CaseSplitting case_splitting(const CaseSpec& c);
// Closed-form height 20n + offset, used as an independent check.
int case_height_formula(const CaseSpec& c);
// The n = -1 constructions on P(V^dual): case 3 odd, case 4, case 5.
bool is_special_case(const CaseSpec& c);
// Cases with a generation recipe: n >= 0, or a special n = -1 case.
bool is_constructible(const CaseSpec& c);

struct NumerologyReport {
  int h = 0;
  int delta = 0;
  int chi = 0;
  int chi_omega1 = 0;
  int params = 0;
  int h11 = 2;
  int h12 = 0;
};

NumerologyReport numerology(int h, int h11 = 2);

// Euler characteristics on P = P^1 x P^4.
long long chi_OP(long long a, long long b);
long long chi_Omega1P(long long a, long long b);

struct KoszulChi {
  long long chi_omega1 = 0;
  long long chi_top = 0;
  long long h2_omega1 = 0;
  long long chi_O = 0;
  bool operator==(const KoszulChi& o) const = default;
};
// Complete intersection of two (n,2) forms in P^1 x P^4.
KoszulChi chi_via_koszul(int n, int h11 = 2);

// C(k+3, 3) - (k deg + 1 - g).
long long rr_quartic_count(long long deg, long long genus, long long k = 4);

struct SectionCountRow {
  int d = 0;
  std::optional<int> secancy;  // none for d = 0
  int params = 0;
};
SectionCountRow section_count_table(int d);

struct ExpectedDimRow {
  int h = 0;
  int m = 0;
  int ambient = 0;            // Y lives in P^ambient
  int y_degree = 0;
  int contracted_sections = 0;
  int params = 0;             // (3/2) h - 1
  std::optional<int> y_dim;   // dimension count for nodal Y
  std::optional<int> family_dim;
  std::string y_formula;
};
std::vector<ExpectedDimRow> expected_dims_high_height();

// Forms on P^1 x P^N in variables t0, t1, x0..xN.  For the special n = -1
// models the x_i are coordinates on P(V^dual) with weights a_i: the
// coefficient of x_i x_j in a form of class O(2) (x) O(b) has degree
// a_i + a_j + b in (t0, t1).  Generic models have all weights 0.
struct FibrationModel {
  CaseSpec spec;
  FieldSpec field;
  std::uint64_t seed = 0;
  int N = 4;
  std::vector<int> weights;
  std::vector<MultiPoly> linear;  // (1,1) forms
  MultiPoly qa, qb;               // quadratic forms
  int deg_a = 0, deg_b = 0;       // their t-degrees b_A, b_B
  int alpha = 0;
  int retries = 0;

  bool special() const { return linear.empty() && N == 4 && weights != std::vector<int>(5, 0); }
  std::vector<MultiPoly> forms() const;
  // Degree of Delta(t0, t1): 20 (b_A + b_B) + 16 (r + sum of weights).
  int discriminant_degree() const;
};

std::vector<std::string> model_vars(int N);
FibrationModel embed_model(const FibrationModel& m, const FieldEmbedding& e);
// Structural checks (variables, degrees, symmetry of roles).
void validate_model(const FibrationModel& m);

struct DiscriminantProfile {
  UniPoly delta;            // Delta(t, 1), t = t0 / t1
  int ord_infinity = 0;     // vanishing order at [1:0]
  int projective_degree = 0;
  int expected_degree = 0;
  bool nonzero = false;
  bool squarefree = false;
  int extension_degree = 1;  // interpolation field relative to the model field
};

// Quintic in [s0:s1] of the fiber at [t0:t1], up to a factor independent of
// s: the bordered determinant for generic models.
BinaryForm fiber_quintic(const FibrationModel& m, const FieldElement& t0, const FieldElement& t1);
DiscriminantProfile discriminant_profile(const FibrationModel& m);

FibrationModel generate_model(const CaseSpec& c, const FieldSpec& f, std::uint64_t seed,
                              int max_attempts = 200);

// Pencil of the fiber over [t0:t1] in P^4 coordinates.  For generic models
// the coordinates are the RREF kernel basis of the linear forms at t.
QuadricPencil fiber_at(const FibrationModel& m, const FieldElement& t0, const FieldElement& t1);
// The two quadratic forms at t as (N+1)x(N+1) matrices, and the r x (N+1)
// matrix of the linear forms.
std::pair<Matrix, Matrix> quadrics_at(const FibrationModel& m, const FieldElement& t0, const FieldElement& t1);
Matrix linear_forms_at(const FibrationModel& m, const FieldElement& t0, const FieldElement& t1);
// Columns span the P^4 of the fiber inside P^N (identity for special models).
Matrix fiber_frame(const FibrationModel& m, const FieldElement& t0, const FieldElement& t1);

// Section t -> [p_0(t) : ... : p_N(t)], p_j homogeneous of degree
// d - weights[j] in (t0, t1); coeffs[j][k] multiplies t0^(deg - k) t1^k and
// coeffs[j] is empty when the degree is negative.
struct SectionCandidate {
  FieldSpec field;
  int degree = 0;
  std::vector<Vec> coeffs;
  bool operator<(const SectionCandidate& o) const;
  bool operator==(const SectionCandidate& o) const { return degree == o.degree && coeffs == o.coeffs; }
  std::string to_string() const;
};

// Substitutes the section into every form and checks the result is the zero
// polynomial.
bool verify_section(const FibrationModel& m, const SectionCandidate& s);
bool content_free(const SectionCandidate& s);
// Scales so the first nonzero coefficient (coordinate order, then t0-power
// descending) is 1.
SectionCandidate normalize_section(SectionCandidate s);
SectionCandidate constant_section(const FieldSpec& f, const Vec& point, const std::vector<int>& weights);

struct DistinguishedReport {
  std::string kind;                        // "conic", "line", "line-points", "canonical"
  std::vector<SectionCandidate> sections;  // over the smallest field containing them
  bool all_verified = false;
  int field_degree = 1;
};

DistinguishedReport distinguished_sections(const FibrationModel& m);

}  // namespace dp4kit
