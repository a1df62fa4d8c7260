#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "dp4kit/matrix.hpp"
#include "dp4kit/poly.hpp"

namespace dp4kit {

// The surface {x^T A x = x^T B x = 0} in P^4, A and B symmetric 5x5.
struct QuadricPencil {
  Matrix A, B;
  const FieldSpec& field() const { return A.field(); }
};

QuadricPencil make_pencil(const Matrix& A, const Matrix& B);
// A = I, B = diag(c).
QuadricPencil diagonal_pencil(const Vec& c);
// Symmetric matrix of a quadratic form in five variables (cross terms halved).
Matrix quadric_matrix(const MultiPoly& q);
MultiPoly quadric_form(const Matrix& m, const std::vector<std::string>& vars);
// (M^T A M, M^T B M).
QuadricPencil congruence(const QuadricPencil& p, const Matrix& m);
// New generators g00 A + g01 B and g10 A + g11 B.
QuadricPencil pencil_basis_change(const QuadricPencil& p, const Matrix& g);
QuadricPencil map_field(const QuadricPencil& p, const FieldEmbedding& e);

// det(s0 A + s1 B) as a binary quintic in (s0, s1).
BinaryForm determinantal_quintic(const QuadricPencil& p);

struct SingularPoint {
  Vec coords;              // normalized, over F_{q^k}
  int field_degree = 1;    // k, relative to the field of the pencil
  bool ordinary = false;   // ordinary double point
  FieldElement root_s0, root_s1;  // the singular member s0 A + s1 B
};

struct SingularLocus {
  std::vector<SingularPoint> points;
  bool positive_dimensional = false;
};

// Singular points of the base locus defined over F_{q^k}, k <= k_max, each
// reported once at its minimal k.  Over Q only rational points are found.
SingularLocus singular_points(const QuadricPencil& p, int k_max);

enum class Stability { stable, strictly_semistable, unstable, degenerate_pencil };
std::string to_string(Stability s);

struct StabilityVerdict {
  Stability status = Stability::stable;
  std::vector<int> partition;  // root multiplicities of the determinantal quintic
  std::vector<SingularPoint> singular;
  bool positive_dimensional = false;
  // Strictly semistable with exactly one node.
  bool single_node() const;
};

StabilityVerdict classify_stability(const QuadricPencil& p);

struct Diagonalization {
  Vec c;              // B = diag(c) relative to A = diag(a)
  Vec a;              // diagonal of T^T A T (all ones when exact)
  Matrix transform;   // T, columns are the kernel vectors
  bool exact = false; // T^T A T = I
};
// Requires a squarefree determinantal quintic with five roots in the field
// and A nonsingular.  Roots of det(s0 + c_i s1) are [-c_i : 1].
Diagonalization diagonalize(const QuadricPencil& p);

// Limit as t -> 0 of the pencil transformed by x_i -> t^(w_i) x_i, computed
// as a limit point of the Grassmannian of pencils.
QuadricPencil rho_limit(const QuadricPencil& p, const std::array<int, 5>& weights);

struct Line {
  Vec p, q;  // reduced row echelon spanning pair
  bool operator<(const Line& o) const;
  bool operator==(const Line& o) const { return p == o.p && q == o.q; }
};
Line make_line(const Vec& a, const Vec& b);
bool line_on_surface(const QuadricPencil& p, const Line& l);

// Points of the surface over its field (finite fields only), normalized,
// in lexicographic index order.
std::vector<Vec> surface_points(const QuadricPencil& p);
std::uint64_t surface_point_count(const QuadricPencil& p);
// Lines on the surface defined over F_{q^k}, sorted.
std::vector<Line> lines_on_surface(const QuadricPencil& p, int k = 1, int threads = 1);

}  // namespace dp4kit
