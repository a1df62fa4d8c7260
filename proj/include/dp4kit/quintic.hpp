#pragma once

#include <string>

#include "dp4kit/pencil.hpp"
#include "dp4kit/poly.hpp"

namespace dp4kit {

// (f, g)_r = sum_k (-1)^k C(r,k) d_s^(r-k) d_t^k f * d_s^k d_t^(r-k) g,
// the Omega process without the factorial normalization.
BinaryForm transvectant(const BinaryForm& f, const BinaryForm& g, int r);

// i = (f,f)_4, j = (f,i)_2, tau = (j,j)_2;
// I4 = (i,i)_2, I8 = (tau,i)_2, I12 = (tau,tau)_2.
struct InvariantVector {
  FieldElement I4, I8, I12;
  bool operator==(const InvariantVector& o) const {
    return I4 == o.I4 && I8 == o.I8 && I12 == o.I12;
  }
};

// Requires characteristic 0 or p >= 7 (the chain vanishes identically
// modulo 3 and 5).
InvariantVector invariants_quintic(const BinaryForm& f);

// Normal form of [I4 : I8 : I12] in P(1,2,3):
//   I4 != 0:            [1 : I8/I4^2 : I12/I4^3]
//   I4 = 0, I8 != 0:    [0 : 1 : I12^2/I8^3]  (third entry squared, sign-free)
//   I4 = I8 = 0:        [0 : 0 : 1]
struct WeightedModuliPoint {
  FieldElement a, b, c;
  bool operator==(const WeightedModuliPoint& o) const { return a == o.a && b == o.b && c == o.c; }
  bool operator!=(const WeightedModuliPoint& o) const { return !(*this == o); }
  std::string to_string() const;
};

WeightedModuliPoint moduli_point(const InvariantVector& v);
WeightedModuliPoint moduli_point(const BinaryForm& f);
WeightedModuliPoint xi_of_pencil(const QuadricPencil& p);

}  // namespace dp4kit
