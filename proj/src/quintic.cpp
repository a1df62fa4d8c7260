#include "dp4kit/quintic.hpp"

#include "dp4kit/error.hpp"

namespace dp4kit {

namespace {

BinaryForm derive(BinaryForm f, int ns, int nt) {
  for (int i = 0; i < ns; ++i) f = f.ds();
  for (int i = 0; i < nt; ++i) f = f.dt();
  return f;
}

}  // namespace

BinaryForm transvectant(const BinaryForm& f, const BinaryForm& g, int r) {
  if (f.field() != g.field()) throw ValidationError("transvectant of forms over different fields");
  if (r < 0 || r > f.degree() || r > g.degree())
    throw ValidationError("transvectant order out of range");
  const FieldSpec fld = f.field();
  BinaryForm out = BinaryForm::zero(fld, f.degree() + g.degree() - 2 * r);
  FieldElement binom = FieldElement::one(fld);
  for (int k = 0; k <= r; ++k) {
    if (k > 0) binom = binom * FieldElement(fld, r - k + 1) / FieldElement(fld, k);
    BinaryForm term = derive(f, r - k, k) * derive(g, k, r - k);
    out = out + term * ((k % 2) ? -binom : binom);
  }
  return out;
}

InvariantVector invariants_quintic(const BinaryForm& f) {
  if (f.degree() != 5) throw ValidationError("invariants need a binary quintic");
  const FieldSpec fld = f.field();
  if (fld.is_finite() && fld.characteristic() < 7)
    throw ValidationError("quintic invariants need characteristic 0 or at least 7");
  BinaryForm i = transvectant(f, f, 4);
  BinaryForm j = transvectant(f, i, 2);
  BinaryForm tau = transvectant(j, j, 2);
  return InvariantVector{transvectant(i, i, 2).coeff(0), transvectant(tau, i, 2).coeff(0),
                         transvectant(tau, tau, 2).coeff(0)};
}

WeightedModuliPoint moduli_point(const InvariantVector& v) {
  const FieldSpec f = v.I4.field();
  const FieldElement zero = FieldElement::zero(f), one = FieldElement::one(f);
  if (!v.I4.is_zero())
    return {one, v.I8 / v.I4.pow(2), v.I12 / v.I4.pow(3)};
  if (!v.I8.is_zero()) return {zero, one, v.I12.pow(2) / v.I8.pow(3)};
  if (!v.I12.is_zero()) return {zero, zero, one};
  throw MathError("unstable quintic: all invariants vanish");
}

WeightedModuliPoint moduli_point(const BinaryForm& f) { return moduli_point(invariants_quintic(f)); }

WeightedModuliPoint xi_of_pencil(const QuadricPencil& p) {
  return moduli_point(determinantal_quintic(p));
}

std::string WeightedModuliPoint::to_string() const {
  return "[" + a.to_string() + " : " + b.to_string() + " : " + c.to_string() + "]";
}

}  // namespace dp4kit
