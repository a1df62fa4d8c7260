#include "dp4kit/error.hpp"
#include "dp4kit/field.hpp"
#include "dp4kit/matrix.hpp"
#include "dp4kit/poly.hpp"

namespace dp4kit {

FieldEmbedding::FieldEmbedding(const FieldSpec& src, const FieldSpec& dst) : src_(src), dst_(dst) {
  if (src == dst) {
    identity_ = true;
    return;
  }
  if (!src.is_finite() || !dst.is_finite() || src.characteristic() != dst.characteristic() ||
      dst.degree() % src.degree() != 0)
    throw ValidationError("no embedding " + src.name() + " -> " + dst.name());
  Vec mc;
  for (auto c : src.modulus()) mc.emplace_back(dst, static_cast<std::int64_t>(c));
  UniPoly m(dst, mc);
  FieldElement gamma = FieldElement(dst, 0);
  if (src.degree() > 1) {
    auto rs = roots(m);
    if (rs.empty()) throw MathError("modulus has no root in the target field");
    gamma = rs.front();
  }
  FieldElement g = FieldElement::one(dst);
  for (int i = 0; i < src.degree(); ++i) {
    gpow_.push_back(g);
    g *= gamma;
  }
}

FieldElement FieldEmbedding::operator()(const FieldElement& x) const {
  if (identity_) return x;
  if (x.field() != src_) throw ValidationError("embedding applied to an element of the wrong field");
  FieldElement r = FieldElement::zero(dst_);
  const auto c = x.coordinates();
  for (std::size_t i = 0; i < c.size(); ++i)
    if (c[i]) r += gpow_[i] * FieldElement(dst_, static_cast<std::int64_t>(c[i]));
  return r;
}

namespace {

bool solve_pull_back(const std::vector<FieldElement>& gpow, const FieldSpec& src, const FieldElement& x,
                     FieldElement& out) {
  const FieldSpec fp = src.prime_subfield();
  const int a = src.degree();
  const int b = x.field().degree();
  Matrix aug(fp, b, a + 1);
  for (int i = 0; i < a; ++i) {
    const auto c = gpow[i].coordinates();
    for (int r = 0; r < b; ++r) aug(r, i) = FieldElement(fp, static_cast<std::int64_t>(c[r]));
  }
  const auto y = x.coordinates();
  for (int r = 0; r < b; ++r) aug(r, a) = FieldElement(fp, static_cast<std::int64_t>(y[r]));
  std::vector<std::size_t> piv;
  Matrix red = aug.rref(&piv);
  if (!piv.empty() && piv.back() == static_cast<std::size_t>(a)) return false;
  std::vector<std::uint64_t> digits(a, 0);
  for (std::size_t i = 0; i < piv.size(); ++i) digits[piv[i]] = red(i, a).index();
  out = FieldElement::from_index(src, src.data().pack(digits.data()));
  return true;
}

}  // namespace

bool FieldEmbedding::in_image(const FieldElement& x) const {
  if (identity_) return true;
  FieldElement tmp;
  return solve_pull_back(gpow_, src_, x, tmp);
}

FieldElement FieldEmbedding::pull_back(const FieldElement& x) const {
  if (identity_) return x;
  if (x.field() != dst_) throw ValidationError("pull_back applied to an element of the wrong field");
  FieldElement out;
  if (!solve_pull_back(gpow_, src_, x, out)) throw MathError("element is not in the image of the embedding");
  return out;
}

}  // namespace dp4kit
