#include <algorithm>
#include <sstream>

#include "dp4kit/error.hpp"
#include "dp4kit/poly.hpp"

namespace dp4kit {

MultiPoly::MultiPoly(const FieldSpec& f, std::vector<std::string> vars) : field_(f), vars_(std::move(vars)) {}

MultiPoly MultiPoly::variable(const FieldSpec& f, const std::vector<std::string>& vars, std::size_t i) {
  if (i >= vars.size()) throw ValidationError("variable index out of range");
  MultiPoly r(f, vars);
  Monomial m(vars.size(), 0);
  m[i] = 1;
  r.add_term(m, FieldElement::one(f));
  return r;
}

MultiPoly MultiPoly::constant(const FieldSpec& f, const std::vector<std::string>& vars, const FieldElement& c) {
  MultiPoly r(f, vars);
  r.add_term(Monomial(vars.size(), 0), c);
  return r;
}

void MultiPoly::add_term(const Monomial& m, const FieldElement& c) {
  if (m.size() != vars_.size()) throw ValidationError("monomial length does not match the variable count");
  for (int e : m)
    if (e < 0) throw ValidationError("negative exponent");
  if (c.field() != field_) throw ValidationError("coefficient field mismatch");
  if (c.is_zero()) return;
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    terms_.emplace(m, c);
  } else {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

FieldElement MultiPoly::coeff(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? FieldElement::zero(field_) : it->second;
}

MultiPoly MultiPoly::operator+(const MultiPoly& o) const {
  if (vars_ != o.vars_ || field_ != o.field_) throw ValidationError("polynomial ring mismatch");
  MultiPoly r = *this;
  for (const auto& [m, c] : o.terms_) r.add_term(m, c);
  return r;
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly r = *this;
  for (auto& [m, c] : r.terms_) c = -c;
  return r;
}

MultiPoly MultiPoly::operator-(const MultiPoly& o) const { return *this + (-o); }

MultiPoly MultiPoly::operator*(const MultiPoly& o) const {
  if (vars_ != o.vars_ || field_ != o.field_) throw ValidationError("polynomial ring mismatch");
  MultiPoly r(field_, vars_);
  Monomial m(vars_.size());
  for (const auto& [a, ca] : terms_)
    for (const auto& [b, cb] : o.terms_) {
      for (std::size_t i = 0; i < m.size(); ++i) m[i] = a[i] + b[i];
      r.add_term(m, ca * cb);
    }
  return r;
}

MultiPoly MultiPoly::operator*(const FieldElement& c) const {
  MultiPoly r(field_, vars_);
  for (const auto& [m, x] : terms_) r.add_term(m, x * c);
  return r;
}

MultiPoly MultiPoly::pow(unsigned e) const {
  MultiPoly r = constant(field_, vars_, FieldElement::one(field_)), b = *this;
  while (e) {
    if (e & 1) r = r * b;
    b = b * b;
    e >>= 1;
  }
  return r;
}

bool MultiPoly::operator==(const MultiPoly& o) const {
  return field_ == o.field_ && vars_ == o.vars_ && terms_ == o.terms_;
}

MultiPoly MultiPoly::derivative(std::size_t i) const {
  MultiPoly r(field_, vars_);
  for (const auto& [m, c] : terms_) {
    if (m[i] == 0) continue;
    Monomial n = m;
    --n[i];
    r.add_term(n, c * FieldElement(field_, m[i]));
  }
  return r;
}

FieldElement MultiPoly::eval(const Vec& x) const {
  if (x.size() != vars_.size()) throw ValidationError("evaluation point has the wrong length");
  const FieldSpec& g = x.empty() ? field_ : x[0].field();
  FieldElement s = FieldElement::zero(g);
  for (const auto& [m, c] : terms_) {
    FieldElement t = c;
    for (std::size_t i = 0; i < m.size(); ++i)
      if (m[i]) t *= x[i].pow_u(static_cast<std::uint64_t>(m[i]));
    s += t;
  }
  return s;
}

MultiPoly MultiPoly::substitute(const std::vector<MultiPoly>& images) const {
  if (images.size() != vars_.size()) throw ValidationError("substitution needs one image per variable");
  if (images.empty()) throw ValidationError("empty substitution");
  const auto& tv = images[0].vars();
  const FieldSpec& tf = images[0].field();
  MultiPoly r(tf, tv);
  // Cache powers of each image.
  std::vector<std::vector<MultiPoly>> pw(images.size());
  for (const auto& [m, c] : terms_) {
    MultiPoly t = constant(tf, tv, c);
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (!m[i]) continue;
      auto& cache = pw[i];
      if (cache.empty()) cache.push_back(constant(tf, tv, FieldElement::one(tf)));
      while (static_cast<int>(cache.size()) <= m[i]) cache.push_back(cache.back() * images[i]);
      t = t * cache[m[i]];
    }
    r = r + t;
  }
  return r;
}

int MultiPoly::total_degree() const {
  int d = -1;
  for (const auto& [m, c] : terms_) {
    int s = 0;
    for (int e : m) s += e;
    d = std::max(d, s);
  }
  return d;
}

int MultiPoly::degree_in(const std::vector<std::size_t>& idx) const {
  int d = -1;
  for (const auto& [m, c] : terms_) {
    int s = 0;
    for (auto i : idx) s += m[i];
    d = std::max(d, s);
  }
  return d;
}

bool MultiPoly::is_homogeneous_in(const std::vector<std::size_t>& idx, int deg) const {
  for (const auto& [m, c] : terms_) {
    int s = 0;
    for (auto i : idx) s += m[i];
    if (s != deg) return false;
  }
  return true;
}

MultiPoly MultiPoly::embed(const std::vector<std::string>& vars, const std::vector<std::size_t>& pos) const {
  if (pos.size() != vars_.size()) throw ValidationError("embedding needs one position per variable");
  MultiPoly r(field_, vars);
  for (const auto& [m, c] : terms_) {
    Monomial n(vars.size(), 0);
    for (std::size_t i = 0; i < m.size(); ++i) n.at(pos[i]) += m[i];
    r.add_term(n, c);
  }
  return r;
}

std::string MultiPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    if (!first) os << " + ";
    first = false;
    os << "(" << it->second.to_string() << ")";
    for (std::size_t i = 0; i < it->first.size(); ++i) {
      if (it->first[i] == 0) continue;
      os << "*" << vars_[i];
      if (it->first[i] > 1) os << "^" << it->first[i];
    }
  }
  return os.str();
}

// ---------------------------------------------------------------------------

BinaryForm::BinaryForm(const FieldSpec& f, Vec coeffs) : field_(f), a_(std::move(coeffs)) {
  if (a_.empty()) throw ValidationError("binary form needs at least one coefficient");
  for (const auto& c : a_)
    if (c.field() != f) throw ValidationError("coefficient field mismatch");
}

BinaryForm BinaryForm::zero(const FieldSpec& f, int degree) {
  return BinaryForm(f, Vec(degree + 1, FieldElement::zero(f)));
}

BinaryForm BinaryForm::from_dehomogenized(const UniPoly& g, int d) {
  if (g.degree() > d) throw ValidationError("formal degree below actual degree");
  Vec a(d + 1, FieldElement::zero(g.field()));
  for (int i = 0; i <= d; ++i) a[i] = g.coeff(d - i);
  return BinaryForm(g.field(), std::move(a));
}

bool BinaryForm::is_zero() const {
  for (const auto& c : a_)
    if (!c.is_zero()) return false;
  return true;
}

BinaryForm BinaryForm::operator+(const BinaryForm& o) const {
  if (degree() != o.degree()) throw ValidationError("binary form degree mismatch");
  Vec r = a_;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += o.a_[i];
  return BinaryForm(field_, std::move(r));
}

BinaryForm BinaryForm::operator-(const BinaryForm& o) const {
  if (degree() != o.degree()) throw ValidationError("binary form degree mismatch");
  Vec r = a_;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= o.a_[i];
  return BinaryForm(field_, std::move(r));
}

BinaryForm BinaryForm::operator*(const BinaryForm& o) const {
  Vec r(a_.size() + o.a_.size() - 1, FieldElement::zero(field_));
  for (std::size_t i = 0; i < a_.size(); ++i)
    for (std::size_t j = 0; j < o.a_.size(); ++j) r[i + j] += a_[i] * o.a_[j];
  return BinaryForm(field_, std::move(r));
}

BinaryForm BinaryForm::operator*(const FieldElement& c) const {
  Vec r = a_;
  for (auto& x : r) x *= c;
  return BinaryForm(field_, std::move(r));
}

FieldElement BinaryForm::eval(const FieldElement& s, const FieldElement& t) const {
  const int d = degree();
  FieldElement r = FieldElement::zero(s.field());
  for (int i = 0; i <= d; ++i) r += a_[i] * s.pow_u(d - i) * t.pow_u(i);
  return r;
}

BinaryForm BinaryForm::ds() const {
  const int d = degree();
  if (d == 0) return zero(field_, 0);
  Vec r(d, FieldElement::zero(field_));
  for (int i = 0; i < d; ++i) r[i] = a_[i] * FieldElement(field_, d - i);
  return BinaryForm(field_, std::move(r));
}

BinaryForm BinaryForm::dt() const {
  const int d = degree();
  if (d == 0) return zero(field_, 0);
  Vec r(d, FieldElement::zero(field_));
  for (int i = 1; i <= d; ++i) r[i - 1] = a_[i] * FieldElement(field_, i);
  return BinaryForm(field_, std::move(r));
}

BinaryForm BinaryForm::substitute(const Matrix& g) const {
  if (g.rows() != 2 || g.cols() != 2) throw ValidationError("substitution needs a 2x2 matrix");
  const int d = degree();
  const BinaryForm S(field_, Vec{g(0, 0), g(0, 1)});
  const BinaryForm T(field_, Vec{g(1, 0), g(1, 1)});
  std::vector<BinaryForm> sp{BinaryForm(field_, Vec{FieldElement::one(field_)})};
  std::vector<BinaryForm> tp = sp;
  for (int i = 1; i <= d; ++i) {
    sp.push_back(sp.back() * S);
    tp.push_back(tp.back() * T);
  }
  BinaryForm r = zero(field_, d);
  for (int i = 0; i <= d; ++i) r = r + (sp[d - i] * tp[i]) * a_[i];
  return r;
}

UniPoly BinaryForm::dehomogenize() const {
  const int d = degree();
  Vec c(d + 1, FieldElement::zero(field_));
  for (int i = 0; i <= d; ++i) c[d - i] = a_[i];
  return UniPoly(field_, std::move(c));
}

int BinaryForm::multiplicity_at_infinity() const {
  int m = 0;
  while (m < static_cast<int>(a_.size()) && a_[m].is_zero()) ++m;
  return m;
}

std::string BinaryForm::to_string() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < a_.size(); ++i) os << (i ? ", " : "") << a_[i].to_string();
  os << "]";
  return os.str();
}

FieldElement discriminant_binary(const BinaryForm& f) {
  const int d = f.degree();
  if (d < 1) throw ValidationError("discriminant needs degree at least one");
  if (f.is_zero()) return FieldElement::zero(f.field());
  if (d == 1) return FieldElement::one(f.field());
  if (!f.coeff(0).is_zero()) return discriminant(f.dehomogenize());
  // f = t * h with h of degree d - 1: Disc(f) = Disc(h) * h(1, 0)^2.
  if (f.coeff(1).is_zero()) return FieldElement::zero(f.field());
  Vec h(f.coeffs().begin() + 1, f.coeffs().end());
  return discriminant_binary(BinaryForm(f.field(), h)) * f.coeff(1) * f.coeff(1);
}

std::vector<int> root_multiplicity_partition(const BinaryForm& f) {
  if (f.is_zero()) throw MathError("the zero form has no root partition");
  std::vector<int> out;
  const int inf = f.multiplicity_at_infinity();
  if (inf > 0) out.push_back(inf);
  for (const auto& sf : squarefree_decomposition(f.dehomogenize()))
    for (int i = 0; i < sf.factor.degree(); ++i) out.push_back(sf.multiplicity);
  std::sort(out.rbegin(), out.rend());
  return out;
}

}  // namespace dp4kit
