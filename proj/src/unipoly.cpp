#include <algorithm>
#include <numeric>
#include <sstream>

#include "dp4kit/error.hpp"
#include "dp4kit/poly.hpp"
#include "dp4kit/rng.hpp"

namespace dp4kit {

UniPoly::UniPoly(const FieldSpec& f, std::string var) : field_(f), var_(std::move(var)) {}

UniPoly::UniPoly(const FieldSpec& f, Vec coeffs, std::string var)
    : field_(f), c_(std::move(coeffs)), var_(std::move(var)) {
  for (const auto& c : c_)
    if (c.field() != f) throw ValidationError("coefficient field mismatch");
  trim();
}

UniPoly UniPoly::constant(const FieldSpec& f, const FieldElement& c) { return UniPoly(f, Vec{c}); }

UniPoly UniPoly::x(const FieldSpec& f) { return UniPoly(f, Vec{FieldElement::zero(f), FieldElement::one(f)}); }

UniPoly UniPoly::monomial(const FieldElement& c, int deg) {
  Vec v(deg + 1, FieldElement::zero(c.field()));
  v[deg] = c;
  return UniPoly(c.field(), std::move(v));
}

void UniPoly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

FieldElement UniPoly::coeff(int i) const {
  if (i < 0 || i > degree()) return FieldElement::zero(field_);
  return c_[i];
}

FieldElement UniPoly::leading() const {
  if (c_.empty()) return FieldElement::zero(field_);
  return c_.back();
}

void UniPoly::set_coeff(int i, const FieldElement& c) {
  if (i >= static_cast<int>(c_.size())) c_.resize(i + 1, FieldElement::zero(field_));
  c_[i] = c;
  trim();
}

UniPoly UniPoly::operator+(const UniPoly& o) const {
  if (field_ != o.field_) throw ValidationError("field mismatch");
  Vec r(std::max(c_.size(), o.c_.size()), FieldElement::zero(field_));
  for (std::size_t i = 0; i < c_.size(); ++i) r[i] = c_[i];
  for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
  return UniPoly(field_, std::move(r), var_);
}

UniPoly UniPoly::operator-() const {
  Vec r = c_;
  for (auto& x : r) x = -x;
  return UniPoly(field_, std::move(r), var_);
}

UniPoly UniPoly::operator-(const UniPoly& o) const { return *this + (-o); }

UniPoly UniPoly::operator*(const UniPoly& o) const {
  if (field_ != o.field_) throw ValidationError("field mismatch");
  if (is_zero() || o.is_zero()) return UniPoly(field_, var_);
  Vec r(c_.size() + o.c_.size() - 1, FieldElement::zero(field_));
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
  }
  return UniPoly(field_, std::move(r), var_);
}

UniPoly UniPoly::operator*(const FieldElement& c) const {
  Vec r = c_;
  for (auto& x : r) x *= c;
  return UniPoly(field_, std::move(r), var_);
}

UniPoly UniPoly::operator/(const UniPoly& o) const { return divmod(*this, o).first; }

UniPoly UniPoly::operator%(const UniPoly& o) const { return divmod(*this, o).second; }

UniPoly UniPoly::derivative() const {
  if (c_.size() <= 1) return UniPoly(field_, var_);
  Vec r(c_.size() - 1, FieldElement::zero(field_));
  for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * FieldElement(field_, static_cast<std::int64_t>(i));
  return UniPoly(field_, std::move(r), var_);
}

FieldElement UniPoly::operator()(const FieldElement& x) const {
  FieldElement r = FieldElement::zero(field_);
  for (std::size_t i = c_.size(); i-- > 0;) r = r * x + c_[i];
  return r;
}

UniPoly UniPoly::monic() const {
  if (is_zero()) return *this;
  return *this * leading().inv();
}

UniPoly UniPoly::pow(unsigned e) const {
  UniPoly r = constant(field_, FieldElement::one(field_)), b = *this;
  while (e) {
    if (e & 1) r = r * b;
    b = b * b;
    e >>= 1;
  }
  return r;
}

std::string UniPoly::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    if (c_[i].is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    os << "(" << c_[i].to_string() << ")";
    if (i > 0) os << "*" << var_ << "^" << i;
  }
  return os.str();
}

std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b) {
  if (b.is_zero()) throw MathError("polynomial division by zero");
  const FieldSpec& f = a.field();
  if (a.degree() < b.degree()) return {UniPoly(f, a.var()), a};
  Vec r = a.coeffs();
  Vec q(a.degree() - b.degree() + 1, FieldElement::zero(f));
  const FieldElement linv = b.leading().inv();
  const int db = b.degree();
  for (int i = a.degree(); i >= db; --i) {
    if (r[i].is_zero()) continue;
    const FieldElement c = r[i] * linv;
    q[i - db] = c;
    for (int j = 0; j <= db; ++j) r[i - db + j] -= c * b.coeffs()[j];
  }
  r.resize(db);
  return {UniPoly(f, std::move(q), a.var()), UniPoly(f, std::move(r), a.var())};
}

UniPoly gcd(const UniPoly& a, const UniPoly& b) {
  UniPoly x = a, y = b;
  while (!y.is_zero()) {
    UniPoly r = x % y;
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

UniPoly powmod(const UniPoly& base, std::uint64_t e, const UniPoly& mod) {
  UniPoly r = UniPoly::constant(mod.field(), FieldElement::one(mod.field())) % mod;
  UniPoly b = base % mod;
  while (e) {
    if (e & 1) r = (r * b) % mod;
    b = (b * b) % mod;
    e >>= 1;
  }
  return r;
}

Matrix sylvester_matrix(const UniPoly& f, int df, const UniPoly& g, int dg) {
  if (f.degree() > df || g.degree() > dg) throw ValidationError("formal degree below actual degree");
  const FieldSpec& fld = f.field();
  const int n = df + dg;
  Matrix m(fld, n, n);
  for (int i = 0; i < dg; ++i)
    for (int j = 0; j <= df; ++j) m(i, i + j) = f.coeff(df - j);
  for (int i = 0; i < df; ++i)
    for (int j = 0; j <= dg; ++j) m(dg + i, i + j) = g.coeff(dg - j);
  return m;
}

FieldElement resultant_formal(const UniPoly& f, int df, const UniPoly& g, int dg) {
  if (df + dg == 0) return FieldElement::one(f.field());
  return sylvester_matrix(f, df, g, dg).det();
}

FieldElement resultant(const UniPoly& f, const UniPoly& g) {
  if (f.field() != g.field()) throw ValidationError("field mismatch");
  if (f.is_zero() || g.is_zero()) return FieldElement::zero(f.field());
  return resultant_formal(f, f.degree(), g, g.degree());
}

FieldElement discriminant(const UniPoly& f) {
  const int d = f.degree();
  if (d < 1) throw ValidationError("discriminant needs degree at least one");
  if (d == 1) return FieldElement::one(f.field());
  FieldElement r = resultant_formal(f, d, f.derivative(), d - 1) / f.leading();
  if ((d * (d - 1) / 2) % 2) r = -r;
  return r;
}

namespace {

// q-th root of each coefficient, then x^p -> x.
UniPoly pth_root(const UniPoly& f) {
  const FieldSpec& fld = f.field();
  const std::uint64_t p = fld.characteristic();
  std::uint64_t e = 1;
  for (int i = 1; i < fld.degree(); ++i) e *= p;
  Vec c;
  for (int i = 0; i <= f.degree(); i += static_cast<int>(p)) c.push_back(f.coeff(i).pow_u(e));
  return UniPoly(fld, std::move(c), f.var());
}

void sff_rec(const UniPoly& f, int scale, std::vector<SquarefreeFactor>& out) {
  UniPoly c = gcd(f, f.derivative());
  UniPoly w = f / c;
  int i = 1;
  while (w.degree() > 0) {
    UniPoly y = gcd(w, c);
    UniPoly fac = w / y;
    if (fac.degree() > 0) out.push_back({fac.monic(), i * scale});
    w = y;
    c = c / y;
    ++i;
  }
  if (c.degree() > 0) {
    if (!f.field().is_finite()) throw MathError("inseparable factor in characteristic zero");
    sff_rec(pth_root(c.monic()), scale * static_cast<int>(f.field().characteristic()), out);
  }
}

}  // namespace

std::vector<SquarefreeFactor> squarefree_decomposition(const UniPoly& f) {
  if (f.is_zero()) throw MathError("squarefree decomposition of zero");
  std::vector<SquarefreeFactor> out;
  if (f.degree() == 0) return out;
  sff_rec(f.monic(), 1, out);
  // Merge equal multiplicities that arise from the p-th root branch.
  std::map<int, UniPoly> merged;
  for (auto& sf : out) {
    auto it = merged.find(sf.multiplicity);
    if (it == merged.end()) {
      merged.emplace(sf.multiplicity, sf.factor);
    } else {
      it->second = it->second * sf.factor;
    }
  }
  out.clear();
  for (auto& [m, fac] : merged) out.push_back({fac, m});
  return out;
}

UniPoly squarefree_part(const UniPoly& f) {
  UniPoly r = UniPoly::constant(f.field(), FieldElement::one(f.field()));
  for (const auto& sf : squarefree_decomposition(f)) r = r * sf.factor;
  return r;
}

bool is_squarefree(const UniPoly& f) {
  if (f.is_zero()) return false;
  return gcd(f, f.derivative()).degree() == 0;
}

namespace {

void cz_split(const UniPoly& g, Rng& rng, std::vector<FieldElement>& out) {
  const FieldSpec& fld = g.field();
  if (g.degree() <= 0) return;
  if (g.degree() == 1) {
    out.push_back(-g.coeff(0) / g.coeff(1));
    return;
  }
  const std::uint64_t q = fld.order();
  while (true) {
    FieldElement a = FieldElement::from_index(fld, rng.below(q));
    UniPoly base(fld, Vec{a, FieldElement::one(fld)});
    UniPoly h = powmod(base, (q - 1) / 2, g) - UniPoly::constant(fld, FieldElement::one(fld));
    UniPoly d = gcd(h, g);
    if (d.degree() > 0 && d.degree() < g.degree()) {
      cz_split(d, rng, out);
      cz_split(g / d, rng, out);
      return;
    }
  }
}

std::vector<mpz_class> divisors(mpz_class n) {
  if (n < 0) n = -n;
  if (n > mpz_class("1000000000000")) throw MathError("rational root search: coefficients too large");
  std::vector<mpz_class> ds;
  for (mpz_class d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      ds.push_back(d);
      if (d * d != n) ds.push_back(n / d);
    }
  }
  return ds;
}

std::vector<FieldElement> rational_roots(const UniPoly& f) {
  const FieldSpec& fld = f.field();
  std::vector<FieldElement> out;
  UniPoly g = f;
  if (g.coeff(0).is_zero()) {
    out.push_back(FieldElement::zero(fld));
    while (!g.is_zero() && g.coeff(0).is_zero()) g = g / UniPoly::x(fld);
  }
  if (g.degree() <= 0) return out;
  mpz_class l = 1;
  for (const auto& c : g.coeffs()) l = lcm(l, c.rational().get_den());
  std::vector<mpz_class> ic;
  for (const auto& c : g.coeffs()) ic.push_back(mpz_class(c.rational() * l));
  for (const auto& a : divisors(ic.front()))
    for (const auto& b : divisors(ic.back()))
      for (int s : {1, -1}) {
        FieldElement r(fld, mpq_class(a * s, b));
        if (g(r).is_zero()) out.push_back(r);
      }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

std::vector<FieldElement> roots(const UniPoly& f) {
  if (f.is_zero()) throw MathError("roots of the zero polynomial");
  if (f.degree() == 0) return {};
  const FieldSpec& fld = f.field();
  if (!fld.is_finite()) return rational_roots(f);
  UniPoly m = f.monic();
  UniPoly xq = powmod(UniPoly::x(fld), fld.order(), m);
  UniPoly g = gcd(m, xq - UniPoly::x(fld));
  std::vector<FieldElement> out;
  Rng rng(0x5eed0000ULL + static_cast<std::uint64_t>(g.degree()));
  cz_split(g, rng, out);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> irreducible_factor_degrees(const UniPoly& f) {
  const FieldSpec& fld = f.field();
  if (!fld.is_finite()) throw ValidationError("factor degrees need a finite field");
  if (!is_squarefree(f)) throw MathError("irreducible_factor_degrees needs a squarefree polynomial");
  std::vector<int> out;
  UniPoly r = f.monic();
  UniPoly x = UniPoly::x(fld);
  UniPoly h = x % r;
  for (int d = 1; r.degree() >= 2 * d; ++d) {
    h = powmod(h, fld.order(), r);
    UniPoly g = gcd(r, h - x);
    if (g.degree() > 0) {
      for (int i = 0; i < g.degree() / d; ++i) out.push_back(d);
      r = r / g;
      h = h % r;
    }
  }
  if (r.degree() > 0) out.push_back(r.degree());
  std::sort(out.begin(), out.end());
  return out;
}

int splitting_degree(const UniPoly& f) {
  int l = 1;
  for (int d : irreducible_factor_degrees(squarefree_part(f))) l = std::lcm(l, d);
  return l;
}

UniPoly interpolate(const Vec& xs, const Vec& ys) {
  if (xs.size() != ys.size() || xs.empty()) throw ValidationError("interpolation needs matching nonempty data");
  const FieldSpec fld = xs[0].field();
  const std::size_t n = xs.size();
  Vec dd = ys;
  for (std::size_t j = 1; j < n; ++j)
    for (std::size_t i = n - 1; i >= j; --i) {
      const FieldElement den = xs[i] - xs[i - j];
      if (den.is_zero()) throw MathError("interpolation nodes must be distinct");
      dd[i] = (dd[i] - dd[i - 1]) / den;
    }
  UniPoly r = UniPoly::constant(fld, dd[n - 1]);
  for (std::size_t i = n - 1; i-- > 0;) {
    r = r * UniPoly(fld, Vec{-xs[i], FieldElement::one(fld)}) + UniPoly::constant(fld, dd[i]);
  }
  return r;
}

UniPoly det_poly_matrix(const std::vector<std::vector<UniPoly>>& m) {
  const std::size_t n = m.size();
  if (n == 0) throw ValidationError("empty polynomial matrix");
  for (const auto& row : m)
    if (row.size() != n) throw ValidationError("polynomial matrix must be square");
  const FieldSpec fld = m[0][0].field();
  long bound = 0;
  for (const auto& row : m) {
    int rd = -1;
    for (const auto& e : row) rd = std::max(rd, e.degree());
    if (rd < 0) return UniPoly(fld);
    bound += rd;
  }
  const bool enough = !fld.is_finite() || fld.order() > static_cast<std::uint64_t>(bound);
  if (enough) {
    Vec xs, ys;
    for (long i = 0; i <= bound; ++i) {
      FieldElement x = fld.is_finite() ? FieldElement::from_index(fld, static_cast<std::uint64_t>(i))
                                       : FieldElement(fld, static_cast<std::int64_t>(i));
      Matrix e(fld, n, n);
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) e(a, b) = m[a][b](x);
      xs.push_back(x);
      ys.push_back(e.det());
    }
    return interpolate(xs, ys);
  }
  // Bareiss fraction-free elimination over F[x].
  auto a = m;
  UniPoly prev = UniPoly::constant(fld, FieldElement::one(fld));
  bool neg = false;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k].is_zero()) {
      std::size_t p = k + 1;
      while (p < n && a[p][k].is_zero()) ++p;
      if (p == n) return UniPoly(fld);
      std::swap(a[p], a[k]);
      neg = !neg;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    prev = a[k][k];
  }
  UniPoly d = a[n - 1][n - 1];
  return neg ? -d : d;
}

}  // namespace dp4kit
