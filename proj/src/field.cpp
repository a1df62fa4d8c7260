#include "dp4kit/field.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>

#include "dp4kit/error.hpp"

namespace dp4kit {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

// Dense polynomials over F_p on raw coefficients, low-to-high.  Only used to
// find the canonical modulus.
using RawPoly = std::vector<u64>;

void raw_trim(RawPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

u64 raw_powmod_int(u64 a, u64 e, u64 p) {
  u64 r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = static_cast<u64>(static_cast<u128>(r) * a % p);
    a = static_cast<u64>(static_cast<u128>(a) * a % p);
    e >>= 1;
  }
  return r;
}

u64 raw_inv_int(u64 a, u64 p) { return raw_powmod_int(a, p - 2, p); }

RawPoly raw_mod(RawPoly a, const RawPoly& m, u64 p) {
  raw_trim(a);
  const std::size_t dm = m.size() - 1;
  const u64 linv = raw_inv_int(m.back(), p);
  while (a.size() > dm) {
    const u64 c = static_cast<u64>(static_cast<u128>(a.back()) * linv % p);
    const std::size_t shift = a.size() - 1 - dm;
    for (std::size_t i = 0; i <= dm; ++i) {
      a[shift + i] = (a[shift + i] + p - static_cast<u64>(static_cast<u128>(c) * m[i] % p)) % p;
    }
    raw_trim(a);
  }
  return a;
}

RawPoly raw_mulmod(const RawPoly& a, const RawPoly& b, const RawPoly& m, u64 p) {
  if (a.empty() || b.empty()) return {};
  RawPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      r[i + j] = (r[i + j] + static_cast<u64>(static_cast<u128>(a[i]) * b[j] % p)) % p;
  return raw_mod(std::move(r), m, p);
}

RawPoly raw_powmod(RawPoly base, u64 e, const RawPoly& m, u64 p) {
  RawPoly r{1};
  base = raw_mod(std::move(base), m, p);
  while (e) {
    if (e & 1) r = raw_mulmod(r, base, m, p);
    base = raw_mulmod(base, base, m, p);
    e >>= 1;
  }
  return r;
}

RawPoly raw_gcd(RawPoly a, RawPoly b, u64 p) {
  raw_trim(a);
  raw_trim(b);
  while (!b.empty()) {
    RawPoly r = raw_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

std::vector<u64> prime_factors(u64 n) {
  std::vector<u64> f;
  for (u64 d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      f.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) f.push_back(n);
  return f;
}

// Rabin's irreducibility test for a monic f of degree k over F_p.
bool raw_irreducible(const RawPoly& f, u64 p) {
  const int k = static_cast<int>(f.size()) - 1;
  if (k <= 0) return false;
  if (k == 1) return true;
  // xq[j] = x^(p^j) mod f
  std::vector<RawPoly> xq(k + 1);
  xq[0] = raw_mod(RawPoly{0, 1}, f, p);
  for (int j = 1; j <= k; ++j) xq[j] = raw_powmod(xq[j - 1], p, f, p);
  RawPoly x = raw_mod(RawPoly{0, 1}, f, p);
  auto minus_x = [&](RawPoly a) {
    a.resize(std::max<std::size_t>(a.size(), 2), 0);
    a[1] = (a[1] + p - 1) % p;
    raw_trim(a);
    return a;
  };
  if (!minus_x(xq[k]).empty()) return false;
  for (u64 l : prime_factors(static_cast<u64>(k))) {
    RawPoly g = raw_gcd(f, minus_x(xq[k / l]), p);
    if (g.size() != 1) return false;
  }
  return true;
}

// Smallest monic irreducible of degree k, coefficient vectors (c_0, ..., c_{k-1})
// compared lexicographically with c_0 first.
RawPoly canonical_modulus(u64 p, int k) {
  if (k == 1) return {0, 1};
  RawPoly f(k + 1, 0);
  f[k] = 1;
  // Counter over digits with c_0 most significant.
  std::vector<u64> digits(k, 0);
  digits[0] = 1;  // c_0 = 0 means x divides f
  while (true) {
    for (int i = 0; i < k; ++i) f[i] = digits[i];
    if (f[0] != 0 && raw_irreducible(f, p)) return f;
    int i = k - 1;
    while (i >= 0 && ++digits[i] == p) {
      digits[i] = 0;
      --i;
    }
    if (i < 0) throw MathError("no irreducible polynomial found");
  }
}

std::mutex registry_mutex;

std::map<std::pair<u64, int>, std::unique_ptr<detail::FieldData>>& registry() {
  static std::map<std::pair<u64, int>, std::unique_ptr<detail::FieldData>> r;
  return r;
}

const detail::FieldData* rationals_data() {
  static detail::FieldData d;
  return &d;
}

constexpr u64 kTableLimit = u64{1} << 18;

void build_tables(detail::FieldData& d) {
  d.two_adic_m = d.q - 1;
  d.two_adic_s = 0;
  while (d.two_adic_m % 2 == 0) {
    d.two_adic_m /= 2;
    ++d.two_adic_s;
  }
  // Quadratic nonresidue, smallest index.
  for (u64 z = 2; z < d.q; ++z) {
    if (!d.is_square(z)) {
      d.nonresidue = z;
      break;
    }
  }
  if (d.k == 1 || d.q > kTableLimit) return;
  const auto factors = prime_factors(d.q - 1);
  u64 g = 0;
  for (u64 c = 2; c < d.q; ++c) {
    bool prim = true;
    for (u64 l : factors) {
      if (d.pow(c, (d.q - 1) / l) == 1) {
        prim = false;
        break;
      }
    }
    if (prim) {
      g = c;
      break;
    }
  }
  std::vector<std::uint32_t> lg(d.q, 0);
  std::vector<u64> ex(2 * (d.q - 1), 0);
  u64 x = 1;
  for (u64 i = 0; i < d.q - 1; ++i) {
    ex[i] = x;
    ex[i + d.q - 1] = x;
    lg[x] = static_cast<std::uint32_t>(i);
    x = d.mul(x, g);
  }
  d.log_ = std::move(lg);
  d.exp_ = std::move(ex);
}

}  // namespace

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (u64 d : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % d == 0) return n == d;
  }
  u64 d = n - 1;
  int s = 0;
  while (d % 2 == 0) {
    d /= 2;
    ++s;
  }
  for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    u64 x = raw_powmod_int(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool comp = true;
    for (int r = 1; r < s; ++r) {
      x = static_cast<u64>(static_cast<u128>(x) * x % n);
      if (x == n - 1) {
        comp = false;
        break;
      }
    }
    if (comp) return false;
  }
  return true;
}

namespace detail {

void FieldData::unpack(u64 a, u64* digits) const {
  for (int i = 0; i < k; ++i) {
    digits[i] = a % p;
    a /= p;
  }
}

u64 FieldData::pack(const u64* digits) const {
  u64 r = 0;
  for (int i = k - 1; i >= 0; --i) r = r * p + digits[i];
  return r;
}

u64 FieldData::add(u64 a, u64 b) const {
  if (k == 1) {
    u64 r = a + b;
    return r >= p ? r - p : r;
  }
  u64 r = 0;
  for (int i = 0; i < k; ++i) {
    u64 s = a % p + b % p;
    if (s >= p) s -= p;
    r += s * ppow[i];
    a /= p;
    b /= p;
  }
  return r;
}

u64 FieldData::neg(u64 a) const {
  if (k == 1) return a == 0 ? 0 : p - a;
  u64 r = 0;
  for (int i = 0; i < k; ++i) {
    u64 c = a % p;
    r += (c == 0 ? 0 : p - c) * ppow[i];
    a /= p;
  }
  return r;
}

u64 FieldData::sub(u64 a, u64 b) const { return add(a, neg(b)); }

u64 FieldData::mul_slow(u64 a, u64 b) const {
  u64 da[64], db[64], r[128];
  unpack(a, da);
  unpack(b, db);
  std::fill(r, r + 2 * k, 0);
  for (int i = 0; i < k; ++i) {
    if (!da[i]) continue;
    for (int j = 0; j < k; ++j) r[i + j] = (r[i + j] + da[i] * db[j]) % p;
  }
  for (int top = 2 * k - 2; top >= k; --top) {
    const u64 c = r[top];
    if (!c) continue;
    r[top] = 0;
    for (int i = 0; i < k; ++i) {
      r[top - k + i] = (r[top - k + i] + (p - c) * modulus[i]) % p;
    }
  }
  return pack(r);
}

u64 FieldData::mul(u64 a, u64 b) const {
  if (k == 1) return a * b % p;
  if (a == 0 || b == 0) return 0;
  if (!log_.empty()) return exp_[log_[a] + log_[b]];
  return mul_slow(a, b);
}

u64 FieldData::pow(u64 a, u64 e) const {
  u64 r = 1;
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

u64 FieldData::inv(u64 a) const {
  if (a == 0) throw MathError("division by zero");
  if (!log_.empty()) return exp_[(q - 1 - log_[a]) % (q - 1)];
  return pow(a, q - 2);
}

u64 FieldData::from_int(std::int64_t v) const {
  std::int64_t m = v % static_cast<std::int64_t>(p);
  if (m < 0) m += static_cast<std::int64_t>(p);
  return static_cast<u64>(m);
}

u64 FieldData::from_mpz(const mpz_class& v) const {
  mpz_class m = v % mpz_class(static_cast<unsigned long>(p));
  if (m < 0) m += static_cast<unsigned long>(p);
  return m.get_ui();
}

bool FieldData::is_square(u64 a) const {
  if (a == 0) return true;
  return pow(a, (q - 1) / 2) == 1;
}

bool FieldData::sqrt(u64 a, u64& r) const {
  if (a == 0) {
    r = 0;
    return true;
  }
  if (!is_square(a)) return false;
  // Tonelli-Shanks in the cyclic group of order q-1.
  u64 m = two_adic_s;
  u64 c = pow(nonresidue, two_adic_m);
  u64 t = pow(a, two_adic_m);
  u64 x = pow(a, (two_adic_m + 1) / 2);
  while (t != 1) {
    u64 i = 0, tt = t;
    while (tt != 1) {
      tt = mul(tt, tt);
      ++i;
    }
    u64 b = c;
    for (u64 j = 0; j + i + 1 < m; ++j) b = mul(b, b);
    m = i;
    c = mul(b, b);
    t = mul(t, c);
    x = mul(x, b);
  }
  r = x;
  return true;
}

}  // namespace detail

FieldSpec::FieldSpec() : d_(rationals_data()) {}

FieldSpec FieldSpec::rationals() { return FieldSpec(); }

FieldSpec FieldSpec::prime(std::uint64_t p) { return extension(p, 1); }

FieldSpec FieldSpec::extension(std::uint64_t p, int k) {
  if (p == 2) throw ValidationError("characteristic two unsupported");
  if (!is_prime_u64(p)) throw ValidationError("p = " + std::to_string(p) + " is not prime");
  if (p >= (u64{1} << 31)) throw ValidationError("p must be below 2^31");
  if (k < 1) throw ValidationError("extension degree must be positive");
  long double qd = 1;
  for (int i = 0; i < k; ++i) qd *= static_cast<long double>(p);
  if (qd >= static_cast<long double>(u64{1} << 62)) throw ValidationError("field order must be below 2^62");
  std::lock_guard<std::mutex> lock(registry_mutex);
  auto& reg = registry();
  auto it = reg.find({p, k});
  if (it != reg.end()) return FieldSpec(it->second.get());
  auto d = std::make_unique<detail::FieldData>();
  d->kind = k == 1 ? FieldKind::prime : FieldKind::extension;
  d->p = p;
  d->k = k;
  d->ppow.resize(k + 1);
  d->ppow[0] = 1;
  for (int i = 1; i <= k; ++i) d->ppow[i] = d->ppow[i - 1] * p;
  d->q = d->ppow[k];
  d->modulus = canonical_modulus(p, k);
  build_tables(*d);
  const detail::FieldData* raw = d.get();
  reg.emplace(std::make_pair(p, k), std::move(d));
  return FieldSpec(raw);
}

std::uint64_t FieldSpec::order() const {
  if (!is_finite()) throw ValidationError("the rationals have no finite order");
  return d_->q;
}

FieldSpec FieldSpec::prime_subfield() const {
  if (!is_finite()) return *this;
  return prime(d_->p);
}

FieldSpec FieldSpec::extend(int m) const {
  if (!is_finite()) throw ValidationError("cannot extend the rationals");
  return extension(d_->p, d_->k * m);
}

std::string FieldSpec::name() const {
  if (!is_finite()) return "Q";
  if (d_->k == 1) return "F_" + std::to_string(d_->p);
  return "F_" + std::to_string(d_->p) + "^" + std::to_string(d_->k);
}

FieldSpec field_build(FieldKind kind, std::uint64_t p, int k) {
  switch (kind) {
    case FieldKind::rationals:
      return FieldSpec::rationals();
    case FieldKind::prime:
      if (k != 1) throw ValidationError("prime field must have k = 1");
      return FieldSpec::prime(p);
    case FieldKind::extension:
      return FieldSpec::extension(p, k);
  }
  throw ValidationError("unknown field kind");
}

// ---------------------------------------------------------------------------

FieldElement::FieldElement() : r_(std::make_unique<mpq_class>(0)) {}

FieldElement::FieldElement(const FieldSpec& f, std::int64_t v) : field_(f) {
  if (f.is_finite()) {
    v_ = f.data().from_int(v);
  } else {
    r_ = std::make_unique<mpq_class>(static_cast<long>(v));
  }
}

FieldElement::FieldElement(const FieldSpec& f, const mpq_class& v) : field_(f) {
  if (f.is_finite()) {
    const auto& d = f.data();
    u64 num = d.from_mpz(v.get_num());
    u64 den = d.from_mpz(v.get_den());
    if (den == 0) throw MathError("denominator divisible by the characteristic");
    v_ = d.mul(num, d.inv(den));
  } else {
    r_ = std::make_unique<mpq_class>(v);
    r_->canonicalize();
  }
}

FieldElement::FieldElement(const FieldElement& o) : field_(o.field_), v_(o.v_) {
  if (o.r_) r_ = std::make_unique<mpq_class>(*o.r_);
}

FieldElement& FieldElement::operator=(const FieldElement& o) {
  if (this == &o) return *this;
  field_ = o.field_;
  v_ = o.v_;
  if (o.r_) {
    if (r_) {
      *r_ = *o.r_;
    } else {
      r_ = std::make_unique<mpq_class>(*o.r_);
    }
  } else {
    r_.reset();
  }
  return *this;
}

FieldElement FieldElement::from_index(const FieldSpec& f, std::uint64_t idx) {
  if (!f.is_finite()) throw ValidationError("from_index requires a finite field");
  if (idx >= f.order()) throw ValidationError("field element index out of range");
  return FieldElement(f, idx, RawTag{});
}

FieldElement FieldElement::parse(const FieldSpec& f, std::string_view s) {
  std::string str(s);
  if (str.empty()) throw ValidationError("empty field element");
  mpq_class v;
  if (v.set_str(str, 10) != 0) throw ValidationError("malformed field element '" + str + "'");
  if (v.get_den() == 0) throw ValidationError("zero denominator in '" + str + "'");
  v.canonicalize();
  if (f.kind() == FieldKind::extension) {
    if (v.get_den() != 1 || v < 0) throw ValidationError("extension field elements are packed indices");
    mpz_class n = v.get_num();
    if (n >= mpz_class(std::to_string(f.order()))) throw ValidationError("field element index out of range");
    return from_index(f, std::stoull(n.get_str()));
  }
  return FieldElement(f, v);
}

bool FieldElement::is_zero() const { return r_ ? sgn(*r_) == 0 : v_ == 0; }

bool FieldElement::is_one() const { return r_ ? *r_ == 1 : v_ == 1; }

const mpq_class& FieldElement::rational() const {
  if (!r_) throw ValidationError("not a rational element");
  return *r_;
}

std::vector<std::uint64_t> FieldElement::coordinates() const {
  if (!field_.is_finite()) throw ValidationError("coordinates require a finite field");
  std::vector<u64> c(field_.degree());
  field_.data().unpack(v_, c.data());
  return c;
}

void FieldElement::check_same(const FieldElement& o) const {
  if (field_ != o.field_) throw ValidationError("field mismatch: " + field_.name() + " vs " + o.field_.name());
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
  check_same(o);
  if (!r_) return FieldElement(field_, field_.data().add(v_, o.v_), RawTag{});
  FieldElement r;
  *r.r_ = *r_ + *o.r_;
  return r;
}

FieldElement FieldElement::operator-(const FieldElement& o) const {
  check_same(o);
  if (!r_) return FieldElement(field_, field_.data().sub(v_, o.v_), RawTag{});
  FieldElement r;
  *r.r_ = *r_ - *o.r_;
  return r;
}

FieldElement FieldElement::operator*(const FieldElement& o) const {
  check_same(o);
  if (!r_) return FieldElement(field_, field_.data().mul(v_, o.v_), RawTag{});
  FieldElement r;
  *r.r_ = *r_ * *o.r_;
  return r;
}

FieldElement FieldElement::inv() const {
  if (is_zero()) throw MathError("division by zero");
  if (!r_) return FieldElement(field_, field_.data().inv(v_), RawTag{});
  FieldElement r;
  *r.r_ = 1 / *r_;
  return r;
}

FieldElement FieldElement::operator/(const FieldElement& o) const {
  check_same(o);
  return *this * o.inv();
}

FieldElement FieldElement::operator-() const {
  if (!r_) return FieldElement(field_, field_.data().neg(v_), RawTag{});
  FieldElement r;
  *r.r_ = -*r_;
  return r;
}

FieldElement FieldElement::pow_u(std::uint64_t e) const {
  if (!r_) return FieldElement(field_, field_.data().pow(v_, e), RawTag{});
  FieldElement r = one(field_), b = *this;
  while (e) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

FieldElement FieldElement::pow(std::int64_t e) const {
  if (e < 0) return inv().pow_u(static_cast<u64>(-e));
  return pow_u(static_cast<u64>(e));
}

FieldElement FieldElement::frobenius() const {
  if (r_) return *this;
  return pow_u(field_.characteristic());
}

bool FieldElement::is_square() const {
  if (r_) throw ValidationError("is_square requires a finite field");
  return field_.data().is_square(v_);
}

bool FieldElement::sqrt(FieldElement& out) const {
  if (r_) {
    if (sgn(*r_) < 0) return false;
    mpz_class n = r_->get_num(), d = r_->get_den();
    mpz_class sn = ::sqrt(n), sd = ::sqrt(d);
    if (sn * sn != n || sd * sd != d) return false;
    out = FieldElement(field_, mpq_class(sn, sd));
    return true;
  }
  u64 r;
  if (!field_.data().sqrt(v_, r)) return false;
  out = from_index(field_, r);
  return true;
}

bool FieldElement::operator==(const FieldElement& o) const {
  if (field_ != o.field_) return false;
  if (r_) return *r_ == *o.r_;
  return v_ == o.v_;
}

bool FieldElement::operator<(const FieldElement& o) const {
  check_same(o);
  if (r_) return *r_ < *o.r_;
  return v_ < o.v_;
}

std::string FieldElement::to_string() const {
  if (r_) return r_->get_str();
  return std::to_string(v_);
}

int minimal_field_degree(const FieldElement& x) {
  const FieldSpec f = x.field();
  if (!f.is_finite()) return 1;
  FieldElement y = x.frobenius();
  int e = 1;
  while (y != x) {
    y = y.frobenius();
    ++e;
  }
  return e;
}

}  // namespace dp4kit
