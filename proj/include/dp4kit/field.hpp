#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace dp4kit {

enum class FieldKind { rationals, prime, extension };

namespace detail {

// Arithmetic kernel of a finite field F_q, q = p^k.  Elements are packed
// integers sum c_i p^i where c_0..c_{k-1} are the coordinates in the power
// basis of F_p[x]/(modulus).
struct FieldData {
  FieldKind kind = FieldKind::rationals;
  std::uint64_t p = 0;
  int k = 0;
  std::uint64_t q = 0;
  std::vector<std::uint64_t> modulus;  // monic, low-to-high, size k+1
  std::vector<std::uint64_t> ppow;     // p^0 .. p^k
  std::vector<std::uint32_t> log_;     // only for small q
  std::vector<std::uint64_t> exp_;     // length 2(q-1)
  std::uint64_t nonresidue = 0;
  std::uint64_t two_adic_s = 0, two_adic_m = 0;  // q-1 = 2^s m

  bool finite() const { return kind != FieldKind::rationals; }

  std::uint64_t add(std::uint64_t a, std::uint64_t b) const;
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const;
  std::uint64_t neg(std::uint64_t a) const;
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const;
  std::uint64_t inv(std::uint64_t a) const;
  std::uint64_t pow(std::uint64_t a, std::uint64_t e) const;
  std::uint64_t from_int(std::int64_t v) const;
  std::uint64_t from_mpz(const mpz_class& v) const;
  bool is_square(std::uint64_t a) const;
  // Returns false if a is not a square.
  bool sqrt(std::uint64_t a, std::uint64_t& r) const;
  std::uint64_t frobenius(std::uint64_t a) const { return pow(a, p); }
  void unpack(std::uint64_t a, std::uint64_t* digits) const;
  std::uint64_t pack(const std::uint64_t* digits) const;

 private:
  std::uint64_t mul_slow(std::uint64_t a, std::uint64_t b) const;
};

}  // namespace detail

// Handle to a field.  Fields are interned: two specs compare equal exactly
// when they refer to the same (kind, p, k).
class FieldSpec {
 public:
  FieldSpec();  // the rationals
  static FieldSpec rationals();
  static FieldSpec prime(std::uint64_t p);
  static FieldSpec extension(std::uint64_t p, int k);

  FieldKind kind() const { return d_->kind; }
  bool is_finite() const { return d_->finite(); }
  bool is_rationals() const { return !d_->finite(); }
  std::uint64_t characteristic() const { return d_->p; }
  int degree() const { return d_->k; }
  std::uint64_t order() const;
  const std::vector<std::uint64_t>& modulus() const { return d_->modulus; }
  FieldSpec prime_subfield() const;
  // The degree-m extension of this finite field.
  FieldSpec extend(int m) const;
  std::string name() const;

  const detail::FieldData& data() const { return *d_; }
  const detail::FieldData* ptr() const { return d_; }
  bool operator==(const FieldSpec& o) const { return d_ == o.d_; }
  bool operator!=(const FieldSpec& o) const { return d_ != o.d_; }

 private:
  explicit FieldSpec(const detail::FieldData* d) : d_(d) {}
  const detail::FieldData* d_;
};

// k = 1 with kind prime; k >= 1 with kind extension (k = 1 normalises to prime).
FieldSpec field_build(FieldKind kind, std::uint64_t p = 0, int k = 1);

bool is_prime_u64(std::uint64_t n);

class FieldElement {
 public:
  FieldElement();  // 0 in Q
  FieldElement(const FieldSpec& f, std::int64_t v);
  FieldElement(const FieldSpec& f, const mpq_class& v);  // v must be integral for finite fields
  FieldElement(const FieldElement& o);
  FieldElement(FieldElement&& o) noexcept = default;
  FieldElement& operator=(const FieldElement& o);
  FieldElement& operator=(FieldElement&& o) noexcept = default;
  ~FieldElement() = default;

  static FieldElement from_index(const FieldSpec& f, std::uint64_t idx);
  static FieldElement zero(const FieldSpec& f) { return FieldElement(f, 0); }
  static FieldElement one(const FieldSpec& f) { return FieldElement(f, 1); }
  // Decimal string; "a/b" for rationals; for F_{p^k} the packed index.
  static FieldElement parse(const FieldSpec& f, std::string_view s);

  FieldSpec field() const { return field_; }
  bool is_zero() const;
  bool is_one() const;
  std::uint64_t index() const { return v_; }
  const mpq_class& rational() const;
  std::vector<std::uint64_t> coordinates() const;

  FieldElement operator+(const FieldElement& o) const;
  FieldElement operator-(const FieldElement& o) const;
  FieldElement operator*(const FieldElement& o) const;
  FieldElement operator/(const FieldElement& o) const;
  FieldElement operator-() const;
  FieldElement& operator+=(const FieldElement& o) { return *this = *this + o; }
  FieldElement& operator-=(const FieldElement& o) { return *this = *this - o; }
  FieldElement& operator*=(const FieldElement& o) { return *this = *this * o; }
  FieldElement& operator/=(const FieldElement& o) { return *this = *this / o; }
  FieldElement inv() const;
  FieldElement pow(std::int64_t e) const;
  FieldElement pow_u(std::uint64_t e) const;
  FieldElement frobenius() const;
  bool is_square() const;  // finite fields only
  bool sqrt(FieldElement& out) const;

  bool operator==(const FieldElement& o) const;
  bool operator!=(const FieldElement& o) const { return !(*this == o); }
  // Total order within one field (index order, or numeric for Q).
  bool operator<(const FieldElement& o) const;

  std::string to_string() const;

 private:
  struct RawTag {};
  FieldElement(const FieldSpec& f, std::uint64_t v, RawTag) : field_(f), v_(v) {}
  void check_same(const FieldElement& o) const;
  FieldSpec field_;
  std::uint64_t v_ = 0;
  std::unique_ptr<mpq_class> r_;
};

// Smallest e >= 1 with x^(q^e) = x, q the order of the prime subfield.
int minimal_field_degree(const FieldElement& x);

// Embedding of F_{p^a} into F_{p^b}, a | b.  The generator maps to the
// smallest-index root of the source modulus.
class FieldEmbedding {
 public:
  FieldEmbedding(const FieldSpec& src, const FieldSpec& dst);
  const FieldSpec& source() const { return src_; }
  const FieldSpec& target() const { return dst_; }
  FieldElement operator()(const FieldElement& x) const;
  // Inverse on the image; throws MathError if x is not in the image.
  FieldElement pull_back(const FieldElement& x) const;
  bool in_image(const FieldElement& x) const;

 private:
  FieldSpec src_, dst_;
  std::vector<FieldElement> gpow_;        // images of x^i
  bool identity_ = false;
};

}  // namespace dp4kit
