#include "dp4kit/lattice.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

#include "dp4kit/error.hpp"
#include "dp4kit/matrix.hpp"

namespace dp4kit {

int pairing(const PicClass& a, const PicClass& b) {
  int s = a.d * b.d;
  for (int i = 0; i < 5; ++i) s -= a.m[i] * b.m[i];
  return s;
}

PicClass canonical_class() { return PicClass{-3, {-1, -1, -1, -1, -1}}; }

PicClass exceptional_E(int i) {
  if (i < 1 || i > 5) throw ValidationError("exceptional curve index must be in 1..5");
  PicClass c;
  c.m[i - 1] = -1;
  return c;
}

std::vector<PicClass> exceptional_classes() {
  const PicClass k = canonical_class();
  std::vector<PicClass> out;
  PicClass c;
  for (c.d = -3; c.d <= 3; ++c.d)
    for (c.m[0] = -2; c.m[0] <= 2; ++c.m[0])
      for (c.m[1] = -2; c.m[1] <= 2; ++c.m[1])
        for (c.m[2] = -2; c.m[2] <= 2; ++c.m[2])
          for (c.m[3] = -2; c.m[3] <= 2; ++c.m[3])
            for (c.m[4] = -2; c.m[4] <= 2; ++c.m[4])
              if (pairing(c, c) == -1 && pairing(c, k) == -1) out.push_back(c);
  std::sort(out.begin(), out.end());
  return out;
}

std::string to_string(const PicClass& c) {
  std::ostringstream os;
  os << "(" << c.d << ";";
  for (int i = 0; i < 5; ++i) os << (i ? "," : "") << c.m[i];
  os << ")";
  return os.str();
}

IntMatrix lambda_gram() {
  return {{-2, 1, 0, 0, 0}, {1, -2, 1, 0, 0}, {0, 1, -2, 1, 1}, {0, 0, 1, -2, 0}, {0, 0, 1, 0, -2}};
}

std::array<PicClass, 5> lambda_basis() {
  // Multiplicity convention: E_i has m_i = -1.
  return {PicClass{0, {-1, 1, 0, 0, 0}}, PicClass{0, {0, -1, 1, 0, 0}}, PicClass{0, {0, 0, -1, 1, 0}},
          PicClass{0, {0, 0, 0, -1, 1}}, PicClass{1, {1, 1, 1, 0, 0}}};
}

bool in_weyl_d5(const SignedPerm& w) {
  std::array<int, 5> seen{};
  for (int i = 0; i < 5; ++i) {
    if (w.perm[i] < 0 || w.perm[i] > 4 || seen[w.perm[i]]++) return false;
    if (w.sign[i] != 1 && w.sign[i] != -1) return false;
  }
  int neg = 0;
  for (int s : w.sign) neg += s < 0;
  return neg % 2 == 0;
}

std::vector<SignedPerm> weyl_group() {
  std::vector<SignedPerm> out;
  SignedPerm w;
  std::array<int, 5> p{0, 1, 2, 3, 4};
  do {
    for (int mask = 0; mask < 32; ++mask) {
      w.perm = p;
      for (int i = 0; i < 5; ++i) w.sign[i] = (mask >> (4 - i)) & 1 ? 1 : -1;
      if (in_weyl_d5(w)) out.push_back(w);
    }
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

IntMatrix signed_perm_matrix(const SignedPerm& w) {
  IntMatrix m(5, std::vector<long long>(5, 0));
  for (int i = 0; i < 5; ++i) m[w.perm[i]][i] = w.sign[i];
  return m;
}

namespace {

// Columns: the simple roots e1-e2, e2-e3, e3-e4, e4-e5, e4+e5.  With this
// choice the dot-product Gram matrix is -lambda_gram().
Matrix root_matrix(const FieldSpec& q) {
  const long long a[5][5] = {{1, 0, 0, 0, 0}, {-1, 1, 0, 0, 0}, {0, -1, 1, 0, 0}, {0, 0, -1, 1, 1}, {0, 0, 0, -1, 1}};
  Matrix m(q, 5, 5);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) m(i, j) = FieldElement(q, a[i][j]);
  return m;
}

Matrix to_q(const IntMatrix& a) {
  FieldSpec q = FieldSpec::rationals();
  Matrix m(q, a.size(), a.empty() ? 0 : a[0].size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j) m(i, j) = FieldElement(q, a[i][j]);
  return m;
}

IntMatrix to_int(const Matrix& m) {
  IntMatrix r(m.rows(), std::vector<long long>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const mpq_class& v = m(i, j).rational();
      if (v.get_den() != 1) throw MathError("non-integral lattice map");
      r[i][j] = v.get_num().get_si();
    }
  return r;
}

// Columns (K, beta_1..beta_5) in coordinates (d, m_1..m_5).
Matrix pic_basis_matrix() {
  FieldSpec q = FieldSpec::rationals();
  Matrix t(q, 6, 6);
  std::vector<PicClass> cols{canonical_class()};
  for (const auto& b : lambda_basis()) cols.push_back(b);
  for (int j = 0; j < 6; ++j) {
    t(0, j) = FieldElement(q, cols[j].d);
    for (int i = 0; i < 5; ++i) t(1 + i, j) = FieldElement(q, cols[j].m[i]);
  }
  return t;
}

}  // namespace

IntMatrix weyl_matrix_lambda(const SignedPerm& w) {
  if (!in_weyl_d5(w)) throw ValidationError("signed permutation is not in W(D5)");
  FieldSpec q = FieldSpec::rationals();
  Matrix a = root_matrix(q);
  return to_int(a.inverse() * to_q(signed_perm_matrix(w)) * a);
}

IntMatrix weyl_matrix_pic(const SignedPerm& w) {
  FieldSpec q = FieldSpec::rationals();
  IntMatrix wl = weyl_matrix_lambda(w);
  Matrix blk = Matrix::identity(q, 6);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) blk(1 + i, 1 + j) = FieldElement(q, wl[i][j]);
  Matrix t = pic_basis_matrix();
  return to_int(t * blk * t.inverse());
}

std::array<long long, 5> weyl_act(const SignedPerm& w, const std::array<long long, 5>& v) {
  IntMatrix m = weyl_matrix_lambda(w);
  std::array<long long, 5> r{};
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) r[i] += m[i][j] * v[j];
  return r;
}

PicClass weyl_act(const SignedPerm& w, const PicClass& c) {
  IntMatrix m = weyl_matrix_pic(w);
  std::array<long long, 6> v{c.d, c.m[0], c.m[1], c.m[2], c.m[3], c.m[4]};
  std::array<long long, 6> r{};
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) r[i] += m[i][j] * v[j];
  PicClass out;
  out.d = static_cast<int>(r[0]);
  for (int i = 0; i < 5; ++i) out.m[i] = static_cast<int>(r[1 + i]);
  return out;
}

std::vector<PicClass> weyl_orbit(const PicClass& c) {
  std::set<PicClass> s;
  for (const auto& w : weyl_group()) s.insert(weyl_act(w, c));
  return {s.begin(), s.end()};
}

std::vector<long long> smith_invariants(const IntMatrix& in) {
  const std::size_t r = in.size(), c = r ? in[0].size() : 0;
  std::vector<std::vector<mpz_class>> a(r, std::vector<mpz_class>(c));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) a[i][j] = static_cast<long>(in[i][j]);
  const std::size_t n = std::min(r, c);
  for (std::size_t t = 0; t < n; ++t) {
    while (true) {
      // Pivot: smallest nonzero absolute value in the remaining block.
      std::size_t pi = r, pj = c;
      for (std::size_t i = t; i < r; ++i)
        for (std::size_t j = t; j < c; ++j)
          if (a[i][j] != 0 && (pi == r || abs(a[i][j]) < abs(a[pi][pj]))) {
            pi = i;
            pj = j;
          }
      if (pi == r) break;
      std::swap(a[t], a[pi]);
      for (auto& row : a) std::swap(row[t], row[pj]);
      bool clean = true;
      for (std::size_t i = t + 1; i < r; ++i) {
        mpz_class q = a[i][t] / a[t][t];
        for (std::size_t j = t; j < c; ++j) a[i][j] -= q * a[t][j];
        if (a[i][t] != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < c; ++j) {
        mpz_class q = a[t][j] / a[t][t];
        for (std::size_t i = t; i < r; ++i) a[i][j] -= q * a[i][t];
        if (a[t][j] != 0) clean = false;
      }
      if (!clean) continue;
      // Divisibility: fold any entry not divisible by the pivot into row t.
      bool divisible = true;
      for (std::size_t i = t + 1; i < r && divisible; ++i)
        for (std::size_t j = t + 1; j < c; ++j)
          if (a[i][j] % a[t][t] != 0) {
            for (std::size_t k = t; k < c; ++k) a[t][k] += a[i][k];
            divisible = false;
            break;
          }
      if (divisible) break;
    }
  }
  std::vector<long long> d;
  for (std::size_t t = 0; t < n; ++t) d.push_back(mpz_class(abs(a[t][t])).get_si());
  std::stable_partition(d.begin(), d.end(), [](long long x) { return x != 0; });
  return d;
}

std::string DiscriminantGroup::name() const {
  if (invariants.empty()) return "0";
  std::string s;
  for (std::size_t i = 0; i < invariants.size(); ++i) s += (i ? " x Z/" : "Z/") + std::to_string(invariants[i]);
  return s;
}

DiscriminantGroup discriminant_group(const IntMatrix& gram) {
  for (const auto& row : gram)
    if (row.size() != gram.size()) throw ValidationError("Gram matrix must be square");
  DiscriminantGroup g;
  for (long long d : smith_invariants(gram)) {
    if (d == 0) throw MathError("singular Gram matrix");
    if (d > 1) {
      g.invariants.push_back(d);
      g.order *= d;
    }
  }
  return g;
}

void validate(const GramTable& t) {
  const std::size_t n = t.labels.size();
  if (n == 0) throw ValidationError("Gram table has no labels");
  if (t.gram.size() != n) throw ValidationError("Gram matrix size does not match labels");
  for (std::size_t i = 0; i < n; ++i) {
    if (t.gram[i].size() != n) throw ValidationError("Gram matrix must be square");
    for (std::size_t j = 0; j < n; ++j)
      if (t.gram[i][j] != t.gram[j][i]) throw ValidationError("Gram matrix must be symmetric");
  }
  std::set<std::string> seen(t.labels.begin(), t.labels.end());
  if (seen.size() != n) throw ValidationError("duplicate Gram table label");
}

std::vector<long long> parse_class_expr(const GramTable& t, const std::string& expr) {
  validate(t);
  std::vector<long long> coef(t.labels.size(), 0);
  std::size_t i = 0;
  auto skip = [&] {
    while (i < expr.size() && std::isspace(static_cast<unsigned char>(expr[i]))) ++i;
  };
  bool first = true;
  skip();
  if (i == expr.size()) throw ValidationError("empty class expression");
  while (i < expr.size()) {
    long long sign = 1;
    skip();
    if (i < expr.size() && (expr[i] == '+' || expr[i] == '-')) {
      if (expr[i] == '-') sign = -1;
      ++i;
    } else if (!first) {
      throw ValidationError("expected '+' or '-' at position " + std::to_string(i));
    }
    first = false;
    skip();
    long long k = 1;
    if (i < expr.size() && std::isdigit(static_cast<unsigned char>(expr[i]))) {
      k = 0;
      while (i < expr.size() && std::isdigit(static_cast<unsigned char>(expr[i]))) k = 10 * k + (expr[i++] - '0');
      skip();
      if (i < expr.size() && expr[i] == '*') ++i;
      skip();
    }
    // Longest label match.
    std::size_t best = t.labels.size(), blen = 0;
    for (std::size_t l = 0; l < t.labels.size(); ++l) {
      const auto& lab = t.labels[l];
      if (lab.size() > blen && expr.compare(i, lab.size(), lab) == 0) {
        best = l;
        blen = lab.size();
      }
    }
    if (best == t.labels.size()) throw ValidationError("unknown label at position " + std::to_string(i) + " in '" + expr + "'");
    i += blen;
    coef[best] += sign * k;
    skip();
  }
  return coef;
}

long long gram_pair(const GramTable& t, const std::vector<long long>& a, const std::vector<long long>& b) {
  long long s = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) s += a[i] * t.gram[i][j] * b[j];
  return s;
}

ClassReport k3_class_arith(const GramTable& t, const std::vector<long long>& coefficients) {
  validate(t);
  if (coefficients.size() != t.labels.size()) throw ValidationError("coefficient vector has the wrong length");
  ClassReport r;
  r.coefficients = coefficients;
  r.self_intersection = gram_pair(t, coefficients, coefficients);
  for (std::size_t j = 0; j < t.labels.size(); ++j) {
    std::vector<long long> e(t.labels.size(), 0);
    e[j] = 1;
    r.pairings.push_back(gram_pair(t, coefficients, e));
  }
  if (r.self_intersection % 2 == 0) r.genus = 1 + r.self_intersection / 2;
  return r;
}

ClassReport k3_class_arith(const GramTable& t, const std::string& expr) {
  return k3_class_arith(t, parse_class_expr(t, expr));
}

}  // namespace dp4kit
