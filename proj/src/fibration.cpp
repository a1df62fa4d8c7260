#include "dp4kit/fibration.hpp"

#include <algorithm>
#include <sstream>

#include "dp4kit/error.hpp"
#include "dp4kit/rng.hpp"

namespace dp4kit {

SplittingType::SplittingType(std::vector<int> v) : a(std::move(v)) { std::sort(a.begin(), a.end()); }

int SplittingType::degree() const {
  int s = 0;
  for (int x : a) s += x;
  return s;
}

std::string SplittingType::to_string() const {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < a.size(); ++i) os << (i ? "," : "") << a[i];
  os << ")";
  return os.str();
}

SplittingType sym2(const SplittingType& s) {
  std::vector<int> out;
  for (std::size_t i = 0; i < s.a.size(); ++i)
    for (std::size_t j = i; j < s.a.size(); ++j) out.push_back(s.a[i] + s.a[j]);
  return SplittingType(out);
}

SplittingType twist(const SplittingType& s, int m) {
  std::vector<int> out = s.a;
  for (int& x : out) x += m;
  return SplittingType(out);
}

int h0(const SplittingType& s) {
  int t = 0;
  for (int x : s.a) t += std::max(0, x + 1);
  return t;
}

int height_from_splitting(const SplittingType& s) {
  if (s.rank() != 5) throw ValidationError("height needs a rank-5 splitting type");
  return -2 * s.degree();
}

CaseSpec parse_case(int case_no, const std::string& parity, int n) {
  if (case_no < 1 || case_no > 5) throw ValidationError("case must be in 1..5");
  CaseSpec c;
  c.case_no = case_no;
  c.n = n;
  if (parity == "even" || parity == "0") {
    c.parity = 0;
  } else if (parity == "odd" || parity == "1") {
    c.parity = 1;
  } else {
    throw ValidationError("parity must be even or odd");
  }
  return c;
}

CaseSplitting case_splitting(const CaseSpec& c) {
  if (c.case_no < 1 || c.case_no > 5 || (c.parity != 0 && c.parity != 1))
    throw ValidationError("invalid case specification");
  const int r = c.linear_forms();
  std::vector<int> v(5, 0);
  for (int i = 0; i < r; ++i) v[i] = 1;
  CaseSplitting out;
  out.V = SplittingType(v);
  out.alpha = -(2 * c.n + r + c.parity);
  out.W = twist(out.V, out.alpha);
  out.degree = out.W.degree();
  out.height = height_from_splitting(out.W);
  return out;
}

int case_height_formula(const CaseSpec& c) {
  static const int offsets[5][2] = {{0, 10}, {8, 18}, {16, 26}, {24, 34}, {32, 42}};
  return 20 * c.n + offsets[c.case_no - 1][c.parity];
}

bool is_special_case(const CaseSpec& c) {
  if (c.n != -1) return false;
  return (c.case_no == 3 && c.parity == 1) || c.case_no == 4 || c.case_no == 5;
}

bool is_constructible(const CaseSpec& c) {
  if (c.case_no < 1 || c.case_no > 5 || (c.parity != 0 && c.parity != 1)) return false;
  return c.n >= 0 || is_special_case(c);
}

NumerologyReport numerology(int h, int h11) {
  if (h < 0 || h % 2) throw ValidationError("height must be even and nonnegative");
  if (h11 < 2) throw ValidationError("h11 must be at least 2");
  NumerologyReport r;
  r.h = h;
  r.delta = 2 * h;
  r.chi = 16 - 2 * h;
  r.chi_omega1 = h - 7;
  r.params = 3 * h / 2 - 1;
  r.h11 = h11;
  r.h12 = h + h11 - 7;
  return r;
}

namespace {

// binom(b + 4, 4) as a polynomial in b.
long long c4(long long b) { return (b + 4) * (b + 3) * (b + 2) * (b + 1) / 24; }

long long binom(long long n, long long k) {
  if (k < 0 || n < k) return 0;
  long long r = 1;
  for (long long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

long long chi_OP(long long a, long long b) { return (a + 1) * c4(b); }

long long chi_Omega1P(long long a, long long b) {
  return (a - 1) * c4(b) + (5 * c4(b - 1) - c4(b)) * (a + 1);
}

KoszulChi chi_via_koszul(int n, int h11) {
  if (n < 1) throw ValidationError("chi_via_koszul needs n >= 1");
  auto chi_OX = [n](long long a, long long b) {
    return chi_OP(a, b) - 2 * chi_OP(a - n, b - 2) + chi_OP(a - 2 * n, b - 4);
  };
  auto chi_OmPX = [n](long long a, long long b) {
    return chi_Omega1P(a, b) - 2 * chi_Omega1P(a - n, b - 2) + chi_Omega1P(a - 2 * n, b - 4);
  };
  KoszulChi k;
  k.chi_O = chi_OX(0, 0);
  k.chi_omega1 = chi_OmPX(0, 0) - 2 * chi_OX(-n, -2);
  // Serre duality: chi(Omega^2) = -chi(Omega^1), chi(Omega^3) = -chi(O).
  k.chi_top = 2 * k.chi_O - 2 * k.chi_omega1;
  k.h2_omega1 = k.chi_omega1 + h11;
  return k;
}

long long rr_quartic_count(long long deg, long long genus, long long k) {
  return binom(k + 3, 3) - (k * deg + 1 - genus);
}

SectionCountRow section_count_table(int d) {
  if (d < 0) throw ValidationError("section degree must be nonnegative");
  SectionCountRow r;
  r.d = d;
  if (d > 0) r.secancy = 2 * d - 1;
  r.params = d + 1;
  return r;
}

std::vector<ExpectedDimRow> expected_dims_high_height() {
  auto pgl = [](int n) { return n * n - 1; };
  std::vector<ExpectedDimRow> rows;
  for (int m = 0; m <= 3; ++m) {
    ExpectedDimRow r;
    r.m = m;
    r.h = 14 + 2 * m;
    r.ambient = 7 - m;
    r.y_degree = 10 - 2 * m;
    r.contracted_sections = 1 << (m + 1);
    r.params = 3 * r.h / 2 - 1;
    rows.push_back(r);
  }
  // Three quadrics in P^6 with 4 nodes.
  const int q6 = static_cast<int>(binom(8, 2));
  rows[1].y_dim = 3 * (q6 - 3) - pgl(7) - 4;
  rows[1].y_formula = "dim Gr(3,H0(O_P6(2))) - dim PGL7 - 4";
  // Quadric and cubic in P^5 with 8 nodes; cubics modulo the quadric times linear forms.
  const int quad = static_cast<int>(binom(7, 2)) - 1;
  const int cub = static_cast<int>(binom(8, 3) - 6) - 1;
  rows[2].y_dim = quad + cub - pgl(6) - 8;
  rows[2].y_formula = "dim P(H0(O_P5(2))) + dim P(H0(O_P5(3))/Q.H0(O_P5(1))) - dim PGL6 - 8";
  // Quartic threefolds with 16 nodes, counted on H0(O_P4(4)) as in the source count.
  rows[3].y_dim = static_cast<int>(binom(8, 4)) - pgl(5) - 16;
  rows[3].y_formula = "dim H0(O_P4(4)) - dim PGL5 - 16";
  rows[3].family_dim = 2 * (2 * 15 - 2) - (3 + 24);
  return rows;
}

// ---------------------------------------------------------------------------
// Models

std::vector<std::string> model_vars(int N) {
  std::vector<std::string> v{"t0", "t1"};
  for (int i = 0; i <= N; ++i) v.push_back("x" + std::to_string(i));
  return v;
}

std::vector<MultiPoly> FibrationModel::forms() const {
  std::vector<MultiPoly> f = linear;
  f.push_back(qa);
  f.push_back(qb);
  return f;
}

int FibrationModel::discriminant_degree() const {
  int w = 0;
  for (int x : weights) w += x;
  return 20 * (deg_a + deg_b) + 16 * (static_cast<int>(linear.size()) + w);
}

FibrationModel embed_model(const FibrationModel& m, const FieldEmbedding& e) {
  if (e.source() != m.field) throw ValidationError("embedding source differs from the model field");
  FibrationModel r = m;
  r.field = e.target();
  auto f = [&](const FieldElement& x) { return e(x); };
  for (auto& l : r.linear) l = l.map(r.field, f);
  r.qa = m.qa.map(r.field, f);
  r.qb = m.qb.map(r.field, f);
  return r;
}

namespace {

std::vector<std::size_t> t_idx() { return {0, 1}; }

std::vector<std::size_t> x_idx(int N) {
  std::vector<std::size_t> v;
  for (int i = 0; i <= N; ++i) v.push_back(2 + i);
  return v;
}

// Every term of a quadratic form must be x_i x_j times a t-monomial of
// degree w_i + w_j + b.
void check_quadric(const MultiPoly& q, int N, const std::vector<int>& w, int b, const char* name) {
  for (const auto& [mono, c] : q.terms()) {
    int xd = 0, wt = 0;
    for (int i = 0; i <= N; ++i) {
      xd += mono[2 + i];
      wt += mono[2 + i] * w[i];
    }
    if (xd != 2 || mono[0] + mono[1] != wt + b)
      throw ValidationError(std::string(name) + " has a term of the wrong bidegree");
  }
}

}  // namespace

void validate_model(const FibrationModel& m) {
  if (!m.field.is_finite()) throw ValidationError("models live over finite fields");
  if (m.N < 4 || m.N > 8) throw ValidationError("ambient P^N needs N in 4..8");
  if (static_cast<int>(m.weights.size()) != m.N + 1) throw ValidationError("weights must have N+1 entries");
  if (static_cast<int>(m.linear.size()) != m.N - 4)
    throw ValidationError("a model in P^1 x P^N needs N - 4 linear forms");
  const auto vars = model_vars(m.N);
  for (const auto* f : {&m.qa, &m.qb})
    if (f->vars() != vars || f->field() != m.field) throw ValidationError("form ring mismatch");
  for (const auto& l : m.linear) {
    if (l.vars() != vars || l.field() != m.field) throw ValidationError("form ring mismatch");
    if (!l.is_homogeneous_in(t_idx(), 1) || !l.is_homogeneous_in(x_idx(m.N), 1))
      throw ValidationError("linear forms must have bidegree (1,1)");
  }
  if (!m.linear.empty() && m.weights != std::vector<int>(m.N + 1, 0))
    throw ValidationError("weighted coordinates are only used without linear forms");
  for (int w : m.weights)
    if (w < 0) throw ValidationError("weights must be nonnegative");
  check_quadric(m.qa, m.N, m.weights, m.deg_a, "first quadratic form");
  check_quadric(m.qb, m.N, m.weights, m.deg_b, "second quadratic form");
}

namespace {

// Powers t0^i t1^j are looked up from small tables.
struct TPowers {
  Vec p0, p1;
  TPowers(const FieldElement& t0, const FieldElement& t1, int maxdeg) {
    const FieldSpec f = t0.field();
    p0.push_back(FieldElement::one(f));
    p1.push_back(FieldElement::one(f));
    for (int i = 1; i <= maxdeg; ++i) {
      p0.push_back(p0.back() * t0);
      p1.push_back(p1.back() * t1);
    }
  }
  FieldElement at(int i, int j) const { return p0[i] * p1[j]; }
};

int max_t_degree(const FibrationModel& m) {
  int d = 1;
  for (const auto* f : {&m.qa, &m.qb})
    for (const auto& [mono, c] : f->terms()) d = std::max(d, mono[0] + mono[1]);
  return d;
}

void require_field(const FibrationModel& m, const FieldElement& t0, const FieldElement& t1) {
  if (t0.field() != m.field || t1.field() != m.field)
    throw ValidationError("base point must lie in the model field (embed the model first)");
  if (t0.is_zero() && t1.is_zero()) throw ValidationError("[0:0] is not a point of P^1");
}

Matrix quadric_at(const MultiPoly& q, int N, const TPowers& tp) {
  const FieldSpec f = q.field();
  Matrix a(f, N + 1, N + 1);
  const FieldElement half = FieldElement::one(f) / FieldElement(f, 2);
  for (const auto& [mono, c] : q.terms()) {
    int i = -1, j = -1;
    for (int k = 0; k <= N; ++k)
      for (int e = 0; e < mono[2 + k]; ++e) (i < 0 ? i : j) = k;
    FieldElement v = c * tp.at(mono[0], mono[1]);
    if (i == j) {
      a(i, i) += v;
    } else {
      v *= half;
      a(i, j) += v;
      a(j, i) += v;
    }
  }
  return a;
}

Matrix linear_at(const std::vector<MultiPoly>& ls, int N, const FieldElement& t0, const FieldElement& t1) {
  const FieldSpec f = t0.field();
  Matrix l(f, ls.size(), N + 1);
  for (std::size_t r = 0; r < ls.size(); ++r)
    for (const auto& [mono, c] : ls[r].terms()) {
      int k = 0;
      while (mono[2 + k] == 0) ++k;
      l(r, k) += c * (mono[0] ? t0 : t1);
    }
  return l;
}

}  // namespace

BinaryForm fiber_quintic(const FibrationModel& m, const FieldElement& t0, const FieldElement& t1) {
  require_field(m, t0, t1);
  const FieldSpec f = m.field;
  TPowers tp(t0, t1, max_t_degree(m));
  Matrix A = quadric_at(m.qa, m.N, tp), B = quadric_at(m.qb, m.N, tp);
  Matrix L = linear_at(m.linear, m.N, t0, t1);
  const std::size_t n = m.N + 1, r = m.linear.size();
  std::vector<std::vector<UniPoly>> M(n + r, std::vector<UniPoly>(n + r, UniPoly(f)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) M[i][j] = UniPoly(f, Vec{B(i, j), A(i, j)});
  for (std::size_t k = 0; k < r; ++k)
    for (std::size_t j = 0; j < n; ++j) {
      M[n + k][j] = UniPoly::constant(f, L(k, j));
      M[j][n + k] = UniPoly::constant(f, L(k, j));
    }
  UniPoly d = det_poly_matrix(M);
  if (d.degree() > 5) throw MathError("fiber determinant has degree above 5");
  return BinaryForm::from_dehomogenized(d, 5);
}

namespace {

FieldElement delta_at(const FibrationModel& m, const FieldElement& t0, const FieldElement& t1) {
  BinaryForm q = fiber_quintic(m, t0, t1);
  if (q.is_zero()) return FieldElement::zero(m.field);
  return discriminant_binary(q);
}

}  // namespace

DiscriminantProfile discriminant_profile(const FibrationModel& m) {
  validate_model(m);
  DiscriminantProfile out;
  const int D = m.discriminant_degree();
  out.expected_degree = D;
  if (D < 0) throw ValidationError("model has negative discriminant degree");
  // D + 1 distinct affine values in each chart.
  int ext = 1;
  const std::uint64_t q = m.field.order();
  long double size = static_cast<long double>(q);
  while (size < D + 1) {
    size *= static_cast<long double>(q);
    ++ext;
  }
  out.extension_degree = ext;
  const FieldSpec F = ext == 1 ? m.field : m.field.extend(ext);
  FieldEmbedding emb(m.field, F);
  const FibrationModel me = ext == 1 ? m : embed_model(m, emb);
  Vec xs, ya, yb;
  const FieldElement one = FieldElement::one(F);
  for (int i = 0; i <= D; ++i) {
    FieldElement x = FieldElement::from_index(F, static_cast<std::uint64_t>(i));
    xs.push_back(x);
    ya.push_back(delta_at(me, x, one));
    yb.push_back(delta_at(me, one, x));
  }
  auto pull = [&](const UniPoly& g) {
    if (ext == 1) return g;
    return g.map(m.field, [&](const FieldElement& c) { return emb.pull_back(c); });
  };
  UniPoly ga = pull(interpolate(xs, ya)), gb = pull(interpolate(xs, yb));
  out.delta = UniPoly(ga.field(), ga.coeffs(), "t");
  out.nonzero = !ga.is_zero();
  if (!out.nonzero) return out;
  int ord = 0;
  while (gb.coeff(ord).is_zero()) ++ord;
  out.ord_infinity = ord;
  out.projective_degree = ga.degree() + ord;
  out.squarefree = (ga.degree() < 1 || is_squarefree(ga)) && ord <= 1;
  return out;
}

namespace {

FieldElement rand_el(const FieldSpec& f, Rng& rng) { return FieldElement::from_index(f, rng.below(f.order())); }

MultiPoly random_quadric(const FieldSpec& f, int N, const std::vector<int>& w, int b, Rng& rng) {
  const auto vars = model_vars(N);
  MultiPoly q(f, vars);
  for (int i = 0; i <= N; ++i)
    for (int j = i; j <= N; ++j) {
      const int e = w[i] + w[j] + b;
      for (int k = 0; k <= e; ++k) {
        Monomial mono(vars.size(), 0);
        mono[0] = e - k;
        mono[1] = k;
        mono[2 + i] += 1;
        mono[2 + j] += 1;
        q.add_term(mono, rand_el(f, rng));
      }
    }
  return q;
}

MultiPoly random_linear(const FieldSpec& f, int N, Rng& rng) {
  const auto vars = model_vars(N);
  MultiPoly l(f, vars);
  for (int i = 0; i <= N; ++i)
    for (int k = 0; k < 2; ++k) {
      Monomial mono(vars.size(), 0);
      mono[k] = 1;
      mono[2 + i] = 1;
      l.add_term(mono, rand_el(f, rng));
    }
  return l;
}

}  // namespace

FibrationModel generate_model(const CaseSpec& c, const FieldSpec& f, std::uint64_t seed, int max_attempts) {
  if (!f.is_finite()) throw ValidationError("model generation needs a finite field");
  if (f.characteristic() == 2) throw ValidationError("characteristic 2 is not supported");
  if (!is_constructible(c))
    throw ValidationError("no construction for case " + std::to_string(c.case_no) + " " + c.parity_name() +
                          " n=" + std::to_string(c.n));
  FibrationModel m;
  m.spec = c;
  m.field = f;
  m.seed = seed;
  m.alpha = case_splitting(c).alpha;
  const int r = c.linear_forms();
  if (is_special_case(c)) {
    m.N = 4;
    m.weights.assign(5, 0);
    for (int i = 0; i < r; ++i) m.weights[i] = 1;
    m.deg_a = -1;
    m.deg_b = c.parity ? 0 : -1;
  } else {
    m.N = 4 + r;
    m.weights.assign(m.N + 1, 0);
    m.deg_a = c.n;
    m.deg_b = c.n + c.parity;
  }
  Rng rng(seed);
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    m.linear.clear();
    if (!is_special_case(c))
      for (int i = 0; i < r; ++i) m.linear.push_back(random_linear(f, m.N, rng));
    m.qa = random_quadric(f, m.N, m.weights, m.deg_a, rng);
    m.qb = random_quadric(f, m.N, m.weights, m.deg_b, rng);
    DiscriminantProfile d = discriminant_profile(m);
    if (d.nonzero && d.squarefree && d.projective_degree == d.expected_degree) {
      m.retries = attempt;
      return m;
    }
  }
  throw MathError("retry budget exhausted: no model with squarefree discriminant after " +
                  std::to_string(max_attempts) + " attempts");
}

Matrix fiber_frame(const FibrationModel& m, const FieldElement& t0, const FieldElement& t1) {
  require_field(m, t0, t1);
  if (m.linear.empty()) return Matrix::identity(m.field, 5);
  Matrix L = linear_at(m.linear, m.N, t0, t1);
  std::vector<Vec> ker = L.kernel();
  if (ker.size() != 5)
    throw MathError("linear forms are dependent at t = [" + t0.to_string() + ":" + t1.to_string() + "]");
  Matrix K(m.field, m.N + 1, 5);
  for (std::size_t j = 0; j < 5; ++j)
    for (int i = 0; i <= m.N; ++i) K(i, j) = ker[j][i];
  return K;
}

std::pair<Matrix, Matrix> quadrics_at(const FibrationModel& m, const FieldElement& t0, const FieldElement& t1) {
  require_field(m, t0, t1);
  TPowers tp(t0, t1, max_t_degree(m));
  return {quadric_at(m.qa, m.N, tp), quadric_at(m.qb, m.N, tp)};
}

Matrix linear_forms_at(const FibrationModel& m, const FieldElement& t0, const FieldElement& t1) {
  require_field(m, t0, t1);
  return linear_at(m.linear, m.N, t0, t1);
}

QuadricPencil fiber_at(const FibrationModel& m, const FieldElement& t0, const FieldElement& t1) {
  Matrix K = fiber_frame(m, t0, t1);
  TPowers tp(t0, t1, max_t_degree(m));
  Matrix A = quadric_at(m.qa, m.N, tp), B = quadric_at(m.qb, m.N, tp);
  Matrix Kt = K.transpose();
  return QuadricPencil{Kt * A * K, Kt * B * K};
}

// ---------------------------------------------------------------------------
// Sections

bool SectionCandidate::operator<(const SectionCandidate& o) const {
  if (degree != o.degree) return degree < o.degree;
  return coeffs < o.coeffs;
}

std::string SectionCandidate::to_string() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    if (j) os << " : ";
    MultiPoly p(field, {"t0", "t1"});
    const int deg = static_cast<int>(coeffs[j].size()) - 1;
    for (int k = 0; k <= deg; ++k) p.add_term({deg - k, k}, coeffs[j][k]);
    os << p.to_string();
  }
  os << "]";
  return os.str();
}

namespace {

std::vector<MultiPoly> section_images(const FibrationModel& m, const SectionCandidate& s) {
  const auto vars = model_vars(m.N);
  std::vector<MultiPoly> img;
  img.push_back(MultiPoly::variable(s.field, vars, 0));
  img.push_back(MultiPoly::variable(s.field, vars, 1));
  for (int j = 0; j <= m.N; ++j) {
    MultiPoly p(s.field, vars);
    const int deg = static_cast<int>(s.coeffs[j].size()) - 1;
    for (int k = 0; k <= deg; ++k) {
      Monomial mono(vars.size(), 0);
      mono[0] = deg - k;
      mono[1] = k;
      p.add_term(mono, s.coeffs[j][k]);
    }
    img.push_back(p);
  }
  return img;
}

}  // namespace

bool verify_section(const FibrationModel& m, const SectionCandidate& s) {
  if (static_cast<int>(s.coeffs.size()) != m.N + 1) throw ValidationError("section has the wrong number of coordinates");
  for (int j = 0; j <= m.N; ++j) {
    const int deg = s.degree - m.weights[j];
    if (static_cast<int>(s.coeffs[j].size()) != std::max(0, deg + 1))
      throw ValidationError("section coordinate has the wrong degree");
  }
  const FibrationModel me = s.field == m.field ? m : embed_model(m, FieldEmbedding(m.field, s.field));
  const auto img = section_images(me, s);
  for (const auto& f : me.forms())
    if (!f.substitute(img).is_zero()) return false;
  return true;
}

bool content_free(const SectionCandidate& s) {
  UniPoly g(s.field, "t");
  bool nonzero = false, infinity_common = true;
  for (const auto& c : s.coeffs) {
    if (c.empty()) continue;
    Vec low(c.rbegin(), c.rend());
    UniPoly p(s.field, low, "t");
    if (p.is_zero()) continue;
    nonzero = true;
    if (!c[0].is_zero()) infinity_common = false;
    g = gcd(g, p);
  }
  return nonzero && !infinity_common && g.degree() == 0;
}

SectionCandidate normalize_section(SectionCandidate s) {
  for (const auto& c : s.coeffs)
    for (const auto& x : c)
      if (!x.is_zero()) {
        const FieldElement inv = x.inv();
        for (auto& cc : s.coeffs)
          for (auto& y : cc) y *= inv;
        return s;
      }
  throw ValidationError("the zero tuple is not a section");
}

SectionCandidate constant_section(const FieldSpec& f, const Vec& point, const std::vector<int>& weights) {
  SectionCandidate s;
  s.field = f;
  s.degree = 0;
  for (std::size_t j = 0; j < point.size(); ++j) {
    if (weights[j] > 0) {
      if (!point[j].is_zero()) throw ValidationError("a constant section must vanish on positive-weight coordinates");
      s.coeffs.emplace_back();
    } else {
      s.coeffs.push_back(Vec{point[j]});
    }
  }
  return s;
}

namespace {

// Coefficient of x_i x_j (t-free) in a quadratic form.
FieldElement const_coeff(const MultiPoly& q, int N, int i, int j) {
  Monomial mono(N + 3, 0);
  mono[2 + i] += 1;
  mono[2 + j] += 1;
  return q.coeff(mono);
}

}  // namespace

DistinguishedReport distinguished_sections(const FibrationModel& m) {
  if (!m.special()) throw ValidationError("distinguished sections need a special n = -1 model");
  const CaseSpec& c = m.spec;
  const FieldSpec f = m.field;
  DistinguishedReport rep;
  auto zero = FieldElement::zero(f), one = FieldElement::one(f);
  if (c.case_no == 3 && c.parity == 1) {
    // Conic {u = 0} cut by the constant part of the second form.
    rep.kind = "conic";
    const std::uint64_t q = f.order();
    if (static_cast<long double>(q) * q > 1e8L) throw BudgetError("conic enumeration too large", double(q) * q, 1e8);
    for (int lead = 0; lead < 3; ++lead) {
      std::uint64_t count = 1;
      for (int i = lead + 1; i < 3; ++i) count *= q;
      for (std::uint64_t idx = 0; idx < count; ++idx) {
        Vec w(3, zero);
        w[lead] = one;
        std::uint64_t r = idx;
        for (int i = 2; i > lead; --i) {
          w[i] = FieldElement::from_index(f, r % q);
          r /= q;
        }
        FieldElement v = zero;
        for (int i = 0; i < 3; ++i)
          for (int j = i; j < 3; ++j) v += const_coeff(m.qb, m.N, 2 + i, 2 + j) * w[i] * w[j];
        if (v.is_zero()) rep.sections.push_back(constant_section(f, Vec{zero, zero, w[0], w[1], w[2]}, m.weights));
      }
    }
  } else if (c.case_no == 4 && c.parity == 0) {
    rep.kind = "line";
    rep.sections.push_back(constant_section(f, Vec{zero, zero, zero, one, zero}, m.weights));
    for (std::uint64_t i = 0; i < f.order(); ++i)
      rep.sections.push_back(
          constant_section(f, Vec{zero, zero, zero, FieldElement::from_index(f, i), one}, m.weights));
  } else if (c.case_no == 4 && c.parity == 1) {
    // The line {u = 0} meets the second form in two points.
    rep.kind = "line-points";
    FieldElement a = const_coeff(m.qb, m.N, 3, 3), b = const_coeff(m.qb, m.N, 3, 4),
                 d = const_coeff(m.qb, m.N, 4, 4);
    if (a.is_zero() && b.is_zero() && d.is_zero()) throw MathError("the line lies on the second form");
    BinaryForm bf(f, Vec{a, b, d});
    int k = 1;
    if (!a.is_zero() && discriminant_binary(bf) != zero) {
      UniPoly g(f, Vec{d, b, a});
      if (roots(g).size() < 2) k = 2;
    }
    const FieldSpec F = k == 1 ? f : f.extend(2);
    FieldEmbedding e(f, F);
    const auto z = FieldElement::zero(F), o = FieldElement::one(F);
    // Roots [y3 : y4]: [1:0] when a = 0, affine roots y3/y4 of a y^2 + b y + d.
    if (a.is_zero()) rep.sections.push_back(constant_section(F, Vec{z, z, z, o, z}, m.weights));
    UniPoly g(F, Vec{e(d), e(b), e(a)});
    for (const auto& y : roots(g)) rep.sections.push_back(constant_section(F, Vec{z, z, z, y, o}, m.weights));
    rep.field_degree = k;
  } else if (c.case_no == 5 && c.parity == 0) {
    rep.kind = "canonical";
    rep.sections.push_back(constant_section(f, Vec{zero, zero, zero, zero, one}, m.weights));
  } else {
    throw ValidationError("no distinguished section is predicted for this case");
  }
  std::sort(rep.sections.begin(), rep.sections.end());
  rep.all_verified = true;
  for (const auto& s : rep.sections) rep.all_verified = rep.all_verified && verify_section(m, s);
  return rep;
}

}  // namespace dp4kit
