#include "dp4kit/census.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <thread>

#include "dp4kit/error.hpp"
#include "dp4kit/rng.hpp"

namespace dp4kit {

using u64 = std::uint64_t;

double default_budget() {
  if (const char* e = std::getenv("DP4KIT_BUDGET")) {
    char* end = nullptr;
    const double v = std::strtod(e, &end);
    if (end == e || *end != '\0' || !(v > 0)) throw ValidationError("DP4KIT_BUDGET must be a positive number");
    return v;
  }
  return 1e9;
}

namespace {

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(3);
  os << x;
  return os.str();
}

void guard(double estimate, double budget, bool force, const std::string& what) {
  if (force) return;
  const double b = budget > 0 ? budget : default_budget();
  if (estimate > b)
    throw BudgetError(what + ": estimated " + fmt(estimate) + " evaluations exceed the budget " + fmt(b) +
                          " (use --force or DP4KIT_BUDGET)",
                      estimate, b);
}

FieldSpec ext_of(const FieldSpec& f, int k) { return k == 1 ? f : f.extend(k); }

}  // namespace

std::uint64_t fiber_point_count(const FibrationModel& m, const FieldElement& t0, const FieldElement& t1, int k,
                                double budget, bool force) {
  if (k < 1) throw ValidationError("extension degree must be at least 1");
  validate_model(m);
  const double q = static_cast<double>(m.field.order());
  guard(std::pow(q, 3.0 * k), budget, force, "fiber point count");
  const FieldSpec F = ext_of(m.field, k);
  FieldEmbedding e(m.field, F);
  const FibrationModel me = k == 1 ? m : embed_model(m, e);
  auto lift = [&](const FieldElement& x) {
    if (x.field() == F) return x;
    if (x.field() == m.field) return e(x);
    throw ValidationError("base point must lie in the model field or in F_{q^k}");
  };
  return surface_point_count(fiber_at(me, lift(t0), lift(t1)));
}

// ---------------------------------------------------------------------------
// Section search

namespace {

struct Layout {
  std::vector<int> deg, off;
  int m = 0;
};

Layout layout_for(const FibrationModel& M, int d) {
  Layout L;
  for (int j = 0; j <= M.N; ++j) {
    L.deg.push_back(d - M.weights[j]);
    L.off.push_back(L.m);
    L.m += std::max(0, L.deg.back() + 1);
  }
  return L;
}

double projective_count(double q, int m) {
  if (m <= 0) return 0;
  return (std::pow(q, m) - 1) / (q - 1);
}

// Raw data of the forms at the sample points of P^1(F').
struct SampleData {
  const detail::FieldData* fd = nullptr;
  int N = 0, S = 0, r = 0;
  std::vector<std::vector<std::vector<u64>>> mono;  // [s][j][k]
  std::vector<std::vector<u64>> quad;               // [s][form * pairs + pair]
  std::vector<std::vector<u64>> lin;                // [s][row * (N+1) + j]
  std::vector<u64> emb;                             // base index -> F' index
};

class Searcher {
 public:
  Searcher(const FibrationModel& M, int d) : M_(M), d_(d), L_(layout_for(M, d)) {
    const FieldSpec base = M.field;
    q_ = base.order();
    int maxdeg = std::max(2 * d + M.deg_a, 2 * d + M.deg_b);
    if (!M.linear.empty()) maxdeg = std::max(maxdeg, d + 1);
    S_ = std::max(maxdeg, 0) + 1;
    // Affine points of F' plus [1:0].
    int e = 1;
    double size = static_cast<double>(q_);
    while (size + 1 < S_) {
      size *= static_cast<double>(q_);
      ++e;
    }
    ext_ = e;
    const FieldSpec F = ext_of(base, e);
    FieldEmbedding emb(base, F);
    const FibrationModel me = e == 1 ? M : embed_model(M, emb);
    sd_.fd = &F.data();
    sd_.N = M.N;
    sd_.S = S_;
    sd_.r = static_cast<int>(M.linear.size());
    for (u64 i = 0; i < q_; ++i) sd_.emb.push_back(emb(FieldElement::from_index(base, i)).index());
    const u64 Fq = F.order();
    for (int s = 0; s < S_; ++s) {
      FieldElement t0 = static_cast<u64>(s) < Fq ? FieldElement::from_index(F, s) : FieldElement::one(F);
      FieldElement t1 = static_cast<u64>(s) < Fq ? FieldElement::one(F) : FieldElement::zero(F);
      std::vector<std::vector<u64>> mj;
      for (int j = 0; j <= M.N; ++j) {
        std::vector<u64> row;
        for (int k = 0; k <= L_.deg[j]; ++k) row.push_back((t0.pow(L_.deg[j] - k) * t1.pow(k)).index());
        mj.push_back(row);
      }
      sd_.mono.push_back(mj);
      auto [A, B] = quadrics_at(me, t0, t1);
      std::vector<u64> qv;
      const FieldElement two(F, 2);
      for (const Matrix* X : {&A, &B})
        for (int i = 0; i <= M.N; ++i)
          for (int j = i; j <= M.N; ++j) qv.push_back((i == j ? (*X)(i, i) : two * (*X)(i, j)).index());
      sd_.quad.push_back(qv);
      std::vector<u64> lv;
      if (sd_.r) {
        Matrix Lm = linear_forms_at(me, t0, t1);
        for (int rr = 0; rr < sd_.r; ++rr)
          for (int j = 0; j <= M.N; ++j) lv.push_back(Lm(rr, j).index());
      }
      sd_.lin.push_back(lv);
    }
  }

  int m() const { return L_.m; }
  int ext() const { return ext_; }

  std::vector<SectionCandidate> run(int threads) const {
    if (L_.m == 0) return {};
    threads = std::max(1, threads);
    std::vector<std::vector<SectionCandidate>> found(threads);
    auto work = [&](int t) {
      std::vector<u64> v(L_.m);
      std::vector<u64> x(M_.N + 1);
      for (int lead = 0; lead < L_.m; ++lead) {
        const int free = L_.m - 1 - lead;
        u64 count = 1;
        for (int i = 0; i < free; ++i) count *= q_;
        const u64 lo = count / threads * t + std::min<u64>(t, count % threads);
        const u64 hi = lo + count / threads + (static_cast<u64>(t) < count % threads ? 1 : 0);
        if (lo >= hi) continue;
        std::fill(v.begin(), v.end(), 0);
        v[lead] = 1;
        u64 rest = lo;
        for (int i = L_.m - 1; i > lead; --i) {
          v[i] = rest % q_;
          rest /= q_;
        }
        for (u64 c = lo; c < hi; ++c) {
          if (passes(v, x)) accept(v, found[t]);
          for (int pos = L_.m - 1; pos > lead; --pos) {
            if (++v[pos] < q_) break;
            v[pos] = 0;
          }
        }
      }
    };
    if (threads == 1) {
      work(0);
    } else {
      std::vector<std::thread> pool;
      for (int t = 0; t < threads; ++t) pool.emplace_back(work, t);
      for (auto& th : pool) th.join();
    }
    std::vector<SectionCandidate> out;
    for (auto& f : found) out.insert(out.end(), f.begin(), f.end());
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  bool passes(const std::vector<u64>& v, std::vector<u64>& x) const {
    const auto& fd = *sd_.fd;
    const int n = M_.N + 1;
    for (int s = 0; s < S_; ++s) {
      for (int j = 0; j < n; ++j) {
        u64 acc = 0;
        const auto& mono = sd_.mono[s][j];
        for (std::size_t k = 0; k < mono.size(); ++k) {
          const u64 c = v[L_.off[j] + k];
          if (c) acc = fd.add(acc, fd.mul(sd_.emb[c], mono[k]));
        }
        x[j] = acc;
      }
      const auto& lin = sd_.lin[s];
      for (int r = 0; r < sd_.r; ++r) {
        u64 acc = 0;
        for (int j = 0; j < n; ++j)
          if (x[j]) acc = fd.add(acc, fd.mul(lin[r * n + j], x[j]));
        if (acc) return false;
      }
      const auto& quad = sd_.quad[s];
      std::size_t idx = 0;
      for (int f = 0; f < 2; ++f) {
        u64 acc = 0;
        for (int i = 0; i < n; ++i) {
          if (!x[i]) {
            idx += n - i;
            continue;
          }
          u64 row = 0;
          for (int j = i; j < n; ++j, ++idx)
            if (x[j] && quad[idx]) row = fd.add(row, fd.mul(quad[idx], x[j]));
          acc = fd.add(acc, fd.mul(row, x[i]));
        }
        if (acc) return false;
      }
    }
    return true;
  }

  void accept(const std::vector<u64>& v, std::vector<SectionCandidate>& out) const {
    SectionCandidate s;
    s.field = M_.field;
    s.degree = d_;
    for (int j = 0; j <= M_.N; ++j) {
      Vec c;
      for (int k = 0; k <= L_.deg[j]; ++k) c.push_back(FieldElement::from_index(M_.field, v[L_.off[j] + k]));
      s.coeffs.push_back(c);
    }
    if (!content_free(s)) return;
    if (!verify_section(M_, s)) throw MathError("sample certificate disagrees with symbolic substitution");
    out.push_back(std::move(s));
  }

  const FibrationModel& M_;
  int d_;
  Layout L_;
  u64 q_ = 0;
  int S_ = 0, ext_ = 1;
  SampleData sd_;
};

}  // namespace

double section_search_space(const FibrationModel& m, int degree) {
  double total = 0;
  const double q = static_cast<double>(m.field.order());
  for (int d = 0; d <= degree; ++d) total += projective_count(q, layout_for(m, d).m);
  return total;
}

SectionSearchResult section_search(const FibrationModel& m, const SectionSearchOptions& o) {
  validate_model(m);
  if (o.degree < 0) throw ValidationError("degree bound must be nonnegative");
  SectionSearchResult res;
  res.candidates = section_search_space(m, o.degree);
  guard(res.candidates, o.budget, o.force, "section search");
  for (int d = 0; d <= o.degree; ++d) {
    Searcher s(m, d);
    res.sample_field_degree = std::max(res.sample_field_degree, s.ext());
    auto found = s.run(o.threads);
    res.sections.insert(res.sections.end(), found.begin(), found.end());
  }
  std::sort(res.sections.begin(), res.sections.end());
  return res;
}

int section_height(const FibrationModel& m, const SectionCandidate& s) {
  if (!verify_section(m, s)) throw ValidationError("not a section of the model");
  return m.alpha + s.degree;
}

CensusReport run_census(const FibrationModel& m, const CensusOptions& o) {
  validate_model(m);
  const auto start = std::chrono::steady_clock::now();
  CensusReport rep;
  const FieldSpec f = m.field;
  if (o.fiber_counts) {
    const double q = static_cast<double>(f.order());
    guard((q + 1) * std::pow(q, 3.0 * o.k), o.budget, o.force, "fiber census");
    DiscriminantProfile d = discriminant_profile(m);
    for (u64 i = 0; i <= f.order(); ++i) {
      FiberCount fc;
      const bool inf = i == f.order();
      fc.t0 = inf ? FieldElement::one(f) : FieldElement::from_index(f, i);
      fc.t1 = inf ? FieldElement::zero(f) : FieldElement::one(f);
      fc.singular = inf ? d.ord_infinity > 0 : d.delta(fc.t0).is_zero();
      fc.count = fiber_point_count(m, fc.t0, fc.t1, o.k, 0, true);
      rep.fibers.push_back(fc);
    }
  }
  if (o.sections) {
    SectionSearchOptions so;
    so.degree = o.degree;
    so.threads = o.threads;
    so.budget = o.budget;
    so.force = o.force;
    SectionSearchResult r = section_search(m, so);
    rep.search_space = r.candidates;
    for (auto& s : r.sections) rep.sections.push_back({s, section_height(m, s)});
  }
  rep.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

// ---------------------------------------------------------------------------
// Base points via multiplication matrices on (R/I)_4

namespace {

using Mono = std::array<int, 5>;

std::vector<Mono> monomials(int d) {
  std::vector<Mono> out;
  Mono m{};
  auto rec = [&](auto&& self, int i, int left) -> void {
    if (i == 4) {
      m[4] = left;
      out.push_back(m);
      return;
    }
    for (int e = left; e >= 0; --e) {
      m[i] = e;
      self(self, i + 1, left - e);
    }
  };
  rec(rec, 0, d);
  return out;
}

struct QuotientData {
  std::vector<Matrix> X;  // multiplication by x_i from degree 4 to degree 5, 16x16
  bool ok = false;
};

// Multiplication matrices (R/I)_4 -> (R/I)_5 over F.
QuotientData quotient_data(const std::vector<Matrix>& quads) {
  const FieldSpec F = quads[0].field();
  const auto m2 = monomials(2), m3 = monomials(3), m4 = monomials(4), m5 = monomials(5);
  std::map<Mono, std::size_t> i4, i5;
  for (std::size_t i = 0; i < m4.size(); ++i) i4[m4[i]] = i;
  for (std::size_t i = 0; i < m5.size(); ++i) i5[m5[i]] = i;
  const FieldElement two(F, 2);
  // Terms of each quadric.
  std::vector<std::vector<std::pair<Mono, FieldElement>>> qt;
  for (const auto& A : quads) {
    std::vector<std::pair<Mono, FieldElement>> t;
    for (int i = 0; i < 5; ++i)
      for (int j = i; j < 5; ++j) {
        FieldElement c = i == j ? A(i, i) : two * A(i, j);
        if (c.is_zero()) continue;
        Mono m{};
        m[i] += 1;
        m[j] += 1;
        t.emplace_back(m, c);
      }
    qt.push_back(t);
  }
  auto macaulay = [&](const std::vector<Mono>& mult, const std::map<Mono, std::size_t>& idx, std::size_t cols) {
    std::vector<Vec> rows;
    for (const auto& mm : mult)
      for (const auto& t : qt) {
        Vec row(cols, FieldElement::zero(F));
        for (const auto& [mono, c] : t) {
          Mono s;
          for (int k = 0; k < 5; ++k) s[k] = mono[k] + mm[k];
          row[idx.at(s)] += c;
        }
        rows.push_back(row);
      }
    return Matrix::from_rows(F, rows);
  };
  std::vector<std::size_t> piv4, piv5;
  Matrix R4 = macaulay(m2, i4, m4.size()).rref(&piv4);
  Matrix R5 = macaulay(m3, i5, m5.size()).rref(&piv5);
  if (m4.size() - piv4.size() != 16 || m5.size() - piv5.size() != 16)
    throw MathError("base locus is not finite (Hilbert function differs from 16)");
  std::vector<bool> is_piv4(m4.size(), false), is_piv5(m5.size(), false);
  for (auto c : piv4) is_piv4[c] = true;
  for (auto c : piv5) is_piv5[c] = true;
  std::vector<std::size_t> basis4, coord5(m5.size(), 0);
  for (std::size_t c = 0; c < m4.size(); ++c)
    if (!is_piv4[c]) basis4.push_back(c);
  std::size_t nc = 0;
  for (std::size_t c = 0; c < m5.size(); ++c)
    if (!is_piv5[c]) coord5[c] = nc++;
  QuotientData qd;
  for (int i = 0; i < 5; ++i) {
    Matrix X(F, 16, 16);
    for (std::size_t col = 0; col < 16; ++col) {
      Vec v(m5.size(), FieldElement::zero(F));
      Mono s = m4[basis4[col]];
      s[i] += 1;
      v[i5.at(s)] = FieldElement::one(F);
      for (std::size_t r = 0; r < piv5.size(); ++r) {
        const FieldElement c = v[piv5[r]];
        if (c.is_zero()) continue;
        for (std::size_t k = 0; k < m5.size(); ++k)
          if (!R5(r, k).is_zero()) v[k] -= c * R5(r, k);
      }
      for (std::size_t k = 0; k < m5.size(); ++k)
        if (!is_piv5[k]) X(coord5[k], col) = v[k];
    }
    qd.X.push_back(X);
  }
  qd.ok = true;
  return qd;
}

Matrix combine(const std::vector<Matrix>& ms, const Vec& c) {
  Matrix r = ms[0].scaled(c[0]);
  for (std::size_t i = 1; i < ms.size(); ++i) r = r + ms[i].scaled(c[i]);
  return r;
}

UniPoly char_poly(const Matrix& M) {
  const FieldSpec F = M.field();
  const std::size_t n = M.rows();
  std::vector<std::vector<UniPoly>> e(n, std::vector<UniPoly>(n, UniPoly(F)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Vec c{-M(i, j)};
      if (i == j) c.push_back(FieldElement::one(F));
      e[i][j] = UniPoly(F, c);
    }
  return det_poly_matrix(e);
}

struct EigenSetup {
  std::vector<Matrix> Mi;  // x_i / h on (R/I)_4
  Matrix M;                // separating combination
  UniPoly chi;
  bool squarefree = false;
};

// Returns false when no usable h / combination exists over this field.
bool eigen_setup(const std::vector<Matrix>& quads, EigenSetup& out) {
  const FieldSpec F = quads[0].field();
  QuotientData qd = quotient_data(quads);
  Rng rng(0xb45e);
  auto rand_vec = [&]() {
    Vec c;
    for (int i = 0; i < 5; ++i) c.push_back(FieldElement::from_index(F, rng.below(F.order())));
    return c;
  };
  Matrix Hinv;
  bool found = false;
  for (int attempt = 0; attempt < 40 && !found; ++attempt) {
    Vec h(5, FieldElement::zero(F));
    if (attempt < 5) {
      h[attempt] = FieldElement::one(F);
    } else {
      h = rand_vec();
    }
    Matrix H = combine(qd.X, h);
    if (H.det().is_zero()) continue;
    Hinv = H.inverse();
    found = true;
  }
  if (!found) return false;
  out.Mi.clear();
  for (const auto& X : qd.X) out.Mi.push_back(Hinv * X);
  int best = -1;
  for (int attempt = 0; attempt < 40; ++attempt) {
    Matrix M = combine(out.Mi, rand_vec());
    UniPoly chi = char_poly(M);
    const int distinct = squarefree_part(chi).degree();
    // Each eigenvalue must carry a one-dimensional left eigenspace.
    if (distinct > best) {
      best = distinct;
      out.M = M;
      out.chi = chi;
      out.squarefree = distinct == 16;
    }
    if (out.squarefree) break;
  }
  return true;
}

// Smallest k with x in F_{q^k}, q the base order.
int relative_degree_of(const Vec& v, const FieldSpec& base) {
  int e = 1;
  for (const auto& x : v) e = std::lcm(e, minimal_field_degree(x));
  const int kb = base.degree();
  return std::lcm(e, kb) / kb;
}

}  // namespace

BasePointResult base_points(const std::vector<Matrix>& quadrics, int k_max) {
  if (quadrics.size() != 4) throw ValidationError("base_points needs exactly four quadrics");
  if (k_max < 1) throw ValidationError("k_max must be at least 1");
  const FieldSpec base = quadrics[0].field();
  if (!base.is_finite()) throw ValidationError("base_points needs a finite field");
  if (base.characteristic() == 2) throw ValidationError("characteristic 2 is not supported");
  for (const auto& A : quadrics)
    if (A.field() != base || A.rows() != 5 || A.cols() != 5 || !A.is_symmetric())
      throw ValidationError("quadrics must be symmetric 5x5 matrices over one field");
  BasePointResult res;
  EigenSetup es;
  int e = 1;
  for (;; e *= 2) {
    if (e > 8) throw MathError("could not separate the base points");
    const FieldSpec F = ext_of(base, e);
    FieldEmbedding emb(base, F);
    std::vector<Matrix> qs;
    for (const auto& A : quadrics) qs.push_back(A.map(F, [&](const FieldElement& x) { return emb(x); }));
    if (eigen_setup(qs, es) && (es.squarefree || F.order() > 1000)) break;
  }
  res.working_degree = e;
  res.multiplicity_free = es.squarefree;
  res.geometric_points = squarefree_part(es.chi).degree();
  const FieldSpec W = es.M.field();
  std::set<std::pair<int, std::vector<u64>>> seen;
  for (int k = 1; k <= k_max; ++k) {
    const int lk = std::lcm(e, k);
    const FieldSpec Lf = ext_of(base, lk);
    FieldEmbedding up(W, Lf);
    auto lift = [&](const Matrix& m) { return m.map(Lf, [&](const FieldElement& x) { return up(x); }); };
    const Matrix M = lift(es.M);
    std::vector<Matrix> Mi;
    for (const auto& m : es.Mi) Mi.push_back(lift(m));
    const UniPoly chi = es.chi.map(Lf, [&](const FieldElement& x) { return up(x); });
    FieldEmbedding bl(base, Lf);
    std::vector<Matrix> qL;
    for (const auto& A : quadrics) qL.push_back(A.map(Lf, [&](const FieldElement& x) { return bl(x); }));
    const FieldSpec Kf = ext_of(base, k);
    FieldEmbedding down(Kf, Lf);
    for (const auto& lam : roots(chi)) {
      Matrix T = M;
      for (std::size_t i = 0; i < 16; ++i) T(i, i) -= lam;
      auto ker = T.transpose().kernel();
      if (ker.size() != 1) throw MathError("could not separate the base points");
      const Vec& w = ker[0];
      std::size_t j = 0;
      while (w[j].is_zero()) ++j;
      Vec pt;
      for (int i = 0; i < 5; ++i) {
        FieldElement s = FieldElement::zero(Lf);
        for (std::size_t r = 0; r < 16; ++r) s += w[r] * Mi[i](r, j);
        pt.push_back(s / w[j]);
      }
      pt = normalize_projective(pt);
      for (const auto& A : qL)
        if (!bilinear(A, pt, pt).is_zero()) throw MathError("eigenvector does not give a base point");
      if (relative_degree_of(pt, base) != k) continue;
      Vec coords;
      for (const auto& x : pt) coords.push_back(down.pull_back(x));
      std::vector<u64> key;
      for (const auto& x : coords) key.push_back(x.index());
      if (!seen.insert({k, key}).second) continue;
      res.points.push_back({coords, k});
    }
  }
  std::sort(res.points.begin(), res.points.end(), [](const BasePoint& a, const BasePoint& b) {
    if (a.field_degree != b.field_degree) return a.field_degree < b.field_degree;
    return a.coords < b.coords;
  });
  return res;
}

// ---------------------------------------------------------------------------
// Figure 1, d = 1

Figure1Result figure1_d1_check(const FibrationModel& m, double budget, bool force) {
  validate_model(m);
  if (!(m.spec.case_no == 1 && m.spec.parity == 1 && m.spec.n == 0 && m.N == 4 && m.deg_a == 0 && m.deg_b == 1))
    throw ValidationError("figure1 check needs a case 1 odd n = 0 model");
  const FieldSpec f = m.field;
  const double q = static_cast<double>(f.order());
  guard(q * q * q * 4, budget, force, "quadric point enumeration");
  const FieldElement one = FieldElement::one(f), zero = FieldElement::zero(f);
  const Matrix Q = quadrics_at(m, one, zero).first;
  const Matrix F0 = quadrics_at(m, one, zero).second;
  const Matrix F1 = quadrics_at(m, zero, one).second;
  const auto pts = surface_points(QuadricPencil{Q, Q});
  const double npts = static_cast<double>(pts.size());
  guard(npts * npts / 2, budget, force, "line search in the quadric");
  std::vector<Vec> QP;
  for (const auto& p : pts) QP.push_back(Q * p);
  std::set<Line> lines;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j)
      if (dot(QP[i], pts[j]).is_zero()) lines.insert(make_line(pts[i], pts[j]));
  Figure1Result res;
  res.lines_in_quadric = lines.size();
  res.all_verified = true;
  const FieldElement two(f, 2);
  for (const auto& l : lines) {
    // Restrictions u^2 F(p) + 2uv F(p,r) + v^2 F(r).
    auto restrict = [&](const Matrix& F) {
      return Vec{bilinear(F, l.p, l.p), two * bilinear(F, l.p, l.q), bilinear(F, l.q, l.q)};
    };
    const Vec a = restrict(F0), b = restrict(F1);
    if (Matrix::from_rows(f, {a, b}).rank() < 2) {
      ++res.bisecant;
      continue;
    }
    // In v = 1: coefficients low-to-high in u are (F(r), 2F(p,r), F(p)).
    UniPoly ga(f, Vec{a[2], a[1], a[0]}), gb(f, Vec{b[2], b[1], b[0]});
    if (!resultant_formal(ga, 2, gb, 2).is_zero()) {
      ++res.disjoint;
      continue;
    }
    FieldElement u0, v0;
    if (a[0].is_zero() && b[0].is_zero()) {
      u0 = one;
      v0 = zero;
    } else {
      UniPoly g = gcd(ga, gb);
      u0 = -g.coeff(0);
      v0 = one;
    }
    // f = (v0 u - u0 v)(c1 u + c2 v).
    auto cofactor = [&](const Vec& c) {
      FieldElement c1, c2;
      if (!v0.is_zero()) {
        c1 = c[0] / v0;
        c2 = (c[1] + u0 * c1) / v0;
      } else {
        c2 = -c[2] / u0;
        c1 = -c[1] / u0;
      }
      return std::make_pair(c1, c2);
    };
    auto [a1, a2] = cofactor(a);
    auto [b1, b2] = cofactor(b);
    Figure1Line fl;
    fl.line = l;
    Vec inc;
    for (int j = 0; j < 5; ++j) inc.push_back(u0 * l.p[j] + v0 * l.q[j]);
    fl.incidence = normalize_projective(inc);
    // t0 a + t1 b = 0 at (u, v) = (t0 a2 + t1 b2, -(t0 a1 + t1 b1)).
    SectionCandidate s;
    s.field = f;
    s.degree = 1;
    for (int j = 0; j < 5; ++j) s.coeffs.push_back(Vec{a2 * l.p[j] - a1 * l.q[j], b2 * l.p[j] - b1 * l.q[j]});
    fl.section = normalize_section(s);
    const bool ok = content_free(fl.section) && verify_section(m, fl.section);
    res.all_verified = res.all_verified && ok;
    res.accepted.push_back(fl);
  }
  return res;
}

}  // namespace dp4kit
