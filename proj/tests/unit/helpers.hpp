#pragma once

#include <vector>

#include "dp4kit/field.hpp"
#include "dp4kit/matrix.hpp"
#include "dp4kit/poly.hpp"
#include "dp4kit/rng.hpp"

namespace testutil {

using namespace dp4kit;

inline FieldElement rand_elem(const FieldSpec& f, Rng& rng, int qrange = 20) {
  if (f.is_finite()) return FieldElement::from_index(f, rng.below(f.order()));
  return FieldElement(f, mpq_class(rng.range(-qrange, qrange), rng.range(1, 5)));
}

inline FieldElement rand_nonzero(const FieldSpec& f, Rng& rng) {
  while (true) {
    auto x = rand_elem(f, rng);
    if (!x.is_zero()) return x;
  }
}

inline UniPoly rand_poly(const FieldSpec& f, Rng& rng, int deg) {
  Vec c;
  for (int i = 0; i < deg; ++i) c.push_back(rand_elem(f, rng));
  c.push_back(rand_nonzero(f, rng));
  return UniPoly(f, c);
}

inline Matrix rand_matrix(const FieldSpec& f, Rng& rng, std::size_t r, std::size_t c) {
  Matrix m(f, r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = rand_elem(f, rng);
  return m;
}

inline Matrix rand_invertible(const FieldSpec& f, Rng& rng, std::size_t n) {
  while (true) {
    Matrix m = rand_matrix(f, rng, n, n);
    if (!m.det().is_zero()) return m;
  }
}

inline Matrix rand_symmetric(const FieldSpec& f, Rng& rng, std::size_t n) {
  Matrix m(f, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) m(i, j) = m(j, i) = rand_elem(f, rng);
  return m;
}

// Cofactor expansion along the first row; exponential but independent of
// elimination.
template <class T, class Zero, class One>
T laplace_det(const std::vector<std::vector<T>>& m, Zero zero, One one) {
  const std::size_t n = m.size();
  if (n == 0) return one();
  if (n == 1) return m[0][0];
  T s = zero();
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<std::vector<T>> minor;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<T> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != j) row.push_back(m[i][k]);
      minor.push_back(row);
    }
    T t = m[0][j] * laplace_det(minor, zero, one);
    s = (j % 2) ? s - t : s + t;
  }
  return s;
}

// Every element of a finite field, in index order.
inline std::vector<FieldElement> all_elements(const FieldSpec& f) {
  std::vector<FieldElement> v;
  for (std::uint64_t i = 0; i < f.order(); ++i) v.push_back(FieldElement::from_index(f, i));
  return v;
}

}  // namespace testutil
