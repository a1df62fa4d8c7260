#pragma once

#include <cstddef>
#include <vector>

#include "dp4kit/field.hpp"

namespace dp4kit {

using Vec = std::vector<FieldElement>;

class Matrix {
 public:
  Matrix() = default;
  Matrix(const FieldSpec& f, std::size_t rows, std::size_t cols);
  static Matrix identity(const FieldSpec& f, std::size_t n);
  static Matrix from_rows(const FieldSpec& f, const std::vector<Vec>& rows);

  const FieldSpec& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  FieldElement& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const FieldElement& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
  Vec row(std::size_t i) const;
  Vec col(std::size_t j) const;

  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  Matrix operator*(const Matrix& o) const;
  Matrix scaled(const FieldElement& c) const;
  Vec operator*(const Vec& v) const;
  Matrix transpose() const;
  bool operator==(const Matrix& o) const;
  bool operator!=(const Matrix& o) const { return !(*this == o); }
  bool is_zero() const;
  bool is_symmetric() const;

  FieldElement det() const;
  std::size_t rank() const;
  // Reduced row echelon form; pivot columns written to *pivots if given.
  Matrix rref(std::vector<std::size_t>* pivots = nullptr) const;
  // Basis of {v : M v = 0}, one vector per free column of the RREF.
  std::vector<Vec> kernel() const;
  Matrix inverse() const;
  // Entrywise image under a field map.
  template <class F>
  Matrix map(const FieldSpec& g, F&& fn) const {
    Matrix r(g, rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = fn(a_[i]);
    return r;
  }

 private:
  FieldSpec field_;
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<FieldElement> a_;
};

FieldElement dot(const Vec& a, const Vec& b);
// x^T M y
FieldElement bilinear(const Matrix& m, const Vec& x, const Vec& y);
// Scale so the first nonzero entry is 1.
Vec normalize_projective(Vec v);
bool is_zero_vec(const Vec& v);

}  // namespace dp4kit
