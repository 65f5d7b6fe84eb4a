#pragma once

// Dense exact matrices and row vectors.
//
// Vectors are rows and matrices act on the right: v -> v * M.

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "unistab/field.hpp"

namespace unistab {

template <ExactField F>
using Vec = std::vector<typename F::Element>;

template <ExactField F>
class Matrix {
 public:
  using Element = typename F::Element;

  Matrix(F field, std::size_t rows, std::size_t cols)
      : field_(std::move(field)), rows_(rows), cols_(cols), data_(rows * cols, field_.zero()) {}

  static Matrix identity(const F& field, std::size_t n) {
    Matrix m(field, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = field.one();
    return m;
  }

  /// Builds a matrix whose rows are the given vectors; `cols` is used when `rows` is empty.
  static Matrix from_rows(const F& field, const std::vector<Vec<F>>& rows, std::size_t cols) {
    Matrix m(field, rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw PreconditionError("row length does not match column count");
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  /// Convenience for tests and literals: entries are reduced into the field.
  static Matrix from_ints(const F& field, const std::vector<std::vector<long>>& rows) {
    std::size_t cols = rows.empty() ? 0 : rows.front().size();
    Matrix m(field, rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw PreconditionError("ragged integer matrix");
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = field.from_int(rows[i][j]);
    }
    return m;
  }

  const F& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  Element& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Element& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Vec<F> row(std::size_t i) const {
    return Vec<F>(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                  data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
  }
  std::vector<Vec<F>> row_list() const {
    std::vector<Vec<F>> out;
    out.reserve(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out.push_back(row(i));
    return out;
  }
  void set_row(std::size_t i, const Vec<F>& v) {
    if (v.size() != cols_) throw PreconditionError("row length mismatch");
    std::copy(v.begin(), v.end(), data_.begin() + static_cast<std::ptrdiff_t>(i * cols_));
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [&](const Element& a) { return field_.is_zero(a); });
  }
  bool is_identity() const { return square() && *this == identity(field_, rows_); }

  bool operator==(const Matrix& o) const {
    return field_ == o.field_ && rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }

  Matrix operator+(const Matrix& o) const {
    check_same_shape(o);
    Matrix r(*this);
    for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = field_.add(data_[i], o.data_[i]);
    return r;
  }
  Matrix operator-(const Matrix& o) const {
    check_same_shape(o);
    Matrix r(*this);
    for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = field_.sub(data_[i], o.data_[i]);
    return r;
  }
  Matrix operator-() const {
    Matrix r(*this);
    for (auto& a : r.data_) a = field_.neg(a);
    return r;
  }
  Matrix scaled(const Element& c) const {
    Matrix r(*this);
    for (auto& a : r.data_) a = field_.mul(c, a);
    return r;
  }

  Matrix operator*(const Matrix& o) const {
    if (!(field_ == o.field_)) throw PreconditionError("field mismatch in matrix product");
    if (cols_ != o.rows_) throw PreconditionError("shape mismatch in matrix product");
    Matrix r(field_, rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        const Element& a = (*this)(i, k);
        if (field_.is_zero(a)) continue;
        for (std::size_t j = 0; j < o.cols_; ++j)
          r(i, j) = field_.add(r(i, j), field_.mul(a, o(k, j)));
      }
    return r;
  }

  Matrix pow(std::size_t e) const {
    if (!square()) throw PreconditionError("power of a non-square matrix");
    Matrix result = identity(field_, rows_);
    Matrix base = *this;
    while (e > 0) {
      if (e & 1u) result = result * base;
      e >>= 1u;
      if (e > 0) base = base * base;
    }
    return result;
  }

  Matrix transposed() const {
    Matrix r(field_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
  }

  /// Rows [r0, r1) and columns [c0, c1).
  Matrix block(std::size_t r0, std::size_t r1, std::size_t c0, std::size_t c1) const {
    Matrix r(field_, r1 - r0, c1 - c0);
    for (std::size_t i = r0; i < r1; ++i)
      for (std::size_t j = c0; j < c1; ++j) r(i - r0, j - c0) = (*this)(i, j);
    return r;
  }

  std::size_t rank() const;
  bool invertible() const { return square() && rank() == rows_; }
  Matrix inverse() const;

  std::string to_string() const {
    std::string out;
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) {
        if (j) out += ' ';
        out += field_.format((*this)(i, j));
      }
      out += '\n';
    }
    return out;
  }

 private:
  void check_same_shape(const Matrix& o) const {
    if (!(field_ == o.field_)) throw PreconditionError("field mismatch");
    if (rows_ != o.rows_ || cols_ != o.cols_) throw PreconditionError("shape mismatch");
  }

  F field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Element> data_;
};

template <ExactField F>
Vec<F> zero_vec(const F& field, std::size_t n) {
  return Vec<F>(n, field.zero());
}

template <ExactField F>
Vec<F> unit_vec(const F& field, std::size_t n, std::size_t i) {
  Vec<F> v(n, field.zero());
  v[i] = field.one();
  return v;
}

template <ExactField F>
bool is_zero_vec(const F& field, const Vec<F>& v) {
  return std::all_of(v.begin(), v.end(), [&](const auto& a) { return field.is_zero(a); });
}

/// v * m with v a row vector.
template <ExactField F>
Vec<F> vec_times(const Vec<F>& v, const Matrix<F>& m) {
  const F& f = m.field();
  if (v.size() != m.rows()) throw PreconditionError("vector length does not match matrix");
  Vec<F> out(m.cols(), f.zero());
  for (std::size_t k = 0; k < m.rows(); ++k) {
    if (f.is_zero(v[k])) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) out[j] = f.add(out[j], f.mul(v[k], m(k, j)));
  }
  return out;
}

template <ExactField F>
Vec<F> add_vec(const F& f, const Vec<F>& a, const Vec<F>& b) {
  Vec<F> out(a);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = f.add(a[i], b[i]);
  return out;
}

template <ExactField F>
Vec<F> sub_vec(const F& f, const Vec<F>& a, const Vec<F>& b) {
  Vec<F> out(a);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = f.sub(a[i], b[i]);
  return out;
}

template <ExactField F>
Vec<F> scale_vec(const F& f, const typename F::Element& c, const Vec<F>& a) {
  Vec<F> out(a);
  for (auto& x : out) x = f.mul(c, x);
  return out;
}

/// Combination sum_i coeffs[i] * rows[i].
template <ExactField F>
Vec<F> combine(const F& f, const std::vector<typename F::Element>& coeffs, const std::vector<Vec<F>>& rows,
               std::size_t n) {
  Vec<F> out(n, f.zero());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (f.is_zero(coeffs[i])) continue;
    for (std::size_t j = 0; j < n; ++j) out[j] = f.add(out[j], f.mul(coeffs[i], rows[i][j]));
  }
  return out;
}

namespace detail {

/// In-place reduced row echelon form. Returns the pivot column of each nonzero row;
/// nonzero rows end up first, in pivot order. Only the first `limit_cols` columns
/// are eligible as pivots (the rest are carried along).
template <ExactField F>
std::vector<std::size_t> rref_in_place(Matrix<F>& m, std::size_t limit_cols) {
  const F& f = m.field();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < limit_cols && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && f.is_zero(m(p, c))) ++p;
    if (p == m.rows()) continue;
    if (p != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
    auto inv = f.inv(m(r, c));
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) = f.mul(inv, m(r, j));
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || f.is_zero(m(i, c))) continue;
      auto factor = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) = f.sub(m(i, j), f.mul(factor, m(r, j)));
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

template <ExactField F>
std::vector<std::size_t> rref_in_place(Matrix<F>& m) {
  return rref_in_place(m, m.cols());
}

}  // namespace detail

template <ExactField F>
std::size_t Matrix<F>::rank() const {
  Matrix copy(*this);
  return detail::rref_in_place(copy).size();
}

template <ExactField F>
Matrix<F> Matrix<F>::inverse() const {
  if (!square()) throw PreconditionError("inverse of a non-square matrix");
  std::size_t n = rows_;
  Matrix aug(field_, n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = (*this)(i, j);
    aug(i, n + i) = field_.one();
  }
  auto pivots = detail::rref_in_place(aug, n);
  if (pivots.size() != n) throw PreconditionError("matrix is singular");
  return aug.block(0, n, n, 2 * n);
}

/// Stacks A over B (same column count).
template <ExactField F>
Matrix<F> vstack(const Matrix<F>& a, const Matrix<F>& b) {
  if (a.cols() != b.cols()) throw PreconditionError("column mismatch in vstack");
  Matrix<F> r(a.field(), a.rows() + b.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) r(a.rows() + i, j) = b(i, j);
  return r;
}

/// g - 1 for square g.
template <ExactField F>
Matrix<F> minus_identity(const Matrix<F>& g) {
  if (!g.square()) throw PreconditionError("expected a square matrix");
  return g - Matrix<F>::identity(g.field(), g.rows());
}

}  // namespace unistab
