#pragma once

// Subspaces of F^n in canonical reduced row echelon form, plus coordinate
// helpers for bases and quotients.

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "unistab/matrix.hpp"

namespace unistab {

template <ExactField F>
class Subspace {
 public:
  /// Zero subspace of F^n.
  Subspace(F field, std::size_t ambient) : basis_(std::move(field), 0, ambient) {}

  static Subspace zero(const F& field, std::size_t n) { return Subspace(field, n); }
  static Subspace full(const F& field, std::size_t n) {
    Subspace s(field, n);
    s.basis_ = Matrix<F>::identity(field, n);
    s.pivots_.resize(n);
    for (std::size_t i = 0; i < n; ++i) s.pivots_[i] = i;
    return s;
  }
  static Subspace span(const F& field, std::size_t n, const std::vector<Vec<F>>& rows) {
    return from_matrix(Matrix<F>::from_rows(field, rows, n));
  }
  static Subspace from_matrix(Matrix<F> m) {
    auto pivots = detail::rref_in_place(m);
    Subspace s(m.field(), m.cols());
    s.basis_ = m.block(0, pivots.size(), 0, m.cols());
    s.pivots_ = std::move(pivots);
    return s;
  }

  const F& field() const { return basis_.field(); }
  std::size_t ambient_dim() const { return basis_.cols(); }
  std::size_t dim() const { return basis_.rows(); }
  bool is_zero() const { return dim() == 0; }
  bool is_full() const { return dim() == ambient_dim(); }

  const Matrix<F>& basis() const { return basis_; }
  std::vector<Vec<F>> rows() const { return basis_.row_list(); }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  /// Canonical representative of v modulo this subspace (zero iff v lies in it).
  Vec<F> reduce(Vec<F> v) const {
    const F& f = field();
    if (v.size() != ambient_dim()) throw PreconditionError("vector length does not match ambient dimension");
    for (std::size_t i = 0; i < pivots_.size(); ++i) {
      auto c = v[pivots_[i]];
      if (f.is_zero(c)) continue;
      for (std::size_t j = pivots_[i]; j < v.size(); ++j) v[j] = f.sub(v[j], f.mul(c, basis_(i, j)));
    }
    return v;
  }

  bool contains(const Vec<F>& v) const { return is_zero_vec(field(), reduce(v)); }

  bool contains(const Subspace& o) const {
    check_compatible(o);
    if (o.dim() > dim()) return false;
    for (std::size_t i = 0; i < o.dim(); ++i)
      if (!contains(o.basis_.row(i))) return false;
    return true;
  }

  /// Coordinates of v with respect to the echelon rows; nullopt if v is outside.
  std::optional<Vec<F>> coordinates(const Vec<F>& v) const {
    if (!contains(v)) return std::nullopt;
    Vec<F> x(dim(), field().zero());
    for (std::size_t i = 0; i < dim(); ++i) x[i] = v[pivots_[i]];
    return x;
  }

  /// Image of the subspace under right multiplication by m.
  Subspace times(const Matrix<F>& m) const {
    if (m.rows() != ambient_dim()) throw PreconditionError("matrix does not act on this space");
    return from_matrix(basis_ * m);
  }

  bool operator==(const Subspace& o) const { return pivots_ == o.pivots_ && basis_ == o.basis_; }

  void check_compatible(const Subspace& o) const {
    if (!(field() == o.field())) throw PreconditionError("subspaces over different fields");
    if (ambient_dim() != o.ambient_dim()) throw PreconditionError("subspaces of different ambient dimension");
  }

  std::string to_string() const {
    if (is_zero()) return "0\n";
    return basis_.to_string();
  }

 private:
  Matrix<F> basis_;
  std::vector<std::size_t> pivots_;
};

template <ExactField F>
Subspace<F> echelonize(const Matrix<F>& m) {
  return Subspace<F>::from_matrix(m);
}

template <ExactField F>
Subspace<F> sum(const Subspace<F>& a, const Subspace<F>& b) {
  a.check_compatible(b);
  return Subspace<F>::from_matrix(vstack(a.basis(), b.basis()));
}

/// Zassenhaus: row-reduce [[A, A], [B, 0]]; rows with zero left half span A ∩ B.
template <ExactField F>
Subspace<F> intersect(const Subspace<F>& a, const Subspace<F>& b) {
  a.check_compatible(b);
  const F& f = a.field();
  std::size_t n = a.ambient_dim();
  if (a.is_zero() || b.is_zero()) return Subspace<F>(f, n);
  if (a.is_full()) return b;
  if (b.is_full()) return a;
  Matrix<F> m(f, a.dim() + b.dim(), 2 * n);
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < n; ++j) {
      m(i, j) = a.basis()(i, j);
      m(i, n + j) = a.basis()(i, j);
    }
  for (std::size_t i = 0; i < b.dim(); ++i)
    for (std::size_t j = 0; j < n; ++j) m(a.dim() + i, j) = b.basis()(i, j);
  auto pivots = detail::rref_in_place(m);
  std::vector<Vec<F>> rows;
  for (std::size_t i = 0; i < pivots.size(); ++i)
    if (pivots[i] >= n) {
      Vec<F> v(n);
      for (std::size_t j = 0; j < n; ++j) v[j] = m(i, n + j);
      rows.push_back(std::move(v));
    }
  return Subspace<F>::span(f, n, rows);
}

/// Left null space {v : v m = 0}.
template <ExactField F>
Subspace<F> kernel(const Matrix<F>& m) {
  const F& f = m.field();
  std::size_t r = m.rows(), c = m.cols();
  Matrix<F> aug(f, r, c + r);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < c; ++j) aug(i, j) = m(i, j);
    aug(i, c + i) = f.one();
  }
  auto pivots = detail::rref_in_place(aug);
  std::vector<Vec<F>> rows;
  for (std::size_t i = 0; i < pivots.size(); ++i)
    if (pivots[i] >= c) {
      Vec<F> v(r);
      for (std::size_t j = 0; j < r; ++j) v[j] = aug(i, c + j);
      rows.push_back(std::move(v));
    }
  return Subspace<F>::span(f, r, rows);
}

/// Row space of m.
template <ExactField F>
Subspace<F> image(const Matrix<F>& m) {
  return Subspace<F>::from_matrix(m);
}

/// A complement c of u inside w: greedily keeps the echelon rows of w that are
/// independent of u and of the rows already kept.
template <ExactField F>
Subspace<F> complement_in(const Subspace<F>& u, const Subspace<F>& w) {
  u.check_compatible(w);
  if (!w.contains(u)) throw PreconditionError("complement_in: u is not contained in w");
  Subspace<F> acc = u;
  std::vector<Vec<F>> kept;
  for (std::size_t i = 0; i < w.dim() && acc.dim() < w.dim(); ++i) {
    auto row = w.basis().row(i);
    if (acc.contains(row)) continue;
    kept.push_back(row);
    acc = sum(acc, Subspace<F>::span(w.field(), w.ambient_dim(), {row}));
  }
  return Subspace<F>::span(w.field(), w.ambient_dim(), kept);
}

/// Solves x * B = v for a fixed list of independent rows B.
template <ExactField F>
class BasisSolver {
 public:
  BasisSolver(const F& field, std::size_t ambient, std::vector<Vec<F>> rows)
      : field_(field), ambient_(ambient), rows_(std::move(rows)), inv_(field, 0, 0) {
    Matrix<F> b = Matrix<F>::from_rows(field, rows_, ambient);
    Matrix<F> ech = b;
    pivots_ = detail::rref_in_place(ech);
    if (pivots_.size() != rows_.size()) throw PreconditionError("basis vectors are linearly dependent");
    Matrix<F> sq(field, rows_.size(), rows_.size());
    for (std::size_t i = 0; i < rows_.size(); ++i)
      for (std::size_t j = 0; j < pivots_.size(); ++j) sq(i, j) = b(i, pivots_[j]);
    inv_ = sq.inverse();
  }

  std::size_t size() const { return rows_.size(); }
  const std::vector<Vec<F>>& rows() const { return rows_; }

  std::optional<Vec<F>> solve(const Vec<F>& v) const {
    if (v.size() != ambient_) throw PreconditionError("vector length mismatch");
    Vec<F> vp(pivots_.size());
    for (std::size_t j = 0; j < pivots_.size(); ++j) vp[j] = v[pivots_[j]];
    Vec<F> x = rows_.empty() ? Vec<F>{} : vec_times(vp, inv_);
    if (combine(field_, x, rows_, ambient_) != v) return std::nullopt;
    return x;
  }

 private:
  F field_;
  std::size_t ambient_;
  std::vector<Vec<F>> rows_;
  std::vector<std::size_t> pivots_;
  Matrix<F> inv_;
};

/// Concrete model of w/u: coset representatives are the rows of complement_in(u, w).
template <ExactField F>
class QuotientFrame {
 public:
  QuotientFrame(const Subspace<F>& w, const Subspace<F>& u)
      : w_(w), u_(u), reps_(complement_in(u, w).rows()), solver_(make_solver(w, u, reps_)) {}

  const Subspace<F>& top() const { return w_; }
  const Subspace<F>& bottom() const { return u_; }
  std::size_t dim() const { return reps_.size(); }
  const std::vector<Vec<F>>& representatives() const { return reps_; }

  /// Quotient coordinates of v + u for v in w.
  Vec<F> coords(const Vec<F>& v) const {
    auto x = solver_.solve(v);
    if (!x) throw PreconditionError("vector does not lie in the section top");
    return Vec<F>(x->begin(), x->begin() + static_cast<std::ptrdiff_t>(dim()));
  }

  Vec<F> lift(const Vec<F>& x) const { return combine(w_.field(), x, reps_, w_.ambient_dim()); }

  /// Matrix of the map induced on w/u by g (requires w g = w, u g = u).
  Matrix<F> induced(const Matrix<F>& g) const {
    Matrix<F> m(w_.field(), dim(), dim());
    for (std::size_t i = 0; i < dim(); ++i) m.set_row(i, coords(vec_times(reps_[i], g)));
    return m;
  }

  /// Image of (x ∩ w + u)/u in quotient coordinates.
  Subspace<F> project(const Subspace<F>& x) const {
    auto xw = intersect(x, w_);
    std::vector<Vec<F>> rows;
    for (const auto& r : xw.rows()) rows.push_back(coords(r));
    return Subspace<F>::span(w_.field(), dim(), rows);
  }

 private:
  static BasisSolver<F> make_solver(const Subspace<F>& w, const Subspace<F>& u, const std::vector<Vec<F>>& reps) {
    if (!w.contains(u)) throw PreconditionError("section bottom is not contained in the top");
    auto rows = reps;
    for (const auto& r : u.rows()) rows.push_back(r);
    return BasisSolver<F>(w.field(), w.ambient_dim(), std::move(rows));
  }

  Subspace<F> w_;
  Subspace<F> u_;
  std::vector<Vec<F>> reps_;
  BasisSolver<F> solver_;
};

}  // namespace unistab
