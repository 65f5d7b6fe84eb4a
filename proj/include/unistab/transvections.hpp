#pragma once

// Transvection groups A_U = S({0, U, V}), the maps x_phi, group commutators and
// the commutator identities they satisfy.

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "unistab/series.hpp"

namespace unistab {

/// phi : V/U -> U. Row i of `phi` is the image of the i-th coset representative
/// (a row of complement_in(U, V)), written in ambient coordinates.
template <ExactField F>
class TransvectionSpec {
 public:
  TransvectionSpec(Subspace<F> u, Matrix<F> phi)
      : u_(std::move(u)), frame_(Subspace<F>::full(u_.field(), u_.ambient_dim()), u_), phi_(std::move(phi)) {
    if (phi_.rows() != frame_.dim() || phi_.cols() != u_.ambient_dim())
      throw PreconditionError("phi must have one row per coset representative and ambient width");
    for (std::size_t i = 0; i < phi_.rows(); ++i)
      if (!u_.contains(phi_.row(i))) throw PreconditionError("image of phi escapes U");
  }

  static TransvectionSpec zero(const Subspace<F>& u) {
    std::size_t q = u.ambient_dim() - u.dim();
    return TransvectionSpec(u, Matrix<F>(u.field(), q, u.ambient_dim()));
  }

  /// Recovers phi from an endomorphism m with V m <= U and U m = 0.
  static TransvectionSpec from_endomorphism(const Subspace<F>& u, const Matrix<F>& m) {
    if (!u.times(m).is_zero()) throw PreconditionError("endomorphism does not kill U");
    QuotientFrame<F> frame(Subspace<F>::full(u.field(), u.ambient_dim()), u);
    Matrix<F> phi(u.field(), frame.dim(), u.ambient_dim());
    for (std::size_t i = 0; i < frame.dim(); ++i) phi.set_row(i, vec_times(frame.representatives()[i], m));
    return TransvectionSpec(u, std::move(phi));
  }

  const Subspace<F>& u() const { return u_; }
  const Matrix<F>& phi() const { return phi_; }
  const std::vector<Vec<F>>& quotient_basis() const { return frame_.representatives(); }
  std::size_t ambient_dim() const { return u_.ambient_dim(); }
  const F& field() const { return u_.field(); }

  /// M_phi = x_phi - 1, i.e. v -> (v + U) phi.
  Matrix<F> endomorphism() const {
    std::size_t n = ambient_dim();
    Matrix<F> q(field(), n, frame_.dim());
    for (std::size_t i = 0; i < n; ++i) q.set_row(i, frame_.coords(unit_vec(field(), n, i)));
    return q * phi_;
  }

  TransvectionSpec operator+(const TransvectionSpec& o) const {
    if (!(u_ == o.u_)) throw PreconditionError("adding maps with different U");
    return TransvectionSpec(u_, phi_ + o.phi_);
  }

 private:
  Subspace<F> u_;
  QuotientFrame<F> frame_;
  Matrix<F> phi_;
};

template <ExactField F>
Matrix<F> make_transvection(const TransvectionSpec<F>& t) {
  auto m = t.endomorphism();
  auto x = Matrix<F>::identity(t.field(), t.ambient_dim()) + m;
  if (!(m * m).is_zero()) throw InternalError("(x_phi - 1)^2 != 0");
  return x;
}

/// x^g = g^{-1} x g.
template <ExactField F>
Matrix<F> conjugate(const Matrix<F>& x, const Matrix<F>& g) {
  return g.inverse() * x * g;
}

/// [x, g] = x^{-1} g^{-1} x g.
template <ExactField F>
Matrix<F> commutator(const Matrix<F>& x, const Matrix<F>& g) {
  if (!x.square() || !g.square() || x.rows() != g.rows()) throw PreconditionError("commutator shape mismatch");
  return x.inverse() * g.inverse() * x * g;
}

/// [x, _0 g] = x, [x, _{n+1} g] = [[x, _n g], g].
template <ExactField F>
Matrix<F> iterated_commutator(const Matrix<F>& x, const Matrix<F>& g, std::size_t n) {
  require_invertible(x, "x");
  require_invertible(g, "g");
  auto ginv = g.inverse();
  Matrix<F> c = x;
  for (std::size_t i = 0; i < n; ++i) c = c.inverse() * ginv * c * g;
  return c;
}

/// The spec of x_phi^g for g normalizing U.
template <ExactField F>
TransvectionSpec<F> transport(const TransvectionSpec<F>& t, const Matrix<F>& g) {
  if (!normalizes(g, t.u())) throw PreconditionError("g does not normalize U");
  return TransvectionSpec<F>::from_endomorphism(t.u(), g.inverse() * t.endomorphism() * g);
}

struct Lemma2Result {
  bool ok = true;
  /// First failure: ambient basis index of v and the exponent.
  std::optional<std::pair<std::size_t, std::size_t>> counterexample;
};

/// Checks v [x_phi, _j t] = v + (v + U) phi (t - 1)^j for all basis v and j = 1..k.
/// Requires U t = U and ([V, t] + U)/U <= ker phi.
template <ExactField F>
Lemma2Result lemma2_check(const TransvectionSpec<F>& spec, const Matrix<F>& t, std::size_t k) {
  std::size_t n = spec.ambient_dim();
  if (t.rows() != n || !t.square()) throw PreconditionError("t has the wrong size");
  require_invertible(t, "t");
  if (!normalizes(t, spec.u())) throw PreconditionError("t does not normalize U");
  auto m = spec.endomorphism();
  auto t1 = minus_identity(t);
  if (!(t1 * m).is_zero()) throw PreconditionError("[V, t] + U is not in the kernel of phi");

  auto x = make_transvection(spec);
  auto id = Matrix<F>::identity(spec.field(), n);
  auto tinv = t.inverse();
  Matrix<F> c = x;
  Matrix<F> rhs_power = m;
  for (std::size_t j = 1; j <= k; ++j) {
    c = c.inverse() * tinv * c * t;
    rhs_power = rhs_power * t1;
    auto expected = id + rhs_power;
    for (std::size_t i = 0; i < n; ++i)
      if (c.row(i) != expected.row(i)) return {false, std::make_pair(i, j)};
  }
  return {};
}

/// z_n = [x_phi, _n g] for U a line with U (g - 1) = 0; asserts
/// v z_n = v + (v (g^{-1} - 1)^n + U) phi.
template <ExactField F>
Matrix<F> engel_witness_case1(const Matrix<F>& g, const Subspace<F>& u_line, const TransvectionSpec<F>& spec,
                              std::size_t n) {
  if (u_line.dim() != 1) throw PreconditionError("U must be one-dimensional");
  if (!(spec.u() == u_line)) throw PreconditionError("transvection is not based on the given line");
  require_invertible(g, "g");
  if (!u_line.times(minus_identity(g)).is_zero()) throw PreconditionError("g does not act trivially on U");
  auto z = iterated_commutator(make_transvection(spec), g, n);
  auto id = Matrix<F>::identity(g.field(), g.rows());
  auto expected = id + (g.inverse() - id).pow(n) * spec.endomorphism();
  if (z != expected) throw InternalError("z_n does not match the displayed action");
  return z;
}

/// [1 + eta, _n g] computed by group arithmetic and checked against 1 + eta (g - 1)^n.
/// Requires eta^2 = 0, (eta (g-1)^j)^2 = 0 for j < n, and (g - 1) eta = 0.
template <ExactField F>
Matrix<F> one_plus_eta_commutator(const Matrix<F>& eta, const Matrix<F>& g, std::size_t n) {
  if (!eta.square() || !g.square() || eta.rows() != g.rows()) throw PreconditionError("shape mismatch");
  require_invertible(g, "g");
  auto g1 = minus_identity(g);
  auto term = eta;
  for (std::size_t j = 0; j < std::max<std::size_t>(n, 1); ++j) {
    if (!(term * term).is_zero())
      throw PreconditionError("(eta (g-1)^" + std::to_string(j) + ")^2 != 0");
    term = term * g1;
  }
  if (!(g1 * eta).is_zero()) throw PreconditionError("(g - 1) eta != 0");
  auto id = Matrix<F>::identity(g.field(), g.rows());
  auto c = iterated_commutator(id + eta, g, n);
  if (c != id + eta * g1.pow(n)) throw InternalError("[1 + eta, _n g] != 1 + eta (g - 1)^n");
  return c;
}

}  // namespace unistab
