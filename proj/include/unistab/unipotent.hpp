#pragma once

// Unipotent elements: exponent, kernel chain of g - 1, Jordan block data.

#include <cstddef>
#include <optional>
#include <vector>

#include "unistab/series.hpp"

namespace unistab {

/// Minimal e >= 1 with (g - 1)^e = 0, or nullopt if g is not unipotent.
template <ExactField F>
std::optional<std::size_t> unipotent_exponent(const Matrix<F>& g) {
  if (!g.square()) throw PreconditionError("exponent of a non-square matrix");
  auto n1 = minus_identity(g);
  auto power = n1;
  for (std::size_t e = 1; e <= std::max<std::size_t>(g.rows(), 1); ++e) {
    if (power.is_zero()) return e;
    power = power * n1;
  }
  return std::nullopt;
}

template <ExactField F>
struct KernelChain {
  /// K_1 < K_2 < ... < K_e = V with K_i = ker (g - 1)^i.
  std::vector<Subspace<F>> chain;
  std::size_t exponent() const { return chain.size(); }
};

template <ExactField F>
KernelChain<F> kernel_chain(const Matrix<F>& g) {
  auto e = unipotent_exponent(g);
  if (!e) throw PreconditionError("matrix is not unipotent");
  auto n1 = minus_identity(g);
  KernelChain<F> kc;
  auto power = n1;
  for (std::size_t i = 1; i <= *e; ++i) {
    kc.chain.push_back(kernel(power));
    power = power * n1;
  }
  if (!kc.chain.back().is_full()) throw InternalError("kernel chain does not reach V");
  for (std::size_t i = 0; i + 1 < kc.chain.size(); ++i)
    if (kc.chain[i].dim() >= kc.chain[i + 1].dim()) throw InternalError("kernel chain is not strictly ascending");
  return kc;
}

template <ExactField F>
struct JordanData {
  /// Each block lists v_1, ..., v_d with v_j (g-1) = v_{j+1} and v_d (g-1) = 0.
  std::vector<std::vector<Vec<F>>> blocks;
  /// Rows are the block vectors in order; P g P^{-1} is the Jordan form.
  Matrix<F> change_of_basis;
  std::size_t exponent = 0;

  std::vector<std::size_t> sizes() const {
    std::vector<std::size_t> out;
    for (const auto& b : blocks) out.push_back(b.size());
    return out;
  }
};

/// Block-diagonal unipotent Jordan form with ones on the superdiagonal inside each block.
template <ExactField F>
Matrix<F> jordan_form(const F& field, const std::vector<std::size_t>& sizes) {
  std::size_t n = 0;
  for (auto s : sizes) n += s;
  auto j = Matrix<F>::identity(field, n);
  std::size_t off = 0;
  for (auto s : sizes) {
    for (std::size_t i = 0; i + 1 < s; ++i) j(off + i, off + i + 1) = field.one();
    off += s;
  }
  return j;
}

/// J_n: a single unipotent Jordan block, e_i -> e_i + e_{i+1}.
template <ExactField F>
Matrix<F> jordan_block(const F& field, std::size_t n) {
  return jordan_form(field, {n});
}

/// Chains that already exist contribute their depth-j vectors; new chain tops
/// complement K_{j-1} + (those vectors) in K_j.
template <ExactField F>
JordanData<F> jordan_blocks(const Matrix<F>& g) {
  const F& f = g.field();
  std::size_t n = g.rows();
  auto kc = kernel_chain(g);
  auto n1 = minus_identity(g);
  std::size_t e = kc.exponent();

  std::vector<std::vector<Vec<F>>> blocks;
  for (std::size_t j = e; j >= 1; --j) {
    auto below = j >= 2 ? kc.chain[j - 2] : Subspace<F>(f, n);
    std::vector<Vec<F>> depth_j;
    for (const auto& b : blocks) depth_j.push_back(b[b.size() - j]);
    auto base = sum(below, Subspace<F>::span(f, n, depth_j));
    for (const auto& top : complement_in(base, kc.chain[j - 1]).rows()) {
      std::vector<Vec<F>> chain{top};
      for (std::size_t i = 1; i < j; ++i) chain.push_back(vec_times(chain.back(), n1));
      blocks.push_back(std::move(chain));
    }
  }

  std::vector<Vec<F>> rows;
  for (const auto& b : blocks)
    for (const auto& v : b) rows.push_back(v);
  JordanData<F> data{blocks, Matrix<F>::from_rows(f, rows, n), e};
  if (rows.size() != n || !data.change_of_basis.invertible()) throw InternalError("Jordan basis is not a basis");
  if (data.change_of_basis * g * data.change_of_basis.inverse() != jordan_form(f, data.sizes()))
    throw InternalError("Jordan basis does not conjugate to Jordan form");
  if (n > 0 && blocks.size() < n / e) throw InternalError("fewer Jordan blocks than dim / exponent");
  return data;
}

}  // namespace unistab
