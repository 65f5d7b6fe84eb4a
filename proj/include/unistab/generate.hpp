#pragma once

// Seeded random instances: matrices, series, stabilizer elements and the
// structured inputs used by the witness constructions.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "unistab/series_builder.hpp"
#include "unistab/transvections.hpp"
#include "unistab/witness.hpp"

namespace unistab {

using Rng = std::mt19937_64;

/// GF(p): uniform. Q: small integers, occasionally a fraction with denominator 2 or 3.
template <ExactField F>
typename F::Element random_scalar(const F& f, Rng& rng) {
  if constexpr (std::is_same_v<F, PrimeField>) {
    return std::uniform_int_distribution<std::int64_t>(0, f.modulus() - 1)(rng);
  } else {
    std::int64_t num = std::uniform_int_distribution<std::int64_t>(-3, 3)(rng);
    std::int64_t den = std::uniform_int_distribution<int>(0, 5)(rng) == 0 ? 2 + static_cast<int>(rng() % 2) : 1;
    return f.div(f.from_int(num), f.from_int(den));
  }
}

template <ExactField F>
typename F::Element random_nonzero(const F& f, Rng& rng) {
  while (true) {
    auto a = random_scalar(f, rng);
    if (!f.is_zero(a)) return a;
  }
}

/// Sparse scalar: zero with probability 1 - density.
template <ExactField F>
typename F::Element random_sparse(const F& f, Rng& rng, double density) {
  if (std::uniform_real_distribution<double>(0, 1)(rng) >= density) return f.zero();
  return random_scalar(f, rng);
}

template <ExactField F>
Vec<F> random_vec(const F& f, Rng& rng, std::size_t n) {
  Vec<F> v(n);
  for (auto& a : v) a = random_scalar(f, rng);
  return v;
}

template <ExactField F>
Matrix<F> random_matrix(const F& f, Rng& rng, std::size_t r, std::size_t c) {
  Matrix<F> m(f, r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = random_scalar(f, rng);
  return m;
}

/// Product of a random unit lower and a random unit upper triangular matrix
/// with a random row permutation; always invertible.
template <ExactField F>
Matrix<F> random_invertible(const F& f, Rng& rng, std::size_t n, double density = 0.5) {
  auto lo = Matrix<F>::identity(f, n);
  auto up = Matrix<F>::identity(f, n);
  for (std::size_t i = 0; i < n; ++i) {
    up(i, i) = random_nonzero(f, rng);
    for (std::size_t j = 0; j < i; ++j) lo(i, j) = random_sparse(f, rng, density);
    for (std::size_t j = i + 1; j < n; ++j) up(i, j) = random_sparse(f, rng, density);
  }
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  std::shuffle(perm.begin(), perm.end(), rng);
  auto m = lo * up;
  Matrix<F> out(f, n, n);
  for (std::size_t i = 0; i < n; ++i) out.set_row(i, m.row(perm[i]));
  return out;
}

template <ExactField F>
Subspace<F> random_subspace(const F& f, Rng& rng, std::size_t n, std::size_t k) {
  auto q = random_invertible(f, rng, n);
  std::vector<Vec<F>> rows;
  for (std::size_t i = 0; i < k; ++i) rows.push_back(q.row(i));
  return Subspace<F>::span(f, n, rows);
}

/// Series whose factor dimensions are `profile` (top factor first), spanned by
/// suffixes of the rows of `basis_change`.
template <ExactField F>
Series<F> series_from_profile(const F& f, const std::vector<std::size_t>& profile, const Matrix<F>& basis_change) {
  std::size_t n = basis_change.rows();
  std::vector<Subspace<F>> chain;
  std::size_t start = 0;
  for (auto d : profile) {
    std::vector<Vec<F>> rows;
    for (std::size_t i = start; i < n; ++i) rows.push_back(basis_change.row(i));
    chain.push_back(Subspace<F>::span(f, n, rows));
    start += d;
  }
  chain.push_back(Subspace<F>(f, n));
  return Series<F>::from_chain(std::move(chain));
}

template <ExactField F>
Series<F> random_series(const F& f, Rng& rng, std::size_t n, std::size_t length) {
  if (length > n || (n > 0 && length == 0)) throw PreconditionError("cannot realize the requested series length");
  // random composition of n into `length` positive parts
  std::vector<std::size_t> cuts;
  for (std::size_t i = 1; i < n; ++i) cuts.push_back(i);
  std::shuffle(cuts.begin(), cuts.end(), rng);
  cuts.resize(length - 1);
  std::sort(cuts.begin(), cuts.end());
  std::vector<std::size_t> profile;
  std::size_t prev = 0;
  for (auto c : cuts) {
    profile.push_back(c - prev);
    prev = c;
  }
  profile.push_back(n - prev);
  return series_from_profile(f, profile, random_invertible(f, rng, n));
}

/// Concatenated complements of each jump, top jump first.
template <ExactField F>
std::vector<Vec<F>> adapted_basis_of(const Series<F>& s) {
  std::vector<Vec<F>> out;
  for (const auto& j : s.jumps())
    for (auto& r : complement_in(j.bottom, j.top).rows()) out.push_back(std::move(r));
  return out;
}

/// A block-upper-unitriangular matrix in adapted coordinates, conjugated back.
template <ExactField F>
Matrix<F> random_stabilizer_element(const F& f, Rng& rng, const Series<F>& s, double density = 0.5) {
  auto basis = adapted_basis_of(s);
  std::size_t n = s.ambient_dim();
  std::vector<std::size_t> lev;
  for (const auto& v : basis) lev.push_back(level(v, s));
  auto u = Matrix<F>::identity(f, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (lev[j] > lev[i]) u(i, j) = random_sparse(f, rng, density);
  auto p = Matrix<F>::from_rows(f, basis, n);
  return p.inverse() * u * p;
}

/// Transvection spec on a member U of s killing ([V, t] + U) / U.
template <ExactField F>
TransvectionSpec<F> random_phi_killing(const F& f, Rng& rng, const Subspace<F>& u, const Matrix<F>& t) {
  std::size_t n = u.ambient_dim();
  auto z = sum(image(minus_identity(t)), u);
  auto comp = complement_in(z, Subspace<F>::full(f, n)).rows();
  auto rows = z.rows();
  rows.insert(rows.end(), comp.begin(), comp.end());
  auto p = Matrix<F>::from_rows(f, rows, n);
  Matrix<F> images(f, n, n);
  auto ub = u.rows();
  for (std::size_t i = z.dim(); i < n; ++i) {
    Vec<F> coeffs(ub.size());
    for (auto& c : coeffs) c = random_scalar(f, rng);
    images.set_row(i, combine(f, coeffs, ub, n));
  }
  return TransvectionSpec<F>::from_endomorphism(u, p.inverse() * images);
}

/// Random phi : V/U -> U.
template <ExactField F>
TransvectionSpec<F> random_phi(const F& f, Rng& rng, const Subspace<F>& u) {
  std::size_t n = u.ambient_dim();
  std::size_t q = n - u.dim();
  Matrix<F> phi(f, q, n);
  auto ub = u.rows();
  for (std::size_t i = 0; i < q; ++i) {
    Vec<F> coeffs(ub.size());
    for (auto& c : coeffs) c = random_scalar(f, rng);
    phi.set_row(i, combine(f, coeffs, ub, n));
  }
  return TransvectionSpec<F>(u, phi);
}

/// eta with eta^2 = 0, (eta (g-1)^j)^2 = 0 and (g-1) eta = 0: image in a
/// random line Y, kernel containing Y + [V, g].
template <ExactField F>
Matrix<F> random_eta(const F& f, Rng& rng, const Matrix<F>& g) {
  std::size_t n = g.rows();
  auto y = Subspace<F>::span(f, n, {random_vec(f, rng, n)});
  auto x = sum(y, image(minus_identity(g)));
  if (x.is_full()) return Matrix<F>(f, n, n);
  auto comp = complement_in(x, Subspace<F>::full(f, n)).rows();
  auto rows = x.rows();
  rows.insert(rows.end(), comp.begin(), comp.end());
  auto p = Matrix<F>::from_rows(f, rows, n);
  Matrix<F> images(f, n, n);
  auto yb = y.rows();
  for (std::size_t i = x.dim(); i < n; ++i)
    if (!yb.empty()) images.set_row(i, scale_vec(f, random_scalar(f, rng), yb.front()));
  return p.inverse() * images;
}

template <ExactField F>
struct WitnessInstance {
  Matrix<F> g;
  Series<F> s;
};

/// Level sequences of chains linking consecutive levels so every step a -> a+1
/// of 1..n lies inside one chain of size k.
inline std::vector<std::vector<std::size_t>> linking_chains(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> chains;
  if (k < 2) throw PreconditionError("linking chains need k >= 2");
  std::size_t start = 1;
  while (true) {
    std::size_t top = std::min(start, n >= k ? n - k + 1 : 1);
    std::vector<std::size_t> c;
    for (std::size_t i = 0; i < k && top + i <= n; ++i) c.push_back(top + i);
    chains.push_back(c);
    if (top + k - 1 >= n) break;
    start = top + k - 1;
  }
  return chains;
}

/// g in S(s) with s of length n, exponent k, no proper subseries stabilized.
/// `extra` adds random chains with increasing levels; `padding` adds fixed
/// vectors at random levels.
template <ExactField F>
WitnessInstance<F> random_witness_instance(const F& f, Rng& rng, std::size_t n, std::size_t k, std::size_t extra = 0,
                                           std::size_t padding = 0) {
  auto chains = linking_chains(n, k);
  std::uniform_int_distribution<std::size_t> lvl(1, n);
  for (std::size_t e = 0; e < extra; ++e) {
    std::size_t len = std::uniform_int_distribution<std::size_t>(1, k)(rng);
    std::vector<std::size_t> pool(n);
    for (std::size_t i = 0; i < n; ++i) pool[i] = i + 1;
    std::shuffle(pool.begin(), pool.end(), rng);
    pool.resize(len);
    std::sort(pool.begin(), pool.end());
    chains.push_back(pool);
  }
  for (std::size_t e = 0; e < padding; ++e) chains.push_back({lvl(rng)});

  // standard coordinates ordered by level so the series is the suffix flag
  std::vector<std::pair<std::size_t, std::pair<std::size_t, std::size_t>>> slots;  // level, (chain, pos)
  for (std::size_t c = 0; c < chains.size(); ++c)
    for (std::size_t i = 0; i < chains[c].size(); ++i) slots.push_back({chains[c][i], {c, i}});
  std::stable_sort(slots.begin(), slots.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::size_t dim = slots.size();
  std::vector<std::vector<std::size_t>> where(chains.size());
  for (std::size_t c = 0; c < chains.size(); ++c) where[c].resize(chains[c].size());
  for (std::size_t idx = 0; idx < dim; ++idx) where[slots[idx].second.first][slots[idx].second.second] = idx;

  auto g = Matrix<F>::identity(f, dim);
  for (std::size_t c = 0; c < chains.size(); ++c)
    for (std::size_t i = 0; i + 1 < chains[c].size(); ++i) g(where[c][i], where[c][i + 1]) = f.one();
  std::vector<std::size_t> profile(n, 0);
  for (const auto& sl : slots) ++profile[sl.first - 1];
  auto s = series_from_profile(f, profile, Matrix<F>::identity(f, dim));

  auto u = random_stabilizer_element(f, rng, s, 0.4);
  g = u.inverse() * g * u;
  auto q = random_invertible(f, rng, dim, 0.4);
  auto qi = q.inverse();
  std::vector<Subspace<F>> members;
  for (const auto& x : s.members()) members.push_back(x.times(q));
  return {qi * g * q, Series<F>::from_chain(std::move(members))};
}

/// A refinement of s: inside each jump of dimension >= 2, with probability p, a
/// random intermediate member is inserted.
template <ExactField F>
Series<F> random_refinement(const F& f, Rng& rng, const Series<F>& s, double p) {
  std::vector<Subspace<F>> members = s.members();
  for (const auto& j : s.jumps()) {
    std::size_t gap = j.top.dim() - j.bottom.dim();
    if (gap < 2 || std::uniform_real_distribution<double>(0, 1)(rng) >= p) continue;
    auto comp = complement_in(j.bottom, j.top).rows();
    std::shuffle(comp.begin(), comp.end(), rng);
    std::size_t take = std::uniform_int_distribution<std::size_t>(1, gap - 1)(rng);
    comp.resize(take);
    members.push_back(sum(j.bottom, Subspace<F>::span(f, s.ambient_dim(), comp)));
  }
  return Series<F>::validate(f, s.ambient_dim(), members);
}

}  // namespace unistab
