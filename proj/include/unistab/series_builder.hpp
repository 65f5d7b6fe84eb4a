#pragma once

// Series built from a module's lower central chain, refinement of a series by a
// generator set, and finite truncations of McLain's group M(Q, F).

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "unistab/series.hpp"

namespace unistab {

template <ExactField F>
class GeneratorSet {
 public:
  explicit GeneratorSet(std::vector<Matrix<F>> gens) : gens_(std::move(gens)) {
    if (gens_.empty()) throw PreconditionError("generator set is empty");
    for (const auto& g : gens_) {
      if (!g.square() || g.rows() != gens_.front().rows() || !(g.field() == gens_.front().field()))
        throw PreconditionError("generators differ in size or field");
      require_invertible(g, "generator");
    }
  }
  const std::vector<Matrix<F>>& gens() const { return gens_; }
  std::size_t dim() const { return gens_.front().rows(); }
  const F& field() const { return gens_.front().field(); }

 private:
  std::vector<Matrix<F>> gens_;
};

/// Smallest subspace containing x and invariant under every generator.
template <ExactField F>
Subspace<F> invariant_closure(Subspace<F> x, const GeneratorSet<F>& n) {
  while (true) {
    auto next = x;
    for (const auto& g : n.gens()) next = sum(next, x.times(g));
    if (next == x) return x;
    x = std::move(next);
  }
}

/// [W, N] for the group generated: the invariant closure of sum_g W (g - 1).
template <ExactField F>
Subspace<F> commutator_space(const Subspace<F>& w, const GeneratorSet<F>& n) {
  Subspace<F> out(w.field(), w.ambient_dim());
  for (const auto& g : n.gens()) out = sum(out, w.times(minus_identity(g)));
  return invariant_closure(out, n);
}

template <ExactField F>
struct LowerCentralChain {
  std::vector<Subspace<F>> members;  // V = C_0 > C_1 > ... (strict)
  bool reaches_zero = false;
};

template <ExactField F>
LowerCentralChain<F> module_lcs(const GeneratorSet<F>& n) {
  LowerCentralChain<F> out;
  out.members.push_back(Subspace<F>::full(n.field(), n.dim()));
  while (!out.members.back().is_zero()) {
    auto next = commutator_space(out.members.back(), n);
    if (next == out.members.back()) break;
    out.members.push_back(std::move(next));
  }
  out.reaches_zero = out.members.back().is_zero();
  return out;
}

template <ExactField F>
struct RefineResult {
  Series<F> series;
  bool complete = true;
  /// 1-based index (in the input series) of the first jump whose chain stalls.
  std::optional<std::size_t> obstruction;
};

/// Inserts inside each jump (B, T) the chain P_0 = T, P_{i+1} = B + [P_i, N].
template <ExactField F>
RefineResult<F> refine_series(const Series<F>& s, const GeneratorSet<F>& n) {
  if (n.dim() != s.ambient_dim() || !(n.field() == s.field()))
    throw PreconditionError("generators do not act on the series' space");
  for (std::size_t gi = 0; gi < n.gens().size(); ++gi)
    for (std::size_t l = 1; l <= s.size(); ++l)
      if (!normalizes(n.gens()[gi], s.member(l)))
        throw PreconditionError("generator " + std::to_string(gi) + " does not normalize member " +
                                std::to_string(l));
  std::vector<Subspace<F>> chain;
  std::optional<std::size_t> obstruction;
  for (const auto& j : s.jumps()) {
    auto p = j.top;
    chain.push_back(p);
    while (true) {
      auto next = sum(j.bottom, commutator_space(p, n));
      if (next == p) {
        if (!(p == j.bottom) && !obstruction) obstruction = j.index;
        break;
      }
      if (next == j.bottom) break;
      chain.push_back(next);
      p = std::move(next);
    }
  }
  chain.push_back(s.members().back());
  return {Series<F>::from_chain(std::move(chain)), !obstruction.has_value(), obstruction};
}

/// 1 + sum c e_{rs} with rational indices r < s.
template <ExactField F>
struct McLainElement {
  struct Term {
    mpq_class r;
    mpq_class s;
    typename F::Element coeff;
  };
  std::vector<Term> terms;
};

template <ExactField F>
struct McLainTruncation {
  std::vector<mpq_class> indices;     // q_1 < ... < q_d
  std::vector<Matrix<F>> elements;    // each element as a d x d matrix
  Matrix<F> product;
  Series<F> flag;                     // spans of suffixes of the ordered basis
};

/// v_q e_{rs} = delta_{qr} v_s on the basis ordered by the rational indices.
template <ExactField F>
McLainTruncation<F> mclain_truncate(const F& field, const std::vector<McLainElement<F>>& elems) {
  std::vector<mpq_class> idx;
  for (const auto& e : elems)
    for (const auto& t : e.terms) {
      if (!(t.r < t.s)) throw PreconditionError("McLain index pair (" + t.r.get_str() + ", " + t.s.get_str() +
                                                ") is not increasing");
      idx.push_back(t.r);
      idx.push_back(t.s);
    }
  std::sort(idx.begin(), idx.end());
  idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
  std::size_t d = idx.size();
  auto pos = [&](const mpq_class& q) {
    return static_cast<std::size_t>(std::lower_bound(idx.begin(), idx.end(), q) - idx.begin());
  };
  auto flag = Series<F>::full_flag(field, d);
  McLainTruncation<F> out{idx, {}, Matrix<F>::identity(field, d), flag};
  for (const auto& e : elems) {
    auto m = Matrix<F>::identity(field, d);
    for (const auto& t : e.terms) {
      auto i = pos(t.r), j = pos(t.s);
      m(i, j) = field.add(m(i, j), t.coeff);
    }
    if (!in_stabilizer(m, flag)) throw InternalError("McLain element leaves the support flag stabilizer");
    out.product = out.product * m;
    out.elements.push_back(std::move(m));
  }
  return out;
}

}  // namespace unistab
