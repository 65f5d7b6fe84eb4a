#pragma once

// Pair selection on preordered block-partitioned sets and the construction of
// an element h with (g g^h - 1)^{r-1} != 0 for non-coarsenable g.

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "unistab/transvections.hpp"
#include "unistab/unipotent.hpp"

namespace unistab {

/// A finite set {0, ..., size-1} with a total preorder given by `key`, partitioned
/// into blocks, each carrying an injective map f into {1, ..., n}.
struct PreorderedBasis {
  std::size_t n = 0;
  std::size_t k = 0;
  std::vector<long> key;                        // x <= y iff key[x] <= key[y]
  std::vector<std::vector<std::size_t>> blocks;  // element ids
  std::vector<std::vector<std::size_t>> f;       // f[i][j] = f_i(blocks[i][j])

  std::size_t size() const { return key.size(); }
};

/// Throws PreconditionError naming the first violated condition.
inline void check_preordered_basis(const PreorderedBasis& p) {
  auto fail = [](const std::string& why) { throw PreconditionError("preordered basis: " + why); };
  if (p.blocks.size() != p.f.size()) fail("blocks and level maps differ in count");
  std::vector<int> seen(p.size(), 0);
  for (std::size_t i = 0; i < p.blocks.size(); ++i) {
    const auto& b = p.blocks[i];
    if (b.size() != p.f[i].size()) fail("block " + std::to_string(i) + " has a level map of the wrong size");
    if (b.empty()) fail("block " + std::to_string(i) + " is empty");
    if (b.size() > p.k) fail("block " + std::to_string(i) + " exceeds k elements");
    for (std::size_t a = 0; a < b.size(); ++a) {
      if (b[a] >= p.size()) fail("element id out of range");
      if (seen[b[a]]++) fail("element " + std::to_string(b[a]) + " lies in two blocks");
      if (p.f[i][a] < 1 || p.f[i][a] > p.n) fail("level outside [1, n]");
      for (std::size_t c = 0; c < a; ++c) {
        if (p.key[b[a]] == p.key[b[c]]) fail("preorder is not an order on block " + std::to_string(i));
        if (p.f[i][a] == p.f[i][c]) fail("level map of block " + std::to_string(i) + " is not injective");
        if ((p.key[b[a]] < p.key[b[c]]) != (p.f[i][a] < p.f[i][c]))
          fail("level map of block " + std::to_string(i) + " is not order-preserving");
      }
    }
  }
  for (std::size_t x = 0; x < p.size(); ++x)
    if (!seen[x]) fail("element " + std::to_string(x) + " lies in no block");

  std::vector<int> covered(p.n + 1, 0);
  for (const auto& fi : p.f)
    for (auto v : fi) covered[v] = 1;
  for (std::size_t a = 1; a <= p.n; ++a)
    if (!covered[a]) fail("level " + std::to_string(a) + " is not covered");

  // clause 2: f_i(x) > f_j(y) implies x > y
  std::vector<std::pair<std::size_t, long>> fk;
  for (std::size_t i = 0; i < p.blocks.size(); ++i)
    for (std::size_t a = 0; a < p.blocks[i].size(); ++a) fk.emplace_back(p.f[i][a], p.key[p.blocks[i][a]]);
  std::sort(fk.begin(), fk.end());
  long max_key_below = 0;
  bool have_below = false;
  for (std::size_t a = 0; a < fk.size();) {
    std::size_t b = a;
    long min_key_here = fk[a].second;
    long max_key_here = fk[a].second;
    while (b < fk.size() && fk[b].first == fk[a].first) {
      min_key_here = std::min(min_key_here, fk[b].second);
      max_key_here = std::max(max_key_here, fk[b].second);
      ++b;
    }
    if (have_below && min_key_here <= max_key_below) fail("cross-block monotonicity fails at level " +
                                                          std::to_string(fk[a].first));
    max_key_below = have_below ? std::max(max_key_below, max_key_here) : max_key_here;
    have_below = true;
    a = b;
  }

  // clause 3
  for (std::size_t a = 2; a <= p.n; ++a) {
    bool found = false;
    for (const auto& fi : p.f) {
      bool hi = std::find(fi.begin(), fi.end(), a) != fi.end();
      bool lo = std::find(fi.begin(), fi.end(), a - 1) != fi.end();
      if (hi && lo) {
        found = true;
        break;
      }
    }
    if (!found) fail("no block realizes the step " + std::to_string(a) + " -> " + std::to_string(a - 1));
  }
}

struct SelectedPair {
  std::size_t x;
  std::size_t y;
  std::size_t block;
};

struct PairSelection {
  std::vector<SelectedPair> pairs;
  std::size_t r() const { return pairs.size(); }
};

inline std::size_t pair_count(std::size_t n, std::size_t k) { return n >= 2 && k > 0 ? (n - 2) / k : 0; }

/// Greedy: d = max of the levels not yet covered by a chosen block; take the
/// lowest-index block hitting d and d-1.
inline PairSelection select_pairs(const PreorderedBasis& p) {
  check_preordered_basis(p);
  std::size_t r = pair_count(p.n, p.k);
  std::vector<int> remaining(p.n + 1, 1);
  remaining[0] = 0;
  PairSelection sel;
  auto position = [&](std::size_t i, std::size_t value) -> std::optional<std::size_t> {
    for (std::size_t a = 0; a < p.f[i].size(); ++a)
      if (p.f[i][a] == value) return a;
    return std::nullopt;
  };
  for (std::size_t s = 0; s < r; ++s) {
    std::size_t d = p.n;
    while (d > 0 && !remaining[d]) --d;
    if (d < 2) throw InternalError("pair selection ran out of levels");
    bool picked = false;
    for (std::size_t i = 0; i < p.blocks.size() && !picked; ++i) {
      auto hx = position(i, d);
      auto hy = position(i, d - 1);
      if (!hx || !hy) continue;
      sel.pairs.push_back({p.blocks[i][*hx], p.blocks[i][*hy], i});
      for (auto v : p.f[i]) remaining[v] = 0;
      picked = true;
    }
    if (!picked) throw InternalError("no block realizes the maximal remaining step");
  }
  return sel;
}

/// Checks clauses (i)-(iii) of a selection against p; returns a description of
/// the first violation.
inline std::optional<std::string> check_pair_selection(const PreorderedBasis& p, const PairSelection& sel) {
  std::vector<std::size_t> block_of(p.size()), pos_of(p.size());
  for (std::size_t i = 0; i < p.blocks.size(); ++i)
    for (std::size_t a = 0; a < p.blocks[i].size(); ++a) {
      block_of[p.blocks[i][a]] = i;
      pos_of[p.blocks[i][a]] = a;
    }
  for (std::size_t l = 0; l < sel.pairs.size(); ++l) {
    const auto& q = sel.pairs[l];
    if (q.x >= p.size() || q.y >= p.size() || q.block >= p.blocks.size()) return "pair out of range";
    if (block_of[q.x] != q.block || block_of[q.y] != q.block) return "pair not inside its block";
    for (std::size_t m = 0; m < l; ++m)
      if (sel.pairs[m].block == q.block) return "block used twice";
    if (p.f[q.block][pos_of[q.x]] != p.f[q.block][pos_of[q.y]] + 1) return "levels of a pair are not consecutive";
    if (l + 1 < sel.pairs.size()) {
      const auto& nx = sel.pairs[l + 1];
      if (!(p.key[nx.x] < p.key[q.y] && p.key[q.y] < p.key[q.x])) return "pairs are not interleaved";
    }
  }
  return std::nullopt;
}

/// A Jordan basis of g whose vectors also form a basis adapted to a series.
template <ExactField F>
struct AdaptedJordanBasis {
  std::vector<std::vector<Vec<F>>> blocks;
  std::vector<std::vector<std::size_t>> levels;

  std::vector<Vec<F>> flat() const {
    std::vector<Vec<F>> out;
    for (const auto& b : blocks) out.insert(out.end(), b.begin(), b.end());
    return out;
  }
};

class NoAdaptedJordanBasis : public PreconditionError {
 public:
  NoAdaptedJordanBasis() : PreconditionError("no Jordan basis adapted to the series levels was found") {}
};

/// Builds the chains level by level. At level m each chain proposes its next
/// vector; proposals dependent mod V_{m+1} on dominating chains are cancelled by
/// adjusting the chain, independent ones are kept, and fresh chains fill up
/// V_m / V_{m+1}.
template <ExactField F>
AdaptedJordanBasis<F> adapted_jordan_basis(const Matrix<F>& g, const Series<F>& s) {
  const F& f = s.field();
  std::size_t dim = s.ambient_dim();
  std::size_t n = s.length();
  if (!in_stabilizer(g, s)) throw PreconditionError("element does not stabilize the series");
  auto nil = minus_identity(g);

  struct Chain {
    std::vector<Vec<F>> vecs;
    std::vector<std::size_t> lev;
    Vec<F> tail;
    std::size_t index;
  };
  std::vector<Chain> chains;
  auto add_tops = [&](const Subspace<F>& base, std::size_t m) {
    for (auto& top : complement_in(base, s.member(m)).rows()) {
      Chain c;
      c.tail = vec_times(top, nil);
      c.vecs.push_back(std::move(top));
      c.lev.push_back(m);
      c.index = chains.size();
      chains.push_back(std::move(c));
    }
  };
  if (n == 0) return {};
  add_tops(s.member(2), 1);

  for (std::size_t m = 2; m <= n; ++m) {
    const auto& below = s.member(m + 1);
    std::vector<std::size_t> order(chains.size());
    std::iota(order.begin(), order.end(), 0);
    auto level_sum = [&](const Chain& c) { return std::accumulate(c.lev.begin(), c.lev.end(), std::size_t{0}); };
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      const auto& ca = chains[a];
      const auto& cb = chains[b];
      if (ca.vecs.size() != cb.vecs.size()) return ca.vecs.size() > cb.vecs.size();
      return level_sum(ca) > level_sum(cb);
    });
    // `big` was kept at this level, so its length before the stage is size() - 1
    auto dominates = [&](const Chain& big, const Chain& small) {
      std::size_t lb = big.vecs.size() - 1, ls = small.vecs.size();
      if (lb < ls) return false;
      for (std::size_t i = 0; i < ls; ++i)
        if (big.lev[lb - ls + i] < small.lev[i]) return false;
      return true;
    };

    std::vector<std::size_t> kept;
    std::vector<Vec<F>> kept_reduced;
    for (auto ci : order) {
      auto& c = chains[ci];
      if (!s.member(m).contains(c.tail)) throw InternalError("chain tail escaped the current member");
      auto t = below.reduce(c.tail);
      std::vector<std::size_t> dom;
      std::vector<Vec<F>> dom_rows;
      for (std::size_t a = 0; a < kept.size(); ++a)
        if (dominates(chains[kept[a]], c)) {
          dom.push_back(kept[a]);
          dom_rows.push_back(kept_reduced[a]);
        }
      auto beta = BasisSolver<F>(f, dim, dom_rows).solve(t);
      if (beta) {
        std::size_t len = c.vecs.size();
        for (std::size_t a = 0; a < dom.size(); ++a) {
          const auto& cj = chains[dom[a]];
          if (f.is_zero((*beta)[a])) continue;
          std::size_t shift = cj.vecs.size() - 1 - len;
          for (std::size_t i = 0; i < len; ++i)
            c.vecs[i] = sub_vec(f, c.vecs[i], scale_vec(f, (*beta)[a], cj.vecs[shift + i]));
          c.tail = sub_vec(f, c.tail, scale_vec(f, (*beta)[a], cj.vecs[shift + len]));
        }
        continue;
      }
      auto with_t = kept_reduced;
      with_t.push_back(t);
      if (Matrix<F>::from_rows(f, with_t, dim).rank() != with_t.size()) throw NoAdaptedJordanBasis();
      kept.push_back(ci);
      kept_reduced.push_back(t);
      c.vecs.push_back(c.tail);
      c.lev.push_back(m);
      c.tail = vec_times(c.tail, nil);
    }
    std::vector<Vec<F>> kept_tails;
    for (auto ci : kept) kept_tails.push_back(chains[ci].vecs.back());
    add_tops(sum(below, Subspace<F>::span(f, dim, kept_tails)), m);
  }

  AdaptedJordanBasis<F> out;
  for (auto& c : chains) {
    if (!is_zero_vec(f, c.tail)) throw InternalError("chain does not terminate");
    out.blocks.push_back(std::move(c.vecs));
    out.levels.push_back(std::move(c.lev));
  }
  auto flat = out.flat();
  if (!is_adapted_basis(flat, s)) throw InternalError("Jordan basis is not adapted");
  for (std::size_t b = 0; b < out.blocks.size(); ++b)
    for (std::size_t i = 0; i < out.blocks[b].size(); ++i) {
      auto next = vec_times(out.blocks[b][i], nil);
      bool last = i + 1 == out.blocks[b].size();
      if (last ? !is_zero_vec(f, next) : next != out.blocks[b][i + 1])
        throw InternalError("basis is not a Jordan basis");
      if (level(out.blocks[b][i], s) != out.levels[b][i]) throw InternalError("recorded level is wrong");
    }
  return out;
}

/// Heights n + 1 - level serve as both f and preorder key.
template <ExactField F>
PreorderedBasis preordered_from_jordan(const AdaptedJordanBasis<F>& jb, std::size_t n, std::size_t k) {
  PreorderedBasis p;
  p.n = n;
  p.k = k;
  for (std::size_t b = 0; b < jb.blocks.size(); ++b) {
    std::vector<std::size_t> ids, fs;
    for (std::size_t i = 0; i < jb.blocks[b].size(); ++i) {
      ids.push_back(p.key.size());
      std::size_t height = n + 1 - jb.levels[b][i];
      p.key.push_back(static_cast<long>(height));
      fs.push_back(height);
    }
    p.blocks.push_back(std::move(ids));
    p.f.push_back(std::move(fs));
  }
  return p;
}

/// h with y_l (h - 1) = x_{l+1} for l < r and h fixing every other basis vector.
/// `basis` is indexed by the element ids of the selection.
template <ExactField F>
Matrix<F> build_h(const PairSelection& sel, const std::vector<Vec<F>>& basis, const Series<F>& s) {
  const F& f = s.field();
  std::size_t n = s.ambient_dim();
  for (std::size_t a = 0; a < sel.pairs.size(); ++a)
    for (std::size_t b = 0; b < a; ++b)
      if (sel.pairs[a].block == sel.pairs[b].block) throw PreconditionError("selection uses a block twice");
  if (sel.pairs.size() <= 1) return Matrix<F>::identity(f, n);
  auto p = Matrix<F>::from_rows(f, basis, n);
  auto hj = Matrix<F>::identity(f, n);
  for (std::size_t l = 0; l + 1 < sel.pairs.size(); ++l) hj(sel.pairs[l].y, sel.pairs[l + 1].x) = f.one();
  auto h = p.inverse() * hj * p;
  if (!in_stabilizer(h, s)) throw PreconditionError("h leaves the stability group; levels and selection disagree");
  auto h1 = minus_identity(h);
  if (!(h1 * h1).is_zero()) throw InternalError("(h - 1)^2 != 0");
  return h;
}

template <ExactField F>
struct WitnessCertificate {
  Matrix<F> h;
  std::size_t r = 0;
  Vec<F> probe;
  PairSelection selection;
  std::vector<Vec<F>> jordan_basis;
  /// Whether (g g^h - 1)^r is also nonzero (observed, not claimed).
  bool stronger = false;
  /// Dimension of the g-invariant subspace the construction ran in.
  std::size_t working_dim = 0;
};

template <ExactField F>
Matrix<F> witness_product(const Matrix<F>& g, const Matrix<F>& h) {
  return g * conjugate(g, h);
}

struct CertificateCheck {
  bool ok = true;
  std::string reason;
};

/// Direct verification: h invertible, h in S(s), (h-1)^2 = 0, g in S(s) and
/// probe (g g^h - 1)^{r-1} != 0.
template <ExactField F>
CertificateCheck verify_certificate(const Matrix<F>& g, const Series<F>& s, const Matrix<F>& h, std::size_t r,
                                    const Vec<F>& probe) {
  auto bad = [](std::string why) { return CertificateCheck{false, std::move(why)}; };
  std::size_t n = s.ambient_dim();
  if (g.rows() != n || !g.square() || h.rows() != n || !h.square() || probe.size() != n)
    return bad("dimension mismatch");
  if (!g.invertible() || !in_stabilizer(g, s)) return bad("g is not in the stability group");
  if (!h.invertible()) return bad("h is singular");
  if (!in_stabilizer(h, s)) return bad("h is not in the stability group");
  auto h1 = minus_identity(h);
  if (!(h1 * h1).is_zero()) return bad("(h-1)^2 != 0");
  if (r < 1) return bad("r must be positive");
  auto m = minus_identity(witness_product(g, h));
  Vec<F> v = probe;
  for (std::size_t i = 0; i + 1 < r; ++i) v = vec_times(v, m);
  if (is_zero_vec(g.field(), v)) return bad("probe (g g^h - 1)^(r-1) = 0");
  return {};
}

class WitnessPreconditionError : public PreconditionError {
 public:
  enum class Reason { not_in_stabilizer, coarsenable, exponent_too_large, not_unipotent };
  WitnessPreconditionError(Reason r, const std::string& msg) : PreconditionError(msg), reason(r) {}
  Reason reason;
};

namespace detail {

/// Runs the pipeline for g non-coarsenable on `coarse`; the Jordan basis is made
/// adapted to `fine` (a refinement of `coarse`) so that h stabilizes it too.
template <ExactField F>
WitnessCertificate<F> witness_core(const Matrix<F>& g, const Series<F>& coarse, const Series<F>& fine) {
  std::size_t n = coarse.length();
  auto k = unipotent_exponent(g).value();
  std::size_t r = pair_count(n, k);

  AdaptedJordanBasis<F> jb;
  try {
    jb = adapted_jordan_basis(g, fine);
  } catch (const NoAdaptedJordanBasis&) {
    if (&fine == &coarse) throw;
    jb = adapted_jordan_basis(g, coarse);
  }
  // levels with respect to the coarse series
  for (std::size_t b = 0; b < jb.blocks.size(); ++b)
    for (std::size_t i = 0; i < jb.blocks[b].size(); ++i) jb.levels[b][i] = level(jb.blocks[b][i], coarse);

  auto pre = preordered_from_jordan(jb, n, k);
  auto sel = select_pairs(pre);
  if (sel.r() != r) throw InternalError("selection has the wrong size");
  if (auto err = check_pair_selection(pre, sel)) throw InternalError("selection check failed: " + *err);
  auto basis = jb.flat();
  auto h = build_h(sel, basis, coarse);
  if (!(&fine == &coarse) && !in_stabilizer(h, fine)) throw NoAdaptedJordanBasis();

  WitnessCertificate<F> cert{h, r, {}, sel, basis, false, g.rows()};
  auto m = minus_identity(witness_product(g, h));
  auto power = m.pow(r - 1);
  std::vector<Vec<F>> candidates{basis[sel.pairs.front().y]};
  candidates.insert(candidates.end(), basis.begin(), basis.end());
  for (const auto& c : candidates)
    if (!is_zero_vec(g.field(), vec_times(c, power))) {
      cert.probe = c;
      break;
    }
  if (cert.probe.empty()) throw InternalError("(g g^h - 1)^(r-1) vanishes");
  cert.stronger = !(power * m).is_zero();
  auto check = verify_certificate(g, coarse, h, r, cert.probe);
  if (!check.ok) throw InternalError("certificate fails verification: " + check.reason);
  return cert;
}

template <ExactField F>
std::size_t witness_exponent_checks(const Matrix<F>& g, const Series<F>& s, std::size_t n) {
  using R = WitnessPreconditionError::Reason;
  if (!g.invertible() || !in_stabilizer(g, s))
    throw WitnessPreconditionError(R::not_in_stabilizer, "g is not in the stability group of the series");
  auto k = unipotent_exponent(g);
  if (!k) throw WitnessPreconditionError(R::not_unipotent, "g is not unipotent");
  if (*k + 2 >= n)
    throw WitnessPreconditionError(R::exponent_too_large, "exponent " + std::to_string(*k) +
                                                              " is not below n - 2 = " +
                                                              std::to_string(n >= 2 ? n - 2 : 0));
  return *k;
}

}  // namespace detail

/// Requires g in S(s), no proper subseries stabilized, exponent < length - 2.
template <ExactField F>
WitnessCertificate<F> construct_witness(const Matrix<F>& g, const Series<F>& s) {
  using R = WitnessPreconditionError::Reason;
  if (!g.invertible() || !in_stabilizer(g, s))
    throw WitnessPreconditionError(R::not_in_stabilizer, "g is not in the stability group of the series");
  if (!(canonical_coarsening(g, s) == s))
    throw WitnessPreconditionError(R::coarsenable, "g stabilizes a proper subseries (coarsenable)");
  detail::witness_exponent_checks(g, s, s.length());
  return detail::witness_core(g, s, s);
}

/// Requires g in S(s), every stabilized subseries of length >= n, exponent < n - 2.
/// Runs the construction inside a g-invariant subspace W and extends by the
/// identity on a complement compatible with every member of s.
template <ExactField F>
WitnessCertificate<F> extend_witness(const Matrix<F>& g, const Series<F>& s, std::size_t n) {
  using R = WitnessPreconditionError::Reason;
  const F& f = s.field();
  std::size_t dim = s.ambient_dim();
  if (!g.invertible() || !in_stabilizer(g, s))
    throw WitnessPreconditionError(R::not_in_stabilizer, "g is not in the stability group of the series");
  auto l0 = canonical_coarsening(g, s);
  std::size_t m = l0.length();
  if (m < n)
    throw WitnessPreconditionError(R::coarsenable, "g stabilizes a subseries of length " + std::to_string(m) +
                                                       " < " + std::to_string(n) + " (coarsenable)");
  auto k = detail::witness_exponent_checks(g, s, n);
  auto nil = minus_identity(g);

  std::vector<Vec<F>> seeds;
  for (std::size_t i = 1; i < m; ++i) {
    bool found = false;
    for (const auto& row : l0.member(i).rows())
      if (!l0.member(i + 2).contains(vec_times(row, nil))) {
        seeds.push_back(row);
        found = true;
        break;
      }
    if (!found) throw InternalError("no vector realizes step " + std::to_string(i));
  }
  seeds.push_back(l0.member(m).rows().front());
  std::vector<Vec<F>> gens;
  for (auto v : seeds)
    while (!is_zero_vec(f, v)) {
      gens.push_back(v);
      v = vec_times(v, nil);
    }
  auto w = Subspace<F>::span(f, dim, gens);

  // coordinates on W
  auto w_rows = w.rows();
  BasisSolver<F> in_w(f, dim, w_rows);
  auto coords = [&](const Vec<F>& v) { return in_w.solve(v).value(); };
  Matrix<F> gw(f, w.dim(), w.dim());
  for (std::size_t i = 0; i < w.dim(); ++i) gw.set_row(i, coords(vec_times(w_rows[i], g)));
  auto induced = [&](const Series<F>& src) {
    std::vector<Subspace<F>> members;
    for (const auto& x : src.members()) {
      std::vector<Vec<F>> rows;
      for (const auto& v : intersect(x, w).rows()) rows.push_back(coords(v));
      members.push_back(Subspace<F>::span(f, w.dim(), rows));
    }
    return Series<F>::validate(f, w.dim(), members);
  };
  auto coarse = induced(l0);
  auto fine = induced(s);
  if (coarse.length() != m || !(canonical_coarsening(gw, coarse) == coarse))
    throw InternalError("induced series on W lost a jump");
  auto inner = detail::witness_core(gw, coarse, fine);

  // D with X = (X ∩ W) ⊕ (X ∩ D) for every member X
  Subspace<F> d(f, dim);
  for (std::size_t l = s.size(); l >= 1; --l) {
    const auto& x = s.member(l);
    auto base = sum(intersect(x, w), d);
    d = sum(d, complement_in(base, x));
  }
  // h = t on W, identity on D
  std::vector<Vec<F>> basis_rows = w_rows;
  std::vector<Vec<F>> image_rows;
  for (std::size_t i = 0; i < w.dim(); ++i) image_rows.push_back(combine(f, inner.h.row(i), w_rows, dim));
  for (const auto& row : d.rows()) {
    basis_rows.push_back(row);
    image_rows.push_back(row);
  }
  auto p = Matrix<F>::from_rows(f, basis_rows, dim);
  auto h = p.inverse() * Matrix<F>::from_rows(f, image_rows, dim);

  auto lift = [&](const Vec<F>& x) { return combine(f, x, w_rows, dim); };
  WitnessCertificate<F> cert{h, inner.r, lift(inner.probe), inner.selection, {}, false, w.dim()};
  for (const auto& b : inner.jordan_basis) cert.jordan_basis.push_back(lift(b));
  cert.stronger = !minus_identity(witness_product(g, h)).pow(cert.r).is_zero();
  if (cert.r < pair_count(n, k)) throw InternalError("witness exponent below the claimed bound");
  auto check = verify_certificate(g, s, h, cert.r, cert.probe);
  if (!check.ok) throw InternalError("extended certificate fails verification: " + check.reason);
  return cert;
}

}  // namespace unistab
