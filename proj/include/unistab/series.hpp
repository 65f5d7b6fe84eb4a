#pragma once

// Finite series V = V_1 > V_2 > ... > V_{m+1} = 0, their jumps, adapted bases,
// stability groups and the canonical coarsening of a stabilizing element.

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "unistab/subspace.hpp"

namespace unistab {

/// Two members of a proposed series are incomparable.
class IncomparableError : public PreconditionError {
 public:
  IncomparableError(std::size_t a, std::size_t b)
      : PreconditionError("series members " + std::to_string(a) + " and " + std::to_string(b) +
                          " are incomparable"),
        first(a),
        second(b) {}
  std::size_t first;
  std::size_t second;
};

template <ExactField F>
struct Jump {
  Subspace<F> bottom;
  Subspace<F> top;
  std::size_t index;  // 1-based: top = V_index, bottom = V_{index+1}
};

template <ExactField F>
class Series {
 public:
  /// Validates and normalizes: V and 0 are added, duplicates dropped, members
  /// sorted by dimension and checked to form a chain. Reported indices refer to
  /// positions in `members` as given.
  static Series validate(const F& field, std::size_t n, const std::vector<Subspace<F>>& members) {
    std::vector<std::pair<Subspace<F>, std::size_t>> tagged;
    constexpr std::size_t implied = static_cast<std::size_t>(-1);
    tagged.emplace_back(Subspace<F>::full(field, n), implied);
    for (std::size_t i = 0; i < members.size(); ++i) {
      if (members[i].ambient_dim() != n || !(members[i].field() == field))
        throw PreconditionError("series member " + std::to_string(i) + " has the wrong ambient space");
      tagged.emplace_back(members[i], i);
    }
    tagged.emplace_back(Subspace<F>(field, n), implied);
    std::stable_sort(tagged.begin(), tagged.end(),
                     [](const auto& a, const auto& b) { return a.first.dim() > b.first.dim(); });
    Series s(field, n);
    std::size_t last_tag = implied;
    for (auto& [sub, tag] : tagged) {
      if (!s.members_.empty()) {
        const auto& prev = s.members_.back();
        if (prev == sub) continue;
        if (!prev.contains(sub)) throw IncomparableError(last_tag, tag);
      }
      s.members_.push_back(sub);
      last_tag = tag;
    }
    return s;
  }

  /// Trusted constructor for an already strictly descending chain from V to 0.
  static Series from_chain(std::vector<Subspace<F>> chain) {
    if (chain.empty()) throw PreconditionError("empty chain");
    Series s(chain.front().field(), chain.front().ambient_dim());
    if (!chain.front().is_full() || !chain.back().is_zero())
      throw PreconditionError("chain must start at V and end at 0");
    for (std::size_t i = 0; i + 1 < chain.size(); ++i)
      if (chain[i].dim() <= chain[i + 1].dim() || !chain[i].contains(chain[i + 1]))
        throw PreconditionError("chain is not strictly descending at position " + std::to_string(i));
    s.members_ = std::move(chain);
    return s;
  }

  static Series trivial(const F& field, std::size_t n) { return validate(field, n, {}); }

  /// V > <e2..en> > ... > <en> > 0.
  static Series full_flag(const F& field, std::size_t n) {
    std::vector<Subspace<F>> chain;
    for (std::size_t k = 0; k <= n; ++k) {
      std::vector<Vec<F>> rows;
      for (std::size_t i = k; i < n; ++i) rows.push_back(unit_vec(field, n, i));
      chain.push_back(Subspace<F>::span(field, n, rows));
    }
    return from_chain(std::move(chain));
  }

  const F& field() const { return field_; }
  std::size_t ambient_dim() const { return n_; }

  /// Number of jumps.
  std::size_t length() const { return members_.size() - 1; }
  std::size_t size() const { return members_.size(); }
  const std::vector<Subspace<F>>& members() const { return members_; }
  /// 1-based: member(1) = V, member(length()+1) = 0.
  const Subspace<F>& member(std::size_t l) const { return members_.at(l - 1); }

  std::vector<Jump<F>> jumps() const {
    std::vector<Jump<F>> out;
    for (std::size_t i = 0; i + 1 < members_.size(); ++i) out.push_back({members_[i + 1], members_[i], i + 1});
    return out;
  }

  /// 1-based position of x among the members, or 0.
  std::size_t index_of(const Subspace<F>& x) const {
    for (std::size_t i = 0; i < members_.size(); ++i)
      if (members_[i] == x) return i + 1;
    return 0;
  }

  bool operator==(const Series& o) const { return n_ == o.n_ && members_ == o.members_; }

 private:
  Series(F field, std::size_t n) : field_(std::move(field)), n_(n) {}

  F field_;
  std::size_t n_;
  std::vector<Subspace<F>> members_;
};

/// The unique l with v in V_l \ V_{l+1} (1-based).
template <ExactField F>
std::size_t level(const Vec<F>& v, const Series<F>& s) {
  if (is_zero_vec(s.field(), v)) throw PreconditionError("level of the zero vector is undefined");
  std::size_t l = 1;
  while (l + 1 <= s.size() && s.member(l + 1).contains(v)) ++l;
  return l;
}

template <ExactField F>
Jump<F> jump_of(const Vec<F>& v, const Series<F>& s) {
  auto l = level(v, s);
  return {s.member(l + 1), s.member(l), l};
}

template <ExactField F>
bool is_basis_of_space(const F& field, std::size_t n, const std::vector<Vec<F>>& basis) {
  if (basis.size() != n) return false;
  return Matrix<F>::from_rows(field, basis, n).rank() == n;
}

template <ExactField F>
bool is_adapted_basis(const std::vector<Vec<F>>& basis, const Series<F>& s) {
  const F& f = s.field();
  std::size_t n = s.ambient_dim();
  if (!is_basis_of_space(f, n, basis)) throw PreconditionError("input is not a basis of the ambient space");
  for (const auto& j : s.jumps()) {
    std::vector<Vec<F>> in_jump;
    for (const auto& v : basis)
      if (level(v, s) == j.index) in_jump.push_back(v);
    if (in_jump.size() != j.top.dim() - j.bottom.dim()) return false;
    auto spanned = sum(j.bottom, Subspace<F>::span(f, n, in_jump));
    if (spanned.dim() != j.top.dim()) return false;
  }
  return true;
}

template <ExactField F>
void require_member(const Series<F>& s, const Subspace<F>& x, const char* what) {
  if (s.index_of(x) == 0) throw PreconditionError(std::string(what) + " is not a member of the series");
}

/// The series induced on w/u, in the coordinates of QuotientFrame(w, u).
template <ExactField F>
Series<F> section_series(const Series<F>& s, const Subspace<F>& w, const Subspace<F>& u) {
  require_member(s, w, "section top");
  require_member(s, u, "section bottom");
  if (u.dim() >= w.dim()) throw PreconditionError("section bottom must lie strictly below the top");
  QuotientFrame<F> frame(w, u);
  std::vector<Subspace<F>> projected;
  for (const auto& x : s.members()) projected.push_back(frame.project(x));
  return Series<F>::validate(s.field(), frame.dim(), projected);
}

template <ExactField F>
void require_invertible(const Matrix<F>& g, const char* what = "matrix") {
  if (!g.invertible()) throw PreconditionError(std::string(what) + " is not invertible");
}

/// [T, g] <= B for every jump (B, T).
template <ExactField F>
bool in_stabilizer(const Matrix<F>& g, const Series<F>& s) {
  if (g.rows() != s.ambient_dim()) throw PreconditionError("matrix does not act on the series' space");
  require_invertible(g);
  auto n1 = minus_identity(g);
  for (const auto& j : s.jumps())
    if (!j.bottom.contains(j.top.times(n1))) return false;
  return true;
}

/// x g = x.
template <ExactField F>
bool normalizes(const Matrix<F>& g, const Subspace<F>& x) {
  return x.times(g) == x;
}

/// Deepest member of s containing x.
template <ExactField F>
std::size_t smallest_member_containing(const Series<F>& s, const Subspace<F>& x) {
  for (std::size_t l = s.size(); l >= 1; --l)
    if (s.member(l).contains(x)) return l;
  return 1;
}

/// W_0 = V, W_{i+1} = smallest member containing [W_i, g], until 0.
template <ExactField F>
Series<F> canonical_coarsening(const Matrix<F>& g, const Series<F>& s) {
  if (!in_stabilizer(g, s)) throw PreconditionError("element does not stabilize the series");
  auto n1 = minus_identity(g);
  std::vector<Subspace<F>> chain{s.member(1)};
  while (!chain.back().is_zero()) {
    auto l = smallest_member_containing(s, chain.back().times(n1));
    chain.push_back(s.member(l));
  }
  return Series<F>::from_chain(std::move(chain));
}

/// Subseries keeping the members at the given 1-based indices (V and 0 are always kept).
template <ExactField F>
Series<F> subseries(const Series<F>& s, const std::vector<std::size_t>& keep) {
  std::vector<Subspace<F>> members;
  for (auto l : keep) members.push_back(s.member(l));
  return Series<F>::validate(s.field(), s.ambient_dim(), members);
}

/// Refines every jump to a full flag using the complement of each bottom in its top.
template <ExactField F>
Series<F> refine_to_flag(const Series<F>& s) {
  std::vector<Subspace<F>> chain;
  for (const auto& j : s.jumps()) {
    auto comp = complement_in(j.bottom, j.top).rows();
    for (std::size_t k = 0; k < comp.size(); ++k) {
      std::vector<Vec<F>> rows(comp.begin() + static_cast<std::ptrdiff_t>(k), comp.end());
      chain.push_back(sum(j.bottom, Subspace<F>::span(s.field(), s.ambient_dim(), rows)));
    }
  }
  chain.push_back(Subspace<F>(s.field(), s.ambient_dim()));
  return Series<F>::from_chain(std::move(chain));
}

}  // namespace unistab
