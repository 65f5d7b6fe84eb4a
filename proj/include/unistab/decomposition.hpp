#pragma once

// Splitting a chain into a direct sum of factor complements, section bases drawn
// from an adapted basis, and gluing section maps into one stabilizer element.

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "unistab/series.hpp"

namespace unistab {

template <ExactField F>
struct ChainSplit {
  /// V = V_0 > V_1 > ... > V_m = 0
  std::vector<Subspace<F>> chain;
  /// A_1, ..., A_m with V_{i-1} = A_i ⊕ V_i
  std::vector<Subspace<F>> parts;
};

template <ExactField F>
ChainSplit<F> split_chain(const std::vector<Subspace<F>>& chain) {
  auto series = Series<F>::from_chain(chain);  // validates endpoints and strict descent
  const F& f = series.field();
  std::size_t n = series.ambient_dim();
  std::size_t m = chain.size() - 1;
  auto full = Subspace<F>::full(f, n);

  ChainSplit<F> out{chain, {}};
  if (m == 0) return out;
  Subspace<F> b = complement_in(chain[1], full);
  out.parts.push_back(b);
  for (std::size_t i = 1; i < m; ++i) {
    b = sum(b, complement_in(sum(b, chain[i + 1]), full));
    if (!intersect(b, chain[i + 1]).is_zero() || !sum(b, chain[i + 1]).is_full())
      throw InternalError("B_i is not a complement of V_i");
    out.parts.push_back(intersect(b, chain[i]));
  }
  if (!b.is_full()) throw InternalError("B_m != V");
  std::vector<Vec<F>> stacked;
  for (std::size_t i = 0; i < m; ++i) {
    const auto& a = out.parts[i];
    if (a.dim() != chain[i].dim() - chain[i + 1].dim()) throw InternalError("dim A_i != dim V_{i-1}/V_i");
    if (!intersect(a, chain[i + 1]).is_zero() || !(sum(a, chain[i + 1]) == chain[i]))
      throw InternalError("V_{i-1} != A_i ⊕ V_i");
    for (auto& r : a.rows()) stacked.push_back(std::move(r));
  }
  if (Matrix<F>::from_rows(f, stacked, n).rank() != n) throw InternalError("parts are not a direct sum");
  return out;
}

/// Adapted basis vectors whose level falls in the section (u, w].
template <ExactField F>
std::vector<Vec<F>> section_basis(const std::vector<Vec<F>>& adapted, const Series<F>& s, const Subspace<F>& w,
                                  const Subspace<F>& u) {
  auto top = s.index_of(w), bottom = s.index_of(u);
  if (top == 0 || bottom == 0) throw PreconditionError("section ends must be members of the series");
  if (bottom <= top) throw PreconditionError("section bottom must lie strictly below the top");
  if (!is_adapted_basis(adapted, s)) throw PreconditionError("basis is not adapted to the series");
  std::vector<Vec<F>> out;
  for (const auto& v : adapted) {
    auto l = level(v, s);
    if (l >= top && l < bottom) out.push_back(v);
  }
  if (out.size() != w.dim() - u.dim() || !(sum(u, Subspace<F>::span(s.field(), s.ambient_dim(), out)) == w))
    throw InternalError("section vectors do not form a basis of w/u");
  return out;
}

template <ExactField F>
struct SectionMap {
  std::size_t top;     // 1-based member index of W
  std::size_t bottom;  // 1-based member index of U
  Matrix<F> map;       // acts on QuotientFrame(W, U) coordinates
};

template <ExactField F>
struct SectionAssignment {
  std::vector<SectionMap<F>> sections;
};

/// Each section [top, bottom) must not overlap another: W_b <= U_a or W_a <= U_b.
template <ExactField F>
void check_assignment(const Series<F>& s, const SectionAssignment<F>& a) {
  for (std::size_t i = 0; i < a.sections.size(); ++i) {
    const auto& x = a.sections[i];
    if (x.top < 1 || x.bottom > s.size() || x.top >= x.bottom)
      throw PreconditionError("section " + std::to_string(i) + " has invalid member indices");
    for (std::size_t j = 0; j < i; ++j) {
      const auto& y = a.sections[j];
      if (!(y.top >= x.bottom || x.top >= y.bottom))
        throw PreconditionError("sections " + std::to_string(j) + " and " + std::to_string(i) + " overlap");
    }
    QuotientFrame<F> frame(s.member(x.top), s.member(x.bottom));
    if (x.map.rows() != frame.dim() || !x.map.square())
      throw PreconditionError("section " + std::to_string(i) + " map has the wrong size");
    require_invertible(x.map, "section map");
    if (!in_stabilizer(x.map, section_series(s, s.member(x.top), s.member(x.bottom))))
      throw PreconditionError("section " + std::to_string(i) + " map does not stabilize its section series");
  }
}

/// The element acting as each section map on its section and fixing the other
/// adapted basis vectors.
template <ExactField F>
Matrix<F> patch_sections(const std::vector<Vec<F>>& adapted, const Series<F>& s, const SectionAssignment<F>& a) {
  const F& f = s.field();
  std::size_t n = s.ambient_dim();
  if (!is_adapted_basis(adapted, s)) throw PreconditionError("basis is not adapted to the series");
  check_assignment(s, a);

  auto hb = Matrix<F>::identity(f, n);  // in adapted-basis coordinates
  for (const auto& sec : a.sections) {
    const auto& w = s.member(sec.top);
    const auto& u = s.member(sec.bottom);
    QuotientFrame<F> frame(w, u);
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < adapted.size(); ++i) {
      auto l = level(adapted[i], s);
      if (l >= sec.top && l < sec.bottom) idx.push_back(i);
    }
    Matrix<F> c(f, idx.size(), idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i) c.set_row(i, frame.coords(adapted[idx[i]]));
    auto local = c * sec.map * c.inverse();
    for (std::size_t i = 0; i < idx.size(); ++i)
      for (std::size_t j = 0; j < idx.size(); ++j) hb(idx[i], idx[j]) = local(i, j);
  }
  auto p = Matrix<F>::from_rows(f, adapted, n);
  auto h = p.inverse() * hb * p;

  require_invertible(h, "patched element");
  if (!in_stabilizer(h, s)) throw InternalError("patched element leaves the stability group");
  for (const auto& sec : a.sections) {
    QuotientFrame<F> frame(s.member(sec.top), s.member(sec.bottom));
    if (frame.induced(h) != sec.map) throw InternalError("patched element induces the wrong section map");
  }
  return h;
}

}  // namespace unistab
