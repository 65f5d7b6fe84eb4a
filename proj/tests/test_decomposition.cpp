#include <gtest/gtest.h>

#include "test_util.hpp"

using namespace unistab;
using namespace testutil;

namespace {

// V > <e2..e6> > <e3..e6> > <e5, e6> > <e6> > 0
Series<RationalField> six() {
  return Series<RationalField>::validate(
      qq, 6, {unit_span(qq, 6, {1, 2, 3, 4, 5}), unit_span(qq, 6, {2, 3, 4, 5}), unit_span(qq, 6, {4, 5}),
              unit_span(qq, 6, {5})});
}

Matrix<RationalField> shear2(long c) { return Matrix<RationalField>::from_ints(qq, {{1, c}, {0, 1}}); }

}  // namespace

TEST(SplitChain, FullFlag) {
  auto split = split_chain(Series<RationalField>::full_flag(qq, 3).members());
  ASSERT_EQ(split.parts.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(split.parts[i], unit_span(qq, 3, {i}));
}

TEST(SplitChain, TwoStep) {
  auto s = Series<RationalField>::validate(qq, 4, {unit_span(qq, 4, {2, 3})});
  auto split = split_chain(s.members());
  ASSERT_EQ(split.parts.size(), 2u);
  EXPECT_EQ(split.parts[0].dim(), 2u);
  EXPECT_EQ(split.parts[1].dim(), 2u);
}

TEST(SplitChain, RandomChainOverGF7) {
  Rng rng(61);
  auto s = random_series(gf7, rng, 6, 4);
  auto split = split_chain(s.members());
  std::vector<Vec<PrimeField>> stacked;
  for (const auto& a : split.parts)
    for (const auto& r : a.rows()) stacked.push_back(r);
  EXPECT_EQ(oracle::rank(gf7, stacked), 6u);
}

TEST(SplitChain, RejectsNonChain) {
  std::vector<Subspace<RationalField>> bad{Subspace<RationalField>::full(qq, 2), unit_span(qq, 2, {0}),
                                           unit_span(qq, 2, {1}), Subspace<RationalField>(qq, 2)};
  EXPECT_THROW(split_chain(bad), PreconditionError);
}

TEST(SectionBasis, StandardBasis) {
  auto s = Series<RationalField>::full_flag(qq, 4);
  auto basis = Matrix<RationalField>::identity(qq, 4).row_list();
  auto sec = section_basis(basis, s, s.member(2), s.member(4));
  EXPECT_EQ(sec, vecs(qq, {{0, 1, 0, 0}, {0, 0, 1, 0}}));
}

TEST(SectionBasis, SkewBasis) {
  auto s = Series<RationalField>::validate(qq, 2, {unit_span(qq, 2, {1})});
  auto sec = section_basis(vecs(qq, {{1, 1}, {0, 1}}), s, s.member(1), s.member(2));
  EXPECT_EQ(sec, vecs(qq, {{1, 1}}));
}

TEST(SectionBasis, DegenerateSectionRejected) {
  auto s = Series<RationalField>::full_flag(qq, 3);
  auto basis = Matrix<RationalField>::identity(qq, 3).row_list();
  EXPECT_THROW(section_basis(basis, s, s.member(2), s.member(2)), PreconditionError);
  EXPECT_THROW(section_basis(vecs(qq, {{1, 0, 0}, {1, 1, 0}, {0, 1, 1}}), s, s.member(1), s.member(2)),
               PreconditionError);
}

TEST(Patch, EmptyAssignment) {
  auto s = six();
  auto basis = Matrix<RationalField>::identity(qq, 6).row_list();
  EXPECT_TRUE(patch_sections(basis, s, SectionAssignment<RationalField>{}).is_identity());
}

TEST(Patch, WholeSpace) {
  auto s = Series<RationalField>::full_flag(qq, 3);
  auto basis = Matrix<RationalField>::identity(qq, 3).row_list();
  auto m = Matrix<RationalField>::from_ints(qq, {{1, 2, 3}, {0, 1, 4}, {0, 0, 1}});
  SectionAssignment<RationalField> a{{{1, 4, m}}};
  EXPECT_EQ(patch_sections(basis, s, a), m);
}

TEST(Patch, TwoDisjointShears) {
  auto s = six();
  auto basis = vecs(qq, {{1, 1, 0, 0, 0, 0}, {0, 1, 0, 0, 0, 0}, {0, 0, 1, 0, 0, 1},
                         {0, 0, 0, 1, 0, 0}, {0, 0, 0, 0, 1, 1}, {0, 0, 0, 0, 0, 1}});
  ASSERT_TRUE(is_adapted_basis(basis, s));
  SectionAssignment<RationalField> a{{{1, 3, shear2(2)}, {4, 6, shear2(-1)}}};
  auto h = patch_sections(basis, s, a);
  EXPECT_TRUE(in_stabilizer(h, s));
  QuotientFrame<RationalField> top(s.member(1), s.member(3)), bottom(s.member(4), s.member(6));
  EXPECT_EQ(top.induced(h), shear2(2));
  EXPECT_EQ(bottom.induced(h), shear2(-1));
  // fixes the adapted vectors outside both sections
  EXPECT_EQ(vec_times(basis[2], h), basis[2]);
  EXPECT_EQ(vec_times(basis[3], h), basis[3]);
}

TEST(Patch, OverlapRejected) {
  auto s = six();
  auto basis = Matrix<RationalField>::identity(qq, 6).row_list();
  auto id3 = Matrix<RationalField>::identity(qq, 3);
  SectionAssignment<RationalField> a{{{1, 3, shear2(1)}, {2, 5, id3}}};
  EXPECT_THROW(patch_sections(basis, s, a), PreconditionError);
}

TEST(Patch, MapOutsideSectionStabilizerRejected) {
  auto s = six();
  auto basis = Matrix<RationalField>::identity(qq, 6).row_list();
  SectionAssignment<RationalField> a{{{1, 3, shear2(1).transposed()}}};
  EXPECT_THROW(patch_sections(basis, s, a), PreconditionError);
}

namespace {

/// Random section assignment on disjoint consecutive ranges of members.
template <ExactField F>
SectionAssignment<F> random_assignment(const F& f, Rng& rng, const Series<F>& s) {
  SectionAssignment<F> a;
  std::size_t l = 1;
  while (l < s.size()) {
    std::size_t span = 1 + rng() % 2;
    std::size_t bottom = std::min(l + span, s.size());
    if (rng() % 3) {
      auto sub = section_series(s, s.member(l), s.member(bottom));
      a.sections.push_back({l, bottom, random_stabilizer_element(f, rng, sub)});
    }
    l = bottom + (rng() % 2);
  }
  return a;
}

}  // namespace

class DecompositionProperties : public ::testing::TestWithParam<int> {};

TEST_P(DecompositionProperties, SplitIsDirect) {
  Rng rng(GetParam());
  for (int trial = 0; trial < 20; ++trial) {
    std::size_t n = 1 + rng() % 7;
    auto s = random_series(gf3, rng, n, 1 + rng() % n);
    auto split = split_chain(s.members());
    std::vector<Vec<PrimeField>> stacked;
    for (std::size_t i = 0; i < split.parts.size(); ++i) {
      EXPECT_EQ(split.parts[i].dim(), s.member(i + 1).dim() - s.member(i + 2).dim());
      for (const auto& r : split.parts[i].rows()) stacked.push_back(r);
    }
    EXPECT_EQ(oracle::rank(gf3, stacked), n);
  }
}

TEST_P(DecompositionProperties, PatchInducesSectionMaps) {
  Rng rng(GetParam());
  for (int trial = 0; trial < 15; ++trial) {
    std::size_t n = 2 + rng() % 6;
    auto s = random_series(qq, rng, n, 1 + rng() % n);
    auto basis = adapted_basis_of(s);
    auto a = random_assignment(qq, rng, s);
    auto h = patch_sections(basis, s, a);
    EXPECT_EQ(oracle::rank(qq, oracle::rows_of(h)), n);
    for (const auto& sec : a.sections) {
      QuotientFrame<RationalField> frame(s.member(sec.top), s.member(sec.bottom));
      EXPECT_EQ(frame.induced(h), sec.map);
    }
  }
}

TEST_P(DecompositionProperties, PatchComposes) {
  Rng rng(GetParam());
  for (int trial = 0; trial < 15; ++trial) {
    std::size_t n = 2 + rng() % 6;
    auto s = random_series(gf5, rng, n, 1 + rng() % n);
    auto basis = adapted_basis_of(s);
    auto all = random_assignment(gf5, rng, s);
    SectionAssignment<PrimeField> a, b;
    for (std::size_t i = 0; i < all.sections.size(); ++i) (i % 2 ? b : a).sections.push_back(all.sections[i]);
    auto ha = patch_sections(basis, s, a), hb = patch_sections(basis, s, b);
    auto hab = patch_sections(basis, s, all);
    EXPECT_EQ(hab, ha * hb);
    EXPECT_EQ(ha * hb, hb * ha);
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, DecompositionProperties, ::testing::Values(71, 72, 73));
