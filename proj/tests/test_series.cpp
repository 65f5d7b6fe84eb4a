#include <gtest/gtest.h>

#include "test_util.hpp"

using namespace unistab;
using namespace testutil;

namespace {

// V > <e2..e4> > <e3,e4> > <e4> > 0
Series<RationalField> flag4() { return Series<RationalField>::full_flag(qq, 4); }

}  // namespace

TEST(Validate, TrivialSeries) {
  auto s = Series<PrimeField>::validate(gf2, 3, {});
  EXPECT_EQ(s.size(), 2u);
  EXPECT_EQ(s.length(), 1u);
}

TEST(Validate, FullFlagInDimThree) {
  auto s = Series<RationalField>::validate(qq, 3, {unit_span(qq, 3, {1, 2}), unit_span(qq, 3, {2})});
  EXPECT_EQ(s.length(), 3u);
  EXPECT_EQ(s, Series<RationalField>::full_flag(qq, 3));
}

TEST(Validate, NormalizesOrderAndDuplicates) {
  auto a = unit_span(qq, 3, {2});
  auto b = unit_span(qq, 3, {1, 2});
  auto s = Series<RationalField>::validate(qq, 3, {a, b, a, Subspace<RationalField>::full(qq, 3)});
  EXPECT_EQ(s, Series<RationalField>::full_flag(qq, 3));
}

TEST(Validate, IncomparableLinesNamed) {
  try {
    Series<RationalField>::validate(qq, 3, {unit_span(qq, 3, {0}), unit_span(qq, 3, {1})});
    FAIL() << "expected an incomparable pair";
  } catch (const IncomparableError& e) {
    std::set<std::size_t> pair{e.first, e.second};
    EXPECT_EQ(pair, (std::set<std::size_t>{0, 1}));
  }
}

TEST(JumpOf, Examples) {
  auto s = Series<RationalField>::full_flag(qq, 3);
  auto j = jump_of(unit_vec(qq, 3, 2), s);
  EXPECT_TRUE(j.bottom.is_zero());
  EXPECT_EQ(j.top, unit_span(qq, 3, {2}));
  auto j2 = jump_of(vec(qq, {1, 0, 1}), s);
  EXPECT_EQ(j2.bottom, unit_span(qq, 3, {1, 2}));
  EXPECT_TRUE(j2.top.is_full());
  auto t = Series<RationalField>::trivial(qq, 3);
  auto j3 = jump_of(vec(qq, {0, 5, 1}), t);
  EXPECT_TRUE(j3.bottom.is_zero());
  EXPECT_TRUE(j3.top.is_full());
  EXPECT_THROW(jump_of(zero_vec(qq, 3), s), PreconditionError);
}

TEST(Level, Examples) {
  auto s = Series<RationalField>::full_flag(qq, 3);
  EXPECT_EQ(level(unit_vec(qq, 3, 2), s), 3u);
  EXPECT_EQ(level(unit_vec(qq, 3, 0), s), 1u);
  EXPECT_EQ(level(vec(qq, {0, 1, 1}), s), level(unit_vec(qq, 3, 1), s));
}

TEST(AdaptedBasis, Examples) {
  auto flag = Series<RationalField>::full_flag(qq, 3);
  EXPECT_TRUE(is_adapted_basis(vecs(qq, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}), flag));
  auto s = Series<RationalField>::validate(qq, 2, {unit_span(qq, 2, {1})});
  EXPECT_TRUE(is_adapted_basis(vecs(qq, {{1, 1}, {0, 1}}), s));
  EXPECT_FALSE(is_adapted_basis(vecs(qq, {{1, 1}, {1, -1}}), s));
}

TEST(SectionSeries, Examples) {
  auto flag = Series<RationalField>::full_flag(qq, 3);
  auto whole = section_series(flag, flag.member(1), flag.member(4));
  EXPECT_EQ(whole.length(), 3u);
  EXPECT_EQ(whole.ambient_dim(), 3u);
  auto one = section_series(flag, flag.member(2), flag.member(3));
  EXPECT_EQ(one.ambient_dim(), 1u);
  EXPECT_EQ(one.length(), 1u);
  auto s4 = flag4();
  auto mid = section_series(s4, s4.member(2), s4.member(4));
  EXPECT_EQ(mid.ambient_dim(), 2u);
  EXPECT_EQ(mid.length(), 2u);
}

TEST(InStabilizer, Examples) {
  auto flag = Series<RationalField>::full_flag(qq, 3);
  EXPECT_TRUE(in_stabilizer(Matrix<RationalField>::identity(qq, 3), flag));
  EXPECT_TRUE(in_stabilizer(jordan_block(qq, 3), flag));
  EXPECT_FALSE(in_stabilizer(jordan_block(qq, 3), Series<RationalField>::trivial(qq, 3)));
  // lower triangular moves e3 out of <e3>
  EXPECT_FALSE(in_stabilizer(jordan_block(qq, 3).transposed(), flag));
}

TEST(Coarsening, IdentityGivesTrivialSeries) {
  auto c = canonical_coarsening(Matrix<RationalField>::identity(qq, 4), flag4());
  EXPECT_EQ(c, Series<RationalField>::trivial(qq, 4));
  EXPECT_LE(c.length(), 1u);
}

TEST(Coarsening, SingleBlockKeepsFullFlag) {
  auto c = canonical_coarsening(jordan_block(qq, 4), flag4());
  EXPECT_EQ(c, flag4());
  EXPECT_EQ(c.length(), 4u);
  EXPECT_EQ(oracle::shortest_stabilized_subseries(jordan_block(qq, 4), flag4()), 4u);
}

TEST(Coarsening, TwoAlignedBlocks) {
  // e1 -> e3, e2 -> e4: [V, g] = V_3 and [V_3, g] = 0
  auto g = Matrix<RationalField>::from_ints(qq, {{1, 0, 1, 0}, {0, 1, 0, 1}, {0, 0, 1, 0}, {0, 0, 0, 1}});
  auto c = canonical_coarsening(g, flag4());
  EXPECT_EQ(c.length(), 2u);
  EXPECT_EQ(c.member(2), unit_span(qq, 4, {2, 3}));
  EXPECT_EQ(oracle::shortest_stabilized_subseries(g, flag4()), 2u);
}

TEST(Coarsening, RejectsNonStabilizer) {
  EXPECT_THROW(canonical_coarsening(jordan_block(qq, 3), Series<RationalField>::trivial(qq, 3)), PreconditionError);
}

// Properties over random series.
class SeriesProperties : public ::testing::TestWithParam<int> {};

TEST_P(SeriesProperties, StabilizerAgreesWithRankOracle) {
  Rng rng(GetParam());
  for (int trial = 0; trial < 40; ++trial) {
    std::size_t n = 2 + rng() % 5;
    auto s = random_series(gf3, rng, n, 1 + rng() % n);
    auto g = trial % 2 ? random_stabilizer_element(gf3, rng, s) : random_invertible(gf3, rng, n);
    EXPECT_EQ(in_stabilizer(g, s), oracle::stabilizes(g, oracle::member_rows(s)));
  }
}

TEST_P(SeriesProperties, StabilizerIsAGroup) {
  Rng rng(GetParam());
  for (int trial = 0; trial < 20; ++trial) {
    std::size_t n = 2 + rng() % 5;
    auto s = random_series(qq, rng, n, 1 + rng() % n);
    auto a = random_stabilizer_element(qq, rng, s);
    auto b = random_stabilizer_element(qq, rng, s);
    EXPECT_TRUE(in_stabilizer(a * b, s));
    EXPECT_TRUE(in_stabilizer(a.inverse(), s));
  }
}

TEST_P(SeriesProperties, AdaptedBasisOfIsAdapted) {
  Rng rng(GetParam());
  for (int trial = 0; trial < 20; ++trial) {
    std::size_t n = 1 + rng() % 6;
    auto s = random_series(gf5, rng, n, 1 + rng() % n);
    auto basis = adapted_basis_of(s);
    EXPECT_TRUE(is_adapted_basis(basis, s));
    // each jump receives exactly its quotient dimension
    for (const auto& j : s.jumps()) {
      std::size_t count = 0;
      for (const auto& v : basis) count += level(v, s) == j.index;
      EXPECT_EQ(count, j.top.dim() - j.bottom.dim());
    }
  }
}

TEST_P(SeriesProperties, CoarseningIsStabilizedSubseriesOfMinimalLength) {
  Rng rng(GetParam());
  for (int trial = 0; trial < 25; ++trial) {
    std::size_t n = 2 + rng() % 4;
    auto s = random_series(gf2, rng, n, 1 + rng() % n);
    auto g = random_stabilizer_element(gf2, rng, s, 0.3);
    auto c = canonical_coarsening(g, s);
    EXPECT_TRUE(in_stabilizer(g, c));
    for (const auto& m : c.members()) EXPECT_NE(s.index_of(m), 0u);
    EXPECT_EQ(c.length(), oracle::shortest_stabilized_subseries(g, s));
  }
}

TEST_P(SeriesProperties, RefineToFlagIsAFlagRefinement) {
  Rng rng(GetParam());
  std::size_t n = 2 + GetParam() % 5;
  auto s = random_series(qq, rng, n, 1 + rng() % n);
  auto r = refine_to_flag(s);
  EXPECT_EQ(r.length(), n);
  for (const auto& m : s.members()) EXPECT_NE(r.index_of(m), 0u);
}

INSTANTIATE_TEST_SUITE_P(Seeds, SeriesProperties, ::testing::Values(11, 12, 13, 14, 15));
