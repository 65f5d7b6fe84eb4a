#include <gtest/gtest.h>

#include "test_util.hpp"

using namespace unistab;
using namespace testutil;

TEST(Field, PrimeArithmetic) {
  EXPECT_EQ(gf7.inv(3), 5);
  EXPECT_EQ(gf7.from_int(-1), 6);
  EXPECT_EQ(gf7.div(1, 2), 4);
  EXPECT_EQ(gf7.parse("3/2"), gf7.mul(3, gf7.inv(2)));
  EXPECT_THROW(PrimeField(6), PreconditionError);
  EXPECT_THROW(gf7.parse("1/7"), PreconditionError);
  EXPECT_THROW(gf7.inv(0), PreconditionError);
}

TEST(Field, RationalParseNormalizes) {
  EXPECT_EQ(qq.format(qq.parse("2/4")), "1/2");
  EXPECT_EQ(qq.format(qq.parse("-6/3")), "-2");
  EXPECT_THROW(qq.parse("1/0"), PreconditionError);
  EXPECT_THROW(qq.parse("x"), PreconditionError);
}

TEST(Matrix, InverseAndPower) {
  auto m = Matrix<RationalField>::from_ints(qq, {{2, 1}, {1, 1}});
  EXPECT_TRUE((m * m.inverse()).is_identity());
  auto j = jordan_block(qq, 3);
  EXPECT_TRUE(minus_identity(j).pow(3).is_zero());
  EXPECT_FALSE(minus_identity(j).pow(2).is_zero());
  EXPECT_THROW(Matrix<RationalField>::from_ints(qq, {{1, 2}, {2, 4}}).inverse(), PreconditionError);
}

TEST(Echelonize, FullSpaceOverGF2) {
  auto s = echelonize(Matrix<PrimeField>::from_ints(gf2, {{0, 1}, {1, 0}}));
  EXPECT_EQ(s.rows(), vecs(gf2, {{1, 0}, {0, 1}}));
}

TEST(Echelonize, ScalingOverQ) {
  auto s = echelonize(Matrix<RationalField>::from_ints(qq, {{2, 4}}));
  EXPECT_EQ(s.rows(), vecs(qq, {{1, 2}}));
}

TEST(Echelonize, DependentRowsOverGF2) {
  auto s = echelonize(Matrix<PrimeField>::from_ints(gf2, {{1, 1, 0}, {0, 1, 1}, {1, 0, 1}}));
  EXPECT_EQ(s.rows(), vecs(gf2, {{1, 0, 1}, {0, 1, 1}}));
}

TEST(Sum, Examples) {
  auto x = span(gf2, 3, {{1, 1, 0}});
  EXPECT_EQ(sum(x, Subspace<PrimeField>(gf2, 3)), x);
  EXPECT_EQ(sum(unit_span(qq, 3, {0}), unit_span(qq, 3, {1})), unit_span(qq, 3, {0, 1}));
  EXPECT_EQ(sum(span(gf2, 3, {{1, 1, 0}}), span(gf2, 3, {{1, 0, 1}})).rows(), vecs(gf2, {{1, 0, 1}, {0, 1, 1}}));
}

TEST(Intersect, Examples) {
  auto x = span(gf2, 3, {{1, 1, 0}});
  EXPECT_EQ(intersect(x, Subspace<PrimeField>::full(gf2, 3)), x);
  EXPECT_TRUE(intersect(unit_span(qq, 3, {0}), unit_span(qq, 3, {1})).is_zero());
  auto i = intersect(span(gf2, 3, {{1, 1, 0}, {0, 0, 1}}), span(gf2, 3, {{1, 1, 1}}));
  EXPECT_EQ(i.rows(), vecs(gf2, {{1, 1, 1}}));
}

TEST(Kernel, Examples) {
  auto id = Matrix<RationalField>::identity(qq, 3);
  EXPECT_TRUE(kernel(id - id).is_full());
  EXPECT_EQ(kernel(minus_identity(jordan_block(gf5, 2))), unit_span(gf5, 2, {1}));
  EXPECT_EQ(kernel(minus_identity(jordan_block(qq, 3)).pow(2)), unit_span(qq, 3, {1, 2}));
}

TEST(Image, Examples) {
  EXPECT_TRUE(image(Matrix<PrimeField>(gf3, 3, 3)).is_zero());
  EXPECT_TRUE(image(Matrix<PrimeField>::from_ints(gf3, {{1, 1}, {0, 1}})).is_full());
  EXPECT_EQ(image(minus_identity(jordan_block(qq, 3))), unit_span(qq, 3, {1, 2}));
}

TEST(ComplementIn, Examples) {
  auto w = unit_span(qq, 3, {0, 1});
  EXPECT_EQ(complement_in(Subspace<RationalField>(qq, 3), w), w);
  EXPECT_TRUE(complement_in(w, w).is_zero());
  auto c = complement_in(unit_span(qq, 2, {1}), Subspace<RationalField>::full(qq, 2));
  EXPECT_EQ(c, unit_span(qq, 2, {0}));
  EXPECT_THROW(complement_in(unit_span(qq, 3, {2}), w), PreconditionError);
}

TEST(QuotientFrame, InducedMap) {
  auto g = jordan_block(qq, 3);
  QuotientFrame<RationalField> frame(Subspace<RationalField>::full(qq, 3), unit_span(qq, 3, {2}));
  EXPECT_EQ(frame.dim(), 2u);
  EXPECT_EQ(frame.induced(g), jordan_block(qq, 2));
}

// Randomized properties against the brute-force span oracle over GF(2) and GF(3).
class LinalgProperties : public ::testing::TestWithParam<int> {};

TEST_P(LinalgProperties, SumIntersectAgreeWithEnumeration) {
  Rng rng(GetParam());
  for (const PrimeField& f : {gf2, gf3}) {
    for (int trial = 0; trial < 30; ++trial) {
      std::size_t n = 1 + rng() % 4;
      auto a = random_matrix(f, rng, rng() % (n + 1), n);
      auto b = random_matrix(f, rng, rng() % (n + 1), n);
      auto sa = echelonize(a), sb = echelonize(b);
      auto ea = oracle::enumerate_span(f, a.row_list(), n);
      auto eb = oracle::enumerate_span(f, b.row_list(), n);
      EXPECT_EQ(oracle::enumerate_span(f, sa.rows(), n), ea);
      auto ra = a.row_list();
      auto rb = b.row_list();
      ra.insert(ra.end(), rb.begin(), rb.end());
      EXPECT_EQ(oracle::enumerate_span(f, sum(sa, sb).rows(), n), oracle::enumerate_span(f, ra, n));
      std::set<std::vector<std::int64_t>> common;
      std::set_intersection(ea.begin(), ea.end(), eb.begin(), eb.end(), std::inserter(common, common.end()));
      EXPECT_EQ(oracle::enumerate_span(f, intersect(sa, sb).rows(), n), common);
      // dimension formula
      EXPECT_EQ(sum(sa, sb).dim() + intersect(sa, sb).dim(), sa.dim() + sb.dim());
    }
  }
}

TEST_P(LinalgProperties, KernelImageComplement) {
  Rng rng(GetParam());
  for (int trial = 0; trial < 30; ++trial) {
    std::size_t n = 1 + rng() % 5;
    auto m = random_matrix(qq, rng, n, n);
    auto k = kernel(m);
    auto im = image(m);
    EXPECT_EQ(k.dim() + im.dim(), n);
    for (const auto& v : k.rows()) EXPECT_TRUE(is_zero_vec(qq, oracle::times(qq, v, m)));
    EXPECT_EQ(im.dim(), oracle::rank(qq, oracle::rows_of(m)));
    auto w = random_subspace(qq, rng, n, rng() % (n + 1));
    auto u = random_subspace(qq, rng, n, rng() % (n + 1));
    u = intersect(u, w);
    auto c = complement_in(u, w);
    EXPECT_TRUE(intersect(c, u).is_zero());
    EXPECT_EQ(sum(c, u), w);
    EXPECT_EQ(complement_in(u, w), c) << "complement is deterministic";
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, LinalgProperties, ::testing::Values(1, 2, 3, 4));
