#include <gtest/gtest.h>

#include "test_util.hpp"

using namespace unistab;
using namespace testutil;

TEST(Transvection, ZeroMapIsIdentity) {
  auto u = unit_span(qq, 3, {2});
  EXPECT_TRUE(make_transvection(TransvectionSpec<RationalField>::zero(u)).is_identity());
}

TEST(Transvection, Shear) {
  auto u = unit_span(qq, 2, {1});
  TransvectionSpec<RationalField> spec(u, Matrix<RationalField>::from_ints(qq, {{0, 1}}));
  EXPECT_EQ(make_transvection(spec), Matrix<RationalField>::from_ints(qq, {{1, 1}, {0, 1}}));
}

TEST(Transvection, LastColumnOverGF5) {
  auto u = unit_span(gf5, 3, {2});
  // coset representatives e1, e2
  TransvectionSpec<PrimeField> spec(u, Matrix<PrimeField>::from_ints(gf5, {{0, 0, 1}, {0, 0, 2}}));
  auto x = make_transvection(spec);
  EXPECT_EQ(x, Matrix<PrimeField>::from_ints(gf5, {{1, 0, 1}, {0, 1, 2}, {0, 0, 1}}));
}

TEST(Transvection, RejectsImageOutsideU) {
  auto u = unit_span(qq, 2, {1});
  EXPECT_THROW(TransvectionSpec<RationalField>(u, Matrix<RationalField>::from_ints(qq, {{1, 0}})), PreconditionError);
}

TEST(Commutator, Examples) {
  auto g = jordan_block(qq, 3);
  EXPECT_TRUE(commutator(g, g).is_identity());
  auto a = jordan_form(qq, {2, 1});
  auto d = Matrix<RationalField>::from_ints(qq, {{1, 0, 0}, {0, 1, 0}, {0, 0, 5}});
  EXPECT_TRUE(commutator(a, d).is_identity());
  EXPECT_EQ(iterated_commutator(d, g, 0), d);
  EXPECT_THROW(commutator(g, Matrix<RationalField>(qq, 3, 3)), PreconditionError);
}

TEST(Commutator, CaseOneSettingMatchesIdentity) {
  // U = <e3> is a member of the full flag, J3 stabilizes it and kills it.
  auto g = jordan_block(qq, 3);
  auto u = unit_span(qq, 3, {2});
  TransvectionSpec<RationalField> spec(u, Matrix<RationalField>::from_ints(qq, {{0, 0, 1}, {0, 0, 0}}));
  auto x = make_transvection(spec);
  auto direct = oracle::product(oracle::product(oracle::product(x.inverse(), g.inverse()), x), g);
  EXPECT_EQ(commutator(x, g), direct);
}

TEST(Lemma2, IdentityT) {
  auto s = Series<RationalField>::full_flag(qq, 4);
  Rng rng(5);
  auto spec = random_phi(qq, rng, s.member(3));
  auto res = lemma2_check(spec, Matrix<RationalField>::identity(qq, 4), 3);
  EXPECT_TRUE(res.ok);
}

TEST(Lemma2, FullFlagDimFour) {
  auto s = Series<RationalField>::full_flag(qq, 4);
  auto u = s.member(3);  // <e3, e4>
  // t unitriangular with [V, t] <= <e2, e3, e4>; phi kills that mod U
  auto t = Matrix<RationalField>::from_ints(qq, {{1, 1, 2, 0}, {0, 1, 1, 3}, {0, 0, 1, 1}, {0, 0, 0, 1}});
  // representatives e1, e2; phi(e1) = e3 + e4, phi(e2) = 0 so phi kills <e2> + U
  TransvectionSpec<RationalField> spec(u, Matrix<RationalField>::from_ints(qq, {{0, 0, 1, 1}, {0, 0, 0, 0}}));
  EXPECT_TRUE(lemma2_check(spec, t, 3).ok);
  // k = 1 directly from the commutator
  auto x = make_transvection(spec);
  auto c = commutator(x, t);
  auto expected = Matrix<RationalField>::identity(qq, 4) + spec.endomorphism() * minus_identity(t);
  EXPECT_EQ(c, expected);
}

TEST(Lemma2, HypothesisViolationIsAPreconditionError) {
  auto s = Series<RationalField>::full_flag(qq, 3);
  auto t = jordan_block(qq, 3);
  // phi(e2) != 0 but e2 = e1 (t - 1) lies in [V, t]
  TransvectionSpec<RationalField> spec(s.member(3), Matrix<RationalField>::from_ints(qq, {{0, 0, 0}, {0, 0, 1}}));
  EXPECT_THROW(lemma2_check(spec, t, 2), PreconditionError);
}

TEST(EngelCase1, LargeNGivesIdentity) {
  auto g = jordan_block(qq, 4);
  auto u = unit_span(qq, 4, {3});
  Rng rng(3);
  auto spec = random_phi(qq, rng, u);
  EXPECT_TRUE(engel_witness_case1(g, u, spec, 5).is_identity());
}

TEST(EngelCase1, HitsTheImage) {
  auto g = jordan_block(qq, 4);
  auto u = unit_span(qq, 4, {3});
  // representatives e1, e2, e3; phi(e3) = e4
  TransvectionSpec<RationalField> spec(u, Matrix<RationalField>::from_ints(qq, {{0, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 1}}));
  auto z = engel_witness_case1(g, u, spec, 2);
  EXPECT_FALSE(z.is_identity());
  auto gi1 = g.inverse() - Matrix<RationalField>::identity(qq, 4);
  EXPECT_EQ(z, Matrix<RationalField>::identity(qq, 4) + oracle::product(oracle::power(gi1, 2), spec.endomorphism()));
}

TEST(EngelCase1, ZeroPhi) {
  auto g = jordan_block(gf7, 4);
  auto u = unit_span(gf7, 4, {3});
  for (std::size_t n = 0; n < 5; ++n)
    EXPECT_TRUE(engel_witness_case1(g, u, TransvectionSpec<PrimeField>::zero(u), n).is_identity());
}

TEST(OnePlusEta, ZeroEta) {
  auto g = jordan_block(qq, 4);
  EXPECT_TRUE(one_plus_eta_commutator(Matrix<RationalField>(qq, 4, 4), g, 2).is_identity());
}

TEST(OnePlusEta, UpperShiftN1) {
  auto g = jordan_block(qq, 4);
  Matrix<RationalField> eta(qq, 4, 4);
  eta(0, 1) = 1;
  auto c = one_plus_eta_commutator(eta, g, 1);
  Matrix<RationalField> expected = Matrix<RationalField>::identity(qq, 4);
  expected(0, 2) = 1;
  EXPECT_EQ(c, expected);
  EXPECT_TRUE(one_plus_eta_commutator(eta, g, 4).is_identity());
}

TEST(OnePlusEta, PreconditionsChecked) {
  auto g = jordan_block(qq, 3);
  Matrix<RationalField> sq(qq, 3, 3);
  sq(0, 1) = 1;
  sq(1, 2) = 1;
  EXPECT_THROW(one_plus_eta_commutator(sq, g, 1), PreconditionError);
  // eta = E23 with g = J3: squares vanish but (g - 1) eta != 0, and the identity fails
  Matrix<RationalField> e23(qq, 3, 3);
  e23(1, 2) = 1;
  EXPECT_THROW(one_plus_eta_commutator(e23, g, 1), PreconditionError);
  auto direct = iterated_commutator(Matrix<RationalField>::identity(qq, 3) + e23, g, 1);
  EXPECT_NE(direct, Matrix<RationalField>::identity(qq, 3) + e23 * minus_identity(g));
}

class TransvectionProperties : public ::testing::TestWithParam<int> {};

TEST_P(TransvectionProperties, HomomorphismAndEquivariance) {
  Rng rng(GetParam());
  for (int trial = 0; trial < 20; ++trial) {
    std::size_t n = 2 + rng() % 5;
    auto s = random_series(gf7, rng, n, 1 + rng() % n);
    auto u = s.member(1 + rng() % s.size());
    auto a = random_phi(gf7, rng, u);
    auto b = random_phi(gf7, rng, u);
    auto xa = make_transvection(a), xb = make_transvection(b);
    EXPECT_EQ(make_transvection(a + b), oracle::product(xa, xb));
    EXPECT_TRUE(minus_identity(xa).pow(2).is_zero());
    auto g = random_stabilizer_element(gf7, rng, s);
    EXPECT_EQ(make_transvection(transport(a, g)), oracle::product(oracle::product(g.inverse(), xa), g));
  }
}

TEST_P(TransvectionProperties, EndomorphismRoundTrip) {
  Rng rng(GetParam());
  for (int trial = 0; trial < 20; ++trial) {
    std::size_t n = 1 + rng() % 5;
    auto u = random_subspace(qq, rng, n, rng() % (n + 1));
    auto a = random_phi(qq, rng, u);
    auto back = TransvectionSpec<RationalField>::from_endomorphism(u, a.endomorphism());
    EXPECT_EQ(back.phi(), a.phi());
    EXPECT_TRUE(u.times(a.endomorphism()).is_zero());
    EXPECT_TRUE(u.contains(image(a.endomorphism())));
  }
}

TEST_P(TransvectionProperties, Lemma2NeverFailsUnderHypothesis) {
  Rng rng(GetParam());
  for (int trial = 0; trial < 20; ++trial) {
    std::size_t n = 2 + rng() % 5;
    auto s = random_series(qq, rng, n, 1 + rng() % n);
    auto t = random_stabilizer_element(qq, rng, s);
    auto spec = random_phi_killing(qq, rng, s.member(1 + rng() % s.size()), t);
    EXPECT_TRUE(lemma2_check(spec, t, 1 + rng() % 5).ok);
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, TransvectionProperties, ::testing::Values(31, 32, 33));
