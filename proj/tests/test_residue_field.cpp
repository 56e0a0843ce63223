#include <gtest/gtest.h>

#include <set>

#include "epi/residue_field.hpp"

using namespace epi;

namespace {

// squares by enumeration, independent of the log tables
std::set<int> squares(const ResidueField& F) {
  std::set<int> s;
  for (int x = 1; x < F.q(); ++x) s.insert(F.mul(x, x));
  return s;
}

}  // namespace

TEST(ResidueField, QuadCharExamples) {
  EXPECT_EQ(quad_char(1, ResidueField(7)), 1);
  EXPECT_EQ(quad_char(3, ResidueField(7)), -1);
  EXPECT_EQ(quad_char(ResidueField(5).from_int(-1), ResidueField(5)), 1);
  EXPECT_THROW(quad_char(0, ResidueField(5)), domain_error);
}

TEST(ResidueField, QuadCharMatchesEnumeratedSquares) {
  for (int p : {3, 5, 7, 11, 13})
    for (int f : {1, 2}) {
      ResidueField F(p, f);
      auto sq = squares(F);
      int total = 0;
      for (int x = 1; x < F.q(); ++x) {
        EXPECT_EQ(F.quad_char(x) == 1, sq.count(x) == 1) << p << "^" << f << " x=" << x;
        total += F.quad_char(x);
      }
      EXPECT_EQ(total, 0);
      EXPECT_EQ(F.quad_char(F.zeta()), -1);
    }
}

TEST(ResidueField, QuadCharMultiplicative) {
  for (int p : {3, 5, 7}) {
    ResidueField F(p, 2);
    for (int x = 1; x < F.q(); ++x)
      for (int y = 1; y < F.q(); ++y) EXPECT_EQ(F.quad_char(F.mul(x, y)), F.quad_char(x) * F.quad_char(y));
  }
}

TEST(ResidueField, FieldAxiomsAndGenerator) {
  for (int p : {3, 5, 7})
    for (int f : {1, 2}) {
      ResidueField F(p, f);
      for (int x = 1; x < F.q(); ++x) EXPECT_EQ(F.mul(x, F.inv(x)), 1);
      std::set<int> powers;
      for (int k = 0; k < F.q() - 1; ++k) powers.insert(F.pow(F.generator(), k));
      EXPECT_EQ(int(powers.size()), F.q() - 1);
      for (int x = 0; x < F.q(); ++x)
        for (int y = 0; y < F.q(); ++y) EXPECT_EQ(F.trace(F.add(x, y)), (F.trace(x) + F.trace(y)) % p);
    }
}

TEST(ResidueField, SmallestIrreducibleModulus) {
  EXPECT_EQ(ResidueField(3, 2).modulus(), std::make_pair(0, 1));  // t^2 + 1
  EXPECT_EQ(ResidueField(5, 2).modulus(), std::make_pair(0, 2));  // t^2 + 2
  EXPECT_EQ(ResidueField(7, 2).modulus(), std::make_pair(0, 1));
}

TEST(ResidueField, FrobeniusIsConjugation) {
  ResidueField F(5, 2);
  for (int x = 0; x < F.q(); ++x) {
    EXPECT_EQ(F.frob(F.frob(x)), x);
    EXPECT_TRUE(F.in_prime_field(F.mul(x, F.frob(x))));
  }
}

TEST(Cyclotomic, RelationAndArithmetic) {
  auto z = CyclotomicInt::zeta_power(5, 1);
  CyclotomicInt s(5);
  for (int k = 0; k < 5; ++k) s += z.pow(k);
  EXPECT_EQ(s, CyclotomicInt(5, 0));
  EXPECT_EQ(z.pow(5), CyclotomicInt(5, 1));
  EXPECT_EQ((z + CyclotomicInt(5, 2)) * (z - CyclotomicInt(5, 2)), z.pow(2) - CyclotomicInt(5, 4));
}

TEST(GaussBrute, ExamplesP3P5) {
  auto g3 = gauss_brute(ResidueField(3));
  EXPECT_EQ(g3.raw, CyclotomicInt::zeta_power(3, 1) - CyclotomicInt::zeta_power(3, 2));
  EXPECT_EQ(g3.raw * g3.raw, CyclotomicInt(3, -3));
  auto g5 = gauss_brute(ResidueField(5));
  EXPECT_EQ(g5.raw * g5.raw, CyclotomicInt(5, 5));
  EXPECT_EQ(gauss_unit_mul(g5.normalized, g5.normalized, ResidueField(5)), (GaussUnit{1, 0}));
  EXPECT_EQ(gauss_unit_mul(g3.normalized, g3.normalized, ResidueField(3)), (GaussUnit{-1, 0}));
}

TEST(GaussBrute, SquareIsChiMinusOne) {
  for (int p : {3, 5, 7, 11, 13})
    for (int f : {1, 2}) {
      ResidueField F(p, f);
      auto g = gauss_brute(F);
      EXPECT_EQ(g.raw * g.raw, CyclotomicInt(p, (long long)F.chi_minus_one() * F.q()));
      auto sq = gauss_unit_mul(g.normalized, g.normalized, F);
      EXPECT_EQ(sq, (GaussUnit{F.chi_minus_one(), 0}));
    }
}

TEST(GaussUnitAlgebra, Examples) {
  ResidueField F3(3), F5(5);
  EXPECT_EQ(gauss_unit_mul({1, 1}, {1, 1}, F3), (GaussUnit{-1, 0}));
  EXPECT_EQ(gauss_unit_mul({1, 1}, {1, 1}, F5), (GaussUnit{1, 0}));
  EXPECT_EQ(gauss_unit_mul({-1, 0}, {-1, 1}, F5), (GaussUnit{1, 1}));
}

TEST(GaussUnitAlgebra, GroupOfOrderFour) {
  for (int p : {3, 5, 7}) {
    ResidueField F(p);
    std::vector<GaussUnit> all{{1, 0}, {-1, 0}, {1, 1}, {-1, 1}};
    for (auto a : all) {
      EXPECT_EQ(gauss_unit_pow(a, 4, F), (GaussUnit{1, 0}));
      EXPECT_EQ(gauss_unit_mul(a, gauss_unit_inv(a, F), F), (GaussUnit{1, 0}));
      for (auto b : all) {
        EXPECT_EQ(gauss_unit_mul(a, b, F), gauss_unit_mul(b, a, F));
        for (auto c : all)
          EXPECT_EQ(gauss_unit_mul(gauss_unit_mul(a, b, F), c, F), gauss_unit_mul(a, gauss_unit_mul(b, c, F), F));
      }
    }
  }
}

// brute product of two one-dimensional sums a x^2 and b y^2 against the rule
TEST(GaussUnitAlgebra, MatchesBruteProducts) {
  for (int p : {3, 5, 7}) {
    ResidueField F(p);
    for (int a = 1; a < p; ++a)
      for (int b = 1; b < p; ++b) {
        CyclotomicInt s(p);
        for (int x = 0; x < p; ++x)
          for (int y = 0; y < p; ++y) s += psi(F.add(F.mul(a, F.mul(x, x)), F.mul(b, F.mul(y, y))), F);
        GaussUnit u = gauss_unit_mul({F.quad_char(a), 1}, {F.quad_char(b), 1}, F);
        // sum = q * unit when the product has k = 0
        ASSERT_EQ(u.k, 0);
        EXPECT_EQ(s, CyclotomicInt(p, (long long)u.sign * p));
      }
  }
}
