#include <gtest/gtest.h>

#include "epi/verify.hpp"
#include "support.hpp"

using namespace epi;
using namespace epi::testing;

namespace {

ReducibilitySet red(int s1_twice, int s2_twice) { return {Quarter::half(s1_twice), Quarter::half(s2_twice)}; }

}  // namespace

TEST(Hecke, ReducibilitySetArithmetic) {
  EXPECT_EQ(reducibility_set(Quarter{4}, Quarter{4}, 1), red(2, 0));
  EXPECT_EQ(reducibility_set(Quarter{4}, Quarter{4}, -1), red(0, 2));
  EXPECT_EQ(reducibility_set(Quarter::half(3), Quarter::half(1), 1), red(2, 1));
  EXPECT_EQ(reducibility_set(Quarter{4}, Quarter{0}, -1), red(1, 1));
  EXPECT_TRUE(red(2, 1).contains_one());
  EXPECT_THROW(reducibility_set(Quarter{4}, Quarter{4}, 0), domain_error);
  EXPECT_EQ(to_string(red(2, 1)), "{+-1, +-1/2 + pi i/log q}");
}

TEST(Hecke, EigenProductRejectsForeignValues) {
  HeckeCoeffs c;
  c.r_y = c.r_z = Quarter{4};
  c.eps_T_y = {1, 0};
  c.eps_T_z = {1, 1};
  ResidueField F(5);
  EXPECT_EQ(eigen_product_check(c, {1, 1}, F), red(2, 0));
  EXPECT_EQ(eigen_product_check(c, {-1, 1}, F), red(0, 2));
  EXPECT_THROW(eigen_product_check(c, {1, 0}, F), domain_error);
}

TEST(Hecke, FitCoefficient) {
  auto a = fit_coefficient(124, 5, 2, 3);
  ASSERT_TRUE(a);
  EXPECT_EQ(a->first, Quarter::half(3));
  EXPECT_EQ(a->second, 1);
  auto b = fit_coefficient(-4, 5, 1, 1);
  ASSERT_TRUE(b);
  EXPECT_EQ(b->first, Quarter{4});
  EXPECT_EQ(b->second, -1);
  auto z = fit_coefficient(0, 5, 1, 1);
  ASSERT_TRUE(z);
  EXPECT_EQ(z->first, Quarter{0});
  EXPECT_FALSE(fit_coefficient(7, 5, 1, 1));
}

TEST(Hecke, WorkedExamplesBruteEqualsClosed) {
  for (int p : {3, 5, 7})
    for (auto& tag : worked_example_tags()) {
      auto F = example_field(tag, p);
      for (auto& c : example_characters(tag, p))
        EXPECT_EQ(brute_b_sum(tag, F, c), closed_b_value(tag, F, c)) << tag << " p=" << p;
    }
}

TEST(Hecke, RejectsNonSelfDualCharacters) {
  ExampleChars c;
  c.lt = {1};
  EXPECT_THROW(brute_b_sum("u1_ram", ResidueField(7), c), domain_error);
  EXPECT_THROW(brute_b_sum("nope", ResidueField(7), ExampleChars{}), domain_error);
}

// the tabulated Red sets of the U(1) examples, rebuilt from the brute sums
TEST(Hecke, UnitaryOneRedSets) {
  for (int p : {3, 5, 7, 11}) {
    ResidueField Fu(p, 2), Fr(p);
    int hits[3] = {0, 0, 0};
    for (int s = 0; s <= p; ++s)
      for (int t = 0; t <= p; ++t) {
        ExampleChars c;
        c.lt = {s * (p - 1)};
        c.lambda_exponent = t;
        auto co = u1_coeffs(true, Fu, c);
        // lambda~ <-> lambda iff lambda~ = lambda o (1 - c) on mu_F
        bool match = (s * (p - 1) + (long long)t * (p - 1)) % (p * p - 1) == 0;
        if (match) {
          EXPECT_EQ(eigen_product_check(co, {1, 0}, Fu), red(2, 1));
          EXPECT_EQ(eigen_product_check(co, {-1, 0}, Fu), red(1, 2));
          hits[0]++;
        } else {
          EXPECT_EQ(eigen_product_check(co, {1, 0}, Fu), red(0, 1));
          hits[1]++;
        }
      }
    EXPECT_EQ(hits[0], p + 1);
    for (int lm : {1, -1}) {
      ExampleChars c;
      c.lambda_minus_one = lm;
      auto co = u1_coeffs(false, Fr, c);
      EXPECT_EQ(eigen_product_check(co, {lm, 0}, Fr), red(2, 0));
      EXPECT_EQ(eigen_product_check(co, {-lm, 0}, Fr), red(0, 2));
      c.lt = mu_quadratic(Fr);
      co = u1_coeffs(false, Fr, c);
      EXPECT_TRUE(co.bz_vanishes);
      EXPECT_EQ(eigen_product_check(co, {1, 0}, Fr), red(1, 1));
    }
  }
}

TEST(Hecke, ClosedCoefficientShapes) {
  Rng r(31);
  for (Family f : classical_families())
    for (int p : {3, 5, 7}) {
      auto G = random_stratum(r, f, p, 2, 1, pick(r, 0, 1));
      int i = G.stratum.non_null()[0];
      auto gp = gauss_product(G.group, G.stratum, i);
      auto c = closed_coeffs(G.group, G.stratum, i, first_form_hypothesis(G.group, G.stratum, i));
      EXPECT_FALSE(c.bz_vanishes);
      EXPECT_EQ(c.dim_W, gp.dim);
      EXPECT_EQ(c.c_z.q4, 2 * (gp.dim - 1));
      EXPECT_EQ(c.eps_T_z, gp.value);
      if (!is_unram_unitary(f)) {
        // the other self-dual hypothesis kills b_z
        MuCharacter other = normalize(MuCharacter{first_form_hypothesis(G.group, G.stratum, i).exponent + (G.group.field.q() - 1) / 2}, G.group.field);
        EXPECT_TRUE(closed_coeffs(G.group, G.stratum, i, other).bz_vanishes);
      }
    }
}

TEST(Hecke, FirstGeneralFormContainsOne) {
  Rng r(32);
  int checked = 0;
  for (int t = 0; t < 400; ++t) {
    const auto& fams = classical_families();
    Family f = fams[pick(r, 0, int(fams.size()) - 1)];
    auto G = random_stratum(r, f, 3 + 2 * pick(r, 0, 2), pick(r, 1, 3), pick(r, 1, 2), pick(r, 0, 1));
    for (int i : G.stratum.non_null()) {
      auto c = closed_coeffs(G.group, G.stratum, i, first_form_hypothesis(G.group, G.stratum, i));
      EXPECT_TRUE(eigen_product_check(c, first_form_value(G.group, G.stratum, i), G.group.field).contains_one()) << to_string(f);
      ++checked;
    }
  }
  EXPECT_GT(checked, 400);
}
