#include <gtest/gtest.h>

#include "epi/square_classes.hpp"

using namespace epi;

namespace {

// integer representative of a class: unit 1 or the generator, times p^v
long long rep(SquareClass s, const ResidueField& F) {
  long long u = s.unit ? F.zeta() : 1;
  return s.v ? u * F.p() : u;
}

// (a,b) = 1 iff a x^2 + b y^2 = z^2 has a primitive solution; mod p^3 with
// (x,y) not both divisible by p is enough for valuations <= 1
int hilbert_oracle(SquareClass a, SquareClass b, const ResidueField& F) {
  const long long p = F.p(), m = p * p * p;
  long long A = rep(a, F), B = rep(b, F);
  std::vector<char> is_sq(m, 0);
  for (long long z = 0; z < m; ++z) is_sq[z * z % m] = 1;
  for (long long x = 0; x < m; ++x)
    for (long long y = 0; y < m; ++y) {
      if (x % p == 0 && y % p == 0) continue;
      if (is_sq[((A * x % m * x + B * y % m * y) % m + m) % m]) return 1;
    }
  return -1;
}

const std::vector<SquareClass> kClasses{{0, 0}, {1, 0}, {0, 1}, {1, 1}};

}  // namespace

TEST(Hilbert, Examples) {
  for (int p : {3, 5, 7}) {
    ResidueField F(p);
    EXPECT_EQ(hilbert({1, 0}, {1, 0}, F), 1);
    EXPECT_EQ(hilbert({0, 1}, {1, 0}, F), -1);
    EXPECT_EQ(hilbert({0, 1}, {0, 1}, F), F.chi_minus_one());
  }
  EXPECT_EQ(hilbert({0, 1}, {0, 1}, ResidueField(3)), -1);
}

TEST(Hilbert, MatchesHenselOracle) {
  for (int p : {3, 5, 7}) {
    ResidueField F(p);
    for (auto a : kClasses)
      for (auto b : kClasses) EXPECT_EQ(hilbert(a, b, F), hilbert_oracle(a, b, F)) << p << " " << to_string(a) << "," << to_string(b);
  }
}

TEST(Hilbert, SymmetricBilinear) {
  for (int p : {3, 5, 7, 11}) {
    ResidueField F(p);
    for (auto a : kClasses)
      for (auto b : kClasses) {
        EXPECT_EQ(hilbert(a, b, F), hilbert(b, a, F));
        for (auto c : kClasses) EXPECT_EQ(hilbert(a * b, c, F), hilbert(a, c, F) * hilbert(b, c, F));
      }
  }
}

TEST(HasseWitt, Examples) {
  for (int p : {3, 5, 7}) {
    ResidueField F(p);
    EXPECT_EQ(hasse_witt({}, F), 1);
    EXPECT_EQ(hasse_witt({{0, 0}, {0, 0}}, F), 1);
    EXPECT_EQ(hasse_witt(std::vector<SquareClass>(5), F), 1);
    EXPECT_EQ(hasse_witt({{0, 1}, {1, 1}}, F), -F.chi_minus_one());
  }
}

TEST(HasseWitt, PermutationInvariant) {
  ResidueField F(7);
  std::vector<SquareClass> d{{1, 1}, {0, 1}, {1, 0}, {0, 0}};
  std::sort(d.begin(), d.end(), [](auto a, auto b) { return a.unit + 2 * a.v < b.unit + 2 * b.v; });
  int base = hasse_witt(d, F);
  do {
    EXPECT_EQ(hasse_witt(d, F), base);
  } while (std::next_permutation(d.begin(), d.end(), [](auto a, auto b) { return a.unit + 2 * a.v < b.unit + 2 * b.v; }));
}

TEST(HermitianMatrix, Examples) {
  ResidueField F(5);
  auto H = hermitian_matrix({Family::SO_odd, 5, Variant::plus}, F);
  EXPECT_EQ(H, MonoMat::anti_diag({{1, 0}, {4, 0}, {1, 0}, {4, 0}, {1, 0}}));
  auto R = hermitian_matrix({Family::SO_even_ram, 4, Variant::plus}, F);
  MonoMat expect(4);
  expect.set(0, 3, {1, 0});
  expect.set(1, 1, {4, 1});
  expect.set(2, 2, {1, 0});
  expect.set(3, 0, {1, 0});
  EXPECT_EQ(R, expect);
  auto Rm = hermitian_matrix({Family::SO_even_ram, 4, Variant::minus}, F);
  EXPECT_EQ(Rm.at(1, 1), mono_mul({F.zeta(), 0}, {4, 1}, F));
  EXPECT_EQ(Rm.at(2, 2), (Mono{F.zeta(), 0}));
}

TEST(HermitianMatrix, EpsHermitianAllFamilies) {
  for (int p : {3, 5, 7})
    for (int k = 0; k < int(Family::GL); ++k) {
      Family f = Family(k);
      ResidueField F(p, residue_degree(f));
      for (int N = 1; N <= 8; ++N)
        for (Variant v : {Variant::plus, Variant::minus}) {
          try {
            auto H = hermitian_matrix({f, N, v}, F);
            EXPECT_TRUE(is_eps_hermitian(H, f, F)) << to_string(f) << " N=" << N;
            EXPECT_TRUE(H.is_full());
          } catch (const domain_error&) {
          }
        }
    }
}

TEST(InnerForm, Examples) {
  ResidueField F(5);
  EXPECT_EQ(classify_inner_form({Family::U_ram_odd, 3, Variant::plus}, F).value, 1);
  EXPECT_EQ(classify_inner_form({Family::U_ram_odd, 3, Variant::minus}, F).value, -1);
  EXPECT_EQ(classify_inner_form({Family::Sp, 4, Variant::plus}, F).value, 1);
  EXPECT_THROW(classify_inner_form({Family::Sp, 4, Variant::minus}, F), domain_error);
  EXPECT_THROW(classify_inner_form({Family::SO_even_split, 2, Variant::plus}, F), domain_error);
}

TEST(InnerForm, PlusMinusDifferEverywhere) {
  for (int p : {3, 5, 7, 11})
    for (int k = 0; k < int(Family::GL); ++k) {
      Family f = Family(k);
      if (f == Family::Sp) continue;
      ResidueField F(p, residue_degree(f));
      for (int N = 3; N <= 9; ++N) {
        HermitianRep plus{f, N, Variant::plus}, minus{f, N, Variant::minus};
        try {
          hermitian_matrix(plus, F);
        } catch (const domain_error&) {
          continue;
        }
        if (f == Family::SO_even_split && N < 4) continue;
        EXPECT_EQ(classify_inner_form(plus, F).value, 1) << to_string(f) << " N=" << N;
        EXPECT_EQ(classify_inner_form(minus, F).value, -1) << to_string(f) << " N=" << N << " p=" << p;
      }
    }
}

TEST(InnerForm, RamifiedEvenRepresentativesOpposite) {
  for (int p : {3, 5, 7})
    for (int N : {4, 6, 8})
      for (int d : {0, 1}) {
        ResidueField F(p);
        HermitianRep plus{Family::SO_even_ram, N, Variant::plus, {d, 1}}, minus{Family::SO_even_ram, N, Variant::minus, {d, 1}};
        EXPECT_EQ(classify_inner_form(plus, F).value, -classify_inner_form(minus, F).value);
      }
}

// switching one orthogonal summand flips the label, switching two keeps it
TEST(InnerForm, SummandSwitching) {
  for (int p : {3, 5, 7}) {
    ResidueField F(p);
    auto blk = [&](bool z) {
      MonoMat h = hermitian_matrix({Family::SO_even_ram, 4, Variant::plus}, F);
      return z ? h.scaled({F.zeta(), 0}, F) : h;
    };
    MonoMat base = block_diag({blk(false), blk(false), blk(false)});
    for (int mask = 0; mask < 8; ++mask) {
      MonoMat H = block_diag({blk(mask & 1), blk(mask & 2), blk(mask & 4)});
      int parity = __builtin_popcount(mask) % 2;
      EXPECT_EQ(inner_form_of_matrix(Family::SO_even_split, H, base, F).value, parity ? -1 : 1);
    }
  }
}
