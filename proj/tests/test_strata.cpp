#include <gtest/gtest.h>

#include "support.hpp"

using namespace epi;
using namespace epi::testing;

namespace {

std::set<std::string> clauses(const GroupSpec& g, const EpipelagicStratum& s) {
  std::set<std::string> c;
  for (auto& v : validate_stratum(g, s)) c.insert(v.clause);
  return c;
}

}  // namespace

TEST(Strata, ValidateMatchesTableOracle) {
  Rng r(21);
  int valid = 0, invalid = 0;
  for (int k = 0; k < 3000; ++k) {
    int p = 3 + 2 * pick(r, 0, 2);
    auto G = random_raw_stratum(r, p);
    bool want = oracle_valid(G.group, G.stratum);
    EXPECT_EQ(validate_stratum(G.group, G.stratum).empty(), want) << to_string(G.group.family) << " case " << k;
    (want ? valid : invalid)++;
  }
  EXPECT_GT(valid, 1000);
  EXPECT_GT(invalid, 1000);
}

TEST(Strata, ClauseTags) {
  auto g = make_group(Family::U_ram_even, 4, 5);
  EpipelagicStratum s{{{2, 1, false, Variant::plus}, {2, 3, false, Variant::plus}}, {1, 1}, {}, {}, 0};
  EXPECT_TRUE(clauses(g, s).count("(iii)"));

  auto so = make_group(Family::SO_odd, 4, 5);
  EpipelagicStratum t{{{4, 1, false, Variant::plus}}, {1}, {}, {}, 0};
  so.N = 4;
  EXPECT_TRUE(clauses(so, t).count("(ii)"));

  auto se = make_group(Family::SO_even_split, 2, 5);
  EpipelagicStratum u{{{2, 1, false, Variant::plus}}, {1}, {}, 1, 0};
  EXPECT_TRUE(clauses(se, u).count("(iv)"));

  auto sp = make_group(Family::Sp, 4, 5);
  EpipelagicStratum d{{{2, 2, false, Variant::plus}, {2, 2, false, Variant::plus}}, {1, 1}, {}, {}, 0};
  EXPECT_TRUE(clauses(sp, d).count("degenerate"));
}

TEST(Strata, SignCounts) {
  EpipelagicStratum s{{{2, 1, false, Variant::plus}, {2, 2, false, Variant::plus}, {1, 0, true, Variant::plus}}, {}, {}, {}, 0};
  EXPECT_EQ(sign_indices(Family::SO_odd, s).size(), 2u);
  EXPECT_EQ(sign_indices(Family::U_ram_odd, s).size(), 3u);
  EXPECT_TRUE(sign_indices(Family::U_unram_odd, s).empty());
}

TEST(Strata, ReducedSimpleDataAreValid) {
  Rng r(22);
  for (Family f : classical_families())
    for (int p : {3, 5, 7, 11})
      for (int k = 0; k < 12; ++k) {
        auto d = random_datum(r, f, p, min_simple_rank(f) + k % 3);
        auto s = reduce_to_stratum(d);
        auto g = group_of(d);
        EXPECT_TRUE(validate_stratum(g, s).empty()) << to_string(f) << " p=" << p;
        EXPECT_TRUE(oracle_valid(g, s)) << to_string(f);
      }
}

TEST(Strata, PartitionsSplitThePowerSet) {
  Rng r(23);
  for (Family f : classical_families())
    for (int k = 1; k <= 3; ++k) {
      auto G = random_stratum(r, f, 7, k, 1, pick(r, 0, 1));
      auto plus = enumerate_partitions(G.group, G.stratum, {1});
      auto minus = enumerate_partitions(G.group, G.stratum, {-1});
      auto idx = partition_indices(G.group.family, G.stratum);
      std::set<std::vector<int>> all(plus.begin(), plus.end());
      for (auto& m : minus) EXPECT_TRUE(all.insert(m).second);
      if (G.group.family == Family::Sp) {
        EXPECT_EQ(plus.size(), size_t(1) << idx.size());
        EXPECT_TRUE(minus.empty());
      } else if (is_unram_unitary(G.group.family)) {
        EXPECT_EQ(all.size(), 1u);
      } else {
        EXPECT_EQ(all.size(), size_t(1) << idx.size());
        EXPECT_EQ(plus.size(), minus.size());
      }
    }
}

TEST(Strata, SimpleEquivIsAnEquivalence) {
  Rng r(24);
  for (Family f : {Family::SO_odd, Family::Sp, Family::SO_even_ram, Family::U_ram_odd, Family::U_ram_even})
    for (int p : {3, 5}) {
      std::vector<SimpleSupercuspidalDatum> ds;
      for (int k = 0; k < 12; ++k) ds.push_back(random_datum(r, f, p, min_simple_rank(f)));
      for (auto& a : ds) {
        EXPECT_TRUE(simple_equiv(a, a));
        for (auto& b : ds) {
          EXPECT_EQ(simple_equiv(a, b), simple_equiv(b, a));
          for (auto& c : ds)
            if (simple_equiv(a, b) && simple_equiv(b, c)) {
              EXPECT_TRUE(simple_equiv(a, c));
            }
        }
      }
    }
}

TEST(Strata, DatumChecks) {
  SimpleSupercuspidalDatum d{Family::Sp, 4, ResidueField(5), {1, 2}, 0, 1, 1};
  EXPECT_THROW(check_datum(d), domain_error);
  d.a = {1, 2, 3};
  EXPECT_NO_THROW(check_datum(d));
  d.xi = 0;
  EXPECT_THROW(check_datum(d), domain_error);
}
