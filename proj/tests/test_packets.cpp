#include <gtest/gtest.h>

#include "support.hpp"

using namespace epi;
using namespace epi::testing;

namespace {

// sizes per family, independent of expected_cardinality
int table_size(Family f, const EpipelagicStratum& shell) {
  int nI = int(shell.components.size());
  bool o = shell.has_null();
  switch (f) {
    case Family::SO_odd: return 1 << (nI - 1);
    case Family::Sp: return 1 << nI;
    case Family::SO_even_split:
    case Family::SO_even_unram:
    case Family::SO_even_ram: return o ? 1 << nI : 1 << (nI + 1);
    case Family::U_ram_odd:
    case Family::U_ram_even: return 1 << nI;
    default: return 1;
  }
}

struct Shell {
  GroupSpec g;
  EpipelagicStratum s;
  std::vector<int> delta;
};

Shell random_shell(Rng& r, Family f, int p, int k, int e) {
  auto G = random_stratum(r, f, p, k, e, pick(r, 0, 1));
  Shell sh{G.group, G.stratum, {}};
  sh.s.partition.clear();
  sh.s.xi.reset();
  sh.g.form_variant = Variant::plus;
  for (size_t x = 0; x < sign_indices(sh.g.family, sh.s).size(); ++x) sh.delta.push_back(coin_sign(r));
  return sh;
}

}  // namespace

TEST(Packets, InnerFormParity) {
  EXPECT_EQ(inner_form_of({}, Family::SO_odd).value, 1);
  EXPECT_EQ(inner_form_of({0}, Family::SO_odd).value, -1);
  EXPECT_EQ(inner_form_of({0, 1}, Family::U_ram_even).value, 1);
  EXPECT_EQ(inner_form_of({0}, Family::Sp).value, 1);
}

TEST(Packets, SpecExamples) {
  {
    auto g = make_group(Family::SO_odd, 5, 7);
    EpipelagicStratum s{{{2, 1, false, Variant::plus}, {2, 3, false, Variant::plus}, {1, 0, true, Variant::plus}}, {}, {}, {}, 0};
    auto pk = enumerate_packet(g, s, {1, -1});
    EXPECT_EQ(pk.cardinality, 4);
    int plus = 0;
    for (auto& m : pk.members) plus += m.inner_form.value > 0;
    EXPECT_EQ(plus, 2);
  }
  {
    auto g = make_group(Family::Sp, 4, 7);
    EpipelagicStratum s{{{2, 1, false, Variant::plus}, {2, 3, false, Variant::plus}}, {}, {}, {}, 0};
    auto pk = enumerate_packet(g, s, {1, 1});
    EXPECT_EQ(pk.cardinality, 4);
    for (auto& m : pk.members) EXPECT_EQ(m.inner_form.value, 1);
  }
  {
    auto g = make_group(Family::SO_even_split, 4, 7);
    EpipelagicStratum s{{{2, 1, false, Variant::plus}, {2, 3, false, Variant::plus}}, {}, {}, {}, 0};
    auto pk = enumerate_packet(g, s, {1, -1});
    EXPECT_EQ(pk.cardinality, 8);
    EXPECT_EQ(pk.l_packets, 2);
    EXPECT_TRUE(pk.xi_heuristic);
    EXPECT_EQ(enumerate_packet(g, s, {1, -1}, 1).cardinality, 4);
    EXPECT_EQ(enumerate_packet(g, s, {1, -1}, -1).cardinality, 4);
  }
}

TEST(Packets, BadSignsRejected) {
  auto g = make_group(Family::Sp, 4, 7);
  EpipelagicStratum s{{{2, 1, false, Variant::plus}, {2, 3, false, Variant::plus}}, {}, {}, {}, 0};
  EXPECT_THROW(enumerate_packet(g, s, {1}), domain_error);
  EXPECT_THROW(enumerate_packet(g, s, {1, 0}), domain_error);
  EXPECT_THROW(enumerate_packet(g, s, {1, 1}, 1), domain_error);
}

TEST(Packets, CardinalitiesAndSplits) {
  Rng r(51);
  std::map<std::pair<Family, int>, int> seen;
  for (Family f : classical_families())
    for (int p : {3, 5, 7})
      for (int k = 1; k <= 3; ++k)
        for (int t = 0; t < 6; ++t) {
          auto sh = random_shell(r, f, p, k, 1 + t % 2);
          auto pk = enumerate_packet(sh.g, sh.s, sh.delta);
          EXPECT_EQ(pk.cardinality, table_size(sh.g.family, sh.s)) << to_string(sh.g.family);
          EXPECT_EQ(int(pk.members.size()), pk.cardinality);
          int plus = 0;
          for (auto& m : pk.members) plus += m.inner_form.value > 0;
          if (sh.g.family == Family::Sp || is_unram_unitary(sh.g.family)) {
            EXPECT_EQ(plus, pk.cardinality);
          } else {
            EXPECT_EQ(2 * plus, pk.cardinality) << to_string(sh.g.family);
          }
          seen[{sh.g.family, int(sh.s.components.size())}]++;
        }
  // every admissible (family, #I) with #I <= 3 is exercised
  for (int nI : {1, 2, 3}) EXPECT_TRUE(seen.count({Family::Sp, nI})) << nI;
  for (int nI : {2, 3}) EXPECT_TRUE(seen.count({Family::SO_odd, nI})) << nI;
  EXPECT_TRUE(seen.count({Family::SO_even_split, 2}));
  EXPECT_TRUE(seen.count({Family::SO_even_unram, 2}));
  for (int nI : {1, 3}) EXPECT_TRUE(seen.count({Family::SO_even_ram, nI})) << nI;
  for (int nI : {1, 2, 3}) EXPECT_TRUE(seen.count({Family::U_ram_odd, nI}) || seen.count({Family::U_ram_even, nI})) << nI;
}

TEST(Packets, LiftConstantOnLPackets) {
  Rng r(52);
  for (int t = 0; t < 200; ++t) {
    const auto& fams = classical_families();
    Family f = fams[pick(r, 0, int(fams.size()) - 1)];
    auto sh = random_shell(r, f, 3 + 2 * pick(r, 0, 2), pick(r, 1, 3), pick(r, 1, 2));
    auto pk = enumerate_packet(sh.g, sh.s, sh.delta);
    for (auto& m : pk.members) {
      EXPECT_TRUE(validate_stratum(m.group, m.stratum).empty());
      EXPECT_EQ(m.inner_form, inner_form_of(m.partition, m.group.family));
      for (auto& o : pk.members)
        if (o.xi == m.xi) {
          EXPECT_EQ(o.lift, m.lift);
        }
    }
  }
}
