#ifndef EPI_GENERATORS_HPP
#define EPI_GENERATORS_HPP

// seeded random strata, data and forms for the verify suites and the tests

#include <algorithm>
#include <random>
#include <vector>

#include "packets.hpp"

namespace epi::gen {

using Rng = std::mt19937_64;

inline int pick(Rng& r, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(r); }
inline int coin_sign(Rng& r) { return pick(r, 0, 1) ? 1 : -1; }

inline const std::vector<Family>& classical_families() {
  static const std::vector<Family> f = {Family::SO_odd,      Family::Sp,          Family::SO_even_split,
                                        Family::SO_even_unram, Family::SO_even_ram, Family::U_unram_odd,
                                        Family::U_unram_even,  Family::U_ram_odd,   Family::U_ram_even};
  return f;
}

// k distinct units of F_q^x satisfying the family's constraint
inline std::vector<int> distinct_units(Rng& r, const ResidueField& F, int k) {
  std::vector<int> pool;
  for (int x = 1; x < F.q(); ++x) pool.push_back(x);
  std::shuffle(pool.begin(), pool.end(), r);
  pool.resize(std::min<int>(k, int(pool.size())));
  return pool;
}

struct GeneratedStratum {
  GroupSpec group;
  EpipelagicStratum stratum;
};

// random valid stratum with `count` non-null components of half-degree e
// (degree 2e, or 2e+1 for ramified unitary groups). with_null selects o in I
// where the family allows the choice. partition is drawn at random and the
// form variant follows its parity.
inline GeneratedStratum random_stratum(Rng& r, Family f, int p, int count, int e, bool with_null) {
  GeneratedStratum out;
  const ResidueField F(p, residue_degree(f));
  auto& s = out.stratum;
  int deg = is_ram_unitary(f) ? 2 * e + 1 : 2 * e;
  if (is_unram_unitary(f)) {
    count = 1;
    with_null = false;
    deg = f == Family::U_unram_odd ? 2 * e + 1 : 2 * e;
  }
  if (f == Family::SO_odd) with_null = true;
  if (f == Family::Sp) with_null = false;
  if (count > F.q() - 1) count = F.q() - 1;
  if (is_so_even(f)) {
    // parity of #I is fixed by the discriminant
    bool odd_total = f == Family::SO_even_ram;
    with_null = ((count + 1) % 2 == 1) == odd_total;
  }
  auto units = distinct_units(r, F, count);
  if (f == Family::U_unram_odd) {
    std::vector<int> ker;
    for (int x = 1; x < F.q(); ++x)
      if (F.trace(x) == 0) ker.push_back(x);
    units = {ker[pick(r, 0, int(ker.size()) - 1)]};
  }
  if (f == Family::U_unram_even) units = {pick(r, 1, p - 1)};
  int N = 0;
  for (int u : units) {
    s.components.push_back({deg, u, false, Variant::plus});
    N += deg;
  }
  if (with_null) {
    int nd = f == Family::SO_odd || is_ram_unitary(f) ? 1 : 2;
    Variant fc = Variant::plus;
    if (f == Family::SO_even_ram && pick(r, 0, 1)) fc = Variant::minus;
    s.components.push_back({nd, 0, true, fc});
    N += nd;
  }
  Family g = f;
  if (is_ram_unitary(f)) g = N % 2 ? Family::U_ram_odd : Family::U_ram_even;
  out.group = GroupSpec{g, N, F, Variant::plus, {}};
  if (is_unram_unitary(f)) s.character_exponent = pick(r, 0, p);
  auto idx = partition_indices(g, s);
  for (size_t k = 0; k < idx.size(); ++k) s.omega_signs.push_back(coin_sign(r));
  bool single_form = g == Family::Sp || is_unram_unitary(g);
  if (!single_form)
    for (int k : idx)
      if (pick(r, 0, 1)) s.partition.push_back(k);
  if (!single_form && s.partition.size() % 2) out.group.form_variant = Variant::minus;
  if (is_so_even(g) && !s.has_null()) s.xi = coin_sign(r);
  return out;
}

// random simple datum of rank n
inline SimpleSupercuspidalDatum random_datum(Rng& r, Family f, int p, int n) {
  int N = (f == Family::SO_odd || f == Family::U_ram_odd || f == Family::U_unram_odd) ? 2 * n + 1 : 2 * n;
  const ResidueField F(p, residue_degree(f));
  SimpleSupercuspidalDatum d{f, N, F, {}, 0, coin_sign(r), coin_sign(r)};
  for (;;) {
    d.a.assign(datum_length(f, N), 0);
    for (auto& x : d.a) x = pick(r, 1, F.q() - 1);
    if (f == Family::U_unram_odd) {
      std::vector<int> ker;
      for (int x = 1; x < F.q(); ++x)
        if (F.trace(x) == 0) ker.push_back(x);
      d.a[0] = ker[pick(r, 0, int(ker.size()) - 1)];
    }
    if (f == Family::U_unram_even) {
      d.a[0] = pick(r, 1, p - 1);
      d.a[n] = pick(r, 1, p - 1);
    }
    if ((f == Family::SO_even_split || f == Family::SO_even_unram) && son_norm(d) == 0) continue;
    break;
  }
  d.phi = pick(r, 0, is_unram_unitary(f) ? p : F.q() - 2);
  return d;
}

// smallest rank for which the family has simple data
inline int min_simple_rank(Family f) {
  switch (f) {
    case Family::SO_even_ram: return 2;
    case Family::SO_even_split:
    case Family::SO_even_unram: return 3;
    default: return 1;
  }
}

// random symmetric form of dimension d with nonzero determinant
inline QuadFormFq random_nondegenerate_form(Rng& r, const ResidueField& F, int d) {
  for (;;) {
    QuadFormFq q{F, std::vector<std::vector<int>>(d, std::vector<int>(d, 0))};
    for (int a = 0; a < d; ++a)
      for (int b = a; b < d; ++b) q.gram[a][b] = q.gram[b][a] = pick(r, 0, F.q() - 1);
    if (is_nondegenerate(q)) return q;
  }
}

}  // namespace epi::gen

#endif
