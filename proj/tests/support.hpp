#ifndef EPI_TESTS_SUPPORT_HPP
#define EPI_TESTS_SUPPORT_HPP

// oracles and generators shared by the unit tests and the acceptance binary.
// the oracles here use plain integers and doubles, not the library tables.

#include <cmath>
#include <complex>
#include <set>

#include "epi/epi.hpp"
#include "epi/generators.hpp"

namespace epi::testing {

using namespace epi::gen;

// legendre symbol by euler's criterion
inline int legendre(long long x, int p) {
  x = ((x % p) + p) % p;
  if (x == 0) return 0;
  long long r = 1, b = x;
  for (int e = (p - 1) / 2; e; e >>= 1) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
  }
  return r == 1 ? 1 : -1;
}

// numeric value of a GaussUnit over F_p: sign * (sum_x (x/p) e(x/p) / sqrt p)^k
inline std::complex<double> numeric_unit(GaussUnit u, int p) {
  const double pi = std::acos(-1.0);
  std::complex<double> g = 0;
  for (int x = 1; x < p; ++x) g += double(legendre(x, p)) * std::polar(1.0, 2 * pi * x / p);
  g /= std::sqrt(double(p));
  return double(u.sign) * (u.k ? g : std::complex<double>(1));
}

// p^{-d/2} sum_X e(q(X)/p) from the gram matrix, in doubles
inline std::complex<double> numeric_gauss(const std::vector<std::vector<int>>& G, int p) {
  const double pi = std::acos(-1.0);
  const int d = int(G.size());
  std::complex<double> s = 0;
  std::vector<int> x(d, 0);
  while (true) {
    long long v = 0;
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b) v += (long long)G[a][b] * x[a] * x[b];
    s += std::polar(1.0, 2 * pi * double(v % p) / p);
    int k = 0;
    while (k < d && ++x[k] == p) x[k++] = 0;
    if (k == d) break;
  }
  return s / std::pow(double(p), d / 2.0);
}

// validity by the classification table, written independently of validate_stratum
inline bool oracle_valid(const GroupSpec& g, const EpipelagicStratum& s) {
  const Family f = g.family;
  const auto& F = g.field;
  const auto& c = s.components;
  if (c.empty()) return false;
  int nulls = 0, total = 0, nn = 0;
  std::set<int> degs, units;
  for (size_t k = 0; k < c.size(); ++k) {
    if (c[k].degree < 1) return false;
    total += c[k].degree;
    if (c[k].null) {
      ++nulls;
      if (k + 1 != c.size()) return false;
      continue;
    }
    ++nn;
    if (c[k].unit < 1 || c[k].unit >= F.q()) return false;
    degs.insert(c[k].degree);
    if (!units.insert(c[k].unit).second) return false;
  }
  if (total != g.N || nulls > 1 || nn == 0 || degs.size() != 1) return false;
  const int e = *degs.begin();
  const int nulldeg = nulls ? c.back().degree : 0;
  const int nI = int(c.size());
  switch (f) {
    case Family::GL: if (nI != 1) return false; break;
    case Family::U_unram_odd:
      if (nI != 1 || g.N % 2 == 0 || F.trace(c[0].unit) != 0) return false;
      break;
    case Family::U_unram_even:
      if (nI != 1 || g.N % 2 == 1 || c[0].unit >= F.p()) return false;
      break;
    case Family::SO_odd:
      if (e % 2 || nulls != 1 || nulldeg != 1) return false;
      break;
    case Family::Sp:
      if (e % 2 || nulls) return false;
      break;
    case Family::U_ram_odd:
    case Family::U_ram_even:
      if (e % 2 == 0 || (nulls && nulldeg != 1)) return false;
      if ((g.N % 2 == 1) != (f == Family::U_ram_odd)) return false;
      break;
    default:  // even orthogonal
      if (e % 2 || (nulls && nulldeg != 2)) return false;
      if ((nI % 2 == 1) != (f == Family::SO_even_ram)) return false;
  }
  // eligible sign indices: SO_odd drops o; unramified U and GL carry none
  std::vector<int> elig;
  if (f != Family::GL && f != Family::U_unram_odd && f != Family::U_unram_even)
    for (int k = 0; k < nI; ++k)
      if (!(f == Family::SO_odd && c[k].null)) elig.push_back(k);
  if (s.omega_signs.size() != elig.size()) return false;
  for (int x : s.omega_signs)
    if (x != 1 && x != -1) return false;
  std::set<int> seen;
  for (int k : s.partition)
    if (std::find(elig.begin(), elig.end(), k) == elig.end() || !seen.insert(k).second) return false;
  const bool one_form = f == Family::Sp || f == Family::GL;
  if (one_form && g.form_variant == Variant::minus) return false;
  const bool parity_rule = !one_form && f != Family::U_unram_odd && f != Family::U_unram_even;
  if (parity_rule && (s.partition.size() % 2 == 1) != (g.form_variant == Variant::minus)) return false;
  const bool wants_xi = (f == Family::SO_even_split || f == Family::SO_even_unram || f == Family::SO_even_ram) && !nulls;
  if (wants_xi != s.xi.has_value()) return false;
  if (s.xi && *s.xi != 1 && *s.xi != -1) return false;
  return true;
}

// a stratum that is valid with probability about one half: a valid draw
// followed by zero or more local mutations
inline GeneratedStratum random_raw_stratum(Rng& r, int p) {
  const auto& fams = classical_families();
  Family f = fams[pick(r, 0, int(fams.size()) - 1)];
  auto G = random_stratum(r, f, p, pick(r, 1, 3), pick(r, 1, 2), pick(r, 0, 1));
  if (pick(r, 0, 1)) return G;
  auto& g = G.group;
  auto& s = G.stratum;
  const int q = g.field.q();
  const int mutations = pick(r, 1, 2);
  for (int m = 0; m < mutations; ++m) {
    int k = pick(r, 0, int(s.components.size()) - 1);
    switch (pick(r, 0, 11)) {
      case 0: s.components[k].degree += pick(r, 0, 1) ? 1 : -1; break;
      case 1: s.components[k].unit = pick(r, 0, q); break;
      case 2: s.components[k].null = !s.components[k].null; break;
      case 3: g.N += pick(r, 0, 1) ? 1 : -1; break;
      case 4: s.omega_signs.push_back(1); break;
      case 5: if (!s.omega_signs.empty()) s.omega_signs.back() = pick(r, 0, 1) ? 0 : 2; break;
      case 6: s.partition.push_back(pick(r, 0, int(s.components.size()))); break;
      case 7: g.form_variant = g.form_variant == Variant::plus ? Variant::minus : Variant::plus; break;
      case 8: if (s.xi) s.xi.reset(); else s.xi = pick(r, 0, 1) ? 1 : -1; break;
      case 9: s.components.push_back(s.components[k]); g.N += s.components[k].degree; break;
      case 10: std::swap(s.components.front(), s.components.back()); break;
      default: {
        Family other = fams[pick(r, 0, int(fams.size()) - 1)];
        if (residue_degree(other) == residue_degree(g.family)) g.family = other;
      }
    }
  }
  return G;
}

}  // namespace epi::testing

#endif
