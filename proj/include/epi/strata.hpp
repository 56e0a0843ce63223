#ifndef EPI_STRATA_HPP
#define EPI_STRATA_HPP

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "square_classes.hpp"

namespace epi {

struct GroupSpec {
  Family family = Family::SO_odd;
  int N = 1;
  ResidueField field{3};
  Variant form_variant = Variant::plus;
  // ramified SO_even only: unit part of the central w entry of H
  SquareClass disc_choice{};
};

inline GroupSpec make_group(Family f, int N, int p, Variant v = Variant::plus) {
  return GroupSpec{f, N, ResidueField(p, residue_degree(f)), v, {}};
}

// n: the rank for SO/Sp, dim V for unitary and GL
inline int rank_of(const GroupSpec& g) {
  if (is_unitary(g.family) || g.family == Family::GL) return g.N;
  return g.N / 2;
}

// rank of the general linear group receiving the lift
inline int dual_rank(const GroupSpec& g) {
  switch (g.family) {
    case Family::SO_odd: return g.N - 1;
    case Family::Sp: return g.N + 1;
    default: return g.N;
  }
}

// SO_even discriminant exponent: 0 split, 1 unramified
inline int u_of(Family f) { return f == Family::SO_even_unram ? 1 : 0; }

struct StratumComponent {
  int degree = 1;
  int unit = 0;  // residue of the leading unit; unused for the null component
  bool null = false;
  Variant form_choice = Variant::plus;
  bool operator==(const StratumComponent&) const = default;
};

struct EpipelagicStratum {
  std::vector<StratumComponent> components;
  std::vector<int> omega_signs;
  std::vector<int> partition;  // indices of I_zeta
  std::optional<int> xi;
  int character_exponent = 0;  // unramified unitary: lambda on mu_1 is x -> x^t
  bool operator==(const EpipelagicStratum&) const = default;

  bool has_null() const { return !components.empty() && components.back().null; }
  int null_index() const { return has_null() ? int(components.size()) - 1 : -1; }
  std::vector<int> non_null() const {
    std::vector<int> r;
    for (int k = 0; k < int(components.size()); ++k)
      if (!components[k].null) r.push_back(k);
    return r;
  }
  int e() const {
    for (auto& c : components)
      if (!c.null) return c.degree;
    return 0;
  }
};

struct Violation {
  std::string clause;
  std::string message;
  bool operator==(const Violation&) const = default;
};

// indices that carry a sign lambda(omega_i)
inline std::vector<int> sign_indices(Family f, const EpipelagicStratum& s) {
  std::vector<int> r;
  if (f == Family::GL || is_unram_unitary(f)) return r;
  for (int k = 0; k < int(s.components.size()); ++k)
    if (!(f == Family::SO_odd && s.components[k].null)) r.push_back(k);
  return r;
}

// indices that may lie in I_zeta
inline std::vector<int> partition_indices(Family f, const EpipelagicStratum& s) {
  return sign_indices(f, s);
}

inline int sign_at(const EpipelagicStratum& s, Family f, int i) {
  auto idx = sign_indices(f, s);
  auto it = std::find(idx.begin(), idx.end(), i);
  if (it == idx.end()) throw domain_error("no sign attached to index " + std::to_string(i));
  return s.omega_signs.at(it - idx.begin());
}

inline bool in_partition(const EpipelagicStratum& s, int i) {
  return std::find(s.partition.begin(), s.partition.end(), i) != s.partition.end();
}

inline std::vector<Violation> validate_stratum(const GroupSpec& g, const EpipelagicStratum& s) {
  std::vector<Violation> v;
  auto bad = [&](std::string c, std::string m) { v.push_back({std::move(c), std::move(m)}); };
  const Family f = g.family;
  const auto& F = g.field;
  if (s.components.empty()) {
    bad("dimension", "no components");
    return v;
  }
  if (f == Family::Sp && g.form_variant == Variant::minus) bad("form", "Sp has a single form");
  if (f == Family::GL && g.form_variant == Variant::minus) bad("form", "GL has a single form");
  int total = 0, nulls = 0;
  for (int k = 0; k < int(s.components.size()); ++k) {
    const auto& c = s.components[k];
    if (c.degree < 1) bad("dimension", "component " + std::to_string(k) + " has degree < 1");
    total += c.degree;
    if (c.null) {
      ++nulls;
      if (k + 1 != int(s.components.size())) bad("null", "the null component must come last");
    } else if (c.unit <= 0 || c.unit >= F.q()) {
      bad("unit", "component " + std::to_string(k) + " needs a unit in F_q^x");
    }
  }
  if (total != g.N) bad("dimension", "degrees sum to " + std::to_string(total) + ", expected N = " + std::to_string(g.N));
  if (nulls > 1) bad("null", "more than one null component");
  auto nn = s.non_null();
  if (nn.empty()) bad("null", "no non-null component");
  std::set<int> degs;
  for (int k : nn) degs.insert(s.components[k].degree);
  if (degs.size() > 1) bad("equal-degree", "non-null components must share one degree (e_i equal)");
  int e = nn.empty() ? 0 : s.components[nn[0]].degree;
  int null_deg = s.has_null() ? s.components.back().degree : 0;
  const int nI = int(s.components.size());

  switch (f) {
    case Family::GL:
    case Family::U_unram_odd:
    case Family::U_unram_even:
      if (nI != 1 || nulls) bad("(i)", "only the Coxeter order is allowed: a single component of degree N");
      if (is_unram_unitary(f) && (g.N % 2 == 1) != (f == Family::U_unram_odd)) bad("dimension", "parity of N does not match the family");
      if (f == Family::U_unram_odd && nI == 1 && s.components[0].unit > 0 && F.trace(s.components[0].unit) != 0)
        bad("(i)", "the leading unit must lie in ker tr when N is odd");
      if (f == Family::U_unram_even && nI == 1 && !F.in_prime_field(s.components[0].unit))
        bad("(i)", "the leading unit must lie in F_. when N is even");
      break;
    case Family::SO_odd:
      if (e % 2) bad("(ii)", "non-null degrees must be even");
      if (nulls != 1 || null_deg != 1) bad("(ii)", "odd SO needs exactly one null component of degree 1");
      break;
    case Family::Sp:
      if (e % 2) bad("(ii)", "non-null degrees must be even");
      if (nulls) bad("(ii)", "Sp has no null component");
      break;
    case Family::U_ram_odd:
    case Family::U_ram_even:
      if (e % 2 == 0) bad("(iii)", "non-null degrees must be odd");
      if (nulls && null_deg != 1) bad("(iii)", "the null component E_o = F has degree 1");
      if ((g.N % 2 == 1) != (f == Family::U_ram_odd)) bad("dimension", "parity of N does not match the family");
      break;
    case Family::SO_even_split:
    case Family::SO_even_unram:
    case Family::SO_even_ram:
      if (e % 2) bad("(iv)", "non-null degrees must be even");
      if (nulls && null_deg != 2) bad("(iv)", "the null component must be ramified quadratic (degree 2)");
      if (f == Family::SO_even_ram ? nI % 2 == 0 : nI % 2 == 1)
        bad("(iv)", f == Family::SO_even_ram ? "#I must be odd for the ramified group" : "#I must be even for split or unramified groups");
      break;
  }

  // residues of equal-degree components must differ (gamma_j != 0)
  for (size_t a = 0; a < nn.size(); ++a)
    for (size_t b = a + 1; b < nn.size(); ++b)
      if (s.components[nn[a]].unit == s.components[nn[b]].unit) bad("degenerate", "components " + std::to_string(nn[a]) + " and " + std::to_string(nn[b]) + " have equal residues");

  auto si = sign_indices(f, s);
  if (s.omega_signs.size() != si.size())
    bad("signs", "expected " + std::to_string(si.size()) + " omega signs, got " + std::to_string(s.omega_signs.size()));
  for (int x : s.omega_signs)
    if (x != 1 && x != -1) bad("signs", "omega signs must be +1 or -1");

  auto pi = partition_indices(f, s);
  std::set<int> seen;
  for (int k : s.partition) {
    if (std::find(pi.begin(), pi.end(), k) == pi.end()) bad("partition", "index " + std::to_string(k) + " cannot lie in I_zeta");
    if (!seen.insert(k).second) bad("partition", "repeated index " + std::to_string(k));
  }
  if (f != Family::Sp && f != Family::GL && !is_unram_unitary(f)) {
    int parity = int(s.partition.size()) % 2 ? -1 : 1;
    if (parity != variant_sign(g.form_variant)) bad("partition", "#I_zeta parity does not match the form variant");
  }

  bool needs_xi = is_so_even(f) && !s.has_null();
  if (needs_xi && !s.xi) bad("xi", "SO_even with o not in I needs xi");
  if (!needs_xi && s.xi) bad("xi", "xi only applies to SO_even with o not in I");
  if (s.xi && *s.xi != 1 && *s.xi != -1) bad("xi", "xi must be +1 or -1");
  return v;
}

inline bool is_valid(const GroupSpec& g, const EpipelagicStratum& s) { return validate_stratum(g, s).empty(); }

// subsets of partition_indices with (-1)^{#I_zeta} = label (all subsets for Sp)
inline std::vector<std::vector<int>> enumerate_partitions(const GroupSpec& g, const EpipelagicStratum& s, InnerFormLabel label) {
  auto idx = partition_indices(g.family, s);
  std::vector<std::vector<int>> out;
  bool single_form = g.family == Family::Sp || g.family == Family::GL || is_unram_unitary(g.family);
  if (single_form && label.value < 0) return out;
  if (is_unram_unitary(g.family) || g.family == Family::GL) return {{}};
  for (unsigned mask = 0; mask < (1u << idx.size()); ++mask) {
    std::vector<int> part;
    for (size_t k = 0; k < idx.size(); ++k)
      if (mask >> k & 1) part.push_back(idx[k]);
    int parity = part.size() % 2 ? -1 : 1;
    if (single_form || parity == label.value) out.push_back(part);
  }
  return out;
}

struct SimpleSupercuspidalDatum {
  Family family = Family::SO_odd;
  int N = 1;
  ResidueField field{3};
  std::vector<int> a;
  int phi = 0;  // character exponent (GL on mu_F, unramified U on mu_1)
  int xi = 1;   // lambda(omega) (SO_odd), lambda(-1) otherwise, or the GL sign
  int eta = 1;  // lambda(omega_i) for SO_even split/unram and even ramified U
};

// number of affine-generic units for the family
inline int datum_length(Family f, int N) {
  switch (f) {
    case Family::GL: return N;
    case Family::SO_odd: return (N - 1) / 2 + 1;
    case Family::Sp: return N / 2 + 1;
    case Family::SO_even_ram: return N / 2;
    case Family::SO_even_split:
    case Family::SO_even_unram: return N / 2 + 1;
    case Family::U_ram_odd: return (N - 1) / 2 + 1;
    case Family::U_ram_even: return N / 2 + 1;
    case Family::U_unram_odd:
    case Family::U_unram_even: return N / 2 + 1;
  }
  return 0;
}

inline int norm_to_prime(int x, const ResidueField& F) { return F.mul(x, F.frob(x)); }

inline void check_datum(const SimpleSupercuspidalDatum& d) {
  const auto& F = d.field;
  if (F.f() != residue_degree(d.family)) throw domain_error("datum: residue field does not fit the family");
  if (int(d.a.size()) != datum_length(d.family, d.N)) throw domain_error("datum: wrong number of units");
  for (int x : d.a)
    if (x <= 0 || x >= F.q()) throw domain_error("datum: units must be nonzero residues");
  if (d.xi != 1 && d.xi != -1) throw domain_error("datum: xi must be a sign");
  if (d.eta != 1 && d.eta != -1) throw domain_error("datum: eta must be a sign");
  int n = d.N / 2;
  switch (d.family) {
    case Family::SO_odd:
      if (d.N % 2 == 0 || d.N < 3) throw domain_error("datum: SO_odd needs N = 2n+1 >= 3");
      break;
    case Family::Sp:
      if (d.N % 2 || d.N < 2) throw domain_error("datum: Sp needs even N");
      break;
    case Family::SO_even_ram:
      if (d.N % 2 || n < 2) throw domain_error("datum: ramified SO_even needs n >= 2");
      break;
    case Family::SO_even_split:
    case Family::SO_even_unram:
      if (d.N % 2 || n < 3) throw domain_error("datum: split/unramified SO_even needs n >= 3");
      break;
    case Family::U_ram_odd:
      if (d.N % 2 == 0) throw domain_error("datum: parity");
      break;
    case Family::U_ram_even:
      if (d.N % 2 || d.N < 2) throw domain_error("datum: parity");
      break;
    case Family::U_unram_odd:
      if (d.N % 2 == 0) throw domain_error("datum: parity");
      if (F.trace(d.a[0]) != 0) throw domain_error("datum: a0 must lie in ker tr when N is odd");
      break;
    case Family::U_unram_even:
      if (d.N % 2 || d.N < 2) throw domain_error("datum: parity");
      if (!F.in_prime_field(d.a[0]) || !F.in_prime_field(d.a[n])) throw domain_error("datum: a0 and a_n must lie in F_. when N is even");
      break;
    case Family::GL:
      break;
  }
}

// N_{a_{n-1}, a_n} for split / unramified SO_even
inline int son_norm(const SimpleSupercuspidalDatum& d) {
  const auto& F = d.field;
  int n = d.N / 2;
  int x = d.a[n - 1], y = d.a[n];
  if (d.family == Family::SO_even_split) return F.mul(x, y);
  return F.sub(F.mul(x, x), F.mul(F.mul(y, y), F.inv(F.zeta())));
}

// the invariant a of the datum
inline int datum_a(const SimpleSupercuspidalDatum& d) {
  check_datum(d);
  const auto& F = d.field;
  const auto& a = d.a;
  auto sq = [&](int x) { return F.mul(x, x); };
  int n = d.N / 2, r = 1;
  switch (d.family) {
    case Family::GL:
    case Family::SO_even_ram:
      for (int x : a) r = F.mul(r, x);
      return r;
    case Family::SO_odd:
    case Family::U_ram_odd:
      r = d.family == Family::SO_odd ? F.mul(a[0], a[1]) : a[0];
      for (size_t k = d.family == Family::SO_odd ? 2 : 1; k < a.size(); ++k) r = F.mul(r, sq(a[k]));
      return r;
    case Family::Sp:
    case Family::U_ram_even:
      r = a[0];
      for (int k = 1; k < n; ++k) r = F.mul(r, sq(a[k]));
      return F.mul(r, a[n]);
    case Family::SO_even_split:
    case Family::SO_even_unram: {
      r = F.mul(a[0], a[1]);
      for (int k = 2; k <= n - 2; ++k) r = F.mul(r, sq(a[k]));
      return F.mul(r, son_norm(d));
    }
    case Family::U_unram_odd:
      r = a[0];
      for (int k = 1; k <= n; ++k) r = F.mul(r, norm_to_prime(a[k], F));
      return r;
    case Family::U_unram_even:
      r = a[0];
      for (int k = 1; k < n; ++k) r = F.mul(r, norm_to_prime(a[k], F));
      return F.mul(r, a[n]);
  }
  return r;
}

// family invariant tuple used by simple_equiv
inline std::vector<int> simple_invariants(const SimpleSupercuspidalDatum& d) {
  int a = datum_a(d);
  const auto& F = d.field;
  switch (d.family) {
    case Family::GL: return {a, int(mod(d.phi, F.q() - 1)), d.xi};
    case Family::U_unram_odd:
    case Family::U_unram_even: return {a, int(mod(d.phi, F.p() + 1))};
    case Family::Sp: return {a, F.quad_char(d.a[d.N / 2]), d.xi};
    case Family::SO_even_split:
    case Family::SO_even_unram: return {a, F.quad_char(son_norm(d)), d.xi, d.eta};
    case Family::U_ram_even: return {a, d.xi, d.eta};
    default: return {a, d.xi};
  }
}

inline bool simple_equiv(const SimpleSupercuspidalDatum& d1, const SimpleSupercuspidalDatum& d2) {
  if (d1.family != d2.family || d1.N != d2.N || !(d1.field == d2.field)) throw domain_error("simple_equiv: family mismatch");
  return simple_invariants(d1) == simple_invariants(d2);
}

inline GroupSpec group_of(const SimpleSupercuspidalDatum& d) {
  return GroupSpec{d.family, d.N, d.field, Variant::plus, {}};
}

// residue 2^k
inline int two_pow(int k, const ResidueField& F) { return F.pow(F.from_int(2), k); }

inline EpipelagicStratum reduce_to_stratum(const SimpleSupercuspidalDatum& d) {
  const auto& F = d.field;
  const int a = datum_a(d);
  const int N = d.N, n = N / 2;
  EpipelagicStratum s;
  auto comp = [&](int deg, int unit) { return StratumComponent{deg, unit, false, Variant::plus}; };
  auto null = [&](int deg) { return StratumComponent{deg, 0, true, Variant::plus}; };
  switch (d.family) {
    case Family::GL:
      s.components = {comp(N, a)};
      s.character_exponent = d.phi;
      break;
    case Family::U_unram_odd:
    case Family::U_unram_even:
      s.components = {comp(N, F.mul(a, F.inv(two_pow(N, F))))};
      s.character_exponent = d.phi;
      break;
    case Family::SO_odd:
      s.components = {comp(2 * n, F.mul(a, F.inv(two_pow(2 * n - 3, F)))), null(1)};
      s.omega_signs = {d.xi};
      break;
    case Family::Sp:
      s.components = {comp(2 * n, F.mul(a, F.inv(two_pow(2 * n - 2, F))))};
      s.omega_signs = {d.xi};
      break;
    case Family::SO_even_ram: {
      int u = F.mul(F.mul(a, a), F.inv(two_pow(2 * n, F)));
      s.components = {comp(2 * n, n % 2 ? u : F.neg(u))};
      s.omega_signs = {d.xi};
      s.xi = 1;
      break;
    }
    case Family::SO_even_split:
    case Family::SO_even_unram: {
      int ug = u_of(d.family);
      int u = F.mul(a, F.inv(two_pow(2 - ug + 2 * n - 2, F)));
      s.components = {comp(2 * n - 2, n % 2 ? F.neg(u) : u), null(2)};
      s.omega_signs = {d.eta, d.xi * d.eta};
      s.xi.reset();
      break;
    }
    case Family::U_ram_odd:
      s.components = {comp(2 * n + 1, F.mul(a, F.inv(two_pow(2 * n, F))))};
      s.omega_signs = {d.xi};
      break;
    case Family::U_ram_even:
      s.components = {comp(2 * n - 1, F.mul(a, F.inv(two_pow(2 * n - 1, F)))), null(1)};
      s.omega_signs = {d.eta, d.xi * d.eta};
      break;
  }
  return s;
}

}  // namespace epi

#endif
