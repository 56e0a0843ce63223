#ifndef EPI_PACKETS_HPP
#define EPI_PACKETS_HPP

#include <optional>
#include <vector>

#include "lift.hpp"

namespace epi {

struct PacketMember {
  std::vector<int> partition;
  std::optional<int> xi;
  InnerFormLabel inner_form;
  GroupSpec group;
  EpipelagicStratum stratum;
  CuspidalSupport lift;
};

struct Packet {
  std::vector<PacketMember> members;
  CuspidalSupport lift;  // lift of the first L-packet (xi = +1 when xi varies)
  int cardinality = 0;
  int l_packets = 1;
  bool xi_heuristic = false;
};

// parity rule relative to pi_empty on G_+
inline InnerFormLabel inner_form_of(const std::vector<int>& partition, Family f) {
  if (f == Family::Sp || f == Family::GL || is_unram_unitary(f)) return {1};
  return {partition.size() % 2 ? -1 : 1};
}

// hermitian matrix of the whole space for the embedding I_zeta
inline MonoMat assembled_form(const GroupSpec& g, const EpipelagicStratum& s) {
  const auto& F = g.field;
  std::vector<MonoMat> blocks;
  for (int k = 0; k < int(s.components.size()); ++k) {
    const auto& c = s.components[k];
    const bool z = in_partition(s, k);
    if (!c.null) {
      blocks.push_back(component_block(g.family, c.degree, c.unit, z, F));
      continue;
    }
    Mono zeta{z ? F.zeta() : 1, 0};
    if (is_so_even(g.family)) {
      int u = g.family == Family::SO_even_unram ? 1 : 0;
      blocks.push_back(MonoMat::diag({mono_mul(zeta, {F.neg(F.pow(F.zeta(), u)), 1}, F), zeta}));
    } else {
      blocks.push_back(MonoMat::diag({zeta}));
    }
  }
  return block_diag(blocks);
}

// label of pi_{I_zeta} against pi_empty read off the assembled forms; the
// parity rule is used where the orthogonal H^1 is a singleton
inline InnerFormLabel inner_form_from_forms(const GroupSpec& g, const EpipelagicStratum& s) {
  if (g.family == Family::Sp || g.family == Family::GL || is_unram_unitary(g.family)) return {1};
  if (is_orthogonal(g.family) && g.N <= 2) return inner_form_of(s.partition, g.family);
  EpipelagicStratum base = s;
  base.partition.clear();
  return inner_form_of_matrix(g.family, assembled_form(g, s), assembled_form(g, base), g.field);
}

// delta: one sign per sign index of the shell. xi restricts SO_even with o
// not in I to one L-packet; otherwise both are enumerated.
inline Packet enumerate_packet(const GroupSpec& g, const EpipelagicStratum& shell, const std::vector<int>& delta,
                               std::optional<int> xi = std::nullopt) {
  const auto& F = g.field;
  const Family f = g.family;
  if (f == Family::GL) throw domain_error("enumerate_packet: GL packets are singletons");
  auto idx = partition_indices(f, shell);
  auto sidx = sign_indices(f, shell);
  if (delta.size() != sidx.size()) throw domain_error("enumerate_packet: expected " + std::to_string(sidx.size()) + " signs");
  for (int d : delta)
    if (d != 1 && d != -1) throw domain_error("enumerate_packet: signs must be +1 or -1");
  const bool xi_applies = is_so_even(f) && !shell.has_null();
  if (!xi_applies && xi) throw domain_error("enumerate_packet: xi only applies to SO_even with o not in I");
  std::vector<std::optional<int>> xis = {std::nullopt};
  if (xi_applies) xis = xi ? std::vector<std::optional<int>>{*xi} : std::vector<std::optional<int>>{1, -1};

  std::vector<std::vector<int>> parts;
  if (f == Family::Sp || is_ram_unitary(f) || is_orthogonal(f)) {
    for (unsigned mask = 0; mask < (1u << idx.size()); ++mask) {
      std::vector<int> part;
      for (size_t k = 0; k < idx.size(); ++k)
        if (mask >> k & 1) part.push_back(idx[k]);
      parts.push_back(part);
    }
  } else {
    parts = {{}};
  }

  Packet pk;
  pk.l_packets = int(xis.size());
  pk.xi_heuristic = xi_applies;
  for (auto x : xis) {
    std::optional<CuspidalSupport> first;
    for (auto& part : parts) {
      PacketMember m;
      m.partition = part;
      m.xi = x;
      m.stratum = shell;
      m.stratum.partition = part;
      m.stratum.xi = x;
      m.group = g;
      InnerFormLabel parity = inner_form_of(part, f);
      m.group.form_variant = parity.value > 0 ? Variant::plus : Variant::minus;
      // lambda(omega_i) = delta_i kappa_i (times chi(-1) for Sp); o carries delta_o (times kappa_o for ramified U)
      m.stratum.omega_signs.assign(sidx.size(), 1);
      auto errs = validate_stratum(m.group, m.stratum);
      if (!errs.empty()) throw domain_error("enumerate_packet: invalid shell, clause " + errs[0].clause + ": " + errs[0].message);
      for (size_t k = 0; k < sidx.size(); ++k) {
        int i = sidx[k];
        int sgn = delta[k];
        if (!shell.components[i].null) {
          sgn *= kappa(m.group, m.stratum, i);
          if (f == Family::Sp) sgn *= F.chi_minus_one();
        } else if (is_ram_unitary(f)) {
          int prod = F.pow(F.from_int(-2), g.N - 1);
          for (int j : shell.non_null()) prod = F.mul(prod, det_beta_unit(m.group, m.stratum, j));
          sgn *= F.quad_char(prod);
        }
        m.stratum.omega_signs[k] = sgn;
      }
      m.inner_form = inner_form_from_forms(m.group, m.stratum);
      if (!(m.inner_form == parity)) throw std::logic_error("enumerate_packet: matrix label disagrees with the parity rule");
      m.lift = cuspidal_support(m.group, m.stratum);
      if (!first) first = m.lift;
      else if (!(*first == m.lift)) throw std::logic_error("enumerate_packet: lift not constant on an L-packet");
      pk.members.push_back(std::move(m));
    }
    if (pk.lift.entries.empty()) pk.lift = *first;
  }
  pk.cardinality = int(pk.members.size());
  return pk;
}

// expected packet size per family
inline int expected_cardinality(Family f, const EpipelagicStratum& shell, bool both_xi = true) {
  int nI = int(shell.components.size());
  if (is_unram_unitary(f)) return 1;
  if (f == Family::SO_odd) return 1 << (nI - 1);
  if (is_so_even(f) && !shell.has_null()) return 1 << (both_xi ? nI + 1 : nI);
  return 1 << nI;
}

}  // namespace epi

#endif
