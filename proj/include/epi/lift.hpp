#ifndef EPI_LIFT_HPP
#define EPI_LIFT_HPP

#include <string>
#include <vector>

#include "hecke.hpp"

namespace epi {

// tame character datum pi~(param, mu, value) of a general linear group
struct LiftCharacter {
  int gl_rank = 1;
  int stratum_param = 0;  // residue of 2^m c for the twisted stratum 2 beta_i; 0 for 1-dim characters
  MuCharacter mu_restriction;
  GaussUnit uniformizer_value;
  std::string label;
  // true when the value is taken at a skew uniformizer w_beta; 1-dim characters of F^x have value^2 = 1 instead
  bool skew_uniformizer = true;
  int beta_sign = 1;  // beta_i(-) of the xi-twist
  bool operator==(const LiftCharacter&) const = default;
};

struct CuspidalSupport {
  std::vector<LiftCharacter> entries;
  int total_rank = 0;
  bool operator==(const CuspidalSupport&) const = default;
};

inline bool is_self_dual(const LiftCharacter& c, const ResidueField& F) {
  GaussUnit sq = gauss_unit_mul(c.uniformizer_value, c.uniformizer_value, F);
  int target = c.skew_uniformizer ? mu_at_minus_one(c.mu_restriction) : 1;
  return sq == GaussUnit{target, 0};
}

namespace detail {

inline void require_valid(const GroupSpec& g, const EpipelagicStratum& s, const char* who) {
  auto errs = validate_stratum(g, s);
  if (!errs.empty()) throw domain_error(std::string(who) + ": invalid stratum, clause " + errs[0].clause + ": " + errs[0].message);
}

inline GaussUnit n_pow(int k, const ResidueField& F) { return gauss_unit_pow(GaussUnit{1, 1}, k, F); }

inline LiftCharacter component_entry(const GroupSpec& g, const EpipelagicStratum& s, int i) {
  const auto& c = s.components[i];
  LiftCharacter r;
  r.gl_rank = c.degree;
  r.stratum_param = g.field.mul(two_pow(c.degree, g.field), c.unit);
  r.label = "GL_" + std::to_string(c.degree);
  return r;
}

}  // namespace detail

// kappa_i for i != o
inline int kappa(const GroupSpec& g, const EpipelagicStratum& s, int i) {
  detail::require_valid(g, s, "kappa");
  const auto& F = g.field;
  const auto& ci = s.components.at(i);
  if (ci.null) throw domain_error("kappa: i must differ from o");
  if (g.family == Family::GL || is_unram_unitary(g.family)) throw domain_error("kappa: not defined for this family");
  auto ri = realize(g, s, i);
  Mono dbi = ri.beta.beta.det(F), dhi = ri.H.det(F);
  int prod = 1;
  for (int j : s.non_null()) {
    if (j == i) continue;
    auto rj = realize(g, s, j);
    Mono dbj = rj.beta.beta.det(F), dhj = rj.H.det(F);
    if (dbj.val != dbi.val || dhj.val != dhi.val) throw std::logic_error("kappa: valuations of the components differ");
    int gamma = F.sub(1, F.div(dbj.coef, dbi.coef));
    if (gamma == 0) throw domain_error("kappa: gamma_j vanishes (degenerate stratum)");
    prod = F.mul(prod, F.mul(gamma, F.div(dhj.coef, dhi.coef)));
  }
  if (is_ram_unitary(g.family)) {
    int e = (ci.degree - 1) / 2;
    int sign = (e + (s.has_null() ? 1 : 0)) % 2 ? F.neg(1) : 1;
    int m2 = F.pow(F.from_int(-2), g.N - 1);
    return F.quad_char(F.mul(F.mul(m2, sign), prod));
  }
  int n = rank_of(g), e = ci.degree / 2;
  int sign = (n - e) % 2 ? F.neg(1) : 1;
  return F.quad_char(F.mul(sign, prod));
}

// character attached to a non-null component i
inline LiftCharacter lift_character(const GroupSpec& g, const EpipelagicStratum& s, int i) {
  detail::require_valid(g, s, "lift_character");
  const auto& F = g.field;
  if (s.components.at(i).null) throw domain_error("lift_character: use the o characters of cuspidal_support for i = o");
  LiftCharacter r = detail::component_entry(g, s, i);
  const int chi_m1 = F.chi_minus_one();
  const int N = g.N;
  switch (g.family) {
    case Family::SO_odd:
      r.mu_restriction = mu_trivial();
      r.uniformizer_value = GaussUnit{sign_at(s, g.family, i) * kappa(g, s, i), 0};
      break;
    case Family::Sp:
      r.mu_restriction = mu_quadratic(F);
      r.uniformizer_value = GaussUnit{sign_at(s, g.family, i) * chi_m1 * kappa(g, s, i), 1};
      break;
    case Family::SO_even_split:
    case Family::SO_even_unram:
    case Family::SO_even_ram:
    {
      // n(q_o) = (-1)^{u} chi(-1) when o lies in I; kappa_i carries the chi(-1)
      int u = g.family == Family::SO_even_ram ? (s.has_null() && s.components.back().form_choice == Variant::minus) : u_of(g.family);
      int null_sign = s.has_null() && u ? -1 : 1;
      r.mu_restriction = mu_quadratic(F);
      r.uniformizer_value = GaussUnit{null_sign * sign_at(s, g.family, i) * kappa(g, s, i), 1};
      if (s.xi && *s.xi < 0 && i == s.non_null().back()) r.beta_sign = -1;
      break;
    }
    case Family::U_ram_odd:
    case Family::U_ram_even:
      r.mu_restriction = mu_power_of_quadratic(N - 1, F);
      r.uniformizer_value = sign_at(s, g.family, i) * kappa(g, s, i) * detail::n_pow(N - 1, F);
      break;
    case Family::U_unram_odd:
    case Family::U_unram_even: {
      // the self-dual hypothesis corresponding to lambda, value eps_y eps_z of the s = 1 branch
      int t = s.character_exponent;
      r.mu_restriction = normalize(MuCharacter{-t * (F.p() - 1)}, F);
      GaussUnit gz = gauss_product(g, s, i).value;
      r.uniformizer_value = lambda_minus_one_unram(mod(t, F.p() + 1)) * gz;
      r.stratum_param = F.mul(F.pow(F.from_int(2), N), s.components[i].unit);
      break;
    }
    case Family::GL: throw domain_error("lift_character: GL is its own lift");
  }
  return r;
}

// value predicted by the quadratic relations with w_i replaced by u w_i:
// lambda~(-2) lambda(omega_i) n_z(u w_i)
inline GaussUnit gauss_route_value(const GroupSpec& g, const EpipelagicStratum& s, int i, int u = 1) {
  detail::require_valid(g, s, "gauss_route_value");
  if (is_unram_unitary(g.family) || g.family == Family::GL) throw domain_error("gauss_route_value: families with self-dual mu only");
  const auto& F = g.field;
  MuCharacter mu = lift_character(g, s, i).mu_restriction;
  auto gp = gauss_product(g, s, i, u);
  return (mu_sign(mu, F.from_int(-2), F) * sign_at(s, g.family, i)) * gp.value;
}

// the sign relating the built cross blocks to the kappa convention:
// every non-null j != i contributes chi((-1)^e) (orthogonal, Sp) or
// chi(2 (-1)^{e-1}) (ramified unitary, degree 2e+1) in the kappa product
inline int gauss_route_correction(const GroupSpec& g, const EpipelagicStratum& s, int i) {
  const auto& F = g.field;
  int others = int(s.non_null().size()) - 1;
  int deg = s.components.at(i).degree;
  int per = 1;
  if (g.family == Family::Sp) per = F.quad_char(F.from_int((deg / 2) % 2 ? -1 : 1));
  else if (is_orthogonal(g.family)) per = F.quad_char(F.from_int((deg / 2 - 1) % 2 ? -1 : 1));
  else if (is_ram_unitary(g.family)) per = F.quad_char(F.mul(F.from_int(2), F.from_int(((deg - 1) / 2 - 1) % 2 ? -1 : 1)));
  return others % 2 ? per : 1;
}

inline CuspidalSupport cuspidal_support(const GroupSpec& g, const EpipelagicStratum& s) {
  detail::require_valid(g, s, "cuspidal_support");
  const auto& F = g.field;
  CuspidalSupport cs;
  for (int i : s.non_null()) cs.entries.push_back(lift_character(g, s, i));
  switch (g.family) {
    case Family::Sp: {
      // prod_i ((-1)^{e_i - 1} w det beta_i / mu_F)
      int prod = 1;
      for (int i : s.non_null()) {
        Mono d = realize(g, s, i).beta.beta.det(F);
        if (d.val != -1) throw std::logic_error("cuspidal_support: det beta_i must have valuation -1");
        int e = s.components[i].degree / 2;
        prod = F.mul(prod, F.mul((e - 1) % 2 ? F.neg(1) : 1, d.coef));
      }
      LiftCharacter o;
      o.label = "o";
      o.mu_restriction = mu_power_of_quadratic(int(s.non_null().size()), F);
      o.uniformizer_value = GaussUnit{F.quad_char(prod), 0};
      o.skew_uniformizer = false;
      cs.entries.push_back(o);
      break;
    }
    case Family::SO_even_split:
    case Family::SO_even_unram:
    case Family::SO_even_ram: {
      if (!s.has_null()) break;
      int lo = sign_at(s, g.family, s.null_index());
      // det H_o from the global discriminant, component blocks normalized to det H_j = c_j w
      HermitianRep rep{g.family, g.N, Variant::plus, g.disc_choice};
      Mono dg = hermitian_matrix(rep, F).det(F);
      Mono prod{1, 0};
      for (int j : s.non_null()) prod = mono_mul(prod, Mono{s.components[j].unit, 1}, F);
      Mono dho = mono_mul(dg, mono_inv(prod, F), F);
      Mono k = mono_mul(Mono{F.neg(1), 1}, mono_inv(dho, F), F);
      if (k.val % 2) throw std::logic_error("cuspidal_support: w-parts of kappa_o do not cancel");
      LiftCharacter c1, c2;
      c1.label = "chi1";
      c1.mu_restriction = mu_trivial();
      c1.uniformizer_value = GaussUnit{lo, 0};
      c1.skew_uniformizer = false;
      c2.label = "chi2";
      c2.mu_restriction = mu_quadratic(F);
      c2.uniformizer_value = GaussUnit{lo * F.quad_char(k.coef), 0};
      c2.skew_uniformizer = false;
      cs.entries.push_back(c1);
      cs.entries.push_back(c2);
      break;
    }
    case Family::U_ram_odd:
    case Family::U_ram_even: {
      if (!s.has_null()) break;
      int prod = F.pow(F.from_int(-2), g.N - 1);
      for (int j : s.non_null()) prod = F.mul(prod, det_beta_unit(g, s, j));
      LiftCharacter o;
      o.label = "o";
      o.mu_restriction = mu_power_of_quadratic(g.N - 1, F);
      o.uniformizer_value = (sign_at(s, g.family, s.null_index()) * F.quad_char(prod)) * detail::n_pow(g.N - 1, F);
      cs.entries.push_back(o);
      break;
    }
    default: break;
  }
  for (auto& e : cs.entries) cs.total_rank += e.gl_rank;
  if (cs.total_rank != dual_rank(g)) throw std::logic_error("cuspidal_support: rank " + std::to_string(cs.total_rank) + " != " + std::to_string(dual_rank(g)));
  return cs;
}

// the lift read off Oi's formulas (and the simple ramified unitary
// computation), without kappa or Gauss sums
inline CuspidalSupport oi_concordance(const SimpleSupercuspidalDatum& d) {
  const auto& F = d.field;
  const int a = datum_a(d);
  const int N = d.N, n = N / 2;
  const int chi_m1 = F.chi_minus_one();
  auto chi = [&](int x) { return F.quad_char(x); };
  auto pm = [&](int k) { return k % 2 ? F.neg(1) : 1; };
  auto gl = [&](int m, int param, MuCharacter mu, GaussUnit v) {
    LiftCharacter c;
    c.gl_rank = m;
    c.stratum_param = param;
    c.mu_restriction = mu;
    c.uniformizer_value = v;
    c.label = "GL_" + std::to_string(m);
    return c;
  };
  auto one = [&](const char* label, MuCharacter mu, int v, bool skew = false) {
    LiftCharacter c;
    c.label = label;
    c.mu_restriction = mu;
    c.uniformizer_value = GaussUnit{v, 0};
    c.skew_uniformizer = skew;
    return c;
  };
  const MuCharacter quad = mu_quadratic(F);
  CuspidalSupport cs;
  switch (d.family) {
    case Family::SO_odd:
      cs.entries = {gl(2 * n, F.mul(F.from_int(2), a), mu_trivial(), GaussUnit{d.xi, 0})};
      break;
    case Family::Sp:
      cs.entries = {gl(2 * n, F.mul(F.from_int(4), a), quad, GaussUnit{d.xi * chi_m1, 1}),
                    one("o", quad, chi(F.mul(pm(n), a)))};
      break;
    case Family::SO_even_ram:
      cs.entries = {gl(2 * n, F.mul(pm(n - 1), F.mul(a, a)), quad, GaussUnit{d.xi, 1})};
      break;
    case Family::SO_even_split:
    case Family::SO_even_unram: {
      int u = u_of(d.family);
      int sgn = (u ? -1 : 1);
      cs.entries = {gl(2 * n - 2, F.mul(pm(n), F.mul(two_pow(2 - u, F), a)), quad, GaussUnit{sgn * d.eta * chi_m1, 1}),
                    one("chi1", mu_trivial(), d.xi * d.eta),
                    one("chi2", quad, sgn * chi(F.neg(F.mul(two_pow(u, F), a))) * d.xi * d.eta)};
      break;
    }
    case Family::U_unram_odd:
    case Family::U_unram_even: {
      int t = d.phi;
      int lm1 = lambda_minus_one_unram(mod(t, F.p() + 1));
      cs.entries = {gl(N, a, normalize(MuCharacter{-t * (F.p() - 1)}, F), GaussUnit{(N - 1) % 2 ? -lm1 : lm1, 0})};
      break;
    }
    case Family::U_ram_odd:
      cs.entries = {gl(N, F.mul(F.from_int(2), a), mu_trivial(), GaussUnit{d.xi, 0})};
      break;
    case Family::U_ram_even: {
      // det beta_j of the anti-diagonal companion: (-1)^{n-1} a / 2^{2n-1}
      int det_bj = F.mul(pm(n - 1), F.mul(a, F.inv(two_pow(2 * n - 1, F))));
      cs.entries = {gl(N - 1, a, quad, GaussUnit{d.eta * chi(2), 1}),
                    one("o", quad, 0, true)};
      cs.entries[1].uniformizer_value = GaussUnit{d.xi * d.eta * chi(F.mul(F.neg(2), det_bj)), 1};
      break;
    }
    case Family::GL: throw domain_error("oi_concordance: GL is its own lift");
  }
  for (auto& e : cs.entries) cs.total_rank += e.gl_rank;
  return cs;
}

// componentwise equality with parameters compared by square class
// (exactly for unramified unitary groups)
inline bool concordant(const CuspidalSupport& x, const CuspidalSupport& y, const ResidueField& F, bool exact_params = false) {
  if (x.total_rank != y.total_rank || x.entries.size() != y.entries.size()) return false;
  for (size_t k = 0; k < x.entries.size(); ++k) {
    const auto& a = x.entries[k];
    const auto& b = y.entries[k];
    if (a.gl_rank != b.gl_rank || a.label != b.label || a.beta_sign != b.beta_sign) return false;
    if (normalize(a.mu_restriction, F) != normalize(b.mu_restriction, F)) return false;
    if (!(a.uniformizer_value == b.uniformizer_value)) return false;
    if ((a.stratum_param == 0) != (b.stratum_param == 0)) return false;
    if (a.stratum_param) {
      if (exact_params ? a.stratum_param != b.stratum_param : F.quad_char(a.stratum_param) != F.quad_char(b.stratum_param)) return false;
    }
  }
  return true;
}

inline std::string describe(const LiftCharacter& c, const ResidueField& F) {
  std::string v = to_string(c.uniformizer_value);
  std::string mu = mu_tag(c.mu_restriction, F);
  if (c.stratum_param == 0) return "chi(" + mu + ", " + v + ")";
  std::string b = c.beta_sign < 0 ? "-" : "";
  return "pi~(" + b + F.to_string(c.stratum_param) + ", " + mu + ", " + v + ")";
}

inline std::string describe(const CuspidalSupport& cs, const ResidueField& F) {
  std::string r;
  for (auto& e : cs.entries) r += (r.empty() ? "" : " x ") + describe(e, F);
  return r;
}

}  // namespace epi

#endif
