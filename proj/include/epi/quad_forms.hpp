#ifndef EPI_QUAD_FORMS_HPP
#define EPI_QUAD_FORMS_HPP

#include <cmath>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "strata.hpp"

namespace epi {

// q(X) = X^t G X for a symmetric gram matrix G over F_q
struct QuadFormFq {
  ResidueField field{3};
  std::vector<std::vector<int>> gram;

  int dim() const { return int(gram.size()); }
  bool operator==(const QuadFormFq& o) const { return field == o.field && gram == o.gram; }
};

inline QuadFormFq diagonal_form(const std::vector<int>& d, const ResidueField& F) {
  QuadFormFq q{F, std::vector<std::vector<int>>(d.size(), std::vector<int>(d.size(), 0))};
  for (size_t k = 0; k < d.size(); ++k) q.gram[k][k] = d[k];
  return q;
}

inline bool is_symmetric(const QuadFormFq& q) {
  for (int a = 0; a < q.dim(); ++a)
    for (int b = 0; b < q.dim(); ++b)
      if (q.gram[a][b] != q.gram[b][a]) return false;
  return true;
}

inline int evaluate(const QuadFormFq& q, const std::vector<int>& x) {
  const auto& F = q.field;
  int s = 0;
  for (int a = 0; a < q.dim(); ++a) {
    if (!x[a]) continue;
    int row = 0;
    for (int b = 0; b < q.dim(); ++b) row = F.add(row, F.mul(q.gram[a][b], x[b]));
    s = F.add(s, F.mul(x[a], row));
  }
  return s;
}

namespace detail {

struct Echelon {
  std::vector<std::vector<int>> rows;
  std::vector<int> pivots;
  int det = 1;  // determinant when square and full rank, else 0
};

inline Echelon rref(std::vector<std::vector<int>> m, const ResidueField& F) {
  Echelon e;
  int nr = int(m.size()), nc = nr ? int(m[0].size()) : 0, r = 0;
  for (int c = 0; c < nc && r < nr; ++c) {
    int piv = -1;
    for (int k = r; k < nr; ++k)
      if (m[k][c]) { piv = k; break; }
    if (piv < 0) continue;
    if (piv != r) { std::swap(m[piv], m[r]); e.det = F.neg(e.det); }
    int lead = m[r][c];
    e.det = F.mul(e.det, lead);
    int il = F.inv(lead);
    for (int& x : m[r]) x = F.mul(x, il);
    for (int k = 0; k < nr; ++k) {
      if (k == r || !m[k][c]) continue;
      int f = m[k][c];
      for (int cc = 0; cc < nc; ++cc) m[k][cc] = F.sub(m[k][cc], F.mul(f, m[r][cc]));
    }
    e.pivots.push_back(c);
    ++r;
  }
  m.resize(r);
  e.rows = std::move(m);
  if (r != nr || nr != nc) e.det = 0;
  return e;
}

}  // namespace detail

inline int det(const QuadFormFq& q) {
  if (q.dim() == 0) return 1;
  return detail::rref(q.gram, q.field).det;
}

inline bool is_nondegenerate(const QuadFormFq& q) { return det(q) != 0; }

// basis of the radical {x : G x = 0}
inline std::vector<std::vector<int>> radical(const QuadFormFq& q) {
  const auto& F = q.field;
  auto e = detail::rref(q.gram, F);
  int n = q.dim();
  std::vector<bool> is_piv(n, false);
  for (int c : e.pivots) is_piv[c] = true;
  std::vector<std::vector<int>> basis;
  for (int fcol = 0; fcol < n; ++fcol) {
    if (is_piv[fcol]) continue;
    std::vector<int> v(n, 0);
    v[fcol] = 1;
    for (size_t r = 0; r < e.rows.size(); ++r) v[e.pivots[r]] = F.neg(e.rows[r][fcol]);
    basis.push_back(v);
  }
  return basis;
}

// restriction to the coordinates that are not pivots of the reduced radical
// basis; these span a complement of the radical
inline QuadFormFq radical_quotient(const QuadFormFq& q) {
  auto rad = radical(q);
  if (rad.empty()) return q;
  auto e = detail::rref(rad, q.field);
  std::vector<bool> drop(q.dim(), false);
  for (int c : e.pivots) drop[c] = true;
  std::vector<int> keep;
  for (int k = 0; k < q.dim(); ++k)
    if (!drop[k]) keep.push_back(k);
  QuadFormFq r{q.field, std::vector<std::vector<int>>(keep.size(), std::vector<int>(keep.size()))};
  for (size_t a = 0; a < keep.size(); ++a)
    for (size_t b = 0; b < keep.size(); ++b) r.gram[a][b] = q.gram[keep[a]][keep[b]];
  return r;
}

inline int discriminant(const QuadFormFq& q) {
  int d = det(q);
  if (d == 0) throw domain_error("discriminant: degenerate form, apply radical_quotient first");
  return q.field.quad_char(d);
}

// n(q) = (det q / F^x) n_psi^{dim}
inline GaussUnit gauss_closed(const QuadFormFq& q) {
  int s = discriminant(q);
  int d = q.dim();
  return s * gauss_unit_pow(GaussUnit{1, 1}, d, q.field);
}

inline QuadFormFq direct_sum(const QuadFormFq& a, const QuadFormFq& b) {
  if (!(a.field == b.field)) throw domain_error("direct_sum: fields differ");
  int n = a.dim() + b.dim();
  QuadFormFq r{a.field, std::vector<std::vector<int>>(n, std::vector<int>(n, 0))};
  for (int x = 0; x < a.dim(); ++x)
    for (int y = 0; y < a.dim(); ++y) r.gram[x][y] = a.gram[x][y];
  for (int x = 0; x < b.dim(); ++x)
    for (int y = 0; y < b.dim(); ++y) r.gram[a.dim() + x][a.dim() + y] = b.gram[x][y];
  return r;
}

inline QuadFormFq scaled(const QuadFormFq& q, int u) {
  QuadFormFq r = q;
  for (auto& row : r.gram)
    for (int& x : row) x = q.field.mul(u, x);
  return r;
}

constexpr double kBruteBudget = 2e7;

// q^{-dim/2} sum_X psi(q(X)) evaluated exactly in Z[z_p]
inline GaussUnit gauss_brute(const QuadFormFq& q) {
  const auto& F = q.field;
  const int d = q.dim();
  if (std::pow(double(F.q()), d) > kBruteBudget)
    throw domain_error("gauss_brute: q^dim = " + std::to_string(F.q()) + "^" + std::to_string(d) + " exceeds the brute-force budget");
  std::vector<long long> bucket(F.p(), 0);
  std::vector<int> x(d, 0);
  while (true) {
    ++bucket[F.trace(evaluate(q, x))];
    int k = 0;
    while (k < d && ++x[k] == F.q()) x[k++] = 0;
    if (k == d) break;
  }
  CyclotomicInt S(F.p());
  for (int t = 0; t < F.p(); ++t) S += CyclotomicInt::zeta_power(F.p(), t) * bucket[t];
  CyclotomicInt raw = gauss_brute(F).raw;
  long long qpow = 1;
  for (int k = 0; k < d / 2; ++k) qpow *= F.q();
  CyclotomicInt base = (d % 2 ? raw : CyclotomicInt(F.p(), 1)) * qpow;
  if (S == base) return {1, d % 2};
  if (S == -base) return {-1, d % 2};
  throw domain_error("gauss_brute: sum is not a normalized unit (degenerate form?)");
}

// ---- the skew functional beta and the trace forms ----

// t_k sits at (sigma(k), k)
struct SkewBeta {
  MonoMat beta;
  std::vector<int> sigma;
};

namespace detail {

inline MonoMat alpha(const MonoMat& Y, const MonoMat& Hsrc, const MonoMat& Htgt, Conj c, const ResidueField& F) {
  return Htgt.inverse(F).mul(Y.conj(c, F).transpose(), F).mul(Hsrc, F).scaled({F.neg(1), 0}, F);
}

// an m-cycle sigma with tau sigma tau = sigma^{-1}, tau the permutation of H
inline std::vector<int> cycle_for(const MonoMat& H) {
  int m = H.size();
  std::vector<int> tau(m), sigma(m);
  for (int k = 0; k < m; ++k) tau[k] = H.col(k);
  bool reversal = true;
  for (int k = 0; k < m; ++k) reversal &= tau[k] == m - 1 - k;
  if (reversal) {
    for (int k = 0; k < m; ++k) sigma[k] = (k + 1) % m;
    return sigma;
  }
  int c = m / 2 - 1;
  bool centred = m % 2 == 0 && m >= 2;
  for (int k = 0; k < m && centred; ++k) centred &= tau[k] == ((k == c || k == c + 1) ? k : m - 1 - k);
  if (!centred) throw domain_error("skew beta: unsupported shape of H");
  std::vector<int> cyc;
  for (int k = c; k >= 0; --k) cyc.push_back(k);
  cyc.push_back(c + 1);
  for (int k = 0; k < c; ++k) cyc.push_back(tau[k]);
  for (int k = 0; k < m; ++k) sigma[cyc[k]] = cyc[(k + 1) % m];
  return sigma;
}

}  // namespace detail

// beta with alpha(beta) = beta and beta^m = c w^{-1}, supported on a cycle
// adapted to H. the valuation pattern depends only on H.
inline SkewBeta skew_beta(const MonoMat& H, int c, Conj conj, const ResidueField& F) {
  const int m = H.size();
  if (c == 0) throw domain_error("skew beta: zero leading unit");
  auto sigma = detail::cycle_for(H);
  std::vector<int> tau(m), P(m);
  for (int k = 0; k < m; ++k) tau[k] = H.col(k);
  for (int k = 0; k < m; ++k) P[k] = tau[sigma[k]];
  // t_k = -conj(t_{Pk}) * ratio_k
  std::vector<Mono> ratio(m);
  for (int k = 0; k < m; ++k)
    ratio[k] = mono_neg(mono_mul(H.at(tau[k], k), mono_inv(H.at(P[k], sigma[k]), F), F), F);
  auto partner = [&](Mono t, int k) { return mono_mul(mono_conj(t, conj, F), ratio[P[k]], F); };

  std::vector<int> seeds;
  for (int k = 0; k < m; ++k)
    if (P[k] >= k) seeds.push_back(k);
  const int ns = int(seeds.size());

  std::vector<int> vals(ns, 0);
  const int choices[3] = {0, -1, 1};
  std::vector<int> pick(ns, 0);
  while (true) {
    for (int s = 0; s < ns; ++s) vals[s] = choices[pick[s]];
    // valuation bookkeeping
    int total = 0;
    bool ok = true;
    for (int s = 0; s < ns && ok; ++s) {
      int k = seeds[s];
      Mono t{1, vals[s]};
      if (P[k] == k) {
        Mono back = partner(t, k);
        ok = back.val == t.val;
        total += t.val;
      } else {
        total += t.val + partner(t, k).val;
      }
    }
    if (ok && total == -1) {
      // coefficient search: reachable products orbit by orbit
      std::vector<std::map<int, int>> reach(ns + 1);
      reach[0][1] = 0;
      for (int s = 0; s < ns; ++s) {
        int k = seeds[s];
        for (auto [prod, _] : reach[s]) {
          for (int x = 1; x < F.q(); ++x) {
            Mono t{x, vals[s]};
            int contrib;
            if (P[k] == k) {
              if (!(partner(t, k) == t)) continue;
              contrib = x;
            } else {
              contrib = F.mul(x, partner(t, k).coef);
            }
            int np = F.mul(prod, contrib);
            if (!reach[s + 1].count(np)) reach[s + 1][np] = x;
          }
        }
      }
      if (reach[ns].count(c)) {
        // walk back
        std::vector<int> coef(ns);
        int target = c;
        for (int s = ns - 1; s >= 0; --s) {
          int x = reach[s + 1][target];
          coef[s] = x;
          int k = seeds[s];
          Mono t{x, vals[s]};
          int contrib = P[k] == k ? x : F.mul(x, partner(t, k).coef);
          target = F.div(target, contrib);
        }
        MonoMat beta(m);
        for (int s = 0; s < ns; ++s) {
          int k = seeds[s];
          Mono t{coef[s], vals[s]};
          beta.set(sigma[k], k, t);
          if (P[k] != k) beta.set(sigma[P[k]], P[k], partner(t, k));
        }
        if (!(detail::alpha(beta, H, H, conj, F) == beta)) throw std::logic_error("skew beta: not skew");
        if (!(beta.pow(m, F) == MonoMat::identity(m).scaled({c, -1}, F))) throw std::logic_error("skew beta: wrong power");
        return {beta, sigma};
      }
    }
    int k = 0;
    while (k < ns && ++pick[k] == 3) pick[k++] = 0;
    if (k == ns) break;
  }
  throw domain_error("skew beta: no solution for this H and leading unit");
}

// hermitian block of a non-null component
inline MonoMat component_block(Family f, int m, int c, bool zeta_variant, const ResidueField& F) {
  const int z = zeta_variant ? F.zeta() : 1;
  std::vector<Mono> e(m);
  if (is_orthogonal(f)) {
    if (m % 2) throw domain_error("component_block: orthogonal components have even degree");
    int half = m / 2;
    MonoMat H = MonoMat::anti_diag(std::vector<Mono>(m, Mono{1, 0}));
    int lead = F.mul(half % 2 ? F.neg(1) : 1, F.inv(c));
    MonoMat r(m);
    for (int k = 0; k < m; ++k)
      if (k != half - 1 && k != half) r.set(k, H.col(k), H.entry(k));
    r.set(half - 1, half - 1, Mono{F.mul(z, lead), 1});
    r.set(half, half, Mono{z, 0});
    return r;
  }
  for (int k = 0; k < m; ++k) {
    int s = 1;
    if (f == Family::Sp || is_ram_unitary(f)) s = k % 2 ? F.neg(1) : 1;
    e[k] = Mono{F.mul(s, z), 0};
  }
  return MonoMat::anti_diag(e);
}

struct ComponentRealization {
  MonoMat H;
  SkewBeta beta;
};

inline ComponentRealization realize(const GroupSpec& g, const EpipelagicStratum& s, int k) {
  const auto& comp = s.components.at(k);
  if (comp.null) throw domain_error("realize: the null component carries no beta");
  MonoMat H = component_block(g.family, comp.degree, comp.unit, in_partition(s, k), g.field);
  return {H, skew_beta(H, comp.unit, conj_of(g.family), g.field)};
}

// leading coefficient of w^{-val} det beta_k
inline int det_beta_unit(const GroupSpec& g, const EpipelagicStratum& s, int k) {
  return realize(g, s, k).beta.beta.det(g.field).coef;
}

inline int det_H_unit(const GroupSpec& g, const EpipelagicStratum& s, int k) {
  return realize(g, s, k).H.det(g.field).coef;
}

// h(E_a, E_b) = 1/2 tr((E_a - beta_i^{-1} E_a beta_j) alpha(E_b)) on diagonal coordinates
inline std::vector<std::vector<int>> trace_pairing(const ComponentRealization& ri, const ComponentRealization& rj, Conj c,
                                                  const ResidueField& F) {
  const int m = ri.H.size();
  if (rj.H.size() != m) throw domain_error("trace form: components of different degree");
  const int half = F.inv(F.from_int(2));
  MonoMat bi_inv = ri.beta.beta.inverse(F);
  std::vector<std::vector<int>> h(m, std::vector<int>(m));
  for (int a = 0; a < m; ++a) {
    MonoMat Ea = MonoMat::elementary(m, a, a, {1, 0});
    MonoMat twisted = bi_inv.mul(Ea, F).mul(rj.beta.beta, F);
    for (int b = 0; b < m; ++b) {
      MonoMat Eb = MonoMat::elementary(m, b, b, {1, 0});
      MonoMat al = detail::alpha(Eb, ri.H, rj.H, c, F);
      int t = F.sub(Ea.mul(al, F).trace_residue(F), twisted.mul(al, F).trace_residue(F));
      h[a][b] = F.mul(half, t);
    }
  }
  return h;
}

// F_p-form attached to a hermitian pairing over F_{p^2}: B(u,v) = (h(u,v)+h(v,u))/2 on the basis {e_a, theta e_a}
inline QuadFormFq restrict_to_prime_field(const std::vector<std::vector<int>>& h, const ResidueField& F) {
  const int m = int(h.size());
  ResidueField Fp(F.p());
  const int half = F.inv(F.from_int(2));
  std::vector<int> basis = {1, F.p()};  // 1 and theta
  QuadFormFq q{Fp, std::vector<std::vector<int>>(2 * m, std::vector<int>(2 * m))};
  for (int a = 0; a < m; ++a)
    for (int x = 0; x < 2; ++x)
      for (int b = 0; b < m; ++b)
        for (int y = 0; y < 2; ++y) {
          int u = basis[x], v = basis[y];
          int huv = F.mul(F.mul(u, F.frob(v)), h[a][b]);
          int hvu = F.mul(F.mul(v, F.frob(u)), h[b][a]);
          int s = F.mul(half, F.add(huv, hvu));
          if (!F.in_prime_field(s)) throw std::logic_error("trace form: hermitian pairing is not F_p-valued");
          q.gram[2 * a + x][2 * b + y] = s;
        }
  return q;
}

struct TraceFormSpec {
  GroupSpec group;
  EpipelagicStratum stratum;
  int i = 0;
  int j = 0;
};

// form attached to the null component o, seen from a component i != o
inline QuadFormFq null_form(const GroupSpec& g, const EpipelagicStratum& s) {
  const auto& F = g.field;
  const int half = F.inv(F.from_int(2));
  switch (g.family) {
    case Family::SO_odd: return diagonal_form({half}, F);
    case Family::U_ram_odd:
    case Family::U_ram_even: return diagonal_form({F.neg(1)}, F);
    case Family::SO_even_split:
    case Family::SO_even_unram:
    case Family::SO_even_ram: {
      int u = g.family == Family::SO_even_unram ? 1 : 0;
      if (g.family == Family::SO_even_ram) u = s.components.back().form_choice == Variant::minus ? 1 : 0;
      int mh = F.neg(half);
      return diagonal_form({F.mul(mh, F.pow(F.zeta(), u)), mh}, F);
    }
    default: throw domain_error("null_form: the family has no null component");
  }
}

// the block q_{z,s,j} seen from the source index i. for j = i the full
// diagonal model is returned; its radical contains the constants.
inline QuadFormFq build_trace_form(const TraceFormSpec& spec) {
  const auto& g = spec.group;
  const auto& s = spec.stratum;
  const auto& F = g.field;
  auto errs = validate_stratum(g, s);
  if (!errs.empty()) throw domain_error("build_trace_form: invalid stratum, clause " + errs[0].clause + ": " + errs[0].message);
  const int n = int(s.components.size());
  if (spec.i < 0 || spec.i >= n || spec.j < 0 || spec.j >= n) throw domain_error("build_trace_form: index out of range");
  const bool i_null = s.components[spec.i].null, j_null = s.components[spec.j].null;
  if (i_null && j_null) throw domain_error("build_trace_form: no form between o and itself");
  if (i_null) {
    if (!is_ram_unitary(g.family)) throw domain_error("build_trace_form: i = o blocks are only tabulated for ramified unitary groups");
    return diagonal_form({det_beta_unit(g, s, spec.j)}, F);
  }
  if (j_null) return null_form(g, s);
  auto ri = realize(g, s, spec.i);
  auto rj = spec.i == spec.j ? ri : realize(g, s, spec.j);
  auto h = trace_pairing(ri, rj, conj_of(g.family), F);
  if (is_unram_unitary(g.family)) return restrict_to_prime_field(h, F);
  return QuadFormFq{F, h};
}

}  // namespace epi

#endif
