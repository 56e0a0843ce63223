#ifndef EPI_HECKE_HPP
#define EPI_HECKE_HPP

#include <cstdlib>
#include <string>
#include <vector>

#include "quad_forms.hpp"

namespace epi {

// rational with denominator dividing 4, stored as 4x
struct Quarter {
  int q4 = 0;
  static Quarter half(int h2) { return {2 * h2}; }
  bool operator==(const Quarter&) const = default;
};

inline std::string to_string(Quarter x) {
  int n = x.q4, d = 4;
  int g = std::gcd(std::abs(n), d);
  if (g == 0) return "0";
  n /= g;
  d /= g;
  return d == 1 ? std::to_string(n) : std::to_string(n) + "/" + std::to_string(d);
}

// depth-zero character of mu_F = F_q^x: g^k -> exp(2 pi i exponent k / (q-1))
struct MuCharacter {
  int exponent = 0;
  bool operator==(const MuCharacter&) const = default;
};

inline MuCharacter mu_trivial() { return {0}; }
inline MuCharacter mu_quadratic(const ResidueField& F) { return {(F.q() - 1) / 2}; }
inline MuCharacter mu_power_of_quadratic(int k, const ResidueField& F) { return k % 2 ? mu_quadratic(F) : mu_trivial(); }

inline MuCharacter normalize(MuCharacter m, const ResidueField& F) { return {int(mod(m.exponent, F.q() - 1))}; }

inline bool has_order_le_2(MuCharacter m, const ResidueField& F) { return mod(2LL * m.exponent, F.q() - 1) == 0; }

// value at x for characters of order <= 2
inline int mu_sign(MuCharacter m, int x, const ResidueField& F) {
  if (!has_order_le_2(m, F)) throw domain_error("mu_sign: character of order > 2");
  if (mod(m.exponent, F.q() - 1) == 0) return 1;
  return F.quad_char(x);
}

// value at -1 for any character: (-1)^exponent
inline int mu_at_minus_one(MuCharacter m) { return m.exponent % 2 ? -1 : 1; }

inline std::string mu_tag(MuCharacter m, const ResidueField& F) {
  int e = int(mod(m.exponent, F.q() - 1));
  if (e == 0) return "trivial";
  if (2 * e == F.q() - 1) return "quadratic";
  return "exp:" + std::to_string(e);
}

struct HeckeCoeffs {
  Quarter r_y, r_z;
  GaussUnit eps_T_y, eps_T_z;
  Quarter c_y, c_z;  // exponents of q
  bool bz_vanishes = false;
  int dim_W = 0;
};

// encodes {+-s1, +-s2 + pi sqrt(-1)/log q}
struct ReducibilitySet {
  Quarter s1, s2;
  bool operator==(const ReducibilitySet&) const = default;
  bool contains_one() const { return s1.q4 == 4; }
};

inline std::string to_string(const ReducibilitySet& r) {
  auto pm = [](Quarter x) { return x.q4 == 0 ? std::string("0") : "+-" + to_string(x); };
  return "{" + pm(r.s1) + ", " + pm(r.s2) + " + pi i/log q}";
}

inline ReducibilitySet reducibility_set(Quarter r_y, Quarter r_z, int delta) {
  if (r_y.q4 < 0 || r_z.q4 < 0) throw domain_error("reducibility_set: negative r");
  if (delta != 1 && delta != -1) throw domain_error("reducibility_set: delta must be a sign");
  return {Quarter{std::abs(r_y.q4 + delta * r_z.q4) / 2}, Quarter{std::abs(r_y.q4 - delta * r_z.q4) / 2}};
}

// the lifted character's value at the uniformizer fixes delta
inline ReducibilitySet eigen_product_check(const HeckeCoeffs& c, GaussUnit uniformizer_value, const ResidueField& F) {
  if (c.bz_vanishes) return reducibility_set(c.r_y, Quarter{0}, 1);
  GaussUnit prod = gauss_unit_mul(c.eps_T_y, c.eps_T_z, F);
  if (uniformizer_value == prod) return reducibility_set(c.r_y, c.r_z, 1);
  if (uniformizer_value == -1 * prod) return reducibility_set(c.r_y, c.r_z, -1);
  throw domain_error("eigen_product_check: value " + to_string(uniformizer_value) + " is not +-" + to_string(prod));
}

// residue field over which the Gauss sums of G live
inline ResidueField gauss_field(const GroupSpec& g) { return ResidueField(g.field.p()); }

struct GaussProduct {
  GaussUnit value;
  int dim = 0;
  std::vector<QuadFormFq> blocks;
};

// n_z(w_i, s, psi, h): product of the block Gauss sums seen from i != o
inline GaussProduct gauss_product(const GroupSpec& g, const EpipelagicStratum& s, int i, int scale = 1) {
  if (s.components.at(i).null) throw domain_error("gauss_product: i must differ from o");
  GaussProduct r;
  for (int j = 0; j < int(s.components.size()); ++j) {
    if (is_unram_unitary(g.family) && j != i) continue;
    QuadFormFq q = build_trace_form({g, s, i, j});
    if (j == i) q = radical_quotient(q);
    if (!is_nondegenerate(q)) throw std::logic_error("gauss_product: degenerate block " + std::to_string(j));
    if (scale != 1) q = scaled(q, scale);
    r.value = gauss_unit_mul(r.value, gauss_closed(q), q.field);
    r.dim += q.dim();
    r.blocks.push_back(std::move(q));
  }
  return r;
}

// value of lambda on mu_1 (unramified unitary): h^k -> exp(2 pi i t k/(p+1)), h = g^{p-1}
inline int lambda_minus_one_unram(int t) { return t % 2 ? -1 : 1; }

// lambda~ <-> lambda: lambda~ = lambda o (1-c) on mu_F
inline bool corresponds(MuCharacter lt, int t, const ResidueField& F) {
  int p = F.p();
  return mod(lt.exponent + (long long)t * (p - 1), F.q() - 1) == 0;
}

inline HeckeCoeffs closed_coeffs(const GroupSpec& g, const EpipelagicStratum& s, int i, MuCharacter hyp) {
  auto errs = validate_stratum(g, s);
  if (!errs.empty()) throw domain_error("closed_coeffs: invalid stratum, clause " + errs[0].clause);
  const auto& F = g.field;
  HeckeCoeffs c;
  auto gp = gauss_product(g, s, i);
  c.dim_W = gp.dim;
  if (is_unram_unitary(g.family)) {
    if (mod(hyp.exponent, F.p() - 1) != 0) throw domain_error("closed_coeffs: only self-dual hypotheses are supported");
    int lm1 = lambda_minus_one_unram(s.character_exponent);
    bool match = corresponds(hyp, s.character_exponent, F);
    c.r_y = Quarter::half(match ? 3 : 1);
    c.eps_T_y = GaussUnit{match ? lm1 : -lm1, 0};
    c.c_y = Quarter{6};  // q_.^3
    c.r_z = Quarter::half(1);
    c.eps_T_z = gp.value;
    c.c_z = Quarter{(gp.dim - 1) * 2};
    return c;
  }
  if (!has_order_le_2(hyp, F)) throw domain_error("closed_coeffs: only self-dual hypotheses are supported");
  c.r_y = Quarter{4};
  c.eps_T_y = GaussUnit{mu_sign(hyp, F.from_int(-2), F) * sign_at(s, g.family, i), 0};
  c.c_y = Quarter{8};
  MuCharacter need = mu_power_of_quadratic(gp.dim, F);
  if (normalize(hyp, F) != normalize(need, F)) {
    c.bz_vanishes = true;
    c.r_z = Quarter{0};
    return c;
  }
  c.r_z = Quarter{4};
  c.eps_T_z = gp.value;
  c.c_z = Quarter{(gp.dim - 1) * 2};
  return c;
}

// ---- exact sums over roots of unity ----

// element of Z[x]/(Phi_M), kept reduced
class RootSum {
 public:
  RootSum() = default;
  explicit RootSum(int M, long long c0 = 0) : M_(M), c_(M, 0) { c_[0] = c0; }
  static RootSum root(int M, long long k) {
    RootSum r(M);
    r.c_[mod(k, M)] = 1;
    return r;
  }
  int order() const { return M_; }
  RootSum& operator+=(const RootSum& o) {
    check(o);
    for (int k = 0; k < M_; ++k) c_[k] += o.c_[k];
    return *this;
  }
  RootSum operator+(const RootSum& o) const { auto r = *this; return r += o; }
  RootSum operator-(const RootSum& o) const { return *this + o * -1; }
  RootSum operator*(long long s) const {
    auto r = *this;
    for (auto& x : r.c_) x *= s;
    return r;
  }
  RootSum operator*(const RootSum& o) const {
    check(o);
    RootSum r(M_);
    for (int a = 0; a < M_; ++a)
      if (c_[a])
        for (int b = 0; b < M_; ++b) r.c_[(a + b) % M_] += c_[a] * o.c_[b];
    return r;
  }
  // canonical remainder modulo the M-th cyclotomic polynomial
  std::vector<long long> reduced() const {
    auto phi = cyclotomic_polynomial(M_);
    std::vector<long long> r = c_;
    int dphi = int(phi.size()) - 1;
    for (int k = int(r.size()) - 1; k >= dphi; --k) {
      long long f = r[k];
      if (!f) continue;
      for (int t = 0; t <= dphi; ++t) r[k - dphi + t] -= f * phi[t];
    }
    r.resize(dphi);
    return r;
  }
  bool operator==(const RootSum& o) const { return M_ == o.M_ && reduced() == o.reduced(); }
  bool operator!=(const RootSum& o) const { return !(*this == o); }
  std::string to_string() const {
    auto r = reduced();
    std::string s;
    for (int k = 0; k < int(r.size()); ++k) {
      if (!r[k]) continue;
      if (!s.empty()) s += r[k] > 0 ? " + " : " - ";
      else if (r[k] < 0) s += "-";
      long long a = std::llabs(r[k]);
      if (k == 0) s += std::to_string(a);
      else s += (a == 1 ? "" : std::to_string(a) + "*") + "z^" + std::to_string(k);
    }
    return s.empty() ? "0" : s + " (z = e^{2 pi i/" + std::to_string(M_) + "})";
  }

  // coefficients of Phi_M, constant term first
  static std::vector<long long> cyclotomic_polynomial(int M) {
    std::vector<long long> num(M + 1, 0);
    num[0] = -1;
    num[M] = 1;
    for (int d = 1; d < M; ++d) {
      if (M % d) continue;
      auto den = cyclotomic_polynomial(d);
      int dd = int(den.size()) - 1;
      std::vector<long long> q(num.size() - dd, 0);
      for (int k = int(num.size()) - 1; k >= dd; --k) {
        long long f = num[k];
        q[k - dd] = f;
        for (int t = 0; t <= dd; ++t) num[k - dd + t] -= f * den[t];
      }
      num = q;
    }
    return num;
  }

 private:
  void check(const RootSum& o) const {
    if (o.M_ != M_) throw std::logic_error("RootSum: orders differ");
  }
  int M_ = 1;
  std::vector<long long> c_ = std::vector<long long>(1, 0);
};

inline RootSum to_root_sum(const CyclotomicInt& x) {
  RootSum r(x.p());
  auto c = x.coefficients();
  for (int k = 0; k < int(c.size()); ++k) r += RootSum::root(x.p(), k) * c[k];
  return r;
}

// ---- worked examples ----

inline const std::vector<std::string>& worked_example_tags() {
  static const std::vector<std::string> tags = {"u1_unram", "u1_ram", "so2_ram_y", "so2_ram_z",
                                                "sp_io_y", "sp_io_z", "soeven_io_y", "soeven_io_z"};
  return tags;
}

struct ExampleChars {
  MuCharacter lt;           // lambda~ on mu_F
  int lambda_exponent = 0;  // unramified U(1): lambda on mu_1
  int lambda_minus_one = 1;
  int lambda_omega_o = 1;
  std::vector<int> a;  // symplectic datum a_0..a_n
};

// field of the example: F_{p^2} for unramified U(1), F_p otherwise
inline ResidueField example_field(const std::string& tag, int p) {
  return ResidueField(p, tag.rfind("u1_unram", 0) == 0 ? 2 : 1);
}

namespace detail {

inline void check_example(const std::string& tag, const ResidueField& F, const ExampleChars& ch) {
  bool unram = tag.rfind("u1_unram", 0) == 0;
  if (F.f() != (unram ? 2 : 1)) throw domain_error("worked example " + tag + ": wrong residue field");
  if (unram) {
    if (mod(ch.lt.exponent, F.p() - 1) != 0) throw domain_error("worked example " + tag + ": lambda~ is not self-dual");
  } else if (!has_order_le_2(ch.lt, F)) {
    throw domain_error("worked example " + tag + ": lambda~ is not self-dual");
  }
  if (tag.rfind("sp_io", 0) == 0 && (ch.a.size() < 2 || std::count(ch.a.begin(), ch.a.end(), 0)))
    throw domain_error("worked example " + tag + ": needs units a_0..a_n");
}

// order p+1 root for lambda~ on F_{p^2}^x (self-dual) and lambda on mu_1
inline long long unram_lt_exp(const ResidueField& F, MuCharacter lt, int y) {
  return (long long)(lt.exponent / (F.p() - 1)) * F.log(y);
}
inline long long unram_lambda_exp(const ResidueField& F, int t, int u) {
  int k = F.log(u);
  if (k % (F.p() - 1)) throw std::logic_error("unram_lambda_exp: not in mu_1");
  return (long long)t * (k / (F.p() - 1));
}

}  // namespace detail

// the displayed finite sum, evaluated term by term
inline RootSum brute_b_sum(const std::string& tag, const ResidueField& F, const ExampleChars& ch) {
  detail::check_example(tag, F, ch);
  const int q = F.q(), p = F.p();
  auto lt = [&](int y) { return mu_sign(ch.lt, y, F); };
  if (tag == "u1_unram" || tag == "u1_unram_z") {
    const int M = p + 1;
    RootSum s(M);
    for (int y = 1; y < q; ++y) {
      int tr = F.add(y, F.frob(y));
      if (tag == "u1_unram_z") {
        if (tr == 0) s += RootSum::root(M, detail::unram_lt_exp(F, ch.lt, y));
        continue;
      }
      for (int x = 0; x < q; ++x) {
        if (tr != F.neg(F.mul(x, F.frob(x)))) continue;
        int u = F.add(1, F.mul(F.mul(F.frob(x), F.inv(y)), x));
        s += RootSum::root(M, detail::unram_lt_exp(F, ch.lt, y) + detail::unram_lambda_exp(F, ch.lambda_exponent, u));
      }
    }
    return s;
  }
  RootSum s(p);
  auto lambda_pm = [&](int v) { return v == 1 ? 1 : ch.lambda_minus_one; };
  if (tag == "u1_ram" || tag == "u1_ram_z") {
    for (int y = 1; y < q; ++y) {
      if (tag == "u1_ram_z") { s += RootSum(p, lt(y)); continue; }
      for (int x = 0; x < q; ++x)
        if (F.mul(2, y) == F.neg(F.mul(x, x))) {
          int u = F.add(1, F.mul(F.mul(x, x), F.inv(y)));
          if (u != 1 && u != F.neg(1)) throw std::logic_error("u1_ram: 1 + XX/Y outside {+-1}");
          s += RootSum(p, lt(y) * lambda_pm(u == 1 ? 1 : -1));
        }
    }
    return s;
  }
  if (tag == "so2_ram_y" || tag == "so2_ram_z" || tag == "soeven_io_y" || tag == "soeven_io_z") {
    // relation between the coordinate and Y, and the value of lambda on I - aXY^{-1}X
    for (int y = 1; y < q; ++y)
      for (int x = 0; x < q; ++x) {
        int xx = F.mul(x, x), lhs, lam = 1, pre = 1;
        if (tag == "so2_ram_y") lhs = F.neg(xx);
        else if (tag == "so2_ram_z") { lhs = xx; lam = ch.lambda_minus_one; pre = lt(F.neg(1)); }
        else if (tag == "soeven_io_y") lhs = F.neg(xx);
        else {
          int u = ch.a.empty() ? 0 : ch.a[0];
          lhs = F.neg(F.mul(F.pow(F.zeta(), -u), xx));
          lam = ch.lambda_omega_o;
        }
        if (F.mul(2, y) == lhs) s += RootSum(p, pre * lt(y) * lam);
      }
    return s;
  }
  if (tag == "sp_io_y" || tag == "sp_io_z") {
    const int n = int(ch.a.size()) - 1;
    // histogram of the quadratic form over its coordinates
    std::vector<long long> hist(q, 0);
    if (tag == "sp_io_y") {
      int c = F.mul(n % 2 ? F.neg(1) : 1, ch.a[n]);
      for (int x = 0; x < q; ++x) ++hist[F.mul(c, F.mul(x, x))];
    } else {
      int d = 2 * n - 1;
      std::vector<int> x(d, 0);
      // x[0] = x_1, x[1..n-1] = x_2..x_n, x[n..2n-2] = x_{n+2}..x_{2n}
      while (true) {
        int v = F.mul(ch.a[0], F.mul(x[0], x[0]));
        for (int k = 1; k <= n - 1; ++k) {
          int left = x[k], right = x[n + (n - 1 - k)];
          int coef = F.mul(2, k % 2 ? F.neg(ch.a[k]) : ch.a[k]);
          v = F.add(v, F.mul(coef, F.mul(left, right)));
        }
        ++hist[v];
        int k = 0;
        while (k < d && ++x[k] == q) x[k++] = 0;
        if (k == d) break;
      }
    }
    for (int y = 1; y < q; ++y) {
      int yi = F.inv(y);
      std::vector<long long> bucket(p, 0);
      for (int v = 0; v < q; ++v)
        if (hist[v]) bucket[F.trace(F.mul(v, yi))] += hist[v];
      for (int t = 0; t < p; ++t) s += RootSum::root(p, t) * (bucket[t] * lt(y));
    }
    return s;
  }
  throw domain_error("brute_b_sum: unknown tag " + tag);
}

// lambda~(zeta_0) for zeta_0 in ker tr; equals lambda(-1) when lambda~ <-> lambda
inline int unram_lt_at_trace_zero(MuCharacter lt, const ResidueField& F) {
  return (lt.exponent / (F.p() - 1)) % 2 ? -1 : 1;
}

// closed value for the same sum. in the unramified U(1) case with
// lambda~ not <-> lambda the sign is lambda~(zeta_0), not lambda(-1)
inline RootSum closed_b_value(const std::string& tag, const ResidueField& F, const ExampleChars& ch) {
  detail::check_example(tag, F, ch);
  const int p = F.p();
  const long long q = F.q();
  if (tag == "u1_unram") {
    bool match = corresponds(ch.lt, ch.lambda_exponent, F);
    if (match) return RootSum(p + 1, lambda_minus_one_unram(ch.lambda_exponent) * ((long long)p * p * p - 1));
    return RootSum(p + 1, -unram_lt_at_trace_zero(ch.lt, F) * (long long)p * (p - 1));
  }
  if (tag == "u1_unram_z") return RootSum(p + 1, unram_lt_at_trace_zero(ch.lt, F) * (p - 1));
  auto lt = [&](int y) { return mu_sign(ch.lt, y, F); };
  int m2 = F.from_int(-2);
  if (tag == "u1_ram") return RootSum(p, lt(m2) * ch.lambda_minus_one * (q - 1));
  if (tag == "u1_ram_z") return RootSum(p, lt(1) == lt(F.zeta()) ? q - 1 : 0);
  if (tag == "so2_ram_y" || tag == "soeven_io_y") return RootSum(p, lt(m2) * (q - 1));
  if (tag == "so2_ram_z") return RootSum(p, lt(m2) * ch.lambda_minus_one * (q - 1));
  if (tag == "soeven_io_z") {
    int u = ch.a.empty() ? 0 : ch.a[0];
    return RootSum(p, (u ? lt(F.zeta()) : 1) * lt(m2) * ch.lambda_omega_o * (q - 1));
  }
  if (tag == "sp_io_y" || tag == "sp_io_z") {
    if (mu_sign(ch.lt, F.zeta(), F) == 1) return RootSum(p, 0);
    const int n = int(ch.a.size()) - 1;
    RootSum raw = to_root_sum(gauss_brute(F).raw);
    if (tag == "sp_io_y") {
      int c = F.mul(n % 2 ? F.neg(1) : 1, ch.a[n]);
      return raw * (F.quad_char(c) * (q - 1));
    }
    long long qp = 1;
    for (int k = 0; k < n - 1; ++k) qp *= q;
    return raw * (F.quad_char(ch.a[0]) * qp * (q - 1));  // (a/a_n / mu) = (a_0 / mu)
  }
  throw domain_error("closed_b_value: unknown tag " + tag);
}

// (r, eps) with b = eps c^{1/2} (q^{r/2} - q^{-r/2}) for an integer b;
// c = p^{c_exp}, q = p^f
inline std::optional<std::pair<Quarter, int>> fit_coefficient(long long b, int p, int f, int c_exp) {
  if (b == 0) return std::make_pair(Quarter{0}, 1);
  for (int r2 = 0; r2 <= 3; ++r2) {
    // exponents of p: c_exp/2 +- f r2/4, in quarters
    int hi4 = 2 * c_exp + f * r2, lo4 = 2 * c_exp - f * r2;
    if (hi4 % 4 || lo4 % 4 || lo4 < 0) continue;
    long long v = 1, w = 1;
    for (int k = 0; k < hi4 / 4; ++k) v *= p;
    for (int k = 0; k < lo4 / 4; ++k) w *= p;
    for (int eps : {1, -1})
      if (b == eps * (v - w) && (v != w || b == 0)) return std::make_pair(Quarter::half(r2), eps);
  }
  return std::nullopt;
}

// coefficients of the two U(1) examples, fitted from the brute sums
inline HeckeCoeffs u1_coeffs(bool unramified, const ResidueField& F, const ExampleChars& ch) {
  std::string ty = unramified ? "u1_unram" : "u1_ram", tz = ty + "_z";
  auto as_int = [&](const RootSum& r) {
    auto red = r.reduced();
    for (size_t k = 1; k < red.size(); ++k)
      if (red[k]) throw std::logic_error("u1_coeffs: non-integral b");
    return red.empty() ? 0LL : red[0];
  };
  long long by = as_int(brute_b_sum(ty, F, ch)), bz = as_int(brute_b_sum(tz, F, ch));
  int f = F.f();
  auto fy = fit_coefficient(by, F.p(), f, unramified ? 3 : 1);
  auto fz = fit_coefficient(bz, F.p(), f, unramified ? 1 : 1);
  if (!fy || !fz) throw std::logic_error("u1_coeffs: no quadratic relation fits");
  HeckeCoeffs c;
  c.r_y = fy->first;
  c.eps_T_y = GaussUnit{fy->second, 0};
  c.r_z = fz->first;
  c.eps_T_z = GaussUnit{fz->second, 0};
  c.bz_vanishes = bz == 0;
  c.c_y = Quarter{unramified ? 6 : 4};
  c.c_z = Quarter{unramified ? 2 : 4};
  return c;
}

}  // namespace epi

#endif
