#ifndef EPI_RESIDUE_FIELD_HPP
#define EPI_RESIDUE_FIELD_HPP

#include <cstdint>
#include <stdexcept>
#include <cstddef>
#include <string>
#include <vector>

namespace epi {

struct domain_error : std::domain_error {
  using std::domain_error::domain_error;
};

inline bool is_odd_prime(int p) {
  if (p < 3 || p % 2 == 0) return false;
  for (int d = 3; d * d <= p; d += 2)
    if (p % d == 0) return false;
  return true;
}

inline int mod(long long a, int m) {
  long long r = a % m;
  return int(r < 0 ? r + m : r);
}

// F_q with q = p^f, f in {1,2}. elements are indices 0..q-1; for f = 2 the
// index a0 + a1*p stands for a0 + a1*t with t^2 + b t + c = 0.
constexpr int kMaxFieldSize = 4096;

class ResidueField {
 public:
  ResidueField() = default;
  explicit ResidueField(int p, int f = 1) : p_(p), f_(f) {
    if (!is_odd_prime(p)) throw domain_error("residue field: p must be an odd prime");
    if (f != 1 && f != 2) throw domain_error("residue field: f must be 1 or 2");
    const long long q = f == 1 ? p : (long long)p * p;
    // addition and multiplication are tabulated, q^2 entries each
    if (q > kMaxFieldSize) throw domain_error("residue field: q = " + std::to_string(q) + " is too large for table arithmetic");
    q_ = int(q);
    if (f == 2) pick_modulus();
    build_tables();
  }

  int p() const { return p_; }
  int f() const { return f_; }
  int q() const { return q_; }
  int generator() const { return gen_; }
  // the fixed non-square unit
  int zeta() const { return gen_; }
  std::pair<int, int> modulus() const { return {b_, c_}; }

  int zero() const { return 0; }
  int one() const { return 1; }
  int from_int(long long k) const { return mod(k, p_); }
  int add(int x, int y) const { return add_[x * q_ + y]; }
  int neg(int x) const { return neg_[x]; }
  int sub(int x, int y) const { return add(x, neg(y)); }
  int mul(int x, int y) const { return mul_[x * q_ + y]; }
  int inv(int x) const {
    if (x == 0) throw domain_error("residue field: inverse of zero");
    return exp_[(q_ - 1 - log_[x]) % (q_ - 1)];
  }
  int div(int x, int y) const { return mul(x, inv(y)); }
  int pow(int x, long long e) const {
    if (x == 0) return e == 0 ? 1 : 0;
    return exp_[mod((long long)log_[x] * mod(e, q_ - 1), q_ - 1)];
  }
  // discrete log to the base generator()
  int log(int x) const {
    if (x == 0) throw domain_error("residue field: log of zero");
    return log_[x];
  }
  int exp(long long k) const { return exp_[mod(k, q_ - 1)]; }
  // Tr_{F_q/F_p}
  int trace(int x) const {
    if (f_ == 1) return x;
    int a0 = x % p_, a1 = x / p_;
    return mod(2LL * a0 - (long long)b_ * a1, p_);
  }
  // x -> x^p, the nontrivial automorphism when f = 2
  int frob(int x) const { return f_ == 1 ? x : pow(x, p_); }
  bool in_prime_field(int x) const { return x < p_; }

  int quad_char(int x) const {
    if (x == 0) throw domain_error("quad_char: zero input");
    return log_[x] % 2 == 0 ? 1 : -1;
  }
  int chi_minus_one() const { return (q_ % 4 == 1) ? 1 : -1; }

  std::string to_string(int x) const {
    if (f_ == 1) return std::to_string(x);
    return std::to_string(x % p_) + "+" + std::to_string(x / p_) + "t";
  }
  bool operator==(const ResidueField& o) const { return p_ == o.p_ && f_ == o.f_; }

 private:
  void pick_modulus() {
    // lexicographically smallest monic irreducible t^2 + b t + c
    for (int b = 0; b < p_; ++b)
      for (int c = 0; c < p_; ++c) {
        bool root = false;
        for (int x = 0; x < p_ && !root; ++x) root = mod((long long)x * x + (long long)b * x + c, p_) == 0;
        if (!root) { b_ = b; c_ = c; return; }
      }
  }
  int raw_mul(int x, int y) const {
    if (f_ == 1) return mod((long long)x * y, p_);
    long long a0 = x % p_, a1 = x / p_, b0 = y % p_, b1 = y / p_;
    long long s = a1 * b1;  // coefficient of t^2
    int r0 = mod(a0 * b0 - s * c_, p_);
    int r1 = mod(a0 * b1 + a1 * b0 - s * b_, p_);
    return r0 + r1 * p_;
  }
  void build_tables() {
    const std::size_t n = std::size_t(q_);
    add_.assign(n * n, 0);
    mul_.assign(n * n, 0);
    neg_.assign(n, 0);
    for (int x = 0; x < q_; ++x) {
      neg_[x] = f_ == 1 ? mod(-x, p_) : mod(-(x % p_), p_) + mod(-(x / p_), p_) * p_;
      for (int y = 0; y < q_; ++y) {
        add_[x * n + y] = f_ == 1 ? (x + y) % p_ : (x % p_ + y % p_) % p_ + ((x / p_ + y / p_) % p_) * p_;
        mul_[x * n + y] = raw_mul(x, y);
      }
    }
    // generator: first element whose powers reach 1 only at q - 1
    for (int g = 2; g < q_; ++g) {
      std::size_t order = 1;
      for (int y = g; y != 1 && order < n; ++order) y = mul_[y * n + g];
      if (order == n - 1) {
        gen_ = g;
        break;
      }
    }
    exp_.assign(n - 1, 0);
    log_.assign(n, -1);
    int y = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
      exp_[k] = y;
      log_[y] = int(k);
      y = mul_[y * n + gen_];
    }
  }

  int p_ = 3, f_ = 1, q_ = 3;
  int b_ = 0, c_ = 0;
  int gen_ = 2;
  std::vector<int> add_, mul_, neg_, exp_, log_;
};

// element of Z[zeta_p], kept in the basis 1, z, ..., z^{p-2}
class CyclotomicInt {
 public:
  CyclotomicInt() = default;
  explicit CyclotomicInt(int p, long long c0 = 0) : p_(p), c_(p, 0) { c_[0] = c0; normalize(); }
  static CyclotomicInt zeta_power(int p, long long k) {
    CyclotomicInt z(p);
    z.c_[mod(k, p)] += 1;
    z.normalize();
    return z;
  }
  int p() const { return p_; }
  // coefficients in the basis 1..z^{p-2}
  std::vector<long long> coefficients() const { return {c_.begin(), c_.end() - 1}; }

  CyclotomicInt& operator+=(const CyclotomicInt& o) {
    check(o);
    for (int k = 0; k < p_; ++k) c_[k] += o.c_[k];
    normalize();
    return *this;
  }
  CyclotomicInt& operator-=(const CyclotomicInt& o) {
    check(o);
    for (int k = 0; k < p_; ++k) c_[k] -= o.c_[k];
    normalize();
    return *this;
  }
  CyclotomicInt operator+(const CyclotomicInt& o) const { auto r = *this; return r += o; }
  CyclotomicInt operator-(const CyclotomicInt& o) const { auto r = *this; return r -= o; }
  CyclotomicInt operator-() const { return CyclotomicInt(p_) - *this; }
  CyclotomicInt operator*(const CyclotomicInt& o) const {
    check(o);
    CyclotomicInt r(p_);
    for (int a = 0; a < p_; ++a) {
      if (!c_[a]) continue;
      for (int b = 0; b < p_; ++b) r.c_[(a + b) % p_] += c_[a] * o.c_[b];
    }
    r.normalize();
    return r;
  }
  CyclotomicInt operator*(long long k) const {
    auto r = *this;
    for (auto& x : r.c_) x *= k;
    return r;
  }
  CyclotomicInt pow(int e) const {
    CyclotomicInt r(p_, 1);
    for (int k = 0; k < e; ++k) r = r * *this;
    return r;
  }
  bool operator==(const CyclotomicInt& o) const { return p_ == o.p_ && c_ == o.c_; }
  bool operator!=(const CyclotomicInt& o) const { return !(*this == o); }
  bool is_integer() const {
    for (int k = 1; k < p_; ++k)
      if (c_[k]) return false;
    return true;
  }
  long long integer_part() const { return c_[0]; }

  std::string to_string() const {
    std::string s;
    for (int k = 0; k + 1 < p_; ++k) {
      if (!c_[k]) continue;
      if (!s.empty()) s += c_[k] > 0 ? " + " : " - ";
      else if (c_[k] < 0) s += "-";
      long long a = c_[k] < 0 ? -c_[k] : c_[k];
      if (k == 0) s += std::to_string(a);
      else s += (a == 1 ? "" : std::to_string(a) + "*") + "z^" + std::to_string(k);
    }
    return s.empty() ? "0" : s;
  }

 private:
  void check(const CyclotomicInt& o) const {
    if (o.p_ != p_) throw domain_error("cyclotomic: mismatched p");
  }
  // z^{p-1} = -(1 + z + ... + z^{p-2})
  void normalize() {
    long long t = c_[p_ - 1];
    if (t)
      for (int k = 0; k < p_; ++k) c_[k] -= t;
  }
  int p_ = 3;
  std::vector<long long> c_ = std::vector<long long>(3, 0);
};

// fourth root of unity sign * n^k, with n the normalized Gauss sum
struct GaussUnit {
  int sign = 1;
  int k = 0;
  bool operator==(const GaussUnit&) const = default;
};

inline GaussUnit gauss_unit_mul(GaussUnit a, GaussUnit b, int chi_minus_one) {
  int s = a.sign * b.sign;
  if ((a.k + b.k) / 2) s *= chi_minus_one;
  return {s, (a.k + b.k) % 2};
}
inline GaussUnit gauss_unit_mul(GaussUnit a, GaussUnit b, const ResidueField& F) {
  return gauss_unit_mul(a, b, F.chi_minus_one());
}
inline GaussUnit gauss_unit_pow(GaussUnit a, long long e, const ResidueField& F) {
  GaussUnit r;
  for (long long k = 0; k < mod(e, 4); ++k) r = gauss_unit_mul(r, a, F);
  return r;
}
inline GaussUnit gauss_unit_inv(GaussUnit a, const ResidueField& F) { return gauss_unit_pow(a, 3, F); }
inline GaussUnit operator*(int s, GaussUnit a) { return {s * a.sign, a.k}; }

inline std::string to_string(GaussUnit u) {
  std::string s = u.sign > 0 ? "" : "-";
  if (u.k == 0) return s + "1";
  return s + "n";
}

inline int quad_char(int x, const ResidueField& F) { return F.quad_char(x); }

// psi(x) = z_p^{Tr x}
inline CyclotomicInt psi(int x, const ResidueField& F) { return CyclotomicInt::zeta_power(F.p(), F.trace(x)); }

struct GaussSum {
  CyclotomicInt raw;
  GaussUnit normalized;
};

// raw = sum_x chi(x) psi(x); the normalized value is n_psi = (+1, 1) and
// raw^2 = chi(-1) q is checked exactly
inline GaussSum gauss_brute(const ResidueField& F) {
  std::vector<long long> bucket(F.p(), 0);
  for (int x = 1; x < F.q(); ++x) bucket[F.trace(x)] += F.quad_char(x);
  CyclotomicInt raw(F.p());
  for (int t = 0; t < F.p(); ++t) raw += CyclotomicInt::zeta_power(F.p(), t) * bucket[t];
  if (raw * raw != CyclotomicInt(F.p(), (long long)F.chi_minus_one() * F.q()))
    throw std::logic_error("gauss_brute: raw^2 != chi(-1) q");
  return {raw, GaussUnit{1, 1}};
}

}  // namespace epi

#endif
