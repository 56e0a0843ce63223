#ifndef EPI_SYMBOLIC_HPP
#define EPI_SYMBOLIC_HPP

// monomial matrices over F_q((w)): every entry is coef * w^val and each row
// and column holds at most one entry. enough for the hermitian forms, the
// skew functionals beta and the diagonal coordinates X we work with.

#include <algorithm>
#include <optional>
#include <vector>

#include "residue_field.hpp"

namespace epi {

struct Mono {
  int coef = 0;
  int val = 0;
  bool is_zero() const { return coef == 0; }
  bool operator==(const Mono& o) const { return coef == o.coef && (coef == 0 || val == o.val); }
};

// action of the nontrivial automorphism of F/F_. on entries
enum class Conj { none, ramified, unramified };

inline Mono mono_mul(Mono a, Mono b, const ResidueField& F) {
  if (a.is_zero() || b.is_zero()) return {};
  return {F.mul(a.coef, b.coef), a.val + b.val};
}
inline Mono mono_inv(Mono a, const ResidueField& F) { return {F.inv(a.coef), -a.val}; }
inline Mono mono_neg(Mono a, const ResidueField& F) { return {F.neg(a.coef), a.val}; }
inline Mono mono_conj(Mono a, Conj c, const ResidueField& F) {
  switch (c) {
    case Conj::ramified: return {(a.val % 2) ? F.neg(a.coef) : a.coef, a.val};
    case Conj::unramified: return {F.frob(a.coef), a.val};
    default: return a;
  }
}

class MonoMat {
 public:
  MonoMat() = default;
  explicit MonoMat(int n) : n_(n), col_(n, -1), ent_(n) {}

  static MonoMat identity(int n) {
    MonoMat m(n);
    for (int r = 0; r < n; ++r) m.set(r, r, {1, 0});
    return m;
  }
  // anti-diagonal with the given entries read from the top row down
  static MonoMat anti_diag(const std::vector<Mono>& e) {
    int n = int(e.size());
    MonoMat m(n);
    for (int r = 0; r < n; ++r) m.set(r, n - 1 - r, e[r]);
    return m;
  }
  static MonoMat diag(const std::vector<Mono>& e) {
    int n = int(e.size());
    MonoMat m(n);
    for (int r = 0; r < n; ++r) m.set(r, r, e[r]);
    return m;
  }
  static MonoMat elementary(int n, int r, int c, Mono v) {
    MonoMat m(n);
    m.set(r, c, v);
    return m;
  }

  int size() const { return n_; }
  void set(int r, int c, Mono v) {
    if (v.is_zero()) { col_[r] = -1; ent_[r] = {}; return; }
    for (int k = 0; k < n_; ++k)
      if (k != r && col_[k] == c) throw std::logic_error("monomial matrix: column already occupied");
    col_[r] = c;
    ent_[r] = v;
  }
  int col(int r) const { return col_[r]; }
  Mono entry(int r) const { return ent_[r]; }
  Mono at(int r, int c) const { return col_[r] == c ? ent_[r] : Mono{}; }
  // row holding column c, or -1
  int row_of(int c) const {
    for (int r = 0; r < n_; ++r)
      if (col_[r] == c) return r;
    return -1;
  }
  bool is_full() const {
    return std::none_of(col_.begin(), col_.end(), [](int c) { return c < 0; });
  }

  MonoMat mul(const MonoMat& o, const ResidueField& F) const {
    MonoMat r(n_);
    for (int i = 0; i < n_; ++i) {
      int k = col_[i];
      if (k < 0 || o.col_[k] < 0) continue;
      r.col_[i] = o.col_[k];
      r.ent_[i] = mono_mul(ent_[i], o.ent_[k], F);
    }
    return r;
  }
  MonoMat scaled(Mono s, const ResidueField& F) const {
    MonoMat r = *this;
    for (int i = 0; i < n_; ++i)
      if (col_[i] >= 0) r.ent_[i] = mono_mul(s, ent_[i], F);
    return r;
  }
  MonoMat transpose() const {
    MonoMat r(n_);
    for (int i = 0; i < n_; ++i)
      if (col_[i] >= 0) { r.col_[col_[i]] = i; r.ent_[col_[i]] = ent_[i]; }
    return r;
  }
  MonoMat conj(Conj c, const ResidueField& F) const {
    MonoMat r = *this;
    for (int i = 0; i < n_; ++i)
      if (col_[i] >= 0) r.ent_[i] = mono_conj(ent_[i], c, F);
    return r;
  }
  MonoMat inverse(const ResidueField& F) const {
    if (!is_full()) throw domain_error("monomial matrix: singular");
    MonoMat r(n_);
    for (int i = 0; i < n_; ++i) { r.col_[col_[i]] = i; r.ent_[col_[i]] = mono_inv(ent_[i], F); }
    return r;
  }
  MonoMat pow(int e, const ResidueField& F) const {
    MonoMat r = identity(n_);
    for (int k = 0; k < e; ++k) r = r.mul(*this, F);
    return r;
  }
  Mono det(const ResidueField& F) const {
    if (!is_full()) return {};
    Mono d{1, 0};
    for (int i = 0; i < n_; ++i) d = mono_mul(d, ent_[i], F);
    // parity of the permutation from its cycles
    std::vector<bool> seen(n_, false);
    int sign = 1;
    for (int i = 0; i < n_; ++i) {
      if (seen[i]) continue;
      int len = 0;
      for (int k = i; !seen[k]; k = col_[k]) { seen[k] = true; ++len; }
      if (len % 2 == 0) sign = -sign;
    }
    return sign > 0 ? d : mono_neg(d, F);
  }
  // residue of the trace: sum of the valuation-zero diagonal coefficients.
  // throws if some diagonal entry is not integral.
  int trace_residue(const ResidueField& F) const {
    int t = 0;
    for (int i = 0; i < n_; ++i) {
      if (col_[i] != i) continue;
      if (ent_[i].val < 0) throw domain_error("trace_residue: non-integral diagonal entry");
      if (ent_[i].val == 0) t = F.add(t, ent_[i].coef);
    }
    return t;
  }
  bool operator==(const MonoMat& o) const {
    if (n_ != o.n_) return false;
    for (int i = 0; i < n_; ++i) {
      if (col_[i] != o.col_[i]) return false;
      if (col_[i] >= 0 && !(ent_[i] == o.ent_[i])) return false;
    }
    return true;
  }

 private:
  int n_ = 0;
  std::vector<int> col_;
  std::vector<Mono> ent_;
};

inline MonoMat block_diag(const std::vector<MonoMat>& blocks) {
  int n = 0;
  for (auto& b : blocks) n += b.size();
  MonoMat m(n);
  int off = 0;
  for (auto& b : blocks) {
    for (int r = 0; r < b.size(); ++r)
      if (b.col(r) >= 0) m.set(off + r, off + b.col(r), b.entry(r));
    off += b.size();
  }
  return m;
}

}  // namespace epi

#endif
