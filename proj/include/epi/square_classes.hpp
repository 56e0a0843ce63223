#ifndef EPI_SQUARE_CLASSES_HPP
#define EPI_SQUARE_CLASSES_HPP

#include <string>
#include <vector>

#include "residue_field.hpp"
#include "symbolic.hpp"

namespace epi {

// class zeta^unit * w^v in F^x / F^x2
struct SquareClass {
  int unit = 0;
  int v = 0;
  bool operator==(const SquareClass&) const = default;
  SquareClass operator*(SquareClass o) const { return {unit ^ o.unit, v ^ o.v}; }
};

inline SquareClass square_class(Mono m, const ResidueField& F) {
  if (m.is_zero()) throw domain_error("square_class: zero");
  return {F.quad_char(m.coef) < 0 ? 1 : 0, ((m.val % 2) + 2) % 2};
}
inline SquareClass square_class(int unit, const ResidueField& F) { return square_class(Mono{unit, 0}, F); }
inline std::string to_string(SquareClass s) {
  static const char* names[4] = {"1", "zeta", "w", "zeta*w"};
  return names[s.unit + 2 * s.v];
}

// tame symbol: (w^a u, w^b v) = chi(-1)^{ab} chi(u)^b chi(v)^a
inline int hilbert(SquareClass a, SquareClass b, const ResidueField& F) {
  int s = 1;
  if (a.v && b.v) s *= F.chi_minus_one();
  if (b.v && a.unit) s = -s;
  if (a.v && b.unit) s = -s;
  return s;
}

inline int hasse_witt(const std::vector<SquareClass>& d, const ResidueField& F) {
  int e = 1;
  for (size_t i = 0; i < d.size(); ++i)
    for (size_t j = i + 1; j < d.size(); ++j) e *= hilbert(d[i], d[j], F);
  return e;
}

enum class Family {
  SO_odd,
  Sp,
  SO_even_split,
  SO_even_unram,
  SO_even_ram,
  U_unram_odd,
  U_unram_even,
  U_ram_odd,
  U_ram_even,
  GL
};

inline std::string to_string(Family f) {
  switch (f) {
    case Family::SO_odd: return "SO_odd";
    case Family::Sp: return "Sp";
    case Family::SO_even_split: return "SO_even_split";
    case Family::SO_even_unram: return "SO_even_unram";
    case Family::SO_even_ram: return "SO_even_ram";
    case Family::U_unram_odd: return "U_unram_odd";
    case Family::U_unram_even: return "U_unram_even";
    case Family::U_ram_odd: return "U_ram_odd";
    case Family::U_ram_even: return "U_ram_even";
    case Family::GL: return "GL";
  }
  return "?";
}
inline Family family_from_string(const std::string& s) {
  for (int k = 0; k <= int(Family::GL); ++k)
    if (to_string(Family(k)) == s) return Family(k);
  throw domain_error("unknown family '" + s + "'");
}

inline bool is_so_even(Family f) {
  return f == Family::SO_even_split || f == Family::SO_even_unram || f == Family::SO_even_ram;
}
inline bool is_orthogonal(Family f) { return f == Family::SO_odd || is_so_even(f); }
inline bool is_unram_unitary(Family f) { return f == Family::U_unram_odd || f == Family::U_unram_even; }
inline bool is_ram_unitary(Family f) { return f == Family::U_ram_odd || f == Family::U_ram_even; }
inline bool is_unitary(Family f) { return is_unram_unitary(f) || is_ram_unitary(f); }
inline Conj conj_of(Family f) {
  if (is_ram_unitary(f)) return Conj::ramified;
  if (is_unram_unitary(f)) return Conj::unramified;
  return Conj::none;
}
inline int epsilon_of(Family f) { return f == Family::Sp ? -1 : 1; }
// residue degree of F over F_p used for the family (the unramified unitary
// groups live over the quadratic extension)
inline int residue_degree(Family f) { return is_unram_unitary(f) ? 2 : 1; }

enum class Variant { plus, minus };
inline int variant_sign(Variant v) { return v == Variant::plus ? 1 : -1; }

struct HermitianRep {
  Family family = Family::SO_odd;
  int dim = 1;
  Variant variant = Variant::plus;
  // ramified SO_even only: the unit part of the central w entry
  SquareClass discriminant_choice{};
};

struct InnerFormLabel {
  int value = 1;
  bool operator==(const InnerFormLabel&) const = default;
};

namespace detail {

// replace rows [first, first + d.size()) of an anti-diagonal-type matrix by
// the given diagonal block
inline MonoMat with_central_diag(const MonoMat& H, int first, const std::vector<Mono>& d) {
  MonoMat r(H.size());
  int last = first + int(d.size());
  for (int k = 0; k < H.size(); ++k)
    if (k < first || k >= last) r.set(k, H.col(k), H.entry(k));
  for (int k = first; k < last; ++k) r.set(k, k, d[k - first]);
  return r;
}

}  // namespace detail

inline MonoMat hermitian_matrix(const HermitianRep& rep, const ResidueField& F) {
  const int N = rep.dim;
  const bool minus = rep.variant == Variant::minus;
  const int z = F.zeta();
  auto c = [&](int s) { return Mono{s > 0 ? 1 : F.neg(1), 0}; };
  auto alt = [&]() {
    std::vector<Mono> e(N);
    for (int k = 0; k < N; ++k) e[k] = c(k % 2 ? -1 : 1);
    return e;
  };
  if (N < 1) throw domain_error("hermitian_matrix: empty space");
  switch (rep.family) {
    case Family::GL: throw domain_error("hermitian_matrix: GL carries no form");
    case Family::Sp: {
      if (N % 2) throw domain_error("hermitian_matrix: Sp needs even dimension");
      if (minus) throw domain_error("hermitian_matrix: Sp has a single form");
      return MonoMat::anti_diag(alt());
    }
    case Family::SO_odd: {
      if (N % 2 == 0) throw domain_error("hermitian_matrix: SO_odd needs odd dimension");
      MonoMat H = MonoMat::anti_diag(alt());
      if (!minus) return H;
      if (N < 3) throw domain_error("singleton H^1: SO with N <= 2");
      int n = N / 2;
      // keep the determinant: the replaced block had det -(-1)^n
      int s = (n % 2) ? 1 : -1;
      Mono sm = c(s);
      return detail::with_central_diag(H, n - 1,
                                       {mono_mul(sm, {1, 1}, F), mono_mul(sm, {F.neg(z), 1}, F), mono_mul(sm, {F.neg(z), 0}, F)});
    }
    case Family::SO_even_split: {
      if (N % 2) throw domain_error("hermitian_matrix: SO_even needs even dimension");
      MonoMat H = MonoMat::anti_diag(std::vector<Mono>(N, Mono{1, 0}));
      if (!minus) return H;
      if (N < 4) throw domain_error("singleton H^1: SO with N <= 2");
      int n = N / 2;
      return detail::with_central_diag(H, n - 2, {{1, 0}, {F.neg(z), 0}, {1, 1}, {F.neg(z), 1}});
    }
    case Family::SO_even_unram: {
      if (N % 2) throw domain_error("hermitian_matrix: SO_even needs even dimension");
      int n = N / 2;
      MonoMat H = MonoMat::anti_diag(std::vector<Mono>(N, Mono{1, 0}));
      if (!minus) return detail::with_central_diag(H, n - 1, {{F.neg(z), 0}, {1, 0}});
      if (N < 3) throw domain_error("singleton H^1: SO with N <= 2");
      return detail::with_central_diag(H, n - 1, {{1, 1}, {F.neg(z), 1}});
    }
    case Family::SO_even_ram: {
      if (N % 2) throw domain_error("hermitian_matrix: SO_even needs even dimension");
      int n = N / 2;
      int u = rep.discriminant_choice.unit ? z : 1;
      MonoMat H = MonoMat::anti_diag(std::vector<Mono>(N, Mono{1, 0}));
      std::vector<Mono> center{{F.neg(u), 1}, {1, 0}};
      if (minus) {
        if (N < 3) throw domain_error("singleton H^1: SO with N <= 2");
        for (auto& m : center) m = mono_mul({z, 0}, m, F);
      }
      return detail::with_central_diag(H, n - 1, center);
    }
    case Family::U_unram_odd:
    case Family::U_unram_even: {
      if ((N % 2 == 1) != (rep.family == Family::U_unram_odd)) throw domain_error("hermitian_matrix: parity mismatch");
      MonoMat H = MonoMat::anti_diag(std::vector<Mono>(N, Mono{1, 0}));
      if (!minus) return H;
      if (N % 2) return detail::with_central_diag(H, N / 2, {{1, 1}});
      return detail::with_central_diag(H, N / 2 - 1, {{1, 1}, {1, 0}});
    }
    case Family::U_ram_odd: {
      if (N % 2 == 0) throw domain_error("hermitian_matrix: parity mismatch");
      MonoMat H = MonoMat::anti_diag(alt());
      return minus ? H.scaled({z, 0}, F) : H;
    }
    case Family::U_ram_even: {
      if (N % 2) throw domain_error("hermitian_matrix: parity mismatch");
      MonoMat H = MonoMat::anti_diag(alt()).scaled({1, 1}, F);
      if (!minus) return H;
      return detail::with_central_diag(H, N / 2 - 1, {{1, 0}, {F.neg(z), 0}});
    }
  }
  throw domain_error("hermitian_matrix: unsupported family");
}

// diagonal square classes of a symmetric monomial matrix; each anti-diagonal
// pair a(xy + yx) is split as <2a, -2a> through (x + y, x - y)
inline std::vector<SquareClass> diagonal_classes(const MonoMat& H, const ResidueField& F) {
  std::vector<SquareClass> d;
  for (int r = 0; r < H.size(); ++r) {
    int c = H.col(r);
    if (c < 0) throw domain_error("diagonal_classes: degenerate form");
    if (c == r) d.push_back(square_class(H.entry(r), F));
    else if (c > r) {
      if (!(H.at(c, r) == H.entry(r))) throw domain_error("diagonal_classes: matrix not symmetric");
      Mono two = mono_mul({F.from_int(2), 0}, H.entry(r), F);
      d.push_back(square_class(two, F));
      d.push_back(square_class(mono_neg(two, F), F));
    }
  }
  return d;
}

// class of det H mod norms of F/F_. for hermitian H (+1 = norm)
inline int norm_class(Mono det, Family f, const ResidueField& F) {
  if (is_unram_unitary(f)) return (det.val % 2) ? -1 : 1;
  if (det.val % 2) throw domain_error("norm_class: determinant not in F_.");
  // w^2 = -w_. and N(w) = w_.
  int c = (det.val / 2) % 2 ? F.neg(det.coef) : det.coef;
  return F.quad_char(c);
}

// label of an arbitrary hermitian matrix of the family against H_+
inline InnerFormLabel inner_form_of_matrix(Family f, const MonoMat& H, const MonoMat& Hplus, const ResidueField& F) {
  if (f == Family::Sp || f == Family::GL) return {1};
  if (is_orthogonal(f)) {
    if (H.size() <= 2) throw domain_error("singleton H^1: SO with N <= 2");
    SquareClass d1 = square_class(H.det(F), F), d0 = square_class(Hplus.det(F), F);
    if (!(d1 == d0)) throw domain_error("inner form: discriminants differ");
    return {hasse_witt(diagonal_classes(H, F), F) * hasse_witt(diagonal_classes(Hplus, F), F)};
  }
  return {norm_class(H.det(F), f, F) * norm_class(Hplus.det(F), f, F)};
}

inline InnerFormLabel classify_inner_form(const HermitianRep& rep, const ResidueField& F) {
  if (rep.family == Family::GL) {
    if (rep.variant == Variant::minus) throw domain_error("classify_inner_form: GL has a single form");
    return {1};
  }
  if (rep.family == Family::Sp) {
    if (rep.variant == Variant::minus) throw domain_error("classify_inner_form: Sp has a single form");
    return {1};
  }
  if (is_orthogonal(rep.family) && rep.dim <= 2) throw domain_error("singleton H^1: SO with N <= 2");
  HermitianRep plus = rep;
  plus.variant = Variant::plus;
  return inner_form_of_matrix(rep.family, hermitian_matrix(rep, F), hermitian_matrix(plus, F), F);
}

// check tH^bar = eps H
inline bool is_eps_hermitian(const MonoMat& H, Family f, const ResidueField& F) {
  MonoMat t = H.conj(conj_of(f), F).transpose();
  return epsilon_of(f) > 0 ? t == H : t == H.scaled({F.neg(1), 0}, F);
}

}  // namespace epi

#endif
