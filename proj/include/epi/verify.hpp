#ifndef EPI_VERIFY_HPP
#define EPI_VERIFY_HPP

// self-checks run by `epi verify`: every closed formula against its
// enumeration or against the simple-supercuspidal formulas

#include <functional>
#include <string>
#include <vector>

#include "generators.hpp"

namespace epi {

struct CheckResult {
  std::string suite;
  std::string name;
  int p = 0;
  bool pass = false;
  std::string detail;
};

inline const std::vector<std::string>& verify_suites() {
  static const std::vector<std::string> s = {"gauss", "quadform", "hecke", "concordance", "packets"};
  return s;
}

namespace detail {

// runs body, turning exceptions into failures
inline CheckResult run_check(const std::string& suite, const std::string& name, int p,
                             const std::function<std::string(bool&)>& body) {
  CheckResult r{suite, name, p, false, ""};
  try {
    bool ok = true;
    r.detail = body(ok);
    r.pass = ok;
  } catch (const std::exception& ex) {
    r.pass = false;
    r.detail = std::string("exception: ") + ex.what();
  }
  return r;
}

inline std::string count_detail(int ok, int total) { return std::to_string(ok) + "/" + std::to_string(total) + " agree"; }

// largest dimension whose enumeration stays cheap
inline int brute_dim_cap(const ResidueField& F, int cap) {
  int d = 1;
  double v = F.q();
  while (d < cap && v * F.q() <= 5e5) {
    v *= F.q();
    ++d;
  }
  return d;
}

}  // namespace detail

// ---- gauss ----

inline std::vector<CheckResult> verify_gauss(int p, int forms = 60) {
  std::vector<CheckResult> out;
  for (int f : {1, 2})
    out.push_back(detail::run_check("gauss", "n_psi^2 = chi(-1) over F_" + std::to_string(p) + "^" + std::to_string(f), p, [&](bool& ok) {
      ResidueField F(p, f);
      auto g = gauss_brute(F);
      ok = g.raw * g.raw == CyclotomicInt(p, (long long)F.chi_minus_one() * F.q());
      return "chi(-1) = " + std::to_string(F.chi_minus_one());
    }));
  out.push_back(detail::run_check("gauss", "gauss_closed = gauss_brute on random forms", p, [&](bool& ok) {
    ResidueField F(p);
    gen::Rng r(1000 + p);
    int agree = 0;
    const int cap = detail::brute_dim_cap(F, 6);
    for (int k = 0; k < forms; ++k) {
      auto q = gen::random_nondegenerate_form(r, F, gen::pick(r, 1, cap));
      agree += gauss_closed(q) == gauss_brute(q);
    }
    ok = agree == forms;
    return detail::count_detail(agree, forms) + ", dim <= " + std::to_string(cap);
  }));
  return out;
}

// ---- quadform ----

struct DiscriminantRow {
  Family family;
  int n;
  int N;
  int observed;  // quadratic character of the discriminant or the Gauss value
  int expected;
};

// single-component strata whose i-block after the radical quotient has a
// tabulated discriminant; unramified U reports the total Gauss value
inline std::vector<DiscriminantRow> discriminant_table(int p) {
  std::vector<DiscriminantRow> rows;
  for (auto f : {Family::Sp, Family::SO_even_ram, Family::SO_odd, Family::U_unram_odd, Family::U_unram_even})
    for (int n = 1; n <= 3; ++n) {
      int N = 0, deg = 0;
      switch (f) {
        case Family::Sp:
        case Family::SO_even_ram: N = deg = 2 * n; break;
        case Family::SO_odd: N = 2 * n + 1; deg = 2 * n; break;
        default: N = deg = f == Family::U_unram_odd ? 2 * n - 1 : 2 * n;
      }
      auto g = make_group(f, N, p);
      const auto& F = g.field;
      EpipelagicStratum s;
      int unit = 1;
      if (f == Family::U_unram_odd)
        for (int x = 1; x < F.q(); ++x)
          if (F.trace(x) == 0) {
            unit = x;
            break;
          }
      s.components = {{deg, unit, false, Variant::plus}};
      if (f == Family::SO_odd) s.components.push_back({1, 0, true, Variant::plus});
      if (f == Family::SO_even_ram) s.xi = 1;
      s.omega_signs.assign(sign_indices(f, s).size(), 1);
      const ResidueField Fp(p);
      auto chi = [&](int x) { return Fp.quad_char(Fp.from_int(x)); };
      auto pw = [&](int b, int e) { int r = 1; for (int k = 0; k < e; ++k) r *= b; return r; };
      DiscriminantRow row{f, n, N, 0, 0};
      if (is_unram_unitary(f)) {
        auto v = gauss_product(g, s, 0).value;
        if (v.k != 0) throw std::logic_error("discriminant_table: unramified U Gauss value is not a sign");
        row.observed = v.sign;
        row.expected = (N - 1) % 2 ? -1 : 1;
      } else if (f == Family::SO_odd) {
        auto v = gauss_product(g, s, 0).value;
        row.observed = v == GaussUnit{1, 0} ? 1 : -1;
        row.expected = 1;
      } else {
        row.observed = discriminant(radical_quotient(build_trace_form({g, s, 0, 0})));
        int sgn = f == Family::Sp ? ((n - 1) % 2 ? -1 : 1) : (n % 2 ? -1 : 1);
        row.expected = chi(pw(2, 2 * n - 1)) * chi(sgn);
      }
      rows.push_back(row);
    }
  return rows;
}

inline std::vector<CheckResult> verify_quadform(int p) {
  std::vector<CheckResult> out;
  for (auto& row : discriminant_table(p)) {
    std::string what = is_unram_unitary(row.family) ? "total Gauss value" : row.family == Family::SO_odd ? "n overall" : "disc";
    out.push_back(detail::run_check("quadform", to_string(row.family) + " n=" + std::to_string(row.n) + " " + what, p, [&](bool& ok) {
      ok = row.observed == row.expected;
      return "observed " + std::to_string(row.observed) + ", expected " + std::to_string(row.expected);
    }));
  }
  out.push_back(detail::run_check("quadform", "trace forms symmetric and blocks non-degenerate", p, [&](bool& ok) {
    gen::Rng r(2000 + p);
    int good = 0, total = 0;
    for (Family f : gen::classical_families())
      for (int k = 1; k <= 3; ++k) {
        auto G = gen::random_stratum(r, f, p, k, 1, gen::pick(r, 0, 1));
        for (int i : G.stratum.non_null())
          for (int j = 0; j < int(G.stratum.components.size()); ++j) {
            if (is_unram_unitary(f) && j != i) continue;
            auto q = build_trace_form({G.group, G.stratum, i, j});
            if (i == j) q = radical_quotient(q);
            ++total;
            good += is_symmetric(q) && is_nondegenerate(q);
          }
      }
    ok = good == total;
    return detail::count_detail(good, total);
  }));
  return out;
}

// ---- hecke ----

// self-dual characters exercised for each worked example
inline std::vector<ExampleChars> example_characters(const std::string& tag, int p) {
  std::vector<ExampleChars> cs;
  if (tag == "u1_unram") {
    for (int s = 0; s <= p; ++s)
      for (int t = 0; t <= p; ++t) {
        ExampleChars c;
        c.lt = {s * (p - 1)};
        c.lambda_exponent = t;
        cs.push_back(c);
      }
    return cs;
  }
  for (int e : {0, (p - 1) / 2})
    for (int lm : {1, -1})
      for (int lo : {1, -1}) {
        ExampleChars c;
        c.lt = {e};
        c.lambda_minus_one = lm;
        c.lambda_omega_o = lo;
        if (tag.rfind("sp_io", 0) == 0) {
          for (int n : {1, 2, 3}) {
            c.a.assign(n + 1, 1);
            c.a[0] = 2;
            c.a[n] = p - 1;
            cs.push_back(c);
          }
        } else if (tag == "soeven_io_z") {
          for (int u : {0, 1}) {
            c.a = {u};
            cs.push_back(c);
          }
        } else {
          cs.push_back(c);
        }
      }
  return cs;
}

struct RedSetCase {
  std::string name;
  bool unramified;
  ExampleChars chars;
  GaussUnit value;
  ReducibilitySet expected;
};

// the tabulated reducibility sets of the two U(1) examples
inline std::vector<RedSetCase> red_set_cases(int p) {
  std::vector<RedSetCase> out;
  const ResidueField Fu(p, 2);
  for (int s = 0; s <= p; ++s)
    for (int t = 0; t <= p; ++t) {
      ExampleChars c;
      c.lt = {s * (p - 1)};
      c.lambda_exponent = t;
      if (corresponds(c.lt, t, Fu)) {
        out.push_back({"unram lambda~ <-> lambda", true, c, {1, 0}, {Quarter{4}, Quarter{2}}});
        out.push_back({"unram lambda~' <-> lambda", true, c, {-1, 0}, {Quarter{2}, Quarter{4}}});
      } else {
        out.push_back({"unram lambda~ not <-> lambda", true, c, {1, 0}, {Quarter{0}, Quarter{2}}});
      }
    }
  for (int lm : {1, -1}) {
    ExampleChars c;
    c.lambda_minus_one = lm;
    c.lt = mu_trivial();
    out.push_back({"ram trivial, lambda~(w) = lambda(-1)", false, c, {lm, 0}, {Quarter{4}, Quarter{0}}});
    out.push_back({"ram trivial, lambda~(w) = -lambda(-1)", false, c, {-lm, 0}, {Quarter{0}, Quarter{4}}});
    c.lt = mu_quadratic(ResidueField(p));
    for (int v : {1, -1}) out.push_back({"ram quadratic", false, c, {v, 0}, {Quarter{2}, Quarter{2}}});
  }
  return out;
}

// the lifted value that selects the branch of the first general form
inline GaussUnit first_form_value(const GroupSpec& g, const EpipelagicStratum& s, int i) {
  if (is_unram_unitary(g.family)) return lift_character(g, s, i).uniformizer_value;
  return gauss_route_value(g, s, i);
}

inline MuCharacter first_form_hypothesis(const GroupSpec& g, const EpipelagicStratum& s, int i) {
  if (is_unram_unitary(g.family)) return normalize(MuCharacter{-s.character_exponent * (g.field.p() - 1)}, g.field);
  return mu_power_of_quadratic(gauss_product(g, s, i).dim, g.field);
}

inline std::vector<CheckResult> verify_hecke(int p) {
  std::vector<CheckResult> out;
  for (auto& tag : worked_example_tags())
    out.push_back(detail::run_check("hecke", "brute_b_sum = closed, " + tag, p, [&](bool& ok) {
      auto F = example_field(tag, p);
      auto cs = example_characters(tag, p);
      int agree = 0;
      for (auto& c : cs) agree += brute_b_sum(tag, F, c) == closed_b_value(tag, F, c);
      ok = agree == int(cs.size());
      return detail::count_detail(agree, int(cs.size()));
    }));
  out.push_back(detail::run_check("hecke", "U(1) reducibility sets", p, [&](bool& ok) {
    auto cases = red_set_cases(p);
    int agree = 0;
    std::string first_bad;
    for (auto& c : cases) {
      ResidueField F(p, c.unramified ? 2 : 1);
      auto got = eigen_product_check(u1_coeffs(c.unramified, F, c.chars), c.value, F);
      if (got == c.expected) ++agree;
      else if (first_bad.empty()) first_bad = "; " + c.name + " gave " + to_string(got);
    }
    ok = agree == int(cases.size());
    return detail::count_detail(agree, int(cases.size())) + first_bad;
  }));
  out.push_back(detail::run_check("hecke", "first general form contains s = 1", p, [&](bool& ok) {
    gen::Rng r(3000 + p);
    int good = 0, total = 0;
    for (Family f : gen::classical_families())
      for (int k = 1; k <= 3; ++k)
        for (int e = 1; e <= 2; ++e) {
          auto G = gen::random_stratum(r, f, p, k, e, gen::pick(r, 0, 1));
          for (int i : G.stratum.non_null()) {
            auto c = closed_coeffs(G.group, G.stratum, i, first_form_hypothesis(G.group, G.stratum, i));
            ++total;
            good += eigen_product_check(c, first_form_value(G.group, G.stratum, i), G.group.field).contains_one();
          }
        }
    ok = good == total;
    return detail::count_detail(good, total);
  }));
  return out;
}

// ---- concordance ----

inline std::vector<CheckResult> verify_concordance(int p, int per_family = 20) {
  std::vector<CheckResult> out;
  for (Family f : gen::classical_families())
    out.push_back(detail::run_check("concordance", "lift = simple formulas, " + to_string(f), p, [&](bool& ok) {
      gen::Rng r(4000 + 31 * p + int(f));
      int agree = 0;
      std::string first_bad;
      for (int k = 0; k < per_family; ++k) {
        int n = gen::min_simple_rank(f) + k % 3;
        auto d = gen::random_datum(r, f, p, n);
        auto s = reduce_to_stratum(d);
        auto g = group_of(d);
        auto cs = cuspidal_support(g, s);
        auto oi = oi_concordance(d);
        if (concordant(cs, oi, d.field, is_unram_unitary(f))) ++agree;
        else if (first_bad.empty()) first_bad = "; lift " + describe(cs, d.field) + " vs " + describe(oi, d.field);
      }
      ok = agree == per_family;
      return detail::count_detail(agree, per_family) + first_bad;
    }));
  return out;
}

// ---- packets ----

inline std::vector<CheckResult> verify_packets(int p, int per_size = 4) {
  std::vector<CheckResult> out;
  for (Family f : gen::classical_families())
    out.push_back(detail::run_check("packets", "cardinality and inner-form split, " + to_string(f), p, [&](bool& ok) {
      gen::Rng r(5000 + 31 * p + int(f));
      int good = 0, total = 0;
      for (int k = 1; k <= 3; ++k)
        for (int t = 0; t < per_size; ++t) {
          auto G = gen::random_stratum(r, f, p, k, 1 + t % 2, gen::pick(r, 0, 1));
          auto shell = G.stratum;
          shell.partition.clear();
          shell.xi.reset();
          GroupSpec g = G.group;
          g.form_variant = Variant::plus;
          std::vector<int> delta;
          for (size_t x = 0; x < sign_indices(g.family, shell).size(); ++x) delta.push_back(gen::coin_sign(r));
          auto P = enumerate_packet(g, shell, delta);
          int plus = 0;
          for (auto& m : P.members) plus += m.inner_form.value > 0;
          bool single = g.family == Family::Sp || is_unram_unitary(g.family);
          bool split_ok = single ? plus == P.cardinality : 2 * plus == P.cardinality;
          ++total;
          good += P.cardinality == expected_cardinality(g.family, shell) && split_ok;
        }
      ok = good == total;
      return detail::count_detail(good, total);
    }));
  return out;
}

inline std::vector<CheckResult> run_suite(const std::string& suite, int p) {
  if (suite == "gauss") return verify_gauss(p);
  if (suite == "quadform") return verify_quadform(p);
  if (suite == "hecke") return verify_hecke(p);
  if (suite == "concordance") return verify_concordance(p);
  if (suite == "packets") return verify_packets(p);
  if (suite == "all") {
    std::vector<CheckResult> all;
    for (auto& s : verify_suites()) {
      auto part = run_suite(s, p);
      all.insert(all.end(), part.begin(), part.end());
    }
    return all;
  }
  throw domain_error("unknown suite " + suite);
}

}  // namespace epi

#endif
