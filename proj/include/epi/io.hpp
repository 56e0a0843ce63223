#ifndef EPI_IO_HPP
#define EPI_IO_HPP

// json encoding of groups, strata, lifts and packets

#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "packets.hpp"
#include "verify.hpp"

namespace epi::io {

using Json = nlohmann::ordered_json;

// input does not match the schema; one message per offending field
struct SchemaError : std::runtime_error {
  std::vector<std::string> fields;
  explicit SchemaError(std::vector<std::string> f) : std::runtime_error("schema violation"), fields(std::move(f)) {}
};

// stratum fails validate_stratum
struct StratumError : std::runtime_error {
  std::vector<Violation> violations;
  explicit StratumError(std::vector<Violation> v) : std::runtime_error("stratum violation"), violations(std::move(v)) {}
};

// primes the brute-force oracles accept
inline bool within_budget(int p) { return is_odd_prime(p) && p <= 13; }

// ---- units ----

inline std::string unit_to_string(int x, const ResidueField& F) {
  if (F.in_prime_field(x)) return std::to_string(x);
  return "zeta^" + std::to_string(F.log(x));
}

inline Json unit_to_json(int x, const ResidueField& F) {
  if (F.in_prime_field(x)) return x;
  return "zeta^" + std::to_string(F.log(x));
}

namespace detail {

class Reader {
 public:
  std::vector<std::string> errors;

  void fail(const std::string& path, const std::string& msg) { errors.push_back(path + ": " + msg); }

  const Json* field(const Json& obj, const std::string& path, const char* key, bool required = true) {
    if (!obj.is_object()) {
      fail(path, "expected an object");
      return nullptr;
    }
    auto it = obj.find(key);
    if (it == obj.end()) {
      if (required) fail(path + "." + key, "missing");
      return nullptr;
    }
    return &*it;
  }

  std::optional<int> integer(const Json* v, const std::string& path) {
    if (!v) return std::nullopt;
    if (!v->is_number_integer()) {
      fail(path, "expected an integer");
      return std::nullopt;
    }
    return v->get<int>();
  }

  std::optional<int> sign(const Json* v, const std::string& path) {
    auto x = integer(v, path);
    if (x && *x != 1 && *x != -1) {
      fail(path, "expected +1 or -1");
      return std::nullopt;
    }
    return x;
  }

  std::optional<Variant> variant(const Json* v, const std::string& path) {
    if (!v) return std::nullopt;
    if (v->is_string() && (*v == "+" || *v == "-")) return *v == "+" ? Variant::plus : Variant::minus;
    fail(path, "expected \"+\" or \"-\"");
    return std::nullopt;
  }

  std::optional<bool> boolean(const Json* v, const std::string& path) {
    if (!v) return std::nullopt;
    if (!v->is_boolean()) {
      fail(path, "expected true or false");
      return std::nullopt;
    }
    return v->get<bool>();
  }

  // integer mod p or "zeta^k"
  std::optional<int> unit(const Json* v, const std::string& path, const ResidueField& F) {
    if (!v) return std::nullopt;
    if (v->is_number_integer()) return F.from_int(v->get<long long>());
    if (v->is_string()) {
      const std::string s = *v;
      const std::string pre = "zeta^";
      if (s.rfind(pre, 0) == 0 && s.size() > pre.size()) {
        try {
          size_t used = 0;
          long long k = std::stoll(s.substr(pre.size()), &used);
          if (used == s.size() - pre.size()) return F.exp(k);
        } catch (const std::exception&) {
        }
      }
    }
    fail(path, "expected an integer or \"zeta^k\"");
    return std::nullopt;
  }

  template <class F>
  void array(const Json* v, const std::string& path, F each) {
    if (!v) return;
    if (!v->is_array()) {
      fail(path, "expected an array");
      return;
    }
    for (size_t k = 0; k < v->size(); ++k) each((*v)[k], path + "[" + std::to_string(k) + "]");
  }
};

}  // namespace detail

struct LiftInput {
  GroupSpec group;
  EpipelagicStratum stratum;
};

struct PacketInput {
  GroupSpec group;
  EpipelagicStratum shell;
  std::vector<int> delta;
  std::optional<int> xi;
};

inline GroupSpec parse_group(const Json& j, detail::Reader& rd) {
  GroupSpec g;
  const Json* grp = rd.field(j, "", "group");
  if (!grp) return g;
  std::optional<Family> fam;
  if (auto v = rd.field(*grp, "group", "family")) {
    try {
      if (!v->is_string()) throw domain_error("");
      fam = family_from_string(*v);
    } catch (const std::exception&) {
      rd.fail("group.family", "expected one of SO_odd, Sp, SO_even_split, SO_even_unram, SO_even_ram, U_unram_odd, U_unram_even, U_ram_odd, U_ram_even");
    }
  }
  if (fam && *fam == Family::GL) rd.fail("group.family", "GL is its own lift; a classical family is required");
  auto N = rd.integer(rd.field(*grp, "group", "N"), "group.N");
  if (N && *N < 1) rd.fail("group.N", "must be positive");
  auto p = rd.integer(rd.field(*grp, "group", "p"), "group.p");
  if (p && !within_budget(*p)) {
    rd.fail("group.p", "must be an odd prime <= 13");
    p.reset();
  }
  const int pval = p ? *p : 0;
  auto v = rd.variant(rd.field(*grp, "group", "form_variant", false), "group.form_variant");
  if (fam) g.family = *fam;
  if (N) g.N = *N;
  if (fam && pval > 0) g.field = ResidueField(pval, residue_degree(*fam));
  if (v) g.form_variant = *v;
  if (auto d = rd.field(*grp, "group", "disc_choice", false)) {
    if (d->is_string() && (*d == "1" || *d == "zeta")) g.disc_choice = SquareClass{*d == "zeta" ? 1 : 0, 0};
    else rd.fail("group.disc_choice", "expected \"1\" or \"zeta\"");
    if (fam && *fam != Family::SO_even_ram) rd.fail("group.disc_choice", "only applies to SO_even_ram");
  }
  return g;
}

inline EpipelagicStratum parse_stratum(const Json& j, const GroupSpec& g, detail::Reader& rd, const char* key = "stratum") {
  EpipelagicStratum s;
  const std::string root = key;
  const Json* st = rd.field(j, "", key);
  if (!st) return s;
  const Json* comps = rd.field(*st, root, "components");
  if (comps && comps->is_array() && comps->empty()) rd.fail(root + ".components", "must not be empty");
  rd.array(comps, root + ".components", [&](const Json& c, const std::string& path) {
    StratumComponent sc;
    auto deg = rd.integer(rd.field(c, path, "degree"), path + ".degree");
    auto nul = rd.boolean(rd.field(c, path, "null", false), path + ".null");
    sc.null = nul.value_or(false);
    const Json* u = rd.field(c, path, "unit", !sc.null);
    if (auto x = rd.unit(u, path + ".unit", g.field)) sc.unit = *x;
    if (auto fc = rd.variant(rd.field(c, path, "form_choice", false), path + ".form_choice")) sc.form_choice = *fc;
    if (deg) sc.degree = *deg;
    s.components.push_back(sc);
  });
  rd.array(rd.field(*st, root, "omega_signs"), root + ".omega_signs", [&](const Json& x, const std::string& path) {
    if (auto v = rd.sign(&x, path)) s.omega_signs.push_back(*v);
  });
  rd.array(rd.field(*st, root, "partition", false), root + ".partition", [&](const Json& x, const std::string& path) {
    if (auto v = rd.integer(&x, path)) s.partition.push_back(*v);
  });
  if (auto x = rd.field(*st, root, "xi", false); x && !x->is_null())
    if (auto v = rd.sign(x, root + ".xi")) s.xi = *v;
  if (auto t = rd.integer(rd.field(*st, root, "character_exponent", false), root + ".character_exponent")) {
    if (!is_unram_unitary(g.family)) rd.fail(root + ".character_exponent", "only applies to unramified unitary groups");
    else if (*t < 0 || *t > g.field.p()) rd.fail(root + ".character_exponent", "must lie in [0, p]");
    else s.character_exponent = *t;
  }
  return s;
}

inline void throw_if(detail::Reader& rd) {
  if (!rd.errors.empty()) throw SchemaError(rd.errors);
}

inline LiftInput parse_lift_input(const Json& j) {
  detail::Reader rd;
  if (!j.is_object()) rd.fail("", "expected an object");
  throw_if(rd);
  LiftInput in;
  in.group = parse_group(j, rd);
  throw_if(rd);
  in.stratum = parse_stratum(j, in.group, rd);
  throw_if(rd);
  auto v = validate_stratum(in.group, in.stratum);
  if (!v.empty()) throw StratumError(v);
  return in;
}

// the shell is a stratum without partition and xi; delta holds one sign per
// eligible index (default all +1), xi restricts SO_even with o not in I
inline PacketInput parse_packet_input(const Json& j) {
  detail::Reader rd;
  if (!j.is_object()) rd.fail("", "expected an object");
  throw_if(rd);
  PacketInput in;
  in.group = parse_group(j, rd);
  throw_if(rd);
  in.group.form_variant = Variant::plus;
  in.shell = parse_stratum(j, in.group, rd);
  if (!in.shell.partition.empty()) rd.fail("stratum.partition", "a packet shell has no partition");
  if (in.shell.xi) rd.fail("stratum.xi", "give xi at the top level to select one L-packet");
  rd.array(rd.field(j, "", "delta", false), "delta", [&](const Json& x, const std::string& path) {
    if (auto v = rd.sign(&x, path)) in.delta.push_back(*v);
  });
  if (auto x = rd.field(j, "", "xi", false); x && !x->is_null())
    if (auto v = rd.sign(x, "xi")) in.xi = *v;
  throw_if(rd);
  if (!j.contains("delta")) in.delta.assign(sign_indices(in.group.family, in.shell).size(), 1);
  // the shell is validated with its own sign list replaced by delta and a neutral xi
  EpipelagicStratum probe = in.shell;
  probe.omega_signs = in.delta;
  if (is_so_even(in.group.family) && !probe.has_null()) probe.xi = 1;
  auto v = validate_stratum(in.group, probe);
  if (!v.empty()) throw StratumError(v);
  if (in.xi && !(is_so_even(in.group.family) && !in.shell.has_null()))
    throw StratumError(std::vector<Violation>{{"xi", "xi only applies to SO_even with o not in I"}});
  return in;
}

// ---- output ----

inline Json to_json(const GroupSpec& g) {
  Json j;
  j["family"] = to_string(g.family);
  j["N"] = g.N;
  j["p"] = g.field.p();
  j["form_variant"] = g.form_variant == Variant::plus ? "+" : "-";
  if (g.family == Family::SO_even_ram) j["disc_choice"] = g.disc_choice.unit ? "zeta" : "1";
  return j;
}

inline Json to_json(const EpipelagicStratum& s, const GroupSpec& g) {
  Json j;
  Json comps = Json::array();
  for (auto& c : s.components) {
    Json x;
    x["degree"] = c.degree;
    if (!c.null) x["unit"] = unit_to_json(c.unit, g.field);
    x["null"] = c.null;
    x["form_choice"] = c.form_choice == Variant::plus ? "+" : "-";
    comps.push_back(x);
  }
  j["components"] = comps;
  j["omega_signs"] = s.omega_signs;
  j["partition"] = s.partition;
  if (s.xi) j["xi"] = *s.xi;
  if (is_unram_unitary(g.family)) j["character_exponent"] = s.character_exponent;
  return j;
}

inline Json to_json(const LiftCharacter& c, const ResidueField& F) {
  Json j;
  j["label"] = c.label;
  j["gl_rank"] = c.gl_rank;
  if (c.stratum_param) j["stratum_param"] = unit_to_json(c.stratum_param, F);
  else j["stratum_param"] = nullptr;
  j["mu"] = mu_tag(c.mu_restriction, F);
  j["mu_exponent"] = normalize(c.mu_restriction, F).exponent;
  j["sign"] = c.uniformizer_value.sign;
  j["n_exponent"] = c.uniformizer_value.k;
  j["skew_uniformizer"] = c.skew_uniformizer;
  if (c.beta_sign != 1) j["beta_sign"] = c.beta_sign;
  j["tuple"] = describe(c, F);
  return j;
}

inline Json to_json(const CuspidalSupport& cs, const ResidueField& F) {
  Json j;
  Json e = Json::array();
  for (auto& c : cs.entries) e.push_back(to_json(c, F));
  j["entries"] = e;
  j["total_rank"] = cs.total_rank;
  return j;
}

inline Json to_json(Quarter x) { return to_string(x); }

// reducibility at the lifted value, with the branch of the first general form
inline Json reducibility_json(const GroupSpec& g, const EpipelagicStratum& s, const CuspidalSupport& cs) {
  Json out = Json::array();
  const auto& F = g.field;
  auto nn = s.non_null();
  for (size_t k = 0; k < nn.size(); ++k) {
    int i = nn[k];
    Json r;
    r["component"] = i;
    MuCharacter hyp = first_form_hypothesis(g, s, i);
    HeckeCoeffs c = closed_coeffs(g, s, i, hyp);
    r["hypothesis"] = mu_tag(hyp, F);
    r["r_y"] = to_json(c.r_y);
    r["r_z"] = to_json(c.r_z);
    r["c_y"] = "q^" + to_string(Quarter{c.c_y.q4 / 2});
    r["c_z"] = "q^" + to_string(Quarter{c.c_z.q4 / 2});
    GaussUnit lifted = cs.entries[k].uniformizer_value;
    auto at_lift = eigen_product_check(c, lifted, F);
    auto first = eigen_product_check(c, first_form_value(g, s, i), F);
    r["s1"] = to_json(at_lift.s1);
    r["s2"] = to_json(at_lift.s2);
    r["set"] = to_string(at_lift);
    r["first_form_set"] = to_string(first);
    r["first_form_agrees"] = at_lift == first;
    out.push_back(r);
  }
  return out;
}

inline Json lift_json(const LiftInput& in) {
  Json j;
  j["group"] = to_json(in.group);
  j["stratum"] = to_json(in.stratum, in.group);
  auto cs = cuspidal_support(in.group, in.stratum);
  j["lift"] = to_json(cs, in.group.field);
  j["reducibility"] = reducibility_json(in.group, in.stratum, cs);
  return j;
}

inline Json packet_json(const PacketInput& in) {
  auto pk = enumerate_packet(in.group, in.shell, in.delta, in.xi);
  const auto& F = in.group.field;
  Json j;
  j["group"] = to_json(in.group);
  j["shell"] = to_json(in.shell, in.group);
  j["delta"] = in.delta;
  j["cardinality"] = pk.cardinality;
  j["xi_heuristic"] = pk.xi_heuristic;
  Json lps = Json::array();
  for (size_t start = 0; start < pk.members.size();) {
    const auto& head = pk.members[start];
    Json lp;
    lp["xi"] = head.xi ? Json(*head.xi) : Json(nullptr);
    lp["lift"] = to_json(head.lift, F);
    Json ms = Json::array();
    int plus = 0, minus = 0;
    size_t k = start;
    for (; k < pk.members.size() && pk.members[k].xi == head.xi; ++k) {
      const auto& m = pk.members[k];
      Json x;
      x["partition"] = m.partition;
      x["inner_form"] = m.inner_form.value > 0 ? "+" : "-";
      x["omega_signs"] = m.stratum.omega_signs;
      (m.inner_form.value > 0 ? plus : minus)++;
      ms.push_back(x);
    }
    lp["size"] = int(k - start);
    lp["on_plus"] = plus;
    lp["on_minus"] = minus;
    lp["members"] = ms;
    lps.push_back(lp);
    start = k;
  }
  j["l_packets"] = lps;
  return j;
}

inline Json checks_json(const std::vector<CheckResult>& rs) {
  Json j;
  Json arr = Json::array();
  int passed = 0;
  for (auto& r : rs) {
    Json x;
    x["suite"] = r.suite;
    x["p"] = r.p;
    x["name"] = r.name;
    x["pass"] = r.pass;
    x["detail"] = r.detail;
    arr.push_back(x);
    passed += r.pass;
  }
  j["checks"] = arr;
  j["passed"] = passed;
  j["failed"] = int(rs.size()) - passed;
  return j;
}

inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace epi::io

#endif
