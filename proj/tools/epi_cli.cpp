#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "epi/epi.hpp"
#include "epi/io.hpp"

using namespace epi;
using io::Json;

namespace {

constexpr int kOk = 0, kFail = 1, kSchema = 2, kStratum = 3;

// EPI_VERBOSE=1 adds progress lines on stderr; stdout is unaffected
bool verbose() {
  const char* v = std::getenv("EPI_VERBOSE");
  return v && *v && std::string(v) != "0";
}

Json read_json(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw io::SchemaError({"input: cannot open " + path});
  try {
    return Json::parse(f);
  } catch (const Json::parse_error& e) {
    throw io::SchemaError({std::string("input: not valid json: ") + e.what()});
  }
}

void write_out(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw io::SchemaError({"output: cannot open " + path});
  f << text;
}

std::string lift_table(const io::LiftInput& in) {
  const auto& F = in.group.field;
  auto cs = cuspidal_support(in.group, in.stratum);
  std::ostringstream o;
  o << to_string(in.group.family) << "  N=" << in.group.N << "  p=" << F.p() << "  form " << (in.group.form_variant == Variant::plus ? "+" : "-")
    << "\n";
  o << "lift to GL_" << cs.total_rank << ":\n";
  for (auto& e : cs.entries) o << "  " << (e.stratum_param ? e.label : e.label + " (1-dim)") << "  " << describe(e, F) << "\n";
  auto red = io::reducibility_json(in.group, in.stratum, cs);
  for (auto& r : red)
    o << "  Red at component " << r["component"].get<int>() << ": " << r["set"].get<std::string>()
      << (r["first_form_agrees"].get<bool>() ? "" : "  (first general form: " + r["first_form_set"].get<std::string>() + ")") << "\n";
  return o.str();
}

std::string packet_table(const Json& j) {
  std::ostringstream o;
  o << j["group"]["family"].get<std::string>() << "  N=" << j["group"]["N"].get<int>() << "  p=" << j["group"]["p"].get<int>()
    << "  cardinality " << j["cardinality"].get<int>() << "\n";
  for (auto& lp : j["l_packets"]) {
    o << "L-packet";
    if (!lp["xi"].is_null()) o << " xi=" << (lp["xi"].get<int>() > 0 ? "+" : "-");
    o << "  (" << lp["on_plus"].get<int>() << " on G+, " << lp["on_minus"].get<int>() << " on G-)\n";
    o << "  lift: ";
    bool first = true;
    for (auto& e : lp["lift"]["entries"]) {
      o << (first ? "" : " x ") << e["tuple"].get<std::string>();
      first = false;
    }
    o << "\n";
    for (auto& m : lp["members"]) {
      o << "  I_zeta = {";
      bool f2 = true;
      for (auto& k : m["partition"]) {
        o << (f2 ? "" : ",") << k.get<int>();
        f2 = false;
      }
      o << "}  G" << m["inner_form"].get<std::string>() << "\n";
    }
  }
  return o.str();
}

std::vector<int> parse_primes(const std::string& list) {
  std::vector<int> ps;
  std::stringstream ss(list);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    int p = 0;
    try {
      size_t used = 0;
      p = std::stoi(tok, &used);
      if (used != tok.size()) p = 0;
    } catch (const std::exception&) {
    }
    if (!io::within_budget(p)) throw io::SchemaError({"p: '" + tok + "' is not an odd prime <= 13 (over budget for the brute-force oracles)"});
    ps.push_back(p);
  }
  if (ps.empty()) throw io::SchemaError({"p: empty list"});
  return ps;
}

std::vector<int> parse_ints(const std::string& list, const char* what) {
  std::vector<int> xs;
  std::stringstream ss(list);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      size_t used = 0;
      int x = std::stoi(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
      xs.push_back(x);
    } catch (const std::exception&) {
      throw io::SchemaError({std::string(what) + ": '" + tok + "' is not an integer"});
    }
  }
  if (xs.empty()) throw io::SchemaError({std::string(what) + ": empty list"});
  return xs;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"epipelagic lifts, L-packets and their finite-field checks"};
  app.require_subcommand(1);

  std::string input, output, suite = "all", primes = "3,5,7", form;
  int gauss_p = 0;
  bool table = false;

  auto* lift = app.add_subcommand("lift", "cuspidal support of the lift and reducibility sets");
  lift->add_option("--input", input, "stratum json")->required();
  lift->add_option("--output", output, "output file (default stdout)");
  lift->add_flag("--table", table, "human-readable table instead of json");

  auto* packet = app.add_subcommand("packet", "enumerate the L-packet of a stratum shell");
  packet->add_option("--input", input, "packet json")->required();
  packet->add_option("--output", output, "output file (default stdout)");
  packet->add_flag("--table", table, "human-readable table instead of json");

  auto* verify = app.add_subcommand("verify", "closed formulas against brute force");
  verify->add_option("--suite", suite, "gauss, quadform, hecke, concordance, packets or all")
      ->check(CLI::IsMember({"gauss", "quadform", "hecke", "concordance", "packets", "all"}));
  verify->add_option("--p", primes, "comma-separated odd primes <= 13");
  verify->add_option("--output", output, "output file (default stdout)");

  auto* gauss = app.add_subcommand("gauss", "normalized Gauss sum of a diagonal form over F_p");
  gauss->add_option("--p", gauss_p, "odd prime <= 13")->required();
  gauss->add_option("--form", form, "diagonal entries d1,d2,...")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kSchema;
  }

  try {
    if (*lift) {
      auto in = io::parse_lift_input(read_json(input));
      if (verbose()) std::cerr << "lift: " << to_string(in.group.family) << " N=" << in.group.N << "\n";
      write_out(table ? lift_table(in) : io::dump(io::lift_json(in)), output);
      return kOk;
    }
    if (*packet) {
      auto in = io::parse_packet_input(read_json(input));
      auto j = io::packet_json(in);
      if (verbose()) std::cerr << "packet: " << j["cardinality"].get<int>() << " members\n";
      write_out(table ? packet_table(j) : io::dump(j), output);
      return kOk;
    }
    if (*verify) {
      std::vector<CheckResult> all;
      for (int p : parse_primes(primes)) {
        auto part = run_suite(suite, p);
        if (verbose())
          for (auto& r : part) std::cerr << (r.pass ? "ok   " : "FAIL ") << r.suite << " p=" << r.p << " " << r.name << "\n";
        all.insert(all.end(), part.begin(), part.end());
      }
      write_out(io::dump(io::checks_json(all)), output);
      for (auto& r : all)
        if (!r.pass) return kFail;
      return kOk;
    }
    if (*gauss) {
      if (!io::within_budget(gauss_p)) throw io::SchemaError({"p: " + std::to_string(gauss_p) + " is not an odd prime <= 13"});
      ResidueField F(gauss_p);
      std::vector<int> d;
      for (int x : parse_ints(form, "form")) {
        if (F.from_int(x) == 0) throw io::SchemaError({"form: entry " + std::to_string(x) + " vanishes mod p"});
        d.push_back(F.from_int(x));
      }
      auto q = diagonal_form(d, F);
      Json j;
      j["p"] = gauss_p;
      j["form"] = d;
      j["disc"] = discriminant(q);
      j["closed"] = to_string(gauss_closed(q));
      if (std::pow(double(F.q()), q.dim()) <= kBruteBudget) {
        auto b = gauss_brute(q);
        j["brute"] = to_string(b);
        j["agree"] = b == gauss_closed(q);
      } else {
        j["brute"] = nullptr;
      }
      write_out(io::dump(j), "");
      return j.contains("agree") && !j["agree"].get<bool>() ? kFail : kOk;
    }
  } catch (const io::SchemaError& e) {
    for (auto& f : e.fields) std::cerr << "schema: " << f << "\n";
    return kSchema;
  } catch (const io::StratumError& e) {
    for (auto& v : e.violations) std::cerr << "stratum: clause " << v.clause << ": " << v.message << "\n";
    return kStratum;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFail;
  }
  return kOk;
}
