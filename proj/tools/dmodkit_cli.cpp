#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "dmodkit/jobs.hpp"

using dmodkit::Json;
using dmodkit::UsageError;

namespace {

enum class Kind { UInt, Int, Rational, String, Flag, FlagOff, Structured, Dims, List, Weights };
enum class Section { Ring, Params, Top };

struct OptSpec {
  const char* flag;  // without leading dashes
  const char* key;   // field name in the section
  Section section;
  Kind kind;
  const char* help;
};

struct Bound {
  OptSpec spec;
  std::shared_ptr<std::string> value = std::make_shared<std::string>();
  std::shared_ptr<bool> flag = std::make_shared<bool>(false);
  CLI::Option* option = nullptr;
};

struct OpEntry {
  std::string sub;
  std::string op;
  CLI::App* app = nullptr;
  std::vector<Bound> options;
};

std::string field_path(const OptSpec& s) {
  switch (s.section) {
    case Section::Ring: return std::string("ring.") + s.key;
    case Section::Params: return std::string("params.") + s.key;
    case Section::Top: return s.key;
  }
  return s.key;
}

std::string read_file(const std::string& path, const std::string& field) {
  std::ifstream in(path);
  if (!in) throw UsageError(field, "cannot read file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json parse_json_text(const std::string& text, const std::string& field) {
  try {
    return Json::parse(text);
  } catch (const std::exception& e) {
    throw UsageError(field, std::string("malformed JSON: ") + e.what());
  }
}

// inline JSON, a path to a JSON file, or a bare fixture name
Json structured_value(const std::string& text, const std::string& field) {
  if (!text.empty() && (text[0] == '{' || text[0] == '[')) return parse_json_text(text, field);
  if (std::filesystem::is_regular_file(text)) return parse_json_text(read_file(text, field), field);
  return Json(text);
}

Json integer_value(const std::string& text, const std::string& field, bool allow_negative) {
  std::size_t pos = 0;
  long long v = 0;
  try {
    v = std::stoll(text, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != text.size() || text.empty()) throw UsageError(field, "expected an integer, got \"" + text + "\"");
  if (!allow_negative && v < 0) throw UsageError(field, "expected a nonnegative integer, got " + text);
  return Json(v);
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : text) {
    if (ch == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

Json converted(const Bound& b) {
  const auto& s = b.spec;
  const std::string field = field_path(s);
  const std::string& text = *b.value;
  switch (s.kind) {
    case Kind::UInt: return integer_value(text, field, false);
    case Kind::Int: return integer_value(text, field, true);
    case Kind::Rational:
    case Kind::String: return Json(text);
    case Kind::Flag: return Json(true);
    case Kind::FlagOff: return Json(false);
    case Kind::Structured: return structured_value(text, field);
    case Kind::List: {
      Json arr = Json::array();
      for (const auto& part : split(text, ';')) arr.push_back(part);
      return arr;
    }
    case Kind::Weights: {
      Json arr = Json::array();
      auto parts = split(text, ',');
      for (std::size_t k = 0; k < parts.size(); ++k) {
        arr.push_back(integer_value(parts[k], field + "[" + std::to_string(k) + "]", false));
      }
      return arr;
    }
    case Kind::Dims: {
      std::ifstream in(text);
      if (!in) throw UsageError(field, "cannot read file " + text);
      try {
        return Json(dmodkit::read_csv(in).dims);
      } catch (const std::exception& e) {
        throw UsageError(field, e.what());
      }
    }
  }
  return Json(text);
}

const std::vector<OptSpec> kRingOptions = {
    {"n", "n", Section::Ring, Kind::UInt, "number of variables"},
    {"weights", "weights", Section::Ring, Kind::Weights, "comma separated variable weights"},
    {"slope", "slope", Section::Ring, Kind::Rational, "filtration slope (rational, above every weight)"},
};
const OptSpec kGroup = {"group", "group", Section::Top, Kind::Structured,
                        "group fixture name, inline JSON matrix list, or a JSON file"};
const OptSpec kPrime = {"p", "characteristic", Section::Ring, Kind::UInt, "prime characteristic"};

OptSpec P(const char* flag, const char* key, Kind kind, const char* help) {
  return {flag, key, Section::Params, kind, help};
}

struct OpDef {
  const char* sub;
  const char* op;
  const char* help;
  bool ring;   // --n/--weights/--slope
  bool group;  // --group
  bool prime;  // --p
  std::vector<OptSpec> params;
};

std::vector<OpDef> definitions() {
  const Kind U = Kind::UInt, I = Kind::Int, Q = Kind::Rational, S = Kind::String;
  return {
      {"weyl", "mul", "product of two operators", true, false, false,
       {P("a", "a", S, "left operator"), P("b", "b", S, "right operator")}},
      {"weyl", "apply", "apply an operator to a polynomial", true, false, false,
       {P("op", "op", S, "operator"), P("f", "f", S, "polynomial")}},
      {"weyl", "bracket", "commutator [a, b]", true, false, false,
       {P("a", "a", S, "left operator"), P("b", "b", S, "right operator")}},
      {"weyl", "chain", "bracket chain with a polynomial", true, false, false,
       {P("op", "op", S, "operator"), P("f", "f", S, "polynomial"), P("i", "i", U, "number of brackets")}},
      {"weyl", "commute", "check delta f^j = sum binom(j,i) f^(j-i) delta^(i)", true, false, false,
       {P("op", "op", S, "operator"), P("f", "f", S, "nonzero polynomial"), P("j", "j", I, "power of f")}},
      {"weyl", "suite", "randomized check of the commutation identity", true, false, false,
       {P("samples", "samples", U, "number of samples"), P("maxord", "maxord", U, "largest order"),
        P("maxdeg", "maxdeg", U, "largest degree"), P("jmin", "jmin", I, "smallest power"),
        P("jmax", "jmax", I, "largest power")}},
      {"bf", "dim", "dimensions of the Bernstein filtration levels", true, false, false,
       {P("imax", "imax", U, "last level")}},
      {"bf", "basis", "monomial basis of a level", true, false, false, {P("i", "i", U, "level")}},
      {"bf", "level", "least level containing an operator", true, false, false, {P("op", "op", S, "operator")}},
      {"bf", "estimate", "growth degree and multiplicity of the filtration", true, false, false,
       {P("imax", "imax", U, "last level"), P("window", "window", U, "fit window")}},
      {"bf", "slope", "compare two slopes", true, false, false,
       {P("slope-b", "slope_b", Q, "larger slope"), P("window", "window", U, "levels checked")}},
      {"bf", "commutativity", "commutators drop one level", true, false, false,
       {P("i", "i", U, "level of delta"), P("j", "j", U, "level of eta"), P("samples", "samples", U, "pairs")}},
      {"bf", "order", "order bound C with B_i inside D^{Ci}", true, false, false,
       {P("window", "window", U, "levels checked")}},
      {"filtration", "estimate", "growth estimate of a dimension sequence", false, false, false,
       {P("dims-csv", "dims", Kind::Dims, "CSV file with i,dim rows"), P("window", "window", U, "fit window")}},
      {"filtration", "reindex", "re-index a sequence by floor(i^s)", false, false, false,
       {P("dims-csv", "dims", Kind::Dims, "CSV file with i,dim rows"), P("s", "s", Q, "exponent >= 1"),
        P("imax", "imax", U, "last level")}},
      {"filtration", "bernstein", "Bernstein inequality for R or R_f", true, true, false,
       {P("module", "module", S, "ring or localized"), P("f", "f", S, "polynomial for R_f"),
        P("imax", "imax", U, "last level"), P("window", "window", U, "fit window"),
        P("C", "C", U, "simplicity constant")}},
      {"filtration", "growth", "dimension growth of R or R_f", true, true, false,
       {P("module", "module", S, "ring or localized"), P("f", "f", S, "polynomial for R_f"),
        P("imax", "imax", U, "last level"), P("window", "window", U, "fit window")}},
      {"filtration", "length-bound", "length bound from multiplicities", false, false, false,
       {P("e-module", "e_module", Q, "module multiplicity"), P("e-algebra", "e_algebra", Q, "algebra multiplicity"),
        P("C", "C", U, "simplicity constant"), P("theta", "theta", Q, "half the algebra degree")}},
      {"invariants", "closure", "close a matrix group", true, true, false, {}},
      {"invariants", "basis", "invariant operators of a level", true, true, false, {P("i", "i", U, "level")}},
      {"invariants", "diffpow", "dim R^G / m^<i> and the pairing rank", true, true, false,
       {P("i", "i", U, "differential power")}},
      {"invariants", "signature", "differential signature sequence", true, true, false,
       {P("imax", "imax", U, "last power"), P("window", "window", U, "fit window")}},
      {"invariants", "reynolds", "Reynolds image of a polynomial or operator", true, true, false,
       {P("f", "f", S, "polynomial"), P("op", "op", S, "operator")}},
      {"invariants", "summand", "Reynolds operator as a module map", true, true, false,
       {P("level", "level", U, "operator level"), P("samples", "samples", U, "samples"),
        P("probes", "probes", Kind::List, "semicolon separated invariant polynomials")}},
      {"simplicity", "reduce", "bracket an operator down to a unit", true, false, false,
       {P("op", "op", S, "nonzero operator")}},
      {"simplicity", "certify", "certificate 1 = sum L delta R with L, R in B_{Ci}", true, true, false,
       {P("op", "op", S, "nonzero operator"), P("i", "i", U, "level of the operator"),
        P("C", "C", U, "largest constant tried")}},
      {"simplicity", "table", "least constants over an invariant basis", true, true, false,
       {P("imax", "imax", U, "last level"), P("cmax", "cmax", U, "largest constant tried")}},
      {"simplicity", "sweep", "reduce every basis monomial and replay C = 1 certificates", true, false, false,
       {P("imax", "imax", U, "last level")}},
      {"bs", "solve", "Bernstein-Sato polynomial search", true, true, false,
       {P("f", "f", S, "polynomial"), P("level", "level", U, "operator level"), P("sdeg", "sdeg", U, "degree in s"),
        P("bdeg", "bdeg", U, "largest degree of b"),
        P("no-homogeneous", "homogeneous", Kind::FlagOff, "search every degree for homogeneous f")}},
      {"bs", "verify", "check a functional equation by specialization", true, false, false,
       {P("f", "f", S, "polynomial"), P("op-slices", "op_slices", Kind::List, "operators for s^0;s^1;.."),
        P("b", "b", S, "polynomial in s"), P("tmax", "tmax", I, "last specialization")}},
      {"dmod", "act", "action on the localization R_f", true, false, false,
       {P("f", "f", S, "nonzero polynomial"), P("op", "op", S, "operator"), P("num", "num", S, "numerator"),
        P("t", "t", U, "power of f in the denominator")}},
      {"dmod", "theta", "image of an operator in D[s] acting on f^s", true, false, false,
       {P("f", "f", S, "nonzero polynomial"), P("op", "op", S, "operator")}},
      {"dmod", "fs", "action on a(s) f^s", true, false, false,
       {P("f", "f", S, "nonzero polynomial"), P("op", "op", S, "operator"),
        P("coeffs", "coeffs", Kind::List, "coefficients of s^0;s^1;.."), P("t", "t", U, "power of f below")}},
      {"dmod", "specialize", "substitute an integer for s", true, false, false,
       {P("f", "f", S, "nonzero polynomial"), P("coeffs", "coeffs", Kind::List, "coefficients of s^0;s^1;.."),
        P("t", "t", U, "power of f below"), P("at", "at", I, "integer value of s")}},
      {"dmod", "growth", "dimension growth of R or R_f", true, true, false,
       {P("module", "module", S, "ring or localized"), P("f", "f", S, "polynomial for R_f"),
        P("imax", "imax", U, "last level"), P("window", "window", U, "fit window")}},
      {"dmod", "suite", "randomized homomorphism and specialization checks", true, false, false,
       {P("samples", "samples", U, "samples"), P("tmin", "tmin", I, "smallest s"), P("tmax", "tmax", I, "largest s")}},
      {"charp", "split", "splitting ideals and F-regularity scan", false, false, false,
       {P("ring", "ring", Kind::Structured, "fixture name, inline JSON, or JSON file"),
        P("emax", "emax", U, "largest e")}},
      {"charp", "fedder", "compare the Fedder route with the trace definition", false, false, false,
       {P("ring", "ring", Kind::Structured, "fixture name, inline JSON, or JSON file"),
        P("maxdeg", "maxdeg", U, "monomial degrees checked"), P("samples", "samples", U, "random polynomials")}},
      {"charp", "ffrt", "Veronese multiplicities", false, false, true,
       {{"n", "n", Section::Ring, U, "number of variables"}, P("r", "r", U, "Veronese degree"),
        P("e", "e", U, "Frobenius power")}},
      {"charp", "level", "level of a divided power operator", false, false, true,
       {{"n", "n", Section::Ring, U, "number of variables"}, P("op", "op", S, "operator, e.g. x1*D1^(2)")}},
      {"charp", "containment", "order and level containments", false, false, true,
       {{"n", "n", Section::Ring, U, "number of variables"}, P("imax", "imax", U, "largest order"),
        P("emax", "emax", U, "largest level")}},
  };
}

int emit(const dmodkit::JobResult& res, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << res.text;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
      std::cerr << "usage error: output: cannot write " << out_path << "\n";
      return 2;
    }
    out << res.text;
  }
  if (res.status != 0) std::cerr << "verification failed\n";
  return res.status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations with Weyl algebras, D-modules and Frobenius splittings"};
  app.set_version_flag("--version", std::string("dmodkit ") + dmodkit::kToolVersion);
  app.require_subcommand(1);

  std::string seed_text, out_path;
  bool want_json = false, want_csv = false;
  auto add_common = [&](CLI::App* a) {
    a->add_option("--seed", seed_text, "seed for randomized checks");
    a->add_option("--out", out_path, "write the report to a file");
    auto* j = a->add_flag("--json", want_json, "JSON report");
    auto* c = a->add_flag("--csv", want_csv, "CSV table");
    j->excludes(c);
  };

  std::string job_path;
  auto* job_app = app.add_subcommand("job", "run a JSON job description");
  job_app->add_option("file", job_path, "job file")->required();
  job_app->add_option("--out", out_path, "write the report to a file");

  std::vector<OpEntry> entries;
  std::map<std::string, CLI::App*> subs;
  for (const auto& def : definitions()) {
    auto& sub = subs[def.sub];
    if (!sub) {
      sub = app.add_subcommand(def.sub);
      sub->require_subcommand(1);
    }
    OpEntry e;
    e.sub = def.sub;
    e.op = def.op;
    e.app = sub->add_subcommand(def.op, def.help);
    add_common(e.app);
    std::vector<OptSpec> specs;
    if (def.ring) specs.insert(specs.end(), kRingOptions.begin(), kRingOptions.end());
    if (def.group) specs.push_back(kGroup);
    if (def.prime) specs.push_back(kPrime);
    specs.insert(specs.end(), def.params.begin(), def.params.end());
    for (const auto& s : specs) {
      Bound b{s};
      const std::string name = std::string("--") + s.flag;
      if (s.kind == Kind::Flag || s.kind == Kind::FlagOff) {
        b.option = e.app->add_flag(name, *b.flag, s.help);
      } else {
        b.option = e.app->add_option(name, *b.value, s.help)->allow_extra_args(false);
      }
      e.options.push_back(std::move(b));
    }
    entries.push_back(std::move(e));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (job_app->parsed()) {
      Json job = parse_json_text(read_file(job_path, "job"), "job");
      return emit(dmodkit::run_job(job), out_path);
    }
    for (const auto& e : entries) {
      if (!e.app->parsed()) continue;
      Json job{{"subcommand", e.sub}, {"operation", e.op}, {"ring", Json::object()}, {"params", Json::object()}};
      for (const auto& b : e.options) {
        if (b.option->count() == 0) continue;
        Json v = converted(b);
        switch (b.spec.section) {
          case Section::Ring: job["ring"][b.spec.key] = v; break;
          case Section::Params: job["params"][b.spec.key] = v; break;
          case Section::Top: job[b.spec.key] = v; break;
        }
      }
      if (!seed_text.empty()) job["seed"] = integer_value(seed_text, "seed", false);
      if (want_json) job["output"]["format"] = "json";
      if (want_csv) job["output"]["format"] = "csv";
      return emit(dmodkit::run_job(job), out_path);
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
