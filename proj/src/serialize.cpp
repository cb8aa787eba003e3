#include "dmodkit/serialize.hpp"

#include <stdexcept>

namespace dmodkit {

Json rational_json(const Rational& q) { return to_string(q); }

Rational rational_from_json(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(Integer(std::to_string(j.get<long long>())));
  throw std::invalid_argument("expected a rational (string or integer), got " + j.dump());
}

namespace {

Monomial exps_from_json(const Json& j, std::size_t n, const char* what) {
  if (!j.is_array() || j.size() != n) {
    throw std::invalid_argument(std::string(what) + " must be an array of " + std::to_string(n) + " exponents");
  }
  Monomial m(n);
  for (std::size_t k = 0; k < n; ++k) {
    auto v = j[k].get<long long>();
    if (v < 0 || static_cast<std::uint64_t>(v) > kMaxExponent) throw std::invalid_argument("exponent out of range");
    m[k] = static_cast<Exponent>(v);
  }
  return m;
}

Json optional_count(const std::optional<std::uint64_t>& v) { return v ? Json(*v) : Json(nullptr); }

}  // namespace

Json poly_json(const QPoly& f) {
  Json out = Json::array();
  for (auto it = f.terms().rbegin(); it != f.terms().rend(); ++it) {
    out.push_back({{"coeff", rational_json(it->second)}, {"exps", it->first}});
  }
  return out;
}

QPoly poly_from_json(const Json& j, std::size_t nvars) {
  if (j.is_string()) return widen(parse_poly(j.get<std::string>(), nvars), nvars);
  if (!j.is_array()) throw std::invalid_argument("polynomial must be a string or a term array");
  QPoly f(nvars);
  for (const auto& t : j) f.add_term(exps_from_json(t.at("exps"), nvars, "exps"), rational_from_json(t.at("coeff")));
  return f;
}

Json op_json(const QWeyl& op) {
  Json out = Json::array();
  const std::size_t n = op.nvars();
  for (auto it = op.terms().rbegin(); it != op.terms().rend(); ++it) {
    const auto& k = it->first;
    out.push_back({{"coeff", rational_json(it->second)},
                   {"x", Monomial(k.begin(), k.begin() + static_cast<long>(n))},
                   {"d", Monomial(k.begin() + static_cast<long>(n), k.end())}});
  }
  return out;
}

Json op_json(const SWeyl& op) {
  Json out = Json::array();
  const std::size_t n = op.nvars();
  for (auto it = op.terms().rbegin(); it != op.terms().rend(); ++it) {
    const auto& k = it->first;
    out.push_back({{"coeff", to_string(it->second)},
                   {"x", Monomial(k.begin(), k.begin() + static_cast<long>(n))},
                   {"d", Monomial(k.begin() + static_cast<long>(n), k.end())}});
  }
  return out;
}

QWeyl op_from_json(const Json& j, std::size_t nvars) {
  if (j.is_string()) {
    QWeyl op = parse_weyl(j.get<std::string>(), nvars);
    if (op.nvars() != nvars) throw std::invalid_argument("operator uses more variables than declared");
    return op;
  }
  if (!j.is_array()) throw std::invalid_argument("operator must be a string or a term array");
  QWeyl op(nvars);
  for (const auto& t : j) {
    op.add_term(exps_from_json(t.at("x"), nvars, "x"), exps_from_json(t.at("d"), nvars, "d"),
                rational_from_json(t.at("coeff")));
  }
  return op;
}

RationalMatrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw std::invalid_argument("matrix must be a nonempty array of rows");
  const std::size_t n = j.size();
  std::vector<Rational> entries;
  for (const auto& row : j) {
    if (!row.is_array() || row.size() != n) throw std::invalid_argument("matrix must be square");
    for (const auto& x : row) entries.push_back(rational_from_json(x));
  }
  return RationalMatrix(n, entries);
}

Json matrix_json(const RationalMatrix& m) {
  Json out = Json::array();
  for (std::size_t i = 0; i < m.size(); ++i) {
    Json row = Json::array();
    for (std::size_t k = 0; k < m.size(); ++k) row.push_back(rational_json(m(i, k)));
    out.push_back(row);
  }
  return out;
}

FiniteMatrixGroup group_from_json(const Json& j, std::size_t max_order) {
  // "generators" is what group_json writes
  const Json& list = !j.is_object() ? j : j.contains("matrices") ? j.at("matrices") : j.at("generators");
  if (!list.is_array() || list.empty()) throw std::invalid_argument("group needs a nonempty matrix list");
  std::vector<RationalMatrix> gens;
  for (const auto& m : list) gens.push_back(matrix_from_json(m));
  auto g = group_closure(gens, max_order);
  g.name = j.is_object() && j.contains("name") ? j.at("name").get<std::string>() : "matrices";
  return g;
}

Json group_json(const FiniteMatrixGroup& g) {
  Json gens = Json::array();
  for (const auto& m : g.generators()) gens.push_back(matrix_json(m));
  return {{"name", g.name},
          {"dim", g.dim()},
          {"order", g.order()},
          {"generators", gens},
          {"pseudoreflections", pseudoreflections(g).size()}};
}

Presentation presentation_from_json(const Json& j) {
  if (j.is_string()) return named_presentation(j.get<std::string>());
  if (!j.is_object()) throw std::invalid_argument("ring must be a fixture name or an object");
  Presentation pr;
  pr.name = j.value("name", std::string("custom"));
  pr.p = j.at("p").get<std::uint32_t>();
  if (!is_prime(pr.p)) throw std::invalid_argument("ring.p: not a prime below 2^16");
  if (j.contains("vars")) {
    pr.vars = j.at("vars").get<std::vector<std::string>>();
    pr.n = pr.vars.size();
  } else {
    pr.n = j.at("n").get<std::size_t>();
    for (std::size_t k = 0; k < pr.n; ++k) pr.vars.push_back("x" + std::to_string(k + 1));
  }
  if (pr.n == 0) throw std::invalid_argument("ring: need at least one variable");
  if (j.contains("monomial") == j.contains("principal")) {
    throw std::invalid_argument("ring: give exactly one of \"monomial\" or \"principal\"");
  }
  if (j.contains("monomial")) {
    std::vector<Monomial> gens;
    for (const auto& g : j.at("monomial")) gens.push_back(exps_from_json(g, pr.n, "ring.monomial[]"));
    pr.monomial = MonomialIdeal(pr.n, gens);
  } else {
    pr.principal = parse_fp_poly(j.at("principal").get<std::string>(), pr.p, pr.n, pr.vars);
  }
  return pr;
}

std::string fp_poly_string(const FpPoly& f, const std::vector<std::string>& names) {
  if (f.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (auto it = f.terms().rbegin(); it != f.terms().rend(); ++it) {
    const auto& [m, c] = *it;
    std::string t;
    for (std::size_t j = 0; j < m.size(); ++j) {
      if (m[j] == 0) continue;
      if (!t.empty()) t += "*";
      t += j < names.size() ? names[j] : "x" + std::to_string(j + 1);
      if (m[j] > 1) t += "^" + std::to_string(m[j]);
    }
    if (!first) out += " + ";
    first = false;
    if (t.empty()) {
      out += std::to_string(c.value());
    } else {
      out += c.value() == 1 ? t : std::to_string(c.value()) + "*" + t;
    }
  }
  return out;
}

Json presentation_json(const Presentation& pres) {
  Json out{{"name", pres.name}, {"p", pres.p}, {"vars", pres.vars}};
  if (pres.monomial) {
    Json gens = Json::array();
    for (const auto& g : pres.monomial->gens()) gens.push_back(g);
    out["monomial"] = gens;
  }
  if (pres.principal) out["principal"] = fp_poly_string(*pres.principal, pres.vars);
  return out;
}

Json spec_json(const WeightedRingSpec& spec) {
  return {{"n", spec.n}, {"weights", spec.weights}, {"slope", rational_json(spec.slope)}};
}

Json dims_json(const DimSequence& seq) {
  return {{"dims", seq.dims}, {"provenance", seq.provenance == Provenance::Enumerated ? "enumerated" : "external"}};
}

Json estimate_json(const GrowthEstimate& est) {
  return {{"degree", rational_json(est.degree)},
          {"multiplicity", rational_json(est.multiplicity)},
          {"stable", est.stable},
          {"window", {est.window_begin, est.window_end}},
          {"period", est.period}};
}

Json bernstein_json(const BernsteinReport& rep) {
  Json out{{"algebra", estimate_json(rep.algebra)}, {"module", estimate_json(rep.module)}};
  out["inequality_holds"] = rep.inequality_holds ? Json(*rep.inequality_holds) : Json(nullptr);
  out["equality"] = rep.equality;
  out["simplicity_constant"] = optional_count(rep.simplicity_constant);
  out["multiplicity_bound_holds"] = rep.multiplicity_bound_holds ? Json(*rep.multiplicity_bound_holds) : Json(nullptr);
  return out;
}

Json growth_json(const GrowthReport& rep) {
  return {{"dims", rep.sequence.dims},
          {"estimate", estimate_json(rep.estimate)},
          {"ring_dimension", rep.ring_dimension},
          {"slope_level", rep.slope_level},
          {"order_constant", rep.order_constant}};
}

Json bs_json(const BSResult& res) {
  Json out{{"found", res.found}};
  if (res.found) {
    out["b"] = to_string(res.b);
    out["b_factored"] = factored_string(res.b);
    out["operator"] = to_string(res.delta);
  }
  out["level"] = res.level;
  out["sdeg"] = res.sdeg;
  out["unknowns"] = res.unknowns;
  out["homogeneous_restricted"] = res.homogeneous_restricted;
  out["invariant_search"] = res.invariant_search;
  out["checked_points"] = res.checked_points;
  out["verified"] = res.verified;
  out["symbolic_verified"] = res.symbolic_verified;
  out["minimal_within_search_space"] = res.found;
  return out;
}

Json differential_power_json(const DifferentialPowerReport& rep) {
  return {{"i", rep.i},
          {"quotient_dim", rep.quotient_dim},
          {"pairing_rank", rep.pairing_rank},
          {"quotient_dims_by_degree", rep.quotient_dims},
          {"pairing_ranks_by_degree", rep.pairing_ranks},
          {"nondegenerate", rep.nondegenerate},
          {"pseudoreflection_free", rep.pseudoreflection_free}};
}

Json signature_json(const SignatureEstimate& est) {
  Json vals = Json::array();
  for (const auto& v : est.values) vals.push_back(rational_json(v));
  return {{"dimension", est.dimension},
          {"quotient_dims", est.quotient_dims},
          {"values", vals},
          {"trailing_max", rational_json(est.trailing_max)},
          {"fitted", est.fitted ? rational_json(*est.fitted) : Json(nullptr)}};
}

Json reduction_json(const ReductionCertificate& cert) {
  Json steps = Json::array();
  for (const auto& s : cert.steps) {
    const std::string var = std::to_string(s.var + 1);
    steps.push_back(s.kind == ReductionStep::Kind::WithD ? "d" + var : "x" + var);
  }
  return {{"start", to_string(cert.start)},
          {"steps", steps},
          {"unit", rational_json(cert.unit)},
          {"success", cert.success}};
}

Json membership_json(const MembershipCertificate& cert) {
  Json terms = Json::array();
  for (const auto& [l, r] : cert.terms) terms.push_back({{"left", to_string(l)}, {"right", to_string(r)}});
  return {{"delta", to_string(cert.delta)}, {"i", cert.i}, {"C", cert.c}, {"terms", terms}};
}

Json min_constant_json(const std::vector<MinConstantRow>& rows) {
  Json out = Json::array();
  for (const auto& r : rows) {
    Json per = Json::array();
    for (const auto& c : r.per_basis) per.push_back(optional_count(c));
    out.push_back({{"i", r.i},
                   {"C", optional_count(r.c)},
                   {"basis_size", r.basis_size},
                   {"per_basis", per},
                   {"verified", r.verified}});
  }
  return out;
}

Json splitting_json(const SplittingReport& rep) {
  Json ideals = Json::array();
  const auto& names = rep.presentation.vars;
  for (const auto& I : rep.ideals) {
    Json gens = Json::array();
    for (const auto& g : I.generators) gens.push_back(fp_poly_string(g, names));
    ideals.push_back({{"e", I.e},
                      {"q", I.q},
                      {"generators", gens},
                      {"guarantee_degree", I.lifted.guarantee()},
                      {"unit", I.lifted.is_unit()}});
  }
  return {{"ring", presentation_json(rep.presentation)},
          {"ideals", ideals},
          {"f_pure", rep.f_pure},
          {"chain_verified", rep.chain_verified},
          {"strictly_shrinking", rep.strictly_shrinking},
          {"witness", rep.witness ? Json(*rep.witness) : Json(nullptr)},
          {"stabilized_nonzero", rep.stabilized_nonzero},
          {"verdict", rep.verdict}};
}

Json ffrt_json(const VeroneseFFRT& res) {
  Json classes = Json::object();
  for (const auto& [j, m] : res.multiplicities) classes[std::to_string(j)] = m;
  return {{"n", res.n},
          {"r", res.r},
          {"p", res.p},
          {"e", res.e},
          {"classes", classes},
          {"total", res.total},
          {"coprime", res.coprime},
          {"class_set_stable", res.class_set_stable}};
}

Json localized_json(const LocalizedElement& v) {
  return {{"numerator", to_string(v.numerator)}, {"exponent", v.exponent}};
}

Json fs_json(const FsElement& u) {
  Json coeffs = Json::array();
  for (const auto& c : u.coeffs) coeffs.push_back(to_string(c));
  return {{"coeffs", coeffs}, {"exponent", u.exponent}};
}

}  // namespace dmodkit
