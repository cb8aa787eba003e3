#include "dmodkit/jobs.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <sstream>

namespace dmodkit {

namespace {

// ---------------------------------------------------------------------------
// parameter access with field paths

const Json* lookup(const Json& obj, const std::string& key) {
  auto it = obj.find(key);
  return it == obj.end() || it->is_null() ? nullptr : &*it;
}

std::uint64_t uint_param(const Json& params, const std::string& key, std::optional<std::uint64_t> def = std::nullopt) {
  const Json* v = lookup(params, key);
  if (!v) {
    if (def) return *def;
    throw UsageError("params." + key, "required");
  }
  if (!v->is_number_integer() || v->get<long long>() < 0) {
    throw UsageError("params." + key, "expected a nonnegative integer, got " + v->dump());
  }
  return v->get<std::uint64_t>();
}

std::int64_t int_param(const Json& params, const std::string& key, std::optional<std::int64_t> def = std::nullopt) {
  const Json* v = lookup(params, key);
  if (!v) {
    if (def) return *def;
    throw UsageError("params." + key, "required");
  }
  if (!v->is_number_integer()) throw UsageError("params." + key, "expected an integer, got " + v->dump());
  return v->get<std::int64_t>();
}

Rational rational_param(const Json& params, const std::string& key, std::optional<Rational> def = std::nullopt) {
  const Json* v = lookup(params, key);
  if (!v) {
    if (def) return *def;
    throw UsageError("params." + key, "required");
  }
  try {
    return rational_from_json(*v);
  } catch (const std::exception& e) {
    throw UsageError("params." + key, e.what());
  }
}

std::string string_param(const Json& params, const std::string& key, std::optional<std::string> def = std::nullopt) {
  const Json* v = lookup(params, key);
  if (!v) {
    if (def) return *def;
    throw UsageError("params." + key, "required");
  }
  if (!v->is_string()) throw UsageError("params." + key, "expected a string, got " + v->dump());
  return v->get<std::string>();
}

bool bool_param(const Json& params, const std::string& key, bool def) {
  const Json* v = lookup(params, key);
  if (!v) return def;
  if (!v->is_boolean()) throw UsageError("params." + key, "expected true or false, got " + v->dump());
  return v->get<bool>();
}

QPoly poly_param(const Json& params, const std::string& key, std::size_t n) {
  const Json* v = lookup(params, key);
  if (!v) throw UsageError("params." + key, "required");
  try {
    QPoly f = poly_from_json(*v, n);
    if (f.nvars() != n) throw std::invalid_argument("uses more than " + std::to_string(n) + " variables");
    return f;
  } catch (const UsageError&) {
    throw;
  } catch (const std::exception& e) {
    throw UsageError("params." + key, e.what());
  }
}

QWeyl op_param(const Json& params, const std::string& key, std::size_t n) {
  const Json* v = lookup(params, key);
  if (!v) throw UsageError("params." + key, "required");
  try {
    return op_from_json(*v, n);
  } catch (const std::exception& e) {
    throw UsageError("params." + key, e.what());
  }
}

std::vector<QPoly> poly_list_param(const Json& params, const std::string& key, std::size_t n) {
  const Json* v = lookup(params, key);
  if (!v) throw UsageError("params." + key, "required");
  if (!v->is_array() || v->empty()) throw UsageError("params." + key, "expected a nonempty list of polynomials");
  std::vector<QPoly> out;
  for (std::size_t k = 0; k < v->size(); ++k) {
    try {
      out.push_back(poly_from_json((*v)[k], n));
    } catch (const std::exception& e) {
      throw UsageError("params." + key + "[" + std::to_string(k) + "]", e.what());
    }
  }
  return out;
}

std::vector<std::uint64_t> dims_param(const Json& params, const std::string& key) {
  const Json* v = lookup(params, key);
  if (!v) throw UsageError("params." + key, "required");
  if (!v->is_array()) throw UsageError("params." + key, "expected a list of dimensions");
  std::vector<std::uint64_t> out;
  for (std::size_t k = 0; k < v->size(); ++k) {
    const auto& x = (*v)[k];
    if (!x.is_number_integer() || x.get<long long>() < 0) {
      throw UsageError("params." + key + "[" + std::to_string(k) + "]", "expected a nonnegative integer");
    }
    out.push_back(x.get<std::uint64_t>());
  }
  return out;
}

// ---------------------------------------------------------------------------
// seeded generators (modular reduction keeps streams identical across
// standard libraries)

std::uint64_t below(std::mt19937_64& rng, std::uint64_t k) { return rng() % k; }

Rational small_coeff(std::mt19937_64& rng) {
  const std::int64_t a = static_cast<std::int64_t>(below(rng, 7)) - 3;
  Rational r(a == 0 ? 1 : a, static_cast<unsigned long>(1 + below(rng, 2)));
  r.canonicalize();
  return r;
}

Monomial small_monomial(std::size_t n, std::uint64_t maxdeg, std::mt19937_64& rng) {
  Monomial m(n, 0);
  for (auto budget = below(rng, maxdeg + 1); budget > 0; --budget) ++m[below(rng, n)];
  return m;
}

QPoly seeded_poly(std::size_t n, std::uint64_t maxdeg, std::size_t terms, std::mt19937_64& rng) {
  QPoly f(n);
  while (f.is_zero()) {
    for (std::size_t t = 0; t < terms; ++t) f.add_term(small_monomial(n, maxdeg, rng), small_coeff(rng));
  }
  return f;
}

QWeyl seeded_op(std::size_t n, std::uint64_t maxdeg, std::uint64_t maxord, std::size_t terms, std::mt19937_64& rng) {
  QWeyl op(n);
  while (op.is_zero()) {
    for (std::size_t t = 0; t < terms; ++t) {
      op.add_term(small_monomial(n, maxdeg, rng), small_monomial(n, maxord, rng), small_coeff(rng));
    }
  }
  return op;
}

SWeyl s_linear(const QWeyl& a, const QWeyl& b) {
  SWeyl out = lift(a);
  SWeyl sb(b.nvars());
  for (const auto& [k, c] : b.terms()) sb.add_term(k, SPoly::s() * c);
  return out + sb;
}

// probes of R_f used for identities with negative powers
std::vector<LocalizedElement> localized_probes(const Localization& loc) {
  std::vector<LocalizedElement> probes = {loc.element(QPoly::constant(loc.nvars(), 1)),
                                          loc.element(QPoly::constant(loc.nvars(), 1), 1),
                                          loc.element(QPoly::constant(loc.nvars(), 1), 2)};
  for (std::size_t j = 0; j < loc.nvars(); ++j) {
    probes.push_back(loc.element(QPoly::variable(loc.nvars(), j, Rational(1)), 1));
  }
  return probes;
}

// ---------------------------------------------------------------------------
// dispatch table

struct Context {
  const Json& job;
  const Json& params;
  WeightedRingSpec spec;
  std::optional<FiniteMatrixGroup> group;
  std::uint32_t characteristic = 0;
  std::uint64_t seed = 1;

  const FiniteMatrixGroup& group_or_trivial() {
    if (!group) group = trivial_group(spec.n);
    return *group;
  }
  std::uint32_t prime() const {
    if (characteristic == 0) throw UsageError("ring.characteristic", "a prime characteristic is required");
    return characteristic;
  }
};

struct Outcome {
  Json result;
  bool verified = true;
  // header and rows for CSV output; empty when CSV is not offered
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

struct Operation {
  std::function<Outcome(Context&)> run;
  bool csv = false;
  bool csv_default = false;
  bool charp = false;
};

std::string str(std::uint64_t v) { return std::to_string(v); }

Outcome dims_outcome(const std::vector<std::uint64_t>& dims, Json result) {
  Outcome out;
  out.result = std::move(result);
  out.columns = {"i", "dim"};
  for (std::size_t i = 0; i < dims.size(); ++i) out.rows.push_back({str(i), str(dims[i])});
  return out;
}

// --- weyl -------------------------------------------------------------------

Outcome weyl_mul(Context& c) {
  auto a = op_param(c.params, "a", c.spec.n), b = op_param(c.params, "b", c.spec.n);
  QWeyl prod = a * b;
  Outcome out;
  // composition check on the monomials of degree <= 3
  for (std::uint64_t d = 0; d <= 3; ++d) {
    for (const auto& m : monomials_of_degree(c.spec.n, std::vector<std::uint32_t>(c.spec.n, 1), d)) {
      if (apply(prod, m) != apply(a, apply(b, m))) out.verified = false;
    }
  }
  out.result = {{"product", to_string(prod)}, {"terms", op_json(prod)}};
  return out;
}

Outcome weyl_apply(Context& c) {
  auto op = op_param(c.params, "op", c.spec.n);
  auto f = poly_param(c.params, "f", c.spec.n);
  Outcome out;
  out.result = {{"result", to_string(apply(op, f))}};
  return out;
}

Outcome weyl_bracket(Context& c) {
  auto a = op_param(c.params, "a", c.spec.n), b = op_param(c.params, "b", c.spec.n);
  auto br = commutator(a, b);
  Outcome out;
  out.result = {{"bracket", to_string(br)}, {"terms", op_json(br)}};
  return out;
}

Outcome weyl_chain(Context& c) {
  auto op = op_param(c.params, "op", c.spec.n);
  auto f = poly_param(c.params, "f", c.spec.n);
  const auto seq = bracket_sequence(op, f);
  Json chain = Json::array();
  for (const auto& d : seq) chain.push_back(to_string(d));
  Outcome out;
  out.result = {{"chain", chain}, {"length", seq.size()}};
  if (lookup(c.params, "i")) {
    const auto i = uint_param(c.params, "i");
    out.result["i"] = i;
    out.result["bracket"] = to_string(bracket_chain(op, f, i));
  }
  return out;
}

Outcome weyl_commute(Context& c) {
  auto op = op_param(c.params, "op", c.spec.n);
  auto f = poly_param(c.params, "f", c.spec.n);
  if (f.is_zero()) throw UsageError("params.f", "must be nonzero");
  const auto j = int_param(c.params, "j");
  Localization loc(f);
  const bool holds = verify_commute_identity(op, f, j, j < 0 ? localized_probes(loc) : std::vector<LocalizedElement>{});
  Outcome out;
  out.result = {{"holds", holds}, {"route", j >= 0 ? "operator identity" : "localized probes"}};
  out.verified = holds;
  return out;
}

Outcome weyl_suite(Context& c) {
  const auto samples = uint_param(c.params, "samples", 500);
  const auto maxord = uint_param(c.params, "maxord", 3);
  const auto maxdeg = uint_param(c.params, "maxdeg", 3);
  const auto jmin = int_param(c.params, "jmin", -4), jmax = int_param(c.params, "jmax", 6);
  if (jmin > jmax) throw UsageError("params.jmin", "must not exceed params.jmax");
  std::mt19937_64 rng(c.seed);
  std::size_t passed = 0, negative = 0;
  Json counterexample = nullptr;
  for (std::uint64_t t = 0; t < samples; ++t) {
    const std::size_t n = c.spec.n;
    QWeyl delta = seeded_op(n, maxdeg, maxord, 3, rng);
    QPoly f = seeded_poly(n, maxdeg, 3, rng);
    const std::int64_t j = jmin + static_cast<std::int64_t>(below(rng, static_cast<std::uint64_t>(jmax - jmin + 1)));
    bool ok;
    if (j < 0) {
      ++negative;
      Localization loc(f);
      ok = verify_commute_identity(delta, f, j, localized_probes(loc));
    } else {
      ok = verify_commute_identity(delta, f, j, {});
    }
    if (ok) {
      ++passed;
    } else if (counterexample.is_null()) {
      counterexample = {{"delta", to_string(delta)}, {"f", to_string(f)}, {"j", j}};
    }
  }
  Outcome out;
  out.result = {{"samples", samples},
                {"passed", passed},
                {"negative_powers", negative},
                {"counterexample", counterexample}};
  out.verified = passed == samples;
  return out;
}

// --- bf ---------------------------------------------------------------------

Outcome bf_dim_op(Context& c) {
  const auto imax = uint_param(c.params, "imax");
  const auto dims = bf_dims(c.spec, imax);
  auto out = dims_outcome(dims, {{"dims", dims}});
  // enumeration cross-check on the small levels
  for (std::size_t i = 0; i <= std::min<std::size_t>(imax, 12); ++i) {
    if (bf_basis(c.spec, i).pairs.size() != dims[i]) out.verified = false;
  }
  return out;
}

Outcome bf_basis_op(Context& c) {
  const auto i = uint_param(c.params, "i");
  Json ops = Json::array();
  for (const auto& op : bf_operators(c.spec, i)) {
    ops.push_back({{"operator", to_string(op)}, {"level", rational_json(c.spec.level(op.terms().begin()->first))}});
  }
  Outcome out;
  out.result = {{"i", i}, {"dim", ops.size()}, {"basis", ops}};
  out.verified = ops.size() == bf_dim(c.spec, i);
  return out;
}

Outcome bf_level_op(Context& c) {
  auto op = op_param(c.params, "op", c.spec.n);
  Outcome out;
  out.result = {{"operator", to_string(op)}, {"level", bf_level(c.spec, op)}};
  return out;
}

Outcome bf_estimate_op(Context& c) {
  const auto imax = uint_param(c.params, "imax", 200);
  const auto window = uint_param(c.params, "window", 20);
  DimSequence seq{bf_dims(c.spec, imax)};
  GrowthEstimate est;
  try {
    est = dim_estimate(seq, window);
  } catch (const std::invalid_argument& e) {
    throw UsageError("params.window", e.what());
  }
  Outcome out;
  out.result = {{"imax", imax}, {"estimate", estimate_json(est)}};
  out.verified = est.stable;
  return out;
}

Outcome bf_slope_op(Context& c) {
  const auto b = rational_param(c.params, "slope_b");
  const auto window = uint_param(c.params, "window", 12);
  WeightedRingSpec other;
  try {
    other = WeightedRingSpec(c.spec.n, c.spec.weights, b);
  } catch (const std::exception& e) {
    throw UsageError("params.slope_b", e.what());
  }
  if (b < c.spec.slope) throw UsageError("params.slope_b", "must be at least ring.slope");
  auto w = slope_witness(c.spec, other, window);
  Outcome out;
  out.result = {{"C", w.c},
                {"window", w.window},
                {"certified", w.certified},
                {"failing_level", w.failing_level ? Json(*w.failing_level) : Json(nullptr)}};
  out.verified = w.certified;
  return out;
}

Outcome bf_commutativity_op(Context& c) {
  const auto i = uint_param(c.params, "i", 3), j = uint_param(c.params, "j", 3);
  const auto samples = uint_param(c.params, "samples", 500);
  if (!c.spec.integral_slope()) throw UsageError("ring.slope", "commutativity check needs an integral slope");
  auto rep = gr_commutativity_check(c.spec, i, j, samples, c.seed);
  Outcome out;
  out.result = {{"i", i}, {"j", j}, {"samples", rep.samples}, {"passed", rep.passed}};
  if (rep.counterexample) {
    out.result["counterexample"] = {to_string(rep.counterexample->first), to_string(rep.counterexample->second)};
  }
  out.verified = rep.ok();
  return out;
}

Outcome bf_order_op(Context& c) {
  auto d = eps_and_order_domination(c.spec, uint_param(c.params, "window", 12));
  Outcome out;
  out.result = {{"epsilon", rational_json(d.epsilon)}, {"C", d.c}, {"window", d.window}, {"verified", d.verified}};
  out.verified = d.verified;
  return out;
}

// --- filtration -------------------------------------------------------------

Outcome filtration_estimate_op(Context& c) {
  DimSequence seq{dims_param(c.params, "dims"), Provenance::External};
  GrowthEstimate est;
  try {
    est = dim_estimate(seq, uint_param(c.params, "window", 4));
  } catch (const std::invalid_argument& e) {
    throw UsageError("params.window", e.what());
  }
  Outcome out;
  out.result = {{"estimate", estimate_json(est)}};
  return out;
}

Outcome filtration_reindex_op(Context& c) {
  DimSequence seq{dims_param(c.params, "dims"), Provenance::External};
  const auto s = rational_param(c.params, "s");
  if (s < 1) throw UsageError("params.s", "must be at least 1");
  const auto imax = uint_param(c.params, "imax");
  DimSequence re;
  try {
    re = reindex_sequence(seq, s, imax);
  } catch (const std::exception& e) {
    throw UsageError("params.imax", e.what());
  }
  return dims_outcome(re.dims, {{"s", rational_json(s)}, {"dims", re.dims}});
}

GrowthModule module_param(const Json& params) {
  const auto m = string_param(params, "module", std::string("ring"));
  if (m == "ring") return GrowthModule::Ring;
  if (m == "localized") return GrowthModule::Localized;
  throw UsageError("params.module", "expected \"ring\" or \"localized\", got \"" + m + "\"");
}

GrowthReport growth_for(Context& c, GrowthModule module, std::size_t imax, std::size_t window) {
  std::optional<QPoly> f;
  if (module == GrowthModule::Localized) {
    f = poly_param(c.params, "f", c.spec.n);
    if (f->is_zero()) throw UsageError("params.f", "must be nonzero");
  }
  const FiniteMatrixGroup* g = c.group ? &*c.group : nullptr;
  if (g && f && !is_invariant(*g, *f)) throw UsageError("params.f", "must be invariant under the group");
  return holonomic_growth_report(module, c.spec, f ? &*f : nullptr, g, imax, window);
}

Outcome growth_op(Context& c) {
  const auto module = module_param(c.params);
  auto rep = growth_for(c, module, uint_param(c.params, "imax", 12), uint_param(c.params, "window", 4));
  auto out = dims_outcome(rep.sequence.dims, growth_json(rep));
  out.verified = rep.estimate.stable;
  return out;
}

Outcome filtration_bernstein_op(Context& c) {
  const auto module = module_param(c.params);
  const auto imax = uint_param(c.params, "imax", 12);
  const auto window = uint_param(c.params, "window", 4);
  auto rep = growth_for(c, module, imax, window);
  std::optional<std::uint64_t> simp;
  if (lookup(c.params, "C")) simp = uint_param(c.params, "C");
  DimSequence algebra{bf_dims(c.spec, imax)};
  auto br = bernstein_check(algebra, rep.sequence, window, simp);
  Outcome out;
  out.result = {{"algebra_dims", algebra.dims}, {"module", growth_json(rep)}, {"check", bernstein_json(br)}};
  out.verified = br.inequality_holds.value_or(false);
  return out;
}

Outcome filtration_length_bound_op(Context& c) {
  const auto eg = rational_param(c.params, "e_module"), ef = rational_param(c.params, "e_algebra");
  const auto cc = uint_param(c.params, "C");
  const auto theta = rational_param(c.params, "theta");
  if (ef <= 0) throw UsageError("params.e_algebra", "must be positive");
  if (theta < 0 || theta.get_den() != 1) throw UsageError("params.theta", "must be a nonnegative integer");
  Outcome out;
  out.result = {{"bound", rational_json(length_bound(eg, ef, cc, theta))}};
  return out;
}

// --- invariants -------------------------------------------------------------

Outcome invariants_closure_op(Context& c) {
  const auto& g = c.group_or_trivial();
  Outcome out;
  out.result = group_json(g);
  out.result["pseudoreflection_free"] = is_pseudoreflection_free(g);
  out.result["preserves_grading"] = preserves_grading(g, c.spec.weights);
  return out;
}

Outcome invariants_basis_op(Context& c) {
  const auto i = uint_param(c.params, "i");
  auto lvl = invariant_bf_basis(c.group_or_trivial(), c.spec, i);
  Json basis = Json::array();
  for (const auto& op : lvl.basis) basis.push_back(to_string(op));
  Outcome out;
  out.result = {{"i", i}, {"dim", lvl.basis.size()}, {"trace_dimension", rational_json(lvl.trace_dimension)},
                {"basis", basis}};
  out.verified = Rational(static_cast<unsigned long>(lvl.basis.size())) == lvl.trace_dimension;
  return out;
}

Outcome invariants_diffpow_op(Context& c) {
  auto rep = differential_power(c.group_or_trivial(), c.spec, uint_param(c.params, "i"));
  Outcome out;
  out.result = differential_power_json(rep);
  out.verified = rep.nondegenerate;
  return out;
}

Outcome invariants_signature_op(Context& c) {
  const auto imax = uint_param(c.params, "imax", 12);
  if (imax == 0) throw UsageError("params.imax", "must be at least 1");
  auto est = diff_signature_estimate(c.group_or_trivial(), c.spec, imax, uint_param(c.params, "window", 4));
  Outcome out;
  out.result = signature_json(est);
  out.result["pseudoreflection_free"] = is_pseudoreflection_free(c.group_or_trivial());
  bool positive = true;
  for (const auto& v : est.values) positive = positive && v > 0;
  out.result["positive"] = positive;
  out.verified = positive;
  out.columns = {"i", "quotient_dim", "value"};
  for (std::size_t i = 1; i < est.quotient_dims.size(); ++i) {
    out.rows.push_back({str(i), str(est.quotient_dims[i]), to_string(est.values[i - 1])});
  }
  return out;
}

Outcome invariants_reynolds_op(Context& c) {
  const auto& g = c.group_or_trivial();
  Outcome out;
  if (lookup(c.params, "op")) {
    out.result = {{"operator", to_string(reynolds_op(g, op_param(c.params, "op", c.spec.n)))}};
  } else {
    out.result = {{"polynomial", to_string(reynolds_poly(g, poly_param(c.params, "f", c.spec.n)))}};
  }
  return out;
}

Outcome invariants_summand_op(Context& c) {
  const auto& g = c.group_or_trivial();
  const auto level = uint_param(c.params, "level", 3);
  const auto samples = uint_param(c.params, "samples", 40);
  std::vector<QPoly> probes;
  if (lookup(c.params, "probes")) {
    probes = poly_list_param(c.params, "probes", c.spec.n);
    for (std::size_t k = 0; k < probes.size(); ++k) {
      if (!is_invariant(g, probes[k])) throw UsageError("params.probes[" + str(k) + "]", "must be invariant");
    }
  } else {
    for (std::uint64_t d = 0; d <= 4; ++d) {
      for (auto& f : invariant_polys(g, c.spec.weights, d)) probes.push_back(std::move(f));
    }
  }
  auto rep = summand_check(g, c.spec, probes, level, samples, c.seed);
  Outcome out;
  out.result = {{"checks", rep.checks}, {"passed", rep.passed}};
  out.verified = rep.ok();
  return out;
}

// --- simplicity -------------------------------------------------------------

Outcome simplicity_reduce_op(Context& c) {
  auto op = op_param(c.params, "op", c.spec.n);
  if (op.is_zero()) throw UsageError("params.op", "must be nonzero");
  auto cert = reduce_to_unit(op);
  Outcome out;
  out.result = reduction_json(cert);
  out.verified = cert.success && verify_reduction(cert);
  return out;
}

Outcome simplicity_certify_op(Context& c) {
  auto op = op_param(c.params, "op", c.spec.n);
  if (op.is_zero()) throw UsageError("params.op", "must be nonzero");
  const auto i = uint_param(c.params, "i");
  const auto cmax = uint_param(c.params, "C", 5);
  const FiniteMatrixGroup* g = c.group ? &*c.group : nullptr;
  if (g && !is_invariant(*g, op)) throw UsageError("params.op", "must be invariant under the group");
  if (!bf_member(c.spec, op, i)) throw UsageError("params.op", "does not lie in B_" + str(i));
  auto cert = membership_certificate(c.spec, op, i, cmax, g);
  Outcome out;
  out.result = {{"found", cert.has_value()}};
  if (cert) {
    out.result["certificate"] = membership_json(*cert);
    out.verified = verify_membership(c.spec, *cert, g);
    out.result["replayed"] = out.verified;
  }
  return out;
}

Outcome simplicity_table_op(Context& c) {
  const auto imax = uint_param(c.params, "imax", 6);
  const auto cmax = uint_param(c.params, "cmax", 5);
  auto rows = min_constant_table(c.group_or_trivial(), c.spec, imax, cmax);
  Outcome out;
  out.result = {{"rows", min_constant_json(rows)}};
  out.columns = {"i", "C", "basis_size", "verified"};
  for (const auto& r : rows) {
    if (r.c && !r.verified) out.verified = false;
    out.rows.push_back({str(r.i), r.c ? str(*r.c) : "none", str(r.basis_size), r.verified ? "true" : "false"});
  }
  return out;
}

Outcome simplicity_sweep_op(Context& c) {
  const auto imax = uint_param(c.params, "imax", 6);
  Json levels = Json::array();
  bool all = true;
  for (std::size_t i = 0; i <= imax; ++i) {
    std::size_t reduced = 0, certified = 0, total = 0;
    std::uint64_t cmax = 0;
    for (const auto& op : bf_operators(c.spec, i)) {
      ++total;
      auto cert = reduce_to_unit(op);
      if (!cert.success || !verify_reduction(cert)) continue;
      ++reduced;
      // a monomial of level i reduces through factors of level <= i
      auto mc = membership_from_reduction(cert, i, i == 0 ? 0 : 1);
      if (verify_membership(c.spec, mc)) ++certified;
      cmax = std::max(cmax, mc.c);
    }
    all = all && reduced == total && certified == total;
    levels.push_back({{"i", i}, {"basis_size", total}, {"reduced", reduced}, {"certified", certified}, {"C", cmax}});
  }
  Outcome out;
  out.result = {{"levels", levels}};
  out.verified = all;
  return out;
}

// --- bs ---------------------------------------------------------------------

Outcome bs_solve_op(Context& c) {
  auto f = poly_param(c.params, "f", c.spec.n);
  if (f.is_zero()) throw UsageError("params.f", "must be nonzero");
  BSOptions opts;
  opts.level = uint_param(c.params, "level", 4);
  opts.sdeg = uint_param(c.params, "sdeg", 2);
  opts.bdeg = uint_param(c.params, "bdeg", 4);
  opts.homogeneous_restriction = bool_param(c.params, "homogeneous", true);
  BSResult res;
  if (c.group) {
    if (!is_invariant(*c.group, f)) throw UsageError("params.f", "must be invariant under the group");
    res = bs_solve(f, c.spec, *c.group, opts);
  } else {
    res = bs_solve(f, c.spec, opts);
  }
  Outcome out;
  out.result = bs_json(res);
  if (res.found) {
    out.result["operator_terms"] = op_json(res.delta);
    out.verified = res.verified && res.symbolic_verified;
  }
  return out;
}

Outcome bs_verify_op(Context& c) {
  auto f = poly_param(c.params, "f", c.spec.n);
  const Json* slices = lookup(c.params, "op_slices");
  if (!slices || !slices->is_array() || slices->empty()) {
    throw UsageError("params.op_slices", "expected a list of operators (coefficients of s^0, s^1, ..)");
  }
  std::vector<QWeyl> parts;
  for (std::size_t k = 0; k < slices->size(); ++k) {
    try {
      parts.push_back(op_from_json((*slices)[k], c.spec.n));
    } catch (const std::exception& e) {
      throw UsageError("params.op_slices[" + str(k) + "]", e.what());
    }
  }
  SPoly b;
  try {
    b = parse_spoly(string_param(c.params, "b"));
  } catch (const UsageError&) {
    throw;
  } catch (const std::exception& e) {
    throw UsageError("params.b", e.what());
  }
  const auto tmax = int_param(c.params, "tmax", 6);
  const bool ok = bs_verify(f, from_s_slices(parts, c.spec.n), b, tmax);
  Outcome out;
  out.result = {{"holds", ok}, {"tmax", tmax}};
  out.verified = ok;
  return out;
}

// --- dmod -------------------------------------------------------------------

Localization localization_param(Context& c) {
  auto f = poly_param(c.params, "f", c.spec.n);
  if (f.is_zero()) throw UsageError("params.f", "must be nonzero");
  return Localization(f);
}

std::uint32_t exponent_param(const Json& params, const std::string& key) {
  const auto t = uint_param(params, key, 0);
  if (t > 64) throw UsageError("params." + key, "denominator exponent above 64");
  return static_cast<std::uint32_t>(t);
}

Outcome dmod_act_op(Context& c) {
  auto loc = localization_param(c);
  auto op = op_param(c.params, "op", c.spec.n);
  auto v = loc.element(poly_param(c.params, "num", c.spec.n), exponent_param(c.params, "t"));
  auto a = loc.normalize(loc.act(op, v));
  auto b = loc.act_closed_form(op, v);
  Outcome out;
  out.result = {{"result", localized_json(a)}};
  out.verified = loc.equal(a, b);
  return out;
}

Outcome dmod_theta_op(Context& c) {
  auto loc = localization_param(c);
  auto op = op_param(c.params, "op", c.spec.n);
  auto th = loc.theta_hom(op);
  Outcome out;
  out.result = {{"numerator", to_string(th.numerator)}, {"f_power", th.fpow}};
  // the image acts on f^s as the operator itself
  auto u = loc.fs_element({QPoly::constant(c.spec.n, 1)});
  out.verified = loc.fs_equal(loc.theta_act(th, u), loc.fs_act(lift(op), u));
  return out;
}

FsElement fs_param(Context& c, const Localization& loc) {
  return loc.fs_element(poly_list_param(c.params, "coeffs", c.spec.n), exponent_param(c.params, "t"));
}

Outcome dmod_fs_op(Context& c) {
  auto loc = localization_param(c);
  auto op = op_param(c.params, "op", c.spec.n);
  auto u = fs_param(c, loc);
  auto r = loc.fs_normalize(loc.fs_act(lift(op), u));
  Outcome out;
  out.result = {{"result", fs_json(r)}};
  out.verified = loc.fs_equal(r, loc.theta_act(loc.theta_hom(op), u));
  return out;
}

Outcome dmod_specialize_op(Context& c) {
  auto loc = localization_param(c);
  auto u = fs_param(c, loc);
  const auto at = int_param(c.params, "at");
  Outcome out;
  out.result = {{"at", at}, {"result", localized_json(loc.normalize(loc.specialize(u, at)))}};
  return out;
}

Outcome dmod_suite_op(Context& c) {
  const auto samples = uint_param(c.params, "samples", 100);
  const auto tmin = int_param(c.params, "tmin", -3), tmax = int_param(c.params, "tmax", 5);
  if (tmin > tmax) throw UsageError("params.tmin", "must not exceed params.tmax");
  std::mt19937_64 rng(c.seed);
  const std::size_t n = c.spec.n;
  std::size_t mult_ok = 0, square_ok = 0, points = 0;
  for (std::uint64_t t = 0; t < samples; ++t) {
    Localization loc(seeded_poly(n, 2, 2, rng));
    auto a = seeded_op(n, 2, 2, 2, rng), b = seeded_op(n, 2, 2, 2, rng);
    if (loc.theta_equal(loc.theta_hom(a * b), loc.theta_mul(loc.theta_hom(a), loc.theta_hom(b)))) ++mult_ok;
  }
  for (std::uint64_t t = 0; t < samples; ++t) {
    Localization loc(seeded_poly(n, 2, 2, rng));
    SWeyl delta = s_linear(seeded_op(n, 2, 2, 2, rng), seeded_op(n, 2, 2, 2, rng));
    auto u = loc.fs_element({seeded_poly(n, 2, 2, rng), seeded_poly(n, 2, 2, rng)},
                            static_cast<std::uint32_t>(below(rng, 2)));
    auto image = loc.fs_act(delta, u);
    bool ok = true;
    for (std::int64_t s = tmin; s <= tmax; ++s) {
      ++points;
      ok = ok && loc.equal(loc.specialize(image, s), loc.act(specialize(delta, s), loc.specialize(u, s)));
    }
    if (ok) ++square_ok;
  }
  Outcome out;
  out.result = {{"samples", samples},
                {"multiplicative", mult_ok},
                {"specialization_square", square_ok},
                {"specialized_points", points}};
  out.verified = mult_ok == samples && square_ok == samples;
  return out;
}

// --- charp ------------------------------------------------------------------

Presentation ring_param(const Json& params) {
  const Json* v = lookup(params, "ring");
  if (!v) throw UsageError("params.ring", "required");
  try {
    return presentation_from_json(*v);
  } catch (const std::exception& e) {
    throw UsageError("params.ring", e.what());
  }
}

Outcome charp_split_op(Context& c) {
  auto pres = ring_param(c.params);
  const auto emax = uint_param(c.params, "emax", 3);
  if (emax == 0 || emax > 8) throw UsageError("params.emax", "expected 1..8");
  auto rep = f_regularity_scan(pres, static_cast<std::uint32_t>(emax));
  Outcome out;
  out.result = splitting_json(rep);
  out.verified = rep.chain_verified;
  return out;
}

Outcome charp_fedder_op(Context& c) {
  auto pres = ring_param(c.params);
  auto cmp = compare_fedder_brute_force(pres, uint_param(c.params, "maxdeg", 4), uint_param(c.params, "samples", 30),
                                        c.seed);
  Outcome out;
  out.result = {{"ring", presentation_json(pres)}, {"checked", cmp.checked}, {"agreed", cmp.agreed}};
  out.verified = cmp.ok();
  return out;
}

Outcome charp_ffrt_op(Context& c) {
  const auto r = uint_param(c.params, "r");
  const auto e = uint_param(c.params, "e", 1);
  if (r == 0) throw UsageError("params.r", "must be positive");
  if (e == 0 || e > 16) throw UsageError("params.e", "expected 1..16");
  auto res = veronese_ffrt(c.spec.n, r, c.prime(), static_cast<std::uint32_t>(e));
  Outcome out;
  out.result = ffrt_json(res);
  std::uint64_t sum = 0;
  out.columns = {"class", "multiplicity"};
  for (const auto& [j, m] : res.multiplicities) {
    sum += m;
    out.rows.push_back({str(j), str(m)});
  }
  out.verified = sum == res.total;
  return out;
}

Outcome charp_level_op(Context& c) {
  const auto text = string_param(c.params, "op");
  DividedPowerOp op;
  try {
    op = parse_dp_op(text, c.prime(), c.spec.n);
  } catch (const UsageError&) {
    throw;
  } catch (const std::exception& e) {
    throw UsageError("params.op", e.what());
  }
  auto rep = level_of(op);
  Outcome out;
  out.result = {{"operator", to_string(op)}, {"order", op.order()}, {"level", rep.level}, {"verified", rep.verified}};
  out.verified = rep.verified;
  return out;
}

Outcome charp_containment_op(Context& c) {
  const auto imax = uint_param(c.params, "imax", 8);
  const auto emax = uint_param(c.params, "emax", 2);
  auto a = check_order_to_level(c.prime(), c.spec.n, imax);
  auto b = check_level_to_order(c.prime(), c.spec.n, static_cast<std::uint32_t>(emax));
  Outcome out;
  out.result = {{"order_to_level", {{"checked", a.checked}, {"passed", a.passed}}},
                {"level_to_order", {{"checked", b.checked}, {"passed", b.passed}}}};
  out.verified = a.ok() && b.ok();
  return out;
}

const std::map<std::string, std::map<std::string, Operation>>& operations() {
  static const std::map<std::string, std::map<std::string, Operation>> table = {
      {"weyl",
       {{"mul", {weyl_mul}},
        {"apply", {weyl_apply}},
        {"bracket", {weyl_bracket}},
        {"chain", {weyl_chain}},
        {"commute", {weyl_commute}},
        {"suite", {weyl_suite}}}},
      {"bf",
       {{"dim", {bf_dim_op, true, true}},
        {"basis", {bf_basis_op}},
        {"level", {bf_level_op}},
        {"estimate", {bf_estimate_op}},
        {"slope", {bf_slope_op}},
        {"commutativity", {bf_commutativity_op}},
        {"order", {bf_order_op}}}},
      {"filtration",
       {{"estimate", {filtration_estimate_op}},
        {"reindex", {filtration_reindex_op, true, true}},
        {"bernstein", {filtration_bernstein_op}},
        {"growth", {growth_op, true}},
        {"length-bound", {filtration_length_bound_op}}}},
      {"invariants",
       {{"closure", {invariants_closure_op}},
        {"basis", {invariants_basis_op}},
        {"diffpow", {invariants_diffpow_op}},
        {"signature", {invariants_signature_op, true}},
        {"reynolds", {invariants_reynolds_op}},
        {"summand", {invariants_summand_op}}}},
      {"simplicity",
       {{"reduce", {simplicity_reduce_op}},
        {"certify", {simplicity_certify_op}},
        {"table", {simplicity_table_op, true}},
        {"sweep", {simplicity_sweep_op}}}},
      {"bs", {{"solve", {bs_solve_op}}, {"verify", {bs_verify_op}}}},
      {"dmod",
       {{"act", {dmod_act_op}},
        {"theta", {dmod_theta_op}},
        {"fs", {dmod_fs_op}},
        {"specialize", {dmod_specialize_op}},
        {"growth", {growth_op, true}},
        {"suite", {dmod_suite_op}}}},
      {"charp",
       {{"split", {charp_split_op, false, false, true}},
        {"fedder", {charp_fedder_op, false, false, true}},
        {"ffrt", {charp_ffrt_op, true, false, true}},
        {"level", {charp_level_op, false, false, true}},
        {"containment", {charp_containment_op, false, false, true}}}},
  };
  return table;
}

const Operation& find_operation(const Json& job) {
  const auto& table = operations();
  auto sub = job.at("subcommand").get<std::string>();
  auto it = table.find(sub);
  if (it == table.end()) throw UsageError("subcommand", "unknown subcommand \"" + sub + "\"");
  auto op = job.at("operation").get<std::string>();
  auto jt = it->second.find(op);
  if (jt == it->second.end()) {
    throw UsageError("operation", "unknown operation \"" + op + "\" for \"" + sub + "\"");
  }
  return jt->second;
}

// number of variables mentioned by the textual inputs
std::size_t inferred_nvars(const Json& params) {
  std::size_t n = 1;
  for (const char* key : {"f", "op", "a", "b", "num"}) {
    const Json* v = lookup(params, key);
    if (!v || !v->is_string()) continue;
    try {
      if (std::string(key) == "f" || std::string(key) == "num") {
        n = std::max(n, parse_poly(v->get<std::string>()).nvars());
      } else {
        n = std::max(n, parse_weyl(v->get<std::string>()).nvars());
      }
    } catch (const std::exception& e) {
      throw UsageError(std::string("params.") + key, e.what());
    }
  }
  return n;
}

std::optional<std::size_t> fixture_dim(const Json& input) {
  if (!input.contains("group") || !input.at("group").is_string()) return std::nullopt;
  try {
    return named_group_dim(input.at("group").get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw UsageError("group", e.what());
  }
}

FiniteMatrixGroup group_value(const Json& g, std::size_t n) {
  try {
    if (g.is_string()) return named_group(g.get<std::string>(), n);
    return group_from_json(g);
  } catch (const GroupTooLarge& e) {
    throw UsageError("group", std::string("closure failed: ") + e.what());
  } catch (const std::exception& e) {
    throw UsageError("group", e.what());
  }
}

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

}  // namespace

Json validate_job(const Json& input) {
  if (!input.is_object()) throw UsageError("job", "expected a JSON object");
  for (const char* key : {"subcommand", "operation"}) {
    if (!input.contains(key) || !input.at(key).is_string()) throw UsageError(key, "required string");
  }
  const Operation& op = find_operation(input);

  Json job;
  job["subcommand"] = input.at("subcommand");
  job["operation"] = input.at("operation");

  Json params = input.value("params", Json::object());
  if (!params.is_object()) throw UsageError("params", "expected an object");

  Json ring = input.value("ring", Json::object());
  if (!ring.is_object()) throw UsageError("ring", "expected an object");
  std::size_t n;
  if (ring.contains("n")) {
    if (!ring["n"].is_number_integer() || ring["n"].get<long long>() < 1 || ring["n"].get<long long>() > 8) {
      throw UsageError("ring.n", "expected an integer in 1..8");
    }
    n = ring["n"].get<std::size_t>();
  } else if (input.contains("group") && !input.at("group").is_string()) {
    n = group_value(input.at("group"), 1).dim();
  } else if (auto k = fixture_dim(input)) {
    n = *k;
  } else {
    n = inferred_nvars(params);
  }
  std::vector<std::uint32_t> weights(n, 1);
  if (ring.contains("weights")) {
    const auto& w = ring["weights"];
    if (!w.is_array() || w.size() != n) throw UsageError("ring.weights", "expected " + str(n) + " positive integers");
    for (std::size_t k = 0; k < n; ++k) {
      if (!w[k].is_number_integer() || w[k].get<long long>() < 1 || w[k].get<long long>() > 1000) {
        throw UsageError("ring.weights[" + str(k) + "]", "expected a positive integer");
      }
      weights[k] = w[k].get<std::uint32_t>();
    }
  }
  Rational slope = 2;
  if (ring.contains("slope")) {
    try {
      slope = rational_from_json(ring["slope"]);
    } catch (const std::exception& e) {
      throw UsageError("ring.slope", e.what());
    }
  }
  const auto maxw = *std::max_element(weights.begin(), weights.end());
  if (!op.charp && slope <= maxw) {
    throw UsageError("ring.slope", "must exceed the largest weight " + str(maxw));
  }
  std::uint32_t p = 0;
  if (ring.contains("characteristic")) {
    const auto& c = ring["characteristic"];
    if (!c.is_number_integer() || c.get<long long>() < 0 || c.get<long long>() >= 65536) {
      throw UsageError("ring.characteristic", "expected 0 or a prime below 2^16");
    }
    p = c.get<std::uint32_t>();
    if (p != 0 && !is_prime(p)) throw UsageError("ring.characteristic", str(p) + " is not prime");
  }
  if (op.charp && p == 0 && job["operation"] != "split" && job["operation"] != "fedder") {
    throw UsageError("ring.characteristic", "a prime characteristic is required");
  }
  if (!op.charp && p != 0) throw UsageError("ring.characteristic", "this operation works in characteristic 0");
  job["ring"] = {{"n", n}, {"weights", weights}, {"slope", rational_json(slope)}, {"characteristic", p}};

  if (input.contains("group") && !input.at("group").is_null()) {
    auto g = group_value(input.at("group"), n);
    if (g.dim() != n) throw UsageError("group", "acts on " + str(g.dim()) + " variables, ring has " + str(n));
    job["group"] = input.at("group");
  }

  job["params"] = params;

  std::uint64_t seed = 1;
  if (input.contains("seed")) {
    if (!input.at("seed").is_number_integer() || input.at("seed").get<long long>() < 0) {
      throw UsageError("seed", "expected a nonnegative integer");
    }
    seed = input.at("seed").get<std::uint64_t>();
  }
  job["seed"] = seed;

  Json output = input.value("output", Json::object());
  if (!output.is_object()) throw UsageError("output", "expected an object");
  std::string format = op.csv_default ? "csv" : "json";
  if (output.contains("format")) {
    if (!output["format"].is_string()) throw UsageError("output.format", "expected \"json\" or \"csv\"");
    format = output["format"].get<std::string>();
  }
  if (format != "json" && format != "csv") throw UsageError("output.format", "expected \"json\" or \"csv\"");
  if (format == "csv" && !op.csv) throw UsageError("output.format", "CSV is not offered for this operation");
  job["output"] = {{"format", format}};
  return job;
}

JobResult run_job(const Json& input) {
  Json job = validate_job(input);
  const Operation& op = find_operation(job);
  const auto& ring = job["ring"];
  const auto n = ring["n"].get<std::size_t>();
  Context ctx{job, job["params"],
              op.charp ? WeightedRingSpec::standard(n)
                       : WeightedRingSpec(n, ring["weights"].get<std::vector<std::uint32_t>>(),
                                          rational_from_json(ring["slope"])),
              std::nullopt};
  ctx.characteristic = ring["characteristic"].get<std::uint32_t>();
  ctx.seed = job["seed"].get<std::uint64_t>();
  if (job.contains("group")) ctx.group = group_value(job["group"], ctx.spec.n);

  Outcome outcome = op.run(ctx);

  JobResult res;
  res.report = {{"tool", "dmodkit"},
                {"version", kToolVersion},
                {"job", job},
                {"result", outcome.result},
                {"verified", outcome.verified}};
  res.status = outcome.verified ? 0 : 1;
  if (job["output"]["format"] == "csv") {
    std::ostringstream os;
    os << "# dmodkit " << kToolVersion << "\n# job " << job.dump() << "\n# verified "
       << (outcome.verified ? "true" : "false") << "\n";
    for (std::size_t k = 0; k < outcome.columns.size(); ++k) os << (k ? "," : "") << outcome.columns[k];
    os << "\n";
    for (const auto& row : outcome.rows) {
      for (std::size_t k = 0; k < row.size(); ++k) os << (k ? "," : "") << csv_cell(row[k]);
      os << "\n";
    }
    res.text = os.str();
  } else {
    res.text = res.report.dump(2) + "\n";
  }
  return res;
}

}  // namespace dmodkit
