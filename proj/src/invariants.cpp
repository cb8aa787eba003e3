#include "dmodkit/invariants.hpp"

#include <algorithm>
#include <deque>
#include <random>
#include <set>
#include <stdexcept>

#include "dmodkit/linalg.hpp"

namespace dmodkit {

FiniteMatrixGroup::FiniteMatrixGroup(std::size_t n, std::vector<RationalMatrix> elements)
    : n_(n), elements_(std::move(elements)) {
  for (const auto& g : elements_) {
    if (g.size() != n_) throw std::invalid_argument("group element has the wrong size");
  }
  std::sort(elements_.begin(), elements_.end());
  elements_.erase(std::unique(elements_.begin(), elements_.end()), elements_.end());
}

bool FiniteMatrixGroup::contains(const RationalMatrix& g) const {
  return std::binary_search(elements_.begin(), elements_.end(), g);
}

FiniteMatrixGroup group_closure(const std::vector<RationalMatrix>& gens, std::size_t max_order) {
  if (gens.empty()) throw std::invalid_argument("group_closure needs at least one generator");
  const std::size_t n = gens.front().size();
  for (const auto& g : gens) {
    if (g.size() != n) throw std::invalid_argument("generators have different sizes");
    (void)g.inverse();  // throws on a singular generator
  }
  std::set<RationalMatrix> seen{RationalMatrix::identity(n)};
  std::deque<RationalMatrix> queue{RationalMatrix::identity(n)};
  while (!queue.empty()) {
    RationalMatrix h = queue.front();
    queue.pop_front();
    for (const auto& g : gens) {
      RationalMatrix gh = g * h;
      if (seen.insert(gh).second) {
        if (seen.size() > max_order) {
          throw GroupTooLarge("generated group exceeds order " + std::to_string(max_order));
        }
        queue.push_back(std::move(gh));
      }
    }
  }
  FiniteMatrixGroup out(n, {seen.begin(), seen.end()});
  out.set_generators(gens);
  return out;
}

FiniteMatrixGroup trivial_group(std::size_t n) {
  auto g = group_closure({RationalMatrix::identity(n)});
  g.name = "trivial";
  return g;
}

FiniteMatrixGroup sign_group(std::size_t n) {
  auto g = group_closure({RationalMatrix::diagonal(std::vector<Rational>(n, Rational(-1)))});
  g.name = "cyclic-sign";
  return g;
}

FiniteMatrixGroup permutation_group(std::size_t n) {
  std::vector<RationalMatrix> gens;
  if (n < 2) {
    gens.push_back(RationalMatrix::identity(n));
  } else {
    std::vector<std::size_t> swap(n), cycle(n);
    for (std::size_t j = 0; j < n; ++j) {
      swap[j] = j;
      cycle[j] = (j + 1) % n;
    }
    std::swap(swap[0], swap[1]);
    gens.push_back(RationalMatrix::permutation(swap));
    gens.push_back(RationalMatrix::permutation(cycle));
  }
  auto g = group_closure(gens, 40320);
  g.name = "perm";
  return g;
}

FiniteMatrixGroup diag_sign_group(std::size_t n, std::uint64_t mask) {
  std::vector<Rational> d(n, Rational(1));
  for (std::size_t j = 0; j < n && j < 64; ++j) {
    if (mask >> j & 1u) d[j] = -1;
  }
  auto g = group_closure({RationalMatrix::diagonal(d)});
  g.name = "diag-signs(" + std::to_string(mask) + ")";
  return g;
}

std::optional<std::size_t> named_group_dim(const std::string& name) {
  const std::string prefix = "perm(";
  if (name.rfind(prefix, 0) != 0 || name.back() != ')') return std::nullopt;
  const std::string body = name.substr(prefix.size(), name.size() - prefix.size() - 1);
  std::size_t used = 0;
  unsigned long k = 0;
  try {
    k = std::stoul(body, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != body.size() || k == 0) throw std::invalid_argument("bad perm size: " + body);
  return k;
}

FiniteMatrixGroup named_group(const std::string& name, std::size_t n) {
  if (n == 0) throw std::invalid_argument("group dimension must be positive");
  if (name == "trivial") return trivial_group(n);
  if (name == "cyclic-sign" || name == "sign") return sign_group(n);
  if (name == "perm") return permutation_group(n);
  if (auto k = named_group_dim(name)) {
    if (*k != n) throw std::invalid_argument(name + " acts on " + std::to_string(*k) + " variables, not " + std::to_string(n));
    return permutation_group(n);
  }
  const std::string prefix = "diag-signs(";
  if (name.rfind(prefix, 0) == 0 && name.back() == ')') {
    std::string body = name.substr(prefix.size(), name.size() - prefix.size() - 1);
    std::size_t used = 0;
    unsigned long long mask = 0;
    try {
      mask = std::stoull(body, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != body.size()) throw std::invalid_argument("bad diag-signs mask: " + body);
    return diag_sign_group(n, mask);
  }
  throw std::invalid_argument("unknown group fixture: " + name);
}

std::vector<RationalMatrix> pseudoreflections(const FiniteMatrixGroup& g) {
  std::vector<RationalMatrix> out;
  const auto id = RationalMatrix::identity(g.dim());
  for (const auto& h : g.elements()) {
    if (h != id && (h - id).rank() == 1) out.push_back(h);
  }
  return out;
}

bool is_pseudoreflection_free(const FiniteMatrixGroup& g) { return pseudoreflections(g).empty(); }

bool preserves_grading(const FiniteMatrixGroup& g, const std::vector<std::uint32_t>& weights) {
  for (const auto& h : g.elements()) {
    for (std::size_t i = 0; i < g.dim(); ++i) {
      for (std::size_t j = 0; j < g.dim(); ++j) {
        if (!is_zero(h(j, i)) && weights.at(i) != weights.at(j)) return false;
      }
    }
  }
  return true;
}

QPoly reynolds_poly(const FiniteMatrixGroup& g, const QPoly& f) {
  QPoly acc(f.nvars());
  for (const auto& h : g.elements()) acc += group_act_poly(h, f);
  return acc * Rational(1, g.order());
}

QWeyl reynolds_op(const FiniteMatrixGroup& g, const QWeyl& delta) {
  QWeyl acc(delta.nvars());
  for (const auto& h : g.elements()) acc += group_act_op(h, delta);
  return acc * Rational(1, g.order());
}

bool is_invariant(const FiniteMatrixGroup& g, const QPoly& f) {
  for (const auto& h : g.generators()) {
    if (group_act_poly(h, f) != f) return false;
  }
  return true;
}

bool is_invariant(const FiniteMatrixGroup& g, const QWeyl& delta) {
  for (const auto& h : g.generators()) {
    if (group_act_op(h, delta) != delta) return false;
  }
  return true;
}

namespace {

void require_compatible(const FiniteMatrixGroup& g, const WeightedRingSpec& spec) {
  if (g.dim() != spec.n) throw std::invalid_argument("group and ring have different dimensions");
  if (!preserves_grading(g, spec.weights)) throw std::invalid_argument("group does not preserve the grading");
}

template <class Op>
SparseVec<Rational> coords(const Op& op, Indexer<Monomial>& idx) {
  std::map<std::size_t, Rational> m;
  for (const auto& [k, c] : op.terms()) m.emplace(idx.index(k), c);
  return make_sparse(std::move(m));
}

// rref rows of the span of the given elements, mapped back through idx
template <class Op>
std::vector<Op> reduced_span(const std::vector<Op>& elems, Indexer<Monomial>& idx, std::size_t arity) {
  std::vector<SparseVec<Rational>> rows;
  for (const auto& e : elems) {
    auto v = coords(e, idx);
    if (!v.empty()) rows.push_back(std::move(v));
  }
  std::vector<Op> out;
  for (const auto& r : rref(rows)) {
    Op op(arity);
    for (const auto& [c, x] : r) op.add_term(idx.key(c), x);
    out.push_back(std::move(op));
  }
  return out;
}

void enumerate_degree(std::size_t j, const std::vector<std::uint32_t>& w, std::uint64_t left, Monomial& cur,
                      std::vector<Monomial>& out) {
  if (j == cur.size()) {
    if (left == 0) out.push_back(cur);
    return;
  }
  for (std::uint64_t e = 0; e * w[j] <= left; ++e) {
    cur[j] = static_cast<Exponent>(e);
    enumerate_degree(j + 1, w, left - e * w[j], cur, out);
  }
  cur[j] = 0;
}

std::vector<Monomial> exponents_of_degree(std::size_t n, const std::vector<std::uint32_t>& w, std::uint64_t d) {
  if (w.size() != n) throw std::invalid_argument("weight vector has the wrong length");
  for (auto x : w) {
    if (x == 0) throw std::invalid_argument("weights must be positive");
  }
  std::vector<Monomial> out;
  Monomial cur(n, 0);
  enumerate_degree(0, w, d, cur, out);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

Rational trace_dimension(const FiniteMatrixGroup& g, const WeightedRingSpec& spec, std::size_t i) {
  require_compatible(g, spec);
  BFLevel lvl = bf_basis(spec, i);
  Rational total = 0;
  for (const auto& h : g.elements()) {
    for (const auto& key : lvl.pairs) {
      Monomial a(key.begin(), key.begin() + static_cast<long>(spec.n));
      Monomial b(key.begin() + static_cast<long>(spec.n), key.end());
      total += group_act_op(h, QWeyl::term(a, b, 1)).coeff(a, b);
    }
  }
  return total / Rational(g.order());
}

InvariantLevel invariant_bf_basis(const FiniteMatrixGroup& g, const WeightedRingSpec& spec, std::size_t i) {
  require_compatible(g, spec);
  BFLevel lvl = bf_basis(spec, i);
  Indexer<Monomial> idx;
  for (const auto& key : lvl.pairs) idx.index(key);
  std::vector<QWeyl> images;
  images.reserve(lvl.pairs.size());
  for (const auto& key : lvl.pairs) {
    QWeyl op(spec.n);
    op.add_term(key, 1);
    images.push_back(reynolds_op(g, op));
  }
  InvariantLevel out;
  out.level = i;
  out.basis = reduced_span(images, idx, spec.n);
  if (idx.size() != lvl.pairs.size()) throw std::logic_error("group action left the filtration level");
  out.trace_dimension = trace_dimension(g, spec, i);
  if (out.trace_dimension != Rational(out.basis.size())) {
    throw std::logic_error("invariant basis size disagrees with the trace formula");
  }
  return out;
}

std::map<std::int64_t, std::vector<QWeyl>> graded_invariant_basis(const FiniteMatrixGroup& g,
                                                                  const WeightedRingSpec& spec, std::size_t i) {
  require_compatible(g, spec);
  BFLevel lvl = bf_basis(spec, i);
  std::map<std::int64_t, std::vector<QWeyl>> images;
  std::map<std::int64_t, Indexer<Monomial>> idx;
  QWeyl probe(spec.n);
  for (const auto& key : lvl.pairs) {
    const std::int64_t d = probe.term_degree(key, spec.weights);
    QWeyl op(spec.n);
    op.add_term(key, 1);
    idx[d].index(key);
    images[d].push_back(reynolds_op(g, op));
  }
  std::map<std::int64_t, std::vector<QWeyl>> out;
  for (auto& [d, ops] : images) {
    auto basis = reduced_span(ops, idx[d], spec.n);
    if (!basis.empty()) out.emplace(d, std::move(basis));
  }
  return out;
}

std::vector<QPoly> monomials_of_degree(std::size_t n, const std::vector<std::uint32_t>& weights, std::uint64_t d) {
  std::vector<QPoly> out;
  for (auto& m : exponents_of_degree(n, weights, d)) out.push_back(QPoly::term(m, 1));
  return out;
}

std::vector<QPoly> invariant_polys(const FiniteMatrixGroup& g, const std::vector<std::uint32_t>& weights,
                                   std::uint64_t d) {
  if (!preserves_grading(g, weights)) throw std::invalid_argument("group does not preserve the grading");
  Indexer<Monomial> idx;
  std::vector<QPoly> images;
  for (const auto& m : monomials_of_degree(g.dim(), weights, d)) {
    idx.index(m.terms().begin()->first);
    images.push_back(reynolds_poly(g, m));
  }
  return reduced_span(images, idx, g.dim());
}

DifferentialPowerReport differential_power(const FiniteMatrixGroup& g, const WeightedRingSpec& spec, std::size_t i) {
  require_compatible(g, spec);
  DifferentialPowerReport rep;
  rep.i = i;
  rep.pseudoreflection_free = is_pseudoreflection_free(g);
  if (i == 0) {
    rep.nondegenerate = true;
    return rep;
  }
  const std::uint64_t order_bound = i - 1;
  // an operator of order <= i-1 lowers degree by at most wmax (i-1), so every
  // higher piece lies in m^<i>
  const std::uint64_t top = static_cast<std::uint64_t>(spec.max_weight()) * order_bound;
  for (std::uint64_t d = 0; d <= top; ++d) {
    auto basis = invariant_polys(g, spec.weights, d);
    // Only terms free of x contribute constant terms, so the relevant rows
    // are the Reynolds images of d^beta with deg beta = d.
    std::vector<SparseVec<Rational>> pairing;
    for (const auto& beta : exponents_of_degree(spec.n, spec.weights, d)) {
      if (monomial_degree(beta) > order_bound) continue;
      QWeyl op = reynolds_op(g, QWeyl::term(Monomial(spec.n, 0), beta, 1));
      std::map<std::size_t, Rational> row;
      for (std::size_t k = 0; k < basis.size(); ++k) {
        Rational c = apply(op, basis[k]).coeff(Monomial(spec.n, 0));
        if (!is_zero(c)) row.emplace(k, c);
      }
      if (!row.empty()) pairing.push_back(make_sparse(std::move(row)));
    }
    const std::uint64_t r = rank(pairing);
    // independent route: f is in m^<i> iff every monomial of f has total
    // degree >= i, so the quotient is the rank of the truncation below i
    std::vector<SparseVec<Rational>> truncated;
    Indexer<Monomial> idx;
    for (const auto& f : basis) {
      std::map<std::size_t, Rational> row;
      for (const auto& [m, c] : f.terms()) {
        if (monomial_degree(m) < i) row.emplace(idx.index(m), c);
      }
      if (!row.empty()) truncated.push_back(make_sparse(std::move(row)));
    }
    const std::uint64_t q = rank(truncated);
    rep.pairing_ranks.push_back(r);
    rep.quotient_dims.push_back(q);
    rep.pairing_rank += r;
    rep.quotient_dim += q;
  }
  rep.nondegenerate = rep.pairing_rank == rep.quotient_dim;
  return rep;
}

SignatureEstimate diff_signature_estimate(const FiniteMatrixGroup& g, const WeightedRingSpec& spec, std::size_t imax,
                                          std::size_t window) {
  if (imax == 0) throw std::invalid_argument("signature estimate needs imax >= 1");
  SignatureEstimate est;
  est.dimension = spec.n;
  est.quotient_dims.push_back(0);
  const Rational dfact(factorial(static_cast<std::uint32_t>(spec.n)));
  for (std::size_t i = 1; i <= imax; ++i) {
    auto rep = differential_power(g, spec, i);
    if (!rep.nondegenerate) throw std::logic_error("pairing rank disagrees with the quotient dimension");
    est.quotient_dims.push_back(rep.quotient_dim);
    Integer ipow_n = 1;
    for (std::size_t k = 0; k < spec.n; ++k) ipow_n *= static_cast<unsigned long>(i);
    est.values.push_back(dfact * Rational(Integer(rep.quotient_dim)) / Rational(ipow_n));
  }
  const std::size_t w = std::min(window, est.values.size());
  est.trailing_max = est.values[est.values.size() - w];
  for (std::size_t k = est.values.size() - w; k < est.values.size(); ++k) {
    est.trailing_max = std::max(est.trailing_max, est.values[k]);
  }
  if (window >= 4 && est.quotient_dims.size() >= 2 * window) {
    auto fit = dim_estimate(DimSequence{est.quotient_dims, Provenance::Enumerated}, window);
    if (fit.stable && fit.degree == Rational(spec.n)) est.fitted = dfact * fit.multiplicity;
  }
  return est;
}

std::vector<QWeyl> negative_degree_order1(const FiniteMatrixGroup& g) {
  const std::size_t n = g.dim();
  Indexer<Monomial> idx;
  std::vector<QWeyl> images;
  for (std::size_t j = 0; j < n; ++j) {
    QWeyl dj = QWeyl::d(n, j);
    idx.index(dj.terms().begin()->first);
    images.push_back(reynolds_op(g, dj));
  }
  return reduced_span(images, idx, n);
}

namespace {

void require_invariant_probes(const FiniteMatrixGroup& g, const std::vector<QPoly>& probes) {
  for (const auto& p : probes) {
    if (!is_invariant(g, p)) throw std::invalid_argument("summand probe is not invariant: " + to_string(p));
  }
}

}  // namespace

SummandReport summand_check(const FiniteMatrixGroup& g, const WeightedRingSpec& spec, const std::vector<QPoly>& probes,
                            std::size_t level, std::size_t samples, std::uint64_t seed) {
  require_compatible(g, spec);
  require_invariant_probes(g, probes);
  std::mt19937_64 rng(seed);
  SummandReport rep;
  for (std::size_t s = 0; s < samples; ++s) {
    QWeyl delta = random_bf_element(spec, level, 4, rng);
    QWeyl rd = reynolds_op(g, delta);
    for (const auto& v : probes) {
      ++rep.checks;
      if (reynolds_poly(g, apply(delta, v)) == apply(rd, v)) ++rep.passed;
    }
  }
  return rep;
}

SummandReport summand_check(const FiniteMatrixGroup& g, const WeightedRingSpec& spec, const Localization& loc,
                            const std::vector<LocalizedElement>& probes, std::size_t level, std::size_t samples,
                            std::uint64_t seed) {
  require_compatible(g, spec);
  if (!is_invariant(g, loc.base())) throw std::invalid_argument("localizing element is not invariant");
  std::vector<QPoly> nums;
  for (const auto& v : probes) nums.push_back(v.numerator);
  require_invariant_probes(g, nums);
  std::mt19937_64 rng(seed);
  SummandReport rep;
  for (std::size_t s = 0; s < samples; ++s) {
    QWeyl delta = random_bf_element(spec, level, 4, rng);
    QWeyl rd = reynolds_op(g, delta);
    for (const auto& v : probes) {
      ++rep.checks;
      LocalizedElement image = loc.act(delta, v);
      LocalizedElement lhs = loc.normalize({reynolds_poly(g, image.numerator), image.exponent});
      if (loc.equal(lhs, loc.act(rd, v))) ++rep.passed;
    }
  }
  return rep;
}

}  // namespace dmodkit
