#include "dmodkit/bernstein.hpp"

#include <algorithm>
#include <functional>

namespace dmodkit {

WeightedRingSpec::WeightedRingSpec(std::size_t n_, std::vector<std::uint32_t> w, Rational a)
    : n(n_), weights(std::move(w)), slope(std::move(a)) {
  if (n == 0) throw std::invalid_argument("ring needs at least one variable");
  if (weights.empty()) weights.assign(n, 1);
  if (weights.size() != n) throw std::invalid_argument("weights must list one positive integer per variable");
  for (auto x : weights) {
    if (x == 0) throw std::invalid_argument("weights must be positive");
  }
  if (!(slope > max_weight())) throw std::invalid_argument("slope must exceed the largest weight");
}

WeightedRingSpec WeightedRingSpec::standard(std::size_t n, Rational slope) {
  return WeightedRingSpec(n, std::vector<std::uint32_t>(n, 1), std::move(slope));
}

std::uint32_t WeightedRingSpec::max_weight() const { return *std::max_element(weights.begin(), weights.end()); }

Rational WeightedRingSpec::level(const Monomial& key) const {
  Rational l = 0;
  for (std::size_t j = 0; j < n; ++j) {
    l += Rational(static_cast<unsigned long>(key[j]) * weights[j]);
    l += Rational(static_cast<unsigned long>(key[n + j])) * (slope - weights[j]);
  }
  return l;
}

namespace {

// the 2n knapsack weights scaled to integers by the slope denominator
std::vector<std::uint64_t> scaled_weights(const WeightedRingSpec& spec, std::uint64_t& scale) {
  scale = spec.slope.get_den().get_ui();
  std::vector<std::uint64_t> out;
  for (auto w : spec.weights) out.push_back(std::uint64_t{w} * scale);
  for (auto w : spec.weights) {
    Rational x = (spec.slope - w) * Rational(static_cast<unsigned long>(scale));
    out.push_back(x.get_num().get_ui());
  }
  return out;
}

}  // namespace

BFLevel bf_basis(const WeightedRingSpec& spec, std::size_t i) {
  std::uint64_t scale = 1;
  auto w = scaled_weights(spec, scale);
  const std::uint64_t budget = i * scale;
  std::vector<std::pair<std::uint64_t, Monomial>> found;
  Monomial key(2 * spec.n, 0);
  std::function<void(std::size_t, std::uint64_t)> rec = [&](std::size_t pos, std::uint64_t used) {
    if (pos == key.size()) {
      found.emplace_back(used, key);
      return;
    }
    for (std::uint64_t e = 0; used + e * w[pos] <= budget; ++e) {
      key[pos] = static_cast<Exponent>(e);
      rec(pos + 1, used + e * w[pos]);
    }
    key[pos] = 0;
  };
  rec(0, 0);
  std::sort(found.begin(), found.end());
  BFLevel lvl;
  lvl.level = i;
  for (auto& [l, k] : found) lvl.pairs.push_back(std::move(k));
  return lvl;
}

std::vector<std::uint64_t> bf_dims(const WeightedRingSpec& spec, std::size_t imax) {
  std::uint64_t scale = 1;
  auto w = scaled_weights(spec, scale);
  const std::uint64_t top = imax * scale;
  // exact[s] = number of exponent vectors with weighted sum exactly s
  std::vector<std::uint64_t> exact(top + 1, 0);
  exact[0] = 1;
  for (auto wt : w) {
    for (std::uint64_t s = wt; s <= top; ++s) exact[s] += exact[s - wt];
  }
  std::vector<std::uint64_t> out;
  std::uint64_t acc = 0;
  for (std::uint64_t s = 0; s <= top; ++s) {
    acc += exact[s];
    if (s % scale == 0) out.push_back(acc);
  }
  return out;
}

std::uint64_t bf_dim(const WeightedRingSpec& spec, std::size_t i) { return bf_dims(spec, i).back(); }

bool bf_member(const WeightedRingSpec& spec, const QWeyl& delta, std::size_t i) {
  if (delta.nvars() != spec.n) throw std::invalid_argument("operator arity does not match the ring");
  Rational bound(static_cast<unsigned long>(i));
  for (const auto& [key, c] : delta.terms()) {
    if (spec.level(key) > bound) return false;
  }
  return true;
}

std::uint64_t ceil_rational(const Rational& q) {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r.get_ui();
}

std::uint64_t bf_level(const WeightedRingSpec& spec, const QWeyl& delta) {
  std::uint64_t best = 0;
  for (const auto& [key, c] : delta.terms()) best = std::max(best, ceil_rational(spec.level(key)));
  return best;
}

std::vector<QWeyl> bf_operators(const WeightedRingSpec& spec, std::size_t i) {
  std::vector<QWeyl> out;
  for (const auto& key : bf_basis(spec, i).pairs) {
    QWeyl op(spec.n);
    op.add_term(key, Rational(1));
    out.push_back(std::move(op));
  }
  return out;
}

FiltrationHandle bf_filtration(const WeightedRingSpec& spec) {
  return FiltrationHandle{[spec](std::size_t i) {
    std::vector<Vector> out;
    for (const auto& key : bf_basis(spec, i).pairs) out.push_back(Vector{{Coord(key.begin(), key.end()), Rational(1)}});
    return out;
  }};
}

SlopeWitness slope_witness(const WeightedRingSpec& spec_a, const WeightedRingSpec& spec_b, std::size_t window) {
  if (spec_a.n != spec_b.n || spec_a.weights != spec_b.weights) {
    throw std::invalid_argument("slope comparison needs the same ring");
  }
  if (spec_a.slope > spec_b.slope) throw std::invalid_argument("first spec must have the smaller slope");
  SlopeWitness wit;
  wit.window = window;
  wit.c = ceil_rational(spec_b.slope / (spec_a.slope - spec_a.max_weight()));
  for (std::size_t i = 0; i <= window; ++i) {
    for (const auto& key : bf_basis(spec_b, i).pairs) {
      if (spec_a.level(key) > Rational(static_cast<unsigned long>(i))) {
        wit.failing_level = i;
        return wit;
      }
    }
    for (const auto& key : bf_basis(spec_a, i).pairs) {
      if (spec_b.level(key) > Rational(static_cast<unsigned long>(wit.c * i))) {
        wit.failing_level = i;
        return wit;
      }
    }
  }
  wit.certified = true;
  return wit;
}

QWeyl random_bf_element(const WeightedRingSpec& spec, std::size_t i, std::size_t terms, std::mt19937_64& rng) {
  auto basis = bf_basis(spec, i).pairs;
  // plain modulo keeps the stream identical across standard libraries
  QWeyl op(spec.n);
  while (op.is_zero()) {
    for (std::size_t t = 0; t < terms; ++t) {
      const long num = static_cast<long>(rng() % 19) - 9;
      Rational c(num, static_cast<unsigned long>(1 + rng() % 4));
      c.canonicalize();
      op.add_term(basis[rng() % basis.size()], c);
    }
  }
  return op;
}

CommutativityReport gr_commutativity_check(const WeightedRingSpec& spec, std::size_t i, std::size_t j,
                                           std::size_t samples, std::uint64_t seed) {
  if (!spec.integral_slope()) throw std::invalid_argument("associated graded check needs an integral slope");
  std::mt19937_64 rng(seed);
  CommutativityReport rep;
  rep.samples = samples;
  const std::size_t target = i + j == 0 ? 0 : i + j - 1;
  for (std::size_t k = 0; k < samples; ++k) {
    QWeyl a = random_bf_element(spec, i, 4, rng);
    QWeyl b = random_bf_element(spec, j, 4, rng);
    QWeyl c = commutator(a, b);
    bool ok = i + j == 0 ? c.is_zero() : bf_member(spec, c, target);
    if (ok) {
      ++rep.passed;
    } else if (!rep.counterexample) {
      rep.counterexample = std::make_pair(a, b);
    }
  }
  return rep;
}

DimSequence r_filtration_seq(const WeightedRingSpec& spec, std::size_t imax) {
  std::vector<std::uint64_t> exact(imax + 1, 0);
  exact[0] = 1;
  for (auto w : spec.weights) {
    for (std::size_t s = w; s <= imax; ++s) exact[s] += exact[s - w];
  }
  DimSequence seq;
  std::uint64_t acc = 0;
  for (std::size_t s = 0; s <= imax; ++s) {
    acc += exact[s];
    seq.dims.push_back(acc);
  }
  return seq;
}

OrderDomination eps_and_order_domination(const WeightedRingSpec& spec, std::size_t window) {
  OrderDomination od;
  od.epsilon = spec.slope - spec.max_weight();
  od.c = ceil_rational(Rational(1) / od.epsilon);
  od.window = window;
  for (std::size_t i = 0; i <= window; ++i) {
    for (const auto& key : bf_basis(spec, i).pairs) {
      std::uint64_t ord = 0;
      for (std::size_t j = spec.n; j < 2 * spec.n; ++j) ord += key[j];
      if (ord > od.c * i) return od;
    }
  }
  od.verified = true;
  return od;
}

}  // namespace dmodkit
