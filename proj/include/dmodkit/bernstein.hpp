#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "dmodkit/filtration.hpp"
#include "dmodkit/weyl.hpp"

namespace dmodkit {

// Weighted polynomial ring k[x_1..x_n], deg x_j = w_j, with a slope a > max w.
struct WeightedRingSpec {
  std::size_t n = 1;
  std::vector<std::uint32_t> weights;
  Rational slope = 2;

  WeightedRingSpec() = default;
  WeightedRingSpec(std::size_t n, std::vector<std::uint32_t> weights, Rational slope);
  static WeightedRingSpec standard(std::size_t n, Rational slope = 2);

  std::uint32_t max_weight() const;
  bool integral_slope() const { return slope.get_den() == 1; }
  // deg + slope * ord of x^alpha d^beta: sum alpha w + sum beta (a - w)
  Rational level(const Monomial& key) const;
};

struct BFLevel {
  std::size_t level = 0;
  // (alpha, beta) pairs as 2n keys, ordered by (level, alpha, beta)
  std::vector<Monomial> pairs;
};

BFLevel bf_basis(const WeightedRingSpec& spec, std::size_t i);
// Exact count by knapsack dynamic programming over the 2n weights
// (w_1..w_n, a-w_1..a-w_n), scaled by the slope denominator when needed.
std::uint64_t bf_dim(const WeightedRingSpec& spec, std::size_t i);
std::vector<std::uint64_t> bf_dims(const WeightedRingSpec& spec, std::size_t imax);

bool bf_member(const WeightedRingSpec& spec, const QWeyl& delta, std::size_t i);
// least i with delta in B_i
std::uint64_t bf_level(const WeightedRingSpec& spec, const QWeyl& delta);

FiltrationHandle bf_filtration(const WeightedRingSpec& spec);
std::vector<QWeyl> bf_operators(const WeightedRingSpec& spec, std::size_t i);

struct SlopeWitness {
  std::uint64_t c = 1;
  std::size_t window = 0;
  bool certified = false;
  std::optional<std::size_t> failing_level;
};

// spec_b has the larger slope. C = ceil(b / (a - w)); certifies
// B^b_i in B^a_i and B^a_i in B^b_{Ci} for i <= window.
SlopeWitness slope_witness(const WeightedRingSpec& spec_a, const WeightedRingSpec& spec_b, std::size_t window);

struct CommutativityReport {
  std::size_t samples = 0;
  std::size_t passed = 0;
  std::optional<std::pair<QWeyl, QWeyl>> counterexample;
  bool ok() const { return passed == samples; }
};

// Random delta in B_i, eta in B_j: [delta, eta] must lie in B_{i+j-1}.
CommutativityReport gr_commutativity_check(const WeightedRingSpec& spec, std::size_t i, std::size_t j,
                                           std::size_t samples, std::uint64_t seed);

// random element of B_i with up to `terms` monomials and small coefficients
QWeyl random_bf_element(const WeightedRingSpec& spec, std::size_t i, std::size_t terms, std::mt19937_64& rng);

// dim [R]_{<= i} for the weighted polynomial ring
DimSequence r_filtration_seq(const WeightedRingSpec& spec, std::size_t imax);

struct OrderDomination {
  Rational epsilon;
  std::uint64_t c = 1;
  std::size_t window = 0;
  bool verified = false;
};

// epsilon = a - w, C = ceil(1/epsilon); verifies ord <= C i on B_i for i <= window.
OrderDomination eps_and_order_domination(const WeightedRingSpec& spec, std::size_t window = 12);

std::uint64_t ceil_rational(const Rational& q);

}  // namespace dmodkit
