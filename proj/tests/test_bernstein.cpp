#include <algorithm>
#include <functional>

#include "doctest.h"

#include "dmodkit/bernstein.hpp"

using namespace dmodkit;

namespace {

// count (alpha, beta) with sum alpha w + sum beta (a - w) <= i by nested loops
std::uint64_t brute_dim(const WeightedRingSpec& spec, std::size_t i) {
  std::vector<Rational> costs;
  for (auto w : spec.weights) costs.push_back(Rational(w));
  for (auto w : spec.weights) costs.push_back(spec.slope - w);
  std::function<std::uint64_t(std::size_t, Rational)> rec = [&](std::size_t k, Rational left) -> std::uint64_t {
    if (k == costs.size()) return 1;
    std::uint64_t total = 0;
    for (Rational used = 0; used <= left; used += costs[k]) total += rec(k + 1, left - used);
    return total;
  };
  return rec(0, Rational(static_cast<unsigned long>(i)));
}

QWeyl W(const char* text, std::size_t n = 1) { return parse_weyl(text, n); }

}  // namespace

TEST_SUITE("bernstein-filt") {
  TEST_CASE("basis listings") {
    auto a1 = WeightedRingSpec::standard(1);
    CHECK(bf_basis(a1, 1).pairs.size() == 3);
    CHECK(bf_operators(a1, 0) == std::vector<QWeyl>{W("1")});
    WeightedRingSpec w2(1, {2}, 3);
    auto ops = bf_operators(w2, 2);
    REQUIRE(ops.size() == 4);
    for (const char* t : {"1", "x", "d", "d^2"}) CHECK(std::find(ops.begin(), ops.end(), W(t)) != ops.end());
  }

  TEST_CASE("dimension counts") {
    auto a1 = WeightedRingSpec::standard(1);
    CHECK(bf_dim(a1, 0) == 1);
    for (std::uint64_t i = 0; i <= 50; ++i) CHECK(bf_dim(a1, i) == (i + 1) * (i + 2) / 2);
    CHECK(bf_dim(WeightedRingSpec::standard(2), 1) == 5);
  }

  TEST_CASE("dimension counts match enumeration") {
    std::vector<WeightedRingSpec> specs = {WeightedRingSpec::standard(1), WeightedRingSpec::standard(2),
                                           WeightedRingSpec(1, {2}, 3), WeightedRingSpec(2, {1, 2}, Rational(5, 2)),
                                           WeightedRingSpec(2, {1, 1}, Rational(7, 3))};
    for (const auto& spec : specs) {
      for (std::size_t i = 0; i <= 9; ++i) {
        CHECK(bf_dim(spec, i) == brute_dim(spec, i));
        CHECK(bf_basis(spec, i).pairs.size() == brute_dim(spec, i));
      }
    }
  }

  TEST_CASE("slope must exceed the weights") {
    CHECK_THROWS(WeightedRingSpec(1, {2}, 2));
    CHECK_THROWS(WeightedRingSpec(2, {1}, 3));
  }

  TEST_CASE("membership and levels") {
    auto a1 = WeightedRingSpec::standard(1);
    CHECK(bf_member(a1, W("x*d"), 2));
    CHECK(!bf_member(a1, W("x*d"), 1));
    CHECK(bf_member(a1, QWeyl(1), 0));
    CHECK(bf_level(a1, W("x^2*d^3 + x")) == 5);
  }

  TEST_CASE("slope witnesses") {
    WeightedRingSpec a2(1, {1}, 2), a3(1, {1}, 3);
    // C = ceil(b / (a - w)) = ceil(2 / 1)
    CHECK(slope_witness(a2, a2, 10).c == 2);
    auto w = slope_witness(a2, a3, 15);
    CHECK(w.c == 3);
    CHECK(w.certified);
    WeightedRingSpec b3(1, {2}, 3), b5(1, {2}, 5);
    auto w2 = slope_witness(b3, b5, 15);
    CHECK(w2.c == 5);
    CHECK(w2.certified);
  }

  TEST_CASE("commutators drop a level") {
    auto a1 = WeightedRingSpec::standard(1);
    auto c = commutator(W("x"), W("d"));
    CHECK(c == W("-1"));
    CHECK(bf_member(a1, c, 1));
    auto rep = gr_commutativity_check(WeightedRingSpec::standard(2), 3, 3, 500, 17);
    CHECK(rep.samples == 500);
    CHECK(rep.ok());
    CHECK(gr_commutativity_check(WeightedRingSpec(1, {1}, 3), 4, 2, 100, 3).ok());
  }

  TEST_CASE("polynomial ring filtration") {
    CHECK(r_filtration_seq(WeightedRingSpec::standard(1), 5).dims == std::vector<std::uint64_t>{1, 2, 3, 4, 5, 6});
    CHECK(r_filtration_seq(WeightedRingSpec::standard(2), 4).dims == std::vector<std::uint64_t>{1, 3, 6, 10, 15});
    CHECK(r_filtration_seq(WeightedRingSpec(1, {2}, 3), 5).dims == std::vector<std::uint64_t>{1, 1, 2, 2, 3, 3});
  }

  TEST_CASE("order domination") {
    auto d1 = eps_and_order_domination(WeightedRingSpec(1, {1}, 2));
    CHECK(d1.epsilon == 1);
    CHECK(d1.c == 1);
    CHECK(d1.verified);
    auto d2 = eps_and_order_domination(WeightedRingSpec(1, {1}, 3));
    CHECK(d2.epsilon == 2);
    CHECK(d2.c == 1);
    auto d3 = eps_and_order_domination(WeightedRingSpec(1, {2}, Rational(5, 2)));
    CHECK(d3.epsilon == Rational(1, 2));
    CHECK(d3.c == 2);
    CHECK(d3.verified);
  }
}
