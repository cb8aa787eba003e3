#include <random>

#include "doctest.h"

#include "dmodkit/localization.hpp"
#include "test_util.hpp"

using namespace dmodkit;

namespace {

QWeyl W(const char* text, std::size_t n = 1) { return parse_weyl(text, n); }
QPoly P(const char* text, std::size_t n = 1) { return parse_poly(text, n); }

SWeyl s_times(const QWeyl& op) {
  SWeyl out(op.nvars());
  for (const auto& [k, c] : op.terms()) out.add_term(k, SPoly::s() * c);
  return out;
}

}  // namespace

TEST_SUITE("dmod-actions") {
  TEST_CASE("action on the localization at x") {
    Localization loc(P("x"));
    auto inv = loc.element(P("1"), 1);
    CHECK(loc.equal(loc.act(W("d"), inv), loc.element(P("-1"), 2)));
    CHECK(loc.equal(loc.act(W("x"), inv), loc.element(P("1"))));
    CHECK(loc.equal(loc.act(W("d^2"), inv), loc.element(P("2"), 3)));
    auto n = loc.normalize(loc.element(P("x^3"), 2));
    CHECK(n.exponent == 0);
    CHECK(n.numerator == P("x"));
    CHECK_THROWS(Localization(QPoly(1)));
  }

  TEST_CASE("recursive action equals the closed form") {
    std::mt19937_64 rng(21);
    for (int t = 0; t < 60; ++t) {
      std::size_t n = 1 + t % 2;
      Localization loc(testing::random_nonzero_poly(n, 2, 2, rng));
      auto delta = testing::random_op(n, 2, 3, 3, rng);
      auto v = loc.element(testing::random_poly(n, 3, 3, rng), static_cast<std::uint32_t>(t % 4));
      CHECK(loc.equal(loc.act(delta, v), loc.act_closed_form(delta, v)));
    }
  }

  TEST_CASE("action restricts to the polynomial action and is a module action") {
    std::mt19937_64 rng(22);
    for (int t = 0; t < 40; ++t) {
      Localization loc(testing::random_nonzero_poly(2, 2, 3, rng));
      auto a = testing::random_op(2, 2, 2, 2, rng);
      auto b = testing::random_op(2, 2, 2, 2, rng);
      auto p = testing::random_poly(2, 3, 3, rng);
      CHECK(loc.equal(loc.act(a, loc.element(p)), loc.element(apply(a, p))));
      auto v = loc.element(p, 2);
      CHECK(loc.equal(loc.act(a * b, v), loc.act(a, loc.act(b, v))));
    }
  }

  TEST_CASE("theta of small operators") {
    Localization loc(P("x"));
    CHECK(loc.theta_equal(loc.theta_hom(W("x")), ThetaOperator{lift(W("x")), 0}));
    CHECK(loc.theta_equal(loc.theta_hom(W("1")), ThetaOperator{lift(W("1")), 0}));
    // d + s/x, written as x^-1 (x d + s)
    CHECK(loc.theta_equal(loc.theta_hom(W("d")), ThetaOperator{lift(W("x*d")) + s_times(W("1")), 1}));
  }

  TEST_CASE("theta is multiplicative") {
    std::mt19937_64 rng(23);
    for (int t = 0; t < 30; ++t) {
      std::size_t n = 1 + t % 2;
      Localization loc(testing::random_nonzero_poly(n, 2, 2, rng));
      auto a = testing::random_op(n, 2, 2, 2, rng);
      auto b = testing::random_op(n, 2, 2, 2, rng);
      CHECK(loc.theta_equal(loc.theta_hom(a * b), loc.theta_mul(loc.theta_hom(a), loc.theta_hom(b))));
    }
  }

  TEST_CASE("f^s action") {
    Localization loc(P("x"));
    auto fs = loc.fs_element({P("1")});
    CHECK(loc.fs_equal(loc.fs_act(lift(W("d")), fs), loc.fs_element({QPoly(1), P("1")}, 1)));
    auto a = loc.fs_element({P("1"), P("x^2")});
    CHECK(loc.fs_equal(loc.fs_act(lift(W("x")), a), loc.fs_element({P("x"), P("x^3")})));
    CHECK(loc.fs_equal(loc.fs_act(lift(W("d")), loc.fs_element({P("x")})), loc.fs_element({P("1"), P("1")})));
  }

  TEST_CASE("specialization of f^s elements") {
    Localization loc(P("x"));
    auto fs = loc.fs_element({P("1")});
    CHECK(loc.equal(loc.specialize(fs, 2), loc.element(P("x^2"))));
    CHECK(loc.equal(loc.specialize(fs, -1), loc.element(P("1"), 1)));
    CHECK(loc.equal(loc.specialize(loc.fs_element({QPoly(1), P("1")}, 1), 3), loc.element(P("3*x^2"))));
  }

  TEST_CASE("theta action matches the direct f^s action") {
    std::mt19937_64 rng(24);
    for (int t = 0; t < 30; ++t) {
      Localization loc(testing::random_nonzero_poly(1 + t % 2, 2, 2, rng));
      std::size_t n = loc.nvars();
      auto delta = testing::random_op(n, 2, 2, 2, rng);
      auto u = loc.fs_element({testing::random_poly(n, 2, 2, rng), testing::random_poly(n, 2, 2, rng)},
                              static_cast<std::uint32_t>(t % 3));
      CHECK(loc.fs_equal(loc.theta_act(loc.theta_hom(delta), u), loc.fs_act(lift(delta), u)));
    }
  }

  TEST_CASE("specialization commutes with the action") {
    std::mt19937_64 rng(25);
    for (int t = 0; t < 30; ++t) {
      Localization loc(testing::random_nonzero_poly(1, 2, 2, rng));
      auto d0 = testing::random_op(1, 2, 2, 2, rng);
      auto d1 = testing::random_op(1, 2, 2, 2, rng);
      SWeyl delta = lift(d0) + s_times(d1);
      auto u = loc.fs_element({testing::random_poly(1, 2, 2, rng), testing::random_poly(1, 2, 2, rng)});
      for (std::int64_t s = -3; s <= 5; ++s) {
        auto lhs = loc.specialize(loc.fs_act(delta, u), s);
        auto rhs = loc.act(specialize(delta, s), loc.specialize(u, s));
        CHECK(loc.equal(lhs, rhs));
      }
    }
  }

  TEST_CASE("growth of the localization") {
    auto spec = WeightedRingSpec::standard(1);
    auto ring = holonomic_growth_report(GrowthModule::Ring, spec, nullptr, nullptr, 12);
    CHECK(ring.estimate.degree == 1);
    CHECK(ring.estimate.multiplicity == 1);
    auto x = P("x");
    auto loc = holonomic_growth_report(GrowthModule::Localized, spec, &x, nullptr, 12);
    CHECK(loc.estimate.degree == 1);
    auto spec2 = WeightedRingSpec::standard(2);
    auto x2 = P("x", 2);
    CHECK(holonomic_growth_report(GrowthModule::Localized, spec2, &x2, nullptr, 10).estimate.degree == 2);
  }
}
