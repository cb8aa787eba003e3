#include <random>

#include "doctest.h"

#include "dmodkit/localization.hpp"
#include "dmodkit/weyl.hpp"
#include "test_util.hpp"

using namespace dmodkit;

namespace {

QWeyl W(const char* text, std::size_t n = 1) { return parse_weyl(text, n); }
QPoly P(const char* text, std::size_t n = 1) { return parse_poly(text, n); }

}  // namespace

TEST_SUITE("weyl") {
  TEST_CASE("defining relation and small products") {
    CHECK(W("d") * W("x") == W("x*d + 1"));
    CHECK(W("x*d") * W("x*d") == W("x^2*d^2 + x*d"));
    CHECK(W("x") * W("x") == W("x^2"));
    CHECK(W("d1", 2) * W("x2", 2) == W("x2*d1", 2));
  }

  TEST_CASE("apply") {
    CHECK(apply(W("d"), P("x^2")) == P("2*x"));
    CHECK(apply(W("x*d"), P("x^3")) == P("3*x^3"));
    CHECK(apply(W("1"), P("x^2 + 7")) == P("x^2 + 7"));
  }

  TEST_CASE("commutators") {
    CHECK(commutator(W("d"), W("x")) == W("1"));
    CHECK(commutator(W("x"), W("d")) == W("-1"));
    CHECK(commutator(W("d^2"), W("x")) == W("2*d"));
  }

  TEST_CASE("bracket chain") {
    CHECK(bracket_chain(W("d^2"), P("x"), 1) == W("2*d"));
    CHECK(bracket_chain(W("d^2"), P("x"), 2) == W("2"));
    CHECK(bracket_chain(W("x*d^3 + d"), P("x^2 + 1"), 0) == W("x*d^3 + d"));
    // the chain terminates after ord(delta) brackets
    CHECK(bracket_sequence(W("x*d^3"), P("x^2")).size() == 4);
  }

  TEST_CASE("product agrees with composition of actions") {
    std::mt19937_64 rng(1);
    for (int t = 0; t < 200; ++t) {
      std::size_t n = 1 + t % 2;
      auto a = testing::random_op(n, 3, 3, 3, rng);
      auto b = testing::random_op(n, 3, 3, 3, rng);
      auto f = testing::random_poly(n, 6, 4, rng);
      CHECK(apply(a * b, f) == apply(a, apply(b, f)));
    }
  }

  TEST_CASE("product is associative") {
    std::mt19937_64 rng(2);
    for (int t = 0; t < 60; ++t) {
      auto a = testing::random_op(2, 2, 2, 3, rng);
      auto b = testing::random_op(2, 2, 2, 3, rng);
      auto c = testing::random_op(2, 2, 2, 3, rng);
      CHECK((a * b) * c == a * (b * c));
    }
  }

  TEST_CASE("commute identity for nonnegative powers") {
    CHECK(verify_commute_identity(W("d"), P("x"), 2));
    CHECK(verify_commute_identity(W("d^2"), P("x"), 3));
    Localization loc(P("x"));
    CHECK(verify_commute_identity(W("d"), P("x"), -1, {loc.element(P("1"), 1)}));
  }

  TEST_CASE("commute identity against direct application") {
    std::mt19937_64 rng(3);
    for (int t = 0; t < 40; ++t) {
      auto delta = testing::random_op(1, 2, 3, 3, rng);
      auto f = testing::random_nonzero_poly(1, 2, 2, rng);
      auto p = testing::random_poly(1, 3, 3, rng);
      const std::int64_t j = t % 4;
      QPoly lhs = apply(delta, f.pow(static_cast<unsigned>(j)) * p);
      QPoly rhs(1);
      for (std::int64_t i = 0; i <= j; ++i) {
        rhs += f.pow(static_cast<unsigned>(j - i)) * apply(bracket_chain(delta, f, i), p) *
               Rational(binomial(j, static_cast<std::uint32_t>(i)));
      }
      CHECK(lhs == rhs);
      CHECK(verify_commute_identity(delta, f, j));
    }
  }

  TEST_CASE("group action on operators") {
    auto minus = RationalMatrix::diagonal({Rational(-1)});
    CHECK(group_act_op(minus, W("d")) == W("-d"));
    CHECK(group_act_op(RationalMatrix::identity(1), W("x*d^2")) == W("x*d^2"));
    auto swap = RationalMatrix::permutation({1, 0});
    CHECK(group_act_op(swap, W("d1", 2)) == W("d2", 2));
  }

  TEST_CASE("group action is compatible with application") {
    std::mt19937_64 rng(4);
    std::vector<RationalMatrix> mats = {RationalMatrix::permutation({1, 0}),
                                        RationalMatrix(2, {Rational(1), Rational(1), Rational(0), Rational(1)}),
                                        RationalMatrix::diagonal({Rational(-1), Rational(2)})};
    for (int t = 0; t < 60; ++t) {
      const auto& g = mats[t % mats.size()];
      auto delta = testing::random_op(2, 2, 2, 3, rng);
      auto f = testing::random_poly(2, 4, 4, rng);
      CHECK(apply(group_act_op(g, delta), group_act_poly(g, f)) == group_act_poly(g, apply(delta, f)));
    }
  }

  TEST_CASE("s-coefficients and specialization") {
    SWeyl op = lift(W("d"));
    SWeyl sop(1);
    sop.add_term(Monomial{0}, Monomial{1}, SPoly::s());
    auto sum = op + sop;
    CHECK(specialize(sum, 3) == W("4*d"));
    CHECK(from_s_slices(s_slices(sum), 1) == sum);
  }

  TEST_CASE("operator text round trip") {
    std::mt19937_64 rng(9);
    for (int t = 0; t < 30; ++t) {
      auto op = testing::random_op(2, 3, 3, 4, rng);
      CHECK(parse_weyl(to_string(op), 2) == op);
    }
    CHECK_THROWS(parse_weyl("d + q", 1));
  }
}
