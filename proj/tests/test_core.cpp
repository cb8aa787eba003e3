#include <random>

#include "doctest.h"

#include "dmodkit/matrix.hpp"
#include "dmodkit/poly.hpp"
#include "dmodkit/spoly.hpp"
#include "test_util.hpp"

using namespace dmodkit;

TEST_SUITE("coeff-core") {
  TEST_CASE("binom_s small cases") {
    CHECK(binom_s(0) == SPoly(1));
    CHECK(binom_s(1) == SPoly::s());
    CHECK(binom_s(2) == SPoly({Rational(0), Rational(-1, 2), Rational(1, 2)}));
  }

  TEST_CASE("binom_s agrees with integer binomials") {
    for (std::size_t i = 0; i <= 7; ++i) {
      for (std::int64_t t = -6; t <= 9; ++t) CHECK(binom_s(i).eval(t) == Rational(binomial(t, i)));
    }
  }

  TEST_CASE("spoly parse and print") {
    auto b = parse_spoly("s^2 + 3/2*s + 1/2");
    CHECK(to_string(b) == "s^2 + 3/2*s + 1/2");
    CHECK(to_string(SPoly()) == "0");
    CHECK(b == (SPoly::s() + 1) * (SPoly::s() + Rational(1, 2)));
  }

  TEST_CASE("rational roots and factored form") {
    auto b = (SPoly::s() + 1) * (SPoly::s() + Rational(1, 2));
    auto r = rational_roots(b);
    REQUIRE(r.roots.size() == 2);
    CHECK(r.roots[0].first == -1);
    CHECK(r.roots[1].first == Rational(-1, 2));
    CHECK(factored_string(b) == "(s + 1)*(s + 1/2)");
    CHECK(factored_string((SPoly::s() + 1) * (SPoly::s() + 1)) == "(s + 1)^2");
    auto irred = SPoly::s() * SPoly::s() + 1;
    CHECK(rational_roots(irred).roots.empty());
  }

  TEST_CASE("polynomial product and exact division") {
    auto a = parse_poly("x+1", 1), b = parse_poly("x-1", 1);
    CHECK(a * b == parse_poly("x^2-1", 1));
    CHECK(exact_divide(parse_poly("x^2*y", 2), parse_poly("x", 2)) == parse_poly("x*y", 2));
    CHECK_THROWS_AS(exact_divide(parse_poly("x+1", 1), parse_poly("x", 1)), DivisionNotExact);
    CHECK_THROWS(exact_divide(a, QPoly(1)));
  }

  TEST_CASE("exact division inverts multiplication") {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 50; ++t) {
      auto a = testing::random_nonzero_poly(2, 4, 4, rng);
      auto b = testing::random_nonzero_poly(2, 3, 3, rng);
      CHECK(exact_divide(a * b, b) == a);
      CHECK(divides(b, a * b));
    }
  }

  TEST_CASE("polynomial text round trip") {
    std::mt19937_64 rng(5);
    for (int t = 0; t < 30; ++t) {
      auto f = testing::random_poly(3, 5, 5, rng);
      CHECK(parse_poly(to_string(f), 3) == f);
    }
    CHECK_THROWS(parse_poly("x + q", 1));
  }

  TEST_CASE("Lucas binomials match exact binomials") {
    for (std::uint32_t p : {2u, 3u, 5u, 7u}) {
      for (std::uint64_t m = 0; m < 40; ++m) {
        for (std::uint64_t k = 0; k <= m; ++k) {
          Integer b = binomial(static_cast<std::int64_t>(m), static_cast<std::uint32_t>(k));
          Integer r = b % p;
          CHECK(binomial_mod(m, k, p) == r.get_ui());
        }
      }
    }
  }

  TEST_CASE("prime field arithmetic") {
    for (std::uint32_t p : {2u, 3u, 5u, 13u}) {
      for (std::uint32_t a = 1; a < p; ++a) CHECK(Fp(a, p) * Fp(a, p).inverse() == Fp(1, p));
    }
    CHECK(Fp(-1, 5) == Fp(4, 5));
    CHECK(!is_prime(1));
    CHECK(is_prime(2));
    CHECK(!is_prime(9));
  }

  TEST_CASE("matrix inverse and rank") {
    RationalMatrix m(2, {Rational(2), Rational(1), Rational(1), Rational(1)});
    CHECK((m * m.inverse()).is_identity());
    CHECK(RationalMatrix(2, {Rational(1), Rational(2), Rational(2), Rational(4)}).rank() == 1);
    CHECK(RationalMatrix::permutation({1, 0}).rank() == 2);
  }
}
