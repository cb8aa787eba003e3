#include "doctest.h"

#include "dmodkit/bernstein_sato.hpp"

using namespace dmodkit;

namespace {

QPoly P(const char* text, std::size_t n = 1) { return parse_poly(text, n); }

// delta|_{s=t} (f^{t+1}) == b(t) f^t via plain polynomial application
bool specializes(const QPoly& f, const SWeyl& delta, const SPoly& b, unsigned tmax) {
  for (unsigned t = 0; t <= tmax; ++t) {
    if (apply(specialize(delta, t), f.pow(t + 1)) != f.pow(t) * b.eval(t)) return false;
  }
  return true;
}

BSOptions opts(std::size_t level, std::size_t sdeg, std::size_t bdeg) {
  BSOptions o;
  o.level = level;
  o.sdeg = sdeg;
  o.bdeg = bdeg;
  return o;
}

}  // namespace

TEST_SUITE("bernstein-sato") {
  TEST_CASE("coordinate function") {
    auto r = bs_solve(P("x"), WeightedRingSpec::standard(1), opts(2, 1, 2));
    REQUIRE(r.found);
    CHECK(r.b == parse_spoly("s + 1"));
    CHECK(r.delta == lift(parse_weyl("d", 1)));
    CHECK(r.verified);
    CHECK(r.symbolic_verified);
    CHECK(specializes(P("x"), r.delta, r.b, 9));
  }

  TEST_CASE("square of a coordinate") {
    auto r = bs_solve(P("x^2"), WeightedRingSpec::standard(1), opts(6, 1, 3));
    REQUIRE(r.found);
    CHECK(to_string(r.b) == "s^2 + 3/2*s + 1/2");
    CHECK(factored_string(r.b) == "(s + 1)*(s + 1/2)");
    CHECK(r.homogeneous_restricted);
    CHECK(specializes(P("x^2"), r.delta, r.b, 9));
  }

  TEST_CASE("sum of two squares") {
    auto f = P("x^2 + y^2", 2);
    auto r = bs_solve(f, WeightedRingSpec::standard(2), opts(2, 0, 2));
    REQUIRE(r.found);
    CHECK(r.b == parse_spoly("s^2 + 2*s + 1"));
    CHECK(specializes(f, r.delta, r.b, 8));
  }

  TEST_CASE("smooth non-homogeneous curve") {
    auto f = P("x^2 + x");
    auto r = bs_solve(f, WeightedRingSpec::standard(1), opts(2, 1, 2));
    REQUIRE(r.found);
    CHECK(!r.homogeneous_restricted);
    CHECK(r.b == parse_spoly("s + 1"));
    CHECK(specializes(f, r.delta, r.b, 8));
  }

  TEST_CASE("invariant operators only") {
    auto g = sign_group(1);
    auto r = bs_solve(P("x^2"), WeightedRingSpec::standard(1), g, opts(4, 1, 3));
    REQUIRE(r.found);
    CHECK(r.invariant_search);
    CHECK(is_invariant(g, specialize(r.delta, 0)));
    CHECK(r.b == (SPoly::s() + 1) * (SPoly::s() + Rational(1, 2)));
    CHECK_THROWS(bs_solve(P("x"), WeightedRingSpec::standard(1), g, opts(2, 1, 2)));
  }

  TEST_CASE("search space too small") {
    auto r = bs_solve(P("x^2"), WeightedRingSpec::standard(1), opts(1, 1, 3));
    CHECK(!r.found);
  }

  TEST_CASE("verification rejects a wrong b") {
    auto delta = lift(parse_weyl("1/4*d^2", 1));
    CHECK(bs_verify(P("x^2"), delta, parse_spoly("s^2 + 3/2*s + 1/2"), 6));
    CHECK(!bs_verify(P("x^2"), delta, parse_spoly("s^2 + s + 1/2"), 6));
  }
}
