#include "doctest.h"

#include "dmodkit/invariants.hpp"

using namespace dmodkit;

namespace {

QWeyl W(const char* text, std::size_t n = 1) { return parse_weyl(text, n); }
QPoly P(const char* text, std::size_t n = 1) { return parse_poly(text, n); }

RationalMatrix minus_identity(std::size_t n) { return RationalMatrix::diagonal(std::vector<Rational>(n, Rational(-1))); }

// monomials x^alpha d^beta of level <= i with |alpha| + |beta| even
std::uint64_t even_monomials(const WeightedRingSpec& spec, std::size_t i) {
  std::uint64_t count = 0;
  for (const auto& key : bf_basis(spec, i).pairs) {
    std::uint64_t total = 0;
    for (auto e : key) total += e;
    if (total % 2 == 0) ++count;
  }
  return count;
}

}  // namespace

TEST_SUITE("invariants") {
  TEST_CASE("group closure") {
    CHECK(group_closure({minus_identity(2)}).order() == 2);
    CHECK(group_closure({RationalMatrix::permutation({1, 0})}).order() == 2);
    CHECK(group_closure({RationalMatrix::permutation({1, 2, 0}), RationalMatrix::permutation({1, 0, 2})}).order() == 6);
    CHECK_THROWS_AS(group_closure({RationalMatrix::diagonal({Rational(2), Rational(1)})}, 100), GroupTooLarge);
    CHECK(named_group("perm", 3).order() == 6);
    CHECK(named_group("diag-signs(1)", 2).order() == 2);
    CHECK(named_group("perm(3)", 3).order() == 6);
    CHECK_THROWS(named_group("perm(3)", 2));
    CHECK(named_group_dim("perm(4)") == std::optional<std::size_t>(4));
    CHECK(!named_group_dim("perm").has_value());
    CHECK_THROWS(named_group("nonsense", 2));
  }

  TEST_CASE("pseudoreflections") {
    CHECK(pseudoreflections(sign_group(2)).empty());
    CHECK(is_pseudoreflection_free(sign_group(2)));
    auto swaps = pseudoreflections(permutation_group(2));
    REQUIRE(swaps.size() == 1);
    CHECK(swaps[0] == RationalMatrix::permutation({1, 0}));
    CHECK(pseudoreflections(trivial_group(3)).empty());
    CHECK(!is_pseudoreflection_free(sign_group(1)));
  }

  TEST_CASE("Reynolds operator") {
    auto g = sign_group(1);
    CHECK(reynolds_poly(g, P("x")).is_zero());
    CHECK(reynolds_poly(g, P("x^2")) == P("x^2"));
    CHECK(reynolds_poly(trivial_group(1), P("x^3 + x")) == P("x^3 + x"));
    CHECK(reynolds_poly(permutation_group(2), P("x", 2)) == P("1/2*x + 1/2*y", 2));
    CHECK(reynolds_op(g, W("d")).is_zero());
    CHECK(is_invariant(g, W("x*d")));
  }

  TEST_CASE("invariant levels") {
    auto spec = WeightedRingSpec::standard(1);
    auto g = sign_group(1);
    auto two = invariant_bf_basis(g, spec, 2);
    CHECK(two.basis.size() == 4);
    CHECK(two.trace_dimension == 4);
    for (const char* t : {"1", "x^2", "x*d", "d^2"}) CHECK(is_invariant(g, W(t)));
    CHECK(invariant_bf_basis(g, spec, 1).basis.size() == 1);
    CHECK(invariant_bf_basis(trivial_group(1), spec, 3).basis.size() == bf_dim(spec, 3));
  }

  TEST_CASE("invariant dimensions match a parity count") {
    for (std::size_t n : {1u, 2u}) {
      auto spec = WeightedRingSpec::standard(n);
      for (std::size_t i = 0; i <= 6; ++i) {
        CHECK(invariant_bf_basis(sign_group(n), spec, i).basis.size() == even_monomials(spec, i));
        std::size_t graded = 0;
        for (const auto& [d, v] : graded_invariant_basis(sign_group(n), spec, i)) graded += v.size();
        CHECK(graded == even_monomials(spec, i));
      }
    }
  }

  TEST_CASE("differential powers") {
    auto spec = WeightedRingSpec::standard(1);
    for (std::size_t i = 1; i <= 10; ++i) {
      auto triv = differential_power(trivial_group(1), spec, i);
      CHECK(triv.quotient_dim == i);
      CHECK(triv.pairing_rank == triv.quotient_dim);
      auto sign = differential_power(sign_group(1), spec, i);
      CHECK(sign.quotient_dim == (i + 1) / 2);
      CHECK(sign.pairing_rank == sign.quotient_dim);
      CHECK(!sign.pseudoreflection_free);
    }
    auto spec2 = WeightedRingSpec::standard(2);
    for (std::size_t i = 1; i <= 5; ++i) {
      CHECK(differential_power(trivial_group(2), spec2, i).quotient_dim == i * (i + 1) / 2);
      CHECK(differential_power(permutation_group(2), spec2, 1).quotient_dim == 1);
    }
  }

  TEST_CASE("signature estimates") {
    auto spec = WeightedRingSpec::standard(1);
    auto triv = diff_signature_estimate(trivial_group(1), spec, 12);
    for (const auto& v : triv.values) CHECK(v == 1);
    REQUIRE(triv.fitted);
    CHECK(*triv.fitted == 1);
    auto sign = diff_signature_estimate(sign_group(1), spec, 12);
    for (std::size_t i = 2; i <= 12; i += 2) CHECK(sign.values[i - 1] == Rational(1, 2));
    REQUIRE(sign.fitted);
    CHECK(*sign.fitted == Rational(1, 2));
    auto two = diff_signature_estimate(trivial_group(2), WeightedRingSpec::standard(2), 10);
    REQUIRE(two.fitted);
    CHECK(*two.fitted == 1);
  }

  TEST_CASE("order one operators of negative degree") {
    CHECK(negative_degree_order1(sign_group(1)).empty());
    CHECK(negative_degree_order1(trivial_group(1)) == std::vector<QWeyl>{W("d")});
    CHECK(negative_degree_order1(diag_sign_group(2, 1)) == std::vector<QWeyl>{W("d2", 2)});
  }

  TEST_CASE("Reynolds operator is a module map on invariants") {
    auto spec = WeightedRingSpec::standard(1);
    std::vector<QPoly> probes = {P("1"), P("x^2"), P("x^4 + 3*x^2")};
    CHECK(summand_check(sign_group(1), spec, probes, 4, 40, 7).ok());
    CHECK(summand_check(trivial_group(1), spec, probes, 3, 20, 7).ok());
    Localization loc(P("x^2"));
    std::vector<LocalizedElement> lp = {loc.element(P("1"), 1), loc.element(P("x^2 + 1"), 2)};
    CHECK(summand_check(sign_group(1), spec, loc, lp, 3, 30, 8).ok());
  }
}
