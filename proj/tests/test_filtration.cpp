#include <sstream>

#include "doctest.h"

#include "dmodkit/bernstein.hpp"
#include "dmodkit/filtration.hpp"

using namespace dmodkit;

namespace {

DimSequence closed_form(std::size_t len, std::uint64_t (*f)(std::uint64_t)) {
  DimSequence seq;
  for (std::uint64_t i = 0; i < len; ++i) seq.dims.push_back(f(i));
  return seq;
}

// span{1, x, .., x^(k i)} inside Q[x]
FiltrationHandle powers_of_x(std::uint64_t k) {
  return {[k](std::size_t i) {
    std::vector<Vector> out;
    for (std::int64_t e = 0; e <= static_cast<std::int64_t>(k * i); ++e) out.push_back(Vector{{Coord{e}, Rational(1)}});
    return out;
  }};
}

}  // namespace

TEST_SUITE("filtration") {
  TEST_CASE("dim_estimate on closed forms") {
    auto tri = dim_estimate(closed_form(60, [](std::uint64_t i) { return (i + 1) * (i + 2) / 2; }), 8);
    CHECK(tri.stable);
    CHECK(tri.degree == 2);
    CHECK(tri.multiplicity == Rational(1, 2));
    auto one = dim_estimate(closed_form(60, [](std::uint64_t) { return std::uint64_t{1}; }), 8);
    CHECK(one.stable);
    CHECK(one.degree == 0);
    CHECK(one.multiplicity == 1);
    auto lin = dim_estimate(closed_form(60, [](std::uint64_t i) { return i + 1; }), 8);
    CHECK(lin.degree == 1);
    CHECK(lin.multiplicity == 1);
  }

  TEST_CASE("dim_estimate finds quasi-polynomial periods") {
    auto half = dim_estimate(closed_form(80, [](std::uint64_t i) { return i / 2 + 1; }), 8);
    CHECK(half.stable);
    CHECK(half.degree == 1);
    CHECK(half.multiplicity == Rational(1, 2));
    CHECK(half.period == 2);
  }

  TEST_CASE("dim_estimate rejects short input") {
    CHECK_THROWS(dim_estimate(closed_form(5, [](std::uint64_t i) { return i; }), 4));
    CHECK_THROWS(dim_estimate(closed_form(50, [](std::uint64_t i) { return i; }), 3));
  }

  TEST_CASE("domination certificates") {
    auto f = powers_of_x(1);
    CHECK(check_domination(f, f, DominationKind::Linear, 1, 10).verified);
    auto big = powers_of_x(2);
    auto cert = check_domination(big, f, DominationKind::Linear, 1, 10);
    CHECK(!cert.verified);
    REQUIRE(cert.failing_level);
    CHECK(*cert.failing_level == 1);
    REQUIRE(cert.witness);
    CHECK(*cert.witness == Vector{{Coord{2}, Rational(1)}});
    CHECK(check_domination(big, f, DominationKind::Linear, 2, 10).verified);
    CHECK(!check_domination(big, f, DominationKind::Shift, 3, 10).verified);
  }

  TEST_CASE("slope domination on the first Weyl algebra") {
    WeightedRingSpec a2(1, {1}, 2), a3(1, {1}, 3);
    auto w = slope_witness(a2, a3, 20);
    CHECK(w.c == 3);
    CHECK(w.certified);
    // |alpha| + 2|beta| <= i forces |alpha| + |beta| <= i, and conversely only up to 2i
    CHECK(check_domination(bf_filtration(a3), bf_filtration(a2), DominationKind::Linear, 1, 20).verified);
    CHECK(check_domination(bf_filtration(a2), bf_filtration(a3), DominationKind::Linear, 2, 20).verified);
    CHECK(check_domination(bf_filtration(a2), bf_filtration(a3), DominationKind::Linear, 3, 20).verified);
    CHECK(!check_domination(bf_filtration(a2), bf_filtration(a3), DominationKind::Linear, 1, 20).verified);
  }

  TEST_CASE("re-indexing") {
    CHECK(floor_power(10, 1) == 10);
    CHECK(floor_power(10, Rational(3, 2)) == 31);
    CHECK(floor_power(7, 2) == 49);
    CHECK_THROWS(floor_power(3, Rational(1, 2)));
    auto spec = WeightedRingSpec::standard(1);
    DimSequence base{bf_dims(spec, 1700)};
    auto same = reindex_sequence(base, 1, 40);
    CHECK(std::vector<std::uint64_t>(base.dims.begin(), base.dims.begin() + 41) == same.dims);
    CHECK(dim_estimate(reindex_sequence(base, 2, 40), 10).degree == 4);
    CHECK(dim_estimate(reindex_sequence(base, Rational(3, 2), 40), 10).degree == 3);
    auto handle = reindex_power(bf_filtration(spec), 2);
    CHECK(level_dimension(handle, 3) == bf_dim(spec, 9));
  }

  TEST_CASE("module filtration generated by vectors") {
    auto spec = WeightedRingSpec::standard(1);
    OperatorLevels ops = [spec](std::size_t i) { return bf_operators(spec, i); };
    auto g = standard_module_filtration(ops, polynomial_action(1), {to_vector(parse_poly("1", 1))});
    for (std::size_t i = 0; i <= 8; ++i) CHECK(level_dimension(g, i) == i + 1);
    CHECK(!first_non_ascending(g, 8));
    auto zero = standard_module_filtration(ops, polynomial_action(1), {Vector{}});
    CHECK(level_dimension(zero, 5) == 0);
    auto two = standard_module_filtration(ops, polynomial_action(1),
                                          {to_vector(parse_poly("1", 1)), to_vector(parse_poly("x", 1))});
    CHECK(check_domination(g, two, DominationKind::Shift, 0, 8).verified);
  }

  TEST_CASE("Bernstein inequality check") {
    auto a1 = WeightedRingSpec::standard(1), a2 = WeightedRingSpec::standard(2);
    auto rep = bernstein_check(DimSequence{bf_dims(a1, 60)}, r_filtration_seq(a1, 60), 8);
    REQUIRE(rep.inequality_holds);
    CHECK(*rep.inequality_holds);
    CHECK(rep.equality);
    auto rep2 = bernstein_check(DimSequence{bf_dims(a2, 60)}, r_filtration_seq(a2, 60), 8);
    REQUIRE(rep2.inequality_holds);
    CHECK(rep2.equality);
    // a module whose dimension never grows is a negative control
    auto fake = bernstein_check(DimSequence{bf_dims(a1, 60)}, closed_form(61, [](std::uint64_t) { return std::uint64_t{3}; }), 8);
    REQUIRE(fake.inequality_holds);
    CHECK(!*fake.inequality_holds);
  }

  TEST_CASE("length bound") {
    CHECK(length_bound(1, Rational(1, 2), 1, 1) == 12);
    CHECK(length_bound(0, Rational(1, 2), 3, 2) == 0);
    CHECK(length_bound(1, 1, 0, 2) == 4);
    CHECK_THROWS(length_bound(1, 0, 1, 1));
    CHECK_THROWS(length_bound(1, 1, 1, Rational(1, 2)));
  }

  TEST_CASE("CSV round trip") {
    DimSequence seq{{1, 3, 6, 10}};
    std::stringstream ss;
    write_csv(ss, seq);
    CHECK(ss.str() == "i,dim\n0,1\n1,3\n2,6\n3,10\n");
    auto back = read_csv(ss);
    CHECK(back.dims == seq.dims);
    CHECK(back.provenance == Provenance::External);
    std::stringstream bad("i,dim\n0,5\n1,2\n");
    CHECK_THROWS(read_csv(bad));
    std::stringstream gap("0,1\n2,3\n");
    CHECK_THROWS(read_csv(gap));
  }
}
