#include <random>

#include "doctest.h"

#include "dmodkit/simplicity.hpp"
#include "test_util.hpp"

using namespace dmodkit;

namespace {

QWeyl W(const char* text, std::size_t n = 1) { return parse_weyl(text, n); }

QWeyl expand(const MembershipCertificate& cert) {
  QWeyl sum(cert.delta.nvars());
  for (const auto& [l, r] : cert.terms) sum += l * cert.delta * r;
  return sum;
}

}  // namespace

TEST_SUITE("simplicity") {
  TEST_CASE("bracket reductions of small operators") {
    auto x = reduce_to_unit(W("x"));
    REQUIRE(x.success);
    REQUIRE(x.steps.size() == 1);
    CHECK(x.steps[0].kind == ReductionStep::Kind::WithD);
    CHECK(x.unit == -1);

    auto five = reduce_to_unit(W("5"));
    CHECK(five.success);
    CHECK(five.steps.empty());
    CHECK(five.unit == 5);

    auto xd = reduce_to_unit(W("x*d"));
    REQUIRE(xd.steps.size() == 2);
    CHECK(xd.steps[0].kind == ReductionStep::Kind::WithD);
    CHECK(xd.steps[1].kind == ReductionStep::Kind::WithX);
    CHECK(xd.unit == -1);
    CHECK(verify_reduction(xd));

    CHECK(!reduce_to_unit(QWeyl(1)).success);
  }

  TEST_CASE("reductions replay on random operators") {
    std::mt19937_64 rng(31);
    for (int t = 0; t < 40; ++t) {
      auto op = testing::random_op(2, 3, 3, 3, rng);
      if (op.is_zero()) continue;
      auto cert = reduce_to_unit(op);
      CHECK(cert.success);
      CHECK(verify_reduction(cert));
      auto mc = membership_from_reduction(cert, bf_level(WeightedRingSpec::standard(2), op), 1);
      CHECK(expand(mc) == W("1", 2));
    }
  }

  TEST_CASE("membership from a reduction") {
    auto spec = WeightedRingSpec::standard(1);
    auto mc = membership_from_reduction(reduce_to_unit(W("x")), 1, 1);
    CHECK(expand(mc) == W("1"));
    CHECK(verify_membership(spec, mc));
    // 1 = d x 1 - 1 x d
    QWeyl manual = W("d") * W("x") - W("x") * W("d");
    CHECK(manual == W("1"));
  }

  TEST_CASE("membership search") {
    auto spec = WeightedRingSpec::standard(1);
    auto one = membership_certificate(spec, W("1"), 0, 3);
    REQUIRE(one);
    CHECK(one->c == 0);
    CHECK(verify_membership(spec, *one));
    auto x = membership_certificate(spec, W("x"), 1, 3);
    REQUIRE(x);
    CHECK(x->c == 1);
    CHECK(expand(*x) == W("1"));
    CHECK(verify_membership(spec, *x));

    auto g = sign_group(1);
    auto u = membership_certificate(spec, W("x^2"), 2, 5, &g);
    REQUIRE(u);
    CHECK(verify_membership(spec, *u, &g));
    auto rows = min_constant_table(g, spec, 2, 5);
    REQUIRE(rows.size() == 3);
    REQUIRE(rows[2].c);
    CHECK(u->c <= *rows[2].c);
    CHECK_THROWS(membership_certificate(spec, W("x"), 1, 3, &g));
  }

  TEST_CASE("tampered certificates are rejected") {
    auto spec = WeightedRingSpec::standard(1);
    auto mc = membership_from_reduction(reduce_to_unit(W("x*d")), 2, 1);
    REQUIRE(verify_membership(spec, mc));
    auto bad = mc;
    bad.terms.pop_back();
    CHECK(!verify_membership(spec, bad));
    auto high = mc;
    high.terms.push_back({W("d^5"), QWeyl(1)});
    high.terms.push_back({W("-d^5"), QWeyl(1)});
    CHECK(!verify_membership(spec, high));
  }

  TEST_CASE("minimal constants on the first Weyl algebra") {
    auto spec = WeightedRingSpec::standard(1);
    auto rows = min_constant_table(trivial_group(1), spec, 4, 3);
    REQUIRE(rows.size() == 5);
    CHECK(rows[0].c == std::uint64_t{0});
    for (std::size_t i = 1; i <= 4; ++i) {
      CHECK(rows[i].c == std::uint64_t{1});
      CHECK(rows[i].verified);
      CHECK(rows[i].basis_size == bf_dim(spec, i));
    }
  }
}
