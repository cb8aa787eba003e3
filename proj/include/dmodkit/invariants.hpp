#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dmodkit/bernstein.hpp"
#include "dmodkit/localization.hpp"
#include "dmodkit/matrix.hpp"
#include "dmodkit/weyl.hpp"

namespace dmodkit {

// Raised when closing a generator set exceeds the permitted order.
class GroupTooLarge : public std::length_error {
 public:
  using std::length_error::length_error;
};

// Finite subgroup of GL_n(Q), all elements listed (sorted, so iteration
// order is canonical).
class FiniteMatrixGroup {
 public:
  FiniteMatrixGroup() = default;
  FiniteMatrixGroup(std::size_t n, std::vector<RationalMatrix> elements);

  std::size_t dim() const { return n_; }
  std::size_t order() const { return elements_.size(); }
  const std::vector<RationalMatrix>& elements() const { return elements_; }
  const std::vector<RationalMatrix>& generators() const { return generators_; }
  void set_generators(std::vector<RationalMatrix> gens) { generators_ = std::move(gens); }
  bool contains(const RationalMatrix& g) const;
  std::string name;

 private:
  std::size_t n_ = 0;
  std::vector<RationalMatrix> elements_;
  std::vector<RationalMatrix> generators_;
};

FiniteMatrixGroup group_closure(const std::vector<RationalMatrix>& gens, std::size_t max_order = 1024);

FiniteMatrixGroup trivial_group(std::size_t n);
// <-I_n>
FiniteMatrixGroup sign_group(std::size_t n);
// coordinate permutations S_n
FiniteMatrixGroup permutation_group(std::size_t n);
// <diag(e_1..e_n)> with e_j = -1 exactly for the bits set in mask
FiniteMatrixGroup diag_sign_group(std::size_t n, std::uint64_t mask);
// "trivial", "cyclic-sign", "perm", "perm(<n>)", "diag-signs(<mask>)"
FiniteMatrixGroup named_group(const std::string& name, std::size_t n);
// the size k fixed by a name like "perm(k)", if any
std::optional<std::size_t> named_group_dim(const std::string& name);

// elements g != 1 with rank(g - 1) = 1
std::vector<RationalMatrix> pseudoreflections(const FiniteMatrixGroup& g);
bool is_pseudoreflection_free(const FiniteMatrixGroup& g);
// every element maps each weighted-degree piece of R to itself
bool preserves_grading(const FiniteMatrixGroup& g, const std::vector<std::uint32_t>& weights);

// Reynolds operator (1/|G|) sum_g g.(-)
QPoly reynolds_poly(const FiniteMatrixGroup& g, const QPoly& f);
QWeyl reynolds_op(const FiniteMatrixGroup& g, const QWeyl& delta);
bool is_invariant(const FiniteMatrixGroup& g, const QPoly& f);
bool is_invariant(const FiniteMatrixGroup& g, const QWeyl& delta);

// Basis of (B_i)^G in reduced echelon form over the monomial basis of B_i,
// with the dimension cross-checked against the trace formula.
struct InvariantLevel {
  std::size_t level = 0;
  std::vector<QWeyl> basis;
  Rational trace_dimension;  // (1/|G|) sum_g tr(g | B_i)
};
InvariantLevel invariant_bf_basis(const FiniteMatrixGroup& g, const WeightedRingSpec& spec, std::size_t i);
Rational trace_dimension(const FiniteMatrixGroup& g, const WeightedRingSpec& spec, std::size_t i);

// A basis of (B_i)^G made of operators homogeneous for the weighted grading,
// keyed by degree; elements of each degree in reduced echelon form.
std::map<std::int64_t, std::vector<QWeyl>> graded_invariant_basis(const FiniteMatrixGroup& g,
                                                                  const WeightedRingSpec& spec, std::size_t i);

// basis of the weighted-degree d piece of R^G
std::vector<QPoly> invariant_polys(const FiniteMatrixGroup& g, const std::vector<std::uint32_t>& weights,
                                   std::uint64_t d);
std::vector<QPoly> monomials_of_degree(std::size_t n, const std::vector<std::uint32_t>& weights, std::uint64_t d);

// dim R^G / m^<i> computed degree by degree as the rank of the pairing
// (delta, f) -> constant term of delta(f), delta invariant of order < i and
// degree -d, f in R^G_d.
struct DifferentialPowerReport {
  std::size_t i = 0;
  std::vector<std::uint64_t> quotient_dims;  // per degree d
  std::vector<std::uint64_t> pairing_ranks;  // per degree d
  std::uint64_t quotient_dim = 0;
  std::uint64_t pairing_rank = 0;
  bool nondegenerate = false;
  bool pseudoreflection_free = false;
};
DifferentialPowerReport differential_power(const FiniteMatrixGroup& g, const WeightedRingSpec& spec, std::size_t i);

struct SignatureEstimate {
  std::vector<std::uint64_t> quotient_dims;  // index i, with i = 0 giving 0
  std::vector<Rational> values;              // d! dim / i^d for i >= 1
  Rational trailing_max;                     // max over the trailing window
  std::optional<Rational> fitted;            // d! * leading coefficient when stable
  std::size_t dimension = 0;
};
SignatureEstimate diff_signature_estimate(const FiniteMatrixGroup& g, const WeightedRingSpec& spec, std::size_t imax,
                                          std::size_t window = 4);

// invariant operators of order 1 and degree -1 (Reynolds images of d_j)
std::vector<QWeyl> negative_degree_order1(const FiniteMatrixGroup& g);

struct SummandReport {
  std::size_t checks = 0;
  std::size_t passed = 0;
  bool ok() const { return checks == passed; }
};
// rho(delta(v)) == rho(delta)(v) for random delta in B_level and invariant probes v
SummandReport summand_check(const FiniteMatrixGroup& g, const WeightedRingSpec& spec, const std::vector<QPoly>& probes,
                            std::size_t level, std::size_t samples, std::uint64_t seed);
// same over R_f with an invariant f
SummandReport summand_check(const FiniteMatrixGroup& g, const WeightedRingSpec& spec, const Localization& loc,
                            const std::vector<LocalizedElement>& probes, std::size_t level, std::size_t samples,
                            std::uint64_t seed);

}  // namespace dmodkit
