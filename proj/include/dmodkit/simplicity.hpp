#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "dmodkit/bernstein.hpp"
#include "dmodkit/invariants.hpp"
#include "dmodkit/weyl.hpp"

namespace dmodkit {

// One step of a bracket reduction: delta <- [delta, d_var] or [delta, x_var].
struct ReductionStep {
  enum class Kind { WithD, WithX };
  Kind kind = Kind::WithD;
  std::size_t var = 0;
};

struct ReductionCertificate {
  QWeyl start;
  std::vector<ReductionStep> steps;
  Rational unit;  // the nonzero constant reached
  bool success = false;
};

// Greedy bracketing: first strip x's ([delta, d_j] on the largest alpha_j,
// smallest j on ties), then d's ([delta, x_j] likewise).
ReductionCertificate reduce_to_unit(const QWeyl& delta);
bool verify_reduction(const ReductionCertificate& cert);

// 1 = sum_t L_t delta R_t with L_t, R_t in B_{C i}
struct MembershipCertificate {
  QWeyl delta;
  std::size_t i = 0;
  std::uint64_t c = 0;
  std::vector<std::pair<QWeyl, QWeyl>> terms;
};

// Expands a bracket reduction into an explicit two-sided combination.
MembershipCertificate membership_from_reduction(const ReductionCertificate& cert, std::size_t i, std::uint64_t c);

// Least C <= cmax (C >= 1, except C = 0 at i = 0) with 1 in span{alpha delta beta : alpha, beta in B_{Ci}},
// or in (B_{Ci})^G when a group is given. For homogeneous delta only pairs
// with deg alpha + deg beta = -deg delta can contribute and the rest are
// skipped.
std::optional<MembershipCertificate> membership_certificate(const WeightedRingSpec& spec, const QWeyl& delta,
                                                            std::size_t i, std::uint64_t cmax,
                                                            const FiniteMatrixGroup* group = nullptr);

// Replays a certificate: exact identity and filtration levels (and
// invariance of every factor when a group is given).
bool verify_membership(const WeightedRingSpec& spec, const MembershipCertificate& cert,
                       const FiniteMatrixGroup* group = nullptr);

struct MinConstantRow {
  std::size_t i = 0;
  std::optional<std::uint64_t> c;  // max over the basis; empty when some delta needs C > cmax
  std::vector<std::optional<std::uint64_t>> per_basis;
  std::size_t basis_size = 0;
  bool verified = false;
};

// C_i over a basis of (B_i)^G for i = 0..imax (C_0 = 0 by convention)
std::vector<MinConstantRow> min_constant_table(const FiniteMatrixGroup& g, const WeightedRingSpec& spec,
                                               std::size_t imax, std::uint64_t cmax);

}  // namespace dmodkit
