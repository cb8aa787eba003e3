#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dmodkit/bernstein.hpp"
#include "dmodkit/invariants.hpp"
#include "dmodkit/weyl.hpp"

namespace dmodkit {

struct BSOptions {
  std::size_t level = 4;  // delta drawn from B_level (or its invariants)
  std::size_t sdeg = 2;   // degree of delta in s
  std::size_t bdeg = 4;   // largest degree of b tried
  // for weighted-homogeneous f, search only operators of degree -deg f
  bool homogeneous_restriction = true;
};

struct BSResult {
  bool found = false;
  SPoly b;  // monic, least degree within the search space
  SWeyl delta;
  std::size_t level = 0;
  std::size_t sdeg = 0;
  std::size_t unknowns = 0;
  bool homogeneous_restricted = false;
  bool invariant_search = false;
  // delta|_{s=t} (f^{t+1}) == b(t) f^t at each t listed
  std::vector<std::int64_t> checked_points;
  bool verified = false;
  // delta . f^{s+1} == b(s) f^s in R_f[s] f^s
  bool symbolic_verified = false;
};

// Solves delta(s) f^{s+1} = b(s) f^s by exact linear algebra over the
// monomial basis of B_level (times 1, s, .., s^sdeg). Unknown columns follow
// (level, alpha, beta, k); free variables are set to zero.
BSResult bs_solve(const QPoly& f, const WeightedRingSpec& spec, const BSOptions& opts);
// same, with delta restricted to (B_level)^G for an invariant f
BSResult bs_solve(const QPoly& f, const WeightedRingSpec& spec, const FiniteMatrixGroup& group, const BSOptions& opts);

// re-checks a claimed functional equation by specialization t = 0..tmax
bool bs_verify(const QPoly& f, const SWeyl& delta, const SPoly& b, std::int64_t tmax);

}  // namespace dmodkit
