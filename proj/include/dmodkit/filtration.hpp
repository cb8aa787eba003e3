#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dmodkit/scalar.hpp"
#include "dmodkit/weyl.hpp"

namespace dmodkit {

// Coordinates of an ambient basis vector (exponents; may be negative for
// Laurent-type spaces).
using Coord = std::vector<std::int64_t>;
using Vector = std::map<Coord, Rational>;

Vector to_vector(const QPoly& f);
Vector to_vector(const QWeyl& op);

enum class Provenance { Enumerated, External };

// dims[i] = dim_k F_i
struct DimSequence {
  std::vector<std::uint64_t> dims;
  Provenance provenance = Provenance::Enumerated;
};

// Ascending filtration given by a basis-listing capability.
struct FiltrationHandle {
  std::function<std::vector<Vector>(std::size_t)> level;
};

struct GrowthEstimate {
  Rational degree;
  // limsup surrogate: exact leading coefficient when stable, otherwise the
  // maximum of dim_i / i^degree over the fit window
  Rational multiplicity;
  bool stable = false;
  std::size_t window_begin = 0;
  std::size_t window_end = 0;  // exclusive
  std::size_t period = 0;      // 0 when no quasi-polynomial fit was found
};

std::uint64_t level_dimension(const FiltrationHandle& f, std::size_t i);
DimSequence dimension_sequence(const FiltrationHandle& f, std::size_t imax);

// First level i < imax whose basis is not contained in level i+1.
std::optional<std::size_t> first_non_ascending(const FiltrationHandle& f, std::size_t imax);

// Fits an eventually quasi-polynomial growth law on the trailing half of the
// sequence (at least `window` points). Periods 1..6 are tried in order.
// Throws std::invalid_argument if window < 4 or the sequence is shorter than
// 2 * window.
GrowthEstimate dim_estimate(const DimSequence& seq, std::size_t window);

enum class DominationKind { Shift, Linear };

struct DominationCertificate {
  DominationKind kind = DominationKind::Linear;
  std::uint64_t bound = 1;  // shift j or constant C
  std::size_t window = 0;   // verified for i <= window when `verified`
  bool verified = false;
  std::optional<std::size_t> failing_level;
  std::optional<Vector> witness;
};

// F_i in G_{C i} (Linear) or F_i in G_{i + j} (Shift) for all i <= window.
DominationCertificate check_domination(const FiltrationHandle& f, const FiltrationHandle& g, DominationKind kind,
                                       std::uint64_t bound, std::size_t window);

// floor(i^s) for rational s >= 1, exactly.
std::uint64_t floor_power(std::uint64_t i, const Rational& s);
FiltrationHandle reindex_power(const FiltrationHandle& f, const Rational& s);
DimSequence reindex_sequence(const DimSequence& seq, const Rational& s, std::size_t imax);

// G_i = span F_i . {v_1..v_l}, for an operator algebra acting on vectors.
using OperatorLevels = std::function<std::vector<QWeyl>(std::size_t)>;
using OperatorAction = std::function<Vector(const QWeyl&, const Vector&)>;
FiltrationHandle standard_module_filtration(OperatorLevels algebra, OperatorAction act, std::vector<Vector> gens);
// the Weyl algebra acting on polynomials
OperatorAction polynomial_action(std::size_t nvars);

struct BernsteinReport {
  GrowthEstimate algebra;
  GrowthEstimate module;
  // algebra degree F, module degree G: degree(G) >= degree(F) / 2
  std::optional<bool> inequality_holds;  // empty when either fit is unstable
  bool equality = false;
  std::optional<std::uint64_t> simplicity_constant;
  // e(G)^2 (C+1)^t (C+2)^t >= e(F) with t = degree(F)/2
  std::optional<bool> multiplicity_bound_holds;
  std::optional<double> multiplicity_lower_bound;
};

BernsteinReport bernstein_check(const DimSequence& algebra, const DimSequence& module, std::size_t window,
                                std::optional<std::uint64_t> simplicity_constant = std::nullopt);

// e_G^2 (C+1)^theta (C+2)^theta / e_F. theta must be a nonnegative integer.
Rational length_bound(const Rational& e_module, const Rational& e_algebra, std::uint64_t c, const Rational& theta);

void write_csv(std::ostream& os, const DimSequence& seq);
DimSequence read_csv(std::istream& is);

}  // namespace dmodkit
