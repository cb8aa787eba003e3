#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "dmodkit/bernstein.hpp"
#include "dmodkit/filtration.hpp"
#include "dmodkit/weyl.hpp"

namespace dmodkit {

// p / f^t in R_f, where f is held by the owning Localization.
struct LocalizedElement {
  QPoly numerator;
  std::uint32_t exponent = 0;
};

// a(s) f^s in R_f[s] f^s, stored as (sum_k s^k coeffs[k]) / f^exponent.
// Denominators are normalized lazily (on equality tests and output).
struct FsElement {
  std::vector<QPoly> coeffs;
  std::uint32_t exponent = 0;
};

// f^(-fpow) * numerator as an operator in D_{R_f}[s]
struct ThetaOperator {
  SWeyl numerator;
  std::uint32_t fpow = 0;
};

// The localization R_f of k[x_1..x_n] at a nonzero f, with its D-module
// structure.
class Localization {
 public:
  explicit Localization(QPoly f);

  const QPoly& base() const { return f_; }
  std::size_t nvars() const { return f_.nvars(); }

  LocalizedElement element(QPoly p, std::uint32_t t = 0) const;
  // strips common factors of f from numerator and denominator
  LocalizedElement normalize(LocalizedElement v) const;
  bool equal(const LocalizedElement& a, const LocalizedElement& b) const;
  bool is_normalized(const LocalizedElement& v) const;

  LocalizedElement add(const LocalizedElement& a, const LocalizedElement& b) const;
  LocalizedElement scale(const LocalizedElement& a, const Rational& c) const;
  LocalizedElement multiply(const QPoly& p, const LocalizedElement& a) const;
  // f^j * a for any integer j
  LocalizedElement times_f_power(const LocalizedElement& a, std::int64_t j) const;

  // Recursive extension of the action on R:
  // delta(v / f^t) = (delta(v) - [delta, f^t](v / f^t)) / f^t
  LocalizedElement act(const QWeyl& delta, const LocalizedElement& v) const;
  // Independent route: delta(p f^-t) = sum_i binom(-t, i) delta^(i)(p) / f^(t+i)
  LocalizedElement act_closed_form(const QWeyl& delta, const LocalizedElement& v) const;

  // theta(delta) = sum_i binom(s,i) f^-i delta^(i), with cleared denominator
  ThetaOperator theta_hom(const QWeyl& delta) const;
  ThetaOperator theta_mul(const ThetaOperator& a, const ThetaOperator& b) const;
  bool theta_equal(const ThetaOperator& a, const ThetaOperator& b) const;
  // action of D_{R_f}[s] on R_f[s] f^s with s central (f^s untouched)
  FsElement theta_act(const ThetaOperator& op, const FsElement& u) const;

  FsElement fs_element(std::vector<QPoly> coeffs, std::uint32_t t = 0) const;
  // delta . a(s) f^s = sum_i binom(s,i) f^-i delta^(i)(a(s)) f^s
  FsElement fs_act(const SWeyl& delta, const FsElement& u) const;
  FsElement fs_normalize(FsElement u) const;
  bool fs_equal(const FsElement& a, const FsElement& b) const;
  // s -> t, folding f^t into the fraction
  LocalizedElement specialize(const FsElement& u, std::int64_t t) const;

 private:
  QPoly f_power(std::uint32_t t) const { return f_.pow(t); }
  LocalizedElement act_rec(const QWeyl& delta, const QPoly& p, std::uint32_t t) const;

  QPoly f_;
};

// Identity delta f^j = sum_i binom(j,i) f^(j-i) delta^(i): exact operator
// equality for j >= 0; for j < 0, both sides applied to every probe of R_f.
bool verify_commute_identity(const QWeyl& delta, const QPoly& f, std::int64_t j,
                             const std::vector<LocalizedElement>& probes);

enum class GrowthModule { Ring, Localized };

struct GrowthReport {
  DimSequence sequence;
  GrowthEstimate estimate;
  std::uint64_t ring_dimension = 0;
  std::uint64_t slope_level = 0;  // a with f in B_a
  std::uint64_t order_constant = 0;  // C with B_i in D^{Ci}
};

class FiniteMatrixGroup;

// Dimension growth of [R]_{<=i} (Ring) or of f^{-Cj} [R]_{<= j(Ca+1)}
// (Localized), computed by exact spanning.
GrowthReport holonomic_growth_report(GrowthModule module, const WeightedRingSpec& spec, const QPoly* f,
                                     const FiniteMatrixGroup* group, std::size_t imax, std::size_t window = 4);

}  // namespace dmodkit
