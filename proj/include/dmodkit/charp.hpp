#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dmodkit/linalg.hpp"
#include "dmodkit/poly.hpp"

namespace dmodkit {

// sum c x^alpha D^(beta) over F_p, D^(beta) = prod d_j^{beta_j} / beta_j!
class DividedPowerOp {
 public:
  using Terms = std::map<Monomial, Fp>;  // keys (alpha, beta)

  DividedPowerOp() = default;
  DividedPowerOp(std::size_t n, std::uint32_t p);
  static DividedPowerOp term(const Monomial& alpha, const Monomial& beta, std::uint32_t p, std::int64_t c = 1);
  static DividedPowerOp from_poly(const FpPoly& f, std::uint32_t p);

  std::size_t nvars() const { return n_; }
  std::uint32_t prime() const { return p_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  void add_term(const Monomial& key, const Fp& c);
  std::uint64_t order() const;  // max |beta|
  Exponent max_beta() const;    // max beta_j

  friend DividedPowerOp operator+(const DividedPowerOp& a, const DividedPowerOp& b);
  friend DividedPowerOp operator-(const DividedPowerOp& a, const DividedPowerOp& b);
  friend bool operator==(const DividedPowerOp& a, const DividedPowerOp& b) {
    return a.n_ == b.n_ && a.p_ == b.p_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const DividedPowerOp& a, const DividedPowerOp& b) { return !(a == b); }

 private:
  std::size_t n_ = 0;
  std::uint32_t p_ = 0;
  Terms terms_;
};

// D^(b) x^g = sum_k binom(g,k) x^(g-k) D^(b-k); D^(a) D^(b) = binom(a+b,a) D^(a+b)
DividedPowerOp dp_mul(const DividedPowerOp& a, const DividedPowerOp& b);
FpPoly dp_apply(const DividedPowerOp& op, const FpPoly& f);
std::string to_string(const DividedPowerOp& op);
// x1.., D1.. (or d1..) with optional "^(k)" / "^k" exponents read as divided powers
DividedPowerOp parse_dp_op(const std::string& text, std::uint32_t p, std::size_t nvars = 0);

struct LevelReport {
  std::uint32_t level = 0;
  // commutation with every x_j^{p^level} (and failure at p^{level-1}) checked
  // exactly against the beta bound
  bool verified = false;
};
LevelReport level_of(const DividedPowerOp& op);

// ceil(log_p(i + 1))
std::uint32_t ceil_log(std::uint64_t i_plus_one, std::uint32_t p);

struct ContainmentReport {
  std::size_t checked = 0;
  std::size_t passed = 0;
  bool ok() const { return checked == passed; }
};
// order <= i implies level <= ceil(log_p(i+1)), over every monomial operator
ContainmentReport check_order_to_level(std::uint32_t p, std::size_t n, std::size_t imax);
// level <= e implies order <= n(p^e - 1), over every monomial operator
ContainmentReport check_level_to_order(std::uint32_t p, std::size_t n, std::uint32_t emax);

class MonomialIdeal {
 public:
  MonomialIdeal() = default;
  MonomialIdeal(std::size_t n, std::vector<Monomial> gens);  // minimalizes
  static MonomialIdeal unit(std::size_t n);
  static MonomialIdeal maximal(std::size_t n);
  static MonomialIdeal power_of_maximal(std::size_t n, std::uint64_t k);

  std::size_t nvars() const { return n_; }
  const std::vector<Monomial>& gens() const { return gens_; }
  bool is_zero() const { return gens_.empty(); }
  bool is_unit() const;
  bool contains(const Monomial& m) const;
  bool contains(const FpPoly& f) const;  // termwise
  bool subset_of(const MonomialIdeal& o) const;
  friend bool operator==(const MonomialIdeal& a, const MonomialIdeal& b) { return a.n_ == b.n_ && a.gens_ == b.gens_; }

  MonomialIdeal frobenius_power(std::uint64_t q) const;
  MonomialIdeal colon(const Monomial& m) const;
  // (this : o); (0 : 0) is the unit ideal
  MonomialIdeal colon(const MonomialIdeal& o) const;
  MonomialIdeal intersect(const MonomialIdeal& o) const;

 private:
  std::size_t n_ = 0;
  std::vector<Monomial> gens_;
};
std::string to_string(const MonomialIdeal& I, const std::vector<std::string>& names = {});

// generator-wise p^e-th powers
std::vector<FpPoly> frobenius_power(const std::vector<FpPoly>& gens, std::uint32_t p, std::uint32_t e);

// An ideal J of F_p[x] containing every monomial of total degree >= guarantee,
// stored as its low part J cap S_{<guarantee} (an F_p-subspace). This
// determines J, and gives exact membership and containment.
class TruncatedIdeal {
 public:
  TruncatedIdeal() = default;
  TruncatedIdeal(std::size_t n, std::uint32_t p, std::uint64_t guarantee);
  // ideal generated by gens plus every monomial of degree >= guarantee
  static TruncatedIdeal generated(std::size_t n, std::uint32_t p, const std::vector<FpPoly>& gens,
                                  std::uint64_t guarantee);
  static TruncatedIdeal from_monomial(const MonomialIdeal& I, std::uint32_t p);  // I must be m-primary

  std::size_t nvars() const { return n_; }
  std::uint32_t prime() const { return p_; }
  std::uint64_t guarantee() const { return guarantee_; }
  std::size_t low_dimension() const { return low_.rank(); }
  bool contains(const FpPoly& f) const;
  bool contains_low(const FpPoly& f) const;
  void insert_low(const FpPoly& f);  // f has degree < guarantee
  bool subset_of(const TruncatedIdeal& o) const;
  bool is_unit() const;
  // a generating set: reduced low-degree elements, then monomials of the
  // guarantee degree not already generated
  std::vector<FpPoly> generators(const std::vector<FpPoly>& ambient = {}) const;

 private:
  SparseVec<Fp> low_vector(const FpPoly& f, bool strict);
  SparseVec<Fp> low_vector_const(const FpPoly& f) const;

  std::size_t n_ = 0;
  std::uint32_t p_ = 0;
  std::uint64_t guarantee_ = 0;
  Indexer<Monomial> columns_;
  EchelonBasis<Fp> low_;
};
bool operator==(const TruncatedIdeal& a, const TruncatedIdeal& b);

// S/I with I monomial, or principal I = (f)
struct Presentation {
  std::string name;
  std::uint32_t p = 2;
  std::size_t n = 1;
  std::vector<std::string> vars;
  std::optional<MonomialIdeal> monomial;
  std::optional<FpPoly> principal;
  std::vector<FpPoly> ideal_generators() const;
};
// "xy-hypersurface-p2", "polynomial-p2", "quadric-p3", "cusp-p5"
Presentation named_presentation(const std::string& name);

struct SplittingIdeal {
  std::uint32_t e = 0;
  std::uint64_t q = 0;
  TruncatedIdeal lifted;  // the preimage in S, which contains I
  std::vector<FpPoly> generators;
  std::optional<MonomialIdeal> monomial;  // exact generators for monomial I
};
// Fedder route: r in I_e iff r (I^[q] : I) in m^[q]
SplittingIdeal splitting_ideal(const Presentation& pres, std::uint32_t e);

// Direct check of the definition for e = 1: r is in I_1 iff for every s in
// (I^[p] : I), the trace of s r (the coefficient of x^{(p-1,..,p-1)}) is 0.
bool brute_force_in_first_splitting_ideal(const Presentation& pres, const FpPoly& r);
struct BruteForceComparison {
  std::size_t checked = 0;
  std::size_t agreed = 0;
  bool ok() const { return checked == agreed; }
};
// every monomial of degree <= max_degree plus `random_samples` random polynomials
BruteForceComparison compare_fedder_brute_force(const Presentation& pres, std::uint64_t max_degree,
                                                std::size_t random_samples, std::uint64_t seed);

struct SplittingReport {
  Presentation presentation;
  std::vector<SplittingIdeal> ideals;  // e = 1..emax
  bool f_pure = false;
  bool chain_verified = false;  // I_{e+1} in I_e for all e
  bool strictly_shrinking = false;
  std::optional<std::uint32_t> witness;  // least a with I_{a+e} in m^{p^e} (+I)
  bool stabilized_nonzero = false;
  std::string verdict;
};
SplittingReport f_regularity_scan(const Presentation& pres, std::uint32_t emax);

struct VeroneseFFRT {
  std::size_t n = 0;
  std::uint64_t r = 0;
  std::uint32_t p = 0;
  std::uint32_t e = 0;
  std::map<std::uint64_t, std::uint64_t> multiplicities;  // class j -> count
  std::uint64_t total = 0;                                  // p^{en}
  bool coprime = false;                                     // gcd(p, r) = 1
  bool class_set_stable = false;  // same classes occur for every e' in 1..e
};
VeroneseFFRT veronese_ffrt(std::size_t n, std::uint64_t r, std::uint32_t p, std::uint32_t e);

}  // namespace dmodkit
