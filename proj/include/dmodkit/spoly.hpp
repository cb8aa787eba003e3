#pragma once

#include <string>
#include <utility>
#include <vector>

#include "dmodkit/scalar.hpp"

namespace dmodkit {

// Dense univariate polynomial over Q in the central indeterminate s.
// Trailing zero coefficients are never stored.
class SPoly {
 public:
  SPoly() = default;
  SPoly(const Rational& c);  // NOLINT: constants convert implicitly
  SPoly(int c) : SPoly(Rational(c)) {}
  explicit SPoly(std::vector<Rational> coeffs);

  static SPoly s();
  static SPoly monomial(std::size_t k, const Rational& c = 1);

  bool is_zero() const { return coeffs_.empty(); }
  // degree of the zero polynomial is -1
  long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
  const std::vector<Rational>& coeffs() const { return coeffs_; }
  Rational coeff(std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : Rational(0); }
  Rational leading() const { return coeffs_.empty() ? Rational(0) : coeffs_.back(); }

  Rational eval(const Rational& t) const;
  // p(s + c)
  SPoly shifted(const Rational& c) const;

  friend SPoly operator+(const SPoly& a, const SPoly& b);
  friend SPoly operator-(const SPoly& a, const SPoly& b);
  friend SPoly operator*(const SPoly& a, const SPoly& b);
  friend SPoly operator*(const SPoly& a, const Rational& c);
  SPoly operator-() const;
  SPoly& operator+=(const SPoly& o) { return *this = *this + o; }
  SPoly& operator-=(const SPoly& o) { return *this = *this - o; }
  SPoly& operator*=(const SPoly& o) { return *this = *this * o; }

  friend bool operator==(const SPoly& a, const SPoly& b) { return a.coeffs_ == b.coeffs_; }
  friend bool operator!=(const SPoly& a, const SPoly& b) { return !(a == b); }

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

inline bool is_zero(const SPoly& p) { return p.is_zero(); }

// binom(s, i) = s(s-1)...(s-i+1)/i!
SPoly binom_s(std::size_t i);

// Canonical form, highest power first, e.g. "s^2 + 3/2*s + 1/2".
std::string to_string(const SPoly& p);
SPoly parse_spoly(const std::string& text);

// Rational roots with multiplicity (rational root test on the primitive
// integer multiple), plus the cofactor with no rational roots.
struct RootFactorization {
  std::vector<std::pair<Rational, unsigned>> roots;
  SPoly cofactor;
};
RootFactorization rational_roots(const SPoly& p);
// e.g. "(s + 1)*(s + 1/2)"; falls back to the expanded form for factors
// without rational roots.
std::string factored_string(const SPoly& p);

}  // namespace dmodkit
