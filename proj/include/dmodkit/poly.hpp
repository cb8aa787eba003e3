#pragma once

#include <cstdint>
#include <map>
#include <limits>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

#include "dmodkit/scalar.hpp"

namespace dmodkit {

using Exponent = std::uint32_t;
using Monomial = std::vector<Exponent>;

inline constexpr std::uint64_t kMaxExponent = (std::uint64_t{1} << 31) - 1;

// Raised by exact_divide when the divisor does not divide the dividend.
class DivisionNotExact : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

Monomial monomial_product(const Monomial& a, const Monomial& b);
bool monomial_divides(const Monomial& a, const Monomial& b);
Monomial monomial_quotient(const Monomial& a, const Monomial& b);
std::uint64_t monomial_degree(const Monomial& a);
std::uint64_t monomial_degree(const Monomial& a, const std::vector<std::uint32_t>& weights);

// Sparse multivariate polynomial over a coefficient field K.
template <class K>
class Poly {
 public:
  using Terms = std::map<Monomial, K>;

  Poly() = default;
  explicit Poly(std::size_t nvars) : n_(nvars) {}

  static Poly constant(std::size_t n, const K& c) {
    Poly p(n);
    p.add_term(Monomial(n, 0), c);
    return p;
  }
  static Poly term(Monomial m, const K& c) {
    Poly p(m.size());
    p.add_term(m, c);
    return p;
  }
  static Poly variable(std::size_t n, std::size_t j, const K& one) {
    Monomial m(n, 0);
    m.at(j) = 1;
    return term(std::move(m), one);
  }

  std::size_t nvars() const { return n_; }
  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const Monomial& m, const K& c) {
    if (m.size() != n_) throw std::invalid_argument("monomial arity mismatch");
    for (auto e : m) {
      if (e > kMaxExponent) throw std::overflow_error("exponent exceeds 2^31 - 1");
    }
    if (is_zero_coeff(c)) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      terms_.emplace(m, c);
      return;
    }
    it->second = it->second + c;
    if (is_zero_coeff(it->second)) terms_.erase(it);
  }

  K coeff(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? K{} : it->second;
  }

  std::uint64_t total_degree() const {
    std::uint64_t d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, monomial_degree(m));
    return d;
  }
  std::uint64_t min_total_degree() const {
    std::uint64_t d = std::numeric_limits<std::uint64_t>::max();
    for (const auto& [m, c] : terms_) d = std::min(d, monomial_degree(m));
    return terms_.empty() ? 0 : d;
  }

  // weighted degree when every term has the same weighted degree
  std::optional<std::uint64_t> homogeneous_degree(const std::vector<std::uint32_t>& weights) const {
    std::optional<std::uint64_t> d;
    for (const auto& [m, c] : terms_) {
      auto e = monomial_degree(m, weights);
      if (d && *d != e) return std::nullopt;
      d = e;
    }
    return terms_.empty() ? std::optional<std::uint64_t>(0) : d;
  }

  Poly pow(unsigned k) const {
    Poly r = constant(n_, one_like());
    Poly base = *this;
    while (k) {
      if (k & 1u) r = r * base;
      k >>= 1u;
      if (k) base = base * base;
    }
    return r;
  }

  friend Poly operator+(const Poly& a, const Poly& b) {
    check_arity(a, b);
    Poly r = a;
    for (const auto& [m, c] : b.terms_) r.add_term(m, c);
    return r;
  }
  friend Poly operator-(const Poly& a, const Poly& b) {
    check_arity(a, b);
    Poly r = a;
    for (const auto& [m, c] : b.terms_) r.add_term(m, -c);
    return r;
  }
  Poly operator-() const {
    Poly r(n_);
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
  }
  friend Poly operator*(const Poly& a, const Poly& b) {
    check_arity(a, b);
    Poly r(a.n_);
    for (const auto& [ma, ca] : a.terms_) {
      for (const auto& [mb, cb] : b.terms_) r.add_term(monomial_product(ma, mb), ca * cb);
    }
    return r;
  }
  friend Poly operator*(const Poly& a, const K& c) {
    Poly r(a.n_);
    if (is_zero_coeff(c)) return r;
    for (const auto& [m, x] : a.terms_) r.add_term(m, x * c);
    return r;
  }
  Poly& operator+=(const Poly& o) { return *this = *this + o; }
  Poly& operator-=(const Poly& o) { return *this = *this - o; }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  friend bool operator==(const Poly& a, const Poly& b) { return a.n_ == b.n_ && a.terms_ == b.terms_; }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  // multiply by a monomial
  Poly shifted(const Monomial& m) const {
    Poly r(n_);
    for (const auto& [mm, c] : terms_) r.terms_.emplace(monomial_product(mm, m), c);
    return r;
  }

 private:
  static bool is_zero_coeff(const K& c) { return dmodkit::is_zero(c); }
  static void check_arity(const Poly& a, const Poly& b) {
    if (a.n_ != b.n_) throw std::invalid_argument("polynomial arity mismatch");
  }
  K one_like() const {
    if constexpr (std::is_same_v<K, Fp>) {
      std::uint32_t p = terms_.empty() ? 0 : terms_.begin()->second.prime();
      if (p == 0) throw std::domain_error("power of a zero F_p polynomial with unknown modulus");
      return Fp(1, p);
    } else {
      return K(1);
    }
  }

  std::size_t n_ = 0;
  Terms terms_;
};

// q with q * b == a; throws DivisionNotExact otherwise.
template <class K>
Poly<K> exact_divide(const Poly<K>& a, const Poly<K>& b) {
  if (b.is_zero()) throw std::domain_error("division by the zero polynomial");
  if (a.nvars() != b.nvars()) throw std::invalid_argument("polynomial arity mismatch");
  const auto& [lead_m, lead_c] = *b.terms().rbegin();
  Poly<K> q(a.nvars());
  Poly<K> rem = a;
  while (!rem.is_zero()) {
    const auto& [m, c] = *rem.terms().rbegin();
    if (!monomial_divides(lead_m, m)) throw DivisionNotExact("polynomial division is not exact");
    auto t = Poly<K>::term(monomial_quotient(m, lead_m), c / lead_c);
    q += t;
    rem -= t * b;
  }
  return q;
}

template <class K>
bool divides(const Poly<K>& b, const Poly<K>& a) {
  try {
    (void)exact_divide(a, b);
    return true;
  } catch (const DivisionNotExact&) {
    return false;
  }
}

using QPoly = Poly<Rational>;
using FpPoly = Poly<Fp>;

// Text form: "c1*x1^a1*...*xn^an + ...", highest lex term first.
std::string to_string(const QPoly& p);
std::string to_string(const FpPoly& p);

// Accepts x1..xn (or the aliases x, y, z for x1, x2, x3), or custom names.
// The arity is max(nvars, highest variable index seen).
QPoly parse_poly(const std::string& text, std::size_t nvars = 0, const std::vector<std::string>& names = {});
FpPoly parse_fp_poly(const std::string& text, std::uint32_t p, std::size_t nvars = 0,
                     const std::vector<std::string>& names = {});

FpPoly reduce_mod_p(const QPoly& f, std::uint32_t p);

// Change of arity (padding with unused variables).
QPoly widen(const QPoly& f, std::size_t nvars);

}  // namespace dmodkit
