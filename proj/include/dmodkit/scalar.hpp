#pragma once

#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace dmodkit {

// Arbitrary precision rationals. gmpxx canonicalizes every arithmetic result,
// so values are always in lowest terms with a positive denominator.
using Rational = mpq_class;
using Integer = mpz_class;

Rational parse_rational(const std::string& text);
std::string to_string(const Rational& q);

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }
inline bool is_one(const Rational& q) { return q == 1; }

// Falling factorial m(m-1)...(m-k+1) as an exact integer.
Integer falling_factorial(std::int64_t m, std::uint32_t k);
Integer binomial(std::int64_t m, std::uint32_t k);
Integer factorial(std::uint32_t k);

bool is_prime(std::uint32_t p);

// Element of F_p for a prime p < 2^16.
//
// A default-constructed Fp is the zero of an unspecified field (modulus 0);
// it adopts the modulus of the other operand in mixed arithmetic.
class Fp {
 public:
  Fp() = default;
  Fp(std::int64_t value, std::uint32_t p);

  std::uint32_t value() const { return value_; }
  std::uint32_t prime() const { return p_; }

  friend Fp operator+(const Fp& a, const Fp& b);
  friend Fp operator-(const Fp& a, const Fp& b);
  friend Fp operator*(const Fp& a, const Fp& b);
  friend Fp operator/(const Fp& a, const Fp& b);
  Fp operator-() const;
  Fp inverse() const;

  Fp& operator+=(const Fp& o) { return *this = *this + o; }
  Fp& operator-=(const Fp& o) { return *this = *this - o; }
  Fp& operator*=(const Fp& o) { return *this = *this * o; }

  friend bool operator==(const Fp& a, const Fp& b) { return a.value_ == b.value_; }
  friend bool operator!=(const Fp& a, const Fp& b) { return a.value_ != b.value_; }

 private:
  static std::uint32_t common_prime(const Fp& a, const Fp& b);

  std::uint32_t value_ = 0;
  std::uint32_t p_ = 0;
};

inline bool is_zero(const Fp& a) { return a.value() == 0; }
std::string to_string(const Fp& a);
std::ostream& operator<<(std::ostream& os, const Fp& a);

// binom(m, k) mod p by Lucas' theorem.
std::uint32_t binomial_mod(std::uint64_t m, std::uint64_t k, std::uint32_t p);

// p^e, throwing on overflow of 64 bits.
std::uint64_t ipow(std::uint64_t p, std::uint32_t e);

}  // namespace dmodkit
