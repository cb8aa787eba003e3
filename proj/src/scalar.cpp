#include "dmodkit/scalar.hpp"

#include <cctype>
#include <limits>

namespace dmodkit {

Rational parse_rational(const std::string& text) {
  std::string t;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) t.push_back(c);
  }
  if (t.empty()) throw std::invalid_argument("empty rational literal");
  if (t.front() == '+') t.erase(t.begin());
  Rational q;
  if (q.set_str(t, 10) != 0) throw std::invalid_argument("bad rational literal: " + text);
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + text);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

Integer falling_factorial(std::int64_t m, std::uint32_t k) {
  Integer r = 1;
  for (std::uint32_t i = 0; i < k; ++i) r *= Integer(static_cast<long>(m - static_cast<std::int64_t>(i)));
  return r;
}

Integer factorial(std::uint32_t k) {
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), k);
  return r;
}

Integer binomial(std::int64_t m, std::uint32_t k) {
  Integer r = falling_factorial(m, k);
  Integer f = factorial(k);
  mpz_divexact(r.get_mpz_t(), r.get_mpz_t(), f.get_mpz_t());
  return r;
}

bool is_prime(std::uint32_t p) {
  if (p < 2) return false;
  for (std::uint32_t d = 2; d * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

Fp::Fp(std::int64_t value, std::uint32_t p) : p_(p) {
  if (p < 2 || p >= (1u << 16) || !is_prime(p)) {
    throw std::invalid_argument("F_p requires a prime p < 65536, got " + std::to_string(p));
  }
  std::int64_t r = value % static_cast<std::int64_t>(p);
  if (r < 0) r += p;
  value_ = static_cast<std::uint32_t>(r);
}

std::uint32_t Fp::common_prime(const Fp& a, const Fp& b) {
  if (a.p_ == 0) return b.p_;
  if (b.p_ != 0 && b.p_ != a.p_) throw std::invalid_argument("mixed characteristics in F_p arithmetic");
  return a.p_;
}

Fp operator+(const Fp& a, const Fp& b) {
  Fp r;
  r.p_ = Fp::common_prime(a, b);
  if (r.p_ == 0) return r;
  r.value_ = (a.value_ + b.value_) % r.p_;
  return r;
}

Fp operator-(const Fp& a, const Fp& b) {
  Fp r;
  r.p_ = Fp::common_prime(a, b);
  if (r.p_ == 0) return r;
  r.value_ = (a.value_ + r.p_ - b.value_) % r.p_;
  return r;
}

Fp operator*(const Fp& a, const Fp& b) {
  Fp r;
  r.p_ = Fp::common_prime(a, b);
  if (r.p_ == 0) return r;
  r.value_ = static_cast<std::uint32_t>((static_cast<std::uint64_t>(a.value_) * b.value_) % r.p_);
  return r;
}

Fp Fp::operator-() const {
  Fp r = *this;
  if (p_ != 0) r.value_ = (p_ - value_) % p_;
  return r;
}

Fp Fp::inverse() const {
  if (value_ == 0) throw std::domain_error("division by zero in F_p");
  // Fermat
  std::uint64_t base = value_, e = p_ - 2, acc = 1;
  while (e) {
    if (e & 1) acc = acc * base % p_;
    base = base * base % p_;
    e >>= 1;
  }
  Fp r;
  r.p_ = p_;
  r.value_ = static_cast<std::uint32_t>(acc);
  return r;
}

Fp operator/(const Fp& a, const Fp& b) { return a * b.inverse(); }

std::string to_string(const Fp& a) { return std::to_string(a.value()); }

std::ostream& operator<<(std::ostream& os, const Fp& a) { return os << a.value(); }

std::uint32_t binomial_mod(std::uint64_t m, std::uint64_t k, std::uint32_t p) {
  std::uint64_t acc = 1;
  while (m > 0 || k > 0) {
    std::uint64_t mi = m % p, ki = k % p;
    if (ki > mi) return 0;
    // small binomial mod p via multiplicative formula with inverses
    std::uint64_t num = 1, den = 1;
    for (std::uint64_t j = 0; j < ki; ++j) {
      num = num * ((mi - j) % p) % p;
      den = den * ((j + 1) % p) % p;
    }
    acc = acc * num % p;
    acc = acc * Fp(static_cast<std::int64_t>(den), p).inverse().value() % p;
    m /= p;
    k /= p;
  }
  return static_cast<std::uint32_t>(acc);
}

std::uint64_t ipow(std::uint64_t p, std::uint32_t e) {
  std::uint64_t r = 1;
  for (std::uint32_t i = 0; i < e; ++i) {
    if (r > std::numeric_limits<std::uint64_t>::max() / p) throw std::overflow_error("p^e overflows 64 bits");
    r *= p;
  }
  return r;
}

}  // namespace dmodkit
