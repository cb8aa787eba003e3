#pragma once

#include <random>

#include "dmodkit/poly.hpp"
#include "dmodkit/weyl.hpp"

namespace dmodkit::testing {

inline Monomial random_monomial(std::size_t n, std::uint32_t maxdeg, std::mt19937_64& rng) {
  Monomial m(n, 0);
  std::uniform_int_distribution<std::uint32_t> pick(0, maxdeg);
  std::uint32_t budget = pick(rng);
  std::uniform_int_distribution<std::size_t> var(0, n - 1);
  while (budget-- > 0) ++m[var(rng)];
  return m;
}

inline Rational random_coeff(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-5, 5), den(1, 3);
  int a = 0;
  while (a == 0) a = num(rng);
  Rational r(a, den(rng));
  r.canonicalize();
  return r;
}

inline QPoly random_poly(std::size_t n, std::uint32_t maxdeg, std::size_t terms, std::mt19937_64& rng) {
  QPoly f(n);
  for (std::size_t t = 0; t < terms; ++t) f.add_term(random_monomial(n, maxdeg, rng), random_coeff(rng));
  return f;
}

inline QPoly random_nonzero_poly(std::size_t n, std::uint32_t maxdeg, std::size_t terms, std::mt19937_64& rng) {
  QPoly f(n);
  while (f.is_zero()) f = random_poly(n, maxdeg, terms, rng);
  return f;
}

// x^alpha d^beta with |alpha| <= maxdeg, |beta| <= maxord
inline QWeyl random_op(std::size_t n, std::uint32_t maxdeg, std::uint32_t maxord, std::size_t terms,
                       std::mt19937_64& rng) {
  QWeyl op(n);
  for (std::size_t t = 0; t < terms; ++t) {
    op.add_term(random_monomial(n, maxdeg, rng), random_monomial(n, maxord, rng), random_coeff(rng));
  }
  return op;
}

}  // namespace dmodkit::testing
