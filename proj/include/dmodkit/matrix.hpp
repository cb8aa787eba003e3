#pragma once

#include <string>
#include <vector>

#include "dmodkit/scalar.hpp"

namespace dmodkit {

// Small dense square matrix over Q.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  explicit RationalMatrix(std::size_t n) : n_(n), a_(n * n) {}
  RationalMatrix(std::size_t n, std::vector<Rational> entries);

  static RationalMatrix identity(std::size_t n);
  static RationalMatrix diagonal(const std::vector<Rational>& d);
  // permutation matrix sending basis vector e_j to e_{perm[j]}
  static RationalMatrix permutation(const std::vector<std::size_t>& perm);

  std::size_t size() const { return n_; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }
  Rational& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }

  friend RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b);
  friend RationalMatrix operator-(const RationalMatrix& a, const RationalMatrix& b);
  friend bool operator==(const RationalMatrix& a, const RationalMatrix& b) { return a.n_ == b.n_ && a.a_ == b.a_; }
  friend bool operator!=(const RationalMatrix& a, const RationalMatrix& b) { return !(a == b); }
  friend bool operator<(const RationalMatrix& a, const RationalMatrix& b);

  RationalMatrix transpose() const;
  // throws std::domain_error when singular
  RationalMatrix inverse() const;
  std::size_t rank() const;
  bool is_identity() const;

  std::string to_string() const;

 private:
  std::size_t n_ = 0;
  std::vector<Rational> a_;
};

}  // namespace dmodkit
