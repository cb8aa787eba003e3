#include "dmodkit/matrix.hpp"

#include <stdexcept>

namespace dmodkit {

RationalMatrix::RationalMatrix(std::size_t n, std::vector<Rational> entries) : n_(n), a_(std::move(entries)) {
  if (a_.size() != n * n) throw std::invalid_argument("matrix entry count does not match n*n");
}

RationalMatrix RationalMatrix::identity(std::size_t n) {
  RationalMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RationalMatrix RationalMatrix::diagonal(const std::vector<Rational>& d) {
  RationalMatrix m(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

RationalMatrix RationalMatrix::permutation(const std::vector<std::size_t>& perm) {
  RationalMatrix m(perm.size());
  for (std::size_t j = 0; j < perm.size(); ++j) m(perm.at(j), j) = 1;
  return m;
}

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.n_ != b.n_) throw std::invalid_argument("matrix size mismatch");
  RationalMatrix r(a.n_);
  for (std::size_t i = 0; i < a.n_; ++i) {
    for (std::size_t k = 0; k < a.n_; ++k) {
      if (sgn(a(i, k)) == 0) continue;
      for (std::size_t j = 0; j < a.n_; ++j) r(i, j) += a(i, k) * b(k, j);
    }
  }
  return r;
}

RationalMatrix operator-(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.n_ != b.n_) throw std::invalid_argument("matrix size mismatch");
  RationalMatrix r(a.n_);
  for (std::size_t i = 0; i < a.a_.size(); ++i) r.a_[i] = a.a_[i] - b.a_[i];
  return r;
}

bool operator<(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.n_ != b.n_) return a.n_ < b.n_;
  for (std::size_t i = 0; i < a.a_.size(); ++i) {
    if (a.a_[i] != b.a_[i]) return a.a_[i] < b.a_[i];
  }
  return false;
}

RationalMatrix RationalMatrix::transpose() const {
  RationalMatrix r(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) r(j, i) = (*this)(i, j);
  }
  return r;
}

RationalMatrix RationalMatrix::inverse() const {
  RationalMatrix m = *this;
  RationalMatrix inv = identity(n_);
  for (std::size_t c = 0; c < n_; ++c) {
    std::size_t p = c;
    while (p < n_ && sgn(m(p, c)) == 0) ++p;
    if (p == n_) throw std::domain_error("singular matrix");
    if (p != c) {
      for (std::size_t j = 0; j < n_; ++j) {
        std::swap(m(p, j), m(c, j));
        std::swap(inv(p, j), inv(c, j));
      }
    }
    Rational piv = m(c, c);
    for (std::size_t j = 0; j < n_; ++j) {
      m(c, j) /= piv;
      inv(c, j) /= piv;
    }
    for (std::size_t r = 0; r < n_; ++r) {
      if (r == c || sgn(m(r, c)) == 0) continue;
      Rational f = m(r, c);
      for (std::size_t j = 0; j < n_; ++j) {
        m(r, j) -= f * m(c, j);
        inv(r, j) -= f * inv(c, j);
      }
    }
  }
  return inv;
}

std::size_t RationalMatrix::rank() const {
  RationalMatrix m = *this;
  std::size_t r = 0;
  for (std::size_t c = 0; c < n_ && r < n_; ++c) {
    std::size_t p = r;
    while (p < n_ && sgn(m(p, c)) == 0) ++p;
    if (p == n_) continue;
    for (std::size_t j = 0; j < n_; ++j) std::swap(m(p, j), m(r, j));
    for (std::size_t i = r + 1; i < n_; ++i) {
      if (sgn(m(i, c)) == 0) continue;
      Rational f = m(i, c) / m(r, c);
      for (std::size_t j = c; j < n_; ++j) m(i, j) -= f * m(r, j);
    }
    ++r;
  }
  return r;
}

bool RationalMatrix::is_identity() const { return *this == identity(n_); }

std::string RationalMatrix::to_string() const {
  std::string out = "[";
  for (std::size_t i = 0; i < n_; ++i) {
    out += i ? ", [" : "[";
    for (std::size_t j = 0; j < n_; ++j) {
      if (j) out += ", ";
      out += (*this)(i, j).get_str();
    }
    out += "]";
  }
  return out + "]";
}

}  // namespace dmodkit
