#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dmodkit/matrix.hpp"
#include "dmodkit/poly.hpp"
#include "dmodkit/spoly.hpp"

namespace dmodkit {

// Normal-form element sum c * x^alpha * d^beta of the Weyl algebra
// Q<x_1..x_n, d_1..d_n>, with every x-factor left of every d-factor.
// Keys hold the 2n exponents (alpha, beta). K is Rational, or SPoly for the
// s-parametric operators of D[s] (s central).
template <class K>
class WeylOp {
 public:
  using Terms = std::map<Monomial, K>;

  WeylOp() = default;
  explicit WeylOp(std::size_t n) : n_(n) {}

  static WeylOp constant(std::size_t n, const K& c) {
    WeylOp r(n);
    r.add_term(Monomial(2 * n, 0), c);
    return r;
  }
  static WeylOp term(const Monomial& alpha, const Monomial& beta, const K& c) {
    if (alpha.size() != beta.size()) throw std::invalid_argument("x/d exponent arity mismatch");
    WeylOp r(alpha.size());
    r.add_term(alpha, beta, c);
    return r;
  }
  static WeylOp x(std::size_t n, std::size_t j) {
    Monomial a(n, 0), b(n, 0);
    a.at(j) = 1;
    return term(a, b, K(1));
  }
  static WeylOp d(std::size_t n, std::size_t j) {
    Monomial a(n, 0), b(n, 0);
    b.at(j) = 1;
    return term(a, b, K(1));
  }
  // multiplication operator by f
  static WeylOp from_poly(const QPoly& f) {
    WeylOp r(f.nvars());
    Monomial zero(f.nvars(), 0);
    for (const auto& [m, c] : f.terms()) r.add_term(m, zero, K(c));
    return r;
  }

  std::size_t nvars() const { return n_; }
  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const Monomial& key, const K& c) {
    if (key.size() != 2 * n_) throw std::invalid_argument("operator key arity mismatch");
    if (dmodkit::is_zero(c)) return;
    auto it = terms_.find(key);
    if (it == terms_.end()) {
      terms_.emplace(key, c);
      return;
    }
    it->second = it->second + c;
    if (dmodkit::is_zero(it->second)) terms_.erase(it);
  }
  void add_term(const Monomial& alpha, const Monomial& beta, const K& c) {
    if (alpha.size() != n_ || beta.size() != n_) throw std::invalid_argument("operator exponent arity mismatch");
    Monomial key(alpha);
    key.insert(key.end(), beta.begin(), beta.end());
    add_term(key, c);
  }
  K coeff(const Monomial& alpha, const Monomial& beta) const {
    Monomial key(alpha);
    key.insert(key.end(), beta.begin(), beta.end());
    auto it = terms_.find(key);
    return it == terms_.end() ? K{} : it->second;
  }

  // max |beta| over stored terms; 0 for the zero operator
  std::uint64_t order() const {
    std::uint64_t o = 0;
    for (const auto& [k, c] : terms_) o = std::max(o, beta_degree(k));
    return o;
  }

  std::uint64_t beta_degree(const Monomial& key) const {
    std::uint64_t s = 0;
    for (std::size_t j = n_; j < 2 * n_; ++j) s += key[j];
    return s;
  }

  // sum alpha_j w_j - sum beta_j w_j when all terms agree
  std::optional<std::int64_t> homogeneous_degree(const std::vector<std::uint32_t>& weights) const {
    std::optional<std::int64_t> d;
    for (const auto& [k, c] : terms_) {
      std::int64_t e = term_degree(k, weights);
      if (d && *d != e) return std::nullopt;
      d = e;
    }
    return terms_.empty() ? std::optional<std::int64_t>(0) : d;
  }
  std::int64_t term_degree(const Monomial& key, const std::vector<std::uint32_t>& weights) const {
    std::int64_t e = 0;
    for (std::size_t j = 0; j < n_; ++j) {
      std::int64_t w = j < weights.size() ? weights[j] : 1;
      e += w * (static_cast<std::int64_t>(key[j]) - static_cast<std::int64_t>(key[n_ + j]));
    }
    return e;
  }

  friend WeylOp operator+(const WeylOp& a, const WeylOp& b) {
    check(a, b);
    WeylOp r = a;
    for (const auto& [k, c] : b.terms_) r.add_term(k, c);
    return r;
  }
  friend WeylOp operator-(const WeylOp& a, const WeylOp& b) {
    check(a, b);
    WeylOp r = a;
    for (const auto& [k, c] : b.terms_) r.add_term(k, -c);
    return r;
  }
  WeylOp operator-() const {
    WeylOp r(n_);
    for (const auto& [k, c] : terms_) r.terms_.emplace(k, -c);
    return r;
  }
  friend WeylOp operator*(const WeylOp& a, const K& c) {
    WeylOp r(a.n_);
    if (dmodkit::is_zero(c)) return r;
    for (const auto& [k, x] : a.terms_) r.add_term(k, x * c);
    return r;
  }
  WeylOp& operator+=(const WeylOp& o) { return *this = *this + o; }
  WeylOp& operator-=(const WeylOp& o) { return *this = *this - o; }

  friend bool operator==(const WeylOp& a, const WeylOp& b) { return a.n_ == b.n_ && a.terms_ == b.terms_; }
  friend bool operator!=(const WeylOp& a, const WeylOp& b) { return !(a == b); }

  static void check(const WeylOp& a, const WeylOp& b) {
    if (a.n_ != b.n_) throw std::invalid_argument("operator arity mismatch");
  }

 private:
  std::size_t n_ = 0;
  Terms terms_;
};

using QWeyl = WeylOp<Rational>;
using SWeyl = WeylOp<SPoly>;

// Product in normal form. d^b x^g = sum_k binom(b,k) binom(g,k) k! x^(g-k) d^(b-k)
// per variable, applied to every pair of terms in one pass.
template <class K>
WeylOp<K> weyl_mul(const WeylOp<K>& a, const WeylOp<K>& b);

template <class K>
WeylOp<K> operator*(const WeylOp<K>& a, const WeylOp<K>& b) {
  return weyl_mul(a, b);
}

template <class K>
WeylOp<K> commutator(const WeylOp<K>& a, const WeylOp<K>& b) {
  return weyl_mul(a, b) - weyl_mul(b, a);
}

// delta^(i), with delta^(0) = delta and delta^(i) = [delta^(i-1), f].
template <class K>
WeylOp<K> bracket_chain(const WeylOp<K>& delta, const QPoly& f, std::size_t i) {
  WeylOp<K> fop(f.nvars());
  Monomial zero(f.nvars(), 0);
  for (const auto& [m, c] : f.terms()) fop.add_term(m, zero, K(c));
  WeylOp<K> cur = delta;
  for (std::size_t k = 0; k < i && !cur.is_zero(); ++k) cur = commutator(cur, fop);
  return cur;
}

// all brackets delta^(0..order(delta))
template <class K>
std::vector<WeylOp<K>> bracket_sequence(const WeylOp<K>& delta, const QPoly& f) {
  WeylOp<K> fop = WeylOp<K>::from_poly(f);
  std::vector<WeylOp<K>> out{delta};
  while (!out.back().is_zero()) out.push_back(commutator(out.back(), fop));
  out.pop_back();
  return out;
}

// delta(f)
QPoly apply(const QWeyl& delta, const QPoly& f);

// lifting / specialization of the central parameter s
SWeyl lift(const QWeyl& delta);
QWeyl specialize(const SWeyl& delta, const Rational& t);
// delta = sum_k s^k delta_k
std::vector<QWeyl> s_slices(const SWeyl& delta);
SWeyl from_s_slices(const std::vector<QWeyl>& slices, std::size_t n);

// Linear substitution induced by g: x_i -> sum_j g(j,i) x_j.
QPoly group_act_poly(const RationalMatrix& g, const QPoly& f);
// x_i as above and d_i -> sum_j g^{-1}(i,j) d_j (contragredient).
QWeyl group_act_op(const RationalMatrix& g, const QWeyl& delta);

// Identity delta f^j = sum_i binom(j,i) f^(j-i) delta^(i) for j >= 0,
// as an exact identity of operators.
bool verify_commute_identity(const QWeyl& delta, const QPoly& f, std::int64_t j);

std::string to_string(const QWeyl& op);
std::string to_string(const SWeyl& op);
// accepts x1.., d1.. (aliases x,y,z and dx,dy,dz, or d for d1); factors are
// multiplied in the written order
QWeyl parse_weyl(const std::string& text, std::size_t nvars = 0);

extern template QWeyl weyl_mul(const QWeyl&, const QWeyl&);
extern template SWeyl weyl_mul(const SWeyl&, const SWeyl&);

}  // namespace dmodkit
