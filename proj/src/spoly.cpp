#include "dmodkit/spoly.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace dmodkit {

SPoly::SPoly(const Rational& c) {
  if (!dmodkit::is_zero(c)) coeffs_.push_back(c);
}

SPoly::SPoly(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

SPoly SPoly::s() { return monomial(1); }

SPoly SPoly::monomial(std::size_t k, const Rational& c) {
  std::vector<Rational> v(k + 1);
  v[k] = c;
  return SPoly(std::move(v));
}

void SPoly::trim() {
  while (!coeffs_.empty() && dmodkit::is_zero(coeffs_.back())) coeffs_.pop_back();
}

Rational SPoly::eval(const Rational& t) const {
  Rational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + *it;
  return acc;
}

SPoly SPoly::shifted(const Rational& c) const {
  // Horner in the shifted variable
  SPoly acc;
  SPoly lin(std::vector<Rational>{c, Rational(1)});
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * lin + SPoly(*it);
  return acc;
}

SPoly operator+(const SPoly& a, const SPoly& b) {
  std::vector<Rational> v(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) v[i] += a.coeffs_[i];
  for (std::size_t i = 0; i < b.coeffs_.size(); ++i) v[i] += b.coeffs_[i];
  return SPoly(std::move(v));
}

SPoly operator-(const SPoly& a, const SPoly& b) { return a + (-b); }

SPoly SPoly::operator-() const {
  SPoly r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

SPoly operator*(const SPoly& a, const SPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> v(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (dmodkit::is_zero(a.coeffs_[i])) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) v[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return SPoly(std::move(v));
}

SPoly operator*(const SPoly& a, const Rational& c) {
  if (dmodkit::is_zero(c)) return {};
  SPoly r = a;
  for (auto& x : r.coeffs_) x *= c;
  return r;
}

SPoly binom_s(std::size_t i) {
  SPoly acc(Rational(1));
  for (std::size_t k = 0; k < i; ++k) {
    acc = acc * SPoly(std::vector<Rational>{Rational(-static_cast<long>(k)), Rational(1)});
  }
  return acc * (Rational(1) / Rational(factorial(static_cast<std::uint32_t>(i))));
}

std::string to_string(const SPoly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  for (long k = p.degree(); k >= 0; --k) {
    Rational c = p.coeff(static_cast<std::size_t>(k));
    if (dmodkit::is_zero(c)) continue;
    bool neg = sgn(c) < 0;
    Rational a = neg ? Rational(-c) : c;
    if (out.empty()) {
      if (neg) out += "-";
    } else {
      out += neg ? " - " : " + ";
    }
    if (k == 0) {
      out += to_string(a);
      continue;
    }
    if (a != 1) out += to_string(a) + "*";
    out += "s";
    if (k > 1) out += "^" + std::to_string(k);
  }
  return out;
}

SPoly parse_spoly(const std::string& text) {
  std::string t;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) t.push_back(c);
  }
  if (t.empty()) throw std::invalid_argument("empty s-polynomial");
  SPoly acc;
  std::size_t pos = 0;
  while (pos < t.size()) {
    int sign = 1;
    if (t[pos] == '+' || t[pos] == '-') {
      if (t[pos] == '-') sign = -1;
      ++pos;
    }
    std::size_t end = pos;
    while (end < t.size() && t[end] != '+' && t[end] != '-') ++end;
    std::string term = t.substr(pos, end - pos);
    if (term.empty()) throw std::invalid_argument("bad s-polynomial: " + text);
    Rational c = 1;
    std::size_t k = 0;
    auto spos = term.find('s');
    if (spos == std::string::npos) {
      c = parse_rational(term);
    } else {
      std::string cpart = term.substr(0, spos);
      if (!cpart.empty()) {
        if (cpart.back() != '*') throw std::invalid_argument("bad s-polynomial term: " + term);
        cpart.pop_back();
        c = parse_rational(cpart);
      }
      std::string rest = term.substr(spos + 1);
      if (rest.empty()) {
        k = 1;
      } else if (rest.front() == '^') {
        k = std::stoul(rest.substr(1));
      } else {
        throw std::invalid_argument("bad s-polynomial term: " + term);
      }
    }
    acc += SPoly::monomial(k, c * sign);
    pos = end;
  }
  return acc;
}

}  // namespace dmodkit

namespace dmodkit {

namespace {

std::vector<Integer> divisors(Integer v) {
  if (v < 0) v = -v;
  std::vector<Integer> small, large;
  for (Integer d = 1; d * d <= v; ++d) {
    if (v % d == 0) {
      small.push_back(d);
      if (d * d != v) large.push_back(v / d);
    }
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

// p / (s - r), assuming r is a root
SPoly deflate(const SPoly& p, const Rational& r) {
  const auto& c = p.coeffs();
  std::vector<Rational> q(c.size() - 1);
  Rational carry = 0;
  for (std::size_t k = c.size(); k-- > 1;) {
    carry = c[k] + carry * r;
    q[k - 1] = carry;
  }
  return SPoly(std::move(q));
}

}  // namespace

RootFactorization rational_roots(const SPoly& p) {
  RootFactorization out;
  out.cofactor = p;
  if (p.degree() < 1) return out;
  SPoly cur = p;
  // zero roots
  unsigned zero_mult = 0;
  while (cur.degree() >= 1 && is_zero(cur.coeff(0))) {
    cur = deflate(cur, 0);
    ++zero_mult;
  }
  if (zero_mult) out.roots.emplace_back(Rational(0), zero_mult);
  if (cur.degree() >= 1) {
    Integer lcm = 1;
    for (const auto& c : cur.coeffs()) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.get_den_mpz_t());
    Integer a0 = Rational(cur.coeff(0) * lcm).get_num();
    Integer an = Rational(cur.leading() * lcm).get_num();
    const Integer limit = 1000000000;
    if (abs(a0) <= limit && abs(an) <= limit) {
      std::vector<Rational> candidates;
      for (const auto& num : divisors(a0)) {
        for (const auto& den : divisors(an)) {
          Rational r(num, den);
          r.canonicalize();
          candidates.push_back(-r);
          candidates.push_back(r);
        }
      }
      std::sort(candidates.begin(), candidates.end(), [](const Rational& a, const Rational& b) { return a < b; });
      candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
      for (const auto& r : candidates) {
        unsigned mult = 0;
        while (cur.degree() >= 1 && is_zero(cur.eval(r))) {
          cur = deflate(cur, r);
          ++mult;
        }
        if (mult) out.roots.emplace_back(r, mult);
      }
    }
  }
  out.cofactor = cur;
  return out;
}

std::string factored_string(const SPoly& p) {
  if (p.degree() < 1) return to_string(p);
  auto fac = rational_roots(p);
  std::string out;
  const bool unit_cofactor = fac.cofactor.degree() == 0;
  if (unit_cofactor && fac.cofactor.leading() != 1) out = to_string(fac.cofactor.leading()) + "*";
  bool first = true;
  for (const auto& [r, mult] : fac.roots) {
    std::string lin = to_string(SPoly(std::vector<Rational>{-r, Rational(1)}));
    if (!first) out += "*";
    out += "(" + lin + ")";
    if (mult > 1) out += "^" + std::to_string(mult);
    first = false;
  }
  if (!unit_cofactor) out += (first ? "" : "*") + std::string("(") + to_string(fac.cofactor) + ")";
  return out;
}

}  // namespace dmodkit
