#include "dmodkit/poly.hpp"

#include <cctype>

namespace dmodkit {

Monomial monomial_product(const Monomial& a, const Monomial& b) {
  if (a.size() != b.size()) throw std::invalid_argument("monomial arity mismatch");
  Monomial r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    std::uint64_t e = std::uint64_t{a[i]} + b[i];
    if (e > kMaxExponent) throw std::overflow_error("exponent exceeds 2^31 - 1");
    r[i] = static_cast<Exponent>(e);
  }
  return r;
}

bool monomial_divides(const Monomial& a, const Monomial& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] > b[i]) return false;
  }
  return true;
}

Monomial monomial_quotient(const Monomial& a, const Monomial& b) {
  Monomial r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

std::uint64_t monomial_degree(const Monomial& a) { return std::accumulate(a.begin(), a.end(), std::uint64_t{0}); }

std::uint64_t monomial_degree(const Monomial& a, const std::vector<std::uint32_t>& weights) {
  std::uint64_t d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d += std::uint64_t{a[i]} * (i < weights.size() ? weights[i] : 1);
  return d;
}

namespace {

std::string monomial_text(const Monomial& m) {
  std::string out;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] == 0) continue;
    if (!out.empty()) out += "*";
    out += "x" + std::to_string(i + 1);
    if (m[i] > 1) out += "^" + std::to_string(m[i]);
  }
  return out;
}

template <class K, class Abs, class Neg>
std::string poly_text(const Poly<K>& p, Abs abs_text, Neg is_negative) {
  if (p.is_zero()) return "0";
  std::string out;
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    const auto& [m, c] = *it;
    bool neg = is_negative(c);
    if (out.empty()) {
      if (neg) out += "-";
    } else {
      out += neg ? " - " : " + ";
    }
    std::string coeff = abs_text(c);
    std::string mono = monomial_text(m);
    if (mono.empty()) {
      out += coeff;
    } else if (coeff == "1") {
      out += mono;
    } else {
      out += coeff + "*" + mono;
    }
  }
  return out;
}

struct RawTerm {
  Rational coeff;
  std::map<std::size_t, std::uint64_t> powers;  // variable index -> exponent
};

std::size_t variable_index(const std::string& name, const std::vector<std::string>& names) {
  if (!names.empty()) {
    for (std::size_t i = 0; i < names.size(); ++i) {
      if (names[i] == name) return i;
    }
    throw std::invalid_argument("unknown variable: " + name);
  }
  if (name == "x") return 0;
  if (name == "y") return 1;
  if (name == "z") return 2;
  if (name.size() >= 2 && name[0] == 'x') {
    std::size_t k = 0;
    for (std::size_t i = 1; i < name.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(name[i]))) throw std::invalid_argument("unknown variable: " + name);
      k = k * 10 + static_cast<std::size_t>(name[i] - '0');
    }
    if (k == 0) throw std::invalid_argument("variables are numbered from x1: " + name);
    return k - 1;
  }
  throw std::invalid_argument("unknown variable: " + name);
}

std::vector<RawTerm> parse_terms(const std::string& text, const std::vector<std::string>& names) {
  std::string t;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) t.push_back(c);
  }
  if (t.empty()) throw std::invalid_argument("empty polynomial text");
  std::vector<RawTerm> out;
  std::size_t pos = 0;
  while (pos < t.size()) {
    int sign = 1;
    if (t[pos] == '+' || t[pos] == '-') {
      sign = t[pos] == '-' ? -1 : 1;
      ++pos;
    }
    std::size_t end = pos;
    while (end < t.size() && t[end] != '+' && t[end] != '-') ++end;
    std::string term = t.substr(pos, end - pos);
    if (term.empty()) throw std::invalid_argument("malformed polynomial: " + text);
    RawTerm raw{Rational(sign), {}};
    std::size_t fpos = 0;
    while (fpos <= term.size()) {
      std::size_t fend = term.find('*', fpos);
      if (fend == std::string::npos) fend = term.size();
      std::string factor = term.substr(fpos, fend - fpos);
      if (factor.empty()) throw std::invalid_argument("malformed term: " + term);
      if (std::isdigit(static_cast<unsigned char>(factor[0]))) {
        raw.coeff *= parse_rational(factor);
      } else {
        std::string name = factor;
        std::uint64_t e = 1;
        auto caret = factor.find('^');
        if (caret != std::string::npos) {
          name = factor.substr(0, caret);
          e = std::stoull(factor.substr(caret + 1));
        }
        raw.powers[variable_index(name, names)] += e;
      }
      fpos = fend + 1;
    }
    out.push_back(std::move(raw));
    pos = end;
  }
  return out;
}

template <class K, class Convert>
Poly<K> build(const std::vector<RawTerm>& raw, std::size_t nvars, Convert convert) {
  std::size_t n = nvars;
  for (const auto& r : raw) {
    for (const auto& [i, e] : r.powers) n = std::max(n, i + 1);
  }
  if (n == 0) n = 1;
  Poly<K> p(n);
  for (const auto& r : raw) {
    Monomial m(n, 0);
    for (const auto& [i, e] : r.powers) {
      if (e > kMaxExponent) throw std::overflow_error("exponent exceeds 2^31 - 1");
      m[i] = static_cast<Exponent>(e);
    }
    p.add_term(m, convert(r.coeff));
  }
  return p;
}

}  // namespace

std::string to_string(const QPoly& p) {
  return poly_text(
      p, [](const Rational& c) { return to_string(Rational(abs(c))); }, [](const Rational& c) { return sgn(c) < 0; });
}

std::string to_string(const FpPoly& p) {
  return poly_text(
      p, [](const Fp& c) { return to_string(c); }, [](const Fp&) { return false; });
}

QPoly parse_poly(const std::string& text, std::size_t nvars, const std::vector<std::string>& names) {
  if (!names.empty()) nvars = std::max(nvars, names.size());
  return build<Rational>(parse_terms(text, names), nvars, [](const Rational& c) { return c; });
}

namespace {
Fp rational_to_fp(const Rational& c, std::uint32_t p) {
  Integer num = c.get_num() % Integer(p);
  Integer den = c.get_den() % Integer(p);
  Fp d(den.get_si(), p);
  if (is_zero(d)) throw std::domain_error("denominator divisible by p");
  return Fp(num.get_si(), p) / d;
}
}  // namespace

FpPoly parse_fp_poly(const std::string& text, std::uint32_t p, std::size_t nvars,
                     const std::vector<std::string>& names) {
  if (!names.empty()) nvars = std::max(nvars, names.size());
  return build<Fp>(parse_terms(text, names), nvars, [p](const Rational& c) { return rational_to_fp(c, p); });
}

FpPoly reduce_mod_p(const QPoly& f, std::uint32_t p) {
  FpPoly r(f.nvars());
  for (const auto& [m, c] : f.terms()) r.add_term(m, rational_to_fp(c, p));
  return r;
}

QPoly widen(const QPoly& f, std::size_t nvars) {
  if (nvars < f.nvars()) throw std::invalid_argument("cannot narrow a polynomial");
  QPoly r(nvars);
  for (const auto& [m, c] : f.terms()) {
    Monomial w(nvars, 0);
    std::copy(m.begin(), m.end(), w.begin());
    r.add_term(w, c);
  }
  return r;
}

}  // namespace dmodkit
