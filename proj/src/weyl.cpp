#include "dmodkit/weyl.hpp"

#include <cctype>
#include <functional>

namespace dmodkit {

namespace {

// coefficient of x^(g-k) d^(b-k) in d^b x^g, one variable
Integer reorder_coefficient(Exponent b, Exponent g, Exponent k) {
  return binomial(b, k) * binomial(g, k) * factorial(k);
}

template <class K>
K scale(const K& c, const Integer& z) {
  if constexpr (std::is_same_v<K, SPoly>) {
    return c * Rational(z);
  } else {
    return c * Rational(z);
  }
}

}  // namespace

template <class K>
WeylOp<K> weyl_mul(const WeylOp<K>& a, const WeylOp<K>& b) {
  WeylOp<K>::check(a, b);
  const std::size_t n = a.nvars();
  WeylOp<K> out(n);
  Monomial key(2 * n);
  std::vector<Exponent> kmax(n), k(n);
  for (const auto& [ka, ca] : a.terms()) {
    for (const auto& [kb, cb] : b.terms()) {
      K c = ca * cb;
      for (std::size_t j = 0; j < n; ++j) kmax[j] = std::min(ka[n + j], kb[j]);
      std::fill(k.begin(), k.end(), 0);
      // odometer over 0 <= k <= kmax
      while (true) {
        Integer factor = 1;
        for (std::size_t j = 0; j < n; ++j) {
          if (k[j]) factor *= reorder_coefficient(ka[n + j], kb[j], k[j]);
          std::uint64_t ex = std::uint64_t{ka[j]} + kb[j] - k[j];
          std::uint64_t ed = std::uint64_t{ka[n + j]} + kb[n + j] - k[j];
          if (ex > kMaxExponent || ed > kMaxExponent) throw std::overflow_error("exponent exceeds 2^31 - 1");
          key[j] = static_cast<Exponent>(ex);
          key[n + j] = static_cast<Exponent>(ed);
        }
        out.add_term(key, scale(c, factor));
        std::size_t j = 0;
        while (j < n && k[j] == kmax[j]) k[j++] = 0;
        if (j == n) break;
        ++k[j];
      }
    }
  }
  return out;
}

template QWeyl weyl_mul(const QWeyl&, const QWeyl&);
template SWeyl weyl_mul(const SWeyl&, const SWeyl&);

QPoly apply(const QWeyl& delta, const QPoly& f) {
  const std::size_t n = delta.nvars();
  if (f.nvars() != n) throw std::invalid_argument("operator and polynomial arity mismatch");
  QPoly out(n);
  Monomial m(n);
  for (const auto& [key, c] : delta.terms()) {
    for (const auto& [fm, fc] : f.terms()) {
      Integer factor = 1;
      bool vanishes = false;
      for (std::size_t j = 0; j < n; ++j) {
        Exponent beta = key[n + j];
        if (beta > fm[j]) {
          vanishes = true;
          break;
        }
        if (beta) factor *= falling_factorial(fm[j], beta);
        m[j] = key[j] + fm[j] - beta;
      }
      if (vanishes) continue;
      out.add_term(m, c * fc * Rational(factor));
    }
  }
  return out;
}

SWeyl lift(const QWeyl& delta) {
  SWeyl r(delta.nvars());
  for (const auto& [k, c] : delta.terms()) r.add_term(k, SPoly(c));
  return r;
}

QWeyl specialize(const SWeyl& delta, const Rational& t) {
  QWeyl r(delta.nvars());
  for (const auto& [k, c] : delta.terms()) r.add_term(k, c.eval(t));
  return r;
}

std::vector<QWeyl> s_slices(const SWeyl& delta) {
  std::vector<QWeyl> out;
  for (const auto& [k, c] : delta.terms()) {
    for (std::size_t e = 0; e < c.coeffs().size(); ++e) {
      while (out.size() <= e) out.emplace_back(delta.nvars());
      out[e].add_term(k, c.coeffs()[e]);
    }
  }
  return out;
}

SWeyl from_s_slices(const std::vector<QWeyl>& slices, std::size_t n) {
  SWeyl r(n);
  for (std::size_t e = 0; e < slices.size(); ++e) {
    for (const auto& [k, c] : slices[e].terms()) r.add_term(k, SPoly::monomial(e, c));
  }
  return r;
}

namespace {

// images of the n variables under a linear substitution, with cached powers
class LinearSubstitution {
 public:
  LinearSubstitution(const RationalMatrix& images_by_column) : n_(images_by_column.size()) {
    for (std::size_t i = 0; i < n_; ++i) {
      QPoly lin(n_);
      for (std::size_t j = 0; j < n_; ++j) {
        if (sgn(images_by_column(j, i)) == 0) continue;
        Monomial m(n_, 0);
        m[j] = 1;
        lin.add_term(m, images_by_column(j, i));
      }
      powers_.push_back({QPoly::constant(n_, 1), lin});
    }
  }

  const QPoly& power(std::size_t i, Exponent e) {
    auto& p = powers_[i];
    while (p.size() <= e) p.push_back(p.back() * p[1]);
    return p[e];
  }

  QPoly image(const Monomial& m) {
    QPoly r = QPoly::constant(n_, 1);
    for (std::size_t i = 0; i < n_; ++i) {
      if (m[i]) r = r * power(i, m[i]);
    }
    return r;
  }

 private:
  std::size_t n_;
  std::vector<std::vector<QPoly>> powers_;
};

}  // namespace

QPoly group_act_poly(const RationalMatrix& g, const QPoly& f) {
  if (g.size() != f.nvars()) throw std::invalid_argument("matrix size does not match polynomial arity");
  (void)g.inverse();  // rejects singular matrices
  LinearSubstitution sub(g);
  QPoly out(f.nvars());
  for (const auto& [m, c] : f.terms()) out += sub.image(m) * c;
  return out;
}

QWeyl group_act_op(const RationalMatrix& g, const QWeyl& delta) {
  const std::size_t n = delta.nvars();
  if (g.size() != n) throw std::invalid_argument("matrix size does not match operator arity");
  RationalMatrix ginv = g.inverse();
  LinearSubstitution xs(g);
  // d_i -> sum_j ginv(i,j) d_j, i.e. column i of ginv^T
  LinearSubstitution ds(ginv.transpose());
  QWeyl out(n);
  Monomial alpha(n), beta(n);
  for (const auto& [key, c] : delta.terms()) {
    std::copy(key.begin(), key.begin() + static_cast<long>(n), alpha.begin());
    std::copy(key.begin() + static_cast<long>(n), key.end(), beta.begin());
    QPoly px = xs.image(alpha);
    QPoly pd = ds.image(beta);
    for (const auto& [mx, cx] : px.terms()) {
      for (const auto& [md, cd] : pd.terms()) out.add_term(mx, md, c * cx * cd);
    }
  }
  return out;
}

bool verify_commute_identity(const QWeyl& delta, const QPoly& f, std::int64_t j) {
  if (j < 0) throw std::invalid_argument("negative exponents need localized probes");
  auto chain = bracket_sequence(delta, f);
  QWeyl lhs = delta * QWeyl::from_poly(f.pow(static_cast<unsigned>(j)));
  QWeyl rhs(delta.nvars());
  for (std::size_t i = 0; i < chain.size(); ++i) {
    if (static_cast<std::int64_t>(i) > j) break;  // binom(j, i) = 0
    Rational b(binomial(j, static_cast<std::uint32_t>(i)));
    rhs += QWeyl::from_poly(f.pow(static_cast<unsigned>(j - static_cast<std::int64_t>(i)))) * chain[i] * b;
  }
  return lhs == rhs;
}

namespace {

std::string monomial_part(const Monomial& key, std::size_t n) {
  std::string out;
  auto put = [&](char v, std::size_t j, Exponent e) {
    if (e == 0) return;
    if (!out.empty()) out += "*";
    out += v + std::to_string(j + 1);
    if (e > 1) out += "^" + std::to_string(e);
  };
  for (std::size_t j = 0; j < n; ++j) put('x', j, key[j]);
  for (std::size_t j = 0; j < n; ++j) put('d', j, key[n + j]);
  return out;
}

}  // namespace

std::string to_string(const QWeyl& op) {
  if (op.is_zero()) return "0";
  std::string out;
  for (auto it = op.terms().rbegin(); it != op.terms().rend(); ++it) {
    const auto& [key, c] = *it;
    bool neg = sgn(c) < 0;
    if (out.empty()) {
      if (neg) out += "-";
    } else {
      out += neg ? " - " : " + ";
    }
    std::string coeff = to_string(Rational(abs(c)));
    std::string mono = monomial_part(key, op.nvars());
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

std::string to_string(const SWeyl& op) {
  if (op.is_zero()) return "0";
  std::string out;
  for (auto it = op.terms().rbegin(); it != op.terms().rend(); ++it) {
    const auto& [key, c] = *it;
    if (!out.empty()) out += " + ";
    std::string mono = monomial_part(key, op.nvars());
    std::string coeff = "(" + to_string(c) + ")";
    out += mono.empty() ? coeff : coeff + "*" + mono;
  }
  return out;
}

QWeyl parse_weyl(const std::string& text, std::size_t nvars) {
  std::string t;
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch))) t.push_back(ch);
  }
  if (t.empty()) throw std::invalid_argument("empty operator text");

  struct Factor {
    bool is_d;
    std::size_t var;
    Exponent e;
  };
  struct RawTerm {
    Rational c;
    std::vector<Factor> factors;
  };
  auto var_of = [](const std::string& name) -> std::pair<bool, std::size_t> {
    static const std::map<std::string, std::pair<bool, std::size_t>> aliases = {
        {"x", {false, 0}}, {"y", {false, 1}}, {"z", {false, 2}}, {"d", {true, 0}},
        {"dx", {true, 0}}, {"dy", {true, 1}}, {"dz", {true, 2}}};
    if (auto it = aliases.find(name); it != aliases.end()) return it->second;
    if (name.size() >= 2 && (name[0] == 'x' || name[0] == 'd')) {
      std::size_t k = 0;
      for (std::size_t i = 1; i < name.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(name[i]))) throw std::invalid_argument("unknown symbol: " + name);
        k = k * 10 + static_cast<std::size_t>(name[i] - '0');
      }
      if (k == 0) throw std::invalid_argument("variables are numbered from 1: " + name);
      return {name[0] == 'd', k - 1};
    }
    throw std::invalid_argument("unknown symbol: " + name);
  };

  std::vector<RawTerm> terms;
  std::size_t n = nvars;
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
    if (term.empty()) throw std::invalid_argument("malformed operator: " + text);
    RawTerm raw{Rational(sign), {}};
    std::size_t fpos = 0;
    while (fpos <= term.size()) {
      std::size_t fend = term.find('*', fpos);
      if (fend == std::string::npos) fend = term.size();
      std::string factor = term.substr(fpos, fend - fpos);
      if (factor.empty()) throw std::invalid_argument("malformed term: " + term);
      if (std::isdigit(static_cast<unsigned char>(factor[0]))) {
        raw.c *= parse_rational(factor);
      } else {
        std::string name = factor;
        std::uint64_t e = 1;
        if (auto caret = factor.find('^'); caret != std::string::npos) {
          name = factor.substr(0, caret);
          e = std::stoull(factor.substr(caret + 1));
        }
        if (e > kMaxExponent) throw std::overflow_error("exponent exceeds 2^31 - 1");
        auto [is_d, var] = var_of(name);
        n = std::max(n, var + 1);
        raw.factors.push_back({is_d, var, static_cast<Exponent>(e)});
      }
      fpos = fend + 1;
    }
    terms.push_back(std::move(raw));
    pos = end;
  }
  if (n == 0) n = 1;
  QWeyl out(n);
  for (const auto& raw : terms) {
    QWeyl prod = QWeyl::constant(n, raw.c);
    for (const auto& f : raw.factors) {
      Monomial a(n, 0), b(n, 0);
      (f.is_d ? b : a)[f.var] = f.e;
      prod = prod * QWeyl::term(a, b, Rational(1));
    }
    out += prod;
  }
  return out;
}

}  // namespace dmodkit
