#include "dmodkit/charp.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <random>
#include <stdexcept>

namespace dmodkit {

namespace {

void enumerate_exact(std::size_t j, std::uint64_t left, Monomial& cur, std::vector<Monomial>& out) {
  if (j + 1 == cur.size()) {
    cur[j] = static_cast<Exponent>(left);
    out.push_back(cur);
    cur[j] = 0;
    return;
  }
  for (std::uint64_t e = 0; e <= left; ++e) {
    cur[j] = static_cast<Exponent>(e);
    enumerate_exact(j + 1, left - e, cur, out);
  }
  cur[j] = 0;
}

// monomials of total degree exactly d, ascending lex
std::vector<Monomial> monomials_exact(std::size_t n, std::uint64_t d) {
  std::vector<Monomial> out;
  if (n == 0) {
    if (d == 0) out.emplace_back();
    return out;
  }
  Monomial cur(n, 0);
  enumerate_exact(0, d, cur, out);
  return out;
}

// monomials of total degree < d, by degree
std::vector<Monomial> monomials_below(std::size_t n, std::uint64_t d) {
  std::vector<Monomial> out;
  for (std::uint64_t k = 0; k < d; ++k) {
    auto part = monomials_exact(n, k);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

Fp fp(std::int64_t v, std::uint32_t p) { return Fp(v, p); }

}  // namespace

// ---- divided power operators ----

DividedPowerOp::DividedPowerOp(std::size_t n, std::uint32_t p) : n_(n), p_(p) {
  if (!is_prime(p)) throw std::invalid_argument("characteristic must be a prime below 2^16");
}

DividedPowerOp DividedPowerOp::term(const Monomial& alpha, const Monomial& beta, std::uint32_t p, std::int64_t c) {
  if (alpha.size() != beta.size()) throw std::invalid_argument("x/D exponent arity mismatch");
  DividedPowerOp r(alpha.size(), p);
  Monomial key(alpha);
  key.insert(key.end(), beta.begin(), beta.end());
  r.add_term(key, fp(c, p));
  return r;
}

DividedPowerOp DividedPowerOp::from_poly(const FpPoly& f, std::uint32_t p) {
  DividedPowerOp r(f.nvars(), p);
  for (const auto& [m, c] : f.terms()) {
    Monomial key(m);
    key.resize(2 * f.nvars(), 0);
    r.add_term(key, c);
  }
  return r;
}

void DividedPowerOp::add_term(const Monomial& key, const Fp& c) {
  if (key.size() != 2 * n_) throw std::invalid_argument("operator key arity mismatch");
  if (c.prime() != 0 && c.prime() != p_) throw std::invalid_argument("coefficient from a different field");
  Fp v(c.value(), p_);
  if (v.value() == 0) return;
  auto it = terms_.find(key);
  if (it == terms_.end()) {
    terms_.emplace(key, v);
    return;
  }
  it->second = it->second + v;
  if (it->second.value() == 0) terms_.erase(it);
}

std::uint64_t DividedPowerOp::order() const {
  std::uint64_t o = 0;
  for (const auto& [k, c] : terms_) {
    std::uint64_t s = 0;
    for (std::size_t j = n_; j < 2 * n_; ++j) s += k[j];
    o = std::max(o, s);
  }
  return o;
}

Exponent DividedPowerOp::max_beta() const {
  Exponent m = 0;
  for (const auto& [k, c] : terms_) {
    for (std::size_t j = n_; j < 2 * n_; ++j) m = std::max(m, k[j]);
  }
  return m;
}

DividedPowerOp operator+(const DividedPowerOp& a, const DividedPowerOp& b) {
  if (a.n_ != b.n_ || a.p_ != b.p_) throw std::invalid_argument("operator ring mismatch");
  DividedPowerOp r = a;
  for (const auto& [k, c] : b.terms_) r.add_term(k, c);
  return r;
}

DividedPowerOp operator-(const DividedPowerOp& a, const DividedPowerOp& b) {
  if (a.n_ != b.n_ || a.p_ != b.p_) throw std::invalid_argument("operator ring mismatch");
  DividedPowerOp r = a;
  for (const auto& [k, c] : b.terms_) r.add_term(k, -c);
  return r;
}

DividedPowerOp dp_mul(const DividedPowerOp& a, const DividedPowerOp& b) {
  if (a.nvars() != b.nvars() || a.prime() != b.prime()) throw std::invalid_argument("operator ring mismatch");
  const std::size_t n = a.nvars();
  const std::uint32_t p = a.prime();
  DividedPowerOp r(n, p);
  struct Choice {
    Exponent x, d;
    std::uint32_t coeff;
  };
  for (const auto& [ka, ca] : a.terms()) {
    for (const auto& [kb, cb] : b.terms()) {
      // per variable: D^(beta) x^gamma D^(delta) = sum_k binom(gamma,k) binom(beta-k+delta, delta) x^(gamma-k) D^(beta-k+delta)
      std::vector<std::vector<Choice>> per(n);
      bool dead = false;
      for (std::size_t j = 0; j < n && !dead; ++j) {
        const Exponent alpha = ka[j], beta = ka[n + j], gamma = kb[j], delta = kb[n + j];
        for (Exponent k = 0; k <= std::min(beta, gamma); ++k) {
          std::uint64_t c = std::uint64_t{binomial_mod(gamma, k, p)} * binomial_mod(beta - k + delta, delta, p) % p;
          if (c) per[j].push_back({alpha + gamma - k, beta - k + delta, static_cast<std::uint32_t>(c)});
        }
        dead = per[j].empty();
      }
      if (dead) continue;
      std::vector<std::size_t> idx(n, 0);
      Monomial key(2 * n);
      while (true) {
        std::uint64_t c = std::uint64_t{ca.value()} * cb.value() % p;
        for (std::size_t j = 0; j < n; ++j) {
          key[j] = per[j][idx[j]].x;
          key[n + j] = per[j][idx[j]].d;
          c = c * per[j][idx[j]].coeff % p;
        }
        r.add_term(key, Fp(static_cast<std::int64_t>(c), p));
        std::size_t j = 0;
        while (j < n && ++idx[j] == per[j].size()) idx[j++] = 0;
        if (j == n) break;
      }
    }
  }
  return r;
}

FpPoly dp_apply(const DividedPowerOp& op, const FpPoly& f) {
  if (op.nvars() != f.nvars()) throw std::invalid_argument("operator arity mismatch");
  const std::size_t n = op.nvars();
  const std::uint32_t p = op.prime();
  FpPoly out(n);
  for (const auto& [k, c] : op.terms()) {
    for (const auto& [m, x] : f.terms()) {
      std::uint64_t coef = std::uint64_t{c.value()} * x.value() % p;
      Monomial res(n);
      for (std::size_t j = 0; j < n && coef; ++j) {
        if (m[j] < k[n + j]) {
          coef = 0;
          break;
        }
        coef = coef * binomial_mod(m[j], k[n + j], p) % p;
        res[j] = k[j] + m[j] - k[n + j];
      }
      if (coef) out.add_term(res, Fp(static_cast<std::int64_t>(coef), p));
    }
  }
  return out;
}

std::string to_string(const DividedPowerOp& op) {
  if (op.is_zero()) return "0";
  const std::size_t n = op.nvars();
  std::string out;
  bool first = true;
  for (auto it = op.terms().rbegin(); it != op.terms().rend(); ++it) {
    const auto& [k, c] = *it;
    std::string factors;
    for (std::size_t j = 0; j < n; ++j) {
      if (k[j] == 0) continue;
      if (!factors.empty()) factors += "*";
      factors += "x" + std::to_string(j + 1);
      if (k[j] > 1) factors += "^" + std::to_string(k[j]);
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (k[n + j] == 0) continue;
      if (!factors.empty()) factors += "*";
      factors += "D" + std::to_string(j + 1);
      if (k[n + j] > 1) factors += "^(" + std::to_string(k[n + j]) + ")";
    }
    if (!first) out += " + ";
    first = false;
    if (factors.empty()) {
      out += std::to_string(c.value());
    } else if (c.value() == 1) {
      out += factors;
    } else {
      out += std::to_string(c.value()) + "*" + factors;
    }
  }
  return out;
}

DividedPowerOp parse_dp_op(const std::string& text, std::uint32_t p, std::size_t nvars) {
  std::string s;
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  }
  if (s.empty()) throw std::invalid_argument("empty operator text");
  struct Factor {
    bool is_d;
    std::size_t var;
    std::uint64_t exp;
  };
  struct Term {
    std::int64_t coeff;
    std::vector<Factor> factors;
  };
  std::vector<Term> terms;
  std::size_t pos = 0, arity = nvars;
  auto read_int = [&](std::uint64_t& v) {
    std::size_t start = pos;
    v = 0;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
      v = v * 10 + static_cast<std::uint64_t>(s[pos] - '0');
      if (v > kMaxExponent) throw std::invalid_argument("number too large in operator text");
      ++pos;
    }
    return pos > start;
  };
  while (pos < s.size()) {
    std::int64_t sign = 1;
    if (s[pos] == '+' || s[pos] == '-') {
      if (s[pos] == '-') sign = -1;
      ++pos;
    } else if (!terms.empty()) {
      throw std::invalid_argument("expected + or - at position " + std::to_string(pos));
    }
    Term t{sign, {}};
    bool need_factor = true;
    while (need_factor) {
      need_factor = false;
      if (pos >= s.size()) throw std::invalid_argument("operator text ends early");
      std::uint64_t v = 0;
      if (std::isdigit(static_cast<unsigned char>(s[pos]))) {
        read_int(v);
        t.coeff = t.coeff * static_cast<std::int64_t>(v % p);
      } else {
        char head = s[pos];
        bool is_d = head == 'D' || head == 'd';
        if (!is_d && head != 'x' && head != 'y' && head != 'z') {
          throw std::invalid_argument(std::string("unexpected character '") + head + "' in operator text");
        }
        ++pos;
        std::size_t var = 0;
        if (!is_d) {
          if (head == 'x') {
            std::uint64_t k = 0;
            var = read_int(k) ? static_cast<std::size_t>(k) : 1;
          } else {
            var = head == 'y' ? 2 : 3;
          }
        } else {
          std::uint64_t k = 0;
          if (pos < s.size() && (s[pos] == 'x' || s[pos] == 'y' || s[pos] == 'z')) {
            var = s[pos] == 'x' ? 1 : s[pos] == 'y' ? 2 : 3;
            ++pos;
          } else {
            var = read_int(k) ? static_cast<std::size_t>(k) : 1;
          }
        }
        if (var == 0) throw std::invalid_argument("variable indices start at 1");
        std::uint64_t e = 1;
        if (pos < s.size() && s[pos] == '^') {
          ++pos;
          bool paren = pos < s.size() && s[pos] == '(';
          if (paren) ++pos;
          if (!read_int(e)) throw std::invalid_argument("missing exponent in operator text");
          if (paren) {
            if (pos >= s.size() || s[pos] != ')') throw std::invalid_argument("missing ')' in operator text");
            ++pos;
          }
        }
        arity = std::max(arity, var);
        t.factors.push_back({is_d, var - 1, e});
      }
      if (pos < s.size() && s[pos] == '*') {
        ++pos;
        need_factor = true;
      }
    }
    terms.push_back(std::move(t));
  }
  DividedPowerOp out(arity, p);
  for (const auto& t : terms) {
    DividedPowerOp cur = DividedPowerOp::term(Monomial(arity, 0), Monomial(arity, 0), p, t.coeff);
    for (const auto& f : t.factors) {
      Monomial a(arity, 0), b(arity, 0);
      (f.is_d ? b : a)[f.var] = static_cast<Exponent>(f.exp);
      cur = dp_mul(cur, DividedPowerOp::term(a, b, p));
    }
    out = out + cur;
  }
  return out;
}

std::uint32_t ceil_log(std::uint64_t v, std::uint32_t p) {
  std::uint32_t e = 0;
  std::uint64_t q = 1;
  while (q < v) {
    q *= p;
    ++e;
  }
  return e;
}

namespace {

bool commutes_with_frobenius_powers(const DividedPowerOp& op, std::uint64_t q) {
  const std::size_t n = op.nvars();
  for (std::size_t j = 0; j < n; ++j) {
    Monomial a(n, 0), b(n, 0);
    a[j] = static_cast<Exponent>(q);
    auto xq = DividedPowerOp::term(a, b, op.prime());
    if (!(dp_mul(op, xq) - dp_mul(xq, op)).is_zero()) return false;
  }
  return true;
}

}  // namespace

LevelReport level_of(const DividedPowerOp& op) {
  LevelReport rep;
  rep.level = ceil_log(std::uint64_t{op.max_beta()} + 1, op.prime());
  bool ok = commutes_with_frobenius_powers(op, ipow(op.prime(), rep.level));
  if (ok && rep.level > 0) ok = !commutes_with_frobenius_powers(op, ipow(op.prime(), rep.level - 1));
  rep.verified = ok;
  return rep;
}

ContainmentReport check_order_to_level(std::uint32_t p, std::size_t n, std::size_t imax) {
  ContainmentReport rep;
  for (std::size_t i = 0; i <= imax; ++i) {
    const std::uint32_t bound = ceil_log(i + 1, p);
    for (std::uint64_t ord = 0; ord <= i; ++ord) {
      for (const auto& beta : monomials_exact(n, ord)) {
        for (int shift = 0; shift < 2; ++shift) {
          Monomial alpha(n, static_cast<Exponent>(shift));
          auto lv = level_of(DividedPowerOp::term(alpha, beta, p));
          ++rep.checked;
          if (lv.verified && lv.level <= bound) ++rep.passed;
        }
      }
    }
  }
  return rep;
}

ContainmentReport check_level_to_order(std::uint32_t p, std::size_t n, std::uint32_t emax) {
  ContainmentReport rep;
  for (std::uint32_t e = 0; e <= emax; ++e) {
    const std::uint64_t q = ipow(p, e);
    const std::uint64_t bound = n * (q - 1);
    Monomial beta(n, 0);
    while (true) {
      auto op = DividedPowerOp::term(Monomial(n, 0), beta, p);
      auto lv = level_of(op);
      ++rep.checked;
      if (lv.verified && lv.level <= e && op.order() <= bound) ++rep.passed;
      std::size_t j = 0;
      while (j < n && ++beta[j] == q) beta[j++] = 0;
      if (j == n) break;
    }
  }
  return rep;
}

// ---- monomial ideals ----

MonomialIdeal::MonomialIdeal(std::size_t n, std::vector<Monomial> gens) : n_(n) {
  for (const auto& g : gens) {
    if (g.size() != n) throw std::invalid_argument("monomial arity mismatch");
  }
  std::sort(gens.begin(), gens.end(), [](const Monomial& a, const Monomial& b) {
    auto da = monomial_degree(a), db = monomial_degree(b);
    return da != db ? da < db : a < b;
  });
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  for (const auto& g : gens) {
    bool redundant = false;
    for (const auto& h : gens_) {
      if (monomial_divides(h, g)) {
        redundant = true;
        break;
      }
    }
    if (!redundant) gens_.push_back(g);
  }
}

MonomialIdeal MonomialIdeal::unit(std::size_t n) { return MonomialIdeal(n, {Monomial(n, 0)}); }

MonomialIdeal MonomialIdeal::maximal(std::size_t n) {
  std::vector<Monomial> g;
  for (std::size_t j = 0; j < n; ++j) {
    Monomial m(n, 0);
    m[j] = 1;
    g.push_back(m);
  }
  return MonomialIdeal(n, g);
}

MonomialIdeal MonomialIdeal::power_of_maximal(std::size_t n, std::uint64_t k) {
  return MonomialIdeal(n, monomials_exact(n, k));
}

bool MonomialIdeal::is_unit() const { return !gens_.empty() && monomial_degree(gens_.front()) == 0; }

bool MonomialIdeal::contains(const Monomial& m) const {
  for (const auto& g : gens_) {
    if (monomial_divides(g, m)) return true;
  }
  return false;
}

bool MonomialIdeal::contains(const FpPoly& f) const {
  for (const auto& [m, c] : f.terms()) {
    if (!contains(m)) return false;
  }
  return true;
}

bool MonomialIdeal::subset_of(const MonomialIdeal& o) const {
  for (const auto& g : gens_) {
    if (!o.contains(g)) return false;
  }
  return true;
}

MonomialIdeal MonomialIdeal::frobenius_power(std::uint64_t q) const {
  std::vector<Monomial> g;
  for (auto m : gens_) {
    for (auto& e : m) {
      if (std::uint64_t{e} * q > kMaxExponent) throw std::overflow_error("Frobenius power exponent overflow");
      e = static_cast<Exponent>(e * q);
    }
    g.push_back(m);
  }
  return MonomialIdeal(n_, g);
}

MonomialIdeal MonomialIdeal::colon(const Monomial& m) const {
  std::vector<Monomial> g;
  for (auto h : gens_) {
    for (std::size_t j = 0; j < n_; ++j) h[j] = h[j] > m[j] ? h[j] - m[j] : 0;
    g.push_back(h);
  }
  return MonomialIdeal(n_, g);
}

MonomialIdeal MonomialIdeal::intersect(const MonomialIdeal& o) const {
  std::vector<Monomial> g;
  for (const auto& a : gens_) {
    for (const auto& b : o.gens_) {
      Monomial l(n_);
      for (std::size_t j = 0; j < n_; ++j) l[j] = std::max(a[j], b[j]);
      g.push_back(l);
    }
  }
  return MonomialIdeal(n_, g);
}

MonomialIdeal MonomialIdeal::colon(const MonomialIdeal& o) const {
  if (o.is_zero()) return unit(n_);
  MonomialIdeal acc = colon(o.gens_.front());
  for (std::size_t k = 1; k < o.gens_.size(); ++k) acc = acc.intersect(colon(o.gens_[k]));
  return acc;
}

std::string to_string(const MonomialIdeal& I, const std::vector<std::string>& names) {
  // x before y: descending lexicographic order
  std::vector<Monomial> gens = I.gens();
  std::sort(gens.begin(), gens.end(), std::greater<>());
  std::string out = "(";
  for (std::size_t k = 0; k < gens.size(); ++k) {
    if (k) out += ", ";
    const auto& m = gens[k];
    std::string t;
    for (std::size_t j = 0; j < m.size(); ++j) {
      if (m[j] == 0) continue;
      if (!t.empty()) t += "*";
      t += j < names.size() ? names[j] : "x" + std::to_string(j + 1);
      if (m[j] > 1) t += "^" + std::to_string(m[j]);
    }
    out += t.empty() ? "1" : t;
  }
  return out + ")";
}

std::vector<FpPoly> frobenius_power(const std::vector<FpPoly>& gens, std::uint32_t p, std::uint32_t e) {
  const auto q = ipow(p, e);
  std::vector<FpPoly> out;
  for (const auto& g : gens) {
    if (q > 0xffffffffu) throw std::overflow_error("Frobenius power too large");
    out.push_back(g.is_zero() ? g : g.pow(static_cast<unsigned>(q)));
  }
  return out;
}

// ---- truncated ideals ----

TruncatedIdeal::TruncatedIdeal(std::size_t n, std::uint32_t p, std::uint64_t guarantee)
    : n_(n), p_(p), guarantee_(guarantee) {}

SparseVec<Fp> TruncatedIdeal::low_vector(const FpPoly& f, bool strict) {
  std::map<std::size_t, Fp> m;
  for (const auto& [mono, c] : f.terms()) {
    if (monomial_degree(mono) >= guarantee_) {
      if (strict) throw std::invalid_argument("low part element has degree >= guarantee");
      continue;
    }
    m.emplace(columns_.index(mono), c);
  }
  return make_sparse(std::move(m));
}

void TruncatedIdeal::insert_low(const FpPoly& f) { low_.insert(low_vector(f, true)); }

bool TruncatedIdeal::contains_low(const FpPoly& f) const {
  std::map<std::size_t, Fp> m;
  for (const auto& [mono, c] : f.terms()) {
    if (monomial_degree(mono) >= guarantee_) continue;
    auto col = columns_.find(mono);
    if (!col) return false;  // no stored element touches this monomial
    m.emplace(*col, c);
  }
  return low_.contains(make_sparse(std::move(m)));
}

bool TruncatedIdeal::contains(const FpPoly& f) const { return contains_low(f); }

bool TruncatedIdeal::is_unit() const { return contains(FpPoly::constant(n_, Fp(1, p_))); }

TruncatedIdeal TruncatedIdeal::generated(std::size_t n, std::uint32_t p, const std::vector<FpPoly>& gens,
                                         std::uint64_t guarantee) {
  TruncatedIdeal out(n, p, guarantee);
  for (const auto& g : gens) {
    if (g.is_zero()) continue;
    const auto low = g.min_total_degree();
    if (low >= guarantee) continue;
    for (const auto& m : monomials_below(n, guarantee - low)) {
      FpPoly t(n);
      for (const auto& [mono, c] : g.terms()) {
        Monomial prod = monomial_product(mono, m);
        if (monomial_degree(prod) < guarantee) t.add_term(prod, c);
      }
      out.insert_low(t);
    }
  }
  return out;
}

TruncatedIdeal TruncatedIdeal::from_monomial(const MonomialIdeal& I, std::uint32_t p) {
  const std::size_t n = I.nvars();
  std::vector<std::uint64_t> pure(n, 0);
  for (const auto& g : I.gens()) {
    std::size_t support = 0, var = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (g[j]) {
        ++support;
        var = j;
      }
    }
    if (support == 0) return TruncatedIdeal(n, p, 0);
    if (support == 1 && (pure[var] == 0 || g[var] < pure[var])) pure[var] = g[var];
  }
  std::uint64_t guarantee = 1;
  for (auto a : pure) {
    if (a == 0) throw std::invalid_argument("monomial ideal is not primary to the maximal ideal");
    guarantee += a - 1;
  }
  TruncatedIdeal out(n, p, guarantee);
  for (const auto& m : monomials_below(n, guarantee)) {
    if (I.contains(m)) out.insert_low(FpPoly::term(m, Fp(1, p)));
  }
  return out;
}

bool TruncatedIdeal::subset_of(const TruncatedIdeal& o) const {
  for (const auto& row : low_.rows()) {
    FpPoly f(n_);
    for (const auto& [c, x] : row) f.add_term(columns_.key(c), x);
    if (!o.contains(f)) return false;
  }
  for (std::uint64_t d = guarantee_; d < o.guarantee_; ++d) {
    for (const auto& m : monomials_exact(n_, d)) {
      if (!o.contains(FpPoly::term(m, Fp(1, p_)))) return false;
    }
  }
  return true;
}

bool operator==(const TruncatedIdeal& a, const TruncatedIdeal& b) { return a.subset_of(b) && b.subset_of(a); }

std::vector<FpPoly> TruncatedIdeal::generators(const std::vector<FpPoly>& ambient) const {
  // reduced echelon form with the largest monomial leading
  std::vector<Monomial> cols;
  for (std::size_t c = 0; c < columns_.size(); ++c) cols.push_back(columns_.key(c));
  std::sort(cols.begin(), cols.end(), [](const Monomial& a, const Monomial& b) {
    auto da = monomial_degree(a), db = monomial_degree(b);
    return da != db ? da > db : a > b;
  });
  Indexer<Monomial> order;
  for (const auto& m : cols) order.index(m);
  std::vector<SparseVec<Fp>> rows;
  for (const auto& row : low_.rows()) {
    std::map<std::size_t, Fp> v;
    for (const auto& [c, x] : row) v.emplace(*order.find(columns_.key(c)), x);
    rows.push_back(make_sparse(std::move(v)));
  }
  std::vector<FpPoly> cands;
  for (const auto& r : rref(rows)) {
    FpPoly f(n_);
    for (const auto& [c, x] : r) f.add_term(order.key(c), x);
    cands.push_back(std::move(f));
  }
  std::stable_sort(cands.begin(), cands.end(), [](const FpPoly& a, const FpPoly& b) {
    auto da = a.total_degree(), db = b.total_degree();
    return da != db ? da < db : a.terms().rbegin()->first < b.terms().rbegin()->first;
  });
  // greedy minimal generation modulo everything of degree > guarantee
  const std::uint64_t top = guarantee_ + 1;
  std::vector<FpPoly> kept;
  std::vector<FpPoly> basis = ambient;
  TruncatedIdeal span = generated(n_, p_, basis, top);
  auto absorb = [&](const FpPoly& g) {
    basis.push_back(g);
    span = generated(n_, p_, basis, top);
  };
  for (const auto& f : cands) {
    if (span.contains(f)) continue;
    kept.push_back(f);
    absorb(f);
  }
  if (guarantee_ == 0) return {FpPoly::constant(n_, Fp(1, p_))};
  for (const auto& m : monomials_exact(n_, guarantee_)) {
    FpPoly t = FpPoly::term(m, Fp(1, p_));
    if (span.contains(t)) continue;
    kept.push_back(t);
    absorb(t);
  }
  return kept;
}

// ---- presentations and splitting ideals ----

std::vector<FpPoly> Presentation::ideal_generators() const {
  std::vector<FpPoly> out;
  if (monomial) {
    for (const auto& m : monomial->gens()) out.push_back(FpPoly::term(m, Fp(1, p)));
  }
  if (principal) out.push_back(*principal);
  return out;
}

Presentation named_presentation(const std::string& name) {
  Presentation pr;
  pr.name = name;
  if (name == "xy-hypersurface-p2") {
    pr.p = 2;
    pr.n = 2;
    pr.vars = {"x", "y"};
    pr.monomial = MonomialIdeal(2, {Monomial{1, 1}});
  } else if (name == "polynomial-p2") {
    pr.p = 2;
    pr.n = 2;
    pr.vars = {"x", "y"};
    pr.monomial = MonomialIdeal(2, {});
  } else if (name == "quadric-p3") {
    pr.p = 3;
    pr.n = 3;
    pr.vars = {"a", "b", "c"};
    pr.principal = parse_fp_poly("b^2 - a*c", 3, 3, pr.vars);
  } else if (name == "cusp-p5") {
    pr.p = 5;
    pr.n = 2;
    pr.vars = {"x", "y"};
    pr.principal = parse_fp_poly("x^2 + y^3", 5, 2, pr.vars);
  } else {
    throw std::invalid_argument("unknown ring fixture: " + name);
  }
  return pr;
}

namespace {

void validate(const Presentation& pres) {
  if (!is_prime(pres.p)) throw std::invalid_argument("characteristic must be a prime below 2^16");
  if (pres.monomial.has_value() == pres.principal.has_value()) {
    throw std::invalid_argument("presentation must give exactly one of a monomial or a principal ideal");
  }
  if (pres.monomial && pres.monomial->nvars() != pres.n) throw std::invalid_argument("ideal arity mismatch");
  if (pres.principal) {
    const auto& f = *pres.principal;
    if (f.nvars() != pres.n) throw std::invalid_argument("ideal arity mismatch");
    if (f.is_zero()) throw std::invalid_argument("principal generator must be nonzero");
    if (f.coeff(Monomial(pres.n, 0)).value() != 0) {
      throw std::invalid_argument("principal generator must lie in the maximal ideal");
    }
  }
}

bool all_below(const Monomial& m, std::uint64_t q) {
  return std::all_of(m.begin(), m.end(), [q](Exponent e) { return e < q; });
}

// generators outside I, by degree and then leading monomial (x before y)
std::vector<FpPoly> drop_members(const std::vector<FpPoly>& gens, const Presentation& pres) {
  std::vector<FpPoly> out;
  for (const auto& g : gens) {
    bool in_ideal = false;
    if (pres.monomial) in_ideal = pres.monomial->contains(g);
    if (pres.principal) in_ideal = divides(*pres.principal, g);
    if (!in_ideal) out.push_back(g);
  }
  std::stable_sort(out.begin(), out.end(), [](const FpPoly& a, const FpPoly& b) {
    auto da = a.total_degree(), db = b.total_degree();
    return da != db ? da < db : a.terms().rbegin()->first > b.terms().rbegin()->first;
  });
  return out;
}

}  // namespace

SplittingIdeal splitting_ideal(const Presentation& pres, std::uint32_t e) {
  validate(pres);
  if (e == 0) throw std::invalid_argument("splitting ideals start at e = 1");
  SplittingIdeal out;
  out.e = e;
  out.q = ipow(pres.p, e);
  const std::uint64_t q = out.q;
  const std::size_t n = pres.n;
  if (pres.monomial) {
    const auto& I = *pres.monomial;
    MonomialIdeal colon_ideal = I.frobenius_power(q).colon(I);
    MonomialIdeal lifted = MonomialIdeal::maximal(n).frobenius_power(q).colon(colon_ideal);
    out.monomial = lifted;
    out.lifted = TruncatedIdeal::from_monomial(lifted, pres.p);
    std::vector<FpPoly> gens;
    for (const auto& m : lifted.gens()) gens.push_back(FpPoly::term(m, Fp(1, pres.p)));
    out.generators = drop_members(gens, pres);
    return out;
  }
  const FpPoly& f = *pres.principal;
  if (q - 1 > 0xffffffffu) throw std::overflow_error("Frobenius power too large");
  const FpPoly g = f.pow(static_cast<unsigned>(q - 1));
  // r f^{q-1} lies in m^[q] once every monomial of it has degree > n(q-1)
  const std::uint64_t span = n * (q - 1), shift = (q - 1) * f.min_total_degree();
  const std::uint64_t guarantee = (span > shift ? span - shift : 0) + 1;
  TruncatedIdeal lifted(n, pres.p, guarantee);
  std::vector<Monomial> unknowns;
  for (const auto& m : monomials_below(n, guarantee)) {
    if (all_below(m, q)) {
      unknowns.push_back(m);
    } else {
      lifted.insert_low(FpPoly::term(m, Fp(1, pres.p)));
    }
  }
  // columns: unknown monomials r; rows: monomials of r g outside m^[q]
  std::map<Monomial, std::map<std::size_t, Fp>> eqs;
  for (std::size_t u = 0; u < unknowns.size(); ++u) {
    for (const auto& [m, c] : g.terms()) {
      Monomial prod = monomial_product(m, unknowns[u]);
      if (!all_below(prod, q)) continue;
      auto& row = eqs[prod];
      auto [it, inserted] = row.emplace(u, c);
      if (!inserted) it->second = it->second + c;
    }
  }
  std::vector<SparseVec<Fp>> rows;
  for (auto& [m, row] : eqs) {
    auto v = make_sparse(std::move(row));
    if (!v.empty()) rows.push_back(std::move(v));
  }
  for (const auto& v : nullspace(rows, unknowns.size(), Fp(1, pres.p))) {
    FpPoly r(n);
    for (const auto& [c, x] : v) r.add_term(unknowns[c], x);
    lifted.insert_low(r);
  }
  if (!lifted.contains(f)) throw std::logic_error("splitting ideal does not contain the defining equation");
  out.lifted = std::move(lifted);
  out.generators = drop_members(out.lifted.generators({f}), pres);
  return out;
}

namespace {

std::vector<FpPoly> first_colon_generators(const Presentation& pres) {
  if (pres.monomial) {
    const auto& I = *pres.monomial;
    auto J = I.frobenius_power(pres.p).colon(I);
    std::vector<FpPoly> out;
    for (const auto& m : J.gens()) out.push_back(FpPoly::term(m, Fp(1, pres.p)));
    return out;
  }
  return {pres.principal->pow(pres.p - 1)};
}

// the generator of Hom(F_* S, S): x^g -> x^{(g - (p-1))/p} when every
// g_j = p - 1 mod p, and 0 otherwise
FpPoly trace_map(const FpPoly& h, std::uint32_t p) {
  FpPoly out(h.nvars());
  for (const auto& [m, c] : h.terms()) {
    Monomial r(m.size());
    bool hit = true;
    for (std::size_t j = 0; j < m.size() && hit; ++j) {
      hit = m[j] % p == p - 1;
      r[j] = m[j] / p;
    }
    if (hit) out.add_term(r, c);
  }
  return out;
}

}  // namespace

bool brute_force_in_first_splitting_ideal(const Presentation& pres, const FpPoly& r) {
  validate(pres);
  const std::size_t n = pres.n;
  // s ranges over x^m * g with g a colon generator and m in [0, p)^n; a
  // multiplier with some exponent >= p only changes phi by a factor in m
  std::vector<Monomial> mults;
  Monomial m(n, 0);
  while (true) {
    mults.push_back(m);
    std::size_t j = 0;
    while (j < n && ++m[j] == pres.p) m[j++] = 0;
    if (j == n) break;
  }
  for (const auto& g : first_colon_generators(pres)) {
    for (const auto& mm : mults) {
      FpPoly phi = trace_map(g.shifted(mm) * r, pres.p);
      if (phi.coeff(Monomial(n, 0)).value() != 0) return false;
    }
  }
  return true;
}

BruteForceComparison compare_fedder_brute_force(const Presentation& pres, std::uint64_t max_degree,
                                                std::size_t random_samples, std::uint64_t seed) {
  auto I1 = splitting_ideal(pres, 1);
  BruteForceComparison cmp;
  auto check = [&](const FpPoly& r) {
    ++cmp.checked;
    if (I1.lifted.contains(r) == brute_force_in_first_splitting_ideal(pres, r)) ++cmp.agreed;
  };
  std::vector<Monomial> mons;
  for (std::uint64_t d = 0; d <= max_degree; ++d) {
    for (const auto& m : monomials_exact(pres.n, d)) {
      mons.push_back(m);
      check(FpPoly::term(m, Fp(1, pres.p)));
    }
  }
  std::mt19937_64 rng(seed);
  for (std::size_t s = 0; s < random_samples; ++s) {
    FpPoly r(pres.n);
    const std::size_t terms = 1 + rng() % 4;
    for (std::size_t t = 0; t < terms; ++t) {
      r.add_term(mons[rng() % mons.size()], Fp(static_cast<std::int64_t>(1 + rng() % (pres.p - 1)), pres.p));
    }
    check(r);
  }
  return cmp;
}

SplittingReport f_regularity_scan(const Presentation& pres, std::uint32_t emax) {
  validate(pres);
  if (emax == 0) throw std::invalid_argument("emax must be positive");
  SplittingReport rep;
  rep.presentation = pres;
  for (std::uint32_t e = 1; e <= emax; ++e) rep.ideals.push_back(splitting_ideal(pres, e));
  rep.f_pure = std::none_of(rep.ideals.begin(), rep.ideals.end(), [](const auto& I) { return I.lifted.is_unit(); });
  rep.chain_verified = true;
  rep.strictly_shrinking = emax >= 2;
  for (std::size_t k = 0; k + 1 < rep.ideals.size(); ++k) {
    const auto& cur = rep.ideals[k].lifted;
    const auto& next = rep.ideals[k + 1].lifted;
    if (!next.subset_of(cur)) rep.chain_verified = false;
    if (cur.subset_of(next)) rep.strictly_shrinking = false;
  }
  // I_{a+e} in m^{p^e} + I for every e with a + e <= emax
  const auto ideal_gens = pres.ideal_generators();
  std::vector<TruncatedIdeal> targets;
  for (std::uint32_t e = 0; e < emax; ++e) {
    targets.push_back(TruncatedIdeal::generated(pres.n, pres.p, ideal_gens, ipow(pres.p, e)));
  }
  if (rep.f_pure) {
    for (std::uint32_t a = 1; a < emax && !rep.witness; ++a) {
      bool all = true;
      for (std::uint32_t e = 0; a + e <= emax && all; ++e) {
        all = rep.ideals[a + e - 1].lifted.subset_of(targets[e]);
      }
      if (all) rep.witness = a;
    }
  }
  if (emax >= 2) {
    const auto& last = rep.ideals.back();
    const auto& prev = rep.ideals[rep.ideals.size() - 2];
    rep.stabilized_nonzero = !last.lifted.is_unit() && last.lifted == prev.lifted && !last.generators.empty();
  }
  if (!rep.f_pure) {
    rep.verdict = "not F-pure";
  } else if (rep.witness) {
    rep.verdict = "F-pure, strongly F-regular evidence (witness a = " + std::to_string(*rep.witness) + ")";
  } else if (rep.stabilized_nonzero) {
    rep.verdict = "F-pure, not strongly F-regular (window)";
  } else if (rep.strictly_shrinking) {
    rep.verdict = "F-pure, strictly shrinking splitting ideals (window)";
  } else {
    rep.verdict = "F-pure, inconclusive (window)";
  }
  return rep;
}

VeroneseFFRT veronese_ffrt(std::size_t n, std::uint64_t r, std::uint32_t p, std::uint32_t e) {
  if (r == 0) throw std::invalid_argument("Veronese degree must be positive");
  if (!is_prime(p)) throw std::invalid_argument("characteristic must be a prime below 2^16");
  if (n == 0) throw std::invalid_argument("need at least one variable");
  auto count = [&](std::uint32_t ee) {
    const std::uint64_t q = ipow(p, ee);
    std::vector<std::uint64_t> dp(r, 0);
    dp[0] = 1;
    for (std::size_t v = 0; v < n; ++v) {
      std::vector<std::uint64_t> next(r, 0);
      for (std::uint64_t j = 0; j < r; ++j) {
        if (!dp[j]) continue;
        // gamma in [0, q): q / r full cycles plus a partial one
        for (std::uint64_t k = 0; k < r; ++k) {
          std::uint64_t howmany = q / r + (k < q % r ? 1 : 0);
          next[(j + k) % r] += dp[j] * howmany;
        }
      }
      dp = std::move(next);
    }
    std::map<std::uint64_t, std::uint64_t> out;
    for (std::uint64_t j = 0; j < r; ++j) {
      if (dp[j]) out.emplace(j, dp[j]);
    }
    return out;
  };
  VeroneseFFRT res;
  res.n = n;
  res.r = r;
  res.p = p;
  res.e = e;
  res.multiplicities = count(e);
  for (const auto& [j, m] : res.multiplicities) res.total += m;
  res.coprime = std::gcd<std::uint64_t, std::uint64_t>(p, r) == 1;
  res.class_set_stable = true;
  for (std::uint32_t ee = 1; ee <= e; ++ee) {
    auto other = count(ee);
    if (other.size() != res.multiplicities.size()) res.class_set_stable = false;
    for (const auto& [j, m] : other) {
      if (!res.multiplicities.count(j)) res.class_set_stable = false;
    }
  }
  return res;
}

}  // namespace dmodkit
