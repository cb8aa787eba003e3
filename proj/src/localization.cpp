#include "dmodkit/localization.hpp"

#include <algorithm>
#include <stdexcept>

namespace dmodkit {

namespace {

QPoly scaled(const QPoly& p, const Rational& c) { return p * c; }

}  // namespace

Localization::Localization(QPoly f) : f_(std::move(f)) {
  if (f_.is_zero()) throw std::domain_error("cannot localize at the zero polynomial");
}

LocalizedElement Localization::element(QPoly p, std::uint32_t t) const {
  if (p.nvars() != nvars()) throw std::invalid_argument("localized element arity mismatch");
  return normalize(LocalizedElement{std::move(p), t});
}

LocalizedElement Localization::normalize(LocalizedElement v) const {
  if (v.numerator.is_zero()) {
    v.exponent = 0;
    return v;
  }
  while (v.exponent > 0) {
    try {
      v.numerator = exact_divide(v.numerator, f_);
    } catch (const DivisionNotExact&) {
      break;
    }
    --v.exponent;
  }
  return v;
}

bool Localization::is_normalized(const LocalizedElement& v) const {
  if (v.numerator.is_zero()) return v.exponent == 0;
  return v.exponent == 0 || !divides(f_, v.numerator);
}

bool Localization::equal(const LocalizedElement& a, const LocalizedElement& b) const {
  if (a.exponent == b.exponent) return a.numerator == b.numerator;
  return a.numerator * f_power(b.exponent) == b.numerator * f_power(a.exponent);
}

LocalizedElement Localization::add(const LocalizedElement& a, const LocalizedElement& b) const {
  if (a.exponent == b.exponent) return normalize({a.numerator + b.numerator, a.exponent});
  if (a.exponent > b.exponent) {
    return normalize({a.numerator + b.numerator * f_power(a.exponent - b.exponent), a.exponent});
  }
  return normalize({a.numerator * f_power(b.exponent - a.exponent) + b.numerator, b.exponent});
}

LocalizedElement Localization::scale(const LocalizedElement& a, const Rational& c) const {
  return normalize({scaled(a.numerator, c), a.exponent});
}

LocalizedElement Localization::multiply(const QPoly& p, const LocalizedElement& a) const {
  return normalize({p * a.numerator, a.exponent});
}

LocalizedElement Localization::times_f_power(const LocalizedElement& a, std::int64_t j) const {
  if (j < 0) return normalize({a.numerator, a.exponent + static_cast<std::uint32_t>(-j)});
  auto k = static_cast<std::uint64_t>(j);
  if (k <= a.exponent) return normalize({a.numerator, a.exponent - static_cast<std::uint32_t>(k)});
  return {a.numerator * f_power(static_cast<std::uint32_t>(k - a.exponent)), 0};
}

LocalizedElement Localization::act_rec(const QWeyl& delta, const QPoly& p, std::uint32_t t) const {
  LocalizedElement head{apply(delta, p), 0};
  if (t == 0) return head;
  QWeyl comm = commutator(delta, QWeyl::from_poly(f_power(t)));
  if (!comm.is_zero()) {
    LocalizedElement lower = act_rec(comm, p, t);
    head = add(head, scale(lower, -1));
  }
  return normalize({head.numerator, head.exponent + t});
}

LocalizedElement Localization::act(const QWeyl& delta, const LocalizedElement& v) const {
  if (delta.nvars() != nvars()) throw std::invalid_argument("operator arity mismatch");
  return normalize(act_rec(delta, v.numerator, v.exponent));
}

LocalizedElement Localization::act_closed_form(const QWeyl& delta, const LocalizedElement& v) const {
  if (delta.nvars() != nvars()) throw std::invalid_argument("operator arity mismatch");
  auto seq = bracket_sequence(delta, f_);
  if (seq.empty()) return {QPoly(nvars()), 0};
  const std::uint32_t top = static_cast<std::uint32_t>(seq.size() - 1);
  const std::int64_t t = v.exponent;
  QPoly num(nvars());
  for (std::uint32_t i = 0; i <= top; ++i) {
    Rational c(binomial(-t, i));
    if (is_zero(c)) continue;
    num += apply(seq[i], v.numerator) * f_power(top - i) * c;
  }
  return normalize({num, v.exponent + top});
}

ThetaOperator Localization::theta_hom(const QWeyl& delta) const {
  auto seq = bracket_sequence(delta, f_);
  ThetaOperator out{SWeyl(nvars()), 0};
  if (seq.empty()) return out;
  const std::uint32_t k = static_cast<std::uint32_t>(seq.size() - 1);
  for (std::uint32_t i = 0; i <= k; ++i) {
    out.numerator += lift(QWeyl::from_poly(f_power(k - i)) * seq[i]) * binom_s(i);
  }
  out.fpow = k;
  return out;
}

ThetaOperator Localization::theta_mul(const ThetaOperator& a, const ThetaOperator& b) const {
  // N_A f^-b = sum_i binom(-b, i) f^(-b-i) N_A^(i)
  auto seq = bracket_sequence(a.numerator, f_);
  ThetaOperator out{SWeyl(nvars()), 0};
  if (seq.empty() || b.numerator.is_zero()) return out;
  const std::uint32_t o = static_cast<std::uint32_t>(seq.size() - 1);
  for (std::uint32_t i = 0; i <= o; ++i) {
    Rational c(binomial(-static_cast<std::int64_t>(b.fpow), i));
    if (is_zero(c)) continue;
    out.numerator += lift(QWeyl::from_poly(f_power(o - i))) * seq[i] * b.numerator * SPoly(c);
  }
  out.fpow = a.fpow + b.fpow + o;
  return out;
}

bool Localization::theta_equal(const ThetaOperator& a, const ThetaOperator& b) const {
  return lift(QWeyl::from_poly(f_power(b.fpow))) * a.numerator ==
         lift(QWeyl::from_poly(f_power(a.fpow))) * b.numerator;
}

namespace {

// collects s-coefficients in R_f before packing them into an FsElement
struct FsAccumulator {
  const Localization& loc;
  std::vector<LocalizedElement> parts;

  void add(std::size_t k, const LocalizedElement& v) {
    if (v.numerator.is_zero()) return;
    if (parts.size() <= k) parts.resize(k + 1, LocalizedElement{QPoly(loc.nvars()), 0});
    parts[k] = loc.add(parts[k], v);
  }

  FsElement finish() const {
    std::uint32_t e = 0;
    for (const auto& p : parts) e = std::max(e, p.exponent);
    FsElement u;
    u.exponent = e;
    for (const auto& p : parts) u.coeffs.push_back(p.numerator * loc.base().pow(e - p.exponent));
    return loc.fs_normalize(std::move(u));
  }
};

}  // namespace

FsElement Localization::theta_act(const ThetaOperator& op, const FsElement& u) const {
  FsAccumulator acc{*this, {}};
  auto slices = s_slices(op.numerator);
  for (std::size_t m = 0; m < slices.size(); ++m) {
    if (slices[m].is_zero()) continue;
    for (std::size_t k = 0; k < u.coeffs.size(); ++k) {
      LocalizedElement v = act(slices[m], {u.coeffs[k], u.exponent});
      acc.add(m + k, times_f_power(v, -static_cast<std::int64_t>(op.fpow)));
    }
  }
  return acc.finish();
}

FsElement Localization::fs_element(std::vector<QPoly> coeffs, std::uint32_t t) const {
  for (const auto& c : coeffs) {
    if (c.nvars() != nvars()) throw std::invalid_argument("coefficient arity mismatch");
  }
  return fs_normalize(FsElement{std::move(coeffs), t});
}

FsElement Localization::fs_act(const SWeyl& delta, const FsElement& u) const {
  FsAccumulator acc{*this, {}};
  auto slices = s_slices(delta);
  for (std::size_t m = 0; m < slices.size(); ++m) {
    if (slices[m].is_zero()) continue;
    auto seq = bracket_sequence(slices[m], f_);
    for (std::size_t i = 0; i < seq.size(); ++i) {
      SPoly b = binom_s(i);
      for (std::size_t k = 0; k < u.coeffs.size(); ++k) {
        if (u.coeffs[k].is_zero()) continue;
        LocalizedElement v = times_f_power(act(seq[i], {u.coeffs[k], u.exponent}), -static_cast<std::int64_t>(i));
        for (std::size_t r = 0; r < b.coeffs().size(); ++r) {
          if (is_zero(b.coeffs()[r])) continue;
          acc.add(m + k + r, scale(v, b.coeffs()[r]));
        }
      }
    }
  }
  return acc.finish();
}

FsElement Localization::fs_normalize(FsElement u) const {
  while (!u.coeffs.empty() && u.coeffs.back().is_zero()) u.coeffs.pop_back();
  if (u.coeffs.empty()) {
    u.exponent = 0;
    return u;
  }
  while (u.exponent > 0) {
    std::vector<QPoly> next;
    try {
      for (const auto& c : u.coeffs) next.push_back(exact_divide(c, f_));
    } catch (const DivisionNotExact&) {
      break;
    }
    u.coeffs = std::move(next);
    --u.exponent;
  }
  return u;
}

bool Localization::fs_equal(const FsElement& a, const FsElement& b) const {
  FsElement x = fs_normalize(a), y = fs_normalize(b);
  if (x.coeffs.size() != y.coeffs.size()) return false;
  for (std::size_t k = 0; k < x.coeffs.size(); ++k) {
    if (!equal({x.coeffs[k], x.exponent}, {y.coeffs[k], y.exponent})) return false;
  }
  return true;
}

LocalizedElement Localization::specialize(const FsElement& u, std::int64_t t) const {
  QPoly num(nvars());
  Rational tk = 1;
  for (const auto& c : u.coeffs) {
    num += c * tk;
    tk *= t;
  }
  return times_f_power(normalize({num, u.exponent}), t);
}

bool verify_commute_identity(const QWeyl& delta, const QPoly& f, std::int64_t j,
                             const std::vector<LocalizedElement>& probes) {
  if (j >= 0) return verify_commute_identity(delta, f, j);
  Localization loc(f);
  auto seq = bracket_sequence(delta, f);
  for (const auto& v : probes) {
    LocalizedElement lhs = loc.act(delta, loc.times_f_power(v, j));
    LocalizedElement rhs{QPoly(f.nvars()), 0};
    for (std::size_t i = 0; i < seq.size(); ++i) {
      Rational c(binomial(j, static_cast<std::uint32_t>(i)));
      LocalizedElement term = loc.act(seq[i], v);
      rhs = loc.add(rhs, loc.scale(loc.times_f_power(term, j - static_cast<std::int64_t>(i)), c));
    }
    if (!loc.equal(lhs, rhs)) return false;
  }
  return true;
}

}  // namespace dmodkit
