#include "dmodkit/filtration.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "dmodkit/linalg.hpp"

namespace dmodkit {

Vector to_vector(const QPoly& f) {
  Vector v;
  for (const auto& [m, c] : f.terms()) v.emplace(Coord(m.begin(), m.end()), c);
  return v;
}

Vector to_vector(const QWeyl& op) {
  Vector v;
  for (const auto& [k, c] : op.terms()) v.emplace(Coord(k.begin(), k.end()), c);
  return v;
}

namespace {

class VectorSpan {
 public:
  SparseVec<Rational> sparse(const Vector& v) {
    std::map<std::size_t, Rational> e;
    for (const auto& [c, x] : v) e.emplace(coords_.index(c), x);
    return make_sparse(std::move(e));
  }
  bool insert(const Vector& v) { return basis_.insert(sparse(v)); }
  bool contains(const Vector& v) { return basis_.contains(sparse(v)); }
  std::size_t rank() const { return basis_.rank(); }

 private:
  Indexer<Coord> coords_;
  EchelonBasis<Rational> basis_;
};

}  // namespace

std::uint64_t level_dimension(const FiltrationHandle& f, std::size_t i) {
  VectorSpan span;
  for (const auto& v : f.level(i)) span.insert(v);
  return span.rank();
}

DimSequence dimension_sequence(const FiltrationHandle& f, std::size_t imax) {
  DimSequence seq;
  for (std::size_t i = 0; i <= imax; ++i) seq.dims.push_back(level_dimension(f, i));
  return seq;
}

std::optional<std::size_t> first_non_ascending(const FiltrationHandle& f, std::size_t imax) {
  for (std::size_t i = 0; i < imax; ++i) {
    VectorSpan next;
    for (const auto& v : f.level(i + 1)) next.insert(v);
    for (const auto& v : f.level(i)) {
      if (!next.contains(v)) return i;
    }
  }
  return std::nullopt;
}

namespace {

struct ClassFit {
  std::size_t degree = 0;
  Rational leading;  // coefficient of i^degree
};

// Smallest-degree polynomial in k matching vals exactly, with at least one
// extra point beyond those needed to determine it.
std::optional<ClassFit> fit_class(const std::vector<Integer>& vals, std::size_t step) {
  if (vals.size() < 2) return std::nullopt;
  std::vector<Integer> diff = vals;
  for (std::size_t d = 0; d + 1 < vals.size(); ++d) {
    std::vector<Integer> next(diff.size() - 1);
    for (std::size_t k = 0; k + 1 < diff.size(); ++k) next[k] = diff[k + 1] - diff[k];
    bool all_zero = std::all_of(next.begin(), next.end(), [](const Integer& z) { return z == 0; });
    if (all_zero) {
      // diff is the constant d-th difference: d! c step^d
      Rational lead(diff.front());
      Integer scale = factorial(static_cast<std::uint32_t>(d));
      Integer sp = 1;
      for (std::size_t j = 0; j < d; ++j) sp *= Integer(static_cast<unsigned long>(step));
      lead /= Rational(scale * sp);
      return ClassFit{d, lead};
    }
    diff = std::move(next);
  }
  return std::nullopt;
}

Rational nearest_small_fraction(double x) {
  Rational best(static_cast<long>(std::llround(x)));
  double best_err = std::fabs(x - best.get_d());
  for (long q = 2; q <= 6; ++q) {
    long p = std::lround(x * static_cast<double>(q));
    double err = std::fabs(x - static_cast<double>(p) / static_cast<double>(q));
    if (err + 1e-12 < best_err) {
      best = Rational(p, q);
      best.canonicalize();
      best_err = err;
    }
  }
  return best;
}

}  // namespace

GrowthEstimate dim_estimate(const DimSequence& seq, std::size_t window) {
  const std::size_t len = seq.dims.size();
  if (window < 4) throw std::invalid_argument("growth window must be at least 4");
  if (len < 2 * window) throw std::invalid_argument("dimension sequence shorter than twice the window");
  GrowthEstimate est;
  est.window_end = len;
  est.window_begin = len - std::max(window, len - len / 2);

  for (std::size_t period = 1; period <= 6; ++period) {
    std::vector<ClassFit> fits;
    bool ok = true;
    for (std::size_t r = 0; r < period && ok; ++r) {
      std::vector<Integer> vals;
      for (std::size_t i = est.window_begin; i < len; ++i) {
        if (i % period == r) vals.emplace_back(static_cast<unsigned long>(seq.dims[i]));
      }
      auto fit = fit_class(vals, period);
      if (!fit) {
        ok = false;
        break;
      }
      fits.push_back(*fit);
    }
    if (!ok) continue;
    std::size_t d = 0;
    for (const auto& f : fits) d = std::max(d, f.degree);
    Rational e = 0;
    for (const auto& f : fits) {
      if (f.degree == d && f.leading > e) e = f.leading;
    }
    est.degree = Rational(static_cast<unsigned long>(d));
    est.multiplicity = e;
    est.stable = true;
    est.period = period;
    return est;
  }

  // no exact quasi-polynomial law: log-log slope across the window
  std::size_t a = std::max<std::size_t>(est.window_begin, 1), b = len - 1;
  double da = static_cast<double>(seq.dims[a]), db = static_cast<double>(seq.dims[b]);
  double slope = (da > 0 && db > 0 && b > a)
                     ? std::log(db / da) / std::log(static_cast<double>(b) / static_cast<double>(a))
                     : 0.0;
  est.degree = nearest_small_fraction(slope);
  est.stable = false;
  est.period = 0;
  if (est.degree.get_den() == 1) {
    Rational best = 0;
    unsigned long d = est.degree.get_num().get_ui();
    for (std::size_t i = a; i < len; ++i) {
      Integer denom = 1;
      for (unsigned long k = 0; k < d; ++k) denom *= Integer(static_cast<unsigned long>(i));
      Rational v(Integer(static_cast<unsigned long>(seq.dims[i])), denom);
      v.canonicalize();
      best = std::max(best, v);
    }
    est.multiplicity = best;
  } else {
    double best = 0.0;
    for (std::size_t i = a; i < len; ++i) {
      best = std::max(best, static_cast<double>(seq.dims[i]) / std::pow(static_cast<double>(i), est.degree.get_d()));
    }
    est.multiplicity = Rational(best);
  }
  return est;
}

DominationCertificate check_domination(const FiltrationHandle& f, const FiltrationHandle& g, DominationKind kind,
                                       std::uint64_t bound, std::size_t window) {
  DominationCertificate cert;
  cert.kind = kind;
  cert.bound = bound;
  cert.window = window;
  std::map<std::size_t, VectorSpan> g_levels;
  for (std::size_t i = 0; i <= window; ++i) {
    std::size_t target = kind == DominationKind::Linear ? static_cast<std::size_t>(bound * i) : i + bound;
    auto [it, fresh] = g_levels.try_emplace(target);
    if (fresh) {
      for (const auto& v : g.level(target)) it->second.insert(v);
    }
    for (const auto& v : f.level(i)) {
      if (!it->second.contains(v)) {
        cert.failing_level = i;
        cert.witness = v;
        return cert;
      }
    }
  }
  cert.verified = true;
  return cert;
}

std::uint64_t floor_power(std::uint64_t i, const Rational& s) {
  if (s < 1) throw std::invalid_argument("re-indexing exponent must be at least 1");
  Integer base(static_cast<unsigned long>(i));
  Integer p = s.get_num(), q = s.get_den();
  Integer pow;
  mpz_pow_ui(pow.get_mpz_t(), base.get_mpz_t(), p.get_ui());
  Integer root;
  mpz_root(root.get_mpz_t(), pow.get_mpz_t(), q.get_ui());
  if (!root.fits_ulong_p()) throw std::overflow_error("floor(i^s) exceeds 64 bits");
  return root.get_ui();
}

FiltrationHandle reindex_power(const FiltrationHandle& f, const Rational& s) {
  if (s < 1) throw std::invalid_argument("re-indexing exponent must be at least 1");
  return FiltrationHandle{[f, s](std::size_t i) { return f.level(floor_power(i, s)); }};
}

DimSequence reindex_sequence(const DimSequence& seq, const Rational& s, std::size_t imax) {
  DimSequence out;
  out.provenance = seq.provenance;
  for (std::size_t i = 0; i <= imax; ++i) {
    auto j = floor_power(i, s);
    if (j >= seq.dims.size()) throw std::out_of_range("re-indexed level beyond the supplied sequence");
    out.dims.push_back(seq.dims[j]);
  }
  return out;
}

FiltrationHandle standard_module_filtration(OperatorLevels algebra, OperatorAction act, std::vector<Vector> gens) {
  if (gens.empty()) throw std::invalid_argument("standard filtration needs at least one generator");
  return FiltrationHandle{[algebra = std::move(algebra), act = std::move(act), gens = std::move(gens)](std::size_t i) {
    std::vector<Vector> out;
    for (const auto& op : algebra(i)) {
      for (const auto& v : gens) {
        auto w = act(op, v);
        if (!w.empty()) out.push_back(std::move(w));
      }
    }
    return out;
  }};
}

OperatorAction polynomial_action(std::size_t nvars) {
  return [nvars](const QWeyl& op, const Vector& v) {
    QPoly f(nvars);
    for (const auto& [c, x] : v) f.add_term(Monomial(c.begin(), c.end()), x);
    return to_vector(apply(op, f));
  };
}

BernsteinReport bernstein_check(const DimSequence& algebra, const DimSequence& module, std::size_t window,
                                std::optional<std::uint64_t> simplicity_constant) {
  BernsteinReport rep;
  rep.algebra = dim_estimate(algebra, window);
  rep.module = dim_estimate(module, window);
  rep.simplicity_constant = simplicity_constant;
  if (!rep.algebra.stable || !rep.module.stable) return rep;
  rep.inequality_holds = 2 * rep.module.degree >= rep.algebra.degree;
  rep.equality = 2 * rep.module.degree == rep.algebra.degree;
  if (simplicity_constant) {
    Rational theta = rep.algebra.degree / 2;
    double c = static_cast<double>(*simplicity_constant);
    double t = theta.get_d();
    rep.multiplicity_lower_bound =
        std::sqrt(rep.algebra.multiplicity.get_d()) / (std::pow(c + 1, t / 2) * std::pow(c + 2, t / 2));
    if (theta.get_den() == 1) {
      Rational lhs = rep.module.multiplicity * rep.module.multiplicity;
      Integer f1, f2;
      mpz_ui_pow_ui(f1.get_mpz_t(), *simplicity_constant + 1, theta.get_num().get_ui());
      mpz_ui_pow_ui(f2.get_mpz_t(), *simplicity_constant + 2, theta.get_num().get_ui());
      rep.multiplicity_bound_holds = lhs * Rational(f1 * f2) >= rep.algebra.multiplicity;
    } else {
      rep.multiplicity_bound_holds = rep.module.multiplicity.get_d() >= *rep.multiplicity_lower_bound;
    }
  }
  return rep;
}

Rational length_bound(const Rational& e_module, const Rational& e_algebra, std::uint64_t c, const Rational& theta) {
  if (e_algebra <= 0) throw std::domain_error("algebra multiplicity must be positive");
  if (theta < 0 || theta.get_den() != 1) {
    throw std::domain_error("length bound is rational only for integral theta");
  }
  unsigned long t = theta.get_num().get_ui();
  Integer f1, f2;
  mpz_ui_pow_ui(f1.get_mpz_t(), c + 1, t);
  mpz_ui_pow_ui(f2.get_mpz_t(), c + 2, t);
  return e_module * e_module * Rational(f1 * f2) / e_algebra;
}

void write_csv(std::ostream& os, const DimSequence& seq) {
  os << "i,dim\n";
  for (std::size_t i = 0; i < seq.dims.size(); ++i) os << i << ',' << seq.dims[i] << '\n';
}

DimSequence read_csv(std::istream& is) {
  DimSequence seq;
  seq.provenance = Provenance::External;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    if (line.rfind("i,", 0) == 0) continue;
    std::istringstream ls(line);
    std::string a, b;
    if (!std::getline(ls, a, ',') || !std::getline(ls, b)) {
      throw std::invalid_argument("malformed CSV line " + std::to_string(lineno));
    }
    std::size_t i = std::stoull(a);
    if (i != seq.dims.size()) throw std::invalid_argument("CSV levels must be consecutive from 0");
    std::uint64_t d = std::stoull(b);
    if (!seq.dims.empty() && d < seq.dims.back()) throw std::invalid_argument("dimension sequence must be nondecreasing");
    seq.dims.push_back(d);
  }
  return seq;
}

}  // namespace dmodkit
