#include "dmodkit/bernstein_sato.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "dmodkit/linalg.hpp"
#include "dmodkit/localization.hpp"

namespace dmodkit {

namespace {

// Candidate operators for delta_k: monomials of B_level, or a basis of their
// invariant span, optionally restricted to one degree.
std::vector<QWeyl> candidate_operators(const QPoly& f, const WeightedRingSpec& spec, const FiniteMatrixGroup* group,
                                       std::size_t level, bool restrict_degree, bool& restricted) {
  BFLevel lvl = bf_basis(spec, level);
  auto fdeg = f.homogeneous_degree(spec.weights);
  restricted = restrict_degree && fdeg.has_value();
  std::vector<QWeyl> mons;
  for (const auto& key : lvl.pairs) {
    QWeyl op(spec.n);
    op.add_term(key, 1);
    if (restricted && op.term_degree(key, spec.weights) != -static_cast<std::int64_t>(*fdeg)) continue;
    mons.push_back(std::move(op));
  }
  if (!group) return mons;
  Indexer<Monomial> idx;
  std::vector<SparseVec<Rational>> rows;
  for (const auto& m : mons) idx.index(m.terms().begin()->first);
  for (const auto& m : mons) {
    std::map<std::size_t, Rational> row;
    const QWeyl image = reynolds_op(*group, m);
    for (const auto& [k, c] : image.terms()) {
      auto col = idx.find(k);
      if (!col) throw std::logic_error("group action left the filtration level");
      row.emplace(*col, c);
    }
    if (!row.empty()) rows.push_back(make_sparse(std::move(row)));
  }
  std::vector<QWeyl> out;
  for (const auto& r : rref(rows)) {
    QWeyl op(spec.n);
    for (const auto& [c, x] : r) op.add_term(idx.key(c), x);
    out.push_back(std::move(op));
  }
  return out;
}

// key of an equation: (power of s, monomial in x)
using EqKey = std::pair<std::size_t, Monomial>;

BSResult solve_impl(const QPoly& f, const WeightedRingSpec& spec, const FiniteMatrixGroup* group,
                    const BSOptions& opts) {
  if (f.is_zero()) throw std::invalid_argument("Bernstein-Sato search needs a nonzero f");
  if (f.nvars() != spec.n) throw std::invalid_argument("f has the wrong number of variables");
  if (group && !is_invariant(*group, f)) throw std::invalid_argument("f is not invariant under the group");
  BSResult res;
  res.level = opts.level;
  res.sdeg = opts.sdeg;
  res.invariant_search = group != nullptr;
  auto basis = candidate_operators(f, spec, group, opts.level, opts.homogeneous_restriction, res.homogeneous_restricted);

  // P_j(s) f^{-M} = sum_i binom(s,i) f^{-i} m_j^(i)(f); with M the largest order
  std::vector<std::vector<QWeyl>> chains;
  std::size_t top = 0;
  for (const auto& m : basis) {
    chains.push_back(bracket_sequence(m, f));
    top = std::max(top, chains.back().size());
  }
  const std::uint32_t big_m = top == 0 ? 0 : static_cast<std::uint32_t>(top - 1);
  std::vector<QPoly> fpow;
  for (std::uint32_t e = 0; e <= big_m + 1; ++e) fpow.push_back(f.pow(e));
  std::vector<std::map<EqKey, Rational>> images;
  for (const auto& chain : chains) {
    std::map<EqKey, Rational> img;
    for (std::size_t i = 0; i < chain.size(); ++i) {
      QPoly val = apply(chain[i], f) * fpow[big_m - i];
      if (val.is_zero()) continue;
      SPoly b = binom_s(i);
      for (std::size_t r = 0; r < b.coeffs().size(); ++r) {
        if (is_zero(b.coeffs()[r])) continue;
        for (const auto& [m, c] : val.terms()) {
          auto [it, inserted] = img.emplace(EqKey{r, m}, c * b.coeffs()[r]);
          if (!inserted) it->second += c * b.coeffs()[r];
        }
      }
    }
    images.push_back(std::move(img));
  }

  const std::size_t kcount = opts.sdeg + 1;
  const std::size_t ops_cols = basis.size() * kcount;
  res.unknowns = ops_cols;
  for (std::size_t d = 0; d <= opts.bdeg; ++d) {
    // sum c_{j,k} s^k P_j - sum_{r<d} b_r s^r f^M = s^d f^M
    std::map<EqKey, std::map<std::size_t, Rational>> eqs;
    for (std::size_t j = 0; j < basis.size(); ++j) {
      for (std::size_t k = 0; k < kcount; ++k) {
        const std::size_t col = j * kcount + k;
        for (const auto& [key, c] : images[j]) {
          eqs[EqKey{key.first + k, key.second}][col] += c;
        }
      }
    }
    for (std::size_t r = 0; r < d; ++r) {
      for (const auto& [m, c] : fpow[big_m].terms()) eqs[EqKey{r, m}][ops_cols + r] -= c;
    }
    for (const auto& [m, c] : fpow[big_m].terms()) eqs[EqKey{d, m}];
    std::vector<SparseVec<Rational>> rows;
    std::vector<Rational> rhs;
    for (auto& [key, row] : eqs) {
      rows.push_back(make_sparse(std::move(row)));
      rhs.push_back(key.first == d ? fpow[big_m].coeff(key.second) : Rational(0));
    }
    auto sol = solve(rows, rhs, ops_cols + d);
    if (!sol) continue;
    std::vector<Rational> bc(d + 1, Rational(0));
    bc[d] = 1;
    SWeyl delta(spec.n);
    for (const auto& [col, x] : *sol) {
      if (col >= ops_cols) {
        bc[col - ops_cols] = x;
        continue;
      }
      const std::size_t j = col / kcount, k = col % kcount;
      delta += lift(basis[j]) * SPoly::monomial(k, x);
    }
    res.found = true;
    res.b = SPoly(std::move(bc));
    res.delta = delta;
    break;
  }
  if (!res.found) return res;
  std::int64_t tmax = std::max<std::int64_t>(6, static_cast<std::int64_t>(opts.sdeg + res.delta.order() + 1));
  for (std::int64_t t = 0; t <= tmax; ++t) res.checked_points.push_back(t);
  res.verified = bs_verify(f, res.delta, res.b, tmax);
  Localization loc(f);
  FsElement lhs = loc.fs_act(res.delta, loc.fs_element({f}));
  std::vector<QPoly> rhs;
  for (const auto& c : res.b.coeffs()) rhs.push_back(QPoly::constant(spec.n, c));
  res.symbolic_verified = loc.fs_equal(lhs, loc.fs_element(rhs));
  return res;
}

}  // namespace

BSResult bs_solve(const QPoly& f, const WeightedRingSpec& spec, const BSOptions& opts) {
  return solve_impl(f, spec, nullptr, opts);
}

BSResult bs_solve(const QPoly& f, const WeightedRingSpec& spec, const FiniteMatrixGroup& group,
                  const BSOptions& opts) {
  return solve_impl(f, spec, &group, opts);
}

bool bs_verify(const QPoly& f, const SWeyl& delta, const SPoly& b, std::int64_t tmax) {
  QPoly ft = QPoly::constant(f.nvars(), 1);
  for (std::int64_t t = 0; t <= tmax; ++t) {
    QPoly next = ft * f;
    if (apply(specialize(delta, Rational(t)), next) != ft * b.eval(Rational(t))) return false;
    ft = std::move(next);
  }
  return true;
}

}  // namespace dmodkit
