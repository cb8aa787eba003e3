#include "dmodkit/simplicity.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "dmodkit/linalg.hpp"

namespace dmodkit {

ReductionCertificate reduce_to_unit(const QWeyl& delta) {
  ReductionCertificate cert;
  cert.start = delta;
  if (delta.is_zero()) return cert;
  const std::size_t n = delta.nvars();
  QWeyl cur = delta;
  while (true) {
    // largest x-exponent first, then largest d-exponent
    std::optional<ReductionStep> step;
    for (int half = 0; half < 2 && !step; ++half) {
      Exponent best = 0;
      for (const auto& [key, c] : cur.terms()) {
        for (std::size_t j = 0; j < n; ++j) {
          Exponent e = key[half * n + j];
          if (e > best || (e == best && e > 0 && step && j < step->var)) {
            best = e;
            step = ReductionStep{half == 0 ? ReductionStep::Kind::WithD : ReductionStep::Kind::WithX, j};
          }
        }
      }
    }
    if (!step) break;
    cur = commutator(cur, step->kind == ReductionStep::Kind::WithD ? QWeyl::d(n, step->var) : QWeyl::x(n, step->var));
    cert.steps.push_back(*step);
    if (cur.is_zero()) return cert;
  }
  cert.unit = cur.coeff(Monomial(n, 0), Monomial(n, 0));
  cert.success = true;
  return cert;
}

bool verify_reduction(const ReductionCertificate& cert) {
  if (!cert.success || is_zero(cert.unit)) return false;
  const std::size_t n = cert.start.nvars();
  QWeyl cur = cert.start;
  for (const auto& s : cert.steps) {
    if (s.var >= n) return false;
    cur = commutator(cur, s.kind == ReductionStep::Kind::WithD ? QWeyl::d(n, s.var) : QWeyl::x(n, s.var));
  }
  return cur == QWeyl::constant(n, cert.unit);
}

MembershipCertificate membership_from_reduction(const ReductionCertificate& cert, std::size_t i, std::uint64_t c) {
  if (!cert.success) throw std::invalid_argument("reduction did not reach a unit");
  const std::size_t n = cert.start.nvars();
  // current element = sum L delta R; [E, g] = E g - g E
  std::vector<std::pair<QWeyl, QWeyl>> terms{{QWeyl::constant(n, 1), QWeyl::constant(n, 1)}};
  for (const auto& s : cert.steps) {
    QWeyl g = s.kind == ReductionStep::Kind::WithD ? QWeyl::d(n, s.var) : QWeyl::x(n, s.var);
    std::vector<std::pair<QWeyl, QWeyl>> next;
    auto push = [&next](QWeyl l, QWeyl r) {
      if (l.is_zero() || r.is_zero()) return;
      for (auto& [ll, rr] : next) {
        if (rr == r) {
          ll += l;
          return;
        }
      }
      next.emplace_back(std::move(l), std::move(r));
    };
    for (const auto& [l, r] : terms) {
      push(l, r * g);
      push(-(g * l), r);
    }
    next.erase(std::remove_if(next.begin(), next.end(), [](const auto& t) { return t.first.is_zero(); }), next.end());
    terms = std::move(next);
  }
  MembershipCertificate out;
  out.delta = cert.start;
  out.i = i;
  out.c = c;
  const Rational inv = Rational(1) / cert.unit;
  for (auto& [l, r] : terms) out.terms.emplace_back(l * inv, r);
  return out;
}

namespace {

struct Candidate {
  QWeyl op;
  std::uint64_t level = 0;
};

// basis of B_N or (B_N)^G keyed by weighted degree
std::map<std::int64_t, std::vector<Candidate>> graded_candidates(const WeightedRingSpec& spec, std::size_t level,
                                                                 const FiniteMatrixGroup* group) {
  std::map<std::int64_t, std::vector<Candidate>> out;
  if (group) {
    for (auto& [d, ops] : graded_invariant_basis(*group, spec, level)) {
      for (auto& op : ops) {
        const std::uint64_t l = bf_level(spec, op);
        out[d].push_back({std::move(op), l});
      }
    }
    return out;
  }
  QWeyl probe(spec.n);
  for (const auto& key : bf_basis(spec, level).pairs) {
    QWeyl op(spec.n);
    op.add_term(key, 1);
    const std::uint64_t l = bf_level(spec, op);
    out[probe.term_degree(key, spec.weights)].push_back({std::move(op), l});
  }
  return out;
}

SparseVec<Rational> coords(const QWeyl& op, Indexer<Monomial>& idx) {
  std::map<std::size_t, Rational> m;
  for (const auto& [k, c] : op.terms()) m.emplace(idx.index(k), c);
  return make_sparse(std::move(m));
}

}  // namespace

std::optional<MembershipCertificate> membership_certificate(const WeightedRingSpec& spec, const QWeyl& delta,
                                                            std::size_t i, std::uint64_t cmax,
                                                            const FiniteMatrixGroup* group) {
  if (delta.is_zero()) return std::nullopt;
  if (delta.nvars() != spec.n) throw std::invalid_argument("operator arity mismatch");
  if (group && !is_invariant(*group, delta)) throw std::invalid_argument("operator is not invariant");
  const auto hdeg = delta.homogeneous_degree(spec.weights);
  const std::size_t n = spec.n;
  // at i = 0 every C gives B_0 = k, recorded as C = 0
  for (std::uint64_t c = i == 0 ? 0 : 1; c <= cmax; ++c) {
    auto cands = graded_candidates(spec, static_cast<std::size_t>(c * i), group);
    std::vector<const Candidate*> flat;
    for (const auto& [d, v] : cands) {
      for (const auto& x : v) flat.push_back(&x);
    }
    std::vector<std::pair<const Candidate*, const Candidate*>> pairs;
    if (hdeg) {
      for (const auto& [d, left] : cands) {
        auto it = cands.find(-*hdeg - d);
        if (it == cands.end()) continue;
        for (const auto& a : left) {
          for (const auto& b : it->second) pairs.emplace_back(&a, &b);
        }
      }
    } else {
      for (auto* a : flat) {
        for (auto* b : flat) pairs.emplace_back(a, b);
      }
    }
    std::stable_sort(pairs.begin(), pairs.end(), [](const auto& x, const auto& y) {
      return x.first->level + x.second->level < y.first->level + y.second->level;
    });
    Indexer<Monomial> idx;
    const auto target = coords(QWeyl::constant(n, 1), idx);
    // phase 1: find a spanning subset that reaches 1
    EchelonBasis<Rational> eb;
    std::vector<std::size_t> used;
    std::map<const Candidate*, QWeyl> left_products;
    bool reached = false;
    std::vector<QWeyl> products;
    for (std::size_t p = 0; p < pairs.size() && !reached; ++p) {
      auto [a, b] = pairs[p];
      auto it = left_products.find(a);
      if (it == left_products.end()) it = left_products.emplace(a, a->op * delta).first;
      QWeyl prod = it->second * b->op;
      if (eb.insert(coords(prod, idx), p)) {
        used.push_back(p);
        products.push_back(std::move(prod));
        reached = eb.contains(target);
      }
    }
    if (!reached) continue;
    // phase 2: express 1 through the pivots only
    EchelonBasis<Rational> tracked(true);
    for (std::size_t k = 0; k < used.size(); ++k) tracked.insert(coords(products[k], idx), k);
    auto comb = tracked.express(target);
    if (!comb) throw std::logic_error("membership expression lost during replay");
    MembershipCertificate cert;
    cert.delta = delta;
    cert.i = i;
    cert.c = c;
    for (const auto& [k, coef] : *comb) {
      auto [a, b] = pairs[used[k]];
      cert.terms.emplace_back(a->op * coef, b->op);
    }
    return cert;
  }
  return std::nullopt;
}

bool verify_membership(const WeightedRingSpec& spec, const MembershipCertificate& cert,
                       const FiniteMatrixGroup* group) {
  const std::size_t n = spec.n;
  if (cert.delta.nvars() != n || cert.terms.empty()) return false;
  const std::uint64_t bound = cert.c * cert.i;
  QWeyl sum(n);
  for (const auto& [l, r] : cert.terms) {
    if (l.nvars() != n || r.nvars() != n) return false;
    if (bf_level(spec, l) > bound || bf_level(spec, r) > bound) return false;
    if (group && (!is_invariant(*group, l) || !is_invariant(*group, r))) return false;
    sum += l * cert.delta * r;
  }
  return sum == QWeyl::constant(n, 1);
}

std::vector<MinConstantRow> min_constant_table(const FiniteMatrixGroup& g, const WeightedRingSpec& spec,
                                               std::size_t imax, std::uint64_t cmax) {
  std::vector<MinConstantRow> rows;
  for (std::size_t i = 0; i <= imax; ++i) {
    MinConstantRow row;
    row.i = i;
    row.verified = true;
    std::uint64_t worst = 0;
    bool complete = true;
    for (const auto& [d, ops] : graded_invariant_basis(g, spec, i)) {
      for (const auto& delta : ops) {
        auto cert = membership_certificate(spec, delta, i, cmax, &g);
        ++row.basis_size;
        if (!cert) {
          complete = false;
          row.per_basis.push_back(std::nullopt);
          continue;
        }
        row.per_basis.push_back(cert->c);
        worst = std::max(worst, cert->c);
        row.verified = row.verified && verify_membership(spec, *cert, &g);
      }
    }
    if (complete) row.c = worst;
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace dmodkit
