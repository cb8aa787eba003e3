#include <stdexcept>

#include "dmodkit/invariants.hpp"
#include "dmodkit/linalg.hpp"
#include "dmodkit/localization.hpp"

namespace dmodkit {

namespace {

// dim of the weighted-degree <= top part of R (or of R^G)
std::uint64_t ring_level_dim(const WeightedRingSpec& spec, const FiniteMatrixGroup* group, std::uint64_t top) {
  std::uint64_t total = 0;
  for (std::uint64_t d = 0; d <= top; ++d) {
    total += group ? invariant_polys(*group, spec.weights, d).size()
                   : monomials_of_degree(spec.n, spec.weights, d).size();
  }
  return total;
}

std::vector<QPoly> ring_level_basis(const WeightedRingSpec& spec, const FiniteMatrixGroup* group, std::uint64_t top) {
  std::vector<QPoly> out;
  for (std::uint64_t d = 0; d <= top; ++d) {
    auto part = group ? invariant_polys(*group, spec.weights, d) : monomials_of_degree(spec.n, spec.weights, d);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

}  // namespace

GrowthReport holonomic_growth_report(GrowthModule module, const WeightedRingSpec& spec, const QPoly* f,
                                     const FiniteMatrixGroup* group, std::size_t imax, std::size_t window) {
  GrowthReport rep;
  rep.ring_dimension = spec.n;
  std::vector<std::uint64_t> dims;
  if (module == GrowthModule::Ring) {
    for (std::size_t i = 0; i <= imax; ++i) dims.push_back(ring_level_dim(spec, group, i));
  } else {
    if (f == nullptr || f->is_zero()) throw std::invalid_argument("localized growth needs a nonzero f");
    if (f->nvars() != spec.n) throw std::invalid_argument("f has the wrong number of variables");
    if (group && !is_invariant(*group, *f)) throw std::invalid_argument("f is not invariant");
    rep.slope_level = bf_level(spec, QWeyl::from_poly(*f));
    auto dom = eps_and_order_domination(spec);
    if (!dom.verified) throw std::logic_error("order domination could not be verified");
    rep.order_constant = dom.c;
    const std::uint64_t c = dom.c;
    const std::uint64_t step = c * rep.slope_level + 1;
    // G_j = f^{-Cj} [R]_{<= j(Ca+1)}; multiplication by f^{-Cj} is injective,
    // so dim G_j = dim [R]_{<= j(Ca+1)}. Containment G_j in G_{j+1} is checked
    // exactly on the first levels.
    Localization loc(*f);
    const std::size_t checked = std::min<std::size_t>(imax, 2);
    for (std::size_t j = 0; j < checked; ++j) {
      Indexer<Monomial> idx;
      EchelonBasis<Rational> next;
      for (const auto& p : ring_level_basis(spec, group, (j + 1) * step)) {
        std::map<std::size_t, Rational> row;
        for (const auto& [m, x] : p.terms()) row.emplace(idx.index(m), x);
        next.insert(make_sparse(std::move(row)));
      }
      for (const auto& p : ring_level_basis(spec, group, j * step)) {
        // f^{-Cj} p = f^{-C(j+1)} (f^C p)
        QPoly lifted = p * f->pow(static_cast<std::uint32_t>(c));
        std::map<std::size_t, Rational> row;
        bool outside = false;
        for (const auto& [m, x] : lifted.terms()) {
          auto col = idx.find(m);
          if (!col) {
            outside = true;
            break;
          }
          row.emplace(*col, x);
        }
        if (outside || !next.contains(make_sparse(std::move(row)))) {
          throw std::logic_error("localized filtration is not ascending at level " + std::to_string(j));
        }
      }
    }
    for (std::size_t j = 0; j <= imax; ++j) dims.push_back(ring_level_dim(spec, group, j * step));
  }
  rep.sequence = DimSequence{dims, Provenance::Enumerated};
  rep.estimate = dim_estimate(rep.sequence, window);
  return rep;
}

}  // namespace dmodkit
