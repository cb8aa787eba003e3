#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "dmodkit/scalar.hpp"

namespace dmodkit {

// Sparse exact linear algebra over Q or F_p.
//
// A SparseVec is sorted by column with no zero entries.
template <class K>
using SparseVec = std::vector<std::pair<std::size_t, K>>;

inline Rational field_inverse(const Rational& x) { return Rational(1) / x; }
inline Fp field_inverse(const Fp& x) { return x.inverse(); }

template <class K>
SparseVec<K> make_sparse(std::map<std::size_t, K> entries) {
  SparseVec<K> v;
  v.reserve(entries.size());
  for (auto& [c, x] : entries) {
    if (!is_zero(x)) v.emplace_back(c, std::move(x));
  }
  return v;
}

// Assigns dense column indices to arbitrary ordered keys.
template <class Key>
class Indexer {
 public:
  std::size_t index(const Key& k) {
    auto [it, inserted] = map_.emplace(k, keys_.size());
    if (inserted) keys_.push_back(k);
    return it->second;
  }
  std::optional<std::size_t> find(const Key& k) const {
    auto it = map_.find(k);
    if (it == map_.end()) return std::nullopt;
    return it->second;
  }
  const Key& key(std::size_t i) const { return keys_.at(i); }
  std::size_t size() const { return keys_.size(); }

 private:
  std::map<Key, std::size_t> map_;
  std::vector<Key> keys_;
};

// Incrementally built echelon basis of a span. Each stored pivot row has a
// unit leading entry at its smallest column; inserted vectors are fully
// reduced against every pivot, so remainders never touch pivot columns.
//
// With tracking enabled every pivot remembers its expression in terms of the
// ids of the inserted vectors, which lets express() write a member of the
// span as an explicit combination.
template <class K>
class EchelonBasis {
 public:
  using Combination = std::map<std::size_t, K>;

  explicit EchelonBasis(bool track = false) : track_(track) {}

  // Returns true when v was independent of the current span.
  bool insert(const SparseVec<K>& v, std::size_t id = 0) {
    Combination comb;
    if (track_) comb.emplace(id, one_like(v));
    auto rem = reduce_impl(v, track_ ? &comb : nullptr, false);
    if (rem.empty()) return false;
    K lead_inv = field_inverse(rem.front().second);
    for (auto& [c, x] : rem) x = x * lead_inv;
    if (track_) {
      for (auto& [i, x] : comb) x = x * lead_inv;
    }
    pivot_of_column_.emplace(rem.front().first, rows_.size());
    rows_.push_back(std::move(rem));
    combos_.push_back(std::move(comb));
    pivot_ids_.push_back(id);
    return true;
  }

  SparseVec<K> reduce(const SparseVec<K>& v) const { return reduce_impl(v, nullptr, false); }
  bool contains(const SparseVec<K>& v) const { return reduce(v).empty(); }

  // v as a combination of inserted vectors (by id), if v lies in the span.
  std::optional<Combination> express(const SparseVec<K>& v) const {
    Combination comb;
    auto rem = reduce_impl(v, &comb, true);
    if (!rem.empty()) return std::nullopt;
    for (auto it = comb.begin(); it != comb.end();) {
      it = is_zero(it->second) ? comb.erase(it) : std::next(it);
    }
    return comb;
  }

  std::size_t rank() const { return rows_.size(); }
  const std::vector<SparseVec<K>>& rows() const { return rows_; }
  const std::vector<std::size_t>& pivot_ids() const { return pivot_ids_; }
  std::vector<std::size_t> pivot_columns() const {
    std::vector<std::size_t> cols;
    for (const auto& r : rows_) cols.push_back(r.front().first);
    return cols;
  }

 private:
  static K one_like(const SparseVec<K>& v) {
    if constexpr (std::is_same_v<K, Fp>) {
      return v.empty() ? Fp() : v.front().second / v.front().second;
    } else {
      return K(1);
    }
  }

  // When `subtracted` is set, the combination records +coef for every pivot
  // used (v = sum coef * pivot); otherwise it tracks the reduction of an
  // inserted vector (its own id minus multiples of pivots).
  SparseVec<K> reduce_impl(const SparseVec<K>& v, Combination* comb, bool subtracted) const {
    std::map<std::size_t, K> acc(v.begin(), v.end());
    auto it = acc.begin();
    while (it != acc.end()) {
      auto piv = pivot_of_column_.find(it->first);
      if (piv == pivot_of_column_.end() || is_zero(it->second)) {
        ++it;
        continue;
      }
      K coef = it->second;
      std::size_t col = it->first;
      const auto& row = rows_[piv->second];
      for (const auto& [c, x] : row) {
        auto [jt, inserted] = acc.emplace(c, -(coef * x));
        if (!inserted) jt->second = jt->second - coef * x;
      }
      if (comb) {
        for (const auto& [i, x] : combos_[piv->second]) {
          K delta = subtracted ? K(coef * x) : K(-(coef * x));
          auto [jt, inserted] = comb->emplace(i, delta);
          if (!inserted) jt->second = jt->second + delta;
        }
      }
      it = acc.upper_bound(col);
    }
    SparseVec<K> out;
    for (auto& [c, x] : acc) {
      if (!is_zero(x)) out.emplace_back(c, std::move(x));
    }
    return out;
  }

  bool track_;
  std::vector<SparseVec<K>> rows_;
  std::vector<Combination> combos_;
  std::vector<std::size_t> pivot_ids_;
  std::unordered_map<std::size_t, std::size_t> pivot_of_column_;
};

// Fully reduced row echelon form: unit pivots, zeros above and below.
template <class K>
std::vector<SparseVec<K>> rref(const std::vector<SparseVec<K>>& rows) {
  EchelonBasis<K> eb;
  for (const auto& r : rows) eb.insert(r);
  std::vector<SparseVec<K>> out = eb.rows();
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.front().first < b.front().first; });
  // back substitution, last pivot first
  std::unordered_map<std::size_t, std::size_t> pivot_row;
  for (std::size_t r = 0; r < out.size(); ++r) pivot_row.emplace(out[r].front().first, r);
  for (std::size_t r = out.size(); r-- > 0;) {
    std::map<std::size_t, K> acc(out[r].begin(), out[r].end());
    for (auto it = std::next(acc.begin()); it != acc.end();) {
      auto piv = pivot_row.find(it->first);
      if (piv == pivot_row.end() || piv->second == r || is_zero(it->second)) {
        ++it;
        continue;
      }
      K coef = it->second;
      std::size_t col = it->first;
      for (const auto& [c, x] : out[piv->second]) {
        auto [jt, inserted] = acc.emplace(c, -(coef * x));
        if (!inserted) jt->second = jt->second - coef * x;
      }
      it = acc.upper_bound(col);
    }
    out[r] = make_sparse(std::move(acc));
  }
  return out;
}

template <class K>
std::size_t rank(const std::vector<SparseVec<K>>& rows) {
  EchelonBasis<K> eb;
  for (const auto& r : rows) eb.insert(r);
  return eb.rank();
}

// Basis of {x : A x = 0} for the matrix with the given rows and ncols columns.
// Each basis vector has a unit entry at one free column.
template <class K>
std::vector<SparseVec<K>> nullspace(const std::vector<SparseVec<K>>& rows, std::size_t ncols, const K& one) {
  auto r = rref(rows);
  std::vector<bool> is_pivot(ncols, false);
  for (const auto& row : r) is_pivot.at(row.front().first) = true;
  std::vector<SparseVec<K>> basis;
  for (std::size_t f = 0; f < ncols; ++f) {
    if (is_pivot[f]) continue;
    std::map<std::size_t, K> v;
    v.emplace(f, one);
    for (const auto& row : r) {
      auto it = std::lower_bound(row.begin(), row.end(), f, [](const auto& e, std::size_t c) { return e.first < c; });
      if (it != row.end() && it->first == f) v.emplace(row.front().first, -it->second);
    }
    basis.push_back(make_sparse(std::move(v)));
  }
  return basis;
}

// Deterministic solution of A x = b (free variables set to zero), if any.
// The right-hand side is given per row index.
template <class K>
std::optional<std::map<std::size_t, K>> solve(const std::vector<SparseVec<K>>& rows, const std::vector<K>& rhs,
                                              std::size_t ncols) {
  std::vector<SparseVec<K>> aug;
  aug.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    SparseVec<K> r = rows[i];
    if (!is_zero(rhs.at(i))) r.emplace_back(ncols, rhs[i]);
    if (!r.empty()) aug.push_back(std::move(r));
  }
  auto red = rref(aug);
  std::map<std::size_t, K> x;
  for (const auto& row : red) {
    std::size_t lead = row.front().first;
    if (lead == ncols) return std::nullopt;
    if (row.back().first == ncols) x.emplace(lead, row.back().second);
  }
  return x;
}

}  // namespace dmodkit
