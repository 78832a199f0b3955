#pragma once

// Persistent Betti numbers by dense linear algebra, independent of the
// column reduction: beta^{i,j}_k = dim Z_k(K_i) - dim(Z_k(K_i) ∩ B_k(K_j)),
// and bar multiplicities by inclusion-exclusion over levels.

#include <map>
#include <utility>
#include <vector>

#include "interleave/rips.hpp"

namespace testgen {

using namespace interleave;

// Boundary matrix from k-simplices to (k-1)-simplices among the first `upto` simplices.
inline Matrix boundary_block(const FilteredComplex& K, std::size_t k, std::size_t upto, const Field& f,
                             std::vector<std::size_t>& rows, std::vector<std::size_t>& cols) {
  rows.clear();
  cols.clear();
  for (std::size_t i = 0; i < upto; ++i) {
    if (k > 0 && K[i].dim() == k - 1) rows.push_back(i);
    if (K[i].dim() == k) cols.push_back(i);
  }
  Matrix B(rows.size(), cols.size(), f);
  for (std::size_t c = 0; c < cols.size(); ++c) {
    const auto& v = K[cols[c]].vertices;
    if (v.size() < 2) continue;
    for (std::size_t r = 0; r < v.size(); ++r) {
      std::vector<std::uint32_t> face;
      for (std::size_t a = 0; a < v.size(); ++a)
        if (a != r) face.push_back(v[a]);
      std::size_t idx = *K.find(face);
      std::size_t row = std::find(rows.begin(), rows.end(), idx) - rows.begin();
      B(row, c) = r % 2 ? f.neg(1) : 1;
    }
  }
  return B;
}

// Embed a column basis indexed by `from` into coordinates indexed by `to` (from ⊆ to).
inline Matrix embed(const Matrix& m, const std::vector<std::size_t>& from, const std::vector<std::size_t>& to,
                    const Field& f) {
  Matrix out(to.size(), m.cols(), f);
  for (std::size_t r = 0; r < from.size(); ++r) {
    std::size_t row = std::find(to.begin(), to.end(), from[r]) - to.begin();
    for (std::size_t c = 0; c < m.cols(); ++c) out(row, c) = m(r, c);
  }
  return out;
}

// beta^{i,j}_k for levels i <= j (level L = simplices of level <= L).
inline std::size_t persistent_betti(const FilteredComplex& K, std::size_t k, std::size_t i, std::size_t j,
                                    const Field& f) {
  auto prefix = [&](std::size_t L) {
    std::size_t n = 0;
    while (n < K.size() && K[n].level <= L) ++n;
    return n;
  };
  std::vector<std::size_t> rows_i, cols_i, rows_j, cols_j;
  Matrix Di = boundary_block(K, k, prefix(i), f, rows_i, cols_i);
  Matrix Z = cols_i.empty() ? Matrix(0, 0, f) : nullspace(Di);
  if (cols_i.empty()) return 0;
  std::size_t z = Z.cols();
  std::vector<std::size_t> r2, c2;
  Matrix Dj = boundary_block(K, k + 1, prefix(j), f, r2, c2);  // rows are the k-simplices of K_j
  Matrix Zj = embed(Z, cols_i, r2, f);
  std::size_t b = Dj.cols() ? rank(Dj) : 0;
  std::size_t sum = rank(Dj.cols() ? hstack(Zj, Dj) : Zj);
  return z - (z + b - sum);
}

// Multiset of (birth level, death level or npos) in degree k.
inline std::map<std::pair<std::size_t, std::size_t>, long> oracle_bars(const FilteredComplex& K, std::size_t k,
                                                                       const Field& f) {
  const std::size_t n = K.levels().size();
  std::vector<std::vector<long>> beta(n, std::vector<long>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) beta[i][j] = static_cast<long>(persistent_betti(K, k, i, j, f));
  auto B = [&](long i, long j) -> long {
    if (i < 0) return 0;
    return beta[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  };
  std::map<std::pair<std::size_t, std::size_t>, long> out;
  for (long i = 0; i < static_cast<long>(n); ++i) {
    for (long j = i + 1; j < static_cast<long>(n); ++j) {
      long m = B(i, j - 1) - B(i - 1, j - 1) - B(i, j) + B(i - 1, j);
      if (m) out[{i, j}] = m;
    }
    long e = B(i, n - 1) - B(i - 1, n - 1);
    if (e) out[{i, npos}] = e;
  }
  return out;
}

inline std::map<std::pair<std::size_t, std::size_t>, long> reduction_bars(const Persistence& P, std::size_t k) {
  std::map<std::pair<std::size_t, std::size_t>, long> out;
  const FilteredComplex& K = P.complex();
  for (const Bar& b : P.bars(k)) {
    std::size_t bl = K[b.birth].level, dl = b.essential() ? npos : K[b.death].level;
    if (bl != dl) ++out[{bl, dl}];
  }
  return out;
}

}  // namespace testgen
