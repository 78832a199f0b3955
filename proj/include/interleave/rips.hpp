#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "interleave/diagram.hpp"
#include "interleave/gf.hpp"
#include "interleave/module.hpp"
#include "interleave/monotone_map.hpp"
#include "interleave/real.hpp"
#include "interleave/stability.hpp"

namespace interleave {

/** @brief A configured size limit was hit; results are never silently truncated. */
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kDefaultSimplexBudget = 5'000'000;
inline constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

// ------------------------------------------------------------ metric spaces

/** @brief n points with exact squared distances. */
class FiniteMetricSpace {
 public:
  FiniteMetricSpace() = default;

  /** @brief Euclidean points with rational coordinates. */
  static FiniteMetricSpace from_points(const std::vector<std::vector<Rational>>& pts) {
    FiniteMetricSpace X;
    X.n_ = pts.size();
    X.d2_.assign(X.n_ * X.n_, Rational(0));
    for (std::size_t i = 0; i < X.n_; ++i) {
      if (pts[i].size() != pts[0].size()) throw DomainError("points have mixed dimensions");
      for (std::size_t j = 0; j < i; ++j) {
        Rational s = 0;
        for (std::size_t c = 0; c < pts[i].size(); ++c) {
          Rational t = pts[i][c] - pts[j][c];
          s += t * t;
        }
        s.canonicalize();
        X.d2_[i * X.n_ + j] = X.d2_[j * X.n_ + i] = s;
      }
    }
    return X;
  }

  /** @brief Full symmetric distance matrix; strict also checks the triangle inequality. */
  static FiniteMetricSpace from_distances(const std::vector<std::vector<Rational>>& d, bool strict = false) {
    FiniteMetricSpace X;
    X.n_ = d.size();
    X.d2_.assign(X.n_ * X.n_, Rational(0));
    for (std::size_t i = 0; i < X.n_; ++i) {
      if (d[i].size() != X.n_) throw DomainError("distance matrix is not square");
      if (d[i][i] != 0) throw DomainError("nonzero diagonal entry at " + std::to_string(i));
      for (std::size_t j = 0; j < X.n_; ++j) {
        if (d[i][j] < 0) throw DomainError("negative distance");
        if (d[i][j] != d[j][i]) throw DomainError("distance matrix is not symmetric");
        Rational s = d[i][j] * d[i][j];
        s.canonicalize();
        X.d2_[i * X.n_ + j] = s;
      }
    }
    if (strict)
      for (std::size_t i = 0; i < X.n_; ++i)
        for (std::size_t j = 0; j < X.n_; ++j)
          for (std::size_t k = 0; k < X.n_; ++k)
            if (d[i][j] > d[i][k] + d[k][j])
              throw DomainError("triangle inequality fails at (" + std::to_string(i) + ", " + std::to_string(j) +
                                ", " + std::to_string(k) + ")");
    return X;
  }

  std::size_t size() const { return n_; }
  const Rational& d2(std::size_t i, std::size_t j) const { return d2_[i * n_ + j]; }
  Real dist(std::size_t i, std::size_t j) const { return Real::sqrt(d2(i, j)); }

  /** @brief Sub-space on the given points, in the given order. */
  FiniteMetricSpace subset(const std::vector<std::size_t>& idx) const {
    FiniteMetricSpace Y;
    Y.n_ = idx.size();
    Y.d2_.resize(Y.n_ * Y.n_);
    for (std::size_t a = 0; a < Y.n_; ++a)
      for (std::size_t b = 0; b < Y.n_; ++b) Y.d2_[a * Y.n_ + b] = d2(idx.at(a), idx.at(b));
    return Y;
  }

  friend bool operator==(const FiniteMetricSpace&, const FiniteMetricSpace&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<Rational> d2_;
};

namespace detail {
inline bool d2_within(const Rational& d2, const Real& r) {
  if (r.sign() < 0) return false;
  if (r.is_rational()) return d2 <= r.to_rational() * r.to_rational();
  return Real(d2) <= r * r;
}
}  // namespace detail

/** @brief Farthest-point order from point 0; radius2[k] is the squared covering radius of the first k+1 points. */
struct FarthestPointOrder {
  std::vector<std::size_t> order;
  std::vector<Rational> radius2;
};

inline FarthestPointOrder farthest_point_order(const FiniteMetricSpace& X) {
  FarthestPointOrder out;
  const std::size_t n = X.size();
  if (n == 0) return out;
  std::vector<Rational> best(n);
  std::vector<char> taken(n, 0);
  std::size_t next = 0;
  for (std::size_t step = 0; step < n; ++step) {
    taken[next] = 1;
    out.order.push_back(next);
    for (std::size_t i = 0; i < n; ++i)
      if (step == 0 || X.d2(i, next) < best[i]) best[i] = X.d2(i, next);
    // farthest remaining point, smallest index on ties
    std::size_t far = npos;
    for (std::size_t i = 0; i < n; ++i)
      if (!taken[i] && (far == npos || best[i] > best[far])) far = i;
    out.radius2.push_back(far == npos ? Rational(0) : best[far]);
    if (far == npos) break;
    next = far;
  }
  return out;
}

/** @brief Shortest farthest-point prefix with covering radius <= delta, as sorted indices. */
inline std::vector<std::size_t> greedy_net(const FiniteMetricSpace& X, const Real& delta) {
  if (delta.sign() < 0) throw DomainError("net radius must be non-negative");
  FarthestPointOrder fp = farthest_point_order(X);
  std::size_t len = 0;
  while (len < fp.order.size() && !detail::d2_within(fp.radius2[len], delta)) ++len;
  std::vector<std::size_t> Y(fp.order.begin(), fp.order.begin() + static_cast<std::ptrdiff_t>(std::min(len + 1, fp.order.size())));
  std::sort(Y.begin(), Y.end());
  return Y;
}

/** @brief Squared covering radius of Y (indices into X). */
inline Rational covering_radius2(const FiniteMetricSpace& X, const std::vector<std::size_t>& Y) {
  if (Y.empty()) throw DomainError("empty subset covers nothing");
  Rational worst = 0;
  for (std::size_t x = 0; x < X.size(); ++x) {
    Rational m = X.d2(x, Y[0]);
    for (std::size_t y : Y) m = std::min(m, X.d2(x, y));
    worst = std::max(worst, m);
  }
  return worst;
}

inline bool verify_delta_approx(const FiniteMetricSpace& X, const std::vector<std::size_t>& Y, const Real& delta) {
  if (X.size() == 0) return true;
  if (Y.empty()) return false;
  return detail::d2_within(covering_radius2(X, Y), delta);
}

/**
 * @brief For each point of `from` (indices into X), the position in Y of its
 * nearest Y point; points of Y map to themselves, other ties go to the
 * smallest X index.
 */
inline std::vector<std::size_t> nearest_point_map(const FiniteMetricSpace& X, const std::vector<std::size_t>& from,
                                                  const std::vector<std::size_t>& Y) {
  std::vector<std::size_t> out;
  for (std::size_t x : from) {
    auto self = std::find(Y.begin(), Y.end(), x);
    if (self != Y.end()) {
      out.push_back(static_cast<std::size_t>(self - Y.begin()));
      continue;
    }
    std::size_t best = npos;
    for (std::size_t k = 0; k < Y.size(); ++k) {
      if (best == npos) {
        best = k;
        continue;
      }
      const Rational &a = X.d2(x, Y[k]), &b = X.d2(x, Y[best]);
      if (a < b || (a == b && Y[k] < Y[best])) best = k;
    }
    if (best == npos) throw DomainError("nearest point in an empty set");
    out.push_back(best);
  }
  return out;
}

// ------------------------------------------------------------ Rips filtration

struct Simplex {
  std::vector<std::uint32_t> vertices;  // sorted
  std::uint32_t level = 0;              // index into FilteredComplex::levels()
  std::size_t dim() const { return vertices.size() - 1; }
};

/**
 * @brief Rips simplices sorted by (grade, dimension, vertices). Grades are
 * sqrt(level)/2 for the squared diameters in levels().
 */
class FilteredComplex {
 public:
  const std::vector<Simplex>& simplices() const { return simplices_; }
  const Simplex& operator[](std::size_t i) const { return simplices_[i]; }
  std::size_t size() const { return simplices_.size(); }
  std::size_t dim_cap() const { return dim_cap_; }
  std::size_t vertex_count() const { return n_; }
  const std::vector<Rational>& levels() const { return levels_; }
  const Real& grade(std::size_t level) const { return grades_[level]; }
  const Real& simplex_grade(std::size_t i) const { return grades_[simplices_[i].level]; }

  /** @brief Last level with grade <= t, nullopt when t is below every grade. */
  std::optional<std::size_t> level_at(const Real& t) const {
    auto it = std::upper_bound(grades_.begin(), grades_.end(), t);
    if (it == grades_.begin()) return std::nullopt;
    return static_cast<std::size_t>(it - grades_.begin()) - 1;
  }
  /** @brief Number of simplices of grade <= t, a prefix of the order. */
  std::size_t prefix_at(const Real& t) const {
    auto L = level_at(t);
    return L ? level_end_[*L] : 0;
  }

  std::optional<std::size_t> find(const std::vector<std::uint32_t>& sorted) const {
    if (sorted.empty() || sorted.size() > dim_cap_ + 1 || sorted.back() >= n_) return std::nullopt;
    const auto& m = index_[sorted.size() - 1];
    auto it = m.find(key(sorted));
    if (it == m.end()) return std::nullopt;
    return it->second;
  }

 private:
  friend FilteredComplex build_rips(const FiniteMetricSpace&, const std::optional<Real>&, std::size_t, std::size_t);

  std::uint64_t key(const std::vector<std::uint32_t>& v) const {
    std::uint64_t k = 0;
    for (std::size_t i = 0; i < v.size(); ++i) k += binom_[v[i] * (dim_cap_ + 2) + i + 1];
    return k;
  }

  std::size_t n_ = 0;
  std::size_t dim_cap_ = 1;
  std::vector<Rational> levels_;
  std::vector<Real> grades_;
  std::vector<std::size_t> level_end_;
  std::vector<Simplex> simplices_;
  std::vector<std::uint64_t> binom_;  // binom_[v * (dim_cap + 2) + r] = C(v, r)
  std::vector<std::unordered_map<std::uint64_t, std::uint32_t>> index_;
};

/**
 * @brief All simplices of dimension <= dim_cap whose grade (half the largest
 * pairwise distance) is <= t_max; every simplex when t_max is unset.
 */
inline FilteredComplex build_rips(const FiniteMetricSpace& X, const std::optional<Real>& t_max, std::size_t dim_cap,
                                  std::size_t budget = kDefaultSimplexBudget) {
  if (dim_cap < 1) throw DomainError("dimension cap must be at least 1");
  if (t_max && t_max->sign() < 0) throw DomainError("t_max must be non-negative");
  const std::size_t n = X.size();
  if (n >= (1u << 31)) throw ResourceError("too many points");
  FilteredComplex K;
  K.n_ = n;
  K.dim_cap_ = dim_cap;
  if (n == 0) {
    K.index_.resize(dim_cap + 1);
    return K;
  }

  Real reach = t_max ? Real(2) * *t_max : Real(0);
  std::vector<std::vector<std::uint32_t>> up(n);  // neighbors with larger index
  std::vector<Rational> lv{Rational(0)};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (!t_max || detail::d2_within(X.d2(i, j), reach)) {
        up[i].push_back(static_cast<std::uint32_t>(j));
        lv.push_back(X.d2(i, j));
      }
  std::sort(lv.begin(), lv.end());
  lv.erase(std::unique(lv.begin(), lv.end()), lv.end());
  K.levels_ = lv;
  for (const auto& q : lv) K.grades_.push_back(Real::sqrt(q / 4));
  auto level_of = [&](std::size_t i, std::size_t j) {
    return static_cast<std::uint32_t>(std::lower_bound(lv.begin(), lv.end(), X.d2(i, j)) - lv.begin());
  };
  std::vector<std::uint32_t> edge_level(n * n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::uint32_t j : up[i]) edge_level[i * n + j] = edge_level[j * n + i] = level_of(i, j);

  std::vector<Simplex>& out = K.simplices_;
  // depth-first clique expansion; candidates stay sorted
  std::vector<std::uint32_t> verts;
  auto expand = [&](auto&& self, std::uint32_t level, const std::vector<std::uint32_t>& cand) -> void {
    if (out.size() >= budget)
      throw ResourceError("simplex budget of " + std::to_string(budget) + " exceeded; raise --budget or lower --tmax");
    out.push_back({verts, level});
    if (verts.size() == dim_cap + 1) return;
    for (std::size_t a = 0; a < cand.size(); ++a) {
      std::uint32_t u = cand[a];
      std::uint32_t l = level;
      for (std::uint32_t v : verts) l = std::max(l, edge_level[v * n + u]);
      std::vector<std::uint32_t> next;
      if (verts.size() < dim_cap) {
        const auto& nu = up[u];
        std::set_intersection(cand.begin() + static_cast<std::ptrdiff_t>(a) + 1, cand.end(), nu.begin(), nu.end(),
                              std::back_inserter(next));
      }
      verts.push_back(u);
      self(self, l, next);
      verts.pop_back();
    }
  };
  for (std::uint32_t v = 0; v < n; ++v) {
    verts = {v};
    if (out.size() >= budget) throw ResourceError("simplex budget of " + std::to_string(budget) + " exceeded");
    out.push_back({verts, 0});
    if (dim_cap == 0) continue;
    for (std::size_t a = 0; a < up[v].size(); ++a) {
      std::uint32_t u = up[v][a];
      std::vector<std::uint32_t> next;
      if (dim_cap >= 2)
        std::set_intersection(up[v].begin() + static_cast<std::ptrdiff_t>(a) + 1, up[v].end(), up[u].begin(), up[u].end(),
                              std::back_inserter(next));
      verts = {v, u};
      expand(expand, edge_level[v * n + u], next);
    }
  }
  std::sort(out.begin(), out.end(), [](const Simplex& a, const Simplex& b) {
    if (a.level != b.level) return a.level < b.level;
    if (a.vertices.size() != b.vertices.size()) return a.vertices.size() < b.vertices.size();
    return a.vertices < b.vertices;
  });

  K.level_end_.assign(lv.size(), 0);
  for (std::size_t i = 0; i < out.size(); ++i) K.level_end_[out[i].level] = i + 1;
  for (std::size_t L = 1; L < lv.size(); ++L) K.level_end_[L] = std::max(K.level_end_[L], K.level_end_[L - 1]);

  K.binom_.assign((n + 1) * (dim_cap + 2), 0);
  for (std::size_t v = 0; v <= n; ++v) {
    K.binom_[v * (dim_cap + 2)] = 1;
    for (std::size_t r = 1; r < dim_cap + 2; ++r)
      K.binom_[v * (dim_cap + 2) + r] = v == 0 ? 0 : K.binom_[(v - 1) * (dim_cap + 2) + r - 1] + K.binom_[(v - 1) * (dim_cap + 2) + r];
  }
  K.index_.resize(dim_cap + 1);
  for (std::size_t i = 0; i < out.size(); ++i)
    K.index_[out[i].dim()].emplace(K.key(out[i].vertices), static_cast<std::uint32_t>(i));
  return K;
}

// ------------------------------------------------------------ persistence

/** @brief Sparse chain: (simplex index, coefficient), sorted by index, no zeros. */
using Chain = std::vector<std::pair<std::uint32_t, Field::Elem>>;

namespace detail {

/** @brief a <- a - c * b. */
inline void chain_axpy(Chain& a, Field::Elem c, const Chain& b, const Field& f) {
  Chain out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.emplace_back(b[j].first, f.neg(f.mul(c, b[j].second)));
      ++j;
    } else {
      Field::Elem v = f.sub(a[i].second, f.mul(c, b[j].second));
      if (v != 0) out.emplace_back(a[i].first, v);
      ++i;
      ++j;
    }
  }
  a = std::move(out);
}

/** @brief Sorts, merges repeated indices and drops zeros. */
inline void normalize_chain(Chain& c, const Field& f) {
  std::sort(c.begin(), c.end());
  Chain out;
  for (const auto& [i, v] : c) {
    if (!out.empty() && out.back().first == i)
      out.back().second = f.add(out.back().second, v);
    else
      out.emplace_back(i, v);
    if (out.back().second == 0) out.pop_back();
  }
  c = std::move(out);
}

}  // namespace detail

/** @brief Persistence pair: positive simplex `birth`, killed by `death` (npos for essential classes). */
struct Bar {
  std::size_t birth = 0;
  std::size_t death = npos;
  bool essential() const { return death == npos; }
};

/**
 * @brief Column reduction of the boundary matrix with clearing, keeping what
 * is needed to map cycles into bar coordinates: reduced columns, and chain
 * representatives of essential classes.
 */
class Persistence {
 public:
  explicit Persistence(FilteredComplex K, Field f = Field(2)) : K_(std::move(K)), f_(f) { reduce(); }

  const FilteredComplex& complex() const { return K_; }
  const Field& field() const { return f_; }
  /// Homology degrees 0 .. dim_cap - 1 are exact.
  std::size_t degrees() const { return K_.dim_cap(); }

  /** @brief All pairs in degree k, zero-length ones included, by birth index. */
  const std::vector<Bar>& bars(std::size_t k) const { return bars_.at(k); }

  Real birth_grade(const Bar& b) const { return K_.simplex_grade(b.birth); }
  ExtendedReal death_grade(const Bar& b) const {
    return b.essential() ? ExtendedReal::pos_inf() : ExtendedReal(K_.simplex_grade(b.death));
  }

  /** @brief Bars [b-, d-) of positive length. */
  PersistenceDiagram diagram(std::size_t k) const {
    PersistenceDiagram pd;
    for (const Bar& b : bars(k)) {
      if (!b.essential() && K_[b.birth].level == K_[b.death].level) continue;
      pd.add(DecoratedValue::minus(birth_grade(b)),
             b.essential() ? DecoratedValue::pos_inf() : DecoratedValue::minus(K_.simplex_grade(b.death)));
    }
    return pd;
  }

  /** @brief Positions in bars(k) of the classes alive at t. */
  std::vector<std::size_t> alive(std::size_t k, const Real& t) const {
    std::vector<std::size_t> out;
    auto L = K_.level_at(t);
    if (!L) return out;
    const auto& bs = bars(k);
    for (std::size_t i = 0; i < bs.size(); ++i)
      if (K_[bs[i].birth].level <= *L && (bs[i].essential() || K_[bs[i].death].level > *L)) out.push_back(i);
    return out;
  }

  /** @brief A cycle whose lowest simplex is the bar's birth simplex. */
  const Chain& representative(std::size_t k, std::size_t bar) const {
    const Bar& b = bars(k).at(bar);
    return b.essential() ? essential_rep_.at(b.birth) : R_[b.death];
  }

  /**
   * @brief Coordinates of the class of cycle z in H_k at t, in the basis of
   * representatives of alive(k, t). Throws if z is not a cycle there.
   */
  std::vector<Field::Elem> coordinates(std::size_t k, Chain z, const Real& t) const {
    std::vector<std::size_t> live = alive(k, t);
    std::vector<Field::Elem> out(live.size(), 0);
    std::size_t cut = K_.prefix_at(t);
    std::unordered_map<std::size_t, std::size_t> slot;
    for (std::size_t s = 0; s < live.size(); ++s) slot[bars(k)[live[s]].birth] = s;
    while (!z.empty()) {
      auto [i, c] = z.back();
      if (i >= cut || K_[i].dim() != k) throw DomainError("chain is not a cycle of the complex at " + t.str());
      std::size_t p = pivot_[i];
      if (p != npos && p < cut) {
        detail::chain_axpy(z, f_.mul(c, f_.inv(R_[p].back().second)), R_[p], f_);
        continue;
      }
      auto it = slot.find(i);
      if (it == slot.end()) throw DomainError("chain is not a cycle of the complex at " + t.str());
      const Chain& rep = representative(k, live[it->second]);
      Field::Elem a = f_.mul(c, f_.inv(rep.back().second));
      out[it->second] = a;
      detail::chain_axpy(z, a, rep, f_);
    }
    return out;
  }

 private:
  Chain boundary(std::size_t j) const {
    const auto& v = K_[j].vertices;
    Chain c;
    if (v.size() < 2) return c;
    std::vector<std::uint32_t> face(v.size() - 1);
    for (std::size_t r = 0; r < v.size(); ++r) {
      for (std::size_t a = 0, b = 0; a < v.size(); ++a)
        if (a != r) face[b++] = v[a];
      auto idx = K_.find(face);
      if (!idx) throw std::logic_error("Rips complex is missing a face");
      c.emplace_back(static_cast<std::uint32_t>(*idx), r % 2 ? f_.neg(1) : 1);
    }
    std::sort(c.begin(), c.end());
    return c;
  }

  void reduce() {
    const std::size_t N = K_.size(), cap = K_.dim_cap();
    R_.assign(N, {});
    pivot_.assign(N, npos);
    std::vector<char> cleared(N, 0);
    std::vector<Chain> V(N);
    std::vector<std::vector<std::size_t>> by_dim(cap + 1);
    for (std::size_t j = 0; j < N; ++j) by_dim[K_[j].dim()].push_back(j);

    for (std::size_t d = cap; d >= 1; --d) {
      const bool track = d < cap;  // only cycles below the top dimension need representatives
      for (std::size_t j : by_dim[d]) {
        if (cleared[j]) continue;
        Chain col = boundary(j);
        Chain v;
        if (track) v = {{static_cast<std::uint32_t>(j), 1}};
        while (!col.empty()) {
          std::size_t p = pivot_[col.back().first];
          if (p == npos) break;
          Field::Elem c = f_.mul(col.back().second, f_.inv(R_[p].back().second));
          detail::chain_axpy(col, c, R_[p], f_);
          if (track) detail::chain_axpy(v, c, V[p], f_);
        }
        if (!col.empty()) {
          pivot_[col.back().first] = j;
          cleared[col.back().first] = 1;
          R_[j] = std::move(col);
          if (track) V[j] = std::move(v);
        } else if (track) {
          essential_rep_.emplace(j, std::move(v));
        }
      }
    }
    for (std::size_t j : by_dim[0])
      if (!cleared[j]) essential_rep_.emplace(j, Chain{{static_cast<std::uint32_t>(j), 1}});

    bars_.assign(cap, {});
    for (std::size_t j = 0; j < N; ++j) {
      std::size_t d = K_[j].dim();
      if (d >= cap || !R_[j].empty()) continue;
      bars_[d].push_back({j, pivot_[j]});
    }
  }

  FilteredComplex K_;
  Field f_;
  std::vector<Chain> R_;
  std::vector<std::size_t> pivot_;  // row -> column whose reduced lowest entry it is
  std::unordered_map<std::size_t, Chain> essential_rep_;
  std::vector<std::vector<Bar>> bars_;
};

/** @brief Degree-k diagrams 0 .. dim_cap-1 of the Rips filtration of X. */
inline std::vector<PersistenceDiagram> rips_diagrams(const FiniteMetricSpace& X, const std::optional<Real>& t_max,
                                                     std::size_t dim_cap, Field f = Field(2),
                                                     std::size_t budget = kDefaultSimplexBudget) {
  Persistence P(build_rips(X, t_max, dim_cap, budget), f);
  std::vector<PersistenceDiagram> out;
  for (std::size_t k = 0; k < P.degrees(); ++k) out.push_back(P.diagram(k));
  return out;
}

/**
 * @brief Matrix of the map H_k(K_src at s) -> H_k(K_dst at t) induced by a
 * vertex map, in the bases of alive bars. Simplices whose image repeats a
 * vertex are collapsed to zero.
 */
inline Matrix homology_map(const Persistence& src, std::size_t k, const Real& s, const Persistence& dst, const Real& t,
                           const std::vector<std::size_t>& vmap) {
  const Field& f = src.field();
  std::vector<std::size_t> cols = src.alive(k, s), rows = dst.alive(k, t);
  Matrix M(rows.size(), cols.size(), f);
  const FilteredComplex& K = src.complex();
  for (std::size_t c = 0; c < cols.size(); ++c) {
    Chain image;
    for (const auto& [i, coef] : src.representative(k, cols[c])) {
      std::vector<std::uint32_t> v;
      for (std::uint32_t x : K[i].vertices) v.push_back(static_cast<std::uint32_t>(vmap.at(x)));
      // sort by insertion, tracking the permutation sign
      bool odd = false;
      for (std::size_t a = 1; a < v.size(); ++a)
        for (std::size_t b = a; b > 0 && v[b - 1] > v[b]; --b) {
          std::swap(v[b - 1], v[b]);
          odd = !odd;
        }
      if (std::adjacent_find(v.begin(), v.end()) != v.end()) continue;
      auto j = dst.complex().find(v);
      if (!j || !(dst.complex().simplex_grade(*j) <= t))
        throw DomainError("vertex map does not land in the target complex at " + t.str());
      image.emplace_back(static_cast<std::uint32_t>(*j), odd ? f.neg(coef) : coef);
    }
    detail::normalize_chain(image, f);
    std::vector<Field::Elem> x = dst.coordinates(k, std::move(image), t);
    for (std::size_t r = 0; r < rows.size(); ++r) M(r, c) = x[r];
  }
  return M;
}

/**
 * @brief Homology maps H_k(R(Y', t)) -> H_k(R(Y, t + delta)) of a vertex map
 * gamma (positions in src_pts to positions in dst_pts, both indices into X),
 * after checking d(y, gamma(y)) <= delta.
 */
inline std::vector<Matrix> induced_chain_map(const FiniteMetricSpace& X, const std::vector<std::size_t>& src_pts,
                                             const std::vector<std::size_t>& dst_pts,
                                             const std::vector<std::size_t>& gamma, const Persistence& src,
                                             const Persistence& dst, const Real& t, const Real& delta) {
  if (gamma.size() != src_pts.size()) throw DomainError("vertex map has the wrong length");
  for (std::size_t y = 0; y < gamma.size(); ++y)
    if (!detail::d2_within(X.d2(src_pts[y], dst_pts.at(gamma[y])), delta))
      throw DomainError("vertex map moves point " + std::to_string(src_pts[y]) + " farther than " + delta.str());
  std::vector<Matrix> out;
  for (std::size_t k = 0; k < std::min(src.degrees(), dst.degrees()); ++k)
    out.push_back(homology_map(src, k, t, dst, t + delta, gamma));
  return out;
}

/** @brief Explicit degree-k homology module in the bar basis, on the grid of bar endpoints. */
inline FiniteModule homology_module(const Persistence& P, std::size_t k) {
  std::vector<std::uint32_t> lv;
  for (const Bar& b : P.bars(k)) {
    lv.push_back(P.complex()[b.birth].level);
    if (!b.essential()) lv.push_back(P.complex()[b.death].level);
  }
  std::sort(lv.begin(), lv.end());
  lv.erase(std::unique(lv.begin(), lv.end()), lv.end());
  Grid grid;
  for (auto l : lv) grid.push_back(DecoratedValue::minus(P.complex().grade(l)));
  if (grid.empty()) return FiniteModule(P.field());
  std::vector<std::vector<std::size_t>> live;
  std::vector<std::size_t> dims;
  for (auto l : lv) {
    live.push_back(P.alive(k, P.complex().grade(l)));
    dims.push_back(live.back().size());
  }
  std::vector<Matrix> maps;
  for (std::size_t i = 0; i + 1 < lv.size(); ++i) {
    Matrix m(dims[i + 1], dims[i], P.field());
    for (std::size_t r = 0; r < live[i + 1].size(); ++r)
      for (std::size_t c = 0; c < live[i].size(); ++c)
        if (live[i + 1][r] == live[i][c]) m(r, c) = 1;
    maps.push_back(std::move(m));
  }
  return FiniteModule(std::move(grid), std::move(dims), std::move(maps), P.field());
}

// ------------------------------------------------------------ stitching

/**
 * @brief Subsampling schedule: nets Y_1 ⊇ ... ⊇ Y_m (sorted indices into X),
 * radii delta_i and stitch points t_i.
 */
struct NetSequence {
  std::vector<std::vector<std::size_t>> nets;
  std::vector<Real> deltas;
  std::vector<Real> stitch_points;
};

/** @brief Nets as farthest-point prefixes of X, so they are nested and each is a delta_i-approximation of X. */
inline NetSequence make_net_sequence(const FiniteMetricSpace& X, const std::vector<Real>& deltas,
                                     const std::vector<Real>& stitch_points) {
  NetSequence seq{{}, deltas, stitch_points};
  for (const Real& d : deltas) seq.nets.push_back(greedy_net(X, d));
  return seq;
}

inline void validate_net_sequence(const FiniteMetricSpace& X, const NetSequence& seq) {
  const std::size_t m = seq.nets.size();
  if (seq.deltas.size() != m || seq.stitch_points.size() != m)
    throw DomainError("inadmissible sequence: need one radius and one stitch point per net");
  std::vector<std::size_t> prev(X.size());
  for (std::size_t i = 0; i < prev.size(); ++i) prev[i] = i;
  for (std::size_t i = 0; i < m; ++i) {
    const auto& Y = seq.nets[i];
    std::string at = " at stage " + std::to_string(i + 1);
    if (seq.deltas[i].sign() < 0) throw DomainError("inadmissible sequence: negative radius" + at);
    if (i > 0 && seq.deltas[i] < seq.deltas[i - 1]) throw DomainError("inadmissible sequence: radii must not decrease" + at);
    if (!std::is_sorted(Y.begin(), Y.end()) || std::adjacent_find(Y.begin(), Y.end()) != Y.end())
      throw DomainError("inadmissible sequence: net indices must be sorted and distinct" + at);
    if (!std::includes(prev.begin(), prev.end(), Y.begin(), Y.end()))
      throw DomainError("inadmissible sequence: nets must be nested" + at);
    if (!verify_delta_approx(X, Y, seq.deltas[i]))
      throw DomainError("inadmissible sequence: net is not a " + seq.deltas[i].str() + "-approximation of X" + at);
    if (i == 0 && seq.stitch_points[0].sign() < 0) throw DomainError("inadmissible sequence: negative stitch point");
    if (i > 0 && seq.stitch_points[i] < seq.stitch_points[i - 1] + seq.deltas[i - 1])
      throw DomainError("inadmissible sequence: need t_i >= t_{i-1} + delta_{i-1}" + at);
    prev = Y;
  }
}

/** @brief Stitched diagrams per degree with the translation pair relating them to X. */
struct PipelineResult {
  std::vector<PersistenceDiagram> diagrams;
  TranslationPair pair{MonotoneMap::identity(), MonotoneMap::identity()};
  std::vector<std::size_t> stage_points;
  std::vector<std::size_t> stage_simplices;
};

/**
 * @brief Pair (eta_m, rho_m) of the stitched module against M(X): the fold of
 * stitched pairs with (t, t + delta_i) at t_i, starting from the identity pair.
 */
inline TranslationPair pipeline_pair(const std::vector<Real>& deltas, const std::vector<Real>& stitch_points) {
  TranslationPair p{MonotoneMap::identity(), MonotoneMap::identity()};
  for (std::size_t i = 0; i < deltas.size(); ++i)
    p = stitched_pair(p, TranslationPair{MonotoneMap::identity(), MonotoneMap::shift(deltas[i])}, stitch_points[i]);
  return p;
}

/**
 * @brief Diagrams of U(M(X); Y, Delta, T): X up to t_1, frozen until
 * t_1 + delta_1, then Y_1 up to t_2, and so on; the last net runs to t_max.
 * Each seam is the homology map of the nearest-point map into the next net.
 */
inline PipelineResult iterated_pipeline(const FiniteMetricSpace& X, const NetSequence& seq,
                                        const std::optional<Real>& t_max, std::size_t dim_cap, Field f = Field(2),
                                        std::size_t budget = kDefaultSimplexBudget) {
  validate_net_sequence(X, seq);
  const std::size_t m = seq.nets.size();
  if (t_max && m > 0 && *t_max < seq.stitch_points[m - 1] + seq.deltas[m - 1])
    throw DomainError("t_max must not lie below the last stitch point plus its radius");

  // stage j lives on [a_j, e_j] of its own filtration; a_0 = 0, e_m = t_max
  std::vector<std::vector<std::size_t>> pts{std::vector<std::size_t>(X.size())};
  for (std::size_t i = 0; i < X.size(); ++i) pts[0][i] = i;
  for (const auto& Y : seq.nets) pts.push_back(Y);
  std::vector<Real> a{Real(0)};
  for (std::size_t i = 0; i < m; ++i) a.push_back(seq.stitch_points[i] + seq.deltas[i]);
  std::vector<Persistence> P;
  PipelineResult res;
  for (std::size_t j = 0; j <= m; ++j) {
    std::optional<Real> e = j < m ? std::optional<Real>(seq.stitch_points[j]) : t_max;
    if (e && *e < a[j]) e = a[j];
    P.emplace_back(build_rips(X.subset(pts[j]), e, dim_cap, budget), f);
    res.stage_points.push_back(pts[j].size());
    res.stage_simplices.push_back(P.back().complex().size());
  }
  // seam j: Z_{j-1} at t_j into Z_j at a_j
  std::vector<std::vector<Matrix>> seams{{}};
  for (std::size_t j = 1; j <= m; ++j)
    seams.push_back(induced_chain_map(X, pts[j - 1], pts[j], nearest_point_map(X, pts[j - 1], pts[j]), P[j - 1], P[j],
                                      seq.stitch_points[j - 1], seq.deltas[j - 1]));

  auto stop = [&](std::size_t j) -> std::optional<Real> {
    return j < m ? std::optional<Real>(seq.stitch_points[j]) : std::nullopt;
  };
  auto clamp = [&](std::size_t j, const Real& g) { return stop(j) && *stop(j) < g ? *stop(j) : g; };
  auto region = [&](const Real& g) {
    std::size_t j = 0;
    while (j < m && a[j + 1] <= g) ++j;
    return j;
  };

  for (std::size_t k = 0; k < dim_cap; ++k) {
    std::vector<Real> pts_g;
    for (std::size_t j = 0; j <= m; ++j) {
      pts_g.push_back(a[j]);
      if (stop(j)) pts_g.push_back(*stop(j));
      for (const Bar& b : P[j].bars(k)) {
        for (const Real& g : {P[j].birth_grade(b), b.essential() ? Real(-1) : P[j].complex().simplex_grade(b.death)}) {
          if (g.sign() < 0 || g < a[j] || (stop(j) && *stop(j) < g)) continue;
          pts_g.push_back(g);
        }
      }
    }
    std::sort(pts_g.begin(), pts_g.end());
    pts_g.erase(std::unique(pts_g.begin(), pts_g.end()), pts_g.end());

    std::vector<std::size_t> reg;
    std::vector<std::vector<std::size_t>> live;
    std::vector<std::size_t> dims;
    Grid grid;
    for (const Real& g : pts_g) {
      std::size_t j = region(g);
      reg.push_back(j);
      live.push_back(P[j].alive(k, clamp(j, g)));
      dims.push_back(live.back().size());
      grid.push_back(DecoratedValue::minus(g));
    }
    auto inclusion = [&](const std::vector<std::size_t>& from, const std::vector<std::size_t>& to) {
      Matrix M(to.size(), from.size(), f);
      for (std::size_t r = 0; r < to.size(); ++r)
        for (std::size_t c = 0; c < from.size(); ++c)
          if (to[r] == from[c]) M(r, c) = 1;
      return M;
    };
    std::vector<Matrix> maps;
    for (std::size_t i = 0; i + 1 < pts_g.size(); ++i) {
      std::size_t j = reg[i], jn = reg[i + 1];
      if (j == jn) {
        maps.push_back(inclusion(live[i], live[i + 1]));
        continue;
      }
      const Real& tj = seq.stitch_points[j];
      maps.push_back(seams[jn][k] * inclusion(live[i], P[j].alive(k, tj)));
    }
    FiniteModule U(std::move(grid), std::move(dims), std::move(maps), f);
    res.diagrams.push_back(decompose(U));
  }
  res.pair = pipeline_pair(seq.deltas, seq.stitch_points);
  return res;
}

/** @brief Single stitch: X up to t0, frozen until t0 + delta, then the net Y. */
inline PipelineResult stitched_rips_diagram(const FiniteMetricSpace& X, const std::vector<std::size_t>& Y,
                                            const Real& delta, const Real& t0, const std::optional<Real>& t_max,
                                            std::size_t dim_cap, Field f = Field(2),
                                            std::size_t budget = kDefaultSimplexBudget) {
  return iterated_pipeline(X, NetSequence{{Y}, {delta}, {t0}}, t_max, dim_cap, f, budget);
}

// ------------------------------------------------------------ discretization and bounds

/**
 * @brief Diagram of V^{uZ}, V^{uZ}_t = V_{u floor(t/u)}: each bar keeps the
 * multiples of u it contains, [k_lo u, (k_hi + 1) u); bars without one vanish.
 */
inline PersistenceDiagram discretize_diagram(const PersistenceDiagram& pd, const Rational& unit) {
  if (unit <= 0) throw DomainError("discretization unit must be positive");
  Real u(unit);
  PersistenceDiagram out;
  for (const auto& p : pd.points()) {
    std::optional<Integer> lo, hi;  // nullopt: unbounded
    if (p.b.is_pos_inf() || p.d.is_neg_inf()) continue;
    if (p.b.is_finite()) {
      Real x = p.b.value() / u;
      lo = p.b.decoration() == Decoration::Minus ? x.ceil() : x.floor() + 1;
    }
    if (p.d.is_finite()) {
      Real x = p.d.value() / u;
      hi = p.d.decoration() == Decoration::Minus ? x.ceil() - 1 : x.floor();
    }
    if (lo && hi && *lo > *hi) continue;
    DecoratedValue b = lo ? DecoratedValue::minus(Real(Rational(*lo)) * u) : DecoratedValue::neg_inf();
    DecoratedValue d = hi ? DecoratedValue::minus(Real(Rational(*hi + 1)) * u) : DecoratedValue::pos_inf();
    out.add(b, d);
  }
  return out;
}

namespace detail {
inline std::pair<Rational, Rational> finite_range(const UndecoratedDiagram& a, const UndecoratedDiagram& b) {
  Rational lo = 0, hi = 0;
  for (const auto* d : {&a, &b})
    for (const auto& p : d->points)
      for (const auto* e : {&p.b, &p.d})
        if (e->is_finite()) {
          auto [l, h] = e->value().enclosure(8);
          lo = std::min(lo, l);
          hi = std::max(hi, h);
        }
  return {lo, hi};
}
}  // namespace detail

/** @brief (t, u ceil(t/u)), windowed so that every finite endpoint lies well inside. */
inline TranslationPair discretization_pair(const UndecoratedDiagram& a, const UndecoratedDiagram& b,
                                           const Rational& unit = 1) {
  auto [lo, hi] = detail::finite_range(a, b);
  return {MonotoneMap::identity(), MonotoneMap::ceiling(lo - 2 * unit, hi + 2 * unit, unit)};
}

/** @brief Consistency of PD(V^Z) (V side) with PD(V) (W side) under (t, ceil t). */
inline Certificate discretize_bounds(const UndecoratedDiagram& pd_z, const UndecoratedDiagram& pd,
                                     const Rational& unit = 1) {
  return feasibility(pd_z, pd, discretization_pair(pd_z, pd, unit));
}

/** @brief Consistency of PD(Y) (V side) with PD(X) (W side) under (t, t + delta). */
inline Certificate subsample_bounds(const UndecoratedDiagram& pd_y, const UndecoratedDiagram& pd_x, const Real& delta) {
  return feasibility(pd_y, pd_x, TranslationPair{MonotoneMap::identity(), MonotoneMap::shift(delta)});
}

/**
 * @brief Closed-form partner region for a point of the single-stitch diagram
 * (seam [t0, t0 + delta)); nullopt when an endpoint lies strictly inside the seam.
 */
inline std::optional<BoundBox> stitch_box(const UndecoratedPoint& p, const Real& t0, const Real& delta) {
  ExtendedReal T0(t0), T1(t0 + delta);
  auto inside = [&](const ExtendedReal& x) { return T0 < x && x < T1; };
  if (inside(p.b) || inside(p.d)) return std::nullopt;
  BoundBox box{p, Direction::VtoW, p.b, p.b, p.d, p.d};
  auto lower_d = [&] {
    if (!p.d.is_finite()) return p.d;
    ExtendedReal x(p.d.value() - delta);
    return std::max(T0, x);
  };
  if (p.d <= T0) return box;
  if (p.b <= T0) {
    box.dlo = lower_d();
    return box;
  }
  if (p.b == T1) {
    box.blo = T0;
    box.bhi = T1;
    box.dlo = lower_d();
    return box;
  }
  box.blo = ExtendedReal(p.b.value() - delta);
  box.dlo = p.d.is_finite() ? ExtendedReal(p.d.value() - delta) : p.d;
  return box;
}

/**
 * @brief Four-case check of a single-stitch diagram against the full one,
 * with the unmatched rules t0 + delta <= b, d <= b + delta (stitched side)
 * and t0 < b', d' <= b' + delta (full side).
 */
inline Certificate stitch_certificate(const UndecoratedDiagram& pd_u, const UndecoratedDiagram& pd_x, const Real& t0,
                                      const Real& delta) {
  Certificate bad;
  std::vector<std::optional<BoundBox>> boxes;
  for (const auto& p : pd_u.points) {
    boxes.push_back(stitch_box(p, t0, delta));
    if (!boxes.back()) bad.violations.push_back(p.str() + ": endpoint strictly inside the seam");
  }
  if (!bad.violations.empty()) return bad;
  ExtendedReal T0(t0), T1(t0 + delta);
  std::vector<char> req_u, req_x;
  for (const auto& p : pd_u.points)
    req_u.push_back(!(T1 <= p.b && p.b.is_finite() && p.d <= ExtendedReal(p.b.value() + delta)));
  for (const auto& q : pd_x.points)
    req_x.push_back(!(T0 < q.b && q.b.is_finite() && q.d <= ExtendedReal(q.b.value() + delta)));
  auto edge = [&](std::size_t i, std::size_t j) { return boxes[i]->contains(pd_x.points[j].b, pd_x.points[j].d); };
  Certificate c = detail::feasibility_core(pd_u.size(), pd_x.size(), edge, req_u, req_x);
  for (std::size_t k = 0; k < c.violations.size(); ++k) {
    if (k < c.violator_v.size())
      c.violations[k] += " " + pd_u.points[c.violator_v[k]].str();
    else
      c.violations[k] += " " + pd_x.points[c.violator_w[k - c.violator_v.size()]].str();
  }
  return c;
}

}  // namespace interleave
