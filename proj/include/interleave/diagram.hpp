#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "interleave/decorated.hpp"

namespace interleave {

/** @brief Decorated diagram point [b, d, i]. */
struct DiagramPoint {
  DecoratedValue b;
  DecoratedValue d;
  std::size_t index = 1;

  DecoratedInterval interval() const { return {b, d}; }
  std::string str() const { return "[" + b.str() + ", " + d.str() + ", " + std::to_string(index) + "]"; }
  friend bool operator==(const DiagramPoint&, const DiagramPoint&) = default;
};

/** @brief Multiset of decorated intervals; indices count 1..m within each (b, d) class. */
class PersistenceDiagram {
 public:
  PersistenceDiagram() = default;

  /** @brief Adds <b, d> with the next free index of its class. */
  const DiagramPoint& add(const DecoratedValue& b, const DecoratedValue& d) {
    if (!(b < d)) throw DomainError("diagram point needs b < d, got " + b.str() + ", " + d.str());
    std::size_t idx = 1;
    for (const auto& p : points_)
      if (p.b == b && p.d == d) ++idx;
    points_.push_back({b, d, idx});
    return points_.back();
  }

  const std::vector<DiagramPoint>& points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  const DiagramPoint& operator[](std::size_t i) const { return points_[i]; }

  /** @brief (b, d) pairs sorted, for multiset comparisons that ignore indices. */
  std::vector<std::pair<DecoratedValue, DecoratedValue>> intervals() const {
    std::vector<std::pair<DecoratedValue, DecoratedValue>> out;
    for (const auto& p : points_) out.emplace_back(p.b, p.d);
    std::sort(out.begin(), out.end());
    return out;
  }

  friend bool same_multiset(const PersistenceDiagram& a, const PersistenceDiagram& b) {
    return a.intervals() == b.intervals();
  }

 private:
  std::vector<DiagramPoint> points_;
};

/** @brief Right-handed order: lexicographic on (d, b, i). */
inline bool right_less(const DiagramPoint& x, const DiagramPoint& y) {
  return std::tie(x.d, x.b, x.index) < std::tie(y.d, y.b, y.index);
}

/** @brief Left-handed order: lexicographic on (b, -d, i). */
inline bool left_less(const DiagramPoint& x, const DiagramPoint& y) {
  if (x.b != y.b) return x.b < y.b;
  if (x.d != y.d) return x.d > y.d;
  return x.index < y.index;
}

/** @brief Undecorated point [b, d, i] of the extended line. */
struct UndecoratedPoint {
  ExtendedReal b;
  ExtendedReal d;
  std::size_t index = 1;
  std::string str() const { return "[" + b.str() + ", " + d.str() + ", " + std::to_string(index) + "]"; }
  friend bool operator==(const UndecoratedPoint&, const UndecoratedPoint&) = default;
};

/**
 * @brief Undecorated diagram with the bijection back to its decorated source.
 *
 * Points whose decorated forms differ only in decoration collide after
 * projection; they are re-indexed within the (b, d) class in source order.
 */
struct UndecoratedDiagram {
  std::vector<UndecoratedPoint> points;
  std::vector<std::size_t> source;  // points[k] came from decorated point source[k]

  std::size_t size() const { return points.size(); }
};

inline UndecoratedDiagram undecorate(const PersistenceDiagram& pd) {
  UndecoratedDiagram out;
  std::map<std::pair<ExtendedReal, ExtendedReal>, std::size_t> count;
  for (std::size_t k = 0; k < pd.size(); ++k) {
    ExtendedReal b = project(pd[k].b), d = project(pd[k].d);
    std::size_t idx = ++count[{b, d}];
    out.points.push_back({b, d, idx});
    out.source.push_back(k);
  }
  return out;
}

/** @brief Undecorated diagram built directly from (b, d) pairs. */
inline UndecoratedDiagram make_undecorated(const std::vector<std::pair<ExtendedReal, ExtendedReal>>& pairs) {
  UndecoratedDiagram out;
  std::map<std::pair<ExtendedReal, ExtendedReal>, std::size_t> count;
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const auto& [b, d] = pairs[k];
    if (!(b < d)) throw DomainError("undecorated point needs b < d, got " + b.str() + ", " + d.str());
    out.points.push_back({b, d, ++count[{b, d}]});
    out.source.push_back(k);
  }
  return out;
}

}  // namespace interleave
