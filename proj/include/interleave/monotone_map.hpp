#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "interleave/decorated.hpp"

namespace interleave {

/** @brief t -> slope * t + offset. */
struct Affine {
  Real slope;
  Real offset;

  Real operator()(const Real& t) const { return slope * t + offset; }
  friend bool operator==(const Affine&, const Affine&) = default;
};

/**
 * @brief Monotone piecewise-affine map of the real line.
 *
 * Breakpoints x_0 < ... < x_{n-1} carry explicit values; piece k is the affine
 * form on the open gap (x_{k-1}, x_k), with the outermost pieces extending to
 * -inf and +inf. The window is the range on which eval() accepts queries; the
 * Galois operators act on the whole line.
 */
class MonotoneMap {
 public:
  /** @brief Identity on the whole line. */
  MonotoneMap() : pieces_{Affine{Real(1), Real(0)}} {}

  MonotoneMap(ExtendedReal lo, ExtendedReal hi, std::vector<Real> breaks, std::vector<Real> values,
              std::vector<Affine> pieces)
      : lo_(std::move(lo)), hi_(std::move(hi)), breaks_(std::move(breaks)), values_(std::move(values)),
        pieces_(std::move(pieces)) {
    validate();
    normalize();
  }

  static MonotoneMap affine(const Real& slope, const Real& offset, ExtendedReal lo = ExtendedReal::neg_inf(),
                            ExtendedReal hi = ExtendedReal::pos_inf()) {
    return MonotoneMap(std::move(lo), std::move(hi), {}, {}, {Affine{slope, offset}});
  }
  static MonotoneMap identity(ExtendedReal lo = ExtendedReal::neg_inf(), ExtendedReal hi = ExtendedReal::pos_inf()) {
    return affine(Real(1), Real(0), std::move(lo), std::move(hi));
  }
  static MonotoneMap shift(const Real& c, ExtendedReal lo = ExtendedReal::neg_inf(),
                           ExtendedReal hi = ExtendedReal::pos_inf()) {
    return affine(Real(1), c, std::move(lo), std::move(hi));
  }
  static MonotoneMap constant(const Real& c, ExtendedReal lo = ExtendedReal::neg_inf(),
                              ExtendedReal hi = ExtendedReal::pos_inf()) {
    return affine(Real(0), c, std::move(lo), std::move(hi));
  }

  /**
   * @brief t -> u * ceil(t / u) on [lo, hi].
   *
   * Below the first multiple the map continues as the identity, above the last
   * one as t + u.
   */
  static MonotoneMap ceiling(const Rational& lo, const Rational& hi, const Rational& unit = 1) {
    return step(lo, hi, unit, true);
  }

  /** @brief t -> u * floor(t / u) on [lo, hi]; continues as t - u below and t above. */
  static MonotoneMap floor_map(const Rational& lo, const Rational& hi, const Rational& unit = 1) {
    return step(lo, hi, unit, false);
  }

  /**
   * @brief Map equal to maps[k] on the region <cuts[k-1], cuts[k]>.
   *
   * Cuts are decorated so a region boundary can be open or closed; a cut below
   * its predecessor yields an empty region.
   */
  static MonotoneMap splice(std::vector<DecoratedValue> cuts, const std::vector<MonotoneMap>& maps,
                            ExtendedReal lo = ExtendedReal::neg_inf(), ExtendedReal hi = ExtendedReal::pos_inf()) {
    if (maps.size() != cuts.size() + 1) throw std::invalid_argument("splice: need one more map than cuts");
    for (std::size_t k = 1; k < cuts.size(); ++k) cuts[k] = std::max(cuts[k], cuts[k - 1]);
    auto region_of = [&](const Real& t) {
      for (std::size_t k = 0; k < cuts.size(); ++k)
        if (in_downset(cuts[k], t)) return k;
      return cuts.size();
    };
    std::vector<Real> cand;
    for (const auto& c : cuts)
      if (c.is_finite()) cand.push_back(c.value());
    for (std::size_t k = 0; k < maps.size(); ++k)
      for (const auto& x : maps[k].breaks_)
        if (region_of(x) == k) cand.push_back(x);
    std::sort(cand.begin(), cand.end());
    cand.erase(std::unique(cand.begin(), cand.end()), cand.end());

    std::vector<Real> values;
    std::vector<Affine> pieces;
    for (const auto& x : cand) values.push_back(maps[region_of(x)].at(x));
    for (std::size_t g = 0; g <= cand.size(); ++g) {
      Real r = gap_representative(cand, g);
      pieces.push_back(maps[region_of(r)].piece_around(r));
    }
    return MonotoneMap(std::move(lo), std::move(hi), std::move(cand), std::move(values), std::move(pieces));
  }

  const ExtendedReal& window_lo() const { return lo_; }
  const ExtendedReal& window_hi() const { return hi_; }
  const std::vector<Real>& breakpoints() const { return breaks_; }
  const std::vector<Real>& values() const { return values_; }
  const std::vector<Affine>& pieces() const { return pieces_; }

  bool in_window(const ExtendedReal& t) const { return lo_ <= t && t <= hi_; }

  MonotoneMap with_window(ExtendedReal lo, ExtendedReal hi) const {
    MonotoneMap m = *this;
    m.lo_ = std::move(lo);
    m.hi_ = std::move(hi);
    if (m.hi_ < m.lo_) throw DomainError("empty window");
    return m;
  }

  /** @brief f(t); t must lie in the window. */
  Real eval(const Real& t) const {
    if (!in_window(t)) throw DomainError("eval at " + t.str() + " outside window [" + lo_.str() + ", " + hi_.str() + "]");
    return at(t);
  }

  /** @brief f(t) on the whole line. */
  Real at(const Real& t) const {
    auto [k, on_break] = locate(t);
    return on_break ? values_[k] : pieces_[k](t);
  }

  /** @brief Affine piece valid on an open neighbourhood of t (t not a breakpoint). */
  const Affine& piece_around(const Real& t) const {
    auto [k, on_break] = locate(t);
    if (on_break) throw DomainError("piece_around at breakpoint " + t.str());
    return pieces_[k];
  }

  /**
   * @brief tau_L: left limit. tau_L(-inf) = -inf (supremum over the empty set)
   * so that (tau_L, tau-dagger_L) stays a Galois connection.
   */
  ExtendedReal limit_left(const ExtendedReal& x) const {
    if (x.is_neg_inf()) return x;
    if (x.is_pos_inf()) return limit_pos_inf();
    const Real& t = x.value();
    return left_piece(t)(t);
  }

  /** @brief tau_R: right limit; tau_R(+inf) = +inf dually. */
  ExtendedReal limit_right(const ExtendedReal& x) const {
    if (x.is_neg_inf()) return limit_neg_inf();
    if (x.is_pos_inf()) return x;
    const Real& t = x.value();
    return right_piece(t)(t);
  }

  /** @brief tau-dagger_L(x) = inf{y : f(y) > x}. */
  ExtendedReal dagger_left(const ExtendedReal& x) const {
    if (!x.is_finite()) return x;
    return first_reaching(x.value(), true);
  }

  /** @brief tau-dagger_R(x) = inf{y : f(y) >= x}. */
  ExtendedReal dagger_right(const ExtendedReal& x) const {
    if (!x.is_finite()) return x;
    return first_reaching(x.value(), false);
  }

  /** @brief Upper end of the down-set generated by f(<-inf, e>). */
  DecoratedValue down(const DecoratedValue& e) const {
    if (e.is_neg_inf()) return e;
    if (e.is_pos_inf()) {
      const Affine& p = pieces_.back();
      return p.slope.sign() > 0 ? e : DecoratedValue::plus(p.offset);
    }
    const Real& t = e.value();
    if (e.decoration() == Decoration::Plus) return DecoratedValue::plus(at(t));
    const Affine& p = left_piece(t);
    return p.slope.sign() == 0 ? DecoratedValue::plus(p(t)) : DecoratedValue::minus(p(t));
  }

  /** @brief Lower end of the up-set generated by f(<e, inf>). */
  DecoratedValue up(const DecoratedValue& e) const {
    if (e.is_pos_inf()) return e;
    if (e.is_neg_inf()) {
      const Affine& p = pieces_.front();
      return p.slope.sign() > 0 ? e : DecoratedValue::minus(p.offset);
    }
    const Real& t = e.value();
    if (e.decoration() == Decoration::Minus) return DecoratedValue::minus(at(t));
    const Affine& p = right_piece(t);
    return p.slope.sign() == 0 ? DecoratedValue::minus(p(t)) : DecoratedValue::plus(p(t));
  }

  /** @brief Upper end of the preimage f^{-1}(<-inf, e>). */
  DecoratedValue star(const DecoratedValue& e) const {
    if (!e.is_finite()) return e;
    const Real& t = e.value();
    bool strict = e.decoration() == Decoration::Plus;
    ExtendedReal y = first_reaching(t, strict);
    if (y.is_neg_inf()) return DecoratedValue::neg_inf();
    if (y.is_pos_inf()) return DecoratedValue::pos_inf();
    Real fy = at(y.value());
    bool reached = strict ? fy > t : fy >= t;
    return reached ? DecoratedValue::minus(y.value()) : DecoratedValue::plus(y.value());
  }

  /** @brief Strictly increasing, continuous and unbounded both ways. */
  bool is_bijective() const {
    for (const auto& p : pieces_)
      if (p.slope.sign() <= 0) return false;
    for (std::size_t i = 0; i < breaks_.size(); ++i) {
      const Real& x = breaks_[i];
      if (pieces_[i](x) != values_[i] || pieces_[i + 1](x) != values_[i]) return false;
    }
    return true;
  }

  /** @brief t <= f(t) on the whole window; exhaustive for piecewise-affine maps. */
  bool is_translation() const {
    for (std::size_t k = 0; k < pieces_.size(); ++k) {
      ExtendedReal a = k == 0 ? ExtendedReal::neg_inf() : ExtendedReal(breaks_[k - 1]);
      ExtendedReal b = k == breaks_.size() ? ExtendedReal::pos_inf() : ExtendedReal(breaks_[k]);
      ExtendedReal L = std::max(a, lo_), R = std::min(b, hi_);
      if (!(L < R)) continue;
      const Affine& p = pieces_[k];
      if (L.is_finite()) {
        if (p(L.value()) < L.value()) return false;
      } else if (!(p.slope < Real(1) || (p.slope == Real(1) && p.offset.sign() >= 0))) {
        return false;
      }
      if (R.is_finite()) {
        if (p(R.value()) < R.value()) return false;
      } else if (!(p.slope > Real(1) || (p.slope == Real(1) && p.offset.sign() >= 0))) {
        return false;
      }
    }
    for (std::size_t i = 0; i < breaks_.size(); ++i)
      if (in_window(breaks_[i]) && values_[i] < breaks_[i]) return false;
    for (const auto* w : {&lo_, &hi_})
      if (w->is_finite() && at(w->value()) < w->value()) return false;
    return true;
  }

  friend bool operator==(const MonotoneMap&, const MonotoneMap&) = default;

  std::string str() const {
    std::string s = "[" + lo_.str() + ", " + hi_.str() + "]";
    for (std::size_t k = 0; k < pieces_.size(); ++k) {
      s += " {" + pieces_[k].slope.str() + "*t+" + pieces_[k].offset.str() + "}";
      if (k < breaks_.size()) s += " @" + breaks_[k].str() + "=" + values_[k].str();
    }
    return s;
  }

  /** @brief Representative point of gap g between sorted cut points. */
  static Real gap_representative(const std::vector<Real>& cuts, std::size_t g) {
    if (cuts.empty()) return Real(0);
    if (g == 0) return cuts.front() - Real(1);
    if (g == cuts.size()) return cuts.back() + Real(1);
    return (cuts[g - 1] + cuts[g]) / Real(2);
  }

 private:
  static MonotoneMap step(const Rational& lo, const Rational& hi, const Rational& unit, bool up) {
    if (unit <= 0) throw DomainError("step unit must be positive");
    if (hi < lo) throw DomainError("empty window");
    Integer k0 = detail::floor_of(lo / unit);
    Integer k1 = detail::ceil_of(hi / unit);
    std::vector<Real> breaks, values;
    std::vector<Affine> pieces;
    Real u(unit);
    pieces.push_back(up ? Affine{Real(1), Real(0)} : Affine{Real(1), -u});
    for (Integer k = k0; k <= k1; ++k) {
      Real x = Real(Rational(k)) * u;
      breaks.push_back(x);
      values.push_back(x);
      if (k < k1) pieces.push_back(Affine{Real(0), up ? x + u : x});
    }
    pieces.push_back(up ? Affine{Real(1), u} : Affine{Real(1), Real(0)});
    return MonotoneMap(lo, hi, std::move(breaks), std::move(values), std::move(pieces));
  }

  void validate() const {
    if (pieces_.size() != breaks_.size() + 1 || values_.size() != breaks_.size())
      throw std::invalid_argument("monotone map: need one value per breakpoint and one more piece than breakpoints");
    if (hi_ < lo_) throw DomainError("empty window");
    for (std::size_t i = 1; i < breaks_.size(); ++i)
      if (!(breaks_[i - 1] < breaks_[i])) throw std::invalid_argument("breakpoints must increase strictly");
    for (const auto& p : pieces_)
      if (p.slope.sign() < 0) throw DomainError("negative slope " + p.slope.str());
    for (std::size_t i = 0; i < breaks_.size(); ++i) {
      const Real& x = breaks_[i];
      if (pieces_[i](x) > values_[i] || values_[i] > pieces_[i + 1](x))
        throw DomainError("map not monotone at breakpoint " + x.str());
    }
  }

  void normalize() {
    for (std::size_t i = 0; i < breaks_.size();) {
      if (pieces_[i] == pieces_[i + 1] && pieces_[i](breaks_[i]) == values_[i]) {
        breaks_.erase(breaks_.begin() + static_cast<std::ptrdiff_t>(i));
        values_.erase(values_.begin() + static_cast<std::ptrdiff_t>(i));
        pieces_.erase(pieces_.begin() + static_cast<std::ptrdiff_t>(i) + 1);
      } else {
        ++i;
      }
    }
  }

  // {index, on_break}: breakpoint index, or gap index when not on a breakpoint.
  std::pair<std::size_t, bool> locate(const Real& t) const {
    auto it = std::lower_bound(breaks_.begin(), breaks_.end(), t);
    auto k = static_cast<std::size_t>(it - breaks_.begin());
    return {k, it != breaks_.end() && *it == t};
  }

  const Affine& left_piece(const Real& t) const { return pieces_[locate(t).first]; }
  const Affine& right_piece(const Real& t) const {
    auto [k, on_break] = locate(t);
    return pieces_[on_break ? k + 1 : k];
  }

  ExtendedReal limit_neg_inf() const {
    const Affine& p = pieces_.front();
    return p.slope.sign() > 0 ? ExtendedReal::neg_inf() : ExtendedReal(p.offset);
  }
  ExtendedReal limit_pos_inf() const {
    const Affine& p = pieces_.back();
    return p.slope.sign() > 0 ? ExtendedReal::pos_inf() : ExtendedReal(p.offset);
  }

  // inf{y : f(y) >= x} (strict: f(y) > x), scanning gaps and breakpoints left to right.
  ExtendedReal first_reaching(const Real& x, bool strict) const {
    auto ok = [&](const Real& v) { return strict ? v > x : v >= x; };
    for (std::size_t k = 0; k < pieces_.size(); ++k) {
      ExtendedReal a = k == 0 ? ExtendedReal::neg_inf() : ExtendedReal(breaks_[k - 1]);
      const Affine& p = pieces_[k];
      if (p.slope.sign() == 0) {
        if (ok(p.offset)) return a;
      } else {
        Real y0 = (x - p.offset) / p.slope;
        if (k == breaks_.size() || y0 < breaks_[k]) return std::max(a, ExtendedReal(y0));
      }
      if (k < breaks_.size() && ok(values_[k])) return breaks_[k];
    }
    return ExtendedReal::pos_inf();
  }

  ExtendedReal lo_ = ExtendedReal::neg_inf();
  ExtendedReal hi_ = ExtendedReal::pos_inf();
  std::vector<Real> breaks_;
  std::vector<Real> values_;
  std::vector<Affine> pieces_;
};

/** @brief f o g with window {y in window(g) : g(y) in window(f)}. */
inline MonotoneMap compose(const MonotoneMap& f, const MonotoneMap& g) {
  std::vector<Real> cand = g.breakpoints();
  for (const auto& c : f.breakpoints()) {
    for (const auto& y : {g.dagger_right(c), g.dagger_left(c)})
      if (y.is_finite()) cand.push_back(y.value());
  }
  std::sort(cand.begin(), cand.end());
  cand.erase(std::unique(cand.begin(), cand.end()), cand.end());

  std::vector<Real> values;
  std::vector<Affine> pieces;
  for (const auto& y : cand) values.push_back(f.at(g.at(y)));
  const auto& fb = f.breakpoints();
  for (std::size_t k = 0; k <= cand.size(); ++k) {
    Real r = MonotoneMap::gap_representative(cand, k);
    const Affine& pg = g.piece_around(r);
    Real gr = pg(r);
    if (std::binary_search(fb.begin(), fb.end(), gr)) {
      pieces.push_back(Affine{Real(0), f.at(gr)});
    } else {
      const Affine& pf = f.piece_around(gr);
      pieces.push_back(Affine{pf.slope * pg.slope, pf.slope * pg.offset + pf.offset});
    }
  }
  ExtendedReal lo = g.window_lo(), hi = g.window_hi();
  if (f.window_lo().is_finite()) lo = std::max(lo, g.dagger_right(f.window_lo()));
  if (f.window_hi().is_finite()) hi = std::min(hi, g.dagger_left(f.window_hi()));
  if (hi < lo) throw DomainError("composition has an empty window");
  return MonotoneMap(std::move(lo), std::move(hi), std::move(cand), std::move(values), std::move(pieces));
}

/** @brief Exact image f(J) as a sorted list of disjoint maximal intervals. */
inline std::vector<DecoratedInterval> image_set(const MonotoneMap& f, const DecoratedInterval& J) {
  const auto& br = f.breakpoints();
  std::vector<DecoratedInterval> parts;
  auto push_point = [&](const Real& v) {
    parts.emplace_back(DecoratedValue::minus(v), DecoratedValue::plus(v));
  };
  for (std::size_t k = 0; k < f.pieces().size(); ++k) {
    DecoratedValue a = k == 0 ? DecoratedValue::neg_inf() : DecoratedValue::plus(br[k - 1]);
    DecoratedValue b = k == br.size() ? DecoratedValue::pos_inf() : DecoratedValue::minus(br[k]);
    if (auto sub = intersect(J, DecoratedInterval(a, b))) {
      const Affine& p = f.pieces()[k];
      if (p.slope.sign() == 0) {
        push_point(p.offset);
      } else {
        auto map_end = [&](const DecoratedValue& e) {
          return e.is_finite() ? DecoratedValue(p(e.value()), e.decoration()) : e;
        };
        parts.emplace_back(map_end(sub->b()), map_end(sub->d()));
      }
    }
    if (k < br.size() && J.contains(br[k])) push_point(f.values()[k]);
  }
  std::sort(parts.begin(), parts.end(), [](const auto& x, const auto& y) { return x.b() < y.b(); });
  std::vector<DecoratedInterval> merged;
  for (const auto& p : parts) {
    if (!merged.empty() && p.b() <= merged.back().d()) {
      merged.back() = DecoratedInterval(merged.back().b(), std::max(merged.back().d(), p.d()));
    } else {
      merged.push_back(p);
    }
  }
  return merged;
}

/** @brief f(J) when it is an interval, nullopt when the image has gaps. */
inline std::optional<DecoratedInterval> image_interval(const MonotoneMap& f, const DecoratedInterval& J) {
  auto parts = image_set(f, J);
  if (parts.size() != 1) return std::nullopt;
  return parts.front();
}

/** @brief Convex hull of f(J). */
inline DecoratedInterval convex_image(const MonotoneMap& f, const DecoratedInterval& J) {
  return DecoratedInterval(f.up(J.b()), f.down(J.d()));
}

/** @brief f^{-1}(J), nullopt when empty. */
inline std::optional<DecoratedInterval> preimage_interval(const MonotoneMap& f, const DecoratedInterval& J) {
  return DecoratedInterval::make(f.star(J.b()), f.star(J.d()));
}

/** @brief J and sigma(J) are disjoint. */
inline bool sigma_trivial_interval(const MonotoneMap& sigma, const DecoratedInterval& J) {
  for (const auto& part : image_set(sigma, J))
    if (intersect(J, part)) return false;
  return true;
}

/** @brief Monotone maps tau, sigma with t <= tau(sigma(t)) and t <= sigma(tau(t)) on the window. */
struct TranslationPair {
  MonotoneMap tau;
  MonotoneMap sigma;

  bool is_valid() const { return compose(tau, sigma).is_translation() && compose(sigma, tau).is_translation(); }

  void validate() const {
    if (!is_valid()) throw DomainError("not a translation pair");
  }
};

/**
 * @brief (tau, sigma) on (U,V) followed by (tau', sigma') on (V,W) gives
 * (tau' o tau, sigma o sigma') on (U,W).
 */
inline TranslationPair compose_pairs(const TranslationPair& p1, const TranslationPair& p2) {
  return {compose(p2.tau, p1.tau), compose(p1.sigma, p2.sigma)};
}

}  // namespace interleave
