#pragma once

#include <optional>
#include <string>
#include <vector>

#include "interleave/bipartite.hpp"
#include "interleave/diagram.hpp"
#include "interleave/matching.hpp"
#include "interleave/monotone_map.hpp"

namespace interleave {

/// Which diagram the given point lives in; the box constrains its partner on the other side.
enum class Direction { VtoW, WtoV };
enum class Side { V, W };

inline std::string to_string(Direction d) { return d == Direction::VtoW ? "V->W" : "W->V"; }
inline std::string to_string(Side s) { return s == Side::V ? "V" : "W"; }

// ------------------------------------------------------------ undecorated

namespace detail {

// The partner of a V value x satisfies lower_vw(x) <= x' <= upper_vw(x); the
// W-side forms below are the same relation solved for the V value.
inline ExtendedReal lower_vw(const TranslationPair& p, const ExtendedReal& x) {
  return p.tau.limit_left(p.tau.dagger_right(p.sigma.dagger_right(x)));
}
inline ExtendedReal upper_vw(const TranslationPair& p, const ExtendedReal& x) { return p.tau.limit_right(x); }
inline ExtendedReal lower_wv(const TranslationPair& p, const ExtendedReal& x) { return p.tau.dagger_right(x); }
inline ExtendedReal upper_wv(const TranslationPair& p, const ExtendedReal& x) {
  return p.sigma.limit_right(p.tau.limit_right(p.tau.dagger_left(x)));
}

inline ExtendedReal round_down(const ExtendedReal& x, unsigned bits) {
  if (!x.is_finite() || x.value().is_rational()) return x;
  return ExtendedReal(Real(x.value().enclosure(bits).first));
}
inline ExtendedReal round_up(const ExtendedReal& x, unsigned bits) {
  if (!x.is_finite() || x.value().is_rational()) return x;
  return ExtendedReal(Real(x.value().enclosure(bits).second));
}

}  // namespace detail

/** @brief Admissible partner region [blo, bhi] x [dlo, dhi] of an undecorated point. */
struct BoundBox {
  UndecoratedPoint point;
  Direction direction = Direction::VtoW;
  ExtendedReal blo, bhi, dlo, dhi;

  bool nonempty() const { return blo <= bhi && dlo <= dhi; }
  bool contains(const ExtendedReal& b, const ExtendedReal& d) const {
    return blo <= b && b <= bhi && dlo <= d && d <= dhi;
  }
  bool contains(const BoundBox& o) const { return blo <= o.blo && o.bhi <= bhi && dlo <= o.dlo && o.dhi <= dhi; }

  /** @brief Rational box containing this one; exact when all ends are rational. */
  BoundBox outward(unsigned bits = 64) const {
    BoundBox r = *this;
    r.blo = detail::round_down(blo, bits);
    r.dlo = detail::round_down(dlo, bits);
    r.bhi = detail::round_up(bhi, bits);
    r.dhi = detail::round_up(dhi, bits);
    return r;
  }

  std::string str() const {
    return point.str() + " " + to_string(direction) + ": [" + blo.str() + ", " + bhi.str() + "] x [" + dlo.str() +
           ", " + dhi.str() + "]";
  }
};

inline BoundBox box_undecorated(const UndecoratedPoint& pt, const TranslationPair& pair, Direction dir) {
  BoundBox box{pt, dir, {}, {}, {}, {}};
  if (dir == Direction::VtoW) {
    box.blo = detail::lower_vw(pair, pt.b);
    box.bhi = detail::upper_vw(pair, pt.b);
    box.dlo = detail::lower_vw(pair, pt.d);
    box.dhi = detail::upper_vw(pair, pt.d);
  } else {
    box.blo = detail::lower_wv(pair, pt.b);
    box.bhi = detail::upper_wv(pair, pt.b);
    box.dlo = detail::lower_wv(pair, pt.d);
    box.dhi = detail::upper_wv(pair, pt.d);
  }
  return box;
}

/**
 * @brief The endpoint inequalities a matched pair p in PD(V), q in PD(W) must
 * satisfy, each stated in both solved forms. Returns the names of the ones
 * that fail; empty means the pair is admissible.
 */
inline std::vector<std::string> violated_inequalities(const UndecoratedPoint& p, const UndecoratedPoint& q,
                                                      const TranslationPair& pair) {
  std::vector<std::string> out;
  auto check = [&](bool ok, const std::string& name, const ExtendedReal& lhs, const ExtendedReal& rhs) {
    if (!ok) out.push_back(name + " (" + lhs.str() + " > " + rhs.str() + ")");
  };
  struct End {
    const char* v;
    const char* w;
    const ExtendedReal& x;
    const ExtendedReal& y;
  };
  for (const End& e : {End{"b", "b'", p.b, q.b}, End{"d", "d'", p.d, q.d}}) {
    std::string v = e.v, w = e.w;
    ExtendedReal a = detail::lower_wv(pair, e.y), b = detail::upper_wv(pair, e.y);
    check(a <= e.x, "tauR_dagger(" + w + ") <= " + v, a, e.x);
    check(e.x <= b, v + " <= sigmaR.tauR.tauL_dagger(" + w + ")", e.x, b);
    ExtendedReal c = detail::lower_vw(pair, e.x), d = detail::upper_vw(pair, e.x);
    check(c <= e.y, "tauL.tauR_dagger.sigmaR_dagger(" + v + ") <= " + w, c, e.y);
    check(e.y <= d, w + " <= tauR(" + v + ")", e.y, d);
  }
  return out;
}

inline bool admissible_pair(const UndecoratedPoint& p, const UndecoratedPoint& q, const TranslationPair& pair) {
  return box_undecorated(p, pair, Direction::VtoW).contains(q.b, q.d) &&
         box_undecorated(q, pair, Direction::WtoV).contains(p.b, p.d);
}

/** @brief A point of the given side may stay unmatched iff d <= bound(b). */
struct UnmatchedRule {
  Side side = Side::V;
  TranslationPair pair;

  ExtendedReal bound(const ExtendedReal& b) const {
    const MonotoneMap &t = pair.tau, &s = pair.sigma;
    if (side == Side::V) return s.limit_right(t.limit_right(b));
    return t.limit_right(s.limit_right(t.limit_right(t.dagger_left(b))));
  }
  bool allows(const UndecoratedPoint& p) const { return p.d <= bound(p.b); }
  std::string str() const {
    return side == Side::V ? "d <= sigmaR.tauR(b)" : "d' <= tauR.sigmaR.tauR.tauL_dagger(b')";
  }
};

inline UnmatchedRule unmatched_rule(const TranslationPair& pair, Side side) { return {side, pair}; }

// ------------------------------------------------------------ decorated

/** @brief Decorated partner region; the ranges are the solved form of the four inequalities. */
struct DecoratedBox {
  DiagramPoint point;
  Direction direction = Direction::VtoW;
  DecoratedValue blo, bhi, dlo, dhi;

  bool contains(const DecoratedValue& b, const DecoratedValue& d) const {
    return blo <= b && b <= bhi && dlo <= d && d <= dhi;
  }
  std::string str() const {
    return point.str() + " " + to_string(direction) + ": [" + blo.str() + ", " + bhi.str() + "] x [" + dlo.str() +
           ", " + dhi.str() + "]";
  }
};

/**
 * @brief The four decorated inequalities for p in PD(V) matched to q in
 * PD(W), evaluated literally. Returns the names of the failing ones.
 */
inline std::vector<std::string> violated_decorated(const DiagramPoint& p, const DiagramPoint& q,
                                                   const TranslationPair& pair) {
  const MonotoneMap &t = pair.tau, &s = pair.sigma;
  std::vector<std::string> out;
  if (!(t.star(q.b) <= p.b)) out.push_back("tau*(b') <= b");
  if (!(t.star(q.d) <= p.d)) out.push_back("tau*(d') <= d");
  if (!(s.star(p.b) <= t.up(t.star(q.b)))) out.push_back("sigma*(b) <= tau^.tau*(b')");
  if (!(s.star(p.d) <= t.up(t.star(q.d)))) out.push_back("sigma*(d) <= tau^.tau*(d')");
  return out;
}

inline DecoratedBox box_decorated(const DiagramPoint& pt, const TranslationPair& pair, Direction dir) {
  const MonotoneMap &t = pair.tau, &s = pair.sigma;
  DecoratedBox box{pt, dir, {}, {}, {}, {}};
  // tau*(x') <= x  iff  x' <= tau^(x);  tau^ tau*(x') >= c  iff  tau_ tau*(c) <= x'
  auto lo_vw = [&](const DecoratedValue& x) { return t.down(t.star(s.star(x))); };
  auto hi_vw = [&](const DecoratedValue& x) { return t.up(x); };
  // sigma*(x) <= y  iff  x <= sigma^(y)
  auto lo_wv = [&](const DecoratedValue& y) { return t.star(y); };
  auto hi_wv = [&](const DecoratedValue& y) { return s.up(t.up(t.star(y))); };
  if (dir == Direction::VtoW) {
    box.blo = lo_vw(pt.b);
    box.bhi = hi_vw(pt.b);
    box.dlo = lo_vw(pt.d);
    box.dhi = hi_vw(pt.d);
  } else {
    box.blo = lo_wv(pt.b);
    box.bhi = hi_wv(pt.b);
    box.dlo = lo_wv(pt.d);
    box.dhi = hi_wv(pt.d);
  }
  return box;
}

/**
 * @brief A decorated V point may stay unmatched iff it is (sigma o tau)-trivial;
 * a W point iff it misses im tau or its tau-preimage is (sigma o tau)-trivial.
 */
inline bool may_be_unmatched(const DiagramPoint& p, const TranslationPair& pair, Side side) {
  MonotoneMap st = compose(pair.sigma, pair.tau);
  if (side == Side::V) return sigma_trivial_interval(st, p.interval());
  auto pre = preimage_interval(pair.tau, p.interval());
  return !pre || sigma_trivial_interval(st, *pre);
}

// ------------------------------------------------------------ feasibility

/** @brief Outcome of the consistency check of two diagrams with a translation pair. */
struct Certificate {
  bool consistent = false;
  std::optional<Matching> witness;
  // Hall violator when inconsistent: positions in PD(V), and positions in
  // PD(W) whose "stay unmatched" option is part of the violating set.
  std::vector<std::size_t> violator_v;
  std::vector<std::size_t> violator_w;
  std::vector<std::string> violations;
};

namespace detail {

/**
 * Feasibility for abstract edge and requirement data. Left side: V points,
 * then one "skip" vertex per W point; right side: W points, then one "skip"
 * vertex per V point. Optional points may take their own skip, and W skips
 * pair freely with V skips. A perfect matching is then a real matching that
 * covers every required point.
 */
template <class Edge>
Certificate feasibility_core(std::size_t nv, std::size_t nw, Edge edge, const std::vector<char>& req_v,
                             const std::vector<char>& req_w) {
  BipartiteGraph g(nv + nw, nw + nv);
  for (std::size_t i = 0; i < nv; ++i) {
    for (std::size_t j = 0; j < nw; ++j)
      if (edge(i, j)) g.add_edge(i, j);
    if (!req_v[i]) g.add_edge(i, nw + i);
  }
  for (std::size_t j = 0; j < nw; ++j) {
    if (!req_w[j]) g.add_edge(nv + j, j);
    for (std::size_t i = 0; i < nv; ++i) g.add_edge(nv + j, nw + i);
  }
  g.normalize();
  std::vector<std::size_t> ml = hopcroft_karp(g);
  Certificate cert;
  if (auto S = hall_violator(g, ml)) {
    for (std::size_t u : *S) {
      if (u < nv) {
        cert.violator_v.push_back(u);
        cert.violations.push_back("V point " + std::to_string(u) + (req_v[u] ? " (required)" : ""));
      } else {
        cert.violator_w.push_back(u - nv);
        cert.violations.push_back("W point " + std::to_string(u - nv) + " (skip option)");
      }
    }
    return cert;
  }
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < nv; ++i)
    if (ml[i] < nw) pairs.emplace_back(i, ml[i]);
  cert.consistent = true;
  cert.witness = Matching(std::move(pairs));
  return cert;
}

}  // namespace detail

/**
 * @brief Is there a matching PD(V) -> PD(W) obeying every box and leaving
 * unmatched only points whose unmatched rule allows it? Consistency with a
 * (tau, sigma)-interleaving, not a proof that one exists.
 */
inline Certificate feasibility(const UndecoratedDiagram& v, const UndecoratedDiagram& w, const TranslationPair& pair) {
  std::vector<BoundBox> bv, bw;
  for (const auto& p : v.points) bv.push_back(box_undecorated(p, pair, Direction::VtoW));
  for (const auto& q : w.points) bw.push_back(box_undecorated(q, pair, Direction::WtoV));
  std::vector<char> req_v, req_w;
  UnmatchedRule rv = unmatched_rule(pair, Side::V), rw = unmatched_rule(pair, Side::W);
  for (const auto& p : v.points) req_v.push_back(!rv.allows(p));
  for (const auto& q : w.points) req_w.push_back(!rw.allows(q));
  auto edge = [&](std::size_t i, std::size_t j) {
    const auto &p = v.points[i], &q = w.points[j];
    return bv[i].contains(q.b, q.d) && bw[j].contains(p.b, p.d);
  };
  Certificate c = detail::feasibility_core(v.size(), w.size(), edge, req_v, req_w);
  for (std::size_t k = 0; k < c.violations.size(); ++k) {
    // name the offending points
    if (k < c.violator_v.size())
      c.violations[k] += " " + v.points[c.violator_v[k]].str();
    else
      c.violations[k] += " " + w.points[c.violator_w[k - c.violator_v.size()]].str();
  }
  return c;
}

/** @brief Decorated variant: boxes from the four decorated inequalities, triviality rules for unmatched points. */
inline Certificate feasibility(const PersistenceDiagram& v, const PersistenceDiagram& w, const TranslationPair& pair) {
  std::vector<char> req_v, req_w;
  for (const auto& p : v.points()) req_v.push_back(!may_be_unmatched(p, pair, Side::V));
  for (const auto& q : w.points()) req_w.push_back(!may_be_unmatched(q, pair, Side::W));
  auto edge = [&](std::size_t i, std::size_t j) { return violated_decorated(v[i], w[j], pair).empty(); };
  Certificate c = detail::feasibility_core(v.size(), w.size(), edge, req_v, req_w);
  for (std::size_t k = 0; k < c.violations.size(); ++k) {
    if (k < c.violator_v.size())
      c.violations[k] += " " + v[c.violator_v[k]].str();
    else
      c.violations[k] += " " + w[c.violator_w[k - c.violator_v.size()]].str();
  }
  return c;
}

/** @brief Per-pair and per-unmatched-point check of a given matching. */
struct VerifyReport {
  bool ok = true;
  std::vector<std::string> violations;
};

inline VerifyReport verify_matching(const Matching& x, const UndecoratedDiagram& v, const UndecoratedDiagram& w,
                                    const TranslationPair& pair) {
  VerifyReport rep;
  for (const auto& [i, j] : x.pairs()) {
    if (i >= v.size() || j >= w.size()) {
      rep.ok = false;
      rep.violations.push_back("pair (" + std::to_string(i) + ", " + std::to_string(j) + ") out of range");
      continue;
    }
    for (auto& msg : violated_inequalities(v.points[i], w.points[j], pair)) {
      rep.ok = false;
      rep.violations.push_back(v.points[i].str() + " -> " + w.points[j].str() + ": " + msg);
    }
  }
  UnmatchedRule rv = unmatched_rule(pair, Side::V), rw = unmatched_rule(pair, Side::W);
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!x.target_of(i) && !rv.allows(v.points[i])) {
      rep.ok = false;
      rep.violations.push_back(v.points[i].str() + " unmatched but violates " + rv.str());
    }
  for (std::size_t j = 0; j < w.size(); ++j)
    if (!x.source_of(j) && !rw.allows(w.points[j])) {
      rep.ok = false;
      rep.violations.push_back(w.points[j].str() + " unmatched but violates " + rw.str());
    }
  return rep;
}

}  // namespace interleave
