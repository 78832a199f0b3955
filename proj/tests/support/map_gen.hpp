#pragma once

// Random monotone maps and sampling oracles shared by unit and acceptance tests.

#include <algorithm>
#include <random>
#include <vector>

#include "interleave/monotone_map.hpp"

namespace testgen {

using interleave::Affine;
using interleave::DecoratedValue;
using interleave::ExtendedReal;
using interleave::MonotoneMap;
using interleave::Rational;
using interleave::Real;

inline Rational pick(std::mt19937& rng, const std::vector<Rational>& xs) {
  return xs[std::uniform_int_distribution<std::size_t>(0, xs.size() - 1)(rng)];
}

/**
 * Random monotone map with integer breakpoints in [-5, 5], slopes in
 * {0, 1/2, 1, 2} and jumps in {0, 1/2, 1}; kind 0 affine, 1 step, 2 mixed.
 * Every value at a point of the 1/4 grid lies on the 1/8 grid.
 */
inline MonotoneMap random_map(std::mt19937& rng, int kind) {
  const std::vector<Rational> slopes{0, Rational(1, 2), 1, 2};
  const std::vector<Rational> jumps{0, Rational(1, 2), 1};
  if (kind == 0) {
    Rational s = pick(rng, slopes), c = std::uniform_int_distribution<int>(-6, 6)(rng);
    return MonotoneMap::affine(Real(s), Real(c / 2));
  }
  std::vector<Real> breaks, values;
  std::vector<Affine> pieces;
  int nb = std::uniform_int_distribution<int>(1, 5)(rng);
  std::vector<int> xs;
  for (int x = -5; x <= 5; ++x) xs.push_back(x);
  std::shuffle(xs.begin(), xs.end(), rng);
  xs.resize(static_cast<std::size_t>(nb));
  std::sort(xs.begin(), xs.end());
  Rational level(std::uniform_int_distribution<int>(-8, 8)(rng), 2);
  level.canonicalize();
  auto slope = [&] { return kind == 1 ? Rational(0) : pick(rng, slopes); };
  Rational s = slope();
  pieces.push_back(Affine{Real(s), Real(level - s * xs[0])});
  for (std::size_t i = 0; i < xs.size(); ++i) {
    Rational x = xs[i];
    Rational v = level + pick(rng, jumps);
    Rational r = v + pick(rng, jumps);
    if (kind == 1 && r == level) r += Rational(1, 2);
    breaks.emplace_back(x);
    values.emplace_back(v);
    s = slope();
    pieces.push_back(Affine{Real(s), Real(r - s * x)});
    if (i + 1 < xs.size()) level = r + s * (Rational(xs[i + 1]) - x);
  }
  if (kind == 1 && std::uniform_int_distribution<int>(0, 1)(rng)) {
    // ceiling-like tails keep step maps unbounded on both sides
    pieces.front() = Affine{Real(1), values.front() - Real(pick(rng, jumps)) - breaks.front()};
    pieces.back() = Affine{Real(1), pieces.back()(breaks.back()) - breaks.back()};
  }
  ExtendedReal lo = ExtendedReal::neg_inf(), hi = ExtendedReal::pos_inf();
  if (std::uniform_int_distribution<int>(0, 1)(rng)) {
    lo = ExtendedReal(std::uniform_int_distribution<int>(-7, -1)(rng));
    hi = ExtendedReal(std::uniform_int_distribution<int>(1, 7)(rng));
  }
  return MonotoneMap(lo, hi, std::move(breaks), std::move(values), std::move(pieces));
}

/** Random translation map (t <= f(t) everywhere) of the given kind. */
inline MonotoneMap random_translation(std::mt19937& rng, int kind) {
  for (int attempt = 0; attempt < 400 && kind != 0; ++attempt) {
    MonotoneMap f = random_map(rng, kind).with_window(ExtendedReal::neg_inf(), ExtendedReal::pos_inf());
    if (f.is_translation()) return f;
  }
  Rational c = std::uniform_int_distribution<int>(0, 6)(rng);
  return MonotoneMap::shift(Real(c / 2));
}

/** Decorated values on the 1/4 grid of [-8, 8] plus the infinities. */
inline DecoratedValue random_decorated(std::mt19937& rng) {
  int k = std::uniform_int_distribution<int>(-34, 34)(rng);
  if (k == -34) return DecoratedValue::neg_inf();
  if (k == 34) return DecoratedValue::pos_inf();
  Real v(Rational(k, 4));
  return std::uniform_int_distribution<int>(0, 1)(rng) ? DecoratedValue::plus(v) : DecoratedValue::minus(v);
}

inline ExtendedReal random_extended(std::mt19937& rng) {
  int k = std::uniform_int_distribution<int>(-34, 34)(rng);
  if (k == -34) return ExtendedReal::neg_inf();
  if (k == 34) return ExtendedReal::pos_inf();
  return ExtendedReal(Rational(k, 4));
}

/** Fine sample grid: step 1/64 on [-10, 10] plus a coarse far range. */
inline const std::vector<Real>& fine_grid() {
  static const std::vector<Real> grid = [] {
    std::vector<Real> g;
    for (int k = -160; k < -10; ++k) g.emplace_back(k);
    for (int k = -640; k <= 640; ++k) g.emplace_back(Rational(k, 64));
    for (int k = 11; k <= 160; ++k) g.emplace_back(k);
    return g;
  }();
  return grid;
}

}  // namespace testgen
