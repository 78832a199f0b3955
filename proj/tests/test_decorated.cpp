#include <gtest/gtest.h>

#include <random>

#include "interleave/decorated.hpp"

using namespace interleave;

namespace {

DecoratedValue m(int v) { return DecoratedValue::minus(v); }
DecoratedValue p(int v) { return DecoratedValue::plus(v); }

std::vector<DecoratedValue> samples() {
  std::vector<DecoratedValue> out{DecoratedValue::neg_inf(), DecoratedValue::pos_inf()};
  for (int v = -3; v <= 3; ++v) {
    out.push_back(m(v));
    out.push_back(p(v));
  }
  return out;
}

}  // namespace

TEST(DecoratedValue, OrderExamples) {
  EXPECT_LT(m(3), p(3));
  EXPECT_LT(DecoratedValue::neg_inf(), m(3));
  EXPECT_LT(p(2), m(3));
  EXPECT_THROW(DecoratedValue::make(ExtendedReal::pos_inf(), Decoration::Plus), DomainError);
}

TEST(DecoratedValue, OrderIsLexicographic) {
  auto xs = samples();
  auto key = [](const DecoratedValue& e) {
    if (e.is_neg_inf()) return std::pair<double, int>(-1e9, 0);
    if (e.is_pos_inf()) return std::pair<double, int>(1e9, 0);
    return std::pair<double, int>(e.value().to_double(), e.decoration() == Decoration::Plus ? 1 : 0);
  };
  for (const auto& a : xs)
    for (const auto& b : xs) EXPECT_EQ(a < b, key(a) < key(b)) << a.str() << " " << b.str();
}

TEST(DecoratedValue, ProjectionAndInjections) {
  EXPECT_EQ(project(p(5)), ExtendedReal(5));
  EXPECT_EQ(inject_minus(5), m(5));
  EXPECT_EQ(project(inject_plus(ExtendedReal::neg_inf())), ExtendedReal::neg_inf());
  std::vector<ExtendedReal> ts{ExtendedReal::neg_inf(), ExtendedReal::pos_inf()};
  for (int v = -3; v <= 3; ++v) ts.emplace_back(v);
  for (const auto& t : ts) {
    EXPECT_EQ(project(inject_plus(t)), t);
    EXPECT_EQ(project(inject_minus(t)), t);
  }
  for (const auto& e : samples()) {
    EXPECT_LE(inject_minus(project(e)), e);
    EXPECT_LE(e, inject_plus(project(e)));
  }
}

TEST(DecoratedValue, GaloisLawsOfProjection) {
  std::vector<ExtendedReal> ts{ExtendedReal::neg_inf(), ExtendedReal::pos_inf()};
  for (int v = -3; v <= 3; ++v) ts.emplace_back(v);
  for (const auto& e : samples()) {
    for (const auto& t : ts) {
      // (i-, pi): i-(t) <= e  <=>  t <= pi(e)
      EXPECT_EQ(inject_minus(t) <= e, t <= project(e));
      // (pi, i+): pi(e) <= t  <=>  e <= i+(t)
      EXPECT_EQ(project(e) <= t, e <= inject_plus(t));
    }
  }
}

TEST(DecoratedInterval, Contains) {
  DecoratedInterval J(m(1), m(3));
  EXPECT_TRUE(J.contains(1));
  EXPECT_FALSE(J.contains(3));
  EXPECT_FALSE(DecoratedInterval(p(1), p(3)).contains(1));
  EXPECT_TRUE(DecoratedInterval(p(1), p(3)).contains(3));
  EXPECT_THROW(DecoratedInterval(m(3), m(3)), DomainError);
  EXPECT_TRUE(DecoratedInterval(m(3), p(3)).contains(3));
}

TEST(DecoratedInterval, ContainsMatchesEndpointConventions) {
  for (auto bd : {Decoration::Minus, Decoration::Plus}) {
    for (auto dd : {Decoration::Minus, Decoration::Plus}) {
      DecoratedInterval J({Real(1), bd}, {Real(3), dd});
      bool left_closed = bd == Decoration::Minus, right_closed = dd == Decoration::Plus;
      EXPECT_EQ(J.contains(1), left_closed);
      EXPECT_EQ(J.contains(3), right_closed);
      EXPECT_TRUE(J.contains(2));
      EXPECT_FALSE(J.contains(0));
      EXPECT_FALSE(J.contains(4));
      EXPECT_TRUE(J.contains(Real(Rational(1001, 1000))));
      EXPECT_TRUE(J.contains(Real(Rational(2999, 1000))));
    }
  }
}

TEST(DecoratedInterval, BoundingRelationsMatchPointwiseDefinition) {
  // Oracle: check the quantified definitions on a fine rational grid.
  std::vector<Rational> grid;
  for (int k = -8; k <= 48; ++k) {
    grid.emplace_back(k, 8);
    grid.back().canonicalize();
  }
  auto elems = [&](const DecoratedInterval& J) {
    std::vector<Rational> out;
    for (const auto& q : grid)
      if (J.contains(q)) out.push_back(q);
    return out;
  };
  std::vector<DecoratedInterval> Js;
  for (int b = 0; b <= 4; ++b)
    for (int d = b; d <= 5; ++d)
      for (auto bd : {Decoration::Minus, Decoration::Plus})
        for (auto dd : {Decoration::Minus, Decoration::Plus})
          if (auto J = DecoratedInterval::make({Real(b), bd}, {Real(d), dd})) Js.push_back(*J);
  for (const auto& A : Js) {
    for (const auto& B : Js) {
      auto ea = elems(A), eb = elems(B);
      bool below = std::all_of(eb.begin(), eb.end(), [&](const Rational& y) {
        return std::any_of(ea.begin(), ea.end(), [&](const Rational& x) { return x <= y; });
      });
      bool above = std::all_of(ea.begin(), ea.end(), [&](const Rational& x) {
        return std::any_of(eb.begin(), eb.end(), [&](const Rational& y) { return x <= y; });
      });
      bool meet = std::any_of(ea.begin(), ea.end(), [&](const Rational& x) { return B.contains(x); });
      EXPECT_EQ(bounds_below(A, B), below) << A.str() << B.str();
      EXPECT_EQ(bounds_above(A, B), above) << A.str() << B.str();
      EXPECT_EQ(overlaps_above(A, B), below && above && meet) << A.str() << B.str();
    }
  }
}

TEST(DecoratedInterval, WorkedExamples) {
  auto co = [](int a, int b) { return DecoratedInterval::closed_open(a, b); };
  EXPECT_TRUE(overlaps_above(co(0, 5), co(2, 7)));
  EXPECT_FALSE(overlaps_above(co(0, 2), co(3, 4)));
  EXPECT_TRUE(bounds_below(co(0, 5), co(2, 3)));
  EXPECT_FALSE(bounds_above(co(0, 5), co(2, 3)));
}
