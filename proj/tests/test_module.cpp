#include <gtest/gtest.h>

#include <map>
#include <random>

#include "interleave/module.hpp"
#include "support/module_gen.hpp"

using namespace interleave;
using testgen::random_interleaving;
using testgen::random_module;

namespace {

DecoratedValue m(const Real& v) { return DecoratedValue::minus(v); }
Grid pts(std::initializer_list<int> xs) {
  Grid g;
  for (int x : xs) g.push_back(m(x));
  return g;
}
DecoratedInterval co(int a, int b) { return DecoratedInterval::closed_open(a, b); }
DecoratedInterval co_inf(int a) { return DecoratedInterval(m(a), DecoratedValue::pos_inf()); }

using Bars = std::vector<std::pair<DecoratedValue, DecoratedValue>>;

Bars sorted(Bars b) {
  std::sort(b.begin(), b.end());
  return b;
}

// Bar counts from ranks of composite maps alone:
// mu(i, j) = r(i, j-1) - r(i-1, j-1) - r(i, j) + r(i-1, j), r(-1, .) = 0, r(., n) = 0.
Bars bars_by_rank_formula(const FiniteModule& V) {
  const std::size_t n = V.size();
  auto r = [&](long i, long j) -> long {
    if (i < 0 || j >= static_cast<long>(n)) return 0;
    return static_cast<long>(rank(V.transition_blocks(static_cast<std::size_t>(i), static_cast<std::size_t>(j))));
  };
  Bars out;
  for (long i = 0; i < static_cast<long>(n); ++i) {
    for (long j = i + 1; j <= static_cast<long>(n); ++j) {
      long mu = r(i, j - 1) - r(i - 1, j - 1) - r(i, j) + r(i - 1, j);
      EXPECT_GE(mu, 0);
      DecoratedValue d = j == static_cast<long>(n) ? DecoratedValue::pos_inf() : V.grid()[static_cast<std::size_t>(j)];
      for (long k = 0; k < mu; ++k) out.emplace_back(V.grid()[static_cast<std::size_t>(i)], d);
    }
  }
  return sorted(out);
}

std::vector<Real> probe_points() {
  std::vector<Real> out;
  for (int k = -24; k <= 40; ++k) out.emplace_back(Rational(k, 4));
  return out;
}

}  // namespace

// ------------------------------------------------------------ construction

TEST(FiniteModule, IntervalModuleExamples) {
  FiniteModule a = interval_module(co(1, 3), pts({1, 2, 3}));
  EXPECT_EQ(a.dims(), (std::vector<std::size_t>{1, 1, 0}));
  EXPECT_EQ(a.maps()[0], Matrix::identity(1, Field(2)));
  EXPECT_EQ(a.maps()[1], Matrix(0, 1, Field(2)));
  FiniteModule b = interval_module(co_inf(2), pts({1, 2, 3}));
  EXPECT_EQ(b.dims(), (std::vector<std::size_t>{0, 1, 1}));
  EXPECT_THROW(interval_module(co(1, 3), pts({1, 2})), std::invalid_argument);
  EXPECT_THROW(co(3, 3), DomainError);
}

TEST(FiniteModule, DirectSumExamples) {
  FiniteModule v = interval_module(co(1, 3), pts({1, 3}));
  EXPECT_EQ(direct_sum({v}), v);
  FiniteModule s = direct_sum({interval_module(co(1, 3)), interval_module(co(2, 4))});
  EXPECT_EQ(s.grid(), pts({1, 2, 3, 4}));
  EXPECT_EQ(s.dims(), (std::vector<std::size_t>{1, 2, 1, 0}));
}

TEST(FiniteModule, RejectsMalformedInput) {
  Field f(2);
  EXPECT_THROW(FiniteModule(pts({2, 1}), {1, 1}, {Matrix(1, 1, f)}), std::invalid_argument);
  EXPECT_THROW(FiniteModule(pts({1, 2}), {1, 2}, {Matrix(1, 1, f)}), std::invalid_argument);
  EXPECT_THROW(FiniteModule(Grid{DecoratedValue::pos_inf()}, {1}, {}), std::invalid_argument);
}

TEST(FiniteModule, RefineKeepsPointwiseStructure) {
  std::mt19937 rng(1);
  for (int it = 0; it < 40; ++it) {
    FiniteModule V = random_module(rng);
    Grid extra = pts({-5, 0, 7});
    extra.push_back(DecoratedValue::plus(Real(Rational(1, 3))));
    std::sort(extra.begin(), extra.end());
    Grid fine = detail::merge_grids({&V.grid(), &extra});
    FiniteModule R = V.refine(fine);
    auto ps = probe_points();
    for (std::size_t i = 0; i < ps.size(); ++i) {
      EXPECT_EQ(R.dim_at(ps[i]), V.dim_at(ps[i]));
      if (i + 3 < ps.size()) {
        EXPECT_EQ(R.transition(ps[i], ps[i + 3]), V.transition(ps[i], ps[i + 3]));
      }
    }
    EXPECT_TRUE(same_multiset(decompose(R), decompose(V)));
  }
}

// ----------------------------------------------------------- decomposition

TEST(Decompose, Examples) {
  PersistenceDiagram a = decompose(interval_module(co(1, 3)));
  ASSERT_EQ(a.size(), 1u);
  EXPECT_EQ(a[0], (DiagramPoint{m(1), m(3), 1}));
  EXPECT_TRUE(decompose(FiniteModule()).empty());
  EXPECT_TRUE(decompose(FiniteModule(pts({0, 1}), {0, 0}, {Matrix(0, 0, Field(2))})).empty());

  // dims (1,2,1) with A1 = [1;1], A2 = [1 1]: A2 A1 = 0 over GF(2)
  Field f(2);
  FiniteModule v(pts({1, 2, 3}), {1, 2, 1},
                 {Matrix::from_rows({{1}, {1}}, 1, f), Matrix::from_rows({{1, 1}}, 2, f)}, f);
  Bars expect = bars_by_rank_formula(v);
  EXPECT_EQ(decompose(v).intervals(), expect);
  EXPECT_EQ(expect, sorted({{m(1), m(3)}, {m(2), DecoratedValue::pos_inf()}}));
}

TEST(Decompose, MatchesRankFormulaOnRandomModules) {
  std::mt19937 rng(2);
  for (std::uint32_t p : {2u, 3u, 5u}) {
    for (int it = 0; it < 60; ++it) {
      FiniteModule V = random_module(rng, Field(p), 4);
      PersistenceDiagram pd = decompose(V);
      EXPECT_EQ(pd.intervals(), bars_by_rank_formula(V)) << V.str();
      for (const auto& pt : pd.points()) EXPECT_EQ(pt.b.is_finite() ? pt.b.decoration() : Decoration::Minus, Decoration::Minus);
    }
  }
}

TEST(Decompose, RoundTripsDirectSumsOfIntervals) {
  std::mt19937 rng(3);
  for (int it = 0; it < 100; ++it) {
    std::vector<FiniteModule> parts;
    Bars expect;
    int k = std::uniform_int_distribution<int>(0, 6)(rng);
    for (int j = 0; j < k; ++j) {
      int b = std::uniform_int_distribution<int>(-1, 5)(rng), d = std::uniform_int_distribution<int>(b + 1, 7)(rng);
      DecoratedValue lo = b < 0 ? DecoratedValue::neg_inf() : m(b);
      DecoratedValue hi = d == 7 ? DecoratedValue::pos_inf() : m(d);
      parts.push_back(interval_module(DecoratedInterval(lo, hi), Field(3)));
      expect.emplace_back(lo, hi);
    }
    PersistenceDiagram pd = decompose(direct_sum(parts, Field(3)));
    EXPECT_EQ(pd.intervals(), sorted(expect));
    // indices count 1..m within each class
    std::map<std::pair<DecoratedValue, DecoratedValue>, std::size_t> seen;
    for (const auto& pt : pd.points()) {
      std::size_t want = ++seen[std::make_pair(pt.b, pt.d)];
      EXPECT_EQ(pt.index, want);
    }
  }
}

// ------------------------------------------------------------------ shifts

TEST(Shift, Examples) {
  FiniteModule v = interval_module(co(1, 3));
  EXPECT_EQ(shift_module(v, MonotoneMap::identity()), v);
  FiniteModule s = shift_module(v, MonotoneMap::shift(1));
  EXPECT_EQ(decompose(s).intervals(), (Bars{{m(0), m(2)}}));
  for (const auto& t : probe_points()) EXPECT_EQ(s.dim_at(t), co(0, 2).contains(t) ? 1u : 0u);
  FiniteModule c = shift_module(direct_sum({v, interval_module(co(2, 5))}), MonotoneMap::constant(2));
  EXPECT_EQ(c.size(), 1u);
  for (const auto& t : probe_points()) EXPECT_EQ(c.dim_at(t), 2u);
}

TEST(Shift, PointwiseAgreesWithComposition) {
  std::mt19937 rng(4);
  auto ps = probe_points();
  for (int it = 0; it < 60; ++it) {
    FiniteModule V = random_module(rng);
    MonotoneMap f = testgen::random_map(rng, it % 3).with_window(ExtendedReal::neg_inf(), ExtendedReal::pos_inf());
    FiniteModule S = shift_module(V, f);
    for (std::size_t i = 0; i < ps.size(); i += 2) {
      ASSERT_EQ(S.dim_at(ps[i]), V.dim_at(f.at(ps[i]))) << f.str() << " at " << ps[i];
      if (i + 5 < ps.size()) {
        Matrix a = S.transition(ps[i], ps[i + 5]), b = V.transition(f.at(ps[i]), f.at(ps[i + 5]));
        if (!a.empty() && !b.empty()) {
          EXPECT_EQ(a, b);
        }
      }
    }
  }
}

TEST(CanonicalMorphism, Examples) {
  FiniteModule v = interval_module(co(1, 3));
  ModuleMorphism id = canonical_morphism(v, MonotoneMap::identity());
  for (std::size_t i = 0; i < id.components().size(); ++i)
    EXPECT_EQ(id.components()[i], Matrix::identity(id.source().dim(i), Field(2)));
  ModuleMorphism phi = canonical_morphism(v, MonotoneMap::shift(1));
  EXPECT_EQ(phi.component_at(1), Matrix::identity(1, Field(2)));
  EXPECT_TRUE(phi.component_at(2).is_zero());
  EXPECT_EQ(phi.component_at(2).shape(), "0x1");
}

TEST(CanonicalMorphism, SquaresCommuteForRandomInputs) {
  std::mt19937 rng(5);
  for (int it = 0; it < 60; ++it) {
    FiniteModule V = random_module(rng, Field(3));
    MonotoneMap s = testgen::random_translation(rng, it % 3);
    EXPECT_NO_THROW(canonical_morphism(V, s)) << s.str();
  }
}

TEST(SigmaTrivial, Examples) {
  FiniteModule v = interval_module(co(1, 3));
  EXPECT_TRUE(is_sigma_trivial(v, MonotoneMap::shift(2)));
  EXPECT_FALSE(is_sigma_trivial(v, MonotoneMap::shift(1)));
  std::mt19937 rng(6);
  for (int it = 0; it < 60; ++it) {
    std::vector<FiniteModule> parts;
    for (int j = 0; j < 3; ++j) {
      int b = std::uniform_int_distribution<int>(0, 4)(rng), d = b + std::uniform_int_distribution<int>(1, 4)(rng);
      parts.push_back(interval_module(co(b, d)));
    }
    MonotoneMap s = testgen::random_translation(rng, it % 3);
    bool each = std::all_of(parts.begin(), parts.end(), [&](const FiniteModule& p) { return is_sigma_trivial(p, s); });
    EXPECT_EQ(is_sigma_trivial(direct_sum(parts), s), each);
  }
}

// ------------------------------------------------------ kernels and images

TEST(KernelImage, Examples) {
  std::mt19937 rng(7);
  FiniteModule V = random_module(rng);
  EXPECT_TRUE(kernel(identity_morphism(V)).is_zero());
  EXPECT_TRUE(image(zero_morphism(V, V)).is_zero());
  EXPECT_TRUE(cokernel(identity_morphism(V)).is_zero());
}

TEST(KernelImage, RankNullityBlockwise) {
  std::mt19937 rng(8);
  for (std::uint32_t p : {2u, 3u}) {
    for (int it = 0; it < 50; ++it) {
      FiniteModule V = random_module(rng, Field(p));
      ModuleMorphism phi = canonical_morphism(V, testgen::random_translation(rng, it % 3));
      FiniteModule K = kernel(phi), I = image(phi), C = cokernel(phi);
      for (std::size_t i = 0; i < phi.grid().size(); ++i) {
        EXPECT_EQ(K.dim(i) + I.dim(i), phi.source().dim(i));
        EXPECT_EQ(C.dim(i) + I.dim(i), phi.target().dim(i));
      }
      // kernel inclusion followed by phi vanishes; phi followed by the cokernel projection vanishes
      EXPECT_TRUE(compose_morphisms(phi, kernel_of(phi).inclusion).is_zero());
      EXPECT_TRUE(compose_morphisms(cokernel_of(phi).projection, phi).is_zero());
    }
  }
}

// ------------------------------------------------------------- V^sigma

TEST(VSigma, Examples) {
  FiniteModule v = interval_module(co(1, 4));
  EXPECT_EQ(decompose(submodule_V_sigma(v, MonotoneMap::shift(1))).intervals(), (Bars{{m(2), m(4)}}));
  EXPECT_EQ(decompose(quotient_by_sigma_kernel(v, MonotoneMap::shift(1))).intervals(), (Bars{{m(1), m(3)}}));
  EXPECT_TRUE(decompose(quotient_by_sigma_kernel(v, MonotoneMap::shift(3))).empty());
  std::mt19937 rng(9);
  FiniteModule r = random_module(rng);
  EXPECT_TRUE(same_multiset(decompose(submodule_V_sigma(r, MonotoneMap::identity())), decompose(r)));
  EXPECT_TRUE(same_multiset(decompose(quotient_by_sigma_kernel(r, MonotoneMap::identity())), decompose(r)));
}

TEST(VSigma, BarcodeIsPerBarTruncation) {
  std::mt19937 rng(10);
  for (int it = 0; it < 80; ++it) {
    FiniteModule V = random_module(rng, Field(it % 2 ? 3 : 2));
    MonotoneMap s = testgen::random_translation(rng, it % 3);
    Bars sub, quo;
    PersistenceDiagram pd = decompose(V);
    for (const auto& pt : pd.points()) {
      DecoratedInterval J = pt.interval();
      if (auto k = intersect(J, convex_image(s, J))) sub.emplace_back(k->b(), k->d());
      if (auto pre = preimage_interval(s, J))
        if (auto k = intersect(J, *pre)) quo.emplace_back(k->b(), k->d());
    }
    EXPECT_EQ(decompose(submodule_V_sigma(V, s)).intervals(), sorted(sub)) << V.str() << "\n" << s.str();
    EXPECT_EQ(decompose(quotient_by_sigma_kernel(V, s)).intervals(), sorted(quo)) << V.str() << "\n" << s.str();
  }
}

// ----------------------------------------------------------- interleavings

TEST(Interleaving, Examples) {
  std::mt19937 rng(11);
  FiniteModule V = random_module(rng);
  while (V.is_zero()) V = random_module(rng);
  TranslationPair ids{MonotoneMap::identity(), MonotoneMap::identity()};
  EXPECT_TRUE(check_interleaving(V, V, ids, identity_morphism(V), identity_morphism(V)));
  MonotoneMap d = MonotoneMap::shift(Rational(1, 2));
  ModuleMorphism c = canonical_morphism(V, d);
  EXPECT_TRUE(check_interleaving(V, V, {d, d}, c, c));
  InterleavingCheck bad = check_interleaving(V, V, ids, identity_morphism(V), zero_morphism(V, V));
  EXPECT_FALSE(bad);
  EXPECT_FALSE(bad.failure.empty());
}

TEST(Interleaving, GeneratedInterleavingsValidate) {
  std::mt19937 rng(12);
  for (int it = 0; it < 40; ++it) {
    auto t = random_interleaving(rng, Field(it % 2 ? 3 : 2));
    ASSERT_TRUE(t.I.pair.is_valid());
    auto r = check_interleaving(t.V, t.W, t.I);
    EXPECT_TRUE(r) << r.failure;
  }
}

TEST(Interleaving, KernelAndCokernelAreTrivialUnderRoundTrip) {
  std::mt19937 rng(13);
  for (int it = 0; it < 40; ++it) {
    auto t = random_interleaving(rng);
    MonotoneMap st = compose(t.I.pair.sigma, t.I.pair.tau), ts = compose(t.I.pair.tau, t.I.pair.sigma);
    EXPECT_TRUE(is_sigma_trivial(kernel(t.I.phi), st));
    EXPECT_TRUE(is_sigma_trivial(cokernel(t.I.phi), st));
    EXPECT_TRUE(is_sigma_trivial(kernel(t.I.psi), ts));
    EXPECT_TRUE(is_sigma_trivial(cokernel(t.I.psi), ts));
  }
}

TEST(Interleaving, ImageContainsSigmaPartAndKernelDiesUnderStructureMap) {
  std::mt19937 rng(14);
  for (int it = 0; it < 40; ++it) {
    auto t = random_interleaving(rng);
    const ModuleMorphism& phi = t.I.phi;
    MonotoneMap st = compose(t.I.pair.sigma, t.I.pair.tau);
    ASSERT_TRUE(is_sigma_trivial(cokernel(phi), st));
    // W(tau)^{st}_t is contained in im phi_t
    Submodule ws = submodule_V_sigma_of(phi.target(), st);
    Grid g = detail::merge_grids({&ws.module.grid(), &phi.grid()});
    ModuleMorphism inc = ws.inclusion.refine(g);
    ModuleMorphism ph = phi.refine(g);
    for (std::size_t i = 0; i < g.size(); ++i) {
      Matrix im = column_basis(ph.components()[i]);
      EXPECT_EQ(rank(hstack(im, inc.components()[i])), im.cols());
    }
    // ker phi_t inside ker V(t, st(t))
    ModuleMorphism kin = kernel_of(phi).inclusion;
    for (std::size_t i = 0; i < kin.grid().size(); ++i) {
      Real r = block_representative(kin.grid(), i);
      Matrix tr = t.V.transition(r, st.at(r));
      if (!tr.empty()) {
        EXPECT_TRUE((tr * kin.components()[i]).is_zero());
      }
    }
  }
}

TEST(Interleaving, IsomorphicModulesHaveEqualDiagrams) {
  std::mt19937 rng(15);
  Field f(5);
  for (int it = 0; it < 30; ++it) {
    FiniteModule V = random_module(rng, f);
    std::vector<Matrix> P, Pinv;
    for (std::size_t d : V.dims()) {
      Matrix p = testgen::random_matrix(rng, d, d, f);
      while (rank(p) != d) p = testgen::random_matrix(rng, d, d, f);
      P.push_back(p);
      Pinv.push_back(inverse(p));
    }
    std::vector<Matrix> maps;
    for (std::size_t i = 0; i + 1 < V.size(); ++i) maps.push_back(P[i + 1] * V.maps()[i] * Pinv[i]);
    FiniteModule W(V.grid(), V.dims(), maps, f);
    TranslationPair ids{MonotoneMap::identity(), MonotoneMap::identity()};
    ASSERT_TRUE(check_interleaving(V, W, ids, ModuleMorphism(V, W, P), ModuleMorphism(W, V, Pinv)));
    EXPECT_TRUE(same_multiset(decompose(V), decompose(W)));
  }
}

// --------------------------------------------------------------- stitching

TEST(Stitch, PairExample) {
  Real t0(2), d(Rational(1, 2));
  TranslationPair p1{MonotoneMap::identity(), MonotoneMap::identity()};
  TranslationPair p2{MonotoneMap::identity(), MonotoneMap::shift(d)};
  TranslationPair er = stitched_pair(p1, p2, t0);
  EXPECT_EQ(er.tau.at(Real(Rational(9, 4))), t0);
  EXPECT_EQ(er.tau.at(t0), t0);
  EXPECT_EQ(er.tau.at(Real(Rational(5, 2))), Real(Rational(5, 2)));
  EXPECT_EQ(er.tau.at(Real(1)), Real(1));
  EXPECT_EQ(er.sigma.at(t0), t0 + d);
  EXPECT_EQ(er.sigma.at(Real(Rational(3, 2))), Real(Rational(3, 2)));
  EXPECT_EQ(er.sigma.at(Real(3)), Real(3) + d);
  EXPECT_TRUE(er.is_valid());

  TranslationPair zero = stitched_pair(p1, p1, t0);
  EXPECT_EQ(zero.tau, MonotoneMap::identity());
  EXPECT_EQ(zero.sigma, MonotoneMap::identity());

  TranslationPair p3{MonotoneMap::identity(), MonotoneMap::shift(-1)};
  EXPECT_THROW(stitched_pair(p1, p3, t0), DomainError);
}

TEST(Stitch, PairIsValidForRandomAdmissibleInputs) {
  std::mt19937 rng(16);
  int checked = 0;
  for (int it = 0; it < 200 && checked < 60; ++it) {
    auto mk = [&] {
      MonotoneMap a = MonotoneMap::shift(Real(testgen::pick(rng, {-1, 0, 1})));
      return TranslationPair{compose(a, testgen::random_translation(rng, it % 3)),
                             compose(MonotoneMap::shift(-a.at(0)), testgen::random_translation(rng, (it + 1) % 3))};
    };
    TranslationPair p1 = mk(), p2 = mk();
    Real t0(Rational(std::uniform_int_distribution<int>(-12, 12)(rng), 4));
    if (!p1.is_valid() || !p2.is_valid() || !is_stitch_point(p1, p2, t0)) continue;
    ++checked;
    TranslationPair er = stitched_pair(p1, p2, t0);
    EXPECT_TRUE(er.is_valid()) << er.tau.str() << " / " << er.sigma.str();
    Real u0 = p1.tau.at(t0), s0 = p2.sigma.at(u0);
    for (const auto& t : probe_points()) {
      Real want = t <= t0 && t0 < s0 ? p1.tau.at(t) : (t < t0 ? p1.tau.at(t) : (t < s0 ? u0 : p2.tau.at(t)));
      EXPECT_EQ(er.tau.at(t), want) << t;
      Real rwant = p1.sigma.at(t) < t0 ? p1.sigma.at(t) : (t < u0 ? s0 : p2.sigma.at(t));
      EXPECT_EQ(er.sigma.at(t), rwant) << t;
    }
  }
  EXPECT_GE(checked, 20);
}

TEST(Stitch, IdentitySeamReproducesTheModule) {
  std::mt19937 rng(17);
  TranslationPair ids{MonotoneMap::identity(), MonotoneMap::identity()};
  for (int it = 0; it < 30; ++it) {
    FiniteModule V = random_module(rng);
    Interleaving I{ids, identity_morphism(V), identity_morphism(V)};
    Real t0(Rational(std::uniform_int_distribution<int>(-10, 14)(rng), 2));
    Stitched s = stitch_modules(V, V, t0, V, I, I);
    EXPECT_TRUE(same_multiset(decompose(s.module), decompose(V)));
    EXPECT_TRUE(check_interleaving(s.module, V, s.interleaving));
  }
}

TEST(Stitch, StitchedModuleIsInterleavedWithW) {
  std::mt19937 rng(18);
  int checked = 0;
  for (int it = 0; it < 150 && checked < 40; ++it) {
    FiniteModule X = random_module(rng, Field(it % 2 ? 3 : 2));
    auto draw = [&] {
      Rational a = testgen::pick(rng, {-1, Rational(-1, 2), 0, Rational(1, 2), 1});
      return testgen::make_interleaving(X, a, testgen::random_translation(rng, it % 3),
                                        testgen::random_translation(rng, (it + 2) % 3));
    };
    auto first = draw(), second = draw();
    Real t0(Rational(std::uniform_int_distribution<int>(-8, 12)(rng), 2));
    if (!is_stitch_point(first.I.pair, second.I.pair, t0)) continue;
    ++checked;
    Stitched s = stitch_modules(X, first.V, t0, second.V, first.I, second.I);
    auto r = check_interleaving(s.module, X, s.interleaving);
    EXPECT_TRUE(r) << r.failure;
    // pointwise shape of U
    Real s0 = second.I.pair.sigma.at(first.I.pair.tau.at(t0));
    for (const auto& t : probe_points()) {
      std::size_t want = t < t0 ? first.V.dim_at(t) : (t < s0 ? first.V.dim_at(t0) : second.V.dim_at(t));
      EXPECT_EQ(s.module.dim_at(t), want);
    }
  }
  EXPECT_GE(checked, 15);
}

TEST(Stitch, RejectsNonStitchPoints) {
  FiniteModule V = interval_module(co(0, 3));
  TranslationPair ids{MonotoneMap::identity(), MonotoneMap::identity()};
  Interleaving I{ids, identity_morphism(V), identity_morphism(V)};
  Interleaving back{TranslationPair{MonotoneMap::identity(), MonotoneMap::shift(-1)}, I.phi, I.psi};
  EXPECT_THROW(stitch_modules(V, V, Real(1), V, I, back), DomainError);
}
