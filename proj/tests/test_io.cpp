#include <gtest/gtest.h>

#include <random>

#include "interleave/interleave.hpp"
#include "support/map_gen.hpp"
#include "support/module_gen.hpp"

using namespace interleave;
using namespace interleave::io;

namespace {

DiagramFile random_diagram_file(std::mt19937& rng, bool decorated) {
  std::uniform_int_distribution<int> v(-6, 6), kind(0, 9);
  DiagramFile f;
  f.decorated = decorated;
  f.degree = static_cast<std::size_t>(kind(rng) % 3);
  f.meta = {"test", 3, kind(rng) < 5 ? ExtendedReal::pos_inf() : ExtendedReal(Real(Rational(7, 2)))};
  for (int i = 0; i < 8; ++i) {
    Real b = kind(rng) < 3 ? Real::sqrt(Rational(v(rng) + 7)) : Real(Rational(v(rng), 2));
    Real d = b + Real(Rational(1 + kind(rng), 3));
    Decoration db = decorated && kind(rng) < 5 ? Decoration::Plus : Decoration::Minus;
    Decoration dd = decorated && kind(rng) < 5 ? Decoration::Plus : Decoration::Minus;
    DecoratedValue B = kind(rng) == 0 ? DecoratedValue::neg_inf() : DecoratedValue(b, db);
    DecoratedValue D = kind(rng) == 9 ? DecoratedValue::pos_inf() : DecoratedValue(d, dd);
    f.diagram.add(B, D);
    if (kind(rng) < 2) f.diagram.add(B, D);  // repeated class
  }
  return f;
}

}  // namespace

TEST(Io, DiagramRoundTrip) {
  std::mt19937 rng(1);
  for (int it = 0; it < 50; ++it) {
    DiagramFile f = random_diagram_file(rng, it % 2 == 0);
    std::string text = dump(to_json(f));
    DiagramFile g = diagram_from_json(parse_json(text));
    EXPECT_EQ(f, g) << text;
    EXPECT_EQ(dump(to_json(g)), text);
  }
}

TEST(Io, DiagramSetRoundTrip) {
  std::mt19937 rng(2);
  std::vector<DiagramFile> fs{random_diagram_file(rng, true), random_diagram_file(rng, false)};
  auto back = diagrams_from_json(parse_json(dump(to_json(fs))));
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[0], fs[0]);
  EXPECT_EQ(back[1], fs[1]);
  auto single = diagrams_from_json(to_json(fs[0]));
  ASSERT_EQ(single.size(), 1u);
  EXPECT_EQ(single[0], fs[0]);
}

TEST(Io, IrrationalValuesCarryEnclosures) {
  DiagramFile f;
  f.degree = 1;
  f.diagram.add(DecoratedValue::minus(Real(Rational(1, 2))), DecoratedValue::minus(Real::sqrt(Rational(1, 2))));
  Json j = to_json(f);
  const Json& p = j["points"][0];
  EXPECT_EQ(p["b"], "1/2");
  EXPECT_EQ(p["d"], "1/2*sqrt(2)");
  ASSERT_TRUE(p.contains("enclosure"));
  Rational lo = parse_rational(p["enclosure"]["d"][0].get<std::string>());
  Rational hi = parse_rational(p["enclosure"]["d"][1].get<std::string>());
  EXPECT_LT(lo * lo, Rational(1, 2));
  EXPECT_GT(hi * hi, Rational(1, 2));
  EXPECT_FALSE(p["enclosure"].contains("b"));
}

TEST(Io, WrongIndexIsRejected) {
  Json j = to_json(DiagramFile{0, false, [] {
                                 PersistenceDiagram pd;
                                 pd.add(DecoratedValue::minus(0), DecoratedValue::minus(1));
                                 return pd;
                               }(),
                               {}});
  j["points"][0]["index"] = 2;
  EXPECT_THROW(diagram_from_json(j), ParseError);
}

TEST(Io, PairAndMapRoundTrip) {
  std::mt19937 rng(3);
  for (int it = 0; it < 40; ++it) {
    MonotoneMap a = testgen::random_map(rng, it % 3);
    EXPECT_EQ(map_from_json(to_json(a)), a);
    TranslationPair p{testgen::random_translation(rng, it % 3), testgen::random_translation(rng, (it + 1) % 3)};
    TranslationPair q = pair_from_json(parse_json(dump(to_json(p))));
    EXPECT_EQ(q.tau, p.tau);
    EXPECT_EQ(q.sigma, p.sigma);
  }
  TranslationPair c = instantiate(catalog_entry("rips-cech-euclidean"), {{"n", 3}});
  TranslationPair back = pair_from_json(to_json(c));
  EXPECT_EQ(back.tau, c.tau);
}

TEST(Io, MatchingRoundTrip) {
  Matching x({{0, 2}, {3, 1}, {1, 0}});
  EXPECT_EQ(matching_from_json(parse_json(dump(to_json(x)))), x);
  Json bad = to_json(x);
  bad["pairs"].push_back(Json::array({0, 5}));
  EXPECT_THROW(matching_from_json(bad), ParseError);
}

TEST(Io, ModuleRoundTrip) {
  std::mt19937 rng(4);
  for (int it = 0; it < 30; ++it) {
    FiniteModule V = testgen::random_module(rng, Field(it % 2 ? 3 : 2));
    EXPECT_EQ(module_from_json(parse_json(dump(to_json(V)))), V);
  }
}

TEST(Io, OutputIsDeterministic) {
  std::mt19937 a(5), b(5);
  DiagramFile f = random_diagram_file(a, true), g = random_diagram_file(b, true);
  EXPECT_EQ(dump(to_json(f)), dump(to_json(g)));
  Certificate c;
  c.consistent = true;
  c.witness = Matching({{0, 1}});
  EXPECT_EQ(dump(to_json(c)), dump(to_json(c)));
}

TEST(Io, PointCsvWithDiagnostics) {
  auto pts = parse_points("# header\n0, 1/2\n0.25,-3e-1\n\n1 , 2\n");
  ASSERT_EQ(pts.size(), 3u);
  EXPECT_EQ(pts[1][0], Rational(1, 4));
  EXPECT_EQ(pts[1][1], Rational(-3, 10));
  auto ws = parse_points("1 2\n3 4\n");
  EXPECT_EQ(ws[1][1], Rational(4));
  try {
    parse_points("0,0\n1,x\n", "cloud.csv");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(std::string(e.what()).rfind("cloud.csv:2:3:", 0), 0u) << e.what();
  }
  try {
    parse_points("0,0\n1,2,3\n", "cloud.csv");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(std::string(e.what()).rfind("cloud.csv:2:1:", 0), 0u) << e.what();
  }
}

TEST(Io, LowerTriangularDistances) {
  auto d = parse_lower_triangular("\n2\n3 4\n");
  ASSERT_EQ(d.size(), 3u);
  EXPECT_EQ(d[0][2], Rational(3));
  EXPECT_EQ(d[2][1], Rational(4));
  auto with_diag = parse_lower_triangular("0\n2 0\n3 4 0\n");
  EXPECT_EQ(with_diag, d);
  try {
    parse_lower_triangular("0\n2 0\n3\n", "m.txt");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(std::string(e.what()).rfind("m.txt:3:1:", 0), 0u) << e.what();
  }
  // rows not all ending in 0 read as the strict form
  auto strict = parse_lower_triangular("1\n2 0\n");
  ASSERT_EQ(strict.size(), 3u);
  EXPECT_EQ(strict[2][1], Rational(0));
  EXPECT_THROW(parse_lower_triangular("1\n-2 3\n"), ParseError);
}

TEST(Io, InvalidJsonReportsLineAndColumn) {
  try {
    parse_json("{\n  \"a\": 1,\n  \"b\": ]\n}", "f.json");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(std::string(e.what()).rfind("f.json:3:", 0), 0u) << e.what();
  }
}

TEST(Io, NetspecAndIndices) {
  NetSpec s = netspec_from_json(parse_json(R"({"deltas": ["1/2", 1], "stitch_points": ["1", "sqrt(2)+1"]})"));
  EXPECT_EQ(s.deltas[0], Real(Rational(1, 2)));
  EXPECT_EQ(s.stitch_points[1], Real::sqrt(2) + Real(1));
  EXPECT_EQ(parse_indices("0 3\n5,7"), (std::vector<std::size_t>{0, 3, 5, 7}));
  EXPECT_EQ(parse_indices("[2, 4]"), (std::vector<std::size_t>{2, 4}));
  EXPECT_THROW(parse_indices("1 -2"), ParseError);
}

TEST(Svg, DrawsAnIntegerLatticeBox) {
  UndecoratedDiagram z = undecorate([] {
    PersistenceDiagram pd;
    pd.add(DecoratedValue::minus(2), DecoratedValue::minus(6));
    return pd;
  }());
  TranslationPair pair = discretization_pair(z, z);
  svg::Scene s{"discretization", z.points, {}, {box_undecorated(z.points[0], pair, Direction::VtoW)},
               unmatched_rule(pair, Side::V), {}};
  std::string a = svg::render(s), b = svg::render(s);
  EXPECT_EQ(a, b);
  EXPECT_NE(a.find("class=\"box\""), std::string::npos);
  EXPECT_NE(a.find("[1, 2] x [5, 6]"), std::string::npos);
  EXPECT_NE(a.find("class=\"unmatched-region\""), std::string::npos);
  EXPECT_NE(a.find("class=\"v-point\""), std::string::npos);
}
