#include <gtest/gtest.h>

#include "interleave/catalog.hpp"

using namespace interleave;

namespace {
Real q(long a, long b = 1) { return Real(Rational(a, b)); }
}  // namespace

TEST(Catalog, HasSevenValidRows) {
  ASSERT_EQ(catalog().size(), 7u);
  Params p{{"n", 3}, {"eps", Rational(1, 10)}, {"delta", Rational(1, 2)}};
  for (const auto& e : catalog()) {
    TranslationPair pair = instantiate(e, p);
    EXPECT_TRUE(pair.is_valid()) << e.id;
    EXPECT_EQ(pair.tau.window_lo(), ExtendedReal(0));
  }
}

TEST(Catalog, RowExamples) {
  auto rc = instantiate(catalog_entry("rips-cech-euclidean"), {{"n", 3}});
  EXPECT_EQ(rc.tau.at(1), Real::sqrt(Rational(3, 2)));
  EXPECT_EQ(rc.sigma, MonotoneMap::identity(ExtendedReal(0), ExtendedReal::pos_inf()));
  auto rm = instantiate(catalog_entry("rips-cech-metric"));
  EXPECT_EQ(rm.tau.at(5), Real(10));
  EXPECT_EQ(rm.sigma.at(5), Real(5));
  auto sp = instantiate(catalog_entry("sparsified-rips"), {{"eps", Rational(1, 10)}});
  EXPECT_EQ(sp.sigma.pieces().front().slope, q(11, 10));
  EXPECT_EQ(sp.tau.at(7), Real(7));
  auto nt = instantiate(catalog_entry("net-tree"), {{"eps", Rational(1, 10)}});
  EXPECT_EQ(nt.sigma.at(100), Real(121));
  auto gi = instantiate(catalog_entry("graph-induced"), {{"eps", Rational(1, 4)}});
  EXPECT_EQ(gi.tau.at(1), q(3, 2));
  auto rr = instantiate(catalog_entry("relaxed-rips"), {{"eps", Rational(1, 4)}});
  EXPECT_EQ(rr.sigma.at(1), Real(2));
  auto sw = instantiate(catalog_entry("sparse-weighted-rips"), {{"eps", Rational(1, 2)}, {"delta", 1}});
  // (1 + sqrt(2)/2) / (1/2) = 2 + sqrt(2)
  EXPECT_EQ(sw.sigma.at(1), Real(2) + Real::sqrt(2));
}

TEST(Catalog, ParameterConstraints) {
  EXPECT_THROW(instantiate(catalog_entry("relaxed-rips"), {{"eps", Rational(1, 2)}}), DomainError);
  EXPECT_THROW(instantiate(catalog_entry("net-tree"), {{"eps", -1}}), DomainError);
  EXPECT_THROW(instantiate(catalog_entry("rips-cech-euclidean"), {{"n", 0}}), DomainError);
  EXPECT_THROW(catalog_entry("no-such-row"), std::invalid_argument);
}

TEST(Catalog, SparsifiedThroughRipsToCechClosedForm) {
  for (int n : {2, 3}) {
    Params p{{"n", n}, {"eps", Rational(1, 10)}};
    TranslationPair eta_rho = compose_rows({"sparsified-rips", "rips-cech-euclidean"}, p);
    MonotoneMap eta = parse_affine_map("t*sqrt(2*n/(n+1))", p, ExtendedReal(0), ExtendedReal::pos_inf());
    MonotoneMap rho = parse_affine_map("(1+eps)*t", p, ExtendedReal(0), ExtendedReal::pos_inf());
    EXPECT_EQ(eta_rho.tau, eta) << eta_rho.tau.str();
    EXPECT_EQ(eta_rho.sigma, rho) << eta_rho.sigma.str();
    EXPECT_TRUE(eta_rho.is_valid());
  }
  // n = 3 gives slope sqrt(3/2)
  TranslationPair r = compose_rows({"sparsified-rips", "rips-cech-euclidean"}, {{"n", 3}, {"eps", Rational(1, 10)}});
  EXPECT_EQ(r.tau.pieces().front().slope, Real::sqrt(6) / Real(2));
}

TEST(Parser, AffineExpressions) {
  EXPECT_EQ(parse_affine_map("t+1"), MonotoneMap::shift(1));
  EXPECT_EQ(parse_affine_map("2*(t - 1/2) + 3"), MonotoneMap::affine(2, 2));
  EXPECT_EQ(parse_affine_map("t/2"), MonotoneMap::affine(q(1, 2), 0));
  EXPECT_EQ(parse_affine_map("-(-t)"), MonotoneMap::identity());
  EXPECT_EQ(parse_constant("2^3 - 0.5"), q(15, 2));
  EXPECT_EQ(parse_constant("sqrt(8)"), Real(2) * Real::sqrt(2));
}

TEST(Parser, Errors) {
  EXPECT_THROW(parse_affine_map("t*t"), ParseError);
  EXPECT_THROW(parse_affine_map("1/t"), ParseError);
  EXPECT_THROW(parse_affine_map("t +"), ParseError);
  EXPECT_THROW(parse_affine_map("foo*t"), ParseError);
  EXPECT_THROW(parse_affine_map("-t"), DomainError);
  try {
    parse_affine_map("t + )");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("column 5"), std::string::npos) << e.what();
  }
}
