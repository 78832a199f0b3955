#pragma once

#include <cctype>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "interleave/monotone_map.hpp"

namespace interleave {

using Params = std::map<std::string, Rational, std::less<>>;

namespace detail {

// a*t + b; products and quotients must keep the result affine in t.
struct Linear {
  Real a;
  Real b;
  bool is_constant() const { return a.is_zero(); }
};

class LinearParser {
 public:
  LinearParser(std::string_view text, const Params& params) : s_(text), params_(params) {}

  Linear parse() {
    Linear v = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("expression '" + std::string(s_) + "', column " + std::to_string(pos_ + 1) + ": " + what);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Linear expr() {
    Linear v = term();
    for (;;) {
      if (eat('+')) {
        Linear r = term();
        v = {v.a + r.a, v.b + r.b};
      } else if (eat('-')) {
        Linear r = term();
        v = {v.a - r.a, v.b - r.b};
      } else {
        return v;
      }
    }
  }

  Linear term() {
    Linear v = power();
    for (;;) {
      if (eat('*')) {
        Linear r = power();
        if (!v.is_constant() && !r.is_constant()) fail("product is not affine in t");
        v = v.is_constant() ? Linear{v.b * r.a, v.b * r.b} : Linear{v.a * r.b, v.b * r.b};
      } else if (eat('/')) {
        Linear r = power();
        if (!r.is_constant()) fail("division by an expression in t");
        if (r.b.is_zero()) fail("division by zero");
        v = {v.a / r.b, v.b / r.b};
      } else {
        return v;
      }
    }
  }

  Linear power() {
    Linear v = unary();
    if (eat('^')) {
      skip();
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("expected integer exponent");
      int e = std::stoi(std::string(s_.substr(start, pos_ - start)));
      if (!v.is_constant() && e != 1) fail("power of t is not affine");
      Real r(1);
      for (int i = 0; i < e; ++i) r = r * v.b;
      if (v.is_constant()) v.b = r;
    }
    return v;
  }

  Linear unary() {
    if (eat('-')) {
      Linear v = unary();
      return {-v.a, -v.b};
    }
    if (eat('+')) return unary();
    return primary();
  }

  Linear primary() {
    skip();
    if (eat('(')) {
      Linear v = expr();
      if (!eat(')')) fail("expected ')'");
      return v;
    }
    if (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.')) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.')) ++pos_;
      return {Real(0), Real(parse_rational(s_.substr(start, pos_ - start)))};
    }
    if (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      std::string_view name = s_.substr(start, pos_ - start);
      if (name == "t") return {Real(1), Real(0)};
      if (name == "sqrt") {
        if (!eat('(')) fail("expected '(' after sqrt");
        Linear v = expr();
        if (!eat(')')) fail("expected ')'");
        if (!v.is_constant() || !v.b.is_rational()) fail("sqrt needs a rational constant argument");
        if (v.b.sign() < 0) fail("sqrt of a negative number");
        return {Real(0), Real::sqrt(v.b.to_rational())};
      }
      auto it = params_.find(name);
      if (it == params_.end()) fail("unknown parameter '" + std::string(name) + "'");
      return {Real(0), Real(it->second)};
    }
    fail("unexpected end of expression");
  }

  std::string_view s_;
  const Params& params_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/** @brief Parses an affine expression in t such as "sqrt(2*n/(n+1))*t" or "t + 2*eps". */
inline MonotoneMap parse_affine_map(std::string_view text, const Params& params = {},
                                    ExtendedReal lo = ExtendedReal::neg_inf(), ExtendedReal hi = ExtendedReal::pos_inf()) {
  detail::Linear v = detail::LinearParser(text, params).parse();
  if (v.a.sign() < 0) throw DomainError("map '" + std::string(text) + "' is decreasing");
  return MonotoneMap::affine(v.a, v.b, std::move(lo), std::move(hi));
}

/** @brief Evaluates a constant expression (no t). */
inline Real parse_constant(std::string_view text, const Params& params = {}) {
  detail::Linear v = detail::LinearParser(text, params).parse();
  if (!v.is_constant()) throw ParseError("expression '" + std::string(text) + "' depends on t");
  return v.b;
}

struct CatalogEntry {
  std::string id;
  std::string name;
  std::string source;
  std::string target;
  std::string tau;
  std::string sigma;
  std::vector<std::string> params;
  std::vector<std::string> constraints;  // "lhs < rhs" or "lhs <= rhs"
  std::string setting;
  std::string reference;
};

namespace detail {

inline constexpr std::string_view kCatalogAsset = R"json([
  {"id": "rips-cech-euclidean", "name": "Vietoris-Rips -> Cech (R^n)", "setting": "R^n",
   "source": "Vietoris-Rips", "target": "Cech", "tau": "sqrt(2*n/(n+1))*t", "sigma": "t",
   "params": ["n"], "constraints": ["1 <= n"],
   "reference": "Edelsbrunner-Harer, Computational Topology, proof of the Vietoris-Rips lemma"},
  {"id": "net-tree", "name": "Net-tree -> Cech (R^n)", "setting": "R^n",
   "source": "Net-tree", "target": "Cech", "tau": "t", "sigma": "(1+eps)^2*t",
   "params": ["eps"], "constraints": ["0 <= eps"],
   "reference": "Botnan-Spreemann, Approximating persistent homology in Euclidean space through collapses, Prop. 20"},
  {"id": "graph-induced", "name": "Graph induced complex -> Vietoris-Rips (R^n)", "setting": "R^n",
   "source": "Graph induced complex", "target": "Vietoris-Rips", "tau": "t + 2*eps", "sigma": "t",
   "params": ["eps"], "constraints": ["0 <= eps"],
   "reference": "Dey-Fan-Wang, Graph induced complex on point data, Prop. 2.8"},
  {"id": "sparsified-rips", "name": "Sparsified Vietoris-Rips -> Vietoris-Rips (R^n)", "setting": "R^n",
   "source": "Sparsified Vietoris-Rips", "target": "Vietoris-Rips", "tau": "t", "sigma": "(1+eps)*t",
   "params": ["eps"], "constraints": ["0 <= eps"],
   "reference": "Dey-Fan-Wang, Computing topological persistence for simplicial maps, Claim 6.1"},
  {"id": "rips-cech-metric", "name": "Vietoris-Rips -> Cech (arbitrary metric)", "setting": "metric space",
   "source": "Vietoris-Rips", "target": "Cech", "tau": "2*t", "sigma": "t",
   "params": [], "constraints": [],
   "reference": "standard inclusion of Cech and Vietoris-Rips complexes"},
  {"id": "relaxed-rips", "name": "Relaxed Vietoris-Rips -> Vietoris-Rips (arbitrary metric)", "setting": "metric space",
   "source": "Relaxed Vietoris-Rips", "target": "Vietoris-Rips", "tau": "t", "sigma": "(1/(1-2*eps))*t",
   "params": ["eps"], "constraints": ["0 <= eps", "eps < 1/2"],
   "reference": "Sheehy, Linear-size approximations to the Vietoris-Rips filtration, Lemma 4"},
  {"id": "sparse-weighted-rips", "name": "Sparse weighted Rips -> Vietoris-Rips (arbitrary metric)", "setting": "metric space",
   "source": "Sparse weighted Rips", "target": "Vietoris-Rips", "tau": "t",
   "sigma": "((1 + sqrt(1 + delta^2)*eps)/(1 - eps))*t",
   "params": ["eps", "delta"], "constraints": ["0 <= eps", "eps < 1", "0 <= delta"],
   "reference": "Buchet-Chazal-Oudot-Sheehy, Efficient and robust persistent homology for measures, Lemma 6.13"}
])json";

inline bool holds(const std::string& constraint, const Params& params) {
  for (std::string_view op : {"<=", "<"}) {
    auto at = constraint.find(op);
    if (at == std::string::npos) continue;
    Real lhs = parse_constant(std::string_view(constraint).substr(0, at), params);
    Real rhs = parse_constant(std::string_view(constraint).substr(at + op.size()), params);
    return op == "<=" ? lhs <= rhs : lhs < rhs;
  }
  throw ParseError("constraint '" + constraint + "' has no comparison");
}

}  // namespace detail

/** @brief The seven built-in approximation pairs, all on the window [0, inf). */
inline const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> entries = [] {
    std::vector<CatalogEntry> out;
    for (const auto& row : nlohmann::json::parse(detail::kCatalogAsset)) {
      out.push_back({row.at("id"), row.at("name"), row.at("source"), row.at("target"), row.at("tau"), row.at("sigma"),
                     row.at("params").get<std::vector<std::string>>(),
                     row.at("constraints").get<std::vector<std::string>>(), row.at("setting"), row.at("reference")});
    }
    return out;
  }();
  return entries;
}

/** @brief Looks up an entry by id or by exact name. */
inline const CatalogEntry& catalog_entry(std::string_view key) {
  for (const auto& e : catalog())
    if (e.id == key || e.name == key) return e;
  throw std::invalid_argument("unknown catalog entry '" + std::string(key) + "'");
}

/**
 * @brief Instantiates an entry; missing parameters default to 0 (eps, delta)
 * or 1 (n). Throws DomainError when a constraint fails or the pair is invalid.
 */
inline TranslationPair instantiate(const CatalogEntry& entry, Params params = {}) {
  for (const auto& p : entry.params)
    if (!params.count(p)) params[p] = p == "n" ? 1 : 0;
  for (const auto& c : entry.constraints)
    if (!detail::holds(c, params)) throw DomainError(entry.id + ": parameter constraint '" + c + "' violated");
  ExtendedReal lo(0), hi = ExtendedReal::pos_inf();
  TranslationPair pair{parse_affine_map(entry.tau, params, lo, hi), parse_affine_map(entry.sigma, params, lo, hi)};
  if (!pair.is_valid()) throw DomainError(entry.id + ": not a translation pair for these parameters");
  return pair;
}

/** @brief Chains rows along U_0 -> U_1 -> ... with compose_pairs, first row first. */
inline TranslationPair compose_rows(const std::vector<std::string>& ids, const Params& params) {
  if (ids.empty()) throw std::invalid_argument("compose_rows: no rows");
  TranslationPair acc = instantiate(catalog_entry(ids.front()), params);
  for (std::size_t i = 1; i < ids.size(); ++i) acc = compose_pairs(acc, instantiate(catalog_entry(ids[i]), params));
  return acc;
}

}  // namespace interleave
