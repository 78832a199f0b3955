#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "interleave/diagram.hpp"
#include "interleave/module.hpp"

namespace interleave {

/** @brief Partial injection between two diagrams, as (source index, target index) pairs. */
class Matching {
 public:
  Matching() = default;
  explicit Matching(std::vector<std::pair<std::size_t, std::size_t>> pairs) : pairs_(std::move(pairs)) {
    std::sort(pairs_.begin(), pairs_.end());
    if (!is_injective()) throw std::invalid_argument("matching is not the graph of an injective function");
  }

  const std::vector<std::pair<std::size_t, std::size_t>>& pairs() const { return pairs_; }
  std::size_t size() const { return pairs_.size(); }
  bool empty() const { return pairs_.empty(); }

  std::optional<std::size_t> target_of(std::size_t s) const {
    for (const auto& [a, b] : pairs_)
      if (a == s) return b;
    return std::nullopt;
  }
  std::optional<std::size_t> source_of(std::size_t t) const {
    for (const auto& [a, b] : pairs_)
      if (b == t) return a;
    return std::nullopt;
  }

  bool is_injective() const {
    std::vector<std::size_t> s, t;
    for (const auto& [a, b] : pairs_) {
      s.push_back(a);
      t.push_back(b);
    }
    std::sort(s.begin(), s.end());
    std::sort(t.begin(), t.end());
    return std::adjacent_find(s.begin(), s.end()) == s.end() && std::adjacent_find(t.begin(), t.end()) == t.end();
  }

  friend bool operator==(const Matching&, const Matching&) = default;

 private:
  std::vector<std::pair<std::size_t, std::size_t>> pairs_;
};

/** @brief Relational composite: first x, then y. */
inline Matching then(const Matching& x, const Matching& y) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (const auto& [a, b] : x.pairs())
    if (auto c = y.target_of(b)) out.emplace_back(a, *c);
  return Matching(std::move(out));
}

/** @brief Positions of the diagram's points in right-handed order. */
inline std::vector<std::size_t> order_right(const PersistenceDiagram& pd) {
  std::vector<std::size_t> idx(pd.size());
  for (std::size_t k = 0; k < idx.size(); ++k) idx[k] = k;
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return right_less(pd[a], pd[b]); });
  return idx;
}

/** @brief Positions of the diagram's points in left-handed order. */
inline std::vector<std::size_t> order_left(const PersistenceDiagram& pd) {
  std::vector<std::size_t> idx(pd.size());
  for (std::size_t k = 0; k < idx.size(); ++k) idx[k] = k;
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return left_less(pd[a], pd[b]); });
  return idx;
}

class MatchingError : public DomainError {
 public:
  using DomainError::DomainError;
};

/**
 * @brief Matching of a monomorphism V -> W: each death class of V goes,
 * in right-handed order, onto the smallest points of the same class of W.
 */
inline Matching match_mono(const PersistenceDiagram& v, const PersistenceDiagram& w) {
  std::map<DecoratedValue, std::vector<std::size_t>> vs, ws;
  for (std::size_t k : order_right(v)) vs[v[k].d].push_back(k);
  for (std::size_t k : order_right(w)) ws[w[k].d].push_back(k);
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (const auto& [d, src] : vs) {
    const auto& dst = ws[d];
    if (src.size() > dst.size())
      throw MatchingError("no monomorphism: " + std::to_string(src.size()) + " bars die at " + d.str() +
                          " in the source, " + std::to_string(dst.size()) + " in the target");
    for (std::size_t k = 0; k < src.size(); ++k) out.emplace_back(src[k], dst[k]);
  }
  return Matching(std::move(out));
}

/**
 * @brief Matching of an epimorphism V -> W: each birth class of W is hit, in
 * left-handed order, from the smallest points of the same class of V.
 */
inline Matching match_epi(const PersistenceDiagram& v, const PersistenceDiagram& w) {
  std::map<DecoratedValue, std::vector<std::size_t>> vs, ws;
  for (std::size_t k : order_left(v)) vs[v[k].b].push_back(k);
  for (std::size_t k : order_left(w)) ws[w[k].b].push_back(k);
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (const auto& [b, dst] : ws) {
    const auto& src = vs[b];
    if (dst.size() > src.size())
      throw MatchingError("no epimorphism: " + std::to_string(dst.size()) + " bars born at " + b.str() +
                          " in the target, " + std::to_string(src.size()) + " in the source");
    for (std::size_t k = 0; k < dst.size(); ++k) out.emplace_back(src[k], dst[k]);
  }
  return Matching(std::move(out));
}

/** @brief Diagrams of V, im phi and W with the induced matching PD(V) -> PD(W). */
struct InducedMatching {
  PersistenceDiagram source;
  PersistenceDiagram image;
  PersistenceDiagram target;
  Matching matching;
};

/** @brief Factor phi through its image and compose the epi and mono matchings. */
inline InducedMatching induced_matching(const ModuleMorphism& phi) {
  InducedMatching out;
  out.source = decompose(phi.source());
  out.image = decompose(image(phi));
  out.target = decompose(phi.target());
  out.matching = then(match_epi(out.source, out.image), match_mono(out.image, out.target));
  return out;
}

// ------------------------------------------------------------ verification

struct GimCheck {
  std::string name;
  bool applies = false;  // hypothesis held
  bool ok = true;
  std::vector<std::string> witnesses;
};

struct GimReport {
  GimCheck cokernel;  // coker trivial: lower bound on every pair, image covers nontrivial target points
  GimCheck kernel;    // ker trivial: upper bound on every pair, domain covers nontrivial source points
  bool ok() const { return cokernel.ok && kernel.ok; }
};

/**
 * @brief Checks the generalized induced matching statement for a given
 * matching and hypotheses. Only the parts whose hypothesis holds are checked.
 */
inline GimReport verify_gim(const InducedMatching& x, const MonotoneMap& sigma, bool coker_trivial, bool ker_trivial) {
  GimReport rep;
  rep.cokernel.name = "cokernel";
  rep.kernel.name = "kernel";
  rep.cokernel.applies = coker_trivial;
  rep.kernel.applies = ker_trivial;
  auto fail = [](GimCheck& c, std::string w) {
    c.ok = false;
    c.witnesses.push_back(std::move(w));
  };
  for (const auto& [s, t] : x.matching.pairs()) {
    DecoratedInterval J = x.source[s].interval(), Jp = x.target[t].interval();
    if (coker_trivial && !bounds_below(J, convex_image(sigma, Jp)))
      fail(rep.cokernel, x.source[s].str() + " -> " + x.target[t].str() + ": source does not bound sigma(target) below");
    if (ker_trivial) {
      auto pre = preimage_interval(sigma, J);
      if (pre && !bounds_above(*pre, Jp))
        fail(rep.kernel, x.source[s].str() + " -> " + x.target[t].str() + ": target does not bound sigma^-1(source) above");
    }
  }
  if (coker_trivial)
    for (std::size_t t = 0; t < x.target.size(); ++t)
      if (!sigma_trivial_interval(sigma, x.target[t].interval()) && !x.matching.source_of(t))
        fail(rep.cokernel, x.target[t].str() + ": sigma-nontrivial target point unmatched");
  if (ker_trivial)
    for (std::size_t s = 0; s < x.source.size(); ++s)
      if (!sigma_trivial_interval(sigma, x.source[s].interval()) && !x.matching.target_of(s))
        fail(rep.kernel, x.source[s].str() + ": sigma-nontrivial source point unmatched");
  return rep;
}

/** @brief Computes X_phi and the triviality hypotheses, then verifies. */
inline GimReport verify_gim(const ModuleMorphism& phi, const MonotoneMap& sigma) {
  return verify_gim(induced_matching(phi), sigma, is_sigma_trivial(cokernel(phi), sigma),
                    is_sigma_trivial(kernel(phi), sigma));
}

}  // namespace interleave
