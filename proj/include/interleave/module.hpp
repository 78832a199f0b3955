#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "interleave/diagram.hpp"
#include "interleave/gf.hpp"
#include "interleave/monotone_map.hpp"

namespace interleave {

/**
 * @brief Block boundaries of a finite module: strictly increasing decorated
 * values, never +inf. Block i is <g_i, g_{i+1}>, the last block runs to +inf.
 */
using Grid = std::vector<DecoratedValue>;

namespace detail {

inline void check_grid(const Grid& g) {
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (g[i].is_pos_inf()) throw std::invalid_argument("module grid contains +inf");
    if (i && !(g[i - 1] < g[i])) throw std::invalid_argument("module grid must increase strictly");
  }
}

inline Grid merge_grids(std::initializer_list<const Grid*> gs) {
  Grid out;
  for (const Grid* g : gs) out.insert(out.end(), g->begin(), g->end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Block boundaries of V(f) for a module on grid g: the preimage cuts of g.
inline Grid pullback_grid(const Grid& g, const MonotoneMap& f) {
  Grid out;
  for (const auto& e : g) {
    DecoratedValue s = f.star(e);
    if (!s.is_pos_inf()) out.push_back(std::move(s));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace detail

/** @brief A point strictly inside block i of g. */
inline Real block_representative(const Grid& g, std::size_t i) {
  const DecoratedValue& e = g.at(i);
  if (e.is_neg_inf()) return g.size() > 1 ? g[1].value() - Real(1) : Real(0);
  if (e.decoration() == Decoration::Minus) return e.value();
  if (i + 1 < g.size()) return (e.value() + g[i + 1].value()) / Real(2);
  return e.value() + Real(1);
}

/** @brief Index of the block containing t, or nullopt below the grid. */
inline std::optional<std::size_t> block_index(const Grid& g, const Real& t) {
  auto it = std::upper_bound(g.begin(), g.end(), DecoratedValue::minus(t));
  if (it == g.begin()) return std::nullopt;
  return static_cast<std::size_t>(it - g.begin()) - 1;
}

/** @brief Pointwise finite-dimensional module, constant on each grid block, zero below the grid. */
class FiniteModule {
 public:
  explicit FiniteModule(Field f = Field(2)) : field_(f) {}

  FiniteModule(Grid grid, std::vector<std::size_t> dims, std::vector<Matrix> maps, Field f = Field(2))
      : grid_(std::move(grid)), dims_(std::move(dims)), maps_(std::move(maps)), field_(f) {
    detail::check_grid(grid_);
    if (dims_.size() != grid_.size()) throw std::invalid_argument("module: one dimension per grid block");
    if (maps_.size() + 1 != std::max<std::size_t>(grid_.size(), 1))
      throw std::invalid_argument("module: one map between consecutive blocks");
    for (std::size_t i = 0; i < maps_.size(); ++i) {
      if (maps_[i].rows() != dims_[i + 1] || maps_[i].cols() != dims_[i])
        throw std::invalid_argument("module: map " + std::to_string(i) + " has shape " + maps_[i].shape());
      if (!(maps_[i].field() == field_)) throw std::invalid_argument("module: mixed fields");
    }
  }

  /** @brief Grid of plain real points t_i, read as t_i^-. */
  static FiniteModule on_points(const std::vector<Real>& pts, std::vector<std::size_t> dims, std::vector<Matrix> maps,
                                Field f = Field(2)) {
    Grid g;
    for (const auto& t : pts) g.push_back(DecoratedValue::minus(t));
    return FiniteModule(std::move(g), std::move(dims), std::move(maps), f);
  }

  const Grid& grid() const { return grid_; }
  const std::vector<std::size_t>& dims() const { return dims_; }
  const std::vector<Matrix>& maps() const { return maps_; }
  const Field& field() const { return field_; }
  std::size_t size() const { return grid_.size(); }
  std::size_t dim(std::size_t i) const { return dims_.at(i); }

  Real representative(std::size_t i) const { return block_representative(grid_, i); }
  std::optional<std::size_t> block_at(const Real& t) const { return block_index(grid_, t); }
  std::size_t dim_at(const Real& t) const {
    auto b = block_at(t);
    return b ? dims_[*b] : 0;
  }

  /** @brief A_{j-1} ... A_i, identity when i == j. */
  Matrix transition_blocks(std::size_t i, std::size_t j) const {
    if (j < i) throw std::invalid_argument("transition backwards in the grid");
    Matrix m = Matrix::identity(dims_[i], field_);
    for (std::size_t k = i; k < j; ++k) m = maps_[k] * m;
    return m;
  }

  /** @brief Structure map V(s <= t). */
  Matrix transition(const Real& s, const Real& t) const {
    if (t < s) throw std::invalid_argument("transition from " + s.str() + " to smaller " + t.str());
    auto bs = block_at(s), bt = block_at(t);
    if (!bt) return Matrix(0, 0, field_);
    if (!bs) return Matrix(dims_[*bt], 0, field_);
    return transition_blocks(*bs, *bt);
  }

  bool is_zero() const {
    return std::all_of(dims_.begin(), dims_.end(), [](std::size_t d) { return d == 0; });
  }

  /** @brief Same module on a finer grid (finer must contain the grid). */
  FiniteModule refine(const Grid& finer) const;

  friend bool operator==(const FiniteModule&, const FiniteModule&) = default;

  std::string str() const {
    std::string s = "module over GF(" + std::to_string(field_.characteristic()) + "):";
    for (std::size_t i = 0; i < grid_.size(); ++i) {
      s += " " + grid_[i].str() + ":" + std::to_string(dims_[i]);
      if (i < maps_.size()) s += " " + maps_[i].str();
    }
    return s;
  }

 private:
  Grid grid_;
  std::vector<std::size_t> dims_;
  std::vector<Matrix> maps_;
  Field field_;
};

/**
 * @brief Builds a module on `grid` whose block i is dim(r_i) with maps
 * trans(r_i, r_{i+1}), r_i the block representatives.
 */
inline FiniteModule sample_module(Grid grid, const std::function<std::size_t(const Real&)>& dim,
                                  const std::function<Matrix(const Real&, const Real&)>& trans, Field f) {
  std::vector<std::size_t> dims;
  std::vector<Matrix> maps;
  std::vector<Real> reps;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    reps.push_back(block_representative(grid, i));
    dims.push_back(dim(reps.back()));
  }
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    Matrix m = trans(reps[i], reps[i + 1]);
    // modules that vanish below their grid hand back 0x0 placeholders
    if (m.rows() != dims[i + 1] || m.cols() != dims[i]) {
      if (!m.empty()) throw std::logic_error("sampled map has shape " + m.shape());
      m = Matrix(dims[i + 1], dims[i], f);
    }
    maps.push_back(std::move(m));
  }
  return FiniteModule(std::move(grid), std::move(dims), std::move(maps), f);
}

inline FiniteModule FiniteModule::refine(const Grid& finer) const {
  for (const auto& g : grid_)
    if (!std::binary_search(finer.begin(), finer.end(), g))
      throw std::invalid_argument("refine: grid point " + g.str() + " missing from the finer grid");
  return sample_module(
      finer, [&](const Real& t) { return dim_at(t); }, [&](const Real& s, const Real& t) { return transition(s, t); },
      field_);
}

/** @brief Natural transformation between modules on one grid; squares are checked on construction. */
class ModuleMorphism {
 public:
  ModuleMorphism(FiniteModule source, FiniteModule target, std::vector<Matrix> components)
      : source_(std::move(source)), target_(std::move(target)), comps_(std::move(components)) {
    if (source_.grid() != target_.grid()) throw std::invalid_argument("morphism: source and target grids differ");
    if (!(source_.field() == target_.field())) throw std::invalid_argument("morphism: mixed fields");
    if (comps_.size() != source_.size()) throw std::invalid_argument("morphism: one component per block");
    for (std::size_t i = 0; i < comps_.size(); ++i)
      if (comps_[i].rows() != target_.dim(i) || comps_[i].cols() != source_.dim(i))
        throw std::invalid_argument("morphism: component " + std::to_string(i) + " has shape " + comps_[i].shape());
    for (std::size_t i = 0; i + 1 < comps_.size(); ++i)
      if (!(comps_[i + 1] * source_.maps()[i] == target_.maps()[i] * comps_[i]))
        throw std::invalid_argument("morphism: square " + std::to_string(i) + " does not commute");
  }

  const FiniteModule& source() const { return source_; }
  const FiniteModule& target() const { return target_; }
  const std::vector<Matrix>& components() const { return comps_; }
  const Grid& grid() const { return source_.grid(); }

  Matrix component_at(const Real& t) const {
    auto b = source_.block_at(t);
    if (!b) return Matrix(0, 0, source_.field());
    return comps_[*b];
  }

  bool is_zero() const {
    return std::all_of(comps_.begin(), comps_.end(), [](const Matrix& m) { return m.is_zero(); });
  }

  ModuleMorphism refine(const Grid& finer) const {
    std::vector<Matrix> comps;
    for (std::size_t i = 0; i < finer.size(); ++i) {
      auto b = source_.block_at(block_representative(finer, i));
      comps.push_back(b ? comps_[*b] : Matrix(0, 0, source_.field()));
    }
    return ModuleMorphism(source_.refine(finer), target_.refine(finer), std::move(comps));
  }

 private:
  FiniteModule source_;
  FiniteModule target_;
  std::vector<Matrix> comps_;
};

/** @brief Builds a morphism on `grid` with components comp(r_i); source and target are refined. */
inline ModuleMorphism sample_morphism(const FiniteModule& source, const FiniteModule& target, const Grid& grid,
                                      const std::function<Matrix(const Real&)>& comp) {
  FiniteModule s = source.grid() == grid ? source : source.refine(grid);
  FiniteModule t = target.grid() == grid ? target : target.refine(grid);
  std::vector<Matrix> comps;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    Matrix m = comp(block_representative(grid, i));
    if (m.rows() != t.dim(i) || m.cols() != s.dim(i)) {
      if (!m.empty()) throw std::logic_error("sampled component has shape " + m.shape());
      m = Matrix(t.dim(i), s.dim(i), s.field());
    }
    comps.push_back(std::move(m));
  }
  return ModuleMorphism(std::move(s), std::move(t), std::move(comps));
}

inline ModuleMorphism identity_morphism(const FiniteModule& V) {
  std::vector<Matrix> comps;
  for (std::size_t d : V.dims()) comps.push_back(Matrix::identity(d, V.field()));
  return ModuleMorphism(V, V, std::move(comps));
}

inline ModuleMorphism zero_morphism(const FiniteModule& V, const FiniteModule& W) {
  Grid g = detail::merge_grids({&V.grid(), &W.grid()});
  return sample_morphism(V, W, g, [&](const Real& t) { return Matrix(W.dim_at(t), V.dim_at(t), V.field()); });
}

/** @brief psi o phi; phi's target and psi's source must agree as modules. */
inline ModuleMorphism compose_morphisms(const ModuleMorphism& psi, const ModuleMorphism& phi) {
  Grid g = detail::merge_grids({&phi.grid(), &psi.grid()});
  ModuleMorphism a = phi.refine(g), b = psi.refine(g);
  if (!(a.target() == b.source())) throw std::invalid_argument("compose_morphisms: modules do not match");
  std::vector<Matrix> comps;
  for (std::size_t i = 0; i < g.size(); ++i) comps.push_back(b.components()[i] * a.components()[i]);
  return ModuleMorphism(a.source(), b.target(), std::move(comps));
}

/** @brief I_J on the given grid; J's endpoints must be grid points (d may be +inf). */
inline FiniteModule interval_module(const DecoratedInterval& J, const Grid& grid, Field f = Field(2)) {
  detail::check_grid(grid);
  auto on_grid = [&](const DecoratedValue& e) { return std::binary_search(grid.begin(), grid.end(), e); };
  if (!on_grid(J.b())) throw std::invalid_argument("interval_module: " + J.b().str() + " is not a grid point");
  if (!J.d().is_pos_inf() && !on_grid(J.d()))
    throw std::invalid_argument("interval_module: " + J.d().str() + " is not a grid point");
  std::vector<std::size_t> dims;
  for (const auto& g : grid) dims.push_back(J.b() <= g && g < J.d() ? 1 : 0);
  std::vector<Matrix> maps;
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    Matrix m(dims[i + 1], dims[i], f);
    if (dims[i] && dims[i + 1]) m(0, 0) = 1;
    maps.push_back(std::move(m));
  }
  return FiniteModule(grid, std::move(dims), std::move(maps), f);
}

inline FiniteModule interval_module(const DecoratedInterval& J, Field f = Field(2)) {
  Grid g{J.b()};
  if (!J.d().is_pos_inf()) g.push_back(J.d());
  return interval_module(J, g, f);
}

inline FiniteModule direct_sum(const std::vector<FiniteModule>& parts, Field f = Field(2)) {
  if (parts.empty()) return FiniteModule(f);
  f = parts.front().field();
  Grid g;
  for (const auto& p : parts) g.insert(g.end(), p.grid().begin(), p.grid().end());
  std::sort(g.begin(), g.end());
  g.erase(std::unique(g.begin(), g.end()), g.end());
  std::vector<FiniteModule> fine;
  for (const auto& p : parts) fine.push_back(p.refine(g));
  std::vector<std::size_t> dims(g.size(), 0);
  std::vector<Matrix> maps(g.size() ? g.size() - 1 : 0, Matrix(0, 0, f));
  for (const auto& p : fine) {
    for (std::size_t i = 0; i < g.size(); ++i) dims[i] += p.dim(i);
    for (std::size_t i = 0; i + 1 < g.size(); ++i) maps[i] = block_diag(maps[i], p.maps()[i]);
  }
  return FiniteModule(std::move(g), std::move(dims), std::move(maps), f);
}

/** @brief phi (+) psi, block-diagonal on the union grid. */
inline ModuleMorphism direct_sum(const ModuleMorphism& a, const ModuleMorphism& b) {
  Grid g = detail::merge_grids({&a.grid(), &b.grid()});
  ModuleMorphism x = a.refine(g), y = b.refine(g);
  std::vector<Matrix> comps;
  for (std::size_t i = 0; i < g.size(); ++i) comps.push_back(block_diag(x.components()[i], y.components()[i]));
  return ModuleMorphism(direct_sum({x.source(), y.source()}), direct_sum({x.target(), y.target()}), std::move(comps));
}

/**
 * @brief Interval decomposition by a left-to-right sweep.
 *
 * Keeps a basis of V_i labelled by birth block, oldest first. Pushing it
 * through A_i and reducing against older images kills exactly the columns
 * that become dependent (the younger dies); a complement of the survivors is
 * born at i+1. Bars come out as [g_birth, g_death).
 */
inline PersistenceDiagram decompose(const FiniteModule& V) {
  PersistenceDiagram pd;
  const Grid& g = V.grid();
  if (g.empty()) return pd;
  const Field& f = V.field();
  Matrix basis = Matrix::identity(V.dim(0), f);
  std::vector<std::size_t> birth(V.dim(0), 0);

  for (std::size_t i = 0; i + 1 < g.size(); ++i) {
    Matrix y = V.maps()[i] * basis;
    const std::size_t n = y.rows();
    std::vector<std::vector<Field::Elem>> kept;
    std::vector<std::size_t> pivot_row, kept_birth;
    for (std::size_t j = 0; j < y.cols(); ++j) {
      std::vector<Field::Elem> v(n);
      for (std::size_t r = 0; r < n; ++r) v[r] = y(r, j);
      for (std::size_t k = 0; k < kept.size(); ++k) {
        Field::Elem c = v[pivot_row[k]];
        if (!c) continue;
        c = f.mul(c, f.inv(kept[k][pivot_row[k]]));
        for (std::size_t r = 0; r < n; ++r)
          if (kept[k][r]) v[r] = f.sub(v[r], f.mul(c, kept[k][r]));
      }
      auto nz = std::find_if(v.begin(), v.end(), [](Field::Elem x) { return x != 0; });
      if (nz == v.end()) {
        pd.add(g[birth[j]], g[i + 1]);
      } else {
        pivot_row.push_back(static_cast<std::size_t>(nz - v.begin()));
        kept.push_back(std::move(v));
        kept_birth.push_back(birth[j]);
      }
    }
    Matrix k(n, kept.size(), f);
    for (std::size_t c = 0; c < kept.size(); ++c)
      for (std::size_t r = 0; r < n; ++r) k(r, c) = kept[c][r];
    Matrix extra = complement_basis(k);
    basis = hstack(k, extra);
    birth = std::move(kept_birth);
    birth.resize(basis.cols(), i + 1);
  }
  for (std::size_t b : birth) pd.add(g[b], DecoratedValue::pos_inf());
  return pd;
}

// ---------------------------------------------------------------- shifts

/** @brief V(f): t -> V_{f(t)}. */
inline FiniteModule shift_module(const FiniteModule& V, const MonotoneMap& f) {
  return sample_module(
      detail::pullback_grid(V.grid(), f), [&](const Real& t) { return V.dim_at(f.at(t)); },
      [&](const Real& s, const Real& t) { return V.transition(f.at(s), f.at(t)); }, V.field());
}

/** @brief phi(f): V(f) -> W(f). */
inline ModuleMorphism shift_morphism(const ModuleMorphism& phi, const MonotoneMap& f) {
  Grid g = detail::pullback_grid(phi.grid(), f);
  return sample_morphism(shift_module(phi.source(), f), shift_module(phi.target(), f), g,
                         [&](const Real& t) { return phi.component_at(f.at(t)); });
}

/** @brief V(alpha) -> V(beta) by structure maps; needs alpha <= beta pointwise. */
inline ModuleMorphism transition_morphism(const FiniteModule& V, const MonotoneMap& alpha, const MonotoneMap& beta) {
  Grid ga = detail::pullback_grid(V.grid(), alpha), gb = detail::pullback_grid(V.grid(), beta);
  Grid g = detail::merge_grids({&ga, &gb});
  FiniteModule src = shift_module(V, alpha), dst = shift_module(V, beta);
  return sample_morphism(src, dst, g, [&](const Real& t) { return V.transition(alpha.at(t), beta.at(t)); });
}

/** @brief phi_{V,sigma}: V -> V(sigma). */
inline ModuleMorphism canonical_morphism(const FiniteModule& V, const MonotoneMap& sigma) {
  return transition_morphism(V, MonotoneMap::identity(), sigma);
}

inline bool is_sigma_trivial(const FiniteModule& V, const MonotoneMap& sigma) {
  return canonical_morphism(V, sigma).is_zero();
}

// ---------------------------------------------------- sub and quotient modules

struct Submodule {
  FiniteModule module;
  ModuleMorphism inclusion;
};

struct Quotient {
  FiniteModule module;
  ModuleMorphism projection;
};

/** @brief Submodule spanned blockwise by the independent columns of bases[i]; must be invariant. */
inline Submodule submodule(const FiniteModule& M, const std::vector<Matrix>& bases) {
  std::vector<std::size_t> dims;
  for (const auto& b : bases) dims.push_back(b.cols());
  std::vector<Matrix> maps;
  for (std::size_t i = 0; i + 1 < M.size(); ++i) {
    auto x = solve(bases[i + 1], M.maps()[i] * bases[i]);
    if (!x) throw std::logic_error("submodule: subspaces are not invariant at block " + std::to_string(i));
    maps.push_back(std::move(*x));
  }
  FiniteModule S(M.grid(), std::move(dims), std::move(maps), M.field());
  return {S, ModuleMorphism(S, M, bases)};
}

/** @brief M / S for an invariant family of subspaces S_i (column bases). */
inline Quotient quotient(const FiniteModule& M, const std::vector<Matrix>& bases) {
  std::vector<Matrix> comp, proj;
  for (std::size_t i = 0; i < M.size(); ++i) {
    comp.push_back(complement_basis(bases[i]));
    Matrix t = hstack(bases[i], comp.back());
    proj.push_back(inverse(t).row_range(bases[i].cols(), M.dim(i)));
  }
  std::vector<std::size_t> dims;
  for (const auto& c : comp) dims.push_back(c.cols());
  std::vector<Matrix> maps;
  for (std::size_t i = 0; i + 1 < M.size(); ++i) maps.push_back(proj[i + 1] * M.maps()[i] * comp[i]);
  FiniteModule Q(M.grid(), std::move(dims), std::move(maps), M.field());
  return {Q, ModuleMorphism(M, Q, std::move(proj))};
}

inline Submodule kernel_of(const ModuleMorphism& phi) {
  std::vector<Matrix> bases;
  for (const auto& c : phi.components()) bases.push_back(nullspace(c));
  return submodule(phi.source(), bases);
}

inline Submodule image_of(const ModuleMorphism& phi) {
  std::vector<Matrix> bases;
  for (const auto& c : phi.components()) bases.push_back(column_basis(c));
  return submodule(phi.target(), bases);
}

inline Quotient cokernel_of(const ModuleMorphism& phi) {
  std::vector<Matrix> bases;
  for (const auto& c : phi.components()) bases.push_back(column_basis(c));
  return quotient(phi.target(), bases);
}

inline FiniteModule kernel(const ModuleMorphism& phi) { return kernel_of(phi).module; }
inline FiniteModule image(const ModuleMorphism& phi) { return image_of(phi).module; }
inline FiniteModule cokernel(const ModuleMorphism& phi) { return cokernel_of(phi).module; }

/**
 * @brief V^sigma_t = union of im V(s, t) over sigma(s) <= t, as a submodule
 * of V refined to where the union changes.
 */
inline Submodule submodule_V_sigma_of(const FiniteModule& V, const MonotoneMap& sigma) {
  Grid ups;
  for (const auto& g : V.grid()) {
    DecoratedValue u = sigma.up(g);
    if (!u.is_pos_inf()) ups.push_back(std::move(u));
  }
  std::sort(ups.begin(), ups.end());
  Grid grid = detail::merge_grids({&V.grid(), &ups});
  FiniteModule R = V.refine(grid);
  std::vector<Matrix> bases;
  for (std::size_t j = 0; j < grid.size(); ++j) {
    Real t = R.representative(j);
    auto bt = V.block_at(t);
    // s ranges over the down-set (-inf, star(sigma, t+)>; take the last V-block meeting it
    DecoratedValue e = sigma.star(DecoratedValue::plus(t));
    auto it = std::lower_bound(V.grid().begin(), V.grid().end(), e);
    if (!bt || it == V.grid().begin()) {
      bases.emplace_back(R.dim(j), 0, V.field());
      continue;
    }
    std::size_t k = static_cast<std::size_t>(it - V.grid().begin()) - 1;
    if (k > *bt) throw DomainError("V^sigma: sigma is not a translation map near " + t.str());
    bases.push_back(column_basis(V.transition_blocks(k, *bt)));
  }
  return submodule(R, bases);
}

inline FiniteModule submodule_V_sigma(const FiniteModule& V, const MonotoneMap& sigma) {
  return submodule_V_sigma_of(V, sigma).module;
}

/** @brief V / ker phi_{V,sigma}. */
inline FiniteModule quotient_by_sigma_kernel(const FiniteModule& V, const MonotoneMap& sigma) {
  ModuleMorphism phi = canonical_morphism(V, sigma);
  Submodule k = kernel_of(phi);
  return quotient(phi.source(), k.inclusion.components()).module;
}

// ---------------------------------------------------------- interleavings

/** @brief phi: V -> W(tau) and psi: W -> V(sigma). */
struct Interleaving {
  TranslationPair pair;
  ModuleMorphism phi;
  ModuleMorphism psi;
};

struct InterleavingCheck {
  bool ok = true;
  std::string failure;
  explicit operator bool() const { return ok; }
};

namespace detail {

// One triangle of the interleaving: psi(tau)_t o phi_t == V(t, (sigma o tau)(t)) for every t.
inline InterleavingCheck check_triangle(const FiniteModule& V, const FiniteModule& W, const MonotoneMap& tau,
                                        const MonotoneMap& sigma, const ModuleMorphism& phi, const ModuleMorphism& psi,
                                        const std::string& label) {
  MonotoneMap st = compose(sigma, tau);
  Grid a = pullback_grid(psi.grid(), tau), b = pullback_grid(V.grid(), st), c = pullback_grid(W.grid(), tau);
  Grid g = merge_grids({&V.grid(), &phi.grid(), &a, &b, &c});
  auto fail = [&](const Real& t, const std::string& what) {
    return InterleavingCheck{false, label + " at t = " + t.str() + ": " + what};
  };
  std::optional<Real> prev;
  for (std::size_t i = 0; i < g.size(); ++i) {
    Real t = block_representative(g, i);
    Real u = tau.at(t), v = st.at(t);
    Matrix f = phi.component_at(t), h = psi.component_at(u);
    std::size_t dv = V.dim_at(t), dw = W.dim_at(u), dvv = V.dim_at(v);
    if (phi.source().dim_at(t) != dv) return fail(t, "source of phi is not V");
    if (f.empty()) f = Matrix(dw, dv, V.field());
    if (h.empty()) h = Matrix(dvv, dw, V.field());
    if (f.rows() != dw || f.cols() != dv) return fail(t, "phi component has shape " + f.shape());
    if (h.rows() != dvv || h.cols() != dw) return fail(t, "psi component has shape " + h.shape());
    Matrix lhs = h * f, rhs = V.transition(t, v);
    if (rhs.empty()) rhs = Matrix(dvv, dv, V.field());
    if (!(lhs == rhs)) return fail(t, "composite " + lhs.str() + " != structure map " + rhs.str());
    if (prev && !(phi.source().transition(*prev, t) == V.transition(*prev, t)))
      return fail(t, "source of phi has different structure maps");
    prev = t;
  }
  return {};
}

}  // namespace detail

/** @brief Verifies both interleaving triangles on every block of the combined critical grid. */
inline InterleavingCheck check_interleaving(const FiniteModule& V, const FiniteModule& W, const TranslationPair& pair,
                                            const ModuleMorphism& phi, const ModuleMorphism& psi) {
  if (auto r = detail::check_triangle(V, W, pair.tau, pair.sigma, phi, psi, "psi(tau) o phi"); !r) return r;
  return detail::check_triangle(W, V, pair.sigma, pair.tau, psi, phi, "phi(sigma) o psi");
}

inline InterleavingCheck check_interleaving(const FiniteModule& V, const FiniteModule& W, const Interleaving& I) {
  return check_interleaving(V, W, I.pair, I.phi, I.psi);
}

// ---------------------------------------------------------------- stitching

/** @brief t0 <= (sigma' o tau)(t0). */
inline bool is_stitch_point(const TranslationPair& p1, const TranslationPair& p2, const Real& t0) {
  return t0 <= p2.sigma.at(p1.tau.at(t0));
}

/**
 * @brief (eta, rho) for the stitched module U and W.
 *
 * eta: tau up to t0, constant tau(t0) until s0 = sigma'(tau(t0)), then tau'.
 * rho: sigma while sigma < t0, constant s0 until tau(t0), then sigma'.
 */
inline TranslationPair stitched_pair(const TranslationPair& p1, const TranslationPair& p2, const Real& t0) {
  if (!is_stitch_point(p1, p2, t0)) throw DomainError(t0.str() + " is not a stitch point");
  Real u0 = p1.tau.at(t0), s0 = p2.sigma.at(u0);
  ExtendedReal lo = std::max({p1.tau.window_lo(), p1.sigma.window_lo(), p2.tau.window_lo(), p2.sigma.window_lo()});
  ExtendedReal hi = std::min({p1.tau.window_hi(), p1.sigma.window_hi(), p2.tau.window_hi(), p2.sigma.window_hi()});
  MonotoneMap hold = MonotoneMap::constant(u0);
  // when s0 == t0 the frozen stretch is empty and U_{t0} already belongs to V'
  std::vector<DecoratedValue> eta_cuts = t0 < s0
                                             ? std::vector<DecoratedValue>{DecoratedValue::plus(t0), DecoratedValue::minus(s0)}
                                             : std::vector<DecoratedValue>{DecoratedValue::minus(t0), DecoratedValue::minus(t0)};
  MonotoneMap eta = MonotoneMap::splice(eta_cuts, {p1.tau, hold, p2.tau}, lo, hi);
  MonotoneMap rho = MonotoneMap::splice({p1.sigma.star(DecoratedValue::minus(t0)), DecoratedValue::minus(u0)},
                                        {p1.sigma, MonotoneMap::constant(s0), p2.sigma}, lo, hi);
  return {std::move(eta), std::move(rho)};
}

struct Stitched {
  FiniteModule module;
  Interleaving interleaving;  // between the stitched module and W
};

/**
 * @brief U(W; V, t0, V'): V before t0, V_{t0} frozen until s0 = sigma'(tau(t0)),
 * V' from s0 on, joined by psi'_{tau(t0)} o phi_{t0}.
 *
 * `first` interleaves V with W, `second` interleaves V' with W.
 */
inline Stitched stitch_modules(const FiniteModule& W, const FiniteModule& V, const Real& t0, const FiniteModule& Vp,
                               const Interleaving& first, const Interleaving& second, bool validate = true) {
  const TranslationPair &p1 = first.pair, &p2 = second.pair;
  if (!is_stitch_point(p1, p2, t0)) throw DomainError(t0.str() + " is not a stitch point");
  if (validate) {
    if (auto r = check_interleaving(V, W, first); !r) throw DomainError("first interleaving invalid: " + r.failure);
    if (auto r = check_interleaving(Vp, W, second); !r) throw DomainError("second interleaving invalid: " + r.failure);
  }
  const Field& f = V.field();
  Real u0 = p1.tau.at(t0), s0 = p2.sigma.at(u0);
  Matrix seam = second.psi.component_at(u0) * first.phi.component_at(t0);
  if (seam.empty()) seam = Matrix(Vp.dim_at(s0), V.dim_at(t0), f);

  enum Region { A, B, C };
  auto region = [&](const Real& t) { return t < t0 ? A : (t < s0 ? B : C); };
  auto pad = [&](Matrix m, std::size_t rows, std::size_t cols) {
    return m.rows() == rows && m.cols() == cols ? m : Matrix(rows, cols, f);
  };
  auto dim = [&](const Real& t) {
    switch (region(t)) {
      case A: return V.dim_at(t);
      case B: return V.dim_at(t0);
      default: return Vp.dim_at(t);
    }
  };
  auto trans = [&](const Real& s, const Real& t) -> Matrix {
    Region rs = region(s), rt = region(t);
    if (rt == A) return pad(V.transition(s, t), dim(t), dim(s));
    if (rt == B) return rs == A ? pad(V.transition(s, t0), dim(t), dim(s)) : Matrix::identity(dim(s), f);
    if (rs == C) return pad(Vp.transition(s, t), dim(t), dim(s));
    Matrix into = pad(V.transition(rs == A ? s : t0, t0), V.dim_at(t0), dim(s));
    return pad(Vp.transition(s0, t), dim(t), Vp.dim_at(s0)) * seam * into;
  };

  Grid grid;
  for (const auto& g : V.grid())
    if (g < DecoratedValue::minus(t0)) grid.push_back(g);
  grid.push_back(DecoratedValue::minus(t0));
  if (t0 < s0) grid.push_back(DecoratedValue::minus(s0));
  for (const auto& g : Vp.grid())
    if (g > DecoratedValue::minus(s0)) grid.push_back(g);
  FiniteModule U = sample_module(grid, dim, trans, f);

  TranslationPair er = stitched_pair(p1, p2, t0);
  const MonotoneMap &eta = er.tau, &rho = er.sigma;

  Grid wg = detail::pullback_grid(W.grid(), eta);
  Grid phi_grid = detail::merge_grids({&U.grid(), &wg, &first.phi.grid(), &second.phi.grid()});
  ModuleMorphism phibar = sample_morphism(U, shift_module(W, eta), phi_grid, [&](const Real& t) {
    switch (region(t)) {
      case A: return first.phi.component_at(t);
      case B: return first.phi.component_at(t0);
      default: return second.phi.component_at(t);
    }
  });

  DecoratedValue cut = p1.sigma.star(DecoratedValue::minus(t0));
  Grid ug = detail::pullback_grid(U.grid(), rho);
  Grid extra{DecoratedValue::minus(u0)};
  if (!cut.is_pos_inf()) extra.push_back(cut);
  std::sort(extra.begin(), extra.end());
  Grid psi_grid = detail::merge_grids({&W.grid(), &ug, &first.psi.grid(), &second.psi.grid(), &extra});
  ModuleMorphism psibar = sample_morphism(W, shift_module(U, rho), psi_grid, [&](const Real& r) -> Matrix {
    if (in_downset(cut, r)) return first.psi.component_at(r);
    if (r < u0) {
      Matrix h = second.psi.component_at(u0);
      Matrix w = W.transition(r, u0);
      if (h.empty()) h = Matrix(Vp.dim_at(s0), W.dim_at(u0), f);
      if (w.empty()) w = Matrix(W.dim_at(u0), W.dim_at(r), f);
      return h * w;
    }
    return second.psi.component_at(r);
  });

  return {U, Interleaving{er, std::move(phibar), std::move(psibar)}};
}

}  // namespace interleave
