// interleave: persistence diagrams of Rips filtrations, error boxes between
// diagrams, discretization, subsampling and stitched pipelines.
//
// Exit codes: 0 success, 2 a certificate or verification failed, 1 error.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "interleave/interleave.hpp"

using namespace interleave;
using io::Json;

namespace {

constexpr int kInfeasible = 2;
constexpr const char* kBudgetEnv = "INTERLEAVE_SIMPLEX_BUDGET";

std::size_t default_budget() {
  if (const char* v = std::getenv(kBudgetEnv)) {
    try {
      return std::stoull(v);
    } catch (const std::exception&) {
      throw std::invalid_argument(std::string(kBudgetEnv) + " is not a number: '" + v + "'");
    }
  }
  return kDefaultSimplexBudget;
}

void emit(const Json& j, const std::string& out) {
  if (out.empty() || out == "-")
    std::cout << io::dump(j);
  else
    io::write_file(out, io::dump(j));
}

Params parse_params(const std::vector<std::string>& kv) {
  Params p;
  for (const auto& s : kv) {
    auto eq = s.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("--param expects name=value, got '" + s + "'");
    p[s.substr(0, eq)] = parse_rational(s.substr(eq + 1));
  }
  return p;
}

// ------------------------------------------------------------ shared options

struct PairSpec {
  std::string file;
  std::vector<std::string> rows;
  std::vector<std::string> params;
  std::string tau, sigma;

  void attach(CLI::App* app) {
    app->add_option("--pair", file, "translation pair JSON file");
    app->add_option("--catalog", rows, "catalog row id(s); several rows are composed in order");
    app->add_option("--param", params, "catalog or expression parameter, name=value");
    app->add_option("--tau", tau, "tau as an affine expression in t");
    app->add_option("--sigma", sigma, "sigma as an affine expression in t");
  }

  TranslationPair resolve() const {
    int given = !file.empty() + !rows.empty() + (!tau.empty() || !sigma.empty());
    if (given != 1) throw std::invalid_argument("give exactly one of --pair, --catalog, or --tau/--sigma");
    Params p = parse_params(params);
    if (!file.empty()) return io::pair_from_json(io::parse_json(io::read_file(file), file), file);
    if (!rows.empty()) return compose_rows(rows, p);
    TranslationPair pair{parse_affine_map(tau.empty() ? "t" : tau, p), parse_affine_map(sigma.empty() ? "t" : sigma, p)};
    if (!pair.is_valid()) throw DomainError("tau and sigma do not form a translation pair");
    return pair;
  }
};

struct CloudOptions {
  bool distance_matrix = false;
  std::string tmax;
  std::size_t dim = 1;
  std::uint32_t field = 2;
  std::optional<std::size_t> budget;

  void attach(CLI::App* app) {
    app->add_flag("--distance-matrix", distance_matrix, "input is a lower-triangular distance matrix");
    app->add_option("--tmax", tmax, "largest Rips grade to build (default: all)");
    app->add_option("--dim", dim, "highest homology degree to report")->capture_default_str();
    app->add_option("--field", field, "prime field characteristic")->capture_default_str();
    app->add_option("--budget", budget, std::string("simplex budget (default ") + std::to_string(kDefaultSimplexBudget) +
                                            ", or $" + kBudgetEnv + ")");
  }

  std::optional<Real> t_max() const {
    if (tmax.empty() || tmax == "inf") return std::nullopt;
    return Real::parse(tmax);
  }
  std::size_t simplex_budget() const { return budget ? *budget : default_budget(); }
  // Simplices up to dimension dim + 1 make degrees 0..dim exact.
  std::size_t dim_cap() const { return dim + 1; }

  void warn_truncation(const char* what) const {
    if (t_max()) std::cerr << "warning: --tmax truncates the filtration; " << what << " assumes untruncated diagrams\n";
  }
};

std::vector<io::DiagramFile> load_diagrams(const std::string& path) {
  return io::diagrams_from_json(io::parse_json(io::read_file(path), path), path);
}

const io::DiagramFile& pick(const std::vector<io::DiagramFile>& fs, std::optional<std::size_t> degree,
                            const std::string& path) {
  if (!degree && fs.size() == 1) return fs[0];
  std::size_t k = degree.value_or(0);
  for (const auto& f : fs)
    if (f.degree == k) return f;
  throw std::invalid_argument(path + ": no diagram of degree " + std::to_string(k));
}

std::vector<io::DiagramFile> as_files(const std::vector<PersistenceDiagram>& pds, const std::string& source,
                                      const CloudOptions& c) {
  std::vector<io::DiagramFile> out;
  for (std::size_t k = 0; k < pds.size(); ++k) {
    io::DiagramFile f;
    f.degree = k;
    f.diagram = pds[k];
    f.meta = {source, c.field, c.t_max() ? ExtendedReal(*c.t_max()) : ExtendedReal::pos_inf()};
    out.push_back(std::move(f));
  }
  return out;
}

Json boxes_json(const UndecoratedDiagram& d, const TranslationPair& pair, Direction dir) {
  Json arr = Json::array();
  UnmatchedRule rule = unmatched_rule(pair, dir == Direction::VtoW ? Side::V : Side::W);
  for (const auto& p : d.points) {
    Json b = io::to_json(box_undecorated(p, pair, dir));
    b["may_be_unmatched"] = rule.allows(p);
    arr.push_back(b);
  }
  return arr;
}

void write_svg(const std::string& path, const std::string& title, const UndecoratedDiagram& v,
               const UndecoratedDiagram* w, const TranslationPair& pair, const Certificate* c) {
  if (path.empty()) return;
  svg::Scene s;
  s.title = title;
  s.v_points = v.points;
  if (w) s.w_points = w->points;
  for (const auto& p : v.points) s.boxes.push_back(box_undecorated(p, pair, Direction::VtoW));
  s.rule = unmatched_rule(pair, Side::V);
  if (c && c->witness) s.links = c->witness->pairs();
  io::write_file(path, svg::render(s));
}

// ------------------------------------------------------------ commands

int cmd_rips(const std::string& input, const CloudOptions& c, const std::string& out) {
  FiniteMetricSpace X = io::load_space(input, c.distance_matrix);
  auto pds = rips_diagrams(X, c.t_max(), c.dim_cap(), Field(c.field), c.simplex_budget());
  emit(io::to_json(as_files(pds, input, c)), out);
  return 0;
}

int cmd_match(const std::string& a, const std::string& b, const PairSpec& ps, std::optional<std::size_t> degree,
              bool decorated, const std::string& svg_path, const std::string& out) {
  TranslationPair pair = ps.resolve();
  auto fa = load_diagrams(a), fb = load_diagrams(b);
  const io::DiagramFile &da = pick(fa, degree, a), &db = pick(fb, degree, b);
  UndecoratedDiagram v = da.undecorated(), w = db.undecorated();
  Certificate c = decorated ? feasibility(da.diagram, db.diagram, pair) : feasibility(v, w, pair);
  Json j = {{"format", "interleave-match-report"},
            {"version", io::kFormatVersion},
            {"pair", io::to_json(pair)},
            {"certificate", io::to_json(c)},
            {"boxes_v", boxes_json(v, pair, Direction::VtoW)},
            {"boxes_w", boxes_json(w, pair, Direction::WtoV)},
            {"rules", {{"v", unmatched_rule(pair, Side::V).str()}, {"w", unmatched_rule(pair, Side::W).str()}}}};
  emit(j, out);
  write_svg(svg_path, "match", v, &w, pair, &c);
  return c.consistent ? 0 : kInfeasible;
}

int cmd_bounds(const std::string& a, const PairSpec& ps, std::optional<std::size_t> degree, const std::string& side,
               const std::string& svg_path, const std::string& out) {
  TranslationPair pair = ps.resolve();
  auto fa = load_diagrams(a);
  UndecoratedDiagram v = pick(fa, degree, a).undecorated();
  Direction dir = side == "w" ? Direction::WtoV : Direction::VtoW;
  Json j = {{"format", "interleave-bounds"},
            {"version", io::kFormatVersion},
            {"side", side},
            {"pair", io::to_json(pair)},
            {"rule", unmatched_rule(pair, side == "w" ? Side::W : Side::V).str()},
            {"boxes", boxes_json(v, pair, dir)}};
  emit(j, out);
  write_svg(svg_path, "bounds", v, nullptr, pair, nullptr);
  return 0;
}

bool looks_like_json(const std::string& path) {
  std::string t = io::read_file(path);
  auto i = t.find_first_not_of(" \t\r\n");
  return i != std::string::npos && t[i] == '{';
}

int cmd_discretize(const std::string& input, const CloudOptions& c, const std::string& unit_text,
                   const std::string& svg_path, const std::string& out) {
  Rational unit = parse_rational(unit_text);
  std::vector<io::DiagramFile> src;
  if (looks_like_json(input)) {
    src = load_diagrams(input);
  } else {
    c.warn_truncation("the discretization certificate");
    FiniteMetricSpace X = io::load_space(input, c.distance_matrix);
    src = as_files(rips_diagrams(X, c.t_max(), c.dim_cap(), Field(c.field), c.simplex_budget()), input, c);
  }
  std::vector<io::DiagramFile> disc;
  Json certs = Json::array();
  bool ok = true;
  for (const auto& f : src) {
    io::DiagramFile g = f;
    g.diagram = discretize_diagram(f.diagram, unit);
    g.meta.source = f.meta.source + " (unit " + unit.get_str() + ")";
    Certificate cert = discretize_bounds(g.undecorated(), f.undecorated(), unit);
    ok = ok && cert.consistent;
    Json cj = io::to_json(cert);
    cj["degree"] = f.degree;
    certs.push_back(cj);
    if (!svg_path.empty() && (&f == &src.front())) {
      UndecoratedDiagram z = g.undecorated(), full = f.undecorated();
      write_svg(svg_path, "discretization, degree " + std::to_string(f.degree), z, &full,
                discretization_pair(z, full, unit), &cert);
    }
    disc.push_back(std::move(g));
  }
  emit({{"format", "interleave-discretize-report"},
        {"version", io::kFormatVersion},
        {"unit", unit.get_str()},
        {"diagrams", io::to_json(disc)},
        {"certificates", certs}},
       out);
  return ok ? 0 : kInfeasible;
}

int cmd_stitch(const std::string& input, const CloudOptions& c, const std::string& t0_text, const std::string& delta_text,
               const std::string& subset, bool check, const std::string& svg_path, const std::string& out) {
  FiniteMetricSpace X = io::load_space(input, c.distance_matrix);
  Real t0 = Real::parse(t0_text);
  std::vector<std::size_t> Y;
  Real delta;
  if (!subset.empty()) {
    Y = io::parse_indices(io::read_file(subset), subset);
    std::sort(Y.begin(), Y.end());
    Y.erase(std::unique(Y.begin(), Y.end()), Y.end());
    for (std::size_t y : Y)
      if (y >= X.size()) throw std::invalid_argument(subset + ": index " + std::to_string(y) + " out of range");
    delta = delta_text.empty() ? Real::sqrt(covering_radius2(X, Y)) : Real::parse(delta_text);
    if (!verify_delta_approx(X, Y, delta)) throw DomainError("subset is not a " + delta.str() + "-approximation");
  } else {
    if (delta_text.empty()) throw std::invalid_argument("give --delta or --subset");
    delta = Real::parse(delta_text);
    Y = greedy_net(X, delta);
  }
  auto r = stitched_rips_diagram(X, Y, delta, t0, c.t_max(), c.dim_cap(), Field(c.field), c.simplex_budget());
  Json j = {{"format", "interleave-stitch-report"},
            {"version", io::kFormatVersion},
            {"t0", t0.str()},
            {"delta", delta.str()},
            {"net", Y},
            {"pair", io::to_json(r.pair)},
            {"diagrams", io::to_json(as_files(r.diagrams, input, c))}};
  bool ok = true;
  if (check) {
    c.warn_truncation("the four-case certificate");
    auto full = rips_diagrams(X, c.t_max(), c.dim_cap(), Field(c.field), c.simplex_budget());
    Json certs = Json::array();
    for (std::size_t k = 0; k < full.size(); ++k) {
      UndecoratedDiagram u = undecorate(r.diagrams[k]), x = undecorate(full[k]);
      Certificate cert = stitch_certificate(u, x, t0, delta);
      ok = ok && cert.consistent;
      Json cj = io::to_json(cert);
      cj["degree"] = k;
      certs.push_back(cj);
      if (k == 0 && !svg_path.empty()) write_svg(svg_path, "stitched vs full, degree 0", u, &x, r.pair, &cert);
    }
    j["certificates"] = certs;
    j["full"] = io::to_json(as_files(full, input, c));
  }
  emit(j, out);
  return ok ? 0 : kInfeasible;
}

int cmd_pipeline(const std::string& input, const CloudOptions& c, const std::string& netspec, bool check,
                 const std::string& svg_path, const std::string& out) {
  FiniteMetricSpace X = io::load_space(input, c.distance_matrix);
  io::NetSpec spec = io::netspec_from_json(io::parse_json(io::read_file(netspec), netspec), netspec);
  NetSequence seq = make_net_sequence(X, spec.deltas, spec.stitch_points);
  auto r = iterated_pipeline(X, seq, c.t_max(), c.dim_cap(), Field(c.field), c.simplex_budget());
  Json sizes = Json::array();
  for (std::size_t i = 0; i < r.stage_points.size(); ++i)
    sizes.push_back({{"points", r.stage_points[i]}, {"simplices", r.stage_simplices[i]}});
  Json boxes = Json::array();
  for (const auto& pd : r.diagrams) boxes.push_back(boxes_json(undecorate(pd), r.pair, Direction::VtoW));
  Json j = {{"format", "interleave-pipeline-report"},
            {"version", io::kFormatVersion},
            {"stages", sizes},
            {"pair", io::to_json(r.pair)},
            {"boxes", boxes},
            {"diagrams", io::to_json(as_files(r.diagrams, input, c))}};
  bool ok = true;
  if (check) {
    c.warn_truncation("the pipeline certificate");
    auto full = rips_diagrams(X, c.t_max(), c.dim_cap(), Field(c.field), c.simplex_budget());
    Json certs = Json::array();
    for (std::size_t k = 0; k < full.size(); ++k) {
      Certificate cert = feasibility(undecorate(r.diagrams[k]), undecorate(full[k]), r.pair);
      ok = ok && cert.consistent;
      Json cj = io::to_json(cert);
      cj["degree"] = k;
      certs.push_back(cj);
    }
    j["certificates"] = certs;
  }
  emit(j, out);
  if (!svg_path.empty() && !r.diagrams.empty()) {
    std::size_t k = r.diagrams.size() > 1 ? 1 : 0;
    write_svg(svg_path, "pipeline, degree " + std::to_string(k), undecorate(r.diagrams[k]), nullptr, r.pair, nullptr);
  }
  return ok ? 0 : kInfeasible;
}

int cmd_catalog(const std::vector<std::string>& rows, const std::vector<std::string>& params, const std::string& out) {
  if (rows.empty()) {
    Json arr = Json::array();
    for (const auto& e : catalog())
      arr.push_back({{"id", e.id}, {"name", e.name}, {"source", e.source}, {"target", e.target}, {"tau", e.tau},
                     {"sigma", e.sigma}, {"params", e.params}, {"constraints", e.constraints}, {"setting", e.setting},
                     {"reference", e.reference}});
    emit({{"format", "interleave-catalog"}, {"version", io::kFormatVersion}, {"entries", arr}}, out);
    return 0;
  }
  emit(io::to_json(compose_rows(rows, parse_params(params))), out);
  return 0;
}

int cmd_verify(const std::string& a, const std::string& b, const std::string& m, const PairSpec& ps,
               std::optional<std::size_t> degree, const std::string& out) {
  TranslationPair pair = ps.resolve();
  auto fa = load_diagrams(a), fb = load_diagrams(b);
  Matching x = io::matching_from_json(io::parse_json(io::read_file(m), m), m);
  VerifyReport r = verify_matching(x, pick(fa, degree, a).undecorated(), pick(fb, degree, b).undecorated(), pair);
  emit(io::to_json(r), out);
  return r.ok ? 0 : kInfeasible;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Persistence diagrams, interleaving error boxes and stitched Rips pipelines"};
  app.require_subcommand(1);
  app.fallthrough();  // -o may follow the subcommand
  std::string out;
  app.add_option("-o,--output", out, "output file (default stdout)");

  CloudOptions cloud;
  PairSpec pair;
  std::optional<std::size_t> degree;
  std::string input, second, third, svg_path, unit = "1", t0, delta, subset, netspec, side = "v";
  bool decorated = false, no_check = false, check = false;
  std::vector<std::string> rows, params;

  auto* rips = app.add_subcommand("rips", "persistence diagrams of a point cloud or distance matrix");
  rips->add_option("input", input, "CSV points or distance matrix")->required();
  cloud.attach(rips);

  auto* match = app.add_subcommand("match", "consistency of two diagrams with a translation pair");
  match->add_option("first", input, "diagram JSON (V side)")->required();
  match->add_option("second", second, "diagram JSON (W side)")->required();
  pair.attach(match);
  match->add_option("--degree", degree, "homology degree to use from diagram sets");
  match->add_flag("--decorated", decorated, "use the decorated boxes and rules");
  match->add_option("--svg", svg_path, "write a picture of boxes and matching");

  auto* bounds = app.add_subcommand("bounds", "per-point partner boxes of one diagram");
  bounds->add_option("diagram", input, "diagram JSON")->required();
  pair.attach(bounds);
  bounds->add_option("--degree", degree, "homology degree to use from diagram sets");
  bounds->add_option("--side", side, "v: boxes in W for V points; w: boxes in V for W points")
      ->check(CLI::IsMember({"v", "w"}));
  bounds->add_option("--svg", svg_path, "write a picture of the boxes");

  auto* disc = app.add_subcommand("discretize", "diagrams of the module sampled on a lattice, with certificates");
  disc->add_option("input", input, "diagram JSON, or a point cloud")->required();
  disc->add_option("--unit", unit, "lattice spacing")->capture_default_str();
  disc->add_option("--svg", svg_path, "write the first degree's boxes");
  cloud.attach(disc);

  auto* stitch = app.add_subcommand("stitch", "stitched diagram: X up to t0, a net from t0 + delta");
  stitch->add_option("input", input, "CSV points or distance matrix")->required();
  stitch->add_option("--t0", t0, "stitch point")->required();
  stitch->add_option("--delta", delta, "net radius");
  stitch->add_option("--subset", subset, "file of net point indices instead of a greedy net");
  stitch->add_flag("--no-check", no_check, "skip the full computation and four-case certificate");
  stitch->add_option("--svg", svg_path, "write degree-0 boxes against the full diagram");
  cloud.attach(stitch);

  auto* pipe = app.add_subcommand("pipeline", "iterated subsampling with stitched modules");
  pipe->add_option("input", input, "CSV points or distance matrix")->required();
  pipe->add_option("--netspec", netspec, "JSON {deltas: [...], stitch_points: [...]}")->required();
  pipe->add_flag("--check", check, "also compute the full diagrams and check consistency");
  pipe->add_option("--svg", svg_path, "write boxes of the stitched diagram");
  cloud.attach(pipe);

  auto* cat = app.add_subcommand("catalog", "list approximation pairs, or compose rows into one pair");
  cat->add_option("rows", rows, "row ids to compose, first row first");
  cat->add_option("--param", params, "parameter, name=value");

  auto* verify = app.add_subcommand("verify", "check a given matching against boxes and unmatched rules");
  verify->add_option("first", input, "diagram JSON (V side)")->required();
  verify->add_option("second", second, "diagram JSON (W side)")->required();
  verify->add_option("matching", third, "matching JSON")->required();
  pair.attach(verify);
  verify->add_option("--degree", degree, "homology degree to use from diagram sets");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*rips) return cmd_rips(input, cloud, out);
    if (*match) return cmd_match(input, second, pair, degree, decorated, svg_path, out);
    if (*bounds) return cmd_bounds(input, pair, degree, side, svg_path, out);
    if (*disc) return cmd_discretize(input, cloud, unit, svg_path, out);
    if (*stitch) return cmd_stitch(input, cloud, t0, delta, subset, !no_check, svg_path, out);
    if (*pipe) return cmd_pipeline(input, cloud, netspec, check, svg_path, out);
    if (*cat) return cmd_catalog(rows, params, out);
    if (*verify) return cmd_verify(input, second, third, pair, degree, out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
