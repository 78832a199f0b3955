#pragma once

// File formats: JSON for diagrams, matchings, translation pairs, modules and
// certificates; CSV point clouds and lower-triangular distance matrices.
// Exact values travel as strings ("3/2", "1/2*sqrt(2)", "inf").

#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "interleave/diagram.hpp"
#include "interleave/matching.hpp"
#include "interleave/module.hpp"
#include "interleave/monotone_map.hpp"
#include "interleave/rips.hpp"
#include "interleave/stability.hpp"

namespace interleave::io {

using Json = nlohmann::json;

inline constexpr int kFormatVersion = 1;

// ------------------------------------------------------------ text helpers

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << text;
}

/** @brief "name:line:col: message" for a byte offset into text. */
inline std::string locate(std::string_view name, std::string_view text, std::size_t offset, const std::string& msg) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return std::string(name) + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " + msg;
}

inline Json parse_json(std::string_view text, std::string_view name = "<input>") {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    std::size_t at = e.byte == 0 ? 0 : e.byte - 1;
    throw ParseError(locate(name, text, at, "invalid JSON"));
  }
}

inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

namespace detail {

[[noreturn]] inline void schema_error(const std::string& where, const std::string& what) {
  throw ParseError(where + ": " + what);
}

inline const Json& field(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object()) schema_error(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) schema_error(where, "missing key '" + std::string(key) + "'");
  return *it;
}

inline std::string text(const Json& j, const std::string& where) {
  if (!j.is_string()) schema_error(where, "expected a string");
  return j.get<std::string>();
}

inline void expect_format(const Json& j, const char* format, const std::string& where) {
  if (text(field(j, "format", where), where + "/format") != format)
    schema_error(where, std::string("expected format '") + format + "'");
  if (field(j, "version", where) != kFormatVersion) schema_error(where, "unsupported version");
}

}  // namespace detail

// ------------------------------------------------------------ values

inline Json to_json(const Real& x) { return x.str(); }
inline Json to_json(const ExtendedReal& x) { return x.str(); }
inline Json to_json(const DecoratedValue& x) { return x.str(); }

inline Real real_from_json(const Json& j, const std::string& where = "value") {
  try {
    return Real::parse(detail::text(j, where));
  } catch (const ParseError& e) {
    detail::schema_error(where, e.what());
  }
}

inline ExtendedReal extended_from_json(const Json& j, const std::string& where = "value") {
  try {
    return ExtendedReal::parse(detail::text(j, where));
  } catch (const ParseError& e) {
    detail::schema_error(where, e.what());
  }
}

/** @brief "3/2-", "0+", "inf", "-inf". */
inline DecoratedValue decorated_from_json(const Json& j, const std::string& where = "value") {
  std::string s = detail::text(j, where);
  if (s == "inf" || s == "+inf") return DecoratedValue::pos_inf();
  if (s == "-inf") return DecoratedValue::neg_inf();
  if (s.size() < 2 || (s.back() != '-' && s.back() != '+')) detail::schema_error(where, "missing decoration in '" + s + "'");
  Decoration d = s.back() == '-' ? Decoration::Minus : Decoration::Plus;
  try {
    return DecoratedValue(Real::parse(s.substr(0, s.size() - 1)), d);
  } catch (const ParseError& e) {
    detail::schema_error(where, e.what());
  }
}

/** @brief Rational lower and upper bounds as strings. */
inline Json enclosure_json(const Real& x, unsigned bits = 64) {
  auto [lo, hi] = x.enclosure(bits);
  return Json::array({lo.get_str(), hi.get_str()});
}

// ------------------------------------------------------------ maps and pairs

inline Json to_json(const MonotoneMap& f) {
  Json pieces = Json::array();
  for (const auto& p : f.pieces()) pieces.push_back(Json::array({p.slope.str(), p.offset.str()}));
  Json breaks = Json::array(), values = Json::array();
  for (const auto& b : f.breakpoints()) breaks.push_back(b.str());
  for (const auto& v : f.values()) values.push_back(v.str());
  return {{"window", Json::array({f.window_lo().str(), f.window_hi().str()})},
          {"breakpoints", breaks},
          {"values", values},
          {"pieces", pieces}};
}

inline MonotoneMap map_from_json(const Json& j, const std::string& where = "map") {
  const Json& w = detail::field(j, "window", where);
  if (!w.is_array() || w.size() != 2) detail::schema_error(where + "/window", "expected [lo, hi]");
  std::vector<Real> breaks, values;
  std::vector<Affine> pieces;
  const Json& jb = detail::field(j, "breakpoints", where);
  const Json& jv = detail::field(j, "values", where);
  const Json& jp = detail::field(j, "pieces", where);
  if (!jb.is_array() || !jv.is_array() || !jp.is_array()) detail::schema_error(where, "expected arrays");
  for (std::size_t i = 0; i < jb.size(); ++i) breaks.push_back(real_from_json(jb[i], where + "/breakpoints/" + std::to_string(i)));
  for (std::size_t i = 0; i < jv.size(); ++i) values.push_back(real_from_json(jv[i], where + "/values/" + std::to_string(i)));
  for (std::size_t i = 0; i < jp.size(); ++i) {
    std::string at = where + "/pieces/" + std::to_string(i);
    if (!jp[i].is_array() || jp[i].size() != 2) detail::schema_error(at, "expected [slope, offset]");
    pieces.push_back({real_from_json(jp[i][0], at), real_from_json(jp[i][1], at)});
  }
  try {
    return MonotoneMap(extended_from_json(w[0], where + "/window/0"), extended_from_json(w[1], where + "/window/1"),
                       std::move(breaks), std::move(values), std::move(pieces));
  } catch (const std::invalid_argument& e) {
    detail::schema_error(where, e.what());
  } catch (const DomainError& e) {
    detail::schema_error(where, e.what());
  }
}

inline Json to_json(const TranslationPair& p) {
  return {{"format", "interleave-pair"}, {"version", kFormatVersion}, {"tau", to_json(p.tau)}, {"sigma", to_json(p.sigma)}};
}

inline TranslationPair pair_from_json(const Json& j, const std::string& where = "pair") {
  detail::expect_format(j, "interleave-pair", where);
  TranslationPair p{map_from_json(detail::field(j, "tau", where), where + "/tau"),
                    map_from_json(detail::field(j, "sigma", where), where + "/sigma")};
  if (!p.is_valid()) detail::schema_error(where, "not a translation pair");
  return p;
}

// ------------------------------------------------------------ matchings

inline Json to_json(const Matching& x) {
  Json pairs = Json::array();
  for (const auto& [a, b] : x.pairs()) pairs.push_back(Json::array({a, b}));
  return {{"format", "interleave-matching"}, {"version", kFormatVersion}, {"pairs", pairs}};
}

inline Matching matching_from_json(const Json& j, const std::string& where = "matching") {
  detail::expect_format(j, "interleave-matching", where);
  const Json& jp = detail::field(j, "pairs", where);
  if (!jp.is_array()) detail::schema_error(where + "/pairs", "expected an array");
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < jp.size(); ++i) {
    const Json& e = jp[i];
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_unsigned() || !e[1].is_number_unsigned())
      detail::schema_error(where + "/pairs/" + std::to_string(i), "expected [i, j] with non-negative integers");
    pairs.emplace_back(e[0].get<std::size_t>(), e[1].get<std::size_t>());
  }
  try {
    return Matching(std::move(pairs));
  } catch (const std::invalid_argument& e) {
    detail::schema_error(where, e.what());
  }
}

// ------------------------------------------------------------ diagrams

struct DiagramMeta {
  std::string source;
  std::uint32_t field = 2;
  ExtendedReal t_max = ExtendedReal::pos_inf();
  friend bool operator==(const DiagramMeta&, const DiagramMeta&) = default;
};

/**
 * @brief One homology degree. Undecorated files store plain (b, d) pairs,
 * held here as [b-, d-) points so indices follow the (b, d) classes.
 */
struct DiagramFile {
  std::size_t degree = 0;
  bool decorated = true;
  PersistenceDiagram diagram;
  DiagramMeta meta;

  UndecoratedDiagram undecorated() const { return undecorate(diagram); }

  friend bool operator==(const DiagramFile& a, const DiagramFile& b) {
    return a.degree == b.degree && a.decorated == b.decorated && a.meta == b.meta &&
           a.diagram.points() == b.diagram.points();
  }
};

inline Json to_json(const DiagramFile& f) {
  Json pts = Json::array();
  for (const auto& p : f.diagram.points()) {
    Json jp = {{"b", to_json(project(p.b))}, {"d", to_json(project(p.d))}, {"index", p.index}};
    if (f.decorated) {
      Json dec = Json::object();
      if (p.b.is_finite()) dec["b"] = p.b.decoration() == Decoration::Minus ? "-" : "+";
      if (p.d.is_finite()) dec["d"] = p.d.decoration() == Decoration::Minus ? "-" : "+";
      jp["decorations"] = dec;
    }
    // decimal-free bounds for values that are not rational; ignored on input
    Json enc = Json::object();
    if (p.b.is_finite() && !p.b.value().is_rational()) enc["b"] = enclosure_json(p.b.value());
    if (p.d.is_finite() && !p.d.value().is_rational()) enc["d"] = enclosure_json(p.d.value());
    if (!enc.empty()) jp["enclosure"] = enc;
    pts.push_back(jp);
  }
  return {{"format", "interleave-diagram"},
          {"version", kFormatVersion},
          {"degree", f.degree},
          {"decorated", f.decorated},
          {"points", pts},
          {"metadata", {{"source", f.meta.source}, {"field", f.meta.field}, {"t_max", f.meta.t_max.str()}}}};
}

inline DiagramFile diagram_from_json(const Json& j, const std::string& where = "diagram") {
  detail::expect_format(j, "interleave-diagram", where);
  DiagramFile f;
  const Json& deg = detail::field(j, "degree", where);
  if (!deg.is_number_unsigned()) detail::schema_error(where + "/degree", "expected a non-negative integer");
  f.degree = deg.get<std::size_t>();
  const Json& dec = detail::field(j, "decorated", where);
  if (!dec.is_boolean()) detail::schema_error(where + "/decorated", "expected a boolean");
  f.decorated = dec.get<bool>();
  const Json& pts = detail::field(j, "points", where);
  if (!pts.is_array()) detail::schema_error(where + "/points", "expected an array");
  for (std::size_t i = 0; i < pts.size(); ++i) {
    std::string at = where + "/points/" + std::to_string(i);
    const Json& jp = pts[i];
    ExtendedReal b = extended_from_json(detail::field(jp, "b", at), at + "/b");
    ExtendedReal d = extended_from_json(detail::field(jp, "d", at), at + "/d");
    auto decorate = [&](const ExtendedReal& v, const char* key) {
      if (!v.is_finite()) return inject_minus(v);
      Decoration dd = Decoration::Minus;
      if (f.decorated) {
        const Json& jd = detail::field(detail::field(jp, "decorations", at), key, at + "/decorations");
        std::string s = detail::text(jd, at + "/decorations/" + key);
        if (s != "-" && s != "+") detail::schema_error(at + "/decorations/" + key, "expected '-' or '+'");
        dd = s == "-" ? Decoration::Minus : Decoration::Plus;
      }
      return DecoratedValue(v.value(), dd);
    };
    DecoratedValue db = decorate(b, "b"), dd = decorate(d, "d");
    if (!(db < dd)) detail::schema_error(at, "needs b < d");
    const DiagramPoint& added = f.diagram.add(db, dd);
    if (jp.contains("index")) {
      const Json& ji = jp["index"];
      if (!ji.is_number_unsigned() || ji.get<std::size_t>() != added.index)
        detail::schema_error(at + "/index", "expected " + std::to_string(added.index) + " (indices count within each (b, d) class in file order)");
    }
  }
  if (j.contains("metadata")) {
    const Json& m = j["metadata"];
    if (m.contains("source")) f.meta.source = detail::text(m["source"], where + "/metadata/source");
    if (m.contains("field")) {
      if (!m["field"].is_number_unsigned()) detail::schema_error(where + "/metadata/field", "expected an integer");
      f.meta.field = m["field"].get<std::uint32_t>();
    }
    if (m.contains("t_max")) f.meta.t_max = extended_from_json(m["t_max"], where + "/metadata/t_max");
  }
  return f;
}

inline Json to_json(const std::vector<DiagramFile>& fs) {
  Json arr = Json::array();
  for (const auto& f : fs) arr.push_back(to_json(f));
  return {{"format", "interleave-diagram-set"}, {"version", kFormatVersion}, {"diagrams", arr}};
}

/** @brief A single diagram or a set of them. */
inline std::vector<DiagramFile> diagrams_from_json(const Json& j, const std::string& where = "diagrams") {
  const Json& fmt = detail::field(j, "format", where);
  if (fmt == "interleave-diagram") return {diagram_from_json(j, where)};
  detail::expect_format(j, "interleave-diagram-set", where);
  const Json& arr = detail::field(j, "diagrams", where);
  if (!arr.is_array()) detail::schema_error(where + "/diagrams", "expected an array");
  std::vector<DiagramFile> out;
  for (std::size_t i = 0; i < arr.size(); ++i) out.push_back(diagram_from_json(arr[i], where + "/diagrams/" + std::to_string(i)));
  return out;
}

// ------------------------------------------------------------ modules

inline Json to_json(const FiniteModule& V) {
  Json grid = Json::array(), maps = Json::array();
  for (const auto& g : V.grid()) grid.push_back(g.str());
  for (const auto& m : V.maps()) {
    Json rows = Json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
      Json row = Json::array();
      for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
      rows.push_back(row);
    }
    maps.push_back(rows);
  }
  return {{"format", "interleave-module"}, {"version", kFormatVersion}, {"field", V.field().characteristic()},
          {"grid", grid}, {"dims", V.dims()}, {"maps", maps}};
}

inline FiniteModule module_from_json(const Json& j, const std::string& where = "module") {
  detail::expect_format(j, "interleave-module", where);
  const Json& jf = detail::field(j, "field", where);
  if (!jf.is_number_unsigned()) detail::schema_error(where + "/field", "expected a prime");
  try {
    Field f(jf.get<std::uint32_t>());
    Grid grid;
    const Json& jg = detail::field(j, "grid", where);
    for (std::size_t i = 0; i < jg.size(); ++i) grid.push_back(decorated_from_json(jg[i], where + "/grid/" + std::to_string(i)));
    auto dims = detail::field(j, "dims", where).get<std::vector<std::size_t>>();
    std::vector<Matrix> maps;
    const Json& jm = detail::field(j, "maps", where);
    for (std::size_t i = 0; i < jm.size(); ++i) {
      auto rows = jm[i].get<std::vector<std::vector<long long>>>();
      std::size_t cols = i < dims.size() ? dims[i] : 0;
      for (const auto& r : rows)
        if (r.size() != cols) detail::schema_error(where + "/maps/" + std::to_string(i), "row length differs from the source dimension");
      maps.push_back(Matrix::from_rows(rows, cols, f));
    }
    return FiniteModule(std::move(grid), std::move(dims), std::move(maps), f);
  } catch (const Json::exception& e) {
    detail::schema_error(where, e.what());
  } catch (const std::invalid_argument& e) {
    detail::schema_error(where, e.what());
  }
}

// ------------------------------------------------------------ certificates and boxes

inline Json to_json(const BoundBox& b) {
  BoundBox o = b.outward();
  Json j = {{"point", {{"b", b.point.b.str()}, {"d", b.point.d.str()}, {"index", b.point.index}}},
            {"direction", to_string(b.direction)},
            {"b", Json::array({b.blo.str(), b.bhi.str()})},
            {"d", Json::array({b.dlo.str(), b.dhi.str()})},
            {"empty", !b.nonempty()}};
  if (!(o.blo == b.blo && o.bhi == b.bhi && o.dlo == b.dlo && o.dhi == b.dhi))
    j["outward"] = {{"b", Json::array({o.blo.str(), o.bhi.str()})}, {"d", Json::array({o.dlo.str(), o.dhi.str()})}};
  return j;
}

inline Json to_json(const Certificate& c) {
  Json j = {{"format", "interleave-certificate"},
            {"version", kFormatVersion},
            {"consistent", c.consistent},
            {"violator_v", c.violator_v},
            {"violator_w", c.violator_w},
            {"violations", c.violations}};
  j["witness"] = c.witness ? to_json(*c.witness)["pairs"] : Json(nullptr);
  return j;
}

inline Json to_json(const VerifyReport& r) {
  return {{"format", "interleave-verify"}, {"version", kFormatVersion}, {"ok", r.ok}, {"violations", r.violations}};
}

// ------------------------------------------------------------ point clouds

namespace detail {

struct Cell {
  std::string_view text;
  std::size_t offset;
};

// Splits a line on commas, or on whitespace when it has no comma.
inline std::vector<Cell> split_fields(std::string_view line, std::size_t base) {
  std::vector<Cell> out;
  bool comma = line.find(',') != std::string_view::npos;
  std::size_t i = 0;
  while (i <= line.size()) {
    if (comma) {
      std::size_t j = line.find(',', i);
      if (j == std::string_view::npos) j = line.size();
      out.push_back({line.substr(i, j - i), base + i});
      i = j + 1;
    } else {
      while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
      if (i == line.size()) break;
      std::size_t j = i;
      while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
      out.push_back({line.substr(i, j - i), base + i});
      i = j;
    }
  }
  return out;
}

// Calls f(fields, line_offset) for each non-blank, non-comment line.
template <class F>
void for_each_row(std::string_view text, F f) {
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (auto h = line.find('#'); h != std::string_view::npos) line = line.substr(0, h);
    auto fields = split_fields(line, pos);
    bool blank = fields.empty() || (fields.size() == 1 && ::interleave::detail::trim(fields[0].text).empty());
    if (!blank) f(fields, pos);
    pos = end + 1;
  }
}

inline Rational parse_cell(std::string_view name, std::string_view text, const Cell& c) {
  try {
    return parse_rational(c.text);
  } catch (const ParseError& e) {
    std::size_t lead = 0;
    while (lead < c.text.size() && std::isspace(static_cast<unsigned char>(c.text[lead]))) ++lead;
    throw ParseError(locate(name, text, c.offset + lead, e.what()));
  }
}

}  // namespace detail

/** @brief One point per row, comma or whitespace separated, exact rationals or decimals. */
inline std::vector<std::vector<Rational>> parse_points(std::string_view text, std::string_view name = "<input>") {
  std::vector<std::vector<Rational>> pts;
  detail::for_each_row(text, [&](const auto& fields, std::size_t line_at) {
    std::vector<Rational> p;
    for (const auto& c : fields) p.push_back(detail::parse_cell(name, text, c));
    if (!pts.empty() && p.size() != pts[0].size())
      throw ParseError(locate(name, text, line_at,
                              "expected " + std::to_string(pts[0].size()) + " coordinates, found " + std::to_string(p.size())));
    pts.push_back(std::move(p));
  });
  if (pts.empty()) throw ParseError(std::string(name) + ": no points");
  return pts;
}

/**
 * @brief Lower-triangular distance matrix. Rows have 1, 2, 3, ... entries:
 * either d(i, 0..i-1) for i >= 1, or d(i, 0..i) with the zero diagonal, the
 * latter recognized by every row ending in 0. Returns the full matrix.
 */
inline std::vector<std::vector<Rational>> parse_lower_triangular(std::string_view text,
                                                                 std::string_view name = "<input>") {
  std::vector<std::vector<Rational>> rows;
  std::vector<std::vector<std::size_t>> offsets;
  detail::for_each_row(text, [&](const auto& fields, std::size_t line_at) {
    if (fields.size() != rows.size() + 1)
      throw ParseError(locate(name, text, line_at,
                              "expected " + std::to_string(rows.size() + 1) + " entries, found " + std::to_string(fields.size())));
    std::vector<Rational> r;
    std::vector<std::size_t> at;
    for (const auto& c : fields) {
      r.push_back(detail::parse_cell(name, text, c));
      at.push_back(c.offset);
      if (r.back() < 0) throw ParseError(locate(name, text, c.offset, "negative distance"));
    }
    rows.push_back(std::move(r));
    offsets.push_back(std::move(at));
  });
  bool diagonal = !rows.empty() && std::all_of(rows.begin(), rows.end(), [](const auto& r) { return r.back() == 0; });
  const std::size_t n = diagonal ? rows.size() : rows.size() + 1;
  std::vector<std::vector<Rational>> full(n, std::vector<Rational>(n, Rational(0)));
  for (std::size_t k = 0; k < rows.size(); ++k) {
    std::size_t i = diagonal ? k : k + 1;
    for (std::size_t j = 0; j < i; ++j) full[i][j] = full[j][i] = rows[k][j];
  }
  return full;
}

inline FiniteMetricSpace load_space(const std::string& path, bool distance_matrix) {
  std::string text = read_file(path);
  if (distance_matrix) return FiniteMetricSpace::from_distances(parse_lower_triangular(text, path));
  return FiniteMetricSpace::from_points(parse_points(text, path));
}

/** @brief Whitespace or comma separated point indices, or a JSON array of them. */
inline std::vector<std::size_t> parse_indices(std::string_view text, std::string_view name = "<input>") {
  std::string_view t = ::interleave::detail::trim(text);
  if (!t.empty() && t.front() == '[') {
    Json j = parse_json(text, name);
    if (!j.is_array()) throw ParseError(std::string(name) + ": expected an array of indices");
    std::vector<std::size_t> out;
    for (const auto& e : j) {
      if (!e.is_number_unsigned()) throw ParseError(std::string(name) + ": indices must be non-negative integers");
      out.push_back(e.get<std::size_t>());
    }
    return out;
  }
  std::vector<std::size_t> out;
  detail::for_each_row(text, [&](const auto& fields, std::size_t) {
    for (const auto& c : fields) {
      Rational v = detail::parse_cell(name, text, c);
      if (v < 0 || v.get_den() != 1 || !v.get_num().fits_ulong_p())
        throw ParseError(locate(name, text, c.offset, "expected a non-negative integer index"));
      out.push_back(v.get_num().get_ui());
    }
  });
  return out;
}

/** @brief {"deltas": [...], "stitch_points": [...]} with exact value strings or numbers. */
struct NetSpec {
  std::vector<Real> deltas;
  std::vector<Real> stitch_points;
};

inline NetSpec netspec_from_json(const Json& j, const std::string& where = "netspec") {
  NetSpec s;
  auto values = [&](const char* key, std::vector<Real>& out) {
    const Json& arr = detail::field(j, key, where);
    if (!arr.is_array()) detail::schema_error(where + "/" + key, "expected an array");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      std::string at = where + "/" + key + "/" + std::to_string(i);
      if (arr[i].is_number_integer()) {
        out.emplace_back(Rational(arr[i].get<long>()));
      } else {
        out.push_back(real_from_json(arr[i], at));
      }
    }
  };
  values("deltas", s.deltas);
  values("stitch_points", s.stitch_points);
  if (s.deltas.size() != s.stitch_points.size()) detail::schema_error(where, "deltas and stitch_points differ in length");
  return s;
}

}  // namespace interleave::io
