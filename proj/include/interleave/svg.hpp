#pragma once

// Birth-death plane pictures: diagonal, two point sets, partner boxes,
// the region where a point may stay unmatched, and matching links.

#include <algorithm>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include "interleave/stability.hpp"

namespace interleave::svg {

struct Scene {
  std::string title;
  std::vector<UndecoratedPoint> v_points;  // filled circles
  std::vector<UndecoratedPoint> w_points;  // open squares
  std::vector<BoundBox> boxes;
  std::optional<UnmatchedRule> rule;  // shaded above the diagonal
  std::vector<std::pair<std::size_t, std::size_t>> links;  // v index -> w index
};

namespace detail {

inline std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", x);
  return buf;
}

inline std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '<') out += "&lt;";
    else if (c == '>') out += "&gt;";
    else if (c == '&') out += "&amp;";
    else out += c;
  }
  return out;
}

}  // namespace detail

/** @brief Deterministic SVG text; infinite coordinates are drawn on the top or left border. */
inline std::string render(const Scene& s) {
  double lo = 0, hi = 1;
  bool any = false;
  auto see = [&](const ExtendedReal& x) {
    if (!x.is_finite()) return;
    double v = x.to_double();
    lo = any ? std::min(lo, v) : v;
    hi = any ? std::max(hi, v) : v;
    any = true;
  };
  for (const auto* pts : {&s.v_points, &s.w_points})
    for (const auto& p : *pts) {
      see(p.b);
      see(p.d);
    }
  for (const auto& b : s.boxes)
    for (const auto* e : {&b.blo, &b.bhi, &b.dlo, &b.dhi}) see(*e);
  double pad = std::max(0.5, (hi - lo) * 0.08);
  lo -= pad;
  hi += pad;
  const double size = 480, margin = 40;
  auto clampv = [&](const ExtendedReal& x) {
    if (x.is_pos_inf()) return hi;
    if (x.is_neg_inf()) return lo;
    return std::clamp(x.to_double(), lo, hi);
  };
  auto X = [&](double v) { return margin + (v - lo) / (hi - lo) * size; };
  auto Y = [&](double v) { return margin + size - (v - lo) / (hi - lo) * size; };

  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + detail::num(size + 2 * margin) + "\" height=\"" +
         detail::num(size + 2 * margin) + "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  out += "<title>" + detail::escape(s.title) + "</title>\n";
  out += "<rect x=\"" + detail::num(margin) + "\" y=\"" + detail::num(margin) + "\" width=\"" + detail::num(size) +
         "\" height=\"" + detail::num(size) + "\" fill=\"white\" stroke=\"black\"/>\n";

  if (s.rule) {
    // polygon between the diagonal and the unmatched bound, sampled
    std::string poly;
    const int n = 240;
    for (int i = 0; i <= n; ++i) {
      double b = lo + (hi - lo) * i / n;
      ExtendedReal bound = s.rule->bound(ExtendedReal(Real(Rational(static_cast<long>(b * 1000), 1000))));
      double d = std::max(b, clampv(bound));
      poly += detail::num(X(b)) + "," + detail::num(Y(d)) + " ";
    }
    for (int i = n; i >= 0; --i) {
      double b = lo + (hi - lo) * i / n;
      poly += detail::num(X(b)) + "," + detail::num(Y(b)) + (i ? " " : "");
    }
    out += "<polygon class=\"unmatched-region\" points=\"" + poly + "\" fill=\"#dddddd\" stroke=\"none\"/>\n";
  }
  out += "<line class=\"diagonal\" x1=\"" + detail::num(X(lo)) + "\" y1=\"" + detail::num(Y(lo)) + "\" x2=\"" +
         detail::num(X(hi)) + "\" y2=\"" + detail::num(Y(hi)) + "\" stroke=\"black\"/>\n";

  for (const auto& b : s.boxes) {
    if (!b.nonempty()) continue;
    double x0 = X(clampv(b.blo)), x1 = X(clampv(b.bhi)), y0 = Y(clampv(b.dhi)), y1 = Y(clampv(b.dlo));
    out += "<rect class=\"box\" x=\"" + detail::num(x0) + "\" y=\"" + detail::num(y0) + "\" width=\"" +
           detail::num(std::max(1.0, x1 - x0)) + "\" height=\"" + detail::num(std::max(1.0, y1 - y0)) +
           "\" fill=\"#9ecae1\" fill-opacity=\"0.35\" stroke=\"#3182bd\"><title>" + detail::escape(b.str()) +
           "</title></rect>\n";
  }
  for (const auto& [a, c] : s.links) {
    const auto &p = s.v_points.at(a), &q = s.w_points.at(c);
    out += "<line class=\"link\" x1=\"" + detail::num(X(clampv(p.b))) + "\" y1=\"" + detail::num(Y(clampv(p.d))) +
           "\" x2=\"" + detail::num(X(clampv(q.b))) + "\" y2=\"" + detail::num(Y(clampv(q.d))) +
           "\" stroke=\"#888888\" stroke-dasharray=\"3,2\"/>\n";
  }
  for (const auto& p : s.v_points)
    out += "<circle class=\"v-point\" cx=\"" + detail::num(X(clampv(p.b))) + "\" cy=\"" + detail::num(Y(clampv(p.d))) +
           "\" r=\"3.5\" fill=\"black\"><title>" + detail::escape(p.str()) + "</title></circle>\n";
  for (const auto& p : s.w_points)
    out += "<rect class=\"w-point\" x=\"" + detail::num(X(clampv(p.b)) - 3.5) + "\" y=\"" +
           detail::num(Y(clampv(p.d)) - 3.5) + "\" width=\"7\" height=\"7\" fill=\"none\" stroke=\"#d62728\"><title>" +
           detail::escape(p.str()) + "</title></rect>\n";
  out += "<text x=\"" + detail::num(margin) + "\" y=\"" + detail::num(margin - 12) + "\">" + detail::escape(s.title) +
         "</text>\n";
  out += "<text x=\"" + detail::num(margin + size / 2) + "\" y=\"" + detail::num(size + 2 * margin - 10) +
         "\">birth</text>\n";
  out += "<text x=\"6\" y=\"" + detail::num(margin + size / 2) + "\">death</text>\n";
  out += "</svg>\n";
  return out;
}

}  // namespace interleave::svg
