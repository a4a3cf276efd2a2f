#pragma once

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "strip/cluster_ops.hpp"
#include "strip/oracle.hpp"
#include "strip/triangulation.hpp"

namespace strip::io {

using json = nlohmann::json;

[[noreturn]] inline void bad(const std::string& what) { throw Error("malformed", what); }

inline Arc arc_from_json(const json& j) {
  if (j.is_string()) {
    try {
      return parse_arc(j.get<std::string>());
    } catch (const Error& e) {
      bad(e.what());
    }
  }
  if (j.is_object() && j.contains("k") && j.contains("i") && j.contains("j") && j["k"].is_string() &&
      j["i"].is_number_integer() && j["j"].is_number_integer()) {
    std::string k = j["k"];
    Kind kind;
    if (k == "U") kind = Kind::Upper;
    else if (k == "D") kind = Kind::Lower;
    else if (k == "C") kind = Kind::Connecting;
    else bad("arc kind must be U, D or C");
    index_t i = j["i"], jj = j["j"];
    if (!valid(kind, i, jj)) bad("not an arc: " + to_string(Arc{kind, i, jj}));
    return {kind, i, jj};
  }
  bad("arc must be a string like \"C(0,1)\" or an object {k,i,j}");
}

inline json arc_object(const Arc& a) {
  const char* k = a.kind == Kind::Upper ? "U" : (a.kind == Kind::Lower ? "D" : "C");
  return {{"k", k}, {"i", a.i}, {"j", a.j}};
}

inline json arcs_json(const std::vector<Arc>& arcs) {
  std::vector<std::string> s;
  for (const Arc& a : arcs) s.push_back(to_string(a));
  std::sort(s.begin(), s.end());
  return s;
}

namespace detail {

inline index_t get_int(const json& o, const char* key) {
  if (!o.contains(key) || !o[key].is_number_integer()) bad(std::string("field \"") + key + "\" must be an integer");
  return o[key].get<index_t>();
}

inline std::string get_str(const json& o, const char* key) {
  if (!o.contains(key) || !o[key].is_string()) bad(std::string("field \"") + key + "\" must be a string");
  return o[key].get<std::string>();
}

inline Dir get_dir(const json& o) {
  std::string d = get_str(o, "dir");
  if (d == "left") return Dir::Left;
  if (d == "right") return Dir::Right;
  if (d == "both") return Dir::Both;
  bad("dir must be left, right or both");
}

inline Window get_window(const json& w) {
  if (!w.is_array() || w.size() != 2 || !w[0].is_number_integer() || !w[1].is_number_integer())
    bad("window must be [lo, hi]");
  Window r{w[0].get<index_t>(), w[1].get<index_t>()};
  if (r.lo > r.hi) bad("window has lo > hi");
  return r;
}

}  // namespace detail

inline json family_to_json(const ArcFamily& f) {
  json j;
  j["kind"] = family_kind_name(f.kind);
  switch (f.kind) {
    case FamilyKind::Periodic:
      j["seed"] = arcs_json(f.seed);
      j["period"] = f.period;
      j["dir"] = dir_name(f.dir);
      if (f.shift) j["shift"] = {f.shift->first, f.shift->second};
      break;
    case FamilyKind::Nested:
      j["a"] = f.a;
      j["b"] = f.b;
      j["word"] = {{"prefix", f.prefix}, {"cycle", f.cycle}};
      if (f.side == Side::Lower) j["side"] = "lower";
      break;
    default:
      j["base"] = f.base;
      j["start"] = f.start;
      j["dir"] = dir_name(f.dir);
  }
  return j;
}

inline ArcFamily family_from_json(const json& j) {
  using namespace detail;
  if (!j.is_object()) bad("family must be an object");
  std::string k = get_str(j, "kind");
  if (k == "periodic") {
    if (!j.contains("seed") || !j["seed"].is_array()) bad("periodic family needs a seed array");
    std::vector<Arc> seed;
    for (const json& a : j["seed"]) seed.push_back(arc_from_json(a));
    std::sort(seed.begin(), seed.end());
    std::optional<std::pair<index_t, index_t>> shift;
    if (j.contains("shift")) {
      const json& s = j["shift"];
      if (!s.is_array() || s.size() != 2 || !s[0].is_number_integer() || !s[1].is_number_integer())
        bad("shift must be [a, b]");
      shift = std::make_pair(s[0].get<index_t>(), s[1].get<index_t>());
    }
    return periodic(std::move(seed), get_int(j, "period"), get_dir(j), shift);
  }
  if (k == "nested") {
    if (!j.contains("word") || !j["word"].is_object()) bad("nested family needs word {prefix, cycle}");
    Side side = Side::Upper;
    if (j.contains("side")) {
      std::string s = get_str(j, "side");
      if (s == "lower") side = Side::Lower;
      else if (s != "upper") bad("side must be upper or lower");
    }
    return nested(get_int(j, "a"), get_int(j, "b"), get_str(j["word"], "prefix"),
                  get_str(j["word"], "cycle"), side);
  }
  index_t base = get_int(j, "base"), start = get_int(j, "start");
  Dir d = get_dir(j);
  if (k == "upper_fan") return upper_fan(base, start, d);
  if (k == "lower_fan") return lower_fan(base, start, d);
  if (k == "conn_fan_upper") return conn_fan_upper(base, start, d);
  if (k == "conn_fan_lower") return conn_fan_lower(base, start, d);
  bad("unknown family kind \"" + k + "\"");
}

inline json desc_to_json(const TriangulationDesc& d) {
  json j;
  j["arcs"] = arcs_json({d.arcs.begin(), d.arcs.end()});
  j["families"] = json::array();
  for (const ArcFamily& f : d.families) j["families"].push_back(family_to_json(f));
  j["window"] = {d.window.lo, d.window.hi};
  if (!d.removed.empty()) j["removed"] = arcs_json({d.removed.begin(), d.removed.end()});
  return j;
}

inline TriangulationDesc desc_from_json(const json& j) {
  if (!j.is_object()) bad("triangulation must be a JSON object");
  TriangulationDesc d;
  auto arc_list = [&](const char* key, std::set<Arc>& out) {
    if (!j.contains(key)) return;
    if (!j[key].is_array()) bad(std::string("\"") + key + "\" must be an array");
    for (const json& a : j[key])
      if (!out.insert(arc_from_json(a)).second) bad(std::string("duplicate arc in \"") + key + "\"");
  };
  arc_list("arcs", d.arcs);
  arc_list("removed", d.removed);
  if (j.contains("families")) {
    if (!j["families"].is_array()) bad("\"families\" must be an array");
    for (const json& f : j["families"]) d.families.push_back(family_from_json(f));
  }
  if (j.contains("window")) {
    d.window = detail::get_window(j["window"]);
  } else if (!d.arcs.empty()) {
    d.window = {d.arcs.begin()->i, d.arcs.begin()->i};
    for (const Arc& a : d.arcs) d.window = hull(d.window, a);
  }
  return d;
}

inline TriangulationDesc parse_desc(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    bad(std::string("invalid JSON: ") + e.what());
  }
  return desc_from_json(j);
}

inline json orientation_to_json(const rep::Orientation& o) {
  return {{"core", o.core}, {"core_start", o.core_start}, {"left_cycle", o.left_cycle}, {"right_cycle", o.right_cycle}};
}

inline rep::Orientation orientation_from_json(const json& j) {
  if (!j.is_object()) bad("orientation must be an object");
  rep::Orientation o;
  o.core = j.contains("core") ? detail::get_str(j, "core") : "";
  o.core_start = j.contains("core_start") ? detail::get_int(j, "core_start") : 0;
  o.left_cycle = detail::get_str(j, "left_cycle");
  o.right_cycle = detail::get_str(j, "right_cycle");
  try {
    rep::check_orientation(o);
  } catch (const Error& e) {
    bad(e.what());
  }
  return o;
}

inline json quiver_to_json(const QuiverGraph& q) {
  std::vector<std::pair<std::string, bool>> vs;
  for (std::size_t i = 0; i < q.vertices.size(); ++i) vs.emplace_back(to_string(q.vertices[i]), q.interior[i]);
  std::sort(vs.begin(), vs.end());
  json verts = json::array();
  for (const auto& [a, in] : vs) verts.push_back({{"arc", a}, {"interior", in}});
  std::vector<std::pair<std::string, std::string>> as;
  for (const auto& [s, d] : q.arrows) as.emplace_back(to_string(s), to_string(d));
  std::sort(as.begin(), as.end());
  json arrows = json::array();
  for (const auto& [s, d] : as) arrows.push_back({s, d});
  return {{"vertices", verts}, {"arrows", arrows}};
}

inline std::string quiver_to_dot(const QuiverGraph& q) {
  json j = quiver_to_json(q);
  std::ostringstream out;
  out << "digraph Q {\n";
  for (const json& v : j["vertices"]) {
    out << "  \"" << v["arc"].get<std::string>() << "\"";
    if (!v["interior"].get<bool>()) out << " [style=dashed]";
    out << ";\n";
  }
  for (const json& a : j["arrows"])
    out << "  \"" << a[0].get<std::string>() << "\" -> \"" << a[1].get<std::string>() << "\";\n";
  out << "}\n";
  return out.str();
}

struct RenderSpec {
  Window window{-3, 3};
  double unit = 40;
  std::vector<Arc> highlights;
  bool labels = true;
};

// Upper point l_i is drawn at x = i on the top line, lower point r_j at x = -j on the
// bottom line; arcs are quadratic curves bowing into the strip.
inline std::string render_svg(const Triangulation& t, const RenderSpec& spec) {
  if (spec.window.lo > spec.window.hi) bad("render window has lo > hi");
  if (!(spec.unit > 0)) bad("render unit must be positive");
  const Window& w = spec.window;
  const double u = spec.unit, margin = u;
  const index_t xmin = std::min(w.lo, -w.hi), xmax = std::max(w.hi, -w.lo);
  const double width = (xmax - xmin) * u + 2 * margin, height = 4 * u + 2 * margin;
  const double top = margin, bottom = margin + 4 * u;
  auto px = [&](index_t x) { return (x - xmin) * u + margin; };
  auto pos = [&](const Point& p) {
    return p.side == Side::Upper ? std::make_pair(px(p.index), top) : std::make_pair(px(-p.index), bottom);
  };
  auto num = [](double v) {
    std::ostringstream s;
    s.setf(std::ios::fixed);
    s.precision(2);
    s << v;
    return s.str();
  };
  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width) << "\" height=\"" << num(height)
    << "\" viewBox=\"0 0 " << num(width) << " " << num(height) << "\">\n";
  o << "<style>.arc{fill:none;stroke:#333;stroke-width:1.5}.arc.hl{stroke:#c0392b;stroke-width:3}"
       ".mark{fill:#000}.boundary{stroke:#888;stroke-width:2}text{font:10px sans-serif}</style>\n";
  o << "<line class=\"boundary\" x1=\"" << num(margin / 2) << "\" y1=\"" << num(top) << "\" x2=\""
    << num(width - margin / 2) << "\" y2=\"" << num(top) << "\"/>\n";
  o << "<line class=\"boundary\" x1=\"" << num(margin / 2) << "\" y1=\"" << num(bottom) << "\" x2=\""
    << num(width - margin / 2) << "\" y2=\"" << num(bottom) << "\"/>\n";
  for (index_t i = w.lo; i <= w.hi; ++i) {
    o << "<circle class=\"mark upper\" cx=\"" << num(px(i)) << "\" cy=\"" << num(top) << "\" r=\"3\"/>\n";
    if (spec.labels)
      o << "<text x=\"" << num(px(i) - 4) << "\" y=\"" << num(top - 8) << "\">l" << i << "</text>\n";
  }
  for (index_t j = w.lo; j <= w.hi; ++j) {
    o << "<circle class=\"mark lower\" cx=\"" << num(px(-j)) << "\" cy=\"" << num(bottom) << "\" r=\"3\"/>\n";
    if (spec.labels)
      o << "<text x=\"" << num(px(-j) - 4) << "\" y=\"" << num(bottom + 16) << "\">r" << j << "</text>\n";
  }
  std::set<Arc> hl(spec.highlights.begin(), spec.highlights.end());
  for (const Arc& a : t.members_in_window(w)) {
    auto [p1, p2] = endpoints(a);
    auto [x1, y1] = pos(p1);
    auto [x2, y2] = pos(p2);
    double cx = (x1 + x2) / 2, cy;
    if (a.kind == Kind::Connecting) {
      cy = (y1 + y2) / 2;
    } else {
      double depth = std::min(3.6 * u, 0.35 * std::abs(x2 - x1) + 0.4 * u);
      cy = a.kind == Kind::Upper ? top + depth : bottom - depth;
    }
    o << "<path class=\"arc" << (hl.count(a) ? " hl" : "") << "\" data-arc=\"" << to_string(a) << "\" d=\"M "
      << num(x1) << " " << num(y1) << " Q " << num(cx) << " " << num(cy) << " " << num(x2) << " " << num(y2)
      << "\"/>\n";
  }
  o << "</svg>\n";
  return o.str();
}

}  // namespace strip::io
