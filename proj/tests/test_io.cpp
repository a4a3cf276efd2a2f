#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <regex>

#include "strip/catalog.hpp"
#include "strip/io.hpp"

using namespace strip;
using json = nlohmann::json;

namespace {

std::size_t count(const std::string& s, const std::string& needle) {
  std::size_t n = 0;
  for (auto p = s.find(needle); p != std::string::npos; p = s.find(needle, p + 1)) ++n;
  return n;
}

}  // namespace

TEST_CASE("arc json forms") {
  CHECK(io::arc_from_json("C(0,-1)") == C(0, -1));
  CHECK(io::arc_from_json(json{{"k", "U"}, {"i", 0}, {"j", 3}}) == U(0, 3));
  CHECK(io::arc_object(D(5, 2)) == json{{"k", "D"}, {"i", 5}, {"j", 2}});
  CHECK_THROWS_AS(io::arc_from_json(json{{"k", "U"}, {"i", 0}, {"j", 1}}), Error);
  CHECK_THROWS_AS(io::arc_from_json(json{{"k", "Q"}, {"i", 0}, {"j", 5}}), Error);
  CHECK_THROWS_AS(io::arc_from_json(json(7)), Error);
}

TEST_CASE("description codec round trip") {
  for (const auto& e : catalog::all()) {
    CAPTURE(e.name);
    json j = io::desc_to_json(e.desc);
    CHECK(io::desc_from_json(j) == e.desc);
    CHECK(io::parse_desc(j.dump()) == e.desc);
  }
  TriangulationDesc d = catalog::full_fountain();
  d.removed = {C(0, 5)};
  d.arcs = {D(6, 4)};
  CHECK(io::desc_from_json(io::desc_to_json(d)) == d);
  TriangulationDesc p;
  p.families = {periodic({C(0, 0), U(0, 2)}, 2, Dir::Right, std::make_pair(index_t{1}, index_t{1}))};
  CHECK(io::desc_from_json(io::desc_to_json(p)) == p);
}

TEST_CASE("documented json layout") {
  const char* text = R"js({"arcs":["C(0,0)"],"families":[{"kind":"upper_fan","base":0,"start":-2,"dir":"left"},)js"
                     R"js({"kind":"conn_fan_upper","base":4,"start":3,"dir":"left"},)js"
                     R"js({"kind":"periodic","seed":["C(0,0)","C(1,0)"],"period":1,"dir":"right"},)js"
                     R"js({"kind":"nested","a":0,"b":2,"word":{"prefix":"","cycle":"LR"}}],"window":[-3,3]})js";
  TriangulationDesc d = io::parse_desc(text);
  CHECK(d.arcs == std::set<Arc>{C(0, 0)});
  REQUIRE(d.families.size() == 4);
  CHECK(d.families[0] == upper_fan(0, -2, Dir::Left));
  CHECK(d.families[1] == conn_fan_upper(4, 3, Dir::Left));
  CHECK(d.families[2] == periodic({C(0, 0), C(1, 0)}, 1, Dir::Right));
  CHECK(d.families[3] == nested(0, 2, "", "LR"));
  CHECK(d.window.lo == -3);
  CHECK(d.window.hi == 3);
}

TEST_CASE("malformed descriptions") {
  CHECK_THROWS_AS(io::parse_desc("{"), Error);
  CHECK_THROWS_AS(io::parse_desc("[]"), Error);
  CHECK_THROWS_AS(io::parse_desc(R"js({"arcs":["C(0,0)","C(0,0)"]})js"), Error);
  CHECK_THROWS_AS(io::parse_desc(R"js({"arcs":"C(0,0)"})js"), Error);
  CHECK_THROWS_AS(io::parse_desc(R"js({"families":[{"kind":"spiral"}]})js"), Error);
  CHECK_THROWS_AS(io::parse_desc(R"js({"families":[{"kind":"upper_fan","base":0,"start":-2,"dir":"up"}]})js"), Error);
  CHECK_THROWS_AS(io::parse_desc(R"js({"window":[3,-3]})js"), Error);
  TriangulationDesc d = io::parse_desc(R"js({"arcs":["C(-2,4)","U(1,5)"]})js");
  CHECK(d.window.lo == -2);
  CHECK(d.window.hi == 5);
}

TEST_CASE("orientation codec") {
  rep::Orientation o = io::orientation_from_json(json::parse(R"js({"core":"RLRL","core_start":-2,"left_cycle":"RL","right_cycle":"RL"})js"));
  CHECK(o.core == "RLRL");
  CHECK(o.core_start == -2);
  json back = io::orientation_to_json(o);
  CHECK(io::orientation_from_json(back).right_cycle == "RL");
  CHECK_THROWS_AS(io::orientation_from_json(json::parse(R"js({"left_cycle":"RR","right_cycle":"RL"})js")), Error);
}

TEST_CASE("quiver exports") {
  Triangulation st(catalog::standard());
  QuiverGraph q = quiver(st, {-1, 2});
  json j = io::quiver_to_json(q);
  CHECK(j["vertices"].size() == 7);
  CHECK(j["arrows"].size() == 6);
  std::vector<std::string> names;
  for (const json& v : j["vertices"]) names.push_back(v["arc"]);
  CHECK(std::is_sorted(names.begin(), names.end()));
  CHECK(j["arrows"][0] == json{"C(-1,2)", "C(-1,1)"});
  std::string dot = io::quiver_to_dot(q);
  CHECK(dot.rfind("digraph Q {", 0) == 0);
  CHECK(count(dot, " -> ") == 6);
  CHECK(dot.find("\"C(0,1)\" -> \"C(0,0)\";") != std::string::npos);
  CHECK(io::quiver_to_dot(q) == dot);
}

TEST_CASE("svg rendering") {
  Triangulation st(catalog::standard());
  io::RenderSpec spec;
  spec.window = {-3, 3};
  std::string svg = io::render_svg(st, spec);
  CHECK(count(svg, "class=\"mark upper\"") == 7);
  CHECK(count(svg, "class=\"mark lower\"") == 7);
  CHECK(count(svg, "<path class=\"arc") == st.members_in_window({-3, 3}).size());
  for (const Arc& a : st.members_in_window({-3, 3}))
    CHECK(svg.find("data-arc=\"" + to_string(a) + "\"") != std::string::npos);
  CHECK(count(svg, "<line class=\"boundary\"") == 2);
  CHECK(io::render_svg(st, spec) == svg);

  spec.highlights = {C(0, 0)};
  std::string hl = io::render_svg(st, spec);
  CHECK(count(hl, "class=\"arc hl\"") == 1);
  CHECK(hl.find("class=\"arc hl\" data-arc=\"C(0,0)\"") != std::string::npos);

  spec.labels = false;
  CHECK(count(io::render_svg(st, spec), "<text") == 0);
  spec.unit = 0;
  CHECK_THROWS_AS(io::render_svg(st, spec), Error);
}

TEST_CASE("arc curves stay inside the strip") {
  Triangulation ff(catalog::full_fountain());
  io::RenderSpec spec;
  spec.window = {-6, 6};
  std::string svg = io::render_svg(ff, spec);
  std::regex path_re("d=\"M ([-0-9.]+) ([-0-9.]+) Q ([-0-9.]+) ([-0-9.]+) ([-0-9.]+) ([-0-9.]+)\"");
  std::regex line_re("<line class=\"boundary\" x1=\"[-0-9.]+\" y1=\"([-0-9.]+)\"");
  std::vector<double> ys;
  for (auto it = std::sregex_iterator(svg.begin(), svg.end(), line_re); it != std::sregex_iterator(); ++it)
    ys.push_back(std::stod((*it)[1]));
  REQUIRE(ys.size() == 2);
  double top = std::min(ys[0], ys[1]), bottom = std::max(ys[0], ys[1]);
  std::size_t n = 0;
  for (auto it = std::sregex_iterator(svg.begin(), svg.end(), path_re); it != std::sregex_iterator(); ++it) {
    ++n;
    double y0 = std::stod((*it)[2]), cy = std::stod((*it)[4]), y1 = std::stod((*it)[6]);
    for (int k = 1; k < 20; ++k) {
      double t = k / 20.0;
      double y = (1 - t) * (1 - t) * y0 + 2 * t * (1 - t) * cy + t * t * y1;
      CHECK(y > top);
      CHECK(y < bottom);
    }
  }
  CHECK(n == ff.members_in_window({-6, 6}).size());
}
