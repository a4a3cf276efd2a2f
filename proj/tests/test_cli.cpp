#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "strip/catalog.hpp"
#include "strip/cli.hpp"

using namespace strip;
using json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "strip");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("strip_cli_" + std::to_string(::getpid()));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string write(const std::string& name, const std::string& text) const {
    std::ofstream(path / name) << text;
    return (path / name).string();
  }
};

}  // namespace

TEST_CASE("check") {
  TempDir tmp;
  std::string f = tmp.write("T.json", io::desc_to_json(catalog::standard()).dump());
  Run r = run({"check", f});
  CHECK(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j == json{{"noncrossing", true}, {"maximal", true}, {"compact", true}, {"fountains", json::array()}, {"components", 1}});

  std::string two = tmp.write("two.json", io::desc_to_json(catalog::two_fountain()).dump());
  j = json::parse(run({"check", two}).out);
  CHECK(j["components"] == 3);
  CHECK(j["fountains"] == json::parse(R"js([{"base":"l4","kind":"left"},{"base":"l5","kind":"right"}])js"));

  std::string bad = tmp.write("bad.json", R"js({"arcs":["C(0,0)","C(1,1)"]})js");
  r = run({"check", bad});
  CHECK(r.code == 1);
  CHECK(json::parse(r.out)["noncrossing"] == false);

  std::string lone = tmp.write("lone.json", R"js({"arcs":["C(0,0)"]})js");
  r = run({"check", lone, "--window", "-4", "4"});
  CHECK(r.code == 1);
  j = json::parse(r.out);
  CHECK(j["maximal"] == false);
  CHECK(j.contains("counterexample"));
}

TEST_CASE("flip writes the new description") {
  TempDir tmp;
  std::string f = tmp.write("T.json", io::desc_to_json(catalog::standard()).dump());
  Run r = run({"flip", f, "--arc", "C(0,0)"});
  CHECK(r.code == 0);
  CHECK(r.out == "C(1,1)\n");
  fs::path out = tmp.path / "T'.json";
  REQUIRE(fs::exists(out));
  std::ifstream in(out);
  std::stringstream ss;
  ss << in.rdbuf();
  TriangulationDesc d = io::parse_desc(ss.str());
  CHECK(d == flip(Triangulation(catalog::standard()), C(0, 0)).desc);

  std::string o2 = (tmp.path / "back.json").string();
  r = run({"flip", out.string(), "--arc", "C(1,1)", "-o", o2});
  CHECK(r.out == "C(0,0)\n");
  std::ifstream in2(o2);
  std::stringstream ss2;
  ss2 << in2.rdbuf();
  CHECK(io::parse_desc(ss2.str()) == catalog::standard());

  r = run({"flip", f, "--arc", "U(0,3)"});
  CHECK(r.code == 1);
  CHECK(json::parse(r.err)["error"] == "not_in_T");
}

TEST_CASE("hom and ext") {
  Run r = run({"hom", "--from", "C(0,1)", "--to", "C(0,0)"});
  CHECK(r.code == 0);
  CHECK(r.out == "1\n");
  CHECK(run({"hom", "--from", "C(0,0)", "--to", "C(0,1)"}).out == "0\n");
  CHECK(run({"ext", "--from", "C(0,0)", "--to", "C(1,1)"}).out == "1\n");
  r = run({"ext", "--from", "C(0,0)", "--to", "U(0,1)"});
  CHECK(r.code == 1);
  CHECK(json::parse(r.err).contains("error"));
}

TEST_CASE("quiver and render") {
  TempDir tmp;
  std::string f = tmp.write("T.json", io::desc_to_json(catalog::standard()).dump());
  Run r = run({"quiver", f, "--window", "-1", "2"});
  CHECK(r.code == 0);
  json q = json::parse(r.out);
  CHECK(q["arrows"].size() == 6);
  r = run({"quiver", f, "--format", "dot", "--window", "-1", "2"});
  CHECK(r.out.find("\"C(1,0)\" -> \"C(1,-1)\";") != std::string::npos);
  // Default window is the declared window [-3,3] grown by 3.
  q = json::parse(run({"quiver", f}).out);
  std::size_t expect = 0;
  for (index_t k = -12; k <= 12; ++k)
    for (Arc a : {C(k, -k), C(k + 1, -k)}) expect += in_window(a, {-6, 6});
  CHECK(q["vertices"].size() == expect);

  std::string svg = (tmp.path / "t.svg").string();
  r = run({"render", f, "-o", svg, "--window", "-3", "3"});
  CHECK(r.code == 0);
  std::ifstream in(svg);
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(ss.str().rfind("<svg", 0) == 0);
  CHECK(run({"render", f, "--window", "-3", "3"}).out == ss.str());

  std::string split = tmp.write("split.json", io::desc_to_json(catalog::split_nested()).dump());
  r = run({"quiver", split});
  CHECK(r.code == 1);
  CHECK(json::parse(r.err)["error"] == "not_compact");
}

TEST_CASE("oracle-verify") {
  TempDir tmp;
  std::string o = tmp.write("o.json", R"js({"core":"","core_start":0,"left_cycle":"RL","right_cycle":"RL"})js");
  Run r = run({"oracle-verify", "--orientation", o, "--window", "-6", "6"});
  CHECK(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["ok"] == true);
  CHECK(j["checks"].size() > 5);
  std::string bad = tmp.write("bad.json", R"js({"left_cycle":"RR","right_cycle":"RL"})js");
  CHECK(run({"oracle-verify", "--orientation", bad}).code == 1);
}

TEST_CASE("usage errors") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"hom", "--from", "C(0,0)"}).code == 2);
  CHECK(run({"quiver", "x.json", "--format", "png"}).code == 2);
  CHECK(run({"check", "x.json", "--window", "1"}).code == 2);
  Run r = run({"check", "/nonexistent/T.json"});
  CHECK(r.code == 1);
  CHECK(json::parse(r.err)["error"] == "io");
  CHECK(run({"--help"}).code == 0);
}
