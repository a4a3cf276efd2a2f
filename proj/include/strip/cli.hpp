#pragma once

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <httplib.h>
#include <json.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "strip/api.hpp"
#include "strip/cluster_ops.hpp"
#include "strip/io.hpp"
#include "strip/oracle.hpp"
#include "strip/triangulation.hpp"
#include "strip/verify.hpp"

namespace strip::cli {

using json = nlohmann::json;

inline std::shared_ptr<spdlog::logger> logger() {
  static std::shared_ptr<spdlog::logger> lg = [] {
    auto l = spdlog::stderr_color_mt("strip");
    const char* env = std::getenv("STRIP_LOG");
    l->set_level(env ? spdlog::level::from_str(env) : spdlog::level::warn);
    return l;
  }();
  return lg;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("io", "cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error("io", "cannot write " + path);
  out << text;
}

inline std::string flipped_path(const std::string& path) {
  std::filesystem::path p(path);
  return (p.parent_path() / (p.stem().string() + "'" + p.extension().string())).string();
}

struct Options {
  std::string file;
  std::vector<index_t> window;
  std::string arc;
  std::string output;
  std::string format = "json";
  std::string from, to;
  std::string orientation;
  int port = 8080;
  std::string host = "127.0.0.1";
  std::string snapshot_dir;
};

inline Window pick_window(const Options& o, const Triangulation& t) {
  if (o.window.empty()) return t.desc().window.inflate(3);
  if (o.window[0] > o.window[1]) throw Error("malformed", "window has lo > hi");
  return {o.window[0], o.window[1]};
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Triangulations of the infinite strip and the cluster category of type A infinity"};
  app.require_subcommand(1);
  Options o;

  auto window_opt = [&](CLI::App* sc) {
    sc->add_option("--window", o.window, "window lo hi")->expected(2);
  };
  auto file_arg = [&](CLI::App* sc) { sc->add_option("file", o.file, "triangulation JSON")->required(); };

  auto* check = app.add_subcommand("check", "validate a triangulation description");
  file_arg(check);
  window_opt(check);

  auto* flip_cmd = app.add_subcommand("flip", "flip one arc");
  file_arg(flip_cmd);
  flip_cmd->add_option("--arc", o.arc)->required();
  flip_cmd->add_option("-o,--output", o.output);
  window_opt(flip_cmd);

  auto* quiver_cmd = app.add_subcommand("quiver", "quiver on a window");
  file_arg(quiver_cmd);
  quiver_cmd->add_option("--format", o.format)->check(CLI::IsMember({"dot", "json"}));
  window_opt(quiver_cmd);

  auto* hom = app.add_subcommand("hom", "dimension of Hom between arcs");
  auto* ext = app.add_subcommand("ext", "dimension of Ext^1 between arcs");
  for (auto* sc : {hom, ext}) {
    sc->add_option("--from", o.from)->required();
    sc->add_option("--to", o.to)->required();
    window_opt(sc);
  }

  auto* render = app.add_subcommand("render", "render a window as SVG");
  file_arg(render);
  render->add_option("-o,--output", o.output);
  window_opt(render);

  auto* orc_cmd = app.add_subcommand("oracle-verify", "check the arc model against representations");
  orc_cmd->add_option("--orientation", o.orientation, "orientation JSON")->required();
  window_opt(orc_cmd);

  auto* serve = app.add_subcommand("serve", "run the HTTP session service");
  serve->add_option("--port", o.port);
  serve->add_option("--host", o.host);
  serve->add_option("--snapshot-dir", o.snapshot_dir);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << json{{"error", "usage"}, {"message", e.what()}}.dump() << "\n";
    return 2;
  }

  auto lg = logger();
  try {
    if (*check) {
      Triangulation t(io::parse_desc(read_file(o.file)));
      std::vector<Window> ws;
      if (!o.window.empty()) ws = {pick_window(o, t)};
      ValidationReport r = validate(t, ws);
      lg->info("validated over {} windows", r.windows.size());
      json j = {{"noncrossing", r.pairwise_noncrossing}, {"maximal", r.certified_maximal}};
      if (r.counterexample) j["counterexample"] = to_string(*r.counterexample);
      if (r.crossing_pair) j["crossing_pair"] = {to_string(r.crossing_pair->first), to_string(r.crossing_pair->second)};
      if (r.certified_maximal) {
        json s = api::status_json(t);
        j["compact"] = s["compact"];
        j["fountains"] = s["fountains"];
        j["components"] = s["components"];
      }
      out << j.dump() << "\n";
      return r.certified_maximal ? 0 : 1;
    }
    if (*flip_cmd) {
      Triangulation t(io::parse_desc(read_file(o.file)));
      require_certified(t);
      FlipResult f = flip(t, parse_arc(o.arc));
      std::string path = o.output.empty() ? flipped_path(o.file) : o.output;
      write_file(path, io::desc_to_json(f.desc).dump(2) + "\n");
      lg->info("wrote {}", path);
      out << to_string(f.partner) << "\n";
      return 0;
    }
    if (*quiver_cmd) {
      Triangulation t(io::parse_desc(read_file(o.file)));
      QuiverGraph q = quiver(t, pick_window(o, t));
      out << (o.format == "dot" ? io::quiver_to_dot(q) : io::quiver_to_json(q).dump() + "\n");
      return 0;
    }
    if (*hom || *ext) {
      Arc a = parse_arc(o.from), b = parse_arc(o.to);
      out << (*hom ? hom_dim(a, b) : ext_dim(a, b)) << "\n";
      return 0;
    }
    if (*render) {
      Triangulation t(io::parse_desc(read_file(o.file)));
      io::RenderSpec spec;
      spec.window = pick_window(o, t);
      std::string svg = io::render_svg(t, spec);
      if (o.output.empty()) out << svg;
      else write_file(o.output, svg);
      return 0;
    }
    if (*orc_cmd) {
      rep::Oracle orc(io::orientation_from_json(json::parse(read_file(o.orientation))));
      Window w = o.window.empty() ? Window{-10, 10} : Window{o.window[0], o.window[1]};
      if (w.lo > w.hi) throw Error("malformed", "window has lo > hi");
      verify::Report r = verify::dictionary(orc, w);
      for (auto& [k, v] : verify::structure(orc, w)) r[k] = v;
      json j = json::object();
      for (const auto& [k, v] : r) {
        json e = {{"cases", v.cases}, {"failures", v.failures}};
        if (!v.examples.empty()) e["examples"] = v.examples;
        j[k] = e;
      }
      bool ok = verify::all_ok(r);
      out << json{{"ok", ok}, {"checks", j}}.dump() << "\n";
      return ok ? 0 : 1;
    }
    if (*serve) {
      std::optional<std::filesystem::path> snap;
      if (!o.snapshot_dir.empty()) snap = o.snapshot_dir;
      api::Service svc(snap);
      httplib::Server srv;
      svc.mount(srv);
      lg->warn("listening on {}:{}", o.host, o.port);
      if (!srv.listen(o.host, o.port)) throw Error("io", "cannot listen on port " + std::to_string(o.port));
      return 0;
    }
  } catch (const Error& e) {
    err << json{{"error", e.code()}, {"message", e.what()}}.dump() << "\n";
    return 1;
  } catch (const json::exception& e) {
    err << json{{"error", "malformed"}, {"message", e.what()}}.dump() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace strip::cli
