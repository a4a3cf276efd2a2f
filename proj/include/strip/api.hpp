#pragma once

#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <shared_mutex>
#include <string>
#include <vector>

#include <httplib.h>
#include <json.hpp>

#include "strip/cluster_ops.hpp"
#include "strip/io.hpp"
#include "strip/triangulation.hpp"

namespace strip::api {

using json = nlohmann::json;

struct HistoryEntry {
  Arc removed;
  Arc added;
};

struct Session {
  std::mutex m;
  TriangulationDesc initial;
  TriangulationDesc current;
  std::vector<HistoryEntry> history;
};

inline json status_json(const Triangulation& t) {
  json s;
  CompactResult c = is_compact(t, true);
  s["compact"] = c.compact;
  json fs = json::array();
  for (const FountainInfo& f : fountains(t, true)) fs.push_back({{"base", to_string(f.base)}, {"kind", f.kind}});
  s["fountains"] = fs;
  if (c.compact) s["components"] = component_count(t, true).count;
  else s["components"] = nullptr;
  return s;
}

inline json report_json(const ValidationReport& r) {
  json j;
  j["pairwise_noncrossing"] = r.pairwise_noncrossing;
  j["window_maximal"] = r.window_maximal;
  j["certified_maximal"] = r.certified_maximal;
  if (r.counterexample) j["counterexample"] = to_string(*r.counterexample);
  if (r.crossing_pair)
    j["crossing_pair"] = {to_string(r.crossing_pair->first), to_string(r.crossing_pair->second)};
  json ws = json::array();
  for (const Window& w : r.windows) ws.push_back({w.lo, w.hi});
  j["windows"] = ws;
  j["notes"] = r.notes;
  return j;
}

class Service {
 public:
  explicit Service(std::optional<std::filesystem::path> snapshot_dir = std::nullopt)
      : snapshot_dir_(std::move(snapshot_dir)), rng_(std::random_device{}()) {}

  void mount(httplib::Server& srv) {
    srv.Post("/sessions", [this](const httplib::Request& req, httplib::Response& res) {
      handle(res, [&] { create(req, res); });
    });
    srv.Get(R"(/sessions/([A-Za-z0-9]+))", [this](const httplib::Request& req, httplib::Response& res) {
      handle(res, [&] { get_state(req, res); });
    });
    srv.Get(R"(/sessions/([A-Za-z0-9]+)/window)", [this](const httplib::Request& req, httplib::Response& res) {
      handle(res, [&] { window(req, res); });
    });
    srv.Post(R"(/sessions/([A-Za-z0-9]+)/flip)", [this](const httplib::Request& req, httplib::Response& res) {
      handle(res, [&] { flip_arc(req, res); });
    });
    srv.Post(R"(/sessions/([A-Za-z0-9]+)/undo)", [this](const httplib::Request& req, httplib::Response& res) {
      handle(res, [&] { undo(req, res); });
    });
    srv.Get(R"(/sessions/([A-Za-z0-9]+)/hom)", [this](const httplib::Request& req, httplib::Response& res) {
      handle(res, [&] { dim(req, res, false); });
    });
    srv.Get(R"(/sessions/([A-Za-z0-9]+)/ext)", [this](const httplib::Request& req, httplib::Response& res) {
      handle(res, [&] { dim(req, res, true); });
    });
    srv.Get(R"(/sessions/([A-Za-z0-9]+)/svg)", [this](const httplib::Request& req, httplib::Response& res) {
      handle(res, [&] { svg(req, res); });
    });
  }

  // Largest window width served by /window and /svg.
  static constexpr index_t max_window = 200;

 private:
  struct HttpError {
    int status;
    std::string code;
    std::string message;
    json extra;
  };

  template <class F>
  void handle(httplib::Response& res, F&& f) {
    try {
      f();
    } catch (const HttpError& e) {
      json body = {{"error", e.code}, {"message", e.message}};
      if (!e.extra.is_null()) body.update(e.extra);
      send(res, e.status, body);
    } catch (const Error& e) {
      int status = 400;
      if (e.code() == "not_in_T" || e.code() == "no_quadrilateral") status = 409;
      send(res, status, {{"error", e.code()}, {"message", e.what()}});
    } catch (const std::exception& e) {
      send(res, 500, {{"error", "internal"}, {"message", e.what()}});
    }
  }

  static void send(httplib::Response& res, int status, const json& body) {
    res.status = status;
    res.set_content(body.dump(), "application/json");
  }

  std::shared_ptr<Session> lookup(const httplib::Request& req) {
    std::string id = req.matches[1];
    std::shared_lock lock(registry_m_);
    auto it = sessions_.find(id);
    if (it == sessions_.end()) throw HttpError{404, "unknown_session", "no session " + id, nullptr};
    return it->second;
  }

  std::string fresh_id() {
    static const char* hex = "0123456789abcdef";
    std::string id;
    for (int i = 0; i < 16; ++i) id += hex[rng_() % 16];
    return id;
  }

  static json parse_body(const httplib::Request& req) {
    try {
      return json::parse(req.body);
    } catch (const json::parse_error& e) {
      throw HttpError{400, "malformed", std::string("invalid JSON: ") + e.what(), nullptr};
    }
  }

  static Arc query_arc(const httplib::Request& req, const char* key) {
    if (!req.has_param(key)) throw HttpError{400, "malformed", std::string("missing parameter ") + key, nullptr};
    try {
      return parse_arc(req.get_param_value(key));
    } catch (const Error& e) {
      throw HttpError{400, "malformed", e.what(), nullptr};
    }
  }

  static Window query_window(const httplib::Request& req, const Triangulation& t) {
    Window w = t.effective_window().inflate(3);
    auto get = [&](const char* key, index_t& out) {
      if (!req.has_param(key)) return;
      std::string v = req.get_param_value(key);
      try {
        std::size_t used = 0;
        long long x = std::stoll(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        out = x;
      } catch (const std::logic_error&) {
        throw HttpError{400, "malformed", std::string("parameter ") + key + " must be an integer", nullptr};
      }
    };
    get("lo", w.lo);
    get("hi", w.hi);
    if (w.lo > w.hi) throw HttpError{400, "malformed", "window has lo > hi", nullptr};
    if (w.hi - w.lo > max_window) throw HttpError{400, "window_too_large", "window is wider than " + std::to_string(max_window), nullptr};
    return w;
  }

  void snapshot(const std::string& id, const Session& s) {
    if (!snapshot_dir_) return;
    json hist = json::array();
    for (const auto& h : s.history) hist.push_back({{"removed", to_string(h.removed)}, {"added", to_string(h.added)}});
    json j = {{"id", id}, {"initial", io::desc_to_json(s.initial)}, {"current", io::desc_to_json(s.current)}, {"history", hist}};
    std::filesystem::create_directories(*snapshot_dir_);
    std::ofstream(*snapshot_dir_ / (id + ".json")) << j.dump(2) << "\n";
  }

  void create(const httplib::Request& req, httplib::Response& res) {
    TriangulationDesc d;
    try {
      d = io::desc_from_json(parse_body(req));
      Triangulation check(d);
    } catch (const Error& e) {
      throw HttpError{400, e.code(), e.what(), nullptr};
    }
    Triangulation t(d);
    ValidationReport rep = validate(t);
    if (!rep.certified_maximal)
      throw HttpError{422, "invalid_triangulation", "description is not a certified triangulation",
                      {{"report", report_json(rep)}}};
    auto s = std::make_shared<Session>();
    s->initial = d;
    s->current = d;
    std::string id;
    {
      std::unique_lock lock(registry_m_);
      do id = fresh_id(); while (sessions_.count(id));
      sessions_[id] = s;
    }
    {
      std::lock_guard g(s->m);
      snapshot(id, *s);
    }
    send(res, 201, {{"id", id}});
  }

  void get_state(const httplib::Request& req, httplib::Response& res) {
    auto s = lookup(req);
    std::lock_guard g(s->m);
    Triangulation t(s->current);
    json hist = json::array();
    for (const auto& h : s->history) hist.push_back({{"removed", to_string(h.removed)}, {"added", to_string(h.added)}});
    send(res, 200, {{"id", std::string(req.matches[1])}, {"desc", io::desc_to_json(s->current)}, {"status", status_json(t)}, {"history", hist}});
  }

  void window(const httplib::Request& req, httplib::Response& res) {
    auto s = lookup(req);
    std::lock_guard g(s->m);
    Triangulation t(s->current);
    Window w = query_window(req, t);
    json out;
    out["window"] = {w.lo, w.hi};
    out["arcs"] = io::arcs_json(t.members_in_window(w));
    if (is_compact(t, true).compact) out["quiver"] = io::quiver_to_json(quiver(t, w, true));
    else out["quiver"] = nullptr;
    io::RenderSpec spec;
    spec.window = w;
    out["svg"] = io::render_svg(t, spec);
    send(res, 200, out);
  }

  static json arrow_delta(const Triangulation& before, const Triangulation& after, const Window& w) {
    if (!is_compact(before, true).compact || !is_compact(after, true).compact) return nullptr;
    auto names = [](const QuiverGraph& q) {
      std::set<std::pair<std::string, std::string>> s;
      for (const auto& [a, b] : q.arrows) s.emplace(to_string(a), to_string(b));
      return s;
    };
    auto a = names(quiver(before, w, true)), b = names(quiver(after, w, true));
    json removed = json::array(), added = json::array();
    for (const auto& e : a)
      if (!b.count(e)) removed.push_back({e.first, e.second});
    for (const auto& e : b)
      if (!a.count(e)) added.push_back({e.first, e.second});
    return {{"window", {w.lo, w.hi}}, {"removed_arrows", removed}, {"added_arrows", added}};
  }

  json apply_flip(const std::string& id, Session& s, const Arc& u, bool record) {
    Triangulation t(s.current);
    FlipResult f = flip(t, u);
    Triangulation nt(f.desc);
    Window w{std::min({u.i, u.j, f.partner.i, f.partner.j}), std::max({u.i, u.j, f.partner.i, f.partner.j})};
    json delta = arrow_delta(t, nt, w.inflate(3));
    s.current = f.desc;
    if (record) s.history.push_back({u, f.partner});
    snapshot(id, s);
    return {{"removed", to_string(u)}, {"added", to_string(f.partner)}, {"quiver_delta", delta}};
  }

  void flip_arc(const httplib::Request& req, httplib::Response& res) {
    auto s = lookup(req);
    json body = parse_body(req);
    if (!body.is_object() || !body.contains("arc"))
      throw HttpError{400, "malformed", "body must be {\"arc\": ...}", nullptr};
    Arc u;
    try {
      u = io::arc_from_json(body["arc"]);
    } catch (const Error& e) {
      throw HttpError{400, "malformed", e.what(), nullptr};
    }
    std::lock_guard g(s->m);
    send(res, 200, apply_flip(req.matches[1], *s, u, true));
  }

  void undo(const httplib::Request& req, httplib::Response& res) {
    auto s = lookup(req);
    std::lock_guard g(s->m);
    if (s->history.empty()) throw HttpError{409, "nothing_to_undo", "history is empty", nullptr};
    HistoryEntry h = s->history.back();
    json out = apply_flip(req.matches[1], *s, h.added, false);
    s->history.pop_back();
    snapshot(req.matches[1], *s);
    send(res, 200, out);
  }

  void dim(const httplib::Request& req, httplib::Response& res, bool ext) {
    lookup(req);
    Arc a = query_arc(req, "from"), b = query_arc(req, "to");
    send(res, 200, {{"dim", ext ? ext_dim(a, b) : hom_dim(a, b)}});
  }

  void svg(const httplib::Request& req, httplib::Response& res) {
    auto s = lookup(req);
    std::lock_guard g(s->m);
    Triangulation t(s->current);
    io::RenderSpec spec;
    spec.window = query_window(req, t);
    res.status = 200;
    res.set_content(io::render_svg(t, spec), "image/svg+xml");
  }

  std::optional<std::filesystem::path> snapshot_dir_;
  std::shared_mutex registry_m_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  std::mt19937_64 rng_;
};

}  // namespace strip::api
