#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "strip/arc.hpp"
#include "strip/family.hpp"

namespace strip {

// Finite explicit core plus tail families. `removed` lists family members that were
// flipped away; every entry must be generated by some family.
struct TriangulationDesc {
  std::set<Arc> arcs;
  std::vector<ArcFamily> families;
  std::set<Arc> removed;
  Window window{-3, 3};

  friend bool operator==(const TriangulationDesc&, const TriangulationDesc&) = default;
};

inline TriangulationDesc translate_all(const TriangulationDesc& d, index_t k) {
  TriangulationDesc out;
  for (const Arc& a : d.arcs) out.arcs.insert(translate(a, k));
  for (const Arc& a : d.removed) out.removed.insert(translate(a, k));
  for (ArcFamily f : d.families) {
    f.base = checked_add(f.base, k);
    f.start = checked_add(f.start, k);
    f.a = checked_add(f.a, k);
    f.b = checked_add(f.b, k);
    for (Arc& s : f.seed) s = translate(s, k);
    out.families.push_back(f);
  }
  out.window = {checked_add(d.window.lo, k), checked_add(d.window.hi, k)};
  return out;
}

enum class NeighborStatus { Found, None, Accumulates };

struct Neighbor {
  NeighborStatus status = NeighborStatus::None;
  Point other;
  std::optional<Arc> arc;  // empty for a boundary segment
};

struct IncidenceEntry {
  CcwKey key;
  std::optional<Arc> arc;       // a single incident arc
  std::optional<Ray> fan;       // an infinite fan portion, first live member at `key`
  std::size_t family = 0;       // family index for fan entries
};

struct FountainInfo {
  Point base;
  std::string kind;  // "left", "right" or "full"
  friend bool operator==(const FountainInfo&, const FountainInfo&) = default;
};

struct ValidationReport {
  bool pairwise_noncrossing = true;
  bool window_maximal = true;
  bool certified_maximal = true;
  std::optional<Arc> counterexample;
  std::optional<std::pair<Arc, Arc>> crossing_pair;
  std::vector<Window> windows;
  std::vector<std::string> notes;
};

struct CompactResult {
  bool compact = false;
  std::optional<Point> witness_point;
  std::string witness;
};

struct ComponentCount {
  int m = 0;
  int n = 0;
  int count = 1;
};

class Triangulation {
 public:
  explicit Triangulation(TriangulationDesc d) : desc_(std::move(d)) {
    if (desc_.window.lo > desc_.window.hi) throw Error("malformed", "declared window has lo > hi");
    for (const ArcFamily& f : desc_.families) unfolded_.push_back(unfold(f));
    for (const Arc& a : desc_.arcs) {
      if (!valid(a.kind, a.i, a.j)) throw Error("malformed", to_string(a) + " is not an arc");
      if (generated(a))
        throw Error("malformed", to_string(a) + " is both explicit and generated by a family");
    }
    for (const Arc& a : desc_.removed)
      if (!generated(a))
        throw Error("malformed", "removed arc " + to_string(a) + " is not generated by any family");
  }

  const TriangulationDesc& desc() const { return desc_; }
  const std::vector<Unfolded>& unfolded() const { return unfolded_; }

  // Declared window widened to cover explicit and removed arcs and the first member of
  // every family piece.
  Window effective_window() const {
    Window w = desc_.window;
    for (const Arc& a : desc_.arcs) w = hull(w, a);
    for (const Arc& a : desc_.removed) w = hull(w, a);
    for (const Unfolded& u : unfolded_) {
      for (const Arc& a : u.finite) w = hull(w, a);
      for (const Ray& r : u.rays) w = hull(w, r.at(0));
    }
    return w;
  }

  index_t reach() const {
    index_t r = 1;
    for (const Unfolded& u : unfolded_) r = std::max(r, family_reach(u));
    return r;
  }

  bool generated(const Arc& a) const {
    for (const Unfolded& u : unfolded_) {
      for (const Arc& f : u.finite)
        if (f == a) return true;
      for (const Ray& r : u.rays)
        if (r.index_of(a)) return true;
    }
    return false;
  }

  bool contains(const Arc& a) const {
    if (desc_.arcs.count(a)) return true;
    return !desc_.removed.count(a) && generated(a);
  }

  bool live(const Arc& a) const { return !desc_.removed.count(a); }

  // A member of T crossing u, if any.
  std::optional<Arc> crossing_member(const Arc& u) const {
    for (const Arc& e : desc_.arcs)
      if (cross(e, u)) return e;
    for (const Unfolded& f : unfolded_) {
      for (const Arc& a : f.finite)
        if (live(a) && cross(a, u)) return a;
      for (const Ray& r : f.rays) {
        auto segs = ray_segments(r, {u.i, u.j}, [&](const Arc& m) { return cross(m, u); });
        for (const KSegment& s : segs) {
          if (!s.value) continue;
          if (auto m = first_live(r, s)) return *m;
        }
      }
    }
    return std::nullopt;
  }

  bool crosses(const Arc& u) const { return crossing_member(u).has_value(); }

  std::vector<Arc> members_in_window(const Window& w) const {
    std::set<Arc> out;
    for (const Arc& e : desc_.arcs)
      if (in_window(e, w)) out.insert(e);
    for (const Unfolded& f : unfolded_) {
      for (const Arc& a : f.finite)
        if (live(a) && in_window(a, w)) out.insert(a);
      for (const Ray& r : f.rays)
        if (auto range = r.window_range(w))
          for (index_t k = range->first; k <= range->second; ++k) {
            Arc m = r.at(k);
            if (live(m)) out.insert(m);
          }
    }
    return {out.begin(), out.end()};
  }

  bool has_connecting() const {
    for (const Arc& e : desc_.arcs)
      if (e.kind == Kind::Connecting) return true;
    for (const Unfolded& f : unfolded_) {
      for (const Arc& a : f.finite)
        if (a.kind == Kind::Connecting && live(a)) return true;
      for (const Ray& r : f.rays)
        if (r.kind == Kind::Connecting) return true;
    }
    return false;
  }

  // Immediate neighbour of `from` in the counter-clockwise order at p among the arcs of
  // T (and the boundary segments at p when with_boundary is set).
  Neighbor ccw_neighbor(const Point& p, const Point& from, bool successor, bool with_boundary) const {
    const int dir = successor ? 1 : -1;
    auto tkey = [&](const CcwKey& k) { return CcwKey{dir * k.first, dir * k.second}; };
    const CcwKey tk = tkey(ccw_key(p, from));
    struct Best {
      CcwKey key;
      Point other;
      std::optional<Arc> arc;
    };
    std::optional<Best> best;
    std::vector<int> blockers;
    auto consider = [&](const Point& other, std::optional<Arc> arc) {
      CcwKey k = tkey(ccw_key(p, other));
      if (k > tk && (!best || k < best->key)) best = Best{k, other, arc};
    };
    for (const Arc& e : desc_.arcs)
      if (has_endpoint(e, p)) consider(other_endpoint(e, p), e);
    for (const Unfolded& f : unfolded_) {
      for (const Arc& a : f.finite)
        if (live(a) && has_endpoint(a, p)) consider(other_endpoint(a, p), a);
      for (const Ray& r : f.rays) {
        if (r.is_fan() && r.base() == p) {
          Arc first = r.at(0);
          int block = dir * ccw_key(p, other_endpoint(first, p)).first;
          index_t o0 = r.di == 0 ? first.j : first.i;
          __int128 c = static_cast<__int128>(dir) * -o0;
          __int128 m = static_cast<__int128>(-dir) * r.moving_slope();
          if (block < tk.first) continue;
          if (m > 0) {
            __int128 k0 = 0;
            if (block == tk.first) k0 = std::max<__int128>(0, Ray::floor_div(tk.second - c, m) + 1);
            for (index_t k = static_cast<index_t>(k0);; ++k) {
              Arc a = r.at(k);
              if (live(a)) {
                consider(other_endpoint(a, p), a);
                break;
              }
            }
          } else if (block > tk.first) {
            blockers.push_back(block);
          } else {
            __int128 k1 = Ray::ceil_div(c - tk.second, -m) - 1;
            for (__int128 k = k1; k >= 0; --k) {
              Arc a = r.at(static_cast<index_t>(k));
              if (live(a)) {
                consider(other_endpoint(a, p), a);
                break;
              }
            }
          }
          continue;
        }
        for (const Arc& a : incident_members(r, p))
          if (live(a)) consider(other_endpoint(a, p), a);
      }
    }
    if (with_boundary) {
      consider({p.side, checked_add(p.index, -1)}, std::nullopt);
      consider({p.side, checked_add(p.index, 1)}, std::nullopt);
    }
    for (int b : blockers)
      if (!best || best->key.first >= b) return {NeighborStatus::Accumulates, {}, std::nullopt};
    if (!best) return {NeighborStatus::None, {}, std::nullopt};
    return {NeighborStatus::Found, best->other, best->arc};
  }

  // Arcs of T at p in counter-clockwise order; each infinite fan appears once as a marker
  // placed at its first live member.
  std::vector<IncidenceEntry> incidence_at(const Point& p) const {
    std::vector<IncidenceEntry> out;
    auto add = [&](const Arc& a) {
      out.push_back({ccw_key(p, other_endpoint(a, p)), a, std::nullopt, 0});
    };
    for (const Arc& e : desc_.arcs)
      if (has_endpoint(e, p)) add(e);
    for (std::size_t fi = 0; fi < unfolded_.size(); ++fi) {
      const Unfolded& f = unfolded_[fi];
      for (const Arc& a : f.finite)
        if (live(a) && has_endpoint(a, p)) add(a);
      for (const Ray& r : f.rays) {
        if (r.is_fan() && r.base() == p) {
          for (index_t k = 0;; ++k) {
            Arc a = r.at(k);
            if (live(a)) {
              out.push_back({ccw_key(p, other_endpoint(a, p)), std::nullopt, r, fi});
              break;
            }
          }
          continue;
        }
        for (const Arc& a : incident_members(r, p))
          if (live(a)) add(a);
      }
    }
    std::stable_sort(out.begin(), out.end(),
                     [](const IncidenceEntry& x, const IncidenceEntry& y) { return x.key < y.key; });
    return out;
  }

  // Infinite incidence flags per fan base: upper/lower fans and connecting fans on each side.
  struct FanFlags {
    bool same_left = false, same_right = false, conn_left = false, conn_right = false;
  };

  std::map<Point, FanFlags> fan_bases() const {
    std::map<Point, FanFlags> out;
    for (const Unfolded& f : unfolded_)
      for (const Ray& r : f.rays) {
        if (!r.is_fan()) continue;
        Point p = r.base();
        index_t s = r.moving_slope();
        FanFlags& fl = out[p];
        if (r.kind == Kind::Connecting) {
          // At l_p the left side has j -> +inf; at r_q the left side has i -> -inf.
          bool left = p.side == Side::Upper ? s > 0 : s < 0;
          (left ? fl.conn_left : fl.conn_right) = true;
        } else {
          // Same-side arcs: left means the other index goes to -inf on the upper
          // boundary and to +inf on the lower boundary.
          bool left = p.side == Side::Upper ? s < 0 : s > 0;
          (left ? fl.same_left : fl.same_right) = true;
        }
      }
    return out;
  }

 private:
  std::optional<Arc> first_live(const Ray& r, const KSegment& s) const {
    index_t cap = static_cast<index_t>(desc_.removed.size());
    for (index_t k = s.lo; s.unbounded || k <= s.hi; ++k) {
      Arc m = r.at(k);
      if (live(m)) return m;
      if (k - s.lo > cap) break;
    }
    return std::nullopt;
  }

  static std::vector<Arc> incident_members(const Ray& r, const Point& p) {
    std::vector<Arc> out;
    auto solve = [&](index_t c0, index_t d) {
      if (d == 0) return;
      __int128 num = static_cast<__int128>(p.index) - c0;
      if (num % d != 0) return;
      __int128 k = num / d;
      if (k < 0) return;
      Arc a = r.at(static_cast<index_t>(k));
      if (has_endpoint(a, p)) out.push_back(a);
    };
    bool i_upper = r.kind != Kind::Lower;
    bool j_upper = r.kind == Kind::Upper;
    if ((p.side == Side::Upper) == i_upper) solve(r.i0, r.di);
    if ((p.side == Side::Upper) == j_upper) solve(r.j0, r.dj);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  TriangulationDesc desc_;
  std::vector<Unfolded> unfolded_;
};

inline std::vector<Window> default_test_windows(const Triangulation& t) {
  Window w = t.effective_window();
  return {w.inflate(5), w.inflate(5 + 2 * t.reach())};
}

// Non-crossing of explicit arcs against each other and against families is decided in
// closed form. Family against family is checked on a window reaching several steps of
// every ray past the effective window.
inline ValidationReport validate(const Triangulation& t, std::vector<Window> windows = {}) {
  ValidationReport rep;
  const TriangulationDesc& d = t.desc();
  auto note_cross = [&](const Arc& a, const Arc& b) {
    if (rep.pairwise_noncrossing) rep.crossing_pair = std::make_pair(a, b);
    rep.pairwise_noncrossing = false;
  };
  for (auto it = d.arcs.begin(); it != d.arcs.end() && rep.pairwise_noncrossing; ++it)
    for (auto jt = std::next(it); jt != d.arcs.end(); ++jt)
      if (cross(*it, *jt)) {
        note_cross(*it, *jt);
        break;
      }
  if (rep.pairwise_noncrossing) {
    TriangulationDesc fam_only = d;
    fam_only.arcs.clear();
    Triangulation fam(std::move(fam_only));
    for (const Arc& e : d.arcs)
      if (auto m = fam.crossing_member(e)) {
        note_cross(e, *m);
        break;
      }
  }
  Window fw = t.effective_window().inflate(8 + 4 * t.reach());
  if (rep.pairwise_noncrossing) {
    auto members = t.members_in_window(fw);
    for (std::size_t a = 0; a < members.size() && rep.pairwise_noncrossing; ++a)
      for (std::size_t b = a + 1; b < members.size(); ++b)
        if (cross(members[a], members[b])) {
          note_cross(members[a], members[b]);
          break;
        }
    rep.notes.push_back("family pairs checked on [" + std::to_string(fw.lo) + "," +
                        std::to_string(fw.hi) + "]");
  }
  auto defaults = default_test_windows(t);
  bool explicit_windows = !windows.empty();
  if (windows.empty()) windows = defaults;
  rep.windows = windows;
  auto maximal_on = [&](const Window& w) -> std::optional<Arc> {
    for (const Arc& u : arcs_in_window(w))
      if (!t.contains(u) && !t.crosses(u)) return u;
    return std::nullopt;
  };
  for (const Window& w : windows)
    if (auto c = maximal_on(w)) {
      rep.window_maximal = false;
      rep.counterexample = c;
      break;
    }
  bool cert = rep.pairwise_noncrossing && rep.window_maximal;
  if (cert && explicit_windows)
    for (const Window& w : defaults)
      if (maximal_on(w)) cert = false;
  rep.certified_maximal = cert;
  if (!cert) rep.notes.push_back("not certified");
  return rep;
}

inline void require_certified(const Triangulation& t) {
  if (!validate(t).certified_maximal)
    throw Error("uncertified", "description is not a certified triangulation");
}

// A triangulation is compact iff it has a connecting arc and every point is bounded or an
// endpoint of infinitely many connecting arcs. Infinite incidence only comes from fans.
inline CompactResult is_compact(const Triangulation& t, bool assume_certified = false) {
  if (!assume_certified) require_certified(t);
  if (!t.has_connecting()) return {false, std::nullopt, "no connecting arc"};
  for (const auto& [p, fl] : t.fan_bases())
    if (!fl.conn_left && !fl.conn_right)
      return {false, p, "unbounded point " + to_string(p) + " has finitely many connecting arcs"};
  return {true, std::nullopt, ""};
}

inline std::vector<FountainInfo> fountains(const Triangulation& t, bool assume_certified = false) {
  if (!assume_certified) require_certified(t);
  std::vector<FountainInfo> out;
  for (const auto& [p, fl] : t.fan_bases()) {
    bool lu = fl.same_left && fl.conn_left, ru = fl.same_right && fl.conn_right;
    bool lb = !fl.same_left && !fl.conn_left, rb = !fl.same_right && !fl.conn_right;
    if (lu && ru) out.push_back({p, "full"});
    else if (lu && rb) out.push_back({p, "left"});
    else if (ru && lb) out.push_back({p, "right"});
  }
  return out;
}

inline ComponentCount component_count(const Triangulation& t, bool assume_certified = false) {
  if (!is_compact(t, assume_certified).compact)
    throw Error("not_compact", "component count needs a compact triangulation");
  ComponentCount c;
  for (const FountainInfo& f : fountains(t, true)) (f.kind == "full" ? c.m : c.n) += 1;
  c.count = 2 * c.m + c.n + 1;
  return c;
}

inline std::vector<Arc> connecting_chain(const Triangulation& t, const Window& w) {
  std::vector<Arc> out;
  for (const Arc& a : t.members_in_window(w))
    if (a.kind == Kind::Connecting) out.push_back(a);
  for (std::size_t i = 0; i < out.size(); ++i)
    for (std::size_t j = i + 1; j < out.size(); ++j)
      if (!conn_leq(out[i], out[j]) && !conn_leq(out[j], out[i]))
        throw Error("incomparable", to_string(out[i]) + " and " + to_string(out[j]) +
                                        " are incomparable connecting arcs");
  std::sort(out.begin(), out.end(),
            [](const Arc& a, const Arc& b) { return a != b && conn_leq(a, b); });
  return out;
}

// Whether the connecting arcs of T are unbounded below and above in the poset order.
inline std::pair<bool, bool> chain_unbounded(const Triangulation& t) {
  bool below = false, above = false;
  for (const Unfolded& f : t.unfolded())
    for (const Ray& r : f.rays) {
      if (r.kind != Kind::Connecting) continue;
      if (r.di <= 0 && r.dj >= 0) below = true;
      if (r.di >= 0 && r.dj <= 0) above = true;
    }
  return {below, above};
}

// Direct check of the compactness definition for T_u on a window: the members of T_u
// inside `inner` serve as the finite witness set, and every member of T_u inside `outer`
// must cross a translate of some witness in both directions.
inline bool compact_witness_search(const Triangulation& t, const Arc& u, const Window& inner,
                                   const Window& outer) {
  std::vector<Arc> tu, sigma;
  for (const Arc& a : t.members_in_window(outer))
    if (cross(a, u)) {
      tu.push_back(a);
      if (in_window(a, inner)) sigma.push_back(a);
    }
  for (const Arc& a : tu) {
    bool fwd = false, back = false;
    for (const Arc& s : sigma) {
      fwd = fwd || cross(a, translate(s, 1));
      back = back || cross(a, translate(s, -1));
    }
    if (!fwd || !back) return false;
  }
  return true;
}

}  // namespace strip
