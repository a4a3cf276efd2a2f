#pragma once

#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "strip/triangulation.hpp"

namespace strip {

inline int ext_dim(const Arc& u, const Arc& v) { return cross(u, v) ? 1 : 0; }

inline int hom_dim(const Arc& u, const Arc& v) {
  if (u == v) return 1;
  return cross(v, translate(u, 1)) ? 1 : 0;
}

// Targets of the arrows starting at u in the AR quiver.
inline std::vector<Arc> ar_neighbors(const Arc& u) {
  switch (u.kind) {
    case Kind::Connecting:
      return {C(u.i, checked_add(u.j, -1)), C(checked_add(u.i, -1), u.j)};
    case Kind::Upper: {
      std::vector<Arc> out;
      if (u.i < u.j - 2) out.push_back(U(u.i, u.j - 1));
      out.push_back(U(checked_add(u.i, -1), u.j));
      return out;
    }
    case Kind::Lower: {
      std::vector<Arc> out;
      if (u.i > u.j + 2) out.push_back(D(u.i - 1, u.j));
      out.push_back(D(u.i, checked_add(u.j, -1)));
      return out;
    }
  }
  return {};
}

struct FrameSide {
  Point a, b;
  std::optional<Arc> arc;  // empty for a boundary segment
};

struct Quadrilateral {
  Arc diagonal;
  Arc partner;
  std::array<Point, 4> corners;  // pivot, first neighbour, opposite end, second neighbour
  std::array<FrameSide, 4> sides;
};

inline Quadrilateral quadrilateral(const Triangulation& t, const Arc& u) {
  if (!t.contains(u)) throw Error("not_in_T", to_string(u) + " is not an arc of the triangulation");
  auto [e0, e1] = endpoints(u);
  auto side_ok = [&](const Point& a, const Point& b) -> std::optional<FrameSide> {
    if (is_boundary_edge(a, b)) return FrameSide{a, b, std::nullopt};
    auto arc = arc_between(a, b);
    if (arc && t.contains(*arc)) return FrameSide{a, b, arc};
    return std::nullopt;
  };
  for (const Point& p : {e0, e1}) {
    Point x = other_endpoint(u, p);
    Neighbor n1 = t.ccw_neighbor(p, x, false, true);
    Neighbor n2 = t.ccw_neighbor(p, x, true, true);
    if (n1.status != NeighborStatus::Found || n2.status != NeighborStatus::Found) continue;
    auto s1 = side_ok(x, n1.other), s2 = side_ok(x, n2.other);
    if (!s1 || !s2) continue;
    auto star = arc_between(n1.other, n2.other);
    if (!star || t.contains(*star)) continue;
    Quadrilateral q;
    q.diagonal = u;
    q.partner = *star;
    q.corners = {p, n1.other, x, n2.other};
    q.sides = {FrameSide{p, n1.other, n1.arc}, *s1, *s2, FrameSide{p, n2.other, n2.arc}};
    return q;
  }
  throw Error("no_quadrilateral", "no quadrilateral around " + to_string(u));
}

struct FlipResult {
  TriangulationDesc desc;
  Arc partner;
};

// Replaces u by its flip partner. Family members are toggled through the removed set so
// that flipping back reproduces the description exactly; the declared window is kept.
inline FlipResult flip(const Triangulation& t, const Arc& u) {
  Quadrilateral q = quadrilateral(t, u);
  TriangulationDesc d = t.desc();
  if (d.arcs.count(u)) d.arcs.erase(u);
  else d.removed.insert(u);
  if (d.removed.count(q.partner)) d.removed.erase(q.partner);
  else d.arcs.insert(q.partner);
  return {std::move(d), q.partner};
}

struct QuiverGraph {
  std::vector<Arc> vertices;          // sorted
  std::vector<bool> interior;         // parallel to vertices
  std::vector<std::pair<Arc, Arc>> arrows;  // sorted multiset

  std::optional<std::size_t> index(const Arc& a) const {
    auto it = std::lower_bound(vertices.begin(), vertices.end(), a);
    if (it == vertices.end() || *it != a) return std::nullopt;
    return static_cast<std::size_t>(it - vertices.begin());
  }
  bool is_interior(const Arc& a) const {
    auto i = index(a);
    return i && interior[*i];
  }
  std::vector<Arc> out_neighbors(const Arc& a) const {
    std::vector<Arc> out;
    for (const auto& [s, d] : arrows)
      if (s == a) out.push_back(d);
    return out;
  }
  std::vector<Arc> in_neighbors(const Arc& a) const {
    std::vector<Arc> out;
    for (const auto& [s, d] : arrows)
      if (d == a) out.push_back(s);
    return out;
  }
  friend bool operator==(const QuiverGraph&, const QuiverGraph&) = default;
};

namespace detail {

// Immediate neighbour v of u at p that is a cover, i.e. not reached through the arc
// joining the far endpoints of u and v.
inline std::optional<Arc> cover_at(const Triangulation& t, const Arc& u, const Point& p,
                                   bool successor) {
  Neighbor n = t.ccw_neighbor(p, other_endpoint(u, p), successor, false);
  if (n.status != NeighborStatus::Found) return std::nullopt;
  const Arc v = *n.arc;
  const Arc& from = successor ? u : v;
  const Arc& to = successor ? v : u;
  auto w = arc_between(other_endpoint(u, p), other_endpoint(v, p));
  if (w && t.contains(*w) && rotates_to(from, *w) && rotates_to(*w, to)) return std::nullopt;
  return v;
}

}  // namespace detail

inline QuiverGraph quiver(const Triangulation& t, const Window& w, bool assume_certified = false) {
  if (!is_compact(t, assume_certified).compact)
    throw Error("not_compact", "the quiver is built for compact triangulations only");
  QuiverGraph q;
  q.vertices = t.members_in_window(w);
  q.interior.assign(q.vertices.size(), true);
  std::set<std::pair<Arc, Arc>> arrows;
  for (std::size_t n = 0; n < q.vertices.size(); ++n) {
    const Arc& u = q.vertices[n];
    auto [e0, e1] = endpoints(u);
    for (const Point& p : {e0, e1})
      for (bool succ : {true, false}) {
        auto v = detail::cover_at(t, u, p, succ);
        if (!v) continue;
        if (!q.index(*v)) {
          q.interior[n] = false;
          continue;
        }
        arrows.insert(succ ? std::make_pair(u, *v) : std::make_pair(*v, u));
      }
  }
  q.arrows.assign(arrows.begin(), arrows.end());
  return q;
}

// Antisymmetric exchange matrix of a quiver, indexed like q.vertices.
inline std::vector<std::vector<int>> exchange_matrix(const QuiverGraph& q) {
  std::size_t n = q.vertices.size();
  std::vector<std::vector<int>> b(n, std::vector<int>(n, 0));
  for (const auto& [s, d] : q.arrows) {
    std::size_t i = *q.index(s), j = *q.index(d);
    b[i][j] += 1;
    b[j][i] -= 1;
  }
  return b;
}

inline QuiverGraph from_exchange_matrix(const QuiverGraph& shape,
                                        const std::vector<std::vector<int>>& b) {
  QuiverGraph q;
  q.vertices = shape.vertices;
  q.interior = shape.interior;
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      for (int m = 0; m < b[i][j]; ++m) q.arrows.emplace_back(q.vertices[i], q.vertices[j]);
  std::sort(q.arrows.begin(), q.arrows.end());
  return q;
}

inline QuiverGraph fz_mutate(const QuiverGraph& q, const Arc& k) {
  auto ki = q.index(k);
  if (!ki) throw Error("not_a_vertex", to_string(k) + " is not a vertex of the quiver");
  if (!q.interior[*ki]) throw Error("frontier", to_string(k) + " is a frontier vertex");
  for (const auto& [s, d] : q.arrows)
    if (s == k && d == k) throw Error("loop", "quiver has a loop at " + to_string(k));
  std::set<Arc> into, outof;
  for (const auto& [s, d] : q.arrows) {
    if (d == k) into.insert(s);
    if (s == k) outof.insert(d);
  }
  for (const Arc& a : into)
    if (outof.count(a)) throw Error("two_cycle", "quiver has a 2-cycle at " + to_string(k));
  auto b = exchange_matrix(q);
  std::size_t n = b.size(), c = *ki;
  auto nb = b;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == c || j == c) {
        nb[i][j] = -b[i][j];
      } else {
        int sgn = (b[i][c] > 0) - (b[i][c] < 0);
        nb[i][j] = b[i][j] + sgn * std::max(0, b[i][c] * b[c][j]);
      }
    }
  return from_exchange_matrix(q, nb);
}

inline QuiverGraph relabel(const QuiverGraph& q, const Arc& from, const Arc& to) {
  QuiverGraph r;
  auto sub = [&](const Arc& a) { return a == from ? to : a; };
  std::vector<std::pair<Arc, bool>> vs;
  for (std::size_t i = 0; i < q.vertices.size(); ++i) vs.emplace_back(sub(q.vertices[i]), q.interior[i]);
  std::sort(vs.begin(), vs.end());
  for (const auto& [a, in] : vs) {
    r.vertices.push_back(a);
    r.interior.push_back(in);
  }
  for (const auto& [s, d] : q.arrows) r.arrows.emplace_back(sub(s), sub(d));
  std::sort(r.arrows.begin(), r.arrows.end());
  return r;
}

// Vertices interior in both quivers whose in- and out-neighbourhoods differ.
inline std::vector<Arc> interior_mismatches(const QuiverGraph& a, const QuiverGraph& b) {
  std::vector<Arc> out;
  for (const Arc& v : a.vertices) {
    if (!a.is_interior(v) || !b.is_interior(v)) continue;
    auto ao = a.out_neighbors(v), bo = b.out_neighbors(v);
    auto ai = a.in_neighbors(v), bi = b.in_neighbors(v);
    std::sort(ao.begin(), ao.end());
    std::sort(bo.begin(), bo.end());
    std::sort(ai.begin(), ai.end());
    std::sort(bi.begin(), bi.end());
    if (ao != bo || ai != bi) out.push_back(v);
  }
  return out;
}

inline std::size_t count_interior_in_both(const QuiverGraph& a, const QuiverGraph& b) {
  std::size_t n = 0;
  for (const Arc& v : a.vertices)
    if (a.is_interior(v) && b.is_interior(v)) ++n;
  return n;
}

// Weakly connected components of the quiver, as sorted vertex lists.
inline std::vector<std::vector<Arc>> weak_components(const QuiverGraph& q) {
  std::size_t n = q.vertices.size();
  std::vector<std::size_t> parent(n);
  for (std::size_t i = 0; i < n; ++i) parent[i] = i;
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& [s, d] : q.arrows) parent[find(*q.index(s))] = find(*q.index(d));
  std::map<std::size_t, std::vector<Arc>> groups;
  for (std::size_t i = 0; i < n; ++i) groups[find(i)].push_back(q.vertices[i]);
  std::vector<std::vector<Arc>> out;
  for (auto& [r, g] : groups) out.push_back(std::move(g));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace strip
