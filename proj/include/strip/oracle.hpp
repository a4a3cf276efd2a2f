#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "strip/arc.hpp"
#include "strip/family.hpp"
#include "strip/linalg.hpp"

namespace strip::rep {

// Orientation of an A-infinity-infinity quiver. Position n carries the arrow between the
// vertices n and n+1: 'R' is n -> n+1 and 'L' is n+1 -> n. The core occupies positions
// core_start .. core_start+|core|-1; the cycles repeat outward on either side.
struct Orientation {
  std::string core;
  index_t core_start = 0;
  std::string left_cycle = "RL";
  std::string right_cycle = "RL";

  friend bool operator==(const Orientation&, const Orientation&) = default;
};

inline Orientation zigzag() { return {"", 0, "RL", "RL"}; }

inline void check_orientation(const Orientation& o) {
  auto word = [](const std::string& w, bool cycle) {
    for (char c : w)
      if (c != 'R' && c != 'L') throw Error("invalid_orientation", "orientation words use R and L only");
    if (cycle && (w.find('R') == std::string::npos || w.find('L') == std::string::npos))
      throw Error("invalid_orientation", "each cycle must contain both R and L");
  };
  word(o.core, false);
  word(o.left_cycle, true);
  word(o.right_cycle, true);
}

struct Interval {
  index_t lo = 0;
  index_t hi = 0;
  bool contains(index_t x) const { return lo <= x && x <= hi; }
  friend bool operator==(const Interval&, const Interval&) = default;
  friend auto operator<=>(const Interval&, const Interval&) = default;
};

inline std::string to_string(const Interval& m) {
  return "[" + std::to_string(m.lo) + "," + std::to_string(m.hi) + "]";
}

class Quiver {
 public:
  explicit Quiver(Orientation o) : o_(std::move(o)) {
    check_orientation(o_);
    a0_ = 0;
    while (!is_source(a0_)) ++a0_;
  }

  const Orientation& orientation() const { return o_; }

  char letter(index_t n) const {
    index_t len = static_cast<index_t>(o_.core.size());
    index_t end = o_.core_start + len;
    if (n >= o_.core_start && n < end) return o_.core[n - o_.core_start];
    if (n >= end) {
      index_t c = static_cast<index_t>(o_.right_cycle.size());
      return o_.right_cycle[(n - end) % c];
    }
    index_t c = static_cast<index_t>(o_.left_cycle.size());
    index_t m = o_.core_start - 1 - n;
    return o_.left_cycle[c - 1 - (m % c)];
  }

  // Arrow at position n as (source, target).
  std::pair<index_t, index_t> arrow(index_t n) const {
    return letter(n) == 'R' ? std::make_pair(n, n + 1) : std::make_pair(n + 1, n);
  }

  bool is_source(index_t x) const { return letter(x) == 'R' && letter(x - 1) == 'L'; }
  bool is_sink(index_t x) const { return letter(x) == 'L' && letter(x - 1) == 'R'; }

  // a_0 is the smallest source at or after vertex 0.
  index_t a0() const { return a0_; }

  index_t source(index_t i) const {
    index_t x = a0_;
    for (; i > 0; --i) do ++x; while (!is_source(x));
    for (; i < 0; ++i) do --x; while (!is_source(x));
    return x;
  }
  // b_i is the first sink after a_i.
  index_t sink(index_t i) const {
    index_t x = source(i);
    do ++x; while (!is_sink(x));
    return x;
  }

  Interval p_path(index_t i) const { return {source(i), sink(i)}; }
  Interval q_path(index_t i) const { return {sink(i - 1), source(i)}; }

  Interval projective(index_t x) const {
    index_t hi = x, lo = x;
    while (letter(hi) == 'R') ++hi;
    while (letter(lo - 1) == 'L') --lo;
    return {lo, hi};
  }
  Interval injective(index_t x) const {
    index_t hi = x, lo = x;
    while (letter(hi) == 'L') ++hi;
    while (letter(lo - 1) == 'R') --lo;
    return {lo, hi};
  }

  // Tiles of Q_R: the paths p_i and the simple modules at middle points of the q_i.
  Interval qr_next(const Interval& m) const {
    index_t s = m.hi + 1;
    if (is_source(s)) {
      index_t e = s;
      do ++e; while (!is_sink(e));
      return {s, e};
    }
    return {s, s};
  }
  Interval qr_prev(const Interval& m) const {
    index_t e = m.lo - 1;
    if (is_sink(e)) {
      index_t s = e;
      do --s; while (!is_source(s));
      return {s, e};
    }
    return {e, e};
  }
  // Tiles of Q_L: the paths q_i and the simple modules at middle points of the p_i.
  Interval ql_next(const Interval& m) const {
    index_t s = m.hi + 1;
    if (is_sink(s)) {
      index_t e = s;
      do ++e; while (!is_source(e));
      return {s, e};
    }
    return {s, s};
  }
  Interval ql_prev(const Interval& m) const {
    index_t e = m.lo - 1;
    if (is_source(e)) {
      index_t s = e;
      do --s; while (!is_sink(s));
      return {s, e};
    }
    return {e, e};
  }

  // k-th tile counted from p_0 (Q_R) or q_0 (Q_L).
  Interval qr_element(index_t k) const {
    Interval m = p_path(0);
    for (; k > 0; --k) m = qr_next(m);
    for (; k < 0; ++k) m = qr_prev(m);
    return m;
  }
  Interval ql_element(index_t k) const {
    Interval m = q_path(0);
    for (; k > 0; --k) m = ql_next(m);
    for (; k < 0; ++k) m = ql_prev(m);
    return m;
  }

  bool qr_tile_start(index_t x) const { return is_source(x) || in_q_middle(x); }
  bool qr_tile_end(index_t x) const { return is_sink(x) || in_q_middle(x); }
  bool ql_tile_start(index_t x) const { return is_sink(x) || in_p_middle(x); }
  bool ql_tile_end(index_t x) const { return is_source(x) || in_p_middle(x); }

  bool is_qr_tile(const Interval& m) const {
    return qr_tile_start(m.lo) && qr_next(qr_prev(m)) == m && qr_prev(qr_next(m)) == m;
  }
  bool is_ql_tile(const Interval& m) const {
    return ql_tile_start(m.lo) && ql_next(ql_prev(m)) == m && ql_prev(ql_next(m)) == m;
  }

  // Vertex strictly inside some q_i (between a sink and the next source).
  bool in_q_middle(index_t x) const {
    if (is_source(x) || is_sink(x)) return false;
    index_t y = x;
    while (!is_source(y) && !is_sink(y)) --y;
    return is_sink(y);
  }
  bool in_p_middle(index_t x) const { return !is_source(x) && !is_sink(x) && !in_q_middle(x); }

  // Number of R letters in [a_0, x), negative for x < a_0.
  index_t r_count(index_t x) const {
    index_t n = 0;
    for (index_t y = a0_; y < x; ++y) n += letter(y) == 'R';
    for (index_t y = x; y < a0_; ++y) n -= letter(y) == 'R';
    return n;
  }

 private:
  Orientation o_;
  index_t a0_ = 0;
};

namespace detail {

inline std::pair<std::size_t, std::size_t> ringel_counts(const Quiver& q, const Interval& m,
                                                         const Interval& n, std::size_t* rank_out) {
  std::vector<index_t> verts;
  for (index_t v = std::max(m.lo, n.lo); v <= std::min(m.hi, n.hi); ++v) verts.push_back(v);
  auto col = [&](index_t v) -> std::optional<std::size_t> {
    if (verts.empty() || v < verts.front() || v > verts.back()) return std::nullopt;
    return static_cast<std::size_t>(v - verts.front());
  };
  linalg::Matrix rows;
  for (index_t pos = std::min(m.lo, n.lo) - 1; pos <= std::max(m.hi, n.hi); ++pos) {
    auto [s, t] = q.arrow(pos);
    if (!m.contains(s) || !n.contains(t)) continue;
    std::vector<linalg::Q> row(verts.size(), 0);
    // (f_v) -> N_a f_s - f_t M_a
    if (auto c = col(s); c && n.contains(s)) row[*c] += 1;
    if (auto c = col(t); c && m.contains(t)) row[*c] -= 1;
    rows.push_back(std::move(row));
  }
  std::size_t r = verts.empty() ? 0 : linalg::rank(rows);
  *rank_out = r;
  return {verts.size(), rows.size()};
}

}  // namespace detail

// Dimensions from the standard exact sequence
// 0 -> Hom(M,N) -> sum_v Hom(M_v,N_v) -> sum_a Hom(M_s(a),N_t(a)) -> Ext^1(M,N) -> 0.
inline std::size_t hom_rep(const Quiver& q, const Interval& m, const Interval& n) {
  std::size_t r = 0;
  auto [cols, rows] = detail::ringel_counts(q, m, n, &r);
  (void)rows;
  return cols - r;
}

inline std::size_t ext_rep(const Quiver& q, const Interval& m, const Interval& n) {
  std::size_t r = 0;
  auto [cols, rows] = detail::ringel_counts(q, m, n, &r);
  (void)cols;
  return rows - r;
}

inline Interval interval_of(const std::map<index_t, long long>& dims, const std::string& what) {
  std::vector<index_t> sup;
  for (const auto& [x, d] : dims) {
    if (d == 0) continue;
    if (d != 1) throw Error("not_interval", what + " has a dimension above one");
    sup.push_back(x);
  }
  if (sup.empty()) throw Error("zero", what + " is zero");
  if (sup.back() - sup.front() + 1 != static_cast<index_t>(sup.size()))
    throw Error("not_interval", what + " has disconnected support");
  return {sup.front(), sup.back()};
}

// tau M through (tau M)_x = dim Ext(M, P_x); tau^- M through (tau^- M)_x = dim Ext(I_x, M).
inline Interval tau_rep(const Quiver& q, const Interval& m) {
  index_t lo = q.injective(m.lo - 1).lo, hi = q.injective(m.hi + 1).hi;
  std::map<index_t, long long> d;
  for (index_t x = lo; x <= hi; ++x) d[x] = static_cast<long long>(ext_rep(q, m, q.projective(x)));
  try {
    return interval_of(d, "tau " + to_string(m));
  } catch (const Error& e) {
    if (e.code() == "zero") throw Error("projective", to_string(m) + " is projective");
    throw;
  }
}

inline Interval tau_inv_rep(const Quiver& q, const Interval& m) {
  index_t lo = q.projective(m.lo - 1).lo, hi = q.projective(m.hi + 1).hi;
  std::map<index_t, long long> d;
  for (index_t x = lo; x <= hi; ++x) d[x] = static_cast<long long>(ext_rep(q, q.injective(x), m));
  try {
    return interval_of(d, "tau^- " + to_string(m));
  } catch (const Error& e) {
    if (e.code() == "zero") throw Error("injective", to_string(m) + " is injective");
    throw;
  }
}

// tau of a quasi-simple through the tiles: predecessor on Q_R, successor on Q_L.
inline std::optional<Interval> tau_quasi_simple(const Quiver& q, const Interval& m, bool inverse) {
  if (q.is_qr_tile(m)) return inverse ? q.qr_next(m) : q.qr_prev(m);
  if (q.is_ql_tile(m)) return inverse ? q.ql_prev(m) : q.ql_next(m);
  return std::nullopt;
}

enum class ObjType { Connecting, RegularL, RegularR };

struct FundObject {
  ObjType type = ObjType::Connecting;
  index_t i = 0;
  index_t j = 0;
  friend bool operator==(const FundObject&, const FundObject&) = default;
  friend auto operator<=>(const FundObject&, const FundObject&) = default;
};

inline std::string to_string(const FundObject& x) {
  const char* n = x.type == ObjType::Connecting ? "Conn" : (x.type == ObjType::RegularL ? "RegL" : "RegR");
  return std::string(n) + "(" + std::to_string(x.i) + "," + std::to_string(x.j) + ")";
}

inline FundObject make_object(ObjType t, index_t i, index_t j) {
  if (t == ObjType::RegularL && i > j) throw Error("invalid_object", "RegularL needs i <= j");
  if (t == ObjType::RegularR && i < j) throw Error("invalid_object", "RegularR needs i >= j");
  return {t, i, j};
}

inline FundObject tau_obj(const FundObject& x, index_t k = 1) {
  return {x.type, checked_add(x.i, k), checked_add(x.j, k)};
}

inline Arc phi(const FundObject& x) {
  switch (x.type) {
    case ObjType::Connecting: return C(x.i, x.j);
    case ObjType::RegularL: return U(checked_add(x.i, -1), checked_add(x.j, 1));
    case ObjType::RegularR: return D(checked_add(x.i, 1), checked_add(x.j, -1));
  }
  return C(0, 0);
}

inline FundObject phi_inv(const Arc& a) {
  switch (a.kind) {
    case Kind::Connecting: return {ObjType::Connecting, a.i, a.j};
    case Kind::Upper: return {ObjType::RegularL, a.i + 1, a.j - 1};
    case Kind::Lower: return {ObjType::RegularR, a.i - 1, a.j + 1};
  }
  return {};
}

// An object of the cluster category realised in D^b: a module, or a module shifted by -1.
struct Realization {
  Interval module;
  bool shifted = false;
  friend bool operator==(const Realization&, const Realization&) = default;
};

class Oracle {
 public:
  explicit Oracle(Orientation o) : q_(std::move(o)) {}

  const Quiver& quiver() const { return q_; }

  // Quasi-simples: E_k = tau^k S_R on the R side and F_k = tau^k S_L on the L side.
  Interval quasi_simple_r(index_t k) const { return q_.qr_element(1 - k); }
  Interval quasi_simple_l(index_t k) const { return q_.ql_element(k - 1); }

  // Coordinates of the projective P_x on the connecting component.
  std::pair<index_t, index_t> projective_coords(index_t x) const {
    index_t i = q_.r_count(x);
    return {i, i - (x - q_.a0())};
  }

  // Vertex x and tau-level s with C(a,b) = tau^s phi(P_x).
  std::pair<index_t, index_t> vertex_level(index_t a, index_t b) const {
    index_t x = q_.a0() + a - b;
    return {x, a - q_.r_count(x)};
  }

  // Signed dimension class of C(a,b) obtained by mesh knitting from the projectives
  // (level 0) and the shifted injectives tau P_x = I_x[-1] (level 1).
  const std::map<index_t, long long>& knit_class(index_t a, index_t b) const {
    auto key = std::make_pair(a, b);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    auto [x, s] = vertex_level(a, b);
    std::map<index_t, long long> cls;
    auto add = [&](const std::map<index_t, long long>& c, long long sign) {
      for (const auto& [v, d] : c) cls[v] += sign * d;
    };
    if (s == 0 || s == 1) {
      Interval m = s == 0 ? q_.projective(x) : q_.injective(x);
      for (index_t v = m.lo; v <= m.hi; ++v) cls[v] = s == 0 ? 1 : -1;
    } else if (s < 0) {
      add(knit_class(a + 1, b), 1);
      add(knit_class(a, b + 1), 1);
      add(knit_class(a + 1, b + 1), -1);
    } else {
      add(knit_class(a, b - 1), 1);
      add(knit_class(a - 1, b), 1);
      add(knit_class(a - 1, b - 1), -1);
    }
    std::erase_if(cls, [](const auto& kv) { return kv.second == 0; });
    return memo_.emplace(key, std::move(cls)).first->second;
  }

  Realization realize(const FundObject& x) const {
    switch (x.type) {
      case ObjType::RegularR: {
        if (x.i < x.j) throw Error("invalid_object", "RegularR needs i >= j");
        return {{quasi_simple_r(x.i).lo, quasi_simple_r(x.j).hi}, false};
      }
      case ObjType::RegularL: {
        if (x.i > x.j) throw Error("invalid_object", "RegularL needs i <= j");
        return {{quasi_simple_l(x.i).lo, quasi_simple_l(x.j).hi}, false};
      }
      case ObjType::Connecting: break;
    }
    const auto& cls = knit_class(x.i, x.j);
    bool neg = !cls.empty() && cls.begin()->second < 0;
    std::map<index_t, long long> d;
    for (const auto& [v, c] : cls) d[v] = neg ? -c : c;
    return {interval_of(d, "class of " + to_string(x)), neg};
  }

  // tau-level of a connecting object; regular objects have none.
  std::optional<index_t> level(const FundObject& x) const {
    if (x.type != ObjType::Connecting) return std::nullopt;
    return vertex_level(x.i, x.j).second;
  }

  // dim Hom in the cluster category, computed as Hom(X,Y) + D Hom(Y, tau^2 X) in D^b after
  // moving X and Y by a common power of tau so that X, Y and tau^2 X are modules.
  std::size_t hom_orbit(const FundObject& x, const FundObject& y, const Window& w) const {
    index_t k = 0;
    if (auto l = level(x)) k = std::min(k, -*l - 2);
    if (auto l = level(y)) k = std::min(k, -*l);
    FundObject xs = tau_obj(x, k), ys = tau_obj(y, k), x2 = tau_obj(x, k + 2);
    Realization rx = realize(xs), ry = realize(ys), r2 = realize(x2);
    for (const Realization* r : {&rx, &ry, &r2}) {
      if (r->shifted) throw Error("window_insufficient", "transport did not reach the module category");
      if (!w.contains(r->module.lo) || !w.contains(r->module.hi))
        throw Error("window_insufficient", "realisation leaves the window");
    }
    return hom_rep(q_, rx.module, ry.module) + hom_rep(q_, ry.module, r2.module);
  }

  // Ext in the cluster category is Hom into the shift, and the shift agrees with tau.
  std::size_t ext_orbit(const FundObject& x, const FundObject& y, const Window& w) const {
    return hom_orbit(x, tau_obj(y), w);
  }

 private:
  Quiver q_;
  mutable std::map<std::pair<index_t, index_t>, std::map<index_t, long long>> memo_;
};

// Wing of the quasi-simple s in its regular component.
inline bool wing_contains(const FundObject& s, const FundObject& y) {
  if (s.type == ObjType::Connecting || s.i != s.j) throw Error("not_quasi_simple", to_string(s) + " is not quasi-simple");
  if (y.type != s.type) throw Error("mixed_components", "wing and object lie in different components");
  if (s.type == ObjType::RegularR) return y.i >= s.i && s.i >= y.j;
  return y.i <= s.i && s.i <= y.j;
}

// Forward rectangle of x in its ZA_infinity component, by the path definition: successors
// y such that no path x ~> y passes, after a non-sectional start, through a mouth vertex.
inline bool rectangle_contains(const FundObject& x, const FundObject& y) {
  if (x.type == ObjType::Connecting || y.type != x.type)
    throw Error("mixed_components", "rectangles are taken inside one regular component");
  // Normalise to (top, bottom) with top >= bottom, mouth at top == bottom, and the two
  // arrow kinds decreasing top or bottom.
  auto norm = [&](const FundObject& o) {
    return o.type == ObjType::RegularR ? std::make_pair(o.i, o.j) : std::make_pair(o.j, o.i);
  };
  auto [xt, xb] = norm(x);
  auto [yt, yb] = norm(y);
  if (yt > xt || yb > xb) return false;
  // state: kinds used so far (bit 0: top arrow, bit 1: bottom arrow), tainted flag
  std::set<std::tuple<index_t, index_t, int, bool>> seen;
  std::vector<std::tuple<index_t, index_t, int, bool>> stack{{xt, xb, 0, false}};
  bool reached = false, bad = false;
  while (!stack.empty()) {
    auto st = stack.back();
    stack.pop_back();
    if (!seen.insert(st).second) continue;
    auto [t, b, kinds, tainted] = st;
    bool mixed = kinds == 3;
    if (mixed && t == b) tainted = true;
    if (t == yt && b == yb) {
      reached = true;
      if (tainted) bad = true;
    }
    if (t - 1 >= b && t - 1 >= yt) stack.emplace_back(t - 1, b, kinds | 1, tainted);
    if (b - 1 >= yb) stack.emplace_back(t, b - 1, kinds | 2, tainted);
  }
  return reached && !bad;
}

// Explicit core of the projective triangulation {phi(P_x)} plus periodic tails.
struct ProjectiveTriangulation {
  std::vector<Arc> explicit_arcs;
  std::vector<Arc> left_seed, right_seed;
  std::pair<index_t, index_t> left_shift, right_shift;
  Window window;
};

inline ProjectiveTriangulation projective_triangulation(const Oracle& orc) {
  const Orientation& o = orc.quiver().orientation();
  index_t cl = static_cast<index_t>(o.left_cycle.size()), cr = static_cast<index_t>(o.right_cycle.size());
  index_t lo = o.core_start - cl, hi = o.core_start + static_cast<index_t>(o.core.size()) + cr;
  ProjectiveTriangulation p;
  auto arc = [&](index_t x) {
    auto [i, j] = orc.projective_coords(x);
    return C(i, j);
  };
  for (index_t x = lo; x < hi; ++x) p.explicit_arcs.push_back(arc(x));
  for (index_t x = lo; x < lo + cl; ++x) p.left_seed.push_back(arc(x));
  for (index_t x = hi - cr; x < hi; ++x) p.right_seed.push_back(arc(x));
  auto counts = [](const std::string& w) {
    index_t r = std::count(w.begin(), w.end(), 'R');
    return std::make_pair(r, static_cast<index_t>(w.size()) - r);
  };
  p.left_shift = counts(o.left_cycle);
  p.right_shift = counts(o.right_cycle);
  Window w{0, 0};
  for (const Arc& a : p.explicit_arcs) w = hull(w, a);
  p.window = w;
  return p;
}

}  // namespace strip::rep
