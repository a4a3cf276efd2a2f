#pragma once

#include <algorithm>
#include <cstdlib>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "strip/arc.hpp"

namespace strip {

struct Window {
  index_t lo = 0;
  index_t hi = 0;

  bool contains(index_t x) const { return lo <= x && x <= hi; }
  Window inflate(index_t n) const { return {checked_add(lo, -n), checked_add(hi, n)}; }
  friend bool operator==(const Window&, const Window&) = default;
};

inline bool in_window(const Arc& u, const Window& w) { return w.contains(u.i) && w.contains(u.j); }

inline Window hull(const Window& w, const Arc& u) {
  return {std::min({w.lo, u.i, u.j}), std::max({w.hi, u.i, u.j})};
}

// All arcs with both endpoint indices in w, connecting first, then upper, then lower,
// each lexicographic in (i, j).
inline std::vector<Arc> arcs_in_window(const Window& w) {
  std::vector<Arc> out;
  for (index_t i = w.lo; i <= w.hi; ++i)
    for (index_t j = w.lo; j <= w.hi; ++j) out.push_back({Kind::Connecting, i, j});
  for (index_t i = w.lo; i <= w.hi; ++i)
    for (index_t j = i + 2; j <= w.hi; ++j) out.push_back({Kind::Upper, i, j});
  for (index_t i = w.lo; i <= w.hi; ++i)
    for (index_t j = w.lo; j <= i - 2; ++j) out.push_back({Kind::Lower, i, j});
  return out;
}

// Members (kind, i0 + k*di, j0 + k*dj) for k = 0, 1, 2, ...
struct Ray {
  Kind kind = Kind::Connecting;
  index_t i0 = 0, j0 = 0, di = 0, dj = 0;

  Arc at(index_t k) const {
    return {kind, checked_add(i0, checked_mul(k, di)), checked_add(j0, checked_mul(k, dj))};
  }

  bool is_fan() const { return di == 0 || dj == 0; }

  // Fixed endpoint of a fan.
  Point base() const {
    auto [a, b] = endpoints(at(0));
    return di == 0 ? a : b;
  }

  // Index slope of the moving endpoint of a fan.
  index_t moving_slope() const { return di == 0 ? dj : di; }

  std::optional<index_t> index_of(const Arc& u) const {
    if (u.kind != kind) return std::nullopt;
    __int128 k;
    if (di != 0) {
      __int128 num = static_cast<__int128>(u.i) - i0;
      if (num % di != 0) return std::nullopt;
      k = num / di;
      if (k < 0 || static_cast<__int128>(j0) + k * dj != u.j) return std::nullopt;
    } else {
      if (u.i != i0) return std::nullopt;
      __int128 num = static_cast<__int128>(u.j) - j0;
      if (num % dj != 0) return std::nullopt;
      k = num / dj;
      if (k < 0) return std::nullopt;
    }
    return static_cast<index_t>(k);
  }

  // Range of k whose member lies in w, if nonempty.
  std::optional<std::pair<index_t, index_t>> window_range(const Window& w) const {
    __int128 lo = 0, hi = INT64_MAX;
    auto clamp = [&](index_t c0, index_t d) {
      if (d == 0) {
        if (!w.contains(c0)) hi = -1;
        return;
      }
      __int128 a = static_cast<__int128>(w.lo) - c0, b = static_cast<__int128>(w.hi) - c0;
      __int128 kl, kh;
      if (d > 0) {
        kl = ceil_div(a, d);
        kh = floor_div(b, d);
      } else {
        kl = ceil_div(b, d);
        kh = floor_div(a, d);
      }
      lo = std::max(lo, kl);
      hi = std::min(hi, kh);
    };
    clamp(i0, di);
    clamp(j0, dj);
    if (lo > hi) return std::nullopt;
    return std::make_pair(static_cast<index_t>(lo), static_cast<index_t>(hi));
  }

  static __int128 floor_div(__int128 a, __int128 b) {
    __int128 q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
  }
  static __int128 ceil_div(__int128 a, __int128 b) { return -floor_div(-a, b); }

  friend bool operator==(const Ray&, const Ray&) = default;
};

// Piece of the parameter line on which a predicate is constant.
struct KSegment {
  index_t lo = 0;
  index_t hi = 0;
  bool unbounded = false;
  bool value = false;
};

// Splits k >= 0 into segments on which pred(r.at(k)) is constant. pred may only compare
// member indices against the given constants (offsets up to 2 are covered).
template <class Pred>
std::vector<KSegment> ray_segments(const Ray& r, const std::vector<index_t>& consts, Pred pred) {
  std::vector<__int128> cand{0};
  auto add = [&](index_t c0, index_t d) {
    if (d == 0) return;
    for (index_t y : consts)
      for (int off = -2; off <= 2; ++off) {
        __int128 f = Ray::floor_div(static_cast<__int128>(y) + off - c0, d);
        for (int e = -1; e <= 2; ++e)
          if (f + e >= 0 && f + e < INT64_MAX / 4) cand.push_back(f + e);
      }
  };
  add(r.i0, r.di);
  add(r.j0, r.dj);
  std::sort(cand.begin(), cand.end());
  cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
  std::vector<KSegment> out;
  auto push = [&](index_t lo, index_t hi, bool unb, bool v) {
    if (!out.empty() && out.back().value == v && !out.back().unbounded && out.back().hi + 1 == lo) {
      out.back().hi = hi;
      out.back().unbounded = unb;
      return;
    }
    out.push_back({lo, hi, unb, v});
  };
  for (std::size_t n = 0; n < cand.size(); ++n) {
    index_t c = static_cast<index_t>(cand[n]);
    push(c, c, false, pred(r.at(c)));
    if (n + 1 < cand.size()) {
      index_t d = static_cast<index_t>(cand[n + 1]);
      if (d - c >= 2) push(c + 1, d - 1, false, pred(r.at(c + 1)));
    } else {
      push(c + 1, c + 1, true, pred(r.at(c + 1)));
    }
  }
  return out;
}

enum class FamilyKind { UpperFan, LowerFan, ConnFanUpper, ConnFanLower, Periodic, Nested };
enum class Dir { Left, Right, Both };

struct ArcFamily {
  FamilyKind kind = FamilyKind::UpperFan;
  // Fans.
  index_t base = 0;
  index_t start = 0;
  Dir dir = Dir::Left;
  // Periodic: members g^{+-k}(seed), k >= 1, where g moves l_i to l_{i+a} and r_j to
  // r_{j-b}; (a, b) defaults to (period, period), the rightward shift of the strip.
  std::vector<Arc> seed;
  index_t period = 1;
  std::optional<std::pair<index_t, index_t>> shift;
  // Nested staircase starting at [a, b] on the given side.
  index_t a = 0;
  index_t b = 0;
  std::string prefix;
  std::string cycle;
  Side side = Side::Upper;

  friend bool operator==(const ArcFamily&, const ArcFamily&) = default;
};

inline ArcFamily upper_fan(index_t base, index_t start, Dir d) {
  ArcFamily f;
  f.kind = FamilyKind::UpperFan;
  f.base = base;
  f.start = start;
  f.dir = d;
  return f;
}

inline ArcFamily lower_fan(index_t base, index_t start, Dir d) {
  ArcFamily f = upper_fan(base, start, d);
  f.kind = FamilyKind::LowerFan;
  return f;
}

inline ArcFamily conn_fan_upper(index_t base, index_t start, Dir d) {
  ArcFamily f = upper_fan(base, start, d);
  f.kind = FamilyKind::ConnFanUpper;
  return f;
}

inline ArcFamily conn_fan_lower(index_t base, index_t start, Dir d) {
  ArcFamily f = upper_fan(base, start, d);
  f.kind = FamilyKind::ConnFanLower;
  return f;
}

inline ArcFamily periodic(std::vector<Arc> seed, index_t period, Dir d,
                          std::optional<std::pair<index_t, index_t>> shift = std::nullopt) {
  ArcFamily f;
  f.kind = FamilyKind::Periodic;
  std::sort(seed.begin(), seed.end());
  f.seed = std::move(seed);
  f.period = period;
  f.dir = d;
  f.shift = shift;
  return f;
}

inline ArcFamily nested(index_t a, index_t b, std::string prefix, std::string cycle,
                        Side side = Side::Upper) {
  ArcFamily f;
  f.kind = FamilyKind::Nested;
  f.a = a;
  f.b = b;
  f.prefix = std::move(prefix);
  f.cycle = std::move(cycle);
  f.side = side;
  return f;
}

struct Unfolded {
  std::vector<Arc> finite;
  std::vector<Ray> rays;
};

namespace detail {

[[noreturn]] inline void malformed(const std::string& what) { throw Error("malformed", what); }

inline Ray checked_ray(Ray r) {
  if (r.di == 0 && r.dj == 0) malformed("family generates a constant sequence");
  if (!valid(r.kind, r.i0, r.j0)) malformed("family member " + to_string(Arc{r.kind, r.i0, r.j0}) + " is not an arc");
  if (r.kind == Kind::Upper && r.dj - r.di < 0) malformed("upper family shrinks");
  if (r.kind == Kind::Lower && r.di - r.dj < 0) malformed("lower family shrinks");
  return r;
}

inline void check_word(const std::string& w, bool nonempty) {
  if (nonempty && w.empty()) malformed("nested staircase cycle must be nonempty");
  for (char c : w)
    if (c != 'L' && c != 'R') malformed("nested staircase word must use L and R only");
}

}  // namespace detail

inline Unfolded unfold(const ArcFamily& f) {
  using detail::checked_ray;
  using detail::malformed;
  Unfolded u;
  switch (f.kind) {
    case FamilyKind::UpperFan:
      if (f.dir == Dir::Left) {
        if (f.start > f.base - 2) malformed("left upper fan needs start <= base - 2");
        u.rays.push_back(checked_ray({Kind::Upper, f.start, f.base, -1, 0}));
      } else if (f.dir == Dir::Right) {
        if (f.start < f.base + 2) malformed("right upper fan needs start >= base + 2");
        u.rays.push_back(checked_ray({Kind::Upper, f.base, f.start, 0, 1}));
      } else {
        malformed("fans take dir left or right");
      }
      break;
    case FamilyKind::LowerFan:
      if (f.dir == Dir::Left) {
        if (f.start < f.base + 2) malformed("left lower fan needs start >= base + 2");
        u.rays.push_back(checked_ray({Kind::Lower, f.start, f.base, 1, 0}));
      } else if (f.dir == Dir::Right) {
        if (f.start > f.base - 2) malformed("right lower fan needs start <= base - 2");
        u.rays.push_back(checked_ray({Kind::Lower, f.base, f.start, 0, -1}));
      } else {
        malformed("fans take dir left or right");
      }
      break;
    case FamilyKind::ConnFanUpper:
      if (f.dir == Dir::Both) malformed("fans take dir left or right");
      u.rays.push_back(checked_ray({Kind::Connecting, f.base, f.start, 0, f.dir == Dir::Left ? 1 : -1}));
      break;
    case FamilyKind::ConnFanLower:
      if (f.dir == Dir::Both) malformed("fans take dir left or right");
      u.rays.push_back(checked_ray({Kind::Connecting, f.start, f.base, f.dir == Dir::Left ? -1 : 1, 0}));
      break;
    case FamilyKind::Periodic: {
      if (f.seed.empty()) malformed("periodic family needs a nonempty seed");
      if (f.period < 1) malformed("period must be at least 1");
      index_t a = f.period, b = f.period;
      if (f.shift) {
        a = checked_mul(f.shift->first, f.period);
        b = checked_mul(f.shift->second, f.period);
        if (f.shift->first < 0 || f.shift->second < 0 || f.shift->first + f.shift->second < 1)
          malformed("periodic shift must be nonnegative and nonzero");
      }
      for (const Arc& s : f.seed) {
        if (!valid(s.kind, s.i, s.j)) malformed("seed " + to_string(s) + " is not an arc");
        index_t gi = 0, gj = 0;
        switch (s.kind) {
          case Kind::Upper: gi = gj = a; break;
          case Kind::Lower: gi = gj = -b; break;
          case Kind::Connecting: gi = a; gj = -b; break;
        }
        if (f.dir != Dir::Left)
          u.rays.push_back(checked_ray({s.kind, checked_add(s.i, gi), checked_add(s.j, gj), gi, gj}));
        if (f.dir != Dir::Right)
          u.rays.push_back(checked_ray({s.kind, checked_add(s.i, -gi), checked_add(s.j, -gj), -gi, -gj}));
      }
      break;
    }
    case FamilyKind::Nested: {
      detail::check_word(f.prefix, false);
      detail::check_word(f.cycle, true);
      Kind k = f.side == Side::Upper ? Kind::Upper : Kind::Lower;
      if (!valid(k, f.a, f.b)) malformed("nested staircase must start at an arc");
      // Upper: L moves the left end l_i to l_{i-1}, R moves l_j to l_{j+1}.
      // Lower: L moves r_i to r_{i+1}, R moves r_j to r_{j-1}.
      index_t sl = f.side == Side::Upper ? -1 : 1, sr = f.side == Side::Upper ? 1 : -1;
      Arc cur{k, f.a, f.b};
      auto step = [&](Arc x, char c) {
        if (c == 'L') x.i = checked_add(x.i, sl);
        else x.j = checked_add(x.j, sr);
        return x;
      };
      for (char c : f.prefix) {
        u.finite.push_back(cur);
        cur = step(cur, c);
      }
      index_t nl = std::count(f.cycle.begin(), f.cycle.end(), 'L');
      index_t nr = static_cast<index_t>(f.cycle.size()) - nl;
      for (char c : f.cycle) {
        u.rays.push_back(checked_ray({k, cur.i, cur.j, nl * sl, nr * sr}));
        cur = step(cur, c);
      }
      break;
    }
  }
  return u;
}

// Largest index step of any ray; used to size verification windows.
inline index_t family_reach(const Unfolded& u) {
  index_t r = 1;
  for (const Ray& ray : u.rays) r = std::max({r, std::abs(ray.di), std::abs(ray.dj)});
  return r;
}

inline std::string family_kind_name(FamilyKind k) {
  switch (k) {
    case FamilyKind::UpperFan: return "upper_fan";
    case FamilyKind::LowerFan: return "lower_fan";
    case FamilyKind::ConnFanUpper: return "conn_fan_upper";
    case FamilyKind::ConnFanLower: return "conn_fan_lower";
    case FamilyKind::Periodic: return "periodic";
    case FamilyKind::Nested: return "nested";
  }
  return "";
}

inline std::string dir_name(Dir d) {
  return d == Dir::Left ? "left" : (d == Dir::Right ? "right" : "both");
}

}  // namespace strip
