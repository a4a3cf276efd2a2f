#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace strip {

using index_t = std::int64_t;

// Domain error carrying a short machine-readable code.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}
  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

enum class Side { Upper, Lower };

// Upper point l_i sits at (i, 1), lower point r_i at (-i, 0).
struct Point {
  Side side = Side::Upper;
  index_t index = 0;

  friend bool operator==(const Point&, const Point&) = default;
  friend auto operator<=>(const Point&, const Point&) = default;
};

inline Point upper(index_t i) { return {Side::Upper, i}; }
inline Point lower(index_t i) { return {Side::Lower, i}; }

inline std::string to_string(const Point& p) {
  return (p.side == Side::Upper ? "l" : "r") + std::to_string(p.index);
}

inline Point parse_point(std::string_view s) {
  if (s.size() < 2 || (s[0] != 'l' && s[0] != 'r'))
    throw Error("parse", "marked point must look like l<int> or r<int>");
  try {
    std::size_t used = 0;
    std::string body(s.substr(1));
    long long v = std::stoll(body, &used);
    if (used != body.size()) throw Error("parse", "trailing characters in marked point");
    return {s[0] == 'l' ? Side::Upper : Side::Lower, v};
  } catch (const std::logic_error&) {
    throw Error("parse", "bad index in marked point");
  }
}

enum class Kind { Upper, Lower, Connecting };

inline index_t checked_add(index_t a, index_t b) {
  index_t r;
  if (__builtin_add_overflow(a, b, &r)) throw Error("overflow", "index arithmetic overflow");
  return r;
}

inline index_t checked_mul(index_t a, index_t b) {
  index_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw Error("overflow", "index arithmetic overflow");
  return r;
}

// Upper(i,j): l_i, l_j with j >= i+2.  Lower(i,j): r_i, r_j with i >= j+2.
// Connecting(i,j): l_i, r_j.
struct Arc {
  Kind kind = Kind::Connecting;
  index_t i = 0;
  index_t j = 0;

  friend bool operator==(const Arc&, const Arc&) = default;
  friend auto operator<=>(const Arc&, const Arc&) = default;
};

inline bool valid(Kind k, index_t i, index_t j) {
  switch (k) {
    case Kind::Upper: return static_cast<__int128>(j) - i >= 2;
    case Kind::Lower: return static_cast<__int128>(i) - j >= 2;
    case Kind::Connecting: return true;
  }
  return false;
}

inline Arc make_arc(Kind k, index_t i, index_t j) {
  if (!valid(k, i, j)) {
    const char* name = k == Kind::Upper ? "U" : (k == Kind::Lower ? "D" : "C");
    throw Error("invalid_arc", std::string(name) + "(" + std::to_string(i) + "," +
                                   std::to_string(j) + ") is not an arc");
  }
  return {k, i, j};
}

inline Arc U(index_t i, index_t j) { return make_arc(Kind::Upper, i, j); }
inline Arc D(index_t i, index_t j) { return make_arc(Kind::Lower, i, j); }
inline Arc C(index_t i, index_t j) { return make_arc(Kind::Connecting, i, j); }

inline std::pair<Point, Point> endpoints(const Arc& u) {
  switch (u.kind) {
    case Kind::Upper: return {upper(u.i), upper(u.j)};
    case Kind::Lower: return {lower(u.i), lower(u.j)};
    case Kind::Connecting: break;
  }
  return {upper(u.i), lower(u.j)};
}

inline bool has_endpoint(const Arc& u, const Point& p) {
  auto [a, b] = endpoints(u);
  return a == p || b == p;
}

inline Point other_endpoint(const Arc& u, const Point& p) {
  auto [a, b] = endpoints(u);
  if (a == p) return b;
  if (b == p) return a;
  throw Error("invalid_endpoint", to_string(p) + " is not an endpoint of the arc");
}

inline bool is_boundary_edge(const Point& a, const Point& b) {
  if (a.side != b.side) return false;
  __int128 d = static_cast<__int128>(a.index) - b.index;
  return d == 1 || d == -1;
}

// The arc joining two marked points, if that pair is an arc.
inline std::optional<Arc> arc_between(const Point& a, const Point& b) {
  if (a.side != b.side) {
    const Point& up = a.side == Side::Upper ? a : b;
    const Point& lo = a.side == Side::Upper ? b : a;
    return Arc{Kind::Connecting, up.index, lo.index};
  }
  index_t lo = std::min(a.index, b.index), hi = std::max(a.index, b.index);
  if (static_cast<__int128>(hi) - lo < 2) return std::nullopt;
  if (a.side == Side::Upper) return Arc{Kind::Upper, lo, hi};
  return Arc{Kind::Lower, hi, lo};
}

inline bool shares_endpoint(const Arc& u, const Arc& v) {
  auto [a, b] = endpoints(u);
  return has_endpoint(v, a) || has_endpoint(v, b);
}

namespace detail {

inline bool cross_ordered(const Arc& u, const Arc& v) {
  // u.kind <= v.kind in the order Upper, Lower, Connecting.
  if (u.kind == Kind::Upper && v.kind == Kind::Lower) return false;
  if (u.kind == Kind::Upper && v.kind == Kind::Connecting) return u.i < v.i && v.i < u.j;
  if (u.kind == Kind::Lower && v.kind == Kind::Connecting) return u.i > v.j && v.j > u.j;
  if (u.kind == Kind::Connecting)
    return (u.i > v.i && u.j > v.j) || (u.i < v.i && u.j < v.j);
  if (u.kind == Kind::Upper)
    return (u.i < v.i && v.i < u.j && u.j < v.j) || (v.i < u.i && u.i < v.j && v.j < u.j);
  return (u.i > v.i && v.i > u.j && u.j > v.j) || (v.i > u.i && u.i > v.j && v.j > u.j);
}

}  // namespace detail

inline bool cross(const Arc& u, const Arc& v) {
  if (u == v) return false;
  if (static_cast<int>(u.kind) <= static_cast<int>(v.kind)) return detail::cross_ordered(u, v);
  return detail::cross_ordered(v, u);
}

inline Arc translate(const Arc& u, index_t k) {
  return {u.kind, checked_add(u.i, k), checked_add(u.j, k)};
}

inline bool conn_leq(const Arc& u, const Arc& v) {
  if (u.kind != Kind::Connecting || v.kind != Kind::Connecting)
    throw Error("not_connecting", "conn_leq is defined on connecting arcs only");
  return u.i <= v.i && u.j >= v.j;
}

// Position of m in the counter-clockwise sweep at p, compared lexicographically.
// The boundary neighbours of p are admitted and sit at the two extremes.
using CcwKey = std::pair<int, index_t>;

inline CcwKey ccw_key(const Point& p, const Point& m) {
  if (m == p) throw Error("invalid_endpoint", "a point is not an endpoint of an arc at itself");
  int block = 1;
  if (m.side == p.side) block = m.index < p.index ? 0 : 2;
  return {block, -m.index};
}

inline bool ccw_precedes(const Point& p, const Point& m1, const Point& m2) {
  if (!arc_between(p, m1) || !arc_between(p, m2))
    throw Error("invalid_endpoint", "ccw_precedes needs arcs {p,m1} and {p,m2}");
  if (m1 == m2) throw Error("invalid_endpoint", "ccw_precedes needs distinct points");
  return ccw_key(p, m1) < ccw_key(p, m2);
}

inline std::optional<Point> common_endpoint(const Arc& u, const Arc& v) {
  auto [a, b] = endpoints(u);
  if (has_endpoint(v, a)) return a;
  if (has_endpoint(v, b)) return b;
  return std::nullopt;
}

inline bool rotates_to(const Arc& u, const Arc& v) {
  if (u == v) return false;
  auto p = common_endpoint(u, v);
  if (!p) return false;
  return ccw_key(*p, other_endpoint(u, *p)) < ccw_key(*p, other_endpoint(v, *p));
}

inline std::string to_string(const Arc& u) {
  const char* name = u.kind == Kind::Upper ? "U" : (u.kind == Kind::Lower ? "D" : "C");
  return std::string(name) + "(" + std::to_string(u.i) + "," + std::to_string(u.j) + ")";
}

namespace detail {

struct ArcParser {
  std::string_view s;
  std::size_t pos = 0;

  [[noreturn]] void fail(const std::string& what) const {
    throw Error("parse", "arc \"" + std::string(s) + "\": " + what + " at position " +
                             std::to_string(pos));
  }
  void skip_ws() {
    while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
  }
  void expect(char c) {
    skip_ws();
    if (pos >= s.size() || s[pos] != c) fail(std::string("expected '") + c + "'");
    ++pos;
  }
  index_t integer() {
    skip_ws();
    std::size_t start = pos;
    bool neg = false;
    if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) {
      neg = s[pos] == '-';
      ++pos;
    }
    if (pos >= s.size() || s[pos] < '0' || s[pos] > '9') {
      pos = start;
      fail("expected integer");
    }
    index_t v = 0;
    while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') {
      index_t d = s[pos] - '0';
      if (__builtin_mul_overflow(v, 10, &v) || __builtin_sub_overflow(v, d, &v)) {
        pos = start;
        fail("integer out of range");
      }
      ++pos;
    }
    if (!neg) {
      if (v == INT64_MIN) {
        pos = start;
        fail("integer out of range");
      }
      v = -v;
    }
    return v;
  }
};

}  // namespace detail

inline Arc parse_arc(std::string_view s) {
  detail::ArcParser p{s};
  p.skip_ws();
  if (p.pos >= s.size()) p.fail("empty input");
  char c = s[p.pos];
  Kind k;
  if (c == 'U') k = Kind::Upper;
  else if (c == 'D') k = Kind::Lower;
  else if (c == 'C') k = Kind::Connecting;
  else p.fail("expected U, D or C");
  ++p.pos;
  p.expect('(');
  index_t i = p.integer();
  p.expect(',');
  index_t j = p.integer();
  p.expect(')');
  p.skip_ws();
  if (p.pos != s.size()) p.fail("trailing characters");
  if (!valid(k, i, j)) {
    p.pos = 0;
    p.fail(k == Kind::Connecting ? "invalid arc" : "boundary edge or reversed pair, not an arc");
  }
  return {k, i, j};
}

}  // namespace strip
