#pragma once

#include <string>
#include <vector>

#include "strip/triangulation.hpp"

namespace strip::catalog {

// {C(k,-k), C(k+1,-k) : k in Z}.
inline TriangulationDesc standard() {
  TriangulationDesc d;
  d.arcs = {C(0, 0), C(1, 0)};
  d.families = {periodic({C(0, 0), C(1, 0)}, 1, Dir::Both)};
  d.window = {-3, 3};
  return d;
}

// Left fountain at l4 and right fountain at l5.
inline TriangulationDesc two_fountain() {
  TriangulationDesc d;
  d.families = {upper_fan(4, 2, Dir::Left), conn_fan_upper(4, 3, Dir::Left),
                conn_fan_upper(5, 3, Dir::Right), upper_fan(5, 7, Dir::Right)};
  d.window = {0, 8};
  return d;
}

// Every arc of the triangulation ends at l0.
inline TriangulationDesc full_fountain() {
  TriangulationDesc d;
  d.families = {upper_fan(0, -2, Dir::Left), upper_fan(0, 2, Dir::Right),
                conn_fan_upper(0, 0, Dir::Left), conn_fan_upper(0, -1, Dir::Right)};
  d.window = {-3, 3};
  return d;
}

// Two nested staircases, one per boundary, and no connecting arc.
inline TriangulationDesc split_nested() {
  TriangulationDesc d;
  d.families = {nested(0, 2, "", "LR", Side::Upper), nested(2, 0, "", "LR", Side::Lower)};
  d.window = {-3, 3};
  return d;
}

struct Entry {
  std::string name;
  TriangulationDesc desc;
};

inline std::vector<Entry> all() {
  return {{"standard", standard()},
          {"two_fountain", two_fountain()},
          {"full_fountain", full_fountain()},
          {"split_nested", split_nested()}};
}

}  // namespace strip::catalog
