#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "strip/catalog.hpp"
#include "strip/cluster_ops.hpp"

using namespace strip;

namespace {

std::set<Arc> as_set(const std::vector<Arc>& v) { return {v.begin(), v.end()}; }

// Arrows u -> v of T: a nonzero morphism that does not pass through a third member.
std::set<std::pair<Arc, Arc>> hom_arrows(const Triangulation& t, const std::vector<Arc>& vs, const Window& search) {
  std::vector<Arc> ms = oracle::members_brute(t, search);
  std::set<std::pair<Arc, Arc>> out;
  for (const Arc& u : vs)
    for (const Arc& v : vs) {
      if (u == v || !oracle::interleave_hom(u, v)) continue;
      bool through = false;
      for (const Arc& w : ms)
        if (w != u && w != v && oracle::interleave_hom(u, w) && oracle::interleave_hom(w, v)) through = true;
      if (!through) out.insert({u, v});
    }
  return out;
}

}  // namespace

TEST_CASE("hom and ext on arcs") {
  CHECK(ext_dim(C(0, 0), C(0, 0)) == 0);
  CHECK(ext_dim(C(0, 0), C(1, 1)) == 1);
  CHECK(ext_dim(U(0, 2), D(2, 0)) == 0);
  CHECK(hom_dim(C(0, 0), C(0, 0)) == 1);
  CHECK(hom_dim(C(0, 1), C(0, 0)) == 1);
  CHECK(hom_dim(C(0, 0), C(0, 1)) == 0);
  auto arcs = arcs_in_window({-5, 5});
  for (const Arc& u : arcs) {
    CHECK(hom_dim(u, translate(u, 1)) == 0);
    for (const Arc& v : arcs) {
      REQUIRE(ext_dim(u, v) == ext_dim(v, u));
      REQUIRE(hom_dim(u, v) == (oracle::interleave_hom(u, v) ? 1 : 0));
    }
  }
}

TEST_CASE("AR neighbours") {
  CHECK(as_set(ar_neighbors(C(0, 0))) == std::set<Arc>{C(0, -1), C(-1, 0)});
  CHECK(as_set(ar_neighbors(U(0, 2))) == std::set<Arc>{U(-1, 2)});
  CHECK(as_set(ar_neighbors(D(2, 0))) == std::set<Arc>{D(2, -1)});
  CHECK(as_set(ar_neighbors(U(0, 5))) == std::set<Arc>{U(0, 4), U(-1, 5)});
  // Irreducible maps out of u are nonzero.
  for (const Arc& u : arcs_in_window({-4, 4}))
    for (const Arc& v : ar_neighbors(u)) CHECK(oracle::interleave_hom(u, v));
}

TEST_CASE("quadrilateral and flip on the staircase") {
  Triangulation st(catalog::standard());
  Quadrilateral q = quadrilateral(st, C(0, 0));
  CHECK(q.partner == C(1, 1));
  std::set<Point> corners(q.corners.begin(), q.corners.end());
  CHECK(corners == std::set<Point>{upper(0), upper(1), lower(1), lower(0)});
  std::set<Arc> side_arcs;
  int segments = 0;
  for (const auto& s : q.sides) {
    if (s.arc) side_arcs.insert(*s.arc);
    else ++segments;
  }
  CHECK(side_arcs == std::set<Arc>{C(0, 1), C(1, 0)});
  CHECK(segments == 2);
  CHECK_THROWS_WITH_AS(quadrilateral(st, C(9, 9)), doctest::Contains("not an arc"), Error);

  FlipResult f = flip(st, C(0, 0));
  CHECK(f.partner == C(1, 1));
  Triangulation st2(f.desc);
  CHECK(validate(st2).certified_maximal);
  FlipResult back = flip(st2, C(1, 1));
  CHECK(back.partner == C(0, 0));
  CHECK(back.desc == catalog::standard());
  // Brute force: exactly two arcs complete the staircase minus C(0,0).
  CHECK(as_set(oracle::completions(st, C(0, 0), {-8, 8}, {-30, 30})) == std::set<Arc>{C(0, 0), C(1, 1)});
}

TEST_CASE("flip at a full fountain") {
  Triangulation ff(catalog::full_fountain());
  Quadrilateral q = quadrilateral(ff, C(0, 5));
  CHECK(q.partner == D(6, 4));
  std::set<Point> corners(q.corners.begin(), q.corners.end());
  CHECK(corners == std::set<Point>{upper(0), lower(4), lower(5), lower(6)});
  auto c = oracle::completions(ff, C(0, 5), {-10, 10}, {-30, 30});
  CHECK(as_set(c) == std::set<Arc>{D(6, 4), C(0, 5)});
  FlipResult f = flip(ff, C(0, 5));
  CHECK(f.desc.removed == std::set<Arc>{C(0, 5)});
  CHECK(f.desc.arcs == std::set<Arc>{D(6, 4)});
  CHECK(flip(Triangulation(f.desc), D(6, 4)).desc == catalog::full_fountain());
}

TEST_CASE("flip errors") {
  Triangulation st(catalog::standard());
  try {
    flip(st, U(0, 3));
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == "not_in_T");
  }
  // The split triangulation has nested arcs with no quadrilateral around the limit side.
  Triangulation split(catalog::split_nested());
  for (const Arc& u : split.members_in_window({-6, 6})) {
    try {
      FlipResult f = flip(split, u);
      CHECK(ext_dim(u, f.partner) == 1);
    } catch (const Error& e) {
      CHECK(e.code() == "no_quadrilateral");
    }
  }
}

TEST_CASE("staircase quiver") {
  Triangulation st(catalog::standard());
  QuiverGraph q = quiver(st, {-1, 2});
  std::set<std::pair<Arc, Arc>> arrows(q.arrows.begin(), q.arrows.end());
  std::set<std::pair<Arc, Arc>> expect{{C(-1, 2), C(-1, 1)}, {C(0, 1), C(-1, 1)}, {C(0, 1), C(0, 0)},
                                       {C(1, 0), C(0, 0)},   {C(1, 0), C(1, -1)}, {C(2, -1), C(1, -1)}};
  CHECK(arrows == expect);
  CHECK(q.is_interior(C(0, 0)));
  CHECK(q.out_neighbors(C(0, 0)).empty());
  CHECK(q.in_neighbors(C(0, 0)).size() == 2);
  CHECK_THROWS_AS(quiver(Triangulation(catalog::split_nested()), {-3, 3}), Error);
}

TEST_CASE("quiver arrows are the irreducible morphisms") {
  for (const auto& e : catalog::all()) {
    Triangulation t(e.desc);
    if (!is_compact(t).compact) continue;
    CAPTURE(e.name);
    Window w{-5, 9};
    QuiverGraph q = quiver(t, w);
    auto expect = hom_arrows(t, q.vertices, {-40, 40});
    std::size_t checked = 0;
    for (const Arc& v : q.vertices) {
      if (!q.is_interior(v)) continue;
      ++checked;
      for (const Arc& x : q.out_neighbors(v)) CHECK(expect.count({v, x}));
      for (const Arc& x : q.in_neighbors(v)) CHECK(expect.count({x, v}));
      for (const auto& [a, b] : expect)
        if (a == v || b == v) CHECK(std::count(q.arrows.begin(), q.arrows.end(), std::make_pair(a, b)) == 1);
    }
    CHECK(checked > 5);
  }
}

TEST_CASE("quiver is translation equivariant") {
  Triangulation st(catalog::standard());
  QuiverGraph q = quiver(st, {-2, 3});
  for (index_t k : {-4, 7}) {
    QuiverGraph s = quiver(Triangulation(translate_all(catalog::standard(), k)), {-2 + k, 3 + k});
    REQUIRE(s.vertices.size() == q.vertices.size());
    for (std::size_t i = 0; i < q.vertices.size(); ++i) CHECK(s.vertices[i] == translate(q.vertices[i], k));
    std::vector<std::pair<Arc, Arc>> moved;
    for (const auto& [a, b] : q.arrows) moved.emplace_back(translate(a, k), translate(b, k));
    std::sort(moved.begin(), moved.end());
    CHECK(s.arrows == moved);
  }
}

TEST_CASE("matrix mutation") {
  QuiverGraph q;
  Arc v1 = C(1, 0), v2 = C(2, 0), v3 = C(3, 0);
  q.vertices = {v1, v2, v3};
  q.interior = {true, true, true};
  q.arrows = {{v1, v2}, {v2, v3}};
  QuiverGraph m = fz_mutate(q, v2);
  std::set<std::pair<Arc, Arc>> arrows(m.arrows.begin(), m.arrows.end());
  CHECK(arrows == std::set<std::pair<Arc, Arc>>{{v2, v1}, {v3, v2}, {v1, v3}});
  CHECK(fz_mutate(m, v2) == q);
  CHECK(exchange_matrix(m) == oracle::mutate_matrix(exchange_matrix(q), 1));

  QuiverGraph loop = q;
  loop.arrows.push_back({v2, v2});
  CHECK_THROWS_AS(fz_mutate(loop, v2), Error);
  QuiverGraph cyc = q;
  cyc.arrows.push_back({v2, v1});
  CHECK_THROWS_AS(fz_mutate(cyc, v2), Error);
  QuiverGraph edge = q;
  edge.interior[1] = false;
  CHECK_THROWS_AS(fz_mutate(edge, v2), Error);
  CHECK_THROWS_AS(fz_mutate(q, C(9, 9)), Error);
}

TEST_CASE("mutation follows flips") {
  Triangulation st(catalog::standard());
  Window w{-2, 3};
  QuiverGraph before = quiver(st, w);
  FlipResult f = flip(st, C(0, 0));
  QuiverGraph after = quiver(Triangulation(f.desc), w);
  QuiverGraph mut = relabel(fz_mutate(before, C(0, 0)), C(0, 0), C(1, 1));
  CHECK(count_interior_in_both(mut, after) >= 4);
  CHECK(interior_mismatches(mut, after).empty());

  std::mt19937_64 rng(11);
  for (const auto& e : catalog::all()) {
    Triangulation t0(e.desc);
    if (!is_compact(t0).compact) continue;
    CAPTURE(e.name);
    TriangulationDesc d = e.desc;
    Window win{-8, 8};
    for (int step = 0; step < 25; ++step) {
      Triangulation t(d);
      QuiverGraph q = quiver(t, win, true);
      std::vector<Arc> cand;
      for (std::size_t i = 0; i < q.vertices.size(); ++i)
        if (q.interior[i]) cand.push_back(q.vertices[i]);
      REQUIRE_FALSE(cand.empty());
      Arc u = cand[rng() % cand.size()];
      FlipResult fr = flip(t, u);
      Triangulation nt(fr.desc);
      CHECK(ext_dim(u, fr.partner) == 1);
      QuiverGraph m = relabel(fz_mutate(q, u), u, fr.partner);
      QuiverGraph n = quiver(nt, win, true);
      CHECK(interior_mismatches(m, n).empty());
      CHECK(component_count(nt, true).count == component_count(t, true).count);
      d = fr.desc;
    }
  }
}

TEST_CASE("weak components") {
  QuiverGraph q;
  q.vertices = {C(0, 0), C(1, 0), C(5, 5)};
  q.interior = {true, true, true};
  q.arrows = {{C(1, 0), C(0, 0)}};
  CHECK(weak_components(q).size() == 2);
}
