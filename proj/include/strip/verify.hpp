#pragma once

#include <map>
#include <string>
#include <vector>

#include "strip/cluster_ops.hpp"
#include "strip/oracle.hpp"
#include "strip/triangulation.hpp"

namespace strip::verify {

struct CheckCount {
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::vector<std::string> examples;

  void record(bool ok, const std::string& what) {
    ++cases;
    if (ok) return;
    ++failures;
    if (examples.size() < 5) examples.push_back(what);
  }
  bool ok() const { return failures == 0; }
};

using Report = std::map<std::string, CheckCount>;

inline bool all_ok(const Report& r) {
  for (const auto& [k, c] : r)
    if (!c.ok()) return false;
  return true;
}

// Fundamental-domain objects X with X, tau X, tau^2 X modules supported in w.
inline std::vector<rep::FundObject> transportable_objects(const rep::Oracle& orc, const Window& w,
                                                          index_t coord_range = 24) {
  std::vector<rep::FundObject> out;
  auto fits = [&](const rep::FundObject& x) {
    for (int k = 0; k < 3; ++k) {
      rep::Realization r;
      try {
        r = orc.realize(rep::tau_obj(x, k));
      } catch (const Error&) {
        return false;
      }
      if (r.shifted || !w.contains(r.module.lo) || !w.contains(r.module.hi)) return false;
    }
    return true;
  };
  for (index_t i = -coord_range; i <= coord_range; ++i)
    for (index_t j = -coord_range; j <= coord_range; ++j) {
      std::vector<rep::FundObject> cand{{rep::ObjType::Connecting, i, j}};
      if (i <= j) cand.push_back({rep::ObjType::RegularL, i, j});
      if (i >= j) cand.push_back({rep::ObjType::RegularR, i, j});
      for (const auto& x : cand)
        if (fits(x)) out.push_back(x);
    }
  return out;
}

// Orbit-category Hom and Ext against the arc dictionary.
inline Report dictionary(const rep::Oracle& orc, const Window& w) {
  Report r;
  auto objs = transportable_objects(orc, w);
  auto& hom = r["hom_orbit = hom_dim(phi)"];
  auto& ext = r["ext_orbit = ext_dim(phi)"];
  auto& dim = r["dimensions at most one"];
  auto& sym = r["ext symmetric"];
  auto& bij = r["phi_inv(phi(X)) = X"];
  auto& eq = r["phi(tau X) = tau phi(X)"];
  for (const auto& x : objs) {
    bij.record(rep::phi_inv(rep::phi(x)) == x, rep::to_string(x));
    eq.record(rep::phi(rep::tau_obj(x)) == translate(rep::phi(x), 1), rep::to_string(x));
  }
  for (const auto& x : objs)
    for (const auto& y : objs) {
      std::string tag = rep::to_string(x) + " " + rep::to_string(y);
      std::size_t h = orc.hom_orbit(x, y, w), e = orc.ext_orbit(x, y, w);
      hom.record(static_cast<int>(h) == hom_dim(rep::phi(x), rep::phi(y)), tag);
      ext.record(static_cast<int>(e) == ext_dim(rep::phi(x), rep::phi(y)), tag);
      dim.record(h <= 1 && e <= 1, tag);
      sym.record(e == orc.ext_orbit(y, x, w), tag);
    }
  return r;
}

enum class Component { Preprojective, Preinjective, RegularR, RegularL };

struct Classified {
  rep::Interval m;
  Component comp;
  // Connecting coordinates for the preprojective and preinjective components, fundamental
  // domain coordinates for the regular ones.
  index_t a = 0, b = 0;
};

// Every interval module inside w with its component, found by knitting and by the tiles.
inline std::vector<Classified> classify(const rep::Oracle& orc, const Window& w, CheckCount& unique) {
  std::map<rep::Interval, std::vector<Classified>> found;
  auto inside = [&](const rep::Interval& m) { return w.contains(m.lo) && w.contains(m.hi); };
  index_t span = w.hi - w.lo + 1;
  for (index_t x = w.lo - 2 * span; x <= w.hi + 2 * span; ++x) {
    auto [i, j] = orc.projective_coords(x);
    for (index_t s = -(span + 2); s <= span + 3; ++s) {
      rep::Realization r = orc.realize({rep::ObjType::Connecting, i + s, j + s});
      if (!inside(r.module)) continue;
      Component c = r.shifted ? Component::Preinjective : Component::Preprojective;
      found[r.module].push_back({r.module, c, i + s, j + s});
    }
  }
  for (index_t i = -2 * span; i <= 2 * span; ++i)
    for (index_t j = -2 * span; j <= 2 * span; ++j) {
      if (i >= j) {
        auto r = orc.realize({rep::ObjType::RegularR, i, j});
        if (inside(r.module)) found[r.module].push_back({r.module, Component::RegularR, i, j});
      }
      if (i <= j) {
        auto r = orc.realize({rep::ObjType::RegularL, i, j});
        if (inside(r.module)) found[r.module].push_back({r.module, Component::RegularL, i, j});
      }
    }
  std::vector<Classified> out;
  for (index_t lo = w.lo; lo <= w.hi; ++lo)
    for (index_t hi = lo; hi <= w.hi; ++hi) {
      auto it = found.find({lo, hi});
      bool one = it != found.end() && it->second.size() == 1;
      unique.record(one, rep::to_string(rep::Interval{lo, hi}));
      if (one) out.push_back(it->second.front());
    }
  return out;
}

inline Report structure(const rep::Oracle& orc, const Window& w) {
  Report r;
  const rep::Quiver& q = orc.quiver();
  auto mods = classify(orc, w, r["every interval in exactly one component"]);
  auto& orth = r["regular components orthogonal"];
  auto& dir = r["directedness"];
  auto& arf = r["ext(M,N) = hom(N, tau M)"];
  auto& succ = r["successor rule"];
  auto& rect = r["rectangle rule"];
  auto& cyc = r["no short cycles"];
  auto& small = r["hom and ext at most one"];
  auto& proj = r["ext from projectives vanishes"];
  std::vector<rep::Interval> taus(mods.size());
  std::vector<bool> has_tau(mods.size(), false);
  for (std::size_t i = 0; i < mods.size(); ++i) {
    try {
      taus[i] = rep::tau_rep(q, mods[i].m);
      has_tau[i] = true;
    } catch (const Error& e) {
      if (e.code() != "projective") throw;
    }
  }
  using C = Component;
  auto rank = [](C c) { return c == C::Preprojective ? 0 : (c == C::Preinjective ? 2 : 1); };
  for (std::size_t i = 0; i < mods.size(); ++i)
    for (std::size_t j = 0; j < mods.size(); ++j) {
      const Classified &m = mods[i], &n = mods[j];
      std::string tag = rep::to_string(m.m) + " " + rep::to_string(n.m);
      std::size_t h = rep::hom_rep(q, m.m, n.m), e = rep::ext_rep(q, m.m, n.m);
      small.record(h <= 1 && e <= 1, tag);
      bool rr = (m.comp == C::RegularR && n.comp == C::RegularL) || (m.comp == C::RegularL && n.comp == C::RegularR);
      if (rr) orth.record(h == 0, tag);
      if (rank(m.comp) > rank(n.comp)) dir.record(h == 0, tag);
      if (has_tau[i]) arf.record(e == rep::hom_rep(q, n.m, taus[i]), tag);
      if (m.comp == n.comp && (m.comp == C::Preprojective || m.comp == C::Preinjective))
        succ.record((h != 0) == (n.a <= m.a && n.b <= m.b), tag);
      if (m.comp == n.comp && (m.comp == C::RegularR || m.comp == C::RegularL)) {
        rep::ObjType t = m.comp == C::RegularR ? rep::ObjType::RegularR : rep::ObjType::RegularL;
        rect.record((h != 0) == rep::rectangle_contains({t, m.a, m.b}, {t, n.a, n.b}), tag);
      }
      if (m.comp != n.comp) cyc.record(!(h != 0 && rep::hom_rep(q, n.m, m.m) != 0), tag);
    }
  for (index_t x = w.lo; x <= w.hi; ++x) {
    rep::Interval p = q.projective(x);
    if (!w.contains(p.lo) || !w.contains(p.hi)) continue;
    for (const auto& n : mods) proj.record(rep::ext_rep(q, p, n.m) == 0, rep::to_string(p) + " " + rep::to_string(n.m));
  }
  // Wings: Hom(P_x, Y) != 0 exactly for Y in the wing of the tile containing x.
  auto& wing = r["wing rule"];
  auto tile_index = [&](index_t x, bool right) {
    for (index_t k = -4 * (w.hi - w.lo + 1); k <= 4 * (w.hi - w.lo + 1); ++k) {
      rep::Interval t = right ? orc.quasi_simple_r(k) : orc.quasi_simple_l(k);
      if (t.contains(x)) return k;
    }
    throw Error("window_insufficient", "no tile found");
  };
  for (index_t x = w.lo; x <= w.hi; ++x) {
    rep::Interval p = q.projective(x);
    index_t kr = tile_index(x, true), kl = tile_index(x, false);
    for (const auto& n : mods) {
      if (n.comp != C::RegularR && n.comp != C::RegularL) continue;
      bool right = n.comp == C::RegularR;
      rep::ObjType t = right ? rep::ObjType::RegularR : rep::ObjType::RegularL;
      index_t k = right ? kr : kl;
      bool h = rep::hom_rep(q, p, n.m) != 0;
      wing.record(h == rep::wing_contains({t, k, k}, {t, n.a, n.b}), "x=" + std::to_string(x) + " " + rep::to_string(n.m));
    }
  }
  // tau on quasi-simples: tiles against the Ext description, both directions.
  auto& qs = r["tau on quasi-simples agrees"];
  for (const auto& n : mods) {
    if ((n.comp != C::RegularR && n.comp != C::RegularL) || n.a != n.b) continue;
    auto t = rep::tau_quasi_simple(q, n.m, false), ti = rep::tau_quasi_simple(q, n.m, true);
    qs.record(t && *t == rep::tau_rep(q, n.m), rep::to_string(n.m));
    qs.record(ti && *ti == rep::tau_inv_rep(q, n.m), rep::to_string(n.m));
  }
  return r;
}

inline TriangulationDesc projective_desc(const rep::Oracle& orc) {
  rep::ProjectiveTriangulation p = rep::projective_triangulation(orc);
  TriangulationDesc d;
  d.window = p.window;
  // Explicit arcs outside the seeds' orbits only; the periodic tails supply the rest.
  d.families = {periodic(p.left_seed, 1, Dir::Left, p.left_shift),
                periodic(p.right_seed, 1, Dir::Right, p.right_shift)};
  Triangulation fam(d);
  for (const Arc& a : p.explicit_arcs)
    if (!fam.generated(a)) d.arcs.insert(a);
  return d;
}

// {phi(P_x)} as a certified compact triangulation whose quiver is Q^op on vertices
// phi(P_x), x in [xlo, xhi].
inline Report projectives(const rep::Oracle& orc, index_t xlo, index_t xhi) {
  Report r;
  const rep::Quiver& q = orc.quiver();
  TriangulationDesc d = projective_desc(orc);
  Triangulation t(d);
  ValidationReport v = validate(t);
  r["certified"].record(v.certified_maximal, "validate");
  CompactResult c = is_compact(t, true);
  r["compact"].record(c.compact, c.witness);
  r["no fountains"].record(fountains(t, true).empty(), "fountains");
  auto phi_p = [&](index_t x) {
    auto [i, j] = orc.projective_coords(x);
    return C(i, j);
  };
  Window w{0, 0};
  for (index_t x = xlo - 3; x <= xhi + 3; ++x) {
    Arc a = phi_p(x);
    r["phi(P_x) in T"].record(t.contains(a), to_string(a));
    w = x == xlo - 3 ? Window{std::min(a.i, a.j), std::max(a.i, a.j)} : hull(w, a);
  }
  QuiverGraph g = quiver(t, w, true);
  auto& match = r["quiver is Q^op"];
  for (index_t x = xlo; x <= xhi; ++x) {
    Arc a = phi_p(x);
    r["window vertices interior"].record(g.is_interior(a), to_string(a));
    std::vector<Arc> want_in, want_out;
    for (index_t y : {x - 1, x + 1}) {
      auto ar = q.arrow(std::min(x, y));
      (ar.first == x ? want_in : want_out).push_back(phi_p(y));
    }
    auto got_in = g.in_neighbors(a), got_out = g.out_neighbors(a);
    for (auto* v : {&want_in, &want_out, &got_in, &got_out}) std::sort(v->begin(), v->end());
    match.record(got_in == want_in && got_out == want_out, "at " + to_string(a));
  }
  return r;
}

}  // namespace strip::verify
