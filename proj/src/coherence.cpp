#include "catq/coherence.hpp"

#include <algorithm>
#include <cstdint>
#include <string>
#include <tuple>

#include "catq/errors.hpp"

namespace catq {

namespace {

// ---------------------------------------------------------------------------
// Square plumbing.
// ---------------------------------------------------------------------------

void require_square_endpoints(const PullbackSquare& sq) {
  if (sq.top.from != sq.left.from)
    throw ContextMismatch("square: top and left legs do not share the apex");
  if (sq.top.to != sq.right.from)
    throw ContextMismatch("square: top leg does not end where the right leg starts");
  if (sq.left.to != sq.bottom.from)
    throw ContextMismatch("square: left leg does not end where the bottom leg starts");
  if (sq.right.to != sq.bottom.to)
    throw ContextMismatch("square: right and bottom legs do not share the corner");
}

Predicate img(const SetMap& m, const Predicate& p) {
  return Predicate(m.to, image_mask(m, p.bits));
}

Predicate pre(const SetMap& m, const Predicate& p) {
  return Predicate(m.from, preimage_mask(m, p.bits));
}

/// Merge a sub-report under a law-name prefix, optionally prepending an id
/// to every witness.
void merge_prefixed(LawReport& rep, const LawReport& sub, const std::string& prefix,
                    std::optional<long long> lead_id = std::nullopt) {
  for (const auto& l : sub.laws_checked) rep.note_law(prefix + l);
  rep.instances += sub.instances;
  for (const auto& w : sub.failures) {
    std::vector<long long> ids;
    if (lead_id) ids.push_back(*lead_id);
    ids.insert(ids.end(), w.ids.begin(), w.ids.end());
    rep.fail(prefix + w.law, std::move(ids), w.detail);
  }
}

std::string first_failure(const LawReport& rep) {
  if (rep.pass()) return "";
  return rep.failures.front().law + ": " + rep.failures.front().detail;
}

}  // namespace

void require_square(const PullbackSquare& sq) {
  require_square_endpoints(sq);
  SetMap across = compose_maps(sq.right, sq.top);
  SetMap down = compose_maps(sq.bottom, sq.left);
  if (!(across == down)) throw MalformedInput("square does not commute");
}

PullbackSquare make_canonical_pullback(const SetMap& right, const SetMap& bottom) {
  if (right.to != bottom.to)
    throw ContextMismatch("pullback: the two maps do not share a target");
  std::vector<Elem> apex;
  std::vector<int> ttab, ltab;
  for (int u = 0; u < right.from.size(); ++u)
    for (int l = 0; l < bottom.from.size(); ++l) {
      if (right.apply_index(u) != bottom.apply_index(l)) continue;
      apex.push_back(Elem::pair(right.from.elements[static_cast<std::size_t>(u)],
                                bottom.from.elements[static_cast<std::size_t>(l)]));
      ttab.push_back(u);
      ltab.push_back(l);
    }
  Context a(std::move(apex));
  PullbackSquare sq;
  sq.top = SetMap(a, right.from, std::move(ttab));
  sq.left = SetMap(a, bottom.from, std::move(ltab));
  sq.right = right;
  sq.bottom = bottom;
  return sq;
}

LawReport check_pullback_square(const PullbackSquare& sq) {
  require_square_endpoints(sq);
  LawReport rep;
  rep.note_law("square-commutes");
  rep.note_law("canonical-apex");
  for (int i = 0; i < sq.top.from.size(); ++i) {
    ++rep.instances;
    if (sq.right.apply_index(sq.top.apply_index(i)) !=
        sq.bottom.apply_index(sq.left.apply_index(i))) {
      rep.fail("square-commutes", {i},
               "apex element '" +
                   sq.top.from.elements[static_cast<std::size_t>(i)].label() +
                   "' reaches different corner elements along the two sides");
      break;
    }
  }
  PullbackSquare canon = make_canonical_pullback(sq.right, sq.bottom);
  ++rep.instances;
  if (!(sq.top.from == canon.top.from && sq.top.tab == canon.top.tab &&
        sq.left.tab == canon.left.tab))
    rep.fail("canonical-apex", {},
             "apex " + sq.top.from.label() + " is not the canonical pullback " +
                 canon.top.from.label());
  return rep;
}

void require_canonical_pullback(const PullbackSquare& sq) {
  LawReport rep = check_pullback_square(sq);
  if (!rep.pass()) throw NotAPullback(first_failure(rep));
}

BeckChevalleyWitness beck_chevalley(const PullbackSquare& sq, const Predicate& phi) {
  require_canonical_pullback(sq);
  if (!(phi.over == sq.top.to))
    throw ContextMismatch("predicate does not live over the square's upper context");
  BeckChevalleyWitness w;
  w.phi = phi;
  Predicate route_a = pre(sq.bottom, img(sq.right, phi));   // across, then down
  Predicate route_b = img(sq.left, pre(sq.top, phi));       // down, then across
  Predicate unit_target = pre(sq.right, img(sq.right, phi));
  w.step1 = Inclusion{pre(sq.top, phi), pre(sq.top, unit_target)};
  w.step2 = Inclusion{pre(sq.top, unit_target), pre(sq.left, route_a)};
  w.step3 = Inclusion{img(sq.left, pre(sq.left, route_a)), route_a};
  w.composite = Inclusion{route_b, route_a};
  w.inverse = Inclusion{route_a, route_b};
  return w;
}

LawReport check_beck_chevalley(const PullbackSquare& sq) {
  require_canonical_pullback(sq);
  const Context& upper = sq.top.to;
  if (upper.size() > 16)
    throw SizeCapExceeded("upper context of " + std::to_string(upper.size()) +
                          " elements exceeds the sweep cap of 16");
  LawReport rep;
  for (const char* l : {"unit-step", "comparison-identity", "counit-step", "steps-chain",
                        "composite-mate", "inverse-mate", "two-sided"})
    rep.note_law(l);
  const std::uint64_t full = full_mask(upper.size());
  for (std::uint64_t bits = 0;; ++bits) {
    Predicate phi(upper, bits);
    BeckChevalleyWitness w = beck_chevalley(sq, phi);
    const auto id = static_cast<long long>(bits);
    ++rep.instances;
    if (!w.step1.holds())
      rep.fail("unit-step", {id}, "unit inclusion fails at phi = " + phi.label());
    ++rep.instances;
    if (!w.step2.is_equality())
      rep.fail("comparison-identity", {id},
               "comparison cell is not an equality at phi = " + phi.label());
    ++rep.instances;
    if (!w.step3.holds())
      rep.fail("counit-step", {id}, "counit inclusion fails at phi = " + phi.label());
    ++rep.instances;
    if (!(w.step1.to == w.step2.from && img(sq.left, w.step1.from) == w.composite.from &&
          img(sq.left, w.step2.to) == w.step3.from && w.step3.to == w.composite.to))
      rep.fail("steps-chain", {id},
               "the three steps do not chain into the composite at phi = " + phi.label());
    ++rep.instances;
    if (!w.composite.holds())
      rep.fail("composite-mate", {id},
               "comparison inclusion fails at phi = " + phi.label());
    ++rep.instances;
    if (!w.inverse.holds())
      rep.fail("inverse-mate", {id},
               "reverse inclusion fails at phi = " + phi.label());
    ++rep.instances;
    if (!(w.composite.from == w.composite.to))
      rep.fail("two-sided", {id},
               "the two transport routes differ at phi = " + phi.label() + ": " +
                   w.composite.from.label() + " vs " + w.composite.to.label());
    if (bits == full) break;
  }
  return rep;
}

std::optional<Predicate> beck_counterexample(const PullbackSquare& sq) {
  require_square(sq);
  const Context& upper = sq.top.to;
  if (upper.size() > 16)
    throw SizeCapExceeded("upper context of " + std::to_string(upper.size()) +
                          " elements exceeds the sweep cap of 16");
  const std::uint64_t full = full_mask(upper.size());
  for (std::uint64_t bits = 0;; ++bits) {
    Predicate phi(upper, bits);
    Predicate route_a = pre(sq.bottom, img(sq.right, phi));
    Predicate route_b = img(sq.left, pre(sq.top, phi));
    if (!(route_a == route_b)) return phi;
    if (bits == full) break;
  }
  return std::nullopt;
}

LawReport substitution_composition_coherence(const SetMap& g, const SetMap& f, int cap) {
  if (f.to != g.from)
    throw ContextMismatch("transport chain: maps do not compose");
  for (const Context* c : {&f.from, &f.to, &g.to})
    if (c->size() > cap)
      throw SizeCapExceeded("context of " + std::to_string(c->size()) +
                            " elements exceeds the chain cap of " + std::to_string(cap));
  SetMap gf = compose_maps(g, f);
  LawReport rep;
  rep.note_law("image-composition");
  rep.note_law("preimage-composition");
  const std::uint64_t sfull = full_mask(f.from.size());
  for (std::uint64_t s = 0;; ++s) {
    ++rep.instances;
    if (image_mask(g, image_mask(f, s)) != image_mask(gf, s))
      rep.fail("image-composition", {static_cast<long long>(s)},
               "stepwise image differs from one-shot image at " +
                   Predicate(f.from, s).label());
    if (s == sfull) break;
  }
  const std::uint64_t tfull = full_mask(g.to.size());
  for (std::uint64_t t = 0;; ++t) {
    ++rep.instances;
    if (preimage_mask(f, preimage_mask(g, t)) != preimage_mask(gf, t))
      rep.fail("preimage-composition", {static_cast<long long>(t)},
               "stepwise preimage differs from one-shot preimage at " +
                   Predicate(g.to, t).label());
    if (t == tfull) break;
  }
  return rep;
}

// ===========================================================================
// Diagrams of categories and their pseudo-limits.
// ===========================================================================

namespace {

bool is_identity_morphism(const FinCategory& c, int m) {
  const Morphism& mo = c.morphism(m);
  return mo.src == mo.tgt && c.id_of(mo.src) == m;
}

std::vector<int> nonidentity_morphisms(const FinCategory& c) {
  std::vector<int> out;
  for (const Morphism& m : c.morphisms)
    if (!is_identity_morphism(c, m.id)) out.push_back(m.id);
  return out;
}

const CatPtr& node_at(const CatDiagram& d, int obj) {
  auto it = d.node.find(obj);
  if (it == d.node.end())
    throw MalformedInput("diagram has no category at shape object " + std::to_string(obj));
  return it->second;
}

const FinFunctor& edge_at(const CatDiagram& d, int m) {
  auto it = d.edge.find(m);
  if (it == d.edge.end())
    throw MalformedInput("diagram has no functor at shape morphism " + std::to_string(m));
  return it->second;
}

/// Calls fn once per tuple in the cartesian product of the option lists
/// (once with the empty tuple when there are no slots).  Returns false if fn
/// ever returns false (early stop).
template <class F>
bool for_each_choice(const std::vector<std::vector<int>>& options, F&& fn) {
  for (const auto& o : options)
    if (o.empty()) return true;  // empty product: no tuples at all
  std::vector<std::size_t> pick(options.size(), 0);
  std::vector<int> vals(options.size());
  while (true) {
    for (std::size_t i = 0; i < options.size(); ++i) vals[i] = options[i][pick[i]];
    if (!fn(vals)) return false;
    std::size_t i = 0;
    for (; i < pick.size(); ++i) {
      if (++pick[i] < options[i].size()) break;
      pick[i] = 0;
    }
    if (i == pick.size()) return true;
  }
}

}  // namespace

CatDiagram fill_identity_comparisons(CatDiagram d) {
  if (!d.shape) throw MalformedInput("diagram has no shape category");
  const FinCategory& sh = *d.shape;
  std::vector<int> edges = nonidentity_morphisms(sh);
  for (int f : edges)
    for (int g : edges) {
      if (!sh.composable(g, f)) continue;
      int gf = sh.compose(g, f);
      if (!d.comparison.count({g, f}))
        d.comparison.emplace(std::make_pair(g, f), identity_transform(edge_at(d, gf)));
    }
  return d;
}

NatTransform comparison_at(const CatDiagram& d, int g, int f) {
  const FinCategory& sh = *d.shape;
  if (!sh.composable(g, f))
    throw MalformedInput("comparison requested for a non-composable pair (" +
                         std::to_string(g) + ", " + std::to_string(f) + ")");
  int gf = sh.compose(g, f);
  if (is_identity_morphism(sh, f) || is_identity_morphism(sh, g))
    return identity_transform(edge_at(d, gf));
  auto it = d.comparison.find({g, f});
  if (it == d.comparison.end())
    throw MissingComparisonCell("no comparison cell for shape morphism " +
                                std::to_string(g) + " after " + std::to_string(f));
  return it->second;
}

LawReport check_cat_diagram(const CatDiagram& d) {
  if (!d.shape) throw MalformedInput("diagram has no shape category");
  const FinCategory& sh = *d.shape;
  LawReport rep;
  merge_prefixed(rep, check_category(sh), "shape:");
  if (!rep.pass()) return rep;

  for (const auto& [obj, cat] : d.node) {
    if (!sh.has_object(obj))
      throw MalformedInput("diagram names an unknown shape object " + std::to_string(obj));
    if (!cat) throw MalformedInput("diagram has a null category at shape object " +
                                   std::to_string(obj));
  }
  for (const auto& [mid, fun] : d.edge) {
    (void)fun;
    if (!sh.has_morphism(mid))
      throw MalformedInput("diagram names an unknown shape morphism " + std::to_string(mid));
  }
  for (const auto& [pr, cell] : d.comparison) {
    (void)cell;
    if (!sh.has_morphism(pr.first) || !sh.has_morphism(pr.second))
      throw MalformedInput("comparison cell names an unknown shape morphism");
    if (is_identity_morphism(sh, pr.first) || is_identity_morphism(sh, pr.second))
      throw MalformedInput("comparison cell keyed by an identity shape morphism");
    if (!sh.composable(pr.first, pr.second))
      throw MalformedInput("comparison cell keyed by a non-composable pair");
  }

  rep.note_law("nodes-total");
  for (int obj : sh.objects) {
    ++rep.instances;
    if (!d.node.count(obj))
      rep.fail("nodes-total", {obj}, "no category at shape object " + std::to_string(obj));
  }
  rep.note_law("edges-total");
  for (const Morphism& m : sh.morphisms) {
    ++rep.instances;
    if (!d.edge.count(m.id))
      rep.fail("edges-total", {m.id}, "no functor at shape morphism " + std::to_string(m.id));
  }
  if (!rep.pass()) return rep;

  rep.note_law("edge-endpoints");
  for (const Morphism& m : sh.morphisms) {
    const FinFunctor& e = d.edge.at(m.id);
    ++rep.instances;
    if (e.source != d.node.at(m.src) || e.target != d.node.at(m.tgt)) {
      rep.fail("edge-endpoints", {m.id},
               "functor at shape morphism " + std::to_string(m.id) +
                   " does not run between the assigned categories");
      return rep;
    }
  }
  for (const Morphism& m : sh.morphisms)
    merge_prefixed(rep, check_functor(d.edge.at(m.id)), "edge:", m.id);
  if (!rep.pass()) return rep;

  rep.note_law("edge-identity");
  for (int obj : sh.objects) {
    ++rep.instances;
    if (!same_functor(d.edge.at(sh.id_of(obj)), identity_functor(d.node.at(obj))))
      rep.fail("edge-identity", {obj},
               "identity shape morphism at object " + std::to_string(obj) +
                   " does not carry the identity functor");
  }
  if (!rep.pass()) return rep;

  std::vector<int> edges = nonidentity_morphisms(sh);
  rep.note_law("comparison-present");
  for (int f : edges)
    for (int g : edges) {
      if (!sh.composable(g, f)) continue;
      ++rep.instances;
      if (!d.comparison.count({g, f}))
        rep.fail("comparison-present", {g, f},
                 "no comparison cell for shape morphism " + std::to_string(g) +
                     " after " + std::to_string(f));
    }
  if (!rep.pass()) return rep;

  rep.note_law("comparison-endpoints");
  rep.note_law("comparison-invertible");
  for (const auto& [pr, cell] : d.comparison) {
    int g = pr.first, f = pr.second;
    int gf = sh.compose(g, f);
    ++rep.instances;
    if (!same_functor(cell.from, compose_functors(d.edge.at(g), d.edge.at(f))) ||
        !same_functor(cell.to, d.edge.at(gf))) {
      rep.fail("comparison-endpoints", {g, f},
               "comparison cell for (" + std::to_string(g) + ", " + std::to_string(f) +
                   ") does not run from the composite functor to the composite edge");
      return rep;
    }
    ++rep.instances;
    if (!is_invertible_transform(cell))
      rep.fail("comparison-invertible", {g, f},
               "comparison cell for (" + std::to_string(g) + ", " + std::to_string(f) +
                   ") has a non-invertible component");
    merge_prefixed(rep, check_natural(cell), "comparison:", g);
  }
  if (!rep.pass()) return rep;

  rep.note_law("comparison-cocycle");
  for (int f : edges)
    for (int g : edges) {
      if (!sh.composable(g, f)) continue;
      int gf = sh.compose(g, f);
      for (int h : edges) {
        if (!sh.composable(h, g)) continue;
        int hg = sh.compose(h, g);
        NatTransform route1 =
            vcompose(comparison_at(d, h, gf), whisker_left(d.edge.at(h), d.comparison.at({g, f})));
        NatTransform route2 =
            vcompose(comparison_at(d, hg, f), whisker_right(d.comparison.at({h, g}), d.edge.at(f)));
        const FinCategory& start = *node_at(d, sh.morphism(f).src);
        for (int x : start.objects) {
          ++rep.instances;
          if (route1.at(x) != route2.at(x)) {
            rep.fail("comparison-cocycle", {h, g, f, x},
                     "the two comparison routes for the triple differ at object " +
                         std::to_string(x));
            break;
          }
        }
      }
    }
  return rep;
}

namespace {

/// Witness of an identity edge at an object: the identity morphism.
int witness_or_identity(const CatDiagram& d, const FinCategory& sh,
                        const std::map<int, int>& witness, int edge_id, int obj_at_src) {
  if (is_identity_morphism(sh, edge_id)) {
    int j = sh.morphism(edge_id).src;
    return node_at(d, j)->id_of(obj_at_src);
  }
  return witness.at(edge_id);
}

/// Checks the witness cocycle for one object tuple.
bool object_cocycle_holds(const CatDiagram& d, const std::vector<int>& edges,
                          const std::map<int, int>& comp, const std::map<int, int>& wit) {
  const FinCategory& sh = *d.shape;
  for (int e1 : edges) {
    int j = sh.morphism(e1).src;
    for (int e2 : edges) {
      if (!sh.composable(e2, e1)) continue;
      int e3 = sh.compose(e2, e1);
      int l = sh.morphism(e2).tgt;
      const FinCategory& target = *node_at(d, l);
      int lhs = target.compose(wit.at(e2),
                               edge_at(d, e2).on_morphism(wit.at(e1)));
      int w3 = witness_or_identity(d, sh, wit, e3, comp.at(j));
      int rhs = target.compose(w3, comparison_at(d, e2, e1).at(comp.at(j)));
      if (lhs != rhs) return false;
    }
  }
  return true;
}

}  // namespace

int PseudoLimit::find_object(const std::map<int, int>& component,
                             const std::map<int, int>& witness) const {
  for (std::size_t i = 0; i < object_component.size(); ++i)
    if (object_component[i] == component && object_witness[i] == witness)
      return static_cast<int>(i);
  return -1;
}

int PseudoLimit::find_morphism(int src, int tgt, const std::map<int, int>& component) const {
  for (std::size_t i = 0; i < morphism_component.size(); ++i) {
    const Morphism& m = category->morphism(static_cast<int>(i));
    if (m.src == src && m.tgt == tgt && morphism_component[i] == component)
      return static_cast<int>(i);
  }
  return -1;
}

PseudoLimit pseudo_limit(const CatDiagram& d, const PseudoLimitCaps& caps) {
  LawReport diag = check_cat_diagram(d);
  if (!diag.pass())
    throw MalformedInput("diagram fails validation — " + first_failure(diag));
  const FinCategory& sh = *d.shape;
  if (static_cast<int>(sh.objects.size()) > caps.max_nodes)
    throw ShapeCapExceeded("shape has " + std::to_string(sh.objects.size()) +
                           " objects, more than the cap of " + std::to_string(caps.max_nodes));
  std::vector<int> edges = nonidentity_morphisms(sh);
  if (static_cast<int>(edges.size()) > caps.max_edges)
    throw ShapeCapExceeded("shape has " + std::to_string(edges.size()) +
                           " non-identity morphisms, more than the cap of " +
                           std::to_string(caps.max_edges));

  PseudoLimit lim;
  lim.diagram = d;

  // --- objects: node-object tuples with invertible edge witnesses ---
  const std::vector<int>& nodes = sh.objects;
  std::vector<std::vector<int>> node_options;
  for (int j : nodes) node_options.push_back(node_at(d, j)->objects);
  for_each_choice(node_options, [&](const std::vector<int>& xs) {
    std::map<int, int> comp;
    for (std::size_t i = 0; i < nodes.size(); ++i) comp[nodes[i]] = xs[i];
    std::vector<std::vector<int>> wit_options;
    for (int e : edges) {
      const Morphism& em = sh.morphism(e);
      const FinCategory& target = *node_at(d, em.tgt);
      int image = edge_at(d, e).on_object(comp.at(em.src));
      std::vector<int> isos;
      for (int m : target.hom(image, comp.at(em.tgt)))
        if (is_iso(target, m)) isos.push_back(m);
      wit_options.push_back(std::move(isos));
    }
    for_each_choice(wit_options, [&](const std::vector<int>& ws) {
      std::map<int, int> wit;
      for (std::size_t i = 0; i < edges.size(); ++i) wit[edges[i]] = ws[i];
      if (!object_cocycle_holds(d, edges, comp, wit)) return true;
      if (static_cast<int>(lim.object_component.size()) >= caps.max_objects)
        throw SizeCapExceeded("pseudo-limit exceeds the object cap of " +
                              std::to_string(caps.max_objects));
      lim.object_component.push_back(comp);
      lim.object_witness.push_back(wit);
      return true;
    });
    return true;
  });

  // --- morphisms: component tuples commuting with the witnesses ---
  FinCategory cat;
  const int nobj = static_cast<int>(lim.object_component.size());
  for (int i = 0; i < nobj; ++i) cat.objects.push_back(i);
  std::map<std::tuple<int, int, std::vector<int>>, int> morphism_index;
  for (int a = 0; a < nobj; ++a) {
    for (int b = 0; b < nobj; ++b) {
      std::vector<std::vector<int>> options;
      for (int j : nodes)
        options.push_back(node_at(d, j)->hom(lim.object_component[static_cast<std::size_t>(a)].at(j),
                                             lim.object_component[static_cast<std::size_t>(b)].at(j)));
      for_each_choice(options, [&](const std::vector<int>& ms) {
        std::map<int, int> comp;
        for (std::size_t i = 0; i < nodes.size(); ++i) comp[nodes[i]] = ms[i];
        // Every edge square must commute against the witnesses.
        for (int e : edges) {
          const Morphism& em = sh.morphism(e);
          const FinCategory& target = *node_at(d, em.tgt);
          int lhs = target.compose(lim.object_witness[static_cast<std::size_t>(b)].at(e),
                                   edge_at(d, e).on_morphism(comp.at(em.src)));
          int rhs = target.compose(comp.at(em.tgt),
                                   lim.object_witness[static_cast<std::size_t>(a)].at(e));
          if (lhs != rhs) return true;
        }
        if (static_cast<long long>(lim.morphism_component.size()) >= caps.max_morphisms)
          throw SizeCapExceeded("pseudo-limit exceeds the morphism cap of " +
                                std::to_string(caps.max_morphisms));
        int id = static_cast<int>(lim.morphism_component.size());
        lim.morphism_component.push_back(comp);
        cat.morphisms.push_back(Morphism{id, a, b});
        std::vector<int> key_comp;
        for (int j : nodes) key_comp.push_back(comp.at(j));
        morphism_index.emplace(std::make_tuple(a, b, std::move(key_comp)), id);
        return true;
      });
    }
  }

  // Identities.
  for (int a = 0; a < nobj; ++a) {
    std::vector<int> key_comp;
    for (int j : nodes)
      key_comp.push_back(node_at(d, j)->id_of(lim.object_component[static_cast<std::size_t>(a)].at(j)));
    auto it = morphism_index.find(std::make_tuple(a, a, key_comp));
    if (it == morphism_index.end())
      throw MalformedInput("pseudo-limit identity tuple was not enumerated");
    cat.identity[a] = it->second;
  }

  // Composition: componentwise, closed by the edge-square condition.
  for (const Morphism& p : cat.morphisms) {
    for (const Morphism& q : cat.morphisms) {
      if (q.src != p.tgt) continue;
      std::vector<int> key_comp;
      for (int j : nodes)
        key_comp.push_back(node_at(d, j)->compose(
            lim.morphism_component[static_cast<std::size_t>(q.id)].at(j),
            lim.morphism_component[static_cast<std::size_t>(p.id)].at(j)));
      auto it = morphism_index.find(std::make_tuple(p.src, q.tgt, key_comp));
      if (it == morphism_index.end())
        throw MalformedInput("pseudo-limit composition fell outside the enumeration");
      cat.compose_table[FinCategory::key(q.id, p.id)] = it->second;
    }
  }
  cat.rebuild_index();
  lim.category = std::make_shared<FinCategory>(std::move(cat));

  // --- projections and edge cells ---
  for (int j : nodes) {
    FinFunctor pj;
    pj.source = lim.category;
    pj.target = node_at(d, j);
    for (int a = 0; a < nobj; ++a) pj.omap[a] = lim.object_component[static_cast<std::size_t>(a)].at(j);
    for (std::size_t i = 0; i < lim.morphism_component.size(); ++i)
      pj.mmap[static_cast<int>(i)] = lim.morphism_component[i].at(j);
    lim.projection.emplace(j, std::move(pj));
  }
  for (int e : edges) {
    const Morphism& em = sh.morphism(e);
    NatTransform cell;
    cell.from = compose_functors(edge_at(d, e), lim.projection.at(em.src));
    cell.to = lim.projection.at(em.tgt);
    for (int a = 0; a < nobj; ++a)
      cell.component[a] = lim.object_witness[static_cast<std::size_t>(a)].at(e);
    lim.edge_cell.emplace(e, std::move(cell));
  }
  return lim;
}

PseudoCone cone_of_limit(const PseudoLimit& l) {
  PseudoCone c;
  c.apex = l.category;
  c.leg = l.projection;
  c.cell = l.edge_cell;
  return c;
}

LawReport check_pseudo_cone(const CatDiagram& d, const PseudoCone& c) {
  if (!d.shape) throw MalformedInput("diagram has no shape category");
  if (!c.apex) throw MalformedInput("cone has no apex category");
  const FinCategory& sh = *d.shape;
  for (const auto& [obj, fun] : c.leg) {
    (void)fun;
    if (!sh.has_object(obj))
      throw MalformedInput("cone leg names an unknown shape object " + std::to_string(obj));
  }
  for (const auto& [e, cell] : c.cell) {
    (void)cell;
    if (!sh.has_morphism(e) || is_identity_morphism(sh, e))
      throw MalformedInput("cone cell is not keyed by a non-identity shape morphism");
  }

  LawReport rep;
  rep.note_law("legs-total");
  for (int obj : sh.objects) {
    ++rep.instances;
    if (!c.leg.count(obj))
      rep.fail("legs-total", {obj}, "no leg at shape object " + std::to_string(obj));
  }
  std::vector<int> edges = nonidentity_morphisms(sh);
  rep.note_law("cells-total");
  for (int e : edges) {
    ++rep.instances;
    if (!c.cell.count(e))
      rep.fail("cells-total", {e}, "no cone cell at shape morphism " + std::to_string(e));
  }
  if (!rep.pass()) return rep;

  rep.note_law("leg-endpoints");
  for (int obj : sh.objects) {
    const FinFunctor& leg = c.leg.at(obj);
    ++rep.instances;
    if (leg.source != c.apex || leg.target != node_at(d, obj)) {
      rep.fail("leg-endpoints", {obj},
               "leg at shape object " + std::to_string(obj) +
                   " does not run from the apex to the node category");
      return rep;
    }
  }
  for (int obj : sh.objects)
    merge_prefixed(rep, check_functor(c.leg.at(obj)), "leg:", obj);
  if (!rep.pass()) return rep;

  rep.note_law("cell-endpoints");
  rep.note_law("cell-invertible");
  for (int e : edges) {
    const Morphism& em = sh.morphism(e);
    const NatTransform& cell = c.cell.at(e);
    ++rep.instances;
    if (!same_functor(cell.from, compose_functors(edge_at(d, e), c.leg.at(em.src))) ||
        !same_functor(cell.to, c.leg.at(em.tgt))) {
      rep.fail("cell-endpoints", {e},
               "cone cell at shape morphism " + std::to_string(e) +
                   " does not compare the transported leg with the target leg");
      return rep;
    }
    ++rep.instances;
    if (!is_invertible_transform(cell))
      rep.fail("cell-invertible", {e},
               "cone cell at shape morphism " + std::to_string(e) +
                   " has a non-invertible component");
    merge_prefixed(rep, check_natural(cell), "cell:", e);
  }
  if (!rep.pass()) return rep;

  rep.note_law("cone-cocycle");
  for (int e1 : edges) {
    int j = sh.morphism(e1).src;
    for (int e2 : edges) {
      if (!sh.composable(e2, e1)) continue;
      int e3 = sh.compose(e2, e1);
      int l = sh.morphism(e2).tgt;
      const FinCategory& target = *node_at(d, l);
      for (int m : c.apex->objects) {
        ++rep.instances;
        int lhs = target.compose(c.cell.at(e2).at(m),
                                 edge_at(d, e2).on_morphism(c.cell.at(e1).at(m)));
        int b3;
        if (is_identity_morphism(sh, e3))
          b3 = target.id_of(c.leg.at(j).on_object(m));
        else
          b3 = c.cell.at(e3).at(m);
        int rhs = target.compose(b3, comparison_at(d, e2, e1).at(c.leg.at(j).on_object(m)));
        if (lhs != rhs)
          rep.fail("cone-cocycle", {e2, e1, m},
                   "cone cells break the cocycle at apex object " + std::to_string(m));
      }
    }
  }
  return rep;
}

FinFunctor canonical_mediator(const PseudoLimit& l, const PseudoCone& probe) {
  const FinCategory& sh = *l.diagram.shape;
  std::vector<int> edges = nonidentity_morphisms(sh);
  FinFunctor u;
  u.source = probe.apex;
  u.target = l.category;
  for (int m : probe.apex->objects) {
    std::map<int, int> comp, wit;
    for (int j : sh.objects) comp[j] = probe.leg.at(j).on_object(m);
    for (int e : edges) wit[e] = probe.cell.at(e).at(m);
    int idx = l.find_object(comp, wit);
    if (idx < 0)
      throw NotFound("no pseudo-limit object matches the cone at apex object " +
                     std::to_string(m));
    u.omap[m] = idx;
  }
  for (const Morphism& mor : probe.apex->morphisms) {
    std::map<int, int> comp;
    for (int j : sh.objects) comp[j] = probe.leg.at(j).on_morphism(mor.id);
    int idx = l.find_morphism(u.omap.at(mor.src), u.omap.at(mor.tgt), comp);
    if (idx < 0)
      throw NotFound("no pseudo-limit morphism matches the cone at apex morphism " +
                     std::to_string(mor.id));
    u.mmap[mor.id] = idx;
  }
  return u;
}

LawReport verify_pseudo_universal(const PseudoLimit& l, const PseudoCone& probe,
                                  const MediatorSearchCaps& caps) {
  LawReport cone_rep = check_pseudo_cone(l.diagram, probe);
  if (!cone_rep.pass())
    throw MalformedInput("probe cone fails validation — " + first_failure(cone_rep));
  const CatDiagram& d = l.diagram;
  const FinCategory& sh = *d.shape;
  const FinCategory& apex = *probe.apex;
  const FinCategory& limcat = *l.category;
  std::vector<int> edges = nonidentity_morphisms(sh);

  LawReport rep;

  // --- the canonical mediator: components straight from the cone ---
  rep.note_law("mediator-exists");
  FinFunctor u;
  try {
    u = canonical_mediator(l, probe);
    ++rep.instances;
  } catch (const NotFound& e) {
    ++rep.instances;
    rep.fail("mediator-exists", {}, e.what());
    return rep;
  }
  merge_prefixed(rep, check_functor(u), "mediator:");
  rep.note_law("mediator-projection");
  for (int j : sh.objects) {
    ++rep.instances;
    if (!same_functor(compose_functors(l.projection.at(j), u), probe.leg.at(j)))
      rep.fail("mediator-projection", {j},
               "projection after the mediator differs from the cone leg at node " +
                   std::to_string(j));
  }
  rep.note_law("mediator-edge-cells");
  for (int e : edges)
    for (int m : apex.objects) {
      ++rep.instances;
      if (l.edge_cell.at(e).at(u.on_object(m)) != probe.cell.at(e).at(m))
        rep.fail("mediator-edge-cells", {e, m},
                 "edge cell at the mediated object differs from the cone cell");
    }
  if (!rep.pass()) return rep;

  // --- enumerate every mediator: a family of invertible comparison
  //     components per (apex object, node) determines the rest ---
  struct Slot {
    int m;
    int j;
  };
  std::vector<Slot> slots;
  std::vector<std::vector<int>> options;       // iso ids into leg_j(m)
  std::vector<std::vector<int>> option_invs;   // matching inverses
  long long bound = 1;
  for (int m : apex.objects)
    for (int j : sh.objects) {
      const FinCategory& nodecat = *node_at(d, j);
      int fm = probe.leg.at(j).on_object(m);
      std::vector<int> isos, invs;
      for (const Morphism& cand : nodecat.morphisms) {
        if (cand.tgt != fm) continue;
        auto inv = find_inverse(nodecat, cand.id);
        if (!inv) continue;
        isos.push_back(cand.id);
        invs.push_back(*inv);
      }
      bound *= static_cast<long long>(isos.size());
      if (bound > caps.max_candidates)
        throw SearchCapExceeded("mediator search space exceeds the cap of " +
                                std::to_string(caps.max_candidates));
      slots.push_back(Slot{m, j});
      options.push_back(std::move(isos));
      option_invs.push_back(std::move(invs));
    }

  rep.note_law("mediator-candidate");
  rep.note_law("mediator-comparison-exists");
  rep.note_law("mediator-comparison-invertible");
  rep.note_law("mediator-comparison-natural");
  rep.note_law("mediator-comparison-triangle");
  long long mediators = 0;
  long long canonical_seen = 0;

  // Odometer over the iso choices (single empty tuple when there are none).
  std::vector<std::size_t> pick(options.size(), 0);
  while (true) {
    // gamma[m][j] = chosen iso, ginv[m][j] = its inverse.
    std::map<std::pair<int, int>, int> gamma, ginv;
    bool all_identity = true;
    for (std::size_t i = 0; i < slots.size(); ++i) {
      gamma[{slots[i].m, slots[i].j}] = options[i][pick[i]];
      ginv[{slots[i].m, slots[i].j}] = option_invs[i][pick[i]];
      const FinCategory& nodecat = *node_at(d, slots[i].j);
      if (options[i][pick[i]] !=
          nodecat.id_of(probe.leg.at(slots[i].j).on_object(slots[i].m)))
        all_identity = false;
    }

    // Build the mediator this family determines.
    FinFunctor uprime;
    uprime.source = probe.apex;
    uprime.target = l.category;
    bool viable = true;
    for (int m : apex.objects) {
      std::map<int, int> comp, wit;
      for (int j : sh.objects) {
        const FinCategory& nodecat = *node_at(d, j);
        comp[j] = nodecat.morphism(gamma.at({m, j})).src;
      }
      for (int e : edges) {
        const Morphism& em = sh.morphism(e);
        const FinCategory& target = *node_at(d, em.tgt);
        int t1 = edge_at(d, e).on_morphism(gamma.at({m, em.src}));
        int t2 = target.compose(probe.cell.at(e).at(m), t1);
        wit[e] = target.compose(ginv.at({m, em.tgt}), t2);
      }
      int idx = l.find_object(comp, wit);
      ++rep.instances;
      if (idx < 0) {
        rep.fail("mediator-candidate", {mediators, m},
                 "transported cone data matches no pseudo-limit object at apex object " +
                     std::to_string(m));
        viable = false;
        break;
      }
      uprime.omap[m] = idx;
    }
    if (viable) {
      for (const Morphism& mor : apex.morphisms) {
        std::map<int, int> comp;
        for (int j : sh.objects) {
          const FinCategory& nodecat = *node_at(d, j);
          int mid = nodecat.compose(probe.leg.at(j).on_morphism(mor.id), gamma.at({mor.src, j}));
          comp[j] = nodecat.compose(ginv.at({mor.tgt, j}), mid);
        }
        int idx = l.find_morphism(uprime.omap.at(mor.src), uprime.omap.at(mor.tgt), comp);
        ++rep.instances;
        if (idx < 0) {
          rep.fail("mediator-candidate", {mediators, mor.id},
                   "transported cone data matches no pseudo-limit morphism at apex morphism " +
                       std::to_string(mor.id));
          viable = false;
          break;
        }
        uprime.mmap[mor.id] = idx;
      }
    }
    if (viable) {
      merge_prefixed(rep, check_functor(uprime), "mediator-candidate:", mediators);
      ++mediators;
      if (all_identity) ++canonical_seen;

      // theta: U => U', node components the inverses of the chosen isos.
      NatTransform theta;
      theta.from = u;
      theta.to = uprime;
      bool theta_ok = true;
      for (int m : apex.objects) {
        std::map<int, int> comp;
        for (int j : sh.objects) comp[j] = ginv.at({m, j});
        int idx = l.find_morphism(u.omap.at(m), uprime.omap.at(m), comp);
        ++rep.instances;
        if (idx < 0) {
          rep.fail("mediator-comparison-exists", {mediators - 1, m},
                   "no pseudo-limit morphism connects the canonical mediator to the "
                   "candidate at apex object " + std::to_string(m));
          theta_ok = false;
          break;
        }
        theta.component[m] = idx;
        // Triangle: the candidate's comparison after the theta projection is
        // the canonical (identity) comparison, componentwise.
        for (int j : sh.objects) {
          const FinCategory& nodecat = *node_at(d, j);
          ++rep.instances;
          int proj_theta = l.projection.at(j).on_morphism(idx);
          int tri = nodecat.compose(gamma.at({m, j}), proj_theta);
          if (tri != nodecat.id_of(probe.leg.at(j).on_object(m)))
            rep.fail("mediator-comparison-triangle", {mediators - 1, m, j},
                     "projection triangle does not close at apex object " +
                         std::to_string(m) + ", node " + std::to_string(j));
        }
      }
      if (theta_ok) {
        ++rep.instances;
        if (!is_invertible_transform(theta))
          rep.fail("mediator-comparison-invertible", {mediators - 1},
                   "connecting cell has a non-invertible component");
        for (const Morphism& mor : apex.morphisms) {
          ++rep.instances;
          if (limcat.compose(theta.at(mor.tgt), u.on_morphism(mor.id)) !=
              limcat.compose(uprime.on_morphism(mor.id), theta.at(mor.src)))
            rep.fail("mediator-comparison-natural", {mediators - 1, mor.id},
                     "connecting cell is not natural at apex morphism " +
                         std::to_string(mor.id));
        }
      }
    }

    // Advance the odometer.
    if (options.empty()) break;
    std::size_t i = 0;
    for (; i < pick.size(); ++i) {
      if (++pick[i] < options[i].size()) break;
      pick[i] = 0;
    }
    if (i == pick.size()) break;
  }

  rep.note_law("mediator-enumeration");
  ++rep.instances;
  if (mediators < 1 || canonical_seen != 1)
    rep.fail("mediator-enumeration", {mediators},
             "the enumeration did not rediscover the canonical mediator exactly once");
  return rep;
}

}  // namespace catq
