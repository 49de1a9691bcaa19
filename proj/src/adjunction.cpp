#include "catq/adjunction.hpp"

#include <algorithm>
#include <string>

namespace catq {

namespace {

std::vector<int> sorted_ids(const std::vector<int>& v) {
  std::vector<int> s = v;
  std::sort(s.begin(), s.end());
  return s;
}

std::vector<int> sorted_morphisms(const FinCategory& c) {
  std::vector<int> v;
  v.reserve(c.morphisms.size());
  for (const auto& m : c.morphisms) v.push_back(m.id);
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

int transpose_forward(const Adjunction& adj, int f, int y) {
  const FinCategory& C = adj.C();
  const FinCategory& D = adj.D();
  if (!D.has_object(y)) throw MalformedInput("transpose: unknown object " + std::to_string(y));
  const Morphism& fm = C.morphism(f);
  if (fm.tgt != adj.right.on_object(y))
    throw EndpointMismatch("transpose: morphism does not end at right(" + std::to_string(y) + ")");
  const int lf = adj.left.on_morphism(f);
  return D.compose(adj.counit.at(y), lf);
}

int transpose_backward(const Adjunction& adj, int g, int x) {
  const FinCategory& C = adj.C();
  const FinCategory& D = adj.D();
  if (!C.has_object(x)) throw MalformedInput("transpose: unknown object " + std::to_string(x));
  const Morphism& gm = D.morphism(g);
  if (gm.src != adj.left.on_object(x))
    throw EndpointMismatch("transpose: morphism does not start at left(" + std::to_string(x) + ")");
  const int y = gm.tgt;
  std::optional<int> found;
  for (int f : C.hom(x, adj.right.on_object(y))) {
    if (transpose_forward(adj, f, y) != g) continue;
    if (found)
      throw NotFound("transpose is not injective: two preimages " + std::to_string(*found) +
                     " and " + std::to_string(f) + " for morphism " + std::to_string(g));
    found = f;
  }
  if (!found)
    throw NotFound("transpose is not surjective: no preimage for morphism " + std::to_string(g));
  return *found;
}

LawReport verify_adjunction(const Adjunction& adj) {
  LawReport rep;
  rep.merge(check_functor(adj.left));
  rep.merge(check_functor(adj.right));
  if (!rep.pass()) return rep;

  if (adj.left.source != adj.right.target || adj.left.target != adj.right.source)
    throw MalformedInput("adjunction functors do not run between the same two categories");

  CatPtr Cp = adj.left.source;
  CatPtr Dp = adj.left.target;
  const FinCategory& C = *Cp;
  const FinCategory& D = *Dp;

  // Unit and counit must be shaped Id_C => right.left and left.right => Id_D.
  rep.note_law("unit-shape");
  if (!same_functor(adj.unit.from, identity_functor(Cp)) ||
      !same_functor(adj.unit.to, compose_functors(adj.right, adj.left)))
    rep.fail("unit-shape", {}, "unit is not a transformation Id => right.left");
  rep.note_law("counit-shape");
  if (!same_functor(adj.counit.from, compose_functors(adj.left, adj.right)) ||
      !same_functor(adj.counit.to, identity_functor(Dp)))
    rep.fail("counit-shape", {}, "counit is not a transformation left.right => Id");
  if (!rep.pass()) return rep;

  rep.merge(check_natural(adj.unit));
  rep.merge(check_natural(adj.counit));
  if (!rep.pass()) return rep;

  // Triangle identities.
  rep.note_law("triangle-left");
  for (int x : sorted_ids(C.objects)) {
    ++rep.instances;
    const int fx = adj.left.on_object(x);
    const int comp = D.compose(adj.counit.at(fx), adj.left.on_morphism(adj.unit.at(x)));
    if (comp != D.id_of(fx)) {
      rep.fail("triangle-left", {x, comp},
               "counit(left x) . left(unit x) is not the identity on left(x)");
      break;
    }
  }
  rep.note_law("triangle-right");
  for (int y : sorted_ids(D.objects)) {
    ++rep.instances;
    const int gy = adj.right.on_object(y);
    const int comp = C.compose(adj.right.on_morphism(adj.counit.at(y)), adj.unit.at(gy));
    if (comp != C.id_of(gy)) {
      rep.fail("triangle-right", {y, comp},
               "right(counit y) . unit(right y) is not the identity on right(y)");
      break;
    }
  }

  // The transpose is a bijection Hom(x, right y) -> Hom(left x, y).
  rep.note_law("transpose-bijection");
  for (int x : sorted_ids(C.objects)) {
    for (int y : sorted_ids(D.objects)) {
      const std::vector<int> curried = C.hom(x, adj.right.on_object(y));
      const std::vector<int> raw = D.hom(adj.left.on_object(x), y);
      ++rep.instances;
      if (curried.size() != raw.size()) {
        rep.fail("transpose-bijection", {x, y},
                 "hom-sets have different sizes: " + std::to_string(curried.size()) +
                     " vs " + std::to_string(raw.size()));
        continue;
      }
      std::vector<int> images;
      for (int f : curried) images.push_back(transpose_forward(adj, f, y));
      std::vector<int> sorted_images = images;
      std::sort(sorted_images.begin(), sorted_images.end());
      std::vector<int> expect = raw;
      if (sorted_images != expect) {
        rep.fail("transpose-bijection", {x, y},
                 "forward transpose is not a bijection onto Hom(left x, y)");
      }
    }
  }
  if (!rep.pass()) return rep;

  // Naturality of the transpose in the first variable: for h : x' -> x and
  // f : x -> right(y),   T(f . h) = T(f) . left(h).
  rep.note_law("transpose-natural-source");
  for (int y : sorted_ids(D.objects)) {
    const int ry = adj.right.on_object(y);
    for (int f : sorted_morphisms(C)) {
      if (C.tgt(f) != ry) continue;
      const int x = C.src(f);
      for (int h : C.into(x)) {
        ++rep.instances;
        const int fh = C.compose(f, h);
        const int lhs = transpose_forward(adj, fh, y);
        const int rhs = D.compose(transpose_forward(adj, f, y), adj.left.on_morphism(h));
        if (lhs != rhs) {
          rep.fail("transpose-natural-source", {y, f, h},
                   "transpose does not commute with precomposition");
        }
      }
    }
  }

  // Naturality in the second variable: for k : y -> y' and f : x -> right(y),
  //   T(right(k) . f) = k . T(f).
  rep.note_law("transpose-natural-target");
  for (int y : sorted_ids(D.objects)) {
    const int ry = adj.right.on_object(y);
    for (int f : sorted_morphisms(C)) {
      if (C.tgt(f) != ry) continue;
      for (int k : D.out_of(y)) {
        ++rep.instances;
        const int rkf = C.compose(adj.right.on_morphism(k), f);
        const int lhs = transpose_forward(adj, rkf, D.tgt(k));
        const int rhs = D.compose(k, transpose_forward(adj, f, y));
        if (lhs != rhs) {
          rep.fail("transpose-natural-target", {y, f, k},
                   "transpose does not commute with postcomposition");
        }
      }
    }
  }

  return rep;
}

std::vector<std::pair<int, int>> find_universal_arrows(const FinFunctor& f, int d) {
  const FinCategory& C = *f.source;
  const FinCategory& D = *f.target;
  std::vector<std::pair<int, int>> found;
  for (int c : C.objects) {
    for (int eps : D.hom(f.on_object(c), d)) {
      bool universal = true;
      for (int x : C.objects) {
        for (int g : D.hom(f.on_object(x), d)) {
          int count = 0;
          for (int h : C.hom(x, c))
            if (D.compose(eps, f.on_morphism(h)) == g) ++count;
          if (count != 1) { universal = false; break; }
        }
        if (!universal) break;
      }
      if (universal) found.emplace_back(c, eps);
    }
  }
  return found;
}

Adjunction find_right_adjoint(const FinFunctor& f, const AdjointSearchCaps& caps) {
  const FinCategory& C = *f.source;
  const FinCategory& D = *f.target;
  if (static_cast<int>(C.objects.size()) > caps.max_objects ||
      static_cast<int>(D.objects.size()) > caps.max_objects)
    throw SizeCapExceeded("right-adjoint search: too many objects");
  if (static_cast<int>(C.morphisms.size()) > caps.max_morphisms ||
      static_cast<int>(D.morphisms.size()) > caps.max_morphisms)
    throw SizeCapExceeded("right-adjoint search: too many morphisms");

  // Universal arrow (right-adjoint value, counit component) per object of D.
  std::unordered_map<int, int> gobj, eps;
  for (int d : D.objects) {
    auto arrows = find_universal_arrows(f, d);
    if (arrows.empty())
      throw NotFound("no universal arrow at object " + std::to_string(d));
    gobj[d] = arrows.front().first;
    eps[d] = arrows.front().second;
  }

  FinFunctor right;
  right.source = f.target;
  right.target = f.source;
  right.omap = gobj;
  // Action on morphisms: k : d -> d' is sent to the unique h with
  // eps(d') . F(h) = k . eps(d).
  for (const Morphism& k : D.morphisms) {
    const int gd = gobj.at(k.src), gd2 = gobj.at(k.tgt);
    const int want = D.compose(k.id, eps.at(k.src));
    std::optional<int> found;
    for (int h : C.hom(gd, gd2)) {
      if (D.compose(eps.at(k.tgt), f.on_morphism(h)) == want) {
        found = h;
        break;  // universality guarantees uniqueness
      }
    }
    if (!found)
      throw NotFound("no factorization defining the adjoint on morphism " +
                     std::to_string(k.id));
    right.mmap[k.id] = *found;
  }

  Adjunction adj;
  adj.left = f;
  adj.right = right;

  adj.counit.from = compose_functors(f, right);
  adj.counit.to = identity_functor(f.target);
  for (const auto& [d, e] : eps) adj.counit.component[d] = e;

  // Unit component at x: the unique h : x -> right(left x) with
  // eps(left x) . F(h) = id_{left x}.
  adj.unit.from = identity_functor(f.source);
  adj.unit.to = compose_functors(right, f);
  for (int x : C.objects) {
    const int fx = f.on_object(x);
    std::optional<int> found;
    for (int h : C.hom(x, gobj.at(fx))) {
      if (D.compose(eps.at(fx), f.on_morphism(h)) == D.id_of(fx)) {
        found = h;
        break;
      }
    }
    if (!found)
      throw NotFound("no unit component at object " + std::to_string(x));
    adj.unit.component[x] = *found;
  }
  return adj;
}

// ---------------------------------------------------------------------------
// Lifted naturality
// ---------------------------------------------------------------------------

namespace {

/// Checks that an explicitly given family of components (object of `src_cat`
/// -> morphism of functor target) is natural for the two composite functors.
void check_family_natural(const FinFunctor& from, const FinFunctor& to,
                          const std::unordered_map<int, int>& comp,
                          const std::string& law, LawReport& rep) {
  NatTransform t;
  t.from = from;
  t.to = to;
  t.component = comp;
  LawReport sub = check_natural(t);
  rep.instances += sub.instances;
  rep.note_law(law);
  for (const auto& w : sub.failures)
    rep.fail(law, w.ids, w.detail);
}

}  // namespace

LawReport check_lifted_naturality(const std::vector<LiftedAdjunctionSquare>& family) {
  LawReport rep;
  rep.note_law("cells-natural");
  rep.note_law("cells-invertible");
  rep.note_law("unit-square");
  rep.note_law("counit-square");
  rep.note_law("unit-square-natural");

  for (const auto& sq : family) {
    if (!sq.left_cell)
      throw MissingComparisonCell("entry '" + sq.label + "' lacks the left comparison cell");
    if (!sq.right_cell)
      throw MissingComparisonCell("entry '" + sq.label + "' lacks the right comparison cell");

    const Adjunction& S = sq.over_source;
    const Adjunction& T = sq.over_target;
    const FinFunctor& rC = sq.base_reindex;  // C_t -> C_s
    const FinFunctor& rD = sq.ext_reindex;   // D_t -> D_s
    if (rC.source != T.left.source || rC.target != S.left.source ||
        rD.source != T.left.target || rD.target != S.left.target)
      throw MalformedInput("entry '" + sq.label +
                           "': reindexing functors do not run between the fibers");

    // Comparison cells: natural and componentwise invertible.
    const NatTransform& lam = *sq.left_cell;   // L_s.rC => rD.L_t
    const NatTransform& mu = *sq.right_cell;   // rC.R_t => R_s.rD
    if (!same_functor(lam.from, compose_functors(S.left, rC)) ||
        !same_functor(lam.to, compose_functors(rD, T.left)))
      throw MalformedInput("entry '" + sq.label + "': left cell has wrong endpoints");
    if (!same_functor(mu.from, compose_functors(rC, T.right)) ||
        !same_functor(mu.to, compose_functors(S.right, rD)))
      throw MalformedInput("entry '" + sq.label + "': right cell has wrong endpoints");

    {
      LawReport ln = check_natural(lam);
      LawReport rn = check_natural(mu);
      rep.instances += ln.instances + rn.instances;
      if (!ln.pass()) rep.fail("cells-natural", {}, "left cell of '" + sq.label + "' is not natural");
      if (!rn.pass()) rep.fail("cells-natural", {}, "right cell of '" + sq.label + "' is not natural");
    }
    ++rep.instances;
    if (!is_invertible_transform(lam))
      rep.fail("cells-invertible", {}, "left cell of '" + sq.label + "' has a non-invertible component");
    ++rep.instances;
    if (!is_invertible_transform(mu))
      rep.fail("cells-invertible", {}, "right cell of '" + sq.label + "' has a non-invertible component");
    if (!rep.pass()) continue;

    const FinCategory& Cs = *S.left.source;
    const FinCategory& Ds = *S.left.target;

    // Unit square at every object psi of C_t:
    //   R_s(lam(psi)) . unit_s(rC psi)  ==  mu(L_t psi) . rC(unit_t psi).
    std::unordered_map<int, int> unit_route;
    bool unit_ok = true;
    for (int psi : rC.source->objects) {
      ++rep.instances;
      const int lhs = Cs.compose(S.right.on_morphism(lam.at(psi)),
                                 S.unit.at(rC.on_object(psi)));
      const int rhs = Cs.compose(mu.at(T.left.on_object(psi)),
                                 rC.on_morphism(T.unit.at(psi)));
      unit_route[psi] = lhs;
      if (lhs != rhs) {
        rep.fail("unit-square", {psi, lhs, rhs},
                 "unit comparison square fails at object of entry '" + sq.label + "'");
        unit_ok = false;
      }
    }

    // Counit square at every object phi of D_t:
    //   counit_s(rD phi) . L_s(mu(phi))  ==  rD(counit_t phi) . lam(R_t phi).
    for (int phi : rD.source->objects) {
      ++rep.instances;
      const int lhs = Ds.compose(S.counit.at(rD.on_object(phi)),
                                 S.left.on_morphism(mu.at(phi)));
      const int rhs = Ds.compose(rD.on_morphism(T.counit.at(phi)),
                                 lam.at(T.right.on_object(phi)));
      if (lhs != rhs)
        rep.fail("counit-square", {phi, lhs, rhs},
                 "counit comparison square fails at object of entry '" + sq.label + "'");
    }

    // 2-naturality: the composite family psi |-> R_s(lam psi) . unit_s(rC psi)
    // is itself a natural transformation rC => R_s.rD.L_t.
    if (unit_ok) {
      FinFunctor from = rC;
      FinFunctor to = compose_functors(S.right, compose_functors(rD, T.left));
      check_family_natural(from, to, unit_route, "unit-square-natural", rep);
    }
  }
  return rep;
}

}  // namespace catq
