#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <functional>

#include "catq/adjunction.hpp"
#include "catq/fincat.hpp"

using namespace catq;

namespace {

/// Builds the functor between thin categories induced by a monotone object
/// map.  The morphism table is forced: each arrow goes to the unique arrow
/// between the image endpoints.
FinFunctor monotone(CatPtr src, CatPtr tgt, std::function<int(int)> on_obj) {
  FinFunctor f;
  f.source = src;
  f.target = tgt;
  for (int x : src->objects) f.omap[x] = on_obj(x);
  for (const Morphism& m : src->morphisms) {
    std::vector<int> hom = tgt->hom(on_obj(m.src), on_obj(m.tgt));
    REQUIRE(hom.size() == 1);
    f.mmap[m.id] = hom[0];
  }
  return f;
}

/// Identity-on-objects adjunction of a category with itself.
Adjunction identity_adjunction(CatPtr c) {
  Adjunction adj;
  adj.left = identity_functor(c);
  adj.right = identity_functor(c);
  adj.unit = identity_transform(adj.left);
  adj.counit = identity_transform(adj.left);
  return adj;
}

/// The one-object group {e, a | a.a = e} as a category.
CatPtr z2_category() {
  FinCategory c;
  c.objects = {0};
  c.morphisms = {{0, 0, 0}, {1, 0, 0}};
  c.identity[0] = 0;
  c.compose_table[FinCategory::key(0, 0)] = 0;
  c.compose_table[FinCategory::key(0, 1)] = 1;
  c.compose_table[FinCategory::key(1, 0)] = 1;
  c.compose_table[FinCategory::key(1, 1)] = 0;
  c.rebuild_index();
  return std::make_shared<FinCategory>(std::move(c));
}

/// Truncation Galois connection between the chains {0,1,2} and {0,1}:
/// F(x) = min(x,1) is left adjoint to G(0)=0, G(1)=2.
Adjunction truncation_adjunction() {
  auto three = std::make_shared<FinCategory>(make_chain_category(3));
  auto two = std::make_shared<FinCategory>(make_chain_category(2));
  Adjunction adj;
  adj.left = monotone(three, two, [](int x) { return std::min(x, 1); });
  adj.right = monotone(two, three, [](int y) { return y == 0 ? 0 : 2; });
  adj.unit.from = identity_functor(three);
  adj.unit.to = compose_functors(adj.right, adj.left);
  for (int x : three->objects) {
    const int gfx = adj.unit.to.on_object(x);
    adj.unit.component[x] = three->hom(x, gfx).at(0);
  }
  adj.counit.from = compose_functors(adj.left, adj.right);
  adj.counit.to = identity_functor(two);
  for (int y : two->objects) {
    const int fgy = adj.counit.from.on_object(y);
    adj.counit.component[y] = two->hom(fgy, y).at(0);
  }
  return adj;
}

/// Powerset lattice of an n-element set, objects = bitmasks.
CatPtr powerset_category(int n) {
  return std::make_shared<FinCategory>(make_poset_category(
      1 << n, [](int s, int t) { return (s & ~t) == 0; }));
}

}  // namespace

// ===========================================================================
// verify_adjunction
// ===========================================================================

TEST_CASE("identity adjunction verifies") {
  auto c = std::make_shared<FinCategory>(make_chain_category(3));
  LawReport rep = verify_adjunction(identity_adjunction(c));
  CHECK(rep.pass());
  CHECK(rep.instances > 0);
}

TEST_CASE("truncation Galois connection is an adjunction") {
  Adjunction adj = truncation_adjunction();
  LawReport rep = verify_adjunction(adj);
  INFO(rep.summary());
  CHECK(rep.pass());

  // Frozen transposes.  Morphism ids in chain(3): (0<=0)=0, (0<=1)=1,
  // (0<=2)=2, (1<=1)=3, (1<=2)=4, (2<=2)=5.  In chain(2): 0, 1, 2.
  // f : 1 <= G(1)=2 transposes to F(1)=1 <= 1.
  CHECK(transpose_forward(adj, 4, 1) == 2);
  // g : F(0)=0 <= 1 transposes back to 0 <= G(1)=2.
  CHECK(transpose_backward(adj, 1, 0) == 2);

  SUBCASE("transposes are mutually inverse over every hom pair") {
    const FinCategory& c = adj.C();
    const FinCategory& d = adj.D();
    int pairs = 0;
    for (int x : c.objects)
      for (int y : d.objects) {
        for (int f : c.hom(x, adj.right.on_object(y))) {
          const int g = transpose_forward(adj, f, y);
          CHECK(d.src(g) == adj.left.on_object(x));
          CHECK(d.tgt(g) == y);
          CHECK(transpose_backward(adj, g, x) == f);
          ++pairs;
        }
        for (int g : d.hom(adj.left.on_object(x), y)) {
          const int f = transpose_backward(adj, g, x);
          CHECK(transpose_forward(adj, f, y) == g);
        }
      }
    CHECK(pairs > 0);
  }
}

TEST_CASE("the reversed truncation pair is not an adjunction") {
  // Claiming G -| F forces a counit component G(F(1)) = 2 -> 1, which does
  // not exist in the chain; the nearest stand-in has wrong endpoints.
  Adjunction adj = truncation_adjunction();
  Adjunction rev;
  rev.left = adj.right;
  rev.right = adj.left;
  rev.unit.from = identity_functor(adj.left.target);
  rev.unit.to = compose_functors(rev.right, rev.left);
  rev.unit.component = {{0, 0}, {1, 2}};      // identities: GF is the identity on objects
  rev.counit.from = compose_functors(rev.left, rev.right);
  rev.counit.to = identity_functor(adj.left.source);
  rev.counit.component = {{0, 0}, {1, 3}, {2, 5}};  // best effort; 2 -> 1 is impossible
  LawReport rep = verify_adjunction(rev);
  CHECK_FALSE(rep.pass());
}

TEST_CASE("triangle identities can fail while everything is natural") {
  // On the group Z/2 as a one-object category, take F = G = Id with unit 'a'
  // and counit 'e'.  Both are natural (the group is abelian), but
  // counit . unit = a != id, so exactly the triangle laws fail.
  auto z2 = z2_category();
  Adjunction adj = identity_adjunction(z2);
  adj.unit.component[0] = 1;
  LawReport rep = verify_adjunction(adj);
  REQUIRE_FALSE(rep.pass());
  CHECK(rep.failed("triangle-left"));
  CHECK(rep.failed("triangle-right"));
  CHECK_FALSE(rep.failed("naturality"));  // unit and counit squares all commute

  // With unit and counit both 'a' the triangles compose to a.a = e and pass.
  adj.counit.component[0] = 1;
  CHECK(verify_adjunction(adj).pass());
}

TEST_CASE("mutated unit component is rejected") {
  Adjunction adj = truncation_adjunction();
  adj.unit.component[1] = 3;  // id_1 : 1 -> 1 instead of 1 -> GF(1) = 2
  CHECK_FALSE(verify_adjunction(adj).pass());
}

TEST_CASE("mismatched unit shape is rejected") {
  Adjunction adj = truncation_adjunction();
  adj.unit.to = identity_functor(adj.left.source);  // wrong codomain functor
  LawReport rep = verify_adjunction(adj);
  REQUIRE_FALSE(rep.pass());
  CHECK(rep.failed("unit-shape"));
}

// ===========================================================================
// find_right_adjoint / find_universal_arrows
// ===========================================================================

TEST_CASE("intersection with a fixed set has the classical right adjoint") {
  // In the powerset of U = {0,1,2}, F = (- intersect A) with A = {0,1} has
  // the right adjoint G(B) = complement(A) union B.
  auto pu = powerset_category(3);
  const int A = 0b011, U = 0b111;
  FinFunctor F = monotone(pu, pu, [&](int s) { return s & A; });
  REQUIRE(check_functor(F).pass());

  AdjointSearchCaps caps;
  caps.max_objects = 8;
  caps.max_morphisms = 64;
  Adjunction adj = find_right_adjoint(F, caps);
  CHECK(verify_adjunction(adj).pass());
  for (int b = 0; b <= U; ++b)
    CHECK(adj.right.on_object(b) == ((U & ~A) | b));

  // The found adjoint agrees with the hand-built one as a functor table.
  FinFunctor G = monotone(pu, pu, [&](int b) { return (U & ~A) | b; });
  CHECK(same_functor(adj.right, G));
}

TEST_CASE("no right adjoint exists for discrete-to-codiscrete collapse") {
  auto disc = std::make_shared<FinCategory>(make_discrete_category(2));
  auto codisc = std::make_shared<FinCategory>(make_codiscrete_category(2));
  FinFunctor F;
  F.source = disc;
  F.target = codisc;
  F.omap = {{0, 0}, {1, 1}};
  F.mmap = {{0, codisc->id_of(0)}, {1, codisc->id_of(1)}};
  REQUIRE(check_functor(F).pass());
  CHECK_THROWS_AS(find_right_adjoint(F), NotFound);
}

TEST_CASE("right adjoint of the terminal projection picks the top object") {
  auto three = std::make_shared<FinCategory>(make_chain_category(3));
  auto pt = std::make_shared<FinCategory>(make_terminal_category());
  FinFunctor F = monotone(three, pt, [](int) { return 0; });

  auto arrows = find_universal_arrows(F, 0);
  REQUIRE(arrows.size() == 1);          // the chain has a unique top element
  CHECK(arrows[0].first == 2);

  Adjunction adj = find_right_adjoint(F);
  CHECK(adj.right.on_object(0) == 2);
  CHECK(verify_adjunction(adj).pass());
}

TEST_CASE("two universal arrows give two adjoints, naturally isomorphic") {
  // Preorder: 0 below both 1 and 2, and 1 ~ 2 isomorphic.
  auto pre = std::make_shared<FinCategory>(make_preorder_category(
      3, [](int i, int j) { return i == j || (i >= 1 && j >= 1) || i == 0; }));
  auto pt = std::make_shared<FinCategory>(make_terminal_category());
  FinFunctor F = monotone(pre, pt, [](int) { return 0; });

  auto arrows = find_universal_arrows(F, 0);
  REQUIRE(arrows.size() == 2);
  CHECK(arrows[0].first == 1);
  CHECK(arrows[1].first == 2);

  Adjunction found = find_right_adjoint(F);  // settles on the smallest choice
  CHECK(found.right.on_object(0) == 1);
  REQUIRE(verify_adjunction(found).pass());

  // Hand-build the other adjoint and connect the two by a natural iso.
  Adjunction other;
  other.left = F;
  other.right = monotone(pt, pre, [](int) { return 2; });
  other.unit.from = identity_functor(pre);
  other.unit.to = compose_functors(other.right, other.left);
  for (int x : pre->objects) other.unit.component[x] = pre->hom(x, 2).at(0);
  other.counit.from = compose_functors(other.left, other.right);
  other.counit.to = identity_functor(pt);
  other.counit.component = {{0, 0}};
  REQUIRE(verify_adjunction(other).pass());

  auto iso = find_natural_iso(found.right, other.right);
  REQUIRE(iso.has_value());
  CHECK(is_invertible_transform(*iso));
}

TEST_CASE("adjoint search respects its size caps") {
  auto three = std::make_shared<FinCategory>(make_chain_category(3));
  auto pt = std::make_shared<FinCategory>(make_terminal_category());
  FinFunctor F = monotone(three, pt, [](int) { return 0; });
  AdjointSearchCaps caps;
  caps.max_objects = 2;
  CHECK_THROWS_AS(find_right_adjoint(F, caps), SizeCapExceeded);
}
