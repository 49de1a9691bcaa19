#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "catq/setmodel.hpp"
#include "catq/slice.hpp"

using namespace catq;

namespace {

// Fixed instance used throughout:  f : {d1,d2,d3} -> {r,s},  d1,d2 |-> r.
struct Fixture {
  Context gamma = Context::of({"r", "s"});
  Context delta = Context::of({"d1", "d2", "d3"});
  SetMap f{delta, gamma, {0, 0, 1}};
};

FamilyOver family_of(const Context& base, std::initializer_list<const char*> totals,
                     std::vector<int> display) {
  Context total = Context::of(totals);
  return make_family(base, total, SetMap(total, base, std::move(display)));
}

/// Independent cardinality oracle: |fiber of pi_f x over y| must equal the
/// product of |fiber of x over d| for d in f^{-1}(y).
long long pi_fiber_oracle(const SetMap& f, const FamilyOver& x, int y) {
  long long prod = 1;
  for (int d = 0; d < f.from.size(); ++d)
    if (f.apply_index(d) == y)
      prod *= static_cast<long long>(fiber_indices(x, d).size());
  return prod;
}

FamilyOver random_family(std::mt19937_64& rng, const Context& base, int max_total,
                         const char* prefix) {
  std::uniform_int_distribution<int> nd(0, max_total);
  const int n = nd(rng);
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.push_back(std::string(prefix) + std::to_string(i));
  Context total = Context::of_atoms(names);
  std::uniform_int_distribution<int> bd(0, base.size() - 1);
  std::vector<int> disp;
  for (int i = 0; i < n; ++i) disp.push_back(bd(rng));
  return make_family(base, total, SetMap(total, base, std::move(disp)));
}

}  // namespace

// ===========================================================================
// Pullback
// ===========================================================================

TEST_CASE("pullback along the identity is a tagged copy") {
  Fixture fx;
  FamilyOver y = family_of(fx.gamma, {"u1", "u2", "u3"}, {0, 1, 1});
  FamilyOver p = pullback_family(SetMap::identity(fx.gamma), y);
  REQUIRE(p.total.size() == y.total.size());
  CHECK(p.total.elements[0].label() == "(r,u1)");
  CHECK(p.total.elements[1].label() == "(s,u2)");
  CHECK(p.total.elements[2].label() == "(s,u3)");
  for (int i = 0; i < p.total.size(); ++i)
    CHECK(p.display.apply_index(i) == y.display.apply_index(
        y.total.index_of(p.total.elements[static_cast<std::size_t>(i)].second())));
}

TEST_CASE("pullback over a point is a product") {
  Context pt = Context::of({"*"});
  Context dl = Context::of({"a", "b", "c"});
  SetMap bang(dl, pt, {0, 0, 0});
  FamilyOver y = family_of(pt, {"t1", "t2"}, {0, 0});
  FamilyOver p = pullback_family(bang, y);
  CHECK(p.total.size() == 6);
  CHECK(p.total.elements[0].label() == "(a,t1)");
  CHECK(p.total.elements[5].label() == "(c,t2)");
}

TEST_CASE("pullback fibers match the original fibers pointwise") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    std::uniform_int_distribution<int> nd(1, 4);
    const int ng = nd(rng), ndl = nd(rng);
    std::vector<std::string> gs, ds;
    for (int i = 0; i < ng; ++i) gs.push_back("g" + std::to_string(i));
    for (int i = 0; i < ndl; ++i) ds.push_back("d" + std::to_string(i));
    Context gamma = Context::of_atoms(gs), delta = Context::of_atoms(ds);
    std::uniform_int_distribution<int> gd(0, ng - 1);
    std::vector<int> ftab;
    for (int i = 0; i < ndl; ++i) ftab.push_back(gd(rng));
    SetMap f(delta, gamma, ftab);
    FamilyOver y = random_family(rng, gamma, 4, "t");
    FamilyOver p = pullback_family(f, y);
    for (int d = 0; d < delta.size(); ++d) {
      auto pf = fiber_indices(p, d);
      auto yf = fiber_indices(y, f.apply_index(d));
      REQUIRE(pf.size() == yf.size());
      for (std::size_t i = 0; i < pf.size(); ++i) {
        CHECK(p.total.elements[static_cast<std::size_t>(pf[i])].second() ==
              y.total.elements[static_cast<std::size_t>(yf[i])]);
      }
    }
    // Second leg commutes: display_y . snd = f . display_p.
    SetMap snd = pullback_second_leg(f, y);
    CHECK(compose_maps(y.display, snd) == compose_maps(f, p.display));
  }
}

TEST_CASE("pullback rejects a family over the wrong context") {
  Fixture fx;
  FamilyOver x = family_of(fx.delta, {"t1"}, {0});
  CHECK_THROWS_AS(pullback_family(fx.f, x), ContextMismatch);
}

// ===========================================================================
// Sigma and Pi
// ===========================================================================

TEST_CASE("dependent sum composes the display") {
  Fixture fx;
  FamilyOver x = family_of(fx.delta, {"t1", "t2", "t3"}, {0, 0, 2});
  FamilyOver s = sigma_family(fx.f, x);
  CHECK(s.base == fx.gamma);
  CHECK(s.total == x.total);
  CHECK(s.display.apply_index(0) == 0);  // t1 over d1 over r
  CHECK(s.display.apply_index(2) == 1);  // t3 over d3 over s
  CHECK(sigma_family(SetMap::identity(fx.delta), x).display == x.display);
}

TEST_CASE("dependent product enumerates sections; empty fiber kills, empty preimage gives one") {
  Fixture fx;
  // Fibers over d1: {t1,t2}; d2: empty; d3: {t3}.
  FamilyOver x = family_of(fx.delta, {"t1", "t2", "t3"}, {0, 0, 2});
  FamilyOver p = pi_family(fx.f, x);
  // Over r: 2 * 0 = 0 sections; over s: exactly one: (d3 |-> t3).
  REQUIRE(p.total.size() == 1);
  CHECK(p.total.elements[0].label() == "(s,((d3,t3)))");
  CHECK(pi_fiber_oracle(fx.f, x, 0) == 0);
  CHECK(pi_fiber_oracle(fx.f, x, 1) == 1);

  // Making the d2 fiber nonempty: 2 * 1 = 2 sections over r.
  FamilyOver x2 = family_of(fx.delta, {"v1", "v2", "v3", "v4"}, {0, 0, 1, 2});
  FamilyOver p2 = pi_family(fx.f, x2);
  REQUIRE(p2.total.size() == 3);
  CHECK(p2.total.elements[0].label() == "(r,((d1,v1),(d2,v3)))");
  CHECK(p2.total.elements[1].label() == "(r,((d1,v2),(d2,v3)))");
  CHECK(p2.total.elements[2].label() == "(s,((d3,v4)))");

  // A base element with an empty preimage has exactly the empty section.
  Context wide = Context::of({"r", "s", "q"});
  SetMap g(fx.delta, wide, {0, 0, 1});
  FamilyOver p3 = pi_family(g, x2);
  auto qfiber = fiber_indices(p3, 2);
  REQUIRE(qfiber.size() == 1);
  CHECK(p3.total.elements[static_cast<std::size_t>(qfiber[0])].label() == "(q,())");
}

TEST_CASE("pi along the identity relabels the family") {
  Fixture fx;
  FamilyOver x = family_of(fx.delta, {"t1", "t2", "t3"}, {0, 0, 2});
  FamilyOver p = pi_family(SetMap::identity(fx.delta), x);
  REQUIRE(p.total.size() == x.total.size());
  for (int d = 0; d < fx.delta.size(); ++d)
    CHECK(fiber_indices(p, d).size() == fiber_indices(x, d).size());
}

TEST_CASE("pi fiber cardinalities equal the product oracle on random instances") {
  std::mt19937_64 rng(11);
  Fixture fx;
  for (int trial = 0; trial < 40; ++trial) {
    FamilyOver x = random_family(rng, fx.delta, 5, "t");
    FamilyOver p = pi_family(fx.f, x);
    for (int y = 0; y < fx.gamma.size(); ++y)
      CHECK(static_cast<long long>(fiber_indices(p, y).size()) == pi_fiber_oracle(fx.f, x, y));
  }
}

// ===========================================================================
// Hom-sets and adjunctions
// ===========================================================================

TEST_CASE("hom over a base counts dependent-function spaces") {
  Fixture fx;
  FamilyOver a = family_of(fx.delta, {"t1", "t2", "t3"}, {0, 0, 2});
  FamilyOver b = family_of(fx.delta, {"u1", "u2", "u3"}, {0, 0, 0});
  // t1, t2 each choose among {u1,u2} over d1... wait, fibers of b: d1 has
  // u1,u2,u3?  display = {0,0,0}: all of b sits over d1, so t3 over d3 has
  // no image: zero morphisms.
  CHECK(hom_over(a, b).empty());

  FamilyOver c = family_of(fx.delta, {"u1", "u2", "u3"}, {0, 0, 2});
  // t1,t2 |-> {u1,u2}, t3 |-> {u3}: four maps.
  auto homs = hom_over(a, c);
  CHECK(homs.size() == 4);
  for (const SetMap& h : homs) CHECK(is_over_base(a, c, h));
  CHECK_THROWS_AS(hom_over(a, c, 3), SizeCapExceeded);
}

TEST_CASE("fixed instance: both hom bijections have the sizes derived by hand") {
  Fixture fx;
  FamilyOver x = family_of(fx.delta, {"t1", "t2", "t3"}, {0, 0, 2});
  FamilyOver y = family_of(fx.gamma, {"u1", "u2"}, {0, 1});
  // Hom(sigma x, y): t1,t2 forced to u1, t3 forced to u2 -> exactly 1.
  CHECK(hom_over(sigma_family(fx.f, x), y).size() == 1);
  CHECK(hom_over(x, pullback_family(fx.f, y)).size() == 1);
  // Hom(f*y, x): (d2,u1) has empty fiber in x -> 0; matches Hom(y, pi x).
  CHECK(hom_over(pullback_family(fx.f, y), x).empty());
  CHECK(hom_over(y, pi_family(fx.f, x)).empty());

  FamilyOver x2 = family_of(fx.delta, {"v1", "v2", "v3", "v4"}, {0, 0, 1, 2});
  CHECK(hom_over(pullback_family(fx.f, y), x2).size() == 2);
  CHECK(hom_over(y, pi_family(fx.f, x2)).size() == 2);

  LawReport rep = check_slice_adjunctions(fx.f, x, y);
  INFO(rep.summary());
  CHECK(rep.pass());
  LawReport rep2 = check_slice_adjunctions(fx.f, x2, y);
  INFO(rep2.summary());
  CHECK(rep2.pass());
}

TEST_CASE("transposes round-trip explicitly on the richer instance") {
  Fixture fx;
  FamilyOver x = family_of(fx.delta, {"v1", "v2", "v3", "v4"}, {0, 0, 1, 2});
  FamilyOver y = family_of(fx.gamma, {"u1", "u2"}, {0, 1});
  for (const SetMap& g : hom_over(sigma_family(fx.f, x), y)) {
    SetMap k = sigma_transpose_forward(fx.f, x, y, g);
    CHECK(sigma_transpose_backward(fx.f, x, y, k) == g);
  }
  for (const SetMap& k : hom_over(x, pullback_family(fx.f, y))) {
    SetMap g = sigma_transpose_backward(fx.f, x, y, k);
    CHECK(sigma_transpose_forward(fx.f, x, y, g) == k);
  }
  for (const SetMap& u : hom_over(pullback_family(fx.f, y), x)) {
    SetMap v = pi_transpose_forward(fx.f, y, x, u);
    CHECK(pi_transpose_backward(fx.f, y, x, v) == u);
  }
  for (const SetMap& v : hom_over(y, pi_family(fx.f, x))) {
    SetMap u = pi_transpose_backward(fx.f, y, x, v);
    CHECK(pi_transpose_forward(fx.f, y, x, u) == v);
  }
}

TEST_CASE("slice adjunctions hold on random small instances") {
  std::mt19937_64 rng(23);
  Fixture fx;
  int nontrivial = 0;
  for (int trial = 0; trial < 25; ++trial) {
    FamilyOver x = random_family(rng, fx.delta, 3, "t");
    FamilyOver y = random_family(rng, fx.gamma, 3, "u");
    LawReport rep = check_slice_adjunctions(fx.f, x, y);
    INFO("trial ", trial, ": ", rep.summary());
    CHECK(rep.pass());
    if (rep.instances > 4) ++nontrivial;
  }
  CHECK(nontrivial > 10);
}

// ===========================================================================
// Subobjects, classifier, quantifiers along f
// ===========================================================================

TEST_CASE("characteristic maps round-trip and match the frozen instance") {
  Context prod = Context::of({"(1,a)", "(1,b)", "(2,a)", "(2,b)"});
  Subobject phi(prod, 0b0011);
  SetMap chi = characteristic(phi);
  CHECK(chi.apply_index(0) == 0);
  CHECK(chi.apply_index(1) == 0);
  CHECK(chi.apply_index(2) == 1);
  CHECK(chi.apply_index(3) == 1);
  CHECK(subobject_of(chi) == phi);

  for (std::uint64_t m = 0; m < 16; ++m) {
    Subobject s(prod, m);
    CHECK(subobject_of(characteristic(s)) == s);
  }
  Subobject none(prod, 0), all(prod, 0b1111);
  CHECK(characteristic(none).tab == std::vector<int>{1, 1, 1, 1});
  CHECK(characteristic(all).tab == std::vector<int>{0, 0, 0, 0});
}

TEST_CASE("quantifiers along a projection agree with the product-context model") {
  ExtendedContext e = extend_context(Context::of({"1", "2"}), Context::of({"a", "b"}));
  for (std::uint64_t m = 0; m < 16; ++m) {
    Predicate phi(e.product, m);
    CHECK(exists_f_subobject(e.projection, phi) == exists(e, phi));
    CHECK(forall_f_subobject(e.projection, phi) == forall(e, phi));
  }
}

TEST_CASE("image and universal image are adjoint to preimage along any map") {
  Fixture fx;
  for (std::uint64_t pm = 0; pm < 8; ++pm) {
    Subobject phi(fx.delta, pm);
    for (std::uint64_t sm = 0; sm < 4; ++sm) {
      Subobject s(fx.gamma, sm);
      const std::uint64_t pre = preimage_mask(fx.f, sm);
      const bool left1 = (exists_f_subobject(fx.f, phi).bits & ~sm) == 0;
      const bool right1 = (phi.bits & ~pre) == 0;
      CHECK(left1 == right1);
      const bool left2 = (pre & ~phi.bits) == 0;
      const bool right2 = (sm & ~forall_f_subobject(fx.f, phi).bits) == 0;
      CHECK(left2 == right2);
    }
  }
}

TEST_CASE("quantifiers along a non-surjective map treat missed elements correctly") {
  // f misses element q: exists never reaches it, forall always includes it.
  Context delta = Context::of({"d1"});
  Context gamma = Context::of({"p", "q"});
  SetMap f(delta, gamma, {0});
  Subobject none(delta, 0), all(delta, 1);
  CHECK(exists_f_subobject(f, all).label() == "{p}");
  CHECK(forall_f_subobject(f, none).label() == "{q}");
  CHECK(forall_f_subobject(f, all).label() == "{p,q}");
}
