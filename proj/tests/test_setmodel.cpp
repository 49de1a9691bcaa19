#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "catq/setmodel.hpp"

using namespace catq;

namespace {

// ===========================================================================
// Oracles
// ===========================================================================

/// Direct per-element recomputation of the quantifiers, written against the
/// set-comprehension definitions only (no mask tricks shared with the
/// implementation).
Predicate forall_oracle(const ExtendedContext& e, const Predicate& phi) {
  Predicate out(e.base);
  for (int i = 0; i < e.base.size(); ++i) {
    bool all = true;
    for (int j = 0; j < e.fiber.size(); ++j) {
      Elem p = Elem::pair(e.base.elements[i], e.fiber.elements[j]);
      if (!phi.member(p)) { all = false; break; }
    }
    if (all) out.set(i);
  }
  return out;
}

Predicate exists_oracle(const ExtendedContext& e, const Predicate& phi) {
  Predicate out(e.base);
  for (int i = 0; i < e.base.size(); ++i)
    for (int j = 0; j < e.fiber.size(); ++j) {
      Elem p = Elem::pair(e.base.elements[i], e.fiber.elements[j]);
      if (phi.member(p)) { out.set(i); break; }
    }
  return out;
}

ExtendedContext worked_example(Predicate* phi_out = nullptr) {
  ExtendedContext e = extend_context(Context::of({"1", "2"}), Context::of({"a", "b"}));
  if (phi_out) {
    *phi_out = Predicate(e.product);
    phi_out->set(e.product.index_of(Elem::pair(Elem("1"), Elem("a"))));
    phi_out->set(e.product.index_of(Elem::pair(Elem("1"), Elem("b"))));
  }
  return e;
}

}  // namespace

// ===========================================================================
// Context extension
// ===========================================================================

TEST_CASE("extension enumerates pairs base-major") {
  ExtendedContext e = worked_example();
  REQUIRE(e.product.size() == 4);
  CHECK(e.product.elements[0].label() == "(1,a)");
  CHECK(e.product.elements[1].label() == "(1,b)");
  CHECK(e.product.elements[2].label() == "(2,a)");
  CHECK(e.product.elements[3].label() == "(2,b)");
  CHECK(e.pair_index(1, 0) == 2);
  for (int i = 0; i < e.base.size(); ++i)
    for (int j = 0; j < e.fiber.size(); ++j)
      CHECK(e.projection.apply_index(e.pair_index(i, j)) == i);

  SetMap snd = second_projection(e);
  for (int i = 0; i < e.base.size(); ++i)
    for (int j = 0; j < e.fiber.size(); ++j)
      CHECK(snd.apply_index(e.pair_index(i, j)) == j);
}

TEST_CASE("quantifiers on the two-by-two example match the frozen values") {
  Predicate phi;
  ExtendedContext e = worked_example(&phi);

  Predicate all = forall(e, phi);
  Predicate some = exists(e, phi);
  CHECK(all.label() == "{1}");
  CHECK(some.label() == "{1}");
  CHECK(all == forall_oracle(e, phi));
  CHECK(some == exists_oracle(e, phi));

  // Second frozen instance: phi' = {(1,a),(2,b)}.
  Predicate phi2(e.product);
  phi2.set(0);
  phi2.set(3);
  CHECK(forall(e, phi2).label() == "{}");
  CHECK(exists(e, phi2).label() == "{1,2}");

  // reindex(S) = S x A.
  Predicate s(e.base);
  s.set(0);
  Predicate sx = reindex(e, s);
  CHECK(sx.label() == "{(1,a),(1,b)}");
}

TEST_CASE("quantifiers agree with the oracle on every subset, several shapes") {
  for (auto [nb, nf] : {std::pair{1, 1}, {2, 2}, {3, 2}, {2, 3}, {4, 2}}) {
    std::vector<std::string> bs, fs;
    for (int i = 0; i < nb; ++i) bs.push_back("x" + std::to_string(i));
    for (int j = 0; j < nf; ++j) fs.push_back("a" + std::to_string(j));
    ExtendedContext e = extend_context(Context::of_atoms(bs), Context::of_atoms(fs));
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << e.product.size()); ++m) {
      Predicate phi(e.product, m);
      CHECK(forall(e, phi) == forall_oracle(e, phi));
      CHECK(exists(e, phi) == exists_oracle(e, phi));
    }
  }
}

TEST_CASE("quantifier adjunctions as subset inequalities") {
  // substitution -| forall:   reindex(S) <= phi  iff  S <= forall(phi)
  // exists -| substitution:   exists(phi) <= S   iff  phi <= reindex(S)
  ExtendedContext e = extend_context(Context::of({"u", "v", "w"}), Context::of({"a", "b"}));
  auto subset = [](const Predicate& p, const Predicate& q) {
    return (p.bits & ~q.bits) == 0;
  };
  for (std::uint64_t sm = 0; sm < (std::uint64_t{1} << e.base.size()); ++sm) {
    Predicate s(e.base, sm);
    Predicate sx = reindex(e, s);
    for (std::uint64_t pm = 0; pm < (std::uint64_t{1} << e.product.size()); ++pm) {
      Predicate phi(e.product, pm);
      CHECK(subset(sx, phi) == subset(s, forall(e, phi)));
      CHECK(subset(exists(e, phi), s) == subset(phi, sx));
    }
  }
}

TEST_CASE("empty fiber: forall is everything, exists is nothing") {
  ExtendedContext e = extend_context(Context::of({"1", "2"}), Context{});
  CHECK(e.product.size() == 0);
  Predicate empty(e.product);
  CHECK(forall(e, empty).label() == "{1,2}");
  CHECK(exists(e, empty).label() == "{}");
}

TEST_CASE("singleton fiber: both quantifiers are the same relabeling") {
  ExtendedContext e = extend_context(Context::of({"1", "2", "3"}), Context::of({"a"}));
  for (std::uint64_t m = 0; m < 8; ++m) {
    Predicate phi(e.product, m);
    CHECK(forall(e, phi) == exists(e, phi));
    CHECK(forall(e, phi).bits == m);  // pair (x_i, a) sits at index i
  }
}

TEST_CASE("Frobenius reciprocity holds in the subset model") {
  // exists(reindex(S) /\ phi) == S /\ exists(phi), checked exhaustively.
  ExtendedContext e = extend_context(Context::of({"1", "2"}), Context::of({"a", "b", "c"}));
  for (std::uint64_t sm = 0; sm < 4; ++sm) {
    Predicate s(e.base, sm);
    std::uint64_t sx = reindex(e, s).bits;
    for (std::uint64_t pm = 0; pm < (std::uint64_t{1} << e.product.size()); ++pm) {
      Predicate phi(e.product, pm);
      Predicate lhs = exists(e, Predicate(e.product, sx & pm));
      Predicate rhs(e.base, sm & exists(e, phi).bits);
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("pairing into the extension is the unique mediating map") {
  ExtendedContext e = worked_example();
  Context x = Context::of({"p", "q", "r"});
  SetMap f(x, e.base, {0, 1, 0});
  SetMap g(x, e.fiber, {1, 0, 0});
  SetMap h = pair_into_extension(e, f, g);
  CHECK(compose_maps(e.projection, h) == f);
  CHECK(compose_maps(second_projection(e), h) == g);
  // Uniqueness: any map with the same composites equals h on every index.
  for (int i = 0; i < x.size(); ++i)
    CHECK(h.apply_index(i) == e.pair_index(f.apply_index(i), g.apply_index(i)));

  CHECK_THROWS_AS(pair_into_extension(e, f, SetMap(x, Context::of({"z"}), {0, 0, 0})),
                  ContextMismatch);
}

// ===========================================================================
// Powerset posets
// ===========================================================================

TEST_CASE("subset poset is a lawful thin category with 3^n inclusions") {
  Context c = Context::of({"1", "2", "3"});
  SubsetPoset p = make_subset_poset(c);
  CHECK(p.cat->objects.size() == 8);
  CHECK(p.cat->morphisms.size() == 27);  // pairs s <= t correspond to {in s, in t\s, out}
  CHECK(check_category(*p.cat).pass());

  // arrow() resolves inclusions and rejects non-inclusions.
  const int a1 = p.arrow(0b001, 0b011);
  const int a2 = p.arrow(0b011, 0b111);
  CHECK(p.cat->compose(a2, a1) == p.arrow(0b001, 0b111));
  CHECK(p.arrow(0b101, 0b101) == p.cat->id_of(0b101));
  CHECK_THROWS_AS(p.arrow(0b011, 0b001), EndpointMismatch);

  CHECK_THROWS_AS(make_subset_poset(c, 2), SizeCapExceeded);
}

TEST_CASE("quantifier model: both adjunctions verify on the worked example") {
  SetQuantifierModel m =
      make_set_quantifier_model(Context::of({"1", "2"}), Context::of({"a", "b"}));

  LawReport fa = verify_adjunction(m.forall_adj);
  INFO(fa.summary());
  CHECK(fa.pass());
  LawReport ex = verify_adjunction(m.exists_adj);
  INFO(ex.summary());
  CHECK(ex.pass());

  // Object actions are the quantifiers themselves.
  Predicate phi;
  ExtendedContext e = worked_example(&phi);
  CHECK(m.forall_adj.right.on_object(static_cast<int>(phi.bits)) ==
        static_cast<int>(forall(e, phi).bits));
  CHECK(m.exists_adj.left.on_object(static_cast<int>(phi.bits)) ==
        static_cast<int>(exists(e, phi).bits));
  CHECK(m.forall_adj.left.on_object(0b01) == static_cast<int>(reindex(e, Predicate(e.base, 0b01)).bits));

  // The entailment {1} <= forall(phi) transposes to {1} x A <= phi and back.
  const int entail = m.base.arrow(0b01, forall(e, phi).bits);
  const int transposed = transpose_forward(m.forall_adj, entail, static_cast<int>(phi.bits));
  CHECK(transposed == m.total.arrow(0b0011, phi.bits));
  CHECK(transpose_backward(m.forall_adj, transposed, 0b01) == entail);
}

TEST_CASE("quantifier adjunctions verify across small shapes") {
  for (auto [nb, nf] : {std::pair{1, 2}, {3, 1}, {2, 2}, {1, 3}}) {
    std::vector<std::string> bs, fs;
    for (int i = 0; i < nb; ++i) bs.push_back("x" + std::to_string(i));
    for (int j = 0; j < nf; ++j) fs.push_back("a" + std::to_string(j));
    CHECK(verify_adjunction(as_adjunction_forall(Context::of_atoms(bs), Context::of_atoms(fs))).pass());
    CHECK(verify_adjunction(as_adjunction_exists(Context::of_atoms(bs), Context::of_atoms(fs))).pass());
  }
}

TEST_CASE("model construction respects the size cap") {
  Context big = Context::of({"1", "2", "3", "4"});
  Context fiber = Context::of({"a", "b", "c", "d"});
  CHECK_THROWS_AS(make_set_quantifier_model(big, fiber), SizeCapExceeded);  // 16 > 12
  CHECK_THROWS_AS(make_set_quantifier_model(Context::of({"1", "2"}),
                                            Context::of({"a", "b"}), 3),
                  SizeCapExceeded);  // adjustable: product of size 4 > 3
}

// ===========================================================================
// Lifted naturality across a context map
// ===========================================================================

TEST_CASE("substitution square over a context map passes lifted naturality") {
  Context gamma = Context::of({"1", "2"});
  Context delta = Context::of({"x", "y", "z"});
  Context a = Context::of({"a", "b"});
  SetMap u(delta, gamma, {0, 0, 1});  // x,y |-> 1, z |-> 2

  LiftedAdjunctionSquare sq = make_lifted_square(delta, gamma, a, u);
  LawReport rep = check_lifted_naturality({sq});
  INFO(rep.summary());
  CHECK(rep.pass());
  CHECK(rep.instances > 0);

  SUBCASE("missing comparison cell is rejected") {
    sq.left_cell.reset();
    CHECK_THROWS_AS(check_lifted_naturality({sq}), MissingComparisonCell);
  }
  SUBCASE("mutated comparison-cell component is caught") {
    REQUIRE_FALSE(sq.left_cell->component.empty());
    auto it = sq.left_cell->component.begin();
    // Redirect one component to a morphism with the wrong endpoints.
    const FinCategory& dcat = *sq.left_cell->from.target;
    const int old = it->second;
    for (const Morphism& m : dcat.morphisms) {
      if (m.id != old && (m.src != dcat.src(old) || m.tgt != dcat.tgt(old))) {
        it->second = m.id;
        break;
      }
    }
    REQUIRE(it->second != old);
    LawReport bad = check_lifted_naturality({sq});
    CHECK_FALSE(bad.pass());
    CHECK(bad.failed("cells-natural"));
  }
}

TEST_CASE("lifted square with identity context map degenerates cleanly") {
  Context gamma = Context::of({"1", "2"});
  Context a = Context::of({"a"});
  LiftedAdjunctionSquare sq =
      make_lifted_square(gamma, gamma, a, SetMap::identity(gamma));
  CHECK(check_lifted_naturality({sq}).pass());
}
