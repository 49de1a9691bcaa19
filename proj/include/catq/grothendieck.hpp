#pragma once

#include <array>
#include <map>
#include <utility>
#include <vector>

#include "catq/fincat.hpp"

namespace catq {

/// A strict finite indexed category: every base object carries a fiber
/// category and every base morphism f: X -> Y carries a reindexing functor
/// fiber(Y) -> fiber(X), contravariantly and strictly functorial in f.
struct IndexedModel {
  CatPtr base;
  std::map<int, CatPtr> fiber;        // base object id -> fiber category
  std::map<int, FinFunctor> reindex;  // base morphism id -> reindexing functor

  const FinCategory& fiber_at(int base_obj) const;
  CatPtr fiber_ptr(int base_obj) const;
  const FinFunctor& reindex_along(int base_morphism) const;
};

struct GrothCaps {
  int max_objects = 2000;
  long long max_morphisms = 20000;
};

/// Verify the indexed-category laws: a fiber for every base object, a
/// reindexing functor with the contravariant endpoints for every base
/// morphism (each passing the functor laws), identities reindexing to
/// identity functors, and composites reindexing to reversed composites.
/// Entries for unknown base ids throw MalformedInput.
LawReport check_indexed_model(const IndexedModel& m);

/// The total category of an indexed model.  Objects are pairs (X, phi) of a
/// base object and a fiber object over it; a morphism (X, phi) -> (Y, psi)
/// is a pair of f: X -> Y and alpha: phi -> reindex(f)(psi) in fiber(X);
/// composition is (g, beta) . (f, alpha) = (g.f, reindex(f)(beta) . alpha).
struct TotalCategory {
  CatPtr category;
  FinFunctor projection;  // category -> base, first projection on pairs

  std::vector<std::pair<int, int>> object_pairs;    // total object id -> (base obj, fiber obj)
  // total morphism id -> (base morphism, fiber morphism, target fiber obj).
  // The target fiber object is part of the data: reindexing need not be
  // injective on objects, so (f, alpha) alone may not determine the target.
  std::vector<std::array<int, 3>> morphism_triples;

  int object_of(int base_obj, int fiber_obj) const;
  int morphism_of(int base_morphism, int fiber_morphism, int target_fiber_obj) const;

 private:
  std::map<std::pair<int, int>, int> obj_index_;
  std::map<std::array<int, 3>, int> mor_index_;
  friend TotalCategory build_total(const IndexedModel& m, const GrothCaps& caps);
};

/// Build the total category and its projection.  Validates the indexed model
/// first and throws MalformedInput (with the first law witness) when it is
/// not a strict indexed category; throws SizeCapExceeded past the caps.
TotalCategory build_total(const IndexedModel& m, const GrothCaps& caps = {});

/// For every base morphism f: X -> Y and fiber object psi over Y, verify the
/// canonical lift (f, id) : (X, reindex(f)(psi)) -> (Y, psi) is cartesian:
/// every total morphism into (Y, psi) whose base map factors through f
/// factors through the lift by exactly one morphism over each factorization.
LawReport check_cartesian_lifts(const TotalCategory& t, const IndexedModel& m);

/// Verify fiber recovery: over each base identity, pairing with the identity
/// is a bijection from fiber(X) onto the total objects and morphisms that
/// project to X and id_X, and it preserves composition.
LawReport check_fiber_recovery(const TotalCategory& t, const IndexedModel& m);

}  // namespace catq
