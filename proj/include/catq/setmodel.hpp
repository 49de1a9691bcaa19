#pragma once

#include <cstdint>
#include <unordered_map>

#include "catq/adjunction.hpp"
#include "catq/elem.hpp"
#include "catq/fincat.hpp"

namespace catq {

/// A context extended by a variable of type A: the product context with its
/// projection.  Product elements are the pairs (x, a) in row-major order
/// (base order outer, fiber order inner).
struct ExtendedContext {
  Context base;       // Gamma
  Context fiber;      // A
  Context product;    // Gamma[A]
  SetMap projection;  // product -> base, (x, a) |-> x

  int pair_index(int base_i, int fiber_j) const {
    return base_i * fiber.size() + fiber_j;
  }
};

ExtendedContext extend_context(const Context& gamma, const Context& a);

/// Substitution along the projection: S |-> S x A.
Predicate reindex(const ExtendedContext& e, const Predicate& s);

/// Universal quantification: { x | for all a, (x,a) in phi }.
Predicate forall(const ExtendedContext& e, const Predicate& phi);

/// Existential quantification: { x | for some a, (x,a) in phi }.
Predicate exists(const ExtendedContext& e, const Predicate& phi);

/// Second projection product -> fiber.
SetMap second_projection(const ExtendedContext& e);

/// The unique map h : X -> product with projection . h = f and snd . h = g.
SetMap pair_into_extension(const ExtendedContext& e, const SetMap& f, const SetMap& g);

// ---------------------------------------------------------------------------
// Powerset posets and the quantifier adjunctions, materialized as data.
// ---------------------------------------------------------------------------

/// The poset of subsets of a context as a finite category: object ids are
/// the subset masks themselves; morphisms are the inclusions, with ids
/// assigned in (subset-ascending, superset-ascending) scan order.
struct SubsetPoset {
  Context ground;
  CatPtr cat;

  /// Morphism id of the inclusion s <= t; throws EndpointMismatch if not s <= t.
  int arrow(std::uint64_t s, std::uint64_t t) const;

 private:
  friend SubsetPoset make_subset_poset(const Context&, int);
  std::unordered_map<std::uint64_t, int> arrow_id_;
};

/// Materializes the full powerset poset.  Throws SizeCapExceeded when the
/// context has more than `cap_elements` elements.
SubsetPoset make_subset_poset(const Context& c, int cap_elements = 12);

/// Both quantifier adjunctions of one context extension, materialized over
/// the explicit powerset posets:
///   forall_adj :  substitution -| forall   on P(Gamma) and P(Gamma[A])
///   exists_adj :  exists -| substitution   on P(Gamma[A]) and P(Gamma)
struct SetQuantifierModel {
  ExtendedContext ext;
  SubsetPoset base;   // P(Gamma)
  SubsetPoset total;  // P(Gamma[A])
  Adjunction forall_adj;
  Adjunction exists_adj;
};

/// Builds the model; cap bounds max(|Gamma|, |Gamma|*|A|).
SetQuantifierModel make_set_quantifier_model(const Context& gamma, const Context& a,
                                             int cap_elements = 12);

/// The substitution -| forall adjunction alone.
Adjunction as_adjunction_forall(const Context& gamma, const Context& a,
                                int cap_elements = 12);

/// The exists -| substitution adjunction alone.
Adjunction as_adjunction_exists(const Context& gamma, const Context& a,
                                int cap_elements = 12);

/// The canonical fiberwise-adjunction square over a context map u: the two
/// forall adjunctions with inverse-image reindexing and identity comparison
/// cells (the composite functors agree on the nose in this model).
LiftedAdjunctionSquare make_lifted_square(const Context& gamma, const Context& delta,
                                          const Context& a, const SetMap& u,
                                          int cap_elements = 12);

}  // namespace catq
