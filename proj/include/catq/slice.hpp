#pragma once

#include <vector>

#include "catq/elem.hpp"
#include "catq/fincat.hpp"

namespace catq {

/// An object of the slice over a context: a finite family of sets indexed by
/// the base, presented as a total set with a display map down to the base.
struct FamilyOver {
  Context base;
  Context total;
  SetMap display;  // total -> base
};

/// Validates and assembles a family; throws ContextMismatch when the display
/// map does not run total -> base.
FamilyOver make_family(Context base, Context total, SetMap display);

/// Indices of the elements of the fiber over base element `base_index`,
/// in total order.
std::vector<int> fiber_indices(const FamilyOver& fam, int base_index);

// ---------------------------------------------------------------------------
// The three functors along a base map f : Delta -> Gamma
// ---------------------------------------------------------------------------

/// Reindexing by pullback: total = pairs (d, t) with f(d) = display(t), in
/// (d-major, t-minor) lexicographic order; display = first projection.
FamilyOver pullback_family(const SetMap& f, const FamilyOver& y);

/// Second pullback projection: the map from pullback_family(f, y).total back
/// to y.total reading off the second component.
SetMap pullback_second_leg(const SetMap& f, const FamilyOver& y);

/// Action of the pullback functor on a morphism k : y -> y2 over Gamma:
/// (d, t) |-> (d, k(t)).
SetMap pullback_on_morphism(const SetMap& f, const FamilyOver& y, const FamilyOver& y2,
                            const SetMap& k);

/// Dependent sum: same total, display composed with f.
FamilyOver sigma_family(const SetMap& f, const FamilyOver& x);

/// Dependent product: the fiber over y is the set of sections of x over
/// f^{-1}(y).  Each element is pair(y, tuple of pair(d, chosen) in domain
/// order); an empty fiber contributes the single empty section.
FamilyOver pi_family(const SetMap& f, const FamilyOver& x);

/// Action of the dependent product on a morphism h : x -> x2 over Delta:
/// post-composes every section with h.
SetMap pi_on_morphism(const SetMap& f, const FamilyOver& x, const FamilyOver& x2,
                      const SetMap& h);

// ---------------------------------------------------------------------------
// Morphisms over a base and the two transposes
// ---------------------------------------------------------------------------

/// True when h : a.total -> b.total commutes with the displays.
bool is_over_base(const FamilyOver& a, const FamilyOver& b, const SetMap& h);

/// All morphisms a -> b over the common base, enumerated deterministically
/// (element-major odometer, later elements fastest).  Throws SizeCapExceeded
/// when more than `cap` maps would be produced.
std::vector<SetMap> hom_over(const FamilyOver& a, const FamilyOver& b,
                             long long cap = 200000);

/// Hom(sigma_f x, y) -> Hom(x, f* y):  h |-> (display(x), h(x)).
SetMap sigma_transpose_forward(const SetMap& f, const FamilyOver& x, const FamilyOver& y,
                               const SetMap& h);

/// Hom(x, f* y) -> Hom(sigma_f x, y):  k |-> snd . k.
SetMap sigma_transpose_backward(const SetMap& f, const FamilyOver& x, const FamilyOver& y,
                                const SetMap& k);

/// Hom(f* y, x) -> Hom(y, pi_f x):  u |-> (t |-> the section d |-> u(d, t)).
SetMap pi_transpose_forward(const SetMap& f, const FamilyOver& y, const FamilyOver& x,
                            const SetMap& u);

/// Hom(y, pi_f x) -> Hom(f* y, x):  v |-> ((d, t) |-> section-of-v(t) at d).
SetMap pi_transpose_backward(const SetMap& f, const FamilyOver& y, const FamilyOver& x,
                             const SetMap& v);

/// Verifies both adjunctions sigma_f -| f* -| pi_f on the given instance:
/// hom bijections with round-trips, and naturality of both transposes in
/// each variable (pools drawn from the endomorphisms over the bases).
LawReport check_slice_adjunctions(const SetMap& f, const FamilyOver& x,
                                  const FamilyOver& y, long long cap = 200000);

// ---------------------------------------------------------------------------
// Subobjects, the classifier, and quantifiers along an arbitrary map
// ---------------------------------------------------------------------------

/// Subobjects of a context are exactly predicates on it.
using Subobject = Predicate;

/// The two-element truth-value context; index 0 is "true".
Context omega_context();

/// Classifying map of a subobject: sends members to "true", the rest to
/// "false".
SetMap characteristic(const Subobject& phi);

/// Recovers the subobject classified by a map into omega_context().
Subobject subobject_of(const SetMap& chi);

/// Direct image along f : Delta -> Gamma.
Subobject exists_f_subobject(const SetMap& f, const Subobject& phi);

/// The largest subobject of Gamma whose preimage is inside phi:
/// { y | f^{-1}(y) subset of phi }.
Subobject forall_f_subobject(const SetMap& f, const Subobject& phi);

}  // namespace catq
