#pragma once

#include <optional>
#include <vector>

#include "catq/fincat.hpp"

namespace catq {

/// An adjunction left -| right presented by its unit and counit.
///   left  : C -> D,   right : D -> C,
///   unit  : Id_C => right . left,   counit : left . right => Id_D.
struct Adjunction {
  FinFunctor left;
  FinFunctor right;
  NatTransform unit;
  NatTransform counit;

  const FinCategory& C() const { return *left.source; }
  const FinCategory& D() const { return *left.target; }
};

/// Forward transpose of f : x -> right(y) across the adjunction:
///   counit(y) . left(f)  :  left(x) -> y.
/// `y` names the object of D over which f's target is right(y); it must be
/// passed explicitly because `right` need not be injective on objects.
/// Throws EndpointMismatch when f does not end at right(y).
int transpose_forward(const Adjunction& adj, int f, int y);

/// Backward transpose of g : left(x) -> y, found as the unique morphism
/// x -> right(y) whose forward transpose equals g (exhaustive search over
/// the finite hom-set).  Throws EndpointMismatch when g does not start at
/// left(x), and NotFound when no (or more than one) preimage exists --
/// either case witnesses a failed adjunction.
int transpose_backward(const Adjunction& adj, int g, int x);

/// Full verification: functor laws for both sides, naturality of unit and
/// counit (including that their endpoints are the identity and composite
/// functors), both triangle identities, bijectivity of the transpose on
/// every hom-pair, and naturality of the transpose in each variable.
LawReport verify_adjunction(const Adjunction& adj);

/// Caps for the exhaustive right-adjoint search.
struct AdjointSearchCaps {
  int max_objects = 7;
  int max_morphisms = 60;
};

/// Builds the right adjoint of F by universal-arrow search: for every
/// object d of the target, the smallest (by id) pair (g_d, eps_d) such that
/// every g : F(x) -> d factors uniquely as eps_d . F(h).  Throws NotFound
/// when some object has no universal arrow, SizeCapExceeded over caps.
Adjunction find_right_adjoint(const FinFunctor& f, const AdjointSearchCaps& caps = {});

/// All universal arrows (candidate right-adjoint values) at one object of
/// F's target, as (object, counit-component) pairs in scan order.  Used to
/// probe uniqueness of adjoints up to natural isomorphism.
std::vector<std::pair<int, int>> find_universal_arrows(const FinFunctor& f, int d);

/// One fiberwise-adjunction square over a base morphism: two adjunctions,
/// the two reindexing functors between their categories, and the invertible
/// comparison 2-cells that relate them.
///
///   over_target:  L_t -| R_t  on (C_t, D_t)     (fiber over the target)
///   over_source:  L_s -| R_s  on (C_s, D_s)     (fiber over the source)
///   base_reindex: C_t -> C_s,  ext_reindex: D_t -> D_s,
///   left_cell  : L_s . base_reindex  =>  ext_reindex . L_t   (invertible)
///   right_cell : base_reindex . R_t  =>  R_s . ext_reindex   (invertible)
struct LiftedAdjunctionSquare {
  std::string label;
  Adjunction over_source;
  Adjunction over_target;
  FinFunctor base_reindex;
  FinFunctor ext_reindex;
  std::optional<NatTransform> left_cell;
  std::optional<NatTransform> right_cell;
};

/// For every entry: checks both comparison cells are present, natural and
/// componentwise invertible; that the unit square
///   R_s(left_cell) . unit_s(base_reindex -)  =  right_cell(L_t -) . base_reindex(unit_t -)
/// and the dual counit square commute at every object; and that the two
/// composite transformations built in the unit square are natural in their
/// argument.  Throws MissingComparisonCell when a cell is absent.
LawReport check_lifted_naturality(const std::vector<LiftedAdjunctionSquare>& family);

}  // namespace catq
