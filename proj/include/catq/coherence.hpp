#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "catq/elem.hpp"
#include "catq/fincat.hpp"

namespace catq {

// ===========================================================================
// Quantifier / substitution commutation over finite contexts.
//
// Everything here computes in the subset model: predicates are subsets,
// existential transport along a map is direct image, substitution is inverse
// image, 2-cells between predicates are inclusions, and an invertible 2-cell
// is an equality.
// ===========================================================================

/// A commuting square of context maps
///
///        apex --top-->  upper
///         |               |
///       left            right
///         v               v
///       lower --bottom-> corner
///
/// Predicates enter over `upper` (top.to); the two transport routes
/// (down-then-across vs across-then-down) land over `lower` (bottom.from).
struct PullbackSquare {
  SetMap top;     // apex  -> upper
  SetMap left;    // apex  -> lower
  SetMap right;   // upper -> corner
  SetMap bottom;  // lower -> corner
};

/// Throws ContextMismatch unless the four maps share corners as drawn and
/// the square commutes element-by-element.
void require_square(const PullbackSquare& sq);

/// The canonical pullback of right against bottom: apex elements are the
/// pairs (u, l) with right(u) = bottom(l), enumerated with u outermost, and
/// the projections as top and left legs.
PullbackSquare make_canonical_pullback(const SetMap& right, const SetMap& bottom);

/// Law report on a square: it commutes, and its apex is literally the
/// canonical pullback (same pair elements in the same order, same
/// projection tables).  Endpoint mismatches throw ContextMismatch.
LawReport check_pullback_square(const PullbackSquare& sq);

/// Throws NotAPullback unless check_pullback_square passes.
void require_canonical_pullback(const PullbackSquare& sq);

/// An inclusion cell between two predicates on one context.
struct Inclusion {
  Predicate from;
  Predicate to;

  bool holds() const { return (from.bits & ~to.bits) == 0 && from.over == to.over; }
  bool is_equality() const { return from == to; }
};

/// The transport-commutation witness for one predicate phi over `upper`:
///   route_a = bottom* ( image_right (phi) )      (across, then down)
///   route_b = image_left ( top* (phi) )          (down, then across)
/// decomposed into the three inclusion steps whose composite is the
/// canonical comparison route_b <= route_a, plus the reverse inclusion that
/// the pullback property supplies.
struct BeckChevalleyWitness {
  Predicate phi;        // over upper
  Inclusion step1;      // over apex:  top*(phi)  <=  top*(right*(image_right(phi)))
  Inclusion step2;      // over apex:  the comparison cell; an equality on elements
  Inclusion step3;      // over lower: image_left(left*(route_a))  <=  route_a
  Inclusion composite;  // over lower: route_b  <=  route_a
  Inclusion inverse;    // over lower: route_a  <=  route_b
};

/// Builds and verifies the witness for one predicate.  Throws NotAPullback
/// if the square is not canonically a pullback, ContextMismatch if phi does
/// not live over the square's upper context.
BeckChevalleyWitness beck_chevalley(const PullbackSquare& sq, const Predicate& phi);

/// Runs beck_chevalley over every predicate on the upper context and checks
/// each witness law-by-law.  Throws SizeCapExceeded if the upper context has
/// more than 16 elements.
LawReport check_beck_chevalley(const PullbackSquare& sq);

/// For a merely commuting square (canonical or not): searches all predicates
/// over `upper` for one where the two transport routes differ.  Returns the
/// first such predicate, or nullopt when the routes agree everywhere.
std::optional<Predicate> beck_counterexample(const PullbackSquare& sq);

/// Checks that transport strictly respects composition, on every subset:
///   image_g(image_f(S)) = image_{g after f}(S)        over f.from
///   f*(g*(T))           = (g after f)*(T)             over g.to
/// Throws ContextMismatch unless f.to = g.from, SizeCapExceeded when a
/// context exceeds `cap` elements.
LawReport substitution_composition_coherence(const SetMap& g, const SetMap& f,
                                             int cap = 4);

// ===========================================================================
// Pseudo-limits of finite diagrams of categories.
// ===========================================================================

/// A diagram of categories indexed by a finite shape category: a category
/// per shape object, a functor per shape morphism (identities must map to
/// identity functors), and, for every composable pair (g, f) of
/// non-identity shape morphisms, an invertible comparison cell
///   comparison[(g, f)] : edge(g) . edge(f)  =>  edge(g after f).
/// A diagram whose comparisons are all identities is strict.
struct CatDiagram {
  CatPtr shape;
  std::map<int, CatPtr> node;                            // shape object -> category
  std::map<int, FinFunctor> edge;                        // shape morphism -> functor
  std::map<std::pair<int, int>, NatTransform> comparison;  // (g, f) -> cell
};

/// Fills in identity comparison cells for every composable pair of
/// non-identity shape morphisms, for diagrams whose edges compose strictly.
CatDiagram fill_identity_comparisons(CatDiagram d);

/// The comparison cell for a composable pair, synthesizing identities when
/// either morphism is an identity.  Throws MissingComparisonCell when a
/// required cell is absent.
NatTransform comparison_at(const CatDiagram& d, int g, int f);

/// Validates a diagram: shape category laws, nodes and edges total,
/// identity edges strict, functor laws per edge, comparison cells present
/// with the right endpoints, invertible, natural, and coherent on
/// composable triples.  Unknown ids in the maps throw MalformedInput.
LawReport check_cat_diagram(const CatDiagram& d);

struct PseudoLimitCaps {
  int max_nodes = 3;         // shape objects
  int max_edges = 3;         // non-identity shape morphisms
  int max_objects = 512;     // constructed objects
  long long max_morphisms = 20000;  // constructed morphisms
};

/// The pseudo-limit category of a diagram.  An object picks one object per
/// node together with an invertible witness per non-identity edge
///   w_e : edge(e)(x_src) -> x_tgt
/// satisfying the cocycle condition against the comparison cells; a
/// morphism is a tuple of node morphisms commuting with the witnesses.
struct PseudoLimit {
  CatDiagram diagram;
  CatPtr category;
  std::vector<std::map<int, int>> object_component;  // object -> node -> object id
  std::vector<std::map<int, int>> object_witness;    // object -> edge -> morphism id
  std::vector<std::map<int, int>> morphism_component;  // morphism -> node -> morphism id
  std::map<int, FinFunctor> projection;   // node -> projection functor
  std::map<int, NatTransform> edge_cell;  // non-identity edge -> cell
                                          //   edge(e) . projection(src) => projection(tgt)

  /// Index of the object with these components and witnesses, or -1.
  int find_object(const std::map<int, int>& component,
                  const std::map<int, int>& witness) const;
  /// Index of the morphism with these endpoints and components, or -1.
  int find_morphism(int src, int tgt, const std::map<int, int>& component) const;
};

/// Builds the pseudo-limit.  Throws ShapeCapExceeded when the shape exceeds
/// the node/edge caps, SizeCapExceeded when the construction exceeds the
/// object/morphism caps, MalformedInput when check_cat_diagram fails.
PseudoLimit pseudo_limit(const CatDiagram& d, const PseudoLimitCaps& caps = {});

/// A cone over a diagram: an apex category, a leg functor per node, and an
/// invertible cell per non-identity edge
///   cell[e] : edge(e) . leg(src)  =>  leg(tgt)
/// satisfying the same cocycle condition as pseudo-limit objects.
struct PseudoCone {
  CatPtr apex;
  std::map<int, FinFunctor> leg;
  std::map<int, NatTransform> cell;
};

/// The pseudo-limit's own cone: apex = the limit, legs = projections,
/// cells = the edge cells.
PseudoCone cone_of_limit(const PseudoLimit& l);

/// Validates a cone over the diagram: legs total with the right endpoints
/// and functorial; cells total on non-identity edges with the right
/// endpoints, invertible, natural; cocycle over composable pairs.
LawReport check_pseudo_cone(const CatDiagram& d, const PseudoCone& c);

/// The canonical mediating functor of a probe cone into the pseudo-limit:
/// object components and edge witnesses are read straight off the cone, so
/// no search is involved.  Throws NotFound when some cone datum matches no
/// pseudo-limit object or morphism.
FinFunctor canonical_mediator(const PseudoLimit& l, const PseudoCone& probe);

struct MediatorSearchCaps {
  long long max_candidates = 200000;
};

/// The universal property at one probe cone: constructs the canonical
/// mediating functor U (components straight from the cone, comparison cells
/// the identity), verifies it is a functor whose projections reproduce the
/// cone on the nose and whose edge witnesses match the cone cells; then
/// enumerates every mediator (U', g') — any functor-with-invertible-cells
/// satisfying the same compatibility squares — and checks each is connected
/// to U by an invertible cell theta with projection triangles
///   g'_j(m) . proj_j(theta_m) = identity.
/// Throws MalformedInput if the probe fails validation, SearchCapExceeded
/// if the mediator enumeration would exceed the cap.
LawReport verify_pseudo_universal(const PseudoLimit& l, const PseudoCone& probe,
                                  const MediatorSearchCaps& caps = {});

}  // namespace catq
