#pragma once

#include <vector>

#include "catq/elem.hpp"
#include "catq/fincat.hpp"

namespace catq {

/// A span between two finite contexts: a shared apex with one leg into each
/// foot.  Spans are the 1-cells of a weak composition structure whose 2-cells
/// are apex maps commuting with the legs.
struct SpanCell {
  SetMap left;   // apex -> left foot
  SetMap right;  // apex -> right foot

  const Context& apex() const { return left.from; }
  const Context& left_foot() const { return left.to; }
  const Context& right_foot() const { return right.to; }

  friend bool operator==(const SpanCell& a, const SpanCell& b) {
    return a.left == b.left && a.right == b.right;
  }
  friend bool operator!=(const SpanCell& a, const SpanCell& b) { return !(a == b); }
};

/// Throws MalformedInput unless both legs share the same apex.
void require_span(const SpanCell& s);

/// The identity span on a context: apex = the context, both legs identities.
SpanCell identity_span(const Context& c);

/// Composite span "s after t": t runs from X to Y, s from Y to Z.  The apex
/// is the canonical pullback of t's right leg against s's left leg — pairs
/// (u, v) with t.right(u) = s.left(v), ordered with u outermost — and the
/// legs are t.left o first and s.right o second.
/// Throws FeetMismatch unless t's right foot equals s's left foot.
SpanCell span_compose(const SpanCell& s, const SpanCell& t);

/// A 2-cell between parallel spans: a map of apexes commuting with both legs.
struct SpanMorphism {
  SpanCell from;
  SpanCell to;
  SetMap map;  // from.apex() -> to.apex()

  friend bool operator==(const SpanMorphism& a, const SpanMorphism& b) {
    return a.from == b.from && a.to == b.to && a.map == b.map;
  }
  friend bool operator!=(const SpanMorphism& a, const SpanMorphism& b) { return !(a == b); }
};

/// Throws MalformedInput unless m is a genuine 2-cell: spans parallel (same
/// feet), map endpoints match the apexes, and both leg triangles commute.
void require_span_morphism(const SpanMorphism& m);

/// Identity 2-cell on a span.
SpanMorphism identity_cell(const SpanCell& s);

/// True iff the 2-cell's apex map is a bijection.
bool is_invertible_cell(const SpanMorphism& m);

/// Inverse of an invertible 2-cell.  Throws MalformedInput if not invertible.
SpanMorphism invert_cell(const SpanMorphism& m);

/// Vertical composite "b after a".  Throws MalformedInput if a.to != b.from.
SpanMorphism vcomp(const SpanMorphism& b, const SpanMorphism& a);

/// Horizontal composite: p sits between spans X -> Y, q between spans
/// Y -> Z; the result sits between the composite spans, sending an apex pair
/// (u, v) to (p(u), q(v)).  Throws FeetMismatch if the middle feet disagree.
SpanMorphism hcomp(const SpanMorphism& q, const SpanMorphism& p);

/// The canonical re-association cell from (s o t) o u to s o (t o u) for a
/// composable triple (u first, then t, then s): (a, (b, c)) -> ((a, b), c)
/// on apex elements.  Invertible; verified to commute with the legs.
SpanMorphism associator(const SpanCell& s, const SpanCell& t, const SpanCell& u);

/// Left unitor: identity_span(Y) o s  ->  s, for s : X -> Y.
SpanMorphism left_unitor(const SpanCell& s);

/// Right unitor: s o identity_span(X)  ->  s, for s : X -> Y.
SpanMorphism right_unitor(const SpanCell& s);

/// Pentagon law for a composable quadruple (u first, then t, then s, then r):
/// the two re-association routes from ((r o s) o t) o u to r o (s o (t o u))
/// are equal 2-cells.
LawReport check_pentagon(const SpanCell& r, const SpanCell& s, const SpanCell& t,
                         const SpanCell& u);

/// Triangle law for a composable pair (t first, then s): re-associating past
/// the middle identity span and cancelling it with either unitor gives the
/// same 2-cell.
LawReport check_triangle(const SpanCell& s, const SpanCell& t);

/// Middle-four interchange: a, b vertically composable between spans X -> Y,
/// ap, bp vertically composable between spans Y -> Z.  Returns true iff
/// vcomp(hcomp(bp, b), hcomp(ap, a)) == hcomp(vcomp(bp, ap), vcomp(b, a)).
/// Throws GridMismatch unless the four cells form a composable 2x2 grid.
bool interchange_check(const SpanMorphism& bp, const SpanMorphism& b,
                       const SpanMorphism& ap, const SpanMorphism& a);

/// A 1-cell of the strictified structure: a composable list of spans read
/// left to right (cells[0] runs first), or the empty list standing for the
/// identity at `at`.
struct PathCell {
  Context at;                   // start context; equals cells[0]'s left foot when nonempty
  std::vector<SpanCell> cells;

  const Context& source() const { return at; }
  const Context& target() const { return cells.empty() ? at : cells.back().right_foot(); }
};

/// Throws MalformedInput/FeetMismatch unless adjacent feet match and `at`
/// agrees with the first cell.
void require_path(const PathCell& p);

/// Identity path at a context.
PathCell path_identity(const Context& c);

/// Strict composite "q after p": list concatenation.  Associative and unital
/// on the nose.  Throws FeetMismatch unless p ends where q starts.
PathCell path_compose(const PathCell& q, const PathCell& p);

/// Evaluate a path to its canonical weak composite, folding from the front:
/// empty -> identity span; otherwise acc = cells[0], then acc = span_compose(
/// cells[i], acc) for each later cell.
SpanCell eval_path(const PathCell& p);

/// The canonical comparison cell eval_path(path_compose(q, p)) ->
/// span_compose(eval_path(q), eval_path(p)); built from associators and
/// unitors, returned with invertibility verified.
SpanMorphism concat_comparison(const PathCell& q, const PathCell& p);

/// Coherence of re-association on one path: evaluates every full bracketing
/// of the path's cells (all binary trees over the fixed cell order), builds
/// the associator-move graph between bracketings, and checks that any two
/// move sequences between the same pair of bracketings compose to the same
/// 2-cell.  Paths longer than max_cells throw ShapeCapExceeded.
LawReport check_path_coherence(const PathCell& p, int max_cells = 6);

}  // namespace catq
