#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "catq/adjunction.hpp"
#include "catq/elem.hpp"
#include "catq/fincat.hpp"

namespace catq {

/// A finite-set-valued contravariant functor on a finite base category:
/// a morphism f : c -> c' acts on elements by actions(f) : sets(c') -> sets(c).
struct Presheaf {
  CatPtr base;
  std::unordered_map<int, Context> sets;    // object id -> finite set
  std::unordered_map<int, SetMap> actions;  // morphism id -> sets(tgt) -> sets(src)

  const Context& at(int obj) const;
  const SetMap& action(int morphism) const;
};

/// Checks totality, action endpoints, identity actions, and contravariant
/// composition.  Throws MalformedInput on dangling ids.
LawReport check_presheaf(const Presheaf& p);

/// A morphism of presheaves over one base: a family of maps between the
/// pointwise sets, natural with respect to every base morphism.
struct PresheafMorphism {
  Presheaf source;
  Presheaf target;
  std::unordered_map<int, SetMap> component;  // object id -> sets map

  const SetMap& at(int obj) const;
};

/// Checks component totality/endpoints and all naturality squares.
/// Throws BaseMismatch when source and target live over different bases.
LawReport check_presheaf_morphism(const PresheafMorphism& m);

/// Pointwise product with its first projection.  Product elements at each
/// object are pairs in (gamma-major, a-minor) order.  Throws BaseMismatch.
std::pair<Presheaf, PresheafMorphism> extend_presheaf(const Presheaf& gamma,
                                                      const Presheaf& a);

/// Wraps a single finite set as a presheaf over the terminal category
/// (object 0), for degenerating the machinery to plain contexts.
Presheaf presheaf_of_context(const Context& c);

// ---------------------------------------------------------------------------
// Sub-presheaves and the quantifiers
// ---------------------------------------------------------------------------

/// A predicate on each pointwise set.  Valid only when closed under the
/// presheaf actions (checked by the operations that consume it).
struct SubPresheaf {
  std::unordered_map<int, Predicate> at;

  friend bool operator==(const SubPresheaf& x, const SubPresheaf& y) {
    return x.at == y.at;
  }
  friend bool operator!=(const SubPresheaf& x, const SubPresheaf& y) { return !(x == y); }
};

SubPresheaf full_subpresheaf(const Presheaf& p);
SubPresheaf empty_subpresheaf(const Presheaf& p);

/// True when s covers every object of p with a predicate over the right set
/// and is closed under every action.
bool is_action_closed(const Presheaf& p, const SubPresheaf& s);

/// Throws NotSubpresheaf when !is_action_closed.
void require_subpresheaf(const Presheaf& p, const SubPresheaf& s, const char* what);

/// All action-closed sub-presheaves, ordered by ascending bitmask encoding
/// (objects contribute bit blocks in base object order).  Throws
/// SizeCapExceeded when 2^(total elements) exceeds `cap`.
std::vector<SubPresheaf> all_subpresheaves(const Presheaf& p, long long cap = 1 << 20);

/// Pointwise inverse image along pi of a sub-presheaf of pi.target.
SubPresheaf reindex_presheaf(const SubPresheaf& psi, const PresheafMorphism& pi);

/// Left Kan quantifier of a sub-presheaf of pi.source: per object and
/// element, membership is decided by the comma-fiber colimit (connected
/// components of action zig-zags, realized with union-find); the result is
/// the least action-closed sub-presheaf of pi.target containing the
/// pointwise images.
SubPresheaf lan(const SubPresheaf& phi, const PresheafMorphism& pi);

/// Right Kan quantifier: x is a member at c iff for every base morphism
/// f : c -> c' the whole fiber of pi over the transported element lies in
/// phi; the greatest action-closed sub-presheaf whose reindexing is inside
/// phi.
SubPresheaf ran(const SubPresheaf& phi, const PresheafMorphism& pi);

// ---------------------------------------------------------------------------
// The sub-presheaf lattices, materialized for the adjunction engine
// ---------------------------------------------------------------------------

struct PresheafCaps {
  int max_base_objects = 4;
  int max_base_morphisms = 10;
  int max_set = 3;            // per-object pointwise set size
  int max_total_bits = 20;    // sum of pointwise sizes for lattice enumeration
};

/// The poset of action-closed sub-presheaves as a finite category.  Object
/// ids are the bitmask encodings; morphisms are inclusions in
/// (sub-ascending, super-ascending) order.
struct PresheafLattice {
  Presheaf presheaf;
  std::unordered_map<int, int> offset;  // object id -> bit offset
  int total_bits = 0;
  std::vector<std::uint64_t> closed;  // sorted ascending
  CatPtr cat;

  int arrow(std::uint64_t s, std::uint64_t t) const;
  std::uint64_t encode(const SubPresheaf& s) const;
  SubPresheaf decode(std::uint64_t mask) const;

 private:
  friend PresheafLattice make_presheaf_lattice(const Presheaf&, const PresheafCaps&);
  std::unordered_map<std::uint64_t, int> arrow_id_;
};

PresheafLattice make_presheaf_lattice(const Presheaf& p, const PresheafCaps& caps = {});

/// Both Kan adjunctions of one presheaf extension, over the materialized
/// lattices:  exists_adj : lan -| reindex,  forall_adj : reindex -| ran.
struct KanModel {
  Presheaf gamma;
  Presheaf a;
  Presheaf product;
  PresheafMorphism projection;
  PresheafLattice base_lattice;   // sub-presheaves of gamma
  PresheafLattice total_lattice;  // sub-presheaves of the product
  Adjunction exists_adj;
  Adjunction forall_adj;
};

KanModel make_kan_model(const Presheaf& gamma, const Presheaf& a,
                        const PresheafCaps& caps = {});

/// Builds the model and runs verify_adjunction on both adjunctions, with
/// law names prefixed "exists:" / "forall:".
LawReport verify_kan_adjunctions(const Presheaf& gamma, const Presheaf& a,
                                 const PresheafCaps& caps = {});

}  // namespace catq
