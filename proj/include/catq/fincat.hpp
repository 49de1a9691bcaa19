#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "catq/errors.hpp"

namespace catq {

// ---------------------------------------------------------------------------
// Core data: finite categories with explicit composition tables.
// ---------------------------------------------------------------------------

struct Morphism {
  int id = -1;
  int src = -1;
  int tgt = -1;
};

/// A finite category given by explicit tables.  Objects and morphisms carry
/// integer ids; composition is a dense table keyed by id pairs, defined for
/// exactly the composable pairs.  `rebuild_index()` must be called after the
/// public fields are filled in (all builders and parsers do this).
struct FinCategory {
  std::vector<int> objects;                         // ordered object ids
  std::vector<Morphism> morphisms;                  // ordered morphism records
  std::unordered_map<int, int> identity;            // object id -> morphism id
  std::unordered_map<std::uint64_t, int> compose_table;  // key(g,f) -> g.f

  static std::uint64_t key(int g, int f) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(g)) << 32) |
           static_cast<std::uint32_t>(f);
  }

  void rebuild_index();

  bool has_object(int obj) const { return object_pos_.count(obj) != 0; }
  bool has_morphism(int m) const { return morph_pos_.count(m) != 0; }

  const Morphism& morphism(int id) const;
  int src(int m) const { return morphism(m).src; }
  int tgt(int m) const { return morphism(m).tgt; }
  int id_of(int obj) const;

  bool composable(int g, int f) const { return tgt(f) == src(g); }

  /// Table lookup; nullopt when the pair has no entry.
  std::optional<int> compose_opt(int g, int f) const {
    auto it = compose_table.find(key(g, f));
    if (it == compose_table.end()) return std::nullopt;
    return it->second;
  }

  /// Table lookup; throws MalformedInput when the entry is missing.
  int compose(int g, int f) const;

  /// Composite of a path given in diagrammatic order [first, ..., last].
  int compose_path(const std::vector<int>& path) const;

  /// Ascending morphism ids from x to y.
  std::vector<int> hom(int x, int y) const;

  /// Morphisms grouped by source / target object (built by rebuild_index).
  const std::vector<int>& out_of(int obj) const;
  const std::vector<int>& into(int obj) const;

 private:
  std::unordered_map<int, int> object_pos_;
  std::unordered_map<int, int> morph_pos_;
  std::unordered_map<int, std::vector<int>> out_;
  std::unordered_map<int, std::vector<int>> in_;
  static const std::vector<int> empty_vec_;
};

using CatPtr = std::shared_ptr<const FinCategory>;

/// A functor between finite categories, as explicit object/morphism tables.
struct FinFunctor {
  CatPtr source;
  CatPtr target;
  std::unordered_map<int, int> omap;  // object id -> object id
  std::unordered_map<int, int> mmap;  // morphism id -> morphism id

  int on_object(int obj) const;
  int on_morphism(int m) const;
};

/// A natural transformation between two parallel functors, as an explicit
/// component table (source object id -> morphism id in the target category).
struct NatTransform {
  FinFunctor from;  // F
  FinFunctor to;    // G, parallel to F
  std::unordered_map<int, int> component;  // object id -> morphism id

  int at(int obj) const;
};

/// A diagram: a labeling functor out of a (small) shape category.
struct Diagram {
  FinFunctor labeling;  // shape = labeling.source
};

// ---------------------------------------------------------------------------
// Law reports.
// ---------------------------------------------------------------------------

/// A single law violation, with the smallest offending ids (by scan order)
/// and a human-readable account of what went wrong.
struct Witness {
  std::string law;
  std::vector<long long> ids;
  std::string detail;
};

/// Outcome of a batch of law checks.  `instances` counts individual
/// law-instances examined; at most one witness (the first, i.e. smallest
/// under id ordering) is recorded per law name.
struct LawReport {
  std::vector<std::string> laws_checked;
  long long instances = 0;
  std::vector<Witness> failures;

  bool pass() const { return failures.empty(); }
  bool failed(const std::string& law) const;
  void note_law(const std::string& law);
  void fail(const std::string& law, std::vector<long long> ids, std::string detail);
  void merge(const LawReport& other);
  std::string summary() const;
};

// ---------------------------------------------------------------------------
// Law checks.
// ---------------------------------------------------------------------------

/// Checks the category axioms on the explicit tables: composition totality
/// (an entry for exactly the composable pairs, with correctly typed result),
/// identity laws, associativity on every composable triple, and uniqueness
/// of two-sided units per object.  Throws MalformedInput on dangling ids;
/// law violations are reported as witnesses, not thrown.
LawReport check_category(const FinCategory& c);

/// Checks functoriality: total maps, endpoint preservation, identities and
/// all binary composites preserved.
LawReport check_functor(const FinFunctor& f);

/// Checks naturality of t: every square t(Y) . F(m) = G(m) . t(X) commutes;
/// also validates component endpoints and that the two functors are parallel.
LawReport check_natural(const NatTransform& t);

/// Compares the labeled composites of two paths of shape-morphism ids
/// (diagrammatic order).  Throws PathMismatch when a path is empty, not
/// composable in the shape, or the two paths do not share endpoints.
bool check_diagram_commutes(const Diagram& d, const std::vector<int>& path_a,
                            const std::vector<int>& path_b);

/// Opposite category: same ids, src/tgt swapped, transposed table.
FinCategory opposite(const FinCategory& c);

// ---------------------------------------------------------------------------
// Functor and transformation algebra.
// ---------------------------------------------------------------------------

FinFunctor identity_functor(CatPtr c);

/// g after f; requires f.target and g.source to be the same category object.
FinFunctor compose_functors(const FinFunctor& g, const FinFunctor& f);

bool same_functor(const FinFunctor& a, const FinFunctor& b);

/// Identity transformation on F.
NatTransform identity_transform(const FinFunctor& f);

/// Left whiskering H . t : H.F => H.G for H out of t's target category.
NatTransform whisker_left(const FinFunctor& h, const NatTransform& t);

/// Right whiskering t . K : F.K => G.K for K into t's source category.
NatTransform whisker_right(const NatTransform& t, const FinFunctor& k);

/// Vertical composite u . t (t first) of transformations F => G => H.
NatTransform vcompose(const NatTransform& u, const NatTransform& t);

/// Two-sided inverse of m, if any.
std::optional<int> find_inverse(const FinCategory& c, int m);

bool is_iso(const FinCategory& c, int m);

/// Every component of t is invertible.
bool is_invertible_transform(const NatTransform& t);

/// Searches exhaustively for a natural isomorphism F => G (same source and
/// target categories).  Returns nullopt when none exists.  The search is a
/// backtracking walk over iso components with naturality pruning; `cap`
/// bounds the number of partial assignments explored.
std::optional<NatTransform> find_natural_iso(const FinFunctor& f,
                                             const FinFunctor& g,
                                             long long cap = 2'000'000);

// ---------------------------------------------------------------------------
// Builders for small stock categories.
// ---------------------------------------------------------------------------

/// One object, one identity morphism.
FinCategory make_terminal_category();

/// n objects 0..n-1, identities only.
FinCategory make_discrete_category(int n);

/// n objects, exactly one morphism between every ordered pair.
FinCategory make_codiscrete_category(int n);

/// Thin category on objects 0..n-1 with an arrow i -> j iff leq(i, j).
/// `leq` must be reflexive and transitive; morphism ids are assigned in
/// (i-major, j-minor) scan order.
FinCategory make_poset_category(int n, const std::function<bool(int, int)>& leq);

/// Chain poset 0 <= 1 <= ... <= n-1.
FinCategory make_chain_category(int n);

/// Free category on a DAG: objects 0..n-1, one generating edge per pair in
/// `edges` (parallel edges allowed), morphisms are all paths.  Throws
/// MalformedInput when the graph has a directed cycle.
FinCategory make_free_category_on_dag(int n, const std::vector<std::pair<int, int>>& edges);

/// A thin category with objects 0..n-1 and an arrow i -> j iff rel(i,j),
/// where rel is a preorder (reflexive + transitive), so isomorphic distinct
/// objects are allowed.
FinCategory make_preorder_category(int n, const std::function<bool(int, int)>& rel);

}  // namespace catq
