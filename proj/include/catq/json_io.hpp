#pragma once

#include <string>

#include "catq/adjunction.hpp"
#include "catq/coherence.hpp"
#include "catq/elem.hpp"
#include "catq/fincat.hpp"
#include "catq/grothendieck.hpp"
#include "catq/presheaf.hpp"
#include "catq/slice.hpp"

// JSON model files.  Every loader validates shape and id references and
// throws MalformedInput with a path- and field-precise message on any
// defect.  Categories, functors, presheaves, and families are additionally
// law-checked at load time (a broken compose table is an input error, not
// a finding); naturality, adjunction, pullback, and diagram laws are left
// to the corresponding check operations so they can be reported as
// failures with witnesses.  Files may reference sibling files by relative
// path; categories are cached per canonical path within one load, so
// shared references compare equal as pointers.
//
// Shapes:
//   category:  {"objects":[..], "morphisms":[{"id":..,"src":..,"tgt":..},..],
//               "identities":{"obj":morph,..}, "compose":[[g,f,gf],..]}
//   functor:   {"source":"cat.json", "target":"cat.json",
//               "omap":{"obj":obj,..}, "mmap":{"morph":morph,..}}
//   natural:   {"from":"functor.json", "to":"functor.json",
//               "component":{"obj":morph,..}}
//   adjunction:{"left":"functor.json", "right":"functor.json",
//               "unit":{"obj":morph,..}, "counit":{"obj":morph,..}}
//   predicate: {"gamma":["1","2"], "a":["a","b"], "phi":[["1","a"],..]}
//   square:    {"upper":[..], "lower":[..], "corner":[..],
//               "right":{"u":"c",..}, "bottom":{"l":"c",..},
//               optional "apex":[["u","l"],..] (projection legs implied)}
//   family:    {"base":[..], "total":[..], "display":{"t":"b",..}}
//   map:       {"from":[..], "to":[..], "map":{"x":"y",..}}
//   presheaf:  {"base":"cat.json", "sets":{"obj":[..],..},
//               "actions":{"morph":{"elem":"elem",..},..}}
//   indexed:   {"base":"cat.json", "fibers":{"obj":"cat.json",..},
//               "reindex":{"morph":{"omap":{..},"mmap":{..}},..}}
//   diagram:   {"shape":"cat.json", "nodes":{"obj":"cat.json",..},
//               "edges":{"morph":{"omap":{..},"mmap":{..}},..},
//               optional "comparisons":[{"g":..,"f":..,
//                                        "component":{"obj":morph,..}},..]}
// Identity edges may be omitted from "edges"; missing comparison cells are
// filled with identities.

namespace catq {

/// A quantification instance over a product context.
struct QuantifyInput {
  Context gamma;
  Context a;
  Predicate phi;  // over the row-major product context gamma x a
};

FinCategory load_category(const std::string& path);
FinFunctor load_functor(const std::string& path);
NatTransform load_natural(const std::string& path);
Adjunction load_adjunction(const std::string& path);
QuantifyInput load_quantify_input(const std::string& path);
PullbackSquare load_square(const std::string& path);
FamilyOver load_family(const std::string& path);
SetMap load_map(const std::string& path);
Presheaf load_presheaf(const std::string& path);
IndexedModel load_indexed_model(const std::string& path);
CatDiagram load_diagram(const std::string& path);

}  // namespace catq
