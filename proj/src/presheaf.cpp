#include "catq/presheaf.hpp"

#include <algorithm>
#include <string>

#include "catq/unionfind.hpp"

namespace catq {

const Context& Presheaf::at(int obj) const {
  auto it = sets.find(obj);
  if (it == sets.end())
    throw MalformedInput("presheaf has no set at object " + std::to_string(obj));
  return it->second;
}

const SetMap& Presheaf::action(int morphism) const {
  auto it = actions.find(morphism);
  if (it == actions.end())
    throw MalformedInput("presheaf has no action for morphism " + std::to_string(morphism));
  return it->second;
}

LawReport check_presheaf(const Presheaf& p) {
  if (!p.base) throw MalformedInput("presheaf has no base category");
  const FinCategory& b = *p.base;
  LawReport rep;

  rep.note_law("sets-total");
  for (int obj : b.objects) {
    ++rep.instances;
    if (!p.sets.count(obj)) {
      rep.fail("sets-total", {obj}, "no set assigned at an object");
      return rep;
    }
  }
  for (const auto& [obj, ignored] : p.sets) {
    (void)ignored;
    if (!b.has_object(obj))
      throw MalformedInput("presheaf assigns a set to unknown object " + std::to_string(obj));
  }

  rep.note_law("action-endpoints");
  for (const Morphism& m : b.morphisms) {
    ++rep.instances;
    auto it = p.actions.find(m.id);
    if (it == p.actions.end()) {
      rep.fail("action-endpoints", {m.id}, "no action assigned for a morphism");
      return rep;
    }
    if (it->second.from != p.at(m.tgt) || it->second.to != p.at(m.src)) {
      rep.fail("action-endpoints", {m.id},
               "action does not run from the target's set to the source's set");
      return rep;
    }
  }
  for (const auto& [mid, ignored] : p.actions) {
    (void)ignored;
    if (!b.has_morphism(mid))
      throw MalformedInput("presheaf has an action for unknown morphism " + std::to_string(mid));
  }

  rep.note_law("action-identity");
  for (int obj : b.objects) {
    ++rep.instances;
    if (!(p.action(b.id_of(obj)) == SetMap::identity(p.at(obj)))) {
      rep.fail("action-identity", {obj}, "identity morphism does not act as the identity");
    }
  }

  rep.note_law("action-composition");
  for (const Morphism& f : b.morphisms) {
    for (int g : b.out_of(f.tgt)) {
      ++rep.instances;
      const int gf = b.compose(g, f.id);
      // Contravariance: (g.f)^* = f^* . g^*.
      if (!(p.action(gf) == compose_maps(p.action(f.id), p.action(g)))) {
        rep.fail("action-composition", {g, f.id, gf},
                 "composite morphism does not act as the reversed composite of actions");
        return rep;
      }
    }
  }
  return rep;
}

const SetMap& PresheafMorphism::at(int obj) const {
  auto it = component.find(obj);
  if (it == component.end())
    throw MalformedInput("presheaf morphism lacks a component at object " + std::to_string(obj));
  return it->second;
}

LawReport check_presheaf_morphism(const PresheafMorphism& m) {
  if (!m.source.base || !m.target.base) throw MalformedInput("presheaf morphism lacks a base");
  if (m.source.base != m.target.base)
    throw BaseMismatch("presheaf morphism: source and target bases differ");
  const FinCategory& b = *m.source.base;
  LawReport rep;

  rep.note_law("components-total");
  rep.note_law("component-endpoints");
  for (int obj : b.objects) {
    ++rep.instances;
    auto it = m.component.find(obj);
    if (it == m.component.end()) {
      rep.fail("components-total", {obj}, "no component at an object");
      return rep;
    }
    if (it->second.from != m.source.at(obj) || it->second.to != m.target.at(obj)) {
      rep.fail("component-endpoints", {obj},
               "component does not run between the pointwise sets");
      return rep;
    }
  }

  rep.note_law("naturality");
  for (const Morphism& f : b.morphisms) {
    ++rep.instances;
    // component(src) . source.action(f) == target.action(f) . component(tgt)
    if (!(compose_maps(m.at(f.src), m.source.action(f.id)) ==
          compose_maps(m.target.action(f.id), m.at(f.tgt)))) {
      rep.fail("naturality", {f.id}, "naturality square fails at a morphism");
    }
  }
  return rep;
}

std::pair<Presheaf, PresheafMorphism> extend_presheaf(const Presheaf& gamma,
                                                      const Presheaf& a) {
  if (!gamma.base || !a.base) throw MalformedInput("presheaf extension: missing base");
  if (gamma.base != a.base) throw BaseMismatch("presheaf extension: bases differ");
  const FinCategory& b = *gamma.base;

  Presheaf prod;
  prod.base = gamma.base;
  for (int obj : b.objects) {
    std::vector<Elem> elems;
    for (const Elem& g : gamma.at(obj).elements)
      for (const Elem& x : a.at(obj).elements) elems.push_back(Elem::pair(g, x));
    prod.sets.emplace(obj, Context(std::move(elems)));
  }
  for (const Morphism& m : b.morphisms) {
    const Context& from = prod.at(m.tgt);
    const Context& to = prod.at(m.src);
    const SetMap& ga = gamma.action(m.id);
    const SetMap& aa = a.action(m.id);
    std::vector<int> tab;
    tab.reserve(static_cast<std::size_t>(from.size()));
    for (const Elem& e : from.elements)
      tab.push_back(to.index_of(Elem::pair(ga.apply(e.first()), aa.apply(e.second()))));
    prod.actions.emplace(m.id, SetMap(from, to, std::move(tab)));
  }

  PresheafMorphism pi;
  pi.source = prod;
  pi.target = gamma;
  for (int obj : b.objects) {
    const Context& from = prod.at(obj);
    std::vector<int> tab;
    tab.reserve(static_cast<std::size_t>(from.size()));
    for (const Elem& e : from.elements) tab.push_back(gamma.at(obj).index_of(e.first()));
    pi.component.emplace(obj, SetMap(from, gamma.at(obj), std::move(tab)));
  }
  return {std::move(prod), std::move(pi)};
}

Presheaf presheaf_of_context(const Context& c) {
  // All context presheaves live over the same one-object base, so that any
  // two of them can be combined without a base mismatch.
  static const CatPtr terminal = std::make_shared<FinCategory>(make_terminal_category());
  Presheaf p;
  p.base = terminal;
  p.sets.emplace(0, c);
  p.actions.emplace(0, SetMap::identity(c));
  return p;
}

// ---------------------------------------------------------------------------
// Sub-presheaves
// ---------------------------------------------------------------------------

SubPresheaf full_subpresheaf(const Presheaf& p) {
  SubPresheaf s;
  for (int obj : p.base->objects)
    s.at.emplace(obj, Predicate(p.at(obj), full_mask(p.at(obj).size())));
  return s;
}

SubPresheaf empty_subpresheaf(const Presheaf& p) {
  SubPresheaf s;
  for (int obj : p.base->objects) s.at.emplace(obj, Predicate(p.at(obj)));
  return s;
}

bool is_action_closed(const Presheaf& p, const SubPresheaf& s) {
  for (int obj : p.base->objects) {
    auto it = s.at.find(obj);
    if (it == s.at.end() || it->second.over != p.at(obj)) return false;
  }
  for (const Morphism& m : p.base->morphisms) {
    const SetMap& act = p.action(m.id);
    const Predicate& over_tgt = s.at.at(m.tgt);
    const Predicate& over_src = s.at.at(m.src);
    for (int i = 0; i < act.from.size(); ++i)
      if (over_tgt.test(i) && !over_src.test(act.apply_index(i))) return false;
  }
  return true;
}

void require_subpresheaf(const Presheaf& p, const SubPresheaf& s, const char* what) {
  if (!is_action_closed(p, s))
    throw NotSubpresheaf(std::string(what) + ": the predicate family is not action-closed");
}

namespace {

/// Bit layout over the concatenated pointwise sets, in base object order.
struct BitLayout {
  std::unordered_map<int, int> offset;
  int total = 0;

  explicit BitLayout(const Presheaf& p) {
    for (int obj : p.base->objects) {
      offset[obj] = total;
      total += p.at(obj).size();
    }
  }

  std::uint64_t encode(const Presheaf& p, const SubPresheaf& s) const {
    std::uint64_t m = 0;
    for (int obj : p.base->objects)
      m |= s.at.at(obj).bits << offset.at(obj);
    return m;
  }

  SubPresheaf decode(const Presheaf& p, std::uint64_t m) const {
    SubPresheaf s;
    for (int obj : p.base->objects) {
      const int n = p.at(obj).size();
      s.at.emplace(obj, Predicate(p.at(obj), (m >> offset.at(obj)) & full_mask(n)));
    }
    return s;
  }
};

}  // namespace

std::vector<SubPresheaf> all_subpresheaves(const Presheaf& p, long long cap) {
  BitLayout layout(p);
  if (layout.total >= 63 || (1ll << layout.total) > cap)
    throw SizeCapExceeded("sub-presheaf enumeration: too many pointwise elements");
  std::vector<SubPresheaf> out;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << layout.total); ++m) {
    SubPresheaf s = layout.decode(p, m);
    if (is_action_closed(p, s)) out.push_back(std::move(s));
  }
  return out;
}

SubPresheaf reindex_presheaf(const SubPresheaf& psi, const PresheafMorphism& pi) {
  require_subpresheaf(pi.target, psi, "reindexing");
  SubPresheaf out;
  for (int obj : pi.source.base->objects) {
    const SetMap& comp = pi.at(obj);
    out.at.emplace(obj, Predicate(pi.source.at(obj),
                                  preimage_mask(comp, psi.at.at(obj).bits)));
  }
  return out;
}

SubPresheaf lan(const SubPresheaf& phi, const PresheafMorphism& pi) {
  require_subpresheaf(pi.source, phi, "left Kan quantifier");
  const FinCategory& b = *pi.source.base;
  const Presheaf& total = pi.source;
  const Presheaf& base_ps = pi.target;

  SubPresheaf out;
  for (int c : b.objects) {
    Predicate result(base_ps.at(c));
    for (int x = 0; x < base_ps.at(c).size(); ++x) {
      // Comma fiber at (c, x): pairs (f : c -> c', u in phi(c')) whose
      // transported projection lands on x.
      struct Node { int f; int u; };
      std::vector<Node> nodes;
      for (int f : b.out_of(c)) {
        const int cp = b.tgt(f);
        const SetMap& transport = base_ps.action(f);  // base(c') -> base(c)
        const SetMap& proj = pi.at(cp);
        const Predicate& members = phi.at.at(cp);
        for (int u = 0; u < total.at(cp).size(); ++u) {
          if (!members.test(u)) continue;
          if (transport.apply_index(proj.apply_index(u)) == x) nodes.push_back({f, u});
        }
      }
      // Zig-zag edges: m : c1 -> c2 with m.f1 = f2 and phi-action(m)(u2) = u1.
      UnionFind uf(static_cast<int>(nodes.size()));
      for (std::size_t i = 0; i < nodes.size(); ++i) {
        for (std::size_t j = 0; j < nodes.size(); ++j) {
          if (i == j) continue;
          const int c1 = b.tgt(nodes[i].f), c2 = b.tgt(nodes[j].f);
          for (int m : b.hom(c1, c2)) {
            if (b.compose(m, nodes[i].f) != nodes[j].f) continue;
            if (total.action(m).apply_index(nodes[j].u) == nodes[i].u)
              uf.unite(static_cast<int>(i), static_cast<int>(j));
          }
        }
      }
      if (uf.classes() >= 1) result.set(x);
    }
    out.at.emplace(c, std::move(result));
  }
  return out;
}

SubPresheaf ran(const SubPresheaf& phi, const PresheafMorphism& pi) {
  require_subpresheaf(pi.source, phi, "right Kan quantifier");
  const FinCategory& b = *pi.source.base;
  const Presheaf& total = pi.source;
  const Presheaf& base_ps = pi.target;

  SubPresheaf out;
  for (int c : b.objects) {
    Predicate result(base_ps.at(c));
    for (int x = 0; x < base_ps.at(c).size(); ++x) {
      bool ok = true;
      // For every f : c' -> c, every fiber element over the transported x
      // must already satisfy phi at c'.
      for (int f : b.into(c)) {
        const int cp = b.src(f);
        const int tx = base_ps.action(f).apply_index(x);  // in base(c')
        const SetMap& proj = pi.at(cp);
        const Predicate& members = phi.at.at(cp);
        for (int u = 0; u < total.at(cp).size(); ++u) {
          if (proj.apply_index(u) == tx && !members.test(u)) {
            ok = false;
            break;
          }
        }
        if (!ok) break;
      }
      if (ok) result.set(x);
    }
    out.at.emplace(c, std::move(result));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Lattices and the Kan adjunctions
// ---------------------------------------------------------------------------

int PresheafLattice::arrow(std::uint64_t s, std::uint64_t t) const {
  auto it = arrow_id_.find((s << 32) | t);
  if (it == arrow_id_.end())
    throw EndpointMismatch("lattice arrow: the two masks are not nested closed sub-presheaves");
  return it->second;
}

std::uint64_t PresheafLattice::encode(const SubPresheaf& s) const {
  std::uint64_t m = 0;
  for (const auto& [obj, off] : offset) m |= s.at.at(obj).bits << off;
  return m;
}

SubPresheaf PresheafLattice::decode(std::uint64_t mask) const {
  SubPresheaf s;
  for (const auto& [obj, off] : offset) {
    const int n = presheaf.at(obj).size();
    s.at.emplace(obj, Predicate(presheaf.at(obj), (mask >> off) & full_mask(n)));
  }
  return s;
}

PresheafLattice make_presheaf_lattice(const Presheaf& p, const PresheafCaps& caps) {
  if (static_cast<int>(p.base->objects.size()) > caps.max_base_objects)
    throw SizeCapExceeded("presheaf lattice: too many base objects");
  if (static_cast<int>(p.base->morphisms.size()) > caps.max_base_morphisms)
    throw SizeCapExceeded("presheaf lattice: too many base morphisms");

  PresheafLattice lat;
  lat.presheaf = p;
  BitLayout layout(p);
  lat.offset = layout.offset;
  lat.total_bits = layout.total;
  if (layout.total > caps.max_total_bits)
    throw SizeCapExceeded("presheaf lattice: too many pointwise elements");

  for (std::uint64_t m = 0; m < (std::uint64_t{1} << layout.total); ++m)
    if (is_action_closed(p, layout.decode(p, m))) lat.closed.push_back(m);

  FinCategory cat;
  for (std::uint64_t m : lat.closed) cat.objects.push_back(static_cast<int>(m));
  int next = 0;
  for (std::uint64_t s : lat.closed) {
    for (std::uint64_t t : lat.closed) {
      if ((s & ~t) != 0) continue;
      const int id = next++;
      cat.morphisms.push_back({id, static_cast<int>(s), static_cast<int>(t)});
      lat.arrow_id_[(s << 32) | t] = id;
      if (s == t) cat.identity[static_cast<int>(s)] = id;
    }
  }
  for (std::uint64_t s : lat.closed)
    for (std::uint64_t t : lat.closed) {
      if ((s & ~t) != 0) continue;
      for (std::uint64_t u : lat.closed) {
        if ((t & ~u) != 0) continue;
        cat.compose_table[FinCategory::key(lat.arrow((t), (u)), lat.arrow(s, t))] =
            lat.arrow(s, u);
      }
    }
  cat.rebuild_index();
  lat.cat = std::make_shared<FinCategory>(std::move(cat));
  return lat;
}

namespace {

/// Monotone map between lattices as a functor.
template <typename F>
FinFunctor lattice_functor(const PresheafLattice& src, const PresheafLattice& tgt, F&& f) {
  FinFunctor fun;
  fun.source = src.cat;
  fun.target = tgt.cat;
  for (std::uint64_t s : src.closed) {
    const std::uint64_t img = f(s);
    fun.omap[static_cast<int>(s)] = static_cast<int>(img);
  }
  for (const Morphism& m : src.cat->morphisms)
    fun.mmap[m.id] = tgt.arrow(f(static_cast<std::uint64_t>(m.src)),
                               f(static_cast<std::uint64_t>(m.tgt)));
  return fun;
}

void prefix_merge(LawReport& rep, const LawReport& sub, const std::string& prefix) {
  for (const std::string& law : sub.laws_checked) rep.note_law(prefix + law);
  rep.instances += sub.instances;
  for (const Witness& w : sub.failures) rep.fail(prefix + w.law, w.ids, w.detail);
}

}  // namespace

KanModel make_kan_model(const Presheaf& gamma, const Presheaf& a,
                        const PresheafCaps& caps) {
  for (const Presheaf* ps : {&gamma, &a})
    for (int obj : ps->base->objects)
      if (ps->at(obj).size() > caps.max_set)
        throw SizeCapExceeded("presheaf extension: a pointwise set exceeds the cap");

  KanModel km;
  km.gamma = gamma;
  km.a = a;
  auto [prod, pi] = extend_presheaf(gamma, a);
  km.product = std::move(prod);
  km.projection = std::move(pi);
  km.base_lattice = make_presheaf_lattice(gamma, caps);
  km.total_lattice = make_presheaf_lattice(km.product, caps);

  const PresheafLattice& bl = km.base_lattice;
  const PresheafLattice& tl = km.total_lattice;
  const PresheafMorphism& proj = km.projection;

  auto do_reindex = [&](std::uint64_t mask) {
    return tl.encode(reindex_presheaf(bl.decode(mask), proj));
  };
  auto do_lan = [&](std::uint64_t mask) { return bl.encode(lan(tl.decode(mask), proj)); };
  auto do_ran = [&](std::uint64_t mask) { return bl.encode(ran(tl.decode(mask), proj)); };

  FinFunctor reindex_f = lattice_functor(bl, tl, do_reindex);
  FinFunctor lan_f = lattice_functor(tl, bl, do_lan);
  FinFunctor ran_f = lattice_functor(tl, bl, do_ran);

  // lan -| reindex
  km.exists_adj.left = lan_f;
  km.exists_adj.right = reindex_f;
  km.exists_adj.unit.from = identity_functor(tl.cat);
  km.exists_adj.unit.to = compose_functors(reindex_f, lan_f);
  for (std::uint64_t m : tl.closed)
    km.exists_adj.unit.component[static_cast<int>(m)] = tl.arrow(m, do_reindex(do_lan(m)));
  km.exists_adj.counit.from = compose_functors(lan_f, reindex_f);
  km.exists_adj.counit.to = identity_functor(bl.cat);
  for (std::uint64_t m : bl.closed)
    km.exists_adj.counit.component[static_cast<int>(m)] = bl.arrow(do_lan(do_reindex(m)), m);

  // reindex -| ran
  km.forall_adj.left = reindex_f;
  km.forall_adj.right = ran_f;
  km.forall_adj.unit.from = identity_functor(bl.cat);
  km.forall_adj.unit.to = compose_functors(ran_f, reindex_f);
  for (std::uint64_t m : bl.closed)
    km.forall_adj.unit.component[static_cast<int>(m)] = bl.arrow(m, do_ran(do_reindex(m)));
  km.forall_adj.counit.from = compose_functors(reindex_f, ran_f);
  km.forall_adj.counit.to = identity_functor(tl.cat);
  for (std::uint64_t m : tl.closed)
    km.forall_adj.counit.component[static_cast<int>(m)] = tl.arrow(do_reindex(do_ran(m)), m);

  return km;
}

LawReport verify_kan_adjunctions(const Presheaf& gamma, const Presheaf& a,
                                 const PresheafCaps& caps) {
  KanModel km = make_kan_model(gamma, a, caps);
  LawReport rep;
  prefix_merge(rep, verify_adjunction(km.exists_adj), "exists:");
  prefix_merge(rep, verify_adjunction(km.forall_adj), "forall:");
  return rep;
}

}  // namespace catq
