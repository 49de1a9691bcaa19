#include "catq/setmodel.hpp"

#include <string>

namespace catq {

ExtendedContext extend_context(const Context& gamma, const Context& a) {
  ExtendedContext e;
  e.base = gamma;
  e.fiber = a;
  std::vector<Elem> prod;
  std::vector<int> proj;
  prod.reserve(static_cast<std::size_t>(gamma.size()) * static_cast<std::size_t>(a.size()));
  for (int i = 0; i < gamma.size(); ++i) {
    for (int j = 0; j < a.size(); ++j) {
      prod.push_back(Elem::pair(gamma.elements[static_cast<std::size_t>(i)],
                                a.elements[static_cast<std::size_t>(j)]));
      proj.push_back(i);
    }
  }
  e.product = Context(std::move(prod));
  e.projection = SetMap(e.product, e.base, std::move(proj));
  return e;
}

namespace {

void require_over(const Predicate& p, const Context& c, const char* what) {
  if (p.over != c)
    throw ContextMismatch(std::string("predicate is not over the expected ") + what +
                          " context");
}

}  // namespace

Predicate reindex(const ExtendedContext& e, const Predicate& s) {
  require_over(s, e.base, "base");
  Predicate r(e.product);
  for (int i = 0; i < e.base.size(); ++i) {
    if (!s.test(i)) continue;
    for (int j = 0; j < e.fiber.size(); ++j) r.set(e.pair_index(i, j));
  }
  return r;
}

Predicate forall(const ExtendedContext& e, const Predicate& phi) {
  require_over(phi, e.product, "product");
  Predicate r(e.base);
  for (int i = 0; i < e.base.size(); ++i) {
    bool all = true;
    for (int j = 0; j < e.fiber.size(); ++j)
      if (!phi.test(e.pair_index(i, j))) { all = false; break; }
    if (all) r.set(i);
  }
  return r;
}

Predicate exists(const ExtendedContext& e, const Predicate& phi) {
  require_over(phi, e.product, "product");
  Predicate r(e.base);
  for (int i = 0; i < e.base.size(); ++i) {
    for (int j = 0; j < e.fiber.size(); ++j) {
      if (phi.test(e.pair_index(i, j))) {
        r.set(i);
        break;
      }
    }
  }
  return r;
}

SetMap second_projection(const ExtendedContext& e) {
  std::vector<int> tab;
  tab.reserve(static_cast<std::size_t>(e.product.size()));
  for (int i = 0; i < e.base.size(); ++i)
    for (int j = 0; j < e.fiber.size(); ++j) tab.push_back(j);
  return SetMap(e.product, e.fiber, std::move(tab));
}

SetMap pair_into_extension(const ExtendedContext& e, const SetMap& f, const SetMap& g) {
  if (f.from != g.from) throw ContextMismatch("pairing: the two maps have different sources");
  if (f.to != e.base) throw ContextMismatch("pairing: first map does not land in the base");
  if (g.to != e.fiber) throw ContextMismatch("pairing: second map does not land in the fiber");
  std::vector<int> tab(static_cast<std::size_t>(f.from.size()));
  for (int i = 0; i < f.from.size(); ++i)
    tab[static_cast<std::size_t>(i)] = e.pair_index(f.apply_index(i), g.apply_index(i));
  return SetMap(f.from, e.product, std::move(tab));
}

// ---------------------------------------------------------------------------
// Powerset posets
// ---------------------------------------------------------------------------

int SubsetPoset::arrow(std::uint64_t s, std::uint64_t t) const {
  if ((s & ~t) != 0)
    throw EndpointMismatch("no inclusion: first subset is not contained in the second");
  auto it = arrow_id_.find((s << 32) | t);
  if (it == arrow_id_.end())
    throw MalformedInput("subset mask outside the materialized poset");
  return it->second;
}

SubsetPoset make_subset_poset(const Context& c, int cap_elements) {
  const int n = c.size();
  if (n > cap_elements)
    throw SizeCapExceeded("powerset materialization over " + std::to_string(n) +
                          " elements exceeds the cap of " + std::to_string(cap_elements));
  const std::uint64_t count = std::uint64_t{1} << n;
  const std::uint64_t full = count - 1;

  SubsetPoset ps;
  ps.ground = c;
  auto cat = std::make_shared<FinCategory>();
  cat->objects.reserve(count);
  for (std::uint64_t s = 0; s < count; ++s) cat->objects.push_back(static_cast<int>(s));

  int next = 0;
  for (std::uint64_t s = 0; s < count; ++s) {
    // Supersets of s in ascending order.
    std::uint64_t t = s;
    while (true) {
      ps.arrow_id_[(s << 32) | t] = next;
      cat->morphisms.push_back({next, static_cast<int>(s), static_cast<int>(t)});
      if (s == t) cat->identity[static_cast<int>(s)] = next;
      ++next;
      if (t == full) break;
      t = (t + 1) | s;
    }
  }

  cat->compose_table.reserve(ps.arrow_id_.size() * 2);
  for (std::uint64_t t = 0; t < count; ++t) {
    // s runs over subsets of t, u over supersets of t.
    std::uint64_t s = t;
    while (true) {
      const int f = ps.arrow_id_.at((s << 32) | t);
      std::uint64_t u = t;
      while (true) {
        const int g = ps.arrow_id_.at((t << 32) | u);
        cat->compose_table[FinCategory::key(g, f)] = ps.arrow_id_.at((s << 32) | u);
        if (u == full) break;
        u = (u + 1) | t;
      }
      if (s == 0) break;
      s = (s - 1) & t;
    }
  }
  cat->rebuild_index();
  ps.cat = cat;
  return ps;
}

// ---------------------------------------------------------------------------
// Quantifier adjunctions over the posets
// ---------------------------------------------------------------------------

namespace {

/// Monotone-map functor between subset posets given by an object action.
template <typename F>
FinFunctor monotone_functor(const SubsetPoset& src, const SubsetPoset& tgt, F&& act) {
  FinFunctor f;
  f.source = src.cat;
  f.target = tgt.cat;
  for (int obj : src.cat->objects)
    f.omap[obj] = static_cast<int>(act(static_cast<std::uint64_t>(obj)));
  for (const Morphism& m : src.cat->morphisms)
    f.mmap[m.id] = tgt.arrow(act(static_cast<std::uint64_t>(m.src)),
                             act(static_cast<std::uint64_t>(m.tgt)));
  return f;
}

}  // namespace

SetQuantifierModel make_set_quantifier_model(const Context& gamma, const Context& a,
                                             int cap_elements) {
  if (gamma.size() > cap_elements || gamma.size() * a.size() > cap_elements)
    throw SizeCapExceeded("context extension exceeds the powerset cap of " +
                          std::to_string(cap_elements));
  SetQuantifierModel m;
  m.ext = extend_context(gamma, a);
  m.base = make_subset_poset(gamma, cap_elements);
  m.total = make_subset_poset(m.ext.product, cap_elements);

  auto sub_act = [&](std::uint64_t s) {
    return reindex(m.ext, Predicate(m.ext.base, s)).bits;
  };
  auto fa_act = [&](std::uint64_t phi) {
    return forall(m.ext, Predicate(m.ext.product, phi)).bits;
  };
  auto ex_act = [&](std::uint64_t phi) {
    return exists(m.ext, Predicate(m.ext.product, phi)).bits;
  };

  FinFunctor sub = monotone_functor(m.base, m.total, sub_act);
  FinFunctor fa = monotone_functor(m.total, m.base, fa_act);
  FinFunctor ex = monotone_functor(m.total, m.base, ex_act);

  // substitution -| forall
  m.forall_adj.left = sub;
  m.forall_adj.right = fa;
  m.forall_adj.unit.from = identity_functor(m.base.cat);
  m.forall_adj.unit.to = compose_functors(fa, sub);
  m.forall_adj.counit.from = compose_functors(sub, fa);
  m.forall_adj.counit.to = identity_functor(m.total.cat);
  for (int s : m.base.cat->objects)
    m.forall_adj.unit.component[s] =
        m.base.arrow(static_cast<std::uint64_t>(s),
                     fa_act(sub_act(static_cast<std::uint64_t>(s))));
  for (int phi : m.total.cat->objects)
    m.forall_adj.counit.component[phi] =
        m.total.arrow(sub_act(fa_act(static_cast<std::uint64_t>(phi))),
                      static_cast<std::uint64_t>(phi));

  // exists -| substitution
  m.exists_adj.left = ex;
  m.exists_adj.right = sub;
  m.exists_adj.unit.from = identity_functor(m.total.cat);
  m.exists_adj.unit.to = compose_functors(sub, ex);
  m.exists_adj.counit.from = compose_functors(ex, sub);
  m.exists_adj.counit.to = identity_functor(m.base.cat);
  for (int phi : m.total.cat->objects)
    m.exists_adj.unit.component[phi] =
        m.total.arrow(static_cast<std::uint64_t>(phi),
                      sub_act(ex_act(static_cast<std::uint64_t>(phi))));
  for (int s : m.base.cat->objects)
    m.exists_adj.counit.component[s] =
        m.base.arrow(ex_act(sub_act(static_cast<std::uint64_t>(s))),
                     static_cast<std::uint64_t>(s));

  return m;
}

Adjunction as_adjunction_forall(const Context& gamma, const Context& a, int cap_elements) {
  return make_set_quantifier_model(gamma, a, cap_elements).forall_adj;
}

Adjunction as_adjunction_exists(const Context& gamma, const Context& a, int cap_elements) {
  return make_set_quantifier_model(gamma, a, cap_elements).exists_adj;
}

LiftedAdjunctionSquare make_lifted_square(const Context& gamma, const Context& delta,
                                          const Context& a, const SetMap& u,
                                          int cap_elements) {
  if (u.from != gamma || u.to != delta)
    throw ContextMismatch("lifted square: the base map must run from the first context to the second");

  LiftedAdjunctionSquare sq;
  sq.label = "reindex-" + gamma.label() + "->" + delta.label();

  SetQuantifierModel src = make_set_quantifier_model(gamma, a, cap_elements);
  SetQuantifierModel tgt = make_set_quantifier_model(delta, a, cap_elements);

  // u x id_A on the product contexts.
  std::vector<int> tab;
  tab.reserve(static_cast<std::size_t>(src.ext.product.size()));
  for (int i = 0; i < gamma.size(); ++i)
    for (int j = 0; j < a.size(); ++j)
      tab.push_back(tgt.ext.pair_index(u.apply_index(i), j));
  SetMap u_ext(src.ext.product, tgt.ext.product, std::move(tab));

  FinFunctor base_reindex = [&] {
    FinFunctor f;
    f.source = tgt.base.cat;
    f.target = src.base.cat;
    for (int obj : tgt.base.cat->objects)
      f.omap[obj] = static_cast<int>(preimage_mask(u, static_cast<std::uint64_t>(obj)));
    for (const Morphism& mm : tgt.base.cat->morphisms)
      f.mmap[mm.id] = src.base.arrow(preimage_mask(u, static_cast<std::uint64_t>(mm.src)),
                                     preimage_mask(u, static_cast<std::uint64_t>(mm.tgt)));
    return f;
  }();
  FinFunctor ext_reindex = [&] {
    FinFunctor f;
    f.source = tgt.total.cat;
    f.target = src.total.cat;
    for (int obj : tgt.total.cat->objects)
      f.omap[obj] = static_cast<int>(preimage_mask(u_ext, static_cast<std::uint64_t>(obj)));
    for (const Morphism& mm : tgt.total.cat->morphisms)
      f.mmap[mm.id] = src.total.arrow(preimage_mask(u_ext, static_cast<std::uint64_t>(mm.src)),
                                      preimage_mask(u_ext, static_cast<std::uint64_t>(mm.tgt)));
    return f;
  }();

  sq.over_source = src.forall_adj;
  sq.over_target = tgt.forall_adj;
  sq.base_reindex = base_reindex;
  sq.ext_reindex = ext_reindex;

  // Both composite functors agree on the nose here, so the comparison
  // cells have identity components.
  NatTransform lam;
  lam.from = compose_functors(src.forall_adj.left, base_reindex);
  lam.to = compose_functors(ext_reindex, tgt.forall_adj.left);
  for (int obj : tgt.base.cat->objects)
    lam.component[obj] = src.total.cat->id_of(lam.from.on_object(obj));
  sq.left_cell = lam;

  NatTransform mu;
  mu.from = compose_functors(base_reindex, tgt.forall_adj.right);
  mu.to = compose_functors(src.forall_adj.right, ext_reindex);
  for (int obj : tgt.total.cat->objects)
    mu.component[obj] = src.base.cat->id_of(mu.from.on_object(obj));
  sq.right_cell = mu;

  return sq;
}

}  // namespace catq
