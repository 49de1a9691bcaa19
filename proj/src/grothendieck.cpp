#include "catq/grothendieck.hpp"

#include <algorithm>
#include <array>

namespace catq {

namespace {

void prefix_merge(LawReport& into, const LawReport& part, const std::string& prefix) {
  LawReport renamed;
  renamed.instances = part.instances;
  for (const std::string& law : part.laws_checked) renamed.laws_checked.push_back(prefix + law);
  for (const Witness& w : part.failures) {
    Witness copy = w;
    copy.law = prefix + w.law;
    renamed.failures.push_back(std::move(copy));
  }
  into.merge(renamed);
}

}  // namespace

// ---------------------------------------------------------------------------
// IndexedModel accessors
// ---------------------------------------------------------------------------

const FinCategory& IndexedModel::fiber_at(int base_obj) const {
  return *fiber_ptr(base_obj);
}

CatPtr IndexedModel::fiber_ptr(int base_obj) const {
  auto it = fiber.find(base_obj);
  if (it == fiber.end() || !it->second)
    throw MalformedInput("indexed model: no fiber over base object " + std::to_string(base_obj));
  return it->second;
}

const FinFunctor& IndexedModel::reindex_along(int base_morphism) const {
  auto it = reindex.find(base_morphism);
  if (it == reindex.end())
    throw MalformedInput("indexed model: no reindexing functor for base morphism " +
                         std::to_string(base_morphism));
  return it->second;
}

// ---------------------------------------------------------------------------
// Indexed-model laws
// ---------------------------------------------------------------------------

LawReport check_indexed_model(const IndexedModel& m) {
  if (!m.base) throw MalformedInput("indexed model: missing base category");
  const FinCategory& base = *m.base;
  for (const auto& [obj, cat] : m.fiber)
    if (!base.has_object(obj))
      throw MalformedInput("indexed model: fiber over unknown base object " + std::to_string(obj));
  for (const auto& [mor, fun] : m.reindex) {
    (void)fun;
    if (!base.has_morphism(mor))
      throw MalformedInput("indexed model: reindexing along unknown base morphism " +
                           std::to_string(mor));
  }

  LawReport rep;
  rep.note_law("fibers-total");
  for (int obj : base.objects) {
    ++rep.instances;
    if (!m.fiber.count(obj) || !m.fiber.at(obj)) {
      rep.fail("fibers-total", {obj}, "base object has no fiber category");
      return rep;
    }
  }

  rep.note_law("reindex-endpoints");
  for (const Morphism& f : base.morphisms) {
    ++rep.instances;
    auto it = m.reindex.find(f.id);
    if (it == m.reindex.end()) {
      rep.fail("reindex-endpoints", {f.id}, "base morphism has no reindexing functor");
      return rep;
    }
    const FinFunctor& r = it->second;
    if (r.source != m.fiber.at(f.tgt) || r.target != m.fiber.at(f.src)) {
      rep.fail("reindex-endpoints", {f.id},
               "reindexing along f must run from the fiber over tgt(f) to the fiber over src(f)");
      return rep;
    }
  }

  for (const Morphism& f : base.morphisms) {
    LawReport part = check_functor(m.reindex.at(f.id));
    if (!part.pass()) {
      Witness w = part.failures.front();
      w.ids.insert(w.ids.begin(), f.id);
      LawReport tagged;
      tagged.instances = part.instances;
      for (const std::string& law : part.laws_checked)
        tagged.laws_checked.push_back("reindex:" + law);
      w.law = "reindex:" + w.law;
      tagged.failures.push_back(std::move(w));
      rep.merge(tagged);
      return rep;
    }
    prefix_merge(rep, part, "reindex:");
  }

  rep.note_law("reindex-identity");
  for (int obj : base.objects) {
    ++rep.instances;
    const FinFunctor& r = m.reindex.at(base.id_of(obj));
    if (!same_functor(r, identity_functor(m.fiber.at(obj)))) {
      rep.fail("reindex-identity", {obj},
               "reindexing along an identity is not the identity functor");
      break;
    }
  }

  rep.note_law("reindex-composition");
  for (const Morphism& g : base.morphisms) {
    for (const Morphism& f : base.morphisms) {
      if (f.tgt != g.src) continue;
      ++rep.instances;
      int gf = base.compose(g.id, f.id);
      FinFunctor expected = compose_functors(m.reindex.at(f.id), m.reindex.at(g.id));
      if (!same_functor(m.reindex.at(gf), expected)) {
        rep.fail("reindex-composition", {g.id, f.id, gf},
                 "reindex(g.f) differs from reindex(f) . reindex(g)");
        return rep;
      }
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Total category
// ---------------------------------------------------------------------------

int TotalCategory::object_of(int base_obj, int fiber_obj) const {
  auto it = obj_index_.find({base_obj, fiber_obj});
  if (it == obj_index_.end())
    throw MalformedInput("total category: no object (" + std::to_string(base_obj) + ", " +
                         std::to_string(fiber_obj) + ")");
  return it->second;
}

int TotalCategory::morphism_of(int base_morphism, int fiber_morphism, int target_fiber_obj) const {
  auto it = mor_index_.find(std::array<int, 3>{base_morphism, fiber_morphism, target_fiber_obj});
  if (it == mor_index_.end())
    throw MalformedInput("total category: no morphism (" + std::to_string(base_morphism) + ", " +
                         std::to_string(fiber_morphism) + ") into fiber object " +
                         std::to_string(target_fiber_obj));
  return it->second;
}

TotalCategory build_total(const IndexedModel& m, const GrothCaps& caps) {
  LawReport model_rep = check_indexed_model(m);
  if (!model_rep.pass())
    throw MalformedInput("total category: indexed model fails its laws: " +
                         model_rep.failures.front().law + " (" +
                         model_rep.failures.front().detail + ")");

  const FinCategory& base = *m.base;
  TotalCategory t;
  FinCategory cat;

  // Objects: pairs (base object, fiber object), lexicographic.
  long long n_objects = 0;
  for (int b : base.objects) n_objects += static_cast<long long>(m.fiber_at(b).objects.size());
  if (n_objects > caps.max_objects)
    throw SizeCapExceeded("total category would have " + std::to_string(n_objects) +
                          " objects (cap " + std::to_string(caps.max_objects) + ")");
  for (int b : base.objects) {
    for (int x : m.fiber_at(b).objects) {
      int id = static_cast<int>(t.object_pairs.size());
      t.object_pairs.push_back({b, x});
      t.obj_index_.emplace(std::pair<int, int>{b, x}, id);
      cat.objects.push_back(id);
    }
  }

  // Morphisms: for f: X -> Y, target fiber object psi over Y, and
  // alpha: phi -> reindex(f)(psi) over X, one morphism (f, alpha, psi).
  for (const Morphism& f : base.morphisms) {
    const FinCategory& fib_src = m.fiber_at(f.src);
    const FinFunctor& r = m.reindex.at(f.id);
    for (int psi : m.fiber_at(f.tgt).objects) {
      int pulled = r.on_object(psi);
      for (int alpha : fib_src.into(pulled)) {
        if (static_cast<long long>(t.morphism_triples.size()) >= caps.max_morphisms)
          throw SizeCapExceeded("total category exceeds the morphism cap of " +
                                std::to_string(caps.max_morphisms));
        int id = static_cast<int>(t.morphism_triples.size());
        t.morphism_triples.push_back({f.id, alpha, psi});
        t.mor_index_.emplace(std::array<int, 3>{f.id, alpha, psi}, id);
        cat.morphisms.push_back(Morphism{id, t.object_of(f.src, fib_src.src(alpha)),
                                         t.object_of(f.tgt, psi)});
      }
    }
  }

  // Identities: (id_X, id_phi, phi).
  for (int b : base.objects) {
    const FinCategory& fib = m.fiber_at(b);
    for (int x : fib.objects)
      cat.identity[t.object_of(b, x)] = t.morphism_of(base.id_of(b), fib.id_of(x), x);
  }

  // Composition: (g, beta, chi) . (f, alpha, psi) = (g.f, reindex(f)(beta) . alpha, chi).
  for (std::size_t j = 0; j < t.morphism_triples.size(); ++j) {
    const auto& [g_id, beta, chi] = t.morphism_triples[j];
    const Morphism& g = base.morphism(g_id);
    for (std::size_t i = 0; i < t.morphism_triples.size(); ++i) {
      const auto& [f_id, alpha, psi] = t.morphism_triples[i];
      const Morphism& f = base.morphism(f_id);
      if (f.tgt != g.src) continue;
      // The source object of (g, beta) is (src(g), src(beta)); it must equal
      // the target (tgt(f), psi) of (f, alpha).
      if (m.fiber_at(g.src).src(beta) != psi) continue;
      int gf = base.compose(g_id, f_id);
      int second = m.fiber_at(f.src).compose(m.reindex.at(f_id).on_morphism(beta), alpha);
      cat.compose_table[FinCategory::key(static_cast<int>(j), static_cast<int>(i))] =
          t.morphism_of(gf, second, chi);
    }
  }

  cat.rebuild_index();
  t.category = std::make_shared<FinCategory>(std::move(cat));

  t.projection.source = t.category;
  t.projection.target = m.base;
  for (std::size_t i = 0; i < t.object_pairs.size(); ++i)
    t.projection.omap[static_cast<int>(i)] = t.object_pairs[i].first;
  for (std::size_t i = 0; i < t.morphism_triples.size(); ++i)
    t.projection.mmap[static_cast<int>(i)] = t.morphism_triples[i][0];
  return t;
}

// ---------------------------------------------------------------------------
// Cartesian lifts
// ---------------------------------------------------------------------------

LawReport check_cartesian_lifts(const TotalCategory& t, const IndexedModel& m) {
  const FinCategory& base = *m.base;
  const FinCategory& total = *t.category;
  LawReport rep;
  rep.note_law("lift-in-category");
  rep.note_law("cartesian-existence");
  rep.note_law("cartesian-uniqueness");

  for (const Morphism& f : base.morphisms) {
    const FinFunctor& r = m.reindex.at(f.id);
    const FinCategory& fib_src = m.fiber_at(f.src);
    for (int psi : m.fiber_at(f.tgt).objects) {
      int pulled = r.on_object(psi);
      ++rep.instances;
      int lift = -1;
      try {
        lift = t.morphism_of(f.id, fib_src.id_of(pulled), psi);
      } catch (const MalformedInput&) {
        rep.fail("lift-in-category", {f.id, psi}, "canonical lift is not a total morphism");
        continue;
      }
      int lift_tgt = total.tgt(lift);

      // Every morphism into (Y, psi), against every base factorization.
      for (int h_total : total.into(lift_tgt)) {
        int h_base = t.morphism_triples[h_total][0];
        int e_total = total.src(h_total);
        int e_base = t.object_pairs[e_total].first;
        for (int u : base.out_of(e_base)) {
          if (base.tgt(u) != f.src) continue;
          if (base.compose(f.id, u) != h_base) continue;
          ++rep.instances;
          int found = 0;
          int src_lift = total.src(lift);
          for (int cand : total.into(src_lift)) {
            if (total.src(cand) != e_total) continue;
            if (t.morphism_triples[cand][0] != u) continue;
            if (total.compose(lift, cand) == h_total) ++found;
          }
          if (found == 0 && !rep.failed("cartesian-existence"))
            rep.fail("cartesian-existence", {f.id, psi, h_total, u},
                     "no factorization through the canonical lift over this base map");
          if (found > 1 && !rep.failed("cartesian-uniqueness"))
            rep.fail("cartesian-uniqueness", {f.id, psi, h_total, u},
                     std::to_string(found) + " distinct factorizations through the canonical lift");
        }
      }
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Fiber recovery
// ---------------------------------------------------------------------------

LawReport check_fiber_recovery(const TotalCategory& t, const IndexedModel& m) {
  const FinCategory& base = *m.base;
  const FinCategory& total = *t.category;
  LawReport rep;
  rep.note_law("fiber-objects");
  rep.note_law("fiber-morphisms");
  rep.note_law("fiber-composition");

  for (int b : base.objects) {
    const FinCategory& fib = m.fiber_at(b);
    int id_b = base.id_of(b);

    ++rep.instances;
    long long over_b = 0;
    for (const auto& [bo, fo] : t.object_pairs) {
      (void)fo;
      if (bo == b) ++over_b;
    }
    if (over_b != static_cast<long long>(fib.objects.size())) {
      rep.fail("fiber-objects", {b},
               "total objects over the base object do not match the fiber objects");
      continue;
    }

    // Total morphisms projecting to id_b are exactly the pairs (id_b, alpha).
    long long over_id = 0;
    for (const auto& triple : t.morphism_triples)
      if (triple[0] == id_b) ++over_id;
    ++rep.instances;
    if (over_id != static_cast<long long>(fib.morphisms.size())) {
      rep.fail("fiber-morphisms", {b},
               "total morphisms over the identity do not match the fiber morphisms");
      continue;
    }
    for (const Morphism& alpha : fib.morphisms) {
      ++rep.instances;
      int image = -1;
      try {
        image = t.morphism_of(id_b, alpha.id, alpha.tgt);
      } catch (const MalformedInput&) {
        rep.fail("fiber-morphisms", {b, alpha.id}, "fiber morphism has no total counterpart");
        break;
      }
      if (total.src(image) != t.object_of(b, alpha.src) ||
          total.tgt(image) != t.object_of(b, alpha.tgt)) {
        rep.fail("fiber-morphisms", {b, alpha.id}, "total counterpart has wrong endpoints");
        break;
      }
    }

    for (const Morphism& g : fib.morphisms) {
      for (const Morphism& f : fib.morphisms) {
        if (f.tgt != g.src) continue;
        ++rep.instances;
        int lhs = t.morphism_of(id_b, fib.compose(g.id, f.id), g.tgt);
        int rhs = total.compose(t.morphism_of(id_b, g.id, g.tgt),
                                t.morphism_of(id_b, f.id, f.tgt));
        if (lhs != rhs) {
          rep.fail("fiber-composition", {b, g.id, f.id},
                   "pairing with the identity does not preserve composition");
          return rep;
        }
      }
    }
  }
  return rep;
}

}  // namespace catq
