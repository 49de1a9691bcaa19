#include "catq/fincat.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace catq {

const std::vector<int> FinCategory::empty_vec_{};

void FinCategory::rebuild_index() {
  object_pos_.clear();
  morph_pos_.clear();
  out_.clear();
  in_.clear();
  for (std::size_t i = 0; i < objects.size(); ++i) {
    if (!object_pos_.emplace(objects[i], static_cast<int>(i)).second)
      throw MalformedInput("duplicate object id " + std::to_string(objects[i]));
  }
  for (std::size_t i = 0; i < morphisms.size(); ++i) {
    const Morphism& m = morphisms[i];
    if (!morph_pos_.emplace(m.id, static_cast<int>(i)).second)
      throw MalformedInput("duplicate morphism id " + std::to_string(m.id));
    if (!has_object(m.src))
      throw MalformedInput("morphism " + std::to_string(m.id) +
                           " has unknown source object " + std::to_string(m.src));
    if (!has_object(m.tgt))
      throw MalformedInput("morphism " + std::to_string(m.id) +
                           " has unknown target object " + std::to_string(m.tgt));
    out_[m.src].push_back(m.id);
    in_[m.tgt].push_back(m.id);
  }
  for (auto& [obj, v] : out_) std::sort(v.begin(), v.end());
  for (auto& [obj, v] : in_) std::sort(v.begin(), v.end());
}

const Morphism& FinCategory::morphism(int id) const {
  auto it = morph_pos_.find(id);
  if (it == morph_pos_.end())
    throw MalformedInput("unknown morphism id " + std::to_string(id));
  return morphisms[static_cast<std::size_t>(it->second)];
}

int FinCategory::id_of(int obj) const {
  auto it = identity.find(obj);
  if (it == identity.end())
    throw MalformedInput("no identity recorded for object " + std::to_string(obj));
  return it->second;
}

int FinCategory::compose(int g, int f) const {
  auto r = compose_opt(g, f);
  if (!r)
    throw MalformedInput("no composition entry for pair (" + std::to_string(g) +
                         ", " + std::to_string(f) + ")");
  return *r;
}

int FinCategory::compose_path(const std::vector<int>& path) const {
  if (path.empty()) throw PathMismatch("empty path has no composite");
  int acc = path[0];
  for (std::size_t i = 1; i < path.size(); ++i) acc = compose(path[i], acc);
  return acc;
}

std::vector<int> FinCategory::hom(int x, int y) const {
  std::vector<int> result;
  for (int m : out_of(x))
    if (tgt(m) == y) result.push_back(m);
  return result;
}

const std::vector<int>& FinCategory::out_of(int obj) const {
  auto it = out_.find(obj);
  return it == out_.end() ? empty_vec_ : it->second;
}

const std::vector<int>& FinCategory::into(int obj) const {
  auto it = in_.find(obj);
  return it == in_.end() ? empty_vec_ : it->second;
}

int FinFunctor::on_object(int obj) const {
  auto it = omap.find(obj);
  if (it == omap.end())
    throw MalformedInput("functor has no image for object " + std::to_string(obj));
  return it->second;
}

int FinFunctor::on_morphism(int m) const {
  auto it = mmap.find(m);
  if (it == mmap.end())
    throw MalformedInput("functor has no image for morphism " + std::to_string(m));
  return it->second;
}

int NatTransform::at(int obj) const {
  auto it = component.find(obj);
  if (it == component.end())
    throw MalformedInput("transformation has no component at object " +
                         std::to_string(obj));
  return it->second;
}

// ---------------------------------------------------------------------------
// LawReport
// ---------------------------------------------------------------------------

bool LawReport::failed(const std::string& law) const {
  for (const auto& w : failures)
    if (w.law == law) return true;
  return false;
}

void LawReport::note_law(const std::string& law) {
  if (std::find(laws_checked.begin(), laws_checked.end(), law) == laws_checked.end())
    laws_checked.push_back(law);
}

void LawReport::fail(const std::string& law, std::vector<long long> ids,
                     std::string detail) {
  note_law(law);
  if (failed(law)) return;  // keep only the smallest witness per law
  failures.push_back(Witness{law, std::move(ids), std::move(detail)});
}

void LawReport::merge(const LawReport& other) {
  instances += other.instances;
  for (const auto& l : other.laws_checked) note_law(l);
  for (const auto& w : other.failures)
    if (!failed(w.law)) failures.push_back(w);
}

std::string LawReport::summary() const {
  std::ostringstream os;
  if (pass()) {
    os << "pass (" << instances << " instances";
    if (!laws_checked.empty()) {
      os << "; laws:";
      for (const auto& l : laws_checked) os << ' ' << l;
    }
    os << ")";
  } else {
    os << "FAIL";
    for (const auto& w : failures) {
      os << " [" << w.law << ": " << w.detail << " ids=(";
      for (std::size_t i = 0; i < w.ids.size(); ++i)
        os << (i ? "," : "") << w.ids[i];
      os << ")]";
    }
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// check_category
// ---------------------------------------------------------------------------

namespace {

std::vector<int> sorted_object_ids(const FinCategory& c) {
  std::vector<int> v = c.objects;
  std::sort(v.begin(), v.end());
  return v;
}

std::vector<int> sorted_morphism_ids(const FinCategory& c) {
  std::vector<int> v;
  v.reserve(c.morphisms.size());
  for (const auto& m : c.morphisms) v.push_back(m.id);
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

LawReport check_category(const FinCategory& c) {
  LawReport rep;
  rep.note_law("totality");
  rep.note_law("identity");
  rep.note_law("associativity");
  rep.note_law("identity-uniqueness");

  const std::vector<int> objs = sorted_object_ids(c);
  const std::vector<int> mors = sorted_morphism_ids(c);

  // Identity assignment: every object carries an identity endomorphism.
  for (int x : objs) {
    auto it = c.identity.find(x);
    if (it == c.identity.end()) {
      rep.fail("identity", {x}, "object has no identity morphism assigned");
      continue;
    }
    if (!c.has_morphism(it->second))
      throw MalformedInput("identity of object " + std::to_string(x) +
                           " references unknown morphism " + std::to_string(it->second));
    const Morphism& id = c.morphism(it->second);
    ++rep.instances;
    if (id.src != x || id.tgt != x)
      rep.fail("identity", {x, id.id}, "assigned identity is not an endomorphism of its object");
  }
  for (const auto& [obj, m] : c.identity) {
    if (!c.has_object(obj))
      throw MalformedInput("identity table mentions unknown object " + std::to_string(obj));
    (void)m;
  }

  // Composition table references and typing.
  {
    std::vector<std::pair<std::uint64_t, int>> entries(c.compose_table.begin(),
                                                       c.compose_table.end());
    std::sort(entries.begin(), entries.end());
    for (const auto& [k, h] : entries) {
      const int g = static_cast<int>(k >> 32);
      const int f = static_cast<int>(k & 0xffffffffu);
      if (!c.has_morphism(g) || !c.has_morphism(f) || !c.has_morphism(h))
        throw MalformedInput("composition entry (" + std::to_string(g) + ", " +
                             std::to_string(f) + ") -> " + std::to_string(h) +
                             " references an unknown morphism");
      ++rep.instances;
      if (!c.composable(g, f)) {
        rep.fail("totality", {g, f},
                 "table defines a composite for a non-composable pair");
        continue;
      }
      const Morphism& gm = c.morphism(g);
      const Morphism& fm = c.morphism(f);
      const Morphism& hm = c.morphism(h);
      if (hm.src != fm.src || hm.tgt != gm.tgt)
        rep.fail("totality", {g, f, h},
                 "composite has wrong endpoints: expected " + std::to_string(fm.src) +
                     " -> " + std::to_string(gm.tgt));
    }
  }

  // Totality: every composable pair has an entry.
  for (int x : objs) {
    for (int f : c.into(x)) {
      for (int g : c.out_of(x)) {
        ++rep.instances;
        if (!c.compose_opt(g, f)) {
          rep.fail("totality", {g, f}, "composable pair has no table entry");
        }
      }
    }
  }

  // Identity laws.
  for (int f : mors) {
    const Morphism& m = c.morphism(f);
    auto idt = c.identity.find(m.tgt);
    auto ids = c.identity.find(m.src);
    if (idt != c.identity.end() && c.has_morphism(idt->second)) {
      ++rep.instances;
      auto r = c.compose_opt(idt->second, f);
      if (r && *r != f)
        rep.fail("identity", {idt->second, f, *r},
                 "left identity law violated: id . f != f");
    }
    if (ids != c.identity.end() && c.has_morphism(ids->second)) {
      ++rep.instances;
      auto r = c.compose_opt(f, ids->second);
      if (r && *r != f)
        rep.fail("identity", {f, ids->second, *r},
                 "right identity law violated: f . id != f");
    }
  }

  // Associativity on every composable triple h . (g . f) = (h . g) . f.
  for (int f : mors) {
    const Morphism& fm = c.morphism(f);
    for (int g : c.out_of(fm.tgt)) {
      const Morphism& gm = c.morphism(g);
      auto gf = c.compose_opt(g, f);
      for (int h : c.out_of(gm.tgt)) {
        ++rep.instances;
        auto hg = c.compose_opt(h, g);
        if (!gf || !hg) continue;  // already reported as totality failures
        auto lhs = c.compose_opt(h, *gf);
        auto rhs = c.compose_opt(*hg, f);
        if (!lhs || !rhs) continue;
        if (*lhs != *rhs) {
          rep.fail("associativity", {h, g, f},
                   "h.(g.f) = " + std::to_string(*lhs) + " but (h.g).f = " +
                       std::to_string(*rhs));
          // keep scanning other laws; first (smallest) witness already kept
        }
      }
    }
  }

  // Identity uniqueness: no second two-sided unit per object.
  for (int x : objs) {
    auto idit = c.identity.find(x);
    if (idit == c.identity.end()) continue;
    for (int e : c.out_of(x)) {
      if (c.tgt(e) != x || e == idit->second) continue;
      bool unit = true;
      for (int g : c.out_of(x)) {
        auto r = c.compose_opt(g, e);
        if (!r || *r != g) { unit = false; break; }
      }
      if (unit) {
        for (int f : c.into(x)) {
          auto r = c.compose_opt(e, f);
          if (!r || *r != f) { unit = false; break; }
        }
      }
      ++rep.instances;
      if (unit)
        rep.fail("identity-uniqueness", {x, e, idit->second},
                 "a second two-sided unit exists at this object");
    }
  }

  return rep;
}

// ---------------------------------------------------------------------------
// check_functor
// ---------------------------------------------------------------------------

LawReport check_functor(const FinFunctor& f) {
  if (!f.source || !f.target) throw MalformedInput("functor lacks source or target category");
  LawReport rep;
  rep.note_law("totality");
  rep.note_law("endpoints");
  rep.note_law("identities");
  rep.note_law("composition");
  const FinCategory& C = *f.source;
  const FinCategory& D = *f.target;

  for (const auto& [x, fx] : f.omap) {
    if (!C.has_object(x))
      throw MalformedInput("object map mentions unknown source object " + std::to_string(x));
    if (!D.has_object(fx))
      throw MalformedInput("object map sends " + std::to_string(x) +
                           " to unknown target object " + std::to_string(fx));
  }
  for (const auto& [m, fm] : f.mmap) {
    if (!C.has_morphism(m))
      throw MalformedInput("morphism map mentions unknown source morphism " + std::to_string(m));
    if (!D.has_morphism(fm))
      throw MalformedInput("morphism map sends " + std::to_string(m) +
                           " to unknown target morphism " + std::to_string(fm));
  }

  for (int x : sorted_object_ids(C)) {
    ++rep.instances;
    if (!f.omap.count(x)) rep.fail("totality", {x}, "object has no image");
  }
  for (int m : sorted_morphism_ids(C)) {
    ++rep.instances;
    if (!f.mmap.count(m)) rep.fail("totality", {m}, "morphism has no image");
  }
  if (!rep.pass()) return rep;  // downstream laws need total maps

  for (int m : sorted_morphism_ids(C)) {
    const Morphism& mm = C.morphism(m);
    const Morphism& im = D.morphism(f.mmap.at(m));
    ++rep.instances;
    if (im.src != f.omap.at(mm.src) || im.tgt != f.omap.at(mm.tgt))
      rep.fail("endpoints", {m, im.id}, "image morphism has wrong endpoints");
  }

  for (int x : sorted_object_ids(C)) {
    ++rep.instances;
    auto cid = C.identity.find(x);
    if (cid == C.identity.end()) continue;
    auto did = D.identity.find(f.omap.at(x));
    if (did == D.identity.end()) continue;
    if (f.mmap.at(cid->second) != did->second)
      rep.fail("identities", {x, cid->second},
               "identity morphism is not sent to the identity of the image object");
  }

  const std::vector<int> mors = sorted_morphism_ids(C);
  for (int fmor : mors) {
    for (int g : C.out_of(C.tgt(fmor))) {
      ++rep.instances;
      auto gf = C.compose_opt(g, fmor);
      if (!gf) continue;
      auto img = D.compose_opt(f.mmap.at(g), f.mmap.at(fmor));
      if (!img) {
        rep.fail("composition", {g, fmor},
                 "images are not composable in the target table");
        continue;
      }
      if (*img != f.mmap.at(*gf))
        rep.fail("composition", {g, fmor, *gf},
                 "F(g).F(f) = " + std::to_string(*img) + " but F(g.f) = " +
                     std::to_string(f.mmap.at(*gf)));
  }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// check_natural
// ---------------------------------------------------------------------------

LawReport check_natural(const NatTransform& t) {
  if (!t.from.source || !t.from.target || !t.to.source || !t.to.target)
    throw MalformedInput("transformation lacks functor data");
  if (t.from.source != t.to.source || t.from.target != t.to.target)
    throw MalformedInput("transformation's two functors are not parallel");
  LawReport rep;
  rep.note_law("components-total");
  rep.note_law("component-endpoints");
  rep.note_law("naturality");
  const FinCategory& C = *t.from.source;
  const FinCategory& D = *t.from.target;

  for (const auto& [x, m] : t.component) {
    if (!C.has_object(x))
      throw MalformedInput("component table mentions unknown object " + std::to_string(x));
    if (!D.has_morphism(m))
      throw MalformedInput("component at " + std::to_string(x) +
                           " references unknown morphism " + std::to_string(m));
  }

  for (int x : sorted_object_ids(C)) {
    ++rep.instances;
    if (!t.component.count(x)) {
      rep.fail("components-total", {x}, "no component at object");
      continue;
    }
    const Morphism& cm = D.morphism(t.component.at(x));
    ++rep.instances;
    if (cm.src != t.from.on_object(x) || cm.tgt != t.to.on_object(x))
      rep.fail("component-endpoints", {x, cm.id},
               "component is not a morphism F(x) -> G(x)");
  }
  if (rep.failed("components-total") || rep.failed("component-endpoints")) return rep;

  for (int m : sorted_morphism_ids(C)) {
    const Morphism& mm = C.morphism(m);
    ++rep.instances;
    auto lhs = D.compose_opt(t.component.at(mm.tgt), t.from.on_morphism(m));
    auto rhs = D.compose_opt(t.to.on_morphism(m), t.component.at(mm.src));
    if (!lhs || !rhs) {
      rep.fail("naturality", {m}, "square legs are not composable in the target table");
      continue;
    }
    if (*lhs != *rhs)
      rep.fail("naturality", {m, *lhs, *rhs},
               "square does not commute: t(tgt).F(m) != G(m).t(src)");
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Diagrams
// ---------------------------------------------------------------------------

bool check_diagram_commutes(const Diagram& d, const std::vector<int>& path_a,
                            const std::vector<int>& path_b) {
  if (!d.labeling.source || !d.labeling.target)
    throw MalformedInput("diagram lacks a labeling functor");
  const FinCategory& S = *d.labeling.source;
  auto validate = [&](const std::vector<int>& p, const char* name) {
    if (p.empty()) throw PathMismatch(std::string(name) + " is empty");
    for (int m : p)
      if (!S.has_morphism(m))
        throw PathMismatch(std::string(name) + " mentions unknown shape morphism " +
                           std::to_string(m));
    for (std::size_t i = 0; i + 1 < p.size(); ++i)
      if (S.tgt(p[i]) != S.src(p[i + 1]))
        throw PathMismatch(std::string(name) + " is not composable at step " +
                           std::to_string(i));
  };
  validate(path_a, "path_a");
  validate(path_b, "path_b");
  if (S.src(path_a.front()) != S.src(path_b.front()) ||
      S.tgt(path_a.back()) != S.tgt(path_b.back()))
    throw PathMismatch("paths do not share endpoints");

  const FinCategory& T = *d.labeling.target;
  auto eval = [&](const std::vector<int>& p) {
    std::vector<int> labeled;
    labeled.reserve(p.size());
    for (int m : p) labeled.push_back(d.labeling.on_morphism(m));
    return T.compose_path(labeled);
  };
  return eval(path_a) == eval(path_b);
}

// ---------------------------------------------------------------------------
// opposite
// ---------------------------------------------------------------------------

FinCategory opposite(const FinCategory& c) {
  FinCategory op;
  op.objects = c.objects;
  op.morphisms.reserve(c.morphisms.size());
  for (const Morphism& m : c.morphisms) op.morphisms.push_back({m.id, m.tgt, m.src});
  op.identity = c.identity;
  op.compose_table.reserve(c.compose_table.size());
  for (const auto& [k, h] : c.compose_table) {
    const int g = static_cast<int>(k >> 32);
    const int f = static_cast<int>(k & 0xffffffffu);
    op.compose_table.emplace(FinCategory::key(f, g), h);
  }
  op.rebuild_index();
  return op;
}

// ---------------------------------------------------------------------------
// Functor / transformation algebra
// ---------------------------------------------------------------------------

FinFunctor identity_functor(CatPtr c) {
  FinFunctor f;
  f.source = c;
  f.target = c;
  for (int x : c->objects) f.omap[x] = x;
  for (const Morphism& m : c->morphisms) f.mmap[m.id] = m.id;
  return f;
}

FinFunctor compose_functors(const FinFunctor& g, const FinFunctor& f) {
  if (f.target != g.source)
    throw MalformedInput("functor composition: inner target is not outer source");
  FinFunctor h;
  h.source = f.source;
  h.target = g.target;
  for (const auto& [x, fx] : f.omap) h.omap[x] = g.on_object(fx);
  for (const auto& [m, fm] : f.mmap) h.mmap[m] = g.on_morphism(fm);
  return h;
}

bool same_functor(const FinFunctor& a, const FinFunctor& b) {
  return a.source == b.source && a.target == b.target && a.omap == b.omap &&
         a.mmap == b.mmap;
}

NatTransform identity_transform(const FinFunctor& f) {
  NatTransform t;
  t.from = f;
  t.to = f;
  for (const auto& [x, fx] : f.omap) t.component[x] = f.target->id_of(fx);
  return t;
}

NatTransform whisker_left(const FinFunctor& h, const NatTransform& t) {
  if (h.source != t.from.target)
    throw MalformedInput("left whiskering: functor does not start at the transformation's target category");
  NatTransform r;
  r.from = compose_functors(h, t.from);
  r.to = compose_functors(h, t.to);
  for (const auto& [x, m] : t.component) r.component[x] = h.on_morphism(m);
  return r;
}

NatTransform whisker_right(const NatTransform& t, const FinFunctor& k) {
  if (k.target != t.from.source)
    throw MalformedInput("right whiskering: functor does not land in the transformation's source category");
  NatTransform r;
  r.from = compose_functors(t.from, k);
  r.to = compose_functors(t.to, k);
  for (const auto& [x, kx] : k.omap) r.component[x] = t.at(kx);
  return r;
}

NatTransform vcompose(const NatTransform& u, const NatTransform& t) {
  if (!same_functor(t.to, u.from))
    throw MalformedInput("vertical composition: middle functors differ");
  NatTransform r;
  r.from = t.from;
  r.to = u.to;
  const FinCategory& D = *t.from.target;
  for (const auto& [x, m] : t.component) r.component[x] = D.compose(u.at(x), m);
  return r;
}

std::optional<int> find_inverse(const FinCategory& c, int m) {
  const Morphism& mm = c.morphism(m);
  for (int r : c.hom(mm.tgt, mm.src)) {
    auto rm = c.compose_opt(r, m);
    auto mr = c.compose_opt(m, r);
    if (rm && mr && *rm == c.id_of(mm.src) && *mr == c.id_of(mm.tgt)) return r;
  }
  return std::nullopt;
}

bool is_iso(const FinCategory& c, int m) { return find_inverse(c, m).has_value(); }

bool is_invertible_transform(const NatTransform& t) {
  const FinCategory& D = *t.from.target;
  for (const auto& [x, m] : t.component)
    if (!is_iso(D, m)) return false;
  return true;
}

namespace {

bool natural_square_ok(const FinFunctor& f, const FinFunctor& g,
                       const std::unordered_map<int, int>& comp, int m) {
  const FinCategory& C = *f.source;
  const FinCategory& D = *f.target;
  const Morphism& mm = C.morphism(m);
  auto is_ = comp.find(mm.src);
  auto it_ = comp.find(mm.tgt);
  if (is_ == comp.end() || it_ == comp.end()) return true;  // not yet assigned
  auto lhs = D.compose_opt(it_->second, f.on_morphism(m));
  auto rhs = D.compose_opt(g.on_morphism(m), is_->second);
  return lhs && rhs && *lhs == *rhs;
}

bool nat_iso_search(const FinFunctor& f, const FinFunctor& g,
                    const std::vector<int>& objs, std::size_t i,
                    std::unordered_map<int, int>& comp, long long& budget) {
  if (i == objs.size()) return true;
  const FinCategory& C = *f.source;
  const FinCategory& D = *f.target;
  const int x = objs[i];
  for (int cand : D.hom(f.on_object(x), g.on_object(x))) {
    if (--budget <= 0) throw SearchCapExceeded("natural isomorphism search budget exhausted");
    if (!is_iso(D, cand)) continue;
    comp[x] = cand;
    bool ok = true;
    for (int m : C.out_of(x))
      if (!natural_square_ok(f, g, comp, m)) { ok = false; break; }
    if (ok)
      for (int m : C.into(x))
        if (!natural_square_ok(f, g, comp, m)) { ok = false; break; }
    if (ok && nat_iso_search(f, g, objs, i + 1, comp, budget)) return true;
    comp.erase(x);
  }
  return false;
}

}  // namespace

std::optional<NatTransform> find_natural_iso(const FinFunctor& f,
                                             const FinFunctor& g,
                                             long long cap) {
  if (f.source != g.source || f.target != g.target)
    throw MalformedInput("natural isomorphism search requires parallel functors");
  std::vector<int> objs = sorted_object_ids(*f.source);
  std::unordered_map<int, int> comp;
  long long budget = cap;
  if (!nat_iso_search(f, g, objs, 0, comp, budget)) return std::nullopt;
  NatTransform t;
  t.from = f;
  t.to = g;
  t.component = std::move(comp);
  return t;
}

// ---------------------------------------------------------------------------
// Builders
// ---------------------------------------------------------------------------

FinCategory make_terminal_category() { return make_discrete_category(1); }

FinCategory make_discrete_category(int n) {
  FinCategory c;
  for (int i = 0; i < n; ++i) {
    c.objects.push_back(i);
    c.morphisms.push_back({i, i, i});
    c.identity[i] = i;
    c.compose_table[FinCategory::key(i, i)] = i;
  }
  c.rebuild_index();
  return c;
}

FinCategory make_codiscrete_category(int n) {
  return make_preorder_category(n, [](int, int) { return true; });
}

FinCategory make_preorder_category(int n, const std::function<bool(int, int)>& rel) {
  FinCategory c;
  std::map<std::pair<int, int>, int> arrow;
  for (int i = 0; i < n; ++i) c.objects.push_back(i);
  int next = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j && !rel(i, j))
        throw MalformedInput("preorder relation is not reflexive at " + std::to_string(i));
      if (rel(i, j)) {
        arrow[{i, j}] = next;
        c.morphisms.push_back({next, i, j});
        if (i == j) c.identity[i] = next;
        ++next;
      }
    }
  }
  for (const auto& [ij, f] : arrow) {
    for (const auto& [jk, g] : arrow) {
      if (jk.first != ij.second) continue;
      auto it = arrow.find({ij.first, jk.second});
      if (it == arrow.end())
        throw MalformedInput("preorder relation is not transitive at (" +
                             std::to_string(ij.first) + ", " + std::to_string(jk.second) + ")");
      c.compose_table[FinCategory::key(g, f)] = it->second;
    }
  }
  c.rebuild_index();
  return c;
}

FinCategory make_poset_category(int n, const std::function<bool(int, int)>& leq) {
  return make_preorder_category(n, leq);
}

FinCategory make_chain_category(int n) {
  return make_poset_category(n, [](int i, int j) { return i <= j; });
}

FinCategory make_free_category_on_dag(int n,
                                      const std::vector<std::pair<int, int>>& edges) {
  for (const auto& [s, t] : edges)
    if (s < 0 || s >= n || t < 0 || t >= n)
      throw MalformedInput("edge endpoint out of range");
  // Cycle check via Kahn's algorithm on the (multi)graph.
  {
    std::vector<int> indeg(static_cast<std::size_t>(n), 0);
    for (const auto& [s, t] : edges) ++indeg[static_cast<std::size_t>(t)];
    std::vector<int> queue;
    for (int i = 0; i < n; ++i)
      if (indeg[static_cast<std::size_t>(i)] == 0) queue.push_back(i);
    int seen = 0;
    while (!queue.empty()) {
      int v = queue.back();
      queue.pop_back();
      ++seen;
      for (std::size_t e = 0; e < edges.size(); ++e)
        if (edges[e].first == v && --indeg[static_cast<std::size_t>(edges[e].second)] == 0)
          queue.push_back(edges[e].second);
    }
    if (seen != n) throw MalformedInput("edge graph has a directed cycle");
  }

  FinCategory c;
  for (int i = 0; i < n; ++i) {
    c.objects.push_back(i);
    c.morphisms.push_back({i, i, i});
    c.identity[i] = i;
  }
  // Enumerate all nonempty edge paths; ids continue after the identities.
  std::map<std::vector<int>, int> path_id;
  std::vector<std::vector<int>> paths;  // by id - n
  std::vector<std::pair<int, int>> path_ends;
  std::function<void(std::vector<int>&, int)> grow = [&](std::vector<int>& p, int at) {
    for (std::size_t e = 0; e < edges.size(); ++e) {
      if (edges[e].first != at) continue;
      p.push_back(static_cast<int>(e));
      const int id = n + static_cast<int>(paths.size());
      path_id[p] = id;
      paths.push_back(p);
      path_ends.emplace_back(edges[static_cast<std::size_t>(p.front())].first,
                             edges[e].second);
      c.morphisms.push_back({id, path_ends.back().first, path_ends.back().second});
      grow(p, edges[e].second);
      p.pop_back();
    }
  };
  for (int v = 0; v < n; ++v) {
    std::vector<int> p;
    grow(p, v);
  }
  // Composition: identities act trivially; paths concatenate.
  for (const Morphism& m : c.morphisms) {
    c.compose_table[FinCategory::key(c.identity[m.tgt], m.id)] = m.id;
    c.compose_table[FinCategory::key(m.id, c.identity[m.src])] = m.id;
  }
  for (std::size_t a = 0; a < paths.size(); ++a) {
    for (std::size_t b = 0; b < paths.size(); ++b) {
      if (path_ends[a].second != path_ends[b].first) continue;
      std::vector<int> cat = paths[a];
      cat.insert(cat.end(), paths[b].begin(), paths[b].end());
      c.compose_table[FinCategory::key(n + static_cast<int>(b), n + static_cast<int>(a))] =
          path_id.at(cat);
    }
  }
  c.rebuild_index();
  return c;
}

}  // namespace catq
