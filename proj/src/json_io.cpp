#include "catq/json_io.hpp"

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <utility>
#include <vector>

#include "json.hpp"

#include "catq/errors.hpp"
#include "catq/setmodel.hpp"

namespace catq {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

[[noreturn]] void bad(const std::string& path, const std::string& what) {
  throw MalformedInput(path + ": " + what);
}

json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) bad(path, "cannot open file");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    bad(path, e.what());  // carries line/byte position
  }
}

const json& field(const std::string& path, const json& o, const char* name) {
  if (!o.is_object()) bad(path, "expected a JSON object");
  auto it = o.find(name);
  if (it == o.end()) bad(path, std::string("missing field '") + name + "'");
  return *it;
}

int as_int(const std::string& path, const json& v, const std::string& where) {
  if (!v.is_number_integer()) bad(path, "field '" + where + "' must be an integer");
  return v.get<int>();
}

std::string as_str(const std::string& path, const json& v, const std::string& where) {
  if (!v.is_string()) bad(path, "field '" + where + "' must be a string");
  return v.get<std::string>();
}

/// Keys of JSON objects that stand for integer ids.
int key_int(const std::string& path, const std::string& key, const std::string& where) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(key, &used);
  } catch (...) {
    used = 0;
  }
  if (used != key.size())
    bad(path, "key '" + key + "' in '" + where + "' is not an integer id");
  return v;
}

Context as_context(const std::string& path, const json& v, const std::string& where) {
  if (!v.is_array()) bad(path, "field '" + where + "' must be an array of strings");
  std::vector<std::string> names;
  for (const json& e : v) names.push_back(as_str(path, e, where));
  try {
    return Context::of_atoms(names);
  } catch (const Error& e) {
    bad(path, "field '" + where + "': " + e.what());
  }
}

int index_in(const std::string& path, const Context& c, const std::string& label,
             const std::string& where) {
  for (int i = 0; i < c.size(); ++i)
    if (c.elements[static_cast<std::size_t>(i)].label() == label) return i;
  bad(path, "field '" + where + "': unknown element '" + label + "'");
}

/// A total map given as a JSON object from source labels to target labels.
SetMap as_setmap(const std::string& path, const json& v, const Context& from,
                 const Context& to, const std::string& where) {
  if (!v.is_object()) bad(path, "field '" + where + "' must be an object");
  std::vector<int> tab(static_cast<std::size_t>(from.size()), -1);
  for (auto it = v.begin(); it != v.end(); ++it) {
    int src = index_in(path, from, it.key(), where);
    tab[static_cast<std::size_t>(src)] =
        index_in(path, to, as_str(path, it.value(), where), where);
  }
  for (int i = 0; i < from.size(); ++i)
    if (tab[static_cast<std::size_t>(i)] < 0)
      bad(path, "field '" + where + "': no image for element '" +
                    from.elements[static_cast<std::size_t>(i)].label() + "'");
  return SetMap(from, to, std::move(tab));
}

std::map<int, int> as_id_map(const std::string& path, const json& v,
                             const std::string& where) {
  if (!v.is_object()) bad(path, "field '" + where + "' must be an object");
  std::map<int, int> out;
  for (auto it = v.begin(); it != v.end(); ++it)
    out[key_int(path, it.key(), where)] = as_int(path, it.value(), where);
  return out;
}

std::string resolve(const std::string& referencing_file, const std::string& ref) {
  fs::path p(ref);
  if (!p.is_absolute()) p = fs::path(referencing_file).parent_path() / p;
  return fs::weakly_canonical(p).string();
}

std::string law_detail(const std::string& path, const LawReport& rep) {
  const Witness& w = rep.failures.front();
  std::string ids;
  for (std::size_t i = 0; i < w.ids.size(); ++i)
    ids += (i ? "," : "") + std::to_string(w.ids[i]);
  return path + ": law '" + w.law + "' fails (ids " + ids + "): " + w.detail;
}

struct Loader {
  std::map<std::string, CatPtr> cat_cache;

  CatPtr category(const std::string& path) {
    auto it = cat_cache.find(path);
    if (it != cat_cache.end()) return it->second;
    json doc = read_file(path);
    FinCategory c;
    for (const json& o : field(path, doc, "objects")) {
      if (!o.is_number_integer()) bad(path, "'objects' entries must be integers");
      c.objects.push_back(o.get<int>());
    }
    const json& ms = field(path, doc, "morphisms");
    if (!ms.is_array()) bad(path, "field 'morphisms' must be an array");
    for (const json& m : ms)
      c.morphisms.push_back(Morphism{as_int(path, field(path, m, "id"), "morphisms.id"),
                                     as_int(path, field(path, m, "src"), "morphisms.src"),
                                     as_int(path, field(path, m, "tgt"), "morphisms.tgt")});
    for (const auto& [k, v] : as_id_map(path, field(path, doc, "identities"), "identities"))
      c.identity[k] = v;
    const json& comp = field(path, doc, "compose");
    if (!comp.is_array()) bad(path, "field 'compose' must be an array of [g,f,gf] triples");
    for (const json& t : comp) {
      if (!t.is_array() || t.size() != 3)
        bad(path, "'compose' entries must be [g,f,gf] triples");
      int g = as_int(path, t[0], "compose");
      int f = as_int(path, t[1], "compose");
      int gf = as_int(path, t[2], "compose");
      c.compose_table[FinCategory::key(g, f)] = gf;
    }
    try {
      c.rebuild_index();
    } catch (const Error& e) {
      bad(path, e.what());
    }
    LawReport rep = check_category(c);
    if (!rep.pass()) throw MalformedInput(law_detail(path, rep));
    CatPtr p = std::make_shared<FinCategory>(std::move(c));
    cat_cache.emplace(path, p);
    return p;
  }

  FinFunctor functor(const std::string& path) {
    json doc = read_file(path);
    FinFunctor f;
    f.source = category(resolve(path, as_str(path, field(path, doc, "source"), "source")));
    f.target = category(resolve(path, as_str(path, field(path, doc, "target"), "target")));
    for (const auto& [k, v] : as_id_map(path, field(path, doc, "omap"), "omap")) f.omap[k] = v;
    for (const auto& [k, v] : as_id_map(path, field(path, doc, "mmap"), "mmap")) f.mmap[k] = v;
    LawReport rep;
    try {
      rep = check_functor(f);
    } catch (const Error& e) {
      bad(path, e.what());
    }
    if (!rep.pass()) throw MalformedInput(law_detail(path, rep));
    return f;
  }

  NatTransform natural(const std::string& path) {
    json doc = read_file(path);
    NatTransform t;
    t.from = functor(resolve(path, as_str(path, field(path, doc, "from"), "from")));
    t.to = functor(resolve(path, as_str(path, field(path, doc, "to"), "to")));
    if (t.from.source != t.to.source || t.from.target != t.to.target)
      bad(path, "'from' and 'to' functors do not share source and target categories");
    for (const auto& [k, v] : as_id_map(path, field(path, doc, "component"), "component"))
      t.component[k] = v;
    for (int x : t.from.source->objects)
      if (!t.component.count(x))
        bad(path, "field 'component': no component at object " + std::to_string(x));
    return t;
  }

  Adjunction adjunction(const std::string& path) {
    json doc = read_file(path);
    Adjunction adj;
    adj.left = functor(resolve(path, as_str(path, field(path, doc, "left"), "left")));
    adj.right = functor(resolve(path, as_str(path, field(path, doc, "right"), "right")));
    if (adj.left.target != adj.right.source || adj.left.source != adj.right.target)
      bad(path, "'left' and 'right' functors do not run between the same two categories");
    adj.unit.from = identity_functor(adj.left.source);
    adj.unit.to = compose_functors(adj.right, adj.left);
    for (const auto& [k, v] : as_id_map(path, field(path, doc, "unit"), "unit"))
      adj.unit.component[k] = v;
    adj.counit.from = compose_functors(adj.left, adj.right);
    adj.counit.to = identity_functor(adj.left.target);
    for (const auto& [k, v] : as_id_map(path, field(path, doc, "counit"), "counit"))
      adj.counit.component[k] = v;
    return adj;
  }

  Presheaf presheaf(const std::string& path) {
    json doc = read_file(path);
    Presheaf p;
    p.base = category(resolve(path, as_str(path, field(path, doc, "base"), "base")));
    const json& sets = field(path, doc, "sets");
    if (!sets.is_object()) bad(path, "field 'sets' must be an object");
    for (auto it = sets.begin(); it != sets.end(); ++it)
      p.sets[key_int(path, it.key(), "sets")] = as_context(path, it.value(), "sets");
    const json& acts = field(path, doc, "actions");
    if (!acts.is_object()) bad(path, "field 'actions' must be an object");
    for (auto it = acts.begin(); it != acts.end(); ++it) {
      int m = key_int(path, it.key(), "actions");
      if (!p.base->has_morphism(m))
        bad(path, "field 'actions': unknown base morphism " + it.key());
      const Morphism& mo = p.base->morphism(m);
      if (!p.sets.count(mo.src) || !p.sets.count(mo.tgt))
        bad(path, "field 'actions': base morphism " + it.key() +
                      " touches an object with no set");
      p.actions[m] = as_setmap(path, it.value(), p.sets.at(mo.tgt), p.sets.at(mo.src),
                               "actions[" + it.key() + "]");
    }
    LawReport rep;
    try {
      rep = check_presheaf(p);
    } catch (const Error& e) {
      bad(path, e.what());
    }
    if (!rep.pass()) throw MalformedInput(law_detail(path, rep));
    return p;
  }

  IndexedModel indexed(const std::string& path) {
    json doc = read_file(path);
    IndexedModel m;
    m.base = category(resolve(path, as_str(path, field(path, doc, "base"), "base")));
    const json& fibers = field(path, doc, "fibers");
    if (!fibers.is_object()) bad(path, "field 'fibers' must be an object");
    for (auto it = fibers.begin(); it != fibers.end(); ++it)
      m.fiber[key_int(path, it.key(), "fibers")] =
          category(resolve(path, as_str(path, it.value(), "fibers")));
    const json& re = field(path, doc, "reindex");
    if (!re.is_object()) bad(path, "field 'reindex' must be an object");
    for (auto it = re.begin(); it != re.end(); ++it) {
      int mor = key_int(path, it.key(), "reindex");
      if (!m.base->has_morphism(mor))
        bad(path, "field 'reindex': unknown base morphism " + it.key());
      const Morphism& mo = m.base->morphism(mor);
      if (!m.fiber.count(mo.tgt) || !m.fiber.count(mo.src))
        bad(path, "field 'reindex': base morphism " + it.key() +
                      " touches an object with no fiber");
      FinFunctor f;
      f.source = m.fiber.at(mo.tgt);
      f.target = m.fiber.at(mo.src);
      for (const auto& [k, v] :
           as_id_map(path, field(path, it.value(), "omap"), "reindex.omap"))
        f.omap[k] = v;
      for (const auto& [k, v] :
           as_id_map(path, field(path, it.value(), "mmap"), "reindex.mmap"))
        f.mmap[k] = v;
      m.reindex[mor] = std::move(f);
    }
    return m;
  }

  CatDiagram diagram(const std::string& path) {
    json doc = read_file(path);
    CatDiagram d;
    d.shape = category(resolve(path, as_str(path, field(path, doc, "shape"), "shape")));
    const json& nodes = field(path, doc, "nodes");
    if (!nodes.is_object()) bad(path, "field 'nodes' must be an object");
    for (auto it = nodes.begin(); it != nodes.end(); ++it)
      d.node[key_int(path, it.key(), "nodes")] =
          category(resolve(path, as_str(path, it.value(), "nodes")));
    const json& edges = field(path, doc, "edges");
    if (!edges.is_object()) bad(path, "field 'edges' must be an object");
    for (auto it = edges.begin(); it != edges.end(); ++it) {
      int mor = key_int(path, it.key(), "edges");
      if (!d.shape->has_morphism(mor))
        bad(path, "field 'edges': unknown shape morphism " + it.key());
      const Morphism& mo = d.shape->morphism(mor);
      if (!d.node.count(mo.src) || !d.node.count(mo.tgt))
        bad(path, "field 'edges': shape morphism " + it.key() +
                      " touches an object with no category");
      FinFunctor f;
      f.source = d.node.at(mo.src);
      f.target = d.node.at(mo.tgt);
      for (const auto& [k, v] : as_id_map(path, field(path, it.value(), "omap"), "edges.omap"))
        f.omap[k] = v;
      for (const auto& [k, v] : as_id_map(path, field(path, it.value(), "mmap"), "edges.mmap"))
        f.mmap[k] = v;
      d.edge[mor] = std::move(f);
    }
    // Identity edges may be left out: fill them with identity functors.
    for (int obj : d.shape->objects) {
      int id = d.shape->id_of(obj);
      if (!d.edge.count(id) && d.node.count(obj)) d.edge[id] = identity_functor(d.node.at(obj));
    }
    if (doc.contains("comparisons")) {
      const json& cs = doc["comparisons"];
      if (!cs.is_array()) bad(path, "field 'comparisons' must be an array");
      for (const json& c : cs) {
        int g = as_int(path, field(path, c, "g"), "comparisons.g");
        int f = as_int(path, field(path, c, "f"), "comparisons.f");
        if (!d.shape->has_morphism(g) || !d.shape->has_morphism(f) ||
            !d.shape->composable(g, f))
          bad(path, "field 'comparisons': (" + std::to_string(g) + ", " + std::to_string(f) +
                        ") is not a composable pair of shape morphisms");
        if (!d.edge.count(g) || !d.edge.count(f) || !d.edge.count(d.shape->compose(g, f)))
          bad(path, "field 'comparisons': pair references a shape morphism with no functor");
        NatTransform t;
        t.from = compose_functors(d.edge.at(g), d.edge.at(f));
        t.to = d.edge.at(d.shape->compose(g, f));
        for (const auto& [k, v] :
             as_id_map(path, field(path, c, "component"), "comparisons.component"))
          t.component[k] = v;
        d.comparison[{g, f}] = std::move(t);
      }
    }
    try {
      d = fill_identity_comparisons(std::move(d));
    } catch (const Error& e) {
      bad(path, e.what());
    }
    return d;
  }
};

}  // namespace

FinCategory load_category(const std::string& path) {
  Loader l;
  return *l.category(fs::weakly_canonical(path).string());
}

FinFunctor load_functor(const std::string& path) {
  Loader l;
  return l.functor(fs::weakly_canonical(path).string());
}

NatTransform load_natural(const std::string& path) {
  Loader l;
  return l.natural(fs::weakly_canonical(path).string());
}

Adjunction load_adjunction(const std::string& path) {
  Loader l;
  return l.adjunction(fs::weakly_canonical(path).string());
}

QuantifyInput load_quantify_input(const std::string& path) {
  json doc = read_file(path);
  QuantifyInput q;
  q.gamma = as_context(path, field(path, doc, "gamma"), "gamma");
  q.a = as_context(path, field(path, doc, "a"), "a");
  ExtendedContext ext = extend_context(q.gamma, q.a);
  const json& phi = field(path, doc, "phi");
  if (!phi.is_array()) bad(path, "field 'phi' must be an array of [gamma, a] pairs");
  std::uint64_t bits = 0;
  for (const json& pr : phi) {
    if (!pr.is_array() || pr.size() != 2)
      bad(path, "'phi' entries must be [gamma, a] pairs");
    int gi = index_in(path, q.gamma, as_str(path, pr[0], "phi"), "phi");
    int ai = index_in(path, q.a, as_str(path, pr[1], "phi"), "phi");
    bits |= std::uint64_t{1} << ext.pair_index(gi, ai);
  }
  q.phi = Predicate(ext.product, bits);
  return q;
}

PullbackSquare load_square(const std::string& path) {
  json doc = read_file(path);
  Context upper = as_context(path, field(path, doc, "upper"), "upper");
  Context lower = as_context(path, field(path, doc, "lower"), "lower");
  Context corner = as_context(path, field(path, doc, "corner"), "corner");
  SetMap right = as_setmap(path, field(path, doc, "right"), upper, corner, "right");
  SetMap bottom = as_setmap(path, field(path, doc, "bottom"), lower, corner, "bottom");
  PullbackSquare sq;
  if (doc.contains("apex")) {
    const json& ax = doc["apex"];
    if (!ax.is_array()) bad(path, "field 'apex' must be an array of [upper, lower] pairs");
    std::vector<Elem> apex;
    std::vector<int> ttab, ltab;
    for (const json& pr : ax) {
      if (!pr.is_array() || pr.size() != 2)
        bad(path, "'apex' entries must be [upper, lower] pairs");
      int u = index_in(path, upper, as_str(path, pr[0], "apex"), "apex");
      int l = index_in(path, lower, as_str(path, pr[1], "apex"), "apex");
      apex.push_back(Elem::pair(upper.elements[static_cast<std::size_t>(u)],
                                lower.elements[static_cast<std::size_t>(l)]));
      ttab.push_back(u);
      ltab.push_back(l);
    }
    Context a;
    try {
      a = Context(std::move(apex));
    } catch (const Error& e) {
      bad(path, std::string("field 'apex': ") + e.what());
    }
    sq.top = SetMap(a, upper, std::move(ttab));
    sq.left = SetMap(a, lower, std::move(ltab));
    sq.right = std::move(right);
    sq.bottom = std::move(bottom);
  } else {
    sq = make_canonical_pullback(right, bottom);
  }
  try {
    require_square(sq);
  } catch (const Error& e) {
    bad(path, e.what());
  }
  return sq;
}

FamilyOver load_family(const std::string& path) {
  json doc = read_file(path);
  Context base = as_context(path, field(path, doc, "base"), "base");
  Context total = as_context(path, field(path, doc, "total"), "total");
  SetMap display = as_setmap(path, field(path, doc, "display"), total, base, "display");
  return make_family(std::move(base), std::move(total), std::move(display));
}

SetMap load_map(const std::string& path) {
  json doc = read_file(path);
  Context from = as_context(path, field(path, doc, "from"), "from");
  Context to = as_context(path, field(path, doc, "to"), "to");
  return as_setmap(path, field(path, doc, "map"), from, to, "map");
}

Presheaf load_presheaf(const std::string& path) {
  Loader l;
  return l.presheaf(fs::weakly_canonical(path).string());
}

IndexedModel load_indexed_model(const std::string& path) {
  Loader l;
  return l.indexed(fs::weakly_canonical(path).string());
}

CatDiagram load_diagram(const std::string& path) {
  Loader l;
  return l.diagram(fs::weakly_canonical(path).string());
}

}  // namespace catq
