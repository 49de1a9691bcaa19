#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <string>

#include "catq/adjunction.hpp"
#include "catq/coherence.hpp"
#include "catq/errors.hpp"
#include "catq/fincat.hpp"
#include "catq/grothendieck.hpp"
#include "catq/json_io.hpp"
#include "catq/presheaf.hpp"

using namespace catq;
namespace fs = std::filesystem;

namespace {

/// A scratch directory holding the fixture files for one test case.
struct Fixtures {
  fs::path dir;

  Fixtures() {
    dir = fs::temp_directory_path() / "catq_json_io_fixtures";
    fs::remove_all(dir);
    fs::create_directories(dir);
  }
  ~Fixtures() { fs::remove_all(dir); }

  std::string write(const std::string& name, const std::string& text) const {
    const fs::path p = dir / name;
    std::ofstream out(p);
    out << text;
    return p.string();
  }
};

const char* kChain2 = R"({
  "objects": [0, 1],
  "morphisms": [
    {"id": 0, "src": 0, "tgt": 0},
    {"id": 1, "src": 1, "tgt": 1},
    {"id": 2, "src": 0, "tgt": 1}
  ],
  "identities": {"0": 0, "1": 1},
  "compose": [[0, 0, 0], [1, 1, 1], [2, 0, 2], [1, 2, 2]]
})";

const char* kOneObject = R"({
  "objects": [0],
  "morphisms": [{"id": 0, "src": 0, "tgt": 0}],
  "identities": {"0": 0},
  "compose": [[0, 0, 0]]
})";

}  // namespace

TEST_CASE("a lawful category file loads with its structure intact") {
  Fixtures fx;
  const FinCategory c = load_category(fx.write("chain.json", kChain2));
  CHECK(c.objects.size() == 2);
  CHECK(c.morphisms.size() == 3);
  CHECK(c.id_of(0) == 0);
  CHECK(c.compose(1, 2) == 2);
  CHECK(check_category(c).pass());
}

TEST_CASE("the empty category is a valid input") {
  Fixtures fx;
  const FinCategory c = load_category(fx.write("empty.json",
      R"({"objects": [], "morphisms": [], "identities": {}, "compose": []})"));
  CHECK(c.objects.empty());
  CHECK(check_category(c).pass());
}

TEST_CASE("category defects are reported as input errors naming the defect") {
  Fixtures fx;
  // Missing composition entry for the composable pair (1, 2).
  const std::string p = fx.write("gap.json", R"({
    "objects": [0, 1],
    "morphisms": [
      {"id": 0, "src": 0, "tgt": 0},
      {"id": 1, "src": 1, "tgt": 1},
      {"id": 2, "src": 0, "tgt": 1}
    ],
    "identities": {"0": 0, "1": 1},
    "compose": [[0, 0, 0], [1, 1, 1], [2, 0, 2]]
  })");
  CHECK_THROWS_WITH_AS(load_category(p), doctest::Contains("gap.json"), MalformedInput);

  // Unknown morphism id in an identity assignment.
  const std::string q = fx.write("badid.json",
      R"({"objects": [0], "morphisms": [{"id": 0, "src": 0, "tgt": 0}],
          "identities": {"0": 9}, "compose": [[0, 0, 0]]})");
  CHECK_THROWS_AS(load_category(q), MalformedInput);

  // Not JSON at all: the parse error carries the file name.
  const std::string r = fx.write("broken.json", "{ not json");
  CHECK_THROWS_WITH_AS(load_category(r), doctest::Contains("broken.json"), MalformedInput);
}

TEST_CASE("functor files resolve relative category references and are law-checked") {
  Fixtures fx;
  fx.write("chain.json", kChain2);
  const std::string good = fx.write("id.json", R"({
    "source": "chain.json", "target": "chain.json",
    "omap": {"0": 0, "1": 1}, "mmap": {"0": 0, "1": 1, "2": 2}
  })");
  const FinFunctor f = load_functor(good);
  CHECK(f.source == f.target);  // same file, shared pointer
  CHECK(check_functor(f).pass());

  // A functor that breaks identity preservation is an input error.
  const std::string bad = fx.write("broken_functor.json", R"({
    "source": "chain.json", "target": "chain.json",
    "omap": {"0": 1, "1": 1}, "mmap": {"0": 1, "1": 1, "2": 1}
  })");
  CHECK(check_functor(load_functor(bad)).pass());  // omap 0->1 with all-identity mmap is lawful
  const std::string worse = fx.write("worse_functor.json", R"({
    "source": "chain.json", "target": "chain.json",
    "omap": {"0": 0, "1": 1}, "mmap": {"0": 2, "1": 1, "2": 2}
  })");
  CHECK_THROWS_AS(load_functor(worse), MalformedInput);
}

TEST_CASE("natural transformation files load against shared functor endpoints") {
  Fixtures fx;
  fx.write("one.json", kOneObject);
  fx.write("idf.json", R"({
    "source": "one.json", "target": "one.json",
    "omap": {"0": 0}, "mmap": {"0": 0}
  })");
  const NatTransform t = load_natural(fx.write("idt.json", R"({
    "from": "idf.json", "to": "idf.json", "component": {"0": 0}
  })"));
  CHECK(t.at(0) == 0);
  CHECK(check_natural(t).pass());

  // A missing component is an input error; a wrong component is a finding.
  CHECK_THROWS_AS(load_natural(fx.write("gap.json",
      R"({"from": "idf.json", "to": "idf.json", "component": {}})")), MalformedInput);
}

TEST_CASE("adjunction files load and verify") {
  Fixtures fx;
  fx.write("one.json", kOneObject);
  fx.write("idf.json", R"({
    "source": "one.json", "target": "one.json",
    "omap": {"0": 0}, "mmap": {"0": 0}
  })");
  const Adjunction adj = load_adjunction(fx.write("selfadj.json", R"({
    "left": "idf.json", "right": "idf.json",
    "unit": {"0": 0}, "counit": {"0": 0}
  })"));
  CHECK(verify_adjunction(adj).pass());
}

TEST_CASE("quantifier input files encode the predicate bit-exactly") {
  Fixtures fx;
  const QuantifyInput q = load_quantify_input(fx.write("phi.json", R"({
    "gamma": ["1", "2"], "a": ["a", "b"],
    "phi": [["1", "a"], ["1", "b"]]
  })"));
  CHECK(q.gamma.size() == 2);
  CHECK(q.a.size() == 2);
  CHECK(q.phi.bits == 3);  // the two pairs over the first base element
  CHECK_THROWS_AS(load_quantify_input(fx.write("bad.json", R"({
    "gamma": ["1"], "a": ["a"], "phi": [["1", "zzz"]]
  })")), MalformedInput);
}

TEST_CASE("square files default to the canonical apex and accept an explicit one") {
  Fixtures fx;
  const std::string canonical = fx.write("sq.json", R"({
    "upper": ["u0", "u1"], "lower": ["l0", "l1"], "corner": ["c"],
    "right": {"u0": "c", "u1": "c"}, "bottom": {"l0": "c", "l1": "c"}
  })");
  const PullbackSquare sq = load_square(canonical);
  CHECK(sq.top.from.size() == 4);  // all pairs agree over the one-point corner
  CHECK(check_pullback_square(sq).pass());

  // An explicit apex that drops a pair still loads (shape is fine) but is
  // a non-pullback, reported by the check rather than the loader.
  const PullbackSquare cut = load_square(fx.write("cut.json", R"({
    "upper": ["u0", "u1"], "lower": ["l0", "l1"], "corner": ["c"],
    "right": {"u0": "c", "u1": "c"}, "bottom": {"l0": "c", "l1": "c"},
    "apex": [["u0", "l0"], ["u0", "l1"], ["u1", "l0"]]
  })"));
  CHECK(cut.top.from.size() == 3);
  CHECK(!check_pullback_square(cut).pass());
  CHECK(beck_counterexample(cut).has_value());
}

TEST_CASE("family and map files load with totality enforced") {
  Fixtures fx;
  const FamilyOver fam = load_family(fx.write("fam.json", R"({
    "base": ["x", "y"], "total": ["p", "q", "r"],
    "display": {"p": "x", "q": "x", "r": "y"}
  })"));
  CHECK(fam.display.tab == std::vector<int>{0, 0, 1});

  const SetMap m = load_map(fx.write("map.json", R"({
    "from": ["a"], "to": ["b", "c"], "map": {"a": "c"}
  })"));
  CHECK(m.apply_index(0) == 1);

  CHECK_THROWS_WITH_AS(load_map(fx.write("partial.json", R"({
    "from": ["a", "b"], "to": ["c"], "map": {"a": "c"}
  })")), doctest::Contains("no image"), MalformedInput);
}

TEST_CASE("presheaf files load contravariant actions and are law-checked") {
  Fixtures fx;
  fx.write("chain.json", kChain2);
  const Presheaf p = load_presheaf(fx.write("pre.json", R"({
    "base": "chain.json",
    "sets": {"0": ["s0", "s1"], "1": ["t0"]},
    "actions": {
      "0": {"s0": "s0", "s1": "s1"},
      "1": {"t0": "t0"},
      "2": {"t0": "s1"}
    }
  })"));
  CHECK(check_presheaf(p).pass());
  CHECK(p.action(2).apply_index(0) == 1);  // action of the arrow lands at s1

  CHECK_THROWS_AS(load_presheaf(fx.write("bad.json", R"({
    "base": "chain.json",
    "sets": {"0": ["s0"], "1": ["t0"]},
    "actions": {"0": {"s0": "s0"}, "1": {"t0": "t0"}}
  })")), MalformedInput);  // missing action for the arrow
}

TEST_CASE("indexed model files share fiber categories by canonical path") {
  Fixtures fx;
  fx.write("chain.json", kChain2);
  fx.write("fiber.json", kOneObject);
  const IndexedModel m = load_indexed_model(fx.write("ix.json", R"({
    "base": "chain.json",
    "fibers": {"0": "fiber.json", "1": "fiber.json"},
    "reindex": {
      "0": {"omap": {"0": 0}, "mmap": {"0": 0}},
      "1": {"omap": {"0": 0}, "mmap": {"0": 0}},
      "2": {"omap": {"0": 0}, "mmap": {"0": 0}}
    }
  })"));
  // Same file, same shared category object: reindexing endpoints line up.
  CHECK(m.fiber.at(0) == m.fiber.at(1));
  CHECK(check_indexed_model(m).pass());
  const TotalCategory t = build_total(m);
  CHECK(t.category->objects.size() == 2);
}

TEST_CASE("diagram files fill omitted identity edges and comparison cells") {
  Fixtures fx;
  fx.write("shape.json", kChain2);
  fx.write("one.json", kOneObject);
  const CatDiagram d = load_diagram(fx.write("diag.json", R"({
    "shape": "shape.json",
    "nodes": {"0": "one.json", "1": "one.json"},
    "edges": {"2": {"omap": {"0": 0}, "mmap": {"0": 0}}}
  })"));
  CHECK(d.edge.count(0) == 1);  // identity edge filled in
  CHECK(d.edge.count(1) == 1);
  CHECK(check_cat_diagram(d).pass());
  const PseudoLimit l = pseudo_limit(d);
  CHECK(l.category->objects.size() == 1);
}
