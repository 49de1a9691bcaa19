#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "json.hpp"

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct RunResult {
  int code = -1;
  std::string out;  // stdout and stderr interleaved
};

/// Runs the command-line binary with the given arguments.
RunResult run(const std::string& args) {
  const std::string cmd = std::string(CATQ_CLI_PATH) + " " + args + " 2>&1";
  std::array<char, 4096> buf{};
  RunResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  while (std::fgets(buf.data(), static_cast<int>(buf.size()), pipe)) r.out += buf.data();
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

struct Fixtures {
  fs::path dir;

  Fixtures() {
    dir = fs::temp_directory_path() / "catq_cli_fixtures";
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

}  // namespace

TEST_CASE("quantify prints the image of the worked example") {
  Fixtures fx;
  const std::string phi = fx.write("phi.json", R"({
    "gamma": ["1", "2"], "a": ["a", "b"],
    "phi": [["1", "a"], ["1", "b"]]
  })");
  const RunResult fa = run("quantify --op forall --model set --in " + phi);
  CHECK(fa.code == 0);
  CHECK(fa.out == "{1}\n");
  const RunResult ex = run("quantify --op exists --model set --in " + phi);
  CHECK(ex.code == 0);
  CHECK(ex.out == "{1}\n");
  // The Kan route computes the same images.
  const RunResult kf = run("quantify --op forall --model kan --in " + phi);
  CHECK(kf.code == 0);
  CHECK(kf.out == "{1}\n");
  // JSON format lists the member elements.
  const RunResult js = run("quantify --op forall --format json --in " + phi);
  CHECK(js.code == 0);
  CHECK(json::parse(js.out).at("result") == json({"1"}));
}

TEST_CASE("check category accepts the empty category") {
  Fixtures fx;
  const std::string empty = fx.write("empty.json",
      R"({"objects": [], "morphisms": [], "identities": {}, "compose": []})");
  const RunResult r = run("check category " + empty);
  CHECK(r.code == 0);
  CHECK(r.out.find("category: pass") != std::string::npos);
  CHECK(r.out.find("overall: pass") != std::string::npos);

  const RunResult as_json = run("check category --format json " + empty);
  CHECK(as_json.code == 0);
  const json doc = json::parse(as_json.out);
  CHECK(doc.at("schema") == 1);
  CHECK(doc.at("overall") == "pass");
}

TEST_CASE("defective inputs exit 2 with a pointed diagnostic") {
  Fixtures fx;
  const std::string gap = fx.write("gap.json", R"({
    "objects": [0, 1],
    "morphisms": [
      {"id": 0, "src": 0, "tgt": 0},
      {"id": 1, "src": 1, "tgt": 1},
      {"id": 2, "src": 0, "tgt": 1}
    ],
    "identities": {"0": 0, "1": 1},
    "compose": [[0, 0, 0], [1, 1, 1], [2, 0, 2]]
  })");
  const RunResult r = run("check category " + gap);
  CHECK(r.code == 2);
  CHECK(r.out.find("error") != std::string::npos);

  const RunResult missing = run("quantify --op forall --in /nonexistent/phi.json");
  CHECK(missing.code == 2);

  const RunResult unknown = run("check suite --suite no-such-suite");
  CHECK(unknown.code == 2);
  CHECK(unknown.out.find("no-such-suite") != std::string::npos);

  const RunResult badcap = run("check suite --suite mutation --cap dtt=zero");
  CHECK(badcap.code == 2);
}

TEST_CASE("a commuting non-pullback square fails with a transport witness") {
  Fixtures fx;
  const std::string cut = fx.write("cut.json", R"({
    "upper": ["u0", "u1"], "lower": ["l0", "l1"], "corner": ["c"],
    "right": {"u0": "c", "u1": "c"}, "bottom": {"l0": "c", "l1": "c"},
    "apex": [["u0", "l0"], ["u0", "l1"], ["u1", "l0"]]
  })");
  const RunResult r = run("check beck-chevalley --square " + cut);
  CHECK(r.code == 1);
  CHECK(r.out.find("not-a-pullback") != std::string::npos);
  CHECK(r.out.find("transport routes differ at") != std::string::npos);

  const std::string good = fx.write("sq.json", R"({
    "upper": ["u0", "u1"], "lower": ["l0", "l1"], "corner": ["c"],
    "right": {"u0": "c", "u1": "c"}, "bottom": {"l0": "c", "l1": "c"}
  })");
  const RunResult ok = run("check beck-chevalley --square " + good);
  CHECK(ok.code == 0);
  CHECK(ok.out.find("beck-chevalley: pass") != std::string::npos);
}

TEST_CASE("lawful models load and their checks report findings, not errors") {
  Fixtures fx;
  fx.write("one.json",
      R"({"objects": [0], "morphisms": [{"id": 0, "src": 0, "tgt": 0}],
          "identities": {"0": 0}, "compose": [[0, 0, 0]]})");
  fx.write("idf.json", R"({
    "source": "one.json", "target": "one.json",
    "omap": {"0": 0}, "mmap": {"0": 0}
  })");
  const std::string nat = fx.write("idt.json", R"({
    "from": "idf.json", "to": "idf.json", "component": {"0": 0}
  })");
  CHECK(run("check natural " + nat).code == 0);
  CHECK(run("check functor --in " + fx.dir.string() + "/idf.json").code == 0);

  const std::string adj = fx.write("selfadj.json", R"({
    "left": "idf.json", "right": "idf.json",
    "unit": {"0": 0}, "counit": {"0": 0}
  })");
  const RunResult r = run("check adjunction " + adj);
  CHECK(r.code == 0);
  CHECK(r.out.find("adjunction: pass") != std::string::npos);
}

TEST_CASE("kan, groth build, and pseudolimit run end to end") {
  Fixtures fx;
  const std::string phi = fx.write("phi.json", R"({
    "gamma": ["1", "2"], "a": ["a", "b"],
    "phi": [["1", "a"], ["1", "b"]]
  })");
  const RunResult kan = run("kan --in " + phi);
  CHECK(kan.code == 0);
  CHECK(kan.out.find("kan: pass") != std::string::npos);

  fx.write("chain.json", R"({
    "objects": [0, 1],
    "morphisms": [
      {"id": 0, "src": 0, "tgt": 0},
      {"id": 1, "src": 1, "tgt": 1},
      {"id": 2, "src": 0, "tgt": 1}
    ],
    "identities": {"0": 0, "1": 1},
    "compose": [[0, 0, 0], [1, 1, 1], [2, 0, 2], [1, 2, 2]]
  })");
  fx.write("one.json",
      R"({"objects": [0], "morphisms": [{"id": 0, "src": 0, "tgt": 0}],
          "identities": {"0": 0}, "compose": [[0, 0, 0]]})");
  const std::string ix = fx.write("ix.json", R"({
    "base": "chain.json",
    "fibers": {"0": "one.json", "1": "one.json"},
    "reindex": {
      "0": {"omap": {"0": 0}, "mmap": {"0": 0}},
      "1": {"omap": {"0": 0}, "mmap": {"0": 0}},
      "2": {"omap": {"0": 0}, "mmap": {"0": 0}}
    }
  })");
  const RunResult groth = run("groth build --format json " + ix);
  CHECK(groth.code == 0);
  const json gdoc = json::parse(groth.out);
  CHECK(gdoc.at("reports")[0].at("stats").at("total-objects") == 2);

  const std::string diag = fx.write("diag.json", R"({
    "shape": "chain.json",
    "nodes": {"0": "one.json", "1": "one.json"},
    "edges": {"2": {"omap": {"0": 0}, "mmap": {"0": 0}}}
  })");
  const RunResult plim = run("pseudolimit --format json " + diag);
  CHECK(plim.code == 0);
  const json pdoc = json::parse(plim.out);
  CHECK(pdoc.at("overall") == "pass");
  CHECK(pdoc.at("reports")[0].at("stats").at("limit-objects") == 1);
}

TEST_CASE("json reports are byte-identical across runs for fixed input and seed") {
  const std::string cmd =
      "check suite --suite groth,interchange,strictify --seed 9 --format json";
  const RunResult a = run(cmd);
  const RunResult b = run(cmd);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(!a.out.empty());

  // The text format carries timing and is not required to be byte-stable,
  // but its verdict lines are.
  const RunResult t = run("check suite --suite mutation");
  CHECK(t.code == 0);
  CHECK(t.out.find("mutation: pass") != std::string::npos);
}
