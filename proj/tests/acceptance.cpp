// Acceptance gate: one line per criterion, with runtime budgets enforced.
// Exits nonzero if any criterion fails its checks or its budget.
#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "catq/adjunction.hpp"
#include "catq/elem.hpp"
#include "catq/report.hpp"
#include "catq/setmodel.hpp"
#include "catq/suites.hpp"

using namespace catq;

namespace {

struct Line {
  std::string name;
  bool pass = false;
  long long ms = 0;
  long long budget_ms = 0;  // 0 = no budget
  std::string note;
};

std::vector<Line> lines;

void record(const std::string& name, bool pass, long long ms, long long budget_ms,
            const std::string& note = "") {
  Line l;
  l.name = name;
  l.pass = pass && (budget_ms == 0 || ms <= budget_ms);
  l.ms = ms;
  l.budget_ms = budget_ms;
  l.note = note;
  if (pass && !l.pass) l.note = "over budget";
  lines.push_back(l);
}

/// Runs one registered suite and records its verdict against a budget.
void suite_criterion(const std::string& name, const std::vector<std::string>& suites,
                     long long budget_ms) {
  RunConfig cfg;
  cfg.suites = suites;
  bool pass = true;
  long long ms = 0;
  std::string note;
  for (const CheckReport& r : run_suites(cfg)) {
    ms += r.duration_ms;
    if (r.status != "pass") {
      pass = false;
      if (note.empty()) {
        note = r.suite + " " + r.status;
        if (!r.witnesses.empty())
          note += ": [" + r.witnesses.front().law + "] " + r.witnesses.front().detail;
        if (!r.error.empty()) note += ": " + r.error;
      }
    }
  }
  record(name, pass, ms, budget_ms, note);
}

/// Criterion 1: the worked two-by-two example, bit-exact along both routes,
/// inside one second.
void worked_example_criterion() {
  const auto start = std::chrono::steady_clock::now();
  bool ok = true;
  std::string note;
  auto fail = [&](const std::string& why) {
    ok = false;
    if (note.empty()) note = why;
  };

  const Context gamma = Context::of({"1", "2"});
  const Context a = Context::of({"a", "b"});
  const ExtendedContext ext = extend_context(gamma, a);
  std::uint64_t phi_bits = 0;
  phi_bits |= std::uint64_t{1} << ext.pair_index(0, 0);  // (1, a)
  phi_bits |= std::uint64_t{1} << ext.pair_index(0, 1);  // (1, b)
  const Predicate phi(ext.product, phi_bits);

  // Direct formulas.
  const Predicate fa = forall(ext, phi);
  const Predicate ex = exists(ext, phi);
  if (fa.bits != 1 || fa.label() != "{1}") fail("direct universal image is " + fa.label());
  if (ex.bits != 1 || ex.label() != "{1}") fail("direct existential image is " + ex.label());

  // Materialized adjunctions: images and transposes.
  const SetQuantifierModel m = make_set_quantifier_model(gamma, a);
  if (m.forall_adj.right.on_object(static_cast<int>(phi_bits)) != 1)
    fail("materialized universal image differs");
  if (m.exists_adj.left.on_object(static_cast<int>(phi_bits)) != 1)
    fail("materialized existential image differs");

  // Transpose round-trip through both hom-sets at psi = {1}.
  const std::uint64_t psi = 1;
  const std::uint64_t rx = reindex(ext, Predicate(gamma, psi)).bits;
  const int up = m.base.arrow(psi, fa.bits);
  const int across = transpose_forward(m.forall_adj, up, static_cast<int>(phi_bits));
  if (across != m.total.arrow(rx, phi_bits) ||
      transpose_backward(m.forall_adj, across, static_cast<int>(psi)) != up)
    fail("universal transpose does not round-trip");
  const int down = m.total.arrow(phi_bits, rx);
  const int back = transpose_forward(m.exists_adj, down, static_cast<int>(psi));
  if (back != m.base.arrow(ex.bits, psi) ||
      transpose_backward(m.exists_adj, back, static_cast<int>(phi_bits)) != down)
    fail("existential transpose does not round-trip");

  const long long ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                           std::chrono::steady_clock::now() - start)
                           .count();
  record("worked-example", ok, ms, 1000, note);
}

}  // namespace

int main() {
  try {
    worked_example_criterion();
    suite_criterion("quantifier-adjunctions", {"set-adjunction"}, 60000);
    suite_criterion("transport-commutation", {"beck-chevalley"}, 120000);
    suite_criterion("kan-degeneration", {"kan"}, 120000);
    suite_criterion("slice-adjoint-triple", {"slice"}, 60000);
    suite_criterion("indexed-total-category", {"groth"}, 60000);
    suite_criterion("span-coherence", {"spans", "interchange", "strictify"}, 120000);
    suite_criterion("pseudo-limit-universality", {"pseudolimit"}, 60000);
    suite_criterion("substitution-chains", {"dtt-substitution"}, 30000);
    suite_criterion("mutation-detection", {"mutation"}, 0);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "acceptance run aborted: %s\n", e.what());
    return 1;
  }

  bool all = true;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const Line& l = lines[i];
    all = all && l.pass;
    std::printf("criterion %02zu %-26s %-4s %7lld ms", i + 1, l.name.c_str(),
                l.pass ? "PASS" : "FAIL", l.ms);
    if (l.budget_ms > 0) std::printf("  (budget %lld ms)", l.budget_ms);
    if (!l.note.empty()) std::printf("  %s", l.note.c_str());
    std::printf("\n");
  }
  std::printf("acceptance: %s\n", all ? "PASS" : "FAIL");
  return all ? 0 : 1;
}
