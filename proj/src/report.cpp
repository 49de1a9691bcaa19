#include "catq/report.hpp"

#include <algorithm>
#include <sstream>

#include "json.hpp"

#include "catq/errors.hpp"

namespace catq {

CheckReport report_from_laws(const std::string& suite, const LawReport& rep) {
  CheckReport r;
  r.suite = suite;
  r.status = rep.pass() ? "pass" : "fail";
  r.witnesses = rep.failures;
  r.stats["instances"] = rep.instances;
  r.stats["laws"] = static_cast<long long>(rep.laws_checked.size());
  return r;
}

long long Caps::get(const std::string& module_name, long long fallback) const {
  auto it = by_module.find(module_name);
  if (it == by_module.end()) return fallback;
  if (it->second <= 0) throw MalformedInput("cap for '" + module_name + "' must be positive");
  return it->second;
}

namespace {

void sort_reports(std::vector<CheckReport>& reports) {
  std::stable_sort(reports.begin(), reports.end(),
                   [](const CheckReport& a, const CheckReport& b) { return a.suite < b.suite; });
}

}  // namespace

std::string reports_to_json(std::vector<CheckReport> reports) {
  sort_reports(reports);
  nlohmann::json doc;
  doc["schema"] = 1;
  nlohmann::json list = nlohmann::json::array();
  for (const CheckReport& r : reports) {
    nlohmann::json o;
    o["suite"] = r.suite;
    o["status"] = r.status;
    nlohmann::json stats;
    for (const auto& [k, v] : r.stats) stats[k] = v;
    o["stats"] = stats;
    nlohmann::json ws = nlohmann::json::array();
    for (const Witness& w : r.witnesses) {
      nlohmann::json jw;
      jw["law"] = w.law;
      jw["ids"] = w.ids;
      jw["detail"] = w.detail;
      ws.push_back(jw);
    }
    o["witnesses"] = ws;
    if (!r.error.empty()) o["error"] = r.error;
    list.push_back(o);
  }
  doc["reports"] = list;
  bool all_pass = std::all_of(reports.begin(), reports.end(),
                              [](const CheckReport& r) { return r.status == "pass"; });
  doc["overall"] = all_pass ? "pass" : "fail";
  return doc.dump(2) + "\n";
}

std::string reports_to_text(std::vector<CheckReport> reports) {
  sort_reports(reports);
  std::ostringstream out;
  bool all_pass = true;
  for (const CheckReport& r : reports) {
    out << r.suite << ": " << r.status;
    auto inst = r.stats.find("instances");
    if (inst != r.stats.end()) out << " (" << inst->second << " instances";
    else out << " (";
    out << ", " << r.duration_ms << " ms)\n";
    if (r.status != "pass") all_pass = false;
    if (!r.error.empty()) out << "  error: " << r.error << "\n";
    for (const Witness& w : r.witnesses) {
      out << "  witness [" << w.law << "]";
      if (!w.ids.empty()) {
        out << " ids=";
        for (std::size_t i = 0; i < w.ids.size(); ++i) out << (i ? "," : "") << w.ids[i];
      }
      out << ": " << w.detail << "\n";
    }
  }
  out << "overall: " << (all_pass ? "pass" : "fail") << "\n";
  return out.str();
}

int exit_code(const std::vector<CheckReport>& reports) {
  bool any_fail = false;
  for (const CheckReport& r : reports) {
    if (r.status == "error") return 2;
    if (r.status != "pass") any_fail = true;
  }
  return any_fail ? 1 : 0;
}

}  // namespace catq
