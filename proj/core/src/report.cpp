#include "conekit/report.hpp"

#include <filesystem>
#include <fstream>

#include <nlohmann/json.hpp>

namespace conekit {

using nlohmann::json;

bool RunReport::all_passed() const {
  for (const CheckResult& c : checks)
    if (!c.ok()) return false;
  return true;
}

namespace {

json check_to_json(const CheckResult& c) {
  json j;
  j["name"] = c.name;
  j["pass"] = c.pass;
  j["expected_fail"] = c.expected_fail;
  j["ok"] = c.ok();
  j["tag"] = c.tag;
  j["measured"] = c.measured;
  j["tolerances"] = c.tolerances;
  if (!c.note.empty()) j["note"] = c.note;
  return j;
}

}  // namespace

std::string RunReport::to_json() const {
  json j;
  j["suite"] = suite_name;
  j["seed"] = seed;
  j["environment"] = environment;
  j["all_passed"] = all_passed();
  json arr = json::array();
  for (const CheckResult& c : checks) arr.push_back(check_to_json(c));
  j["checks"] = arr;
  json tbl = json::array();
  for (const PlotTable& t : tables) {
    json jt;
    jt["name"] = t.name;
    jt["columns"] = t.columns;
    jt["rows"] = t.rows;
    tbl.push_back(jt);
  }
  j["tables"] = tbl;
  return j.dump(2) + "\n";
}

std::string RunReport::timings_json() const {
  json j;
  j["timings_ms"] = timings_ms;
  return j.dump(2) + "\n";
}

void RunReport::write(const std::string& dir) const {
  std::filesystem::create_directories(dir);
  {
    std::ofstream os(dir + "/report.json", std::ios::binary);
    os << to_json();
  }
  {
    std::ofstream os(dir + "/report_timings.json", std::ios::binary);
    os << timings_json();
  }
}

void emit_plots(const RunReport& report, const std::string& dir) {
  std::filesystem::create_directories(dir);
  for (const PlotTable& t : report.tables) {
    std::ofstream os(dir + "/" + t.name + ".csv");
    os.precision(17);
    for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
    os << "\n";
    for (const auto& row : t.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << std::scientific << row[i];
      os << "\n";
    }
  }
}

std::string environment_fingerprint() {
#if defined(__clang__)
  return "clang " + std::to_string(__clang_major__) + "." + std::to_string(__clang_minor__);
#elif defined(__GNUC__)
  return "gcc " + std::to_string(__GNUC__) + "." + std::to_string(__GNUC_MINOR__);
#else
  return "unknown compiler";
#endif
}

}  // namespace conekit
