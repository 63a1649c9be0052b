#include "excrat/report.hpp"

#include <sstream>

namespace excrat {

const char* status_name(SectionStatus s) {
  switch (s) {
    case SectionStatus::pass: return "pass";
    case SectionStatus::fail: return "fail";
    default: return "info";
  }
}

bool Report::all_passed() const {
  for (const auto& s : sections)
    if (s.status == SectionStatus::fail) return false;
  return true;
}

nlohmann::ordered_json Report::to_json() const {
  nlohmann::ordered_json doc;
  doc["schema"] = 1;
  doc["command"] = command;
  doc["params"] = params;
  doc["ok"] = all_passed();
  for (const auto& [key, value] : toplevel.items()) doc[key] = value;
  auto& out = doc["sections"] = nlohmann::ordered_json::array();
  for (const auto& s : sections) {
    nlohmann::ordered_json js;
    js["name"] = s.name;
    js["status"] = status_name(s.status);
    js["data"] = s.data;
    out.push_back(std::move(js));
  }
  return doc;
}

std::string Report::to_text() const {
  std::ostringstream out;
  out << "command: " << command << "\n";
  out << "params:";
  for (const auto& [key, value] : params.items()) out << ' ' << key << '=' << value.dump();
  out << "\n";
  std::size_t checks = 0, failed = 0;
  for (const auto& s : sections) {
    const char* tag = s.status == SectionStatus::pass   ? "PASS"
                      : s.status == SectionStatus::fail ? "FAIL"
                                                        : "INFO";
    if (s.status != SectionStatus::info) {
      ++checks;
      if (s.status == SectionStatus::fail) ++failed;
    }
    out << '[' << tag << "] " << s.name;
    for (const auto& [key, value] : s.data.items()) out << ' ' << key << '=' << value.dump();
    out << "\n";
  }
  out << "RESULT: " << (failed == 0 ? "PASS" : "FAIL") << " (" << (checks - failed) << '/'
      << checks << " checks passed)\n";
  return out.str();
}

}  // namespace excrat
