#pragma once

#include <string>
#include <vector>

#include "json.hpp"

namespace excrat {

enum class SectionStatus { pass, fail, info };

// One named check with its measurements. `data` keeps insertion order so
// serialized output is byte-stable.
struct Section {
  std::string name;
  SectionStatus status;
  nlohmann::ordered_json data;
};

struct Report {
  std::string command;
  nlohmann::ordered_json params;
  std::vector<Section> sections;
  // extra top-level keys hoisted into the JSON document (the monodromy
  // summary contract)
  nlohmann::ordered_json toplevel;

  bool all_passed() const;
  nlohmann::ordered_json to_json() const;  // carries "schema": 1
  std::string to_text() const;
};

const char* status_name(SectionStatus s);

}  // namespace excrat
