#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "excrat/ramify.hpp"
#include "excrat/report.hpp"

namespace excrat {

struct SuiteOptions {
  std::uint64_t p = 3;
  unsigned k = 1;
  unsigned l = 1;
  std::optional<std::string> a_text;  // element of F_q in digit encoding
  std::vector<unsigned> n_list;       // perm extension degrees; {1,3,5} when empty
  std::uint64_t seed = 0;
  unsigned jobs = 1;
  bool force = false;  // lift the desk-scale bound r <= 100
};

// validates and materializes the parameters; throws std::invalid_argument
// naming the violated hypothesis
FamilyParams resolve_params(const SuiteOptions& opt);

Report run_build(const SuiteOptions& opt);
Report run_identity(const SuiteOptions& opt);
Report run_perm(const SuiteOptions& opt);
Report run_ramify(const SuiteOptions& opt);
Report run_monodromy(const SuiteOptions& opt);
// every suite above, concatenated in a fixed order; opt.jobs > 1 runs the
// suites concurrently with identical output
Report run_all(const SuiteOptions& opt);

}  // namespace excrat
