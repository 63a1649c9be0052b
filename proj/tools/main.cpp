#include <cstdlib>
#include <iostream>
#include <stdexcept>

#include "CLI11.hpp"
#include "excrat/suites.hpp"

namespace {

struct CliArgs {
  excrat::SuiteOptions opt;
  bool json = false;
};

void add_common(CLI::App* cmd, CliArgs& args, bool with_n) {
  cmd->add_option("--p", args.opt.p, "odd prime characteristic")->check(CLI::PositiveNumber);
  cmd->add_option("--k", args.opt.k, "square exponent: r = p^(2k)")->check(CLI::PositiveNumber);
  cmd->add_option("--l", args.opt.l, "coefficient exponent: q = p^l")->check(CLI::PositiveNumber);
  cmd->add_option("--a", args.opt.a_text,
                  "family parameter, a nonsquare of F_q encoded as comma-separated digits");
  if (with_n)
    cmd->add_option("--n", args.opt.n_list, "extension degrees to test (default 1,3,5)")
        ->delimiter(',');
  cmd->add_option("--jobs", args.opt.jobs, "parallel suite workers")->check(CLI::PositiveNumber);
  cmd->add_flag("--json", args.json, "emit the report as JSON");
  cmd->add_flag("--force", args.opt.force, "lift the desk-scale bound on r");
}

int emit(const excrat::Report& rep, bool as_json) {
  if (as_json)
    std::cout << rep.to_json().dump(2) << "\n";
  else
    std::cout << rep.to_text();
  return rep.all_passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact construction and verification of the exceptional rational family"};
  app.require_subcommand(1);

  CliArgs args;
  if (const char* seed = std::getenv("EXCRAT_SEED"))
    args.opt.seed = std::strtoull(seed, nullptr, 10);

  using Runner = excrat::Report (*)(const excrat::SuiteOptions&);
  struct Command {
    const char* name;
    const char* help;
    Runner run;
    bool with_n;
  };
  const Command commands[] = {
      {"build", "construct f and the covering scene", excrat::run_build, false},
      {"identity", "symbolic identities and invariances", excrat::run_identity, false},
      {"perm", "permutation behaviour on extension lines", excrat::run_perm, true},
      {"ramify", "fibers, branch locus, filtrations", excrat::run_ramify, false},
      {"monodromy", "group orders, orbits, primitivity", excrat::run_monodromy, false},
      {"all", "every suite in order", excrat::run_all, true},
  };

  Runner chosen = nullptr;
  for (const Command& c : commands) {
    CLI::App* sub = app.add_subcommand(c.name, c.help);
    add_common(sub, args, c.with_n);
    sub->callback([&chosen, run = c.run] { chosen = run; });
  }

  CLI11_PARSE(app, argc, argv);

  try {
    return emit(chosen(args.opt), args.json);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::length_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
