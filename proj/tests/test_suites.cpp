#include <stdexcept>
#include <string>

#include "doctest.h"
#include "excrat/suites.hpp"

using namespace excrat;

namespace {

const Section* find_section(const Report& rep, const std::string& name) {
  for (const auto& s : rep.sections)
    if (s.name == name) return &s;
  return nullptr;
}

}  // namespace

TEST_CASE("parameter resolution") {
  SuiteOptions opt;
  const FamilyParams P = resolve_params(opt);
  CHECK(P.p == 3);
  CHECK(P.r == 9);
  CHECK(P.q == 3);
  CHECK(P.d == 2);
  CHECK(P.a.to_string() == "2");

  opt.a_text = "2";
  CHECK(resolve_params(opt).a.index() == 2);
  opt.a_text = "1";
  CHECK_THROWS_AS(resolve_params(opt), std::invalid_argument);
  opt.a_text.reset();

  opt.l = 2;
  CHECK_THROWS_AS(resolve_params(opt), std::invalid_argument);
  opt.l = 1;

  opt.p = 11;
  CHECK_THROWS_AS(resolve_params(opt), std::invalid_argument);
  try {
    resolve_params(opt);
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("--force") != std::string::npos);
  }
  opt.force = true;
  CHECK(resolve_params(opt).r == 121);
}

TEST_CASE("parameter resolution over a quadratic coefficient field") {
  SuiteOptions opt;
  opt.k = 2;
  opt.l = 2;
  opt.a_text = "2,1";
  const FamilyParams P = resolve_params(opt);
  CHECK(P.r == 81);
  CHECK(P.q == 9);
  CHECK(P.d == 2);
  CHECK(P.a.to_string() == "2,1");
}

TEST_CASE("report rendering") {
  Report rep{"demo", {{"p", 3}}, {}, {}};
  rep.sections.push_back({"good", SectionStatus::pass, {{"x", 1}}});
  rep.sections.push_back({"note", SectionStatus::info, {{"y", "z"}}});
  CHECK(rep.all_passed());

  auto doc = rep.to_json();
  CHECK(doc["schema"] == 1);
  CHECK(doc["command"] == "demo");
  CHECK(doc["ok"] == true);
  CHECK(doc["sections"][0]["name"] == "good");
  CHECK(doc["sections"][1]["status"] == "info");

  const std::string text = rep.to_text();
  CHECK(text.find("[PASS] good x=1") != std::string::npos);
  CHECK(text.find("[INFO] note") != std::string::npos);
  CHECK(text.find("RESULT: PASS (1/1 checks passed)") != std::string::npos);

  rep.sections.push_back({"bad", SectionStatus::fail, {}});
  CHECK_FALSE(rep.all_passed());
  CHECK(rep.to_json()["ok"] == false);
  CHECK(rep.to_text().find("RESULT: FAIL (1/2 checks passed)") != std::string::npos);
}

TEST_CASE("monodromy suite carries the frozen summary keys") {
  const Report rep = run_monodromy(SuiteOptions{});
  CHECK(rep.all_passed());

  auto doc = rep.to_json();
  CHECK(doc["command"] == "monodromy");
  CHECK(doc["params"]["r"] == 9);
  CHECK(doc["order_G"] == 360);
  CHECK(doc["order_H"] == 8);
  CHECK(doc["order_A"] == 720);
  CHECK(doc["order_J"] == 16);
  CHECK(doc["index"] == 45);
  CHECK(doc["transitive_A"] == true);
  CHECK(doc["transitive_G"] == true);
  CHECK(doc["common_orbits"] == 1);
  CHECK(doc["primitive_G_on_GH"] == false);
  CHECK(doc["primitive_A_on_AJ"] == true);
  CHECK(doc["core_order"] == 1);
  CHECK(doc["AmodG_cyclic_order"] == 2);
}

TEST_CASE("perm suite judges odd degrees and reports even ones") {
  SuiteOptions opt;
  opt.n_list = {1, 2, 3};
  const Report rep = run_perm(opt);
  REQUIRE(rep.sections.size() == 3);

  CHECK(rep.sections[0].name == "perm_n_1");
  CHECK(rep.sections[0].status == SectionStatus::pass);
  CHECK(rep.sections[0].data["points"] == 4);
  CHECK(rep.sections[0].data["bijection"] == true);

  CHECK(rep.sections[1].name == "perm_n_2");
  CHECK(rep.sections[1].status == SectionStatus::info);
  CHECK(rep.sections[1].data["bijection"] == false);
  CHECK(rep.sections[1].data["max_hit"] == 5);

  CHECK(rep.sections[2].name == "perm_n_3");
  CHECK(rep.sections[2].status == SectionStatus::pass);
  CHECK(rep.sections[2].data["points"] == 28);

  CHECK(rep.all_passed());
}

TEST_CASE("identity suite includes the r=9 decomposition") {
  const Report rep = run_identity(SuiteOptions{});
  CHECK(rep.all_passed());
  const Section* dec = find_section(rep, "decomposition");
  REQUIRE(dec != nullptr);
  CHECK(dec->data["matches_f"] == true);
  CHECK(find_section(rep, "functional_equation") != nullptr);
  CHECK(find_section(rep, "sigma_twist") != nullptr);
}

TEST_CASE("identity suite at r=25 omits the decomposition") {
  SuiteOptions opt;
  opt.p = 5;
  const Report rep = run_identity(opt);
  CHECK(rep.all_passed());
  CHECK(find_section(rep, "decomposition") == nullptr);
  const Section* eq = find_section(rep, "functional_equation");
  REQUIRE(eq != nullptr);
  CHECK(eq->data["nonsquares_checked"] == 2);
}

TEST_CASE("ramify suite frozen shape") {
  const Report rep = run_ramify(SuiteOptions{});
  CHECK(rep.all_passed());

  const Section* locus = find_section(rep, "branch_points");
  REQUIRE(locus != nullptr);
  CHECK(locus->data["certified_complete"] == true);
  CHECK(locus->data["points"].size() == 2);

  const Section* fi = find_section(rep, "filtration_inf");
  REQUIRE(fi != nullptr);
  CHECK(fi->data["orders"] == nlohmann::ordered_json({36, 9, 1}));

  const Section* fq = find_section(rep, "filtration_quadratic");
  REQUIRE(fq != nullptr);
  CHECK(fq->data["orders"] == nlohmann::ordered_json({5, 1}));

  const Section* rh = find_section(rep, "riemann_hurwitz");
  REQUIRE(rh != nullptr);
  CHECK(rh->data["lhs"] == 718);

  auto doc = rep.to_json();
  CHECK(doc["branch_points"].size() == 2);
  CHECK(doc["fiber_over_0"] == nlohmann::ordered_json({{5, 9}}));
  CHECK(doc["fiber_over_inf"] == nlohmann::ordered_json({{18, 2}, {9, 1}}));
  CHECK(doc["filtration_inf"] == nlohmann::ordered_json({36, 9, 1}));
  CHECK(doc["filtration_quadratic"] == nlohmann::ordered_json({5, 1}));
  CHECK(doc["rh_ok"] == true);
}

TEST_CASE("full run is deterministic and parallel-stable") {
  SuiteOptions opt;
  const std::string once = run_all(opt).to_json().dump(2);
  const std::string again = run_all(opt).to_json().dump(2);
  CHECK(once == again);

  opt.jobs = 4;
  CHECK(run_all(opt).to_json().dump(2) == once);

  CHECK(once.find("\"ok\": true") != std::string::npos);
  CHECK(once.find("\"order_G\": 360") != std::string::npos);
}
