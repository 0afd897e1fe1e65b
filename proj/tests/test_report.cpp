#include "catch_amalgamated.hpp"

#include <endomon/report.hpp>

using namespace endomon;

TEST_CASE("envelope carries the schema version") {
  auto const j = envelope("group info");
  CHECK(j["schema_version"] == 1);
  CHECK(j["command"] == "group info");
  CHECK(j.begin().key() == "schema_version");
}

TEST_CASE("census json") {
  JkGroup const g(GroupParams(2, 1, 0));
  auto const    j = to_json(census(g));
  CHECK(j["normalized_count"] == 17);
  CHECK(j["endomorphism_count"] == 17 * 65536);
  CHECK(j["params"]["p"] == 2);
  CHECK(j["params"]["lambda"] == Json::array({1, 0}));
  CHECK(j["kinds"]["abelian_image"] == 15);
  CHECK(j["noncommuting_pair"].is_array());
  CHECK_FALSE(j.contains("elapsed_seconds"));
  // key order is insertion order
  std::vector<std::string> keys;
  for (auto it = j.begin(); it != j.end(); ++it) {
    keys.push_back(it.key());
  }
  CHECK(keys.front() == "params");
  CHECK(keys[1] == "normalized_count");

  auto const j01 = to_json(census(JkGroup(GroupParams(2, 0, 1))));
  CHECK(j01["noncommuting_pair"].is_null());
}

TEST_CASE("element and endomorphism text") {
  JkGroup const g(GroupParams(3, 1, 0));
  CHECK(to_json(g.parse("1,2,0,0|0,0,1,0")) == "1,2,0,0|0,0,1,0");
  auto const e = to_json(identity_endo(g));
  REQUIRE(e.size() == 4);
  CHECK(e[2] == "0,0,1,0|0,0,0,0");
  CHECK(to_json(Sp1Element::adjoined_identity(3)) == "1");
  CHECK(to_json(Sp1Element::vector(FpVec4({1, 2, 0, 1}, 3))) == Json::array({1, 2, 0, 1}));
  FpMat4 m(2);
  m.set(0, 3, 1);
  CHECK(to_json(m)[0] == Json::array({0, 0, 0, 1}));
}

TEST_CASE("orbit histogram formats") {
  auto const c   = orbit_census(GroupParams(2, 1, 0));
  auto const csv = histogram_csv(c);
  CHECK(csv == "length,count\n1,131072\n16,61440\n");
  auto const md = histogram_markdown(c);
  CHECK(md.find("| 16 | 61440 |") != std::string::npos);
  CHECK(md.find("| **total** | 192512 |") != std::string::npos);
  auto const j = to_json(c);
  CHECK(j["method"] == "rank-formula");
  CHECK(j["total_orbits"] == 192512);
  CHECK(j["histogram"][1]["length"] == 16);
  CHECK(j["histogram"][1]["count"] == 61440);
}

TEST_CASE("table formats") {
  auto const t  = build_exceptional_table();
  auto const md = exceptional_tables_markdown(t);
  CHECK(md.find("| phi1 | a2b1b2 | a2b1b2 | a1b2 | 1 |") != std::string::npos);
  CHECK(md.find("| phi1 | phi5+M1 | phi6+M2 | phi2+M3 | phi1+M3 | phi4+M2 | phi3+M1 |") != std::string::npos);
  auto const j = to_json(t);
  CHECK(j["composition"][1][0] == "phi3");
  CHECK(j["composition"][0][3] == "phi1+M3");
  CHECK(j["phis"].size() == 6);
  CHECK(cell_string({2, 0}) == "phi2");
  CHECK(cell_string({6, 2}) == "phi6+M2");
}

TEST_CASE("census markdown") {
  auto const md = census_markdown(census(JkGroup(GroupParams(2, 1, 1))));
  CHECK(md.find("| 2 | (1,1) | 23 | 1 | 1 | 15 | 6 | 1507328 |") != std::string::npos);
}

TEST_CASE("section system json") {
  auto const j = to_json(solve_phi_section_system());
  CHECK(j["consistent"] == true);
  CHECK(j["solution_count_log2"] == 10);
  CHECK(j["witness"].size() == 6);
  CHECK(j["witness"][0].get<std::string>().size() == 16);
}
