#include <algorithm>
#include <cstdint>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>

#include <doctest.h>

#include "permdyn/block_systems.hpp"
#include "permdyn/catalog.hpp"
#include "permdyn/group_spec.hpp"
#include "permdyn/numeric.hpp"
#include "permdyn/perm_group.hpp"

using namespace permdyn;

namespace {

std::uint64_t factorial(int n) {
  std::uint64_t f = 1;
  for (int k = 2; k <= n; ++k) f *= static_cast<std::uint64_t>(k);
  return f;
}

// Expected order of each bundled group, computed independently of the
// builders: n, 2n, n!, n!/2, p(p-1), q^3 - q, and the four pinned fixture
// orders.
std::uint64_t expected_order(const std::string& name) {
  static const std::map<std::string, std::uint64_t> fixtures = {
      {"PSL(3,2)", 168},
      {"PSL(2,11)", 660},
      {"M11", 7920},
      {"M23", 10200960},
  };
  if (auto it = fixtures.find(name); it != fixtures.end()) return it->second;
  if (name.rfind("AGL1(", 0) == 0) {
    std::uint64_t p = std::stoull(name.substr(5));
    return p * (p - 1);
  }
  if (name.rfind("PGL(2,", 0) == 0) {
    std::uint64_t q = std::stoull(name.substr(6));
    return q * q * q - q;
  }
  std::uint64_t n = std::stoull(name.substr(1));
  switch (name[0]) {
    case 'C': return n;
    case 'D': return 2 * n;
    case 'S': return factorial(static_cast<int>(n));
    default: return factorial(static_cast<int>(n)) / 2;
  }
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE_MESSAGE(in.good(), path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

TEST_SUITE("catalog") {

TEST_CASE("catalog names are complete and distinct") {
  const auto& names = catalog_names();
  CHECK(names.size() == 49);
  std::set<std::string> uniq(names.begin(), names.end());
  CHECK(uniq.size() == names.size());
  for (const char* expect : {"C1", "C12", "D3", "D12", "S3", "S8", "A3", "A8",
                             "AGL1(2)", "AGL1(11)", "PGL(2,2)", "PGL(2,8)",
                             "PSL(3,2)", "PSL(2,11)", "M11", "M23"})
    CHECK(uniq.count(expect) == 1);
  CHECK(uniq.count("C13") == 0);
  CHECK(uniq.count("S2") == 0);
}

TEST_CASE("every catalog group constructs with the expected order") {
  for (const std::string& name : catalog_names()) {
    CAPTURE(name);
    PermGroup g = catalog_group(name);
    CHECK(g.name() == name);
    CHECK(g.is_transitive());
    CHECK(g.order() == mpz_class(static_cast<unsigned long>(expected_order(name))));
    if (name == "M23") {
      CHECK(g.degree() == 23);
      CHECK_FALSE(g.has_elements());  // above the enumeration cap
    } else {
      CHECK(g.has_elements());
    }
  }
}

TEST_CASE("unknown names are rejected") {
  CHECK_THROWS_AS(catalog_group("C13"), std::out_of_range);
  CHECK_THROWS_AS(catalog_group("M12"), std::out_of_range);
  CHECK_THROWS_AS(catalog_group("PGL(2,9)"), std::out_of_range);
  CHECK_THROWS_AS(catalog_group(""), std::out_of_range);
  CHECK_THROWS_AS(catalog_group("psl(3,2)"), std::out_of_range);
}

TEST_CASE("fixture documents round trip and match the shipped files") {
  const std::map<std::string, std::string> files = {
      {"PSL(3,2)", "psl_3_2.json"},
      {"PSL(2,11)", "psl_2_11_deg11.json"},
      {"M11", "m11.json"},
      {"M23", "m23.json"},
  };
  for (const auto& [name, file] : files) {
    CAPTURE(name);
    auto doc = fixture_document(name);
    REQUIRE(doc.has_value());
    CHECK(group_spec_to_json(group_spec_from_json(*doc)) == *doc);
    CHECK(*doc == slurp(std::string(PERMDYN_FIXTURE_DIR) + "/" + file));
  }
  CHECK_FALSE(fixture_document("S4").has_value());
  CHECK_FALSE(fixture_document("").has_value());
}

TEST_CASE("fixture degrees match the exceptional actions") {
  CHECK(catalog_group("PSL(3,2)").degree() == 7);
  CHECK(catalog_group("PSL(2,11)").degree() == 11);
  CHECK(catalog_group("M11").degree() == 11);

  // the degree-11 PSL(2,11) is a different action from the natural degree-12
  // one, but the abstract group is the same size
  PermGroup exceptional = catalog_group("PSL(2,11)");
  CHECK(exceptional.order() == 660);
  CHECK(full_cycle_census(exceptional).full_cycles == 120);
}

TEST_CASE("fixture groups classify as projective or sporadic") {
  ClassificationVerdict v32 = classify_primitive_full_cycle(catalog_group("PSL(3,2)"));
  CHECK(class_case_tag(v32.tag) == "2b");
  CHECK(v32.proj_dim == 3);
  CHECK(v32.proj_q == 2);

  ClassificationVerdict v211 = classify_primitive_full_cycle(catalog_group("PSL(2,11)"));
  CHECK(class_case_tag(v211.tag) == "2c");

  ClassificationVerdict v11 = classify_primitive_full_cycle(catalog_group("M11"));
  CHECK(class_case_tag(v11.tag) == "2c");

  ClassificationVerdict v23 = classify_primitive_full_cycle(catalog_group("M23"));
  CHECK(class_case_tag(v23.tag) == "2c");
  CHECK(v23.order == 10200960);
  CHECK_FALSE(v23.solvable.has_value());  // order-only group, no element list
}

TEST_CASE("bound verification passes on a catalog cross-section") {
  for (const char* name : {"C8", "D6", "S5", "A7", "AGL1(7)", "PGL(2,4)",
                           "PSL(3,2)", "PSL(2,11)", "M11"}) {
    CAPTURE(name);
    BoundReport report = verify_bound(catalog_group(name));
    CHECK_FALSE(report.violated);
    CHECK_FALSE(report.chains_truncated);
  }
}

}  // TEST_SUITE
