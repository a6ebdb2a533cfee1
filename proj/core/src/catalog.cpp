#include "permdyn/catalog.hpp"

#include <algorithm>
#include <stdexcept>

#include "permdyn/group_spec.hpp"
#include "permdyn/standard_groups.hpp"
#include "permdyn/wreath.hpp"

namespace permdyn {

namespace {

// Fixture documents, byte-identical to data/fixtures/*.json. Embedding them
// keeps catalog_group independent of any runtime data directory; a test
// checks the files against these strings so they cannot drift apart.

constexpr const char* kPsl32Doc = R"json({
  "name": "PSL(3,2)",
  "degree": 7,
  "generators": [
    [
      0,
      2,
      1,
      3,
      4,
      6,
      5
    ],
    [
      0,
      1,
      2,
      4,
      3,
      6,
      5
    ],
    [
      2,
      1,
      0,
      3,
      6,
      5,
      4
    ],
    [
      0,
      1,
      2,
      5,
      6,
      3,
      4
    ],
    [
      4,
      1,
      6,
      3,
      0,
      5,
      2
    ],
    [
      0,
      5,
      6,
      3,
      4,
      1,
      2
    ]
  ]
}
)json";

// Action of PSL(2,11) on the 11 cosets of an A5 subgroup, one of the two
// exceptional transitive degrees below the natural degree 12.
constexpr const char* kPsl211Doc = R"json({
  "name": "PSL(2,11)",
  "degree": 11,
  "generators": [
    [
      1,
      2,
      4,
      6,
      8,
      9,
      7,
      10,
      5,
      3,
      0
    ],
    [
      1,
      3,
      5,
      7,
      8,
      4,
      10,
      6,
      9,
      0,
      2
    ]
  ]
}
)json";

constexpr const char* kM11Doc = R"json({
  "name": "M11",
  "degree": 11,
  "generators": [
    [
      1,
      2,
      3,
      4,
      5,
      6,
      7,
      8,
      9,
      10,
      0
    ],
    [
      0,
      1,
      6,
      9,
      5,
      3,
      10,
      2,
      8,
      4,
      7
    ]
  ]
}
)json";

constexpr const char* kM23Doc = R"json({
  "name": "M23",
  "degree": 23,
  "generators": [
    [
      1,
      2,
      3,
      4,
      5,
      6,
      7,
      8,
      9,
      10,
      11,
      12,
      13,
      14,
      15,
      16,
      17,
      18,
      19,
      20,
      21,
      22,
      0
    ],
    [
      0,
      1,
      16,
      12,
      3,
      5,
      8,
      17,
      2,
      6,
      11,
      22,
      13,
      18,
      19,
      14,
      9,
      10,
      4,
      21,
      15,
      20,
      7
    ]
  ]
}
)json";

struct Fixture {
  const char* name;
  const char* doc;
  int degree;
  unsigned long order;
};

constexpr Fixture kFixtures[] = {
    {"PSL(3,2)", kPsl32Doc, 7, 168},
    {"PSL(2,11)", kPsl211Doc, 11, 660},
    {"M11", kM11Doc, 11, 7920},
    {"M23", kM23Doc, 23, 10200960},
};

const Fixture* find_fixture(const std::string& name) {
  for (const Fixture& f : kFixtures)
    if (name == f.name) return &f;
  return nullptr;
}

PermGroup load_fixture(const Fixture& f, std::uint64_t cap) {
  GroupSpec spec = group_spec_from_json(f.doc);
  if (spec.name != f.name || spec.degree != f.degree)
    throw std::runtime_error("fixture document mismatch for " +
                             std::string(f.name));
  PermGroup g = group_from_spec(spec, cap);
  if (g.order() != f.order || !g.is_transitive())
    throw std::runtime_error("fixture verification failed for " +
                             std::string(f.name));
  return g;
}

// Trailing integer of a family name like "D10"; -1 if malformed.
int family_index(const std::string& name) {
  if (name.size() < 2) return -1;
  int value = 0;
  for (std::size_t i = 1; i < name.size(); ++i) {
    if (name[i] < '0' || name[i] > '9') return -1;
    value = value * 10 + (name[i] - '0');
  }
  return value;
}

std::vector<std::string> build_names() {
  std::vector<std::string> names;
  for (int n = 1; n <= 12; ++n) names.push_back("C" + std::to_string(n));
  for (int n = 3; n <= 12; ++n) names.push_back("D" + std::to_string(n));
  for (int n = 3; n <= 8; ++n) names.push_back("S" + std::to_string(n));
  for (int n = 3; n <= 8; ++n) names.push_back("A" + std::to_string(n));
  for (int p : {2, 3, 5, 7, 11})
    names.push_back("AGL1(" + std::to_string(p) + ")");
  for (int q : {2, 3, 4, 5, 7, 8})
    names.push_back("PGL(2," + std::to_string(q) + ")");
  for (const Fixture& f : kFixtures) names.push_back(f.name);
  return names;
}

}  // namespace

const std::vector<std::string>& catalog_names() {
  static const std::vector<std::string> names = build_names();
  return names;
}

PermGroup catalog_group(const std::string& name, std::uint64_t cap) {
  const auto& names = catalog_names();
  if (std::find(names.begin(), names.end(), name) == names.end())
    throw std::out_of_range("not a catalog group: " + name);
  if (const Fixture* f = find_fixture(name)) return load_fixture(*f, cap);
  if (name.rfind("AGL1(", 0) == 0)
    return agl1(std::stoi(name.substr(5)), cap);
  if (name.rfind("PGL(2,", 0) == 0)
    return pgl(2, std::stoi(name.substr(6)), cap);
  int n = family_index(name);
  switch (name[0]) {
    case 'C': return cyclic_group(n, cap);
    case 'D': return dihedral_group(n, cap);
    case 'S': return symmetric_group(n, cap);
    default: return alternating_group(n, cap);
  }
}

std::optional<std::string> fixture_document(const std::string& name) {
  if (const Fixture* f = find_fixture(name)) return std::string(f->doc);
  return std::nullopt;
}

}  // namespace permdyn
