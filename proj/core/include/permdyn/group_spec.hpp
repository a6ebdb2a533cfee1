#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "permdyn/perm_group.hpp"

namespace permdyn {

// On-disk description of a generated group: a name, the degree, and the
// generators as image tables. The JSON emitted by to_json is canonical
// (fixed key order, no whitespace variation), so emit(parse(emit(x))) is
// byte-identical to emit(x).
struct GroupSpec {
  std::string name;
  int degree = 0;
  std::vector<std::vector<int>> generators;
};

GroupSpec make_group_spec(const PermGroup& g);

std::string group_spec_to_json(const GroupSpec& spec);

// Throws std::invalid_argument on malformed documents (wrong types, missing
// keys, image tables that are not bijections of the stated degree).
GroupSpec group_spec_from_json(const std::string& text);

PermGroup group_from_spec(const GroupSpec& spec,
                          std::uint64_t enumeration_cap = kDefaultEnumerationCap);

}  // namespace permdyn
