#include "permdyn/group_spec.hpp"

#include <stdexcept>

#include <json.hpp>

namespace permdyn {

GroupSpec make_group_spec(const PermGroup& g) {
  GroupSpec spec;
  spec.name = g.name();
  spec.degree = g.degree();
  for (const auto& p : g.generators()) spec.generators.push_back(p.images());
  return spec;
}

std::string group_spec_to_json(const GroupSpec& spec) {
  nlohmann::ordered_json doc;
  doc["name"] = spec.name;
  doc["degree"] = spec.degree;
  doc["generators"] = spec.generators;
  return doc.dump(2) + "\n";
}

GroupSpec group_spec_from_json(const std::string& text) {
  nlohmann::ordered_json doc;
  try {
    doc = nlohmann::ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("group spec: not valid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("name") || !doc.contains("degree") || !doc.contains("generators")) {
    throw std::invalid_argument("group spec: expected object with name, degree, generators");
  }
  GroupSpec spec;
  if (!doc["name"].is_string() || !doc["degree"].is_number_integer() || !doc["generators"].is_array()) {
    throw std::invalid_argument("group spec: wrong field types");
  }
  spec.name = doc["name"].get<std::string>();
  spec.degree = doc["degree"].get<int>();
  if (spec.degree < 1) throw std::invalid_argument("group spec: degree must be >= 1");
  for (const auto& gen : doc["generators"]) {
    if (!gen.is_array()) throw std::invalid_argument("group spec: generator must be an image array");
    std::vector<int> images;
    for (const auto& v : gen) {
      if (!v.is_number_integer()) throw std::invalid_argument("group spec: image must be an integer");
      images.push_back(v.get<int>());
    }
    if (static_cast<int>(images.size()) != spec.degree) {
      throw std::invalid_argument("group spec: generator length disagrees with degree");
    }
    try {
      Permutation check(images);  // validates bijectivity
    } catch (const std::invalid_argument&) {
      throw std::invalid_argument("group spec: generator is not a permutation");
    }
    spec.generators.push_back(std::move(images));
  }
  if (spec.generators.empty()) throw std::invalid_argument("group spec: at least one generator required");
  return spec;
}

PermGroup group_from_spec(const GroupSpec& spec, std::uint64_t enumeration_cap) {
  std::vector<Permutation> gens;
  gens.reserve(spec.generators.size());
  for (const auto& images : spec.generators) gens.emplace_back(images);
  return PermGroup::generate(std::move(gens), enumeration_cap, spec.name);
}

}  // namespace permdyn
