#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "permdyn/perm_group.hpp"

namespace permdyn {

// Names of the bundled groups in catalog order: cyclic C1..C12, dihedral
// D3..D12, symmetric S3..S8, alternating A3..A8, AGL1(p) for p in
// {2, 3, 5, 7, 11}, PGL(2,q) for q in {2, 3, 4, 5, 7, 8}, and four
// fixture-backed groups: PSL(3,2) on 7 points, PSL(2,11) on 11 points,
// M11 on 11 points, M23 on 23 points.
const std::vector<std::string>& catalog_names();

// Construct a bundled group by name. Constructive entries call the family
// builders; fixture-backed entries are parsed from their generator documents
// and verified (name, degree, exact order, transitivity) before being
// returned, so a corrupt document throws std::runtime_error instead of
// producing a wrong group. Unknown names throw std::out_of_range.
//
// M23 has order 10200960, above the default enumeration cap, so it comes
// back order-only: fine for order and degree checks, not for censuses.
PermGroup catalog_group(const std::string& name,
                        std::uint64_t cap = kDefaultEnumerationCap);

// Raw generator document for fixture-backed entries, byte-identical to the
// file shipped under data/fixtures. std::nullopt for constructive entries.
std::optional<std::string> fixture_document(const std::string& name);

}  // namespace permdyn
