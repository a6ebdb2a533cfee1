#pragma once

#include <cstdint>

#include "permdyn/perm_group.hpp"

namespace permdyn {

// Natural actions of the classical families on {0, ..., n-1}. Each returns a
// generated group with a canonical name ("C6", "D4", "S5", "A5").

// <(0 1 ... n-1)>, n >= 1.
PermGroup cyclic_group(int n, std::uint64_t cap = kDefaultEnumerationCap);

// Rotation plus the reflection i -> (n - i) mod n; order 2n, n >= 3.
PermGroup dihedral_group(int n, std::uint64_t cap = kDefaultEnumerationCap);

// <(0 1), (0 1 ... n-1)>, n >= 2 (n == 1 gives the trivial group).
PermGroup symmetric_group(int n, std::uint64_t cap = kDefaultEnumerationCap);

// <(0 1 2), ...>: for n >= 4 a 3-cycle together with an even full-support
// element; order n!/2, n >= 3.
PermGroup alternating_group(int n, std::uint64_t cap = kDefaultEnumerationCap);

}  // namespace permdyn
