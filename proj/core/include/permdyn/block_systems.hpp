#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "permdyn/perm_group.hpp"

namespace permdyn {

// Partition of {0..n-1} into equal-size blocks, canonical form: each block
// sorted ascending, blocks ordered by their smallest element.
struct BlockSystem {
  int degree = 0;
  std::vector<std::vector<int>> blocks;

  int block_size() const { return blocks.empty() ? 0 : static_cast<int>(blocks.front().size()); }
  int block_count() const { return static_cast<int>(blocks.size()); }
  bool is_trivial() const { return block_count() == 1 || block_size() == 1; }
  // True when every block of *this is contained in some block of coarser.
  bool refines(const BlockSystem& coarser) const;

  friend bool operator==(const BlockSystem& a, const BlockSystem& b) {
    return a.degree == b.degree && a.blocks == b.blocks;
  }
};

BlockSystem singleton_partition(int degree);
BlockSystem one_block_partition(int degree);

// All minimal nontrivial G-invariant partitions: for each point δ != 0, the
// finest invariant partition merging {0, δ}, deduplicated and filtered down to
// the refinement-minimal ones. Empty result == primitive group.
// Throws std::invalid_argument on intransitive input.
std::vector<BlockSystem> minimal_block_systems(const PermGroup& g);

// One maximal chain of invariant partitions, singletons first, one-block
// partition last, with the primitive quotient action at every step.
struct BlockChain {
  std::string group_name;
  int degree = 0;
  std::vector<BlockSystem> partitions;  // length steps+1, strictly coarsening
  std::vector<PermGroup> gammas;        // fine-to-coarse step actions, length steps
  std::vector<bool> affine;             // is_affine_type(gammas[i])
  int d = 0;                            // number of non-affine steps
};

inline constexpr int kDefaultChainLimit = 64;

struct ChainEnumeration {
  std::vector<BlockChain> chains;
  bool truncated = false;  // limit reached before the depth-first walk finished
};

// Depth-first enumeration of all maximal chains, truncated at `limit` chains.
// Requires a transitive, enumerated group (element list is needed to restrict
// block stabilizers); enumeration errors propagate.
ChainEnumeration maximal_chains(const PermGroup& g, int limit = kDefaultChainLimit);

// True iff degree is a prime p and |H| divides p(p-1). For a transitive group
// of prime degree this is exactly the condition C_p <= H <= AGL_1(p).
// Throws std::invalid_argument on intransitive input.
bool is_affine_type(const PermGroup& h);

// phi(n) / (n * 2^d) for the chain's degree n and non-affine step count d.
mpq_class chain_bound(const BlockChain& chain);

struct ChainSummary {
  std::vector<int> gamma_degrees;
  int d = 0;
  mpq_class bound;
};

struct BoundReport {
  std::string name;
  int degree = 0;
  mpz_class order;
  mpz_class full_cycle_count;
  mpq_class pi;  // full-cycle proportion
  std::vector<ChainSummary> chains;
  bool chains_truncated = false;
  int min_d = 0;
  int max_d = 0;
  bool violated = false;  // pi exceeded some chain's bound (expected: never)
};

// Census plus the bound over every maximal chain. Enumeration errors propagate.
BoundReport verify_bound(const PermGroup& g, int chain_limit = kDefaultChainLimit);

std::string bound_report_to_json(const BoundReport& report);

// Classification of a primitive group containing a full cycle, by the
// published table: affine prime-degree case, the natural S4, alternating or
// symmetric in natural action, projective groups between PSL_d(q) and
// PGammaL_d(q) on projective space, and three sporadic actions. UNKNOWN means
// the table was not matched, which for genuine inputs indicates a bug.
enum class ClassCase { AffinePrime, NaturalS4, AltOrSym, ProjectiveLinear, Sporadic, Unknown };

// Report tag vocabulary: "1a", "1b", "2a", "2b", "2c", "UNKNOWN".
std::string class_case_tag(ClassCase c);

struct ClassificationVerdict {
  ClassCase tag = ClassCase::Unknown;
  int degree = 0;
  mpz_class order;
  std::optional<bool> solvable;  // present when the group is enumerated
  // ProjectiveLinear parameters: n = (q^d - 1)/(q - 1), |G| = |PGL_d(q)| * e.
  int proj_dim = 0;
  std::uint64_t proj_q = 0;
  int proj_aut_factor = 0;
};

// Throws std::invalid_argument unless g is primitive and contains a full
// cycle (for order-only groups, full-cycle presence is established by a
// seeded random search over generator words).
ClassificationVerdict classify_primitive_full_cycle(const PermGroup& g, std::uint64_t seed = 1);

// Largest order of a transitive iterated wreath product of cyclic groups on n
// points: c(1) = 1, c(n) = max over divisors b > 1 of b * c(n/b)^b. Memoized.
// Throws std::domain_error for n = 0.
mpz_class max_cyclic_tower_order(unsigned n);

}  // namespace permdyn
