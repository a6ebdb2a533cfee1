#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "permdyn/perm_group.hpp"

namespace permdyn {

// Imprimitive machinery around wreath products. The ambient n = r*s points
// carry r interleaved blocks D_i = {i + k*r : 0 <= k < s}, chosen so that
// tau = (0 1 ... n-1) permutes the blocks as an r-cycle and tau^r lies in the
// kernel of the block action.

inline constexpr int kMaxWreathDegree = 32;

struct WreathContext {
  PermGroup block_group;  // H, transitive on s points
  int r = 0;              // block count
  int s = 0;              // block size
  int n = 0;              // ambient degree r*s
  Permutation tau;        // (0 1 ... n-1)
  PermGroup kernel;       // H^r on the ambient points (order-only when huge)
};

// Throws std::invalid_argument for intransitive H, r < 1, or an H that does
// not contain the standard rotation (0 1 ... s-1) (align it first);
// std::length_error when r*s exceeds kMaxWreathDegree.
WreathContext make_wreath_context(const PermGroup& h, int r,
                                  std::uint64_t cap = kDefaultEnumerationCap);

// Conjugate of h relabeling its lexicographically least full cycle to the
// standard rotation, the coordinate convention every WreathContext assumes.
// Returns h unchanged when the rotation is already a member. Throws
// std::invalid_argument when h has no full cycle; EnumerationRequired
// propagates when h is order-only and the member scan is impossible.
PermGroup rotation_aligned(const PermGroup& h, std::uint64_t cap = kDefaultEnumerationCap);

// H wr V on r*s points: H acts on each block, V (transitive on r points)
// permutes the blocks. The chain order is checked against |H|^r * |V|.
PermGroup wreath_product(const PermGroup& h, const PermGroup& v,
                         std::uint64_t cap = kDefaultEnumerationCap);

// Left fold of wreath_product over the tower; parts[0] is the outermost
// (block-permuting) factor and parts.back() acts inside the finest blocks.
PermGroup iterated_wreath(const std::vector<PermGroup>& parts,
                          std::uint64_t cap = kDefaultEnumerationCap);

// Affine maps x -> a*x + b on F_p, p prime <= 1000 (std::domain_error
// otherwise). Order p(p-1); enumeration follows the usual cap and memory
// budget, so large p yields an order-only group.
PermGroup agl1(int p, std::uint64_t cap = kDefaultEnumerationCap);

// Projective linear groups acting on the (q^d - 1)/(q - 1) points of the
// projective space over F_q, q = p^f <= 16 a prime power, d >= 2. Points are
// normalized so the first nonzero coordinate is 1, indexed in encoding order.
// Throws std::domain_error for bad (d, q), std::length_error when the degree
// exceeds 64. Orders are checked against the standard formulas.
PermGroup pgl(int d, int q, std::uint64_t cap = kDefaultEnumerationCap);
PermGroup psl(int d, int q, std::uint64_t cap = kDefaultEnumerationCap);

// Multiplication by the least generator of F_{q^d}^x as a permutation of the
// projective points: a full cycle, verified to lie in pgl(d, q).
Permutation singer_cycle(int d, int q);

// Decompose a block-preserving g into its actions on D_0..D_{r-1}, each read
// in increasing point order. Throws std::invalid_argument when g moves some
// block off itself. tuple_to_perm is the inverse.
std::vector<Permutation> kernel_tuple(const WreathContext& ctx, const Permutation& g);
Permutation tuple_to_perm(const WreathContext& ctx, const std::vector<Permutation>& sigma);

// sigma[0] * sigma[1] * ... * sigma[r-1] * rho with rho = (0 1 ... s-1),
// composed left to right. tuple_to_perm(sigma) * tau is an n-cycle exactly
// when this product is an s-cycle.
Permutation first_entry_power(const WreathContext& ctx, const std::vector<Permutation>& sigma);

// Proportion of n-cycles in the coset K*t, where K is an enumerated group of
// block-preserving permutations and t is a full cycle mapping blocks to
// blocks. EnumerationRequired propagates from K.elements().
mpq_class coset_census(const WreathContext& ctx, const PermGroup& k, const Permutation& t);

struct KernelCensusRecord {
  std::string block_group;
  int s = 0;
  int r = 0;
  mpz_class kernel_order;
  bool full_kernel = false;
  mpq_class measured;  // proportion of n-cycles in K*tau
  mpq_class claimed;   // bound it is checked against
  bool ok = false;     // measured <= claimed
};

struct KernelCensusReport {
  std::vector<KernelCensusRecord> records;
  bool all_ok = true;
};

// Exact census of K*tau for the full kernel H^r and for up to `trials`
// random proper subkernels with onto block projections. Each subkernel is the
// block-action kernel of <seeded random kernel elements, tau>, built from
// Schreier generators over the {tau^a} transversal; subgroups of H^r that are
// not tau-invariant are not kernels of any overgroup of tau and sit outside
// the censused statement, so they are never sampled. The bound checked is
// (p-1)/p for affine H of prime degree p, relaxed to 1 when p | r and the
// kernel is elementary abelian; for the other supported block groups (natural
// S4, alternating/symmetric, projective) it is
// 1/2 * prod_{p | s, gcd(p, r) = 1} (p-1)/p.
// The block group is rotation-aligned internally; r must be in [1, 4]. Fewer
// than `trials` subkernel records appear when the sampling budget finds no
// further admissible candidates. Throws std::invalid_argument for unsupported
// H, EnumerationRequired when |H|^r exceeds the cap.
KernelCensusReport subkernel_census_check(const PermGroup& h, int r, int trials,
                                          std::uint64_t seed = 2024,
                                          std::uint64_t cap = kDefaultEnumerationCap);

std::string kernel_census_report_to_json(const KernelCensusReport& report);

// Product of the parts' full-cycle proportions: equals the proportion of the
// iterated wreath product built from the same parts. Every part must be
// enumerated.
mpq_class full_wreath_pi(const std::vector<PermGroup>& parts);

}  // namespace permdyn
