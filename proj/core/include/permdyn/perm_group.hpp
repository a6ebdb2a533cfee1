#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "permdyn/permutation.hpp"

namespace permdyn {

// Thrown when an operation needs the explicit element list of a group that was
// deliberately not enumerated (order above the cap or memory budget).
class EnumerationRequired : public std::runtime_error {
 public:
  EnumerationRequired(const std::string& what, const mpz_class& order)
      : std::runtime_error(what), order_(order) {}
  const mpz_class& order() const { return order_; }

 private:
  mpz_class order_;
};

// Thrown by enumerate() when breadth-first closure exceeds the cap; carries the
// partial element count reached before giving up.
class TooLargeToEnumerate : public std::runtime_error {
 public:
  TooLargeToEnumerate(const std::string& what, std::uint64_t partial_count)
      : std::runtime_error(what), partial_count_(partial_count) {}
  std::uint64_t partial_count() const { return partial_count_; }

 private:
  std::uint64_t partial_count_;
};

inline constexpr std::uint64_t kDefaultEnumerationCap = 2'000'000;

// Deterministic stabilizer chain (Schreier-Sims). Exposes exact order and
// membership without enumeration; the base is chosen as the smallest moved
// point at each level, so rebuilding from the same generators is reproducible.
class StabilizerChain {
 public:
  StabilizerChain(int degree, const std::vector<Permutation>& generators);

  const mpz_class& order() const { return order_; }
  bool contains(const Permutation& g) const;

 private:
  struct Level {
    int base_point = -1;
    std::vector<Permutation> gens;         // strong generators placed at exactly this level
    std::vector<int> orbit;                // points reachable from base_point
    std::vector<int> orbit_pos;            // point -> index into orbit, or -1
    std::vector<Permutation> transversal;  // transversal[i] maps base_point -> orbit[i]
  };

  // The generating set of the level-j stabilizer is cumulative: everything
  // placed at level j or deeper (deeper generators fix b_j but can still move
  // other points of its orbit).
  std::vector<const Permutation*> cumulative_gens(std::size_t lvl) const;
  // Appends g at the deepest level whose base prefix it fixes, creating a new
  // level when it fixes them all. Returns false for the identity.
  bool place(Permutation g);
  void rebuild_orbit(std::size_t lvl);
  // Sifts g through the chain from level `from`; returns the residue and the
  // level at which sifting stopped.
  std::pair<Permutation, std::size_t> sift(Permutation g, std::size_t from) const;
  // One Schreier verification sweep, deepest level first. Places the first
  // failing residue and reports false so the caller restarts; true means the
  // chain passed clean and is complete.
  bool verify_pass();

  int degree_;
  std::vector<Level> levels_;
  mpz_class order_;
};

// Finitely generated permutation group. Order is always exact (stabilizer
// chain); the explicit element list is materialized only when it is small
// enough, and operations that need it say so loudly otherwise.
class PermGroup {
 public:
  // generators must be nonempty and share a degree. With order_fallback (the
  // default), a group whose closure exceeds the cap is still constructed,
  // order-only, from the stabilizer chain; without it, exceeding the cap
  // throws TooLargeToEnumerate carrying the partial count.
  static PermGroup generate(std::vector<Permutation> generators,
                            std::uint64_t enumeration_cap = kDefaultEnumerationCap,
                            std::string name = "", bool order_fallback = true);

  int degree() const { return degree_; }
  const std::string& name() const { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }
  const std::vector<Permutation>& generators() const { return generators_; }
  const mpz_class& order() const { return order_; }

  bool has_elements() const { return elements_.has_value(); }
  // Throws EnumerationRequired when the group was not materialized.
  const std::vector<Permutation>& elements() const;

  bool contains(const Permutation& g) const;
  bool is_transitive() const;
  // Orbit of `point` under the generators, sorted ascending.
  std::vector<int> orbit(int point) const;

  // Derived series by repeated commutator-subgroup closure; true iff it hits
  // the trivial group. Requires enumeration (throws EnumerationRequired).
  bool is_solvable() const;

 private:
  PermGroup() = default;

  int degree_ = 0;
  std::string name_;
  std::vector<Permutation> generators_;
  mpz_class order_;
  std::optional<std::vector<Permutation>> elements_;
  std::optional<StabilizerChain> chain_;
};

// Breadth-first closure of the generators. Throws TooLargeToEnumerate (with the
// partial count) once more than `cap` elements are seen. Element order is the
// BFS discovery order and is deterministic for fixed generators.
std::vector<Permutation> enumerate_closure(const std::vector<Permutation>& generators,
                                           std::uint64_t cap);

struct FullCycleCensus {
  mpz_class full_cycles;  // elements that are a single cycle through all points
  mpz_class order;
  mpq_class proportion;  // full_cycles / order, canonical
};

// Exact count over the element list; throws EnumerationRequired when the group
// is order-only.
FullCycleCensus full_cycle_census(const PermGroup& g);

// Whether g contains a cycle through all points. Exact scan when enumerated;
// otherwise a seeded random search over bounded generator words, so false on
// an order-only group means "none found", not a proof of absence.
bool has_full_cycle(const PermGroup& g, std::uint64_t seed = 12345, int samples = 4096);

}  // namespace permdyn
