#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "permdyn/ratpoly.hpp"

namespace permdyn {

// Eventually periodic sequence of polynomials over Q: the head entries occur
// once, then the tail repeats forever. A pair (f, a) is encoded as
// head = [f - a], tail = [f], so entry 1 carries the fiber shift.
struct PolySequence {
  std::vector<RatPoly> head;
  std::vector<RatPoly> tail;
  std::string label;
};

// Validates that every entry has degree >= 2 and the tail is nonempty.
PolySequence make_sequence(std::vector<RatPoly> head, std::vector<RatPoly> tail,
                           std::string label = "");
PolySequence make_pair_sequence(const RatPoly& f, const mpq_class& a);

// n-th entry, 1-based; n beyond the head cycles through the tail.
const RatPoly& sequence_entry(const PolySequence& seq, int n);

// Exact composition over Q of entries 1..n, entry 1 outermost.
RatPoly partial_composition(const PolySequence& seq, int n);

enum class DepthReason { exhausted, reducible, bad_denominator, leading_coeff };

struct DepthRecord {
  std::uint64_t p = 0;
  int depth = 0;       // largest k with compositions 1..k full-degree irreducible
  DepthReason reason = DepthReason::exhausted;
  int failed_at = 0;   // step k+1 that failed; 0 when the depth budget ran out
};

// CSV/report rendering: "reducible@k", "bad_denominator", "leading_coeff",
// "exhausted=N".
std::string reason_to_string(const DepthRecord& rec, int max_depth);

// Largest k <= N such that the mod-p reduction of every partial composition
// up to k is defined, of full degree, and irreducible. Compositions are built
// incrementally in F_p[x]; irreducibility of the deepest composition settles
// all shallower ones (an outer factor of a composition is a factor), so the
// schedule tests depth 1, then the deepest reachable step, then refines by
// bisection. The result is identical to sequential early exit.
DepthRecord stable_depth(const PolySequence& seq, std::uint64_t p, int N);

struct StabilityReport {
  std::string sequence;
  std::uint64_t prime_bound = 0;
  int max_depth = 0;
  std::uint64_t prime_count = 0;        // pi(prime_bound)
  std::vector<DepthRecord> records;     // ascending p, one per prime <= bound
  std::vector<mpq_class> survival;      // survival[k-1] = #{depth >= k} / pi(X)
};

// Work cap for density_scan: N * pi(X) steps.
inline constexpr std::uint64_t kScanWorkCap = 10'000'000;

// Scans all primes <= X at depths up to N. workers splits the prime list by
// stride; the report is identical for any worker count. Throws
// std::invalid_argument when X < 100, N < 1, workers < 1, or the work cap is
// exceeded.
StabilityReport density_scan(const PolySequence& seq, std::uint64_t X, int N, int workers = 1);

struct DepthComparison {
  int depth = 0;
  mpq_class empirical;
  mpq_class candidate;
  double z = 0.0;       // binomial z-score of the survivor count
  bool flagged = false; // |z| > 4
};

// Compares survival against candidate proportions (one per depth). Throws
// std::invalid_argument on length mismatch.
std::vector<DepthComparison> chebotarev_compare(const StabilityReport& report,
                                                const std::vector<mpq_class>& candidate_pi);

// D_0 = 2, D_1 = X, D_k = X*D_{k-1} - alpha*D_{k-2}; satisfies
// D_n(X + alpha/X) = X^n + (alpha/X)^n.
RatPoly dickson(int n, const mpq_class& alpha);

// Orbit detectors for the obstructions that force stable-prime density zero.
// Both iterate at most `bound` (<= 64) steps and give up quietly when orbit
// heights pass 2^1024.

// Returns the period if the orbit of a under f returns to a.
std::optional<int> detect_periodic(const RatPoly& f, const mpq_class& a, int bound);

struct PostcriticalWitness {
  mpq_class critical_point;
  int steps = 0;  // f^steps(critical_point) == a, steps >= 1
};

// Returns a rational critical point of f whose forward orbit hits a.
std::optional<PostcriticalWitness> detect_postcritical(const RatPoly& f, const mpq_class& a,
                                                       int bound);

// JSON document with survival table and metadata. The generated_at field is
// excluded from content_hash, so reruns hash identically.
std::string report_to_json(const StabilityReport& report);

// Per-prime rows: p,depth,reason.
std::string report_to_csv(const StabilityReport& report);

}  // namespace permdyn
