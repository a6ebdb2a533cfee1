#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace permdyn {

// Small number-theory helpers shared across modules. Everything here is exact;
// doubles never appear on these paths.

bool is_prime_u64(std::uint64_t n);

// Ascending list of primes <= x (simple sieve; x is expected to stay <= ~10^8).
std::vector<std::uint64_t> primes_up_to(std::uint64_t x);

// Prime factorization of n >= 1 as {prime -> exponent}, trial division.
std::map<std::uint64_t, int> factorize_u64(std::uint64_t n);

std::uint64_t euler_phi_u64(std::uint64_t n);

// Ascending divisors of n >= 1.
std::vector<std::uint64_t> divisors_u64(std::uint64_t n);

// If n = p^f for a prime p, returns {p, f}; otherwise f == 0.
struct PrimePower {
  std::uint64_t p = 0;
  int f = 0;
};
PrimePower as_prime_power(std::uint64_t n);

mpz_class factorial_mpz(unsigned n);

// Canonical "a/b" (or "a" when b == 1) for an mpq in lowest terms.
std::string rational_to_string(const mpq_class& q);

// Parses "a/b" or "a"; throws std::invalid_argument on malformed input.
mpq_class rational_from_string(const std::string& s);

}  // namespace permdyn
