#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <vector>

#include <gmpxx.h>

#include "permdyn/ratpoly.hpp"

namespace permdyn {

// Coefficient-wise reduction failures. Both mark the prime as unusable for
// the polynomial rather than silently degrading it.
struct BadDenominator : std::runtime_error {
  std::uint64_t p;
  explicit BadDenominator(std::uint64_t p_);
};

struct LeadingCoeffVanishes : std::runtime_error {
  std::uint64_t p;
  explicit LeadingCoeffVanishes(std::uint64_t p_);
};

// Moduli stay below 2^62 so double-width products fit in 128-bit arithmetic.
inline constexpr std::uint64_t kMaxPolyModulus = std::uint64_t(1) << 62;

// Dense polynomial over F_p: prime p < 2^62, coefficients reduced into
// [0, p), constant term first, no trailing zeros (zero polynomial = empty).
struct FpPoly {
  std::uint64_t p = 0;
  std::vector<std::uint64_t> c;

  int degree() const { return static_cast<int>(c.size()) - 1; }
  bool zero() const { return c.empty(); }
  friend bool operator==(const FpPoly&, const FpPoly&) = default;
};

// Validates the modulus (prime, < 2^62) and reduces the coefficients;
// negative inputs are allowed. Throws std::invalid_argument on a bad modulus.
FpPoly fp_poly(std::uint64_t p, const std::vector<std::int64_t>& coeffs);
FpPoly fp_constant(std::uint64_t p, std::uint64_t c);
FpPoly fp_x(std::uint64_t p);

// All binary operations throw std::invalid_argument on modulus mismatch.
FpPoly fp_add(const FpPoly& a, const FpPoly& b);
FpPoly fp_sub(const FpPoly& a, const FpPoly& b);

// Product. Backend chosen by size and modulus: schoolbook for short inputs,
// a two-prime number-theoretic transform with CRT when the product
// coefficients fit below the prime pair, Kronecker substitution through GMP
// integer multiplication otherwise.
FpPoly fp_mul(const FpPoly& a, const FpPoly& b);

std::uint64_t fp_eval(const FpPoly& f, std::uint64_t x);

// g evaluated at f (no modulus polynomial). Paterson-Stockmeyer blocks keep
// the multiplication count near 2*sqrt(deg g).
FpPoly fp_compose(const FpPoly& g, const FpPoly& f);

// Remainder and optional quotient of a by b (b nonzero). Schoolbook.
FpPoly fp_divrem(const FpPoly& a, const FpPoly& b, FpPoly* quotient = nullptr);

// Monic greatest common divisor.
FpPoly fp_gcd(FpPoly a, FpPoly b);

// Reduction context for a fixed modulus polynomial: the monic-normalized
// modulus plus the Newton inverse of its reversal, with transforms cached at
// large degrees so repeated mulmod/powmod chains pay one setup. Immutable
// and cheap to copy (shared internals); safe to share across threads.
class FpModulus {
 public:
  // Normalizes a non-monic modulus by its leading unit (the remainder is
  // unchanged under unit scaling). Throws std::domain_error when the modulus
  // is zero or constant.
  explicit FpModulus(FpPoly m);

  const FpPoly& poly() const;
  int degree() const;
  std::uint64_t p() const;

  struct Impl;
  const Impl& impl() const { return *impl_; }

 private:
  std::shared_ptr<const Impl> impl_;
};

FpPoly fp_rem(const FpPoly& a, const FpModulus& m);
FpPoly fp_mulmod(const FpPoly& a, const FpPoly& b, const FpModulus& m);
FpPoly fp_powmod(const FpPoly& base, const mpz_class& e, const FpModulus& m);

// g(h) mod m for reduced g, h. Brent-Kung baby/giant blocks; the inner block
// combination runs as a matrix product with lazy reduction.
FpPoly fp_compose_mod(const FpPoly& g, const FpPoly& h, const FpModulus& m);

// Deterministic Rabin criterion: f of degree m (normalized monic) is
// irreducible iff X^(p^m) = X mod f and gcd(X^(p^(m/l)) - X, f) = 1 for every
// prime l dividing m. Frobenius powers are built by a hybrid ladder: p-power
// exponentiation while the exponent is short, modular composition doublings
// after. Throws std::domain_error for constant or zero input.
bool is_irreducible(const FpPoly& f);

// Coefficient-wise reduction. Throws BadDenominator if any denominator
// vanishes mod p, LeadingCoeffVanishes if the leading coefficient does (the
// degree would drop). The zero polynomial reduces to zero.
FpPoly reduce_mod_p(const RatPoly& f, std::uint64_t p);

// Fraction of irreducibles among `samples` random monic degree-d polynomials
// (expected ~ 1/d). Statistical self-test; samples >= 1000 enforced.
mpq_class sample_irreducible_fraction(std::uint64_t p, int d, int samples,
                                      std::uint64_t seed);

// Exact count of monic irreducible degree-d polynomials over F_p by the
// Mobius sum (1/d) * sum_{e | d} mu(e) p^(d/e).
mpz_class monic_irreducible_count(std::uint64_t p, int d);

}  // namespace permdyn
