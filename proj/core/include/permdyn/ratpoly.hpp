#pragma once

#include <string>
#include <vector>

#include <gmpxx.h>

namespace permdyn {

// Dense polynomial over Q, constant term first, no trailing zero coefficients.
// The zero polynomial is the empty vector; mpq_class keeps entries canonical.
using RatPoly = std::vector<mpq_class>;

// Degree of the zero polynomial is -1.
int rat_degree(const RatPoly& f);

// Drops trailing zeros; every operation below returns trimmed results.
RatPoly rat_trim(RatPoly f);

RatPoly rat_constant(const mpq_class& c);
RatPoly rat_x();

RatPoly rat_add(const RatPoly& a, const RatPoly& b);
RatPoly rat_sub(const RatPoly& a, const RatPoly& b);
RatPoly rat_mul(const RatPoly& a, const RatPoly& b);
RatPoly rat_scale(const RatPoly& f, const mpq_class& c);

mpq_class rat_eval(const RatPoly& f, const mpq_class& x);

// g(f), Horner over Q. Exact; deg(g o f) = deg g * deg f when both nonzero.
RatPoly rat_compose(const RatPoly& g, const RatPoly& f);

RatPoly rat_derivative(const RatPoly& f);

// Whitespace-separated coefficients, constant first, each "a/b" or integer.
// Exact round trip; the zero polynomial prints as "0".
std::string rat_poly_to_string(const RatPoly& f);

// Throws std::invalid_argument on malformed coefficients or empty input.
RatPoly rat_poly_from_string(const std::string& text);

}  // namespace permdyn
