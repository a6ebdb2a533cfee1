#pragma once

#include <cstdint>
#include <vector>

namespace permdyn {

// Small finite field F_q, q = p^f <= 16, as lookup tables. Elements are
// encoded as integers in [0, q): the polynomial sum c_i y^i over F_p maps to
// sum c_i p^i (constant digit first). For f > 1 the field is F_p[y]/(m0) with
// m0 the encoding-order least monic irreducible of degree f, so construction
// is deterministic.
class GF {
 public:
  explicit GF(int q);  // throws std::domain_error unless q is a prime power <= 16

  int p() const { return p_; }
  int f() const { return f_; }
  int q() const { return q_; }

  int add(int a, int b) const { return add_[static_cast<std::size_t>(a * q_ + b)]; }
  int mul(int a, int b) const { return mul_[static_cast<std::size_t>(a * q_ + b)]; }
  int neg(int a) const { return neg_[static_cast<std::size_t>(a)]; }
  int sub(int a, int b) const { return add(a, neg(b)); }
  int inv(int a) const;  // throws std::domain_error on 0

  // Least generator of the multiplicative group.
  int primitive_element() const { return primitive_; }

 private:
  int p_ = 0, f_ = 0, q_ = 0;
  std::vector<int> add_, mul_, neg_;
  std::vector<int> inv_;
  int primitive_ = 0;
};

// Dense polynomials over a GF, coefficients as GF encodings, index = degree,
// no trailing zeros (empty vector = zero). Used to build extension fields and
// Singer cycles; scale is tiny, so everything is schoolbook.
using GFPoly = std::vector<int>;

void gfp_trim(GFPoly& a);
GFPoly gfp_add(const GF& F, const GFPoly& a, const GFPoly& b);
GFPoly gfp_mul(const GF& F, const GFPoly& a, const GFPoly& b);
// Remainder of a by monic m.
GFPoly gfp_mod(const GF& F, GFPoly a, const GFPoly& m);
// Trial division by every monic polynomial of degree 1..deg(m)/2.
bool gfp_irreducible(const GF& F, const GFPoly& m);
// The monic irreducible of degree d whose coefficient encoding (constant
// digit first, base q) is least. d >= 1.
GFPoly least_irreducible(const GF& F, int d);

// Encode/decode field-extension elements: integer in [0, q^d) <-> GFPoly of
// degree < d, digit i (base q) = coefficient of x^i.
GFPoly gfp_decode(std::uint64_t code, int q);
std::uint64_t gfp_encode(const GFPoly& a, int q);

}  // namespace permdyn
