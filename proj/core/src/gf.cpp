#include "permdyn/gf.hpp"

#include <stdexcept>
#include <string>

#include "permdyn/numeric.hpp"

namespace permdyn {

void gfp_trim(GFPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

GFPoly gfp_add(const GF& F, const GFPoly& a, const GFPoly& b) {
  GFPoly c(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < c.size(); ++i) {
    int x = i < a.size() ? a[i] : 0;
    int y = i < b.size() ? b[i] : 0;
    c[i] = F.add(x, y);
  }
  gfp_trim(c);
  return c;
}

GFPoly gfp_mul(const GF& F, const GFPoly& a, const GFPoly& b) {
  if (a.empty() || b.empty()) return {};
  GFPoly c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      c[i + j] = F.add(c[i + j], F.mul(a[i], b[j]));
    }
  }
  gfp_trim(c);
  return c;
}

GFPoly gfp_mod(const GF& F, GFPoly a, const GFPoly& m) {
  if (m.empty() || m.back() != 1) throw std::invalid_argument("gfp_mod: modulus must be monic");
  while (a.size() >= m.size()) {
    int lead = a.back();
    std::size_t shift = a.size() - m.size();
    if (lead != 0) {
      for (std::size_t i = 0; i < m.size(); ++i) {
        a[shift + i] = F.sub(a[shift + i], F.mul(lead, m[i]));
      }
    }
    a.pop_back();
    gfp_trim(a);
    if (a.size() < m.size()) break;
  }
  return a;
}

namespace {

// Iterate monic polynomials of a fixed degree in encoding order: the lower
// coefficients run as base-q digits of an increasing counter.
GFPoly monic_from_counter(std::uint64_t counter, int q, int degree) {
  GFPoly m(static_cast<std::size_t>(degree) + 1, 0);
  for (int i = 0; i < degree; ++i) {
    m[static_cast<std::size_t>(i)] = static_cast<int>(counter % static_cast<std::uint64_t>(q));
    counter /= static_cast<std::uint64_t>(q);
  }
  m[static_cast<std::size_t>(degree)] = 1;
  return m;
}

std::uint64_t pow_u64(std::uint64_t b, int e) {
  std::uint64_t r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

}  // namespace

bool gfp_irreducible(const GF& F, const GFPoly& m) {
  if (m.size() < 2 || m.back() != 1) return false;
  int deg = static_cast<int>(m.size()) - 1;
  if (deg == 1) return true;
  for (int d = 1; 2 * d <= deg; ++d) {
    std::uint64_t count = pow_u64(static_cast<std::uint64_t>(F.q()), d);
    for (std::uint64_t c = 0; c < count; ++c) {
      GFPoly div = monic_from_counter(c, F.q(), d);
      if (gfp_mod(F, m, div).empty()) return false;
    }
  }
  return true;
}

GFPoly least_irreducible(const GF& F, int d) {
  if (d < 1) throw std::domain_error("least_irreducible: degree must be positive");
  std::uint64_t count = pow_u64(static_cast<std::uint64_t>(F.q()), d);
  for (std::uint64_t c = 0; c < count; ++c) {
    GFPoly m = monic_from_counter(c, F.q(), d);
    if (gfp_irreducible(F, m)) return m;
  }
  throw std::logic_error("least_irreducible: no irreducible found");  // unreachable
}

GFPoly gfp_decode(std::uint64_t code, int q) {
  GFPoly a;
  while (code != 0) {
    a.push_back(static_cast<int>(code % static_cast<std::uint64_t>(q)));
    code /= static_cast<std::uint64_t>(q);
  }
  return a;
}

std::uint64_t gfp_encode(const GFPoly& a, int q) {
  std::uint64_t code = 0;
  for (std::size_t i = a.size(); i-- > 0;) {
    code = code * static_cast<std::uint64_t>(q) + static_cast<std::uint64_t>(a[i]);
  }
  return code;
}

GF::GF(int q) {
  if (q < 2 || q > 16) throw std::domain_error("GF: q must be a prime power in [2, 16]");
  PrimePower pp = as_prime_power(static_cast<std::uint64_t>(q));
  if (pp.f == 0) throw std::domain_error("GF: " + std::to_string(q) + " is not a prime power");
  p_ = static_cast<int>(pp.p);
  f_ = static_cast<int>(pp.f);
  q_ = q;

  auto sq = static_cast<std::size_t>(q);
  add_.assign(sq * sq, 0);
  mul_.assign(sq * sq, 0);
  neg_.assign(sq, 0);
  inv_.assign(sq, 0);

  if (f_ == 1) {
    for (int a = 0; a < q; ++a) {
      for (int b = 0; b < q; ++b) {
        add_[static_cast<std::size_t>(a * q + b)] = (a + b) % q;
        mul_[static_cast<std::size_t>(a * q + b)] = (a * b) % q;
      }
      neg_[static_cast<std::size_t>(a)] = (q - a) % q;
    }
  } else {
    GF base(p_);
    GFPoly m0 = least_irreducible(base, f_);
    for (int a = 0; a < q; ++a) {
      GFPoly pa = gfp_decode(static_cast<std::uint64_t>(a), p_);
      for (int b = 0; b < q; ++b) {
        GFPoly pb = gfp_decode(static_cast<std::uint64_t>(b), p_);
        add_[static_cast<std::size_t>(a * q + b)] =
            static_cast<int>(gfp_encode(gfp_add(base, pa, pb), p_));
        mul_[static_cast<std::size_t>(a * q + b)] =
            static_cast<int>(gfp_encode(gfp_mod(base, gfp_mul(base, pa, pb), m0), p_));
      }
      GFPoly na = pa;
      for (int& c : na) c = base.neg(c);
      neg_[static_cast<std::size_t>(a)] = static_cast<int>(gfp_encode(na, p_));
    }
  }

  for (int a = 1; a < q; ++a) {
    for (int b = 1; b < q; ++b) {
      if (mul(a, b) == 1) {
        inv_[static_cast<std::size_t>(a)] = b;
        break;
      }
    }
  }

  for (int g = 1; g < q; ++g) {
    int x = g, ord = 1;
    while (x != 1) {
      x = mul(x, g);
      ++ord;
    }
    if (ord == q - 1) {
      primitive_ = g;
      break;
    }
  }
}

int GF::inv(int a) const {
  if (a <= 0 || a >= q_) throw std::domain_error("GF::inv: element not invertible");
  return inv_[static_cast<std::size_t>(a)];
}

}  // namespace permdyn
