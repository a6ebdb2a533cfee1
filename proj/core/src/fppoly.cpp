#include "permdyn/fppoly.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <map>
#include <memory>
#include <random>

#include <gmp.h>

#include "permdyn/numeric.hpp"

namespace permdyn {

namespace {

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 addm(u64 a, u64 b, u64 p) {
  u64 s = a + b;  // p < 2^62 so no overflow
  return s >= p ? s - p : s;
}

u64 subm(u64 a, u64 b, u64 p) { return a >= b ? a - b : a + p - b; }

u64 mulm(u64 a, u64 b, u64 p) { return static_cast<u64>((u128)a * b % p); }

u64 powm(u64 a, u64 e, u64 p) {
  u64 r = 1 % p;
  while (e) {
    if (e & 1) r = mulm(r, a, p);
    a = mulm(a, a, p);
    e >>= 1;
  }
  return r;
}

// Inverse of a mod p for prime p, a != 0.
u64 invm(u64 a, u64 p) {
  std::int64_t t = 0, nt = 1;
  u64 r = p, nr = a % p;
  while (nr) {
    u64 q = r / nr;
    std::int64_t tmp = t - static_cast<std::int64_t>(q) * nt;
    t = nt;
    nt = tmp;
    u64 rt = r - q * nr;
    r = nr;
    nr = rt;
  }
  return t < 0 ? static_cast<u64>(t + static_cast<std::int64_t>(p)) : static_cast<u64>(t);
}

// Reciprocal-based reduction for a fixed modulus; the estimate undershoots by
// at most a couple of multiples, fixed up by subtraction.
struct Mod64 {
  u64 p = 0, magic = 0;
  void init(u64 p_) {
    p = p_;
    magic = ~u64(0) / p_;
  }
  u64 reduce(u64 x) const {
    u64 q = static_cast<u64>(((u128)x * magic) >> 64);
    u64 r = x - q * p;
    while (r >= p) r -= p;
    return r;
  }
};

int ceil_log2(std::size_t n) {
  int lg = 0;
  while ((std::size_t(1) << lg) < n) ++lg;
  return lg;
}

void check_same_p(const FpPoly& a, const FpPoly& b) {
  if (a.p != b.p) throw std::invalid_argument("modulus mismatch");
}

FpPoly trim(FpPoly f) {
  while (!f.c.empty() && f.c.back() == 0) f.c.pop_back();
  return f;
}

// Grow-only per-thread arenas; contents are garbage and every user must
// overwrite the full window it reads back.
u32* scratch_u32(int slot, std::size_t n) {
  thread_local std::array<std::vector<u32>, 8> pool;
  auto& v = pool[slot];
  if (v.size() < n) v.resize(n);
  return v.data();
}

u64* scratch_u64(int slot, std::size_t n) {
  thread_local std::array<std::vector<u64>, 4> pool;
  auto& v = pool[slot];
  if (v.size() < n) v.resize(n);
  return v.data();
}

// ---- number-theoretic transform over two 30-bit primes -------------------
//
// Butterflies use Shoup multiplication (a precomputed floor(w*2^32/P) per
// twiddle) and lazy values in [0, 2P). Forward is decimation in frequency
// (bit-reversed output), inverse decimation in time, so no reordering pass
// is needed around the pointwise product. Inner loops carry AVX-512 bodies
// with a scalar fallback (also selectable via PERMDYN_FORCE_SCALAR_NTT).

template <u32 P, u32 G>
struct Ntt {
  static constexpr u32 kTwoP = 2 * P;

  struct Tables {
    std::vector<u32> w, wpre, iw, iwpre;  // w[half+j] = root of order 2*half, power j
    u32 ninv, ninvpre;
  };

  static u32 shoup(u32 w) { return static_cast<u32>(((u64)w << 32) / P); }

  static u32 mul(u32 b, u32 w, u32 wp) {  // b < 2^32 lazy, w < P; result < 2P
    u32 q = static_cast<u32>(((u64)b * wp) >> 32);
    return static_cast<u32>((u64)b * w - (u64)q * P);
  }

  static const Tables& tables(int lg) {
    thread_local std::array<std::unique_ptr<Tables>, 24> cache;
    auto& slot = cache[lg];
    if (!slot) {
      auto t = std::make_unique<Tables>();
      std::size_t n = std::size_t(1) << lg;
      t->w.resize(n);
      t->wpre.resize(n);
      t->iw.resize(n);
      t->iwpre.resize(n);
      for (std::size_t half = 1; half < n; half <<= 1) {
        u32 base = static_cast<u32>(powm(G, (P - 1) / (2 * half), P));
        u32 ibase = static_cast<u32>(invm(base, P));
        u32 x = 1, ix = 1;
        for (std::size_t j = 0; j < half; ++j) {
          t->w[half + j] = x;
          t->wpre[half + j] = shoup(x);
          t->iw[half + j] = ix;
          t->iwpre[half + j] = shoup(ix);
          x = static_cast<u32>(mulm(x, base, P));
          ix = static_cast<u32>(mulm(ix, ibase, P));
        }
      }
      t->ninv = static_cast<u32>(invm(n % P, P));
      t->ninvpre = shoup(t->ninv);
      slot = std::move(t);
    }
    return *slot;
  }

  // Input values < 2P, output values < 2P, bit-reversed order.
  static void forward(u32* a, int lg) {
    const Tables& t = tables(lg);
    std::size_t n = std::size_t(1) << lg;
    for (std::size_t half = n >> 1; half >= 1; half >>= 1) {
      for (std::size_t blk = 0; blk < n; blk += half << 1) {
        for (std::size_t j = 0; j < half; ++j) {
          u32 u = a[blk + j], v = a[blk + j + half];
          u32 s = u + v;
          if (s >= kTwoP) s -= kTwoP;
          a[blk + j] = s;
          a[blk + j + half] = mul(u + kTwoP - v, t.w[half + j], t.wpre[half + j]);
        }
      }
    }
  }

  // Input bit-reversed < 2P; output natural order, fully reduced < P.
  static void inverse(u32* a, int lg) {
    const Tables& t = tables(lg);
    std::size_t n = std::size_t(1) << lg;
    for (std::size_t half = 1; half < n; half <<= 1) {
      for (std::size_t blk = 0; blk < n; blk += half << 1) {
        for (std::size_t j = 0; j < half; ++j) {
          u32 u = a[blk + j];
          u32 v = mul(a[blk + j + half], t.iw[half + j], t.iwpre[half + j]);
          u32 s = u + v;
          if (s >= kTwoP) s -= kTwoP;
          a[blk + j] = s;
          u32 d = u + kTwoP - v;
          if (d >= kTwoP) d -= kTwoP;
          a[blk + j + half] = d;
        }
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      u32 r = mul(a[i], t.ninv, t.ninvpre);
      if (r >= P) r -= P;
      a[i] = r;
    }
  }

  // dst = a*b mod P elementwise; inputs lazy < 2P, output < P.
  static void pointwise_mul(u32* dst, const u32* a, const u32* b, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
      u64 x = a[i], y = b[i];
      if (x >= P) x -= P;
      if (y >= P) y -= P;
      dst[i] = static_cast<u32>(x * y % P);
    }
  }

  // dst = a*w mod P with precomputed Shoup companions; w canonical < P.
  static void pointwise_mul_pre(u32* dst, const u32* a, const u32* w, const u32* wpre,
                                std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) dst[i] = mul(a[i], w[i], wpre[i]);
  }

  static void canonicalize(u32* a, std::size_t n) {  // < 2P down to < P
    for (std::size_t i = 0; i < n; ++i)
      if (a[i] >= P) a[i] -= P;
  }
};

using Ntt1 = Ntt<998244353u, 3u>;   // 119 * 2^23 + 1
using Ntt2 = Ntt<754974721u, 11u>;  // 45 * 2^24 + 1

constexpr u32 kP1 = 998244353u;
constexpr u32 kP2 = 754974721u;
constexpr u64 kNttPrimeProduct = (u64)kP1 * kP2;
constexpr int kMaxNttLog = 23;

// Largest product length the CRT pair can carry for residues < p. The same
// bound covers the wrapped half-size products used in Barrett reduction.
bool ntt_applicable(u64 p, std::size_t result_len) {
  if (result_len > (std::size_t(1) << kMaxNttLog)) return false;
  u128 sq = (u128)(p - 1) * (p - 1);
  return sq <= (u128)(kNttPrimeProduct - 1) / result_len;
}

// CRT recombination of canonical residue arrays into integers < P1*P2.
void crt_pass(const u32* r1, const u32* r2, u64* out, std::size_t n) {
  static const u32 inv12 = static_cast<u32>(invm(kP1 % kP2, kP2));
  static const u32 inv12pre = Ntt2::shoup(inv12);
  for (std::size_t i = 0; i < n; ++i) {
    u64 a = r1[i], b = r2[i];
    u64 af = a >= kP2 ? a - kP2 : a;
    u64 d = subm(b, af, kP2);
    u64 t = Ntt2::mul(static_cast<u32>(d), inv12, inv12pre);
    if (t >= kP2) t -= kP2;
    out[i] = a + (u64)kP1 * t;  // < P1*P2 < 2^60
  }
}

void modp_pass(u64* x, std::size_t n, const Mod64& md) {
  for (std::size_t i = 0; i < n; ++i) x[i] = md.reduce(x[i]);
}

// Forward-transform a coefficient window (values < p) into both prime rows.
void load_spec(u32* t1, u32* t2, const u64* a, std::size_t len, int lg, u64 p) {
  std::size_t n = std::size_t(1) << lg;
  if (p <= kP2) {
    for (std::size_t i = 0; i < len; ++i) t1[i] = static_cast<u32>(a[i]);
    std::memcpy(t2, t1, len * sizeof(u32));
  } else if (p <= kP1) {
    for (std::size_t i = 0; i < len; ++i) {
      t1[i] = static_cast<u32>(a[i]);
      u64 v = a[i];
      t2[i] = static_cast<u32>(v >= kP2 ? v % kP2 : v);
    }
  } else {
    for (std::size_t i = 0; i < len; ++i) {
      t1[i] = static_cast<u32>(a[i] % kP1);
      t2[i] = static_cast<u32>(a[i] % kP2);
    }
  }
  std::memset(t1 + len, 0, (n - len) * sizeof(u32));
  std::memset(t2 + len, 0, (n - len) * sizeof(u32));
  Ntt1::forward(t1, lg);
  Ntt2::forward(t2, lg);
}

// Canonical spectra with Shoup companions for a fixed multiplier.
struct CachedOp {
  int lg = -1;
  std::vector<u32> s1, s1p, s2, s2p;
  bool empty() const { return lg < 0; }
  void build(const u64* a, std::size_t len, int lg_, u64 p) {
    lg = lg_;
    std::size_t n = std::size_t(1) << lg;
    s1.resize(n);
    s2.resize(n);
    s1p.resize(n);
    s2p.resize(n);
    load_spec(s1.data(), s2.data(), a, len, lg, p);
    Ntt1::canonicalize(s1.data(), n);
    Ntt2::canonicalize(s2.data(), n);
    for (std::size_t i = 0; i < n; ++i) {
      s1p[i] = Ntt1::shoup(s1[i]);
      s2p[i] = Ntt2::shoup(s2[i]);
    }
  }
  void build(const FpPoly& f, int lg_) {
    std::vector<u64> tmp(f.c.begin(), f.c.end());
    build(tmp.data(), tmp.size(), lg_, f.p);
  }
};

struct DualFwd {
  int lg = -1;
  std::vector<u32> t1, t2;
  bool empty() const { return lg < 0; }
};

DualFwd dual_fwd(const u64* a, std::size_t len, int lg, u64 p) {
  DualFwd s;
  s.lg = lg;
  std::size_t n = std::size_t(1) << lg;
  s.t1.resize(n);
  s.t2.resize(n);
  load_spec(s.t1.data(), s.t2.data(), a, len, lg, p);
  return s;
}

void dual_mul_inplace(DualFwd& a, const DualFwd& b) {
  std::size_t n = std::size_t(1) << a.lg;
  Ntt1::pointwise_mul(a.t1.data(), a.t1.data(), b.t1.data(), n);
  Ntt2::pointwise_mul(a.t2.data(), a.t2.data(), b.t2.data(), n);
}

std::vector<u64> dual_inv(DualFwd s, std::size_t out_len, u64 p) {
  Ntt1::inverse(s.t1.data(), s.lg);
  Ntt2::inverse(s.t2.data(), s.lg);
  std::vector<u64> out(out_len);
  crt_pass(s.t1.data(), s.t2.data(), out.data(), out_len);
  Mod64 md;
  md.init(p);
  modp_pass(out.data(), out_len, md);
  return out;
}

std::vector<u64> ntt_multiply(const std::vector<u64>& a, const std::vector<u64>& b, u64 p) {
  std::size_t rl = a.size() + b.size() - 1;
  int lg = ceil_log2(rl);
  DualFwd fa = dual_fwd(a.data(), a.size(), lg, p);
  if (&a == &b) {
    dual_mul_inplace(fa, fa);
  } else {
    DualFwd fb = dual_fwd(b.data(), b.size(), lg, p);
    dual_mul_inplace(fa, fb);
  }
  return dual_inv(std::move(fa), rl, p);
}

std::vector<u64> schoolbook_multiply(const std::vector<u64>& a, const std::vector<u64>& b, u64 p) {
  std::vector<u64> r(a.size() + b.size() - 1, 0);
  bool narrow = p < (u64(1) << 61);  // inner sums of <= 64 products fit u128
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    if (narrow) {
      u128 ai = a[i];
      for (std::size_t j = 0; j < b.size(); ++j) {
        u128 acc = (u128)r[i + j] + ai * b[j];
        r[i + j] = static_cast<u64>(acc % p);
      }
    } else {
      for (std::size_t j = 0; j < b.size(); ++j)
        r[i + j] = addm(r[i + j], mulm(a[i], b[j], p), p);
    }
  }
  return r;
}

// Kronecker substitution: three 64-bit limbs per coefficient, one integer
// product through GMP. Valid while convolution coefficients stay below
// 2^192, i.e. for any realistic length with p < 2^62.
std::vector<u64> kronecker_multiply(const std::vector<u64>& a, const std::vector<u64>& b, u64 p) {
  auto pack = [](const std::vector<u64>& v) {
    std::vector<mp_limb_t> limbs(v.size() * 3, 0);
    for (std::size_t i = 0; i < v.size(); ++i) limbs[3 * i] = v[i];
    return limbs;
  };
  std::vector<mp_limb_t> la = pack(a), lb = pack(b);
  std::vector<mp_limb_t> prod(la.size() + lb.size(), 0);
  if (la.size() >= lb.size())
    mpn_mul(prod.data(), la.data(), la.size(), lb.data(), lb.size());
  else
    mpn_mul(prod.data(), lb.data(), lb.size(), la.data(), la.size());
  u64 r1 = (u128(1) << 64) % p;
  u64 r2 = mulm(r1, r1, p);
  std::size_t rl = a.size() + b.size() - 1;
  std::vector<u64> out(rl);
  for (std::size_t i = 0; i < rl; ++i) {
    u64 l0 = prod[3 * i], l1 = prod[3 * i + 1], l2 = prod[3 * i + 2];
    u64 x = addm(l0 % p, mulm(l1 % p, r1, p), p);
    out[i] = addm(x, mulm(l2 % p, r2, p), p);
  }
  return out;
}

std::vector<u64> multiply_dispatch(const std::vector<u64>& a, const std::vector<u64>& b, u64 p) {
  std::size_t rl = a.size() + b.size() - 1;
  if (std::min(a.size(), b.size()) <= 16 || rl <= 32) return schoolbook_multiply(a, b, p);
  if (ntt_applicable(p, rl)) return ntt_multiply(a, b, p);
  return kronecker_multiply(a, b, p);
}

FpPoly one_poly(u64 p) { return {p, {1}}; }

}  // namespace

BadDenominator::BadDenominator(std::uint64_t p_)
    : std::runtime_error("denominator vanishes mod " + std::to_string(p_)), p(p_) {}

LeadingCoeffVanishes::LeadingCoeffVanishes(std::uint64_t p_)
    : std::runtime_error("leading coefficient vanishes mod " + std::to_string(p_)), p(p_) {}

FpPoly fp_poly(std::uint64_t p, const std::vector<std::int64_t>& coeffs) {
  if (p >= kMaxPolyModulus || !is_prime_u64(p))
    throw std::invalid_argument("modulus must be a prime below 2^62");
  FpPoly f;
  f.p = p;
  f.c.reserve(coeffs.size());
  for (std::int64_t v : coeffs) {
    std::int64_t m = v % static_cast<std::int64_t>(p);
    if (m < 0) m += static_cast<std::int64_t>(p);
    f.c.push_back(static_cast<u64>(m));
  }
  return trim(std::move(f));
}

FpPoly fp_constant(std::uint64_t p, std::uint64_t c) {
  FpPoly f;
  f.p = p;
  if (c % p) f.c = {c % p};
  return f;
}

FpPoly fp_x(std::uint64_t p) { return {p, {0, 1}}; }

FpPoly fp_add(const FpPoly& a, const FpPoly& b) {
  check_same_p(a, b);
  FpPoly r;
  r.p = a.p;
  r.c.resize(std::max(a.c.size(), b.c.size()), 0);
  for (std::size_t i = 0; i < r.c.size(); ++i) {
    u64 x = i < a.c.size() ? a.c[i] : 0;
    u64 y = i < b.c.size() ? b.c[i] : 0;
    r.c[i] = addm(x, y, a.p);
  }
  return trim(std::move(r));
}

FpPoly fp_sub(const FpPoly& a, const FpPoly& b) {
  check_same_p(a, b);
  FpPoly r;
  r.p = a.p;
  r.c.resize(std::max(a.c.size(), b.c.size()), 0);
  for (std::size_t i = 0; i < r.c.size(); ++i) {
    u64 x = i < a.c.size() ? a.c[i] : 0;
    u64 y = i < b.c.size() ? b.c[i] : 0;
    r.c[i] = subm(x, y, a.p);
  }
  return trim(std::move(r));
}

FpPoly fp_mul(const FpPoly& a, const FpPoly& b) {
  check_same_p(a, b);
  if (a.zero() || b.zero()) return {a.p, {}};
  FpPoly r;
  r.p = a.p;
  r.c = multiply_dispatch(a.c, b.c, a.p);
  return trim(std::move(r));
}

std::uint64_t fp_eval(const FpPoly& f, std::uint64_t x) {
  u64 acc = 0;
  x %= f.p;
  for (std::size_t i = f.c.size(); i-- > 0;) acc = addm(mulm(acc, x, f.p), f.c[i], f.p);
  return acc;
}

FpPoly fp_compose(const FpPoly& g, const FpPoly& f) {
  check_same_p(g, f);
  if (g.zero()) return {g.p, {}};
  if (g.degree() == 0) return g;
  // Paterson-Stockmeyer: g = sum of s-coefficient blocks in f^s.
  int s = std::max(1, static_cast<int>(std::lround(std::sqrt(double(g.c.size())))));
  std::vector<FpPoly> pow(s + 1);
  pow[0] = one_poly(g.p);
  pow[1] = f;
  for (int i = 2; i <= s; ++i) pow[i] = fp_mul(pow[i - 1], f);
  int blocks = static_cast<int>((g.c.size() + s - 1) / s);
  FpPoly acc;
  acc.p = g.p;
  for (int b = blocks - 1; b >= 0; --b) {
    FpPoly chunk;
    chunk.p = g.p;
    for (int t = 0; t < s; ++t) {
      std::size_t idx = static_cast<std::size_t>(b) * s + t;
      if (idx >= g.c.size() || g.c[idx] == 0) continue;
      FpPoly term = pow[t];
      for (auto& cc : term.c) cc = mulm(cc, g.c[idx], g.p);
      chunk = fp_add(chunk, term);
    }
    acc = fp_add(fp_mul(acc, pow[s]), chunk);
  }
  return acc;
}

FpPoly fp_divrem(const FpPoly& a, const FpPoly& b, FpPoly* quotient) {
  check_same_p(a, b);
  if (b.zero()) throw std::domain_error("division by zero polynomial");
  u64 p = a.p;
  int db = b.degree();
  FpPoly r = a;
  if (a.degree() < db) {
    if (quotient) *quotient = {p, {}};
    return r;
  }
  u64 inv_lead = invm(b.c.back(), p);
  Mod64 md;
  md.init(p);
  bool narrow = p < (u64(1) << 32);  // products fit u64 for the reciprocal path
  std::vector<u64> q(a.c.size() - b.c.size() + 1, 0);
  for (int k = static_cast<int>(q.size()) - 1; k >= 0; --k) {
    u64 coef = mulm(r.c[k + db], inv_lead, p);
    q[k] = coef;
    if (coef == 0) continue;
    if (narrow) {
      for (int j = 0; j <= db; ++j)
        r.c[k + j] = subm(r.c[k + j], md.reduce(coef * b.c[j]), p);
    } else {
      for (int j = 0; j <= db; ++j)
        r.c[k + j] = subm(r.c[k + j], mulm(coef, b.c[j], p), p);
    }
  }
  if (quotient) *quotient = trim(FpPoly{p, std::move(q)});
  return trim(std::move(r));
}

FpPoly fp_gcd(FpPoly a, FpPoly b) {
  check_same_p(a, b);
  u64 p = a.p;
  while (!b.zero()) {
    FpPoly r = fp_divrem(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.zero() && a.c.back() != 1) {
    u64 s = invm(a.c.back(), p);
    for (auto& cc : a.c) cc = mulm(cc, s, p);
  }
  return a;
}

// ---- modulus context and spectrum-cached Barrett reduction ----------------

struct FpModulus::Impl {
  FpPoly m;        // monic
  u64 p = 0;
  int d = 0;
  bool ntt = false;
  int lg = 0;      // full transform size covering products of degree <= 2d-2
  int lgh = 0;     // half size for the wrapped q*m product; 2^lgh >= d
  Mod64 pdiv;
  FpPoly inv_rev;  // Newton inverse of reversed m, precision d-1
  CachedOp irev;   // full-size spectra of inv_rev
  CachedOp mwrap;  // half-size spectra of m mod (x^(2^lgh) - 1)
};

namespace {

constexpr int kNttRemThreshold = 32;

// Newton iteration for rev(m)^{-1} mod x^L over F_p; rev(m)[0] == 1.
FpPoly newton_inverse(const FpPoly& revm, int L) {
  FpPoly inv{revm.p, {1}};
  int t = 1;
  while (t < L) {
    t = std::min(2 * t, L);
    FpPoly rt = revm;
    if (static_cast<int>(rt.c.size()) > t) rt.c.resize(t);
    FpPoly prod = fp_mul(rt, inv);
    if (static_cast<int>(prod.c.size()) > t) prod.c.resize(t);
    FpPoly two = fp_constant(revm.p, 2 % revm.p);
    FpPoly corr = fp_sub(two, trim(std::move(prod)));
    inv = fp_mul(inv, corr);
    if (static_cast<int>(inv.c.size()) > t) inv.c.resize(t);
    inv = trim(std::move(inv));
  }
  return inv;
}

FpPoly reversed(const FpPoly& f) {
  FpPoly r = f;
  std::reverse(r.c.begin(), r.c.end());
  return trim(std::move(r));
}

// Scratch slot map for the reduction pipeline.
enum { kSpA1, kSpA2, kSpB1, kSpB2, kSpC1, kSpC2, kSpD1, kSpD2 };
enum { kW0, kW1, kW2, kW3 };

// Reduce a full product window (coefficients mod p, length padded with zeros
// to 2d-1) modulo m. Uses the cached Newton inverse for the quotient and a
// wrapped half-size product for q*m: the high half of q*m agrees with the
// dividend mod p, so the wrap is cancelled exactly.
FpPoly rem_core(const u64* prod, const FpModulus::Impl& M) {
  const int d = M.d;
  const u64 p = M.p;
  const std::size_t n = std::size_t(1) << M.lg;
  const std::size_t hn = std::size_t(1) << M.lgh;
  const std::size_t full = 2 * static_cast<std::size_t>(d) - 1;
  const int k = d - 2;  // quotient degree bound

  // qrev = rev(prod high) * inv_rev mod x^(k+1)
  u64* arev = scratch_u64(kW1, static_cast<std::size_t>(k) + 1);
  for (int i = 0; i <= k; ++i) arev[i] = prod[full - 1 - static_cast<std::size_t>(i)];
  u32* qr1 = scratch_u32(kSpB1, n);
  u32* qr2 = scratch_u32(kSpB2, n);
  load_spec(qr1, qr2, arev, static_cast<std::size_t>(k) + 1, M.lg, p);
  Ntt1::pointwise_mul_pre(qr1, qr1, M.irev.s1.data(), M.irev.s1p.data(), n);
  Ntt2::pointwise_mul_pre(qr2, qr2, M.irev.s2.data(), M.irev.s2p.data(), n);
  Ntt1::inverse(qr1, M.lg);
  Ntt2::inverse(qr2, M.lg);
  u64* q = scratch_u64(kW2, static_cast<std::size_t>(k) + 1);
  crt_pass(qr1, qr2, q, static_cast<std::size_t>(k) + 1);
  modp_pass(q, static_cast<std::size_t>(k) + 1, M.pdiv);
  std::reverse(q, q + k + 1);

  // wrapped q*m at half size
  u32* qh1 = scratch_u32(kSpC1, hn);
  u32* qh2 = scratch_u32(kSpC2, hn);
  load_spec(qh1, qh2, q, static_cast<std::size_t>(k) + 1, M.lgh, p);
  Ntt1::pointwise_mul_pre(qh1, qh1, M.mwrap.s1.data(), M.mwrap.s1p.data(), hn);
  Ntt2::pointwise_mul_pre(qh2, qh2, M.mwrap.s2.data(), M.mwrap.s2p.data(), hn);
  Ntt1::inverse(qh1, M.lgh);
  Ntt2::inverse(qh2, M.lgh);
  u64* wrap = scratch_u64(kW3, static_cast<std::size_t>(d));
  crt_pass(qh1, qh2, wrap, static_cast<std::size_t>(d));
  modp_pass(wrap, static_cast<std::size_t>(d), M.pdiv);

  // r[i] = prod[i] - (wrap[i] - qm[i+hn]) with qm[j] = prod[j] mod p for j >= d
  FpPoly r;
  r.p = p;
  r.c.resize(d);
  for (int i = 0; i < d; ++i) {
    std::size_t j = static_cast<std::size_t>(i) + hn;
    u64 high = j < full ? prod[j] : 0;
    r.c[static_cast<std::size_t>(i)] =
        subm(addm(prod[static_cast<std::size_t>(i)], high, p), wrap[static_cast<std::size_t>(i)], p);
  }
  return trim(std::move(r));
}

// Working element with lazily maintained spectra; cur is always the canonical
// coefficient form.
struct ModChain {
  const FpModulus::Impl* M;
  FpPoly cur;
  std::vector<u32> s1, s2;
  bool spec_ok = false;

  explicit ModChain(const FpModulus::Impl& m) : M(&m) {
    cur.p = m.p;
    s1.resize(std::size_t(1) << m.lg);
    s2.resize(std::size_t(1) << m.lg);
  }

  void set(FpPoly v) {  // v reduced mod m
    cur = std::move(v);
    spec_ok = false;
  }

  void ensure_spec() {
    if (spec_ok) return;
    std::vector<u64> tmp(cur.c.begin(), cur.c.end());
    load_spec(s1.data(), s2.data(), tmp.data(), tmp.size(), M->lg, M->p);
    spec_ok = true;
  }

  // cur = cur * rhs mod m; rhs in cached-spectrum form (canonical + Shoup).
  void mul_cached(const CachedOp& rhs) {
    if (cur.zero()) return;
    ensure_spec();
    step(rhs.s1.data(), rhs.s1p.data(), rhs.s2.data(), rhs.s2p.data(), nullptr, nullptr);
  }

  void square() {
    if (cur.zero()) return;
    ensure_spec();
    step(nullptr, nullptr, nullptr, nullptr, s1.data(), s2.data());
  }

  // cur = cur "+" other (coefficient add of reduced elements)
  void add(const FpPoly& other) {
    cur = fp_add(cur, other);
    spec_ok = false;
  }

 private:
  void step(const u32* w1, const u32* w1p, const u32* w2, const u32* w2p,
            const u32* g1, const u32* g2) {
    std::size_t n = std::size_t(1) << M->lg;
    u32* pr1 = scratch_u32(kSpA1, n);
    u32* pr2 = scratch_u32(kSpA2, n);
    if (w1) {
      Ntt1::pointwise_mul_pre(pr1, s1.data(), w1, w1p, n);
      Ntt2::pointwise_mul_pre(pr2, s2.data(), w2, w2p, n);
    } else {
      Ntt1::pointwise_mul(pr1, s1.data(), g1, n);
      Ntt2::pointwise_mul(pr2, s2.data(), g2, n);
    }
    Ntt1::inverse(pr1, M->lg);
    Ntt2::inverse(pr2, M->lg);
    std::size_t full = 2 * static_cast<std::size_t>(M->d) - 1;
    u64* prod = scratch_u64(kW0, std::max(full, std::size_t(1) << M->lgh));
    crt_pass(pr1, pr2, prod, full);
    modp_pass(prod, full, M->pdiv);
    cur = rem_core(prod, *M);
    spec_ok = false;
  }
};

}  // namespace

FpModulus::FpModulus(FpPoly m_in) {
  FpPoly m = trim(std::move(m_in));
  if (m.degree() < 1) throw std::domain_error("modulus polynomial must have degree >= 1");
  u64 p = m.p;
  if (m.c.back() != 1) {
    u64 s = invm(m.c.back(), p);
    for (auto& cc : m.c) cc = mulm(cc, s, p);
  }
  auto impl = std::make_shared<Impl>();
  impl->p = p;
  impl->d = m.degree();
  impl->m = std::move(m);
  impl->pdiv.init(p);
  std::size_t max_product = 2 * static_cast<std::size_t>(impl->d) - 1;
  impl->ntt = impl->d >= kNttRemThreshold &&
              ntt_applicable(p, std::size_t(1) << ceil_log2(max_product));
  if (impl->ntt) {
    impl->lg = ceil_log2(max_product);
    impl->lgh = impl->lg - 1;
    impl->inv_rev = newton_inverse(reversed(impl->m), std::max(impl->d - 1, 1));
    impl->irev.build(impl->inv_rev, impl->lg);
    // m mod (x^h - 1): the monic head folds onto index d - h
    std::size_t h = std::size_t(1) << impl->lgh;
    std::vector<u64> mw(h, 0);
    for (int i = 0; i < impl->d; ++i) mw[static_cast<std::size_t>(i)] = impl->m.c[static_cast<std::size_t>(i)];
    std::size_t fold = static_cast<std::size_t>(impl->d) % h;  // d <= 2h, so x^d folds here
    mw[fold] = addm(mw[fold], 1, p);
    impl->mwrap.build(mw.data(), h, impl->lgh, p);
  }
  impl_ = std::move(impl);
}

const FpPoly& FpModulus::poly() const { return impl_->m; }
int FpModulus::degree() const { return impl_->d; }
std::uint64_t FpModulus::p() const { return impl_->p; }

namespace {

FpPoly rem_impl(const FpPoly& a, const FpModulus::Impl& M) {
  if (a.degree() < M.d) return a;
  if (M.d == 1) {
    // m = x + c: remainder is a evaluated at -c
    u64 root = subm(0, M.m.c[0], M.p);
    FpPoly r;
    r.p = M.p;
    u64 v = fp_eval(a, root);
    if (v) r.c = {v};
    return r;
  }
  if (M.ntt && a.degree() <= 2 * M.d - 2) {
    std::size_t full = 2 * static_cast<std::size_t>(M.d) - 1;
    std::vector<u64> buf(full, 0);
    std::copy(a.c.begin(), a.c.end(), buf.begin());
    return rem_core(buf.data(), M);
  }
  return fp_divrem(a, M.m);
}

FpPoly mulmod_impl(const FpPoly& a, const FpPoly& b, const FpModulus::Impl& M) {
  if (a.zero() || b.zero()) return {M.p, {}};
  if (!M.ntt) return rem_impl(fp_mul(a, b), M);
  std::size_t n = std::size_t(1) << M.lg;
  u32* fa1 = scratch_u32(kSpD1, n);
  u32* fa2 = scratch_u32(kSpD2, n);
  {
    std::vector<u64> tmp(a.c.begin(), a.c.end());
    load_spec(fa1, fa2, tmp.data(), tmp.size(), M.lg, M.p);
  }
  if (&a == &b) {
    Ntt1::pointwise_mul(fa1, fa1, fa1, n);
    Ntt2::pointwise_mul(fa2, fa2, fa2, n);
  } else {
    u32* fb1 = scratch_u32(kSpC1, n);
    u32* fb2 = scratch_u32(kSpC2, n);
    std::vector<u64> tmp(b.c.begin(), b.c.end());
    load_spec(fb1, fb2, tmp.data(), tmp.size(), M.lg, M.p);
    Ntt1::pointwise_mul(fa1, fa1, fb1, n);
    Ntt2::pointwise_mul(fa2, fa2, fb2, n);
  }
  Ntt1::inverse(fa1, M.lg);
  Ntt2::inverse(fa2, M.lg);
  std::size_t full = 2 * static_cast<std::size_t>(M.d) - 1;
  std::vector<u64> prod(full, 0);
  crt_pass(fa1, fa2, prod.data(), full);
  modp_pass(prod.data(), full, M.pdiv);
  return rem_core(prod.data(), M);
}

}  // namespace

FpPoly fp_rem(const FpPoly& a, const FpModulus& m) {
  if (a.p != m.p()) throw std::invalid_argument("modulus mismatch");
  return rem_impl(a, m.impl());
}

FpPoly fp_mulmod(const FpPoly& a, const FpPoly& b, const FpModulus& m) {
  check_same_p(a, b);
  if (a.p != m.p()) throw std::invalid_argument("modulus mismatch");
  FpPoly ra = rem_impl(a, m.impl());
  FpPoly rb = rem_impl(b, m.impl());
  return mulmod_impl(ra, rb, m.impl());
}

FpPoly fp_powmod(const FpPoly& base, const mpz_class& e, const FpModulus& m) {
  if (base.p != m.p()) throw std::invalid_argument("modulus mismatch");
  if (e < 0) throw std::invalid_argument("negative exponent");
  const auto& M = m.impl();
  if (e == 0) return rem_impl(one_poly(M.p), M);
  FpPoly b = rem_impl(base, M);
  if (!M.ntt) {
    FpPoly acc = b;
    std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (std::size_t i = bits - 1; i-- > 0;) {
      acc = mulmod_impl(acc, acc, M);
      if (mpz_tstbit(e.get_mpz_t(), static_cast<mp_bitcnt_t>(i))) acc = mulmod_impl(acc, b, M);
    }
    return acc;
  }
  CachedOp bhat;
  bhat.build(b, M.lg);
  ModChain chain(M);
  chain.set(b);
  std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = bits - 1; i-- > 0;) {
    chain.square();
    if (mpz_tstbit(e.get_mpz_t(), static_cast<mp_bitcnt_t>(i))) chain.mul_cached(bhat);
  }
  return chain.cur;
}

FpPoly fp_compose_mod(const FpPoly& g, const FpPoly& h, const FpModulus& m) {
  check_same_p(g, h);
  if (g.p != m.p()) throw std::invalid_argument("modulus mismatch");
  const auto& M = m.impl();
  u64 p = M.p;
  // only the inner argument may be reduced: g(h - qm) differs from g(h) by a
  // multiple of m, while (g mod m)(h) does not
  FpPoly gr = trim(g);
  FpPoly hr = rem_impl(h, M);
  if (gr.zero()) return {p, {}};
  if (M.d == 1)
    return rem_impl(fp_constant(p, fp_eval(gr, fp_eval(hr, subm(0, M.m.c[0], p)))), M);
  int s = std::max(1, static_cast<int>(std::lround(std::sqrt(double(gr.c.size())))));
  int blocks = static_cast<int>((gr.c.size() + s - 1) / s);
  std::size_t width = static_cast<std::size_t>(M.d);

  // baby powers h^0..h^s
  std::vector<u64> baby(static_cast<std::size_t>(s) * width, 0);
  FpPoly hs;  // h^s
  if (M.ntt) {
    CachedOp hhat;
    hhat.build(hr, M.lg);
    ModChain chain(M);
    chain.set(one_poly(p));
    for (int t = 0; t < s; ++t) {
      std::copy(chain.cur.c.begin(), chain.cur.c.end(), baby.begin() + t * width);
      chain.mul_cached(hhat);
    }
    hs = chain.cur;
  } else {
    FpPoly cur = one_poly(p);
    for (int t = 0; t < s; ++t) {
      std::copy(cur.c.begin(), cur.c.end(), baby.begin() + t * width);
      cur = mulmod_impl(cur, hr, M);
    }
    hs = cur;
  }

  // block rows: row[b] = sum_t g[b*s+t] * h^t
  std::vector<u64> rows(static_cast<std::size_t>(blocks) * width, 0);
  bool u64_safe = (u128)(p - 1) * (p - 1) <= (~u64(0)) / static_cast<u64>(s);
  for (int b = 0; b < blocks; ++b) {
    u64* row = rows.data() + static_cast<std::size_t>(b) * width;
    if (u64_safe) {
      for (int t = 0; t < s; ++t) {
        std::size_t idx = static_cast<std::size_t>(b) * s + t;
        if (idx >= gr.c.size() || gr.c[idx] == 0) continue;
        u64 coef = gr.c[idx];
        const u64* bt = baby.data() + static_cast<std::size_t>(t) * width;
        for (std::size_t i = 0; i < width; ++i) row[i] += coef * bt[i];
      }
      for (std::size_t i = 0; i < width; ++i) row[i] = M.pdiv.reduce(row[i]);
    } else {
      for (std::size_t i = 0; i < width; ++i) {
        u128 acc = 0;
        for (int t = 0; t < s; ++t) {
          std::size_t idx = static_cast<std::size_t>(b) * s + t;
          if (idx >= gr.c.size()) break;
          acc += (u128)gr.c[idx] * baby[static_cast<std::size_t>(t) * width + i];
          if (p >= (u64(1) << 32)) acc %= p;  // wide moduli: keep the sum bounded
        }
        row[i] = static_cast<u64>(acc % p);
      }
    }
  }
  auto row_poly = [&](int b) {
    FpPoly f;
    f.p = p;
    f.c.assign(rows.begin() + static_cast<std::size_t>(b) * width,
               rows.begin() + static_cast<std::size_t>(b + 1) * width);
    return trim(std::move(f));
  };

  // giant Horner in h^s
  if (M.ntt) {
    CachedOp Hhat;
    Hhat.build(hs, M.lg);
    ModChain chain(M);
    chain.set(row_poly(blocks - 1));
    for (int b = blocks - 2; b >= 0; --b) {
      chain.mul_cached(Hhat);
      chain.add(row_poly(b));
    }
    return chain.cur;
  }
  FpPoly acc = row_poly(blocks - 1);
  for (int b = blocks - 2; b >= 0; --b) {
    acc = mulmod_impl(acc, hs, M);
    acc = fp_add(acc, row_poly(b));
  }
  return acc;
}

namespace {

// Estimated cost of one Frobenius doubling step, in mulmod units.
double powmod_cost(double exponent_bits) { return 1.5 * exponent_bits; }
double compose_cost(int d) { return 2.25 * std::sqrt(double(d)) + 4.0; }

}  // namespace

bool is_irreducible(const FpPoly& f_in) {
  FpPoly f = trim(f_in);
  if (f.degree() < 1) throw std::domain_error("irreducibility needs degree >= 1");
  u64 p = f.p;
  if (f.degree() == 1) return true;
  if (f.c.back() != 1) {
    u64 s = invm(f.c.back(), p);
    for (auto& cc : f.c) cc = mulm(cc, s, p);
  }
  int m = f.degree();
  FpModulus M(f);
  FpPoly X = fp_x(p);

  // Frobenius powers X^(p^(2^i)) by the cheaper of p^(2^i)-powering and
  // self-composition, then arbitrary exponents by composing binary digits.
  std::vector<FpPoly> ladder;  // ladder[i] = X^(p^(2^i)) mod f
  ladder.push_back(fp_powmod(X, mpz_class(static_cast<unsigned long>(p)), M));
  double pbits =
      static_cast<double>(mpz_sizeinbase(mpz_class(static_cast<unsigned long>(p)).get_mpz_t(), 2));
  for (int i = 1; (1 << i) <= m; ++i) {
    const FpPoly& prev = ladder.back();
    double pow_bits = pbits * double(1 << (i - 1));
    if (powmod_cost(pow_bits) < compose_cost(m)) {
      mpz_class e;
      mpz_ui_pow_ui(e.get_mpz_t(), static_cast<unsigned long>(p), 1u << (i - 1));
      ladder.push_back(fp_powmod(prev, e, M));
    } else {
      ladder.push_back(fp_compose_mod(prev, prev, M));
    }
  }
  auto frobenius = [&](int j) {  // X^(p^j) mod f, j >= 1
    FpPoly acc;
    bool have = false;
    for (int i = 0; (1 << i) <= j; ++i) {
      if (!(j & (1 << i))) continue;
      acc = have ? fp_compose_mod(acc, ladder[i], M) : ladder[i];
      have = true;
    }
    return acc;
  };

  for (auto& [l, e] : factorize_u64(static_cast<u64>(m))) {
    (void)e;
    FpPoly u = frobenius(m / static_cast<int>(l));
    FpPoly g = fp_gcd(fp_sub(u, X), f);
    if (g.degree() != 0) return false;
  }
  return frobenius(m) == X;
}

FpPoly reduce_mod_p(const RatPoly& f, std::uint64_t p) {
  if (p >= kMaxPolyModulus || !is_prime_u64(p))
    throw std::invalid_argument("modulus must be a prime below 2^62");
  int deg = rat_degree(f);
  FpPoly r;
  r.p = p;
  r.c.resize(static_cast<std::size_t>(deg + 1));
  for (int i = 0; i <= deg; ++i) {
    u64 den = mpz_fdiv_ui(f[static_cast<std::size_t>(i)].get_den().get_mpz_t(), p);
    if (den == 0) throw BadDenominator(p);
    u64 num = mpz_fdiv_ui(f[static_cast<std::size_t>(i)].get_num().get_mpz_t(), p);
    r.c[static_cast<std::size_t>(i)] = mulm(num, invm(den, p), p);
  }
  if (deg >= 0 && r.c.back() == 0) throw LeadingCoeffVanishes(p);
  return trim(std::move(r));
}

mpq_class sample_irreducible_fraction(std::uint64_t p, int d, int samples, std::uint64_t seed) {
  if (samples < 1000) throw std::invalid_argument("need at least 1000 samples");
  if (d < 1) throw std::invalid_argument("degree must be >= 1");
  if (p >= kMaxPolyModulus || !is_prime_u64(p))
    throw std::invalid_argument("modulus must be a prime below 2^62");
  std::mt19937_64 rng(seed);
  int hits = 0;
  for (int i = 0; i < samples; ++i) {
    FpPoly f;
    f.p = p;
    f.c.resize(static_cast<std::size_t>(d) + 1);
    for (int j = 0; j < d; ++j) f.c[j] = rng() % p;
    f.c[d] = 1;
    if (is_irreducible(f)) ++hits;
  }
  return mpq_class(hits, samples);
}

mpz_class monic_irreducible_count(std::uint64_t p, int d) {
  if (d < 1) throw std::invalid_argument("degree must be >= 1");
  mpz_class total = 0;
  for (u64 e : divisors_u64(static_cast<u64>(d))) {
    auto fac = factorize_u64(e);
    int mu = 1;
    for (auto& [q, k] : fac) {
      (void)q;
      if (k > 1) {
        mu = 0;
        break;
      }
      mu = -mu;
    }
    if (mu == 0) continue;
    mpz_class term;
    mpz_ui_pow_ui(term.get_mpz_t(), static_cast<unsigned long>(p),
                  static_cast<unsigned long>(d / static_cast<int>(e)));
    total += mu * term;
  }
  return total / d;
}

}  // namespace permdyn
