#include "permdyn/numeric.hpp"

#include <algorithm>
#include <cstddef>
#include <stdexcept>

namespace permdyn {

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % d == 0) return n == d;
  }
  // Deterministic Miller-Rabin; this base set is exact for all 64-bit inputs.
  auto mulmod = [](std::uint64_t a, std::uint64_t b, std::uint64_t m) -> std::uint64_t {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
  };
  auto powmod = [&](std::uint64_t a, std::uint64_t e, std::uint64_t m) -> std::uint64_t {
    std::uint64_t r = 1;
    a %= m;
    while (e) {
      if (e & 1) r = mulmod(r, a, m);
      a = mulmod(a, a, m);
      e >>= 1;
    }
    return r;
  };
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::vector<std::uint64_t> primes_up_to(std::uint64_t x) {
  std::vector<std::uint64_t> out;
  if (x < 2) return out;
  std::vector<bool> sieve(x + 1, true);
  sieve[0] = sieve[1] = false;
  for (std::uint64_t i = 2; i * i <= x; ++i) {
    if (!sieve[i]) continue;
    for (std::uint64_t j = i * i; j <= x; j += i) sieve[j] = false;
  }
  for (std::uint64_t i = 2; i <= x; ++i) {
    if (sieve[i]) out.push_back(i);
  }
  return out;
}

std::map<std::uint64_t, int> factorize_u64(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("factorize_u64: n must be >= 1");
  std::map<std::uint64_t, int> out;
  for (std::uint64_t d = 2; d * d <= n; d += (d == 2 ? 1 : 2)) {
    while (n % d == 0) {
      ++out[d];
      n /= d;
    }
  }
  if (n > 1) ++out[n];
  return out;
}

std::uint64_t euler_phi_u64(std::uint64_t n) {
  std::uint64_t r = n;
  for (const auto& [p, e] : factorize_u64(n)) {
    r -= r / p;
  }
  return r;
}

std::vector<std::uint64_t> divisors_u64(std::uint64_t n) {
  std::vector<std::uint64_t> out{1};
  for (const auto& [p, e] : factorize_u64(n)) {
    std::size_t base = out.size();
    std::uint64_t pk = 1;
    for (int k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < base; ++i) out.push_back(out[i] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

PrimePower as_prime_power(std::uint64_t n) {
  if (n < 2) return {};
  auto f = factorize_u64(n);
  if (f.size() != 1) return {};
  return {f.begin()->first, f.begin()->second};
}

mpz_class factorial_mpz(unsigned n) {
  mpz_class r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

std::string rational_to_string(const mpq_class& q) {
  mpq_class c(q);
  c.canonicalize();
  if (c.get_den() == 1) return c.get_num().get_str();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

mpq_class rational_from_string(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("rational_from_string: empty input");
  mpq_class q;
  if (q.set_str(s, 10) != 0) {
    throw std::invalid_argument("rational_from_string: malformed rational '" + s + "'");
  }
  q.canonicalize();
  return q;
}

}  // namespace permdyn
