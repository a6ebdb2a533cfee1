#include "permdyn/stability.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <limits>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "permdyn/fppoly.hpp"
#include "permdyn/numeric.hpp"

namespace permdyn {

namespace {

using u64 = std::uint64_t;

void check_entry(const RatPoly& f) {
  if (rat_degree(f) < 2) throw std::invalid_argument("sequence entries need degree >= 2");
}

// Degrees multiply along the composition; keep the coefficient count sane.
constexpr std::size_t kMaxCompositionCoeffs = std::size_t(1) << 22;

bool height_ok(const mpq_class& q) {
  return mpz_sizeinbase(q.get_num().get_mpz_t(), 2) <= 1024 &&
         mpz_sizeinbase(q.get_den().get_mpz_t(), 2) <= 1024;
}

}  // namespace

PolySequence make_sequence(std::vector<RatPoly> head, std::vector<RatPoly> tail,
                           std::string label) {
  if (tail.empty()) throw std::invalid_argument("sequence tail must be nonempty");
  for (const auto& f : head) check_entry(f);
  for (const auto& f : tail) check_entry(f);
  return {std::move(head), std::move(tail), std::move(label)};
}

PolySequence make_pair_sequence(const RatPoly& f, const mpq_class& a) {
  RatPoly shifted = rat_sub(f, rat_constant(a));
  std::string label = "(" + rat_poly_to_string(f) + ", a=" + rational_to_string(a) + ")";
  return make_sequence({std::move(shifted)}, {f}, std::move(label));
}

const RatPoly& sequence_entry(const PolySequence& seq, int n) {
  if (n < 1) throw std::invalid_argument("entry index is 1-based");
  std::size_t idx = static_cast<std::size_t>(n - 1);
  if (idx < seq.head.size()) return seq.head[idx];
  return seq.tail[(idx - seq.head.size()) % seq.tail.size()];
}

RatPoly partial_composition(const PolySequence& seq, int n) {
  if (n < 1) throw std::invalid_argument("composition needs n >= 1");
  RatPoly acc = sequence_entry(seq, 1);
  for (int j = 2; j <= n; ++j) acc = rat_compose(acc, sequence_entry(seq, j));
  return acc;
}

std::string reason_to_string(const DepthRecord& rec, int max_depth) {
  switch (rec.reason) {
    case DepthReason::exhausted:
      return "exhausted=" + std::to_string(max_depth);
    case DepthReason::reducible:
      return "reducible@" + std::to_string(rec.failed_at);
    case DepthReason::bad_denominator:
      return "bad_denominator";
    case DepthReason::leading_coeff:
      return "leading_coeff";
  }
  return "?";
}

namespace {

// g(h) with small outer degree, Horner.
FpPoly compose_small_outer(const FpPoly& g, const FpPoly& h) {
  FpPoly acc = fp_constant(g.p, g.c.empty() ? 0 : g.c.back());
  for (std::size_t i = g.c.size() - 1; i-- > 0;) {
    acc = fp_mul(acc, h);
    acc = fp_add(acc, fp_constant(g.p, g.c[i]));
  }
  return acc;
}

struct ReducedEntries {
  std::vector<FpPoly> head, tail;
  int fail_at = 0;  // first 1-based step whose entry fails to reduce; 0 = none
  DepthReason fail_reason = DepthReason::exhausted;

  const FpPoly& entry(int n) const {
    std::size_t idx = static_cast<std::size_t>(n - 1);
    if (idx < head.size()) return head[idx];
    return tail[(idx - head.size()) % tail.size()];
  }
};

// Reduce each distinct entry once; report the earliest failing step <= N.
ReducedEntries reduce_entries(const PolySequence& seq, u64 p, int N) {
  ReducedEntries out;
  auto reduce_at = [&](const RatPoly& f, int first_step) -> std::optional<FpPoly> {
    if (out.fail_at && first_step >= out.fail_at) return std::nullopt;
    try {
      return reduce_mod_p(f, p);
    } catch (const BadDenominator&) {
      out.fail_at = first_step;
      out.fail_reason = DepthReason::bad_denominator;
    } catch (const LeadingCoeffVanishes&) {
      out.fail_at = first_step;
      out.fail_reason = DepthReason::leading_coeff;
    }
    return std::nullopt;
  };
  for (std::size_t i = 0; i < seq.head.size() && static_cast<int>(i) < N; ++i) {
    auto r = reduce_at(seq.head[i], static_cast<int>(i) + 1);
    if (!r) break;
    out.head.push_back(std::move(*r));
  }
  if (!out.fail_at) {
    for (std::size_t i = 0; i < seq.tail.size(); ++i) {
      int first_step = static_cast<int>(seq.head.size() + i) + 1;
      if (first_step > N) break;
      auto r = reduce_at(seq.tail[i], first_step);
      if (!r) break;
      out.tail.push_back(std::move(*r));
    }
  }
  return out;
}

}  // namespace

DepthRecord stable_depth(const PolySequence& seq, std::uint64_t p, int N) {
  if (N < 1) throw std::invalid_argument("depth budget must be >= 1");
  DepthRecord rec;
  rec.p = p;

  ReducedEntries red = reduce_entries(seq, p, N);
  int window = red.fail_at ? red.fail_at - 1 : N;
  auto entry_outcome = [&](int depth) {
    rec.depth = depth;
    if (depth == N) {
      rec.reason = DepthReason::exhausted;
      rec.failed_at = 0;
    } else {
      rec.reason = red.fail_reason;
      rec.failed_at = red.fail_at;
    }
  };
  if (window == 0) {
    entry_outcome(0);
    return rec;
  }

  // Incremental compositions F_1..F_window. For the (f - a, f, f, ...) shape
  // each step composes the small outer entry onto the running iterate of f;
  // the generic fallback composes the big accumulator with the next entry.
  std::vector<FpPoly> comp(static_cast<std::size_t>(window) + 1);
  comp[1] = red.entry(1);
  bool pair_shape = seq.head.size() == 1 && seq.tail.size() == 1;
  std::size_t degree_cap_hit = 0;
  if (pair_shape && window >= 2) {
    FpPoly iterate = red.tail[0];
    for (int k = 2; k <= window; ++k) {
      comp[static_cast<std::size_t>(k)] = compose_small_outer(comp[1], iterate);
      if (comp[static_cast<std::size_t>(k)].c.size() > kMaxCompositionCoeffs) {
        degree_cap_hit = static_cast<std::size_t>(k);
        break;
      }
      if (k < window) iterate = compose_small_outer(red.tail[0], iterate);
    }
  } else {
    for (int k = 2; k <= window; ++k) {
      comp[static_cast<std::size_t>(k)] =
          fp_compose(comp[static_cast<std::size_t>(k - 1)], red.entry(k));
      if (comp[static_cast<std::size_t>(k)].c.size() > kMaxCompositionCoeffs) {
        degree_cap_hit = static_cast<std::size_t>(k);
        break;
      }
    }
  }
  if (degree_cap_hit)
    throw std::invalid_argument("composition degree exceeds supported range at depth " +
                                std::to_string(degree_cap_hit));

  // Depth = largest k with F_k irreducible: if F_k = G o H is irreducible
  // then so is G, so the irreducibility indicator is monotone along the
  // chain. Test the ends, then bisect.
  std::vector<int> verdict(static_cast<std::size_t>(window) + 1, -1);
  auto irred = [&](int k) {
    auto& v = verdict[static_cast<std::size_t>(k)];
    if (v < 0) v = is_irreducible(comp[static_cast<std::size_t>(k)]) ? 1 : 0;
    return v == 1;
  };

  if (!irred(1)) {
    rec.depth = 0;
    rec.reason = DepthReason::reducible;
    rec.failed_at = 1;
    return rec;
  }
  if (irred(window)) {
    entry_outcome(window);
    return rec;
  }
  int lo = 1, hi = window;  // irred(lo), !irred(hi)
  while (hi - lo > 1) {
    int mid = lo + (hi - lo) / 2;
    (irred(mid) ? lo : hi) = mid;
  }
  rec.depth = lo;
  rec.reason = DepthReason::reducible;
  rec.failed_at = hi;
  return rec;
}

StabilityReport density_scan(const PolySequence& seq, std::uint64_t X, int N, int workers) {
  if (X < 100) throw std::invalid_argument("prime bound must be >= 100");
  if (N < 1) throw std::invalid_argument("depth must be >= 1");
  if (workers < 1) throw std::invalid_argument("workers must be >= 1");
  std::vector<u64> primes = primes_up_to(X);
  u64 work = static_cast<u64>(N) * primes.size();
  if (work > kScanWorkCap)
    throw std::invalid_argument("scan needs " + std::to_string(work) +
                                " work units, cap is " + std::to_string(kScanWorkCap));

  StabilityReport rep;
  rep.sequence = seq.label.empty() ? "custom sequence" : seq.label;
  rep.prime_bound = X;
  rep.max_depth = N;
  rep.prime_count = primes.size();
  rep.records.resize(primes.size());

  auto run = [&](int w, int stride) {
    for (std::size_t i = static_cast<std::size_t>(w); i < primes.size();
         i += static_cast<std::size_t>(stride))
      rep.records[i] = stable_depth(seq, primes[i], N);
  };
  if (workers == 1 || primes.size() < 2) {
    run(0, 1);
  } else {
    int t = std::min<int>(workers, static_cast<int>(primes.size()));
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(t));
    for (int w = 0; w < t; ++w) pool.emplace_back(run, w, t);
    for (auto& th : pool) th.join();
  }

  rep.survival.resize(static_cast<std::size_t>(N));
  for (int k = 1; k <= N; ++k) {
    u64 count = 0;
    for (const auto& r : rep.records)
      if (r.depth >= k) ++count;
    mpq_class s(count, rep.prime_count);
    s.canonicalize();
    rep.survival[static_cast<std::size_t>(k - 1)] = s;
  }
  return rep;
}

std::vector<DepthComparison> chebotarev_compare(const StabilityReport& report,
                                                const std::vector<mpq_class>& candidate_pi) {
  if (candidate_pi.size() != report.survival.size())
    throw std::invalid_argument("candidate list length must match report depth");
  std::vector<DepthComparison> out;
  out.reserve(candidate_pi.size());
  double n = static_cast<double>(report.prime_count);
  for (std::size_t k = 0; k < candidate_pi.size(); ++k) {
    DepthComparison c;
    c.depth = static_cast<int>(k) + 1;
    c.empirical = report.survival[k];
    c.candidate = candidate_pi[k];
    double pi = c.candidate.get_d();
    double m = c.empirical.get_d() * n;
    double sigma = std::sqrt(n * pi * (1.0 - pi));
    if (sigma == 0.0) {
      c.z = (c.empirical == c.candidate) ? 0.0 : std::numeric_limits<double>::infinity();
    } else {
      c.z = (m - n * pi) / sigma;
    }
    c.flagged = std::abs(c.z) > 4.0;
    out.push_back(std::move(c));
  }
  return out;
}

RatPoly dickson(int n, const mpq_class& alpha) {
  if (n < 0) throw std::invalid_argument("dickson index must be >= 0");
  RatPoly prev = rat_constant(2);
  if (n == 0) return prev;
  RatPoly cur = rat_x();
  for (int k = 2; k <= n; ++k) {
    RatPoly next = rat_sub(rat_mul(rat_x(), cur), rat_scale(prev, alpha));
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

std::optional<int> detect_periodic(const RatPoly& f, const mpq_class& a, int bound) {
  if (bound < 1 || bound > 64) throw std::invalid_argument("orbit bound must be in [1, 64]");
  mpq_class x = a;
  for (int step = 1; step <= bound; ++step) {
    x = rat_eval(f, x);
    if (x == a) return step;
    if (!height_ok(x)) return std::nullopt;
  }
  return std::nullopt;
}

namespace {

// Rational roots of f via the rational root theorem on the primitive integer
// form. Divisor enumeration needs the outer coefficients to fit 64 bits.
std::vector<mpq_class> rational_roots(const RatPoly& f_in) {
  RatPoly f = rat_trim(f_in);
  std::vector<mpq_class> roots;
  if (rat_degree(f) < 1) return roots;

  mpz_class den_lcm = 1;
  for (const auto& c : f) mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den().get_mpz_t());
  std::vector<mpz_class> z;
  z.reserve(f.size());
  for (const auto& c : f) z.push_back(mpz_class(c.get_num() * (den_lcm / c.get_den())));

  std::size_t low = 0;
  while (low < z.size() && z[low] == 0) ++low;
  if (low > 0) roots.emplace_back(0);
  if (low + 1 >= z.size()) return roots;  // only the monomial factor remains

  mpz_class content = 0;
  for (std::size_t i = low; i < z.size(); ++i)
    mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), z[i].get_mpz_t());
  for (std::size_t i = low; i < z.size(); ++i) z[i] /= content;

  mpz_class c0 = abs(z[low]), lead = abs(z.back());
  if (!c0.fits_ulong_p() || !lead.fits_ulong_p())
    throw std::overflow_error("rational root search needs outer coefficients below 2^64");
  for (u64 pnum : divisors_u64(c0.get_ui())) {
    for (u64 qden : divisors_u64(lead.get_ui())) {
      for (int sign : {1, -1}) {
        mpq_class cand(sign * mpz_class(pnum), mpz_class(qden));
        cand.canonicalize();
        if (rat_eval(f, cand) == 0 &&
            std::find(roots.begin(), roots.end(), cand) == roots.end())
          roots.push_back(cand);
      }
    }
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace

std::optional<PostcriticalWitness> detect_postcritical(const RatPoly& f, const mpq_class& a,
                                                       int bound) {
  if (bound < 1 || bound > 64) throw std::invalid_argument("orbit bound must be in [1, 64]");
  for (const mpq_class& c : rational_roots(rat_derivative(f))) {
    mpq_class x = c;
    for (int step = 1; step <= bound; ++step) {
      x = rat_eval(f, x);
      if (x == a) return PostcriticalWitness{c, step};
      if (!height_ok(x)) break;
    }
  }
  return std::nullopt;
}

namespace {

u64 fnv1a(const std::string& s) {
  u64 h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

nlohmann::json report_body(const StabilityReport& rep) {
  nlohmann::json doc;
  doc["sequence"] = rep.sequence;
  doc["prime_bound"] = rep.prime_bound;
  doc["max_depth"] = rep.max_depth;
  doc["prime_count"] = rep.prime_count;
  nlohmann::json surv = nlohmann::json::array();
  for (std::size_t k = 0; k < rep.survival.size(); ++k) {
    surv.push_back({{"depth", k + 1},
                    {"fraction", rational_to_string(rep.survival[k])},
                    {"value", rep.survival[k].get_d()}});
  }
  doc["survival"] = surv;
  return doc;
}

}  // namespace

std::string report_to_json(const StabilityReport& rep) {
  nlohmann::json doc = report_body(rep);
  char stamp[32] = {0};
  std::time_t now = std::time(nullptr);
  std::tm tm_utc;
  gmtime_r(&now, &tm_utc);
  std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  char hash[24];
  std::snprintf(hash, sizeof hash, "%016llx",
                static_cast<unsigned long long>(fnv1a(doc.dump())));
  doc["content_hash"] = hash;
  doc["generated_at"] = stamp;
  return doc.dump(2) + "\n";
}

std::string report_to_csv(const StabilityReport& rep) {
  std::string out = "p,depth,reason\n";
  for (const auto& r : rep.records) {
    out += std::to_string(r.p);
    out += ',';
    out += std::to_string(r.depth);
    out += ',';
    out += reason_to_string(r, rep.max_depth);
    out += '\n';
  }
  return out;
}

}  // namespace permdyn
