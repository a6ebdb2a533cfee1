#include <doctest.h>

#include <set>

#include "permdyn/fppoly.hpp"
#include "permdyn/numeric.hpp"
#include "permdyn/stability.hpp"

#include <json.hpp>

using namespace permdyn;

namespace {

RatPoly poly(std::initializer_list<mpq_class> coeffs) { return rat_trim(RatPoly(coeffs)); }

// x^2 + c
RatPoly quad(const mpq_class& c) { return poly({c, 0, 1}); }

// Sequential early-exit reference for stable_depth, composing over Q.
DepthRecord naive_depth(const PolySequence& seq, std::uint64_t p, int N) {
  DepthRecord rec;
  rec.p = p;
  for (int k = 1; k <= N; ++k) {
    RatPoly comp = partial_composition(seq, k);
    FpPoly red;
    try {
      red = reduce_mod_p(comp, p);
    } catch (const BadDenominator&) {
      rec.reason = DepthReason::bad_denominator;
      rec.failed_at = k;
      return rec;
    } catch (const LeadingCoeffVanishes&) {
      rec.reason = DepthReason::leading_coeff;
      rec.failed_at = k;
      return rec;
    }
    if (!is_irreducible(red)) {
      rec.reason = DepthReason::reducible;
      rec.failed_at = k;
      return rec;
    }
    rec.depth = k;
  }
  rec.reason = DepthReason::exhausted;
  return rec;
}

}  // namespace

TEST_SUITE_BEGIN("stability");

TEST_CASE("sequence construction and entry cycling") {
  PolySequence s = make_sequence({quad(1)}, {quad(-2), quad(3)});
  CHECK(sequence_entry(s, 1) == quad(1));
  CHECK(sequence_entry(s, 2) == quad(-2));
  CHECK(sequence_entry(s, 3) == quad(3));
  CHECK(sequence_entry(s, 4) == quad(-2));
  CHECK(sequence_entry(s, 5) == quad(3));
  CHECK_THROWS_AS(sequence_entry(s, 0), std::invalid_argument);

  CHECK_THROWS_AS(make_sequence({}, {}), std::invalid_argument);
  CHECK_THROWS_AS(make_sequence({}, {poly({1, 1})}), std::invalid_argument);
  CHECK_THROWS_AS(make_sequence({poly({0, 0, 1}), poly({3})}, {quad(1)}), std::invalid_argument);

  PolySequence pair = make_pair_sequence(quad(-2), mpq_class(5));
  CHECK(pair.head.size() == 1);
  CHECK(pair.tail.size() == 1);
  CHECK(pair.head[0] == poly({-7, 0, 1}));  // f - a
  CHECK(pair.tail[0] == quad(-2));
}

TEST_CASE("partial composition matches hand values and the degree law") {
  PolySequence s1 = make_pair_sequence(quad(-2), 0);
  CHECK(partial_composition(s1, 1) == quad(-2));

  PolySequence s2 = make_pair_sequence(quad(1), 0);
  CHECK(partial_composition(s2, 2) == poly({2, 0, 2, 0, 1}));  // (x^2+1)^2 + 1

  // entry 1 outermost: head(tail(x)) for n = 2
  PolySequence s3 = make_sequence({poly({0, 0, 0, 1})}, {quad(5)});  // x^3 then x^2+5
  RatPoly expect = rat_mul(rat_mul(quad(5), quad(5)), quad(5));
  CHECK(partial_composition(s3, 2) == expect);

  PolySequence s4 = make_sequence({quad(2)}, {poly({1, 2, 0, 1}), quad(-1)});
  int deg = 1;
  for (int n = 1; n <= 4; ++n) {
    deg *= rat_degree(sequence_entry(s4, n));
    CHECK(rat_degree(partial_composition(s4, n)) == deg);
  }
}

TEST_CASE("stable depth pinned examples") {
  PolySequence s = make_pair_sequence(quad(-2), 0);

  DepthRecord r5 = stable_depth(s, 5, 2);
  CHECK(r5.depth == 2);
  CHECK(r5.reason == DepthReason::exhausted);
  CHECK(reason_to_string(r5, 2) == "exhausted=2");

  DepthRecord r7 = stable_depth(s, 7, 4);  // 3^2 = 2 mod 7
  CHECK(r7.depth == 0);
  CHECK(r7.reason == DepthReason::reducible);
  CHECK(r7.failed_at == 1);
  CHECK(reason_to_string(r7, 4) == "reducible@1");

  PolySequence lead = make_sequence({}, {poly({1, 1, 3})});  // 3x^2 + x + 1
  DepthRecord rl = stable_depth(lead, 3, 3);
  CHECK(rl.depth == 0);
  CHECK(rl.reason == DepthReason::leading_coeff);
  CHECK(rl.failed_at == 1);

  PolySequence den = make_sequence({}, {poly({mpq_class(1, 3), 0, 1})});  // x^2 + 1/3
  DepthRecord rd = stable_depth(den, 3, 3);
  CHECK(rd.depth == 0);
  CHECK(rd.reason == DepthReason::bad_denominator);
  CHECK(reason_to_string(rd, 3) == "bad_denominator");

  // denominator failure on a later entry bounds the depth from above
  PolySequence mixed = make_sequence({quad(1), poly({mpq_class(1, 5), 0, 1})}, {quad(1)});
  DepthRecord rm = stable_depth(mixed, 5, 4);
  CHECK(rm.depth <= 1);
  if (rm.depth == 1) {
    CHECK(rm.reason == DepthReason::bad_denominator);
    CHECK(rm.failed_at == 2);
  }

  CHECK_THROWS_AS(stable_depth(s, 5, 0), std::invalid_argument);
}

TEST_CASE("stable depth agrees with the sequential reference") {
  struct Shape {
    PolySequence seq;
    int depth;
  };
  std::vector<Shape> shapes;
  shapes.push_back({make_pair_sequence(quad(-2), 0), 6});
  shapes.push_back({make_pair_sequence(quad(1), 0), 6});
  shapes.push_back({make_pair_sequence(quad(-2), 2), 6});
  shapes.push_back({make_sequence({quad(3)}, {quad(-1), quad(2)}), 6});
  shapes.push_back({make_sequence({poly({1, 1, 1})}, {quad(-3)}), 6});
  shapes.push_back({make_pair_sequence(poly({-2, 1, 0, 1}), mpq_class(1)), 4});  // cubic

  for (const auto& sh : shapes) {
    for (std::uint64_t p : primes_up_to(1000)) {
      DepthRecord fast = stable_depth(sh.seq, p, sh.depth);
      DepthRecord ref = naive_depth(sh.seq, p, sh.depth);
      CAPTURE(p);
      CHECK(fast.depth == ref.depth);
      CHECK(fast.reason == ref.reason);
      CHECK(fast.failed_at == ref.failed_at);
    }
  }
}

TEST_CASE("density scan shape, exactness, and worker determinism") {
  PolySequence s = make_pair_sequence(quad(1), 0);
  StabilityReport rep = density_scan(s, 2000, 4);
  std::vector<std::uint64_t> primes = primes_up_to(2000);
  CHECK(rep.prime_count == primes.size());
  CHECK(rep.records.size() == primes.size());
  CHECK(rep.survival.size() == 4);

  for (std::size_t i = 0; i < primes.size(); ++i) CHECK(rep.records[i].p == primes[i]);

  // exact fractions over pi(X), non-increasing, consistent with records
  mpq_class prev(2);
  for (int k = 1; k <= 4; ++k) {
    std::uint64_t m = 0;
    for (const auto& r : rep.records)
      if (r.depth >= k) ++m;
    mpq_class expect(m, rep.prime_count);
    expect.canonicalize();
    CHECK(rep.survival[k - 1] == expect);
    CHECK(rep.survival[k - 1] <= prev);
    prev = rep.survival[k - 1];
  }

  // halving behaviour within 3 binomial sigma at each depth
  double n = static_cast<double>(rep.prime_count);
  for (int k = 1; k <= 4; ++k) {
    double pi = std::pow(0.5, k);
    double m = rep.survival[k - 1].get_d() * n;
    double sigma = std::sqrt(n * pi * (1 - pi));
    CAPTURE(k);
    CHECK(std::abs(m - n * pi) <= 3 * sigma);
  }

  StabilityReport rep4 = density_scan(s, 2000, 4, 4);
  REQUIRE(rep4.records.size() == rep.records.size());
  for (std::size_t i = 0; i < rep.records.size(); ++i) {
    CHECK(rep4.records[i].p == rep.records[i].p);
    CHECK(rep4.records[i].depth == rep.records[i].depth);
    CHECK(rep4.records[i].reason == rep.records[i].reason);
    CHECK(rep4.records[i].failed_at == rep.records[i].failed_at);
  }
  CHECK(report_to_csv(rep4) == report_to_csv(rep));

  CHECK_THROWS_AS(density_scan(s, 99, 2), std::invalid_argument);
  CHECK_THROWS_AS(density_scan(s, 2000, 0), std::invalid_argument);
  CHECK_THROWS_AS(density_scan(s, 2000, 2, 0), std::invalid_argument);
  CHECK_THROWS_AS(density_scan(s, 100000, 1043), std::invalid_argument);  // work cap
}

TEST_CASE("depth-1 survival is the irreducible fraction of the first entry") {
  PolySequence s = make_pair_sequence(quad(-2), 0);
  StabilityReport rep = density_scan(s, 500, 1);
  std::uint64_t m = 0;
  for (std::uint64_t p : primes_up_to(500))
    if (is_irreducible(reduce_mod_p(quad(-2), p))) ++m;
  mpq_class expect(m, rep.prime_count);
  expect.canonicalize();
  CHECK(rep.survival[0] == expect);
}

TEST_CASE("chebotarev comparison flags impossible candidates only") {
  PolySequence s = make_pair_sequence(quad(1), 0);
  StabilityReport rep = density_scan(s, 2000, 3);

  std::vector<mpq_class> good = {mpq_class(1, 2), mpq_class(1, 4), mpq_class(1, 8)};
  auto cmp = chebotarev_compare(rep, good);
  REQUIRE(cmp.size() == 3);
  for (const auto& c : cmp) {
    CAPTURE(c.depth);
    CHECK_FALSE(c.flagged);
    CHECK(std::abs(c.z) <= 4.0);
    CHECK(c.empirical == rep.survival[static_cast<std::size_t>(c.depth - 1)]);
  }

  std::vector<mpq_class> bad = {mpq_class(1), mpq_class(1, 4), mpq_class(1, 8)};
  auto cmp2 = chebotarev_compare(rep, bad);
  CHECK(cmp2[0].flagged);

  CHECK_THROWS_AS(chebotarev_compare(rep, {mpq_class(1, 2)}), std::invalid_argument);
}

TEST_CASE("dickson polynomials: table, defining identity, semigroup") {
  CHECK(dickson(0, 1) == poly({2}));
  CHECK(dickson(1, 1) == rat_x());
  mpq_class a(3, 2);
  CHECK(dickson(2, a) == poly({-3, 0, 1}));       // x^2 - 2a
  CHECK(dickson(3, a) == poly({0, mpq_class(-9, 2), 0, 1}));  // x^3 - 3a x

  // D_n(X + a/X) * X^n == X^(2n) + a^n, as polynomials after clearing X^-n
  for (mpq_class alpha : {mpq_class(1), mpq_class(-1), mpq_class(2), mpq_class(1, 2)}) {
    for (int n = 0; n <= 20; ++n) {
      RatPoly d = dickson(n, alpha);
      RatPoly xsq_a = poly({alpha, 0, 1});  // X^2 + a
      RatPoly lhs;                           // sum c_i X^(n-i) (X^2+a)^i
      RatPoly power = poly({1});
      std::vector<RatPoly> pows;
      for (int i = 0; i <= n; ++i) {
        pows.push_back(power);
        power = rat_mul(power, xsq_a);
      }
      for (int i = 0; i <= rat_degree(d); ++i) {
        if (d[static_cast<std::size_t>(i)] == 0) continue;
        RatPoly term = rat_scale(pows[static_cast<std::size_t>(i)], d[static_cast<std::size_t>(i)]);
        RatPoly xpow(static_cast<std::size_t>(n - i) + 1, 0);
        xpow.back() = 1;
        lhs = rat_add(lhs, rat_mul(term, xpow));
      }
      RatPoly rhs(static_cast<std::size_t>(2 * n) + 1, 0);
      rhs.back() = 1;
      mpq_class an = 1;
      for (int i = 0; i < n; ++i) an *= alpha;
      rhs[0] += an;
      rhs = rat_trim(rhs);
      CAPTURE(n);
      CHECK(lhs == rhs);
    }
  }

  for (int m = 0; m <= 5; ++m)
    for (int n = 0; n <= 5; ++n)
      CHECK(rat_compose(dickson(m, 1), dickson(n, 1)) == dickson(m * n, 1));

  CHECK_THROWS_AS(dickson(-1, 1), std::invalid_argument);
}

TEST_CASE("orbit detectors") {
  CHECK(detect_periodic(poly({0, 0, 1}), 1, 8) == 1);    // x^2 fixes 1
  CHECK(detect_periodic(poly({-1, 0, 1}), 0, 8) == 2);   // 0 -> -1 -> 0
  CHECK_FALSE(detect_periodic(quad(1), 0, 64).has_value());
  CHECK_FALSE(detect_periodic(quad(1), 2, 64).has_value());  // heights explode, still halts
  CHECK_THROWS_AS(detect_periodic(quad(1), 0, 0), std::invalid_argument);
  CHECK_THROWS_AS(detect_periodic(quad(1), 0, 65), std::invalid_argument);

  auto w1 = detect_postcritical(poly({0, 0, 1}), 0, 8);  // x^2: f(0) = 0
  REQUIRE(w1.has_value());
  CHECK(w1->critical_point == 0);
  CHECK(w1->steps == 1);

  auto w2 = detect_postcritical(quad(-2), 2, 8);  // 0 -> -2 -> 2
  REQUIRE(w2.has_value());
  CHECK(w2->critical_point == 0);
  CHECK(w2->steps == 2);

  CHECK_FALSE(detect_postcritical(quad(1), 0, 64).has_value());

  // non-monic with shifted critical point: f = 2(x-1)^2 + 3, a = 3
  RatPoly f = poly({5, -4, 2});
  auto w3 = detect_postcritical(f, 3, 8);
  REQUIRE(w3.has_value());
  CHECK(w3->critical_point == 1);
  CHECK(w3->steps == 1);
}

TEST_CASE("detector obstructions force zero survival in scans") {
  PolySequence periodic = make_pair_sequence(poly({-1, 0, 1}), 0);
  REQUIRE(detect_periodic(poly({-1, 0, 1}), 0, 64).has_value());
  StabilityReport rp = density_scan(periodic, 500, 3);
  for (const auto& s : rp.survival) CHECK(s == 0);

  PolySequence postcrit = make_pair_sequence(poly({0, 0, 1}), 0);
  REQUIRE(detect_postcritical(poly({0, 0, 1}), 0, 64).has_value());
  StabilityReport rc = density_scan(postcrit, 500, 3);
  for (const auto& s : rc.survival) CHECK(s == 0);
}

TEST_CASE("report serialization") {
  PolySequence s = make_pair_sequence(quad(-2), 0);
  StabilityReport rep = density_scan(s, 300, 2);

  std::string j1 = report_to_json(rep);
  std::string j2 = report_to_json(rep);
  auto d1 = nlohmann::json::parse(j1);
  auto d2 = nlohmann::json::parse(j2);
  CHECK(d1["content_hash"] == d2["content_hash"]);  // timestamp not hashed
  CHECK(d1.contains("generated_at"));
  CHECK(d1["prime_bound"] == 300);
  CHECK(d1["max_depth"] == 2);
  CHECK(d1["survival"].size() == 2);
  std::string frac = d1["survival"][0]["fraction"].get<std::string>();
  CHECK(frac.find('/') != std::string::npos);

  std::string csv = report_to_csv(rep);
  CHECK(csv.rfind("p,depth,reason\n", 0) == 0);
  std::size_t rows = static_cast<std::size_t>(std::count(csv.begin(), csv.end(), '\n'));
  CHECK(rows == rep.records.size() + 1);
  CHECK(csv.find("\n7,0,reducible@1\n") != std::string::npos);  // 2 is a square mod 7
}

TEST_SUITE_END();
