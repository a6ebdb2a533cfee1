#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include "permdyn/group_spec.hpp"
#include "permdyn/numeric.hpp"
#include "permdyn/perm_group.hpp"
#include "permdyn/permutation.hpp"
#include "permdyn/standard_groups.hpp"

using namespace permdyn;

namespace {

// Independent oracle: close a generator set under composition with a plain
// set-of-image-tables worklist, no hashing, no stabilizer chain. Quadratic and
// proud of it; only run on tiny groups.
std::set<std::vector<int>> naive_closure(const std::vector<Permutation>& gens) {
  const int n = gens.front().degree();
  std::vector<int> id(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) id[static_cast<std::size_t>(i)] = i;
  std::set<std::vector<int>> seen{id};
  std::vector<std::vector<int>> work{id};
  while (!work.empty()) {
    std::vector<int> cur = work.back();
    work.pop_back();
    for (const auto& g : gens) {
      std::vector<int> next(static_cast<std::size_t>(n));
      for (int x = 0; x < n; ++x) next[static_cast<std::size_t>(x)] = g(cur[static_cast<std::size_t>(x)]);
      if (seen.insert(next).second) work.push_back(next);
    }
  }
  return seen;
}

Permutation random_permutation(int n, std::mt19937_64& rng) {
  std::vector<int> img(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) img[static_cast<std::size_t>(i)] = i;
  std::shuffle(img.begin(), img.end(), rng);
  return Permutation(std::move(img));
}

std::vector<Permutation> agl1_5_generators() {
  // x -> x+1 and x -> 2x on F_5.
  std::vector<int> add1{1, 2, 3, 4, 0};
  std::vector<int> mul2{0, 2, 4, 1, 3};
  return {Permutation(add1), Permutation(mul2)};
}

}  // namespace

TEST_SUITE_BEGIN("permcore");

TEST_CASE("permutation constructor validates bijections") {
  CHECK_THROWS_AS(Permutation(std::vector<int>{0, 0, 1}), std::invalid_argument);
  CHECK_THROWS_AS(Permutation(std::vector<int>{0, 3, 1}), std::invalid_argument);
  CHECK_THROWS_AS(Permutation(std::vector<int>{}), std::invalid_argument);
  CHECK(Permutation(std::vector<int>{2, 0, 1}).degree() == 3);
}

TEST_CASE("compose applies left argument first") {
  Permutation p = Permutation::from_cycles(3, {{0, 1}});
  Permutation q = Permutation::from_cycles(3, {{1, 2}});
  Permutation pq = compose(p, q);
  CHECK(pq.images() == std::vector<int>{2, 0, 1});  // the 3-cycle (0 2 1)
  CHECK(pq.to_cycle_string() == "(0 2 1)");

  Permutation id4(4);
  Permutation r = Permutation::from_cycles(4, {{0, 1, 2, 3}});
  CHECK(compose(id4, r) == r);
  CHECK(compose(r, id4) == r);
  CHECK(compose(r, Permutation::from_cycles(4, {{0, 3, 2, 1}})).is_identity());

  CHECK_THROWS_AS(compose(Permutation(3), Permutation(4)), std::invalid_argument);
}

TEST_CASE("compose is associative and inverses cancel on random triples") {
  std::mt19937_64 rng(20260815);
  for (int trial = 0; trial < 200; ++trial) {
    int n = 1 + static_cast<int>(rng() % 12);
    Permutation a = random_permutation(n, rng);
    Permutation b = random_permutation(n, rng);
    Permutation c = random_permutation(n, rng);
    CHECK(compose(compose(a, b), c) == compose(a, compose(b, c)));
    CHECK(compose(a, a.inverse()).is_identity());
    CHECK(compose(a.inverse(), a).is_identity());
  }
}

TEST_CASE("cycle_type lists orbit lengths including fixed points") {
  CHECK(cycle_type(Permutation(5)) == std::vector<int>{1, 1, 1, 1, 1});
  CHECK(cycle_type(Permutation::from_cycles(4, {{0, 1, 2, 3}})) == std::vector<int>{4});
  CHECK(cycle_type(Permutation::from_cycles(5, {{0, 1}, {2, 3, 4}})) == std::vector<int>{2, 3});
  CHECK(is_full_cycle(Permutation::from_cycles(4, {{0, 1, 2, 3}})));
  CHECK_FALSE(is_full_cycle(Permutation::from_cycles(4, {{0, 1}})));
  CHECK(is_full_cycle(Permutation(1)));  // degree-1 identity is a 1-cycle

  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    int n = 1 + static_cast<int>(rng() % 10);
    Permutation p = random_permutation(n, rng);
    auto ct = cycle_type(p);
    int sum = 0;
    for (int len : ct) {
      CHECK(len >= 1);
      sum += len;
    }
    CHECK(sum == n);
  }
}

TEST_CASE("generate matches a naive closure oracle on small groups") {
  auto check_group = [](const std::vector<Permutation>& gens) {
    auto oracle = naive_closure(gens);
    PermGroup g = PermGroup::generate(gens);
    REQUIRE(g.has_elements());
    CHECK(g.order() == mpz_class(static_cast<unsigned long>(oracle.size())));
    std::set<std::vector<int>> got;
    for (const auto& p : g.elements()) got.insert(p.images());
    CHECK(got == oracle);
  };
  check_group({Permutation::from_cycles(5, {{0, 1, 2, 3, 4}})});
  check_group({Permutation::from_cycles(4, {{0, 1}}), Permutation::from_cycles(4, {{0, 1, 2, 3}})});
  check_group(agl1_5_generators());
  check_group(dihedral_group(6).generators());
  check_group(alternating_group(5).generators());
}

TEST_CASE("generate spec examples: C5, S4, AGL1(5)") {
  PermGroup c5 = PermGroup::generate({Permutation::from_cycles(5, {{0, 1, 2, 3, 4}})});
  CHECK(c5.order() == 5);
  REQUIRE(c5.has_elements());
  CHECK(c5.elements().size() == 5);

  PermGroup s4 = PermGroup::generate(
      {Permutation::from_cycles(4, {{0, 1}}), Permutation::from_cycles(4, {{0, 1, 2, 3}})});
  CHECK(s4.order() == 24);

  PermGroup agl = PermGroup::generate(agl1_5_generators());
  CHECK(agl.order() == 20);
}

TEST_CASE("standard family constructors have the expected orders") {
  for (int n : {1, 2, 3, 7, 12}) CHECK(cyclic_group(n).order() == n);
  for (int n : {3, 4, 8, 12}) CHECK(dihedral_group(n).order() == 2 * n);
  for (int n : {2, 3, 4, 5, 6, 7, 8}) CHECK(symmetric_group(n).order() == factorial_mpz(static_cast<unsigned>(n)));
  for (int n : {3, 4, 5, 6, 7, 8}) {
    CHECK(alternating_group(n).order() == factorial_mpz(static_cast<unsigned>(n)) / 2);
  }
}

TEST_CASE("stabilizer chain order agrees with enumeration and answers membership") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 20; ++trial) {
    int n = 3 + static_cast<int>(rng() % 6);
    std::vector<Permutation> gens{random_permutation(n, rng), random_permutation(n, rng)};
    PermGroup g = PermGroup::generate(gens);
    REQUIRE(g.has_elements());
    CHECK(mpz_class(static_cast<unsigned long>(g.elements().size())) == g.order());
    for (const auto& e : g.elements()) CHECK(g.contains(e));
  }
  // Negative membership: a transposition is never in A5.
  PermGroup a5 = alternating_group(5);
  CHECK_FALSE(a5.contains(Permutation::from_cycles(5, {{0, 1}})));
  CHECK(a5.contains(Permutation::from_cycles(5, {{0, 1, 2}})));
}

TEST_CASE("order-only groups skip enumeration but keep exact order") {
  // S12 exceeds the default cap.
  PermGroup s12 = symmetric_group(12);
  CHECK(s12.order() == factorial_mpz(12));
  CHECK_FALSE(s12.has_elements());
  CHECK_THROWS_AS(s12.elements(), EnumerationRequired);

  // A thin group of large degree still enumerates when order and footprint
  // both fit.
  PermGroup c1000 = cyclic_group(1000, 2000);
  CHECK(c1000.has_elements());
}

TEST_CASE("breadth-first mode without order fallback reports partial counts") {
  try {
    PermGroup::generate(symmetric_group(12).generators(), 1000, "S12", false);
    FAIL("expected TooLargeToEnumerate");
  } catch (const TooLargeToEnumerate& e) {
    CHECK(e.partial_count() > 1000);
  }
}

TEST_CASE("full_cycle_census matches spec examples") {
  auto s4 = full_cycle_census(symmetric_group(4));
  CHECK(s4.full_cycles == 6);
  CHECK(s4.proportion == mpq_class(1, 4));

  auto c4 = full_cycle_census(cyclic_group(4));
  CHECK(c4.full_cycles == 2);
  CHECK(c4.proportion == mpq_class(1, 2));

  auto trivial = full_cycle_census(PermGroup::generate({Permutation(1)}));
  CHECK(trivial.full_cycles == 1);
  CHECK(trivial.proportion == 1);

  CHECK_THROWS_AS(full_cycle_census(symmetric_group(12)), EnumerationRequired);
}

TEST_CASE("census proportion respects the phi(n)/n ceiling") {
  std::vector<PermGroup> groups;
  for (int n : {3, 4, 5, 6, 8}) {
    groups.push_back(cyclic_group(n));
    groups.push_back(symmetric_group(n));
    if (n >= 3) groups.push_back(dihedral_group(n));
  }
  groups.push_back(PermGroup::generate(agl1_5_generators(), kDefaultEnumerationCap, "AGL1_5"));
  for (const auto& g : groups) {
    auto census = full_cycle_census(g);
    unsigned long n = static_cast<unsigned long>(g.degree());
    mpq_class ceiling(euler_phi_u64(n), n);
    ceiling.canonicalize();
    CHECK(census.proportion <= ceiling);
  }
}

TEST_CASE("census is invariant under whole-group conjugation") {
  std::mt19937_64 rng(99);
  for (const auto& g : {symmetric_group(5), dihedral_group(6),
                        PermGroup::generate(agl1_5_generators())}) {
    Permutation t = random_permutation(g.degree(), rng);
    std::vector<Permutation> conj_gens;
    for (const auto& gen : g.generators()) conj_gens.push_back(conjugate(gen, t));
    PermGroup h = PermGroup::generate(conj_gens);
    CHECK(full_cycle_census(g).full_cycles == full_cycle_census(h).full_cycles);
    CHECK(h.order() == g.order());
  }
}

TEST_CASE("transitivity via the orbit of 0") {
  CHECK(cyclic_group(6).is_transitive());
  CHECK(symmetric_group(4).is_transitive());
  // <(0 1)> on 3 points fixes 2.
  PermGroup fix2 = PermGroup::generate({Permutation::from_cycles(3, {{0, 1}})});
  CHECK_FALSE(fix2.is_transitive());
  CHECK(fix2.orbit(0) == std::vector<int>{0, 1});
  CHECK(fix2.orbit(2) == std::vector<int>{2});
}

TEST_CASE("derived series solvability") {
  CHECK(cyclic_group(6).is_solvable());
  CHECK(symmetric_group(4).is_solvable());  // S4 > A4 > V4 > 1
  CHECK(dihedral_group(8).is_solvable());
  CHECK(PermGroup::generate(agl1_5_generators()).is_solvable());
  CHECK_FALSE(alternating_group(5).is_solvable());
  CHECK_FALSE(symmetric_group(5).is_solvable());
  CHECK_FALSE(symmetric_group(8).is_solvable());
  CHECK_THROWS_AS(symmetric_group(12).is_solvable(), EnumerationRequired);
}

TEST_CASE("group spec documents round-trip bit-exactly") {
  PermGroup s4 = symmetric_group(4);
  GroupSpec spec = make_group_spec(s4);
  std::string doc = group_spec_to_json(spec);
  GroupSpec back = group_spec_from_json(doc);
  CHECK(group_spec_to_json(back) == doc);
  PermGroup rebuilt = group_from_spec(back);
  CHECK(rebuilt.order() == 24);
  CHECK(rebuilt.name() == "S4");

  CHECK_THROWS_AS(group_spec_from_json("not json"), std::invalid_argument);
  CHECK_THROWS_AS(group_spec_from_json(R"({"name":"x","degree":2,"generators":[[0,0]]})"),
                  std::invalid_argument);
  CHECK_THROWS_AS(group_spec_from_json(R"({"name":"x","degree":3,"generators":[[0,1]]})"),
                  std::invalid_argument);
}

TEST_SUITE_END();
