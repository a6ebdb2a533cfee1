#include "permdyn/block_systems.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <stdexcept>

#include <json.hpp>

#include "permdyn/numeric.hpp"

namespace permdyn {

bool BlockSystem::refines(const BlockSystem& coarser) const {
  if (degree != coarser.degree) return false;
  std::vector<int> owner(static_cast<std::size_t>(degree), -1);
  for (std::size_t b = 0; b < coarser.blocks.size(); ++b) {
    for (int x : coarser.blocks[b]) owner[static_cast<std::size_t>(x)] = static_cast<int>(b);
  }
  for (const auto& block : blocks) {
    int o = owner[static_cast<std::size_t>(block.front())];
    for (int x : block) {
      if (owner[static_cast<std::size_t>(x)] != o) return false;
    }
  }
  return true;
}

BlockSystem singleton_partition(int degree) {
  BlockSystem out;
  out.degree = degree;
  for (int i = 0; i < degree; ++i) out.blocks.push_back({i});
  return out;
}

BlockSystem one_block_partition(int degree) {
  BlockSystem out;
  out.degree = degree;
  out.blocks.emplace_back(degree);
  std::iota(out.blocks.front().begin(), out.blocks.front().end(), 0);
  return out;
}

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(static_cast<std::size_t>(n)) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  }
  // Returns true when two distinct classes were merged.
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (a > b) std::swap(a, b);
    parent[static_cast<std::size_t>(b)] = a;
    return true;
  }
};

BlockSystem partition_from_union_find(UnionFind& uf, int n) {
  std::map<int, std::vector<int>> classes;
  for (int x = 0; x < n; ++x) classes[uf.find(x)].push_back(x);
  BlockSystem out;
  out.degree = n;
  for (auto& [root, members] : classes) out.blocks.push_back(std::move(members));
  return out;  // classes keyed by smallest member, so already canonical
}

// Finest G-invariant partition in which a ~ b: union-find closure where every
// merge (x, y) forces the merges (g(x), g(y)) for all generators.
BlockSystem finest_merging(const PermGroup& g, int a, int b) {
  const int n = g.degree();
  UnionFind uf(n);
  std::vector<std::pair<int, int>> work;
  if (uf.unite(a, b)) work.emplace_back(a, b);
  while (!work.empty()) {
    auto [x, y] = work.back();
    work.pop_back();
    for (const auto& s : g.generators()) {
      int sx = s(x);
      int sy = s(y);
      if (uf.unite(sx, sy)) work.emplace_back(sx, sy);
    }
  }
  return partition_from_union_find(uf, n);
}

}  // namespace

std::vector<BlockSystem> minimal_block_systems(const PermGroup& g) {
  if (!g.is_transitive()) {
    throw std::invalid_argument("minimal_block_systems: group must be transitive");
  }
  const int n = g.degree();
  std::set<std::vector<std::vector<int>>> seen;
  std::vector<BlockSystem> candidates;
  for (int delta = 1; delta < n; ++delta) {
    BlockSystem sys = finest_merging(g, 0, delta);
    if (sys.block_count() == 1) continue;  // collapsed to the coarse partition
    std::size_t size0 = sys.blocks.front().size();
    for (const auto& blk : sys.blocks) {
      if (blk.size() != size0) {
        throw std::logic_error("minimal_block_systems: unequal blocks under a transitive group");
      }
    }
    if (seen.insert(sys.blocks).second) candidates.push_back(std::move(sys));
  }
  // Among the finest-merging partitions, keep those with no strictly finer
  // candidate; every minimal nontrivial system arises this way.
  std::vector<BlockSystem> out;
  for (const auto& p : candidates) {
    bool minimal = true;
    for (const auto& q : candidates) {
      if (!(q == p) && q.refines(p)) {
        minimal = false;
        break;
      }
    }
    if (minimal) out.push_back(p);
  }
  return out;
}

namespace {

// Action of the setwise stabilizer of `block` on the block's own points
// (reindexed by ascending point order). For a transitive group and an
// invariant partition this action is transitive.
PermGroup block_action(const PermGroup& g, const std::vector<int>& block) {
  const auto& elems = g.elements();
  std::vector<int> pos(static_cast<std::size_t>(g.degree()), -1);
  for (std::size_t i = 0; i < block.size(); ++i) pos[static_cast<std::size_t>(block[i])] = static_cast<int>(i);
  std::set<std::vector<int>> images;
  for (const auto& e : elems) {
    std::vector<int> img(block.size());
    bool stabilizes = true;
    for (std::size_t i = 0; i < block.size(); ++i) {
      int y = e(block[i]);
      int p = pos[static_cast<std::size_t>(y)];
      if (p < 0) {
        stabilizes = false;
        break;
      }
      img[i] = p;
    }
    if (stabilizes) images.insert(std::move(img));
  }
  // Greedy generating subset keeps the generator list small.
  std::vector<Permutation> gens;
  std::set<std::vector<int>> closed;
  for (const auto& img : images) {
    if (closed.count(img)) continue;
    gens.emplace_back(img);
    closed.clear();
    for (const auto& e : enumerate_closure(gens, images.size())) closed.insert(e.images());
  }
  if (gens.empty()) gens.emplace_back(static_cast<int>(block.size()));
  return PermGroup::generate(std::move(gens));
}

// Action of g's generators on the blocks of an invariant partition, blocks
// numbered in canonical order.
PermGroup quotient_action(const PermGroup& g, const BlockSystem& sys) {
  std::vector<int> owner(static_cast<std::size_t>(g.degree()), -1);
  for (std::size_t b = 0; b < sys.blocks.size(); ++b) {
    for (int x : sys.blocks[b]) owner[static_cast<std::size_t>(x)] = static_cast<int>(b);
  }
  std::vector<Permutation> gens;
  for (const auto& s : g.generators()) {
    std::vector<int> img(sys.blocks.size());
    for (std::size_t b = 0; b < sys.blocks.size(); ++b) {
      img[b] = owner[static_cast<std::size_t>(s(sys.blocks[b].front()))];
    }
    gens.emplace_back(std::move(img));
  }
  return PermGroup::generate(std::move(gens));
}

// Coarsen an original-point partition by a partition of its block indices.
BlockSystem coarsen(const BlockSystem& fine, const BlockSystem& index_partition) {
  BlockSystem out;
  out.degree = fine.degree;
  for (const auto& idx_block : index_partition.blocks) {
    std::vector<int> merged;
    for (int b : idx_block) {
      const auto& src = fine.blocks[static_cast<std::size_t>(b)];
      merged.insert(merged.end(), src.begin(), src.end());
    }
    std::sort(merged.begin(), merged.end());
    out.blocks.push_back(std::move(merged));
  }
  std::sort(out.blocks.begin(), out.blocks.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return out;
}

struct ChainWalk {
  const PermGroup* root = nullptr;
  int limit = 0;
  ChainEnumeration result;

  void finish_chain(std::vector<BlockSystem> partitions, std::vector<PermGroup> gammas) {
    BlockChain chain;
    chain.group_name = root->name();
    chain.degree = root->degree();
    chain.partitions = std::move(partitions);
    chain.gammas = std::move(gammas);
    int degree_product = 1;
    for (const auto& gamma : chain.gammas) {
      bool aff = is_affine_type(gamma);
      chain.affine.push_back(aff);
      if (!aff) ++chain.d;
      degree_product *= gamma.degree();
    }
    if (degree_product != chain.degree) {
      throw std::logic_error("maximal_chains: step degrees do not multiply to n");
    }
    result.chains.push_back(std::move(chain));
  }

  void walk(const PermGroup& h, const BlockSystem& current, std::vector<BlockSystem> partitions,
            std::vector<PermGroup> gammas) {
    if (static_cast<int>(result.chains.size()) >= limit) {
      result.truncated = true;
      return;
    }
    if (h.degree() == 1) {
      finish_chain(std::move(partitions), std::move(gammas));
      return;
    }
    auto systems = minimal_block_systems(h);
    if (systems.empty()) {
      // Primitive: the only maximal step left goes straight to one block.
      partitions.push_back(one_block_partition(root->degree()));
      gammas.push_back(h);
      finish_chain(std::move(partitions), std::move(gammas));
      return;
    }
    for (const auto& sys : systems) {
      const auto& block0 = sys.blocks.front();  // block containing point 0
      PermGroup gamma = block_action(h, block0);
      PermGroup quotient = quotient_action(h, sys);
      BlockSystem coarser = coarsen(current, sys);
      auto next_partitions = partitions;
      next_partitions.push_back(coarser);
      auto next_gammas = gammas;
      next_gammas.push_back(std::move(gamma));
      walk(quotient, coarser, std::move(next_partitions), std::move(next_gammas));
      if (result.truncated) return;
    }
  }
};

}  // namespace

ChainEnumeration maximal_chains(const PermGroup& g, int limit) {
  if (!g.is_transitive()) throw std::invalid_argument("maximal_chains: group must be transitive");
  (void)g.elements();  // chains need the element list; fail loudly up front
  ChainWalk walk;
  walk.root = &g;
  walk.limit = limit;
  if (limit <= 0) {
    walk.result.truncated = true;  // empty result carries the warning flag
    return std::move(walk.result);
  }
  BlockSystem singletons = singleton_partition(g.degree());
  walk.walk(g, singletons, {singletons}, {});
  return std::move(walk.result);
}

bool is_affine_type(const PermGroup& h) {
  if (!h.is_transitive()) throw std::invalid_argument("is_affine_type: group must be transitive");
  const std::uint64_t p = static_cast<std::uint64_t>(h.degree());
  if (!is_prime_u64(p)) return false;
  mpz_class pp1 = mpz_class(static_cast<unsigned long>(p)) * static_cast<unsigned long>(p - 1);
  return mpz_divisible_p(pp1.get_mpz_t(), h.order().get_mpz_t()) != 0;
}

mpq_class chain_bound(const BlockChain& chain) {
  const unsigned long n = static_cast<unsigned long>(chain.degree);
  mpz_class denom = n;
  mpz_mul_2exp(denom.get_mpz_t(), denom.get_mpz_t(), static_cast<mp_bitcnt_t>(chain.d));
  mpq_class bound(mpz_class(euler_phi_u64(n)), denom);
  bound.canonicalize();
  return bound;
}

BoundReport verify_bound(const PermGroup& g, int chain_limit) {
  BoundReport report;
  report.name = g.name();
  report.degree = g.degree();
  report.order = g.order();
  auto census = full_cycle_census(g);
  report.full_cycle_count = census.full_cycles;
  report.pi = census.proportion;
  auto chains = maximal_chains(g, chain_limit);
  report.chains_truncated = chains.truncated;
  bool first = true;
  for (const auto& chain : chains.chains) {
    ChainSummary summary;
    for (const auto& gamma : chain.gammas) summary.gamma_degrees.push_back(gamma.degree());
    summary.d = chain.d;
    summary.bound = chain_bound(chain);
    if (report.pi > summary.bound) report.violated = true;
    if (first || chain.d < report.min_d) report.min_d = chain.d;
    if (first || chain.d > report.max_d) report.max_d = chain.d;
    first = false;
    report.chains.push_back(std::move(summary));
  }
  return report;
}

std::string bound_report_to_json(const BoundReport& report) {
  nlohmann::ordered_json doc;
  doc["group"] = report.name;
  doc["degree"] = report.degree;
  doc["order"] = report.order.get_str();
  doc["full_cycle_count"] = report.full_cycle_count.get_str();
  doc["pi"] = rational_to_string(report.pi);
  nlohmann::ordered_json chains = nlohmann::ordered_json::array();
  for (const auto& c : report.chains) {
    nlohmann::ordered_json entry;
    entry["gamma_degrees"] = c.gamma_degrees;
    entry["d"] = c.d;
    entry["bound"] = rational_to_string(c.bound);
    chains.push_back(std::move(entry));
  }
  doc["chains"] = std::move(chains);
  doc["chains_truncated"] = report.chains_truncated;
  doc["min_d"] = report.min_d;
  doc["max_d"] = report.max_d;
  doc["violated"] = report.violated;
  return doc.dump(2) + "\n";
}

std::string class_case_tag(ClassCase c) {
  switch (c) {
    case ClassCase::AffinePrime:
      return "1a";
    case ClassCase::NaturalS4:
      return "1b";
    case ClassCase::AltOrSym:
      return "2a";
    case ClassCase::ProjectiveLinear:
      return "2b";
    case ClassCase::Sporadic:
      return "2c";
    case ClassCase::Unknown:
      return "UNKNOWN";
  }
  return "UNKNOWN";
}

namespace {

mpz_class pgl_order(int d, std::uint64_t q) {
  // q^(d(d-1)/2) * prod_{i=2..d} (q^i - 1)
  mpz_class qz(static_cast<unsigned long>(q));
  mpz_class out;
  mpz_pow_ui(out.get_mpz_t(), qz.get_mpz_t(), static_cast<unsigned long>(d * (d - 1) / 2));
  for (int i = 2; i <= d; ++i) {
    mpz_class qi;
    mpz_pow_ui(qi.get_mpz_t(), qz.get_mpz_t(), static_cast<unsigned long>(i));
    out *= qi - 1;
  }
  return out;
}

}  // namespace

ClassificationVerdict classify_primitive_full_cycle(const PermGroup& g, std::uint64_t seed) {
  if (!g.is_transitive() || !minimal_block_systems(g).empty()) {
    throw std::invalid_argument("classify: group must be primitive");
  }
  if (!has_full_cycle(g, seed)) {
    throw std::invalid_argument(g.has_elements()
                                    ? "classify: group contains no full cycle"
                                    : "classify: no full cycle found by sampling");
  }
  ClassificationVerdict verdict;
  verdict.degree = g.degree();
  verdict.order = g.order();
  if (g.has_elements()) verdict.solvable = g.is_solvable();

  const std::uint64_t n = static_cast<std::uint64_t>(g.degree());
  // Decision ladder; first match wins.
  if (is_prime_u64(n)) {
    mpz_class pp1 = mpz_class(static_cast<unsigned long>(n)) * static_cast<unsigned long>(n - 1);
    if (mpz_divisible_p(pp1.get_mpz_t(), g.order().get_mpz_t())) {
      verdict.tag = ClassCase::AffinePrime;
      return verdict;
    }
  }
  if (n == 4 && g.order() == 24) {
    verdict.tag = ClassCase::NaturalS4;
    return verdict;
  }
  mpz_class fact = factorial_mpz(static_cast<unsigned>(n));
  if (g.order() == fact || g.order() * 2 == fact) {
    verdict.tag = ClassCase::AltOrSym;
    return verdict;
  }
  for (std::uint64_t q = 2; q <= 1024; ++q) {
    PrimePower pp = as_prime_power(q);
    if (pp.f == 0) continue;
    std::uint64_t points = 1 + q;  // (q^d - 1)/(q - 1) accumulated incrementally
    std::uint64_t qpow = q;
    for (int d = 2; points <= 1024; ++d) {
      if (points == n) {
        mpz_class base = pgl_order(d, q);
        if (mpz_divisible_p(g.order().get_mpz_t(), base.get_mpz_t())) {
          mpz_class e = g.order() / base;
          if (e >= 1 && e <= pp.f && mpz_divisible_ui_p(mpz_class(pp.f).get_mpz_t(), e.get_ui())) {
            verdict.tag = ClassCase::ProjectiveLinear;
            verdict.proj_dim = d;
            verdict.proj_q = q;
            verdict.proj_aut_factor = static_cast<int>(e.get_ui());
            return verdict;
          }
        }
      }
      qpow *= q;
      points += qpow;
    }
  }
  if ((n == 11 && (g.order() == 7920 || g.order() == 660)) || (n == 23 && g.order() == 10200960)) {
    verdict.tag = ClassCase::Sporadic;
    return verdict;
  }
  verdict.tag = ClassCase::Unknown;
  return verdict;
}

mpz_class max_cyclic_tower_order(unsigned n) {
  if (n == 0) throw std::domain_error("max_cyclic_tower_order: n must be >= 1");
  static std::map<unsigned, mpz_class> memo;
  static std::mutex memo_mutex;
  std::lock_guard<std::mutex> lock(memo_mutex);
  auto compute = [](auto&& self, unsigned m) -> mpz_class {
    if (m == 1) return 1;
    auto it = memo.find(m);
    if (it != memo.end()) return it->second;
    mpz_class best = 0;
    for (std::uint64_t b : divisors_u64(m)) {
      if (b == 1) continue;
      mpz_class inner = self(self, static_cast<unsigned>(m / b));
      mpz_class term;
      mpz_pow_ui(term.get_mpz_t(), inner.get_mpz_t(), static_cast<unsigned long>(b));
      term *= static_cast<unsigned long>(b);
      if (term > best) best = term;
    }
    memo.emplace(m, best);
    return best;
  };
  return compute(compute, n);
}

}  // namespace permdyn
