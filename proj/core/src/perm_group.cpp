#include "permdyn/perm_group.hpp"

#include <algorithm>
#include <deque>
#include <random>
#include <unordered_set>
#include <utility>

namespace permdyn {

namespace {

// Materializing the element list of a modest-order group on many points can
// still be gigabytes (think order ~10^6 on ~10^3 points), so the cap alone is
// not enough: keep the total stored images bounded too.
constexpr std::uint64_t kElementIntBudget = 128'000'000;

}  // namespace

StabilizerChain::StabilizerChain(int degree, const std::vector<Permutation>& generators)
    : degree_(degree), order_(1) {
  for (const auto& g : generators) {
    if (g.degree() != degree_) throw std::invalid_argument("StabilizerChain: generator degree mismatch");
  }
  bool any = false;
  for (const auto& g : generators) any = place(g) || any;
  if (any) {
    // Each failed verification places a residue that strictly grows the orbit
    // at its placement level, so the number of sweeps is finite.
    while (!verify_pass()) {
    }
  }
  order_ = 1;
  for (const auto& lvl : levels_) order_ *= static_cast<unsigned long>(lvl.orbit.size());
}

std::vector<const Permutation*> StabilizerChain::cumulative_gens(std::size_t lvl) const {
  std::vector<const Permutation*> out;
  for (std::size_t k = lvl; k < levels_.size(); ++k) {
    for (const auto& g : levels_[k].gens) out.push_back(&g);
  }
  return out;
}

bool StabilizerChain::place(Permutation g) {
  if (g.is_identity()) return false;
  std::size_t lvl = 0;
  while (lvl < levels_.size() && g(levels_[lvl].base_point) == levels_[lvl].base_point) ++lvl;
  if (lvl == levels_.size()) {
    Level L;
    for (int x = 0; x < degree_; ++x) {
      if (g(x) != x) {
        L.base_point = x;
        break;
      }
    }
    levels_.push_back(std::move(L));
  }
  levels_[lvl].gens.push_back(std::move(g));
  return true;
}

void StabilizerChain::rebuild_orbit(std::size_t lvl) {
  Level& L = levels_[lvl];
  auto gens = cumulative_gens(lvl);
  L.orbit.assign(1, L.base_point);
  L.orbit_pos.assign(static_cast<std::size_t>(degree_), -1);
  L.orbit_pos[static_cast<std::size_t>(L.base_point)] = 0;
  L.transversal.assign(1, Permutation(degree_));
  for (std::size_t i = 0; i < L.orbit.size(); ++i) {
    for (const Permutation* s : gens) {
      int y = (*s)(L.orbit[i]);
      if (L.orbit_pos[static_cast<std::size_t>(y)] < 0) {
        L.orbit_pos[static_cast<std::size_t>(y)] = static_cast<int>(L.orbit.size());
        L.orbit.push_back(y);
        L.transversal.push_back(compose(L.transversal[i], *s));
      }
    }
  }
}

std::pair<Permutation, std::size_t> StabilizerChain::sift(Permutation g, std::size_t from) const {
  for (std::size_t lvl = from; lvl < levels_.size(); ++lvl) {
    const Level& L = levels_[lvl];
    int x = g(L.base_point);
    if (x == L.base_point) continue;
    int pos = L.orbit_pos[static_cast<std::size_t>(x)];
    if (pos < 0) return {std::move(g), lvl};
    g = compose(g, L.transversal[static_cast<std::size_t>(pos)].inverse());
  }
  return {std::move(g), levels_.size()};
}

bool StabilizerChain::verify_pass() {
  // Schreier-Sims criterion: for every level, every Schreier generator
  // u_x * s * u_{s(x)}^{-1} over the cumulative generating set must sift to
  // the identity through the deeper levels. Sweeping deepest-first keeps the
  // orbit data a sift consults fresh within the sweep.
  for (std::size_t lvl = levels_.size(); lvl-- > 0;) {
    rebuild_orbit(lvl);
    const auto gens = cumulative_gens(lvl);
    const Level& L = levels_[lvl];
    for (std::size_t i = 0; i < L.orbit.size(); ++i) {
      for (const Permutation* s : gens) {
        int y = (*s)(L.orbit[i]);
        int ypos = L.orbit_pos[static_cast<std::size_t>(y)];
        Permutation schreier = compose(compose(L.transversal[i], *s),
                                       L.transversal[static_cast<std::size_t>(ypos)].inverse());
        auto [residue, stop] = sift(std::move(schreier), lvl + 1);
        (void)stop;
        if (!residue.is_identity()) {
          place(std::move(residue));
          return false;
        }
      }
    }
  }
  return true;
}

bool StabilizerChain::contains(const Permutation& g) const {
  if (g.degree() != degree_) return false;
  auto [residue, stop] = sift(g, 0);
  (void)stop;
  return residue.is_identity();
}

std::vector<Permutation> enumerate_closure(const std::vector<Permutation>& generators, std::uint64_t cap) {
  if (generators.empty()) throw std::invalid_argument("enumerate_closure: no generators");
  const int degree = generators.front().degree();
  std::unordered_set<Permutation, PermutationHash> seen;
  std::vector<Permutation> elements;
  elements.emplace_back(degree);
  seen.insert(elements.front());
  for (std::size_t i = 0; i < elements.size(); ++i) {
    for (const auto& g : generators) {
      Permutation next = compose(elements[i], g);
      if (seen.insert(next).second) {
        if (seen.size() > cap) {
          throw TooLargeToEnumerate(
              "too large to enumerate: closure exceeded cap " + std::to_string(cap), seen.size());
        }
        elements.push_back(std::move(next));
      }
    }
  }
  return elements;
}

PermGroup PermGroup::generate(std::vector<Permutation> generators, std::uint64_t enumeration_cap,
                              std::string name, bool order_fallback) {
  if (generators.empty()) throw std::invalid_argument("PermGroup::generate: no generators");
  const int degree = generators.front().degree();
  for (const auto& g : generators) {
    if (g.degree() != degree) throw std::invalid_argument("PermGroup::generate: generator degree mismatch");
  }
  PermGroup out;
  out.degree_ = degree;
  out.name_ = std::move(name);
  out.generators_ = std::move(generators);
  if (!order_fallback) {
    // Pure breadth-first mode: TooLargeToEnumerate propagates from the closure.
    out.elements_ = enumerate_closure(out.generators_, enumeration_cap);
  }
  out.chain_.emplace(degree, out.generators_);
  out.order_ = out.chain_->order();
  if (!out.elements_ && out.order_ <= enumeration_cap) {
    mpz_class footprint = out.order_ * degree;
    if (footprint <= kElementIntBudget) {
      out.elements_ = enumerate_closure(out.generators_, enumeration_cap);
    }
  }
  if (out.elements_ &&
      mpz_class(static_cast<unsigned long>(out.elements_->size())) != out.order_) {
    throw std::logic_error("PermGroup::generate: closure count disagrees with stabilizer chain order");
  }
  return out;
}

const std::vector<Permutation>& PermGroup::elements() const {
  if (!elements_) {
    throw EnumerationRequired(
        "requires enumeration: element list not materialized (order " + order_.get_str() + ")", order_);
  }
  return *elements_;
}

bool PermGroup::contains(const Permutation& g) const { return chain_->contains(g); }

std::vector<int> PermGroup::orbit(int point) const {
  if (point < 0 || point >= degree_) throw std::invalid_argument("PermGroup::orbit: point out of range");
  std::vector<bool> seen(static_cast<std::size_t>(degree_), false);
  std::vector<int> out{point};
  seen[static_cast<std::size_t>(point)] = true;
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (const auto& g : generators_) {
      int y = g(out[i]);
      if (!seen[static_cast<std::size_t>(y)]) {
        seen[static_cast<std::size_t>(y)] = true;
        out.push_back(y);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool PermGroup::is_transitive() const { return static_cast<int>(orbit(0).size()) == degree_; }

namespace {

// Greedy generating subset of `candidates`: keep an element only when it is
// not already in the closure of what was kept so far.
std::vector<Permutation> trim_generators(const std::vector<Permutation>& candidates, std::uint64_t cap) {
  std::vector<Permutation> gens;
  std::unordered_set<Permutation, PermutationHash> closed;
  if (!candidates.empty()) closed.insert(Permutation(candidates.front().degree()));
  for (const auto& c : candidates) {
    if (c.is_identity() || closed.count(c)) continue;
    gens.push_back(c);
    auto elems = enumerate_closure(gens, cap);
    closed.clear();
    closed.insert(elems.begin(), elems.end());
  }
  return gens;
}

}  // namespace

bool PermGroup::is_solvable() const {
  const auto& all = elements();  // throws when order-only, by design
  const std::uint64_t cap = all.size();

  std::vector<Permutation> cur_gens = generators_;
  std::uint64_t cur_order = all.size();
  while (cur_order > 1) {
    // Commutators of the current generators...
    std::vector<Permutation> comms;
    for (std::size_t i = 0; i < cur_gens.size(); ++i) {
      for (std::size_t j = i + 1; j < cur_gens.size(); ++j) {
        Permutation c = commutator(cur_gens[i], cur_gens[j]);
        if (!c.is_identity()) comms.push_back(std::move(c));
      }
    }
    if (comms.empty()) return true;  // abelian layer, series terminates

    // ...then their closure under conjugation by the current generators. The
    // subgroup generated by a conjugation-closed set is the normal closure,
    // i.e. the derived subgroup of the current layer.
    std::unordered_set<Permutation, PermutationHash> conj_seen;
    std::deque<Permutation> work;
    std::vector<Permutation> conj_orbit;
    for (const auto& c : comms) {
      if (conj_seen.insert(c).second) {
        conj_orbit.push_back(c);
        work.push_back(c);
      }
    }
    while (!work.empty()) {
      Permutation h = std::move(work.front());
      work.pop_front();
      for (const auto& g : cur_gens) {
        Permutation c = conjugate(h, g);
        if (conj_seen.insert(c).second) {
          conj_orbit.push_back(c);
          work.push_back(std::move(c));
        }
      }
    }

    std::vector<Permutation> der_gens = trim_generators(conj_orbit, cap);
    if (der_gens.empty()) return true;
    auto der_elems = enumerate_closure(der_gens, cap);
    if (der_elems.size() == cur_order) return false;  // perfect layer, series stalls
    cur_gens = std::move(der_gens);
    cur_order = der_elems.size();
  }
  return true;
}

bool has_full_cycle(const PermGroup& g, std::uint64_t seed, int samples) {
  if (g.has_elements()) {
    for (const auto& p : g.elements()) {
      if (is_full_cycle(p)) return true;
    }
    return false;
  }
  std::mt19937_64 rng(seed);
  const auto& gens = g.generators();
  for (int trial = 0; trial < samples; ++trial) {
    Permutation w(g.degree());
    int len = 16 + static_cast<int>(rng() % 48);
    for (int i = 0; i < len; ++i) w = compose(w, gens[rng() % gens.size()]);
    if (is_full_cycle(w)) return true;
  }
  return false;
}

FullCycleCensus full_cycle_census(const PermGroup& g) {
  if (!g.has_elements()) {
    throw EnumerationRequired("census requires enumeration (order " + g.order().get_str() +
                                  " exceeds the enumeration cap or memory budget)",
                              g.order());
  }
  FullCycleCensus out;
  unsigned long count = 0;
  for (const auto& p : g.elements()) {
    if (is_full_cycle(p)) ++count;
  }
  out.full_cycles = count;
  out.order = g.order();
  out.proportion = mpq_class(out.full_cycles, out.order);
  out.proportion.canonicalize();
  return out;
}

}  // namespace permdyn
