#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace permdyn {

// Permutation of {0, ..., n-1}, stored as the image vector img[x] = x^g.
// The constructor validates bijectivity, so every instance is a genuine
// permutation. Composition is left-to-right: (p * q)(x) = q(p(x)).
class Permutation {
 public:
  // Identity on n points.
  explicit Permutation(int degree);

  // From an image table; throws std::invalid_argument unless it is a bijection.
  explicit Permutation(std::vector<int> images);

  // Convenience for tests and fixtures: disjoint-or-not cycles on 0-based
  // points, applied left to right. Points omitted from all cycles are fixed.
  static Permutation from_cycles(int degree, const std::vector<std::vector<int>>& cycles);

  int degree() const { return static_cast<int>(img_.size()); }
  int operator()(int x) const { return img_[static_cast<std::size_t>(x)]; }
  const std::vector<int>& images() const { return img_; }

  bool is_identity() const;
  Permutation inverse() const;

  friend bool operator==(const Permutation& a, const Permutation& b) { return a.img_ == b.img_; }
  friend bool operator!=(const Permutation& a, const Permutation& b) { return a.img_ != b.img_; }
  // Lexicographic on image tables; gives containers a deterministic order.
  friend bool operator<(const Permutation& a, const Permutation& b) { return a.img_ < b.img_; }

  // Cycle notation like "(0 1 2)(3 4)"; identity prints as "()".
  std::string to_cycle_string() const;

 private:
  std::vector<int> img_;
};

// Left-to-right composition: apply p first, then q.
Permutation compose(const Permutation& p, const Permutation& q);

// Conjugate p^q = q^{-1} p q (left-to-right convention).
Permutation conjugate(const Permutation& p, const Permutation& q);

Permutation commutator(const Permutation& a, const Permutation& b);

// Multiset of cycle lengths, sorted ascending, fixed points included.
// The lengths always sum to the degree.
std::vector<int> cycle_type(const Permutation& p);

// True iff p is a single cycle through all points of its degree.
bool is_full_cycle(const Permutation& p);

std::uint64_t order_of(const Permutation& p);

struct PermutationHash {
  std::size_t operator()(const Permutation& p) const {
    // FNV-1a over the image words.
    std::uint64_t h = 1469598103934665603ULL;
    for (int x : p.images()) {
      h ^= static_cast<std::uint64_t>(static_cast<std::uint32_t>(x));
      h *= 1099511628211ULL;
    }
    return static_cast<std::size_t>(h);
  }
};

}  // namespace permdyn
