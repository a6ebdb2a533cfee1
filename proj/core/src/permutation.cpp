#include "permdyn/permutation.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace permdyn {

Permutation::Permutation(int degree) : img_(static_cast<std::size_t>(degree)) {
  if (degree < 1) throw std::invalid_argument("Permutation: degree must be >= 1");
  std::iota(img_.begin(), img_.end(), 0);
}

Permutation::Permutation(std::vector<int> images) : img_(std::move(images)) {
  const int n = static_cast<int>(img_.size());
  if (n < 1) throw std::invalid_argument("Permutation: degree must be >= 1");
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (int v : img_) {
    if (v < 0 || v >= n || seen[static_cast<std::size_t>(v)]) {
      throw std::invalid_argument("Permutation: image table is not a bijection");
    }
    seen[static_cast<std::size_t>(v)] = true;
  }
}

Permutation Permutation::from_cycles(int degree, const std::vector<std::vector<int>>& cycles) {
  Permutation acc(degree);
  for (const auto& cyc : cycles) {
    std::vector<int> img(static_cast<std::size_t>(degree));
    std::iota(img.begin(), img.end(), 0);
    for (std::size_t i = 0; i < cyc.size(); ++i) {
      int from = cyc[i];
      int to = cyc[(i + 1) % cyc.size()];
      if (from < 0 || from >= degree) throw std::invalid_argument("from_cycles: point out of range");
      img[static_cast<std::size_t>(from)] = to;
    }
    acc = compose(acc, Permutation(std::move(img)));
  }
  return acc;
}

bool Permutation::is_identity() const {
  for (int x = 0; x < degree(); ++x) {
    if (img_[static_cast<std::size_t>(x)] != x) return false;
  }
  return true;
}

Permutation Permutation::inverse() const {
  std::vector<int> inv(img_.size());
  for (std::size_t x = 0; x < img_.size(); ++x) inv[static_cast<std::size_t>(img_[x])] = static_cast<int>(x);
  return Permutation(std::move(inv));
}

std::string Permutation::to_cycle_string() const {
  const int n = degree();
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  std::string out;
  for (int start = 0; start < n; ++start) {
    if (seen[static_cast<std::size_t>(start)] || img_[static_cast<std::size_t>(start)] == start) continue;
    out += '(';
    int x = start;
    bool first = true;
    do {
      if (!first) out += ' ';
      first = false;
      out += std::to_string(x);
      seen[static_cast<std::size_t>(x)] = true;
      x = img_[static_cast<std::size_t>(x)];
    } while (x != start);
    out += ')';
  }
  return out.empty() ? "()" : out;
}

Permutation compose(const Permutation& p, const Permutation& q) {
  if (p.degree() != q.degree()) throw std::invalid_argument("compose: degree mismatch");
  std::vector<int> img(static_cast<std::size_t>(p.degree()));
  for (int x = 0; x < p.degree(); ++x) img[static_cast<std::size_t>(x)] = q(p(x));
  return Permutation(std::move(img));
}

Permutation conjugate(const Permutation& p, const Permutation& q) {
  return compose(compose(q.inverse(), p), q);
}

Permutation commutator(const Permutation& a, const Permutation& b) {
  return compose(compose(a.inverse(), b.inverse()), compose(a, b));
}

std::vector<int> cycle_type(const Permutation& p) {
  const int n = p.degree();
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  std::vector<int> lengths;
  for (int start = 0; start < n; ++start) {
    if (seen[static_cast<std::size_t>(start)]) continue;
    int len = 0;
    int x = start;
    do {
      seen[static_cast<std::size_t>(x)] = true;
      ++len;
      x = p(x);
    } while (x != start);
    lengths.push_back(len);
  }
  std::sort(lengths.begin(), lengths.end());
  return lengths;
}

bool is_full_cycle(const Permutation& p) {
  // Single orbit through every point; cheaper than building the full type.
  int len = 0;
  int x = 0;
  do {
    ++len;
    x = p(x);
  } while (x != 0);
  return len == p.degree();
}

std::uint64_t order_of(const Permutation& p) {
  std::uint64_t ord = 1;
  for (int len : cycle_type(p)) {
    std::uint64_t l = static_cast<std::uint64_t>(len);
    ord = std::lcm(ord, l);
  }
  return ord;
}

}  // namespace permdyn
