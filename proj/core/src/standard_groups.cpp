#include "permdyn/standard_groups.hpp"

#include <numeric>
#include <stdexcept>
#include <string>

namespace permdyn {

namespace {

Permutation rotation(int n) {
  std::vector<int> img(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) img[static_cast<std::size_t>(i)] = (i + 1) % n;
  return Permutation(std::move(img));
}

}  // namespace

PermGroup cyclic_group(int n, std::uint64_t cap) {
  if (n < 1) throw std::invalid_argument("cyclic_group: n must be >= 1");
  return PermGroup::generate({rotation(n)}, cap, "C" + std::to_string(n));
}

PermGroup dihedral_group(int n, std::uint64_t cap) {
  if (n < 3) throw std::invalid_argument("dihedral_group: n must be >= 3");
  std::vector<int> refl(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) refl[static_cast<std::size_t>(i)] = (n - i) % n;
  return PermGroup::generate({rotation(n), Permutation(std::move(refl))}, cap,
                             "D" + std::to_string(n));
}

PermGroup symmetric_group(int n, std::uint64_t cap) {
  if (n < 1) throw std::invalid_argument("symmetric_group: n must be >= 1");
  if (n == 1) return PermGroup::generate({Permutation(1)}, cap, "S1");
  std::vector<int> swap01(static_cast<std::size_t>(n));
  std::iota(swap01.begin(), swap01.end(), 0);
  swap01[0] = 1;
  swap01[1] = 0;
  return PermGroup::generate({Permutation(std::move(swap01)), rotation(n)}, cap,
                             "S" + std::to_string(n));
}

PermGroup alternating_group(int n, std::uint64_t cap) {
  if (n < 3) throw std::invalid_argument("alternating_group: n must be >= 3");
  Permutation three = Permutation::from_cycles(n, {{0, 1, 2}});
  if (n == 3) return PermGroup::generate({three}, cap, "A3");
  Permutation big(n);
  if (n % 2 == 1) {
    big = rotation(n);  // odd n: the full rotation is even
  } else {
    std::vector<int> cyc;
    for (int i = 1; i < n; ++i) cyc.push_back(i);  // even n: (1 2 ... n-1) is even
    big = Permutation::from_cycles(n, {cyc});
  }
  return PermGroup::generate({three, big}, cap, "A" + std::to_string(n));
}

}  // namespace permdyn
