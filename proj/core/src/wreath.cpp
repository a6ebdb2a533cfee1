#include "permdyn/wreath.hpp"

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <random>
#include <stdexcept>
#include <unordered_map>
#include <utility>

#include <json.hpp>

#include "permdyn/gf.hpp"
#include "permdyn/block_systems.hpp"
#include "permdyn/numeric.hpp"

namespace permdyn {

namespace {

mpz_class mpz_pow(const mpz_class& base, unsigned long e) {
  mpz_class r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

Permutation rotation(int n) {
  std::vector<int> img(static_cast<std::size_t>(n));
  for (int x = 0; x < n; ++x) img[static_cast<std::size_t>(x)] = (x + 1) % n;
  return Permutation(img);
}

Permutation perm_power(const Permutation& g, int e) {
  Permutation acc(g.degree());
  for (int i = 0; i < e; ++i) acc = compose(acc, g);
  return acc;
}

}  // namespace

WreathContext make_wreath_context(const PermGroup& h, int r, std::uint64_t cap) {
  if (r < 1) throw std::invalid_argument("wreath context: block count must be positive");
  if (!h.is_transitive()) {
    throw std::invalid_argument("wreath context requires a transitive block group");
  }
  int s = h.degree();
  if (!h.contains(rotation(s))) {
    throw std::invalid_argument(
        "wreath context: block group must contain the rotation (0 1 ... s-1); "
        "use rotation_aligned first");
  }
  long long n_wide = static_cast<long long>(r) * s;
  if (n_wide > kMaxWreathDegree) {
    throw std::length_error("wreath ambient degree " + std::to_string(n_wide) + " exceeds " +
                            std::to_string(kMaxWreathDegree));
  }
  int n = static_cast<int>(n_wide);

  // One copy of every H generator per block: point i + k*r -> i + h(k)*r.
  std::vector<Permutation> kgens;
  for (const Permutation& hg : h.generators()) {
    for (int i = 0; i < r; ++i) {
      std::vector<int> img(static_cast<std::size_t>(n));
      std::iota(img.begin(), img.end(), 0);
      for (int k = 0; k < s; ++k) img[static_cast<std::size_t>(i + k * r)] = i + hg(k) * r;
      kgens.emplace_back(img);
    }
  }

  PermGroup kernel = PermGroup::generate(kgens, cap, h.name() + "^" + std::to_string(r));
  if (kernel.order() != mpz_pow(h.order(), static_cast<unsigned long>(r))) {
    throw std::logic_error("wreath context: kernel order is not |H|^r");
  }

  WreathContext ctx{h, r, s, n, rotation(n), std::move(kernel)};
  if (!ctx.kernel.contains(perm_power(ctx.tau, r))) {
    throw std::logic_error("wreath context: tau^r escaped the kernel");
  }
  return ctx;
}

PermGroup rotation_aligned(const PermGroup& h, std::uint64_t cap) {
  int s = h.degree();
  Permutation rho = rotation(s);
  if (h.contains(rho)) return h;

  const Permutation* cycle = nullptr;
  for (const Permutation& e : h.elements()) {
    if (is_full_cycle(e) && (cycle == nullptr || e < *cycle)) cycle = &e;
  }
  if (cycle == nullptr) {
    throw std::invalid_argument("rotation_aligned: group has no full cycle");
  }

  // Relabel the cycle order of `cycle`, starting at 0, onto 0, 1, 2, ...
  std::vector<int> w(static_cast<std::size_t>(s));
  int x = 0;
  for (int k = 0; k < s; ++k) {
    w[static_cast<std::size_t>(x)] = k;
    x = (*cycle)(x);
  }
  Permutation relabel(w);
  std::vector<Permutation> gens;
  gens.reserve(h.generators().size());
  for (const Permutation& g : h.generators()) gens.push_back(conjugate(g, relabel));
  return PermGroup::generate(gens, cap, h.name());
}

PermGroup wreath_product(const PermGroup& h, const PermGroup& v, std::uint64_t cap) {
  if (!h.is_transitive() || !v.is_transitive()) {
    throw std::invalid_argument("wreath product requires transitive factors");
  }
  int s = h.degree();
  int r = v.degree();
  long long n_wide = static_cast<long long>(r) * s;
  if (n_wide > kMaxWreathDegree) {
    throw std::length_error("wreath ambient degree " + std::to_string(n_wide) + " exceeds " +
                            std::to_string(kMaxWreathDegree));
  }
  int n = static_cast<int>(n_wide);

  // H on block D_0 only (conjugates under V reach the other copies), V on the
  // block indices.
  std::vector<Permutation> gens;
  for (const Permutation& hg : h.generators()) {
    std::vector<int> img(static_cast<std::size_t>(n));
    std::iota(img.begin(), img.end(), 0);
    for (int k = 0; k < s; ++k) img[static_cast<std::size_t>(k * r)] = hg(k) * r;
    gens.emplace_back(img);
  }
  for (const Permutation& vg : v.generators()) {
    std::vector<int> img(static_cast<std::size_t>(n));
    for (int i = 0; i < r; ++i) {
      for (int k = 0; k < s; ++k) img[static_cast<std::size_t>(i + k * r)] = vg(i) + k * r;
    }
    gens.emplace_back(img);
  }

  PermGroup g =
      PermGroup::generate(gens, cap, h.name() + " wr " + v.name());
  mpz_class expected = mpz_pow(h.order(), static_cast<unsigned long>(r)) * v.order();
  if (g.order() != expected) {
    throw std::logic_error("wreath product order mismatch: got " + g.order().get_str() +
                           ", expected " + expected.get_str());
  }
  return g;
}

PermGroup iterated_wreath(const std::vector<PermGroup>& parts, std::uint64_t cap) {
  if (parts.empty()) throw std::invalid_argument("iterated wreath needs at least one part");
  PermGroup acc = parts.front();
  for (std::size_t k = 1; k < parts.size(); ++k) acc = wreath_product(parts[k], acc, cap);
  return acc;
}

PermGroup agl1(int p, std::uint64_t cap) {
  if (p < 2 || p > 1000 || !is_prime_u64(static_cast<std::uint64_t>(p))) {
    throw std::domain_error("agl1: p must be a prime <= 1000");
  }
  std::vector<int> add1(static_cast<std::size_t>(p));
  for (int x = 0; x < p; ++x) add1[static_cast<std::size_t>(x)] = (x + 1) % p;
  std::vector<Permutation> gens{Permutation(add1)};

  if (p > 2) {
    int g = 2;
    for (; g < p; ++g) {
      int x = g, ord = 1;
      while (x != 1) {
        x = static_cast<int>((static_cast<long long>(x) * g) % p);
        ++ord;
      }
      if (ord == p - 1) break;
    }
    std::vector<int> mul(static_cast<std::size_t>(p));
    for (int x = 0; x < p; ++x) {
      mul[static_cast<std::size_t>(x)] = static_cast<int>((static_cast<long long>(g) * x) % p);
    }
    gens.emplace_back(mul);
  }

  PermGroup grp = PermGroup::generate(gens, cap, "AGL1(" + std::to_string(p) + ")");
  if (grp.order() != mpz_class(p) * (p - 1)) {
    throw std::logic_error("agl1: order is not p(p-1)");
  }
  return grp;
}

namespace {

using Matrix = std::vector<std::vector<int>>;

// Projective points over F_q^d, normalized so the first nonzero coordinate is
// 1 and indexed by first appearance in encoding order.
struct ProjSpace {
  GF field;
  int d;
  std::vector<std::vector<int>> points;
  std::unordered_map<std::uint32_t, int> index;
};

std::uint32_t pack_vector(const std::vector<int>& v) {
  std::uint32_t key = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    key |= static_cast<std::uint32_t>(v[i]) << (4 * i);
  }
  return key;
}

std::vector<int> normalize_point(const GF& F, std::vector<int> v) {
  for (int c : v) {
    if (c != 0) {
      int scale = F.inv(c);
      for (int& x : v) x = F.mul(scale, x);
      return v;
    }
  }
  throw std::logic_error("normalize_point: zero vector");
}

ProjSpace make_proj_space(int d, int q) {
  if (d < 2) throw std::domain_error("projective group: dimension must be >= 2");
  if (d > 7) throw std::length_error("projective group: dimension too large for degree cap");
  GF F(q);

  std::uint64_t total = 1;
  for (int i = 0; i < d; ++i) total *= static_cast<std::uint64_t>(q);
  std::uint64_t degree = (total - 1) / static_cast<std::uint64_t>(q - 1);
  if (degree > 64) {
    throw std::length_error("projective degree " + std::to_string(degree) + " exceeds 64");
  }

  ProjSpace ps{std::move(F), d, {}, {}};
  for (std::uint64_t code = 1; code < total; ++code) {
    std::vector<int> v(static_cast<std::size_t>(d), 0);
    std::uint64_t c = code;
    for (int i = 0; i < d; ++i) {
      v[static_cast<std::size_t>(i)] = static_cast<int>(c % static_cast<std::uint64_t>(q));
      c /= static_cast<std::uint64_t>(q);
    }
    std::vector<int> w = normalize_point(ps.field, std::move(v));
    std::uint32_t key = pack_vector(w);
    if (ps.index.emplace(key, static_cast<int>(ps.points.size())).second) {
      ps.points.push_back(std::move(w));
    }
  }
  if (ps.points.size() != degree) throw std::logic_error("projective point count mismatch");
  return ps;
}

Permutation matrix_to_perm(const ProjSpace& ps, const Matrix& m) {
  const GF& F = ps.field;
  std::vector<int> img(ps.points.size());
  for (std::size_t t = 0; t < ps.points.size(); ++t) {
    const std::vector<int>& v = ps.points[t];
    std::vector<int> u(static_cast<std::size_t>(ps.d), 0);
    for (int i = 0; i < ps.d; ++i) {
      int acc = 0;
      for (int j = 0; j < ps.d; ++j) {
        acc = F.add(acc, F.mul(m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)],
                               v[static_cast<std::size_t>(j)]));
      }
      u[static_cast<std::size_t>(i)] = acc;
    }
    img[t] = ps.index.at(pack_vector(normalize_point(F, std::move(u))));
  }
  return Permutation(img);
}

Matrix identity_matrix(int d) {
  Matrix m(static_cast<std::size_t>(d), std::vector<int>(static_cast<std::size_t>(d), 0));
  for (int i = 0; i < d; ++i) m[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1;
  return m;
}

// Transvections I + lambda*E_ij with lambda running over the F_p basis of F_q
// generate SL_d(q); one diagonal of a primitive element extends them to GL.
std::vector<Permutation> projective_gens(const ProjSpace& ps, bool include_diagonal) {
  const GF& F = ps.field;
  std::vector<Permutation> gens;
  for (int i = 0; i < ps.d; ++i) {
    for (int j = 0; j < ps.d; ++j) {
      if (i == j) continue;
      int lambda = 1;
      for (int t = 0; t < F.f(); ++t) {
        Matrix m = identity_matrix(ps.d);
        m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = lambda;
        gens.push_back(matrix_to_perm(ps, m));
        lambda *= F.p();
      }
    }
  }
  if (include_diagonal && F.q() > 2) {
    Matrix m = identity_matrix(ps.d);
    m[0][0] = F.primitive_element();
    gens.push_back(matrix_to_perm(ps, m));
  }
  return gens;
}

mpz_class gl_order(int d, int q) {
  mpz_class qd = mpz_pow(q, static_cast<unsigned long>(d));
  mpz_class order = 1, qi = 1;
  for (int i = 0; i < d; ++i) {
    order *= qd - qi;
    qi *= q;
  }
  return order;
}

PermGroup projective_group(int d, int q, bool full_pgl, std::uint64_t cap) {
  ProjSpace ps = make_proj_space(d, q);
  std::string name = (full_pgl ? "PGL(" : "PSL(") + std::to_string(d) + "," + std::to_string(q) + ")";
  PermGroup g = PermGroup::generate(projective_gens(ps, full_pgl), cap, name);

  mpz_class expected = gl_order(d, q) / (q - 1);
  if (!full_pgl) {
    expected /= mpz_class(std::gcd(d, q - 1));
  }
  if (g.order() != expected) {
    throw std::logic_error(name + ": order " + g.order().get_str() + ", expected " +
                           expected.get_str());
  }
  return g;
}

}  // namespace

PermGroup pgl(int d, int q, std::uint64_t cap) { return projective_group(d, q, true, cap); }

PermGroup psl(int d, int q, std::uint64_t cap) { return projective_group(d, q, false, cap); }

Permutation singer_cycle(int d, int q) {
  ProjSpace ps = make_proj_space(d, q);
  const GF& F = ps.field;
  GFPoly m = least_irreducible(F, d);

  // Least multiplicative generator of F_q[x]/(m).
  std::uint64_t total = 1;
  for (int i = 0; i < d; ++i) total *= static_cast<std::uint64_t>(q);
  GFPoly gen;
  for (std::uint64_t code = 2; code < total; ++code) {
    GFPoly candidate = gfp_decode(code, q);
    GFPoly x = candidate;
    std::uint64_t ord = 1;
    while (!(x.size() == 1 && x[0] == 1)) {
      x = gfp_mod(F, gfp_mul(F, x, candidate), m);
      ++ord;
    }
    if (ord == total - 1) {
      gen = std::move(candidate);
      break;
    }
  }
  if (gen.empty()) throw std::logic_error("singer_cycle: no field generator found");

  // Multiplication by gen in the basis 1, x, ..., x^{d-1}: column j holds the
  // coefficients of gen * x^j.
  Matrix mat(static_cast<std::size_t>(d), std::vector<int>(static_cast<std::size_t>(d), 0));
  GFPoly xj{1};
  for (int j = 0; j < d; ++j) {
    GFPoly col = gfp_mod(F, gfp_mul(F, gen, xj), m);
    for (std::size_t i = 0; i < col.size(); ++i) {
      mat[i][static_cast<std::size_t>(j)] = col[i];
    }
    GFPoly shifted(xj.size() + 1, 0);
    std::copy(xj.begin(), xj.end(), shifted.begin() + 1);
    xj = gfp_mod(F, shifted, m);
  }

  Permutation perm = matrix_to_perm(ps, mat);
  if (!is_full_cycle(perm)) throw std::logic_error("singer_cycle: not a full cycle");
  if (!pgl(d, q).contains(perm)) throw std::logic_error("singer_cycle: escaped pgl");
  return perm;
}

std::vector<Permutation> kernel_tuple(const WreathContext& ctx, const Permutation& g) {
  if (g.degree() != ctx.n) throw std::invalid_argument("kernel_tuple: degree mismatch");
  std::vector<Permutation> sigma;
  sigma.reserve(static_cast<std::size_t>(ctx.r));
  for (int i = 0; i < ctx.r; ++i) {
    std::vector<int> img(static_cast<std::size_t>(ctx.s));
    for (int k = 0; k < ctx.s; ++k) {
      int y = g(i + k * ctx.r);
      if (y % ctx.r != i) {
        throw std::invalid_argument("kernel_tuple: permutation moves block " + std::to_string(i));
      }
      img[static_cast<std::size_t>(k)] = y / ctx.r;
    }
    sigma.emplace_back(img);
  }
  return sigma;
}

Permutation tuple_to_perm(const WreathContext& ctx, const std::vector<Permutation>& sigma) {
  if (static_cast<int>(sigma.size()) != ctx.r) {
    throw std::invalid_argument("tuple_to_perm: expected one component per block");
  }
  std::vector<int> img(static_cast<std::size_t>(ctx.n));
  for (int i = 0; i < ctx.r; ++i) {
    if (sigma[static_cast<std::size_t>(i)].degree() != ctx.s) {
      throw std::invalid_argument("tuple_to_perm: component degree mismatch");
    }
    for (int k = 0; k < ctx.s; ++k) {
      img[static_cast<std::size_t>(i + k * ctx.r)] = i + sigma[static_cast<std::size_t>(i)](k) * ctx.r;
    }
  }
  return Permutation(img);
}

Permutation first_entry_power(const WreathContext& ctx, const std::vector<Permutation>& sigma) {
  if (static_cast<int>(sigma.size()) != ctx.r) {
    throw std::invalid_argument("first_entry_power: expected one component per block");
  }
  Permutation acc(ctx.s);
  for (const Permutation& part : sigma) {
    if (part.degree() != ctx.s) {
      throw std::invalid_argument("first_entry_power: component degree mismatch");
    }
    acc = compose(acc, part);
  }
  return compose(acc, rotation(ctx.s));
}

mpq_class coset_census(const WreathContext& ctx, const PermGroup& k, const Permutation& t) {
  if (k.degree() != ctx.n || t.degree() != ctx.n) {
    throw std::invalid_argument("coset_census: degree mismatch");
  }
  for (const Permutation& g : k.generators()) {
    for (int x = 0; x < ctx.n; ++x) {
      if (g(x) % ctx.r != x % ctx.r) {
        throw std::invalid_argument("coset_census: generator does not preserve the blocks");
      }
    }
  }
  if (!is_full_cycle(t)) throw std::invalid_argument("coset_census: t is not a full cycle");
  for (int i = 0; i < ctx.r; ++i) {
    int dest = t(i) % ctx.r;
    for (int kk = 1; kk < ctx.s; ++kk) {
      if (t(i + kk * ctx.r) % ctx.r != dest) {
        throw std::invalid_argument("coset_census: t does not map blocks to blocks");
      }
    }
  }

  const std::vector<Permutation>& elems = k.elements();
  mpz_class hits = 0;
  for (const Permutation& e : elems) {
    if (is_full_cycle(compose(e, t))) ++hits;
  }
  mpq_class q(hits, mpz_class(static_cast<unsigned long>(elems.size())));
  q.canonicalize();
  return q;
}

namespace {

// Elementary abelian p-group test from the generators: pairwise commuting,
// every generator of order p (or trivial).
bool elementary_abelian(const PermGroup& k, int p) {
  const std::vector<Permutation>& gens = k.generators();
  for (const Permutation& g : gens) {
    mpz_class o = order_of(g);
    if (o != 1 && o != p) return false;
  }
  for (std::size_t i = 0; i < gens.size(); ++i) {
    for (std::size_t j = i + 1; j < gens.size(); ++j) {
      if (compose(gens[i], gens[j]) != compose(gens[j], gens[i])) return false;
    }
  }
  return true;
}

mpq_class coprime_prime_product(int s, int r) {
  mpq_class bound(1, 2);
  for (const auto& [p, e] : factorize_u64(static_cast<std::uint64_t>(s))) {
    (void)e;
    if (std::gcd(static_cast<int>(p), r) == 1) {
      bound *= mpq_class(static_cast<unsigned long>(p - 1), static_cast<unsigned long>(p));
    }
  }
  bound.canonicalize();
  return bound;
}

}  // namespace

KernelCensusReport subkernel_census_check(const PermGroup& h_in, int r, int trials,
                                          std::uint64_t seed, std::uint64_t cap) {
  if (r < 1 || r > 4) {
    throw std::invalid_argument("subkernel_census_check: block count must be in [1, 4]");
  }
  if (!h_in.is_transitive()) {
    throw std::invalid_argument("subkernel_census_check: block group must be transitive");
  }
  PermGroup h = rotation_aligned(h_in, cap);

  bool affine = is_affine_type(h);
  mpq_class part2;
  if (affine) {
    // claimed bound depends on each kernel, computed per record below
  } else {
    ClassificationVerdict verdict = classify_primitive_full_cycle(h);
    if (verdict.tag != ClassCase::NaturalS4 && verdict.tag != ClassCase::AltOrSym &&
        verdict.tag != ClassCase::ProjectiveLinear) {
      throw std::invalid_argument("subkernel_census_check: unsupported block group " + h.name());
    }
    part2 = coprime_prime_product(h.degree(), r);
  }

  mpz_class kernel_order = mpz_pow(h.order(), static_cast<unsigned long>(r));
  if (kernel_order > mpz_class(static_cast<unsigned long>(cap))) {
    throw EnumerationRequired(
        "subkernel census requires the full kernel enumerated (order " + kernel_order.get_str() +
            " exceeds the cap)",
        kernel_order);
  }

  WreathContext ctx = make_wreath_context(h, r, cap);
  int p_deg = h.degree();
  auto claimed_for = [&](const PermGroup& k) {
    if (!affine) return part2;
    if (p_deg > 1 && r % p_deg == 0 && elementary_abelian(k, p_deg)) return mpq_class(1);
    return mpq_class(p_deg - 1, p_deg);
  };

  KernelCensusReport report;
  auto add_record = [&](const PermGroup& k, bool full) {
    KernelCensusRecord rec;
    rec.block_group = h.name();
    rec.s = ctx.s;
    rec.r = ctx.r;
    rec.kernel_order = k.order();
    rec.full_kernel = full;
    rec.measured = coset_census(ctx, k, ctx.tau);
    rec.claimed = claimed_for(k);
    rec.ok = rec.measured <= rec.claimed;
    report.all_ok = report.all_ok && rec.ok;
    report.records.push_back(std::move(rec));
  };

  add_record(ctx.kernel, true);

  std::mt19937_64 rng(seed);
  const std::vector<Permutation>& helems = h.elements();
  auto random_kernel_element = [&]() {
    std::vector<Permutation> sigma;
    sigma.reserve(static_cast<std::size_t>(r));
    for (int i = 0; i < r; ++i) {
      sigma.push_back(helems[static_cast<std::size_t>(rng() % helems.size())]);
    }
    return tuple_to_perm(ctx, sigma);
  };

  std::vector<Permutation> tau_pow{Permutation(ctx.n)};
  std::vector<Permutation> tau_pow_inv{Permutation(ctx.n)};
  for (int a = 1; a < r; ++a) {
    tau_pow.push_back(compose(tau_pow.back(), ctx.tau));
    tau_pow_inv.push_back(tau_pow.back().inverse());
  }

  // Block-action kernel of <seeds, tau> by Schreier's lemma over the
  // transversal {tau^a}. Only such kernels are admissible here: the censused
  // statement is about kernels of groups containing tau, and a subgroup of
  // H^r that is not tau-invariant can exceed the bound.
  auto kernel_of = [&](const std::vector<Permutation>& seeds) {
    std::vector<Permutation> kgens;
    for (const Permutation& g : seeds) {
      for (int a = 0; a < r; ++a) {
        Permutation x = compose(tau_pow[static_cast<std::size_t>(a)], g);
        int c = x(0) % r;  // block shift of x
        Permutation schreier = compose(x, tau_pow_inv[static_cast<std::size_t>(c)]);
        if (!schreier.is_identity()) kgens.push_back(std::move(schreier));
      }
    }
    if (kgens.empty()) kgens.emplace_back(ctx.n);
    return PermGroup::generate(kgens, cap);
  };

  int accepted = 0;
  const int budget = 64 * trials + 64;
  for (int attempts = 0; accepted < trials && attempts < budget; ++attempts) {
    std::vector<Permutation> seeds;
    int count = 1 + static_cast<int>(rng() % 4);
    for (int i = 0; i < count; ++i) seeds.push_back(random_kernel_element());
    seeds.push_back(ctx.tau);

    PermGroup sub = kernel_of(seeds);
    if (sub.order() >= kernel_order) continue;  // not proper

    bool onto = true;
    std::vector<std::vector<Permutation>> tuples;
    tuples.reserve(sub.generators().size());
    for (const Permutation& g : sub.generators()) tuples.push_back(kernel_tuple(ctx, g));
    for (int i = 0; i < r && onto; ++i) {
      std::vector<Permutation> proj;
      proj.reserve(tuples.size());
      for (const auto& tup : tuples) proj.push_back(tup[static_cast<std::size_t>(i)]);
      onto = PermGroup::generate(proj, cap).order() == h.order();
    }
    if (!onto) continue;

    add_record(sub, false);
    ++accepted;
  }

  return report;
}

std::string kernel_census_report_to_json(const KernelCensusReport& report) {
  nlohmann::ordered_json j;
  j["records"] = nlohmann::ordered_json::array();
  for (const KernelCensusRecord& rec : report.records) {
    nlohmann::ordered_json rj;
    rj["block_group"] = rec.block_group;
    rj["s"] = rec.s;
    rj["r"] = rec.r;
    rj["kernel_order"] = rec.kernel_order.get_str();
    rj["full_kernel"] = rec.full_kernel;
    rj["measured"] = rational_to_string(rec.measured);
    rj["claimed"] = rational_to_string(rec.claimed);
    rj["ok"] = rec.ok;
    j["records"].push_back(std::move(rj));
  }
  j["all_ok"] = report.all_ok;
  return j.dump(2) + "\n";
}

mpq_class full_wreath_pi(const std::vector<PermGroup>& parts) {
  if (parts.empty()) throw std::invalid_argument("full_wreath_pi needs at least one part");
  mpq_class pi = 1;
  for (const PermGroup& part : parts) {
    pi *= full_cycle_census(part).proportion;
  }
  pi.canonicalize();
  return pi;
}

}  // namespace permdyn
