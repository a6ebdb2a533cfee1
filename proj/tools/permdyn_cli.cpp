// permdyn: batch front door for censuses, bound checks, wreath experiments,
// stable-prime scans, and report emission. Exit codes: 0 ok, 1 a checked
// inequality or comparison failed, 2 usage or input error, 3 resource cap.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "permdyn/block_systems.hpp"
#include "permdyn/catalog.hpp"
#include "permdyn/group_spec.hpp"
#include "permdyn/numeric.hpp"
#include "permdyn/perm_group.hpp"
#include "permdyn/stability.hpp"
#include "permdyn/wreath.hpp"

namespace {

using namespace permdyn;

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;
constexpr int kExitResource = 3;

std::string q_str(const mpq_class& q) { return rational_to_string(q); }

std::string q_both(const mpq_class& q) {
  char buf[48];
  std::snprintf(buf, sizeof buf, " (%.6g)", q.get_d());
  return q_str(q) + buf;
}

// Reports are built in memory and land on disk in one rename, so an error
// mid-command never leaves a partial file behind.
void write_file(const std::string& path, const std::string& payload) {
  namespace fs = std::filesystem;
  fs::path tmp = fs::path(path).concat(".tmp");
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    out << payload;
    out.flush();
    if (!out.good()) {
      std::error_code ec;
      fs::remove(tmp, ec);
      throw std::runtime_error("write failed for " + tmp.string());
    }
  }
  fs::rename(tmp, path);
}

struct Emit {
  std::string out;
  std::string format = "json-doc";
};

// stdout always gets the human table; --out gets the selected format.
void emit(const Emit& e, const std::string& text, const nlohmann::json& doc,
          const std::string& csv) {
  std::fputs(text.c_str(), stdout);
  if (e.out.empty()) return;
  write_file(e.out, e.format == "csv" ? csv : doc.dump(2) + "\n");
  std::printf("wrote %s (%s)\n", e.out.c_str(), e.format.c_str());
}

// Catalog name, or a path to a generator document.
PermGroup resolve_group(const std::string& token) {
  if (std::filesystem::exists(token)) {
    std::ifstream in(token);
    if (!in) throw std::invalid_argument("cannot read group document " + token);
    std::stringstream ss;
    ss << in.rdbuf();
    return group_from_spec(group_spec_from_json(ss.str()));
  }
  const auto& names = catalog_names();
  if (std::find(names.begin(), names.end(), token) == names.end())
    throw std::invalid_argument("'" + token +
                                "' is neither a catalog name nor a readable file; "
                                "run `permdyn catalog` for the bundled names");
  return catalog_group(token);
}

int cmd_catalog(const Emit& e) {
  std::ostringstream text;
  nlohmann::json doc = nlohmann::json::array();
  std::string csv = "name,degree,order\n";
  text << "bundled groups (" << catalog_names().size() << "):\n";
  for (const auto& name : catalog_names()) {
    PermGroup g = catalog_group(name);
    char line[96];
    std::snprintf(line, sizeof line, "  %-10s degree %2d  order %s\n", name.c_str(), g.degree(),
                  g.order().get_str().c_str());
    text << line;
    doc.push_back({{"name", name}, {"degree", g.degree()}, {"order", g.order().get_str()}});
    csv += name + "," + std::to_string(g.degree()) + "," + g.order().get_str() + "\n";
  }
  emit(e, text.str(), {{"catalog", doc}}, csv);
  return kExitOk;
}

int cmd_census(const std::string& token, int chain_limit, const Emit& e) {
  PermGroup g = resolve_group(token);
  BoundReport rep = verify_bound(g, chain_limit);

  mpq_class tightest = rep.chains.empty() ? mpq_class(1) : rep.chains.front().bound;
  for (const auto& c : rep.chains) tightest = std::min(tightest, c.bound);

  std::ostringstream text;
  std::string csv = "name,degree,order,full_cycles,pi,chain,gamma_degrees,d,bound\n";
  text << "group " << rep.name << "  degree " << rep.degree << "  order " << rep.order.get_str()
       << "\n";
  text << "full cycles " << rep.full_cycle_count.get_str() << "  proportion " << q_both(rep.pi)
       << "\n";
  text << "maximal partition chains: " << rep.chains.size() << (rep.chains_truncated ? "+" : "")
       << "  non-affine steps in [" << rep.min_d << ", " << rep.max_d << "]\n";
  for (std::size_t i = 0; i < rep.chains.size(); ++i) {
    const auto& c = rep.chains[i];
    std::string degs;
    for (int dg : c.gamma_degrees) degs += (degs.empty() ? "" : "x") + std::to_string(dg);
    text << "  chain " << i + 1 << ": steps " << degs << "  d=" << c.d << "  bound "
         << q_str(c.bound) << "\n";
    csv += rep.name + "," + std::to_string(rep.degree) + "," + rep.order.get_str() + "," +
           rep.full_cycle_count.get_str() + "," + q_str(rep.pi) + "," + std::to_string(i + 1) +
           "," + degs + "," + std::to_string(c.d) + "," + q_str(c.bound) + "\n";
  }
  text << "tightest bound " << q_both(tightest) << "\n";
  text << (rep.violated ? "BOUND VIOLATED: proportion exceeds a chain bound\n"
                        : "bound holds: proportion <= every chain bound\n");

  // the library doc is all-exact; reports also carry plot-ready decimals
  nlohmann::json doc = nlohmann::json::parse(bound_report_to_json(rep));
  doc["pi_decimal"] = rep.pi.get_d();
  for (std::size_t i = 0; i < rep.chains.size(); ++i)
    doc["chains"][i]["bound_decimal"] = rep.chains[i].bound.get_d();
  doc["tightest_bound"] = q_str(tightest);
  doc["tightest_bound_decimal"] = tightest.get_d();
  emit(e, text.str(), doc, csv);
  return rep.violated ? kExitViolation : kExitOk;
}

int cmd_wreath(const std::vector<std::string>& part_names, int subkernel_r, int trials,
               std::uint64_t seed, const Emit& e) {
  if (subkernel_r > 0) {
    if (part_names.size() != 1)
      throw std::invalid_argument("--subkernel takes exactly one block group");
    PermGroup h = resolve_group(part_names[0]);
    KernelCensusReport rep = subkernel_census_check(h, subkernel_r, trials, seed);

    std::ostringstream text;
    std::string csv = "block_group,s,r,kernel_order,full_kernel,measured,claimed,ok\n";
    text << "subkernel coset censuses for " << part_names[0] << " blocks, r=" << subkernel_r
         << " (" << rep.records.size() << " kernels)\n";
    for (const auto& rec : rep.records) {
      text << "  " << (rec.full_kernel ? "full kernel " : "subkernel   ") << "order "
           << rec.kernel_order.get_str() << "  measured " << q_str(rec.measured) << " vs claimed "
           << q_str(rec.claimed) << (rec.ok ? "  ok" : "  EXCEEDED") << "\n";
      csv += rec.block_group + "," + std::to_string(rec.s) + "," + std::to_string(rec.r) + "," +
             rec.kernel_order.get_str() + "," + (rec.full_kernel ? "1," : "0,") +
             q_str(rec.measured) + "," + q_str(rec.claimed) + "," + (rec.ok ? "1" : "0") + "\n";
    }
    text << (rep.all_ok ? "all coset censuses within the claimed bound\n"
                        : "CLAIMED BOUND EXCEEDED by some kernel\n");
    nlohmann::json doc = nlohmann::json::parse(kernel_census_report_to_json(rep));
    for (std::size_t i = 0; i < rep.records.size(); ++i) {
      doc["records"][i]["measured_decimal"] = rep.records[i].measured.get_d();
      doc["records"][i]["claimed_decimal"] = rep.records[i].claimed.get_d();
    }
    emit(e, text.str(), doc, csv);
    return rep.all_ok ? kExitOk : kExitViolation;
  }

  std::vector<PermGroup> parts;
  parts.reserve(part_names.size());
  for (const auto& name : part_names) parts.push_back(resolve_group(name));

  PermGroup w = iterated_wreath(parts);
  FullCycleCensus census = full_cycle_census(w);
  mpq_class formula = full_wreath_pi(parts);
  bool match = census.proportion == formula;

  std::string joined;
  for (const auto& n : part_names) joined += (joined.empty() ? "" : " ") + n;
  std::ostringstream text;
  text << "wreath tower [" << joined << "] (outermost first)  degree " << w.degree() << "  order "
       << w.order().get_str() << "\n";
  text << "census: " << census.full_cycles.get_str() << "/" << census.order.get_str()
       << " full cycles = " << q_both(census.proportion) << "\n";
  text << "product formula: " << q_both(formula) << "\n";
  text << (match ? "census matches formula\n" : "CENSUS DIFFERS FROM FORMULA\n");

  nlohmann::json doc = {{"parts", part_names},
                        {"degree", w.degree()},
                        {"order", w.order().get_str()},
                        {"full_cycles", census.full_cycles.get_str()},
                        {"census_pi", q_str(census.proportion)},
                        {"census_decimal", census.proportion.get_d()},
                        {"formula_pi", q_str(formula)},
                        {"formula_decimal", formula.get_d()},
                        {"match", match}};
  std::string parts_cell;
  for (const auto& n : part_names) parts_cell += (parts_cell.empty() ? "" : "|") + n;
  std::string csv = "parts,degree,order,full_cycles,census_pi,formula_pi,match\n" + parts_cell +
                    "," + std::to_string(w.degree()) + "," + w.order().get_str() + "," +
                    census.full_cycles.get_str() + "," + q_str(census.proportion) + "," +
                    q_str(formula) + "," + (match ? "1" : "0") + "\n";
  emit(e, text.str(), doc, csv);
  return match ? kExitOk : kExitViolation;
}

int cmd_scan(const std::string& poly_text, const std::string& shift_text, std::uint64_t X, int N,
             int workers, const Emit& e) {
  RatPoly f = rat_poly_from_string(poly_text);
  mpq_class a = rational_from_string(shift_text);
  PolySequence seq = make_pair_sequence(f, a);
  if (X < 100) throw std::invalid_argument("--primes must be at least 100");
  if (N < 1) throw std::invalid_argument("--depth must be at least 1");
  if (workers < 1) throw std::invalid_argument("--workers must be at least 1");

  // Resource gate before any sieving: pi(X) >= X/ln(X) for X >= 17.
  double pi_lb = static_cast<double>(X) / std::log(static_cast<double>(X));
  if (pi_lb * N > static_cast<double>(kScanWorkCap) * 1.2)
    throw std::length_error("scan needs roughly " + std::to_string(pi_lb * N) +
                            " depth tests; the cap is " + std::to_string(kScanWorkCap));
  std::uint64_t pi_exact = primes_up_to(X).size();
  if (pi_exact * static_cast<std::uint64_t>(N) > kScanWorkCap)
    throw std::length_error("scan needs " + std::to_string(pi_exact * N) +
                            " depth tests; the cap is " + std::to_string(kScanWorkCap));

  StabilityReport rep = density_scan(seq, X, N, workers);

  std::ostringstream text;
  text << "sequence " << rep.sequence << "  primes <= " << rep.prime_bound << " ("
       << rep.prime_count << ")  depth <= " << rep.max_depth << "\n";
  for (int k = 1; k <= rep.max_depth; ++k) {
    std::uint64_t m = 0;
    for (const auto& r : rep.records)
      if (r.depth >= k) ++m;
    text << "  depth " << k << ": " << m << "/" << rep.prime_count << " survive = "
         << q_both(rep.survival[static_cast<std::size_t>(k) - 1]) << "\n";
  }
  emit(e, text.str(), nlohmann::json::parse(report_to_json(rep)), report_to_csv(rep));
  return kExitOk;
}

std::vector<mpq_class> parse_candidates(const std::string& text) {
  std::vector<mpq_class> out;
  std::string token;
  std::istringstream in(text);
  while (std::getline(in, token, ',')) {
    std::istringstream ws(token);
    std::string piece;
    while (ws >> piece) out.push_back(rational_from_string(piece));
  }
  if (out.empty()) throw std::invalid_argument("no candidate proportions given");
  return out;
}

int cmd_compare(const std::string& report_path, const std::string& candidates_text,
                const Emit& e) {
  std::ifstream in(report_path);
  if (!in) throw std::invalid_argument("cannot read report " + report_path);
  std::stringstream ss;
  ss << in.rdbuf();
  nlohmann::json doc = nlohmann::json::parse(ss.str(), nullptr, false);
  if (doc.is_discarded() || !doc.contains("survival") || !doc.contains("prime_count"))
    throw std::invalid_argument(report_path + " is not a scan report (json-doc format)");

  StabilityReport rep;
  rep.sequence = doc.value("sequence", std::string{});
  rep.prime_bound = doc.value("prime_bound", std::uint64_t{0});
  rep.max_depth = doc.value("max_depth", 0);
  rep.prime_count = doc.at("prime_count").get<std::uint64_t>();
  for (const auto& row : doc.at("survival"))
    rep.survival.push_back(rational_from_string(row.at("fraction").get<std::string>()));

  std::vector<mpq_class> candidates = parse_candidates(candidates_text);
  std::vector<DepthComparison> cmp = chebotarev_compare(rep, candidates);

  std::ostringstream text;
  nlohmann::json rows = nlohmann::json::array();
  std::string csv = "depth,empirical,candidate,z,flagged\n";
  text << "report " << rep.sequence << "  primes <= " << rep.prime_bound << " ("
       << rep.prime_count << ")\n";
  bool any_flagged = false;
  for (const auto& c : cmp) {
    any_flagged |= c.flagged;
    char zbuf[32];
    std::snprintf(zbuf, sizeof zbuf, "%+.3f", c.z);
    text << "  depth " << c.depth << ": empirical " << q_both(c.empirical) << "  candidate "
         << q_str(c.candidate) << "  z=" << zbuf << (c.flagged ? "  FLAGGED" : "  ok") << "\n";
    rows.push_back({{"depth", c.depth},
                    {"empirical", q_str(c.empirical)},
                    {"empirical_decimal", c.empirical.get_d()},
                    {"candidate", q_str(c.candidate)},
                    {"candidate_decimal", c.candidate.get_d()},
                    {"z", c.z},
                    {"flagged", c.flagged}});
    csv += std::to_string(c.depth) + "," + q_str(c.empirical) + "," + q_str(c.candidate) + "," +
           zbuf + "," + (c.flagged ? "1" : "0") + "\n";
  }
  text << (any_flagged ? "some depths deviate beyond 4 sigma\n"
                       : "no deviation beyond 4 sigma at any depth\n");
  emit(e, text.str(),
       {{"sequence", rep.sequence}, {"prime_bound", rep.prime_bound}, {"comparison", rows}}, csv);
  return any_flagged ? kExitViolation : kExitOk;
}

int cmd_cmax(const std::string& range_text, const Emit& e) {
  unsigned lo = 1, hi = 0;
  std::size_t dots = range_text.find("..");
  try {
    if (dots == std::string::npos) {
      hi = static_cast<unsigned>(std::stoul(range_text));
    } else {
      lo = static_cast<unsigned>(std::stoul(range_text.substr(0, dots)));
      hi = static_cast<unsigned>(std::stoul(range_text.substr(dots + 2)));
    }
  } catch (const std::exception&) {
    throw std::invalid_argument("range must be N or LO..HI, got '" + range_text + "'");
  }
  if (lo < 1 || hi < lo || hi > 4096)
    throw std::invalid_argument("range must satisfy 1 <= LO <= HI <= 4096");

  std::ostringstream text;
  nlohmann::json rows = nlohmann::json::array();
  std::string csv = "n,c,cap,equality\n";
  text << "largest cyclic tower order c(n), cap 2^(n-1):\n";
  bool violated = false;
  for (unsigned n = lo; n <= hi; ++n) {
    mpz_class c = max_cyclic_tower_order(n);
    mpz_class cap = mpz_class(1) << (n - 1);
    bool eq = c == cap;
    violated |= c > cap;
    char head[32];
    std::snprintf(head, sizeof head, "  n=%-4u c=", n);
    text << head << c.get_str() << (eq ? "  = 2^(n-1)" : "") << (c > cap ? "  EXCEEDS CAP" : "")
         << "\n";
    rows.push_back({{"n", n},
                    {"c", c.get_str()},
                    {"c_bits", mpz_sizeinbase(c.get_mpz_t(), 2)},
                    {"cap", cap.get_str()},
                    {"equality", eq}});
    csv += std::to_string(n) + "," + c.get_str() + "," + cap.get_str() + "," + (eq ? "1" : "0") +
           "\n";
  }
  text << (violated ? "SOME c(n) EXCEEDS 2^(n-1)\n" : "all c(n) within 2^(n-1)\n");
  emit(e, text.str(), {{"cmax", rows}}, csv);
  return violated ? kExitViolation : kExitOk;
}

void add_emit_flags(CLI::App* sub, Emit& e) {
  sub->add_option("--out", e.out, "write the report to this path");
  sub->add_option("--format", e.format, "report format for --out")
      ->check(CLI::IsMember({"json-doc", "csv"}))
      ->default_str("json-doc");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact full-cycle censuses, wreath experiments, and stable-prime scans"};
  app.require_subcommand(1);
  std::function<int()> task;

  Emit cat_emit;
  CLI::App* cat = app.add_subcommand("catalog", "list the bundled groups");
  add_emit_flags(cat, cat_emit);
  cat->callback([&] { task = [&] { return cmd_catalog(cat_emit); }; });

  std::string census_group;
  int census_chains = kDefaultChainLimit;
  Emit census_emit;
  CLI::App* census =
      app.add_subcommand("census", "full-cycle census and partition-chain bound check");
  census->add_option("group", census_group, "catalog name or generator document path")
      ->required();
  census->add_option("--chains", census_chains, "maximal chain enumeration limit")
      ->check(CLI::PositiveNumber);
  add_emit_flags(census, census_emit);
  census->callback(
      [&] { task = [&] { return cmd_census(census_group, census_chains, census_emit); }; });

  std::vector<std::string> wreath_parts;
  int wreath_subkernel = 0;
  int wreath_trials = 5;
  std::uint64_t wreath_seed = 2024;
  Emit wreath_emit;
  CLI::App* wreath =
      app.add_subcommand("wreath", "iterated wreath census vs the product formula");
  wreath->add_option("parts", wreath_parts, "tower factors, outermost first")
      ->required()
      ->expected(-1);
  wreath
      ->add_option("--subkernel", wreath_subkernel,
                   "instead census K*tau over proper subkernels of H^r for this r")
      ->check(CLI::Range(1, 4));
  wreath->add_option("--trials", wreath_trials, "subkernel sampling attempts")
      ->check(CLI::PositiveNumber);
  wreath->add_option("--seed", wreath_seed, "subkernel sampling seed");
  add_emit_flags(wreath, wreath_emit);
  wreath->callback([&] {
    task = [&] {
      return cmd_wreath(wreath_parts, wreath_subkernel, wreath_trials, wreath_seed, wreath_emit);
    };
  });

  std::string scan_poly, scan_shift = "0";
  std::uint64_t scan_primes = 0;
  int scan_depth = 0, scan_workers = 1;
  Emit scan_emit;
  CLI::App* scan = app.add_subcommand("scan", "stable-prime density scan for (f, a)");
  scan->add_option("--poly,-f", scan_poly, "coefficients, constant first, e.g. \"-2 0 1\"")
      ->required();
  scan->add_option("--shift,-a", scan_shift, "base point a (rational)");
  scan->add_option("--primes", scan_primes, "scan all primes up to this bound")->required();
  scan->add_option("--depth", scan_depth, "composition depth to certify")->required();
  scan->add_option("--workers", scan_workers, "worker threads")->check(CLI::PositiveNumber);
  add_emit_flags(scan, scan_emit);
  scan->callback([&] {
    task = [&] {
      return cmd_scan(scan_poly, scan_shift, scan_primes, scan_depth, scan_workers, scan_emit);
    };
  });

  std::string cmp_report, cmp_candidates;
  Emit cmp_emit;
  CLI::App* cmp =
      app.add_subcommand("compare", "z-scores of a scan report against candidate proportions");
  cmp->add_option("report", cmp_report, "json-doc report from `permdyn scan`")->required();
  cmp->add_option("--candidates", cmp_candidates,
                  "comma-separated proportions, one per depth, e.g. \"1/2,1/4,1/8\"")
      ->required();
  add_emit_flags(cmp, cmp_emit);
  cmp->callback(
      [&] { task = [&] { return cmd_compare(cmp_report, cmp_candidates, cmp_emit); }; });

  std::string cmax_range;
  Emit cmax_emit;
  CLI::App* cmax = app.add_subcommand("cmax", "largest cyclic tower order table");
  cmax->add_option("range", cmax_range, "N or LO..HI")->required();
  add_emit_flags(cmax, cmax_emit);
  cmax->callback([&] { task = [&] { return cmd_cmax(cmax_range, cmax_emit); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    return task();
  } catch (const EnumerationRequired& ex) {
    std::fprintf(stderr, "error: %s\n", ex.what());
    return kExitResource;
  } catch (const TooLargeToEnumerate& ex) {
    std::fprintf(stderr, "error: %s\n", ex.what());
    return kExitResource;
  } catch (const std::length_error& ex) {
    std::fprintf(stderr, "error: %s\n", ex.what());
    return kExitResource;
  } catch (const std::exception& ex) {
    std::fprintf(stderr, "error: %s\n", ex.what());
    return kExitUsage;
  }
}
