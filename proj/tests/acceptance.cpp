// Acceptance suite. One [PASS]/[FAIL] line per criterion; nonzero exit if any fail.
#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "nullpart/nullpart.hpp"
#include "oracles.hpp"

using namespace nullpart;
namespace fs = std::filesystem;

namespace {

// Wall-clock budgets in seconds.
constexpr double kGoldenBudget = 0.1;
constexpr double kCorpusBudget = 60.0;
constexpr double kStructureBudget = 30.0;

constexpr int kRandomCorpus = 200;
constexpr int kRandomMaxN = 8;
constexpr long kRandomBound = 9;
constexpr int kExhaustiveMaxN = 4;
constexpr long kExhaustiveBound = 3;
constexpr int kStructureMaxN = 10;
constexpr int kCramerSamples = 50;
constexpr int kCramerMaxN = 7;
constexpr int kMutationCerts = 20;

const WeightSet kWorked{1, 3, 5, 2};

struct Outcome {
  bool passed = true;
  std::string detail;

  void fail(const std::string& why) {
    if (passed) detail = why;
    passed = false;
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

const std::vector<WeightSet>& corpus() {
  static const std::vector<WeightSet> all = [] {
    std::mt19937_64 rng(20240601);
    std::uniform_int_distribution<int> pick_n(1, kRandomMaxN);
    std::vector<WeightSet> out;
    for (int i = 0; i < kRandomCorpus; ++i) out.push_back(oracle::random_weights(rng, pick_n(rng), kRandomBound));
    for (auto& w : oracle::exhaustive_weights(kExhaustiveMaxN, kExhaustiveBound)) out.push_back(std::move(w));
    return out;
  }();
  return all;
}

Certificate must_build(const WeightSet& w) {
  auto out = build_certificate(w);
  if (!std::holds_alternative<Certificate>(out)) throw std::runtime_error("no certificate for " + w.to_string());
  return std::get<Certificate>(out);
}

Outcome ac1_golden_determinant() {
  Outcome o;
  const auto t0 = Clock::now();
  const auto pm = build_partition_matrix(kWorked);
  const Integer det = bareiss_determinant(pm.body);
  const auto poly = partition_polynomial(kWorked);
  const double secs = seconds_since(t0);
  const std::vector<long> factors{11, 9, 5, 1, 3, -1, -5, -7};
  if (det != -51975) o.fail("bareiss gave " + det.get_str());
  if (poly.product != -51975) o.fail("product gave " + poly.product.get_str());
  if (poly.factors.size() != factors.size()) o.fail("expected 8 factors");
  for (std::size_t i = 0; o.passed && i < factors.size(); ++i)
    if (poly.factors[i].value != factors[i]) o.fail("factor " + std::to_string(i) + " = " + poly.factors[i].value.get_str());
  if (secs >= kGoldenBudget) o.fail("took " + std::to_string(secs) + " s");
  if (o.passed) o.detail = "det = -51975 both ways, 8 factors, " + std::to_string(secs) + " s";
  return o;
}

Outcome ac2_golden_certificate() {
  Outcome o;
  const auto t0 = Clock::now();
  const auto cert = must_build(kWorked);
  const bool verified = verify_certificate(cert, encode(kWorked)).passed;
  const double secs = seconds_since(t0);

  struct B {
    std::vector<int> s;
    const char* v;
  };
  const std::vector<B> linear{{{1}, "155/693"},         {{2}, "1/693"},          {{3}, "467/3465"},
                              {{4}, "34/693"},          {{1, 2, 3}, "-842/3465"}, {{1, 2, 4}, "188/693"},
                              {{1, 3, 4}, "-908/3465"}, {{2, 3, 4}, "-292/3465"}};
  struct C {
    int i;
    std::vector<int> s;
    const char* v;
  };
  const std::vector<C> squares{
      {1, {}, "-155/693"}, {1, {2, 3}, "842/3465"}, {1, {2, 4}, "-188/693"}, {1, {3, 4}, "908/3465"},
      {2, {}, "-1/231"},   {2, {1, 3}, "842/1155"}, {2, {1, 4}, "-188/231"}, {2, {3, 4}, "292/1155"},
      {3, {}, "-467/693"}, {3, {1, 2}, "842/693"},  {3, {1, 4}, "908/693"},  {3, {2, 4}, "292/693"},
      {4, {}, "-68/693"},  {4, {1, 2}, "-376/693"}, {4, {1, 3}, "1816/3465"}, {4, {2, 3}, "584/3465"}};
  for (const auto& [s, v] : linear)
    if (b_coefficient(cert, Subset::from_members(4, s)) != parse_rational(v)) o.fail("b" + Subset::from_members(4, s).to_string());
  for (const auto& [i, s, v] : squares)
    if (c_coefficient(cert, i, Subset::from_members(4, s)) != parse_rational(v))
      o.fail("c_" + std::to_string(i) + "," + Subset::from_members(4, s).to_string());
  if (cert.beta_linear.size() != linear.size()) o.fail("unexpected extra b terms");
  for (const auto& p : cert.beta_squares)
    if (p.size() != 4) o.fail("unexpected extra c terms");
  if (!verified) o.fail("verification failed");
  if (secs >= kGoldenBudget) o.fail("took " + std::to_string(secs) + " s");
  if (o.passed) o.detail = "24 coefficients exact, verified, " + std::to_string(secs) + " s";
  return o;
}

Outcome ac3_det_equals_product() {
  Outcome o;
  const auto t0 = Clock::now();
  for (const auto& w : corpus()) {
    const Integer det = bareiss_determinant(build_partition_matrix(w).body);
    const Integer prod = partition_polynomial(w).product;
    if (det != prod) {
      o.fail("W = {" + w.to_string() + "}: det " + det.get_str() + " vs product " + prod.get_str());
      break;
    }
  }
  const double secs = seconds_since(t0);
  if (secs >= kCorpusBudget) o.fail("took " + std::to_string(secs) + " s");
  if (o.passed) o.detail = std::to_string(corpus().size()) + " weight sets, " + std::to_string(secs) + " s";
  return o;
}

Outcome ac4_oracle_equivalence() {
  Outcome o;
  int singular = 0;
  for (const auto& w : corpus()) {
    const bool zero = bareiss_determinant(build_partition_matrix(w).body) == 0;
    const auto witness = brute_force_partition(w);
    if (zero != witness.has_value()) {
      o.fail("W = {" + w.to_string() + "}: det zero " + std::to_string(zero) + ", witness " + std::to_string(witness.has_value()));
      break;
    }
    if (witness) {
      ++singular;
      Integer lhs = 0, rhs = 0;
      for (int k = 1; k <= w.n(); ++k) (witness->side.contains(k) ? lhs : rhs) += w.w(k);
      if (lhs != rhs || !witness->holds_for(w)) {
        o.fail("witness " + witness->to_string() + " does not balance {" + w.to_string() + "}");
        break;
      }
    }
  }
  if (o.passed) o.detail = std::to_string(singular) + " partitionable, all witnesses balance";
  return o;
}

Outcome ac5_structure() {
  Outcome o;
  const auto t0 = Clock::now();
  std::mt19937_64 rng(5);
  int matrices = 0;
  for (int n = 1; n <= kStructureMaxN && o.passed; ++n) {
    std::vector<Integer> distinct, repeated(static_cast<std::size_t>(n), Integer(1));
    for (int k = 1; k <= n; ++k) distinct.emplace_back(k);
    for (const auto& w : {WeightSet(distinct), WeightSet(repeated), oracle::random_weights(rng, n, 2)}) {
      const auto report = check_properties(build_partition_matrix(w, kStructureMaxN));
      ++matrices;
      for (const auto& r : report.results)
        if (!r.passed) o.fail("n = " + std::to_string(n) + " {" + w.to_string() + "}: " + r.name);
    }
  }
  const double secs = seconds_since(t0);
  if (secs >= kStructureBudget) o.fail("took " + std::to_string(secs) + " s");
  if (o.passed) o.detail = std::to_string(matrices) + " matrices, n <= 10, " + std::to_string(secs) + " s";
  return o;
}

Outcome ac6_grevlex_pairing() {
  Outcome o;
  const auto idx = build_index(5);
  const std::vector<std::string> cols{"{1,2,3,4,5}", "{1,2,3}", "{1,2,4}", "{1,3,4}", "{2,3,4}", "{1,2,5}", "{1,3,5}", "{2,3,5}",
                                      "{1,4,5}",     "{2,4,5}", "{3,4,5}", "{1}",     "{2}",     "{3}",     "{4}",     "{5}"};
  const std::vector<std::string> rows{"{1,2,3,4}", "{1,2,3,5}", "{1,2,4,5}", "{1,3,4,5}", "{2,3,4,5}", "{1,2}", "{1,3}", "{2,3}",
                                      "{1,4}",     "{2,4}",     "{3,4}",     "{1,5}",     "{2,5}",     "{3,5}", "{4,5}", "{}"};
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (idx.col(i).to_string() != cols[i]) o.fail("n = 5 column " + std::to_string(i) + " is " + idx.col(i).to_string());
    if (idx.row(i).to_string() != rows[i]) o.fail("n = 5 row " + std::to_string(i) + " is " + idx.row(i).to_string());
  }
  for (int n = 1; n <= kStructureMaxN && o.passed; ++n) {
    const auto ix = build_index(n);
    const Mask top = Mask{1} << (n - 1);
    if (ix.size() != (std::size_t{1} << (n - 1))) o.fail("wrong size at n = " + std::to_string(n));
    for (std::size_t i = 0; i < ix.size() && o.passed; ++i) {
      const Mask r = ix.row_mask(i), c = ix.col_mask(i);
      if ((r ^ c) != top) o.fail("pairing broken at n = " + std::to_string(n) + ", index " + std::to_string(i));
      if (ix.rank(ix.row(i)) != i || ix.rank(ix.col(i)) != i) o.fail("rank misaligned at n = " + std::to_string(n));
      if (i + 1 < ix.size()) {
        if (oracle::grevlex_by_vectors(n, r, ix.row_mask(i + 1)) <= 0) o.fail("rows not descending at n = " + std::to_string(n));
        if (oracle::grevlex_by_vectors(n, c, ix.col_mask(i + 1)) <= 0) o.fail("cols not descending at n = " + std::to_string(n));
      }
    }
    if (ix.row_mask(ix.size() - 1) != 0) o.fail("last row is not the empty set at n = " + std::to_string(n));
  }
  if (o.passed) o.detail = "n = 5 table exact, alignment holds for n <= 10";
  return o;
}

Outcome ac7_cramer() {
  Outcome o;
  std::mt19937_64 rng(77);
  std::uniform_int_distribution<int> pick_n(1, kCramerMaxN);
  int samples = 0, components = 0;
  while (samples < kCramerSamples && o.passed) {
    const auto w = oracle::random_weights(rng, pick_n(rng), kRandomBound);
    if (brute_force_partition(w)) continue;
    ++samples;
    const auto pm = build_partition_matrix(w);
    const auto rhs = empty_row_rhs(pm.dim());
    const auto x = solve_exact(pm.body, rhs);
    for (std::size_t j = 0; j < pm.dim(); ++j, ++components)
      if (cramer_component(pm.body, rhs, j) != x[j]) {
        o.fail("W = {" + w.to_string() + "} component " + std::to_string(j));
        break;
      }
  }
  if (o.passed) o.detail = std::to_string(samples) + " systems, " + std::to_string(components) + " components equal";
  return o;
}

Outcome ac8_mutation() {
  Outcome o;
  std::mt19937_64 rng(88);
  int certs = 0, mutants = 0, killed = 0;
  while (certs < kMutationCerts) {
    const auto w = oracle::random_weights(rng, 2 + certs % 5, kRandomBound);
    const auto built = build_certificate(w);
    if (!std::holds_alternative<Certificate>(built)) continue;
    ++certs;
    const auto& cert = std::get<Certificate>(built);
    const auto sys = encode(w);
    const GrevlexIndex ix(w.n());
    auto attempt = [&](const Certificate& mutant) {
      ++mutants;
      const auto v = verify_certificate(mutant, sys);
      if (!v.passed && !v.residual.is_zero()) ++killed;
      else o.fail("mutant survived for {" + w.to_string() + "}");
    };
    // Every b_S and every c_{i,S}, including ones that happen to be zero.
    for (std::size_t j = 0; j < ix.size(); ++j) {
      Certificate m = cert;
      m.beta_linear.add_term(Monomial::of_subset(ix.col(j)), Rational(1));
      attempt(m);
    }
    for (int i = 1; i <= w.n(); ++i)
      for (std::size_t r = 0; r < ix.size(); ++r) {
        if (ix.row(r).contains(i)) continue;
        Certificate m = cert;
        m.beta_squares[static_cast<std::size_t>(i - 1)].add_term(Monomial::of_subset(ix.row(r)), Rational(1));
        attempt(m);
      }
  }
  if (o.passed) o.detail = std::to_string(killed) + "/" + std::to_string(mutants) + " mutants killed over " + std::to_string(certs) + " certificates";
  return o;
}

int run_binary(const std::string& args) {
  const std::string cmd = std::string(NULLPART_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int raw = std::system(cmd.c_str());
  return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome ac9_cli() {
  Outcome o;
  const fs::path dir = fs::temp_directory_path() / ("nullpart_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  const std::string a = (dir / "a.json").string(), b = (dir / "b.json").string();
  struct Case {
    std::string args;
    int code;
  };
  const std::vector<Case> cases{
      {"check 1 3 5 2", 1},
      {"check 1 1", 0},
      {"check 1 2 3", 0},
      {"matrix 1 2 3", 0},
      {"matrix 5", 0},
      {"matrix 1 3 5 2 --verify-properties", 0},
      {"det 1 3 5 2", 0},
      {"det 1 1", 0},
      {"det 2 3", 0},
      {"certificate 1 1", 1},
      {"certificate 5", 0},
      {"certificate 1 3 5 2 -o " + a, 0},
      {"verify " + a, 0},
      {"certificate 1 3 5 2 -o " + b, 0},
      {"check 1 x", 64},
      {"check 1 2 3 --max-n 2", 65},
  };
  for (const auto& c : cases) {
    const int got = run_binary(c.args);
    if (got != c.code) o.fail("'" + c.args + "' exited " + std::to_string(got) + ", expected " + std::to_string(c.code));
  }
  const std::string first = slurp(a);
  if (first.empty() || first != slurp(b)) o.fail("certificate files differ between runs");
  if (o.passed && serialize_certificate(parse_certificate(first)) != first) o.fail("reserialized certificate differs");

  std::string tampered = first;
  const auto at = tampered.find("\"34/693\"");
  if (at == std::string::npos) o.fail("b_{4} missing from certificate file");
  else {
    tampered.replace(at, 8, "\"35/693\"");
    std::ofstream(dir / "t.json", std::ios::binary) << tampered;
    if (run_binary("verify " + (dir / "t.json").string()) != 1) o.fail("tampered certificate was not rejected with 1");
  }
  fs::remove_all(dir);
  if (o.passed) o.detail = std::to_string(cases.size() + 1) + " invocations, byte-stable round trip";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"AC1 golden determinant", ac1_golden_determinant},
      {"AC2 golden certificate", ac2_golden_certificate},
      {"AC3 determinant equals partition polynomial", ac3_det_equals_product},
      {"AC4 singular iff partitionable", ac4_oracle_equivalence},
      {"AC5 structural properties", ac5_structure},
      {"AC6 grevlex order and pairing", ac6_grevlex_pairing},
      {"AC7 cramer matches elimination", ac7_cramer},
      {"AC8 mutated certificates rejected", ac8_mutation},
      {"AC9 command line contract", ac9_cli},
  };
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    if (!o.passed) ++failures;
    std::cout << (o.passed ? "[PASS] " : "[FAIL] ") << name << ": " << o.detail << std::endl;
  }
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
  return failures == 0 ? 0 : 1;
}
