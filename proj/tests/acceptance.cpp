// Acceptance suite: one PASS/FAIL line per criterion. Exits nonzero when a
// hard criterion fails; criterion 8 is soft and never affects the exit code.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "prymrank/census.hpp"
#include "prymrank/cli.hpp"
#include "prymrank/symbolic.hpp"

using namespace prymrank;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::uint64_t ipow(std::uint64_t b, unsigned e) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < e; ++i) r *= b;
  return r;
}

Poly from_roots(const std::vector<FieldElement>& roots) {
  Poly f = Poly::constant(roots.front().ctx().one());
  for (const auto& r : roots) f = mul(f, Poly::linear_root(r));
  return f;
}

Poly random_squarefree(const FieldCtx& f, int degree, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint64_t> pick(0, f.size() - 1);
  for (;;) {
    std::vector<FieldElement> c;
    for (int i = 0; i < degree; ++i) c.push_back(f.element(pick(rng)));
    c.push_back(f.element(1 + pick(rng) % (f.size() - 1)));
    Poly g(f, std::move(c));
    if (is_squarefree(g)) return g;
  }
}

const CheckResult* find_check(const std::vector<CheckResult>& checks, const std::string& name) {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

Outcome golden_group(const std::vector<CheckResult>& checks, std::initializer_list<const char*> names) {
  Outcome o{true, ""};
  for (const char* n : names) {
    const CheckResult* c = find_check(checks, n);
    const bool ok = c && c->status == CheckStatus::pass;
    o.pass = o.pass && ok;
    o.detail += std::string(n) + " " + (c ? to_string(c->status) : "MISSING");
    if (!ok && c) o.detail += " (" + c->detail + ")";
    o.detail += "; ";
  }
  return o;
}

// 1. Symbolic Cartier entries and D at lambda = a^4.
Outcome criterion1(const std::vector<CheckResult>& golden) {
  return golden_group(golden, {"symbolic-entries", "d-factorization"});
}

// 2. Supersingular lambda, the p-rank 1 witness and the p-rank 0 curve.
Outcome criterion2(const std::vector<CheckResult>& golden) {
  return golden_group(golden,
                      {"supersingular-lambda", "deuring-roots", "witness-p-rank", "witness-prym", "p-rank-zero-curve"});
}

// 3. Cartier p-rank equals the zeta p-rank on random curves.
Outcome criterion3() {
  Outcome o{true, ""};
  std::uint64_t curves = 0, mismatches = 0;
  std::string skipped;
  for (std::uint32_t p : {3u, 5u, 7u, 11u, 13u})
    for (unsigned k : {1u, 2u})
      for (int g : {1, 2, 3}) {
        const FieldCtx& f = build_field(p, k);
        if (ipow(f.size(), g) > kDefaultCountingCap) {
          skipped += "q=" + std::to_string(f.size()) + ",g=" + std::to_string(g) + " ";
          continue;
        }
        std::mt19937_64 rng(p * 1000 + k * 10 + g);
        for (int i = 0; i < 500; ++i) {
          HyperellipticCurve x(random_squarefree(f, 2 * g + 1 + (i % 2), rng));
          ++curves;
          if (p_rank(x) != p_rank_zeta(x)) ++mismatches;
        }
      }
  o.pass = mismatches == 0;
  o.detail = std::to_string(curves) + " curves, " + std::to_string(mismatches) + " mismatches";
  if (!skipped.empty()) o.detail += "; beyond the counting cap: " + skipped;
  return o;
}

// 4. Fiber-product counts against the Kani-Rosen trace formula.
Outcome criterion4() {
  std::uint64_t covers = 0, mismatches = 0;
  for (std::uint32_t p : {5u, 7u}) {
    const FieldCtx& f = build_field(p, 2);
    auto all = enumerate_field(f);
    std::mt19937_64 rng(p);
    for (int i = 0; i < 200; ++i) {
      std::shuffle(all.begin(), all.end(), rng);
      const std::size_t n = 5 + (i % 2);
      HyperellipticCurve x(from_roots({all.begin(), all.begin() + n}));
      auto parts = enumerate_even_partitions(branch_set(x));
      const EvenPartition& part = parts[rng() % parts.size()];
      auto [f1, f2] = quotient_polynomials(x, part);
      const LPolynomial lx = l_polynomial(x);
      std::vector<LPolynomial> lq;
      for (const Poly* q : {&f1, &f2})
        if (q->degree() >= 3) lq.push_back(l_polynomial(*q));
      ++covers;
      for (unsigned m : {1u, 2u}) {
        const std::int64_t qm = static_cast<std::int64_t>(ipow(f.size(), m));
        auto trace = [&](const LPolynomial& l) { return qm + 1 - count_from_l_polynomial(l, m); };
        std::int64_t expected = qm + 1 - trace(lx);
        for (const auto& l : lq) expected -= trace(l);
        if (count_fiber_product_points(f1, f2, m) != expected) {
          ++mismatches;
          break;
        }
      }
    }
  }
  return {mismatches == 0, std::to_string(covers) + " covers over F_25 and F_49, checked over F_q and F_q^2, " +
                               std::to_string(mismatches) + " mismatches"};
}

// Witness search with certificate re-derivation; escalates max_k when asked.
struct WitnessRun {
  bool found = false;
  bool verified = false;
  std::string summary;
};

WitnessRun find_witness(std::uint32_t p, int genus, Stratum s, unsigned max_k, unsigned escalate_to) {
  WitnessRun r;
  WitnessBudget budget;
  budget.max_k = max_k;
  WitnessOutcome w = witness_search(p, genus, s, budget);
  if (!w.certificate && escalate_to > max_k) {
    budget.max_k = escalate_to;
    w = witness_search(p, genus, s, budget);
  }
  r.summary = "(" + to_string(s) + ")";
  if (!w.certificate) {
    r.summary += " none for k<=" + std::to_string(budget.max_k);
    return r;
  }
  r.found = true;
  const CertificateCheck check = verify_certificate(*w.certificate);
  r.verified = check.ok();
  r.summary += " k=" + std::to_string(w.certificate->k) + " " + to_string(w.certificate->phase);
  if (!r.verified) r.summary += " unverified: " + check.detail;
  return r;
}

// 5. All six genus-2 strata at p = 5 and 7.
Outcome criterion5() {
  Outcome o{true, ""};
  for (std::uint32_t p : {5u, 7u}) {
    o.detail += "p=" + std::to_string(p) + ":";
    for (int f = 0; f <= 2; ++f)
      for (int fp = 0; fp <= 1; ++fp) {
        WitnessRun r = find_witness(p, 2, {f, fp}, 4, 6);
        o.pass = o.pass && r.found && r.verified;
        o.detail += " " + r.summary;
      }
    o.detail += "; ";
  }
  return o;
}

// 6. No (0,0) or (1,0) genus-2 covers over F_3, F_9, F_27.
Outcome criterion6() {
  Outcome o{true, ""};
  for (unsigned k : {1u, 2u, 3u}) {
    StratumTable t = scan(ScanSpec{.p = 3, .k = k, .genus = 2});
    const std::uint64_t n00 = t.count({0, 0}), n10 = t.count({1, 0});
    o.pass = o.pass && n00 == 0 && n10 == 0;
    o.detail += "q=" + std::to_string(t.q) + ": " + std::to_string(t.curves) + " curves, (0,0)=" + std::to_string(n00) +
                " (1,0)=" + std::to_string(n10) + "; ";
  }
  return o;
}

// 7. Genus-3 witnesses at p = 5 with f' in {1, 2}; f' = 0 reported only.
Outcome criterion7() {
  Outcome o{true, ""};
  std::string report;
  for (int f = 0; f <= 3; ++f) {
    for (int fp : {2, 1}) {
      WitnessRun r = find_witness(5, 3, {f, fp}, 4, 4);
      o.pass = o.pass && r.found && r.verified;
      o.detail += r.summary + " ";
    }
    WitnessRun r0 = find_witness(5, 3, {f, 0}, 4, 4);
    report += r0.summary + (r0.found ? (r0.verified ? " verified" : "") : "") + " ";
  }
  o.detail += "| f'=0 (report only): " + report;
  return o;
}

// 8. Growth exponents between q = 25 and q = 125 (soft).
Outcome criterion8() {
  Outcome o{true, ""};
  const std::tuple<Stratum, double, double> checks[] = {{{2, 1}, 2.5, 3.5}, {{2, 0}, 1.5, 2.5}};
  for (const auto& [s, lo, hi] : checks) {
    GrowthReport r = growth_exponent(5, 2, s, {2, 3});
    const GrowthStep& step = r.steps.front();
    std::ostringstream d;
    d << "(" << to_string(s) << ") N(25)=" << step.n_small << " N(125)=" << step.n_large << " exponent ";
    if (step.exponent) {
      d << std::fixed;
      d.precision(3);
      d << *step.exponent << " target [" << lo << "," << hi << "]";
      o.pass = o.pass && *step.exponent >= lo && *step.exponent <= hi;
    } else {
      d << "undefined";
      o.pass = false;
    }
    o.detail += d.str() + "; ";
  }
  return o;
}

// 9. Seeded commands repeat byte for byte, whatever the thread count.
Outcome criterion9() {
  const std::vector<std::vector<std::string>> commands = {
      {"census", "--p", "5", "--k", "3", "--genus", "3", "--mode", "random", "--samples", "2000", "--seed", "7"},
      {"--format", "json", "census", "--p", "5", "--k", "3", "--genus", "3", "--mode", "random", "--samples", "2000",
       "--seed", "7"},
      {"--format", "json", "census", "--p", "7", "--k", "2", "--genus", "2"},
      {"census", "--p", "5", "--k", "2", "--genus", "2", "--view", "curve"},
      {"witness", "--p", "5", "--genus", "2", "--target", "2,0"},
      {"witness", "--p", "5", "--genus", "3", "--target", "1,1", "--seed", "3"},
      {"growth", "--p", "5", "--genus", "2", "--stratum", "1,1", "--k-list", "1,2"},
      {"explore", "--question", "genus3-table", "--p", "3", "--seed", "11", "--table-samples", "500"}};
  Outcome o{true, ""};
  int identical = 0;
  for (const auto& cmd : commands) {
    std::vector<std::string> outputs;
    for (const char* threads : {"1", "1", "3"}) {
      std::vector<std::string> args{"--threads", threads};
      args.insert(args.end(), cmd.begin(), cmd.end());
      std::ostringstream out, err;
      const int code = run_cli(args, out, err);
      outputs.push_back(std::to_string(code) + "\n" + out.str());
    }
    const bool same = outputs[0] == outputs[1] && outputs[1] == outputs[2] && outputs[0].rfind("0\n", 0) == 0;
    identical += same;
    if (!same) {
      o.pass = false;
      o.detail += "differs: " + cmd[0] + " " + cmd[1] + " ...; ";
    }
  }
  o.detail += std::to_string(identical) + "/" + std::to_string(commands.size()) +
              " commands byte-identical over three runs (threads 1, 1, 3)";
  return o;
}

}  // namespace

int main() {
  const std::vector<CheckResult> golden = golden_checks(5, std::nullopt);
  struct Criterion {
    int id;
    const char* name;
    bool soft;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "golden symbolic suite", false, [&] { return criterion1(golden); }},
      {2, "golden witness suite", false, [&] { return criterion2(golden); }},
      {3, "Cartier and zeta p-ranks agree", false, criterion3},
      {4, "fiber-product trace identity", false, criterion4},
      {5, "genus-2 strata non-empty at p=5,7", false, criterion5},
      {6, "(0,0) and (1,0) empty at p=3, k<=3", false, criterion6},
      {7, "genus-3 witnesses at p=5", false, criterion7},
      {8, "growth exponents (soft)", true, criterion8},
      {9, "determinism", false, criterion9},
  };
  int hard_failures = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!o.pass && !c.soft) ++hard_failures;
    std::ostringstream line;
    line << (o.pass ? "PASS" : "FAIL") << "  criterion " << c.id << ": " << c.name;
    if (!o.pass && c.soft) line << " [warning only]";
    line.setf(std::ios::fixed);
    line.precision(1);
    line << " (" << secs << " s) " << o.detail;
    std::cout << line.str() << std::endl;
  }
  std::cout << (hard_failures == 0 ? "all hard criteria passed" : std::to_string(hard_failures) + " hard criteria failed")
            << std::endl;
  return hard_failures == 0 ? 0 : 1;
}
