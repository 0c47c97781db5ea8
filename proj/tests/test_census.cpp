#include <algorithm>
#include <set>

#include "doctest.h"
#include "prymrank/census.hpp"

using namespace prymrank;

namespace {
std::uint64_t binom(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

std::uint64_t total(const std::map<Stratum, std::uint64_t>& m) {
  std::uint64_t s = 0;
  for (const auto& [k, v] : m) s += v;
  return s;
}
}  // namespace

TEST_CASE("strata and modes parse") {
  CHECK(parse_stratum("2,1") == Stratum{2, 1});
  CHECK(to_string(Stratum{0, 2}) == "0,2");
  CHECK_THROWS_AS(parse_stratum("2"), ParseError);
  CHECK_THROWS_AS(parse_stratum("a,1"), ParseError);
  CHECK_THROWS_AS(parse_stratum("-1,0"), ParseError);
  CHECK(parse_scan_mode("random") == ScanMode::random);
  CHECK(to_string(ScanMode::exhaustive) == "exhaustive");
  CHECK_THROWS_AS(parse_scan_mode("all"), ParseError);
}

TEST_CASE("family size and parameters") {
  CHECK(family_size(25, 2) == 23 * binom(22, 2));
  CHECK(family_size(5, 2) == 3);
  CHECK(family_size(3, 2) == 0);
  CHECK(family_size(125, 3) == binom(123, 5));
  CHECK(family_size(5, 3) == 0);
  const FieldCtx& F = build_field(5, 2);
  std::set<std::vector<std::uint64_t>> seen;
  for (std::uint64_t r = 0; r < family_size(25, 2); ++r) {
    auto params = family_parameters(F, 2, r);
    REQUIRE(params.size() == 3);
    std::vector<std::uint64_t> idx;
    for (const auto& e : params) {
      CHECK_FALSE(e.is_zero());
      CHECK_FALSE(e.is_one());
      idx.push_back(e.index());
    }
    CHECK(idx[0] != idx[1]);
    CHECK(idx[0] != idx[2]);
    CHECK(idx[1] < idx[2]);
    seen.insert(idx);
    BranchSet b = family_branch_set(params);
    CHECK(b.size() == 6);
    CHECK(b.has_infinity);
  }
  CHECK(seen.size() == family_size(25, 2));
  CHECK_THROWS_AS(family_parameters(F, 2, family_size(25, 2)), MathError);
  const FieldCtx& G = build_field(7, 1);
  auto p3 = family_parameters(G, 3, 0);
  CHECK(p3.size() == 5);
  CHECK(family_polynomial(p3).degree() == 7);
  CHECK_THROWS_AS(family_branch_set({G.one(), G.from_int(2), G.from_int(3)}), MathError);
}

TEST_CASE("exhaustive scan at q = 25 conserves covers") {
  ScanSpec spec{.p = 5, .k = 2, .genus = 2};
  StratumTable t = scan(spec);
  CHECK(t.q == 25);
  CHECK(t.curves == family_size(25, 2));
  CHECK(total(t.covers) == t.curves * 15);
  CHECK(t.covers_per_curve() == 15);
  // Frozen cover-wise counts.
  CHECK(t.count({0, 0}) == 0);
  CHECK(t.count({0, 1}) == 45);
  CHECK(t.count({1, 0}) == 360);
  CHECK(t.count({1, 1}) == 2340);
  CHECK(t.count({2, 0}) == 6570);
  CHECK(t.count({2, 1}) == 70380);
  for (const auto& [s, n] : t.curves_with) {
    CHECK(n <= t.curves);
    CHECK(t.count(s, CountView::curve) == n);
    CHECK(n <= t.count(s));
  }
}

TEST_CASE("scan is deterministic across thread counts and repeats") {
  for (ScanMode mode : {ScanMode::exhaustive, ScanMode::random}) {
    ScanSpec spec{.p = 7, .k = 2, .genus = 2, .mode = mode};
    if (mode == ScanMode::random) {
      spec.seed = 42;
      spec.samples = 9000;
    }
    spec.threads = 1;
    StratumTable a = scan(spec);
    spec.threads = 4;
    StratumTable b = scan(spec);
    StratumTable c = scan(spec);
    CHECK(a.covers == b.covers);
    CHECK(a.curves_with == b.curves_with);
    CHECK(to_csv(a) == to_csv(b));
    CHECK(to_csv(b) == to_csv(c));
    CHECK(to_csv(a, CountView::curve) == to_csv(b, CountView::curve));
    CHECK(to_json(a).dump() == to_json(c).dump());
    CHECK(total(a.covers) == a.curves * 15);
  }
  ScanSpec r{.p = 5, .k = 3, .genus = 3, .mode = ScanMode::random, .seed = 9, .samples = 300};
  StratumTable g1 = scan(r);
  r.threads = 3;
  CHECK(to_csv(scan(r)) == to_csv(g1));
  CHECK(total(g1.covers) == 300 * 63);
  r.seed = 10;
  CHECK(to_json(scan(r)).dump() != to_json(g1).dump());
}

TEST_CASE("scan errors") {
  ScanSpec random{.p = 5, .k = 2, .genus = 2, .mode = ScanMode::random, .samples = 10};
  CHECK_THROWS_AS(scan(random), MathError);
  ScanSpec big{.p = 5, .k = 3, .genus = 3};
  CHECK_THROWS_AS(scan(big), CapExceeded);
  ScanSpec even{.p = 9, .k = 1, .genus = 2};
  CHECK_THROWS_AS(scan(even), MathError);
  ScanSpec genus4{.p = 5, .k = 2, .genus = 4};
  CHECK_THROWS_AS(scan(genus4), MathError);
}

TEST_CASE("CSV layout") {
  ScanSpec spec{.p = 5, .k = 1, .genus = 2};
  StratumTable t = scan(spec);
  CHECK(t.curves == 3);
  std::string csv = to_csv(t);
  CHECK(csv.rfind("q,genus,f,f_prime,count,mode,seed\n", 0) == 0);
  CHECK(csv.find("5,2,0,1,45,exhaustive,\n") != std::string::npos);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 7);
  spec.target = Stratum{2, 1};
  std::string one = to_csv(scan(spec));
  CHECK(std::count(one.begin(), one.end(), '\n') == 2);
}

TEST_CASE("p = 3 genus 2 has no (0,0) or (1,0) covers for k <= 2") {
  for (unsigned k : {1u, 2u}) {
    StratumTable t = scan(ScanSpec{.p = 3, .k = k, .genus = 2});
    CHECK(t.count({0, 0}) == 0);
    CHECK(t.count({1, 0}) == 0);
  }
}

TEST_CASE("witness search and certificates") {
  WitnessBudget budget;
  budget.max_k = 2;
  WitnessOutcome w = witness_search(5, 2, Stratum{1, 0}, budget);
  REQUIRE(w.certificate.has_value());
  const WitnessCertificate& c = *w.certificate;
  CHECK(c.k == 2);
  CHECK(c.cover.f == 1);
  CHECK(c.cover.f_prime == 0);
  CertificateCheck ok = verify_certificate(c);
  CHECK(ok.ok());
  CHECK(ok.zeta == ZetaCheck::agree);

  // JSON round trip.
  nlohmann::json j = to_json(c);
  WitnessCertificate back = certificate_from_json(nlohmann::json::parse(j.dump()));
  CHECK(to_json(back).dump() == j.dump());
  CHECK(verify_certificate(back).ok());

  // Tampering with the claimed ranks or the parameters is detected.
  nlohmann::json bad = j;
  bad["f_prime"] = 1;
  bad["f_Y"] = 2;
  CHECK_FALSE(verify_certificate(certificate_from_json(bad)).ok());
  nlohmann::json bad_target = j;
  bad_target["target"] = {2, 0};
  CHECK_FALSE(verify_certificate(certificate_from_json(bad_target)).ok());
  nlohmann::json bad_params = j;
  bad_params["parameters"][0] = bad_params["parameters"][1];
  CHECK_FALSE(verify_certificate(certificate_from_json(bad_params)).rebuilt);
  nlohmann::json broken = j;
  broken.erase("field");
  CHECK_THROWS_AS(certificate_from_json(broken), ParseError);

  // Deterministic across thread counts.
  budget.threads = 4;
  WitnessOutcome w4 = witness_search(5, 2, Stratum{1, 0}, budget);
  REQUIRE(w4.certificate.has_value());
  CHECK(to_json(*w4.certificate).dump() == j.dump());
}

TEST_CASE("witness search at p = 3 exhausts (0,0) within k <= 2") {
  WitnessBudget budget;
  budget.max_k = 2;
  WitnessOutcome w = witness_search(3, 2, Stratum{0, 0}, budget);
  CHECK_FALSE(w.certificate.has_value());
  CHECK(w.curves_examined > 0);
  CHECK_THROWS_AS(witness_search(5, 2, Stratum{3, 0}, budget), MathError);
  CHECK_THROWS_AS(witness_search(5, 2, Stratum{0, 2}, budget), MathError);
}

TEST_CASE("descent parameters of the p-rank zero quintic") {
  const FieldCtx& fp = build_field(5, 1);
  Poly h = Poly::from_ints(fp, {0, 3, 2, 0, 1, 1});
  unsigned m = splitting_degree(h);
  const FieldCtx& E = build_field(5, m);
  auto params = descent_parameters(h, E);
  REQUIRE(params.size() == 3);
  HyperellipticCurve x(family_polynomial(params));
  CHECK(p_rank(x) == 0);
  int zero_zero = 0;
  for (const auto& d : cover_profile(x)) zero_zero += d.f == 0 && d.f_prime == 0;
  CHECK(zero_zero >= 1);
  CHECK_THROWS_AS(descent_parameters(h, build_field(5, 2)), MathError);
}

TEST_CASE("growth exponent") {
  GrowthReport r = growth_exponent(5, 2, Stratum{2, 1}, {1, 2});
  REQUIRE(r.steps.size() == 1);
  CHECK(r.steps[0].q_small == 5);
  CHECK(r.steps[0].q_large == 25);
  CHECK(r.steps[0].n_small == 0);
  CHECK_FALSE(r.steps[0].exponent.has_value());
  nlohmann::json j = to_json(r);
  REQUIRE(j["steps"][0].contains("exponent_approx"));
  CHECK(j["steps"][0]["exponent_approx"].is_null());
  CHECK(j["steps"][0]["curves"] == 0);
  CHECK_THROWS_AS(growth_exponent(5, 2, Stratum{2, 1}, {2}), MathError);
}

TEST_CASE("explore reports") {
  CHECK(parse_question("prym-rank-zero") == Question::prym_rank_zero);
  CHECK(parse_question("genus3-table") == Question::genus3_table);
  CHECK_THROWS_AS(parse_question("other"), ParseError);
  ExploreBudget budget;
  budget.table_samples = 200;
  budget.table_cap = 1000;
  nlohmann::json t = explore_question(Question::genus3_table, 5, budget);
  CHECK(t["scope"] == kSliceLabel);
  CHECK(t["table"]["genus"] == 3);
  budget.witness.max_k = 1;
  nlohmann::json z = explore_question(Question::prym_rank_zero, 3, budget);
  CHECK(z["scope"] == kSliceLabel);
  CHECK(z.contains("status"));
  CHECK(z.dump() == explore_question(Question::prym_rank_zero, 3, budget).dump());
}
