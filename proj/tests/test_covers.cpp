#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "prymrank/covers.hpp"
#include "prymrank/zeta.hpp"

using namespace prymrank;

namespace {
const FieldCtx& f5() { return build_field(5, 1); }
const FieldCtx& f25() { return build_field(5, 2, std::vector<std::uint32_t>{2, 4, 1}); }

Poly from_roots(const std::vector<FieldElement>& roots) {
  Poly f = Poly::constant(roots.front().ctx().one());
  for (const auto& r : roots) f = mul(f, Poly::linear_root(r));
  return f;
}

std::vector<FieldElement> part_values(const std::vector<BranchPoint>& part) {
  std::vector<FieldElement> v;
  for (const auto& b : part)
    if (!b.infinity) v.push_back(b.value);
  return v;
}

bool has_infinity(const std::vector<BranchPoint>& part) {
  for (const auto& b : part)
    if (b.infinity) return true;
  return false;
}

const EvenPartition& find_partition(const std::vector<EvenPartition>& parts, std::uint32_t mask_or_complement,
                                    std::size_t n) {
  std::uint32_t full = (1u << n) - 1;
  for (const auto& e : parts)
    if (e.mask == mask_or_complement || e.mask == (full ^ mask_or_complement)) return e;
  throw std::logic_error("partition not found");
}

HyperellipticCurve witness_curve() {
  FieldElement a = f25().generator();
  return HyperellipticCurve(from_roots({f25().zero(), f25().one(), a.pow(4), a.pow(16), a}));
}
}  // namespace

TEST_CASE("branch_set examples") {
  HyperellipticCurve x = witness_curve();
  BranchSet b = branch_set(x);
  CHECK(b.size() == 6);
  CHECK(b.has_infinity);
  CHECK(b.affine.size() == 5);
  const FieldCtx& f7 = build_field(7, 1);
  BranchSet e = branch_set(HyperellipticCurve(from_roots({f7.from_int(1), f7.from_int(2), f7.from_int(3),
                                                          f7.from_int(4), f7.from_int(0), f7.from_int(-1)})));
  CHECK(e.affine.size() == 6);
  CHECK_FALSE(e.has_infinity);
  CHECK_THROWS_AS(branch_set(HyperellipticCurve(Poly::from_ints(f5(), {1, 1, 0, 1}))), MathError);
}

TEST_CASE("enumerate_even_partitions counts") {
  const FieldCtx& f = build_field(11, 1);
  for (int g : {1, 2, 3}) {
    std::vector<FieldElement> roots;
    for (int i = 0; i < 2 * g + 1; ++i) roots.push_back(f.from_int(i));
    BranchSet b = branch_set(HyperellipticCurve(from_roots(roots)));
    auto parts = enumerate_even_partitions(b);
    CHECK(parts.size() == (1u << (2 * g)) - 1);
    int two = 0, four = 0;
    for (const auto& e : parts) {
      CHECK(e.part1.size() % 2 == 0);
      CHECK(e.part2.size() % 2 == 0);
      CHECK(e.part1.size() + e.part2.size() == b.size());
      CHECK((e.mask & 1u) == 1u);
      std::size_t small = std::min(e.part1.size(), e.part2.size());
      two += small == 2;
      four += small == 4;
    }
    if (g == 2) CHECK(two == 15);
    if (g == 3) {
      CHECK(two == 28);
      CHECK(four == 35);
    }
    if (g == 1) CHECK(two == 3);
  }
}

TEST_CASE("subcurve_from_part examples") {
  HyperellipticCurve x = witness_curve();
  BranchSet b = branch_set(x);
  FieldElement a = f25().generator();
  std::vector<BranchPoint> legendre{BranchPoint::affine(f25().zero()), BranchPoint::affine(f25().one()),
                                    BranchPoint::affine(a.pow(4)), BranchPoint::at_infinity()};
  auto e = subcurve_from_part(legendre, f25());
  REQUIRE(e.has_value());
  CHECK(e->genus() == 1);
  CHECK(e->f() == from_roots({f25().zero(), f25().one(), a.pow(4)}));
  std::vector<BranchPoint> pair{BranchPoint::affine(a.pow(16)), BranchPoint::affine(a)};
  CHECK_FALSE(subcurve_from_part(pair, f25()).has_value());
  std::vector<BranchPoint> six;
  for (std::size_t i = 0; i < 6; ++i) six.push_back(b.point(i));
  CHECK(subcurve_from_part(six, f25())->genus() == 2);
  std::vector<BranchPoint> odd{BranchPoint::affine(a)};
  CHECK_THROWS_AS(subcurve_from_part(odd, f25()), MathError);
}

TEST_CASE("prym_p_rank examples") {
  HyperellipticCurve x = witness_curve();
  BranchSet b = branch_set(x);
  auto parts = enumerate_even_partitions(b);
  FieldElement a = f25().generator();
  // Partition {t1, t2} | {0, 1, lambda, inf}.
  std::uint32_t mask = 0;
  for (std::size_t i = 0; i < b.size(); ++i) {
    BranchPoint pt = b.point(i);
    if (!pt.infinity && (pt.value == a || pt.value == a.pow(16))) mask |= 1u << i;
  }
  const EvenPartition& e = find_partition(parts, mask, b.size());
  CHECK(prym_p_rank(x, e) == 0);

  const FieldCtx& f = f5();
  HyperellipticCurve y(from_roots({f.zero(), f.one(), f.from_int(2), f.from_int(3), f.from_int(4)}));
  BranchSet by = branch_set(y);
  // {3, 4} | {0, 1, 2, inf}: the Legendre part with lambda = 2.
  auto parts_y = enumerate_even_partitions(by);
  const EvenPartition& ey = find_partition(parts_y, (1u << 3) | (1u << 4), by.size());
  CHECK(prym_p_rank(y, ey) == 1);

  const FieldCtx& f11 = build_field(11, 1);
  HyperellipticCurve z(from_roots({f11.from_int(0), f11.from_int(1), f11.from_int(2), f11.from_int(3),
                                   f11.from_int(4), f11.from_int(5), f11.from_int(6)}));
  BranchSet bz = branch_set(z);
  for (const auto& ez : enumerate_even_partitions(bz)) {
    if (ez.part1.size() != 4) continue;
    auto c1 = subcurve_from_part(ez.part1, f11), c2 = subcurve_from_part(ez.part2, f11);
    if (p_rank(*c1) == 1 && p_rank(*c2) == 1) {
      CHECK(prym_p_rank(z, ez) == 2);
      break;
    }
  }
}

TEST_CASE("cover_profile of the p-rank zero curve has an f_Y = 0 cover") {
  Poly h = Poly::from_ints(f5(), {0, 3, 2, 0, 1, 1});
  unsigned m = splitting_degree(h);
  const FieldCtx& ext = build_field(5, m);
  HyperellipticCurve x(embed(h, ext));
  auto profile = cover_profile(x);
  CHECK(profile.size() == 15);
  int zero = 0;
  for (const auto& d : profile) zero += d.f_Y == 0;
  CHECK(zero >= 1);
  CHECK(theta_two_torsion_report(profile).contains_order_2);
}

TEST_CASE("theta report") {
  HyperellipticCurve x = witness_curve();
  ThetaReport r = theta_two_torsion_report(x);
  CHECK(r.contains_order_2);
  CHECK_FALSE(r.witnesses.empty());
  // Find an ordinary genus-2 curve over F_25 with all Pryms ordinary.
  auto all = enumerate_field(f25());
  bool found = false;
  for (std::size_t i = 2; i < all.size() && !found; ++i)
    for (std::size_t j = i + 1; j < all.size() && !found; ++j)
      for (std::size_t k = j + 1; k < all.size() && !found; ++k) {
        HyperellipticCurve c(from_roots({all[0], all[1], all[i], all[j], all[k]}));
        auto prof = cover_profile(c);
        bool ordinary = true;
        for (const auto& d : prof) ordinary = ordinary && d.f == 2 && d.f_prime == 1;
        if (ordinary) {
          found = true;
          CHECK_FALSE(theta_two_torsion_report(prof).contains_order_2);
          CHECK(theta_two_torsion_report(prof).witnesses.empty());
        }
      }
  CHECK(found);
}

TEST_CASE("cover invariants on random curves") {
  std::mt19937_64 rng(29);
  for (auto [p, k, g] : {std::tuple{5u, 2u, 2}, {7u, 1u, 2}, {7u, 2u, 2}, {11u, 1u, 3}, {13u, 1u, 1}}) {
    const FieldCtx& f = build_field(p, k);
    auto all = enumerate_field(f);
    for (int t = 0; t < 8; ++t) {
      std::shuffle(all.begin(), all.end(), rng);
      std::size_t n = 2 * g + 1 + (t % 2);
      if (n > all.size()) continue;
      HyperellipticCurve x(from_roots({all.begin(), all.begin() + n}));
      auto profile = cover_profile(x);
      CHECK(profile.size() == (1u << (2 * g)) - 1);
      RankProfile rp = rank_profile(branch_set(x), f);
      ProfileEvaluator ev(f, g);
      const RankProfile& fast = ev.evaluate(branch_set(x));
      CHECK(fast.f == rp.f);
      CHECK(fast.f_prime == rp.f_prime);
      for (std::size_t i = 0; i < profile.size(); ++i) {
        const CoverDatum& d = profile[i];
        int g1 = d.quotient1 ? d.quotient1->genus() : 0, g2 = d.quotient2 ? d.quotient2->genus() : 0;
        CHECK(g1 + g2 == g - 1);
        CHECK(d.f_Y == d.f + d.f_prime);
        CHECK(d.f_prime == rp.f_prime[i]);
        CHECK(d.f == p_rank(x));
        CHECK(0 <= d.f_prime);
        CHECK(d.f_prime <= g - 1);
        CHECK(mul(d.quotient1_f, d.quotient2_f) == x.f());
        // Swapping the parts leaves the Prym p-rank unchanged.
        EvenPartition swapped = d.partition;
        std::swap(swapped.part1, swapped.part2);
        CHECK(prym_p_rank(x, swapped) == d.f_prime);
      }
      // Kani-Rosen through L-polynomials for the first cover.
      const CoverDatum& d = profile.front();
      if (std::pow(double(f.size()), g) <= double(kDefaultCountingCap)) {
        std::vector<std::int64_t> l = l_polynomial(x).coeffs;
        if (d.quotient1) l = multiply(l, l_polynomial(*d.quotient1).coeffs);
        if (d.quotient2) l = multiply(l, l_polynomial(*d.quotient2).coeffs);
        CHECK(degree_mod_p(l, p) == d.f_Y);
        for (unsigned m : {1u, 2u}) {
          std::int64_t qm = std::int64_t(f.size()) * (m == 2 ? std::int64_t(f.size()) : 1);
          std::int64_t y = count_fiber_product_points(d.quotient1_f, d.quotient2_f, m);
          CHECK(y == count_points(x.f(), m) + count_points(d.quotient1_f, m) + count_points(d.quotient2_f, m) -
                         2 * (qm + 1));
        }
      }
    }
  }
}

TEST_CASE("cover JSON") {
  HyperellipticCurve x = witness_curve();
  auto profile = cover_profile(x);
  nlohmann::json j = to_json(profile.front());
  CHECK(j.contains("field"));
  CHECK(j["partition"].size() == 2);
  CHECK(j["f_Y"] == profile.front().f_Y);
  bool inf_token = j.dump().find("\"INF\"") != std::string::npos;
  CHECK(inf_token);
}
