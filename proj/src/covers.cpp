#include "prymrank/covers.hpp"

#include <algorithm>
#include <bit>

namespace prymrank {

namespace {

constexpr int kCoverGenusCap = 3;

// Part1 masks for n branch points, sorted by the lexicographic order of the
// index lists they describe.
std::vector<std::uint32_t> partition_masks(std::size_t n) {
  std::vector<std::pair<std::vector<int>, std::uint32_t>> keyed;
  const std::uint32_t full = (std::uint32_t{1} << n) - 1;
  for (std::uint32_t mask = 1; mask < full; mask += 2) {
    if (std::popcount(mask) % 2 != 0) continue;
    std::vector<int> idx;
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1) idx.push_back(static_cast<int>(i));
    keyed.emplace_back(std::move(idx), mask);
  }
  std::sort(keyed.begin(), keyed.end());
  std::vector<std::uint32_t> out;
  for (auto& [idx, mask] : keyed) out.push_back(mask);
  return out;
}

const std::vector<std::uint32_t>& cached_masks(std::size_t n) {
  static const std::vector<std::uint32_t> by_size[] = {partition_masks(4), partition_masks(6), partition_masks(8)};
  if (n != 4 && n != 6 && n != 8) throw CapExceeded("cover enumeration supports genus 1..3");
  return by_size[n / 2 - 2];
}

Poly product_of_roots(const BranchSet& b, std::uint32_t mask, const FieldCtx& ctx) {
  Poly acc = Poly::constant(ctx.one());
  for (std::size_t i = 0; i < b.affine.size(); ++i)
    if (mask >> i & 1) acc = mul(acc, Poly::linear_root(b.affine[i]));
  return acc;
}

EvenPartition make_partition(const BranchSet& b, std::uint32_t mask) {
  EvenPartition part;
  part.mask = mask;
  for (std::size_t i = 0; i < b.size(); ++i) (mask >> i & 1 ? part.part1 : part.part2).push_back(b.point(i));
  return part;
}

void check_genus(int g) {
  if (g < 1 || g > kCoverGenusCap)
    throw CapExceeded("cover enumeration supports genus 1.." + std::to_string(kCoverGenusCap) + ", got " +
                      std::to_string(g));
}

}  // namespace

std::string to_string(const BranchPoint& b) { return b.infinity ? "INF" : to_string(b.value); }

BranchPoint BranchSet::point(std::size_t i) const {
  if (i < affine.size()) return BranchPoint::affine(affine[i]);
  return BranchPoint::at_infinity();
}

BranchSet branch_set(const HyperellipticCurve& x) {
  auto roots = rational_roots(x.f());
  if (static_cast<int>(roots.size()) != x.f().degree())
    throw MathError("branch points of " + to_pretty(x.f()) + " are not all rational over " + x.ctx().spec() +
                    "; extend the field");
  return BranchSet{std::move(roots), x.f().degree() % 2 == 1};
}

std::vector<EvenPartition> enumerate_even_partitions(const BranchSet& b) {
  std::vector<EvenPartition> out;
  for (auto mask : cached_masks(b.size())) out.push_back(make_partition(b, mask));
  return out;
}

Poly part_polynomial(std::span<const BranchPoint> part, const FieldCtx& ctx) {
  if (part.size() % 2 != 0 || part.empty()) throw MathError("branch part must have even size >= 2");
  Poly acc = Poly::constant(ctx.one());
  for (const auto& b : part)
    if (!b.infinity) acc = mul(acc, Poly::linear_root(b.value));
  return acc;
}

std::optional<HyperellipticCurve> subcurve_from_part(std::span<const BranchPoint> part, const FieldCtx& ctx) {
  Poly f = part_polynomial(part, ctx);
  if (part.size() == 2) return std::nullopt;
  return HyperellipticCurve(std::move(f));
}

std::pair<Poly, Poly> quotient_polynomials(const HyperellipticCurve& x, const EvenPartition& part) {
  Poly q1 = part_polynomial(part.part1, x.ctx()).scaled(x.f().leading());
  Poly q2 = part_polynomial(part.part2, x.ctx());
  return {std::move(q1), std::move(q2)};
}

int prym_p_rank(const HyperellipticCurve& x, const EvenPartition& part) {
  int total = 0;
  for (const auto* side : {&part.part1, &part.part2}) {
    auto c = subcurve_from_part(*side, x.ctx());
    if (c) total += p_rank(*c);
  }
  return total;
}

RankProfile rank_profile(const BranchSet& b, const FieldCtx& ctx) {
  const std::size_t n = b.size();
  RankProfile out;
  out.genus = static_cast<int>(n / 2) - 1;
  check_genus(out.genus);
  const std::uint32_t full = (std::uint32_t{1} << n) - 1;
  std::vector<int> memo(std::size_t{1} << n, -1);
  auto subset_rank = [&](std::uint32_t mask) {
    if (std::popcount(mask) <= 2) return 0;
    int& slot = memo[mask];
    if (slot < 0) slot = p_rank_unchecked(product_of_roots(b, mask, ctx));
    return slot;
  };
  out.f = subset_rank(full);
  for (auto mask : cached_masks(n)) out.f_prime.push_back(subset_rank(mask) + subset_rank(full & ~mask));
  return out;
}

ProfileEvaluator::ProfileEvaluator(const FieldCtx& ctx, int genus)
    : ctx_(&ctx), genus_(genus), masks_(nullptr) {
  check_genus(genus);
  if (ctx.size() > kDefaultEnumerationCap) throw CapExceeded("field too large for a supersingular table: " + ctx.spec());
  masks_ = &cached_masks(static_cast<std::size_t>(2 * genus + 2));
  supersingular_.assign(ctx.size(), 0);
  for (const auto& r : rational_roots(embed(deuring_polynomial(ctx.p()), ctx))) supersingular_[r.index()] = 1;
  memo_.assign(std::size_t{1} << (2 * genus + 2), -1);
  out_.genus = genus;
}

bool ProfileEvaluator::supersingular_part(const BranchSet& b, std::uint32_t mask) const {
  FieldElement pt[4];
  int n = 0;
  bool infinity = false;
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (!(mask >> i & 1)) continue;
    if (i < b.affine.size())
      pt[n++] = b.affine[i];
    else
      infinity = true;
  }
  // Any cross-ratio works: the supersingular set is stable under the S3 action.
  FieldElement cr = infinity ? (pt[2] - pt[0]) / (pt[1] - pt[0])
                             : (pt[2] - pt[0]) * (pt[3] - pt[1]) / ((pt[2] - pt[1]) * (pt[3] - pt[0]));
  return supersingular_[cr.index()] != 0;
}

int ProfileEvaluator::subset_rank(const BranchSet& b, std::uint32_t mask) {
  const int size = std::popcount(mask);
  if (size <= 2) return 0;
  int& slot = memo_[mask];
  if (slot >= 0) return slot;
  if (size == 4)
    slot = supersingular_part(b, mask) ? 0 : 1;
  else
    slot = p_rank_unchecked(product_of_roots(b, mask, *ctx_));
  return slot;
}

const RankProfile& ProfileEvaluator::evaluate(const BranchSet& b) {
  const std::size_t n = b.size();
  if (n != static_cast<std::size_t>(2 * genus_ + 2)) throw MathError("branch set size does not match the evaluator genus");
  std::fill(memo_.begin(), memo_.end(), -1);
  const std::uint32_t full = (std::uint32_t{1} << n) - 1;
  out_.f = subset_rank(b, full);
  out_.f_prime.clear();
  for (auto mask : *masks_) out_.f_prime.push_back(subset_rank(b, mask) + subset_rank(b, full & ~mask));
  return out_;
}

std::vector<CoverDatum> cover_profile(const HyperellipticCurve& x) {
  check_genus(x.genus());
  const BranchSet b = branch_set(x);
  const RankProfile ranks = rank_profile(b, x.ctx());
  const auto partitions = enumerate_even_partitions(b);
  std::vector<CoverDatum> out;
  out.reserve(partitions.size());
  for (std::size_t i = 0; i < partitions.size(); ++i) {
    auto [q1, q2] = quotient_polynomials(x, partitions[i]);
    std::optional<HyperellipticCurve> c1, c2;
    if (q1.degree() >= 3) c1.emplace(q1);
    if (q2.degree() >= 3) c2.emplace(q2);
    out.push_back(CoverDatum{x, partitions[i], std::move(c1), std::move(c2), std::move(q1), std::move(q2), ranks.f,
                             ranks.f_prime[i], ranks.f + ranks.f_prime[i]});
  }
  return out;
}

ThetaReport theta_two_torsion_report(const std::vector<CoverDatum>& profile) {
  ThetaReport report;
  for (const auto& d : profile) {
    if (d.f_prime < d.base.genus() - 1) {
      report.contains_order_2 = true;
      report.witnesses.push_back(d.partition);
    }
  }
  return report;
}

ThetaReport theta_two_torsion_report(const HyperellipticCurve& x) {
  return theta_two_torsion_report(cover_profile(x));
}

nlohmann::json to_json(const CoverDatum& d) {
  auto encode = [](const std::vector<BranchPoint>& part) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& b : part) arr.push_back(to_string(b));
    return arr;
  };
  nlohmann::json coeffs = nlohmann::json::array();
  for (const auto& c : d.base.f().coeffs()) coeffs.push_back(to_string(c));
  return nlohmann::json{{"field", d.base.ctx().spec()},
                        {"f_coeffs", coeffs},
                        {"partition", {encode(d.partition.part1), encode(d.partition.part2)}},
                        {"f", d.f},
                        {"f_prime", d.f_prime},
                        {"f_Y", d.f_Y}};
}

}  // namespace prymrank
