#pragma once

// Unramified double covers of hyperelliptic curves. A cover corresponds to a
// splitting of the 2g+2 branch points into two nonempty even parts; the
// fiber product of the two part curves is the cover Y, and its Prym is
// isogenous to the product of the part-curve Jacobians.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "prymrank/cartier.hpp"
#include "json.hpp"

namespace prymrank {

struct BranchPoint {
  bool infinity = false;
  FieldElement value;  // unset when infinity

  static BranchPoint at_infinity() { return BranchPoint{true, {}}; }
  static BranchPoint affine(const FieldElement& v) { return BranchPoint{false, v}; }
  friend bool operator==(const BranchPoint&, const BranchPoint&) = default;
};

// "INF" or the element encoding.
std::string to_string(const BranchPoint& b);

struct BranchSet {
  std::vector<FieldElement> affine;  // ordered by element index
  bool has_infinity = false;

  std::size_t size() const { return affine.size() + (has_infinity ? 1 : 0); }
  // Affine points first, infinity last.
  BranchPoint point(std::size_t i) const;
};

// Canonical form: part1 holds the first branch point of the set.
struct EvenPartition {
  std::uint32_t mask = 0;  // bit i set: branch point i lies in part1
  std::vector<BranchPoint> part1;
  std::vector<BranchPoint> part2;
};

struct CoverDatum {
  HyperellipticCurve base;
  EvenPartition partition;
  std::optional<HyperellipticCurve> quotient1;  // nullopt: genus 0
  std::optional<HyperellipticCurve> quotient2;
  Poly quotient1_f;  // y^2 = quotient1_f * quotient2_f is the base curve
  Poly quotient2_f;
  int f = 0;
  int f_prime = 0;
  int f_Y = 0;
};

// All branch points; requires every root of f to be rational.
BranchSet branch_set(const HyperellipticCurve& x);

// The 2^{2g} - 1 even partitions in lexicographic order of part1.
std::vector<EvenPartition> enumerate_even_partitions(const BranchSet& b);

// y^2 = prod over the affine points of (x - b); nullopt when the part has two
// points (genus 0).
std::optional<HyperellipticCurve> subcurve_from_part(std::span<const BranchPoint> part, const FieldCtx& ctx);
Poly part_polynomial(std::span<const BranchPoint> part, const FieldCtx& ctx);

// Quotient curve equations with f = q1 * q2 exactly (the leading coefficient
// of f is carried by q1).
std::pair<Poly, Poly> quotient_polynomials(const HyperellipticCurve& x, const EvenPartition& part);

int prym_p_rank(const HyperellipticCurve& x, const EvenPartition& part);

std::vector<CoverDatum> cover_profile(const HyperellipticCurve& x);

// Base p-rank and the Prym p-rank of every cover, in enumerate_even_partitions
// order, computed from branch points with one p-rank per distinct subset.
struct RankProfile {
  int genus = 0;
  int f = 0;
  std::vector<int> f_prime;
};
RankProfile rank_profile(const BranchSet& b, const FieldCtx& ctx);

// Evaluates rank profiles of many branch sets of one size over one field.
// Four-point parts (elliptic quotients) are decided by a table of
// supersingular cross-ratios, so only genus >= 2 parts need a Cartier matrix.
class ProfileEvaluator {
 public:
  ProfileEvaluator(const FieldCtx& ctx, int genus);
  const FieldCtx& ctx() const { return *ctx_; }
  int genus() const { return genus_; }
  // b.size() must be 2 * genus + 2; the result is reused by the next call.
  const RankProfile& evaluate(const BranchSet& b);

 private:
  int subset_rank(const BranchSet& b, std::uint32_t mask);
  bool supersingular_part(const BranchSet& b, std::uint32_t mask) const;

  const FieldCtx* ctx_;
  int genus_;
  std::vector<char> supersingular_;  // by element index
  const std::vector<std::uint32_t>* masks_;
  std::vector<int> memo_;
  RankProfile out_;
};

struct ThetaReport {
  bool contains_order_2 = false;
  std::vector<EvenPartition> witnesses;
};
// The theta divisor contains a 2-torsion point iff some double cover has a
// non-ordinary Prym (f' < g - 1).
ThetaReport theta_two_torsion_report(const HyperellipticCurve& x);
ThetaReport theta_two_torsion_report(const std::vector<CoverDatum>& profile);

// {field, f_coeffs, partition: [[...],[...]], f, f_prime, f_Y}
nlohmann::json to_json(const CoverDatum& d);

}  // namespace prymrank
