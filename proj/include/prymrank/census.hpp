#pragma once

// Searches over the normalized hyperelliptic families
//   genus 2: y^2 = x(x-1)(x-lambda)(x-t1)(x-t2)
//   genus 3: y^2 = x(x-1)(x-b1)...(x-b5)
// whose branch sets contain 0, 1 and infinity. Parameters are distinct,
// avoid {0, 1}, and are enumerated as lambda followed by an increasing pair
// (genus 2) or as an increasing 5-tuple (genus 3), all in element index order.

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "prymrank/covers.hpp"
#include "prymrank/zeta.hpp"
#include "json.hpp"

namespace prymrank {

struct Stratum {
  int f = 0;
  int f_prime = 0;
  friend auto operator<=>(const Stratum&, const Stratum&) = default;
};
// "f,f'" as two integers separated by a comma.
Stratum parse_stratum(std::string_view text);
std::string to_string(const Stratum& s);

enum class ScanMode { exhaustive, random };
std::string to_string(ScanMode m);
ScanMode parse_scan_mode(std::string_view text);

struct ScanSpec {
  std::uint32_t p = 0;
  unsigned k = 1;
  int genus = 2;
  ScanMode mode = ScanMode::exhaustive;
  std::optional<std::uint64_t> seed;  // required in random mode
  std::uint64_t samples = 0;          // random mode only
  std::optional<Stratum> target;      // restricts reported rows
  std::uint64_t cap = kDefaultEnumerationCap;
  unsigned threads = 1;
};

// Number of parameter tuples of the family over F_q.
std::uint64_t family_size(std::uint64_t q, int genus);

// Branch set {0, 1, params..., infinity} and the family polynomial.
BranchSet family_branch_set(const std::vector<FieldElement>& params);
Poly family_polynomial(const std::vector<FieldElement>& params);

// Parameters of tuple `rank` in exhaustive order.
std::vector<FieldElement> family_parameters(const FieldCtx& ctx, int genus, std::uint64_t rank);

enum class CountView { cover, curve };

struct StratumTable {
  std::uint32_t p = 0;
  unsigned k = 1;
  std::uint64_t q = 0;
  int genus = 2;
  ScanMode mode = ScanMode::exhaustive;
  std::optional<std::uint64_t> seed;
  std::optional<Stratum> target;
  std::uint64_t curves = 0;
  // One increment per cover.
  std::map<Stratum, std::uint64_t> covers;
  // One increment per curve having at least one cover in the stratum.
  std::map<Stratum, std::uint64_t> curves_with;
  std::string source;  // textual scan parameters

  std::uint64_t covers_per_curve() const { return (std::uint64_t{1} << (2 * genus)) - 1; }
  std::uint64_t count(Stratum s, CountView view = CountView::cover) const;
};

StratumTable scan(const ScanSpec& spec);

// Columns q,genus,f,f_prime,count,mode,seed; every stratum 0 <= f <= g,
// 0 <= f' <= g-1 is listed (only the target when one is set).
std::string to_csv(const StratumTable& t, CountView view = CountView::cover);
nlohmann::json to_json(const StratumTable& t);

struct WitnessBudget {
  unsigned max_k = 4;
  std::uint64_t exhaustive_cap = std::uint64_t{1} << 20;  // family tuples per field
  std::uint64_t samples = 20000;                          // per field beyond the cap
  std::uint64_t seed = 1;
  bool descent = true;
  std::uint64_t descent_cap = kDefaultEnumerationCap;  // models over F_p
  unsigned threads = 1;
};

enum class WitnessPhase { descent, exhaustive, random };
std::string to_string(WitnessPhase ph);

struct WitnessCertificate {
  CoverDatum cover;
  int genus = 2;
  Stratum target;
  unsigned k = 1;
  WitnessPhase phase = WitnessPhase::exhaustive;
  std::uint64_t scan_index = 0;
  std::vector<FieldElement> parameters;
  std::optional<Poly> descent_model;  // over F_p, when found by descent
  std::optional<std::uint64_t> seed;  // random phase only
};

struct WitnessOutcome {
  std::optional<WitnessCertificate> certificate;
  std::uint64_t curves_examined = 0;
  unsigned max_k = 0;
  std::vector<std::string> notes;
};

// Scans k = 1..max_k in turn. For each field the descent pass runs first:
// monic models y^2 = h(x) of degree 2g+1 over F_p (x^{2g} coefficient zero
// when p does not divide 2g+1) whose roots generate exactly F_{p^k}, moved
// into the family by the affine map sending the first two roots to 0 and 1.
// The family pass follows, exhaustive up to exhaustive_cap tuples and seeded
// sampling beyond. The first hit in this order is returned.
WitnessOutcome witness_search(std::uint32_t p, int genus, Stratum target, const WitnessBudget& budget);

// Descent model moved into the family over its splitting field.
std::vector<FieldElement> descent_parameters(const Poly& h, const FieldCtx& target);

nlohmann::json to_json(const WitnessCertificate& c);
WitnessCertificate certificate_from_json(const nlohmann::json& j);

enum class ZetaCheck { agree, disagree, skipped };
std::string to_string(ZetaCheck z);

struct CertificateCheck {
  bool rebuilt = false;  // parameters and descent model reproduce the curve
  bool cartier = false;  // Cartier path reproduces the target
  ZetaCheck zeta = ZetaCheck::skipped;
  int f = -1;
  int f_prime = -1;
  std::string detail;
  bool ok() const { return rebuilt && cartier && zeta == ZetaCheck::agree; }
};
CertificateCheck verify_certificate(const WitnessCertificate& c, std::uint64_t counting_cap = kDefaultCountingCap);

struct GrowthStep {
  std::uint64_t q_small = 0, q_large = 0;
  std::uint64_t n_small = 0, n_large = 0;
  std::optional<double> exponent;  // undefined when either count is zero
};
struct GrowthReport {
  std::uint32_t p = 0;
  int genus = 2;
  Stratum stratum;
  std::vector<StratumTable> tables;
  std::vector<GrowthStep> steps;
};
// Curve-wise counts from exhaustive scans; the exponent is
// log(N(q')/N(q)) / log(q'/q). Approximate, descriptive only.
GrowthReport growth_exponent(std::uint32_t p, int genus, Stratum s, const std::vector<unsigned>& k_list,
                             std::uint64_t cap = kDefaultEnumerationCap, unsigned threads = 1);
nlohmann::json to_json(const GrowthReport& r);

enum class Question { prym_rank_zero, genus3_table };
Question parse_question(std::string_view text);
std::string to_string(Question q);

struct ExploreBudget {
  WitnessBudget witness;
  std::optional<unsigned> table_k;  // field for the genus-3 table; default smallest usable
  std::uint64_t table_samples = 20000;
  std::uint64_t table_cap = std::uint64_t{1} << 20;
};
inline constexpr const char* kSliceLabel = "hyperelliptic slice only - non-hyperelliptic genus-3 curves not searched";
nlohmann::json explore_question(Question q, std::uint32_t p, const ExploreBudget& budget);

}  // namespace prymrank
