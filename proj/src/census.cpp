#include "prymrank/census.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <memory>
#include <mutex>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace prymrank {

namespace {

constexpr std::uint64_t kBlock = 4096;

std::uint64_t binom(std::uint64_t n, std::uint64_t m) {
  if (m > n) return 0;
  m = std::min(m, n - m);
  unsigned __int128 r = 1;
  for (std::uint64_t i = 1; i <= m; ++i) {
    r = r * (n - m + i) / i;
    if (r > std::numeric_limits<std::uint64_t>::max()) return std::numeric_limits<std::uint64_t>::max();
  }
  return static_cast<std::uint64_t>(r);
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  unsigned __int128 r = static_cast<unsigned __int128>(a) * b;
  return r > std::numeric_limits<std::uint64_t>::max() ? std::numeric_limits<std::uint64_t>::max()
                                                       : static_cast<std::uint64_t>(r);
}

std::uint64_t checked_pow(std::uint64_t base, unsigned e) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < e; ++i) r = checked_mul(r, base);
  return r;
}

int free_count(int genus) { return genus == 2 ? 2 : 5; }

void check_genus(int genus) {
  if (genus != 2 && genus != 3) throw MathError("census families exist for genus 2 and 3 only");
}

void check_prime(std::uint32_t p) {
  if (p < 3 || !is_prime(p)) throw MathError("p must be an odd prime, got " + std::to_string(p));
}

// Lexicographic m-combination of {0..n-1} with the given rank.
void unrank_combination(std::uint64_t rank, std::uint64_t n, std::vector<std::uint32_t>& out) {
  const std::size_t m = out.size();
  std::uint64_t c = 0;
  for (std::size_t i = 0; i < m; ++i) {
    for (;; ++c) {
      const std::uint64_t below = binom(n - c - 1, m - i - 1);
      if (rank < below) break;
      rank -= below;
    }
    out[i] = static_cast<std::uint32_t>(c++);
  }
}

bool next_combination(std::vector<std::uint32_t>& c, std::uint64_t n) {
  const std::size_t m = c.size();
  std::size_t i = m;
  while (i > 0 && c[i - 1] == n - m + i - 1) --i;
  if (i == 0) return false;
  ++c[i - 1];
  for (std::size_t j = i; j < m; ++j) c[j] = c[j - 1] + 1;
  return true;
}

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
  for (;;) {
    const std::uint64_t x = rng();
    if (x < limit) return x % n;
  }
}

// Position in the family: lambda slot (genus 2) plus an increasing
// combination of free slots.
struct Cursor {
  std::uint64_t lambda_slot = 0;
  std::vector<std::uint32_t> comb;
};

class FamilySpace {
 public:
  FamilySpace(const FieldCtx& ctx, int genus) : ctx_(&ctx), genus_(genus), q_(ctx.size()) {
    check_genus(genus);
    inner_n_ = genus == 2 ? (q_ >= 3 ? q_ - 3 : 0) : (q_ >= 2 ? q_ - 2 : 0);
    inner_size_ = binom(inner_n_, free_count(genus));
    size_ = genus == 2 ? checked_mul(q_ - 2, inner_size_) : inner_size_;
  }

  std::uint64_t size() const { return size_; }

  Cursor unrank(std::uint64_t r) const {
    Cursor c;
    c.comb.resize(free_count(genus_));
    if (genus_ == 2) {
      c.lambda_slot = r / inner_size_;
      r %= inner_size_;
    }
    unrank_combination(r, inner_n_, c.comb);
    return c;
  }

  void advance(Cursor& c) const {
    if (next_combination(c.comb, inner_n_)) return;
    ++c.lambda_slot;
    for (std::size_t i = 0; i < c.comb.size(); ++i) c.comb[i] = static_cast<std::uint32_t>(i);
  }

  Cursor sample(std::mt19937_64& rng) const {
    Cursor c;
    if (genus_ == 2) c.lambda_slot = uniform_below(rng, q_ - 2);
    std::set<std::uint32_t> picked;
    while (picked.size() < static_cast<std::size_t>(free_count(genus_)))
      picked.insert(static_cast<std::uint32_t>(uniform_below(rng, inner_n_)));
    c.comb.assign(picked.begin(), picked.end());
    return c;
  }

  std::vector<FieldElement> params(const Cursor& c) const {
    std::vector<FieldElement> out;
    if (genus_ == 2) {
      const std::uint64_t lambda = c.lambda_slot + 2;
      out.push_back(ctx_->element(lambda));
      for (auto v : c.comb) out.push_back(ctx_->element(v + 2 < lambda ? v + 2 : v + 3));
    } else {
      for (auto v : c.comb) out.push_back(ctx_->element(v + 2));
    }
    return out;
  }

 private:
  const FieldCtx* ctx_;
  int genus_;
  std::uint64_t q_;
  std::uint64_t inner_n_ = 0;
  std::uint64_t inner_size_ = 0;
  std::uint64_t size_ = 0;
};

std::mt19937_64 block_rng(std::uint64_t seed, std::uint64_t block) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(block), static_cast<std::uint32_t>(block >> 32)};
  return std::mt19937_64(seq);
}

// Runs fn(block, worker) for every block, spreading blocks over workers.
template <class Fn>
void for_blocks(std::uint64_t n_blocks, unsigned threads, Fn&& fn) {
  threads = std::max(1u, threads);
  if (threads == 1 || n_blocks <= 1) {
    for (std::uint64_t b = 0; b < n_blocks; ++b) fn(b, 0u);
    return;
  }
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < threads; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::uint64_t b; (b = next.fetch_add(1)) < n_blocks;) fn(b, w);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        next = n_blocks;
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

// Calls visit(index, params) for every tuple of a block, in order; visit
// returns false to stop the block early.
template <class Visit>
void visit_block(const FamilySpace& space, ScanMode mode, std::uint64_t seed, std::uint64_t total, std::uint64_t block,
                 Visit&& visit) {
  const std::uint64_t lo = block * kBlock;
  const std::uint64_t hi = std::min(total, lo + kBlock);
  if (mode == ScanMode::exhaustive) {
    Cursor c = space.unrank(lo);
    for (std::uint64_t i = lo; i < hi; ++i, space.advance(c))
      if (!visit(i, space.params(c))) return;
  } else {
    auto rng = block_rng(seed, block);
    for (std::uint64_t i = lo; i < hi; ++i)
      if (!visit(i, space.params(space.sample(rng)))) return;
  }
}

std::vector<FieldElement> sorted_by_index(std::vector<FieldElement> v) {
  std::sort(v.begin(), v.end(), [](const FieldElement& a, const FieldElement& b) { return a.index() < b.index(); });
  return v;
}

bool profile_contains(const RankProfile& r, Stratum t) {
  return r.f == t.f && std::find(r.f_prime.begin(), r.f_prime.end(), t.f_prime) != r.f_prime.end();
}

void check_target(int genus, Stratum t) {
  if (t.f < 0 || t.f > genus || t.f_prime < 0 || t.f_prime > genus - 1)
    throw MathError("target (" + to_string(t) + ") outside 0 <= f <= g, 0 <= f' <= g-1 for genus " +
                    std::to_string(genus));
}

std::string describe(const ScanSpec& s) {
  std::ostringstream o;
  o << "p=" << s.p << ",k=" << s.k << ",genus=" << s.genus << ",mode=" << to_string(s.mode);
  if (s.mode == ScanMode::random) o << ",seed=" << *s.seed << ",samples=" << s.samples;
  return o.str();
}

}  // namespace

Stratum parse_stratum(std::string_view text) {
  auto comma = text.find(',');
  if (comma == std::string_view::npos) throw ParseError("stratum must be written f,f'");
  auto num = [](std::string_view s) {
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
    if (s.empty() || s.find_first_not_of("0123456789") != std::string_view::npos)
      throw ParseError("stratum entries must be nonnegative integers");
    return std::stoi(std::string(s));
  };
  return Stratum{num(text.substr(0, comma)), num(text.substr(comma + 1))};
}

std::string to_string(const Stratum& s) { return std::to_string(s.f) + "," + std::to_string(s.f_prime); }

std::string to_string(ScanMode m) { return m == ScanMode::exhaustive ? "exhaustive" : "random"; }

ScanMode parse_scan_mode(std::string_view text) {
  if (text == "exhaustive") return ScanMode::exhaustive;
  if (text == "random") return ScanMode::random;
  throw ParseError("scan mode must be exhaustive or random");
}

std::uint64_t family_size(std::uint64_t q, int genus) {
  check_genus(genus);
  if (genus == 2) return q < 5 ? 0 : checked_mul(q - 2, binom(q - 3, 2));
  return q < 7 ? 0 : binom(q - 2, 5);
}

BranchSet family_branch_set(const std::vector<FieldElement>& params) {
  if (params.empty()) throw MathError("family needs parameters");
  const FieldCtx& ctx = params.front().ctx();
  BranchSet b;
  b.affine.push_back(ctx.zero());
  b.affine.push_back(ctx.one());
  for (const auto& e : sorted_by_index(params)) b.affine.push_back(e);
  b.has_infinity = true;
  for (std::size_t i = 1; i < b.affine.size(); ++i)
    if (b.affine[i] == b.affine[i - 1]) throw MathError("family parameters must be distinct and avoid 0 and 1");
  return b;
}

Poly family_polynomial(const std::vector<FieldElement>& params) {
  const BranchSet b = family_branch_set(params);
  Poly f = Poly::constant(b.affine.front().ctx().one());
  for (const auto& r : b.affine) f = mul(f, Poly::linear_root(r));
  return f;
}

std::vector<FieldElement> family_parameters(const FieldCtx& ctx, int genus, std::uint64_t rank) {
  FamilySpace space(ctx, genus);
  if (rank >= space.size()) throw MathError("family rank out of range");
  return space.params(space.unrank(rank));
}

std::uint64_t StratumTable::count(Stratum s, CountView view) const {
  const auto& m = view == CountView::cover ? covers : curves_with;
  auto it = m.find(s);
  return it == m.end() ? 0 : it->second;
}

StratumTable scan(const ScanSpec& spec) {
  check_prime(spec.p);
  check_genus(spec.genus);
  if (spec.target) check_target(spec.genus, *spec.target);
  if (spec.k < 1 || spec.k > kMaxExtensionDegree) throw MathError("extension degree out of range");
  const std::uint64_t q = checked_pow(spec.p, spec.k);
  if (q > spec.cap) throw CapExceeded("field size " + std::to_string(q) + " exceeds the enumeration cap");
  const FieldCtx& ctx = build_field(spec.p, spec.k);
  const FamilySpace space(ctx, spec.genus);

  std::uint64_t total = 0;
  std::uint64_t seed = 0;
  if (spec.mode == ScanMode::exhaustive) {
    total = space.size();
    if (total > spec.cap)
      throw CapExceeded("exhaustive scan of " + std::to_string(total) + " tuples exceeds the cap " +
                        std::to_string(spec.cap));
  } else {
    if (!spec.seed) throw MathError("random mode requires a seed");
    if (spec.samples > spec.cap) throw CapExceeded("sample count exceeds the cap");
    seed = *spec.seed;
    total = space.size() == 0 ? 0 : spec.samples;
  }

  const int g = spec.genus;
  const std::size_t cells = static_cast<std::size_t>((g + 1) * g);
  const unsigned workers = std::max(1u, spec.threads);
  std::vector<std::vector<std::uint64_t>> cover_counts(workers, std::vector<std::uint64_t>(cells, 0));
  std::vector<std::vector<std::uint64_t>> curve_counts(workers, std::vector<std::uint64_t>(cells, 0));
  std::vector<std::unique_ptr<ProfileEvaluator>> evaluators(workers);

  const std::uint64_t n_blocks = (total + kBlock - 1) / kBlock;
  for_blocks(n_blocks, workers, [&](std::uint64_t block, unsigned w) {
    if (!evaluators[w]) evaluators[w] = std::make_unique<ProfileEvaluator>(ctx, g);
    auto& covers = cover_counts[w];
    auto& curves = curve_counts[w];
    std::vector<char> seen(cells);
    visit_block(space, spec.mode, seed, total, block, [&](std::uint64_t, const std::vector<FieldElement>& params) {
      const RankProfile& r = evaluators[w]->evaluate(family_branch_set(params));
      std::fill(seen.begin(), seen.end(), 0);
      for (int fp : r.f_prime) {
        const std::size_t cell = static_cast<std::size_t>(r.f * g + fp);
        ++covers[cell];
        seen[cell] = 1;
      }
      for (std::size_t c = 0; c < cells; ++c) curves[c] += seen[c];
      return true;
    });
  });

  StratumTable t;
  t.p = spec.p;
  t.k = spec.k;
  t.q = q;
  t.genus = g;
  t.mode = spec.mode;
  if (spec.mode == ScanMode::random) t.seed = seed;
  t.target = spec.target;
  t.curves = total;
  t.source = describe(spec);
  for (int f = 0; f <= g; ++f)
    for (int fp = 0; fp < g; ++fp) {
      std::uint64_t cv = 0, cu = 0;
      for (unsigned w = 0; w < workers; ++w) {
        cv += cover_counts[w][static_cast<std::size_t>(f * g + fp)];
        cu += curve_counts[w][static_cast<std::size_t>(f * g + fp)];
      }
      if (cv) t.covers[{f, fp}] = cv;
      if (cu) t.curves_with[{f, fp}] = cu;
    }
  return t;
}

std::string to_csv(const StratumTable& t, CountView view) {
  std::ostringstream o;
  o << "q,genus,f,f_prime,count,mode,seed\n";
  for (int f = 0; f <= t.genus; ++f)
    for (int fp = 0; fp < t.genus; ++fp) {
      const Stratum s{f, fp};
      if (t.target && *t.target != s) continue;
      o << t.q << ',' << t.genus << ',' << f << ',' << fp << ',' << t.count(s, view) << ',' << to_string(t.mode)
        << ',';
      if (t.seed) o << *t.seed;
      o << '\n';
    }
  return o.str();
}

nlohmann::json to_json(const StratumTable& t) {
  nlohmann::json strata = nlohmann::json::array();
  for (int f = 0; f <= t.genus; ++f)
    for (int fp = 0; fp < t.genus; ++fp) {
      const Stratum s{f, fp};
      if (t.target && *t.target != s) continue;
      strata.push_back({{"f", f}, {"f_prime", fp}, {"covers", t.count(s)}, {"curves", t.count(s, CountView::curve)}});
    }
  return nlohmann::json{{"p", t.p},
                        {"k", t.k},
                        {"q", t.q},
                        {"genus", t.genus},
                        {"mode", to_string(t.mode)},
                        {"seed", t.seed ? nlohmann::json(*t.seed) : nlohmann::json(nullptr)},
                        {"curves", t.curves},
                        {"covers_per_curve", t.covers_per_curve()},
                        {"source", t.source},
                        {"strata", strata}};
}

std::string to_string(WitnessPhase ph) {
  switch (ph) {
    case WitnessPhase::descent: return "descent";
    case WitnessPhase::exhaustive: return "exhaustive";
    case WitnessPhase::random: return "random";
  }
  return "?";
}

std::vector<FieldElement> descent_parameters(const Poly& h, const FieldCtx& target) {
  auto roots = rational_roots(embed(h, target));
  if (static_cast<int>(roots.size()) != h.degree() || roots.size() < 3)
    throw MathError("descent model does not split into distinct linear factors over " + target.spec());
  const FieldElement r0 = roots[0];
  const FieldElement u = (roots[1] - r0).inverse();
  std::vector<FieldElement> b;
  for (std::size_t i = 2; i < roots.size(); ++i) b.push_back((roots[i] - r0) * u);
  return sorted_by_index(std::move(b));
}

namespace {

WitnessCertificate make_certificate(const std::vector<FieldElement>& params, int genus, Stratum target, unsigned k,
                                    WitnessPhase phase, std::uint64_t index) {
  HyperellipticCurve x(family_polynomial(params));
  for (auto& d : cover_profile(x)) {
    if (d.f == target.f && d.f_prime == target.f_prime) {
      WitnessCertificate c{std::move(d), genus, target, k, phase, index, params, std::nullopt, std::nullopt};
      return c;
    }
  }
  throw std::logic_error("fast profile and Cartier cover profile disagree on " + x.to_string());
}

struct DescentModel {
  std::uint64_t index;
  Poly h;
  unsigned split;
};

std::vector<DescentModel> descent_models(std::uint32_t p, int genus, int f, unsigned max_k, std::uint64_t cap,
                                         std::vector<std::string>& notes) {
  const int d = 2 * genus + 1;
  const bool pinned = d % static_cast<int>(p) != 0;  // x^{d-1} coefficient fixed to zero
  const unsigned free = static_cast<unsigned>(pinned ? d - 1 : d);
  const std::uint64_t total = checked_pow(p, free);
  std::vector<DescentModel> out;
  if (total > cap) {
    notes.push_back("descent pass skipped: " + std::to_string(total) + " models over F_" + std::to_string(p) +
                    " exceed the cap");
    return out;
  }
  const FieldCtx& fp = build_field(p, 1);
  std::vector<std::int64_t> c(static_cast<std::size_t>(d + 1), 0);
  c[static_cast<std::size_t>(d)] = 1;
  for (std::uint64_t n = 0; n < total; ++n) {
    std::uint64_t m = n;
    for (unsigned i = 0; i < free; ++i) {
      c[i] = static_cast<std::int64_t>(m % p);
      m /= p;
    }
    Poly h = Poly::from_ints(fp, c);
    if (!is_squarefree(h)) continue;
    if (p_rank_unchecked(h) != f) continue;
    const unsigned split = splitting_degree(h);
    if (split > max_k) continue;
    out.push_back(DescentModel{n, std::move(h), split});
  }
  return out;
}

}  // namespace

WitnessOutcome witness_search(std::uint32_t p, int genus, Stratum target, const WitnessBudget& budget) {
  check_prime(p);
  check_genus(genus);
  check_target(genus, target);
  if (budget.max_k < 1 || budget.max_k > kMaxExtensionDegree) throw MathError("max_k out of range");

  WitnessOutcome out;
  std::vector<DescentModel> models;
  if (budget.descent) models = descent_models(p, genus, target.f, budget.max_k, budget.descent_cap, out.notes);

  for (unsigned k = 1; k <= budget.max_k; ++k) {
    out.max_k = k;
    const std::uint64_t q = checked_pow(p, k);
    if (q > kDefaultEnumerationCap) {
      out.notes.push_back("stopped before F_" + std::to_string(q) + ": field exceeds the enumeration cap");
      out.max_k = k - 1;
      break;
    }
    const FieldCtx& ctx = build_field(p, k);
    ProfileEvaluator evaluator(ctx, genus);

    for (const auto& m : models) {
      if (m.split != k) continue;
      ++out.curves_examined;
      auto params = descent_parameters(m.h, ctx);
      if (!profile_contains(evaluator.evaluate(family_branch_set(params)), target)) continue;
      out.certificate = make_certificate(params, genus, target, k, WitnessPhase::descent, m.index);
      out.certificate->descent_model = m.h;
      return out;
    }

    const FamilySpace space(ctx, genus);
    const bool exhaustive = space.size() <= budget.exhaustive_cap;
    const std::uint64_t total = exhaustive ? space.size() : (space.size() == 0 ? 0 : budget.samples);
    const ScanMode mode = exhaustive ? ScanMode::exhaustive : ScanMode::random;
    const unsigned workers = std::max(1u, budget.threads);
    std::vector<std::unique_ptr<ProfileEvaluator>> evaluators(workers);
    std::atomic<std::uint64_t> best{std::numeric_limits<std::uint64_t>::max()};
    std::mutex hit_mutex;
    std::vector<FieldElement> hit_params;

    for_blocks((total + kBlock - 1) / kBlock, workers, [&](std::uint64_t block, unsigned w) {
      if (block * kBlock > best.load()) return;
      if (!evaluators[w]) evaluators[w] = std::make_unique<ProfileEvaluator>(ctx, genus);
      visit_block(space, mode, budget.seed, total, block, [&](std::uint64_t i, const std::vector<FieldElement>& params) {
        if (!profile_contains(evaluators[w]->evaluate(family_branch_set(params)), target)) return true;
        std::lock_guard<std::mutex> lock(hit_mutex);
        if (i < best.load()) {
          best = i;
          hit_params = params;
        }
        return false;
      });
    });

    if (best.load() != std::numeric_limits<std::uint64_t>::max()) {
      out.curves_examined += best.load() + 1;
      out.certificate = make_certificate(hit_params, genus, target, k, exhaustive ? WitnessPhase::exhaustive
                                                                                  : WitnessPhase::random,
                                         best.load());
      if (!exhaustive) out.certificate->seed = budget.seed;
      return out;
    }
    out.curves_examined += total;
    if (!exhaustive)
      out.notes.push_back("F_" + std::to_string(q) + " sampled (" + std::to_string(total) + " of " +
                          std::to_string(space.size()) + " tuples)");
  }
  return out;
}

nlohmann::json to_json(const WitnessCertificate& c) {
  nlohmann::json j = to_json(c.cover);
  nlohmann::json params = nlohmann::json::array();
  for (const auto& e : c.parameters) params.push_back(to_string(e));
  j["genus"] = c.genus;
  j["target"] = {c.target.f, c.target.f_prime};
  j["k"] = c.k;
  j["phase"] = to_string(c.phase);
  j["scan_index"] = c.scan_index;
  j["parameters"] = params;
  j["seed"] = c.seed ? nlohmann::json(*c.seed) : nlohmann::json(nullptr);
  j["descent_model"] = c.descent_model ? nlohmann::json(to_string(*c.descent_model)) : nlohmann::json(nullptr);
  return j;
}

WitnessCertificate certificate_from_json(const nlohmann::json& j) {
  try {
    const FieldCtx& ctx = parse_field_spec(j.at("field").get<std::string>());
    std::vector<FieldElement> coeffs;
    for (const auto& s : j.at("f_coeffs")) coeffs.push_back(parse_element(ctx, s.get<std::string>()));
    HyperellipticCurve base(Poly(ctx, std::move(coeffs)));
    std::vector<CoverDatum> profile = cover_profile(base);

    WitnessCertificate c{profile.front(), j.at("genus").get<int>(),
                         Stratum{j.at("target").at(0).get<int>(), j.at("target").at(1).get<int>()},
                         j.at("k").get<unsigned>(), WitnessPhase::exhaustive, j.at("scan_index").get<std::uint64_t>(),
                         {}, std::nullopt, std::nullopt};
    const std::string phase = j.at("phase").get<std::string>();
    if (phase == "descent")
      c.phase = WitnessPhase::descent;
    else if (phase == "random")
      c.phase = WitnessPhase::random;
    else if (phase != "exhaustive")
      throw ParseError("unknown certificate phase '" + phase + "'");
    for (const auto& s : j.at("parameters")) c.parameters.push_back(parse_element(ctx, s.get<std::string>()));
    if (!j.at("seed").is_null()) c.seed = j.at("seed").get<std::uint64_t>();
    if (!j.at("descent_model").is_null())
      c.descent_model = parse_poly(build_field(ctx.p(), 1), j.at("descent_model").get<std::string>());

    const auto& part = j.at("partition");
    bool found = false;
    for (auto& d : profile) {
      auto names = [](const std::vector<BranchPoint>& v) {
        std::vector<std::string> s;
        for (const auto& b : v) s.push_back(to_string(b));
        return s;
      };
      if (names(d.partition.part1) == part.at(0).get<std::vector<std::string>>() &&
          names(d.partition.part2) == part.at(1).get<std::vector<std::string>>()) {
        c.cover = std::move(d);
        // Keep the claimed ranks so verification can compare them.
        c.cover.f = j.at("f").get<int>();
        c.cover.f_prime = j.at("f_prime").get<int>();
        c.cover.f_Y = j.at("f_Y").get<int>();
        found = true;
        break;
      }
    }
    if (!found) throw ParseError("certificate partition is not an even partition of the branch set");
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed certificate: ") + e.what());
  }
}

std::string to_string(ZetaCheck z) {
  switch (z) {
    case ZetaCheck::agree: return "agree";
    case ZetaCheck::disagree: return "disagree";
    case ZetaCheck::skipped: return "skipped";
  }
  return "?";
}

CertificateCheck verify_certificate(const WitnessCertificate& c, std::uint64_t counting_cap) {
  CertificateCheck r;
  const HyperellipticCurve& base = c.cover.base;
  const FieldCtx& ctx = base.ctx();
  std::ostringstream detail;

  try {
    r.rebuilt = !c.parameters.empty() && family_polynomial(c.parameters) == base.f() && ctx.k() == c.k;
    if (r.rebuilt && c.descent_model) r.rebuilt = descent_parameters(*c.descent_model, ctx) == c.parameters;
  } catch (const MathError&) {
    r.rebuilt = false;
  }
  if (!r.rebuilt) detail << "parameters do not rebuild the curve; ";

  // Cartier path, from the curve equation alone.
  r.f = p_rank(base);
  r.f_prime = 0;
  for (const auto* side : {&c.cover.partition.part1, &c.cover.partition.part2}) {
    auto sub = subcurve_from_part(*side, ctx);
    if (sub) r.f_prime += p_rank(*sub);
  }
  r.cartier = r.f == c.target.f && r.f_prime == c.target.f_prime && r.f == c.cover.f && r.f_prime == c.cover.f_prime &&
              c.cover.f_Y == c.cover.f + c.cover.f_prime;
  detail << "cartier (" << r.f << "," << r.f_prime << ")";
  if (r.f != c.cover.f || r.f_prime != c.cover.f_prime || c.cover.f_Y != c.cover.f + c.cover.f_prime)
    detail << " vs claimed (" << c.cover.f << "," << c.cover.f_prime << "," << c.cover.f_Y << ")";
  if (r.f != c.target.f || r.f_prime != c.target.f_prime) detail << " vs target (" << to_string(c.target) << ")";

  // Zeta path.
  bool skipped = false, mismatch = false;
  auto zeta_rank = [&](const HyperellipticCurve& x) -> std::optional<int> {
    if (checked_pow(x.ctx().size(), static_cast<unsigned>(x.genus())) > counting_cap) return std::nullopt;
    return p_rank_zeta(x, counting_cap);
  };
  std::optional<int> zf = zeta_rank(base);
  if (!zf && c.descent_model && r.rebuilt) zf = zeta_rank(HyperellipticCurve(*c.descent_model));
  int zfp = 0;
  if (!zf) skipped = true;
  else if (*zf != c.target.f) mismatch = true;
  for (const auto* side : {&c.cover.partition.part1, &c.cover.partition.part2}) {
    auto sub = subcurve_from_part(*side, ctx);
    if (!sub) continue;
    auto z = zeta_rank(*sub);
    if (!z) skipped = true;
    else zfp += *z;
  }
  if (!skipped && zfp != c.target.f_prime) mismatch = true;
  r.zeta = mismatch ? ZetaCheck::disagree : skipped ? ZetaCheck::skipped : ZetaCheck::agree;
  detail << ", zeta " << to_string(r.zeta);
  if (zf) detail << " (f=" << *zf << (skipped ? "" : ", f'=" + std::to_string(zfp)) << ")";
  r.detail = detail.str();
  return r;
}

GrowthReport growth_exponent(std::uint32_t p, int genus, Stratum s, const std::vector<unsigned>& k_list,
                             std::uint64_t cap, unsigned threads) {
  check_target(genus, s);
  if (k_list.size() < 2) throw MathError("growth needs at least two extension degrees");
  GrowthReport r;
  r.p = p;
  r.genus = genus;
  r.stratum = s;
  for (unsigned k : k_list) {
    ScanSpec spec;
    spec.p = p;
    spec.k = k;
    spec.genus = genus;
    spec.cap = cap;
    spec.threads = threads;
    r.tables.push_back(scan(spec));
  }
  for (std::size_t i = 0; i + 1 < r.tables.size(); ++i) {
    GrowthStep st;
    st.q_small = r.tables[i].q;
    st.q_large = r.tables[i + 1].q;
    st.n_small = r.tables[i].count(s, CountView::curve);
    st.n_large = r.tables[i + 1].count(s, CountView::curve);
    if (st.n_small > 0 && st.n_large > 0 && st.q_large != st.q_small)
      st.exponent = std::log(static_cast<double>(st.n_large) / static_cast<double>(st.n_small)) /
                    std::log(static_cast<double>(st.q_large) / static_cast<double>(st.q_small));
    r.steps.push_back(st);
  }
  return r;
}

nlohmann::json to_json(const GrowthReport& r) {
  nlohmann::json steps = nlohmann::json::array();
  for (const auto& st : r.steps)
    steps.push_back({{"q", st.q_small},
                     {"q_next", st.q_large},
                     {"curves", st.n_small},
                     {"curves_next", st.n_large},
                     {"exponent_approx", st.exponent ? nlohmann::json(*st.exponent) : nlohmann::json(nullptr)}});
  return nlohmann::json{{"p", r.p},
                        {"genus", r.genus},
                        {"stratum", {r.stratum.f, r.stratum.f_prime}},
                        {"count_view", "curve"},
                        {"steps", steps}};
}

Question parse_question(std::string_view text) {
  if (text == "prym-rank-zero") return Question::prym_rank_zero;
  if (text == "genus3-table") return Question::genus3_table;
  throw ParseError("question must be prym-rank-zero or genus3-table");
}

std::string to_string(Question q) { return q == Question::prym_rank_zero ? "prym-rank-zero" : "genus3-table"; }

namespace {

StratumTable genus3_table(std::uint32_t p, const ExploreBudget& budget) {
  unsigned k = 1;
  if (budget.table_k)
    k = *budget.table_k;
  else
    while (family_size(checked_pow(p, k), 3) == 0) ++k;
  ScanSpec spec;
  spec.p = p;
  spec.k = k;
  spec.genus = 3;
  spec.threads = budget.witness.threads;
  if (family_size(checked_pow(p, k), 3) > budget.table_cap) {
    spec.mode = ScanMode::random;
    spec.seed = budget.witness.seed;
    spec.samples = budget.table_samples;
  }
  return scan(spec);
}

}  // namespace

nlohmann::json explore_question(Question q, std::uint32_t p, const ExploreBudget& budget) {
  check_prime(p);
  nlohmann::json report{{"question", to_string(q)}, {"p", p}, {"genus", 3}, {"scope", kSliceLabel}};
  if (q == Question::genus3_table) {
    report["table"] = to_json(genus3_table(p, budget));
    return report;
  }

  WitnessOutcome w = witness_search(p, 3, Stratum{0, 0}, budget.witness);
  report["curves_examined"] = w.curves_examined;
  report["max_k"] = w.max_k;
  report["notes"] = w.notes;
  if (w.certificate) {
    const CertificateCheck check = verify_certificate(*w.certificate);
    report["status"] = "witness found";
    report["certificate"] = to_json(*w.certificate);
    report["verification"] = {{"rebuilt", check.rebuilt},
                              {"cartier", check.cartier},
                              {"zeta", to_string(check.zeta)},
                              {"detail", check.detail}};
    report["best_observed"] = {{"f", 0}, {"f_Y", 0}};
    return report;
  }
  report["status"] = "not found within budget";
  const StratumTable t = genus3_table(p, budget);
  std::optional<std::pair<int, int>> best;  // (f_Y, f)
  for (const auto& [s, n] : t.covers)
    if (n > 0 && (!best || std::pair{s.f + s.f_prime, s.f} < *best)) best = std::pair{s.f + s.f_prime, s.f};
  report["best_observed"] = best ? nlohmann::json{{"f", best->second}, {"f_Y", best->first}, {"q", t.q}}
                                 : nlohmann::json(nullptr);
  report["table"] = to_json(t);
  return report;
}

}  // namespace prymrank
