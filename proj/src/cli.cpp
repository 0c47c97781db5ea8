#include "prymrank/cli.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

#include "CLI11.hpp"
#include "prymrank/census.hpp"
#include "prymrank/symbolic.hpp"
#include "prymrank/zeta.hpp"

namespace prymrank {

std::string to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass: return "PASS";
    case CheckStatus::fail: return "FAIL";
    case CheckStatus::skipped: return "SKIP";
  }
  return "?";
}

namespace {

// Terms (coefficient, e_lambda, e_t1, e_t2) of the p = 5 entries.
struct Term {
  int c, el, e1, e2;
};
const std::vector<Term> kC3 = {{3, 2, 2, 2}, {3, 2, 2, 1}, {3, 2, 1, 2}, {3, 1, 2, 2}};
const std::vector<Term> kC4 = {{1, 2, 2, 2}, {4, 2, 2, 1}, {1, 2, 2, 0}, {4, 2, 1, 2}, {4, 2, 1, 1},
                               {1, 2, 0, 2}, {4, 1, 2, 2}, {4, 1, 2, 1}, {4, 1, 1, 2}, {1, 0, 2, 2}};
const std::vector<Term> kC8 = {{1, 2, 0, 0}, {4, 1, 1, 0}, {4, 1, 0, 1}, {4, 1, 0, 0}, {1, 0, 2, 0},
                               {4, 0, 1, 1}, {4, 0, 1, 0}, {1, 0, 0, 2}, {4, 0, 0, 1}, {1, 0, 0, 0}};
const std::vector<Term> kC9 = {{3, 1, 0, 0}, {3, 0, 1, 0}, {3, 0, 0, 1}, {3, 0, 0, 0}};

MvPoly from_terms(const FieldCtx& ctx, const std::vector<Term>& terms) {
  MvPoly m(ctx);
  for (const auto& t : terms)
    m.add_term(ctx.from_int(t.c), {static_cast<std::uint16_t>(t.el), static_cast<std::uint16_t>(t.e1),
                                   static_cast<std::uint16_t>(t.e2)});
  return m;
}

// Terms of m in printing order, for a term-by-term comparison.
std::vector<Term> ordered_terms(const MvPoly& m) {
  std::vector<Term> out;
  for (auto it = m.terms().rbegin(); it != m.terms().rend(); ++it)
    out.push_back(Term{static_cast<int>(it->second.coeff(0)), it->first[0], it->first[1], it->first[2]});
  return out;
}

bool same_terms(const std::vector<Term>& a, const std::vector<Term>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i].c != b[i].c || a[i].el != b[i].el || a[i].e1 != b[i].e1 || a[i].e2 != b[i].e2) return false;
  return true;
}

// (t1 + 4 t2)^2 (t1^2 t2 + t1 t2^2 + a^17 t1^2 + a^17 t2^2 + a^5 t1 t2 + a^4 t1 + a^4 t2)
MvPoly factored_d(const FieldElement& a) {
  const FieldCtx& F = a.ctx();
  auto mono = [&](const FieldElement& c, int e1, int e2) {
    return MvPoly::monomial(c, {0, static_cast<std::uint16_t>(e1), static_cast<std::uint16_t>(e2)});
  };
  MvPoly lin = mono(F.one(), 1, 0) + mono(F.from_int(4), 0, 1);
  MvPoly cubic = mono(F.one(), 2, 1) + mono(F.one(), 1, 2) + mono(a.pow(17), 2, 0) + mono(a.pow(17), 0, 2) +
                 mono(a.pow(5), 1, 1) + mono(a.pow(4), 1, 0) + mono(a.pow(4), 0, 1);
  return lin * lin * cubic;
}

std::string modulus_text(const FieldCtx& F) {
  std::vector<std::int64_t> c(F.modulus().begin(), F.modulus().end());
  return to_pretty(Poly::from_ints(build_field(F.p(), 1), c));
}

CheckResult check(std::string name, bool ok, std::string detail) {
  return CheckResult{std::move(name), ok ? CheckStatus::pass : CheckStatus::fail, std::move(detail)};
}

std::vector<CheckResult> golden_p5(std::optional<std::vector<std::uint32_t>> modulus) {
  std::vector<CheckResult> out;
  const FieldCtx& fp = build_field(5, 1);
  const FieldCtx& F = build_field(5, 2, modulus ? modulus : std::vector<std::uint32_t>{2, 4, 1});
  const std::string mod = modulus_text(F);
  const std::vector<std::int64_t> mod_coeffs(F.modulus().begin(), F.modulus().end());
  const std::vector<FieldElement> roots = rational_roots(Poly::from_ints(F, mod_coeffs));

  // Symbolic entries, term for term in printing order.
  const SymbolicCartier s = symbolic_cartier_entries(5);
  {
    std::string bad;
    const std::pair<const char*, std::pair<const MvPoly*, const std::vector<Term>*>> entries[] = {
        {"c3", {&s.c_p_minus_2, &kC3}},
        {"c4", {&s.c_p_minus_1, &kC4}},
        {"c8", {&s.c_2p_minus_2, &kC8}},
        {"c9", {&s.c_2p_minus_1, &kC9}}};
    for (const auto& [name, e] : entries)
      if (!same_terms(ordered_terms(*e.first), *e.second) || *e.first != from_terms(fp, *e.second)) bad += name + std::string(" ");
    out.push_back(check("symbolic-entries", bad.empty(),
                        bad.empty() ? "c3, c4, c8, c9 match term for term" : "mismatch in " + bad));
  }

  // D at lambda = a^4 against the factored form, for each root a of the modulus.
  {
    const MvPoly d = d_poly(s);
    std::string detail;
    bool exact = false;
    for (std::size_t i = 0; i < roots.size(); ++i) {
      const FieldElement& a = roots[i];
      const MvPoly lhs = specialize(d, a.pow(4), std::nullopt, std::nullopt);
      const MvPoly rhs = factored_d(a);
      detail += "a=" + to_string(a) + ": ";
      if (lhs == rhs) {
        exact = true;
        detail += "exact match; ";
        continue;
      }
      std::optional<unsigned> unit;
      for (unsigned e = 1; e + 1 < F.size() && !unit; ++e)
        if (MvPoly::constant(a.pow(e)) * rhs == lhs) unit = e;
      detail += unit ? "equal up to the unit a^" + std::to_string(*unit) + "; " : "not proportional; ";
    }
    if (!exact && roots.size() == 2 && !is_supersingular_lambda(roots[0].pow(4)) &&
        !is_supersingular_lambda(roots[1].pow(4)))
      detail += "a^4 is not supersingular for either root of " + mod + ", so a is not the intended generator";
    out.push_back(check("d-factorization", exact, detail));
  }

  // lambda = a^4 supersingular for the roots of the modulus.
  std::optional<FieldElement> a_ss;
  {
    std::string detail;
    for (const auto& a : roots) {
      const bool ss = is_supersingular_lambda(a.pow(4));
      if (ss && !a_ss) a_ss = a;
      detail += "a=" + to_string(a) + ": a^4=" + to_string(a.pow(4)) + (ss ? " supersingular; " : " ordinary; ");
    }
    out.push_back(check("supersingular-lambda", a_ss.has_value(), detail + "modulus " + mod));
  }

  // Deuring polynomial: both roots in F_25, none in F_5.
  {
    const Poly h = deuring_polynomial(5);
    const auto in_f25 = rational_roots(embed(h, F));
    const auto in_f5 = rational_roots(h);
    out.push_back(check("deuring-roots", in_f25.size() == 2 && in_f5.empty(),
                        "H_5 = " + to_pretty(h) + ": " + std::to_string(in_f25.size()) + " roots in F_25, " +
                            std::to_string(in_f5.size()) + " in F_5"));
  }

  // (lambda, t1, t2) = (a^4, a^16, a): p-rank 1 by both paths, a cover with f' = 0.
  if (a_ss) {
    const FieldElement a = *a_ss;
    HyperellipticCurve x(family_polynomial({a.pow(4), a.pow(16), a}));
    const int cart = p_rank(x);
    const int zeta = p_rank_zeta(x);
    out.push_back(check("witness-p-rank", cart == 1 && zeta == 1,
                        "cartier " + std::to_string(cart) + ", zeta " + std::to_string(zeta) + " for " + x.to_string()));
    int zero_covers = 0;
    for (const auto& d : cover_profile(x)) zero_covers += d.f_prime == 0;
    out.push_back(check("witness-prym", cart == 1 && zero_covers > 0,
                        std::to_string(zero_covers) + " covers with f'=0, (f,f')=(" + std::to_string(cart) + ",0)"));
  } else {
    out.push_back({"witness-p-rank", CheckStatus::fail, "needs a root a with a^4 supersingular"});
    out.push_back({"witness-prym", CheckStatus::fail, "needs a root a with a^4 supersingular"});
  }

  // y^2 = x(x^4 + x^3 + 2x + 3) over F_5 and its splitting field.
  {
    const Poly f = Poly::from_ints(fp, {0, 3, 2, 0, 1, 1});
    HyperellipticCurve x(f);
    const unsigned split = splitting_degree(f);
    const int cart = p_rank(x);
    const int zeta = p_rank_zeta(x);
    const FieldCtx& E = build_field(5, split);
    int zero_zero = 0;
    for (const auto& d : cover_profile(HyperellipticCurve(embed(f, E)))) zero_zero += d.f == 0 && d.f_prime == 0;
    out.push_back(check("p-rank-zero-curve", cart == 0 && zeta == 0 && zero_zero > 0,
                        "splitting field F_" + std::to_string(E.size()) + ", cartier " + std::to_string(cart) +
                            ", zeta " + std::to_string(zeta) + ", " + std::to_string(zero_zero) +
                            " covers with (f,f')=(0,0)"));
  }
  return out;
}

std::vector<CheckResult> generic_checks(std::uint32_t p) {
  std::vector<CheckResult> out;
  const Poly h = deuring_polynomial(p);
  const bool split = is_squarefree(h) && splitting_degree(h) <= 2;
  out.push_back(check("deuring-roots", split,
                      "H_" + std::to_string(p) + " has " + std::to_string(h.degree()) +
                          (split ? " distinct roots, all in F_p^2" : " roots, not all distinct in F_p^2")));
  const FieldCtx& F = build_field(p, 2);
  if (family_size(F.size(), 2) > 0) {
    HyperellipticCurve x(family_polynomial(family_parameters(F, 2, 0)));
    const int cart = p_rank(x);
    const int zeta = p_rank_zeta(x);
    out.push_back(check("oracle-agreement", cart == zeta,
                        "cartier " + std::to_string(cart) + ", zeta " + std::to_string(zeta) + " for " + x.to_string()));
  }
  for (const char* name : {"symbolic-entries", "d-factorization", "supersingular-lambda", "witness-p-rank",
                           "witness-prym", "p-rank-zero-curve"})
    out.push_back({name, CheckStatus::skipped, "golden data exists for p=5 only"});
  return out;
}

}  // namespace

std::vector<CheckResult> golden_checks(std::uint32_t p, std::optional<std::vector<std::uint32_t>> modulus) {
  if (p < 3 || !is_prime(p)) throw MathError("p must be an odd prime");
  if (p != 5) return generic_checks(p);
  return golden_p5(std::move(modulus));
}

namespace {

enum class Format { csv, json, pretty };

struct Globals {
  std::string format;
  std::uint64_t enumeration_cap = kDefaultEnumerationCap;
  std::uint64_t counting_cap = kDefaultCountingCap;
  int genus_cap = kDefaultGenusCap;
  std::optional<std::uint64_t> seed;
  unsigned threads = 1;
};

Format format_of(const Globals& g, Format fallback) {
  if (g.format.empty()) return fallback;
  if (g.format == "csv") return Format::csv;
  if (g.format == "json") return Format::json;
  if (g.format == "pretty") return Format::pretty;
  throw ParseError("format must be csv, json or pretty");
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

std::string matrix_rows(const FieldMatrix& m) {
  std::string s;
  for (std::size_t i = 0; i < m.size(); ++i) {
    s += "  [";
    for (std::size_t j = 0; j < m.size(); ++j) s += (j ? " " : "") + to_string(m.at(i, j));
    s += "]\n";
  }
  return s;
}

nlohmann::json matrix_json(const FieldMatrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < m.size(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t j = 0; j < m.size(); ++j) row.push_back(to_string(m.at(i, j)));
    rows.push_back(row);
  }
  return rows;
}

std::uint64_t pow_saturating(std::uint64_t b, int e) {
  std::uint64_t r = 1;
  for (int i = 0; i < e; ++i) r = r > UINT64_MAX / b ? UINT64_MAX : r * b;
  return r;
}

int cmd_prank(const Globals& g, const std::string& field, const std::string& poly, std::ostream& out) {
  const FieldCtx& ctx = parse_field_spec(field);
  HyperellipticCurve x(parse_poly(ctx, poly));
  if (x.genus() > g.genus_cap)
    throw CapExceeded("genus " + std::to_string(x.genus()) + " exceeds the genus cap " + std::to_string(g.genus_cap));
  const FieldMatrix m = cartier_matrix(x);
  const int rank = p_rank(x, g.genus_cap);
  std::optional<LPolynomial> l;
  if (pow_saturating(ctx.size(), x.genus()) <= g.counting_cap) l = l_polynomial(x, g.counting_cap);
  const int zeta = l ? degree_mod_p(l->coeffs, ctx.p()) : -1;  // -1: not counted
  const std::string status = !l ? "skipped" : zeta == rank ? "agree" : "disagree";

  switch (format_of(g, Format::pretty)) {
    case Format::pretty:
      out << "curve:   y^2 = " << to_pretty(x.f()) << " over " << ctx.spec() << "\n"
          << "genus:   " << x.genus() << "\n"
          << "p-rank:  " << rank << "\n"
          << "cartier matrix:\n"
          << matrix_rows(m) << "zeta:    " << status;
      if (l) out << " (p-rank " << zeta << ")";
      out << "\n";
      break;
    case Format::json: {
      nlohmann::json j{{"field", ctx.spec()},         {"f", to_string(x.f())}, {"genus", x.genus()},
                       {"p_rank", rank},              {"cartier_matrix", matrix_json(m)},
                       {"zeta", {{"status", status}}}};
      if (l) {
        j["zeta"]["p_rank"] = zeta;
        j["zeta"]["l_polynomial"] = l->coeffs;
      }
      out << j.dump(2) << "\n";
      break;
    }
    case Format::csv:
      out << "field,f,genus,p_rank,zeta_p_rank,zeta_status\n"
          << csv_quote(ctx.spec()) << ',' << csv_quote(to_string(x.f())) << ',' << x.genus() << ',' << rank << ','
          << (l ? std::to_string(zeta) : "") << ',' << status << "\n";
      break;
  }
  return status == "disagree" ? kExitVerification : kExitOk;
}

std::string part_text(const std::vector<BranchPoint>& part) {
  std::string s;
  for (const auto& b : part) s += (s.empty() ? "" : " ") + to_string(b);
  return s;
}

int cmd_covers(const Globals& g, const std::string& field, const std::string& poly, bool extend, std::ostream& out) {
  const FieldCtx& base_ctx = parse_field_spec(field);
  Poly f = parse_poly(base_ctx, poly);
  HyperellipticCurve check_only(f);
  if (check_only.genus() > 3) throw CapExceeded("cover enumeration supports genus 1..3");
  const unsigned split = splitting_degree(f);
  if (split > 1) {
    if (!extend)
      throw MathError("branch points are not all rational over " + base_ctx.spec() + " (they need degree " +
                      std::to_string(split) + "); pass --extend");
    const unsigned k = base_ctx.k() * split;
    if (k > kMaxExtensionDegree) throw CapExceeded("splitting field degree exceeds the extension cap");
    f = embed(f, build_field(base_ctx.p(), k));
  }
  HyperellipticCurve x(f);
  const auto profile = cover_profile(x);
  const ThetaReport theta = theta_two_torsion_report(profile);
  const std::string theta_line = theta.contains_order_2
                                     ? "theta divisor contains a point of order 2 (" +
                                           std::to_string(theta.witnesses.size()) + " non-ordinary Pryms)"
                                     : "theta divisor contains no point of order 2";

  switch (format_of(g, Format::pretty)) {
    case Format::pretty: {
      out << "curve: y^2 = " << to_pretty(x.f()) << " over " << x.ctx().spec() << "\n";
      if (split > 1) out << "extended from " << base_ctx.spec() << " (degree " << split << ")\n";
      out << "genus " << x.genus() << ", " << profile.size() << " covers\n";
      out << std::left << std::setw(5) << "#" << std::setw(4) << "f" << std::setw(4) << "f'" << std::setw(5) << "f_Y"
          << "partition\n";
      for (std::size_t i = 0; i < profile.size(); ++i) {
        const auto& d = profile[i];
        out << std::left << std::setw(5) << i << std::setw(4) << d.f << std::setw(4) << d.f_prime << std::setw(5)
            << d.f_Y << "{" << part_text(d.partition.part1) << "} | {" << part_text(d.partition.part2) << "}\n";
      }
      out << theta_line << "\n";
      break;
    }
    case Format::json: {
      nlohmann::json covers = nlohmann::json::array();
      for (const auto& d : profile) covers.push_back(to_json(d));
      out << nlohmann::json{{"field", x.ctx().spec()},
                            {"base_field", base_ctx.spec()},
                            {"f", to_string(x.f())},
                            {"genus", x.genus()},
                            {"covers", covers},
                            {"theta", {{"contains_order_2", theta.contains_order_2},
                                       {"non_ordinary_pryms", theta.witnesses.size()}}}}
                 .dump(2)
          << "\n";
      break;
    }
    case Format::csv:
      out << "index,part1,part2,f,f_prime,f_Y\n";
      for (std::size_t i = 0; i < profile.size(); ++i) {
        const auto& d = profile[i];
        out << i << ',' << csv_quote(part_text(d.partition.part1)) << ',' << csv_quote(part_text(d.partition.part2))
            << ',' << d.f << ',' << d.f_prime << ',' << d.f_Y << "\n";
      }
      break;
  }
  return kExitOk;
}

int cmd_golden(const Globals& g, std::uint32_t p, const std::string& modulus, std::ostream& out) {
  std::optional<std::vector<std::uint32_t>> mod;
  if (!modulus.empty()) {
    mod.emplace();
    std::stringstream ss(modulus);
    for (std::string part; std::getline(ss, part, ',');) {
      if (part.empty() || part.find_first_not_of("0123456789") != std::string::npos)
        throw ParseError("modulus must be comma-separated coefficients, constant term first");
      mod->push_back(static_cast<std::uint32_t>(std::stoul(part)));
    }
  }
  const auto checks = golden_checks(p, mod);
  bool failed = false;
  for (const auto& c : checks) failed |= c.status == CheckStatus::fail;
  switch (format_of(g, Format::pretty)) {
    case Format::pretty:
      for (const auto& c : checks) out << to_string(c.status) << "  " << c.name << ": " << c.detail << "\n";
      out << (failed ? "some checks failed" : "all checks passed") << "\n";
      break;
    case Format::json: {
      nlohmann::json arr = nlohmann::json::array();
      for (const auto& c : checks) arr.push_back({{"name", c.name}, {"status", to_string(c.status)}, {"detail", c.detail}});
      out << nlohmann::json{{"p", p}, {"checks", arr}, {"passed", !failed}}.dump(2) << "\n";
      break;
    }
    case Format::csv:
      out << "name,status,detail\n";
      for (const auto& c : checks) out << c.name << ',' << to_string(c.status) << ',' << csv_quote(c.detail) << "\n";
      break;
  }
  return failed ? kExitVerification : kExitOk;
}

struct CensusArgs {
  std::uint32_t p = 0;
  unsigned k = 1;
  int genus = 2;
  std::string mode = "exhaustive";
  std::uint64_t samples = 10000;
  std::string target;
  std::string view = "cover";
};

std::string table_pretty(const StratumTable& t, CountView view) {
  std::ostringstream o;
  o << "q=" << t.q << " genus=" << t.genus << " mode=" << to_string(t.mode);
  if (t.seed) o << " seed=" << *t.seed;
  o << " curves=" << t.curves << " (" << (view == CountView::cover ? "cover-wise" : "curve-wise") << ")\n";
  o << std::left << std::setw(4) << "f" << std::setw(4) << "f'" << "count\n";
  for (int f = 0; f <= t.genus; ++f)
    for (int fp = 0; fp < t.genus; ++fp) {
      if (t.target && *t.target != Stratum{f, fp}) continue;
      o << std::left << std::setw(4) << f << std::setw(4) << fp << t.count({f, fp}, view) << "\n";
    }
  return o.str();
}

int cmd_census(const Globals& g, const CensusArgs& a, std::ostream& out) {
  ScanSpec spec;
  spec.p = a.p;
  spec.k = a.k;
  spec.genus = a.genus;
  spec.mode = parse_scan_mode(a.mode);
  spec.seed = g.seed;
  spec.samples = a.samples;
  if (!a.target.empty()) spec.target = parse_stratum(a.target);
  spec.cap = g.enumeration_cap;
  spec.threads = g.threads;
  if (a.view != "cover" && a.view != "curve") throw ParseError("view must be cover or curve");
  const CountView view = a.view == "cover" ? CountView::cover : CountView::curve;
  const StratumTable t = scan(spec);
  switch (format_of(g, Format::csv)) {
    case Format::csv: out << to_csv(t, view); break;
    case Format::json: out << to_json(t).dump(2) << "\n"; break;
    case Format::pretty: out << table_pretty(t, view); break;
  }
  return kExitOk;
}

struct WitnessArgs {
  std::uint32_t p = 0;
  int genus = 2;
  std::string target;
  unsigned max_k = 4;
  std::uint64_t samples = 20000;
  std::uint64_t exhaustive_cap = std::uint64_t{1} << 20;
  bool no_descent = false;
};

WitnessBudget budget_of(const Globals& g, const WitnessArgs& a) {
  WitnessBudget b;
  b.max_k = a.max_k;
  b.samples = a.samples;
  b.exhaustive_cap = a.exhaustive_cap;
  b.seed = g.seed.value_or(1);
  b.descent = !a.no_descent;
  b.descent_cap = g.enumeration_cap;
  b.threads = g.threads;
  return b;
}

nlohmann::json check_json(const CertificateCheck& c) {
  return {{"rebuilt", c.rebuilt}, {"cartier", c.cartier}, {"zeta", to_string(c.zeta)}, {"detail", c.detail}};
}

int cmd_witness(const Globals& g, const WitnessArgs& a, std::ostream& out) {
  const Stratum target = parse_stratum(a.target);
  const WitnessOutcome w = witness_search(a.p, a.genus, target, budget_of(g, a));
  std::optional<CertificateCheck> check;
  if (w.certificate) check = verify_certificate(*w.certificate, g.counting_cap);
  const bool bad = check && (!check->rebuilt || !check->cartier || check->zeta == ZetaCheck::disagree);

  switch (format_of(g, Format::json)) {
    case Format::json:
    case Format::csv: {
      nlohmann::json j{{"p", a.p},
                       {"genus", a.genus},
                       {"target", {target.f, target.f_prime}},
                       {"status", w.certificate ? "found" : "exhausted"},
                       {"max_k", w.max_k},
                       {"curves_examined", w.curves_examined},
                       {"notes", w.notes}};
      if (w.certificate) {
        j["certificate"] = to_json(*w.certificate);
        j["verification"] = check_json(*check);
      }
      out << j.dump(2) << "\n";
      break;
    }
    case Format::pretty:
      out << "target (f,f')=(" << to_string(target) << ") genus " << a.genus << " p=" << a.p << ": "
          << (w.certificate ? "found" : "exhausted") << " after " << w.curves_examined << " curves, k <= " << w.max_k
          << "\n";
      if (w.certificate) {
        const auto& c = *w.certificate;
        out << "curve: y^2 = " << to_pretty(c.cover.base.f()) << " over " << c.cover.base.ctx().spec() << "\n"
            << "cover: {" << part_text(c.cover.partition.part1) << "} | {" << part_text(c.cover.partition.part2)
            << "}\n"
            << "found by " << to_string(c.phase) << " pass, index " << c.scan_index << "\n"
            << "verification: " << check->detail << "\n";
      }
      for (const auto& n : w.notes) out << "note: " << n << "\n";
      break;
  }
  return bad ? kExitVerification : kExitOk;
}

int cmd_verify_certificate(const Globals& g, const std::string& path, std::ostream& out) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read " + path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (j.contains("certificate")) j = j["certificate"];
  const CertificateCheck c = verify_certificate(certificate_from_json(j), g.counting_cap);
  const bool bad = !c.rebuilt || !c.cartier || c.zeta == ZetaCheck::disagree;
  if (format_of(g, Format::pretty) == Format::pretty)
    out << (bad ? "FAIL" : "OK") << "  " << c.detail << "\n";
  else
    out << check_json(c).dump(2) << "\n";
  return bad ? kExitVerification : kExitOk;
}

std::vector<unsigned> parse_k_list(const std::string& text) {
  std::vector<unsigned> out;
  std::stringstream ss(text);
  for (std::string part; std::getline(ss, part, ',');) {
    if (part.empty() || part.find_first_not_of("0123456789") != std::string::npos)
      throw ParseError("k list must be comma-separated integers");
    out.push_back(static_cast<unsigned>(std::stoul(part)));
  }
  return out;
}

int cmd_growth(const Globals& g, std::uint32_t p, int genus, const std::string& stratum, const std::string& ks,
               std::ostream& out) {
  const GrowthReport r = growth_exponent(p, genus, parse_stratum(stratum), parse_k_list(ks), g.enumeration_cap,
                                         g.threads);
  switch (format_of(g, Format::json)) {
    case Format::json: out << to_json(r).dump(2) << "\n"; break;
    case Format::csv:
      out << "q,q_next,curves,curves_next,exponent_approx\n";
      for (const auto& s : r.steps) {
        out << s.q_small << ',' << s.q_large << ',' << s.n_small << ',' << s.n_large << ',';
        if (s.exponent) out << std::setprecision(6) << *s.exponent;
        out << "\n";
      }
      break;
    case Format::pretty:
      out << "stratum (" << to_string(r.stratum) << "), genus " << genus << ", curve-wise counts\n";
      for (const auto& s : r.steps) {
        out << "q=" << s.q_small << " -> " << s.q_large << ": " << s.n_small << " -> " << s.n_large << ", exponent ";
        if (s.exponent)
          out << "~" << std::setprecision(4) << *s.exponent;
        else
          out << "undefined";
        out << "\n";
      }
      break;
  }
  return kExitOk;
}

int cmd_explore(const Globals& g, const std::string& question, std::uint32_t p, const WitnessArgs& a,
                std::optional<unsigned> table_k, std::uint64_t table_samples, std::ostream& out) {
  ExploreBudget b;
  b.witness = budget_of(g, a);
  b.table_k = table_k;
  b.table_samples = table_samples;
  const nlohmann::json r = explore_question(parse_question(question), p, b);
  if (format_of(g, Format::json) == Format::pretty) {
    out << r.value("question", "") << " p=" << p << " (" << kSliceLabel << ")\n";
    if (r.contains("status")) out << "status: " << r["status"].get<std::string>() << "\n";
    if (r.contains("best_observed") && !r["best_observed"].is_null())
      out << "best observed (f, f_Y): (" << r["best_observed"]["f"] << ", " << r["best_observed"]["f_Y"] << ")\n";
    if (r.contains("verification")) out << "verification: " << r["verification"]["detail"].get<std::string>() << "\n";
    if (r.contains("table"))
      for (const auto& s : r["table"]["strata"])
        out << "  (" << s["f"] << "," << s["f_prime"] << ") covers=" << s["covers"] << " curves=" << s["curves"] << "\n";
  } else {
    out << r.dump(2) << "\n";
  }
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"p-ranks of hyperelliptic curves and of Pryms of their unramified double covers"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.set_config("--config", "", "key=value file for the options below");
  app.add_option("--format", g.format, "output format: csv, json or pretty")
      ->check(CLI::IsMember({"csv", "json", "pretty"}));
  app.add_option("--enumeration-cap", g.enumeration_cap, "largest field / parameter space enumerated")
      ->check(CLI::PositiveNumber);
  app.add_option("--counting-cap", g.counting_cap, "largest q^m used for point counting")->check(CLI::PositiveNumber);
  app.add_option("--genus-cap", g.genus_cap, "largest genus for Cartier computations")->check(CLI::PositiveNumber);
  app.add_option("--seed", g.seed, "seed for sampled scans");
  app.add_option("--threads", g.threads, "worker threads (results do not depend on it)")->check(CLI::PositiveNumber);

  std::string field, poly;
  bool extend = false;
  auto* prank = app.add_subcommand("prank", "p-rank, Cartier matrix and zeta cross-check of y^2 = f(x)");
  prank->add_option("--field", field, "field, e.g. p=5 or p=5,k=2,mod=2,4,1")->required();
  prank->add_option("--f", poly, "coefficients of f, constant term first")->required();

  auto* covers = app.add_subcommand("covers", "all unramified double covers with their p-ranks");
  covers->add_option("--field", field, "field")->required();
  covers->add_option("--f", poly, "coefficients of f, constant term first")->required();
  covers->add_flag("--extend", extend, "move to the splitting field of f when needed");

  std::uint32_t golden_p = 5;
  std::string golden_mod;
  auto* golden = app.add_subcommand("verify-golden", "golden p = 5 genus-2 checks");
  golden->add_option("--p", golden_p, "prime");
  golden->add_option("--modulus", golden_mod, "modulus of F_25 defining a, constant term first (default 2,4,1)");

  CensusArgs ca;
  auto* census = app.add_subcommand("census", "stratum table over the normalized family");
  census->add_option("--p", ca.p, "prime")->required();
  census->add_option("--k", ca.k, "extension degree");
  census->add_option("--genus", ca.genus, "2 or 3");
  census->add_option("--mode", ca.mode, "exhaustive or random");
  census->add_option("--samples", ca.samples, "samples in random mode");
  census->add_option("--target", ca.target, "only report stratum f,f'");
  census->add_option("--view", ca.view, "cover (one count per cover) or curve (one per curve)");

  WitnessArgs wa;
  auto* witness = app.add_subcommand("witness", "search for a cover in stratum (f, f')");
  witness->add_option("--p", wa.p, "prime")->required();
  witness->add_option("--genus", wa.genus, "2 or 3");
  witness->add_option("--target", wa.target, "f,f'")->required();
  witness->add_option("--max-k", wa.max_k, "largest extension degree");
  witness->add_option("--samples", wa.samples, "samples per field beyond the exhaustive cap");
  witness->add_option("--exhaustive-cap", wa.exhaustive_cap, "family tuples enumerated exhaustively per field");
  witness->add_flag("--no-descent", wa.no_descent, "skip the pass over models defined over F_p");

  std::string cert_path;
  auto* verify_cert = app.add_subcommand("verify-certificate", "re-derive a witness certificate");
  verify_cert->add_option("--file", cert_path, "certificate JSON (witness output accepted)")->required();

  std::uint32_t gp = 0;
  int ggenus = 2;
  std::string gstratum, gks = "1,2";
  auto* growth = app.add_subcommand("growth", "growth exponent of curve-wise stratum counts");
  growth->add_option("--p", gp, "prime")->required();
  growth->add_option("--genus", ggenus, "2 or 3");
  growth->add_option("--stratum", gstratum, "f,f'")->required();
  growth->add_option("--k-list", gks, "extension degrees, e.g. 2,3");

  std::string question;
  std::uint32_t ep = 0;
  WitnessArgs ea;
  std::optional<unsigned> table_k;
  std::uint64_t table_samples = 20000;
  auto* explore = app.add_subcommand("explore", "genus-3 hyperelliptic exploration");
  explore->add_option("--question", question, "prym-rank-zero or genus3-table")->required();
  explore->add_option("--p", ep, "prime")->required();
  explore->add_option("--max-k", ea.max_k, "largest extension degree for the witness search");
  explore->add_option("--samples", ea.samples, "samples per field beyond the exhaustive cap");
  explore->add_option("--table-k", table_k, "extension degree of the genus-3 table");
  explore->add_option("--table-samples", table_samples, "samples when the table is sampled");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*prank) return cmd_prank(g, field, poly, out);
    if (*covers) return cmd_covers(g, field, poly, extend, out);
    if (*golden) return cmd_golden(g, golden_p, golden_mod, out);
    if (*census) return cmd_census(g, ca, out);
    if (*witness) return cmd_witness(g, wa, out);
    if (*verify_cert) return cmd_verify_certificate(g, cert_path, out);
    if (*growth) return cmd_growth(g, gp, ggenus, gstratum, gks, out);
    if (*explore) return cmd_explore(g, question, ep, ea, table_k, table_samples, out);
  } catch (const CapExceeded& e) {
    err << "cap exceeded: " << e.what() << "\n";
    return kExitCap;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitUsage;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"prymrank"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace prymrank
