#include "prymrank/symbolic.hpp"

#include <algorithm>
#include <vector>

namespace prymrank {

MvPoly MvPoly::constant(const FieldElement& c) { return monomial(c, {0, 0, 0}); }

MvPoly MvPoly::variable(const FieldCtx& ctx, Var v) {
  Exponents e{0, 0, 0};
  e[static_cast<int>(v)] = 1;
  return monomial(ctx.one(), e);
}

MvPoly MvPoly::monomial(const FieldElement& c, Exponents e) {
  MvPoly m(c.ctx());
  m.add_term(c, e);
  return m;
}

FieldElement MvPoly::coeff(Exponents e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? ctx_->zero() : it->second;
}

void MvPoly::require_same(const MvPoly& o) const {
  if (ctx_ != o.ctx_) throw MathError("multivariate polynomial field context mismatch");
}

void MvPoly::add_term(const FieldElement& c, Exponents e) {
  if (c.ctx_ptr() != ctx_) throw MathError("multivariate polynomial field context mismatch");
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

MvPoly& MvPoly::operator+=(const MvPoly& o) {
  require_same(o);
  for (const auto& [e, c] : o.terms_) add_term(c, e);
  return *this;
}

MvPoly& MvPoly::operator-=(const MvPoly& o) {
  require_same(o);
  for (const auto& [e, c] : o.terms_) add_term(-c, e);
  return *this;
}

MvPoly& MvPoly::operator*=(const MvPoly& o) {
  require_same(o);
  MvPoly r(*ctx_);
  for (const auto& [ea, ca] : terms_)
    for (const auto& [eb, cb] : o.terms_)
      r.add_term(ca * cb, {static_cast<std::uint16_t>(ea[0] + eb[0]), static_cast<std::uint16_t>(ea[1] + eb[1]),
                           static_cast<std::uint16_t>(ea[2] + eb[2])});
  *this = std::move(r);
  return *this;
}

MvPoly mv_arith(const MvPoly& a, const MvPoly& b, MvOp op) { return op == MvOp::add ? a + b : a * b; }

namespace {

// Polynomial in x with MvPoly coefficients, index = x-degree.
using XPoly = std::vector<MvPoly>;

XPoly mul_truncated(const XPoly& a, const XPoly& b, std::size_t max_degree, const FieldCtx& ctx) {
  XPoly r(std::min(a.size() + b.size() - 1, max_degree + 1), MvPoly(ctx));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.size() && i + j <= max_degree; ++j) {
      if (b[j].is_zero()) continue;
      r[i + j] += a[i] * b[j];
    }
  }
  return r;
}

}  // namespace

SymbolicCartier symbolic_cartier_entries(std::uint32_t p) {
  if (p > kSymbolicPrimeCap)
    throw CapExceeded("symbolic expansion supports p <= " + std::to_string(kSymbolicPrimeCap));
  const FieldCtx& fp = build_field(p, 1);
  const std::size_t max_degree = 2 * p - 1;

  // x - r for r in {0, 1, lambda, t1, t2}
  auto linear = [&](const MvPoly& root) { return XPoly{MvPoly(fp) - root, MvPoly::constant(fp.one())}; };
  XPoly f{MvPoly::constant(fp.one())};
  for (const MvPoly& root : {MvPoly(fp), MvPoly::constant(fp.one()), MvPoly::variable(fp, Var::lambda),
                             MvPoly::variable(fp, Var::t1), MvPoly::variable(fp, Var::t2)})
    f = mul_truncated(f, linear(root), max_degree, fp);

  XPoly power{MvPoly::constant(fp.one())};
  for (std::uint32_t i = 0; i < (p - 1) / 2; ++i) power = mul_truncated(power, f, max_degree, fp);
  power.resize(max_degree + 1, MvPoly(fp));

  return SymbolicCartier{p, power[p - 1], power[p - 2], power[2 * p - 1], power[2 * p - 2]};
}

MvPoly d_poly(const SymbolicCartier& c) { return c.c_p_minus_1 * c.c_2p_minus_2 - c.c_p_minus_2 * c.c_2p_minus_1; }

MvPoly d_poly(std::uint32_t p) { return d_poly(symbolic_cartier_entries(p)); }

MvPoly specialize(const MvPoly& m, const std::optional<FieldElement>& lambda, const std::optional<FieldElement>& t1,
                  const std::optional<FieldElement>& t2) {
  const FieldCtx* target = nullptr;
  for (const auto* v : {&lambda, &t1, &t2}) {
    if (!*v) continue;
    if (target && &(*v)->ctx() != target) throw MathError("specialization values must share one field");
    target = &(*v)->ctx();
  }
  if (!target) return m;
  if (!can_embed(m.ctx(), *target)) throw MathError("specialization field does not extend the coefficient field");

  const std::array<const std::optional<FieldElement>*, 3> values{&lambda, &t1, &t2};
  MvPoly out(*target);
  for (const auto& [e, c] : m.terms()) {
    FieldElement coeff = embed(c, *target);
    Exponents rest = e;
    for (int v = 0; v < 3; ++v) {
      if (!*values[v]) continue;
      coeff *= e[v] == 0 ? target->one() : (*values[v])->pow(e[v]);
      rest[v] = 0;
    }
    out.add_term(coeff, rest);
  }
  return out;
}

FieldElement evaluate(const MvPoly& m, const FieldElement& lambda, const FieldElement& t1, const FieldElement& t2) {
  return specialize(m, lambda, t1, t2).coeff({0, 0, 0});
}

std::string to_string(const MvPoly& m) {
  if (m.is_zero()) return "0";
  static const char* names[] = {"λ", "t1", "t2"};
  std::string s;
  for (auto it = m.terms().rbegin(); it != m.terms().rend(); ++it) {
    const auto& [e, c] = *it;
    if (!s.empty()) s += " + ";
    const bool constant_term = e[0] == 0 && e[1] == 0 && e[2] == 0;
    if (!c.is_one() || constant_term) s += c.is_prime_field_element() ? std::to_string(c.coeff(0)) : "(" + to_string(c) + ")";
    for (int v = 0; v < 3; ++v) {
      if (e[v] == 0) continue;
      s += names[v];
      if (e[v] > 1) s += "^" + std::to_string(e[v]);
    }
  }
  return s;
}

}  // namespace prymrank
