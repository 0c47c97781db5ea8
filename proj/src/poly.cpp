#include "prymrank/poly.hpp"

#include <algorithm>
#include <numeric>

namespace prymrank {

Poly::Poly(const FieldCtx& ctx, std::vector<FieldElement> coeffs) : ctx_(&ctx), coeffs_(std::move(coeffs)) {
  for (const auto& c : coeffs_)
    if (c.ctx_ptr() != ctx_) throw MathError("polynomial coefficient from a different field");
  normalize();
}

Poly Poly::from_ints(const FieldCtx& ctx, std::initializer_list<std::int64_t> coeffs) {
  return from_ints(ctx, std::vector<std::int64_t>(coeffs));
}

Poly Poly::from_ints(const FieldCtx& ctx, const std::vector<std::int64_t>& coeffs) {
  std::vector<FieldElement> c;
  c.reserve(coeffs.size());
  for (auto v : coeffs) c.push_back(ctx.from_int(v));
  return Poly(ctx, std::move(c));
}

Poly Poly::constant(const FieldElement& c) { return Poly(c.ctx(), {c}); }

Poly Poly::linear_root(const FieldElement& r) { return Poly(r.ctx(), {-r, r.ctx().one()}); }

void Poly::normalize() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

void Poly::require_same(const Poly& o) const {
  if (ctx_ != o.ctx_) throw MathError("polynomial field context mismatch");
}

FieldElement Poly::leading() const { return coeffs_.empty() ? ctx_->zero() : coeffs_.back(); }

FieldElement Poly::eval(const FieldElement& x) const {
  FieldElement acc = ctx_->zero();
  for (std::size_t i = coeffs_.size(); i-- > 0;) {
    acc *= x;
    acc += coeffs_[i];
  }
  return acc;
}

Poly Poly::derivative() const {
  std::vector<FieldElement> d;
  for (std::size_t i = 1; i < coeffs_.size(); ++i) d.push_back(coeffs_[i].scaled(static_cast<std::int64_t>(i)));
  return Poly(*ctx_, std::move(d));
}

Poly Poly::monic() const {
  if (is_zero()) return *this;
  return scaled(leading().inverse());
}

Poly Poly::scaled(const FieldElement& c) const {
  std::vector<FieldElement> out = coeffs_;
  for (auto& e : out) e *= c;
  return Poly(*ctx_, std::move(out));
}

Poly& Poly::operator+=(const Poly& o) {
  require_same(o);
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), ctx_->zero());
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  normalize();
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  require_same(o);
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), ctx_->zero());
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  normalize();
  return *this;
}

Poly& Poly::operator*=(const Poly& o) {
  *this = mul(*this, o);
  return *this;
}

Poly mul(const Poly& a, const Poly& b) {
  if (&a.ctx() != &b.ctx()) throw MathError("polynomial field context mismatch");
  if (a.is_zero() || b.is_zero()) return Poly(a.ctx());
  const auto& ac = a.coeffs();
  const auto& bc = b.coeffs();
  std::vector<FieldElement> r(ac.size() + bc.size() - 1, a.ctx().zero());
  for (std::size_t i = 0; i < ac.size(); ++i) {
    if (ac[i].is_zero()) continue;
    for (std::size_t j = 0; j < bc.size(); ++j) r[i + j] += ac[i] * bc[j];
  }
  return Poly(a.ctx(), std::move(r));
}

Poly pow(const Poly& f, std::uint64_t n) {
  Poly r = Poly::constant(f.ctx().one()), b = f;
  while (n > 0) {
    if (n & 1) r = mul(r, b);
    n >>= 1;
    if (n) b = mul(b, b);
  }
  return r;
}

Poly half_power_coeffs(const Poly& f) { return pow(f, (f.ctx().p() - 1) / 2); }

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
  if (&a.ctx() != &b.ctx()) throw MathError("polynomial field context mismatch");
  if (b.is_zero()) throw MathError("polynomial division by zero");
  if (a.degree() < b.degree()) return {Poly(a.ctx()), a};
  std::vector<FieldElement> r = a.coeffs();
  std::vector<FieldElement> q(a.degree() - b.degree() + 1, a.ctx().zero());
  const FieldElement li = b.leading().inverse();
  const auto& bc = b.coeffs();
  const std::size_t db = bc.size() - 1;
  for (std::size_t top = r.size(); top-- > db;) {
    if (r[top].is_zero()) continue;
    const FieldElement c = r[top] * li;
    q[top - db] = c;
    for (std::size_t j = 0; j <= db; ++j) r[top - db + j] -= c * bc[j];
  }
  r.resize(db);
  return {Poly(a.ctx(), std::move(q)), Poly(a.ctx(), std::move(r))};
}

Poly powmod(const Poly& base, std::uint64_t e, const Poly& modulus) {
  Poly r = divmod(Poly::constant(base.ctx().one()), modulus).second;
  Poly b = divmod(base, modulus).second;
  while (e > 0) {
    if (e & 1) r = divmod(mul(r, b), modulus).second;
    e >>= 1;
    if (e) b = divmod(mul(b, b), modulus).second;
  }
  return r;
}

Poly gcd(const Poly& a, const Poly& b) {
  if (a.is_zero() && b.is_zero()) throw MathError("gcd of two zero polynomials");
  Poly x = a, y = b;
  while (!y.is_zero()) {
    Poly r = divmod(x, y).second;
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

bool is_squarefree(const Poly& f) {
  if (f.is_zero()) throw MathError("squarefreeness of the zero polynomial");
  if (f.degree() == 0) return true;
  return gcd(f, f.derivative()).degree() == 0;
}

Poly embed(const Poly& f, const FieldCtx& target) {
  std::vector<FieldElement> c;
  c.reserve(f.coeffs().size());
  for (const auto& e : f.coeffs()) c.push_back(embed(e, target));
  return Poly(target, std::move(c));
}

Poly substitute_linear(const Poly& f, const FieldElement& u, const FieldElement& c) {
  // Horner in the polynomial ring: ((a_n)(ux+c) + a_{n-1})(ux+c) + ...
  const Poly lin(f.ctx(), {c, u});
  Poly acc(f.ctx());
  for (std::size_t i = f.coeffs().size(); i-- > 0;) acc = acc * lin + Poly::constant(f.coeffs()[i]);
  return acc;
}

std::vector<FieldElement> roots_in(const Poly& f, const FieldCtx& ext, std::uint64_t cap) {
  if (ext.size() > cap)
    throw CapExceeded("root search field of size " + std::to_string(ext.size()) + " exceeds cap " +
                      std::to_string(cap));
  if (f.is_zero()) throw MathError("roots of the zero polynomial");
  const Poly g = embed(f, ext);
  std::vector<FieldElement> out;
  for (std::uint64_t i = 0; i < ext.size(); ++i) {
    FieldElement x = ext.element(i);
    if (g.eval(x).is_zero()) out.push_back(x);
  }
  return out;
}

namespace {

// h is monic, squarefree, and a product of distinct linear factors.
void split_linear(const Poly& h, std::vector<FieldElement>& out) {
  if (h.degree() <= 0) return;
  if (h.degree() == 1) {
    out.push_back(-h.coeff(0) / h.coeff(1));
    return;
  }
  const FieldCtx& ctx = h.ctx();
  const std::uint64_t half = (ctx.size() - 1) / 2;
  for (std::uint64_t shift = 0; shift < ctx.size(); ++shift) {
    Poly probe(ctx, {ctx.element(shift), ctx.one()});
    Poly t = powmod(probe, half, h) - Poly::constant(ctx.one());
    if (t.is_zero()) continue;
    Poly g = gcd(h, t);
    if (g.degree() > 0 && g.degree() < h.degree()) {
      split_linear(g, out);
      split_linear(divmod(h, g).first.monic(), out);
      return;
    }
  }
  throw MathError("equal-degree splitting failed");  // unreachable for odd q
}

}  // namespace

std::vector<FieldElement> rational_roots(const Poly& f) {
  if (f.is_zero()) throw MathError("roots of the zero polynomial");
  if (f.degree() == 0) return {};
  const FieldCtx& ctx = f.ctx();
  const Poly x(ctx, {ctx.zero(), ctx.one()});
  Poly xq = powmod(x, ctx.size(), f);
  Poly h = gcd(f, xq - x);
  std::vector<FieldElement> out;
  split_linear(h, out);
  std::sort(out.begin(), out.end(), [](const FieldElement& a, const FieldElement& b) { return a.index() < b.index(); });
  return out;
}

unsigned splitting_degree(const Poly& f) {
  if (f.degree() <= 1) return 1;
  if (!is_squarefree(f)) throw MathError("splitting degree needs a squarefree polynomial");
  const FieldCtx& ctx = f.ctx();
  const Poly x(ctx, {ctx.zero(), ctx.one()});
  Poly rest = f.monic();
  Poly frob = x;
  unsigned result = 1;
  for (unsigned d = 1; rest.degree() > 0; ++d) {
    frob = powmod(frob, ctx.size(), rest);
    Poly g = gcd(rest, frob - x);
    if (g.degree() > 0) {
      result = std::lcm(result, d);
      rest = divmod(rest, g).first;
      frob = divmod(frob, rest).second;
    }
  }
  return result;
}

std::string to_string(const Poly& f) {
  if (f.is_zero()) return "0";
  std::string s;
  for (std::size_t i = 0; i < f.coeffs().size(); ++i) {
    if (i) s += ',';
    std::string e = to_string(f.coeffs()[i]);
    std::replace(e.begin(), e.end(), ',', ':');
    s += e;
  }
  return s;
}

Poly parse_poly(const FieldCtx& ctx, std::string_view text) {
  std::vector<FieldElement> c;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t pos = text.find(',', start);
    std::string part(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    std::replace(part.begin(), part.end(), ':', ',');
    c.push_back(parse_element(ctx, part));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return Poly(ctx, std::move(c));
}

std::string to_pretty(const Poly& f) {
  if (f.is_zero()) return "0";
  std::string s;
  for (std::size_t i = f.coeffs().size(); i-- > 0;) {
    const FieldElement& c = f.coeffs()[i];
    if (c.is_zero()) continue;
    if (!s.empty()) s += " + ";
    std::string cs;
    if (c.is_prime_field_element()) {
      cs = std::to_string(c.coeff(0));
    } else {
      cs = "(" + to_string(c) + ")";
    }
    if (i == 0) {
      s += cs;
    } else {
      if (!c.is_one()) s += cs;
      s += "x";
      if (i > 1) s += "^" + std::to_string(i);
    }
  }
  return s;
}

}  // namespace prymrank
