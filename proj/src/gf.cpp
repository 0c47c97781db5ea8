#include "prymrank/gf.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <tuple>

namespace prymrank {

namespace {

// Dense polynomials over F_p used only for modulus validation.
using PrimePoly = std::vector<std::uint32_t>;

void trim(PrimePoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
  std::int64_t t = 0, new_t = 1, r = p, new_r = a % p;
  while (new_r != 0) {
    std::int64_t q = r / new_r;
    std::tie(t, new_t) = std::make_tuple(new_t, t - q * new_t);
    std::tie(r, new_r) = std::make_tuple(new_r, r - q * new_r);
  }
  if (r != 1) throw MathError("inverse of zero in F_p");
  return static_cast<std::uint32_t>(t < 0 ? t + p : t);
}

PrimePoly mod_poly(PrimePoly a, const PrimePoly& m, std::uint32_t p) {
  trim(a);
  const std::size_t dm = m.size() - 1;
  const std::uint64_t lead_inv = inv_mod(m.back(), p);
  while (a.size() >= m.size()) {
    const std::uint64_t c = a.back() * lead_inv % p;
    const std::size_t shift = a.size() - m.size();
    for (std::size_t j = 0; j <= dm; ++j)
      a[shift + j] = static_cast<std::uint32_t>((a[shift + j] + (p - c) * m[j] % p) % p);
    trim(a);
  }
  return a;
}

PrimePoly mulmod_poly(const PrimePoly& a, const PrimePoly& b, const PrimePoly& m, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  PrimePoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      r[i + j] = static_cast<std::uint32_t>((r[i + j] + std::uint64_t{a[i]} * b[j]) % p);
  return mod_poly(std::move(r), m, p);
}

PrimePoly powmod_poly(PrimePoly base, std::uint64_t e, const PrimePoly& m, std::uint32_t p) {
  PrimePoly r{1};
  base = mod_poly(std::move(base), m, p);
  while (e > 0) {
    if (e & 1) r = mulmod_poly(r, base, m, p);
    base = mulmod_poly(base, base, m, p);
    e >>= 1;
  }
  return r;
}

PrimePoly gcd_poly(PrimePoly a, PrimePoly b, std::uint32_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    PrimePoly r = mod_poly(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

std::vector<unsigned> prime_divisors(unsigned n) {
  std::vector<unsigned> out;
  for (unsigned d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

std::uint64_t saturating_pow(std::uint64_t b, unsigned e) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < e; ++i) {
    if (r > UINT64_MAX / b) return UINT64_MAX;
    r *= b;
  }
  return r;
}

struct Registry {
  std::mutex mu;
  std::map<std::tuple<std::uint32_t, unsigned, std::vector<std::uint32_t>>, std::unique_ptr<FieldCtx>> fields;
  std::map<std::tuple<std::uint32_t, unsigned>, std::vector<std::uint32_t>> default_moduli;
  std::map<std::pair<const FieldCtx*, const FieldCtx*>, FieldElement> embeddings;
};

Registry& registry() {
  static Registry r;
  return r;
}

std::vector<std::uint32_t> first_irreducible(std::uint32_t p, unsigned k) {
  if (k == 1) return {0, 1};
  std::vector<std::uint32_t> cand(k + 1, 0);
  cand[k] = 1;
  // Walk the lower coefficients as a base-p counter, constant term least significant.
  while (true) {
    if (cand[0] != 0 && is_irreducible_mod_p(cand, p)) return cand;
    unsigned i = 0;
    while (i < k && ++cand[i] == p) cand[i++] = 0;
    if (i == k) throw MathError("no irreducible polynomial found");  // unreachable
  }
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = s.find(sep, start);
    out.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string_view strip(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\n' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

std::uint64_t parse_uint(std::string_view s) {
  s = strip(s);
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
    throw ParseError("expected a nonnegative integer, got '" + std::string(s) + "'");
  return v;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

bool is_irreducible_mod_p(std::span<const std::uint32_t> monic, std::uint32_t p) {
  PrimePoly f(monic.begin(), monic.end());
  trim(f);
  if (f.size() < 2) return false;
  const unsigned k = static_cast<unsigned>(f.size() - 1);
  if (k == 1) return true;
  // Rabin: x^{p^k} = x mod f, and gcd(x^{p^{k/r}} - x, f) = 1 for primes r | k.
  std::vector<PrimePoly> frob(k + 1);
  frob[0] = mod_poly(PrimePoly{0, 1}, f, p);
  for (unsigned i = 1; i <= k; ++i) frob[i] = powmod_poly(frob[i - 1], p, f, p);
  if (frob[k] != frob[0]) return false;
  for (unsigned r : prime_divisors(k)) {
    PrimePoly h = frob[k / r];
    h.resize(std::max<std::size_t>(h.size(), 2), 0);
    h[1] = (h[1] + p - 1) % p;
    if (gcd_poly(h, f, p).size() != 1) return false;
  }
  return true;
}

FieldCtx::FieldCtx(std::uint32_t p, unsigned k, std::vector<std::uint32_t> modulus)
    : p_(p), k_(k), size_(saturating_pow(p, k)) {
  std::copy(modulus.begin(), modulus.end(), modulus_.begin());
  for (unsigned j = 0; j < k; ++j) neg_modulus_[j] = (p - modulus_[j]) % p;
}

const FieldCtx& build_field(std::uint32_t p, unsigned k, std::optional<std::vector<std::uint32_t>> modulus) {
  if (p < 3 || p >= (1u << 16) || !is_prime(p))
    throw MathError("field characteristic must be an odd prime below 2^16, got " + std::to_string(p));
  if (k < 1 || k > kMaxExtensionDegree)
    throw MathError("extension degree must lie in [1, 12], got " + std::to_string(k));

  auto& reg = registry();
  std::vector<std::uint32_t> mod;
  if (modulus) {
    mod = *modulus;
    if (mod.size() != k + 1 || mod[k] != 1) throw MathError("modulus must be monic of degree k");
    for (auto c : mod)
      if (c >= p) throw MathError("modulus coefficients must lie in [0, p)");
    if (k == 1) {
      if (mod[0] != 0) throw MathError("prime-field modulus must be x");
    } else if (!is_irreducible_mod_p(mod, p)) {
      throw MathError("modulus is reducible over F_" + std::to_string(p));
    }
  } else {
    std::lock_guard lock(reg.mu);
    auto key = std::make_tuple(p, k);
    auto it = reg.default_moduli.find(key);
    if (it == reg.default_moduli.end()) it = reg.default_moduli.emplace(key, first_irreducible(p, k)).first;
    mod = it->second;
  }

  std::lock_guard lock(reg.mu);
  auto key = std::make_tuple(p, k, mod);
  auto it = reg.fields.find(key);
  if (it == reg.fields.end())
    it = reg.fields.emplace(key, std::unique_ptr<FieldCtx>(new FieldCtx(p, k, mod))).first;
  return *it->second;
}

FieldElement FieldCtx::zero() const {
  FieldElement e;
  e.ctx_ = this;
  return e;
}

FieldElement FieldCtx::one() const { return from_int(1); }

FieldElement FieldCtx::from_int(std::int64_t v) const {
  FieldElement e = zero();
  std::int64_t r = v % static_cast<std::int64_t>(p_);
  if (r < 0) r += p_;
  e.c_[0] = static_cast<std::uint16_t>(r);
  return e;
}

FieldElement FieldCtx::from_coeffs(std::span<const std::uint32_t> coeffs) const {
  if (coeffs.size() > k_) throw MathError("too many coefficients for field element");
  FieldElement e = zero();
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i] >= p_) throw MathError("coefficient out of range [0, p)");
    e.c_[i] = static_cast<std::uint16_t>(coeffs[i]);
  }
  return e;
}

FieldElement FieldCtx::element(std::uint64_t index) const {
  if (index >= size_) throw MathError("element index out of range");
  FieldElement e = zero();
  for (unsigned i = 0; i < k_; ++i) {
    e.c_[i] = static_cast<std::uint16_t>(index % p_);
    index /= p_;
  }
  return e;
}

FieldElement FieldCtx::generator() const {
  if (k_ == 1) return zero();  // modulus x: the class of x is 0
  FieldElement e = zero();
  e.c_[1] = 1;
  return e;
}

std::string FieldCtx::spec() const {
  std::ostringstream os;
  os << "p=" << p_ << ",k=" << k_ << ",mod=";
  for (unsigned i = 0; i <= k_; ++i) os << (i ? "," : "") << modulus_[i];
  return os.str();
}

std::vector<std::uint32_t> FieldElement::coeffs() const {
  return std::vector<std::uint32_t>(c_.begin(), c_.begin() + ctx_->k());
}

std::uint64_t FieldElement::index() const {
  std::uint64_t idx = 0;
  for (unsigned i = ctx_->k(); i-- > 0;) idx = idx * ctx_->p() + c_[i];
  return idx;
}

bool FieldElement::is_one() const {
  if (c_[0] != 1) return false;
  for (unsigned i = 1; i < ctx_->k(); ++i)
    if (c_[i] != 0) return false;
  return true;
}

bool FieldElement::is_prime_field_element() const {
  for (unsigned i = 1; i < ctx_->k(); ++i)
    if (c_[i] != 0) return false;
  return true;
}

FieldElement FieldElement::operator-() const { return ctx_->zero() - *this; }

FieldElement FieldElement::scaled(std::int64_t s) const { return *this * ctx_->from_int(s); }

FieldElement FieldElement::inverse() const {
  if (is_zero()) throw MathError("division by zero");
  const std::uint32_t p = ctx_->p();
  if (ctx_->k() == 1) {
    FieldElement r = ctx_->zero();
    r.c_[0] = static_cast<std::uint16_t>(inv_mod(c_[0], p));
    return r;
  }
  // Extended Euclid in F_p[x] against the modulus.
  PrimePoly m(ctx_->modulus().begin(), ctx_->modulus().end());
  PrimePoly r0 = m, r1(c_.begin(), c_.begin() + ctx_->k());
  trim(r1);
  PrimePoly s0{}, s1{1};
  while (r1.size() > 1) {
    // quotient and remainder of r0 / r1
    PrimePoly q(r0.size() - r1.size() + 1, 0), r = r0;
    const std::uint64_t li = inv_mod(r1.back(), p);
    while (r.size() >= r1.size()) {
      const std::uint64_t c = r.back() * li % p;
      const std::size_t shift = r.size() - r1.size();
      q[shift] = static_cast<std::uint32_t>(c);
      for (std::size_t j = 0; j < r1.size(); ++j)
        r[shift + j] = static_cast<std::uint32_t>((r[shift + j] + (p - c) * r1[j] % p) % p);
      trim(r);
    }
    // s2 = s0 - q*s1
    PrimePoly qs(q.size() + s1.size(), 0);
    for (std::size_t i = 0; i < q.size(); ++i)
      for (std::size_t j = 0; j < s1.size(); ++j)
        qs[i + j] = static_cast<std::uint32_t>((qs[i + j] + std::uint64_t{q[i]} * s1[j]) % p);
    PrimePoly s2(std::max(s0.size(), qs.size()), 0);
    for (std::size_t i = 0; i < s2.size(); ++i) {
      std::uint32_t a = i < s0.size() ? s0[i] : 0, b = i < qs.size() ? qs[i] : 0;
      s2[i] = (a + p - b) % p;
    }
    trim(s2);
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  // r1 is a nonzero constant c; inverse = s1 / c.
  const std::uint64_t ci = inv_mod(r1[0], p);
  s1 = mod_poly(s1, m, p);
  FieldElement out = ctx_->zero();
  for (std::size_t i = 0; i < s1.size(); ++i) out.c_[i] = static_cast<std::uint16_t>(s1[i] * ci % p);
  return out;
}

FieldElement FieldElement::pow(std::uint64_t n) const {
  if (n == 0 && is_zero()) throw MathError("0^0 is undefined");
  FieldElement r = ctx_->one(), b = *this;
  while (n > 0) {
    if (n & 1) r *= b;
    n >>= 1;
    if (n) b *= b;
  }
  return r;
}

FieldElement arith(const FieldElement& a, const FieldElement& b, ArithOp op) {
  switch (op) {
    case ArithOp::add: return a + b;
    case ArithOp::sub: return a - b;
    case ArithOp::mul: return a * b;
    case ArithOp::div: return a / b;
  }
  throw MathError("unknown arithmetic operation");
}

std::vector<FieldElement> enumerate_field(const FieldCtx& ctx, std::uint64_t cap) {
  if (ctx.size() > cap)
    throw CapExceeded("field of size " + std::to_string(ctx.size()) + " exceeds enumeration cap " +
                      std::to_string(cap));
  std::vector<FieldElement> out;
  out.reserve(ctx.size());
  for (std::uint64_t i = 0; i < ctx.size(); ++i) out.push_back(ctx.element(i));
  return out;
}

bool can_embed(const FieldCtx& from, const FieldCtx& to) {
  return from.p() == to.p() && to.k() % from.k() == 0;
}

FieldElement embed(const FieldElement& e, const FieldCtx& target) {
  const FieldCtx& src = e.ctx();
  if (&src == &target) return e;
  if (!can_embed(src, target))
    throw MathError("cannot embed " + src.spec() + " into " + target.spec());
  if (src.k() == 1) return target.from_int(e.coeff(0));

  auto& reg = registry();
  FieldElement root;
  {
    std::lock_guard lock(reg.mu);
    auto it = reg.embeddings.find({&src, &target});
    if (it != reg.embeddings.end()) root = it->second;
  }
  if (!root.valid()) {
    // First root of the source modulus among target elements in index order.
    auto mod = src.modulus();
    for (std::uint64_t i = 0; i < target.size(); ++i) {
      FieldElement x = target.element(i), acc = target.zero();
      for (std::size_t j = mod.size(); j-- > 0;) acc = acc * x + target.from_int(mod[j]);
      if (acc.is_zero()) {
        root = x;
        break;
      }
    }
    if (!root.valid()) throw MathError("embedding root not found");  // impossible for k | K
    std::lock_guard lock(reg.mu);
    reg.embeddings.emplace(std::make_pair(&src, &target), root);
  }
  FieldElement acc = target.zero();
  for (unsigned j = src.k(); j-- > 0;) acc = acc * root + target.from_int(e.coeff(j));
  return acc;
}

std::string to_string(const FieldElement& e) {
  std::string s;
  for (unsigned i = 0; i < e.ctx().k(); ++i) {
    if (i) s += ',';
    s += std::to_string(e.coeff(i));
  }
  return s;
}

FieldElement parse_element(const FieldCtx& ctx, std::string_view text) {
  auto parts = split(strip(text), ',');
  if (parts.size() > ctx.k()) throw ParseError("element '" + std::string(text) + "' has too many residues");
  std::vector<std::uint32_t> c;
  for (auto part : parts) {
    std::uint64_t v = parse_uint(part);
    if (v >= ctx.p()) throw ParseError("residue " + std::to_string(v) + " not in [0, p)");
    c.push_back(static_cast<std::uint32_t>(v));
  }
  return ctx.from_coeffs(c);
}

const FieldCtx& parse_field_spec(std::string_view text) {
  text = strip(text);
  std::optional<std::uint64_t> p, k;
  std::optional<std::vector<std::uint32_t>> mod;
  auto parts = split(text, ',');
  for (std::size_t i = 0; i < parts.size(); ++i) {
    auto kv = strip(parts[i]);
    if (kv.starts_with("p=")) {
      p = parse_uint(kv.substr(2));
    } else if (kv.starts_with("k=")) {
      k = parse_uint(kv.substr(2));
    } else if (kv.starts_with("mod=")) {
      mod.emplace();
      mod->push_back(static_cast<std::uint32_t>(parse_uint(kv.substr(4))));
      // every following bare number belongs to the modulus
      while (i + 1 < parts.size() && strip(parts[i + 1]).find('=') == std::string_view::npos)
        mod->push_back(static_cast<std::uint32_t>(parse_uint(parts[++i])));
    } else {
      throw ParseError("unrecognized field spec component '" + std::string(kv) + "'");
    }
  }
  if (!p) throw ParseError("field spec is missing p=");
  if (!k) k = mod ? mod->size() - 1 : 1;
  if (*p >= (1u << 16) || *k > kMaxExtensionDegree) throw MathError("field spec out of range");
  return build_field(static_cast<std::uint32_t>(*p), static_cast<unsigned>(*k), mod);
}

}  // namespace prymrank
