#include "prymrank/zeta.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <tuple>

namespace prymrank {

namespace {

constexpr std::uint32_t kZeroLog = UINT32_MAX;

// F_Q in discrete-log form: every nonzero element is g^n, n in [0, Q-1).
class LogField {
 public:
  LogField(std::uint32_t p, unsigned degree) : ctx_(build_field(p, degree)) {
    const std::uint64_t q = ctx_.size();
    order_ = static_cast<std::uint32_t>(q - 1);
    const FieldElement g = primitive_element();
    std::vector<std::uint32_t> exp_index(order_);
    log_of_index_.assign(q, kZeroLog);
    FieldElement cur = ctx_.one();
    for (std::uint32_t n = 0; n < order_; ++n) {
      const auto idx = static_cast<std::uint32_t>(cur.index());
      exp_index[n] = idx;
      log_of_index_[idx] = n;
      cur *= g;
    }
    zech_.resize(order_);
    for (std::uint32_t n = 0; n < order_; ++n) {
      // index of g^n + 1: bump the constant digit
      const std::uint32_t idx = exp_index[n];
      const std::uint32_t c0 = idx % p;
      zech_[n] = log_of_index_[idx - c0 + (c0 + 1) % p];
    }
  }

  const FieldCtx& ctx() const { return ctx_; }
  std::uint32_t order() const { return order_; }

  std::uint32_t log(const FieldElement& e) const {
    return log_of_index_[static_cast<std::size_t>(embed(e, ctx_).index())];
  }

  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    if (a == kZeroLog || b == kZeroLog) return kZeroLog;
    std::uint32_t r = a + b;
    return r >= order_ ? r - order_ : r;
  }

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
    if (a == kZeroLog) return b;
    if (b == kZeroLog) return a;
    const std::uint32_t d = b >= a ? b - a : b + order_ - a;
    const std::uint32_t z = zech_[d];
    if (z == kZeroLog) return kZeroLog;
    const std::uint32_t r = a + z;
    return r >= order_ ? r - order_ : r;
  }

  // Quadratic character of the element with log a.
  static int chi(std::uint32_t a) { return a == kZeroLog ? 0 : ((a & 1) ? -1 : 1); }

  std::uint32_t eval(const std::vector<std::uint32_t>& coeff_logs, std::uint32_t x) const {
    std::uint32_t acc = coeff_logs.back();
    for (std::size_t i = coeff_logs.size() - 1; i-- > 0;) acc = add(mul(acc, x), coeff_logs[i]);
    return acc;
  }

 private:
  FieldElement primitive_element() const {
    std::vector<std::uint64_t> primes;
    std::uint64_t n = order_;
    for (std::uint64_t d = 2; d * d <= n; ++d)
      if (n % d == 0) {
        primes.push_back(d);
        while (n % d == 0) n /= d;
      }
    if (n > 1) primes.push_back(n);
    for (std::uint64_t i = 1; i < ctx_.size(); ++i) {
      FieldElement cand = ctx_.element(i);
      bool primitive = true;
      for (auto r : primes)
        if (cand.pow(order_ / r).is_one()) {
          primitive = false;
          break;
        }
      if (primitive) return cand;
    }
    throw MathError("no primitive element");  // unreachable
  }

  const FieldCtx& ctx_;
  std::uint32_t order_ = 0;
  std::vector<std::uint32_t> log_of_index_;
  std::vector<std::uint32_t> zech_;
};

// Representatives of the orbits of x -> x^q on F_Q^*, in log form, with
// orbit sizes. Points over F_q-rational polynomials are constant on orbits.
struct FrobeniusOrbits {
  std::vector<std::uint32_t> reps;
  std::vector<std::uint8_t> sizes;
};

struct Caches {
  std::mutex mu;
  std::map<std::pair<std::uint32_t, unsigned>, std::unique_ptr<LogField>> fields;
  std::map<std::tuple<std::uint32_t, unsigned, unsigned>, std::unique_ptr<FrobeniusOrbits>> orbits;
};

Caches& caches() {
  static Caches c;
  return c;
}

const LogField& log_field(std::uint32_t p, unsigned degree) {
  auto& c = caches();
  std::lock_guard lock(c.mu);
  auto& slot = c.fields[{p, degree}];
  if (!slot) slot = std::make_unique<LogField>(p, degree);
  return *slot;
}

const FrobeniusOrbits& frobenius_orbits(const LogField& field, unsigned base_degree) {
  auto& c = caches();
  std::lock_guard lock(c.mu);
  auto& slot = c.orbits[{field.ctx().p(), field.ctx().k(), base_degree}];
  if (!slot) {
    slot = std::make_unique<FrobeniusOrbits>();
    std::uint64_t q = 1;
    for (unsigned i = 0; i < base_degree; ++i) q *= field.ctx().p();
    const std::uint64_t order = field.order();
    const std::uint64_t qm = q % order;
    for (std::uint64_t n = 0; n < order; ++n) {
      std::uint64_t m = n * qm % order;
      std::uint8_t size = 1;
      bool is_min = true;
      while (m != n) {
        if (m < n) {
          is_min = false;
          break;
        }
        m = m * qm % order;
        ++size;
      }
      if (is_min) {
        slot->reps.push_back(static_cast<std::uint32_t>(n));
        slot->sizes.push_back(size);
      }
    }
  }
  return *slot;
}

std::uint64_t checked_size(const FieldCtx& base, unsigned m, std::uint64_t cap) {
  const unsigned degree = base.k() * m;
  std::uint64_t q = 1;
  for (unsigned i = 0; i < degree; ++i) {
    q *= base.p();
    if (q > cap)
      throw CapExceeded("point count over F_" + std::to_string(base.p()) + "^" + std::to_string(degree) +
                        " exceeds counting cap " + std::to_string(cap));
  }
  if (degree > kMaxExtensionDegree) throw CapExceeded("counting field degree exceeds 12");
  return q;
}

std::vector<std::uint32_t> coefficient_logs(const Poly& f, const LogField& field) {
  std::vector<std::uint32_t> out;
  for (const auto& c : f.coeffs()) out.push_back(field.log(c));
  return out;
}

// Contribution of the points above x = infinity: 1 + chi(lead) for even
// degree (two points iff the leading coefficient is a square), and the single
// ramified point for odd degree. Expressed as the value "chi at infinity".
int chi_at_infinity(const Poly& f, const LogField& field) {
  if (f.degree() % 2 == 1) return 0;
  return LogField::chi(field.log(f.leading()));
}

// Sum over x in F_Q of fn(x_log), using Frobenius orbits when m > 1.
template <typename Fn>
std::int64_t sum_over_field(const LogField& field, unsigned base_degree, unsigned m, Fn&& fn) {
  std::int64_t total = fn(kZeroLog);
  if (m == 1) {
    for (std::uint32_t n = 0; n < field.order(); ++n) total += fn(n);
    return total;
  }
  const auto& orbits = frobenius_orbits(field, base_degree);
  for (std::size_t i = 0; i < orbits.reps.size(); ++i) total += orbits.sizes[i] * fn(orbits.reps[i]);
  return total;
}

}  // namespace

std::int64_t count_points(const Poly& f, unsigned m, std::uint64_t cap) {
  if (f.degree() < 1) throw MathError("point count needs deg f >= 1");
  if (m < 1) throw MathError("extension degree must be >= 1");
  checked_size(f.ctx(), m, cap);
  const LogField& field = log_field(f.ctx().p(), f.ctx().k() * m);
  const auto logs = coefficient_logs(f, field);
  std::int64_t total = sum_over_field(field, f.ctx().k(), m,
                                      [&](std::uint32_t x) { return 1 + LogField::chi(field.eval(logs, x)); });
  return total + 1 + chi_at_infinity(f, field);
}

std::int64_t count_points(const HyperellipticCurve& x, unsigned m, std::uint64_t cap) {
  return count_points(x.f(), m, cap);
}

LPolynomial l_polynomial(const Poly& f, std::uint64_t cap) {
  LPolynomial l;
  l.genus = f.degree() <= 2 ? 0 : (f.degree() - 1) / 2;
  l.q = static_cast<std::int64_t>(f.ctx().size());
  const int g = l.genus;
  l.coeffs.assign(2 * g + 1, 0);
  l.coeffs[0] = 1;
  std::vector<std::int64_t> s(g + 1, 0);
  std::int64_t qi = 1;
  for (int i = 1; i <= g; ++i) {
    qi *= l.q;
    s[i] = qi + 1 - count_points(f, static_cast<unsigned>(i), cap);
  }
  for (int i = 1; i <= g; ++i) {
    std::int64_t acc = 0;
    for (int j = 1; j <= i; ++j) acc += s[j] * l.coeffs[i - j];
    if (acc % i != 0) throw MathError("inconsistent point counts: Newton identity not integral");
    l.coeffs[i] = -acc / i;
  }
  std::int64_t qpow = 1;
  for (int i = g + 1; i <= 2 * g; ++i) {
    qpow *= l.q;
    l.coeffs[i] = qpow * l.coeffs[2 * g - i];
  }
  for (unsigned m = 1; m <= static_cast<unsigned>(2 * g); ++m)
    if (count_from_l_polynomial(l, m) < 0) throw MathError("inconsistent point counts: negative predicted count");
  return l;
}

LPolynomial l_polynomial(const HyperellipticCurve& x, std::uint64_t cap) { return l_polynomial(x.f(), cap); }

std::int64_t count_from_l_polynomial(const LPolynomial& l, unsigned m) {
  const int deg = static_cast<int>(l.coeffs.size()) - 1;
  auto a = [&](int j) { return j <= deg ? l.coeffs[j] : 0; };
  std::vector<std::int64_t> s(m + 1, 0);
  for (unsigned i = 1; i <= m; ++i) {
    std::int64_t acc = -static_cast<std::int64_t>(i) * a(static_cast<int>(i));
    for (unsigned j = 1; j < i; ++j) acc -= a(static_cast<int>(j)) * s[i - j];
    s[i] = acc;
  }
  std::int64_t qm = 1;
  for (unsigned i = 0; i < m; ++i) qm *= l.q;
  return qm + 1 - s[m];
}

int degree_mod_p(const std::vector<std::int64_t>& coeffs, std::uint32_t p) {
  for (std::size_t i = coeffs.size(); i-- > 0;)
    if (coeffs[i] % static_cast<std::int64_t>(p) != 0) return static_cast<int>(i);
  return 0;
}

int p_rank_zeta(const HyperellipticCurve& x, std::uint64_t cap) {
  return degree_mod_p(l_polynomial(x, cap).coeffs, x.ctx().p());
}

std::vector<std::int64_t> multiply(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b) {
  if (a.empty() || b.empty()) return {};
  std::vector<std::int64_t> r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

std::int64_t count_fiber_product_points(const Poly& f1, const Poly& f2, unsigned m, std::uint64_t cap) {
  if (&f1.ctx() != &f2.ctx()) throw MathError("fiber product factors must share a field");
  if (f1.degree() < 1 || f2.degree() < 1) throw MathError("fiber product factors must be nonconstant");
  if (f1.degree() % 2 == 1 && f2.degree() % 2 == 1)
    throw MathError("overlapping branch sets: both covers branch at infinity");
  if (!is_squarefree(f1 * f2)) throw MathError("overlapping branch sets: f1 f2 is not squarefree");
  checked_size(f1.ctx(), m, cap);
  const LogField& field = log_field(f1.ctx().p(), f1.ctx().k() * m);
  const auto l1 = coefficient_logs(f1, field);
  const auto l2 = coefficient_logs(f2, field);
  // Over x with f1(x) = 0 the cover Y -> C2 is totally ramified, so the fiber
  // has 1 + chi(f2(x)) points, which (1 + chi1)(1 + chi2) already gives; the
  // same product with chi at infinity handles the points at infinity.
  std::int64_t total = sum_over_field(field, f1.ctx().k(), m, [&](std::uint32_t x) {
    return (1 + LogField::chi(field.eval(l1, x))) * (1 + LogField::chi(field.eval(l2, x)));
  });
  return total + (1 + chi_at_infinity(f1, field)) * (1 + chi_at_infinity(f2, field));
}

std::int64_t count_fiber_product_points(const HyperellipticCurve& c1, const HyperellipticCurve& c2, unsigned m,
                                        std::uint64_t cap) {
  return count_fiber_product_points(c1.f(), c2.f(), m, cap);
}

}  // namespace prymrank
