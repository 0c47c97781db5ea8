#pragma once

#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "prymrank/gf.hpp"

namespace prymrank {

// Dense univariate polynomial over a finite field; coeffs()[i] is the
// coefficient of x^i. Always normalized: the zero polynomial is empty and
// otherwise the leading coefficient is nonzero.
class Poly {
 public:
  explicit Poly(const FieldCtx& ctx) : ctx_(&ctx) {}
  Poly(const FieldCtx& ctx, std::vector<FieldElement> coeffs);
  static Poly from_ints(const FieldCtx& ctx, std::initializer_list<std::int64_t> coeffs);
  static Poly from_ints(const FieldCtx& ctx, const std::vector<std::int64_t>& coeffs);
  static Poly constant(const FieldElement& c);
  // x - r
  static Poly linear_root(const FieldElement& r);

  const FieldCtx& ctx() const { return *ctx_; }
  bool is_zero() const { return coeffs_.empty(); }
  // -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<FieldElement>& coeffs() const { return coeffs_; }
  // Zero outside [0, degree].
  FieldElement coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : ctx_->zero(); }
  FieldElement leading() const;

  FieldElement eval(const FieldElement& x) const;
  Poly derivative() const;
  Poly monic() const;
  Poly scaled(const FieldElement& c) const;

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(Poly a, const Poly& b) { return a *= b; }
  friend bool operator==(const Poly& a, const Poly& b) { return a.ctx_ == b.ctx_ && a.coeffs_ == b.coeffs_; }

 private:
  void normalize();
  void require_same(const Poly& o) const;

  const FieldCtx* ctx_;
  std::vector<FieldElement> coeffs_;
};

Poly mul(const Poly& a, const Poly& b);
Poly pow(const Poly& f, std::uint64_t n);
// f^{(p-1)/2} in full; coeff(i) of the result gives the Cartier coefficients c_i.
Poly half_power_coeffs(const Poly& f);

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
Poly powmod(const Poly& base, std::uint64_t e, const Poly& modulus);
// Monic gcd; throws when both inputs are zero.
Poly gcd(const Poly& a, const Poly& b);
bool is_squarefree(const Poly& f);

// Image of f with every coefficient embedded into `target`.
Poly embed(const Poly& f, const FieldCtx& target);
// f(u*x + c)
Poly substitute_linear(const Poly& f, const FieldElement& u, const FieldElement& c);

// Distinct roots of f lying in `ext` (an extension of f's field), found by
// exhaustive evaluation; ordered by element index.
std::vector<FieldElement> roots_in(const Poly& f, const FieldCtx& ext,
                                   std::uint64_t cap = kDefaultEnumerationCap);
// Distinct roots of f in its own field via gcd(f, x^q - x) and equal-degree
// splitting. Same result as roots_in(f, f.ctx()) without enumerating the field.
std::vector<FieldElement> rational_roots(const Poly& f);
// Smallest m such that the squarefree f splits into linear factors over the
// degree-m extension of its field: the lcm of its irreducible factor degrees.
unsigned splitting_degree(const Poly& f);

// Text format: coefficients constant term first, separated by ','; an
// extension-field coefficient is its residues joined by ':' ("0:1" = a).
std::string to_string(const Poly& f);
Poly parse_poly(const FieldCtx& ctx, std::string_view text);
// Human-readable form such as "x^5 + 4x".
std::string to_pretty(const Poly& f);

}  // namespace prymrank
