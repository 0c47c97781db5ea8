#pragma once

// Exact arithmetic in F_p and F_{p^k}, elements stored as dense residue
// vectors modulo a monic irreducible polynomial.
//
// Field contexts are interned: build_field returns a reference that lives for
// the rest of the process, so elements carry a bare pointer to their context
// and two contexts are the same field presentation iff their addresses agree.

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "prymrank/errors.hpp"

namespace prymrank {

inline constexpr unsigned kMaxExtensionDegree = 12;
inline constexpr std::uint64_t kDefaultEnumerationCap = std::uint64_t{1} << 22;

class FieldElement;

class FieldCtx {
 public:
  FieldCtx(const FieldCtx&) = delete;
  FieldCtx& operator=(const FieldCtx&) = delete;

  std::uint32_t p() const { return p_; }
  unsigned k() const { return k_; }
  // Monic modulus, constant term first, k+1 entries.
  std::span<const std::uint32_t> modulus() const { return {modulus_.data(), k_ + 1}; }
  // p^k, saturating at UINT64_MAX.
  std::uint64_t size() const { return size_; }

  FieldElement zero() const;
  FieldElement one() const;
  FieldElement from_int(std::int64_t v) const;
  FieldElement from_coeffs(std::span<const std::uint32_t> coeffs) const;
  // Element whose base-p digits (constant coefficient least significant) are `index`.
  FieldElement element(std::uint64_t index) const;
  // The class of x in F_p[x]/(modulus).
  FieldElement generator() const;

  // "p=5,k=2,mod=2,4,1"
  std::string spec() const;

 private:
  friend const FieldCtx& build_field(std::uint32_t, unsigned, std::optional<std::vector<std::uint32_t>>);
  friend class FieldElement;
  FieldCtx(std::uint32_t p, unsigned k, std::vector<std::uint32_t> modulus);

  std::uint32_t p_;
  unsigned k_;
  std::uint64_t size_;
  std::array<std::uint32_t, kMaxExtensionDegree + 1> modulus_{};
  // (p - modulus_[j]) mod p, used during reduction.
  std::array<std::uint32_t, kMaxExtensionDegree> neg_modulus_{};
};

// Builds (or returns the interned) field F_{p^k}. Without a modulus the first
// monic irreducible of degree k in index order is chosen (k = 1 uses x).
const FieldCtx& build_field(std::uint32_t p, unsigned k,
                            std::optional<std::vector<std::uint32_t>> modulus = std::nullopt);

bool is_prime(std::uint64_t n);
// Irreducibility over F_p of a monic polynomial given constant term first.
bool is_irreducible_mod_p(std::span<const std::uint32_t> monic, std::uint32_t p);

class FieldElement {
 public:
  FieldElement() = default;

  const FieldCtx& ctx() const { return *ctx_; }
  const FieldCtx* ctx_ptr() const { return ctx_; }
  bool valid() const { return ctx_ != nullptr; }
  std::uint32_t coeff(unsigned i) const { return c_[i]; }
  std::vector<std::uint32_t> coeffs() const;
  std::uint64_t index() const;

  bool is_zero() const;
  bool is_one() const;
  // True when the element lies in the prime field.
  bool is_prime_field_element() const;

  FieldElement& operator+=(const FieldElement& o);
  FieldElement& operator-=(const FieldElement& o);
  FieldElement& operator*=(const FieldElement& o);
  FieldElement& operator/=(const FieldElement& o) { return *this *= o.inverse(); }

  friend FieldElement operator+(FieldElement a, const FieldElement& b) { return a += b; }
  friend FieldElement operator-(FieldElement a, const FieldElement& b) { return a -= b; }
  friend FieldElement operator*(FieldElement a, const FieldElement& b) { return a *= b; }
  friend FieldElement operator/(FieldElement a, const FieldElement& b) { return a /= b; }
  FieldElement operator-() const;

  friend bool operator==(const FieldElement& a, const FieldElement& b) {
    return a.ctx_ == b.ctx_ && a.c_ == b.c_;
  }

  FieldElement inverse() const;
  FieldElement pow(std::uint64_t n) const;
  FieldElement frobenius() const { return pow(ctx_->p()); }
  // Multiplication by an integer scalar.
  FieldElement scaled(std::int64_t s) const;

 private:
  friend class FieldCtx;
  void require_same(const FieldElement& o) const;

  const FieldCtx* ctx_ = nullptr;
  std::array<std::uint16_t, kMaxExtensionDegree> c_{};
};

// Binary arithmetic selected at run time; used by the text front ends.
enum class ArithOp { add, sub, mul, div };
FieldElement arith(const FieldElement& a, const FieldElement& b, ArithOp op);

// All p^k elements in index order.
std::vector<FieldElement> enumerate_field(const FieldCtx& ctx,
                                          std::uint64_t cap = kDefaultEnumerationCap);

// Image of e under the embedding of its field into `target`, which must be an
// extension of the same characteristic and divisible degree. The embedding
// sends the source generator to the first root (index order) of the source
// modulus in `target`, so it is deterministic.
FieldElement embed(const FieldElement& e, const FieldCtx& target);
bool can_embed(const FieldCtx& from, const FieldCtx& to);

// Text encodings: element "c0,c1,...,c{k-1}"; field "p=5,k=2,mod=2,4,1".
std::string to_string(const FieldElement& e);
FieldElement parse_element(const FieldCtx& ctx, std::string_view text);
const FieldCtx& parse_field_spec(std::string_view text);


// Hot-path arithmetic, inline.

inline void FieldElement::require_same(const FieldElement& o) const {
  if (ctx_ != o.ctx_ || ctx_ == nullptr) throw MathError("field context mismatch");
}

inline bool FieldElement::is_zero() const {
  for (unsigned i = 0; i < ctx_->k_; ++i)
    if (c_[i] != 0) return false;
  return true;
}

inline FieldElement& FieldElement::operator+=(const FieldElement& o) {
  require_same(o);
  const std::uint32_t p = ctx_->p_;
  for (unsigned i = 0; i < ctx_->k_; ++i) {
    std::uint32_t s = std::uint32_t{c_[i]} + o.c_[i];
    c_[i] = static_cast<std::uint16_t>(s >= p ? s - p : s);
  }
  return *this;
}

inline FieldElement& FieldElement::operator-=(const FieldElement& o) {
  require_same(o);
  const std::uint32_t p = ctx_->p_;
  for (unsigned i = 0; i < ctx_->k_; ++i) {
    std::uint32_t s = std::uint32_t{c_[i]} + p - o.c_[i];
    c_[i] = static_cast<std::uint16_t>(s >= p ? s - p : s);
  }
  return *this;
}

inline FieldElement& FieldElement::operator*=(const FieldElement& o) {
  require_same(o);
  const std::uint64_t p = ctx_->p_;
  const unsigned k = ctx_->k_;
  if (k == 1) {
    c_[0] = static_cast<std::uint16_t>(std::uint64_t{c_[0]} * o.c_[0] % p);
    return *this;
  }
  // Schoolbook product with lazy reduction; every partial sum stays below 2^40.
  std::array<std::uint64_t, 2 * kMaxExtensionDegree - 1> t{};
  for (unsigned i = 0; i < k; ++i) {
    if (c_[i] == 0) continue;
    for (unsigned j = 0; j < k; ++j) t[i + j] += std::uint64_t{c_[i]} * o.c_[j];
  }
  for (unsigned d = 2 * k - 2; d >= k; --d) {
    const std::uint64_t top = t[d] % p;
    if (top == 0) continue;
    for (unsigned j = 0; j < k; ++j) t[d - k + j] += top * ctx_->neg_modulus_[j];
  }
  for (unsigned i = 0; i < k; ++i) c_[i] = static_cast<std::uint16_t>(t[i] % p);
  return *this;
}

}  // namespace prymrank
