#pragma once

// Cartier-Manin matrices of hyperelliptic curves y^2 = f(x) and the p-rank
// as the rank of the g-fold Frobenius-twisted product.

#include <cstddef>
#include <string>
#include <vector>

#include "prymrank/gf.hpp"
#include "prymrank/poly.hpp"

namespace prymrank {

inline constexpr int kDefaultGenusCap = 4;

// y^2 = f(x) with f squarefree of degree >= 3 over a field of odd characteristic.
class HyperellipticCurve {
 public:
  explicit HyperellipticCurve(Poly f);

  const Poly& f() const { return f_; }
  const FieldCtx& ctx() const { return f_.ctx(); }
  int genus() const { return (f_.degree() - 1) / 2; }

  // "<field spec>;f=<poly>"
  std::string to_string() const;
  static HyperellipticCurve parse(std::string_view text);

 private:
  Poly f_;
};

// Small dense square matrix over a finite field, row-major.
class FieldMatrix {
 public:
  FieldMatrix(const FieldCtx& ctx, std::size_t n);

  std::size_t size() const { return n_; }
  const FieldCtx& ctx() const { return *ctx_; }
  FieldElement& at(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  const FieldElement& at(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }
  bool is_zero() const;
  int rank() const;
  FieldElement determinant() const;

  friend FieldMatrix operator*(const FieldMatrix& a, const FieldMatrix& b);
  friend bool operator==(const FieldMatrix& a, const FieldMatrix& b) = default;

 private:
  const FieldCtx* ctx_;
  std::size_t n_;
  std::vector<FieldElement> a_;
};

using CartierMatrix = FieldMatrix;

// Entry (i, j), 1-indexed, is c_{ip-j} where c_n is the coefficient of x^n in
// f^{(p-1)/2}. For genus 2 this is [[c_{p-1}, c_{p-2}], [c_{2p-1}, c_{2p-2}]].
CartierMatrix cartier_matrix(const HyperellipticCurve& x);
CartierMatrix cartier_matrix_of(const Poly& f, int genus);

// Entrywise p-th power.
FieldMatrix frobenius_twist(const FieldMatrix& m);

// Rank of M^{(p^{g-1})} ... M^{(p)} M with g = size of M.
int stable_rank(const FieldMatrix& m);

int p_rank(const HyperellipticCurve& x, int genus_cap = kDefaultGenusCap);
// Same as p_rank for a squarefree f of degree >= 3, skipping validation.
int p_rank_unchecked(const Poly& f);

// H_p(lambda) = sum_{i=0}^{(p-1)/2} binom((p-1)/2, i)^2 lambda^i over F_p.
Poly deuring_polynomial(std::uint32_t p);
// Legendre parameter test: E_lambda: y^2 = x(x-1)(x-lambda) is supersingular
// iff H_p(lambda) = 0. Rejects lambda in {0, 1}.
bool is_supersingular_lambda(const FieldElement& lambda);

std::string to_string(const FieldMatrix& m);

}  // namespace prymrank
