#pragma once

// Sparse polynomials in (lambda, t1, t2) over a finite field, enough to expand
// the genus-2 Legendre-style family y^2 = x(x-1)(x-lambda)(x-t1)(x-t2)
// symbolically and read off its Cartier entries.

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "prymrank/gf.hpp"

namespace prymrank {

enum class Var { lambda = 0, t1 = 1, t2 = 2 };

using Exponents = std::array<std::uint16_t, 3>;

class MvPoly {
 public:
  explicit MvPoly(const FieldCtx& ctx) : ctx_(&ctx) {}
  static MvPoly constant(const FieldElement& c);
  static MvPoly variable(const FieldCtx& ctx, Var v);
  static MvPoly monomial(const FieldElement& c, Exponents e);

  const FieldCtx& ctx() const { return *ctx_; }
  // No zero coefficients are ever stored.
  const std::map<Exponents, FieldElement>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  FieldElement coeff(Exponents e) const;

  MvPoly& operator+=(const MvPoly& o);
  MvPoly& operator-=(const MvPoly& o);
  MvPoly& operator*=(const MvPoly& o);
  friend MvPoly operator+(MvPoly a, const MvPoly& b) { return a += b; }
  friend MvPoly operator-(MvPoly a, const MvPoly& b) { return a -= b; }
  friend MvPoly operator*(MvPoly a, const MvPoly& b) { return a *= b; }
  friend bool operator==(const MvPoly& a, const MvPoly& b) { return a.ctx_ == b.ctx_ && a.terms_ == b.terms_; }

  void add_term(const FieldElement& c, Exponents e);

 private:
  void require_same(const MvPoly& o) const;

  const FieldCtx* ctx_;
  std::map<Exponents, FieldElement> terms_;
};

enum class MvOp { add, mul };
MvPoly mv_arith(const MvPoly& a, const MvPoly& b, MvOp op);

inline constexpr std::uint32_t kSymbolicPrimeCap = 13;

// c_{p-1}, c_{p-2}, c_{2p-1}, c_{2p-2} of (x(x-1)(x-lambda)(x-t1)(x-t2))^{(p-1)/2}
// over F_p; the genus-2 Cartier matrix is [[c_{p-1}, c_{p-2}], [c_{2p-1}, c_{2p-2}]].
struct SymbolicCartier {
  std::uint32_t p = 0;
  MvPoly c_p_minus_1;
  MvPoly c_p_minus_2;
  MvPoly c_2p_minus_1;
  MvPoly c_2p_minus_2;
};
SymbolicCartier symbolic_cartier_entries(std::uint32_t p);

// D = c_{p-1} c_{2p-2} - c_{p-2} c_{2p-1}
MvPoly d_poly(const SymbolicCartier& entries);
MvPoly d_poly(std::uint32_t p);

// Substitutes the given values (all from one field extending m's field) and
// returns a polynomial over that field in the remaining variables. With no
// values the input is returned unchanged.
MvPoly specialize(const MvPoly& m, const std::optional<FieldElement>& lambda,
                  const std::optional<FieldElement>& t1, const std::optional<FieldElement>& t2);
FieldElement evaluate(const MvPoly& m, const FieldElement& lambda, const FieldElement& t1, const FieldElement& t2);

// Terms in descending lexicographic order of (e_lambda, e_t1, e_t2), e.g.
// "3λ^2t1^2t2^2 + 3λ^2t1^2t2"; prime-field coefficients as integers in [0, p).
std::string to_string(const MvPoly& m);

}  // namespace prymrank
