#pragma once

// Brute-force point counting and L-polynomials. This path shares nothing
// with the Cartier computation beyond field construction: counts run over a
// discrete-log (Zech) representation of F_{q^m}, where the quadratic
// character of g^n is simply (-1)^n.

#include <cstdint>
#include <vector>

#include "prymrank/cartier.hpp"
#include "prymrank/poly.hpp"

namespace prymrank {

inline constexpr std::uint64_t kDefaultCountingCap = std::uint64_t{1} << 22;

struct LPolynomial {
  std::vector<std::int64_t> coeffs;  // degree 2g, coeffs[0] = 1
  std::int64_t q = 0;
  int genus = 0;
};

// #X(F_{q^m}) for the smooth projective model of y^2 = f(x), q the size of
// f's field. Points at infinity: 1 for odd degree, 1 + chi(lead) for even.
// Works for any squarefree f of degree >= 1 (genus 0 included).
std::int64_t count_points(const Poly& f, unsigned m, std::uint64_t cap = kDefaultCountingCap);
std::int64_t count_points(const HyperellipticCurve& x, unsigned m, std::uint64_t cap = kDefaultCountingCap);

// L(t) from #X(F_{q^i}), i = 1..g, by Newton's identities and the
// functional equation.
LPolynomial l_polynomial(const Poly& f, std::uint64_t cap = kDefaultCountingCap);
LPolynomial l_polynomial(const HyperellipticCurve& x, std::uint64_t cap = kDefaultCountingCap);

// #X(F_{q^m}) predicted by L, any m >= 1.
std::int64_t count_from_l_polynomial(const LPolynomial& l, unsigned m);

// Degree of L(t) mod p.
int p_rank_zeta(const HyperellipticCurve& x, std::uint64_t cap = kDefaultCountingCap);
int degree_mod_p(const std::vector<std::int64_t>& coeffs, std::uint32_t p);
std::vector<std::int64_t> multiply(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b);

// Points over F_{q^m} of the normalized fiber product of y1^2 = f1(x) and
// y2^2 = f2(x), which must have disjoint branch loci (f1 f2 squarefree and
// not both of odd degree).
std::int64_t count_fiber_product_points(const Poly& f1, const Poly& f2, unsigned m,
                                        std::uint64_t cap = kDefaultCountingCap);
std::int64_t count_fiber_product_points(const HyperellipticCurve& c1, const HyperellipticCurve& c2, unsigned m,
                                        std::uint64_t cap = kDefaultCountingCap);

}  // namespace prymrank
