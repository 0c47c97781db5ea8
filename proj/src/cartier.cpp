#include "prymrank/cartier.hpp"

#include <utility>

namespace prymrank {

HyperellipticCurve::HyperellipticCurve(Poly f) : f_(std::move(f)) {
  if (f_.degree() < 3) throw MathError("hyperelliptic model needs deg f >= 3");
  if (!is_squarefree(f_)) throw MathError("f is not squarefree: y^2 = f(x) is singular");
}

std::string HyperellipticCurve::to_string() const { return ctx().spec() + ";f=" + prymrank::to_string(f_); }

HyperellipticCurve HyperellipticCurve::parse(std::string_view text) {
  const auto semi = text.find(';');
  if (semi == std::string_view::npos) throw ParseError("curve spec must look like '<field spec>;f=<poly>'");
  const FieldCtx& ctx = parse_field_spec(text.substr(0, semi));
  auto rest = text.substr(semi + 1);
  while (!rest.empty() && rest.front() == ' ') rest.remove_prefix(1);
  if (!rest.starts_with("f=")) throw ParseError("curve spec is missing 'f='");
  return HyperellipticCurve(parse_poly(ctx, rest.substr(2)));
}

FieldMatrix::FieldMatrix(const FieldCtx& ctx, std::size_t n) : ctx_(&ctx), n_(n), a_(n * n, ctx.zero()) {}

bool FieldMatrix::is_zero() const {
  for (const auto& e : a_)
    if (!e.is_zero()) return false;
  return true;
}

int FieldMatrix::rank() const {
  std::vector<FieldElement> m = a_;
  int rank = 0;
  for (std::size_t col = 0; col < n_ && static_cast<std::size_t>(rank) < n_; ++col) {
    std::size_t pivot = rank;
    while (pivot < n_ && m[pivot * n_ + col].is_zero()) ++pivot;
    if (pivot == n_) continue;
    for (std::size_t j = 0; j < n_; ++j) std::swap(m[pivot * n_ + j], m[rank * n_ + j]);
    const FieldElement inv = m[rank * n_ + col].inverse();
    for (std::size_t i = rank + 1; i < n_; ++i) {
      if (m[i * n_ + col].is_zero()) continue;
      const FieldElement factor = m[i * n_ + col] * inv;
      for (std::size_t j = col; j < n_; ++j) m[i * n_ + j] -= factor * m[rank * n_ + j];
    }
    ++rank;
  }
  return rank;
}

FieldElement FieldMatrix::determinant() const {
  std::vector<FieldElement> m = a_;
  FieldElement det = ctx_->one();
  for (std::size_t col = 0; col < n_; ++col) {
    std::size_t pivot = col;
    while (pivot < n_ && m[pivot * n_ + col].is_zero()) ++pivot;
    if (pivot == n_) return ctx_->zero();
    if (pivot != col) {
      for (std::size_t j = 0; j < n_; ++j) std::swap(m[pivot * n_ + j], m[col * n_ + j]);
      det = -det;
    }
    det *= m[col * n_ + col];
    const FieldElement inv = m[col * n_ + col].inverse();
    for (std::size_t i = col + 1; i < n_; ++i) {
      if (m[i * n_ + col].is_zero()) continue;
      const FieldElement factor = m[i * n_ + col] * inv;
      for (std::size_t j = col; j < n_; ++j) m[i * n_ + j] -= factor * m[col * n_ + j];
    }
  }
  return det;
}

FieldMatrix operator*(const FieldMatrix& a, const FieldMatrix& b) {
  if (a.ctx_ != b.ctx_ || a.n_ != b.n_) throw MathError("matrix shape or field mismatch");
  FieldMatrix r(*a.ctx_, a.n_);
  for (std::size_t i = 0; i < a.n_; ++i)
    for (std::size_t k = 0; k < a.n_; ++k) {
      if (a.at(i, k).is_zero()) continue;
      for (std::size_t j = 0; j < a.n_; ++j) r.at(i, j) += a.at(i, k) * b.at(k, j);
    }
  return r;
}

CartierMatrix cartier_matrix_of(const Poly& f, int genus) {
  const Poly h = half_power_coeffs(f);
  const std::int64_t p = f.ctx().p();
  CartierMatrix m(f.ctx(), static_cast<std::size_t>(genus));
  for (int i = 1; i <= genus; ++i)
    for (int j = 1; j <= genus; ++j) {
      const std::int64_t idx = i * p - j;
      if (idx >= 0) m.at(i - 1, j - 1) = h.coeff(static_cast<std::size_t>(idx));
    }
  return m;
}

CartierMatrix cartier_matrix(const HyperellipticCurve& x) { return cartier_matrix_of(x.f(), x.genus()); }

FieldMatrix frobenius_twist(const FieldMatrix& m) {
  FieldMatrix r = m;
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j) r.at(i, j) = m.at(i, j).frobenius();
  return r;
}

int stable_rank(const FieldMatrix& m) {
  if (m.size() == 0) return 0;
  FieldMatrix product = m, twisted = m;
  for (std::size_t i = 1; i < m.size(); ++i) {
    twisted = frobenius_twist(twisted);
    product = twisted * product;
  }
  return product.rank();
}

int p_rank_unchecked(const Poly& f) {
  const int g = (f.degree() - 1) / 2;
  return stable_rank(cartier_matrix_of(f, g));
}

int p_rank(const HyperellipticCurve& x, int genus_cap) {
  if (x.genus() > genus_cap)
    throw CapExceeded("genus " + std::to_string(x.genus()) + " exceeds cap " + std::to_string(genus_cap));
  return p_rank_unchecked(x.f());
}

Poly deuring_polynomial(std::uint32_t p) {
  const FieldCtx& fp = build_field(p, 1);
  const std::uint32_t m = (p - 1) / 2;
  std::vector<std::int64_t> coeffs;
  std::int64_t binom = 1;  // binom(m, i) mod p
  for (std::uint32_t i = 0; i <= m; ++i) {
    coeffs.push_back(binom * binom % p);
    // binom(m, i+1) = binom(m, i) * (m - i) / (i + 1); i + 1 <= m < p is invertible
    if (i < m) {
      FieldElement b = fp.from_int(binom) * fp.from_int(m - i) / fp.from_int(i + 1);
      binom = b.coeff(0);
    }
  }
  return Poly::from_ints(fp, coeffs);
}

bool is_supersingular_lambda(const FieldElement& lambda) {
  if (lambda.is_zero() || lambda.is_one()) throw MathError("Legendre parameter must avoid 0 and 1");
  const Poly h = embed(deuring_polynomial(lambda.ctx().p()), lambda.ctx());
  return h.eval(lambda).is_zero();
}

std::string to_string(const FieldMatrix& m) {
  std::string s;
  for (std::size_t i = 0; i < m.size(); ++i) {
    s += "[";
    for (std::size_t j = 0; j < m.size(); ++j) {
      if (j) s += " ";
      s += to_string(m.at(i, j));
    }
    s += "]";
    if (i + 1 < m.size()) s += "\n";
  }
  return s;
}

}  // namespace prymrank
