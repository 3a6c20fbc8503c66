#pragma once

#include <cstdint>
#include <vector>

#include "moddiag/ff.hpp"

namespace moddiag {

/* Polynomials over F_p: coefficient vector, index = degree, normalized
 * (no trailing zeros; the zero polynomial is the empty vector). */
struct PolyFp {
  std::uint32_t p = 2;
  Vec c;

  PolyFp() = default;
  PolyFp(std::uint32_t p_, Vec coeffs);

  bool is_zero() const { return c.empty(); }
  std::size_t degree() const { return c.empty() ? 0 : c.size() - 1; }
  std::uint32_t lead() const { return c.back(); }
  bool operator==(const PolyFp& o) const { return p == o.p && c == o.c; }

  static PolyFp zero(std::uint32_t p) { return PolyFp(p, {}); }
  static PolyFp one(std::uint32_t p) { return PolyFp(p, {1}); }
  static PolyFp x(std::uint32_t p) { return PolyFp(p, {0, 1}); }
  static PolyFp constant(std::uint32_t p, std::uint32_t v) { return PolyFp(p, {v}); }
};

PolyFp poly_add(const PolyFp& f, const PolyFp& g);
PolyFp poly_sub(const PolyFp& f, const PolyFp& g);
PolyFp poly_mul(const PolyFp& f, const PolyFp& g);
PolyFp poly_scale(const PolyFp& f, std::uint32_t s);
PolyFp poly_monic(const PolyFp& f);
/* quotient and remainder of f by g (g != 0) */
std::pair<PolyFp, PolyFp> poly_divmod(const PolyFp& f, const PolyFp& g);
PolyFp poly_mod(const PolyFp& f, const PolyFp& g);
PolyFp poly_gcd(const PolyFp& f, const PolyFp& g);  // monic
PolyFp poly_derivative(const PolyFp& f);
PolyFp poly_powmod(const PolyFp& f, std::uint64_t e, const PolyFp& mod);
std::uint32_t poly_eval(const PolyFp& f, std::uint32_t x);

/* Matrix of f applied to a square matrix. */
MatrixFp poly_at_matrix(const PolyFp& f, const MatrixFp& m);

/* Characteristic polynomial det(x I - m), monic of degree n (Hessenberg). */
PolyFp charpoly(const MatrixFp& m);
/* Minimal polynomial of m (monic), via Krylov chains + lcm. */
PolyFp minpoly(const MatrixFp& m);

struct PolyFactor {
  PolyFp base;          // monic irreducible
  std::size_t mult = 1;
};

/* Complete factorization into monic irreducibles (Berlekamp; deterministic;
 * splitting enumerates field scalars, intended for small p). Factors sorted
 * by (degree, coefficient vector). */
std::vector<PolyFactor> poly_factor(const PolyFp& f);

}  // namespace moddiag
