#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "moddiag/error.hpp"

namespace moddiag {

using Vec = std::vector<std::uint32_t>;

/* Prime field F_p, 2 <= p < 2^31. Primality is checked at construction. */
struct PrimeField {
  std::uint32_t p;

  explicit PrimeField(std::uint32_t modulus);

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
    std::uint64_t s = std::uint64_t(a) + b;
    return std::uint32_t(s >= p ? s - p : s);
  }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const {
    return a >= b ? a - b : a + p - b;
  }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    return std::uint32_t((std::uint64_t(a) * b) % p);
  }
  std::uint32_t neg(std::uint32_t a) const { return a == 0 ? 0 : p - a; }
  std::uint32_t pow(std::uint32_t a, std::uint64_t e) const;
  std::uint32_t inv(std::uint32_t a) const;  // a != 0
  std::uint32_t reduce(std::int64_t v) const {
    std::int64_t r = v % std::int64_t(p);
    return std::uint32_t(r < 0 ? r + p : r);
  }
};

bool is_prime_u32(std::uint32_t n);

/* Dense row-major matrix with entries reduced mod p. */
struct MatrixFp {
  std::uint32_t p = 2;
  std::size_t rows = 0, cols = 0;
  Vec a;

  MatrixFp() = default;
  MatrixFp(std::uint32_t p_, std::size_t r, std::size_t c)
      : p(p_), rows(r), cols(c), a(r * c, 0) {}

  static MatrixFp identity(std::uint32_t p, std::size_t n);

  std::uint32_t& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  std::uint32_t at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

  Vec row(std::size_t i) const { return Vec(a.begin() + i * cols, a.begin() + (i + 1) * cols); }
  void set_row(std::size_t i, const Vec& v);

  bool operator==(const MatrixFp& o) const {
    return p == o.p && rows == o.rows && cols == o.cols && a == o.a;
  }
  bool is_zero() const;
};

MatrixFp mat_mul(const MatrixFp& x, const MatrixFp& y);
MatrixFp mat_add(const MatrixFp& x, const MatrixFp& y);
MatrixFp mat_sub(const MatrixFp& x, const MatrixFp& y);
MatrixFp mat_scale(const MatrixFp& x, std::uint32_t c);
MatrixFp transpose(const MatrixFp& x);
MatrixFp stack_rows(const MatrixFp& top, const MatrixFp& bottom);
Vec mat_apply(const MatrixFp& x, const Vec& v);           // x * v (column convention)
Vec row_times_mat(const Vec& v, const MatrixFp& x);       // v^T * x

struct RrefResult {
  MatrixFp mat;                  // zero rows removed
  std::vector<std::size_t> pivots;
  std::size_t rank = 0;
};

/* Unique reduced row echelon form; deterministic. */
RrefResult rref(const MatrixFp& m);

std::size_t rank_of(const MatrixFp& m);
std::optional<MatrixFp> inverse(const MatrixFp& m);
/* One solution x of A x = b (free variables set to 0), or nullopt. */
std::optional<Vec> solve(const MatrixFp& A, const Vec& b);

/* Canonical subspace of F_p^ambient: RREF basis rows, no zero rows.
 * Two subspaces are equal iff their representations are bit-identical. */
struct Subspace {
  std::size_t ambient = 0;
  MatrixFp basis;               // RREF
  std::vector<std::size_t> pivots;

  static Subspace zero(std::uint32_t p, std::size_t ambient);
  static Subspace full(std::uint32_t p, std::size_t ambient);
  static Subspace from_rows(const MatrixFp& rows);  // canonicalizes

  std::size_t dim() const { return basis.rows; }
  std::uint32_t p() const { return basis.p; }
  bool operator==(const Subspace& o) const {
    return ambient == o.ambient && basis == o.basis;
  }
};

/* Right null space {v : m v = 0}. rank(m) + dim(kernel) = cols. */
Subspace kernel(const MatrixFp& m);

Subspace space_sum(const Subspace& a, const Subspace& b);
Subspace space_intersect(const Subspace& a, const Subspace& b);
bool is_subset(const Subspace& a, const Subspace& b);
/* Deterministic complement of a inside b (a ⊆ b required): greedy pivot
 * extension over b's RREF basis rows. complement_in(a,b) ⊕ a = b. */
Subspace complement_in(const Subspace& a, const Subspace& b);

bool space_contains(const Subspace& s, const Vec& v);
/* v reduced by the RREF rows of s; zero iff v ∈ s. */
Vec residue(const Subspace& s, const Vec& v);
/* {y : B y = 0} for B = s.basis, i.e. the dual annihilator as a row space. */
Subspace annihilator(const Subspace& s);

/* Image of the row space of B under the column-acting matrix X: rows B_i ↦ X·B_i. */
MatrixFp apply_to_rows(const MatrixFp& X, const MatrixFp& B);
Subspace image_of(const MatrixFp& X, const Subspace& u);
/* {v : X v ∈ u}. */
Subspace preimage_of(const MatrixFp& X, const Subspace& u);

/* Coordinates of v in terms of the rows of C, mod the row space of B
 * (rows of C must be independent mod B). */
std::optional<Vec> coords_mod(const MatrixFp& C, const Subspace& B, const Vec& v);

}  // namespace moddiag
