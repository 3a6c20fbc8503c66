#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "moddiag/ff.hpp"

namespace moddiag {

struct AlgebraCache;  // module-layer data (simples, p.i.m.s, ...), see module.hpp

/* w_0 = 1; w_j = w_{parent} * b_{gens[gen]}. Lets any algebra element act on a
 * module that only stores action matrices for the generators. */
struct WordRecipe {
  std::size_t parent = 0;
  std::size_t gen = 0;
};

struct AlgebraKind {
  bool is_selfinjective = false;
  bool is_symmetric = false;
  bool is_group_algebra = false;
};

struct Algebra {
  PrimeField field;
  std::size_t dim = 0;
  Vec one;                           // coordinates of the identity
  std::vector<std::size_t> gens;     // basis indices of a generating set

  bool is_group = false;
  bool commutative = false;
  /* group algebras: basis = group elements in BFS order, index 0 = identity */
  std::vector<std::vector<std::size_t>> group_table;
  std::vector<std::size_t> group_inverse;
  /* structure-constant algebras: mult[i][j] = coordinates of b_i * b_j */
  std::vector<std::vector<Vec>> mult;

  /* product basis: row j of prod_basis = coordinates of w_j; recipes as above */
  MatrixFp prod_basis;
  MatrixFp prod_basis_inv_t;  // (prod_basis^T)^{-1}
  std::vector<WordRecipe> recipes;

  std::vector<Subspace> radical_chain;  // J^0 = A ⊃ J^1 ⊃ ... ⊃ 0

  std::uint64_t uid = 0;
  mutable std::shared_ptr<AlgebraCache> cache;  // filled once by the module layer

  explicit Algebra(PrimeField f) : field(f) {}

  const Subspace& radical() const { return radical_chain[1]; }
  std::size_t nil_index() const { return radical_chain.size() - 1; }  // J^k = 0
};

using AlgebraPtr = std::shared_ptr<const Algebra>;

struct AlgebraSpec {
  std::uint32_t field = 2;
  enum Kind { group, structure } kind = group;

  std::vector<std::vector<std::size_t>> perm_gens;  // 0-based image vectors
  std::vector<MatrixFp> mat_gens;                   // invertible matrices over F_p

  std::size_t dim = 0;
  std::vector<std::vector<Vec>> mult;
  Vec one;
  std::vector<std::size_t> gens;  // optional for structure input; empty = all

  std::size_t max_group_order = 4096;
};

/* Construct and verify an algebra (associativity, two-sided identity, and a
 * generating set); computes the radical chain. */
AlgebraPtr build_algebra(const AlgebraSpec& spec);

Vec alg_basis_mul(const Algebra& a, std::size_t i, std::size_t j);
Vec alg_mul(const Algebra& a, const Vec& x, const Vec& y);
MatrixFp left_mult_basis(const Algebra& a, std::size_t i);
MatrixFp left_mult_of(const Algebra& a, const Vec& x);
MatrixFp right_mult_of(const Algebra& a, const Vec& x);
/* coordinates of x in the product basis (rows of prod_basis) */
Vec prod_basis_coords(const Algebra& a, const Vec& x);

/* Jacobson radical by the characteristic-p trace-form chain: refine
 * R_{i+1} = {x in R_i : c_{p^i}(L_{xy}) = 0 for all y in R_i} for
 * i = 0..floor(log_p dim), where c_k is the k-th charpoly coefficient of the
 * regular representation. Over F_p the p^i-th root is trivial, so each step
 * is one exact linear solve. */
Subspace jacobson_radical(const Algebra& a);

/* Convenience builders used by tests and the bundled corpus. */
AlgebraSpec group_algebra_spec(std::uint32_t p, std::vector<std::vector<std::size_t>> perms);
AlgebraSpec truncated_polynomial_spec(std::uint32_t p, std::size_t n);  // k[x]/(x^n)

}  // namespace moddiag
