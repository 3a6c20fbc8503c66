#include "moddiag/algebra.hpp"

#include <algorithm>
#include <atomic>
#include <map>

#include "moddiag/poly.hpp"

namespace moddiag {

static std::atomic<std::uint64_t> next_uid{1};

Vec alg_basis_mul(const Algebra& a, std::size_t i, std::size_t j) {
  Vec r(a.dim, 0);
  if (a.is_group) {
    r[a.group_table[i][j]] = 1;
    return r;
  }
  return a.mult[i][j];
}

Vec alg_mul(const Algebra& a, const Vec& x, const Vec& y) {
  const PrimeField& f = a.field;
  Vec r(a.dim, 0);
  for (std::size_t i = 0; i < a.dim; ++i) {
    if (!x[i]) continue;
    for (std::size_t j = 0; j < a.dim; ++j) {
      if (!y[j]) continue;
      std::uint32_t c = f.mul(x[i], y[j]);
      if (a.is_group) {
        std::size_t k = a.group_table[i][j];
        r[k] = f.add(r[k], c);
      } else {
        const Vec& m = a.mult[i][j];
        for (std::size_t k = 0; k < a.dim; ++k)
          if (m[k]) r[k] = f.add(r[k], f.mul(c, m[k]));
      }
    }
  }
  return r;
}

MatrixFp left_mult_basis(const Algebra& a, std::size_t i) {
  MatrixFp m(a.field.p, a.dim, a.dim);
  for (std::size_t j = 0; j < a.dim; ++j) {
    Vec col = alg_basis_mul(a, i, j);
    for (std::size_t k = 0; k < a.dim; ++k) m.at(k, j) = col[k];
  }
  return m;
}

MatrixFp left_mult_of(const Algebra& a, const Vec& x) {
  MatrixFp m(a.field.p, a.dim, a.dim);
  for (std::size_t j = 0; j < a.dim; ++j) {
    Vec ej(a.dim, 0);
    ej[j] = 1;
    Vec col = alg_mul(a, x, ej);
    for (std::size_t k = 0; k < a.dim; ++k) m.at(k, j) = col[k];
  }
  return m;
}

MatrixFp right_mult_of(const Algebra& a, const Vec& x) {
  MatrixFp m(a.field.p, a.dim, a.dim);
  for (std::size_t j = 0; j < a.dim; ++j) {
    Vec ej(a.dim, 0);
    ej[j] = 1;
    Vec col = alg_mul(a, ej, x);
    for (std::size_t k = 0; k < a.dim; ++k) m.at(k, j) = col[k];
  }
  return m;
}

Vec prod_basis_coords(const Algebra& a, const Vec& x) {
  return mat_apply(a.prod_basis_inv_t, x);
}

/* ---- group closure ---- */

namespace {

struct GroupElt {
  std::vector<std::size_t> perm;  // empty if matrix-based
  MatrixFp mat;

  bool operator<(const GroupElt& o) const {
    if (perm != o.perm) return perm < o.perm;
    return mat.a < o.mat.a;
  }
  bool operator==(const GroupElt& o) const { return perm == o.perm && mat.a == o.mat.a; }
};

GroupElt elt_mul(const GroupElt& x, const GroupElt& y) {
  GroupElt r;
  if (!x.perm.empty()) {
    r.perm.resize(x.perm.size());
    for (std::size_t i = 0; i < x.perm.size(); ++i) r.perm[i] = x.perm[y.perm[i]];
  } else {
    r.mat = mat_mul(x.mat, y.mat);
  }
  return r;
}

void build_group(const AlgebraSpec& spec, Algebra& a) {
  std::vector<GroupElt> gens;
  std::size_t deg = 0;
  for (const auto& pg : spec.perm_gens) {
    if (deg == 0) deg = pg.size();
    if (pg.size() != deg || pg.empty()) fail(Err::BadInput, "permutation generators of unequal degree");
    std::vector<bool> seen(deg, false);
    for (auto v : pg) {
      if (v >= deg || seen[v]) fail(Err::BadInput, "generator is not a permutation");
      seen[v] = true;
    }
    gens.push_back(GroupElt{pg, {}});
  }
  for (const auto& mg : spec.mat_gens) {
    if (mg.rows != mg.cols || mg.p != spec.field) fail(Err::BadInput, "matrix generator must be square over the base field");
    if (!inverse(mg)) fail(Err::BadInput, "matrix generator not invertible");
    gens.push_back(GroupElt{{}, mg});
  }
  if (gens.empty()) fail(Err::BadInput, "group algebra needs at least one generator");
  if (!spec.perm_gens.empty() && !spec.mat_gens.empty())
    fail(Err::BadInput, "mixing permutation and matrix generators is not supported");

  GroupElt id;
  if (!spec.perm_gens.empty()) {
    id.perm.resize(deg);
    for (std::size_t i = 0; i < deg; ++i) id.perm[i] = i;
  } else {
    id.mat = MatrixFp::identity(spec.field, gens[0].mat.rows);
  }

  std::vector<GroupElt> elts{id};
  std::map<GroupElt, std::size_t> index{{id, 0}};
  for (std::size_t head = 0; head < elts.size(); ++head) {
    for (const auto& g : gens) {
      GroupElt prod = elt_mul(elts[head], g);
      if (index.emplace(prod, elts.size()).second) {
        elts.push_back(prod);
        if (elts.size() > spec.max_group_order)
          fail(Err::GroupClosureOverflow, "group order exceeds cap " + std::to_string(spec.max_group_order));
      }
    }
  }

  std::size_t n = elts.size();
  a.dim = n;
  a.is_group = true;
  a.one.assign(n, 0);
  a.one[0] = 1;
  a.group_table.assign(n, std::vector<std::size_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a.group_table[i][j] = index.at(elt_mul(elts[i], elts[j]));
  a.group_inverse.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (a.group_table[i][j] == 0) a.group_inverse[i] = j;
  for (const auto& g : gens) {
    std::size_t gi = index.at(g);
    if (std::find(a.gens.begin(), a.gens.end(), gi) == a.gens.end()) a.gens.push_back(gi);
  }
  a.commutative = true;
  for (std::size_t i = 0; i < n && a.commutative; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (a.group_table[i][j] != a.group_table[j][i]) {
        a.commutative = false;
        break;
      }
}

void build_structure(const AlgebraSpec& spec, Algebra& a) {
  std::size_t n = spec.dim;
  if (n == 0) fail(Err::BadInput, "structure algebra needs positive dimension");
  if (spec.mult.size() != n) fail(Err::BadInput, "mult tensor has wrong shape");
  for (const auto& row : spec.mult) {
    if (row.size() != n) fail(Err::BadInput, "mult tensor has wrong shape");
    for (const auto& v : row)
      if (v.size() != n) fail(Err::BadInput, "mult tensor has wrong shape");
  }
  if (spec.one.size() != n) fail(Err::BadInput, "identity coordinates have wrong length");
  a.dim = n;
  a.mult = spec.mult;
  for (auto& row : a.mult)
    for (auto& v : row)
      for (auto& c : v) c %= a.field.p;
  a.one = spec.one;
  for (auto& c : a.one) c %= a.field.p;
  a.gens = spec.gens;
  if (a.gens.empty())
    for (std::size_t i = 0; i < n; ++i) a.gens.push_back(i);
  for (auto g : a.gens)
    if (g >= n) fail(Err::BadInput, "generator index out of range");

  // two-sided identity
  MatrixFp lone = left_mult_of(a, a.one);
  MatrixFp rone = right_mult_of(a, a.one);
  if (!(lone == MatrixFp::identity(a.field.p, n)) || !(rone == MatrixFp::identity(a.field.p, n)))
    fail(Err::NoIdentity, "given element is not a two-sided identity");

  // associativity: L_i L_j = L_{b_i b_j} for all basis pairs
  std::vector<MatrixFp> lm;
  for (std::size_t i = 0; i < n; ++i) lm.push_back(left_mult_basis(a, i));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      MatrixFp lhs = mat_mul(lm[i], lm[j]);
      MatrixFp rhs(a.field.p, n, n);
      const Vec& prod = a.mult[i][j];
      for (std::size_t k = 0; k < n; ++k)
        if (prod[k]) rhs = mat_add(rhs, mat_scale(lm[k], prod[k]));
      if (!(lhs == rhs))
        fail(Err::NotAssociative, "structure constants violate associativity at pair (" +
                                      std::to_string(i) + "," + std::to_string(j) + ")");
    }

  a.commutative = true;
  for (std::size_t i = 0; i < n && a.commutative; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (a.mult[i][j] != a.mult[j][i]) {
        a.commutative = false;
        break;
      }
}

void build_prod_basis(Algebra& a) {
  std::size_t n = a.dim;
  MatrixFp rows(a.field.p, 0, n);
  Subspace span = Subspace::zero(a.field.p, n);
  std::vector<Vec> elems;
  std::vector<WordRecipe> recipes;

  auto push = [&](const Vec& v, std::size_t parent, std::size_t gen) {
    if (space_contains(span, v)) return false;
    MatrixFp r(a.field.p, 1, n);
    r.set_row(0, v);
    rows = stack_rows(rows, r);
    span = Subspace::from_rows(rows);
    elems.push_back(v);
    recipes.push_back(WordRecipe{parent, gen});
    return true;
  };

  push(a.one, 0, 0);
  for (std::size_t head = 0; head < elems.size() && elems.size() < n; ++head) {
    for (std::size_t g = 0; g < a.gens.size() && elems.size() < n; ++g) {
      Vec bg(n, 0);
      bg[a.gens[g]] = 1;
      push(alg_mul(a, elems[head], bg), head, g);
    }
  }
  if (elems.size() != n)
    fail(Err::BadInput, "generating set does not generate the algebra as products");
  a.prod_basis = rows;
  auto inv = inverse(transpose(rows));
  a.prod_basis_inv_t = *inv;
  a.recipes = recipes;
}

}  // namespace

Subspace jacobson_radical(const Algebra& a) {
  std::size_t n = a.dim;
  const PrimeField& f = a.field;
  Subspace r = Subspace::full(f.p, n);
  std::uint64_t pk = 1;
  for (std::size_t i = 0; pk <= n; ++i, pk *= f.p) {
    std::size_t m = r.dim();
    if (m == 0) break;
    MatrixFp cond(f.p, m, m);  // cond[k][j] = c_{p^i}(L_{x_j y_k})
    for (std::size_t j = 0; j < m; ++j) {
      Vec xj = r.basis.row(j);
      for (std::size_t k = 0; k < m; ++k) {
        Vec prod = alg_mul(a, xj, r.basis.row(k));
        PolyFp cp = charpoly(left_mult_of(a, prod));
        cond.at(k, j) = cp.c[n - pk];
      }
    }
    Subspace coeff_kernel = kernel(cond);
    r = Subspace::from_rows(mat_mul(coeff_kernel.basis, r.basis));
  }
  return r;
}

static void build_radical_chain(Algebra& a) {
  Subspace j = jacobson_radical(a);
  a.radical_chain.clear();
  a.radical_chain.push_back(Subspace::full(a.field.p, a.dim));
  a.radical_chain.push_back(j);
  while (a.radical_chain.back().dim() > 0) {
    const Subspace& prev = a.radical_chain.back();
    MatrixFp rows(a.field.p, 0, a.dim);
    for (std::size_t x = 0; x < j.dim(); ++x)
      for (std::size_t y = 0; y < prev.dim(); ++y) {
        MatrixFp row(a.field.p, 1, a.dim);
        row.set_row(0, alg_mul(a, j.basis.row(x), prev.basis.row(y)));
        rows = stack_rows(rows, row);
      }
    Subspace next = Subspace::from_rows(rows);
    if (next.dim() >= prev.dim() && prev.dim() > 0)
      fail(Err::BadInput, "radical chain failed to decrease; radical computation inconsistent");
    a.radical_chain.push_back(next);
  }
}

AlgebraPtr build_algebra(const AlgebraSpec& spec) {
  auto a = std::make_shared<Algebra>(PrimeField(spec.field));
  if (spec.kind == AlgebraSpec::group)
    build_group(spec, *a);
  else
    build_structure(spec, *a);
  build_prod_basis(*a);
  build_radical_chain(*a);
  a->uid = next_uid.fetch_add(1);
  return a;
}

AlgebraSpec group_algebra_spec(std::uint32_t p, std::vector<std::vector<std::size_t>> perms) {
  AlgebraSpec s;
  s.field = p;
  s.kind = AlgebraSpec::group;
  s.perm_gens = std::move(perms);
  return s;
}

AlgebraSpec truncated_polynomial_spec(std::uint32_t p, std::size_t n) {
  AlgebraSpec s;
  s.field = p;
  s.kind = AlgebraSpec::structure;
  s.dim = n;
  s.one.assign(n, 0);
  s.one[0] = 1;
  s.mult.assign(n, std::vector<Vec>(n, Vec(n, 0)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i + j < n) s.mult[i][j][i + j] = 1;
  s.gens = n > 1 ? std::vector<std::size_t>{1} : std::vector<std::size_t>{0};
  return s;
}

}  // namespace moddiag
