#include "moddiag/ff.hpp"

#include <algorithm>

namespace moddiag {

bool is_prime_u32(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

PrimeField::PrimeField(std::uint32_t modulus) : p(modulus) {
  if (p < 2 || p > 0x7fffffffu || !is_prime_u32(p))
    fail(Err::BadInput, "modulus " + std::to_string(modulus) + " is not a supported prime");
}

std::uint32_t PrimeField::pow(std::uint32_t a, std::uint64_t e) const {
  std::uint64_t r = 1, b = a % p;
  while (e) {
    if (e & 1) r = (r * b) % p;
    b = (b * b) % p;
    e >>= 1;
  }
  return std::uint32_t(r);
}

std::uint32_t PrimeField::inv(std::uint32_t a) const {
  if (a == 0) fail(Err::BadInput, "inverse of zero");
  return pow(a, p - 2);
}

MatrixFp MatrixFp::identity(std::uint32_t p, std::size_t n) {
  MatrixFp m(p, n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

void MatrixFp::set_row(std::size_t i, const Vec& v) {
  std::copy(v.begin(), v.end(), a.begin() + i * cols);
}

bool MatrixFp::is_zero() const {
  return std::all_of(a.begin(), a.end(), [](std::uint32_t x) { return x == 0; });
}

static void check_compat(const MatrixFp& x, const MatrixFp& y) {
  if (x.p != y.p) fail(Err::BadInput, "field mismatch");
}

MatrixFp mat_mul(const MatrixFp& x, const MatrixFp& y) {
  check_compat(x, y);
  if (x.cols != y.rows) fail(Err::BadInput, "mat_mul shape mismatch");
  MatrixFp r(x.p, x.rows, y.cols);
  const std::uint64_t p = x.p;
  for (std::size_t i = 0; i < x.rows; ++i)
    for (std::size_t k = 0; k < x.cols; ++k) {
      std::uint64_t xv = x.at(i, k);
      if (!xv) continue;
      for (std::size_t j = 0; j < y.cols; ++j) {
        std::uint64_t v = r.at(i, j) + xv * y.at(k, j) % p;
        r.at(i, j) = std::uint32_t(v >= p ? v - p : v);
      }
    }
  return r;
}

MatrixFp mat_add(const MatrixFp& x, const MatrixFp& y) {
  check_compat(x, y);
  if (x.rows != y.rows || x.cols != y.cols) fail(Err::BadInput, "mat_add shape mismatch");
  PrimeField f(x.p);
  MatrixFp r = x;
  for (std::size_t i = 0; i < r.a.size(); ++i) r.a[i] = f.add(r.a[i], y.a[i]);
  return r;
}

MatrixFp mat_sub(const MatrixFp& x, const MatrixFp& y) {
  check_compat(x, y);
  if (x.rows != y.rows || x.cols != y.cols) fail(Err::BadInput, "mat_sub shape mismatch");
  PrimeField f(x.p);
  MatrixFp r = x;
  for (std::size_t i = 0; i < r.a.size(); ++i) r.a[i] = f.sub(r.a[i], y.a[i]);
  return r;
}

MatrixFp mat_scale(const MatrixFp& x, std::uint32_t c) {
  PrimeField f(x.p);
  MatrixFp r = x;
  for (auto& v : r.a) v = f.mul(v, c);
  return r;
}

MatrixFp transpose(const MatrixFp& x) {
  MatrixFp r(x.p, x.cols, x.rows);
  for (std::size_t i = 0; i < x.rows; ++i)
    for (std::size_t j = 0; j < x.cols; ++j) r.at(j, i) = x.at(i, j);
  return r;
}

MatrixFp stack_rows(const MatrixFp& top, const MatrixFp& bottom) {
  check_compat(top, bottom);
  if (top.cols != bottom.cols && top.rows != 0 && bottom.rows != 0)
    fail(Err::BadInput, "stack_rows width mismatch");
  std::size_t cols = top.rows ? top.cols : bottom.cols;
  MatrixFp r(top.p, top.rows + bottom.rows, cols);
  std::copy(top.a.begin(), top.a.end(), r.a.begin());
  std::copy(bottom.a.begin(), bottom.a.end(), r.a.begin() + top.a.size());
  return r;
}

Vec mat_apply(const MatrixFp& x, const Vec& v) {
  if (x.cols != v.size()) fail(Err::BadInput, "mat_apply shape mismatch");
  const std::uint64_t p = x.p;
  Vec r(x.rows, 0);
  for (std::size_t i = 0; i < x.rows; ++i) {
    std::uint64_t acc = 0;
    for (std::size_t j = 0; j < x.cols; ++j) acc = (acc + std::uint64_t(x.at(i, j)) * v[j]) % p;
    r[i] = std::uint32_t(acc);
  }
  return r;
}

Vec row_times_mat(const Vec& v, const MatrixFp& x) {
  if (x.rows != v.size()) fail(Err::BadInput, "row_times_mat shape mismatch");
  const std::uint64_t p = x.p;
  Vec r(x.cols, 0);
  for (std::size_t i = 0; i < x.rows; ++i) {
    if (!v[i]) continue;
    for (std::size_t j = 0; j < x.cols; ++j)
      r[j] = std::uint32_t((r[j] + std::uint64_t(v[i]) * x.at(i, j)) % p);
  }
  return r;
}

RrefResult rref(const MatrixFp& m) {
  PrimeField f(m.p);
  MatrixFp w = m;
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < w.cols && r < w.rows; ++c) {
    std::size_t piv = r;
    while (piv < w.rows && w.at(piv, c) == 0) ++piv;
    if (piv == w.rows) continue;
    if (piv != r)
      for (std::size_t j = 0; j < w.cols; ++j) std::swap(w.at(piv, j), w.at(r, j));
    std::uint32_t s = f.inv(w.at(r, c));
    for (std::size_t j = c; j < w.cols; ++j) w.at(r, j) = f.mul(w.at(r, j), s);
    for (std::size_t i = 0; i < w.rows; ++i) {
      if (i == r || w.at(i, c) == 0) continue;
      std::uint32_t t = w.at(i, c);
      for (std::size_t j = c; j < w.cols; ++j)
        w.at(i, j) = f.sub(w.at(i, j), f.mul(t, w.at(r, j)));
    }
    pivots.push_back(c);
    ++r;
  }
  MatrixFp out(m.p, r, m.cols);
  std::copy(w.a.begin(), w.a.begin() + r * m.cols, out.a.begin());
  return RrefResult{out, pivots, r};
}

std::size_t rank_of(const MatrixFp& m) { return rref(m).rank; }

std::optional<MatrixFp> inverse(const MatrixFp& m) {
  if (m.rows != m.cols) return std::nullopt;
  std::size_t n = m.rows;
  MatrixFp aug(m.p, n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, n + i) = 1;
  }
  RrefResult rr = rref(aug);
  if (rr.rank != n || rr.pivots[n - 1] != n - 1) return std::nullopt;
  MatrixFp inv(m.p, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv.at(i, j) = rr.mat.at(i, n + j);
  return inv;
}

std::optional<Vec> solve(const MatrixFp& A, const Vec& b) {
  if (A.rows != b.size()) fail(Err::BadInput, "solve shape mismatch");
  MatrixFp aug(A.p, A.rows, A.cols + 1);
  for (std::size_t i = 0; i < A.rows; ++i) {
    for (std::size_t j = 0; j < A.cols; ++j) aug.at(i, j) = A.at(i, j);
    aug.at(i, A.cols) = b[i];
  }
  RrefResult rr = rref(aug);
  Vec x(A.cols, 0);
  for (std::size_t i = 0; i < rr.rank; ++i) {
    if (rr.pivots[i] == A.cols) return std::nullopt;  // inconsistent
    x[rr.pivots[i]] = rr.mat.at(i, A.cols);
  }
  return x;
}

Subspace Subspace::zero(std::uint32_t p, std::size_t ambient) {
  Subspace s;
  s.ambient = ambient;
  s.basis = MatrixFp(p, 0, ambient);
  return s;
}

Subspace Subspace::full(std::uint32_t p, std::size_t ambient) {
  return from_rows(MatrixFp::identity(p, ambient));
}

Subspace Subspace::from_rows(const MatrixFp& rows) {
  RrefResult rr = rref(rows);
  Subspace s;
  s.ambient = rows.cols;
  s.basis = rr.mat;
  s.pivots = rr.pivots;
  return s;
}

Subspace kernel(const MatrixFp& m) {
  RrefResult rr = rref(m);
  std::vector<bool> is_pivot(m.cols, false);
  for (auto c : rr.pivots) is_pivot[c] = true;
  PrimeField f(m.p);
  MatrixFp basis(m.p, m.cols - rr.rank, m.cols);
  std::size_t row = 0;
  for (std::size_t free = 0; free < m.cols; ++free) {
    if (is_pivot[free]) continue;
    basis.at(row, free) = 1;
    for (std::size_t i = 0; i < rr.rank; ++i)
      basis.at(row, rr.pivots[i]) = f.neg(rr.mat.at(i, free));
    ++row;
  }
  return Subspace::from_rows(basis);
}

static void check_ambient(const Subspace& a, const Subspace& b) {
  if (a.ambient != b.ambient || a.p() != b.p())
    fail(Err::AmbientMismatch, "subspace ambient spaces differ");
}

Subspace space_sum(const Subspace& a, const Subspace& b) {
  check_ambient(a, b);
  return Subspace::from_rows(stack_rows(a.basis, b.basis));
}

/* Zassenhaus: rref of [A|A; B|0]; rows with zero left half carry the
 * intersection in their right half. */
Subspace space_intersect(const Subspace& a, const Subspace& b) {
  check_ambient(a, b);
  std::size_t n = a.ambient;
  MatrixFp big(a.p(), a.dim() + b.dim(), 2 * n);
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < n; ++j) {
      big.at(i, j) = a.basis.at(i, j);
      big.at(i, n + j) = a.basis.at(i, j);
    }
  for (std::size_t i = 0; i < b.dim(); ++i)
    for (std::size_t j = 0; j < n; ++j) big.at(a.dim() + i, j) = b.basis.at(i, j);
  RrefResult rr = rref(big);
  MatrixFp rows(a.p(), 0, n);
  for (std::size_t i = 0; i < rr.rank; ++i) {
    bool left_zero = true;
    for (std::size_t j = 0; j < n && left_zero; ++j)
      if (rr.mat.at(i, j) != 0) left_zero = false;
    if (!left_zero) continue;
    MatrixFp one(a.p(), 1, n);
    for (std::size_t j = 0; j < n; ++j) one.at(0, j) = rr.mat.at(i, n + j);
    rows = stack_rows(rows, one);
  }
  return Subspace::from_rows(rows);
}

bool is_subset(const Subspace& a, const Subspace& b) {
  check_ambient(a, b);
  if (a.dim() > b.dim()) return false;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    Vec r = residue(b, a.basis.row(i));
    if (!std::all_of(r.begin(), r.end(), [](std::uint32_t x) { return x == 0; })) return false;
  }
  return true;
}

Subspace complement_in(const Subspace& a, const Subspace& b) {
  check_ambient(a, b);
  if (!is_subset(a, b)) fail(Err::NotASubspace, "complement_in: a is not contained in b");
  Subspace work = a;
  MatrixFp chosen(a.p(), 0, a.ambient);
  std::size_t need = b.dim() - a.dim();
  for (std::size_t i = 0; i < b.dim() && chosen.rows < need; ++i) {
    Vec v = b.basis.row(i);
    if (space_contains(work, v)) continue;
    MatrixFp vrow(a.p(), 1, a.ambient);
    vrow.set_row(0, v);
    chosen = stack_rows(chosen, vrow);
    work = Subspace::from_rows(stack_rows(work.basis, vrow));
  }
  return Subspace::from_rows(chosen);
}

bool space_contains(const Subspace& s, const Vec& v) {
  Vec r = residue(s, v);
  return std::all_of(r.begin(), r.end(), [](std::uint32_t x) { return x == 0; });
}

Vec residue(const Subspace& s, const Vec& v) {
  if (v.size() != s.ambient) fail(Err::AmbientMismatch, "residue: vector length mismatch");
  PrimeField f(s.p());
  Vec r = v;
  for (std::size_t i = 0; i < s.dim(); ++i) {
    std::uint32_t c = r[s.pivots[i]];
    if (!c) continue;
    for (std::size_t j = 0; j < s.ambient; ++j)
      r[j] = f.sub(r[j], f.mul(c, s.basis.at(i, j)));
  }
  return r;
}

Subspace annihilator(const Subspace& s) {
  if (s.dim() == 0) return Subspace::full(s.p(), s.ambient);
  return kernel(s.basis);
}

MatrixFp apply_to_rows(const MatrixFp& X, const MatrixFp& B) {
  return mat_mul(B, transpose(X));
}

Subspace image_of(const MatrixFp& X, const Subspace& u) {
  return Subspace::from_rows(apply_to_rows(X, u.basis));
}

Subspace preimage_of(const MatrixFp& X, const Subspace& u) {
  if (u.dim() == u.ambient) return Subspace::full(X.p, X.cols);
  Subspace ann = annihilator(u);       // rows y with B y = 0
  return kernel(mat_mul(ann.basis, X));  // {v : y·(Xv) = 0 ∀y} = {v : Xv ∈ u}
}

std::optional<Vec> coords_mod(const MatrixFp& C, const Subspace& B, const Vec& v) {
  MatrixFp stacked = stack_rows(C, B.basis);
  std::optional<Vec> x = solve(transpose(stacked), v);
  if (!x) return std::nullopt;
  return Vec(x->begin(), x->begin() + C.rows);
}

}  // namespace moddiag
