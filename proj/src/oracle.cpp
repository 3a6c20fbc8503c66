#include "moddiag/oracle.hpp"

#include <algorithm>

namespace moddiag {

/* all RREF matrices with the given pivot columns */
static void emit_rrefs(std::uint32_t p, std::size_t dim, const std::vector<std::size_t>& pivots,
                       std::vector<Subspace>& out) {
  std::size_t k = pivots.size();
  std::vector<std::size_t> free_cells;  // (row, col) cells that may take any value
  for (std::size_t r = 0; r < k; ++r)
    for (std::size_t c = pivots[r] + 1; c < dim; ++c)
      if (std::find(pivots.begin() + r, pivots.end(), c) == pivots.end())
        free_cells.emplace_back(r * dim + c);
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < free_cells.size(); ++i) total *= p;
  for (std::uint64_t code = 0; code < total; ++code) {
    MatrixFp m(p, k, dim);
    for (std::size_t r = 0; r < k; ++r) m.at(r, pivots[r]) = 1;
    std::uint64_t c = code;
    for (auto cell : free_cells) {
      m.a[cell] = std::uint32_t(c % p);
      c /= p;
    }
    Subspace s;
    s.ambient = dim;
    s.basis = m;
    s.pivots = pivots;
    out.push_back(std::move(s));
  }
}

static void pivot_sets(std::size_t dim, std::size_t k, std::size_t from,
                       std::vector<std::size_t>& cur, std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (std::size_t c = from; c < dim; ++c) {
    cur.push_back(c);
    pivot_sets(dim, k, c + 1, cur, out);
    cur.pop_back();
  }
}

std::vector<Subspace> enumerate_subspaces(std::uint32_t p, std::size_t dim) {
  std::vector<Subspace> out;
  for (std::size_t k = 0; k <= dim; ++k) {
    std::vector<std::vector<std::size_t>> psets;
    std::vector<std::size_t> cur;
    pivot_sets(dim, k, 0, cur, psets);
    for (const auto& ps : psets) emit_rrefs(p, dim, ps, out);
  }
  return out;
}

Subspace brute_force_radical(const AlgebraPtr& a) {
  std::size_t n = a->dim;
  std::uint32_t p = a->field.p;
  if (n > 6) fail(Err::DimCapExceeded, "brute-force radical limited to dim <= 6");
  Subspace best = Subspace::zero(p, n);
  for (const auto& v : enumerate_subspaces(p, n)) {
    if (v.dim() <= best.dim()) continue;
    // two-sided ideal?
    bool ideal = true;
    for (std::size_t i = 0; i < n && ideal; ++i) {
      MatrixFp l = left_mult_basis(*a, i);
      if (!is_subset(image_of(l, v), v)) ideal = false;
      if (ideal) {
        Vec e(n, 0);
        e[i] = 1;
        MatrixFp r = right_mult_of(*a, e);
        if (!is_subset(image_of(r, v), v)) ideal = false;
      }
    }
    if (!ideal) continue;
    // nilpotent? iterate products until stable or zero
    Subspace power = v;
    bool nil = false;
    for (std::size_t it = 0; it <= n; ++it) {
      if (power.dim() == 0) {
        nil = true;
        break;
      }
      MatrixFp rows(p, 0, n);
      for (std::size_t x = 0; x < v.dim(); ++x)
        for (std::size_t y = 0; y < power.dim(); ++y) {
          MatrixFp row(p, 1, n);
          row.set_row(0, alg_mul(*a, v.basis.row(x), power.basis.row(y)));
          rows = stack_rows(rows, row);
        }
      Subspace next = Subspace::from_rows(rows);
      if (next.dim() >= power.dim()) break;
      power = next;
    }
    if (nil) best = v;
  }
  return best;
}

LatticeOracle lattice_oracle(const ModulePtr& m, std::size_t dim_cap) {
  if (m->dim > dim_cap)
    fail(Err::DimCapExceeded, "lattice oracle limited to dim <= " + std::to_string(dim_cap));
  std::uint32_t p = m->alg->field.p;
  LatticeOracle out;
  for (auto& s : enumerate_subspaces(p, m->dim))
    if (is_submodule(*m, s)) out.submodules.push_back(std::move(s));

  // radical = intersection of maximal proper submodules (m itself if none)
  out.radical = Subspace::full(p, m->dim);
  bool any_max = false;
  for (const auto& u : out.submodules) {
    if (u.dim() == m->dim) continue;
    bool maximal = true;
    for (const auto& w : out.submodules)
      if (w.dim() < m->dim && w.dim() > u.dim() && is_subset(u, w)) {
        maximal = false;
        break;
      }
    if (maximal) {
      any_max = true;
      out.radical = space_intersect(out.radical, u);
    }
  }
  if (!any_max) out.radical = Subspace::zero(p, m->dim);
  if (m->dim == 0) out.radical = Subspace::zero(p, 0);

  // socle = sum of minimal nonzero submodules
  out.socle = Subspace::zero(p, m->dim);
  for (const auto& u : out.submodules) {
    if (u.dim() == 0) continue;
    bool minimal = true;
    for (const auto& w : out.submodules)
      if (w.dim() > 0 && w.dim() < u.dim() && is_subset(w, u)) {
        minimal = false;
        break;
      }
    if (minimal) out.socle = space_sum(out.socle, u);
  }

  // all two-piece splittings
  for (std::size_t i = 0; i < out.submodules.size(); ++i)
    for (std::size_t j = i; j < out.submodules.size(); ++j) {
      const Subspace& u = out.submodules[i];
      const Subspace& w = out.submodules[j];
      if (u.dim() == 0 || w.dim() == 0) continue;
      if (u.dim() + w.dim() != m->dim) continue;
      if (space_intersect(u, w).dim() != 0) continue;
      out.decompositions.push_back({u, w});
    }

  // one canonical full refinement: repeatedly take the smallest splittable piece
  std::vector<Subspace> todo{Subspace::full(p, m->dim)};
  while (!todo.empty()) {
    Subspace u = todo.back();
    todo.pop_back();
    if (u.dim() == 0) continue;
    // find a proper splitting of u into two invariant pieces inside u
    bool split = false;
    for (std::size_t i = 0; i < out.submodules.size() && !split; ++i) {
      const Subspace& x = out.submodules[i];
      if (x.dim() == 0 || x.dim() >= u.dim() || !is_subset(x, u)) continue;
      for (std::size_t j = 0; j < out.submodules.size() && !split; ++j) {
        const Subspace& y = out.submodules[j];
        if (y.dim() == 0 || !is_subset(y, u)) continue;
        if (x.dim() + y.dim() != u.dim()) continue;
        if (space_intersect(x, y).dim() != 0) continue;
        todo.push_back(x);
        todo.push_back(y);
        split = true;
      }
    }
    if (!split) out.indecomposable_summands.push_back(u);
  }
  std::sort(out.indecomposable_summands.begin(), out.indecomposable_summands.end(),
            [](const Subspace& a, const Subspace& b) {
              if (a.dim() != b.dim()) return a.dim() > b.dim();
              return a.basis.a < b.basis.a;
            });
  return out;
}

}  // namespace moddiag
