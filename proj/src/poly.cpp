#include "moddiag/poly.hpp"

#include <algorithm>

namespace moddiag {

static void trim(Vec& c) {
  while (!c.empty() && c.back() == 0) c.pop_back();
}

PolyFp::PolyFp(std::uint32_t p_, Vec coeffs) : p(p_), c(std::move(coeffs)) { trim(c); }

PolyFp poly_add(const PolyFp& f, const PolyFp& g) {
  PrimeField k(f.p);
  Vec c(std::max(f.c.size(), g.c.size()), 0);
  for (std::size_t i = 0; i < c.size(); ++i) {
    std::uint32_t a = i < f.c.size() ? f.c[i] : 0;
    std::uint32_t b = i < g.c.size() ? g.c[i] : 0;
    c[i] = k.add(a, b);
  }
  return PolyFp(f.p, std::move(c));
}

PolyFp poly_sub(const PolyFp& f, const PolyFp& g) {
  PrimeField k(f.p);
  Vec c(std::max(f.c.size(), g.c.size()), 0);
  for (std::size_t i = 0; i < c.size(); ++i) {
    std::uint32_t a = i < f.c.size() ? f.c[i] : 0;
    std::uint32_t b = i < g.c.size() ? g.c[i] : 0;
    c[i] = k.sub(a, b);
  }
  return PolyFp(f.p, std::move(c));
}

PolyFp poly_mul(const PolyFp& f, const PolyFp& g) {
  if (f.is_zero() || g.is_zero()) return PolyFp::zero(f.p);
  PrimeField k(f.p);
  Vec c(f.c.size() + g.c.size() - 1, 0);
  for (std::size_t i = 0; i < f.c.size(); ++i) {
    if (!f.c[i]) continue;
    for (std::size_t j = 0; j < g.c.size(); ++j)
      c[i + j] = k.add(c[i + j], k.mul(f.c[i], g.c[j]));
  }
  return PolyFp(f.p, std::move(c));
}

PolyFp poly_scale(const PolyFp& f, std::uint32_t s) {
  PrimeField k(f.p);
  Vec c = f.c;
  for (auto& v : c) v = k.mul(v, s);
  return PolyFp(f.p, std::move(c));
}

PolyFp poly_monic(const PolyFp& f) {
  if (f.is_zero()) return f;
  PrimeField k(f.p);
  return poly_scale(f, k.inv(f.lead()));
}

std::pair<PolyFp, PolyFp> poly_divmod(const PolyFp& f, const PolyFp& g) {
  if (g.is_zero()) fail(Err::BadInput, "poly division by zero");
  PrimeField k(f.p);
  Vec rem = f.c;
  if (rem.size() < g.c.size()) return {PolyFp::zero(f.p), f};
  Vec quo(rem.size() - g.c.size() + 1, 0);
  std::uint32_t glead_inv = k.inv(g.lead());
  for (std::size_t shift = quo.size(); shift-- > 0;) {
    std::size_t lead = shift + g.c.size() - 1;
    std::uint32_t coef = k.mul(rem[lead], glead_inv);
    if (coef) {
      quo[shift] = coef;
      for (std::size_t j = 0; j < g.c.size(); ++j)
        rem[shift + j] = k.sub(rem[shift + j], k.mul(coef, g.c[j]));
    }
  }
  return {PolyFp(f.p, std::move(quo)), PolyFp(f.p, std::move(rem))};
}

PolyFp poly_mod(const PolyFp& f, const PolyFp& g) { return poly_divmod(f, g).second; }

PolyFp poly_gcd(const PolyFp& f, const PolyFp& g) {
  PolyFp a = f, b = g;
  while (!b.is_zero()) {
    PolyFp r = poly_mod(a, b);
    a = b;
    b = r;
  }
  return poly_monic(a);
}

PolyFp poly_derivative(const PolyFp& f) {
  if (f.c.size() < 2) return PolyFp::zero(f.p);
  PrimeField k(f.p);
  Vec c(f.c.size() - 1, 0);
  for (std::size_t i = 1; i < f.c.size(); ++i)
    c[i - 1] = k.mul(f.c[i], std::uint32_t(i % f.p));
  return PolyFp(f.p, std::move(c));
}

PolyFp poly_powmod(const PolyFp& f, std::uint64_t e, const PolyFp& mod) {
  PolyFp r = PolyFp::one(f.p);
  PolyFp b = poly_mod(f, mod);
  while (e) {
    if (e & 1) r = poly_mod(poly_mul(r, b), mod);
    b = poly_mod(poly_mul(b, b), mod);
    e >>= 1;
  }
  return r;
}

std::uint32_t poly_eval(const PolyFp& f, std::uint32_t x) {
  PrimeField k(f.p);
  std::uint32_t r = 0;
  for (std::size_t i = f.c.size(); i-- > 0;) {
    r = k.add(k.mul(r, x), f.c[i]);
    if (i == 0) break;
  }
  return r;
}

MatrixFp poly_at_matrix(const PolyFp& f, const MatrixFp& m) {
  std::size_t n = m.rows;
  MatrixFp acc(m.p, n, n);
  MatrixFp pow = MatrixFp::identity(m.p, n);
  for (std::size_t i = 0; i < f.c.size(); ++i) {
    if (f.c[i]) acc = mat_add(acc, mat_scale(pow, f.c[i]));
    if (i + 1 < f.c.size()) pow = mat_mul(pow, m);
  }
  return acc;
}

/* Hessenberg reduction by similarity, then the standard leading-principal
 * recurrence for the characteristic polynomial. */
PolyFp charpoly(const MatrixFp& m) {
  if (m.rows != m.cols) fail(Err::BadInput, "charpoly: not square");
  std::size_t n = m.rows;
  if (n == 0) return PolyFp::one(m.p);
  PrimeField k(m.p);
  MatrixFp h = m;
  for (std::size_t c = 0; c + 2 < n; ++c) {
    std::size_t piv = c + 1;
    while (piv < n && h.at(piv, c) == 0) ++piv;
    if (piv == n) continue;
    if (piv != c + 1) {
      for (std::size_t j = 0; j < n; ++j) std::swap(h.at(piv, j), h.at(c + 1, j));
      for (std::size_t i = 0; i < n; ++i) std::swap(h.at(i, piv), h.at(i, c + 1));
    }
    std::uint32_t inv = k.inv(h.at(c + 1, c));
    for (std::size_t r = c + 2; r < n; ++r) {
      std::uint32_t f = k.mul(h.at(r, c), inv);
      if (!f) continue;
      for (std::size_t j = 0; j < n; ++j) h.at(r, j) = k.sub(h.at(r, j), k.mul(f, h.at(c + 1, j)));
      for (std::size_t i = 0; i < n; ++i) h.at(i, c + 1) = k.add(h.at(i, c + 1), k.mul(f, h.at(i, r)));
    }
  }
  std::vector<PolyFp> ps;
  ps.push_back(PolyFp::one(m.p));
  for (std::size_t i = 1; i <= n; ++i) {
    // p_i = (x - h[i-1][i-1]) p_{i-1} - sum_j h[i-1-j][i-1] (prod subdiag) p_{i-1-j}
    PolyFp t = poly_mul(PolyFp(m.p, {k.neg(h.at(i - 1, i - 1)), 1}), ps[i - 1]);
    std::uint32_t beta = 1;
    for (std::size_t j = 1; j < i; ++j) {
      beta = k.mul(beta, h.at(i - j, i - j - 1));
      if (beta == 0) break;
      std::uint32_t coef = k.mul(beta, h.at(i - 1 - j, i - 1));
      if (coef) t = poly_sub(t, poly_scale(ps[i - 1 - j], coef));
    }
    ps.push_back(t);
  }
  return ps[n];
}

PolyFp minpoly(const MatrixFp& m) {
  if (m.rows != m.cols) fail(Err::BadInput, "minpoly: not square");
  std::size_t n = m.rows;
  PolyFp acc = PolyFp::one(m.p);
  Subspace seen = Subspace::zero(m.p, n);
  for (std::size_t s = 0; s < n; ++s) {
    Vec e(n, 0);
    e[s] = 1;
    if (space_contains(seen, e)) continue;
    // Krylov chain from e: rows e, m e, m^2 e, ... until dependence.
    MatrixFp chain(m.p, 0, n);
    Vec v = e;
    while (true) {
      MatrixFp vrow(m.p, 1, n);
      vrow.set_row(0, v);
      if (rank_of(stack_rows(chain, vrow)) == chain.rows) break;
      chain = stack_rows(chain, vrow);
      v = mat_apply(m, v);
    }
    // express v in terms of the chain rows: v = sum c_i m^i e
    std::optional<Vec> c = solve(transpose(chain), v);
    PrimeField k(m.p);
    Vec rel(chain.rows + 1, 0);
    for (std::size_t i = 0; i < chain.rows; ++i) rel[i] = k.neg((*c)[i]);
    rel[chain.rows] = 1;
    PolyFp local(m.p, rel);
    PolyFp g = poly_gcd(acc, local);
    acc = poly_divmod(poly_mul(acc, local), g).first;  // lcm
    seen = space_sum(seen, Subspace::from_rows(chain));
    if (seen.dim() == n && acc.degree() == n) break;
  }
  return poly_monic(acc);
}

/* Squarefree decomposition in characteristic p: returns (g_i, i) with
 * f = prod g_i^i, g_i squarefree and pairwise coprime. */
static void squarefree_decompose(const PolyFp& f, std::size_t outer_mult,
                                 std::vector<std::pair<PolyFp, std::size_t>>& out) {
  PolyFp fd = poly_derivative(f);
  if (fd.is_zero()) {
    // f = h(x^p) = (h~(x))^p over F_p
    Vec h((f.c.size() - 1) / f.p + 1, 0);
    for (std::size_t i = 0; i < f.c.size(); i += f.p) h[i / f.p] = f.c[i];
    squarefree_decompose(PolyFp(f.p, h), outer_mult * f.p, out);
    return;
  }
  PolyFp c = poly_gcd(f, fd);
  PolyFp w = poly_divmod(f, c).first;  // product of squarefree part
  std::size_t i = 1;
  while (w.degree() > 0) {
    PolyFp y = poly_gcd(w, c);
    PolyFp fac = poly_divmod(w, y).first;  // factors of multiplicity exactly i
    if (fac.degree() > 0) out.emplace_back(poly_monic(fac), i * outer_mult);
    w = y;
    c = poly_divmod(c, y).first;
    ++i;
  }
  // leftover c collects the factors with multiplicity divisible by p
  if (c.degree() > 0) squarefree_decompose(c, outer_mult, out);
}

/* Berlekamp split of a monic squarefree f into irreducibles. */
static void berlekamp(const PolyFp& f, std::vector<PolyFp>& out) {
  std::size_t n = f.degree();
  if (n <= 1) {
    out.push_back(f);
    return;
  }
  // Q matrix: row i = x^(i p) mod f
  MatrixFp q(f.p, n, n);
  PolyFp xp = poly_powmod(PolyFp::x(f.p), f.p, f);
  PolyFp cur = PolyFp::one(f.p);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < cur.c.size(); ++j) q.at(i, j) = cur.c[j];
    cur = poly_mod(poly_mul(cur, xp), f);
  }
  PrimeField k(f.p);
  MatrixFp qi = transpose(q);
  for (std::size_t i = 0; i < n; ++i) qi.at(i, i) = k.sub(qi.at(i, i), 1);
  Subspace null = kernel(qi);  // Berlekamp algebra, dim = number of factors
  if (null.dim() <= 1) {
    out.push_back(f);
    return;
  }
  // pick the first non-constant null vector, split with gcd(f, v - c)
  for (std::size_t r = 0; r < null.dim(); ++r) {
    Vec vc = null.basis.row(r);
    bool constant = true;
    for (std::size_t i = 1; i < vc.size(); ++i)
      if (vc[i]) constant = false;
    if (constant) continue;
    PolyFp v(f.p, vc);
    std::vector<PolyFp> pieces;
    for (std::uint32_t c = 0; c < f.p; ++c) {
      PolyFp g = poly_gcd(f, poly_sub(v, PolyFp::constant(f.p, c)));
      if (g.degree() > 0 && g.degree() < f.degree()) pieces.push_back(g);
    }
    if (pieces.size() >= 2 || (pieces.size() == 1 && pieces[0].degree() < f.degree())) {
      PolyFp rest = f;
      for (const auto& g : pieces) {
        berlekamp(g, out);
        rest = poly_divmod(rest, g).first;
      }
      if (rest.degree() > 0) berlekamp(rest, out);
      return;
    }
  }
  out.push_back(f);  // no splitting vector found: irreducible
}

std::vector<PolyFactor> poly_factor(const PolyFp& f) {
  if (f.is_zero()) fail(Err::BadInput, "factor of zero polynomial");
  std::vector<std::pair<PolyFp, std::size_t>> sf;
  squarefree_decompose(poly_monic(f), 1, sf);
  std::vector<PolyFactor> out;
  for (const auto& [g, mult] : sf) {
    std::vector<PolyFp> irr;
    berlekamp(g, irr);
    for (const auto& h : irr) out.push_back(PolyFactor{h, mult});
  }
  std::sort(out.begin(), out.end(), [](const PolyFactor& a, const PolyFactor& b) {
    if (a.base.degree() != b.base.degree()) return a.base.degree() < b.base.degree();
    return a.base.c < b.base.c;
  });
  // merge equal bases
  std::vector<PolyFactor> merged;
  for (auto& pf : out) {
    if (!merged.empty() && merged.back().base == pf.base)
      merged.back().mult += pf.mult;
    else
      merged.push_back(pf);
  }
  return merged;
}

}  // namespace moddiag
