#include "moddiag/module.hpp"

#include <algorithm>
#include <atomic>

#include "moddiag/poly.hpp"

namespace moddiag {

static std::atomic<std::uint64_t> next_uid{1};
static std::uint64_t g_seed = 0;

void set_global_seed(std::uint64_t seed) { g_seed = seed; }
std::uint64_t global_seed() { return g_seed; }

static constexpr std::uint64_t kExhaustiveCap = 4096;
static constexpr std::size_t kSampleBound = 512;

/* number of nonzero coefficient vectors to enumerate, or 0 if p^h overflows the cap */
static std::uint64_t exhaustive_count(std::uint32_t p, std::size_t h) {
  std::uint64_t n = 1;
  for (std::size_t i = 0; i < h; ++i) {
    n *= p;
    if (n > kExhaustiveCap) return 0;
  }
  return n;
}

/* lex enumeration of F_p^h, index k ↦ digits of k base p (least significant first) */
static Vec coeff_vector(std::uint64_t k, std::uint32_t p, std::size_t h) {
  Vec c(h, 0);
  for (std::size_t i = 0; i < h && k; ++i) {
    c[i] = std::uint32_t(k % p);
    k /= p;
  }
  return c;
}

static MatrixFp combine(const std::vector<MatrixFp>& basis, const Vec& c) {
  MatrixFp r(basis[0].p, basis[0].rows, basis[0].cols);
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (c[i]) r = mat_add(r, mat_scale(basis[i], c[i]));
  return r;
}

static void fill_words(AModule& m) {
  const Algebra& a = *m.alg;
  m.word_action.clear();
  m.word_action.reserve(a.dim);
  m.word_action.push_back(MatrixFp::identity(a.field.p, m.dim));
  for (std::size_t j = 1; j < a.recipes.size(); ++j)
    m.word_action.push_back(
        mat_mul(m.word_action[a.recipes[j].parent], m.gen_action[a.recipes[j].gen]));
}

ModulePtr make_root_module(AlgebraPtr alg, std::vector<MatrixFp> gen_action) {
  auto m = std::make_shared<AModule>();
  m->alg = std::move(alg);
  if (gen_action.size() != m->alg->gens.size())
    fail(Err::BadInput, "one action matrix per algebra generator required");
  m->dim = gen_action.empty() ? 0 : gen_action[0].rows;
  for (const auto& x : gen_action)
    if (x.rows != m->dim || x.cols != m->dim || x.p != m->alg->field.p)
      fail(Err::BadInput, "action matrices must be square of equal size over the base field");
  m->gen_action = std::move(gen_action);
  m->top = Subspace::full(m->alg->field.p, m->dim);
  m->bottom = Subspace::zero(m->alg->field.p, m->dim);
  m->reps = MatrixFp::identity(m->alg->field.p, m->dim);
  fill_words(*m);
  m->uid = next_uid.fetch_add(1);
  return m;
}

ModulePtr regular_module(const AlgebraPtr& alg) {
  std::vector<MatrixFp> act;
  for (auto g : alg->gens) act.push_back(left_mult_basis(*alg, g));
  return make_root_module(alg, std::move(act));
}

ModulePtr zero_module(const AlgebraPtr& alg) {
  std::vector<MatrixFp> act(alg->gens.size(), MatrixFp(alg->field.p, 0, 0));
  return make_root_module(alg, std::move(act));
}

MatrixFp action_of(const AModule& m, const Vec& algebra_elt) {
  Vec u = prod_basis_coords(*m.alg, algebra_elt);
  MatrixFp r(m.alg->field.p, m.dim, m.dim);
  for (std::size_t j = 0; j < u.size(); ++j)
    if (u[j]) r = mat_add(r, mat_scale(m.word_action[j], u[j]));
  return r;
}

void validate_module(const AModule& m) {
  const Algebra& a = *m.alg;
  std::vector<MatrixFp> basis_act;
  for (std::size_t i = 0; i < a.dim; ++i) {
    Vec e(a.dim, 0);
    e[i] = 1;
    basis_act.push_back(action_of(m, e));
  }
  if (!(action_of(m, a.one) == MatrixFp::identity(a.field.p, m.dim)))
    fail(Err::BadInput, "module action is not unital");
  for (std::size_t i = 0; i < a.dim; ++i)
    for (std::size_t j = 0; j < a.dim; ++j) {
      Vec prod = alg_basis_mul(a, i, j);
      MatrixFp expect(a.field.p, m.dim, m.dim);
      for (std::size_t k = 0; k < a.dim; ++k)
        if (prod[k]) expect = mat_add(expect, mat_scale(basis_act[k], prod[k]));
      if (!(mat_mul(basis_act[i], basis_act[j]) == expect))
        fail(Err::BadInput, "action matrices violate the algebra relations");
    }
}

ModulePtr root_of(const ModulePtr& m) { return m->root ? m->root : m; }

MatrixFp rows_to_root(const AModule& m, const MatrixFp& rows) {
  return mat_mul(rows, m.reps);
}

MatrixFp rows_from_root(const AModule& m, const MatrixFp& rows) {
  MatrixFp out(m.alg->field.p, rows.rows, m.dim);
  for (std::size_t i = 0; i < rows.rows; ++i) {
    auto c = coords_mod(m.reps, m.bottom, rows.row(i));
    if (!c) fail(Err::NotSubmodule, "row does not lie in the section");
    out.set_row(i, *c);
  }
  return out;
}

Subspace lift_full(const AModule& m, const Subspace& u) {
  return Subspace::from_rows(stack_rows(rows_to_root(m, u.basis), m.bottom.basis));
}

bool is_submodule(const AModule& m, const Subspace& u) {
  if (u.ambient != m.dim) fail(Err::AmbientMismatch, "subspace of wrong ambient dimension");
  for (const auto& x : m.gen_action)
    if (!is_subset(image_of(x, u), u)) return false;
  return true;
}

ModulePtr section(const ModulePtr& m, const Subspace& top, const Subspace& bottom) {
  if (!is_subset(bottom, top)) fail(Err::NotNested, "section: bottom not contained in top");
  if (!is_submodule(*m, top) || !is_submodule(*m, bottom))
    fail(Err::NotInvariant, "section: top/bottom not action-invariant");
  ModulePtr r = root_of(m);
  Subspace rtop = lift_full(*m, top);
  Subspace rbottom = lift_full(*m, bottom);

  auto s = std::make_shared<AModule>();
  s->alg = m->alg;
  s->root = r;
  s->top = rtop;
  s->bottom = rbottom;
  Subspace comp = complement_in(rbottom, rtop);
  s->reps = comp.basis;
  s->dim = comp.dim();
  for (const auto& x : r->gen_action) {
    MatrixFp act(m->alg->field.p, s->dim, s->dim);
    for (std::size_t i = 0; i < s->dim; ++i) {
      Vec w = mat_apply(x, s->reps.row(i));
      auto c = coords_mod(s->reps, rbottom, w);
      if (!c) fail(Err::NotInvariant, "section: lifted subspace not invariant in the root");
      for (std::size_t k = 0; k < s->dim; ++k) act.at(k, i) = (*c)[k];
    }
    s->gen_action.push_back(act);
  }
  fill_words(*s);
  s->uid = next_uid.fetch_add(1);
  return s;
}

ModulePtr submodule_module(const ModulePtr& m, const Subspace& u) {
  return section(m, u, Subspace::zero(m->alg->field.p, m->dim));
}

ModulePtr quotient_module(const ModulePtr& m, const Subspace& u) {
  return section(m, Subspace::full(m->alg->field.p, m->dim), u);
}

Subspace radical_of(const AModule& m) {
  const Subspace& j = m.alg->radical();
  MatrixFp rows(m.alg->field.p, 0, m.dim);
  for (std::size_t i = 0; i < j.dim(); ++i)
    rows = stack_rows(rows, transpose(action_of(m, j.basis.row(i))));
  return Subspace::from_rows(rows);
}

Subspace socle_of(const AModule& m) {
  const Subspace& j = m.alg->radical();
  if (j.dim() == 0) return Subspace::full(m.alg->field.p, m.dim);
  MatrixFp stackmat(m.alg->field.p, 0, m.dim);
  for (std::size_t i = 0; i < j.dim(); ++i)
    stackmat = stack_rows(stackmat, action_of(m, j.basis.row(i)));
  return kernel(stackmat);
}

std::vector<Subspace> radical_chain(const AModule& m) {
  std::vector<Subspace> terms{Subspace::full(m.alg->field.p, m.dim)};
  if (m.dim == 0) return terms;
  const Subspace& j = m.alg->radical();
  std::vector<MatrixFp> jact;
  for (std::size_t i = 0; i < j.dim(); ++i) jact.push_back(action_of(m, j.basis.row(i)));
  while (terms.back().dim() > 0) {
    const Subspace& prev = terms.back();
    MatrixFp rows(m.alg->field.p, 0, m.dim);
    for (const auto& x : jact) rows = stack_rows(rows, apply_to_rows(x, prev.basis));
    Subspace next = Subspace::from_rows(rows);
    if (next.dim() >= prev.dim()) fail(Err::BadInput, "radical chain of module failed to decrease");
    terms.push_back(next);
  }
  return terms;
}

std::vector<Subspace> socle_chain(const AModule& m) {
  std::vector<Subspace> terms{Subspace::zero(m.alg->field.p, m.dim)};
  if (m.dim == 0) return terms;
  const Subspace& j = m.alg->radical();
  std::vector<MatrixFp> jact;
  for (std::size_t i = 0; i < j.dim(); ++i) jact.push_back(action_of(m, j.basis.row(i)));
  while (terms.back().dim() < m.dim) {
    const Subspace& prev = terms.back();
    Subspace next = Subspace::full(m.alg->field.p, m.dim);
    for (const auto& x : jact) next = space_intersect(next, preimage_of(x, prev));
    if (next.dim() <= prev.dim()) fail(Err::BadInput, "socle chain of module failed to increase");
    terms.push_back(next);
  }
  return terms;
}

std::size_t loewy_length(const AModule& m) { return radical_chain(m).size() - 1; }

bool is_intertwiner(const Morphism& f) {
  if (f.src->alg != f.dst->alg) return false;
  for (std::size_t g = 0; g < f.src->gen_action.size(); ++g)
    if (!(mat_mul(f.mat, f.src->gen_action[g]) == mat_mul(f.dst->gen_action[g], f.mat)))
      return false;
  return true;
}

Morphism compose(const Morphism& g, const Morphism& f) {
  if (f.dst->uid != g.src->uid) fail(Err::BadInput, "compose: middle modules differ");
  return Morphism{f.src, g.dst, mat_mul(g.mat, f.mat)};
}

Morphism canonical_epi(const ModulePtr& m, const ModulePtr& q) {
  if (root_of(m) != root_of(q)) fail(Err::BadInput, "canonical_epi: different roots");
  if (!(q->top == m->top) || !is_subset(m->bottom, q->bottom))
    fail(Err::NotQuotient, "canonical_epi: target is not a canonical quotient");
  MatrixFp mat(m->alg->field.p, q->dim, m->dim);
  for (std::size_t i = 0; i < m->dim; ++i) {
    auto c = coords_mod(q->reps, q->bottom, m->reps.row(i));
    if (!c) fail(Err::NotQuotient, "canonical_epi: representative escapes the quotient");
    for (std::size_t k = 0; k < q->dim; ++k) mat.at(k, i) = (*c)[k];
  }
  return Morphism{m, q, mat};
}

Morphism canonical_mono(const ModulePtr& s, const ModulePtr& m) {
  if (root_of(s) != root_of(m)) fail(Err::BadInput, "canonical_mono: different roots");
  if (!(s->bottom == m->bottom) || !is_subset(s->top, m->top))
    fail(Err::NotSubmodule, "canonical_mono: source is not a canonical submodule");
  MatrixFp mat(m->alg->field.p, m->dim, s->dim);
  for (std::size_t i = 0; i < s->dim; ++i) {
    auto c = coords_mod(m->reps, m->bottom, s->reps.row(i));
    if (!c) fail(Err::NotSubmodule, "canonical_mono: representative escapes the target");
    for (std::size_t k = 0; k < m->dim; ++k) mat.at(k, i) = (*c)[k];
  }
  return Morphism{s, m, mat};
}

std::vector<MatrixFp> hom_space(const AModule& m, const AModule& n) {
  if (m.alg != n.alg) fail(Err::BadInput, "hom_space: different algebras");
  if (m.dim == 0 || n.dim == 0) return {};
  std::uint32_t p = m.alg->field.p;
  PrimeField f(p);
  std::size_t unknowns = n.dim * m.dim;  // F[i][j], index i*m.dim+j
  std::size_t gens = m.gen_action.size();
  MatrixFp sys(p, gens * unknowns, unknowns);
  std::size_t row = 0;
  for (std::size_t g = 0; g < gens; ++g) {
    const MatrixFp& xm = m.gen_action[g];
    const MatrixFp& xn = n.gen_action[g];
    for (std::size_t r = 0; r < n.dim; ++r)
      for (std::size_t c = 0; c < m.dim; ++c) {
        // (F xm - xn F)[r][c] = 0
        for (std::size_t b = 0; b < m.dim; ++b)
          sys.at(row, r * m.dim + b) = f.add(sys.at(row, r * m.dim + b), xm.at(b, c));
        for (std::size_t a = 0; a < n.dim; ++a)
          sys.at(row, a * m.dim + c) = f.sub(sys.at(row, a * m.dim + c), xn.at(r, a));
        ++row;
      }
  }
  Subspace ker = kernel(sys);
  std::vector<MatrixFp> out;
  for (std::size_t i = 0; i < ker.dim(); ++i) {
    MatrixFp mat(p, n.dim, m.dim);
    mat.a = ker.basis.row(i);
    out.push_back(mat);
  }
  return out;
}

/* ---- decompose ---- */

namespace {

/* split along coprime factors of the minimal polynomial of an endomorphism */
std::optional<std::vector<Subspace>> primary_split(const MatrixFp& endo) {
  PolyFp mu = minpoly(endo);
  auto fac = poly_factor(mu);
  if (fac.size() < 2) return std::nullopt;
  std::vector<Subspace> parts;
  std::size_t total = 0;
  for (const auto& pf : fac) {
    PolyFp power = PolyFp::one(endo.p);
    for (std::size_t i = 0; i < pf.mult; ++i) power = poly_mul(power, pf.base);
    Subspace k = kernel(poly_at_matrix(power, endo));
    total += k.dim();
    parts.push_back(k);
  }
  if (total != endo.rows) fail(Err::BadInput, "primary decomposition dimensions inconsistent");
  return parts;
}

/* returns a splitting if found; sets certified when indecomposability is proven */
std::optional<std::vector<Subspace>> find_split(const std::vector<MatrixFp>& endos,
                                                RngStream& rng, bool& certified) {
  certified = false;
  std::uint32_t p = endos[0].p;
  std::size_t h = endos.size();
  std::uint64_t total = exhaustive_count(p, h);
  if (total) {
    for (std::uint64_t k = 1; k < total; ++k) {
      auto split = primary_split(combine(endos, coeff_vector(k, p, h)));
      if (split) return split;
    }
    certified = true;  // every endomorphism has a primary minimal polynomial
    return std::nullopt;
  }
  for (std::size_t i = 0; i < h; ++i) {
    auto split = primary_split(endos[i]);
    if (split) return split;
  }
  for (std::size_t t = 0; t < kSampleBound; ++t) {
    Vec c(h, 0);
    bool nz = false;
    for (auto& v : c) {
      v = rng.next_mod(p);
      nz = nz || v;
    }
    if (!nz) continue;
    auto split = primary_split(combine(endos, c));
    if (split) return split;
  }
  // sampling exhausted: decide locality through the endomorphism algebra
  std::size_t n = h;
  AlgebraSpec es;
  es.field = p;
  es.kind = AlgebraSpec::structure;
  es.dim = n;
  es.one.assign(n, 0);
  // express identity and products in the endomorphism basis
  MatrixFp flat(p, n, endos[0].rows * endos[0].cols);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < endos[i].a.size(); ++k) flat.at(i, k) = endos[i].a[k];
  MatrixFp flat_t = transpose(flat);
  MatrixFp id = MatrixFp::identity(p, endos[0].rows);
  auto one_c = solve(flat_t, id.a);
  if (!one_c) fail(Err::BadInput, "endomorphism basis misses the identity");
  es.one = *one_c;
  es.mult.assign(n, std::vector<Vec>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      auto c = solve(flat_t, mat_mul(endos[i], endos[j]).a);
      if (!c) fail(Err::BadInput, "endomorphism space not closed under composition");
      es.mult[i][j] = *c;
    }
  auto ea = build_algebra(es);
  if (n - ea->radical().dim() == 1) {
    certified = true;  // local endomorphism ring
    return std::nullopt;
  }
  fail(Err::Undecided, "no splitting endomorphism found within the search bound");
}

}  // namespace

std::vector<Summand> decompose(const ModulePtr& m, RngStream rng) {
  std::vector<Summand> out;
  if (m->dim == 0) return out;
  std::vector<Subspace> work{Subspace::full(m->alg->field.p, m->dim)};
  while (!work.empty()) {
    Subspace u = work.back();
    work.pop_back();
    if (u.dim() == 0) continue;
    ModulePtr mu = submodule_module(m, u);
    auto endos = hom_space(*mu, *mu);
    if (endos.size() == 1) {
      out.push_back(Summand{mu, u});
      continue;
    }
    bool certified = false;
    RngStream sub = rng.fork(work.size() + out.size());
    auto split = find_split(endos, sub, certified);
    if (!split) {
      out.push_back(Summand{mu, u});
      continue;
    }
    for (const auto& piece : *split)
      work.push_back(Subspace::from_rows(mat_mul(piece.basis, u.basis)));
  }
  std::sort(out.begin(), out.end(), [](const Summand& a, const Summand& b) {
    if (a.embedding.dim() != b.embedding.dim()) return a.embedding.dim() > b.embedding.dim();
    return a.embedding.basis.a < b.embedding.basis.a;
  });
  return out;
}

std::vector<Summand> decompose(const ModulePtr& m) {
  return decompose(m, RngStream(g_seed, 0xDEC));
}

bool is_indecomposable(const ModulePtr& m) {
  if (m->dim == 0) return false;
  if (hom_space(*m, *m).size() == 1) return true;
  return decompose(m).size() == 1;
}

std::optional<Morphism> iso_test(const ModulePtr& m, const ModulePtr& n, RngStream rng) {
  if (m->alg != n->alg) fail(Err::BadInput, "iso_test: different algebras");
  if (m->dim != n->dim) return std::nullopt;
  if (m->dim == 0) return Morphism{m, n, MatrixFp(m->alg->field.p, 0, 0)};
  {
    auto rm = radical_chain(*m), rn = radical_chain(*n);
    if (rm.size() != rn.size()) return std::nullopt;
    for (std::size_t i = 0; i < rm.size(); ++i)
      if (rm[i].dim() != rn[i].dim()) return std::nullopt;
  }
  auto homs = hom_space(*m, *n);
  if (homs.empty()) return std::nullopt;
  std::uint32_t p = m->alg->field.p;
  std::uint64_t total = exhaustive_count(p, homs.size());
  if (total) {
    for (std::uint64_t k = 1; k < total; ++k) {
      MatrixFp f = combine(homs, coeff_vector(k, p, homs.size()));
      if (inverse(f)) return Morphism{m, n, f};
    }
    return std::nullopt;
  }
  for (const auto& f : homs)
    if (inverse(f)) return Morphism{m, n, f};
  for (std::size_t t = 0; t < kSampleBound; ++t) {
    Vec c(homs.size(), 0);
    for (auto& v : c) v = rng.next_mod(p);
    MatrixFp f = combine(homs, c);
    if (inverse(f)) return Morphism{m, n, f};
  }
  fail(Err::Undecided, "iso_test: sampling exhausted above the exhaustive threshold");
}

std::optional<Morphism> iso_test(const ModulePtr& m, const ModulePtr& n) {
  return iso_test(m, n, RngStream(g_seed, 0x150));
}

ModulePtr dual_module(const ModulePtr& m) {
  const Algebra& a = *m->alg;
  std::vector<MatrixFp> act;
  for (std::size_t g = 0; g < a.gens.size(); ++g) {
    if (a.is_group) {
      std::size_t inv = a.group_inverse[a.gens[g]];
      Vec e(a.dim, 0);
      e[inv] = 1;
      act.push_back(transpose(action_of(*m, e)));
    } else if (a.commutative) {
      act.push_back(transpose(m->gen_action[g]));
    } else {
      fail(Err::BadInput, "dual module needs a group algebra or a commutative algebra");
    }
  }
  return make_root_module(m->alg, std::move(act));
}

ModulePtr direct_sum(const std::vector<ModulePtr>& parts, std::vector<Subspace>* embeddings) {
  if (parts.empty()) fail(Err::BadInput, "direct_sum of nothing");
  AlgebraPtr alg = parts[0]->alg;
  std::size_t total = 0;
  for (const auto& q : parts) {
    if (q->alg != alg) fail(Err::BadInput, "direct_sum: different algebras");
    total += q->dim;
  }
  std::uint32_t p = alg->field.p;
  std::vector<MatrixFp> act(alg->gens.size(), MatrixFp(p, total, total));
  std::size_t off = 0;
  for (const auto& q : parts) {
    for (std::size_t g = 0; g < act.size(); ++g)
      for (std::size_t i = 0; i < q->dim; ++i)
        for (std::size_t j = 0; j < q->dim; ++j)
          act[g].at(off + i, off + j) = q->gen_action[g].at(i, j);
    off += q->dim;
  }
  if (embeddings) {
    embeddings->clear();
    off = 0;
    for (const auto& q : parts) {
      MatrixFp rows(p, q->dim, total);
      for (std::size_t i = 0; i < q->dim; ++i) rows.at(i, off + i) = 1;
      embeddings->push_back(Subspace::from_rows(rows));
      off += q->dim;
    }
  }
  return make_root_module(alg, std::move(act));
}

/* ---- simples and p.i.m.s ---- */

static AlgebraCache& cache_of(const AlgebraPtr& a) {
  if (!a->cache) a->cache = std::make_shared<AlgebraCache>();
  return *a->cache;
}

static void fill_cache(const AlgebraPtr& a) {
  AlgebraCache& c = cache_of(a);
  if (c.filled) return;
  c.regular = regular_module(a);
  auto parts = decompose(c.regular, RngStream(g_seed, 0xA16));
  std::vector<std::vector<std::size_t>> classes;  // indices into parts
  for (std::size_t i = 0; i < parts.size(); ++i) {
    bool placed = false;
    for (auto& cls : classes) {
      if (parts[cls[0]].module->dim != parts[i].module->dim) continue;
      if (iso_test(parts[cls[0]].module, parts[i].module)) {
        cls.push_back(i);
        placed = true;
        break;
      }
    }
    if (!placed) classes.push_back({i});
  }
  for (const auto& cls : classes) {
    ModulePtr pim = parts[cls[0]].module;
    ModulePtr head = quotient_module(pim, radical_of(*pim));
    if (decompose(head).size() != 1)
      fail(Err::BadInput, "principal indecomposable has non-simple head");
    if (hom_space(*head, *head).size() != 1)
      fail(Err::NotSplit, "simple module with endomorphism ring larger than the base field");
    c.pims.push_back(pim);
    c.simples.push_back(head);
    c.pim_head_epi.push_back(canonical_epi(pim, head));
    c.pim_multiplicity.push_back(cls.size());
  }
  std::size_t check = 0;
  for (std::size_t i = 0; i < c.pims.size(); ++i)
    check += c.pims[i]->dim * c.pim_multiplicity[i];
  if (check != a->dim) fail(Err::BadInput, "p.i.m. multiplicities do not add up");
  c.filled = true;
}

const std::vector<ModulePtr>& simples(const AlgebraPtr& a) {
  fill_cache(a);
  return a->cache->simples;
}

const std::vector<ModulePtr>& pims(const AlgebraPtr& a) {
  fill_cache(a);
  return a->cache->pims;
}

const Morphism& pim_head(const AlgebraPtr& a, std::size_t simple_id) {
  fill_cache(a);
  return a->cache->pim_head_epi[simple_id];
}

std::size_t pim_multiplicity(const AlgebraPtr& a, std::size_t simple_id) {
  fill_cache(a);
  return a->cache->pim_multiplicity[simple_id];
}

std::size_t simple_id_of(const AlgebraPtr& a, const ModulePtr& s) {
  const auto& ss = simples(a);
  for (std::size_t i = 0; i < ss.size(); ++i)
    if (ss[i]->dim == s->dim && iso_test(ss[i], s)) return i;
  fail(Err::BadInput, "module is not isomorphic to any simple");
}

AlgebraKind classify(const AlgebraPtr& a) {
  AlgebraCache& c = cache_of(a);
  if (c.kind) return *c.kind;
  AlgebraKind kind;
  kind.is_group_algebra = a->is_group;
  std::uint32_t p = a->field.p;
  std::size_t n = a->dim;
  if (a->is_group) {
    kind.is_symmetric = true;  // group algebras carry the trace form of the regular rep
  } else {
    // functionals vanishing on commutators, searched for a nondegenerate Gram matrix
    PrimeField f(p);
    MatrixFp comm(p, 0, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        Vec d = alg_basis_mul(*a, i, j);
        Vec e = alg_basis_mul(*a, j, i);
        for (std::size_t k = 0; k < n; ++k) d[k] = f.sub(d[k], e[k]);
        MatrixFp row(p, 1, n);
        row.set_row(0, d);
        comm = stack_rows(comm, row);
      }
    Subspace lam = annihilator(Subspace::from_rows(comm));
    std::uint64_t total = exhaustive_count(p, lam.dim());
    auto gram_ok = [&](const Vec& lv) {
      MatrixFp gram(p, n, n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          Vec prod = alg_basis_mul(*a, i, j);
          std::uint32_t acc = 0;
          for (std::size_t k = 0; k < n; ++k) acc = f.add(acc, f.mul(lv[k], prod[k]));
          gram.at(i, j) = acc;
        }
      return inverse(gram).has_value();
    };
    if (total) {
      for (std::uint64_t k = 1; k < total && !kind.is_symmetric; ++k)
        kind.is_symmetric = gram_ok(row_times_mat(coeff_vector(k, p, lam.dim()), lam.basis));
    } else {
      RngStream rng(g_seed, 0x535);
      for (std::size_t t = 0; t < 2 * kSampleBound && !kind.is_symmetric; ++t) {
        Vec cvec(lam.dim(), 0);
        for (auto& v : cvec) v = rng.next_mod(p);
        kind.is_symmetric = gram_ok(row_times_mat(cvec, lam.basis));
      }
    }
  }
  // self-injectivity via the head/socle pairing on p.i.m.s
  const auto& ps = pims(a);
  std::vector<std::size_t> soc_ids;
  bool pairing = true;
  for (const auto& pim : ps) {
    ModulePtr soc = submodule_module(pim, socle_of(*pim));
    if (decompose(soc).size() != 1) {
      pairing = false;
      break;
    }
    soc_ids.push_back(simple_id_of(a, soc));
  }
  if (pairing) {
    std::vector<std::size_t> sorted = soc_ids;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i)
      if (sorted[i] != i) pairing = false;
  }
  kind.is_selfinjective = pairing || kind.is_symmetric;
  c.kind = kind;
  return kind;
}

/* ---- virtual Loewy series ---- */

ModulePtr layer_section(const ModulePtr& m, const LoewySeries& s, std::size_t i) {
  if (s.kind == SeriesKind::radical) return section(m, s.terms[i], s.terms[i + 1]);
  return section(m, s.terms[i + 1], s.terms[i]);
}

namespace {

/* image of module-coordinate rows inside a layer section, in section coords */
MatrixFp project_into_section(const AModule& m, const AModule& ls, const MatrixFp& rows_m) {
  return rows_from_root(ls, rows_to_root(m, rows_m));
}

MatrixFp section_rows_to_module(const AModule& m, const AModule& ls, const MatrixFp& rows_ls) {
  return rows_from_root(m, mat_mul(rows_ls, ls.reps));
}

}  // namespace

LoewySeries loewy_series(const ModulePtr& m, SeriesKind kind, const LayerOverrides& overrides) {
  LoewySeries out;
  out.kind = kind;
  out.terms = kind == SeriesKind::radical ? radical_chain(*m) : socle_chain(*m);
  if (m->dim == 0) return out;
  const auto& sims = simples(m->alg);
  std::uint32_t p = m->alg->field.p;
  for (std::size_t layer = 0; layer + 1 < out.terms.size(); ++layer) {
    ModulePtr ls = layer_section(m, out, layer);
    std::vector<VirtualSimple> slots;
    Subspace w = Subspace::zero(p, ls->dim);
    auto it = overrides.find(layer);
    if (it != overrides.end()) {
      for (const auto& forced : it->second) {
        MatrixFp img_rows = project_into_section(*m, *ls, forced.basis.basis);
        Subspace img = Subspace::from_rows(img_rows);
        if (img.dim() != forced.basis.dim() || space_intersect(img, w).dim() != 0)
          fail(Err::TuningConflict, "forced slot collides with previously fixed slots");
        if (!is_submodule(*ls, img))
          fail(Err::TuningConflict, "forced slot is not a submodule of the layer");
        VirtualSimple vs = forced;
        vs.layer = layer;
        vs.slot = slots.size();
        vs.basis = Subspace::from_rows(section_rows_to_module(*m, *ls, img.basis));
        slots.push_back(vs);
        w = space_sum(w, img);
      }
    }
    for (std::size_t cls = 0; cls < sims.size(); ++cls) {
      auto homs = hom_space(*sims[cls], *ls);
      if (homs.empty()) continue;
      std::size_t mult = homs.size();
      std::size_t have = 0;
      for (const auto& s : slots)
        if (s.iso_class == cls) ++have;
      std::uint64_t total = exhaustive_count(p, homs.size());
      if (!total) total = std::uint64_t(1) << 62;  // lazy enumeration; accepted slots bound it
      for (std::uint64_t k = 1; k < total && have < mult; ++k) {
        MatrixFp fmat = combine(homs, coeff_vector(k, p, homs.size()));
        Subspace img = Subspace::from_rows(transpose(fmat));
        if (img.dim() != sims[cls]->dim) continue;       // degenerate combination
        if (space_intersect(img, w).dim() != 0) continue;  // overlaps fixed slots
        VirtualSimple vs;
        vs.layer = layer;
        vs.slot = slots.size();
        vs.iso_class = cls;
        vs.basis = Subspace::from_rows(section_rows_to_module(*m, *ls, img.basis));
        slots.push_back(vs);
        w = space_sum(w, img);
        ++have;
      }
      if (have < mult)
        fail(Err::BadInput, "layer splitting failed to reach the isotypic multiplicity");
    }
    if (w.dim() != ls->dim)
      fail(Err::BadInput, "layer slots do not span the layer");
    out.layers.push_back(std::move(slots));
  }
  return out;
}

}  // namespace moddiag
