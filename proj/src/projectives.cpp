#include "moddiag/projectives.hpp"

#include <map>
#include <mutex>

namespace moddiag {

namespace {

std::mutex cover_mutex;
std::map<std::uint64_t, CoverData> cover_cache;  // keyed by module uid, append-only

Vec vec_of(const MatrixFp& m) { return m.a; }

CoverData build_cover(const ModulePtr& m) {
  AlgebraPtr a = m->alg;
  std::uint32_t p = a->field.p;
  CoverData out;
  out.module = m;
  if (m->dim == 0) {
    out.cover = zero_module(a);
    out.epi = Morphism{out.cover, m, MatrixFp(p, 0, 0)};
    out.kernel = Subspace::zero(p, 0);
    return out;
  }
  Subspace rad = radical_of(*m);
  ModulePtr head = quotient_module(m, rad);
  Morphism pi = canonical_epi(m, head);
  auto series = loewy_series(m, SeriesKind::radical);
  const auto& slots = series.layers[0];

  std::vector<ModulePtr> blocks;
  for (const auto& s : slots) blocks.push_back(pims(a)[s.iso_class]);
  std::vector<Subspace> parts;
  ModulePtr cover = direct_sum(blocks, &parts);
  out.cover = cover;
  out.cover_parts = parts;

  MatrixFp epi_mat(p, m->dim, cover->dim);
  std::size_t off = 0;
  for (std::size_t i = 0; i < slots.size(); ++i) {
    std::size_t cls = slots[i].iso_class;
    ModulePtr pim = pims(a)[cls];
    // target: P ↠ S ≅ slot ↪ Hd(m)
    MatrixFp img_rows = rows_from_root(*head, rows_to_root(*m, slots[i].basis.basis));
    ModulePtr slot_mod = submodule_module(head, Subspace::from_rows(img_rows));
    auto psi = iso_test(simples(a)[cls], slot_mod);
    if (!psi) fail(Err::BadInput, "head slot not isomorphic to its labelled simple");
    Morphism incl = canonical_mono(slot_mod, head);
    Morphism target = compose(incl, compose(*psi, pim_head(a, cls)));
    // solve pi ∘ phi = target over Hom(P, m)
    auto homs = hom_space(*pim, *m);
    if (homs.empty()) fail(Err::BadInput, "no homomorphisms from the covering p.i.m.");
    MatrixFp sys(p, head->dim * pim->dim, homs.size());
    for (std::size_t j = 0; j < homs.size(); ++j) {
      Vec v = vec_of(mat_mul(pi.mat, homs[j]));
      for (std::size_t r = 0; r < v.size(); ++r) sys.at(r, j) = v[r];
    }
    auto coeff = solve(sys, vec_of(target.mat));
    if (!coeff) fail(Err::BadInput, "projectivity lift has no solution");
    MatrixFp phi(p, m->dim, pim->dim);
    for (std::size_t j = 0; j < homs.size(); ++j)
      if ((*coeff)[j]) phi = mat_add(phi, mat_scale(homs[j], (*coeff)[j]));
    for (std::size_t r = 0; r < m->dim; ++r)
      for (std::size_t c = 0; c < pim->dim; ++c) epi_mat.at(r, off + c) = phi.at(r, c);
    off += pim->dim;
    out.part_iso.push_back(cls);
  }
  out.epi = Morphism{cover, m, epi_mat};
  if (!is_intertwiner(out.epi)) fail(Err::BadInput, "cover epi is not a module map");
  if (rank_of(epi_mat) != m->dim) fail(Err::BadInput, "cover map is not surjective");
  out.kernel = kernel(epi_mat);
  if (!is_subset(out.kernel, radical_of(*cover)))
    fail(Err::BadInput, "cover not minimal: kernel escapes the radical");
  return out;
}

}  // namespace

const CoverData& projective_cover(const ModulePtr& m) {
  std::lock_guard<std::mutex> lock(cover_mutex);
  auto it = cover_cache.find(m->uid);
  if (it != cover_cache.end()) return it->second;
  auto data = build_cover(m);
  return cover_cache.emplace(m->uid, std::move(data)).first->second;
}

HullData injective_hull(const ModulePtr& m) {
  ModulePtr d = dual_module(m);
  const CoverData& c = projective_cover(d);
  HullData out;
  out.module = m;
  out.hull = dual_module(c.cover);
  out.mono = Morphism{m, out.hull, transpose(c.epi.mat)};
  if (!is_intertwiner(out.mono)) fail(Err::BadInput, "hull mono is not a module map");
  if (rank_of(out.mono.mat) != m->dim) fail(Err::BadInput, "hull map is not injective");
  return out;
}

static ModulePtr strip_projectives(const ModulePtr& m) {
  if (m->dim == 0) return m;
  auto parts = decompose(m);
  const auto& ps = pims(m->alg);
  MatrixFp keep(m->alg->field.p, 0, m->dim);
  bool stripped = false;
  for (const auto& s : parts) {
    bool projective = false;
    for (const auto& pim : ps)
      if (pim->dim == s.module->dim && iso_test(pim, s.module)) {
        projective = true;
        break;
      }
    if (projective)
      stripped = true;
    else
      keep = stack_rows(keep, s.embedding.basis);
  }
  if (!stripped) return m;
  Subspace span = Subspace::from_rows(keep);
  if (span.dim() == 0) return zero_module(m->alg);
  return submodule_module(m, span);
}

ModulePtr heller(const ModulePtr& m, int n) {
  if (n == 0) return strip_projectives(m);
  if (n > 0) {
    ModulePtr cur = strip_projectives(m);
    for (int i = 0; i < n; ++i) {
      if (cur->dim == 0) return cur;
      const CoverData& c = projective_cover(cur);
      cur = strip_projectives(submodule_module(c.cover, c.kernel));
    }
    return cur;
  }
  if (!classify(m->alg).is_selfinjective)
    fail(Err::NotSelfInjective, "negative Heller shifts need a self-injective algebra");
  return strip_projectives(dual_module(heller(dual_module(m), -n)));
}

StableHom stable_hom(const ModulePtr& m, const ModulePtr& n) {
  if (m->alg != n->alg) fail(Err::BadInput, "stable_hom: different algebras");
  StableHom out;
  auto homs = hom_space(*m, *n);
  out.hom_dim = homs.size();
  if (homs.empty()) return out;
  std::uint32_t p = m->alg->field.p;
  MatrixFp hom_rows(p, homs.size(), n->dim * m->dim);
  for (std::size_t i = 0; i < homs.size(); ++i) hom_rows.set_row(i, homs[i].a);
  Subspace hom_span = Subspace::from_rows(hom_rows);

  const CoverData& c = projective_cover(n);
  auto lifted = hom_space(*m, *c.cover);
  MatrixFp phom_rows(p, lifted.size(), n->dim * m->dim);
  for (std::size_t i = 0; i < lifted.size(); ++i)
    phom_rows.set_row(i, mat_mul(c.epi.mat, lifted[i]).a);
  Subspace phom_span = Subspace::from_rows(phom_rows);
  out.phom_dim = phom_span.dim();
  if (!is_subset(phom_span, hom_span)) fail(Err::BadInput, "PHom escaped Hom");

  Subspace reps = complement_in(phom_span, hom_span);
  out.dim = reps.dim();
  for (std::size_t i = 0; i < reps.dim(); ++i) {
    MatrixFp f(p, n->dim, m->dim);
    f.a = reps.basis.row(i);
    out.reps.push_back(Morphism{m, n, f});
  }
  return out;
}

}  // namespace moddiag
