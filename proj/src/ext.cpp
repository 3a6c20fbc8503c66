#include "moddiag/ext.hpp"

#include <map>
#include <mutex>

namespace moddiag {

namespace {

std::mutex ext_mutex;
std::map<std::tuple<std::uint64_t, std::size_t, std::size_t>, ExtProfile> ext_cache;

ExtProfile build_profile(const AlgebraPtr& a, std::size_t S, std::size_t N) {
  ExtProfile prof;
  prof.top_simple = S;
  prof.target_simple = N;
  prof.hypothesis = classify(a).is_selfinjective ? "frobenius" : "artinian";
  const CoverData& cover = projective_cover(simples(a)[S]);
  prof.omega = submodule_module(cover.cover, cover.kernel);
  auto series = loewy_series(prof.omega, SeriesKind::radical);
  std::size_t hom_route = hom_space(*prof.omega, *simples(a)[N]).size();
  if (series.layers.empty()) {
    if (hom_route != 0) fail(Err::BadInput, "ext1: zero syzygy with nonzero homs");
    prof.omega_head = zero_module(a);
    prof.r = 0;
    return prof;
  }
  prof.omega_head = layer_section(prof.omega, series, 0);
  for (const auto& slot : series.layers[0]) {
    if (slot.iso_class != N) continue;
    prof.witnesses.push_back(slot);
    MatrixFp img = rows_from_root(*prof.omega_head, rows_to_root(*prof.omega, slot.basis.basis));
    ModulePtr slot_mod = submodule_module(prof.omega_head, Subspace::from_rows(img));
    auto iso = iso_test(simples(a)[N], slot_mod);
    if (!iso) fail(Err::BadInput, "ext1: witness slot lost its iso class");
    prof.psi.push_back(compose(canonical_mono(slot_mod, prof.omega_head), *iso));
  }
  prof.r = prof.witnesses.size();
  if (prof.r != hom_route)
    fail(Err::BadInput, "ext1: hom dimension and layer multiplicity disagree");
  return prof;
}

}  // namespace

const ExtProfile& ext1(const AlgebraPtr& a, std::size_t S, std::size_t N) {
  std::lock_guard<std::mutex> lock(ext_mutex);
  auto key = std::make_tuple(a->uid, S, N);
  auto it = ext_cache.find(key);
  if (it != ext_cache.end()) return it->second;
  return ext_cache.emplace(key, build_profile(a, S, N)).first->second;
}

ProportionalityClass classify_hom(const ExtProfile& prof, const Morphism& f) {
  const PrimeField& k = prof.omega->alg->field;
  ProportionalityClass out;
  out.coords.assign(prof.r, 0);
  if (f.mat.is_zero()) return out;
  // induced head map: columns indexed by head reps expressed in omega coordinates
  MatrixFp head_reps_in_omega = rows_from_root(*prof.omega, prof.omega_head->reps);
  MatrixFp fbar(k.p, f.mat.rows, prof.omega_head->dim);
  for (std::size_t i = 0; i < prof.omega_head->dim; ++i) {
    Vec col = mat_apply(f.mat, head_reps_in_omega.row(i));
    for (std::size_t r = 0; r < col.size(); ++r) fbar.at(r, i) = col[r];
  }
  for (std::size_t i = 0; i < prof.r; ++i) {
    MatrixFp t = mat_mul(fbar, prof.psi[i].mat);  // N → N, a Schur scalar
    std::uint32_t c = t.at(0, 0);
    if (!(t == mat_scale(MatrixFp::identity(k.p, t.rows), c)))
      fail(Err::BadInput, "induced map on a witness is not scalar");
    out.coords[i] = c;
  }
  for (std::size_t i = 0; i < prof.r; ++i) {
    if (!out.coords[i]) continue;
    std::uint32_t inv = k.inv(out.coords[i]);
    for (auto& c : out.coords) c = k.mul(c, inv);
    break;
  }
  return out;
}

namespace {

/* second-layer slot images inside the layer section, in section coordinates */
std::vector<Subspace> slot_images(const ModulePtr& v, const LoewySeries& series,
                                  const ModulePtr& layer) {
  std::vector<Subspace> out;
  for (const auto& slot : series.layers[1])
    out.push_back(Subspace::from_rows(rows_from_root(*layer, rows_to_root(*v, slot.basis.basis))));
  return out;
}

/* quotient of v by the preimage of the span of the given slot images */
ModulePtr quotient_by_slots(const ModulePtr& v, const LoewySeries& series,
                            const ModulePtr& layer, const std::vector<Subspace>& imgs,
                            const std::vector<bool>& kill) {
  std::uint32_t p = v->alg->field.p;
  MatrixFp rows(p, 0, layer->dim);
  for (std::size_t t = 0; t < imgs.size(); ++t)
    if (kill[t]) rows = stack_rows(rows, imgs[t].basis);
  MatrixFp in_v = rows_from_root(*v, mat_mul(rows, layer->reps));
  Subspace kern = space_sum(Subspace::from_rows(in_v), series.terms[2]);
  return quotient_module(v, kern);
}

Morphism quot_onto_simple(const AlgebraPtr& a, const ModulePtr& b, std::size_t S) {
  ModulePtr head = quotient_module(b, radical_of(*b));
  auto iso = iso_test(head, simples(a)[S]);
  if (!iso) fail(Err::BadInput, "middle head is not the expected simple");
  return compose(*iso, canonical_epi(b, head));
}

Morphism sub_from_radical(const AlgebraPtr& a, const ModulePtr& b, std::size_t N, bool require_simple) {
  ModulePtr radb = submodule_module(b, radical_of(*b));
  Morphism mono = canonical_mono(radb, b);
  if (!require_simple) return mono;
  auto iso = iso_test(simples(a)[N], radb);
  if (!iso) fail(Err::BadInput, "middle radical is not the expected simple");
  return compose(mono, *iso);
}

/* ζ̂: Ω¹S → N through the cover of v, projected along every slot except the chosen ones */
ProportionalityClass class_through_cover(const ModulePtr& v, const LoewySeries& series,
                                         const ModulePtr& layer,
                                         const std::vector<Subspace>& imgs, std::size_t slot_index,
                                         std::size_t S, std::size_t N) {
  AlgebraPtr a = v->alg;
  std::uint32_t p = a->field.p;
  const ExtProfile& prof = ext1(a, S, N);
  const CoverData& cv = projective_cover(v);
  if (cv.cover->dim != prof.omega->root->dim ||
      !(cv.cover->gen_action[0] == root_of(prof.omega)->gen_action[0]))
    fail(Err::BadInput, "cover of v does not match the cover of its head's simple");
  // R_κ inside the layer, and the retraction onto the chosen slot
  MatrixFp tmat(p, 0, layer->dim);
  tmat = stack_rows(tmat, imgs[slot_index].basis);
  for (std::size_t t = 0; t < imgs.size(); ++t)
    if (t != slot_index) tmat = stack_rows(tmat, imgs[t].basis);
  ModulePtr slot_mod = submodule_module(layer, imgs[slot_index]);
  auto slot_iso = iso_test(slot_mod, simples(a)[N]);
  if (!slot_iso) fail(Err::BadInput, "slot is not isomorphic to its labelled simple");
  std::size_t dn = simples(a)[N]->dim;
  // ζ̂ columns: omega rep ↦ cover ↦ v ↦ layer coords ↦ slot part ↦ N
  MatrixFp zeta(p, dn, prof.omega->dim);
  for (std::size_t i = 0; i < prof.omega->dim; ++i) {
    Vec in_v = mat_apply(cv.epi.mat, prof.omega->reps.row(i));
    MatrixFp row(p, 1, v->dim);
    row.set_row(0, in_v);
    Vec lcoords = rows_from_root(*layer, rows_to_root(*v, row)).row(0);
    auto split_c = solve(transpose(tmat), lcoords);
    if (!split_c) fail(Err::BadInput, "layer coordinates failed to split along slots");
    Vec slot_part(split_c->begin(), split_c->begin() + dn);
    Vec ncoords = mat_apply(slot_iso->mat, slot_part);
    for (std::size_t r = 0; r < dn; ++r) zeta.at(r, i) = ncoords[r];
  }
  Morphism zhat{prof.omega, simples(a)[N], zeta};
  if (!is_intertwiner(zhat)) fail(Err::BadInput, "lifted slot projection is not a module map");
  return classify_hom(prof, zhat);
}

}  // namespace

Extension extension_from_layer(const ModulePtr& v, const LoewySeries& series,
                               std::size_t slot_index) {
  AlgebraPtr a = v->alg;
  if (series.layers.empty() || series.layers[0].size() != 1)
    fail(Err::HeadNotSimple, "extension_from_layer needs a simple head");
  if (series.layers.size() < 2 || slot_index >= series.layers[1].size())
    fail(Err::SlotMismatch, "no such slot on the second layer");
  std::size_t S = series.layers[0][0].iso_class;
  std::size_t N = series.layers[1][slot_index].iso_class;
  ModulePtr layer = layer_section(v, series, 1);
  auto imgs = slot_images(v, series, layer);

  std::vector<bool> kill(imgs.size(), true);
  kill[slot_index] = false;
  ModulePtr b = quotient_by_slots(v, series, layer, imgs, kill);
  if (b->dim != simples(a)[S]->dim + simples(a)[N]->dim)
    fail(Err::BadInput, "extension middle has the wrong dimension");

  Extension out;
  out.middle = b;
  out.top_simple = S;
  out.target_simple = N;
  out.source_uid = v->uid;
  out.slot_index = slot_index;
  out.quot = quot_onto_simple(a, b, S);
  out.sub = sub_from_radical(a, b, N, true);
  out.cls = class_through_cover(v, series, layer, imgs, slot_index, S, N);
  if (out.cls.is_zero()) fail(Err::BadInput, "layer-slot extension classified as split");
  return out;
}

bool independent(const std::vector<Extension>& exts) {
  if (exts.empty()) return true;
  std::uint32_t p = exts[0].middle->alg->field.p;
  std::size_t S = exts[0].top_simple, N = exts[0].target_simple;
  std::size_t r = exts[0].cls.coords.size();
  for (const auto& e : exts)
    if (e.top_simple != S || e.target_simple != N || e.cls.coords.size() != r)
      fail(Err::MixedProfiles, "extensions live in different Ext groups");
  MatrixFp rows(p, exts.size(), r);
  for (std::size_t i = 0; i < exts.size(); ++i) rows.set_row(i, exts[i].cls.coords);
  return rank_of(rows) == exts.size();
}

Extension amalgamate(const ModulePtr& v, const LoewySeries& series,
                     const std::vector<Extension>& exts) {
  if (exts.empty()) fail(Err::BadInput, "amalgamate needs at least one extension");
  if (!independent(exts)) fail(Err::NotIndependent, "extension classes are dependent");
  AlgebraPtr a = v->alg;
  for (const auto& e : exts)
    if (e.source_uid != v->uid)
      fail(Err::BadInput, "extension was not realized as a factor of this module");
  if (exts.size() == 1) return exts[0];
  std::size_t S = exts[0].top_simple, N = exts[0].target_simple;
  ModulePtr layer = layer_section(v, series, 1);
  auto imgs = slot_images(v, series, layer);
  std::vector<bool> kill(imgs.size(), true);
  for (const auto& e : exts) kill[e.slot_index] = false;
  ModulePtr b = quotient_by_slots(v, series, layer, imgs, kill);

  auto bser = loewy_series(b, SeriesKind::radical);
  if (bser.layers.size() != 2) fail(Err::BadInput, "amalgamated middle has the wrong length");
  std::size_t found = 0;
  for (const auto& s : bser.layers[1])
    if (s.iso_class == N) ++found;
  if (found != exts.size())
    fail(Err::BadInput, "amalgamated middle has the wrong second-layer multiplicity");

  Extension out;
  out.middle = b;
  out.top_simple = S;
  out.target_simple = N;
  out.source_uid = v->uid;
  out.slot_index = exts[0].slot_index;
  out.quot = quot_onto_simple(a, b, S);
  out.sub = sub_from_radical(a, b, N, false);
  out.cls.coords.assign(ext1(a, S, N).r, 0);  // spans several classes; no single label
  return out;
}

}  // namespace moddiag
