#pragma once

#include "moddiag/module.hpp"

namespace moddiag {

struct CoverData {
  ModulePtr module;
  ModulePtr cover;                  // direct sum of p.i.m.s matching Hd(module)
  std::vector<Subspace> cover_parts;  // embeddings of the p.i.m. blocks
  std::vector<std::size_t> part_iso;  // simple id per block
  Morphism epi;                     // cover ↠ module, kernel inside rad(cover)
  Subspace kernel;                  // = Ω¹(module), subspace of cover
};

/* Minimal projective cover: one p.i.m. per virtual simple of Hd(m), epi
 * lifting the identity on heads. Cached per module. */
const CoverData& projective_cover(const ModulePtr& m);

/* Dual construction: hull = dual(cover(dual m)), mono = transposed epi. */
struct HullData {
  ModulePtr module;
  ModulePtr hull;
  Morphism mono;  // module ↪ hull
};
HullData injective_hull(const ModulePtr& m);

/* Heller operator. n = 0 strips projective summands; n > 0 iterates kernels
 * of minimal covers; n < 0 goes through the dual (self-injective only). */
ModulePtr heller(const ModulePtr& m, int n);

struct StableHom {
  std::size_t dim = 0;
  std::vector<Morphism> reps;  // coset representatives mod PHom
  std::size_t hom_dim = 0;
  std::size_t phom_dim = 0;
};

/* Hom(m,n) / PHom(m,n), PHom = image of Hom(m, cover(n)) composed with the
 * cover epi. */
StableHom stable_hom(const ModulePtr& m, const ModulePtr& n);

}  // namespace moddiag
