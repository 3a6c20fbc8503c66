#pragma once

#include "moddiag/projectives.hpp"

namespace moddiag {

/* Ext¹(S,N) read off the second virtual radical layer of P_S:
 * r = dim Hom(Ω¹S, N) = multiplicity of N among the head slots of Ω¹S.
 * Both routes are computed and compared on construction. */
struct ExtProfile {
  std::size_t top_simple = 0;
  std::size_t target_simple = 0;
  std::size_t r = 0;
  ModulePtr omega;                       // Ω¹S as a submodule of the cover
  ModulePtr omega_head;                  // Hd(Ω¹S)
  std::vector<VirtualSimple> witnesses;  // head slots of iso class N (bases in omega coords)
  std::vector<Morphism> psi;             // N ↪ omega_head onto witness i
  const char* hypothesis = "artinian";   // which §2 route applies to this algebra
};

const ExtProfile& ext1(const AlgebraPtr& a, std::size_t S, std::size_t N);

struct ProportionalityClass {
  Vec coords;  // length r; zero vector for the split class, else first nonzero entry = 1

  bool is_zero() const {
    for (auto c : coords)
      if (c) return false;
    return true;
  }
  bool operator==(const ProportionalityClass& o) const { return coords == o.coords; }
};

/* Schur scalars of the induced head map against the profile witnesses,
 * normalized to a projective point. */
ProportionalityClass classify_hom(const ExtProfile& prof, const Morphism& f);

struct Extension {
  ModulePtr middle;  // B
  Morphism sub;      // N ↪ B (image = ker quot)
  Morphism quot;     // B ↠ S
  ProportionalityClass cls;
  std::size_t top_simple = 0;
  std::size_t target_simple = 0;
  std::uint64_t source_uid = 0;   // the module V the extension was cut from
  std::size_t slot_index = 0;     // which second-layer slot
};

/* B_κ = V / π⁻¹(R_κ), R_κ spanned by every other second-layer slot; the class
 * is measured by lifting the slot projection through the projective cover. */
Extension extension_from_layer(const ModulePtr& v, const LoewySeries& series, std::size_t slot_index);

bool independent(const std::vector<Extension>& exts);

/* non-split 0 → ⊕N_κ → B → S → 0 with B = V / ∩ π⁻¹(R_κ) */
Extension amalgamate(const ModulePtr& v, const LoewySeries& series,
                     const std::vector<Extension>& exts);

}  // namespace moddiag
