#pragma once

#include <string>

#include "moddiag/ext.hpp"

namespace moddiag {

/* ---- confined preimage (the type-S identification) ---- */

struct DecompositionData {
  ModulePtr m;                  // ambient module
  std::vector<Subspace> parts;  // M_i embeddings; must direct-sum to m
  std::vector<Subspace> subs;   // S_i ⊆ M_i, action-invariant
};

struct ConfinedPreimage {
  std::vector<std::size_t> support;  // minimal index set J
  Subspace preimage;                 // (π_J⁻¹ ∘ p_J ∘ σ)(N), inside ⊕_{j∈J} M_j
};

/* n given in the coordinates of m / ⊕S_i (the canonical quotient). */
ConfinedPreimage confined_preimage(const DecompositionData& d, const Subspace& n_in_quotient);

/* ---- pillars and colonnades ---- */

struct Pillar {
  std::size_t i = 0, j = 0;  // radical section rad^i/rad^j
  ModulePtr section_mod;
  ModulePtr module;          // indecomposable summand
  Subspace embedding;        // in section_mod coordinates
  std::size_t height = 0;    // Loewy length, ≤ j−i
  std::size_t iso_tag = 0;   // index into PillarAnalysis::iso_reps
};

struct Colonnade {
  std::size_t i = 0, j = 0;
  std::size_t iso_tag = 0;
  std::vector<std::size_t> members;  // indices into PillarAnalysis::pillars, ≥ 2
  bool maximal = false;              // ⊑-maximal
};

struct PillarAnalysis {
  std::vector<Subspace> chain;            // radical chain of the analyzed module
  std::vector<Pillar> pillars;            // all sections 0 ≤ i < j ≤ ℓ
  std::vector<ModulePtr> iso_reps;
  std::vector<Colonnade> colonnades;
  std::vector<std::vector<bool>> below;   // below[b][a]: colonnade b ⊑ colonnade a
  std::vector<std::pair<std::size_t, std::size_t>> peaks;  // (single pillar, colonnade)
};

std::vector<Pillar> pillars_of_section(const ModulePtr& m, std::size_t i, std::size_t j);
PillarAnalysis analyze_pillars(const ModulePtr& m);

/* A overcoats B: B's section nested in A's, and B's module is isomorphic to a
 * summand of the matching radical section of A's module (parallel copies count). */
bool dominates(const Pillar& a, const Pillar& b);

/* virtual common content of two pillars, the Lemma 17 overlap measure */
std::size_t common_section_dim(const Pillar& a, const Pillar& b);

/* Λ of Lemma 17: the indecomposable direct summand of k that precisely
 * overcoats the staggered pillars m_part (summand of k/rad^{i+s}k) and
 * n_part (summand of rad^i k). */
struct Lemma17Data {
  ModulePtr lambda;      // submodule of k
  Subspace embedding;    // in k's coordinates
  Subspace complement;   // a complementary submodule, so Λ is a direct summand
};
Lemma17Data lemma17_overcoat(const ModulePtr& k, std::size_t i, std::size_t s,
                             const Subspace& m_part, const Subspace& n_part);

/* ---- canonical homomorphisms, splices, pullbacks ---- */

struct CanonicalHom {
  ModulePtr source, middle, target;
  Morphism epi;        // source ↠ middle
  Morphism mono;       // middle ↪ target
  Morphism composite;  // mono ∘ epi
};

CanonicalHom canonical_hom(const ModulePtr& n, const ModulePtr& s, const ModulePtr& m);

/* glue of two sections over a shared middle: L0 a canonical submodule of l at
 * its bottom and a canonical quotient of l2 at its top (or the mirrored
 * configuration). */
ModulePtr splice(const ModulePtr& l, const ModulePtr& l0, const ModulePtr& l2);

ModulePtr visible_pullback(const ModulePtr& l1, const ModulePtr& l2, const ModulePtr& t);
ModulePtr visible_pushout(const ModulePtr& l1, const ModulePtr& l2, const ModulePtr& t);

/* ---- diagrams ---- */

struct DiagramVertex {
  std::size_t id = 0;
  std::size_t component = 0;
  std::size_t iso_class = 0;
  std::size_t radical_layer = 0;  // 0-based from the head
  std::size_t socle_colayer = 0;  // 1-based height above the socle; 0 until central pass
  bool fallen = false;
  Subspace basis;  // reps in the diagrammed module's coordinates
};

struct DiagramEdge {
  std::size_t from = 0, to = 0;
  Vec cls;          // proportionality class coordinates
  bool socle_side = false;
};

struct ReportEntry {
  std::string check;
  bool pass = true;
  std::string detail;
};

struct Report {
  std::vector<ReportEntry> entries;
  bool all_pass() const {
    for (const auto& e : entries)
      if (!e.pass) return false;
    return true;
  }
};

struct Diagram {
  ModulePtr module;
  bool central = false;
  std::size_t loewy = 0;
  std::vector<DiagramVertex> vertices;
  std::vector<DiagramEdge> edges;
  std::vector<Subspace> components;       // embeddings of the indecomposable summands
  PillarAnalysis pillars;                 // annotations over the whole module
  Report report;
};

Diagram tuned_diagram(const ModulePtr& m);
Diagram central_diagram(const ModulePtr& m);

/* re-derives every claim of the diagram from scratch */
Report verify_diagram(const Diagram& d, const ModulePtr& m);

/* a virtual section is visible when each of its layer images is a span of a
 * subset of the diagram's slots */
bool is_visible(const Diagram& d, const Subspace& top_root, const Subspace& bottom_root);

}  // namespace moddiag
