#pragma once

#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "moddiag/algebra.hpp"
#include "moddiag/rng.hpp"

namespace moddiag {

struct AModule;
using ModulePtr = std::shared_ptr<const AModule>;

/* A finite-dimensional left module, given by the action of the algebra
 * generators (column convention: v ↦ X v). Every module is a virtual section
 * of a root module; sections of sections normalize to the root, so the
 * type-q identification is bit-exact equality of (root, top, bottom). */
struct AModule {
  AlgebraPtr alg;
  std::size_t dim = 0;
  std::vector<MatrixFp> gen_action;
  std::vector<MatrixFp> word_action;  // action of each product-basis word, filled on build

  ModulePtr root;   // null ⇒ this module is its own root
  Subspace top;     // in root coordinates
  Subspace bottom;  // in root coordinates, bottom ⊆ top
  MatrixFp reps;    // coset representatives (rows, root coordinates)

  std::uint64_t uid = 0;
};

ModulePtr make_root_module(AlgebraPtr alg, std::vector<MatrixFp> gen_action);
ModulePtr regular_module(const AlgebraPtr& alg);
ModulePtr zero_module(const AlgebraPtr& alg);

/* action matrix of an arbitrary algebra element */
MatrixFp action_of(const AModule& m, const Vec& algebra_elt);
/* checks the action matrices against the algebra's multiplication */
void validate_module(const AModule& m);

ModulePtr root_of(const ModulePtr& m);
/* rows given in m's coordinates, result in root coordinates */
MatrixFp rows_to_root(const AModule& m, const MatrixFp& rows);
/* root-coordinate rows (inside top) expressed in m's coordinates mod bottom */
MatrixFp rows_from_root(const AModule& m, const MatrixFp& rows);
/* subspace of m lifted to root coordinates, bottom included */
Subspace lift_full(const AModule& m, const Subspace& u);

bool is_submodule(const AModule& m, const Subspace& u);
/* quotient top/bottom as a virtual section, normalized to the root */
ModulePtr section(const ModulePtr& m, const Subspace& top, const Subspace& bottom);
ModulePtr submodule_module(const ModulePtr& m, const Subspace& u);
ModulePtr quotient_module(const ModulePtr& m, const Subspace& u);

Subspace radical_of(const AModule& m);
Subspace socle_of(const AModule& m);
/* descending chain m ⊃ rad ⊃ rad² ⊃ ... ⊃ 0 */
std::vector<Subspace> radical_chain(const AModule& m);
/* ascending chain 0 ⊂ soc ⊂ soc² ⊂ ... ⊂ m */
std::vector<Subspace> socle_chain(const AModule& m);
std::size_t loewy_length(const AModule& m);

struct Morphism {
  ModulePtr src, dst;
  MatrixFp mat;  // dst.dim × src.dim
};

bool is_intertwiner(const Morphism& f);
Morphism compose(const Morphism& g, const Morphism& f);  // g ∘ f

/* canonical maps between virtual sections of one root:
 * epi  m ↠ q needs q.top == m.top and m.bottom ⊆ q.bottom;
 * mono s ↪ m needs s.bottom == m.bottom and s.top ⊆ m.top. */
Morphism canonical_epi(const ModulePtr& m, const ModulePtr& q);
Morphism canonical_mono(const ModulePtr& s, const ModulePtr& m);

/* basis of Hom_A(m, n) as matrices, canonical (RREF of the solution space) */
std::vector<MatrixFp> hom_space(const AModule& m, const AModule& n);

struct Summand {
  ModulePtr module;    // submodule of the decomposed module
  Subspace embedding;  // its subspace in the decomposed module's coordinates
};

/* Direct-sum decomposition into indecomposables (Fitting analysis of End:
 * split along coprime factors of endomorphism minimal polynomials).
 * Sorted by (dim desc, embedding basis lex). Deterministic given the stream. */
std::vector<Summand> decompose(const ModulePtr& m, RngStream rng);
std::vector<Summand> decompose(const ModulePtr& m);  // stream from global seed

bool is_indecomposable(const ModulePtr& m);

/* invertible intertwiner if one exists; exhaustive below the search cap */
std::optional<Morphism> iso_test(const ModulePtr& m, const ModulePtr& n, RngStream rng);
std::optional<Morphism> iso_test(const ModulePtr& m, const ModulePtr& n);

/* dual module via the algebra antipode (g ↦ g⁻¹ for group algebras, identity
 * for commutative algebras) */
ModulePtr dual_module(const ModulePtr& m);

ModulePtr direct_sum(const std::vector<ModulePtr>& parts, std::vector<Subspace>* embeddings = nullptr);

/* ---- simples, p.i.m.s, classification (algebra-level caches) ---- */

struct AlgebraCache {
  ModulePtr regular;
  std::vector<ModulePtr> simples;          // pairwise non-isomorphic, S_i = Hd(pims[i])
  std::vector<ModulePtr> pims;
  std::vector<Morphism> pim_head_epi;      // pims[i] ↠ simples[i]
  std::vector<std::size_t> pim_multiplicity;
  std::optional<AlgebraKind> kind;
  bool filled = false;
};

const std::vector<ModulePtr>& simples(const AlgebraPtr& a);
const std::vector<ModulePtr>& pims(const AlgebraPtr& a);
const Morphism& pim_head(const AlgebraPtr& a, std::size_t simple_id);
std::size_t pim_multiplicity(const AlgebraPtr& a, std::size_t simple_id);
/* simple id of a module isomorphic to some simple; NotSplit/BadInput otherwise */
std::size_t simple_id_of(const AlgebraPtr& a, const ModulePtr& s);

AlgebraKind classify(const AlgebraPtr& a);

/* ---- virtual Loewy series ---- */

struct VirtualSimple {
  std::size_t layer = 0;
  std::size_t slot = 0;
  std::size_t iso_class = 0;
  Subspace basis;  // reps in the module's coordinates; image in the layer quotient is the summand
};

enum class SeriesKind { radical, socle };

struct LoewySeries {
  SeriesKind kind = SeriesKind::radical;
  std::vector<Subspace> terms;  // radical: m ⊃ rad ⊃ ... ⊃ 0; socle: 0 ⊂ soc ⊂ ... ⊂ m
  std::vector<std::vector<VirtualSimple>> layers;
};

/* forced slot choices (tuned-diagram overrides): per layer, a list of
 * (iso_class, basis rows in module coordinates) taken before the default
 * greedy splitting */
using LayerOverrides = std::map<std::size_t, std::vector<VirtualSimple>>;

LoewySeries loewy_series(const ModulePtr& m, SeriesKind kind,
                         const LayerOverrides& overrides = {});

/* the section carrying layer i of the series */
ModulePtr layer_section(const ModulePtr& m, const LoewySeries& s, std::size_t i);

/* global seed used by the convenience overloads; set from CLI/config */
void set_global_seed(std::uint64_t seed);
std::uint64_t global_seed();

}  // namespace moddiag
