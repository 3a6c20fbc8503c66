#pragma once

#include "moddiag/module.hpp"

namespace moddiag {

/* Exhaustive enumeration of all subspaces of F_p^dim, by rank, pivot columns
 * lex, free entries lex. Intended for tiny p and dim (the oracle cap). */
std::vector<Subspace> enumerate_subspaces(std::uint32_t p, std::size_t dim);

/* Largest nilpotent two-sided ideal by exhaustive search (test oracle). */
Subspace brute_force_radical(const AlgebraPtr& a);

struct LatticeOracle {
  std::vector<Subspace> submodules;  // every action-invariant subspace
  Subspace radical;                  // intersection of maximal proper submodules
  Subspace socle;                    // sum of minimal nonzero submodules
  std::vector<std::vector<Subspace>> decompositions;  // all unordered direct splittings into two
  std::vector<Subspace> indecomposable_summands;      // one full refinement, canonical order
};

/* Ground truth for modules of dimension <= cap: enumerates the full
 * submodule lattice and derives radical, socle and direct decompositions
 * by complement search. */
LatticeOracle lattice_oracle(const ModulePtr& m, std::size_t dim_cap = 6);

}  // namespace moddiag
