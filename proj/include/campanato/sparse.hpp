#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "campanato/grid.hpp"

namespace campanato {

struct SparseEntry {
  Cube cube;
  std::vector<std::size_t> e;  // linear cell indices of E_Q, ascending
  double oscillation;          // (1/|Q|) ∫_Q |f - f_Q|
};

/// Entries in depth-first preorder of the stopping-time tree.
struct SparseFamily {
  Cube root;
  std::vector<SparseEntry> entries;
};

/// Stopping-time decomposition of f on Q0 (power-of-two side). For each
/// selected Q the stopping children are the maximal dyadic P ⊊ Q with
/// (1/|P|) ∫_P |f - f_Q| > α osc(Q); E_Q is Q minus their union. Zero
/// oscillation ends a branch with E_Q = Q. Requires α ≥ 2.
SparseFamily cz_sparse(const GridFunction& f, const Cube& q0, double alpha = 2.0);

/// Human-readable descriptions of every violated family invariant: dyadic
/// containment in the root, E_Q ⊂ Q, pairwise disjointness, |Q| ≤ 2|E_Q|.
std::vector<std::string> sparse_violations(const SparseFamily& s);

/// Σ_{Q ∈ S} osc(Q) χ_Q, with osc recomputed from f.
GridFunction sparse_majorant(const SparseFamily& s, const GridFunction& f);

/// max over cells of Q0 of |f - f_{Q0}| / majorant; 0/0 counts as 0 and
/// x/0 with x > 0 as +infinity.
double domination_constant(const GridFunction& f, const Cube& q0, double alpha = 2.0);
double domination_constant(const GridFunction& f, const SparseFamily& s);

}  // namespace campanato
