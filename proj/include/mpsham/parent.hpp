#pragma once

#include "mpsham/mps.hpp"
#include "mpsham/spin.hpp"
#include "mpsham/subspace.hpp"

namespace mpsham {

/// Projector complement h^ell = 1 - Pi_{S_ell}, the local term of the
/// parent Hamiltonian.  `trivial` marks the case S_ell = (C^d)^ell where
/// the term vanishes.
struct ParentTerm {
  LocalOperator base;  // h^ell, Hermitian idempotent
  int ell = 0;
  double source_tol = kDefaultRankTol;
  bool trivial = false;
  Index kernel_dim = 0;  // dim S_ell

  Index d() const { return base.phys_dim; }
};

ParentTerm parent_term(const MpsTensor& A, int ell,
                       double rank_tol = kDefaultRankTol,
                       MemoryBudget& budget = default_budget());

/// Parent term from an explicit kernel subspace on (C^d)^ell (for model
/// Hamiltonians whose ground space is specified directly).
ParentTerm parent_term_from_kernel(const Subspace& kernel, Index d, int ell,
                                   double rank_tol = kDefaultRankTol);

/// Applies the open-boundary chain Hamiltonian H = sum_w 1 (x) h (x) 1
/// (window w at sites w+1..w+ell, w = 0..N-ell) to v, matrix free.
Vector apply_obc_hamiltonian(const ParentTerm& term, int n_sites,
                             const Vector& v,
                             MemoryBudget& budget = default_budget());

/// Same with periodic boundary conditions (N windows, cyclic).
Vector apply_pbc_hamiltonian(const ParentTerm& term, int n_sites,
                             const Vector& v,
                             MemoryBudget& budget = default_budget());

/// Ground space (kernel) of the N-site PBC chain of `term`, computed as the
/// open-chain kernel refined by the wrap-around windows.
Subspace pbc_kernel(const ParentTerm& term, const MpsTensor& A, int n_sites,
                    double rank_tol = kDefaultRankTol,
                    double angle_tol = kDefaultAngleTol,
                    MemoryBudget& budget = default_budget());

/// Determinant witness det[H^ell_L + (1 - h^L)] for uniqueness of the
/// ground space on L sites, reported through the spectrum of the assembled
/// Hermitian PSD matrix.  The witness vanishes exactly when the joint
/// kernel of the ell-site windows exceeds the L-site MPS space.
struct FDetResult {
  bool is_zero = false;
  double log_abs = 0.0;  // sum of log eigenvalues when nonzero
  double min_eig = 0.0;
  double max_eig = 0.0;
  bool borderline = false;

  double value() const;  // exp(log_abs), or 0; may overflow to inf
};

/// Relative eigenvalue floor for the zero decision of f_det.
inline constexpr double kFDetZeroTol = 1e-9;

/// Requires A injective on ell sites (dim S_ell = D^2) and d^L within the
/// dense cap; intended for small L.
FDetResult f_det(const MpsTensor& A, int ell, int L,
                 double rank_tol = kDefaultRankTol,
                 Index dense_cap = 4096,
                 MemoryBudget& budget = default_budget());

}  // namespace mpsham
