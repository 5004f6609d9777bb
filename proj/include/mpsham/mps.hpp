#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "mpsham/memory.hpp"
#include "mpsham/subspace.hpp"
#include "mpsham/types.hpp"

namespace mpsham {

/// Translationally invariant MPS tensor A^i_{alpha beta}: d matrices of
/// size D x D.  A state on N sites with boundary matrix X has coefficients
/// tr[A^{i_1} ... A^{i_N} X] on the big-endian product basis (site 1 most
/// significant).
struct MpsTensor {
  Index phys_dim = 0;  // d >= 2
  Index bond_dim = 0;  // D >= 1
  std::vector<Matrix> a;

  Index d() const { return phys_dim; }
  Index D() const { return bond_dim; }
  const Matrix& operator[](Index i) const { return a[static_cast<size_t>(i)]; }
  Matrix& operator[](Index i) { return a[static_cast<size_t>(i)]; }

  static MpsTensor zero(Index d, Index D);
  bool all_finite() const;

  /// Frobenius norm over all entries.
  double norm() const;
  void scale(double factor);
};

/// I.i.d. standard complex Gaussian tensor from a counter-based stream:
/// entry (i, alpha, beta) is a pure function of (d, D, seed), identical
/// across platforms and thread counts.
MpsTensor random_mps(Index d, Index D, std::uint64_t seed);

/// Boundary-to-state map on ell sites as a dense d^ell x D^2 matrix.
/// Row r is the big-endian word i_1...i_ell; column beta*D + alpha holds
/// (A^{i_1} ... A^{i_ell})_{alpha beta}, so that multiplying by vec(X) in
/// (beta, alpha) order (row-major X) yields the coefficients tr[A...A X].
Matrix blocking_map(const MpsTensor& A, int ell,
                    MemoryBudget& budget = default_budget());

/// vec(X) in the (beta, alpha) order used by blocking_map columns.
Vector vec_boundary(const Matrix& x);

/// Orthonormal basis of the span of all ell-site states with free boundary,
/// i.e. the column space of blocking_map(A, ell) at relative threshold
/// rank_tol.
Subspace mps_space(const MpsTensor& A, int ell, double rank_tol = kDefaultRankTol,
                   MemoryBudget& budget = default_budget());

/// Smallest ell <= ell_max with dim S_ell = D^2, or nullopt.  Ranks are
/// taken from the singular values of the blocking map for small d^ell and
/// from the eigenvalues of its Gram matrix (threshold rank_tol relative to
/// the largest eigenvalue) once d^ell is large.
std::optional<int> injectivity_length(const MpsTensor& A, int ell_max,
                                      double rank_tol = kDefaultRankTol,
                                      MemoryBudget& budget = default_budget());

/// N-site state vector for boundary X (coefficients tr[A^{i_1}...A^{i_N} X]),
/// unnormalized.
Vector state_vector(const MpsTensor& A, int n_sites, const Matrix& x,
                    MemoryBudget& budget = default_budget());

/// Periodic state: boundary X = identity.
Vector state_vector_periodic(const MpsTensor& A, int n_sites,
                             MemoryBudget& budget = default_budget());

/// State with an optional matrix inserted on each internal link:
/// coefficients tr[A^{i_1} M_1 A^{i_2} M_2 ... M_{N-1} A^{i_N} X] where
/// M_t is links[t-1] or the identity when absent.  links may be shorter
/// than N-1; missing trailing entries mean identity.
Vector state_vector_with_links(const MpsTensor& A, int n_sites,
                               const std::vector<std::optional<Matrix>>& links,
                               const Matrix& x,
                               MemoryBudget& budget = default_budget());

/// Physical embedding d -> d_new >= d by zero matrices on the new levels.
MpsTensor pad_physical(const MpsTensor& A, Index d_new);

}  // namespace mpsham
