#pragma once

#include <vector>

#include "mpsham/half_int.hpp"
#include "mpsham/types.hpp"

namespace mpsham {

/// Hermitian operator on (C^d)^{(x) sites}.  Basis convention everywhere:
/// single-site levels are ordered by descending magnetic quantum number
/// (m = s, s-1, ..., -s), multi-site indices are big-endian words
/// i_1 i_2 ... i_sites with site 1 most significant.
struct LocalOperator {
  int sites = 0;
  Index phys_dim = 0;
  Matrix matrix;

  Index dim() const { return matrix.rows(); }
  double hermiticity_defect() const {
    return (matrix - matrix.adjoint()).cwiseAbs().maxCoeff();
  }
};

/// Clebsch-Gordan coefficient <j1 m1; j2 m2 | J M> in the Condon-Shortley
/// convention, evaluated by Racah's single-sum closed form with
/// log-factorials (safe to j of order 50).
///
/// Returns exactly 0 when M != m1 + m2 or when (j1, j2, J) fails the
/// triangle rule; throws std::domain_error for invalid (s, m) pairs
/// (|m| > s or 2m-parity mismatch) or negative spins.
double cg(HalfInt j1, HalfInt m1, HalfInt j2, HalfInt m2, HalfInt J,
          HalfInt M);

/// Spin-s irrep matrices (Jx, Jy, Jz) on C^{2s+1}, basis m descending.
struct SpinOperators {
  LocalOperator jx, jy, jz;
};
SpinOperators spin_operators(HalfInt s);

/// Orthogonal projector onto the total-spin-S subspace of s1 (x) s2.
/// Hermitian and idempotent; trace 2S+1.  Throws std::domain_error when S
/// is outside the triangle range.
LocalOperator total_spin_projector(HalfInt s1, HalfInt s2, HalfInt S);

/// Normalized coupled pair state |Q, M=0> of two spin-j particles,
/// sum_m cg(j,m, j,-m; Q,0) |m,-m>.  Q = 0 is the singlet bond.
Vector bond_state(HalfInt j, HalfInt Q);

/// Two-site operator  constant + sum_k coeffs[k-1] (J1.J2)^k  on spin-J
/// pairs (coeffs[0] multiplies the linear term).
LocalOperator heisenberg_poly(HalfInt J, const std::vector<double>& coeffs,
                              double constant = 0.0);

}  // namespace mpsham
