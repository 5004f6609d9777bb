#pragma once

#include "mpsham/linalg.hpp"
#include "mpsham/types.hpp"

namespace mpsham {

/// A subspace of C^ambient_dim: an orthonormal basis plus the rank
/// tolerance that produced it.  Immutable by convention after construction.
struct Subspace {
  Index ambient_dim = 0;
  Matrix basis;  // ambient_dim x k, orthonormal columns
  double rank_tol = kDefaultRankTol;
  RankGap gap;  // audit of the rank decision that produced the basis

  Index dim() const { return basis.cols(); }

  /// Max-abs deviation of basis^dag basis from the identity.
  double orthonormality_defect() const;

  /// Relative residual of v against this subspace, ||(1 - P)v|| / ||v||.
  double residual(const Vector& v) const;

  static Subspace full(Index ambient);
  static Subspace zero(Index ambient);

  /// Span of the columns of m (not necessarily orthonormal).
  static Subspace from_columns(const Matrix& m, double rank_tol);
};

/// Orthonormal basis of U intersect V via the singular values of
/// U.basis^dag V.basis: right-singular directions with sigma > 1 - angle_tol
/// are mapped through V.basis and re-orthonormalized.
Subspace intersect_subspaces(const Subspace& u, const Subspace& v,
                             double angle_tol = kDefaultAngleTol);

}  // namespace mpsham
