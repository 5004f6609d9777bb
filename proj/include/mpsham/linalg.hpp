#pragma once

#include <cstdint>
#include <stdexcept>

#include "mpsham/types.hpp"

namespace mpsham {

/// d^n with overflow check; throws std::overflow_error past 2^62.
inline std::int64_t ipow(std::int64_t d, int n) {
  std::int64_t r = 1;
  for (int i = 0; i < n; ++i) {
    if (r > (std::int64_t{1} << 62) / d) throw std::overflow_error("ipow");
    r *= d;
  }
  return r;
}

template <typename DerivedA, typename DerivedB>
Matrix kron(const Eigen::MatrixBase<DerivedA>& a,
            const Eigen::MatrixBase<DerivedB>& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) =
          a(i, j) * b.derived();
  return out;
}

/// Audit trail of a numerical rank decision: the retained/discarded
/// singular values closest to the cut, so borderline calls are visible.
struct RankGap {
  Index rank = 0;
  double sigma_max = 0.0;
  double smallest_kept = 0.0;   // 0 when rank == 0
  double largest_dropped = 0.0; // 0 when nothing was dropped
  double threshold = 0.0;

  /// A value within a factor 10 of the threshold on either side.
  bool borderline() const {
    return (rank > 0 && smallest_kept < 10.0 * threshold) ||
           (largest_dropped > threshold / 10.0);
  }
};

/// Rank decision on a descending spectrum of nonnegative values, keeping
/// entries > tol * max.
RankGap rank_from_spectrum(const RealVector& descending, double rel_tol);

/// Orthonormal basis of the column space of m via SVD, relative threshold
/// rank_tol on singular values.
Matrix colspace(const Matrix& m, double rank_tol, RankGap* gap = nullptr);

/// Orthonormal basis of the null space of m (right singular vectors with
/// sigma <= rank_tol * sigma_max).
Matrix nullspace(const Matrix& m, double rank_tol, RankGap* gap = nullptr);

/// Orthonormal basis of the orthogonal complement of the span of the
/// orthonormal columns of q inside its ambient space.
Matrix orthogonal_complement(const Matrix& q);

/// Cosines of the principal angles between the spans of two orthonormal
/// bases (singular values of u^dag v, descending, clamped to [0,1]).
RealVector principal_angle_cosines(const Matrix& u, const Matrix& v);

/// sin of the largest principal angle from span(v) into span(u), i.e.
/// ||(1 - u u^dag) v||_2 for orthonormal u, v.  Resolves small angles to
/// machine precision where cosines saturate at 1.
double max_sin_angle_into(const Matrix& u, const Matrix& v);

/// Symmetric span distance: max of the two directional sins (requires equal
/// column counts to mean "equal subspaces" when small).
double span_distance(const Matrix& u, const Matrix& v);

/// Cyclically shifts the N-site product basis of a d^N vector by `shift`
/// sites:  out[i_{1+s}, ..., i_N, i_1, ..., i_s] = v[i_1, ..., i_N]
/// (big-endian site order, site 1 most significant).
Vector cyclic_site_shift(const Vector& v, Index d, int n_sites, int shift);

}  // namespace mpsham
