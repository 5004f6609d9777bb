#include "mpsham/subspace.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>
#include <stdexcept>

namespace mpsham {

double Subspace::orthonormality_defect() const {
  if (dim() == 0) return 0.0;
  Matrix g = basis.adjoint() * basis;
  return (g - Matrix::Identity(dim(), dim())).cwiseAbs().maxCoeff();
}

double Subspace::residual(const Vector& v) const {
  double norm = v.norm();
  if (norm == 0.0) return 0.0;
  Vector r = v - basis * (basis.adjoint() * v);
  return r.norm() / norm;
}

Subspace Subspace::full(Index ambient) {
  Subspace s;
  s.ambient_dim = ambient;
  s.basis = Matrix::Identity(ambient, ambient);
  return s;
}

Subspace Subspace::zero(Index ambient) {
  Subspace s;
  s.ambient_dim = ambient;
  s.basis = Matrix(ambient, 0);
  return s;
}

Subspace Subspace::from_columns(const Matrix& m, double rank_tol) {
  Subspace s;
  s.ambient_dim = m.rows();
  s.basis = colspace(m, rank_tol, &s.gap);
  s.rank_tol = rank_tol;
  return s;
}

Subspace intersect_subspaces(const Subspace& u, const Subspace& v,
                             double angle_tol) {
  if (u.ambient_dim != v.ambient_dim)
    throw std::invalid_argument("intersect_subspaces: ambient mismatch");
  Subspace out;
  out.ambient_dim = u.ambient_dim;
  out.rank_tol = std::min(u.rank_tol, v.rank_tol);
  if (u.dim() == 0 || v.dim() == 0) {
    out.basis = Matrix(u.ambient_dim, 0);
    return out;
  }
  Matrix overlap = u.basis.adjoint() * v.basis;
  Eigen::JacobiSVD<Matrix> svd(overlap, Eigen::ComputeFullV);
  const RealVector& s = svd.singularValues();
  Index k = 0;
  while (k < s.size() && s(k) > 1.0 - angle_tol) ++k;
  out.gap.rank = k;
  out.gap.sigma_max = s.size() > 0 ? s(0) : 0.0;
  out.gap.threshold = 1.0 - angle_tol;
  out.gap.smallest_kept = k > 0 ? s(k - 1) : 0.0;
  out.gap.largest_dropped = k < s.size() ? s(k) : 0.0;
  Matrix raw = v.basis * svd.matrixV().leftCols(k);
  // Directions are orthonormal to first order; one QR pass cleans them up.
  Eigen::HouseholderQR<Matrix> qr(raw);
  out.basis = qr.householderQ() * Matrix::Identity(raw.rows(), k);
  return out;
}

}  // namespace mpsham
