#include "mpsham/linalg.hpp"

#include <Eigen/SVD>
#include <algorithm>

namespace mpsham {

RankGap rank_from_spectrum(const RealVector& s, double rel_tol) {
  RankGap gap;
  if (s.size() == 0) return gap;
  gap.sigma_max = s(0);
  gap.threshold = rel_tol * gap.sigma_max;
  Index r = 0;
  while (r < s.size() && s(r) > gap.threshold) ++r;
  gap.rank = r;
  gap.smallest_kept = r > 0 ? s(r - 1) : 0.0;
  gap.largest_dropped = r < s.size() ? s(r) : 0.0;
  return gap;
}

Matrix colspace(const Matrix& m, double rank_tol, RankGap* gap) {
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeThinU);
  RankGap g = rank_from_spectrum(svd.singularValues(), rank_tol);
  if (gap != nullptr) *gap = g;
  return svd.matrixU().leftCols(g.rank);
}

Matrix nullspace(const Matrix& m, double rank_tol, RankGap* gap) {
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullV);
  RankGap g = rank_from_spectrum(svd.singularValues(), rank_tol);
  // Rows fewer than columns leave trailing exact-null directions that never
  // appear in the singular value list.
  if (gap != nullptr) *gap = g;
  return svd.matrixV().rightCols(m.cols() - g.rank);
}

Matrix orthogonal_complement(const Matrix& q) {
  // Null space of q^dag; full SVD of the ambient x k basis matrix.
  Eigen::JacobiSVD<Matrix> svd(q, Eigen::ComputeFullU);
  RankGap g = rank_from_spectrum(svd.singularValues(), 0.5);
  return svd.matrixU().rightCols(q.rows() - g.rank);
}

RealVector principal_angle_cosines(const Matrix& u, const Matrix& v) {
  Matrix overlap = u.adjoint() * v;
  Eigen::JacobiSVD<Matrix> svd(overlap);
  RealVector s = svd.singularValues();
  for (Index i = 0; i < s.size(); ++i) s(i) = std::min(s(i), 1.0);
  return s;
}

double max_sin_angle_into(const Matrix& u, const Matrix& v) {
  if (v.cols() == 0) return 0.0;
  Matrix residual = v - u * (u.adjoint() * v);
  Eigen::JacobiSVD<Matrix> svd(residual);
  return svd.singularValues()(0);
}

double span_distance(const Matrix& u, const Matrix& v) {
  return std::max(max_sin_angle_into(u, v), max_sin_angle_into(v, u));
}

Vector cyclic_site_shift(const Vector& v, Index d, int n_sites, int shift) {
  std::int64_t dim = ipow(d, n_sites);
  if (v.size() != dim) throw std::invalid_argument("cyclic_site_shift: size");
  int s = ((shift % n_sites) + n_sites) % n_sites;
  if (s == 0) return v;
  // out index drops the leading s digits of the input word and appends them:
  // in = (head, tail) with head = s leading digits -> out = (tail, head).
  std::int64_t head_dim = ipow(d, s);
  std::int64_t tail_dim = dim / head_dim;
  Vector out(dim);
  for (std::int64_t head = 0; head < head_dim; ++head)
    for (std::int64_t tail = 0; tail < tail_dim; ++tail)
      out[tail * head_dim + head] = v[head * tail_dim + tail];
  return out;
}

}  // namespace mpsham
