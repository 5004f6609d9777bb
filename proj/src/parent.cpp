#include "mpsham/parent.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

#include "mpsham/intersect.hpp"

namespace mpsham {

namespace {

std::size_t matrix_bytes(std::int64_t rows, std::int64_t cols) {
  return static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols) *
         sizeof(Complex);
}

// out += (1_head (x) h (x) 1_tail) applied in place on the dense matrix m.
void add_window(Matrix& m, const Matrix& h, std::int64_t head_dim,
                std::int64_t tail_dim) {
  const Index hd = h.rows();
  for (std::int64_t a = 0; a < head_dim; ++a)
    for (Index mid = 0; mid < hd; ++mid)
      for (Index midp = 0; midp < hd; ++midp) {
        if (h(mid, midp) == Complex(0, 0)) continue;
        std::int64_t row0 = (a * hd + mid) * tail_dim;
        std::int64_t col0 = (a * hd + midp) * tail_dim;
        for (std::int64_t t = 0; t < tail_dim; ++t)
          m(row0 + t, col0 + t) += h(mid, midp);
      }
}

// w-th window term applied to v: head = w sites, window = ell sites.
void apply_window(const Matrix& h, const Vector& v, Vector& out, Index d,
                  int n_sites, int w, int ell) {
  const std::int64_t head_dim = ipow(d, w);
  const std::int64_t mid_dim = ipow(d, ell);
  const std::int64_t tail_dim = ipow(d, n_sites - w - ell);
  const std::int64_t block = mid_dim * tail_dim;
  Matrix hc = h.conjugate();
  for (std::int64_t a = 0; a < head_dim; ++a) {
    Eigen::Map<const Matrix> in(v.data() + a * block, tail_dim, mid_dim);
    Eigen::Map<Matrix> acc(out.data() + a * block, tail_dim, mid_dim);
    acc.noalias() += in * hc;  // h on the mid index; h^T = conj(h)
  }
}

}  // namespace

ParentTerm parent_term(const MpsTensor& A, int ell, double rank_tol,
                       MemoryBudget& budget) {
  const std::int64_t dim = ipow(A.d(), ell);
  Subspace s = mps_space(A, ell, rank_tol, budget);
  MemReservation res(budget, matrix_bytes(dim, dim));
  ParentTerm term;
  term.ell = ell;
  term.source_tol = rank_tol;
  term.kernel_dim = s.dim();
  term.trivial = (s.dim() == dim);
  Matrix h = Matrix::Identity(dim, dim);
  h.noalias() -= s.basis * s.basis.adjoint();
  term.base = LocalOperator{ell, A.d(), std::move(h)};
  return term;
}

ParentTerm parent_term_from_kernel(const Subspace& kernel, Index d, int ell,
                                   double rank_tol) {
  const std::int64_t dim = ipow(d, ell);
  if (kernel.ambient_dim != dim)
    throw std::invalid_argument("parent_term_from_kernel: ambient mismatch");
  ParentTerm term;
  term.ell = ell;
  term.source_tol = rank_tol;
  term.kernel_dim = kernel.dim();
  term.trivial = (kernel.dim() == dim);
  Matrix h = Matrix::Identity(dim, dim);
  h.noalias() -= kernel.basis * kernel.basis.adjoint();
  term.base = LocalOperator{ell, d, std::move(h)};
  return term;
}

Vector apply_obc_hamiltonian(const ParentTerm& term, int n_sites,
                             const Vector& v, MemoryBudget& budget) {
  const Index d = term.d();
  const int ell = term.ell;
  if (n_sites < ell) throw std::invalid_argument("apply_obc: N < ell");
  const std::int64_t dim = ipow(d, n_sites);
  if (v.size() != dim) throw std::invalid_argument("apply_obc: vector size");
  MemReservation res(budget, matrix_bytes(dim, 1));
  Vector out = Vector::Zero(dim);
  for (int w = 0; w <= n_sites - ell; ++w)
    apply_window(term.base.matrix, v, out, d, n_sites, w, ell);
  return out;
}

Vector apply_pbc_hamiltonian(const ParentTerm& term, int n_sites,
                             const Vector& v, MemoryBudget& budget) {
  const Index d = term.d();
  const int ell = term.ell;
  if (n_sites < ell) throw std::invalid_argument("apply_pbc: N < ell");
  Vector out = apply_obc_hamiltonian(term, n_sites, v, budget);
  for (int w = n_sites - ell + 1; w < n_sites; ++w) {
    // Wrap-around window: rotate it to the front, apply, rotate back.
    Vector rotated = cyclic_site_shift(v, d, n_sites, w);
    Vector tmp = Vector::Zero(v.size());
    apply_window(term.base.matrix, rotated, tmp, d, n_sites, 0, ell);
    out += cyclic_site_shift(tmp, d, n_sites, -w);
  }
  return out;
}

Subspace pbc_kernel(const ParentTerm& term, const MpsTensor& A, int n_sites,
                    double rank_tol, double angle_tol, MemoryBudget& budget) {
  // ker H_pbc = I^ell_N refined by the ell-1 wrap-around windows.
  IntersectOpts opts;
  opts.rank_tol = rank_tol;
  opts.angle_tol = angle_tol;
  auto [open_kernel, report] =
      intersection_space(A, term.ell, n_sites, opts, budget);
  const Index n = open_kernel.dim();
  const Index d = term.d();
  if (n == 0) return open_kernel;

  Matrix gram = Matrix::Zero(n, n);
  for (int w = n_sites - term.ell + 1; w < n_sites; ++w) {
    Matrix projected(open_kernel.basis.rows(), n);
    for (Index c = 0; c < n; ++c) {
      Vector col = open_kernel.basis.col(c);
      Vector rotated = cyclic_site_shift(col, d, n_sites, w);
      Vector tmp = Vector::Zero(col.size());
      apply_window(term.base.matrix, rotated, tmp, d, n_sites, 0, term.ell);
      projected.col(c) = cyclic_site_shift(tmp, d, n_sites, -w);
    }
    gram.selfadjointView<Eigen::Lower>().rankUpdate(projected.adjoint(), 1.0);
  }
  Eigen::SelfAdjointEigenSolver<Matrix> eig(gram);
  const double null_tol = 1.0 - (1.0 - angle_tol) * (1.0 - angle_tol);
  Index k = 0;
  while (k < n && eig.eigenvalues()(k) < null_tol) ++k;

  Subspace kernel;
  kernel.ambient_dim = open_kernel.ambient_dim;
  kernel.rank_tol = rank_tol;
  kernel.basis = open_kernel.basis * eig.eigenvectors().leftCols(k);
  kernel.gap.rank = k;
  kernel.gap.threshold = null_tol;
  kernel.gap.smallest_kept = k > 0 ? eig.eigenvalues()(k - 1) : 0.0;
  kernel.gap.largest_dropped = k < n ? eig.eigenvalues()(k) : 0.0;
  return kernel;
}

double FDetResult::value() const { return is_zero ? 0.0 : std::exp(log_abs); }

FDetResult f_det(const MpsTensor& A, int ell, int L, double rank_tol,
                 Index dense_cap, MemoryBudget& budget) {
  const Index d = A.d(), D = A.D();
  const std::int64_t dim = ipow(d, L);
  if (dim > dense_cap)
    throw ResourceError(matrix_bytes(dim, dim), 0,
                        matrix_bytes(dense_cap, dense_cap));
  Subspace s_ell = mps_space(A, ell, rank_tol, budget);
  if (s_ell.dim() != D * D)
    throw PreconditionError("f_det: tensor not injective on " +
                            std::to_string(ell) + " sites (dim S = " +
                            std::to_string(s_ell.dim()) + ")");

  MemReservation res(budget, 2 * matrix_bytes(dim, dim));
  ParentTerm term = parent_term(A, ell, rank_tol, budget);
  Matrix m = Matrix::Zero(dim, dim);
  for (int w = 0; w <= L - ell; ++w)
    add_window(m, term.base.matrix, ipow(d, w), ipow(d, L - w - ell));
  // + (1 - h^L), the projector onto S_L.
  Subspace s_L = mps_space(A, L, rank_tol, budget);
  m.noalias() += s_L.basis * s_L.basis.adjoint();

  Eigen::SelfAdjointEigenSolver<Matrix> eig(m, Eigen::EigenvaluesOnly);
  const RealVector& lam = eig.eigenvalues();  // ascending
  FDetResult r;
  r.min_eig = lam(0);
  r.max_eig = lam(lam.size() - 1);
  const double floor = kFDetZeroTol * r.max_eig;
  r.is_zero = r.min_eig < floor;
  r.borderline = false;
  double log_abs = 0.0;
  for (Index i = 0; i < lam.size(); ++i) {
    if (lam(i) > floor / 10.0 && lam(i) < floor * 10.0) r.borderline = true;
    if (!r.is_zero) log_abs += std::log(lam(i));
  }
  r.log_abs = r.is_zero ? -std::numeric_limits<double>::infinity() : log_abs;
  return r;
}

}  // namespace mpsham
