#include "mpsham/intersect.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <chrono>
#include <cmath>

namespace mpsham {

namespace {

std::size_t matrix_bytes(std::int64_t rows, std::int64_t cols) {
  return static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols) *
         sizeof(Complex);
}

// Slices of the window basis with the last site pinned to level i:
// rows (r_mid * d + i) of u, one d^{ell-1} x n_s block per level.
std::vector<Matrix> last_site_slices(const Matrix& u, Index d) {
  const Index mid = u.rows() / d;
  const Index n_s = u.cols();
  std::vector<Matrix> slices(static_cast<size_t>(d));
  for (Index i = 0; i < d; ++i) {
    Matrix& s = slices[static_cast<size_t>(i)];
    s.resize(mid, n_s);
    for (Index r = 0; r < mid; ++r) s.row(r) = u.row(r * d + i);
  }
  return slices;
}

struct StepAudit {
  double min_kept_mu = 1.0;     // worst accepted intersection direction
  double max_dropped_mu = 0.0;  // best rejected direction
  bool borderline = false;
};

// One growth step: from the orthonormal basis b of I_k (d^k x n) to a basis
// of I_{k+1} = (I_k (x) C^d) cap ((C^d)^{k+1-ell} (x) S_ell).  Candidates
// b_p (x) e_i are never materialized; the new window enters through the
// Gram matrix of their projections onto 1 (x) S_ell, accumulated over
// row slabs of bounded size.  mu ~ 1 marks an intersection direction.
Matrix grow_one_site(const Matrix& b, const std::vector<Matrix>& u_slices,
                     Index d, double angle_tol, std::size_t slab_bytes,
                     StepAudit& audit, bool& streamed, MemoryBudget& budget) {
  const Index n_k = b.cols();
  const std::int64_t dim_k = b.rows();
  const Index n_s = u_slices.empty() ? 0 : u_slices[0].cols();
  const Index mid = u_slices.empty() ? 1 : u_slices[0].rows();
  const std::int64_t head_count = dim_k / mid;
  const Index n_c = n_k * d;
  if (n_c == 0) return Matrix(dim_k * d, 0);

  MemReservation gram_res(budget, matrix_bytes(n_c, 3 * n_c));
  Matrix gram = Matrix::Zero(n_c, n_c);

  if (n_s > 0) {
    // Rows of K are (r_head, s); slabs are contiguous head ranges.
    std::int64_t heads_per_slab = head_count;
    std::size_t full_bytes =
        matrix_bytes(static_cast<std::int64_t>(n_s) * head_count, n_c);
    if (full_bytes > slab_bytes) {
      heads_per_slab = std::max<std::int64_t>(
          1, static_cast<std::int64_t>(
                 slab_bytes / std::max<std::size_t>(
                                  1, matrix_bytes(n_s, n_c))));
      streamed = true;
    }
    MemReservation slab_res(budget,
                            matrix_bytes(n_s * heads_per_slab, n_c));
    Matrix k_slab(n_s * heads_per_slab, n_c);
    for (std::int64_t h0 = 0; h0 < head_count; h0 += heads_per_slab) {
      const std::int64_t ch = std::min(heads_per_slab, head_count - h0);
      if (ch != k_slab.rows() / n_s) k_slab.resize(n_s * ch, n_c);
      for (Index p = 0; p < n_k; ++p) {
        Eigen::Map<const Matrix> m_p(b.col(p).data() + h0 * mid, mid, ch);
        for (Index i = 0; i < d; ++i) {
          Eigen::Map<Matrix> k_col(k_slab.col(p * d + i).data(), n_s, ch);
          k_col.noalias() = u_slices[static_cast<size_t>(i)].adjoint() * m_p;
        }
      }
      gram.selfadjointView<Eigen::Lower>().rankUpdate(k_slab.adjoint(), 1.0);
    }
  }

  Eigen::SelfAdjointEigenSolver<Matrix> eig(gram);
  const RealVector& mu = eig.eigenvalues();  // ascending in [0, 1]
  const double null_tol = 1.0 - (1.0 - angle_tol) * (1.0 - angle_tol);
  Index first_kept = n_c;
  while (first_kept > 0 && 1.0 - mu(first_kept - 1) < null_tol) --first_kept;
  for (Index q = 0; q < n_c; ++q) {
    double dist = 1.0 - mu(q);
    if (q >= first_kept)
      audit.min_kept_mu = std::min(audit.min_kept_mu, mu(q));
    else
      audit.max_dropped_mu = std::max(audit.max_dropped_mu, mu(q));
    if (dist > null_tol / 10.0 && dist < null_tol * 10.0)
      audit.borderline = true;
  }
  const Index n_new = n_c - first_kept;

  MemReservation out_res(budget, matrix_bytes(dim_k * d, n_new));
  Matrix out(dim_k * d, n_new);
  if (n_new > 0) {
    Matrix y = eig.eigenvectors().rightCols(n_new);
    for (Index i = 0; i < d; ++i) {
      Matrix y_i(n_k, n_new);
      for (Index p = 0; p < n_k; ++p) y_i.row(p) = y.row(p * d + i);
      Matrix block = b * y_i;  // d^k x n_new
      for (std::int64_t r = 0; r < dim_k; ++r)
        out.row(r * d + i) = block.row(r);
    }
  }
  return out;
}

}  // namespace

Index IntersectionReport::dim_at(int L) const {
  for (const auto& [l, dim] : dims)
    if (l == L) return dim;
  throw std::out_of_range("IntersectionReport: no dim for L=" +
                          std::to_string(L));
}

bool IntersectionReport::int_holds_at(int L) const {
  for (const auto& [l, v] : verdicts)
    if (l == L) return v;
  throw std::out_of_range("IntersectionReport: no verdict for L=" +
                          std::to_string(L));
}

std::pair<Subspace, IntersectionReport> intersection_space(
    const MpsTensor& A, int ell, int L, const IntersectOpts& opts,
    MemoryBudget& budget) {
  if (ell < 1 || L < ell)
    throw std::invalid_argument("intersection_space: need 1 <= ell <= L");
  auto t0 = std::chrono::steady_clock::now();
  const Index d = A.d(), D = A.D();

  IntersectionReport rep;
  rep.d = d;
  rep.D = D;
  rep.ell = ell;
  rep.rank_tol = opts.rank_tol;
  rep.angle_tol = opts.angle_tol;
  rep.strategy = "dense";

  Subspace window = mps_space(A, ell, opts.rank_tol, budget);
  rep.injective_on_ell = (window.dim() == D * D);
  if (window.gap.borderline()) rep.borderline = true;

  Matrix basis = window.basis;
  MemReservation basis_res(budget, matrix_bytes(basis.rows(), basis.cols()));
  rep.dims.emplace_back(ell, basis.cols());
  rep.verdicts.emplace_back(ell, basis.cols() == D * D);
  if (opts.on_dim) opts.on_dim(ell, basis.cols());

  std::vector<Matrix> u_slices = last_site_slices(window.basis, d);
  bool streamed = false;
  StepAudit audit;
  int reached = ell;
  for (int k = ell; k < L; ++k) {
    Matrix next = grow_one_site(basis, u_slices, d, opts.angle_tol,
                                opts.slab_bytes, audit, streamed, budget);
    basis_res = MemReservation(budget, matrix_bytes(next.rows(), next.cols()));
    basis = std::move(next);
    reached = k + 1;
    rep.dims.emplace_back(k + 1, basis.cols());
    rep.verdicts.emplace_back(k + 1, basis.cols() == D * D);
    if (opts.on_dim) opts.on_dim(k + 1, basis.cols());
    if (opts.stop_at_bond_squared && (basis.cols() == D * D || basis.cols() == 0))
      break;
  }
  rep.borderline = rep.borderline || audit.borderline;
  rep.closest_kept = audit.min_kept_mu;
  rep.closest_dropped = audit.max_dropped_mu;
  if (streamed) rep.strategy = "streamed";
  rep.peak_bytes = budget.peak();
  rep.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();

  Subspace result;
  result.ambient_dim = ipow(d, reached);
  result.rank_tol = opts.rank_tol;
  result.basis =
      opts.keep_basis ? std::move(basis) : Matrix(result.ambient_dim, 0);
  return {std::move(result), std::move(rep)};
}

bool int_holds(const MpsTensor& A, int ell, int L, const IntersectOpts& opts,
               MemoryBudget& budget) {
  IntersectOpts o = opts;
  o.keep_basis = false;
  auto [space, rep] = intersection_space(A, ell, L, o, budget);
  return rep.int_holds_at(L);
}

bool transitivity_check(const MpsTensor& A, int ell, int L, int N,
                        const IntersectOpts& opts, MemoryBudget& budget) {
  if (!(ell <= L && L <= N))
    throw std::invalid_argument("transitivity_check: need ell <= L <= N");
  bool first = int_holds(A, ell, L, opts, budget);
  bool second = int_holds(A, L, N, opts, budget);
  bool third = int_holds(A, ell, N, opts, budget);
  return !(first && second) || third;
}

std::int64_t dim_lower_bound(std::int64_t d, std::int64_t D, int L, int ell) {
  if (L < ell) throw std::invalid_argument("dim_lower_bound: L < ell");
  std::int64_t windows = L - ell + 1;
  return ipow(d, L) - windows * (ipow(d, ell) - D * D) * ipow(d, L - ell);
}

Subspace brute_force_intersection(const MpsTensor& A, int ell, int L,
                                  double rank_tol, Index dense_cap,
                                  MemoryBudget& budget) {
  const Index d = A.d();
  const std::int64_t dim = ipow(d, L);
  if (dim > dense_cap)
    throw ResourceError(matrix_bytes(dim, dim), 0,
                        matrix_bytes(dense_cap, dense_cap));
  Subspace s_ell = mps_space(A, ell, rank_tol, budget);
  Matrix complement = orthogonal_complement(s_ell.basis);
  const Index n_con = complement.cols();
  if (n_con == 0) return Subspace::full(dim);

  const std::int64_t mid_dim = ipow(d, ell);
  const int n_windows = L - ell + 1;
  const std::int64_t env = dim / mid_dim;  // head * tail combinations
  MemReservation res(budget,
                     matrix_bytes(n_windows * n_con * env, dim) +
                         matrix_bytes(dim, dim));
  Matrix constraints = Matrix::Zero(n_windows * n_con * env, dim);
  std::int64_t row = 0;
  for (int w = 0; w < n_windows; ++w) {
    const std::int64_t tail_dim = ipow(d, L - w - ell);
    const std::int64_t head_dim = ipow(d, w);
    for (Index u = 0; u < n_con; ++u)
      for (std::int64_t a = 0; a < head_dim; ++a)
        for (std::int64_t t = 0; t < tail_dim; ++t) {
          for (std::int64_t m = 0; m < mid_dim; ++m)
            constraints(row, (a * mid_dim + m) * tail_dim + t) =
                std::conj(complement(m, u));
          ++row;
        }
  }
  Subspace out;
  out.ambient_dim = dim;
  out.rank_tol = rank_tol;
  out.basis = nullspace(constraints, rank_tol, &out.gap);
  return out;
}

}  // namespace mpsham
