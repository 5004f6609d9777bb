#include "mpsham/mps.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>
#include <stdexcept>

#include "mpsham/rng.hpp"

namespace mpsham {

namespace {

constexpr Index kDenseSvdCap = 4096;

std::size_t matrix_bytes(std::int64_t rows, std::int64_t cols) {
  return static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols) *
         sizeof(Complex);
}

// Columns are vecCM(A^{i_1} ... A^{i_k} [M_k]) over big-endian words; the
// transpose of the blocking map is built so each word's matrix stays
// contiguous.  links[t-1], when present, is multiplied after site t.
Matrix word_products(const MpsTensor& A, int n_sites,
                     const std::vector<std::optional<Matrix>>* links,
                     MemoryBudget& budget) {
  const Index d = A.d(), D = A.D();
  if (n_sites < 1) throw std::invalid_argument("word_products: sites < 1");
  const std::int64_t n_words = ipow(d, n_sites);
  MemReservation res(budget, 2 * matrix_bytes(D * D, n_words));

  auto link_at = [&](int t) -> const Matrix* {
    if (links == nullptr || t > static_cast<int>(links->size())) return nullptr;
    const auto& m = (*links)[static_cast<size_t>(t - 1)];
    return m ? &*m : nullptr;
  };

  Matrix cur(D * D, d);
  for (Index i = 0; i < d; ++i)
    cur.col(i) = Eigen::Map<const Vector>(A[i].data(), D * D);
  for (int k = 1; k < n_sites; ++k) {
    if (const Matrix* m = link_at(k)) {
      for (Index r = 0; r < cur.cols(); ++r) {
        Eigen::Map<Matrix> pr(cur.col(r).data(), D, D);
        pr = pr * (*m);
      }
    }
    const std::int64_t prev = cur.cols();
    Matrix next(D * D, prev * d);
    for (std::int64_t r = 0; r < prev; ++r) {
      Eigen::Map<const Matrix> pr(cur.col(r).data(), D, D);
      for (Index j = 0; j < d; ++j) {
        Eigen::Map<Matrix> out(next.col(r * d + j).data(), D, D);
        out.noalias() = pr * A[j];
      }
    }
    cur = std::move(next);
  }
  if (const Matrix* m = link_at(n_sites)) {
    for (Index r = 0; r < cur.cols(); ++r) {
      Eigen::Map<Matrix> pr(cur.col(r).data(), D, D);
      pr = pr * (*m);
    }
  }
  return cur;
}

}  // namespace

MpsTensor MpsTensor::zero(Index d, Index D) {
  MpsTensor t;
  t.phys_dim = d;
  t.bond_dim = D;
  t.a.assign(static_cast<size_t>(d), Matrix::Zero(D, D));
  return t;
}

bool MpsTensor::all_finite() const {
  for (const Matrix& m : a)
    if (!m.allFinite()) return false;
  return true;
}

double MpsTensor::norm() const {
  double s = 0.0;
  for (const Matrix& m : a) s += m.squaredNorm();
  return std::sqrt(s);
}

void MpsTensor::scale(double factor) {
  for (Matrix& m : a) m *= factor;
}

MpsTensor random_mps(Index d, Index D, std::uint64_t seed) {
  if (d < 2 || D < 1) throw std::invalid_argument("random_mps: d >= 2, D >= 1");
  MpsTensor t = MpsTensor::zero(d, D);
  CounterRng rng{seed};
  std::uint64_t counter = 0;
  for (Index i = 0; i < d; ++i)
    for (Index al = 0; al < D; ++al)
      for (Index be = 0; be < D; ++be) t[i](al, be) = rng.gaussian(counter++);
  return t;
}

Matrix blocking_map(const MpsTensor& A, int ell, MemoryBudget& budget) {
  Matrix prods = word_products(A, ell, nullptr, budget);
  MemReservation res(budget, matrix_bytes(prods.cols(), prods.rows()));
  return prods.transpose();
}

Vector vec_boundary(const Matrix& x) {
  const Index D = x.rows();
  Vector v(D * D);
  for (Index be = 0; be < D; ++be)
    for (Index al = 0; al < D; ++al) v(be * D + al) = x(be, al);
  return v;
}

Subspace mps_space(const MpsTensor& A, int ell, double rank_tol,
                   MemoryBudget& budget) {
  Matrix gamma = blocking_map(A, ell, budget);
  Subspace s = Subspace::from_columns(gamma, rank_tol);
  s.rank_tol = rank_tol;
  return s;
}

std::optional<int> injectivity_length(const MpsTensor& A, int ell_max,
                                      double rank_tol, MemoryBudget& budget) {
  const Index D = A.D();
  const Index target = D * D;
  for (int ell = 1; ell <= ell_max; ++ell) {
    Index rank;
    if (ipow(A.d(), ell) <= kDenseSvdCap) {
      Matrix gamma = blocking_map(A, ell, budget);
      Eigen::JacobiSVD<Matrix> svd(gamma);
      rank = rank_from_spectrum(svd.singularValues(), rank_tol).rank;
    } else {
      // Gram route: rank of T = P^dag P via its eigenvalues, threshold
      // relative to the largest eigenvalue.
      Matrix prods = word_products(A, ell, nullptr, budget);
      Matrix gram = Matrix::Zero(target, target);
      gram.selfadjointView<Eigen::Lower>().rankUpdate(prods, 1.0);
      Eigen::SelfAdjointEigenSolver<Matrix> eig(gram, Eigen::EigenvaluesOnly);
      RealVector lam = eig.eigenvalues().reverse();
      for (Index i = 0; i < lam.size(); ++i) lam(i) = std::max(lam(i), 0.0);
      rank = rank_from_spectrum(lam, rank_tol).rank;
    }
    if (rank == target) return ell;
  }
  return std::nullopt;
}

Vector state_vector(const MpsTensor& A, int n_sites, const Matrix& x,
                    MemoryBudget& budget) {
  if (x.rows() != A.D() || x.cols() != A.D())
    throw std::invalid_argument("state_vector: boundary shape");
  Matrix prods = word_products(A, n_sites, nullptr, budget);
  return prods.transpose() * vec_boundary(x);
}

Vector state_vector_periodic(const MpsTensor& A, int n_sites,
                             MemoryBudget& budget) {
  return state_vector(A, n_sites, Matrix::Identity(A.D(), A.D()), budget);
}

Vector state_vector_with_links(const MpsTensor& A, int n_sites,
                               const std::vector<std::optional<Matrix>>& links,
                               const Matrix& x, MemoryBudget& budget) {
  if (static_cast<int>(links.size()) > n_sites - 1)
    throw std::invalid_argument("state_vector_with_links: too many links");
  Matrix prods = word_products(A, n_sites, &links, budget);
  return prods.transpose() * vec_boundary(x);
}

MpsTensor pad_physical(const MpsTensor& A, Index d_new) {
  if (d_new < A.d()) throw std::invalid_argument("pad_physical: d_new < d");
  MpsTensor t = MpsTensor::zero(d_new, A.D());
  for (Index i = 0; i < A.d(); ++i) t[i] = A[i];
  return t;
}

}  // namespace mpsham
