#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <chrono>
#include <map>
#include <set>

#include "mpsham/intersect.hpp"

namespace mpsham {

namespace {

std::size_t matrix_bytes(std::int64_t rows, std::int64_t cols) {
  return static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols) *
         sizeof(Complex);
}

// Total-charge decomposition of the k-site product basis.
struct SectorTable {
  std::int64_t dim = 0;
  std::map<int, std::vector<std::int64_t>> members;  // charge -> indices
  std::vector<std::int32_t> pos;  // index -> position within its sector

  const std::vector<std::int64_t>* sector(int c) const {
    auto it = members.find(c);
    return it == members.end() ? nullptr : &it->second;
  }
};

SectorTable build_sectors(const std::vector<int>& level_charge, int k) {
  const int d = static_cast<int>(level_charge.size());
  SectorTable t;
  t.dim = ipow(d, k);
  std::vector<int> charge(1, 0);
  for (int site = 0; site < k; ++site) {
    std::vector<int> next(charge.size() * static_cast<size_t>(d));
    for (size_t r = 0; r < charge.size(); ++r)
      for (int i = 0; i < d; ++i)
        next[r * static_cast<size_t>(d) + static_cast<size_t>(i)] =
            charge[r] + level_charge[static_cast<size_t>(i)];
    charge = std::move(next);
  }
  t.pos.resize(static_cast<size_t>(t.dim));
  for (std::int64_t r = 0; r < t.dim; ++r) {
    auto& v = t.members[charge[static_cast<size_t>(r)]];
    t.pos[static_cast<size_t>(r)] = static_cast<std::int32_t>(v.size());
    v.push_back(r);
  }
  return t;
}

}  // namespace

std::pair<Subspace, IntersectionReport> sector_blocked_intersection(
    const MpsTensor& A, const std::vector<HalfInt>& charges,
    const std::vector<HalfInt>& bond_charges, int ell, int L,
    const IntersectOpts& opts, MemoryBudget& budget) {
  const Index d = A.d(), D = A.D();
  if (static_cast<Index>(charges.size()) != d ||
      static_cast<Index>(bond_charges.size()) != D)
    throw std::invalid_argument("sector_blocked_intersection: charge counts");
  if (ell < 1 || L < ell)
    throw std::invalid_argument("sector_blocked_intersection: 1 <= ell <= L");
  auto t0 = std::chrono::steady_clock::now();

  std::vector<int> chi(static_cast<size_t>(d));
  for (Index i = 0; i < d; ++i) chi[static_cast<size_t>(i)] = charges[static_cast<size_t>(i)].twice;
  std::vector<int> bq(static_cast<size_t>(D));
  for (Index a = 0; a < D; ++a) bq[static_cast<size_t>(a)] = bond_charges[static_cast<size_t>(a)].twice;

  // The tensor must route bond charge q to q + charge(i).
  double amax = 0.0;
  for (Index i = 0; i < d; ++i)
    amax = std::max(amax, A[i].cwiseAbs().maxCoeff());
  std::string violations;
  int n_violations = 0;
  for (Index i = 0; i < d; ++i)
    for (Index al = 0; al < D; ++al)
      for (Index be = 0; be < D; ++be)
        if (std::abs(A[i](al, be)) > 1e-13 * amax &&
            bq[static_cast<size_t>(al)] !=
                bq[static_cast<size_t>(be)] + chi[static_cast<size_t>(i)]) {
          if (n_violations < 8)
            violations += " A[" + std::to_string(i) + "](" +
                          std::to_string(al) + "," + std::to_string(be) +
                          ")=" + std::to_string(std::abs(A[i](al, be)));
          ++n_violations;
        }
  if (n_violations > 0)
    throw std::invalid_argument(
        "sector_blocked_intersection: " + std::to_string(n_violations) +
        " entries violate the charge assignment:" + violations);

  IntersectionReport rep;
  rep.d = d;
  rep.D = D;
  rep.ell = ell;
  rep.rank_tol = opts.rank_tol;
  rep.angle_tol = opts.angle_tol;
  rep.strategy = "sector";

  const std::int64_t mid_stride = ipow(d, ell - 1);
  SectorTable mid_table = build_sectors(chi, ell - 1);
  SectorTable tail_table = build_sectors(chi, ell);

  // Charge-resolved window space: blocking-map columns (beta, alpha) carry
  // definite total charge q(alpha) - q(beta); the rank cut uses the global
  // largest singular value so the split agrees with the dense route.
  Matrix gamma = blocking_map(A, ell, budget);
  std::map<int, std::vector<Index>> col_groups;
  for (Index c = 0; c < D * D; ++c) {
    Index al = c % D, be = c / D;
    col_groups[bq[static_cast<size_t>(al)] - bq[static_cast<size_t>(be)]]
        .push_back(c);
  }
  struct RawSector {
    int charge;
    Matrix u;
    RealVector sv;
  };
  std::vector<RawSector> raw;
  double sigma_max = 0.0;
  for (const auto& [t, cols] : col_groups) {
    const auto* rows = tail_table.sector(t);
    if (rows == nullptr) continue;
    Matrix sub(static_cast<Index>(rows->size()),
               static_cast<Index>(cols.size()));
    for (size_t ri = 0; ri < rows->size(); ++ri)
      for (size_t ci = 0; ci < cols.size(); ++ci)
        sub(static_cast<Index>(ri), static_cast<Index>(ci)) =
            gamma((*rows)[ri], cols[ci]);
    Eigen::JacobiSVD<Matrix> svd(sub, Eigen::ComputeThinU);
    if (svd.singularValues().size() > 0)
      sigma_max = std::max(sigma_max, svd.singularValues()(0));
    raw.push_back({t, svd.matrixU(), svd.singularValues()});
  }
  std::map<int, Matrix> bases;
  Index total = 0;
  for (const auto& rs : raw) {
    Index rank = 0;
    while (rank < rs.sv.size() && rs.sv(rank) > opts.rank_tol * sigma_max)
      ++rank;
    if (rank > 0) {
      bases[rs.charge] = rs.u.leftCols(rank);
      total += rank;
    }
  }
  rep.dims.emplace_back(ell, total);
  rep.verdicts.emplace_back(ell, total == D * D);
  rep.injective_on_ell = (total == D * D);

  const std::map<int, Matrix> window = bases;  // tail-charge-resolved S_ell
  const double null_tol = 1.0 - (1.0 - opts.angle_tol) * (1.0 - opts.angle_tol);
  double min_kept_mu = 1.0, max_dropped_mu = 0.0;

  SectorTable k_table = build_sectors(chi, ell);
  for (int k = ell; k < L; ++k) {
    SectorTable next_table = build_sectors(chi, k + 1);
    SectorTable head_table = build_sectors(chi, k + 1 - ell);
    std::map<int, Matrix> next_bases;

    std::set<int> targets;
    for (const auto& [cs, b] : bases)
      if (b.cols() > 0)
        for (Index i = 0; i < d; ++i)
          targets.insert(cs + chi[static_cast<size_t>(i)]);

    for (int cp : targets) {
      struct Src {
        Index i;
        const Matrix* b;
        Index offset;
      };
      std::vector<Src> srcs;
      Index n_c = 0;
      for (Index i = 0; i < d; ++i) {
        auto it = bases.find(cp - chi[static_cast<size_t>(i)]);
        if (it != bases.end() && it->second.cols() > 0) {
          srcs.push_back({i, &it->second, n_c});
          n_c += it->second.cols();
        }
      }
      if (n_c == 0) continue;

      MemReservation gram_res(budget, matrix_bytes(n_c, 3 * n_c));
      Matrix gram = Matrix::Zero(n_c, n_c);
      for (const auto& [t, u_t] : window) {
        const auto* heads = head_table.sector(cp - t);
        if (heads == nullptr || u_t.cols() == 0) continue;
        const Index n_heads = static_cast<Index>(heads->size());
        const Index n_s = u_t.cols();
        MemReservation slab_res(budget, matrix_bytes(n_s * n_heads, n_c));
        Matrix k_blk = Matrix::Zero(n_s * n_heads, n_c);
        bool any = false;
        for (const auto& src : srcs) {
          const auto* mids =
              mid_table.sector(t - chi[static_cast<size_t>(src.i)]);
          if (mids == nullptr) continue;
          const Index n_mid = static_cast<Index>(mids->size());
          const Index n_p = src.b->cols();
          Matrix u_rows(n_mid, n_s);
          for (Index mi = 0; mi < n_mid; ++mi)
            u_rows.row(mi) = u_t.row(
                tail_table.pos[static_cast<size_t>((*mids)[static_cast<size_t>(mi)] * d + src.i)]);
          Matrix b_block(n_mid * n_heads, n_p);
          for (Index hi = 0; hi < n_heads; ++hi) {
            std::int64_t head = (*heads)[static_cast<size_t>(hi)];
            for (Index mi = 0; mi < n_mid; ++mi) {
              std::int64_t idx =
                  head * mid_stride + (*mids)[static_cast<size_t>(mi)];
              b_block.row(hi * n_mid + mi) =
                  src.b->row(k_table.pos[static_cast<size_t>(idx)]);
            }
          }
          Eigen::Map<const Matrix> stacked(b_block.data(), n_mid,
                                           n_heads * n_p);
          Matrix t_mat = u_rows.adjoint() * stacked;  // n_s x (heads * n_p)
          for (Index p = 0; p < n_p; ++p) {
            Eigen::Map<Matrix> k_col(k_blk.col(src.offset + p).data(), n_s,
                                     n_heads);
            k_col = t_mat.middleCols(p * n_heads, n_heads);
          }
          any = true;
        }
        if (any)
          gram.selfadjointView<Eigen::Lower>().rankUpdate(k_blk.adjoint(),
                                                          1.0);
      }

      Eigen::SelfAdjointEigenSolver<Matrix> eig(gram);
      const RealVector& mu = eig.eigenvalues();
      Index first_kept = n_c;
      while (first_kept > 0 && 1.0 - mu(first_kept - 1) < null_tol)
        --first_kept;
      for (Index q = 0; q < n_c; ++q) {
        double dist = 1.0 - mu(q);
        if (q >= first_kept) min_kept_mu = std::min(min_kept_mu, mu(q));
        else max_dropped_mu = std::max(max_dropped_mu, mu(q));
        if (dist > null_tol / 10.0 && dist < null_tol * 10.0)
          rep.borderline = true;
      }
      const Index n_new = n_c - first_kept;
      if (n_new == 0) continue;

      Matrix y = eig.eigenvectors().rightCols(n_new);
      const auto* new_rows = next_table.sector(cp);
      Matrix nb = Matrix::Zero(static_cast<Index>(new_rows->size()), n_new);
      for (const auto& src : srcs) {
        const Index n_p = src.b->cols();
        Matrix block = (*src.b) * y.middleRows(src.offset, n_p);
        const auto* src_rows = k_table.sector(cp - chi[static_cast<size_t>(src.i)]);
        for (size_t q = 0; q < src_rows->size(); ++q) {
          std::int64_t idx = (*src_rows)[q] * d + src.i;
          nb.row(next_table.pos[static_cast<size_t>(idx)]) =
              block.row(static_cast<Index>(q));
        }
      }
      next_bases[cp] = std::move(nb);
    }

    bases = std::move(next_bases);
    k_table = std::move(next_table);
    total = 0;
    for (const auto& [c, b] : bases) total += b.cols();
    rep.dims.emplace_back(k + 1, total);
    rep.verdicts.emplace_back(k + 1, total == D * D);
  }

  rep.closest_kept = min_kept_mu;
  rep.closest_dropped = max_dropped_mu;
  rep.peak_bytes = budget.peak();
  rep.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();

  Subspace out;
  out.ambient_dim = ipow(d, L);
  out.rank_tol = opts.rank_tol;
  if (opts.keep_basis && total > 0) {
    MemReservation res(budget, matrix_bytes(out.ambient_dim, total));
    Matrix dense = Matrix::Zero(out.ambient_dim, total);
    Index col0 = 0;
    for (const auto& [c, b] : bases) {
      const auto* rows = k_table.sector(c);
      for (size_t ri = 0; ri < rows->size(); ++ri)
        dense.block((*rows)[ri], col0, 1, b.cols()) =
            b.row(static_cast<Index>(ri));
      col0 += b.cols();
    }
    out.basis = std::move(dense);
  } else {
    out.basis = Matrix(out.ambient_dim, 0);
  }
  return {std::move(out), std::move(rep)};
}

}  // namespace mpsham
