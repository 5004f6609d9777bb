#include "mpsham/models.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>
#include <limits>
#include <sstream>

#include "mpsham/intersect.hpp"
#include "mpsham/parent.hpp"
#include "mpsham/rng.hpp"

namespace mpsham {

namespace {

// cg matrix of the site isometry: row a (left virtual), column b' (right
// virtual), for physical level M.
Matrix site_coupling(HalfInt j, HalfInt J, HalfInt M) {
  const Index D = j.multiplicity();
  Matrix m = Matrix::Zero(D, D);
  for (Index a = 0; a < D; ++a) {
    HalfInt ma(j.twice - 2 * static_cast<int>(a));
    HalfInt mb = M - ma;
    if (!valid_magnetic(j, mb)) continue;
    Index b = (j.twice - mb.twice) / 2;
    m(a, b) = cg(j, ma, j, mb, J, M);
  }
  return m;
}

// Bond matrix B_{b'b} = cg(j, m_{b'}; j, m_b | Q, 0).
Matrix bond_matrix(HalfInt j, HalfInt Q) {
  const Index D = j.multiplicity();
  Vector v = bond_state(j, Q);
  Matrix b(D, D);
  for (Index r = 0; r < D; ++r)
    for (Index c = 0; c < D; ++c) b(r, c) = v(r * D + c);
  return b;
}

// Orthonormal coupled basis |S, M> of s1 (x) s2 as columns, M descending.
Matrix coupled_basis(HalfInt s1, HalfInt s2, HalfInt S) {
  const Index d1 = s1.multiplicity(), d2 = s2.multiplicity();
  Matrix out(d1 * d2, S.multiplicity());
  Index col = 0;
  for (int tM = S.twice; tM >= -S.twice; tM -= 2, ++col) {
    Vector v = Vector::Zero(d1 * d2);
    for (Index a = 0; a < d1; ++a) {
      HalfInt m1(s1.twice - 2 * static_cast<int>(a));
      HalfInt m2(tM - m1.twice);
      if (!valid_magnetic(s2, m2)) continue;
      Index b = (s2.twice - m2.twice) / 2;
      v(a * d2 + b) = cg(s1, m1, s2, m2, S, HalfInt(tM));
    }
    out.col(col) = v;
  }
  return out;
}

Matrix random_gaussian(Index rows, Index cols, std::uint64_t seed) {
  CounterRng rng{seed};
  Matrix m(rows, cols);
  std::uint64_t k = 0;
  for (Index c = 0; c < cols; ++c)
    for (Index r = 0; r < rows; ++r) m(r, c) = rng.gaussian(k++);
  return m;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r))
    throw std::overflow_error("bond_sequence_count: 64-bit overflow");
  return r;
}

}  // namespace

void AkltSpec::validate() const {
  if (j.twice < 0 || J.twice < 0 || Q.twice < 0)
    throw std::domain_error("AkltSpec: negative spin");
  if (J.twice > 2 * j.twice)
    throw std::domain_error("AkltSpec: J > 2j (J=" + J.str() +
                            ", j=" + j.str() + ")");
  if (!triangle(j, j, J))
    throw std::domain_error("AkltSpec: J=" + J.str() + " not in j (x) j");
  if (!triangle(j, j, Q))
    throw std::domain_error("AkltSpec: Q=" + Q.str() + " not in j (x) j");
}

AkltSpec AkltSpec::parse(const std::string& s) {
  AkltSpec spec;
  bool seen_j = false, seen_J = false;
  std::istringstream in(s);
  std::string tok;
  while (in >> tok) {
    auto eq = tok.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("AkltSpec: expected key=value, got '" + tok +
                                  "'");
    std::string key = tok.substr(0, eq);
    HalfInt val = HalfInt::parse(tok.substr(eq + 1));
    if (key == "j") {
      spec.j = val;
      seen_j = true;
    } else if (key == "J") {
      spec.J = val;
      seen_J = true;
    } else if (key == "Q") {
      spec.Q = val;
    } else {
      throw std::invalid_argument("AkltSpec: unknown key '" + key + "'");
    }
  }
  if (!seen_j || !seen_J)
    throw std::invalid_argument("AkltSpec: need j=... J=... [Q=...]");
  spec.validate();
  return spec;
}

MpsTensor aklt_tensor() {
  MpsTensor t = MpsTensor::zero(3, 2);
  const double s3 = 1.0 / std::sqrt(3.0), s6 = 1.0 / std::sqrt(6.0);
  t[0](0, 1) = s3;   // sqrt(1/3) sigma^+
  t[1](0, 0) = -s6;  // -sqrt(1/6) sigma^z
  t[1](1, 1) = s6;
  t[2](1, 0) = -s3;  // -sqrt(1/3) sigma^-
  return t;
}

MpsTensor generalized_aklt(const AkltSpec& spec) {
  spec.validate();
  const Index d = spec.d();
  Matrix bond = bond_matrix(spec.j, spec.Q);
  MpsTensor t = MpsTensor::zero(d, spec.D());
  for (Index i = 0; i < d; ++i) {
    HalfInt M(spec.J.twice - 2 * static_cast<int>(i));
    t[i] = site_coupling(spec.j, spec.J, M) * bond;
  }
  double norm = t.norm();
  if (norm == 0.0)
    throw std::domain_error("generalized_aklt: construction vanishes");
  t.scale(1.0 / norm);
  return t;
}

WeightVector weight_vector(const AkltSpec& spec, double zero_tol) {
  spec.validate();
  if (spec.Q.twice != 0)
    throw std::invalid_argument("weight_vector: defined for Q = 0");
  const Index d = spec.d(), D = spec.D();

  // Boundary-to-physical map of the two-site construction: free virtual
  // legs (a, b), bond absorbed between the sites.
  Matrix bond = bond_matrix(spec.j, HalfInt(0));
  Matrix p = Matrix::Zero(d * d, D * D);
  for (Index i1 = 0; i1 < d; ++i1) {
    HalfInt m1(spec.J.twice - 2 * static_cast<int>(i1));
    Matrix left = site_coupling(spec.j, spec.J, m1) * bond;
    for (Index i2 = 0; i2 < d; ++i2) {
      HalfInt m2(spec.J.twice - 2 * static_cast<int>(i2));
      Matrix prod = left * site_coupling(spec.j, spec.J, m2);
      for (Index a = 0; a < D; ++a)
        for (Index b = 0; b < D; ++b)
          p(i1 * d + i2, a * D + b) = prod(a, b);
    }
  }

  WeightVector wv;
  Matrix reconstructed = Matrix::Zero(d * d, D * D);
  int t_max = std::min(2 * spec.j.twice, 2 * spec.J.twice);
  for (int tS = 0; tS <= t_max; tS += 2) {
    HalfInt S(tS);
    Matrix iso = coupled_basis(spec.J, spec.J, S) *
                 coupled_basis(spec.j, spec.j, S).adjoint();
    Complex w = (iso.adjoint() * p).trace() / static_cast<double>(tS + 1);
    wv.weights.emplace_back(S, w.real());
    reconstructed += w.real() * iso;
  }
  wv.reconstruction_residual = (p - reconstructed).cwiseAbs().maxCoeff();
  if (wv.reconstruction_residual > 1e-10)
    throw std::runtime_error(
        "weight_vector: map does not decompose over the coupled isometries "
        "(residual " +
        std::to_string(wv.reconstruction_residual) + "), spec " + spec.str());

  double max_abs = 0.0;
  for (const auto& [S, w] : wv.weights) max_abs = std::max(max_abs, std::abs(w));
  double lo1 = std::numeric_limits<double>::infinity(), lo2 = lo1;
  for (const auto& [S, w] : wv.weights) {
    double a = std::abs(w);
    if (a < zero_tol * max_abs) wv.zero_flags.push_back(S);
    if (a < lo1) {
      lo2 = lo1;
      lo1 = a;
    } else if (a < lo2) {
      lo2 = a;
    }
  }
  wv.smallest_abs = lo1;
  wv.second_smallest_abs = lo2;
  return wv;
}

std::vector<ExceptionalModel> find_exceptional(HalfInt j_max,
                                               double zero_tol) {
  std::vector<ExceptionalModel> out;
  for (int tj = 1; tj <= j_max.twice; ++tj) {
    for (int tJ = tj; tJ < 2 * tj; ++tJ) {
      HalfInt j(tj), J(tJ);
      if (!triangle(j, j, J)) continue;  // J must appear in j (x) j
      WeightVector wv = weight_vector({j, J, HalfInt(0)}, zero_tol);
      if (wv.has_zero()) out.push_back({j, J, wv.zero_flags});
    }
  }
  return out;
}

Spin2FamilyResult spin2_family(double lambda, double rank_tol) {
  LocalOperator ha = heisenberg_poly(HalfInt(4), {-1.0, 0.0, 91.0 / 900.0,
                                                  11.0 / 900.0});
  LocalOperator hb =
      heisenberg_poly(HalfInt(4), {0.0, 1.0, 11.0 / 30.0, 1.0 / 30.0});
  Spin2FamilyResult r;
  r.op = LocalOperator{2, 5, lambda * ha.matrix + (1.0 - lambda) * hb.matrix};

  Eigen::SelfAdjointEigenSolver<Matrix> eig(r.op.matrix);
  const RealVector& lam = eig.eigenvalues();
  r.min_eigenvalue = lam(0);
  double scale = std::max(std::abs(lam(0)), std::abs(lam(lam.size() - 1)));
  // A non-PSD operator can bury the kernel behind negative eigenvalues, so
  // scan the whole spectrum rather than the ascending prefix.
  std::vector<Index> kernel_cols;
  for (Index q = 0; q < lam.size(); ++q)
    if (std::abs(lam(q)) < rank_tol * scale) kernel_cols.push_back(q);
  Matrix kernel(r.op.matrix.rows(), static_cast<Index>(kernel_cols.size()));
  for (size_t q = 0; q < kernel_cols.size(); ++q)
    kernel.col(static_cast<Index>(q)) = eig.eigenvectors().col(kernel_cols[q]);
  r.kernel_dim = kernel.cols();

  Matrix spin013(r.op.matrix.rows(), 11);
  spin013 << coupled_basis(HalfInt(4), HalfInt(4), HalfInt(0)),
      coupled_basis(HalfInt(4), HalfInt(4), HalfInt(2)),
      coupled_basis(HalfInt(4), HalfInt(4), HalfInt(6));
  r.kernel_vs_spin013 = span_distance(kernel, spin013);
  r.psd = r.min_eigenvalue >= -1e-10 * std::max(1.0, scale);
  return r;
}

double spin2_psd_boundary(double width) {
  Matrix ha = heisenberg_poly(HalfInt(4), {-1.0, 0.0, 91.0 / 900.0,
                                           11.0 / 900.0})
                  .matrix;
  Matrix hb =
      heisenberg_poly(HalfInt(4), {0.0, 1.0, 11.0 / 30.0, 1.0 / 30.0}).matrix;
  auto is_psd = [&](double lambda) {
    Matrix m = lambda * ha + (1.0 - lambda) * hb;
    Eigen::SelfAdjointEigenSolver<Matrix> eig(m, Eigen::EigenvaluesOnly);
    double scale = std::max(std::abs(eig.eigenvalues()(0)),
                            std::abs(eig.eigenvalues()(m.rows() - 1)));
    return eig.eigenvalues()(0) >= -1e-12 * scale;
  };
  double lo = 1.0, hi = 2.0;
  if (!is_psd(lo) || is_psd(hi))
    throw std::runtime_error("spin2_psd_boundary: bracket failed");
  while (hi - lo > width) {
    double mid = 0.5 * (lo + hi);
    (is_psd(mid) ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

std::vector<Vector> DegenerateFamily::witnesses(int n_sites,
                                                MemoryBudget& budget) const {
  std::vector<int> slots;  // odd internal links 1, 3, ...
  for (int link = 1; link <= n_sites - 1; link += 2) slots.push_back(link);
  std::vector<Vector> out;
  const Index D = tensor.D();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << slots.size());
       ++mask) {
    std::vector<std::optional<Matrix>> links(
        static_cast<size_t>(n_sites - 1));
    for (size_t s = 0; s < slots.size(); ++s)
      if (mask & (std::uint64_t{1} << s))
        links[static_cast<size_t>(slots[s] - 1)] = x;
    out.push_back(state_vector_with_links(tensor, n_sites, links,
                                          Matrix::Identity(D, D), budget));
  }
  return out;
}

Index DegenerateFamily::independent_witness_count(int n_sites,
                                                  double rank_tol,
                                                  MemoryBudget& budget) const {
  std::vector<Vector> ws = witnesses(n_sites, budget);
  Matrix stacked(ws[0].size(), static_cast<Index>(ws.size()));
  for (size_t c = 0; c < ws.size(); ++c) {
    double n = ws[c].norm();
    stacked.col(static_cast<Index>(c)) = n > 0 ? (ws[c] / n).eval() : ws[c];
  }
  Eigen::JacobiSVD<Matrix> svd(stacked);
  return rank_from_spectrum(svd.singularValues(), rank_tol).rank;
}

DegenerateFamily degenerate_family(Index d, Index D, Index rank_x,
                                   Index rank_y, std::uint64_t seed,
                                   int max_retries) {
  if (rank_x < 1 || rank_x >= D || rank_y < 1 || rank_y >= D)
    throw std::invalid_argument("degenerate_family: need 1 <= rank < D");
  const Index expected_dim =
      rank_x * rank_y + (D - rank_x) * (D - rank_y);

  auto sample_idempotent = [&](Index rank, std::uint64_t s) {
    for (int tries = 0;; ++tries) {
      Matrix r = random_gaussian(D, D, s + static_cast<std::uint64_t>(tries));
      Eigen::JacobiSVD<Matrix> svd(r);
      double cond = svd.singularValues()(0) / svd.singularValues()(D - 1);
      if (cond > 1e4) continue;
      Matrix diag = Matrix::Zero(D, D);
      for (Index q = 0; q < rank; ++q) diag(q, q) = 1.0;
      return Matrix(r * diag * r.inverse());
    }
  };

  for (int attempt = 0; attempt < max_retries; ++attempt) {
    std::string tag = "degenerate:" + std::to_string(attempt);
    Matrix x = sample_idempotent(rank_x, derive_seed(seed, tag + ":X"));
    Matrix y = sample_idempotent(rank_y, derive_seed(seed, tag + ":Y"));

    // X A = A Y as a linear system on vec(A), column-major.
    Matrix id = Matrix::Identity(D, D);
    Matrix constraint = kron(id, x) - kron(y.transpose(), id);
    Matrix kernel = nullspace(constraint, 1e-10);
    if (kernel.cols() != expected_dim) continue;

    MpsTensor t = MpsTensor::zero(d, D);
    CounterRng rng{derive_seed(seed, tag + ":A")};
    std::uint64_t ctr = 0;
    for (Index i = 0; i < d; ++i) {
      Vector coeff(kernel.cols());
      for (Index q = 0; q < kernel.cols(); ++q)
        coeff(q) = rng.gaussian(ctr++);
      Vector flat = kernel * coeff;
      t[i] = Eigen::Map<const Matrix>(flat.data(), D, D);
    }
    t.scale(1.0 / t.norm());

    auto inj = injectivity_length(t, 4);
    if (!inj || *inj != 2) continue;

    DegenerateFamily fam;
    fam.tensor = std::move(t);
    fam.x = std::move(x);
    fam.y = std::move(y);
    fam.solution_space_dim = expected_dim;
    fam.injectivity = 2;

    bool ok = true;
    ParentTerm term = parent_term(fam.tensor, 2);
    for (int n = 3; n <= 6 && ok; ++n) {
      std::vector<Vector> ws = fam.witnesses(n);
      if (fam.independent_witness_count(n) !=
          static_cast<Index>(ws.size())) {
        ok = false;
        break;
      }
      for (const Vector& w : ws)
        if (apply_obc_hamiltonian(term, n, w).norm() > 1e-9 * w.norm()) {
          ok = false;
          break;
        }
    }
    if (ok) return fam;
  }
  throw std::runtime_error("degenerate_family: no valid sample within retry cap");
}

std::vector<HalfInt> descending_magnetics(HalfInt s) {
  std::vector<HalfInt> out;
  for (int tm = s.twice; tm >= -s.twice; tm -= 2) out.emplace_back(tm);
  return out;
}

std::int64_t bond_sequence_count(HalfInt J, HalfInt j_cap, int n_sites,
                                 Boundary boundary) {
  if (n_sites < 2)
    throw std::invalid_argument("bond_sequence_count: need N >= 2");
  const int n_states = j_cap.twice + 1;  // j = 0, 1/2, ..., j_cap
  std::vector<std::vector<bool>> adm(static_cast<size_t>(n_states),
                                     std::vector<bool>(n_states, false));
  for (int a = 0; a < n_states; ++a)
    for (int b = 0; b < n_states; ++b)
      adm[a][b] = triangle(HalfInt(a), HalfInt(b), J);

  auto step = [&](const std::vector<std::int64_t>& v) {
    std::vector<std::int64_t> out(static_cast<size_t>(n_states), 0);
    for (int a = 0; a < n_states; ++a)
      for (int b = 0; b < n_states; ++b)
        if (adm[a][b]) out[a] = checked_add(out[a], v[static_cast<size_t>(b)]);
    return out;
  };

  if (boundary == Boundary::open) {
    // N+1 bond spins on an N-site open chain, one constraint per site.
    std::vector<std::int64_t> v(static_cast<size_t>(n_states), 1);
    for (int t = 0; t < n_sites; ++t) v = step(v);
    std::int64_t total = 0;
    for (std::int64_t c : v) total = checked_add(total, c);
    return total;
  }
  // Periodic: trace of the N-th transfer-matrix power.
  std::int64_t total = 0;
  for (int start = 0; start < n_states; ++start) {
    std::vector<std::int64_t> v(static_cast<size_t>(n_states), 0);
    v[static_cast<size_t>(start)] = 1;
    for (int t = 0; t < n_sites; ++t) v = step(v);
    total = checked_add(total, v[static_cast<size_t>(start)]);
  }
  return total;
}

}  // namespace mpsham
