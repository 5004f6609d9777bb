#include <doctest.h>

#include <cmath>
#include <map>

#include "mpsham/linalg.hpp"
#include "mpsham/spin.hpp"

using namespace mpsham;

namespace {

// Independent Clebsch-Gordan oracle: build every coupled state |J M> of
// j1 (x) j2 by Gram-Schmidt on highest weights followed by ladder descent,
// with the Condon-Shortley phase fixed by a positive maximal-m1 component.
// Shares no code with the Racah-sum implementation.
class LadderOracle {
 public:
  LadderOracle(HalfInt j1, HalfInt j2) : j1_(j1), j2_(j2) {
    const Index d1 = j1.multiplicity(), d2 = j2.multiplicity();
    const Index dim = d1 * d2;
    RealMatrix lower = RealMatrix::Zero(dim, dim);
    auto add_lowering = [&](HalfInt s, bool first) {
      for (Index a1 = 0; a1 < d1; ++a1)
        for (Index a2 = 0; a2 < d2; ++a2) {
          Index a = first ? a1 : a2;
          double sv = s.value(), m = sv - static_cast<double>(a);
          if (m - 1.0 < -sv - 0.5) continue;
          double amp = std::sqrt(sv * (sv + 1.0) - m * (m - 1.0));
          Index row = first ? (a1 + 1) * d2 + a2 : a1 * d2 + (a2 + 1);
          lower(row, a1 * d2 + a2) += amp;
        }
    };
    add_lowering(j1, true);
    add_lowering(j2, false);

    for (int tJ = j1.twice + j2.twice; tJ >= std::abs(j1.twice - j2.twice);
         tJ -= 2) {
      // Highest weight: the M = J slice orthogonal to all higher-J states.
      RealVector v = RealVector::Zero(dim);
      Index lead = dim;
      for (Index a1 = 0; a1 < d1; ++a1) {
        int tm1 = j1.twice - 2 * static_cast<int>(a1);
        int tm2 = tJ - tm1;
        if (std::abs(tm2) > j2.twice || (j2.twice - tm2) % 2 != 0) continue;
        Index a2 = (j2.twice - tm2) / 2;
        if (lead == dim) lead = a1 * d2 + a2;  // maximal m1 in the slice
        v(a1 * d2 + a2) = 1.0;
      }
      RealVector w = RealVector::Zero(dim);
      w(lead) = 1.0;
      for (const auto& [key, state] : states_)
        if (key.second == tJ) w -= state.dot(w) * state;
      // Restrict to the M = J slice (w may have left it only by rounding).
      for (Index r = 0; r < dim; ++r)
        if (v(r) == 0.0) w(r) = 0.0;
      if (w.norm() < 1e-9) {
        // Leading slot exhausted by higher-J states; project a generic
        // slice vector instead.
        w = v;
        for (const auto& [key, state] : states_)
          if (key.second == tJ) w -= state.dot(w) * state;
      }
      w.normalize();
      if (w(lead) < 0) w = -w;
      states_[{tJ, tJ}] = w;
      for (int tM = tJ; tM > -tJ; tM -= 2) {
        double J = 0.5 * tJ, M = 0.5 * tM;
        RealVector next = lower * states_[{tJ, tM}];
        next /= std::sqrt(J * (J + 1.0) - M * (M - 1.0));
        states_[{tJ, tM - 2}] = next;
      }
    }
  }

  double cg(HalfInt m1, HalfInt m2, HalfInt J, HalfInt M) const {
    auto it = states_.find({J.twice, M.twice});
    if (it == states_.end()) return 0.0;
    if (std::abs(m1.twice) > j1_.twice || std::abs(m2.twice) > j2_.twice)
      return 0.0;
    Index a1 = (j1_.twice - m1.twice) / 2;
    Index a2 = (j2_.twice - m2.twice) / 2;
    return it->second(a1 * j2_.multiplicity() + a2);
  }

 private:
  HalfInt j1_, j2_;
  std::map<std::pair<int, int>, RealVector> states_;
};

}  // namespace

TEST_CASE("cg matches frozen closed-form values") {
  const double s2 = 1.0 / std::sqrt(2.0), s3 = 1.0 / std::sqrt(3.0);
  CHECK(cg(HalfInt(1), HalfInt(1), HalfInt(1), HalfInt(-1), HalfInt(0),
           HalfInt(0)) == doctest::Approx(s2).epsilon(1e-14));
  CHECK(cg(HalfInt(1), HalfInt(-1), HalfInt(1), HalfInt(1), HalfInt(0),
           HalfInt(0)) == doctest::Approx(-s2).epsilon(1e-14));
  CHECK(cg(HalfInt(2), HalfInt(2), HalfInt(2), HalfInt(-2), HalfInt(0),
           HalfInt(0)) == doctest::Approx(s3).epsilon(1e-14));
  // Selection rules give exact zeros.
  CHECK(cg(HalfInt(2), HalfInt(2), HalfInt(2), HalfInt(2), HalfInt(2),
           HalfInt(2)) == 0.0);
  CHECK(cg(HalfInt(1), HalfInt(1), HalfInt(1), HalfInt(1), HalfInt(6),
           HalfInt(2)) == 0.0);
}

TEST_CASE("cg rejects invalid half-integer combinations") {
  CHECK_THROWS_AS(cg(HalfInt(1), HalfInt(0), HalfInt(1), HalfInt(1),
                     HalfInt(2), HalfInt(1)),
                  std::domain_error);  // m = 0 has wrong parity for j = 1/2
  CHECK_THROWS_AS(cg(HalfInt(2), HalfInt(4), HalfInt(2), HalfInt(0),
                     HalfInt(2), HalfInt(2)),
                  std::domain_error);  // |m| > j
  CHECK_THROWS_AS(cg(HalfInt(-2), HalfInt(0), HalfInt(2), HalfInt(0),
                     HalfInt(2), HalfInt(0)),
                  std::domain_error);
}

TEST_CASE("cg agrees with the ladder-construction oracle") {
  const std::vector<std::pair<int, int>> pairs = {{1, 1}, {2, 1}, {2, 2},
                                                  {3, 2}, {4, 3}, {5, 5},
                                                  {6, 4}, {10, 9}};
  for (const auto& [tj1, tj2] : pairs) {
    HalfInt j1(tj1), j2(tj2);
    LadderOracle oracle(j1, j2);
    double worst = 0.0;
    for (int tJ = std::abs(tj1 - tj2); tJ <= tj1 + tj2; tJ += 2)
      for (int tM = -tJ; tM <= tJ; tM += 2)
        for (int tm1 = -tj1; tm1 <= tj1; tm1 += 2) {
          int tm2 = tM - tm1;
          if (std::abs(tm2) > tj2) continue;
          double got = cg(j1, HalfInt(tm1), j2, HalfInt(tm2), HalfInt(tJ),
                          HalfInt(tM));
          double want = oracle.cg(HalfInt(tm1), HalfInt(tm2), HalfInt(tJ),
                                  HalfInt(tM));
          worst = std::max(worst, std::abs(got - want));
        }
    CAPTURE(tj1);
    CAPTURE(tj2);
    CHECK(worst < 1e-12);
  }
}

TEST_CASE("cg orthogonality over magnetic sums") {
  HalfInt j1(3), j2(2);  // 3/2 (x) 1
  for (int tJ = 1; tJ <= 5; tJ += 2)
    for (int tJp = 1; tJp <= 5; tJp += 2)
      for (int tM = -std::min(tJ, tJp); tM <= std::min(tJ, tJp); tM += 2) {
        double sum = 0.0;
        for (int tm1 = -3; tm1 <= 3; tm1 += 2) {
          int tm2 = tM - tm1;
          if (std::abs(tm2) > 2 || tm2 % 2 != 0) continue;
          sum += cg(j1, HalfInt(tm1), j2, HalfInt(tm2), HalfInt(tJ),
                    HalfInt(tM)) *
                 cg(j1, HalfInt(tm1), j2, HalfInt(tm2), HalfInt(tJp),
                    HalfInt(tM));
        }
        CHECK(std::abs(sum - (tJ == tJp ? 1.0 : 0.0)) < 1e-12);
      }
}

TEST_CASE("spin operators satisfy the algebra") {
  SpinOperators half = spin_operators(HalfInt(1));
  Matrix want_jz = Matrix::Zero(2, 2);
  want_jz(0, 0) = 0.5;
  want_jz(1, 1) = -0.5;
  CHECK((half.jz.matrix - want_jz).cwiseAbs().maxCoeff() < 1e-15);

  for (int ts : {1, 2, 3, 7, 10, 18}) {
    SpinOperators ops = spin_operators(HalfInt(ts));
    Matrix comm = ops.jx.matrix * ops.jy.matrix - ops.jy.matrix * ops.jx.matrix;
    CHECK((comm - Complex(0, 1) * ops.jz.matrix).cwiseAbs().maxCoeff() <
          1e-13);
    double s = 0.5 * ts;
    Matrix casimir = ops.jx.matrix * ops.jx.matrix +
                     ops.jy.matrix * ops.jy.matrix +
                     ops.jz.matrix * ops.jz.matrix;
    CHECK((casimir - s * (s + 1.0) * Matrix::Identity(ts + 1, ts + 1))
              .cwiseAbs()
              .maxCoeff() < 1e-12);
  }
}

TEST_CASE("total spin projectors: completeness, idempotence, orthogonality") {
  for (const auto& [ts1, ts2] : {std::pair<int, int>{2, 2}, {3, 2}, {4, 3}}) {
    HalfInt s1(ts1), s2(ts2);
    const Index dim = s1.multiplicity() * s2.multiplicity();
    Matrix sum = Matrix::Zero(dim, dim);
    std::vector<Matrix> projectors;
    for (int tS = std::abs(ts1 - ts2); tS <= ts1 + ts2; tS += 2) {
      LocalOperator p = total_spin_projector(s1, s2, HalfInt(tS));
      CHECK(p.hermiticity_defect() < 1e-12);
      CHECK((p.matrix * p.matrix - p.matrix).cwiseAbs().maxCoeff() < 1e-12);
      CHECK(std::abs(p.matrix.trace().real() - (tS + 1)) < 1e-12);
      sum += p.matrix;
      projectors.push_back(p.matrix);
    }
    CHECK((sum - Matrix::Identity(dim, dim)).cwiseAbs().maxCoeff() < 1e-12);
    for (size_t a = 0; a < projectors.size(); ++a)
      for (size_t b = a + 1; b < projectors.size(); ++b)
        CHECK((projectors[a] * projectors[b]).cwiseAbs().maxCoeff() < 1e-12);
  }
  CHECK_THROWS_AS(total_spin_projector(HalfInt(1), HalfInt(1), HalfInt(3)),
                  std::domain_error);
}

TEST_CASE("singlet projector of two spin-1/2 is rank one") {
  LocalOperator p = total_spin_projector(HalfInt(1), HalfInt(1), HalfInt(0));
  CHECK(std::abs(p.matrix.trace().real() - 1.0) < 1e-14);
  Vector singlet(4);
  singlet << 0, 1 / std::sqrt(2.0), -1 / std::sqrt(2.0), 0;
  CHECK((p.matrix * singlet - singlet).norm() < 1e-14);
}

TEST_CASE("bond states") {
  Vector singlet = bond_state(HalfInt(1), HalfInt(0));
  CHECK(std::abs(singlet(1) - 1 / std::sqrt(2.0)) < 1e-14);
  CHECK(std::abs(singlet(2) + 1 / std::sqrt(2.0)) < 1e-14);
  CHECK(std::abs(singlet(0)) + std::abs(singlet(3)) < 1e-15);

  for (int tj = 1; tj <= 6; ++tj)
    for (int tQ = 0; tQ <= 2 * tj; tQ += 2)
      CHECK(std::abs(bond_state(HalfInt(tj), HalfInt(tQ)).norm() - 1.0) <
            1e-13);

  // Spin-2 component of two spin-1 particles, against the ladder oracle.
  LadderOracle oracle(HalfInt(2), HalfInt(2));
  Vector v = bond_state(HalfInt(2), HalfInt(4));
  for (Index a = 0; a < 3; ++a) {
    HalfInt m(2 - 2 * static_cast<int>(a));
    CHECK(std::abs(v(a * 3 + (2 + m.twice) / 2) -
                   oracle.cg(m, -m, HalfInt(4), HalfInt(0))) < 1e-13);
  }
  CHECK_THROWS_AS(bond_state(HalfInt(1), HalfInt(4)), std::domain_error);
}

TEST_CASE("heisenberg polynomial symmetry") {
  const std::vector<double> ha = {-1.0, 0.0, 91.0 / 900.0, 11.0 / 900.0};
  const std::vector<double> hb = {0.0, 1.0, 11.0 / 30.0, 1.0 / 30.0};
  SpinOperators ops = spin_operators(HalfInt(4));
  Matrix jz_tot = kron(ops.jz.matrix, Matrix::Identity(5, 5)) +
                  kron(Matrix::Identity(5, 5), ops.jz.matrix);
  for (const auto& coeffs : {ha, hb}) {
    LocalOperator h = heisenberg_poly(HalfInt(4), coeffs);
    CHECK(h.hermiticity_defect() < 1e-11);
    CHECK((h.matrix * jz_tot - jz_tot * h.matrix).cwiseAbs().maxCoeff() <
          1e-11);
    for (int tS = 0; tS <= 8; tS += 2) {
      Matrix p = total_spin_projector(HalfInt(4), HalfInt(4), HalfInt(tS))
                     .matrix;
      CHECK((h.matrix * p - p * h.matrix).cwiseAbs().maxCoeff() < 1e-11);
    }
  }
  LocalOperator zero = heisenberg_poly(HalfInt(2), {});
  CHECK(zero.matrix.cwiseAbs().maxCoeff() == 0.0);
}
