#include <doctest.h>

#include <cmath>
#include <functional>

#include "mpsham/intersect.hpp"
#include "mpsham/models.hpp"
#include "mpsham/parent.hpp"

using namespace mpsham;

TEST_CASE("spin-1 chain tensor equals the general construction at j=1/2") {
  MpsTensor a = aklt_tensor();
  MpsTensor g = generalized_aklt({HalfInt(1), HalfInt(2), HalfInt(0)});
  for (Index i = 0; i < 3; ++i)
    CHECK((a[i] - g[i]).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(span_distance(mps_space(a, 2).basis, mps_space(g, 2).basis) < 1e-10);
  auto l0 = injectivity_length(a, 4);
  REQUIRE(l0.has_value());
  CHECK(*l0 == 2);
}

TEST_CASE("maximal-spin constructions have two-body unique ground spaces") {
  for (int tj : {1, 2, 3}) {  // j = 1/2, 1, 3/2 with J = 2j
    AkltSpec spec{HalfInt(tj), HalfInt(2 * tj), HalfInt(0)};
    MpsTensor t = generalized_aklt(spec);
    CHECK(t.d() == 2 * tj + 1);
    auto l0 = injectivity_length(t, 4);
    REQUIRE(l0.has_value());
    CHECK(*l0 == 2);
    IntersectOpts opts;
    opts.keep_basis = false;
    CHECK(int_holds(t, 2, 3, opts));
  }
}

TEST_CASE("spec validation and parsing") {
  AkltSpec spec = AkltSpec::parse("j=3/2 J=2 Q=0");
  CHECK(spec.j.twice == 3);
  CHECK(spec.J.twice == 4);
  CHECK(spec.d() == 5);
  CHECK(spec.D() == 4);
  CHECK(AkltSpec::parse("j=1/2 J=1").Q.twice == 0);
  CHECK_THROWS_AS(AkltSpec::parse("j=1 J=3"), std::domain_error);  // J > 2j
  CHECK_THROWS_AS(AkltSpec::parse("j=1 J=3/2"), std::domain_error);  // parity
  CHECK_THROWS_AS(AkltSpec::parse("J=1"), std::invalid_argument);
  CHECK_THROWS_AS(AkltSpec::parse("j=1 K=1"), std::invalid_argument);
  CHECK(AkltSpec::parse("j=7/2 J=5 Q=4").str() == "j=7/2 J=5 Q=4");
}

TEST_CASE("channel weights of the valence-bond map") {
  WeightVector aklt_w = weight_vector({HalfInt(1), HalfInt(2), HalfInt(0)});
  REQUIRE(aklt_w.weights.size() == 2);
  CHECK(!aklt_w.has_zero());
  CHECK(std::abs(aklt_w.weights[0].second) > 1e-3);
  CHECK(std::abs(aklt_w.weights[1].second) > 1e-3);

  WeightVector exc = weight_vector({HalfInt(3), HalfInt(4), HalfInt(0)});
  REQUIRE(exc.zero_flags.size() == 1);
  CHECK(exc.zero_flags[0] == HalfInt(4));  // S = 2

  // Zero flags are stable across the tolerance decade around the default.
  for (double tol : {1e-11, 1e-12, 1e-13}) {
    WeightVector wv = weight_vector({HalfInt(3), HalfInt(4), HalfInt(0)}, tol);
    CHECK(wv.zero_flags == exc.zero_flags);
  }

  CHECK(weight_vector({HalfInt(6), HalfInt(10), HalfInt(0)}).has_zero());
  CHECK(weight_vector({HalfInt(10), HalfInt(18), HalfInt(0)}).has_zero());
  CHECK_THROWS_AS(weight_vector({HalfInt(2), HalfInt(2), HalfInt(2)}),
                  std::invalid_argument);  // Q != 0
}

TEST_CASE("exceptional scan") {
  CHECK(find_exceptional(HalfInt(2)).empty());  // j <= 1
  auto found = find_exceptional(HalfInt(10));   // j <= 5
  REQUIRE(found.size() == 3);
  CHECK(found[0].j == HalfInt(3));
  CHECK(found[0].J == HalfInt(4));
  CHECK(found[1].j == HalfInt(6));
  CHECK(found[1].J == HalfInt(10));
  CHECK(found[2].j == HalfInt(10));
  CHECK(found[2].J == HalfInt(18));
}

TEST_CASE("interpolated spin-2 family") {
  for (double lambda : {0.0, 1.0}) {
    Spin2FamilyResult r = spin2_family(lambda);
    CHECK(r.psd);
    CHECK(r.kernel_dim == 11);
    CHECK(r.kernel_vs_spin013 < 1e-9);
    CHECK(r.min_eigenvalue > -1e-10);
  }
  CHECK(!spin2_family(1.5).psd);
  double boundary = spin2_psd_boundary(1e-7);
  CHECK(std::abs(boundary - 60.0 / 53.0) < 1e-6);
}

TEST_CASE("exceptional model kernel equals the family kernel") {
  MpsTensor t = generalized_aklt({HalfInt(3), HalfInt(4), HalfInt(0)});
  Subspace s2 = mps_space(t, 2);
  REQUIRE(s2.dim() == 11);
  Spin2FamilyResult fam = spin2_family(0.5);
  // The family kernel is the spin-{0,1,3} subspace; so is the model's S_2.
  Matrix p013 = Matrix::Zero(25, 25);
  for (int tS : {0, 2, 6})
    p013 += total_spin_projector(HalfInt(4), HalfInt(4), HalfInt(tS)).matrix;
  CHECK((p013 * s2.basis - s2.basis).cwiseAbs().maxCoeff() < 1e-9);
  CHECK(fam.kernel_vs_spin013 < 1e-9);
}

TEST_CASE("non-exceptional sub-maximal constructions are degenerate") {
  // j <= J < 2j with L0 = 2 and no vanishing weight: Int(2,3) must fail.
  AkltSpec spec{HalfInt(4), HalfInt(6), HalfInt(0)};  // j = 2, J = 3
  MpsTensor t = generalized_aklt(spec);
  CHECK(!weight_vector(spec).has_zero());
  auto l0 = injectivity_length(t, 4);
  REQUIRE(l0.has_value());
  CHECK(*l0 == 2);
  IntersectOpts opts;
  opts.keep_basis = false;
  CHECK(!int_holds(t, 2, 3, opts));
}

TEST_CASE("link-insertion family") {
  DegenerateFamily fam = degenerate_family(3, 2, 1, 1, 77);
  CHECK(fam.injectivity == 2);
  CHECK(fam.solution_space_dim == 2);
  CHECK((fam.x * fam.x - fam.x).cwiseAbs().maxCoeff() < 1e-8);
  CHECK((fam.y * fam.y - fam.y).cwiseAbs().maxCoeff() < 1e-8);
  for (Index i = 0; i < 3; ++i)
    CHECK((fam.x * fam.tensor[i] - fam.tensor[i] * fam.y)
              .cwiseAbs()
              .maxCoeff() < 1e-10);

  CHECK(fam.independent_witness_count(3) == 2);
  CHECK(fam.independent_witness_count(4) == 4);
  CHECK(fam.independent_witness_count(5) == 4);
  CHECK(fam.independent_witness_count(6) == 8);

  ParentTerm term = parent_term(fam.tensor, 2);
  for (const Vector& w : fam.witnesses(5))
    CHECK(apply_obc_hamiltonian(term, 5, w).norm() < 1e-9 * w.norm());

  CHECK(f_det(fam.tensor, 2, 3).is_zero);
  IntersectOpts opts;
  opts.keep_basis = false;
  CHECK(!int_holds(fam.tensor, 2, 3, opts));
  CHECK(!int_holds(fam.tensor, 2, 4, opts));

  CHECK_THROWS_AS(degenerate_family(3, 2, 0, 1, 1), std::invalid_argument);
}

TEST_CASE("bond sequence counting") {
  // J = 2 j_cap: only the constant maximal sequence survives.
  CHECK(bond_sequence_count(HalfInt(4), HalfInt(2), 5, Boundary::open) == 1);
  CHECK(bond_sequence_count(HalfInt(4), HalfInt(2), 5, Boundary::periodic) ==
        1);

  // Brute-force enumeration oracle for small chains.
  auto brute = [](HalfInt J, HalfInt cap, int n, Boundary b) {
    std::int64_t count = 0;
    int n_bonds = b == Boundary::open ? n + 1 : n;
    std::vector<int> seq(static_cast<size_t>(n_bonds), 0);
    std::function<void(int)> rec = [&](int pos) {
      if (pos == n_bonds) {
        for (int t = 0; t + 1 < n_bonds; ++t)
          if (!triangle(HalfInt(seq[t]), HalfInt(seq[t + 1]), J)) return;
        if (b == Boundary::periodic &&
            !triangle(HalfInt(seq[n_bonds - 1]), HalfInt(seq[0]), J))
          return;
        ++count;
        return;
      }
      for (int v = 0; v <= cap.twice; ++v) {
        seq[static_cast<size_t>(pos)] = v;
        rec(pos + 1);
      }
    };
    rec(0);
    return count;
  };
  for (int n : {2, 3, 4}) {
    CHECK(bond_sequence_count(HalfInt(2), HalfInt(3), n, Boundary::open) ==
          brute(HalfInt(2), HalfInt(3), n, Boundary::open));
    CHECK(bond_sequence_count(HalfInt(2), HalfInt(3), n, Boundary::periodic) ==
          brute(HalfInt(2), HalfInt(3), n, Boundary::periodic));
  }

  // Exponential growth: the ratio settles at the transfer spectral radius.
  std::int64_t prev =
      bond_sequence_count(HalfInt(2), HalfInt(3), 16, Boundary::open);
  std::int64_t cur =
      bond_sequence_count(HalfInt(2), HalfInt(3), 17, Boundary::open);
  std::int64_t next =
      bond_sequence_count(HalfInt(2), HalfInt(3), 18, Boundary::open);
  CHECK(cur > prev);
  double r1 = static_cast<double>(cur) / prev;
  double r2 = static_cast<double>(next) / cur;
  CHECK(std::abs(r1 - r2) < 0.01 * r2);

  CHECK_THROWS_AS(bond_sequence_count(HalfInt(2), HalfInt(3), 1, Boundary::open),
                  std::invalid_argument);
}

TEST_CASE("descending magnetics") {
  auto ms = descending_magnetics(HalfInt(3));
  REQUIRE(ms.size() == 4);
  CHECK(ms[0].twice == 3);
  CHECK(ms[3].twice == -3);
}
