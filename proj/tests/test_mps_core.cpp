#include <doctest.h>

#include <cmath>

#include "mpsham/io.hpp"
#include "mpsham/models.hpp"
#include "mpsham/mps.hpp"
#include "mpsham/rng.hpp"

using namespace mpsham;

TEST_CASE("random_mps is a pure function of (d, D, seed)") {
  MpsTensor a = random_mps(4, 3, 42);
  MpsTensor b = random_mps(4, 3, 42);
  for (Index i = 0; i < 4; ++i) CHECK(a[i] == b[i]);  // bitwise
  MpsTensor c = random_mps(4, 3, 43);
  CHECK(a[0] != c[0]);
}

TEST_CASE("random_mps entries are standard complex Gaussians") {
  // d * D^2 > 1e6 draws; E|z|^2 = 2 for unit-variance parts.
  MpsTensor t = random_mps(42, 160, 7);
  double sum = 0.0;
  std::int64_t n = 0;
  for (Index i = 0; i < t.d(); ++i) {
    sum += t[i].squaredNorm();
    n += t[i].size();
  }
  CHECK(n >= 1000000);
  CHECK(std::abs(sum / static_cast<double>(n) - 2.0) < 0.01);
}

TEST_CASE("generic tensors reach injectivity at the minimal length") {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    auto l0 = injectivity_length(random_mps(3, 2, seed), 4);
    REQUIRE(l0.has_value());
    CHECK(*l0 == 2);
  }
  auto l0 = injectivity_length(random_mps(5, 4, 3), 4);
  REQUIRE(l0.has_value());
  CHECK(*l0 == 2);
}

TEST_CASE("blocking map matches the trace contraction") {
  // A^0 = identity, all others zero: tr[A^{i..}] = D exactly at word 0.
  MpsTensor t = MpsTensor::zero(3, 2);
  t[0] = Matrix::Identity(2, 2);
  Matrix gamma = blocking_map(t, 1);
  Vector coeff = gamma * vec_boundary(Matrix::Identity(2, 2));
  CHECK(std::abs(coeff(0) - 2.0) < 1e-15);
  CHECK(coeff.tail(2).norm() < 1e-15);

  Vector two_site = state_vector(t, 2, Matrix::Identity(2, 2));
  CHECK(std::abs(two_site(0) - 2.0) < 1e-15);
  CHECK(two_site.tail(8).norm() < 1e-15);

  // Against a direct per-word product for a random tensor.
  MpsTensor r = random_mps(3, 2, 9);
  Matrix g2 = blocking_map(r, 2);
  for (Index i1 = 0; i1 < 3; ++i1)
    for (Index i2 = 0; i2 < 3; ++i2) {
      Matrix prod = r[i1] * r[i2];
      for (Index al = 0; al < 2; ++al)
        for (Index be = 0; be < 2; ++be)
          CHECK(std::abs(g2(i1 * 3 + i2, be * 2 + al) - prod(al, be)) <
                1e-14);
    }
}

TEST_CASE("mps_space dimensions") {
  CHECK(mps_space(aklt_tensor(), 2).dim() == 4);
  CHECK(mps_space(random_mps(4, 3, 5), 2).dim() == 9);
  for (std::uint64_t seed : {1ULL, 2ULL}) {
    MpsTensor t = random_mps(3, 2, seed);
    Index prev = 0;
    for (int ell = 1; ell <= 4; ++ell) {
      Index dim = mps_space(t, ell).dim();
      CHECK(dim >= prev);
      CHECK(dim <= 4);
      prev = dim;
    }
    CHECK(prev == 4);
  }
}

TEST_CASE("state vectors live in the MPS space") {
  MpsTensor t = random_mps(4, 3, 11);
  Subspace s = mps_space(t, 3);
  CounterRng rng{99};
  std::uint64_t ctr = 0;
  for (int trial = 0; trial < 20; ++trial) {
    Matrix x(3, 3);
    for (Index a = 0; a < 3; ++a)
      for (Index b = 0; b < 3; ++b) x(a, b) = rng.gaussian(ctr++);
    Vector v = state_vector(t, 3, x);
    CHECK(s.residual(v) < 1e-10);
  }
  // N = ell consistency with the blocking map.
  Matrix x = Matrix::Identity(3, 3);
  Vector via_map = blocking_map(t, 3) * vec_boundary(x);
  CHECK((state_vector(t, 3, x) - via_map).norm() < 1e-12);
}

TEST_CASE("tensor JSON round-trips bit-exactly") {
  MpsTensor t = random_mps(3, 2, 123);
  Json j = tensor_to_json(t);
  MpsTensor back = tensor_from_json(Json::parse(j.dump()));
  for (Index i = 0; i < t.d(); ++i) CHECK(t[i] == back[i]);
  CHECK(Json::parse(j.dump()).dump() == j.dump());

  Json bad = j;
  bad["entries"][0].erase(0);
  CHECK_THROWS_AS(tensor_from_json(bad), std::invalid_argument);
}

TEST_CASE("memory budget blocks oversized dense work") {
  MemoryBudget tiny(1 << 10);
  CHECK_THROWS_AS(blocking_map(random_mps(6, 5, 1), 5, tiny), ResourceError);
  try {
    blocking_map(random_mps(6, 5, 1), 5, tiny);
  } catch (const ResourceError& e) {
    CHECK(e.requested_bytes > e.budget_bytes);
  }
  CHECK(tiny.in_use() == 0);  // reservations rolled back
}

TEST_CASE("state vector with inserted link matrices") {
  MpsTensor t = random_mps(3, 2, 31);
  Matrix m = random_mps(2, 2, 32)[0];
  std::vector<std::optional<Matrix>> links(2);
  links[0] = m;
  Vector v = state_vector_with_links(t, 3, links, Matrix::Identity(2, 2));
  for (Index i1 = 0; i1 < 3; ++i1)
    for (Index i2 = 0; i2 < 3; ++i2)
      for (Index i3 = 0; i3 < 3; ++i3) {
        Complex want = (t[i1] * m * t[i2] * t[i3]).trace();
        CHECK(std::abs(v((i1 * 3 + i2) * 3 + i3) - want) < 1e-13);
      }
}

TEST_CASE("physical padding embeds the tensor") {
  MpsTensor t = random_mps(3, 2, 8);
  MpsTensor padded = pad_physical(t, 5);
  CHECK(padded.d() == 5);
  CHECK(padded[4].cwiseAbs().maxCoeff() == 0.0);
  CHECK(mps_space(padded, 2).dim() == mps_space(t, 2).dim());
}
