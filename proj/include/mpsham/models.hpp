#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mpsham/half_int.hpp"
#include "mpsham/mps.hpp"
#include "mpsham/spin.hpp"

namespace mpsham {

/// Valence-bond construction parameters: two virtual spin-j particles per
/// site projected onto physical spin J, neighboring virtuals coupled to
/// bond spin Q (Q = 0: singlet).  d = 2J+1, D = 2j+1.
struct AkltSpec {
  HalfInt j;
  HalfInt J;
  HalfInt Q{0};

  Index d() const { return J.multiplicity(); }
  Index D() const { return j.multiplicity(); }
  void validate() const;  // 0 <= J <= 2j, 0 <= Q <= 2j

  std::string str() const {
    return "j=" + j.str() + " J=" + J.str() + " Q=" + Q.str();
  }
  /// Parses "j=3/2 J=2 Q=0" (Q optional, default 0).
  static AkltSpec parse(const std::string& s);
};

/// The spin-1 chain tensor of the singlet-bond construction with j = 1/2,
/// in the m-descending physical basis:
///   A^{m=+1} = sqrt(1/3) sigma^+,
///   A^{m=0}  = -sqrt(1/6) sigma^z,
///   A^{m=-1} = -sqrt(1/3) sigma^-,
/// normalized to unit Frobenius norm over the full tensor.
MpsTensor aklt_tensor();

/// General valence-bond tensor
///   A^{(M)}_{a b} = sum_{b'} cg(j,m_a; j,m_{b'} | J,M) B_{b' b},
///   B_{b' b} = cg(j,m_{b'}; j,m_b | Q,0),
/// indices ordered by descending m, full tensor normalized to unit
/// Frobenius norm.
MpsTensor generalized_aklt(const AkltSpec& spec);

/// Weights w_S of the two-site boundary-to-physical map P = sum_S w_S P_S,
/// where P_S is the isometry carrying the spin-S subspace of j (x) j to the
/// spin-S subspace of J (x) J.  A vanishing w_S removes a boundary spin
/// from the two-site image and changes the injectivity length.
struct WeightVector {
  std::vector<std::pair<HalfInt, double>> weights;  // (S, w_S), S ascending
  std::vector<HalfInt> zero_flags;                  // S with |w_S| ~ 0
  double reconstruction_residual = 0.0;
  double smallest_abs = 0.0;         // two smallest |w_S|, margin audit
  double second_smallest_abs = 0.0;

  bool has_zero() const { return !zero_flags.empty(); }
};

/// Relative threshold for flagging w_S = 0.
inline constexpr double kWeightZeroTol = 1e-12;

/// Requires Q = 0 (the weights are defined for the singlet-bond map).
WeightVector weight_vector(const AkltSpec& spec,
                           double zero_tol = kWeightZeroTol);

struct ExceptionalModel {
  HalfInt j;
  HalfInt J;
  std::vector<HalfInt> zero_spins;
};

/// Scans all j <= j_max, j <= J < 2j (half-integer steps) for constructions
/// with some w_S = 0.
std::vector<ExceptionalModel> find_exceptional(HalfInt j_max,
                                               double zero_tol = kWeightZeroTol);

/// Interpolated two-site spin-2 Hamiltonian lambda H_a + (1-lambda) H_b,
/// where H_a = -(J1.J2) + 91/900 (J1.J2)^3 + 11/900 (J1.J2)^4 and
/// H_b = (J1.J2)^2 + 11/30 (J1.J2)^3 + 1/30 (J1.J2)^4.
struct Spin2FamilyResult {
  LocalOperator op;
  double min_eigenvalue = 0.0;
  Index kernel_dim = 0;
  /// sin of the largest principal angle between the kernel and the
  /// spin-{0,1,3} subspace of 2 (x) 2 (dimension 11).
  double kernel_vs_spin013 = 0.0;
  bool psd = false;
};
Spin2FamilyResult spin2_family(double lambda, double rank_tol = kDefaultRankTol);

/// Largest lambda keeping lambda H_a + (1-lambda) H_b positive
/// semidefinite, by bisection on [1, 2] to the given width.
double spin2_psd_boundary(double width = 1e-7);

/// A tensor satisfying X A^i = A^i Y for a random pair of idempotents of
/// the given ranks, together with the exponentially many ground states of
/// its two-site parent Hamiltonian obtained by inserting X on alternate
/// links.
struct DegenerateFamily {
  MpsTensor tensor;
  Matrix x, y;
  Index solution_space_dim = 0;
  int injectivity = 0;

  /// Witness ground states on n sites: every subset of the odd internal
  /// links {1, 3, 5, ...} marked with an X insertion, boundary identity.
  std::vector<Vector> witnesses(int n_sites,
                                MemoryBudget& budget = default_budget()) const;
  /// Number of linearly independent witnesses (rank of their Gram matrix).
  Index independent_witness_count(int n_sites,
                                  double rank_tol = kDefaultRankTol,
                                  MemoryBudget& budget = default_budget()) const;
};

DegenerateFamily degenerate_family(Index d, Index D, Index rank_x,
                                   Index rank_y, std::uint64_t seed,
                                   int max_retries = 20);

/// Number of admissible bond-spin sequences (j_1, ..., j_n) with every
/// j_b <= j_cap in half-integer steps and J contained in j_b (x) j_{b+1}
/// for consecutive pairs; exact integer transfer-matrix count.  For `open`
/// boundaries the sequence runs over the N+1 bonds of an N-site chain (N
/// adjacency constraints); `periodic` counts cyclic sequences of N bonds,
/// i.e. the trace of the N-th transfer-matrix power.  Throws
/// std::overflow_error if the count exceeds 64 bits.
enum class Boundary { open, periodic };
std::int64_t bond_sequence_count(HalfInt J, HalfInt j_cap, int n_sites,
                                 Boundary boundary);

/// Magnetic quantum numbers (s, s-1, ..., -s) in the global basis order;
/// these are the U(1) charges of a spin-s level set (physical charges of a
/// valence-bond tensor use s = J, bond charges use s = j).
std::vector<HalfInt> descending_magnetics(HalfInt s);

}  // namespace mpsham
