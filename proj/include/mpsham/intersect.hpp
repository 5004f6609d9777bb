#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "mpsham/half_int.hpp"
#include "mpsham/mps.hpp"
#include "mpsham/subspace.hpp"

namespace mpsham {

/// Result record of one intersection computation: the dimension of the
/// joint window kernel I^ell_L for each L from ell up to the target, the
/// per-L verdicts, and everything needed to reproduce the run.
struct IntersectionReport {
  Index d = 0;
  Index D = 0;
  int ell = 0;
  std::vector<std::pair<int, Index>> dims;     // (L, dim I^ell_L)
  std::vector<std::pair<int, bool>> verdicts;  // (L, dim == D^2)
  std::string model;                           // seed or model descriptor
  std::uint64_t seed = 0;
  bool seeded = false;
  double rank_tol = kDefaultRankTol;
  double angle_tol = kDefaultAngleTol;
  bool injective_on_ell = false;
  bool borderline = false;
  double closest_kept = 1.0;     // worst accepted intersection direction (mu)
  double closest_dropped = 0.0;  // best rejected direction (mu)
  std::string strategy;          // dense | streamed | sector | brute
  std::size_t peak_bytes = 0;
  double wall_seconds = 0.0;

  Index dim_at(int L) const;
  bool int_holds_at(int L) const;
};

struct IntersectOpts {
  double rank_tol = kDefaultRankTol;
  double angle_tol = kDefaultAngleTol;
  /// Bytes allowed for one Gram accumulation slab before streaming kicks in.
  std::size_t slab_bytes = std::size_t{256} << 20;
  /// Skip assembling the final dense basis (dimension bookkeeping only).
  bool keep_basis = true;
  /// Stop growing once dim I^ell_L = D^2 at some L > ell (the dimension
  /// stays at D^2 from there on) or the space dies out.
  bool stop_at_bond_squared = false;
  /// Observer invoked after each completed L, so scans keep partial results
  /// when a later step exhausts the memory budget.
  std::function<void(int L, Index dim)> on_dim;
};

/// I^ell_L = intersection of all ell-site window kernels on L sites,
/// grown iteratively from S_ell one site at a time.  Each step imposes the
/// new rightmost window through the Gram matrix of the projected candidate
/// basis; candidate columns are processed in budget-sized slabs so the
/// second intersectand is never materialized.
std::pair<Subspace, IntersectionReport> intersection_space(
    const MpsTensor& A, int ell, int L, const IntersectOpts& opts = {},
    MemoryBudget& budget = default_budget());

/// dim I^ell_L == D^2, the condition certifying that the ell-site parent
/// Hamiltonian on L sites has ground space exactly S_L.
bool int_holds(const MpsTensor& A, int ell, int L,
               const IntersectOpts& opts = {},
               MemoryBudget& budget = default_budget());

/// Checks the chaining implication (Int(ell,L) and Int(L,N)) => Int(ell,N)
/// on computed verdicts; true when the three are mutually consistent.
bool transitivity_check(const MpsTensor& A, int ell, int L, int N,
                        const IntersectOpts& opts = {},
                        MemoryBudget& budget = default_budget());

/// Parameter-counting lower bound
///   dim I^ell_L >= d^L - (L-ell+1)(d^ell - D^2) d^{L-ell}
/// (ell = 2: d^L - (L-1)(d^2 - D^2) d^{L-2}).  May be negative.
std::int64_t dim_lower_bound(std::int64_t d, std::int64_t D, int L,
                             int ell = 2);

/// U(1)-blocked intersection: physical level i carries charge charges[i],
/// bond index a carries bond_charges[a] (both as exact half-integers).
/// The tensor must satisfy A^i(alpha, beta) = 0 unless
/// bond_charges[alpha] = bond_charges[beta] + charges[i]; violations throw
/// std::invalid_argument listing the offending entries.  The computation
/// runs per total-charge sector and returns the direct sum.
std::pair<Subspace, IntersectionReport> sector_blocked_intersection(
    const MpsTensor& A, const std::vector<HalfInt>& charges,
    const std::vector<HalfInt>& bond_charges, int ell, int L,
    const IntersectOpts& opts = {}, MemoryBudget& budget = default_budget());

/// Independent oracle: stacks every window's orthogonal-complement
/// constraints into one dense matrix and takes its null space in a single
/// decomposition.  Requires d^L <= dense_cap.
Subspace brute_force_intersection(const MpsTensor& A, int ell, int L,
                                  double rank_tol = kDefaultRankTol,
                                  Index dense_cap = 4096,
                                  MemoryBudget& budget = default_budget());

}  // namespace mpsham
