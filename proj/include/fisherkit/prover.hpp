#pragma once

#include <cstdint>
#include <optional>

#include "fisherkit/set_family.hpp"
#include "fisherkit/types.hpp"

namespace fisher {

// Residues of the refutation chain for a candidate kernel vector tau of a
// k-intersecting family. Each quantity must vanish when tau really lies in
// the left kernel; the last one then forces tau itself to vanish, which is
// the contradiction (all member sizes exceed k, so each size gap is nonzero).
struct RefutationCertificate {
  int k = 0;
  KernelVector tau;
  // sum_i tau(i) * |A_i|: the total of all per-element kernel sums.
  Int size_weighted_sum = 0;
  // Entry i: tau(i)*|A_i| + k * sum_{j != i} tau(j), obtained by adding the
  // per-element kernel sums over the elements of A_i.
  IntVector set_equation_residues;
  // sum_i tau(i), forced once the set equations all vanish.
  Int coefficient_sum = 0;
  // Entry i: tau(i) * (|A_i| - k); zero entries force tau(i) = 0.
  IntVector size_gap_terms;
  bool chain_valid = false;
};

// sum_i tau(i) * |A_i|. Internally computed twice, directly from the sizes
// and as the total of the per-element kernel sums; disagreement is a logic
// fault.
Int weighted_size_sum(const SetFamily& family, const KernelVector& tau);

// tau(i)*|A_i| + k * sum_{j != i} tau(j) for the 0-based set index i. The
// same value is recomputed from the true pairwise intersections (the
// derivation route: adding the per-element kernel sums over A_i gives
// sum_j tau(j) * |A_j intersect A_i|); the family must be k-intersecting for
// the two routes to coincide, so a mismatched family throws
// HypothesisViolated before any arithmetic.
Int set_equation_residue(const SetFamily& family, int k, const KernelVector& tau, Index i);

// Pure arithmetic of the chain, no hypothesis gates: evaluates every residue
// formula on whatever family, k, and tau are supplied. chain_valid is true
// iff every residue vanished. Useful for transcripts and for testing the
// aggregation identity sum_i set_equation_residues = size_weighted_sum +
// k*(m-1)*coefficient_sum, which holds for all inputs.
RefutationCertificate evaluate_chain(const SetFamily& family, int k, const KernelVector& tau);

// Replays the chain under the theorem's hypotheses. Gates, in order:
// HypothesisViolated (k < 1 or family not k-intersecting), SmallSetPresent
// (some member of size <= k; the containment reduction applies instead),
// NotInKernel (tau zero or tau^T X != 0). Inputs passing every gate cannot
// exist: the chain then validates and forces tau = 0, so the function throws
// TheoremViolation rather than return. The declared result type documents
// what a completed replay would carry.
RefutationCertificate derive_contradiction(const SetFamily& family, int k,
                                           const KernelVector& tau);

struct ExtremalReport {
  int n = 0;
  int k = 0;
  int max_m = 0;
  std::optional<SetFamily> witness;
  bool bound_respected = false;  // max_m <= n; false would refute the theorem
  std::uint64_t nodes_explored = 0;
  bool complete = true;  // false when the node budget truncated the search
};

// Maximum k-intersecting family over {1..n} by branch and bound on the
// compatibility graph (vertices: subsets of size >= k; edges: intersection
// exactly k), with a greedy-coloring bound. The witness is the
// lexicographically smallest maximum clique under the sorted-set-list order.
// Requires 1 <= k < n <= 7.
ExtremalReport enumerate_max_family(int n, int k,
                                    std::uint64_t node_budget = UINT64_C(1) << 62);

}  // namespace fisher
