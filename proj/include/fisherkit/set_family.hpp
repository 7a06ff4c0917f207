#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "fisherkit/types.hpp"

namespace fisher {

// A family of m distinct nonempty subsets of {1..n}. Elements are 1-indexed
// throughout, including file formats and reports. Each set is kept sorted
// ascending; the list order of the sets is preserved and meaningful (set i of
// the family is row i of its incidence matrix).
class SetFamily {
 public:
  using Set = std::vector<int>;

  // Validates on construction: indices in 1..n, no repeated element within a
  // set, no empty set, no two equal sets. Throws InputError.
  SetFamily(int n, std::vector<Set> sets);

  int n() const { return n_; }
  Index size() const { return static_cast<Index>(sets_.size()); }
  const Set& set(Index i) const { return sets_[static_cast<std::size_t>(i)]; }
  const std::vector<Set>& sets() const { return sets_; }

  bool operator==(const SetFamily& other) const = default;

 private:
  int n_;
  std::vector<Set> sets_;
};

int intersection_size(const SetFamily::Set& a, const SetFamily::Set& b);

struct IntersectionReport {
  bool is_k_intersecting = false;
  // False for families with fewer than two sets, which are vacuously
  // intersecting but pin down no k.
  bool k_defined = false;
  int k = 0;
  struct Violation {
    Index i = 0;  // 1-based set indices, lexicographically first offender
    Index j = 0;
    int expected = 0;  // intersection size established by the earliest pair
    int found = 0;
  };
  std::optional<Violation> violation;
};

struct ReductionReport {
  Index small_set_index = 0;  // 1-based index of the size-k set used
  std::vector<SetFamily::Set> residues;  // B \ A for the other sets, in order
  int derived_bound = 0;                 // n - k + 1
  bool containment_ok = false;           // A contained in every other set
  bool disjoint_ok = false;  // residues pairwise disjoint and nonempty
  bool bound_ok = false;     // m <= derived_bound
};

IncidenceMatrix build_incidence(const SetFamily& family);

// Reads row supports back into a family; the inverse of build_incidence on
// valid families. Throws InputError on entries outside {0,1} or rows that do
// not form a valid family.
SetFamily family_from_incidence(const IntMatrix& X);

IntersectionReport check_k_intersecting(const SetFamily& family);

// Requires the family to be k-intersecting with a member of size exactly k.
// Throws HypothesisViolated or NoSmallSet otherwise.
ReductionReport reduce_small_set(const SetFamily& family, int k);

// {1,i} for i = 2..n followed by {2..n}. 1-intersecting with m = n.
SetFamily gen_near_pencil(int n);

// Lines of the projective plane of prime order q over the q^2+q+1 points.
// 1-intersecting with m = n = q^2+q+1 and every line of size q+1. Composite
// or non-prime q throws NonPrimeOrder.
SetFamily gen_projective_plane(int q);

// Core {1..k} plus petal sets {1..k, k+i}. With include_core the core itself
// is the first member. k-intersecting by construction. m is capped at n-k
// (n-k+1 with the core); beyond that throws CapacityExceeded.
SetFamily gen_sunflower(int n, int k, int m, bool include_core);

// m distinct nonempty subsets of {1..n} sampled uniformly without
// replacement. Randomness is mt19937_64 seeded with `seed`, masked to n bits
// with rejection of zero and repeats, so identical arguments give identical
// families. m > 2^n - 1 throws CapacityExceeded. Requires n <= 62.
SetFamily gen_random_family(int n, int m, std::uint64_t seed);

}  // namespace fisher
