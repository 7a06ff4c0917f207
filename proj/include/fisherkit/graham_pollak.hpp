#pragma once

#include <optional>
#include <vector>

#include "fisherkit/types.hpp"

namespace fisher {

// Complete bipartite piece of an edge decomposition: every left vertex joined
// to every right vertex. Sides are disjoint, nonempty, sorted, within 1..n.
struct Biclique {
  std::vector<int> left;
  std::vector<int> right;
};

struct BicliquePartition {
  int n = 0;
  std::vector<Biclique> parts;
};

// Validates side invariants for every part against the given n; throws
// InputError on failure. Parsers call this, and so may anyone assembling a
// partition by hand.
void validate_partition(const BicliquePartition& p);

struct PartitionCheck {
  bool ok = false;
  enum class Kind { Uncovered, CoveredTwice };
  struct Violation {
    int u = 0;  // 1-based vertices, u < v, lexicographically first offender
    int v = 0;
    Kind kind = Kind::Uncovered;
  };
  std::optional<Violation> violation;
};

// True iff every unordered pair of distinct vertices of {1..n} is covered by
// exactly one part. Violations come back as data, not errors.
PartitionCheck verify_biclique_partition(const BicliquePartition& p);

// ({i}, {i+1..n}) for i = 1..n-1: the classical n-1 part decomposition.
// Requires n >= 2.
BicliquePartition star_partition(int n);

// Exhaustive minimum part count over all biclique decompositions of the
// complete graph, 2 <= n <= 4 only (edge-set partition enumeration grows too
// fast beyond that).
int min_partition_bruteforce(int n);

}  // namespace fisher
