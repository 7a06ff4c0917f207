#pragma once

#include <cstdint>
#include <vector>

#include "fisherkit/set_family.hpp"
#include "fisherkit/types.hpp"

namespace fisher {

// Rounding state: exact values in [-1,1], frozen entries pinned at +-1.
struct FractionalColoring {
  RationalVector values;
  std::vector<bool> frozen;
};

struct Coloring {
  IntVector signs;  // entries +-1, one per element
};

// Largest number of sets any single element belongs to; 0 for an empty
// family. This is the t in the discrepancy guarantee 2t-1.
int max_degree(const SetFamily& family);

// max over sets of |sum of signs inside the set|; 0 for an empty family.
Int discrepancy_of(const SetFamily& family, const Coloring& coloring);

// A set stops being dangerous (or never was): at that moment its exact sum
// is still 0 and at most t members are unfrozen, so the finished coloring
// can move it by strictly less than 2 per unfrozen member.
struct DropoutRecord {
  Index set = 0;    // 0-based set index
  Index round = 0;  // round at whose start the dropout was observed
  Rational sum;
  Index unfrozen = 0;
};

struct RoundLog {
  Index round = 0;
  std::vector<Index> dangerous;  // 0-based indices of the constrained sets
  Index active_vars = 0;         // unfrozen elements inside dangerous sets
  bool used_elimination = false;
  BigIntVector direction;  // applied integer direction, zero off active vars
  Rational step;           // positive exact step length
  std::vector<Index> froze;  // 0-based elements that reached +-1 this round
};

struct BeckFialaOptions {
  // Node cap for the counting search per round; past it the exact
  // elimination fallback supplies the direction.
  std::uint64_t kernel_node_budget = 20000;
};

struct BeckFialaResult {
  Coloring coloring;
  int t = 0;
  Int bound = 0;  // 2t - 1, or 0 for a family with no sets
  std::vector<RoundLog> rounds;
  std::vector<DropoutRecord> dropouts;
  // Elements still fractional once no set was dangerous, rounded to the
  // nearest sign (ties toward +1) by the closing step.
  std::vector<Index> final_roundings;
};

// Iterative rounding: start everything at 0; while some set has more than t
// unfrozen members, those sets impose fewer homogeneous constraints than
// there are unfrozen variables inside them, so a nonzero integer kernel
// direction exists; move along it by the largest exact step keeping all
// values in [-1,1], freezing every variable that lands on +-1 (at least one
// per round). Guarantees every set's final discrepancy is at most 2t-1.
BeckFialaResult beck_fiala_color(const SetFamily& family, const BeckFialaOptions& opts = {});

}  // namespace fisher
