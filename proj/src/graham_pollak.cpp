#include "fisherkit/graham_pollak.hpp"

#include <algorithm>
#include <string>

#include "fisherkit/errors.hpp"

namespace fisher {

void validate_partition(const BicliquePartition& p) {
  if (p.n < 0) throw InputError("vertex count must be nonnegative");
  for (std::size_t idx = 0; idx < p.parts.size(); ++idx) {
    const auto& part = p.parts[idx];
    const std::string label = "part " + std::to_string(idx + 1);
    if (part.left.empty() || part.right.empty())
      throw InputError(label + " has an empty side");
    for (const auto* side : {&part.left, &part.right}) {
      for (std::size_t i = 0; i < side->size(); ++i) {
        const int v = (*side)[i];
        if (v < 1 || v > p.n)
          throw InputError(label + " mentions vertex " + std::to_string(v) + " outside 1.." +
                           std::to_string(p.n));
        if (i > 0 && (*side)[i] == (*side)[i - 1])
          throw InputError(label + " repeats vertex " + std::to_string(v));
      }
      if (!std::is_sorted(side->begin(), side->end()))
        throw InputError(label + " sides must be sorted ascending");
    }
    for (int v : part.left)
      if (std::binary_search(part.right.begin(), part.right.end(), v))
        throw InputError(label + " has vertex " + std::to_string(v) + " on both sides");
  }
}

PartitionCheck verify_biclique_partition(const BicliquePartition& p) {
  validate_partition(p);
  const int n = p.n;
  std::vector<std::vector<int>> cover(static_cast<std::size_t>(n) + 1,
                                      std::vector<int>(static_cast<std::size_t>(n) + 1, 0));
  for (const auto& part : p.parts)
    for (int u : part.left)
      for (int v : part.right) {
        const int a = std::min(u, v);
        const int b = std::max(u, v);
        ++cover[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
      }

  PartitionCheck check;
  for (int u = 1; u <= n; ++u)
    for (int v = u + 1; v <= n; ++v) {
      const int count = cover[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)];
      if (count == 1) continue;
      check.violation = PartitionCheck::Violation{
          u, v,
          count == 0 ? PartitionCheck::Kind::Uncovered : PartitionCheck::Kind::CoveredTwice};
      return check;
    }
  check.ok = true;
  return check;
}

BicliquePartition star_partition(int n) {
  if (n < 2) throw InputError("star decomposition needs n >= 2");
  BicliquePartition p;
  p.n = n;
  for (int i = 1; i < n; ++i) {
    Biclique part;
    part.left = {i};
    for (int v = i + 1; v <= n; ++v) part.right.push_back(v);
    p.parts.push_back(std::move(part));
  }
  return p;
}

namespace {

// DFS exact cover over edge masks: always branch on the lowest uncovered
// edge, trying every biclique that covers it.
void cover_edges(unsigned covered, unsigned full, const std::vector<unsigned>& bicliques,
                 int used, int& best) {
  if (used >= best) return;
  if (covered == full) {
    best = used;
    return;
  }
  unsigned lowest = 1;
  while (covered & lowest) lowest <<= 1;
  for (unsigned mask : bicliques) {
    if (!(mask & lowest)) continue;
    if (mask & covered) continue;  // would double-cover some edge
    cover_edges(covered | mask, full, bicliques, used + 1, best);
  }
}

}  // namespace

int min_partition_bruteforce(int n) {
  if (n < 2 || n > 4) throw InputError("exhaustive decomposition supports 2 <= n <= 4");

  std::vector<std::pair<int, int>> edges;
  for (int u = 1; u <= n; ++u)
    for (int v = u + 1; v <= n; ++v) edges.emplace_back(u, v);

  // Every unordered pair of disjoint nonempty vertex subsets, as the mask of
  // complete-graph edges it covers.
  std::vector<unsigned> bicliques;
  const unsigned subsets = 1u << n;
  for (unsigned left = 1; left < subsets; ++left)
    for (unsigned right = left + 1; right < subsets; ++right) {
      if (left & right) continue;
      unsigned mask = 0;
      for (std::size_t e = 0; e < edges.size(); ++e) {
        const unsigned ub = 1u << (edges[e].first - 1);
        const unsigned vb = 1u << (edges[e].second - 1);
        const bool forward = (left & ub) && (right & vb);
        const bool backward = (left & vb) && (right & ub);
        if (forward || backward) mask |= 1u << e;
      }
      if (mask != 0) bicliques.push_back(mask);
    }

  const unsigned full = (1u << edges.size()) - 1;
  int best = static_cast<int>(edges.size()) + 1;
  cover_edges(0, full, bicliques, 0, best);
  return best;
}

}  // namespace fisher
