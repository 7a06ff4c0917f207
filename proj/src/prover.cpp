#include "fisherkit/prover.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

#include "fisherkit/errors.hpp"
#include "fisherkit/kernel.hpp"

namespace fisher {

Int weighted_size_sum(const SetFamily& family, const KernelVector& tau) {
  const Index m = family.size();
  if (tau.size() != m) throw DimensionMismatch("tau length must equal family size");
  Int direct = 0;
  for (Index i = 0; i < m; ++i) direct += tau[i] * static_cast<Int>(family.set(i).size());

  // Same total assembled the other way: add up the per-element kernel sums.
  const Profile sums = compute_profile(build_incidence(family), tau);
  Int via_elements = 0;
  for (Index j = 0; j < sums.size(); ++j) via_elements += sums[j];
  if (direct != via_elements)
    throw std::logic_error("weighted size sum disagrees with its per-element recomputation");
  return direct;
}

namespace {

void require_k_intersecting(const SetFamily& family, int k) {
  const auto check = check_k_intersecting(family);
  if (!check.is_k_intersecting)
    throw HypothesisViolated("family is not pairwise constant-intersecting: sets " +
                             std::to_string(check.violation->i) + " and " +
                             std::to_string(check.violation->j) + " meet in " +
                             std::to_string(check.violation->found) + " elements, expected " +
                             std::to_string(check.violation->expected));
  if (check.k_defined && check.k != k)
    throw HypothesisViolated("family is " + std::to_string(check.k) + "-intersecting, not " +
                             std::to_string(k) + "-intersecting");
}

}  // namespace

Int set_equation_residue(const SetFamily& family, int k, const KernelVector& tau, Index i) {
  const Index m = family.size();
  if (tau.size() != m) throw DimensionMismatch("tau length must equal family size");
  if (i < 0 || i >= m) throw InputError("set index out of range");
  require_k_intersecting(family, k);

  Int tail = 0;
  for (Index j = 0; j < m; ++j)
    if (j != i) tail += tau[j];
  const Int direct = tau[i] * static_cast<Int>(family.set(i).size()) + Int(k) * tail;

  // Derivation route: adding the per-element kernel sums over the elements of
  // A_i turns each row j into tau(j) * |A_j intersect A_i|, and the constant
  // intersection hypothesis collapses that to the expression above.
  Int derived = 0;
  for (Index j = 0; j < m; ++j)
    derived += tau[j] * Int(intersection_size(family.set(j), family.set(i)));
  if (direct != derived)
    throw std::logic_error("set equation residue disagrees with its derivation route");
  return direct;
}

RefutationCertificate evaluate_chain(const SetFamily& family, int k, const KernelVector& tau) {
  const Index m = family.size();
  if (tau.size() != m) throw DimensionMismatch("tau length must equal family size");

  RefutationCertificate cert;
  cert.k = k;
  cert.tau = tau;
  cert.set_equation_residues = IntVector::Zero(m);
  cert.size_gap_terms = IntVector::Zero(m);

  Int total_tau = 0;
  for (Index i = 0; i < m; ++i) total_tau += tau[i];
  cert.coefficient_sum = total_tau;

  Int weighted = 0;
  for (Index i = 0; i < m; ++i) {
    const Int size_i = static_cast<Int>(family.set(i).size());
    weighted += tau[i] * size_i;
    cert.set_equation_residues[i] = tau[i] * size_i + Int(k) * (total_tau - tau[i]);
    cert.size_gap_terms[i] = tau[i] * (size_i - Int(k));
  }
  cert.size_weighted_sum = weighted;

  bool valid = cert.size_weighted_sum == 0 && cert.coefficient_sum == 0;
  for (Index i = 0; i < m && valid; ++i)
    valid = cert.set_equation_residues[i] == 0 && cert.size_gap_terms[i] == 0;
  cert.chain_valid = valid;
  return cert;
}

RefutationCertificate derive_contradiction(const SetFamily& family, int k,
                                           const KernelVector& tau) {
  if (k < 1) throw HypothesisViolated("intersection size k must be positive");
  require_k_intersecting(family, k);
  for (Index i = 0; i < family.size(); ++i) {
    if (static_cast<int>(family.set(i).size()) <= k)
      throw SmallSetPresent("set " + std::to_string(i + 1) + " has size " +
                            std::to_string(family.set(i).size()) +
                            " <= k; the containment reduction applies");
  }
  const IncidenceMatrix X = build_incidence(family);
  if (tau.size() != family.size())
    throw DimensionMismatch("tau length must equal family size");
  if (!verify_kernel(X, tau))
    throw NotInKernel("tau is zero or fails a column equation");

  const RefutationCertificate cert = evaluate_chain(family, k, tau);
  if (!cert.chain_valid)
    throw std::logic_error("a kernel vector must validate the whole chain");
  // Every size gap is positive, yet every size-gap term vanished: tau would
  // have to be zero, and it was verified nonzero above.
  throw TheoremViolation(
      "refutation chain completed on a nonzero kernel vector; no such input exists");
}

namespace {

std::vector<int> mask_to_set(unsigned mask, int n) {
  std::vector<int> s;
  for (int e = 0; e < n; ++e)
    if (mask & (1u << e)) s.push_back(e + 1);
  return s;
}

// Maximum-clique search on an explicit adjacency matrix, Tomita-style:
// candidates are greedily colored and visited in decreasing color order, so a
// branch dies as soon as depth + color bound cannot beat the incumbent.
class CliqueSearch {
 public:
  CliqueSearch(const std::vector<std::vector<bool>>& adj, std::uint64_t budget)
      : adj_(adj), budget_(budget) {}

  void run() {
    std::vector<int> all(adj_.size());
    for (std::size_t v = 0; v < adj_.size(); ++v) all[v] = static_cast<int>(v);
    std::vector<int> clique;
    expand(all, clique);
  }

  const std::vector<int>& best() const { return best_; }
  std::uint64_t nodes() const { return nodes_; }
  bool truncated() const { return truncated_; }

 private:
  bool spend() {
    ++nodes_;
    if (nodes_ > budget_) truncated_ = true;
    return !truncated_;
  }

  void expand(const std::vector<int>& candidates, std::vector<int>& clique) {
    if (!spend()) return;
    if (candidates.empty()) {
      if (clique.size() > best_.size()) best_ = clique;
      return;
    }
    // Greedy coloring: color[v] is the 1-based color class index; a clique
    // inside `candidates` has at most max-color vertices.
    std::vector<int> order;
    std::vector<int> color;
    std::vector<std::vector<int>> classes;
    for (int v : candidates) {
      std::size_t c = 0;
      for (; c < classes.size(); ++c) {
        bool clash = false;
        for (int u : classes[c])
          if (adj_[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)]) {
            clash = true;
            break;
          }
        if (!clash) break;
      }
      if (c == classes.size()) classes.emplace_back();
      classes[c].push_back(v);
    }
    for (std::size_t c = 0; c < classes.size(); ++c)
      for (int v : classes[c]) {
        order.push_back(v);
        color.push_back(static_cast<int>(c) + 1);
      }

    std::vector<int> live = candidates;
    for (std::size_t idx = order.size(); idx-- > 0;) {
      if (truncated_) return;
      const int v = order[idx];
      if (clique.size() + static_cast<std::size_t>(color[idx]) <= best_.size()) return;
      std::vector<int> next;
      for (int u : live)
        if (u != v && adj_[static_cast<std::size_t>(v)][static_cast<std::size_t>(u)])
          next.push_back(u);
      clique.push_back(v);
      expand(next, clique);
      clique.pop_back();
      live.erase(std::remove(live.begin(), live.end(), v), live.end());
    }
  }

  const std::vector<std::vector<bool>>& adj_;
  std::uint64_t budget_;
  std::vector<int> best_;
  std::uint64_t nodes_ = 0;
  bool truncated_ = false;
};

// Include-first lexicographic DFS for the first clique of a known size; with
// vertices pre-sorted in set order, the first hit is the lexicographically
// smallest witness as a sorted set list.
class LexWitnessSearch {
 public:
  LexWitnessSearch(const std::vector<std::vector<bool>>& adj, std::size_t target,
                   std::uint64_t budget)
      : adj_(adj), target_(target), budget_(budget) {}

  bool run() {
    std::vector<int> all(adj_.size());
    for (std::size_t v = 0; v < adj_.size(); ++v) all[v] = static_cast<int>(v);
    std::vector<int> clique;
    return descend(all, clique);
  }

  const std::vector<int>& witness() const { return witness_; }
  std::uint64_t nodes() const { return nodes_; }
  bool truncated() const { return truncated_; }

 private:
  bool descend(const std::vector<int>& candidates, std::vector<int>& clique) {
    ++nodes_;
    if (nodes_ > budget_) {
      truncated_ = true;
      return true;
    }
    if (clique.size() == target_) {
      witness_ = clique;
      return true;
    }
    if (clique.size() + candidates.size() < target_) return false;
    for (std::size_t idx = 0; idx < candidates.size(); ++idx) {
      const int v = candidates[idx];
      std::vector<int> next;
      for (std::size_t later = idx + 1; later < candidates.size(); ++later) {
        const int u = candidates[later];
        if (adj_[static_cast<std::size_t>(v)][static_cast<std::size_t>(u)]) next.push_back(u);
      }
      clique.push_back(v);
      if (descend(next, clique)) return true;
      clique.pop_back();
      if (clique.size() + (candidates.size() - idx - 1) < target_) return false;
    }
    return false;
  }

  const std::vector<std::vector<bool>>& adj_;
  std::size_t target_;
  std::uint64_t budget_;
  std::vector<int> witness_;
  std::uint64_t nodes_ = 0;
  bool truncated_ = false;
};

}  // namespace

ExtremalReport enumerate_max_family(int n, int k, std::uint64_t node_budget) {
  if (n < 1 || n > 7) throw InputError("extremal search supports 1 <= n <= 7");
  if (k < 1 || k >= n) throw InputError("extremal search needs 1 <= k < n");

  // Vertices: subsets with at least k elements, sorted by their element lists
  // so clique output order is the family tie-breaking order.
  std::vector<std::vector<int>> sets;
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    if (__builtin_popcount(mask) < k) continue;
    sets.push_back(mask_to_set(mask, n));
  }
  std::sort(sets.begin(), sets.end());

  const std::size_t V = sets.size();
  std::vector<std::vector<bool>> adj(V, std::vector<bool>(V, false));
  for (std::size_t a = 0; a < V; ++a)
    for (std::size_t b = a + 1; b < V; ++b) {
      if (intersection_size(sets[a], sets[b]) == k) {
        adj[a][b] = true;
        adj[b][a] = true;
      }
    }

  ExtremalReport report;
  report.n = n;
  report.k = k;

  CliqueSearch search(adj, node_budget);
  search.run();
  report.nodes_explored = search.nodes();
  std::vector<int> witness_vertices = search.best();
  report.complete = !search.truncated();

  if (report.complete && !witness_vertices.empty()) {
    const std::uint64_t remaining =
        node_budget > search.nodes() ? node_budget - search.nodes() : 0;
    LexWitnessSearch lex(adj, witness_vertices.size(), remaining);
    if (lex.run() && !lex.truncated()) witness_vertices = lex.witness();
    // A truncated tie-break pass keeps the proven-optimal witness from the
    // bounding pass; optimality is unaffected.
    report.nodes_explored += lex.nodes();
  }

  report.max_m = static_cast<int>(witness_vertices.size());
  std::sort(witness_vertices.begin(), witness_vertices.end());
  std::vector<SetFamily::Set> members;
  for (int v : witness_vertices) members.push_back(sets[static_cast<std::size_t>(v)]);
  if (!members.empty()) report.witness = SetFamily(n, std::move(members));
  report.bound_respected = report.max_m <= n;
  return report;
}

}  // namespace fisher
