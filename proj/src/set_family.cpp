#include "fisherkit/set_family.hpp"

#include <algorithm>
#include <array>
#include <iterator>
#include <random>
#include <set>
#include <string>

#include "fisherkit/errors.hpp"

namespace fisher {

SetFamily::SetFamily(int n, std::vector<Set> sets) : n_(n), sets_(std::move(sets)) {
  if (n_ < 0) throw InputError("ground-set size must be nonnegative");
  for (auto& s : sets_) {
    if (s.empty()) throw InputError("empty sets are not allowed");
    std::sort(s.begin(), s.end());
    for (std::size_t t = 0; t < s.size(); ++t) {
      if (s[t] < 1 || s[t] > n_)
        throw InputError("element " + std::to_string(s[t]) + " outside 1.." + std::to_string(n_));
      if (t > 0 && s[t] == s[t - 1])
        throw InputError("repeated element " + std::to_string(s[t]) + " within a set");
    }
  }
  for (std::size_t i = 0; i < sets_.size(); ++i)
    for (std::size_t j = i + 1; j < sets_.size(); ++j)
      if (sets_[i] == sets_[j])
        throw InputError("sets " + std::to_string(i + 1) + " and " + std::to_string(j + 1) +
                         " are equal; members must be pairwise distinct");
}

int intersection_size(const SetFamily::Set& a, const SetFamily::Set& b) {
  int count = 0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] < b[j])
      ++i;
    else if (a[i] > b[j])
      ++j;
    else {
      ++count;
      ++i;
      ++j;
    }
  }
  return count;
}

IncidenceMatrix build_incidence(const SetFamily& family) {
  IncidenceMatrix X = IncidenceMatrix::Zero(family.size(), family.n());
  for (Index i = 0; i < family.size(); ++i)
    for (int e : family.set(i)) X(i, e - 1) = 1;
  return X;
}

SetFamily family_from_incidence(const IntMatrix& X) {
  std::vector<SetFamily::Set> sets;
  sets.reserve(static_cast<std::size_t>(X.rows()));
  for (Index i = 0; i < X.rows(); ++i) {
    SetFamily::Set s;
    for (Index j = 0; j < X.cols(); ++j) {
      if (X(i, j) != 0 && X(i, j) != 1) throw InputError("incidence entries must be 0 or 1");
      if (X(i, j) == 1) s.push_back(static_cast<int>(j) + 1);
    }
    sets.push_back(std::move(s));
  }
  return SetFamily(static_cast<int>(X.cols()), std::move(sets));
}

IntersectionReport check_k_intersecting(const SetFamily& family) {
  IntersectionReport report;
  const Index m = family.size();
  if (m <= 1) {
    report.is_k_intersecting = true;
    return report;
  }
  const int expected = intersection_size(family.set(0), family.set(1));
  for (Index i = 0; i < m; ++i) {
    for (Index j = i + 1; j < m; ++j) {
      const int found = intersection_size(family.set(i), family.set(j));
      if (found != expected) {
        report.violation = IntersectionReport::Violation{i + 1, j + 1, expected, found};
        return report;
      }
    }
  }
  report.is_k_intersecting = true;
  report.k_defined = true;
  report.k = expected;
  return report;
}

ReductionReport reduce_small_set(const SetFamily& family, int k) {
  if (k <= 0) throw HypothesisViolated("intersection size k must be positive");
  const auto check = check_k_intersecting(family);
  if (!check.is_k_intersecting || (check.k_defined && check.k != k))
    throw HypothesisViolated("family is not " + std::to_string(k) + "-intersecting");

  const Index m = family.size();
  Index small = -1;
  for (Index i = 0; i < m; ++i) {
    if (static_cast<int>(family.set(i).size()) == k) {
      small = i;
      break;
    }
  }
  if (small < 0) throw NoSmallSet("no member has size exactly " + std::to_string(k));

  // Every other member B meets the size-k set A in k elements, so A is
  // contained in B exactly when the family hypothesis holds; the leftovers
  // B \ A must then be pairwise disjoint, which packs them into the n - k
  // elements outside A and yields m <= n - k + 1.
  const auto& A = family.set(small);
  ReductionReport report;
  report.small_set_index = small + 1;
  report.containment_ok = true;
  report.disjoint_ok = true;
  for (Index i = 0; i < m; ++i) {
    if (i == small) continue;
    const auto& B = family.set(i);
    if (intersection_size(A, B) != static_cast<int>(A.size())) report.containment_ok = false;
    SetFamily::Set residue;
    std::set_difference(B.begin(), B.end(), A.begin(), A.end(), std::back_inserter(residue));
    if (residue.empty()) report.disjoint_ok = false;
    report.residues.push_back(std::move(residue));
  }
  for (std::size_t i = 0; i < report.residues.size() && report.disjoint_ok; ++i)
    for (std::size_t j = i + 1; j < report.residues.size() && report.disjoint_ok; ++j)
      if (intersection_size(report.residues[i], report.residues[j]) != 0)
        report.disjoint_ok = false;

  report.derived_bound = family.n() - k + 1;
  report.bound_ok = m <= report.derived_bound;
  return report;
}

SetFamily gen_near_pencil(int n) {
  if (n < 3) throw InputError("near-pencil needs n >= 3");
  std::vector<SetFamily::Set> sets;
  for (int i = 2; i <= n; ++i) sets.push_back({1, i});
  SetFamily::Set rest;
  for (int i = 2; i <= n; ++i) rest.push_back(i);
  sets.push_back(std::move(rest));
  return SetFamily(n, std::move(sets));
}

namespace {

bool is_prime(int q) {
  if (q < 2) return false;
  for (int d = 2; d * d <= q; ++d)
    if (q % d == 0) return false;
  return true;
}

}  // namespace

SetFamily gen_projective_plane(int q) {
  if (!is_prime(q)) throw NonPrimeOrder("plane order must be prime, got " + std::to_string(q));

  // Canonical homogeneous triples over F_q, first nonzero coordinate 1:
  // q^2 of the form (1,y,z), q of the form (0,1,z), plus (0,0,1).
  std::vector<std::array<int, 3>> triples;
  for (int y = 0; y < q; ++y)
    for (int z = 0; z < q; ++z) triples.push_back({1, y, z});
  for (int z = 0; z < q; ++z) triples.push_back({0, 1, z});
  triples.push_back({0, 0, 1});

  const int N = q * q + q + 1;
  std::vector<SetFamily::Set> lines;
  lines.reserve(static_cast<std::size_t>(N));
  for (const auto& line : triples) {
    SetFamily::Set pts;
    for (int p = 0; p < N; ++p) {
      const auto& pt = triples[static_cast<std::size_t>(p)];
      const int dot = line[0] * pt[0] + line[1] * pt[1] + line[2] * pt[2];
      if (dot % q == 0) pts.push_back(p + 1);
    }
    lines.push_back(std::move(pts));
  }
  return SetFamily(N, std::move(lines));
}

SetFamily gen_sunflower(int n, int k, int m, bool include_core) {
  if (k < 1 || k >= n) throw InputError("sunflower needs 1 <= k < n");
  if (m < 0) throw InputError("sunflower size must be nonnegative");
  const int cap = include_core ? n - k + 1 : n - k;
  if (m > cap)
    throw CapacityExceeded("sunflower size " + std::to_string(m) + " exceeds capacity " +
                           std::to_string(cap));
  SetFamily::Set core;
  for (int e = 1; e <= k; ++e) core.push_back(e);

  std::vector<SetFamily::Set> sets;
  int petals = m;
  if (include_core) {
    if (m == 0) throw InputError("cannot include the core in an empty family");
    sets.push_back(core);
    petals = m - 1;
  }
  for (int i = 1; i <= petals; ++i) {
    SetFamily::Set petal = core;
    petal.push_back(k + i);
    sets.push_back(std::move(petal));
  }
  return SetFamily(n, std::move(sets));
}

SetFamily gen_random_family(int n, int m, std::uint64_t seed) {
  if (n < 1 || n > 62) throw InputError("random family needs 1 <= n <= 62");
  if (m < 0) throw InputError("family size must be nonnegative");
  const std::uint64_t capacity = (std::uint64_t{1} << n) - 1;
  if (static_cast<std::uint64_t>(m) > capacity)
    throw CapacityExceeded("only " + std::to_string(capacity) + " nonempty subsets exist");

  // Draw n-bit masks from mt19937_64, rejecting zero and repeats. Each
  // acceptance is uniform over the subsets not yet chosen, so the family is a
  // uniform sample without replacement, ordered by first acceptance.
  std::mt19937_64 rng(seed);
  const std::uint64_t mask = capacity;
  std::vector<SetFamily::Set> sets;
  std::set<std::uint64_t> seen;
  while (sets.size() < static_cast<std::size_t>(m)) {
    const std::uint64_t bits = rng() & mask;
    if (bits == 0 || !seen.insert(bits).second) continue;
    SetFamily::Set s;
    for (int e = 0; e < n; ++e)
      if (bits & (std::uint64_t{1} << e)) s.push_back(e + 1);
    sets.push_back(std::move(s));
  }
  return SetFamily(n, std::move(sets));
}

}  // namespace fisher
