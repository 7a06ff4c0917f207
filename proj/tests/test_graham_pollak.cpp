#include <utility>
#include <vector>

#include <doctest.h>

#include "fisherkit/errors.hpp"
#include "fisherkit/graham_pollak.hpp"

using namespace fisher;

namespace {

BicliquePartition make(int n, std::vector<Biclique> parts) {
  BicliquePartition p;
  p.n = n;
  p.parts = std::move(parts);
  return p;
}

}  // namespace

TEST_CASE("partition verification on hand instances") {
  // Valid two-part cover of the triangle.
  const auto tri = make(3, {Biclique{{1}, {2, 3}}, Biclique{{2}, {3}}});
  CHECK(verify_biclique_partition(tri).ok);

  // Valid non-star cover of K4: one 2x2 block plus two single edges.
  const auto block = make(4, {Biclique{{1, 2}, {3, 4}}, Biclique{{1}, {2}}, Biclique{{3}, {4}}});
  CHECK(verify_biclique_partition(block).ok);

  // Dropping a part leaves the lexicographically first missing pair {2,3}.
  const auto missing = make(3, {Biclique{{1}, {2, 3}}});
  const PartitionCheck uncovered = verify_biclique_partition(missing);
  CHECK_FALSE(uncovered.ok);
  REQUIRE(uncovered.violation.has_value());
  CHECK(uncovered.violation->u == 2);
  CHECK(uncovered.violation->v == 3);
  CHECK(uncovered.violation->kind == PartitionCheck::Kind::Uncovered);

  // Two stars sharing the edge {1,2}.
  const auto doubled = make(3, {Biclique{{1}, {2, 3}}, Biclique{{2}, {1, 3}}});
  const PartitionCheck twice = verify_biclique_partition(doubled);
  CHECK_FALSE(twice.ok);
  REQUIRE(twice.violation.has_value());
  CHECK(twice.violation->u == 1);
  CHECK(twice.violation->v == 2);
  CHECK(twice.violation->kind == PartitionCheck::Kind::CoveredTwice);

  // n = 1 has no pairs, so the empty partition is vacuously complete.
  CHECK(verify_biclique_partition(make(1, {})).ok);
}

TEST_CASE("partition validation rejects malformed parts") {
  CHECK_THROWS_AS(validate_partition(make(-1, {})), InputError);
  CHECK_THROWS_AS(validate_partition(make(3, {Biclique{{}, {2}}})), InputError);
  CHECK_THROWS_AS(validate_partition(make(3, {Biclique{{1}, {}}})), InputError);
  CHECK_THROWS_AS(validate_partition(make(3, {Biclique{{1}, {4}}})), InputError);
  CHECK_THROWS_AS(validate_partition(make(3, {Biclique{{0}, {2}}})), InputError);
  CHECK_THROWS_AS(validate_partition(make(3, {Biclique{{1, 1}, {2}}})), InputError);
  CHECK_THROWS_AS(validate_partition(make(3, {Biclique{{2, 1}, {3}}})), InputError);
  CHECK_THROWS_AS(validate_partition(make(3, {Biclique{{1, 2}, {2, 3}}})), InputError);
  CHECK_NOTHROW(validate_partition(make(3, {Biclique{{1}, {2}}})));
}

TEST_CASE("star decomposition uses n-1 parts for every n") {
  for (int n = 2; n <= 12; ++n) {
    const BicliquePartition p = star_partition(n);
    CHECK(p.n == n);
    CHECK(static_cast<int>(p.parts.size()) == n - 1);
    CHECK(verify_biclique_partition(p).ok);
    // Part i is the star at vertex i over the later vertices.
    for (int i = 1; i < n; ++i) {
      const Biclique& part = p.parts[static_cast<std::size_t>(i - 1)];
      CHECK(part.left == std::vector<int>{i});
      CHECK(static_cast<int>(part.right.size()) == n - i);
    }
  }
  CHECK_THROWS_AS(star_partition(1), InputError);
  CHECK_THROWS_AS(star_partition(0), InputError);
}

TEST_CASE("no single biclique covers a triangle") {
  // Independent enumeration: every disjoint nonempty pair of subsets of
  // {1,2,3} misses at least one of the three edges. This pins the n=3
  // minimum at 2 without trusting the solver under test.
  bool some_single_cover = false;
  for (unsigned left = 1; left < 8; ++left)
    for (unsigned right = 1; right < 8; ++right) {
      if (left & right) continue;
      auto covered = [&](int u, int v) {
        const unsigned ub = 1u << (u - 1), vb = 1u << (v - 1);
        return ((left & ub) && (right & vb)) || ((left & vb) && (right & ub));
      };
      if (covered(1, 2) && covered(1, 3) && covered(2, 3)) some_single_cover = true;
    }
  CHECK_FALSE(some_single_cover);
}

TEST_CASE("exhaustive minimum matches n-1") {
  CHECK(min_partition_bruteforce(2) == 1);
  CHECK(min_partition_bruteforce(3) == 2);
  CHECK(min_partition_bruteforce(4) == 3);
  CHECK_THROWS_AS(min_partition_bruteforce(1), InputError);
  CHECK_THROWS_AS(min_partition_bruteforce(5), InputError);
}
