#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include <doctest.h>

#include "fisherkit/beck_fiala.hpp"
#include "fisherkit/errors.hpp"
#include "fisherkit/set_family.hpp"

using namespace fisher;

namespace {

// Full audit of one rounding run: a total +-1 coloring within the bound,
// progress every round, and dropout records showing each set left the
// dangerous state balanced with at most t members still movable.
void audit(const SetFamily& family, const BeckFialaResult& result) {
  const Index n = family.n();
  REQUIRE(result.coloring.signs.size() == n);
  for (Index j = 0; j < n; ++j)
    CHECK((result.coloring.signs[j] == 1 || result.coloring.signs[j] == -1));

  CHECK(result.t == max_degree(family));
  const Int expected_bound = result.t == 0 ? 0 : 2 * Int(result.t) - 1;
  CHECK(result.bound == expected_bound);
  CHECK(discrepancy_of(family, result.coloring) <= result.bound);

  CHECK(static_cast<Index>(result.rounds.size()) <= n);
  std::set<Index> frozen_once;
  for (const auto& round : result.rounds) {
    CHECK(!round.dangerous.empty());
    CHECK(!round.froze.empty());  // each round pins at least one element
    CHECK(round.step > 0);
    CHECK(round.active_vars > static_cast<Index>(round.dangerous.size()));
    bool moved = false;
    for (Index j = 0; j < round.direction.size(); ++j)
      if (round.direction[j] != 0) moved = true;
    CHECK(moved);
    for (Index e : round.froze) CHECK(frozen_once.insert(e).second);
  }
  for (Index e : result.final_roundings) CHECK(frozen_once.insert(e).second);
  CHECK(static_cast<Index>(frozen_once.size()) == n);

  for (const auto& d : result.dropouts) {
    CHECK(d.sum == 0);
    CHECK(d.unfrozen <= result.t);
  }
}

}  // namespace

TEST_CASE("maximum element degree") {
  CHECK(max_degree(SetFamily(2, {{1}, {2}, {1, 2}})) == 2);
  CHECK(max_degree(gen_projective_plane(2)) == 3);
  CHECK(max_degree(SetFamily(4, {})) == 0);
  CHECK(max_degree(SetFamily(3, {{1, 2, 3}})) == 1);
}

TEST_CASE("discrepancy of a coloring") {
  const SetFamily fano = gen_projective_plane(2);
  Coloring all_plus{IntVector::Ones(7)};
  CHECK(discrepancy_of(fano, all_plus) == 3);

  const SetFamily triangle(3, {{1, 2}, {2, 3}, {1, 3}});
  Coloring c{IntVector(3)};
  c.signs << 1, -1, 1;
  CHECK(discrepancy_of(triangle, c) == 2);

  Coloring short_c{IntVector::Ones(2)};
  CHECK_THROWS_AS(discrepancy_of(triangle, short_c), DimensionMismatch);
  Coloring zeroed{IntVector::Zero(3)};
  CHECK_THROWS_AS(discrepancy_of(triangle, zeroed), InputError);

  CHECK(discrepancy_of(SetFamily(2, {}), Coloring{IntVector::Ones(2)}) == 0);
}

TEST_CASE("triangle family: guarantee versus exhaustive optimum") {
  const SetFamily triangle(3, {{1, 2}, {2, 3}, {1, 3}});

  // Every coloring leaves one doubleton monochromatic, so the exhaustive
  // optimum is exactly 2.
  Int best = 100;
  for (int bits = 0; bits < 8; ++bits) {
    Coloring c{IntVector(3)};
    for (int j = 0; j < 3; ++j) c.signs[j] = (bits >> j) & 1 ? 1 : -1;
    best = std::min(best, discrepancy_of(triangle, c));
  }
  CHECK(best == 2);

  const BeckFialaResult result = beck_fiala_color(triangle);
  audit(triangle, result);
  CHECK(result.t == 2);
  CHECK(result.bound == 3);
  CHECK(discrepancy_of(triangle, result.coloring) >= best);
}

TEST_CASE("rounding walks through dangerous sets") {
  const SetFamily f(5, {{1, 2, 3, 4, 5}, {1, 2}, {3, 4}});
  const BeckFialaResult result = beck_fiala_color(f);
  audit(f, result);
  CHECK(result.t == 2);
  CHECK(!result.rounds.empty());  // the big set starts dangerous

  // Both doubletons were never dangerous, so they must appear as round-1
  // dropouts with balanced sums.
  std::set<Index> dropped;
  for (const auto& d : result.dropouts) dropped.insert(d.set);
  CHECK(dropped.count(1) == 1);
  CHECK(dropped.count(2) == 1);
}

TEST_CASE("two overlapping blocks") {
  const SetFamily f(7, {{1, 2, 3, 4, 5, 6}, {2, 3, 4, 5, 6, 7}});
  const BeckFialaResult result = beck_fiala_color(f);
  audit(f, result);
  CHECK(result.t == 2);
  // Six unfrozen members against t=2 keeps both sets dangerous at the start.
  REQUIRE(!result.rounds.empty());
  CHECK(result.rounds[0].dangerous.size() == 2);
}

TEST_CASE("disjoint even blocks balance exactly") {
  const SetFamily f(4, {{1, 2}, {3, 4}});
  const BeckFialaResult result = beck_fiala_color(f);
  audit(f, result);
  CHECK(result.t == 1);
  CHECK(result.bound == 1);
  // |sum| <= 1 on a set of even size forces a perfect split.
  for (Index i = 0; i < f.size(); ++i) {
    Int sum = 0;
    for (int e : f.set(i)) sum += result.coloring.signs[e - 1];
    CHECK(sum == 0);
  }
}

TEST_CASE("degenerate inputs") {
  const SetFamily single(1, {{1}});
  const BeckFialaResult result = beck_fiala_color(single);
  audit(single, result);
  CHECK(result.rounds.empty());
  CHECK(result.final_roundings.size() == 1);
  CHECK(result.coloring.signs[0] == 1);  // rounding ties point up

  const SetFamily empty(3, {});
  const BeckFialaResult none = beck_fiala_color(empty);
  audit(empty, none);
  CHECK(none.bound == 0);

  CHECK_THROWS_AS(beck_fiala_color(SetFamily(0, {})), InputError);
}

TEST_CASE("exhausted search budget falls back to elimination") {
  const SetFamily f(4, {{1, 2, 3}, {2, 3, 4}});
  BeckFialaOptions opts;
  opts.kernel_node_budget = 1;
  const BeckFialaResult result = beck_fiala_color(f, opts);
  audit(f, result);
  bool fallback_used = false;
  for (const auto& round : result.rounds) fallback_used |= round.used_elimination;
  CHECK(fallback_used);

  // The default budget solves the same instance without the fallback.
  const BeckFialaResult direct = beck_fiala_color(f);
  audit(f, direct);
  for (const auto& round : direct.rounds) CHECK_FALSE(round.used_elimination);
}

TEST_CASE("seeded corpus stays within the guarantee") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 3 + static_cast<int>(rng() % 10);
    const int m = 2 + static_cast<int>(rng() % 4);
    const SetFamily f = gen_random_family(n, m, rng());
    CAPTURE(trial);
    const BeckFialaResult result = beck_fiala_color(f);
    audit(f, result);

    // Pure function: rerunning reproduces the identical coloring.
    const BeckFialaResult again = beck_fiala_color(f);
    CHECK(result.coloring.signs == again.coloring.signs);
  }
}

TEST_CASE("structured families round cleanly") {
  for (int n = 3; n <= 8; ++n) {
    const SetFamily pencil = gen_near_pencil(n);
    audit(pencil, beck_fiala_color(pencil));
  }
  for (int q : {2, 3}) {
    const SetFamily plane = gen_projective_plane(q);
    audit(plane, beck_fiala_color(plane));
  }
  for (int k = 1; k <= 3; ++k) {
    const SetFamily sun = gen_sunflower(9, k, 4, true);
    audit(sun, beck_fiala_color(sun));
  }
}
