#pragma once

#include <cstdint>
#include <optional>

#include <Eigen/Core>

#include "fisherkit/errors.hpp"
#include "fisherkit/types.hpp"

namespace fisher {

// A weight assignment f on the rows with 1 <= f(i) <= s.
struct WeightFunction {
  IntVector values;
  Int range_bound;  // s

  WeightFunction(IntVector v, Int s) : values(std::move(v)), range_bound(s) {
    if (range_bound < 1) throw InputError("weight range bound must be positive");
    for (Index i = 0; i < values.size(); ++i)
      if (values[i] < 1 || values[i] > range_bound)
        throw InputError("weight values must lie in 1..s");
  }
};

// Column sums of X weighted by f: component j is sum_i f(i) * X(i,j).
// Works on any integer vector; the 1..s restriction is the WeightFunction
// overload's concern (differences of weight functions go through here too).
template <class DerivedX, class DerivedF>
Profile compute_profile(const Eigen::MatrixBase<DerivedX>& X,
                        const Eigen::MatrixBase<DerivedF>& f) {
  if (f.size() != X.rows()) throw DimensionMismatch("weight length must equal row count");
  return (X.derived().transpose() * f.derived()).eval();
}

Profile compute_profile(const IntMatrix& X, const WeightFunction& f);

// True iff tau is nonzero and every column equation sum_i tau(i)*X(i,j) = 0
// holds exactly. The zero vector is rejected by value, not by exception.
template <class DerivedX, class DerivedT>
bool verify_kernel(const Eigen::MatrixBase<DerivedX>& X, const Eigen::MatrixBase<DerivedT>& tau) {
  if (tau.size() != X.rows()) throw DimensionMismatch("vector length must equal row count");
  bool nonzero = false;
  for (Index i = 0; i < tau.size(); ++i)
    if (tau(i) != 0) nonzero = true;
  if (!nonzero) return false;
  const auto sums = (X.derived().transpose() * tau.derived()).eval();
  for (Index j = 0; j < sums.size(); ++j)
    if (sums(j) != 0) return false;
  return true;
}

// The counting parameters that force a profile collision: with s = m^n + 1
// there are s^m weight functions but at most (m*s)^n distinct profiles, and
// s^m > (m*s)^n whenever m > n. Each profile component actually ranges over
// {0..m*s}, so the exact tuple count (m*s+1)^n is recorded alongside the
// coarser bound; the strict inequality already holds against the bound.
struct PigeonholeParams {
  Index m = 0;
  Index n = 0;
  BigInt s;
  BigInt function_count;           // s^m
  BigInt profile_bound;            // (m*s)^n
  BigInt profile_count_inclusive;  // (m*s+1)^n
  bool pigeonhole_applies = false;
};

PigeonholeParams pigeonhole_params(Index m, Index n);

// Smallest H >= 1 with (H+1)^m > (m*B*H+1)^n: weight boxes {0..H}^m beat the
// profile count, so some nonzero integer vector with max|tau| <= H lies in
// the left kernel of any m x n integer matrix with entries bounded by B.
struct SiegelBound {
  Index n = 0;
  Index m = 0;
  Int B = 1;
  Int H = 0;
};

// Requires m > n >= 1 and B >= 1. Exact integer search.
SiegelBound siegel_bound(Index n, Index m, Int B);

enum class KernelStrategy {
  // Enumerate weight vectors in {0..h}^m, hash profiles, return a colliding
  // pair's difference.
  BoxCollision,
  // Depth-first over tau in [-h,h]^m with pruning on achievable column sums.
  DfsPruned,
};

struct KernelSearchOptions {
  KernelStrategy strategy = KernelStrategy::BoxCollision;
  // Box radius. Defaults to siegel_bound(n, m, max|X|).H when m > n; required
  // explicitly when m <= n (no existence guarantee there).
  std::optional<Int> max_coeff;
  // Cap on enumeration nodes; absent means unbounded.
  std::optional<std::uint64_t> node_budget;
  // When set, the whole first successful radius is enumerated and the
  // canonical minimum under (max-abs-entry, entrywise lexicographic) is
  // returned, making the answer independent of strategy. Otherwise the first
  // hit in a fixed enumeration order is returned (still stable across reruns,
  // but strategy-specific).
  bool deterministic = false;
};

struct KernelSearchResult {
  enum class Status { Found, NotFound, BudgetTruncated };
  Status status = Status::NotFound;
  std::optional<KernelVector> tau;
  // Box radius requested for the search.
  Int box = 0;
  // Radii 1..exhausted_up_to were fully enumerated; with status NotFound this
  // equals box and certifies that no kernel vector with max|tau| <= box
  // exists. BudgetTruncated leaves it at the last completed radius.
  Int exhausted_up_to = 0;
  std::uint64_t nodes = 0;
  KernelStrategy strategy = KernelStrategy::BoxCollision;
  bool deterministic = false;
};

// Searches radii h = 1, 2, ... up to the box for a nonzero integer tau with
// tau^T X = 0. Either strategy is complete per radius: a kernel vector with
// max|tau| <= h splits as the difference of two weight vectors in {0..h}^m,
// so the collision table finds one exactly when the DFS does. On success tau
// is sign-normalized (first nonzero entry positive) and max|tau| <= box.
KernelSearchResult find_left_kernel_vector(const IntMatrix& X,
                                           const KernelSearchOptions& opts = {});

}  // namespace fisher
