#include "fisherkit/kernel.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <limits>
#include <string>
#include <unordered_map>
#include <vector>

namespace fisher {

Profile compute_profile(const IntMatrix& X, const WeightFunction& f) {
  return compute_profile(X, f.values);
}

namespace {

BigInt big_pow(BigInt base, Index exp) {
  return boost::multiprecision::pow(base, static_cast<unsigned>(exp));
}

}  // namespace

PigeonholeParams pigeonhole_params(Index m, Index n) {
  if (m < 1 || n < 1) throw InputError("pigeonhole parameters need m >= 1 and n >= 1");
  PigeonholeParams p;
  p.m = m;
  p.n = n;
  p.s = big_pow(BigInt(m), n) + 1;
  p.function_count = big_pow(p.s, m);
  p.profile_bound = big_pow(BigInt(m) * p.s, n);
  p.profile_count_inclusive = big_pow(BigInt(m) * p.s + 1, n);
  p.pigeonhole_applies = p.function_count > p.profile_bound;
  return p;
}

namespace {

bool siegel_holds(Index n, Index m, Int B, Int H) {
  const BigInt lhs = big_pow(BigInt(H) + 1, m);
  const BigInt rhs = big_pow(BigInt(m) * B * H + 1, n);
  return lhs > rhs;
}

}  // namespace

SiegelBound siegel_bound(Index n, Index m, Int B) {
  if (n < 1 || m <= n) throw InputError("Siegel bound needs m > n >= 1");
  if (B < 1) throw InputError("coefficient bound B must be positive");

  // The ratio (H+1)^m / (m*B*H+1)^n equals 1 at H = 0 and is unimodal in H,
  // so the integers satisfying the strict inequality form a final segment:
  // once a satisfying H is bracketed by doubling, binary search finds the
  // smallest one.
  Int hi = 1;
  while (!siegel_holds(n, m, B, hi)) {
    if (hi > (std::numeric_limits<Int>::max() >> 1)) throw InputError("Siegel bound overflow");
    hi *= 2;
  }
  Int lo = hi / 2;  // lo = 0 when hi = 1; invariant: lo fails or is 0
  while (lo + 1 < hi) {
    const Int mid = lo + (hi - lo) / 2;
    if (siegel_holds(n, m, B, mid))
      hi = mid;
    else
      lo = mid;
  }
  SiegelBound b;
  b.n = n;
  b.m = m;
  b.B = B;
  b.H = hi;
  return b;
}

namespace {

void normalize_sign(std::vector<Int>& tau) {
  for (Int v : tau) {
    if (v > 0) return;
    if (v < 0) break;
  }
  for (Int& v : tau) v = -v;
}

// Order used for canonical selection: smaller maximum magnitude first, then
// entrywise lexicographic.
bool canonical_less(const std::vector<Int>& a, const std::vector<Int>& b) {
  Int ma = 0, mb = 0;
  for (Int v : a) ma = std::max(ma, std::abs(v));
  for (Int v : b) mb = std::max(mb, std::abs(v));
  if (ma != mb) return ma < mb;
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

struct ProfileHash {
  std::size_t operator()(const std::vector<Int>& p) const {
    std::uint64_t h = 14695981039346656037ull;
    for (Int v : p) {
      std::uint64_t u = static_cast<std::uint64_t>(v);
      for (int b = 0; b < 8; ++b) {
        h ^= (u >> (8 * b)) & 0xffu;
        h *= 1099511628211ull;
      }
    }
    return static_cast<std::size_t>(h);
  }
};

class SearchBudget {
 public:
  explicit SearchBudget(std::optional<std::uint64_t> cap) : cap_(cap) {}

  // Returns false once the cap is crossed.
  bool spend(std::uint64_t amount = 1) {
    nodes_ += amount;
    return !cap_ || nodes_ <= *cap_;
  }
  std::uint64_t nodes() const { return nodes_; }

 private:
  std::optional<std::uint64_t> cap_;
  std::uint64_t nodes_ = 0;
};

struct LevelOutcome {
  bool budget_hit = false;
  std::optional<std::vector<Int>> tau;
};

// One radius of the collision strategy: every f in {0..h}^m in lexicographic
// order, profiles hashed. Nondeterministic mode returns the first colliding
// difference; deterministic mode keeps whole buckets and minimizes f - g over
// all colliding pairs, which enumerates exactly the nonzero kernel vectors
// with max|tau| <= h (tau splits as tau+ minus tau-, both inside the box).
LevelOutcome box_collision_level(const IntMatrix& X, Int h, bool deterministic,
                                 SearchBudget& budget) {
  const Index m = X.rows();
  const Index n = X.cols();
  LevelOutcome out;

  std::vector<Int> f(static_cast<std::size_t>(m), 0);
  std::vector<Int> profile(static_cast<std::size_t>(n), 0);
  std::optional<std::vector<Int>> best;

  std::unordered_map<std::vector<Int>, std::vector<std::vector<Int>>, ProfileHash> table;

  bool done = false;
  while (!done) {
    if (!budget.spend()) {
      out.budget_hit = true;
      return out;
    }
    for (Index j = 0; j < n; ++j) {
      Int c = 0;
      for (Index i = 0; i < m; ++i) c += f[static_cast<std::size_t>(i)] * X(i, j);
      profile[static_cast<std::size_t>(j)] = c;
    }
    auto& bucket = table[profile];
    for (const auto& g : bucket) {
      if (!budget.spend()) {
        out.budget_hit = true;
        return out;
      }
      std::vector<Int> tau(static_cast<std::size_t>(m));
      for (Index i = 0; i < m; ++i)
        tau[static_cast<std::size_t>(i)] =
            f[static_cast<std::size_t>(i)] - g[static_cast<std::size_t>(i)];
      // f follows g in lexicographic order, so the first nonzero entry of
      // f - g is already positive.
      if (!deterministic) {
        out.tau = std::move(tau);
        return out;
      }
      if (!best || canonical_less(tau, *best)) best = std::move(tau);
    }
    if (deterministic || bucket.empty()) bucket.push_back(f);

    // Odometer step, last position fastest: lexicographic ascent.
    done = true;
    for (Index i = m - 1; i >= 0; --i) {
      auto& v = f[static_cast<std::size_t>(i)];
      if (v < h) {
        ++v;
        std::fill(f.begin() + i + 1, f.end(), 0);
        done = false;
        break;
      }
    }
  }
  out.tau = std::move(best);
  return out;
}

// One radius of the DFS strategy: assign tau(0..m-1) in order from -h to h,
// tracking partial column sums, pruning a branch when some partial sum
// already exceeds what the remaining rows can cancel.
class DfsLevel {
 public:
  DfsLevel(const IntMatrix& X, Int h, bool deterministic, SearchBudget& budget)
      : X_(X), h_(h), deterministic_(deterministic), budget_(budget) {
    const Index m = X.rows();
    const Index n = X.cols();
    // suffix_(i, j) = sum over rows i..m-1 of |X(row, j)|; a partial sum j
    // with |sum| > h * suffix_(i, j) can never return to zero.
    suffix_ = IntMatrix::Zero(m + 1, n);
    for (Index i = m - 1; i >= 0; --i)
      for (Index j = 0; j < n; ++j) suffix_(i, j) = suffix_(i + 1, j) + std::abs(X(i, j));
  }

  LevelOutcome run() {
    tau_.assign(static_cast<std::size_t>(X_.rows()), 0);
    sums_.assign(static_cast<std::size_t>(X_.cols()), 0);
    descend(0, true);
    LevelOutcome out;
    out.budget_hit = budget_hit_;
    if (!budget_hit_) out.tau = std::move(best_);
    return out;
  }

 private:
  // Returns false to unwind the whole search (found in nondeterministic mode,
  // or budget exhausted).
  bool descend(Index depth, bool all_zero) {
    if (depth == X_.rows()) {
      if (all_zero) return true;
      for (Int s : sums_)
        if (s != 0) return true;
      std::vector<Int> tau = tau_;
      normalize_sign(tau);
      if (!deterministic_) {
        best_ = std::move(tau);
        return false;
      }
      if (!best_ || canonical_less(tau, *best_)) best_ = std::move(tau);
      return true;
    }
    for (Int v = -h_; v <= h_; ++v) {
      if (!budget_.spend()) {
        budget_hit_ = true;
        return false;
      }
      bool feasible = true;
      for (Index j = 0; j < X_.cols(); ++j) {
        const Int s = sums_[static_cast<std::size_t>(j)] + v * X_(depth, j);
        if (std::abs(s) > h_ * suffix_(depth + 1, j)) {
          feasible = false;
          break;
        }
      }
      if (!feasible) continue;
      tau_[static_cast<std::size_t>(depth)] = v;
      for (Index j = 0; j < X_.cols(); ++j) sums_[static_cast<std::size_t>(j)] += v * X_(depth, j);
      const bool keep_going = descend(depth + 1, all_zero && v == 0);
      for (Index j = 0; j < X_.cols(); ++j) sums_[static_cast<std::size_t>(j)] -= v * X_(depth, j);
      if (!keep_going) return false;
    }
    tau_[static_cast<std::size_t>(depth)] = 0;
    return true;
  }

  const IntMatrix& X_;
  Int h_;
  bool deterministic_;
  SearchBudget& budget_;
  IntMatrix suffix_;
  std::vector<Int> tau_;
  std::vector<Int> sums_;
  std::optional<std::vector<Int>> best_;
  bool budget_hit_ = false;
};

}  // namespace

KernelSearchResult find_left_kernel_vector(const IntMatrix& X, const KernelSearchOptions& opts) {
  const Index m = X.rows();
  const Index n = X.cols();
  if (m < 0 || n < 0) throw InputError("matrix dimensions must be nonnegative");

  Int box;
  if (opts.max_coeff) {
    box = *opts.max_coeff;
    if (box < 1) throw InputError("box radius must be at least 1");
  } else {
    if (m <= n)
      throw InputError("max_coeff is required when m <= n (no existence guarantee)");
    Int B = 1;
    for (Index i = 0; i < m; ++i)
      for (Index j = 0; j < n; ++j) B = std::max(B, std::abs(X(i, j)));
    box = siegel_bound(n, m, B).H;
  }

  KernelSearchResult result;
  result.box = box;
  result.strategy = opts.strategy;
  result.deterministic = opts.deterministic;

  // Guard the 64-bit profile arithmetic: partial sums are bounded by
  // m * h * max|X|.
  BigInt entry_bound = 0;
  for (Index i = 0; i < m; ++i)
    for (Index j = 0; j < n; ++j)
      entry_bound = std::max(entry_bound, BigInt(std::abs(X(i, j))));
  if (BigInt(m) * box * entry_bound > (std::numeric_limits<Int>::max() >> 2))
    throw InputError("box radius too large for 64-bit profile sums");

  SearchBudget budget(opts.node_budget);
  for (Int h = 1; h <= box; ++h) {
    LevelOutcome out;
    if (opts.strategy == KernelStrategy::BoxCollision) {
      out = box_collision_level(X, h, opts.deterministic, budget);
    } else {
      DfsLevel dfs(X, h, opts.deterministic, budget);
      out = dfs.run();
    }
    result.nodes = budget.nodes();
    if (out.budget_hit) {
      result.status = KernelSearchResult::Status::BudgetTruncated;
      return result;
    }
    if (out.tau) {
      result.status = KernelSearchResult::Status::Found;
      KernelVector tau(m);
      for (Index i = 0; i < m; ++i) tau[i] = (*out.tau)[static_cast<std::size_t>(i)];
      result.tau = std::move(tau);
      return result;
    }
    result.exhausted_up_to = h;
  }
  result.status = KernelSearchResult::Status::NotFound;
  return result;
}

}  // namespace fisher
