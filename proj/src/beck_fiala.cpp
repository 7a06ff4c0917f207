#include "fisherkit/beck_fiala.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "fisherkit/elimination.hpp"
#include "fisherkit/errors.hpp"
#include "fisherkit/kernel.hpp"

namespace fisher {

int max_degree(const SetFamily& family) {
  std::vector<int> degree(static_cast<std::size_t>(family.n()), 0);
  int t = 0;
  for (Index i = 0; i < family.size(); ++i)
    for (int e : family.set(i)) t = std::max(t, ++degree[static_cast<std::size_t>(e - 1)]);
  return t;
}

Int discrepancy_of(const SetFamily& family, const Coloring& coloring) {
  if (coloring.signs.size() != family.n())
    throw DimensionMismatch("coloring length must equal the ground-set size");
  for (Index j = 0; j < coloring.signs.size(); ++j)
    if (coloring.signs[j] != 1 && coloring.signs[j] != -1)
      throw InputError("coloring entries must be +1 or -1");
  Int worst = 0;
  for (Index i = 0; i < family.size(); ++i) {
    Int sum = 0;
    for (int e : family.set(i)) sum += coloring.signs[e - 1];
    worst = std::max(worst, std::abs(sum));
  }
  return worst;
}

namespace {

Rational exact_set_sum(const SetFamily& family, Index i, const RationalVector& values) {
  Rational sum = 0;
  for (int e : family.set(i)) sum += values[e - 1];
  return sum;
}

// Direction toward the row kernel of the dangerous-set incidence: a nonzero
// integer vector d on the active variables with zero sum inside every
// dangerous set. The counting search runs first; past its node budget the
// exact elimination takes over.
BigIntVector kernel_direction(const IntMatrix& incidence, std::uint64_t node_budget,
                              bool& used_elimination) {
  // Row kernel of A = left kernel of A^T.
  const IntMatrix transposed = incidence.transpose();
  KernelSearchOptions opts;
  opts.strategy = KernelStrategy::DfsPruned;
  opts.node_budget = node_budget;
  const KernelSearchResult result = find_left_kernel_vector(transposed, opts);
  if (result.status == KernelSearchResult::Status::Found) {
    used_elimination = false;
    BigIntVector d(result.tau->size());
    for (Index i = 0; i < result.tau->size(); ++i) d[i] = (*result.tau)[i];
    return d;
  }
  if (result.status == KernelSearchResult::Status::NotFound)
    throw std::logic_error("exhaustive box search missed a guaranteed kernel direction");
  used_elimination = true;
  const auto d = left_kernel_by_elimination(transposed);
  if (!d) throw std::logic_error("elimination found no direction for an underdetermined system");
  return *d;
}

}  // namespace

BeckFialaResult beck_fiala_color(const SetFamily& family, const BeckFialaOptions& opts) {
  const Index n = family.n();
  const Index m = family.size();
  if (n < 1) throw InputError("coloring needs a nonempty ground set");
  const int t = max_degree(family);

  BeckFialaResult result;
  result.t = t;
  // 2t-1, except that a family with no sets (t = 0) trivially has
  // discrepancy 0, not -1.
  result.bound = t == 0 ? 0 : 2 * Int(t) - 1;

  RationalVector values = RationalVector::Zero(n);
  std::vector<bool> frozen(static_cast<std::size_t>(n), false);
  std::vector<bool> dropped(static_cast<std::size_t>(m), false);

  auto unfrozen_count = [&](Index i) {
    Index count = 0;
    for (int e : family.set(i))
      if (!frozen[static_cast<std::size_t>(e - 1)]) ++count;
    return count;
  };

  Index round = 0;
  while (true) {
    std::vector<Index> dangerous;
    for (Index i = 0; i < m; ++i) {
      const Index active = unfrozen_count(i);
      if (active > t) {
        dangerous.push_back(i);
      } else if (!dropped[static_cast<std::size_t>(i)]) {
        result.dropouts.push_back(DropoutRecord{i, round, exact_set_sum(family, i, values), active});
        dropped[static_cast<std::size_t>(i)] = true;
      }
    }
    if (dangerous.empty()) break;
    if (round > n)
      throw std::logic_error("rounding failed to terminate within n rounds");

    // Active variables: unfrozen elements of some dangerous set. Each
    // dangerous set has more than t of them and each element lies in at most
    // t sets, so there are strictly more variables than constraints.
    std::vector<Index> active_vars;
    {
      std::vector<bool> seen(static_cast<std::size_t>(n), false);
      for (Index i : dangerous)
        for (int e : family.set(i)) {
          const auto j = static_cast<std::size_t>(e - 1);
          if (!frozen[j] && !seen[j]) {
            seen[j] = true;
            active_vars.push_back(static_cast<Index>(j));
          }
        }
      std::sort(active_vars.begin(), active_vars.end());
    }
    if (active_vars.size() <= dangerous.size())
      throw std::logic_error("degree counting failed: constraints are not outnumbered");

    IntMatrix incidence = IntMatrix::Zero(static_cast<Index>(dangerous.size()),
                                          static_cast<Index>(active_vars.size()));
    for (std::size_t r = 0; r < dangerous.size(); ++r)
      for (std::size_t c = 0; c < active_vars.size(); ++c) {
        const auto& s = family.set(dangerous[r]);
        const int element = static_cast<int>(active_vars[c]) + 1;
        if (std::binary_search(s.begin(), s.end(), element))
          incidence(static_cast<Index>(r), static_cast<Index>(c)) = 1;
      }

    bool used_elimination = false;
    const BigIntVector d_active =
        kernel_direction(incidence, opts.kernel_node_budget, used_elimination);

    BigIntVector direction = BigIntVector::Zero(n);
    for (std::size_t c = 0; c < active_vars.size(); ++c)
      direction[active_vars[c]] = d_active[static_cast<Index>(c)];

    // Largest step keeping every value inside [-1,1], for both orientations;
    // pick the one whose first variable to freeze has the smaller index,
    // preferring the positive orientation on a tie.
    struct Orientation {
      Rational step;
      std::vector<Index> froze;
    };
    auto measure = [&](int sign) {
      Orientation o;
      bool first = true;
      for (Index j = 0; j < n; ++j) {
        if (direction[j] == 0) continue;
        BigInt move = direction[j];
        if (sign < 0) move = -move;
        const Rational room = move > 0 ? Rational(1) - values[j] : values[j] + Rational(1);
        BigInt magnitude = move;
        if (magnitude < 0) magnitude = -magnitude;
        const Rational limit = room / Rational(magnitude);
        if (first || limit < o.step) {
          o.step = limit;
          o.froze.clear();
          first = false;
        }
        if (limit == o.step) o.froze.push_back(j);
      }
      return o;
    };
    const Orientation plus = measure(+1);
    const Orientation minus = measure(-1);
    const bool take_plus = plus.froze.front() <= minus.froze.front();
    const Orientation& chosen = take_plus ? plus : minus;
    const int sign = take_plus ? +1 : -1;

    RoundLog log;
    log.round = round;
    log.dangerous = dangerous;
    log.active_vars = static_cast<Index>(active_vars.size());
    log.used_elimination = used_elimination;
    log.direction = sign > 0 ? direction : BigIntVector(-direction);
    log.step = chosen.step;

    for (Index j = 0; j < n; ++j) {
      if (direction[j] == 0) continue;
      BigInt move = direction[j];
      if (sign < 0) move = -move;
      values[j] += chosen.step * Rational(move);
      if (values[j] == 1 || values[j] == -1) {
        frozen[static_cast<std::size_t>(j)] = true;
        log.froze.push_back(j);
      } else if (values[j] > 1 || values[j] < -1) {
        throw std::logic_error("rounding step left the unit box");
      }
    }
    if (log.froze.empty()) throw std::logic_error("a rounding step must freeze a variable");
    result.rounds.push_back(std::move(log));
    ++round;
  }

  // No set is dangerous any more; each leftover fractional value moves by
  // strictly less than 2 when snapped to a sign, nearest first, ties to +1.
  result.coloring.signs = IntVector::Zero(n);
  for (Index j = 0; j < n; ++j) {
    if (frozen[static_cast<std::size_t>(j)]) {
      result.coloring.signs[j] = values[j] == 1 ? 1 : -1;
    } else {
      result.coloring.signs[j] = values[j] >= 0 ? 1 : -1;
      result.final_roundings.push_back(j);
    }
  }
  return result;
}

}  // namespace fisher
