#include "ebits/young.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <utility>

#include "ebits/errors.hpp"

namespace ebits {

namespace {

void extend(std::vector<Partition>& out, Partition& prefix, int left, int cap, int max_rows) {
  if (left == 0) {
    out.push_back(prefix);
    return;
  }
  if (static_cast<int>(prefix.size()) == max_rows) return;
  for (int part = std::min(left, cap); part >= 1; --part) {
    prefix.push_back(part);
    extend(out, prefix, left - part, part, max_rows);
    prefix.pop_back();
  }
}

// First-column beta numbers lambda_i + (L - 1 - i).
std::vector<int> beta_set(const Partition& lambda) {
  const int len = static_cast<int>(lambda.size());
  std::vector<int> beta(lambda.size());
  for (int i = 0; i < len; ++i) beta[static_cast<std::size_t>(i)] = lambda[static_cast<std::size_t>(i)] + len - 1 - i;
  return beta;
}

Partition from_beta(std::vector<int> beta) {
  std::sort(beta.begin(), beta.end(), std::greater<>());
  const int len = static_cast<int>(beta.size());
  Partition out;
  for (int i = 0; i < len; ++i) {
    const int part = beta[static_cast<std::size_t>(i)] - (len - 1 - i);
    if (part > 0) out.push_back(part);
  }
  return out;
}

std::int64_t mn_recursive(const Partition& lambda, const CycleType& mu, std::size_t pos,
                          std::map<std::pair<Partition, std::size_t>, std::int64_t>& memo) {
  if (pos == mu.size()) return lambda.empty() ? 1 : 0;
  const auto key = std::make_pair(lambda, pos);
  if (const auto it = memo.find(key); it != memo.end()) return it->second;
  const int k = mu[pos];
  const std::vector<int> beta = beta_set(lambda);
  std::int64_t total = 0;
  for (std::size_t i = 0; i < beta.size(); ++i) {
    const int target = beta[i] - k;
    if (target < 0 || std::find(beta.begin(), beta.end(), target) != beta.end()) continue;
    // Removing a rim hook of length k; its height is the number of beta
    // numbers strictly between target and beta[i].
    int height = 0;
    for (int b : beta) height += (b > target && b < beta[i]) ? 1 : 0;
    std::vector<int> next = beta;
    next[i] = target;
    const std::int64_t sub = mn_recursive(from_beta(std::move(next)), mu, pos + 1, memo);
    total += (height % 2 == 0) ? sub : -sub;
  }
  memo.emplace(key, total);
  return total;
}

}  // namespace

std::vector<Partition> partitions(int n, int max_rows) {
  if (n < 0) throw InputError("partitions: n must be >= 0");
  std::vector<Partition> out;
  Partition prefix;
  extend(out, prefix, n, n, std::max(max_rows, 0));
  return out;
}

std::int64_t hook_dimension(const Partition& lambda) {
  const Partition lam = canonical_partition(lambda);
  const int n = weight(lam);
  if (n > 20) throw InputError("hook_dimension supports n <= 20");
  std::int64_t factorial = 1;
  for (int i = 2; i <= n; ++i) factorial *= i;
  std::int64_t hooks = 1;
  for (std::size_t i = 0; i < lam.size(); ++i) {
    for (int j = 0; j < lam[i]; ++j) {
      int below = 0;
      for (std::size_t k = i + 1; k < lam.size() && lam[k] > j; ++k) ++below;
      hooks *= lam[i] - j + below;
    }
  }
  return factorial / hooks;
}

std::int64_t weyl_dimension(const Partition& lambda, int d) {
  if (d < 1) throw InputError("weyl_dimension: d must be >= 1");
  const Partition lam = canonical_partition(lambda);
  if (static_cast<int>(lam.size()) > d) return 0;
  std::vector<int> padded(lam.begin(), lam.end());
  padded.resize(static_cast<std::size_t>(d), 0);
  long double num = 1.0L;
  long double den = 1.0L;
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      num *= padded[static_cast<std::size_t>(i)] - padded[static_cast<std::size_t>(j)] + j - i;
      den *= j - i;
    }
  return static_cast<std::int64_t>(std::llround(num / den));
}

std::int64_t character(const Partition& lambda, const CycleType& mu) {
  const Partition lam = canonical_partition(lambda);
  const CycleType cyc = canonical_partition(mu);
  if (weight(lam) != weight(cyc)) throw InputError("character: weights differ");
  static std::mutex mutex;
  static std::map<std::pair<Partition, CycleType>, std::int64_t> cache;
  {
    const std::lock_guard lock(mutex);
    if (const auto it = cache.find({lam, cyc}); it != cache.end()) return it->second;
  }
  std::map<std::pair<Partition, std::size_t>, std::int64_t> memo;
  const std::int64_t value = mn_recursive(lam, cyc, 0, memo);
  const std::lock_guard lock(mutex);
  cache.emplace(std::make_pair(lam, cyc), value);
  return value;
}

CycleType cycle_type(std::span<const int> perm) {
  const std::size_t n = perm.size();
  std::vector<char> seen(n, 0);
  CycleType out;
  for (std::size_t i = 0; i < n; ++i) {
    if (seen[i]) continue;
    int len = 0;
    for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(perm[j])) {
      if (perm[j] < 0 || static_cast<std::size_t>(perm[j]) >= n) throw InputError("cycle_type: not a permutation");
      seen[j] = 1;
      ++len;
    }
    out.push_back(len);
  }
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

YoungData YoungData::make(Partition lambda) {
  YoungData out;
  out.partition = canonical_partition(std::move(lambda));
  out.dim_symmetric = hook_dimension(out.partition);
  for (const CycleType& mu : partitions(out.n())) out.character_table_row.emplace(mu, character(out.partition, mu));
  return out;
}

}  // namespace ebits
