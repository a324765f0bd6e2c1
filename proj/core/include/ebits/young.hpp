#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <span>
#include <vector>

#include "ebits/majorization.hpp"

namespace ebits {

/// Cycle type of a permutation, written as a partition.
using CycleType = Partition;

/// All partitions of n with at most `max_rows` parts, in reverse
/// lexicographic order: (n) first, (1,...,1) last.
std::vector<Partition> partitions(int n, int max_rows = std::numeric_limits<int>::max());

/// dim [lambda] = n! / prod of hook lengths. Throws InputError for n > 20.
std::int64_t hook_dimension(const Partition& lambda);

/// dim S_lambda(C^d) by the Weyl dimension formula; 0 when lambda has more
/// than d rows.
std::int64_t weyl_dimension(const Partition& lambda, int d);

/// chi^lambda on the class of cycle type mu (Murnaghan-Nakayama). Memoized;
/// safe to call from several threads.
std::int64_t character(const Partition& lambda, const CycleType& mu);

/// Cycle type of the permutation i -> perm[i].
CycleType cycle_type(std::span<const int> perm);

struct YoungData {
  Partition partition;
  std::int64_t dim_symmetric = 0;
  std::map<CycleType, std::int64_t> character_table_row;

  /// Canonicalizes `lambda` and fills the dimension and the full character row.
  static YoungData make(Partition lambda);
  int n() const { return weight(partition); }
};

}  // namespace ebits
