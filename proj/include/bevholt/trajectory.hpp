#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bevholt/scalar.hpp"

namespace bevholt {

enum class TrajectoryStatus { complete, truncated };

/// A solution prefix of the recurrence, indexed by global n.
/// values[n] is defined exactly for 0 <= n < size(); when the forbidden set
/// is hit the trajectory truncates at the first index that could not be
/// computed instead of propagating NaN.
template <class T>
struct Trajectory {
  Index order = 1;
  std::vector<T> values;
  TrajectoryStatus status = TrajectoryStatus::complete;
  std::optional<Index> truncated_at;  // first undefined global index
  std::string truncation_reason;

  Index size() const { return values.size(); }
  bool is_complete() const { return status == TrajectoryStatus::complete; }

  /// The subsequence {z_{kn+j}} for fixed residue j.
  std::vector<T> strand(Index j) const {
    std::vector<T> out;
    for (Index i = j; i < values.size(); i += order) out.push_back(values[i]);
    return out;
  }
};

}  // namespace bevholt
