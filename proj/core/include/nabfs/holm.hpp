#pragma once

#include <span>

#include "nabfs/errors.hpp"
#include <vector>

namespace nabfs {

struct AdjustedPValues {
    std::vector<double> raw;
    std::vector<double> adjusted;
    std::vector<int> order;  // ascending permutation used by the step-down pass
};

// Holm step-down adjustment: sort ascending, adjusted_(i) =
// min(1, max_{j <= i} (m - j + 1) * raw_(j)), then unsort. Ties in raw values
// are ordered by original index. Rejection at level alpha is adjusted < alpha.
// Throws OutOfRangePValueError for inputs outside [0, 1].
AdjustedPValues holm_adjust(std::span<const double> raw);

}  // namespace nabfs
