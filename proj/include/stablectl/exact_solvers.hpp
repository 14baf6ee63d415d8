#pragma once

// Brute-force control: tries action sets by increasing size, lexicographic
// within a size.

#include <cstddef>
#include <optional>

#include "stablectl/control.hpp"

namespace stablectl {

inline constexpr std::size_t kDefaultCandidateCap = 20;

// The first successful action set is the witness when its size fits the
// budget. For "no" answers the optimum is still the smallest successful size
// if any exists. Throws CapExceeded above `cap` candidates.
ControlOutcome solve_exact(const ControlQuery& q, std::size_t cap = kDefaultCandidateCap);

// Smallest successful action count, ignoring the budget.
std::optional<std::size_t> min_control_cost(const ControlQuery& q, std::size_t cap = kDefaultCandidateCap);

}  // namespace stablectl
