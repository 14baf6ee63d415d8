#pragma once

// Seeded random instances and control queries.

#include <cstddef>
#include <cstdint>

#include "stablectl/control.hpp"
#include "stablectl/instance.hpp"

namespace stablectl {

// Agents u01, u02, ...; every pair acceptable with probability `density`,
// lists uniformly shuffled.
Instance random_sr(std::size_t n, double density, std::uint64_t seed);

// Side a agents a01, ..., side b agents b01, ...; only cross pairs.
Instance random_sm(std::size_t na, std::size_t nb, double density, std::uint64_t seed);

// Marks a random non-empty addable subset for AddAg, samples a legal goal
// target and a budget in 0..3. Perfect MS targets are completed with fresh
// filler agents f_<id> listed only by their partner. Throws InvalidInput
// when no legal target exists.
ControlQuery random_query(const Instance& inst, Action action, GoalKind goal, std::uint64_t seed);

}  // namespace stablectl
