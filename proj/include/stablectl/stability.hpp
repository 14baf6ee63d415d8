#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "stablectl/instance.hpp"

namespace stablectl {

inline constexpr std::size_t kDefaultMatchingCap = 24;

// partner[u] == kNoAgent when u is unmatched.
using PartnerTable = std::vector<AgentIndex>;

// Throws InvalidInput unless every pair of m is an acceptable pair of inst.
void check_matching(const Instance& inst, const Matching& m);
PartnerTable partner_table(const Instance& inst, const Matching& m);
Matching to_matching(const Instance& inst, const PartnerTable& partner);

std::vector<Pair> blocking_pairs(const Instance& inst, const Matching& m);
std::size_t count_blocking_pairs(const Instance& inst, const PartnerTable& partner);
bool is_stable(const Instance& inst, const Matching& m);
bool is_stable(const Instance& inst, const PartnerTable& partner);
bool is_perfect(const Instance& inst, const Matching& m);
std::vector<AgentId> covered_agents(const Matching& m);

// Visits every matching of the acceptability graph once. Pairs are taken in
// sorted order; at each pair the branch without it is explored first, so
// the empty matching comes first. The visitor returns false to stop early.
// Throws CapExceeded when the graph has more than `cap` acceptable pairs.
void for_each_matching(const Instance& inst, std::size_t cap,
                       const std::function<bool(const PartnerTable&)>& visit);

std::vector<Matching> enumerate_matchings(const Instance& inst, std::size_t cap = kDefaultMatchingCap);
std::vector<Matching> enumerate_stable_matchings(const Instance& inst, std::size_t cap = kDefaultMatchingCap);

}  // namespace stablectl
