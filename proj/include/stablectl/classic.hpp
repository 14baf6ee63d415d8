#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "stablectl/instance.hpp"

namespace stablectl {

// Proposer-optimal stable matching of a marriage instance.
Matching gale_shapley(const Instance& inst, Side proposing);

// A cycle of a stable partition, listed from its lexicographically smallest
// member in successor order.
struct Party {
    std::vector<AgentId> members;

    bool singleton() const { return members.size() == 1; }
    // Odd parties of size at least three; singletons are reported separately.
    bool odd() const { return members.size() >= 3 && members.size() % 2 == 1; }
};

// Permutation of the agents whose cycles are the parties. A fixed point is a
// singleton party; a 2-cycle is a matched pair.
class StablePartition {
public:
    StablePartition() = default;
    explicit StablePartition(std::map<AgentId, AgentId> successor);

    const std::map<AgentId, AgentId>& successors() const { return successor_; }
    const AgentId& successor(const AgentId& x) const;
    const AgentId& predecessor(const AgentId& x) const;

    std::vector<Party> parties() const;
    std::size_t odd_party_count() const;
    std::vector<AgentId> singletons() const;

    bool operator==(const StablePartition&) const = default;

private:
    std::map<AgentId, AgentId> successor_;
    std::map<AgentId, AgentId> predecessor_;
};

struct TanOptions {
    // Processing order for proposals and rotation search; empty means
    // lexicographic. Must otherwise be a permutation of the agents.
    std::vector<AgentId> order;
};

StablePartition tan_stable_partition(const Instance& inst, const TanOptions& options = {});

// Empty iff p is a stable partition of inst.
std::vector<std::string> validate_partition(const Instance& inst, const StablePartition& p);

struct PartitionMatching {
    std::vector<AgentId> deleted;  // smallest member of every odd party
    Matching matching;             // stable in inst minus `deleted`
};

PartitionMatching partition_to_matching(const Instance& inst, const StablePartition& p);

// Some stable matching, or nullopt when none exists. Runs Tan's algorithm
// and pairs up the parties.
std::optional<Matching> irving_stable_matching(const Instance& inst);

// One `party (a b c) odd` line per party.
std::string render_partition(const StablePartition& p);

}  // namespace stablectl
