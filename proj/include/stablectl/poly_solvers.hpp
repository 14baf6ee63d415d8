#pragma once

// Polynomial-time control algorithms: deleting agents to get a pair or an
// agent into a stable matching, and deleting acceptability to make a given
// matching stable.

#include <cstddef>
#include <vector>

#include "stablectl/classic.hpp"
#include "stablectl/control.hpp"
#include "stablectl/instance.hpp"

namespace stablectl {

// The instance I* in which the target pair {a,b} is mutually top-ranked.
struct FixingContext {
    AgentId a;
    AgentId b;
    std::vector<AgentId> a_star;  // agents a prefers to b
    std::vector<AgentId> b_star;  // agents b prefers to a
    std::vector<Pair> fixing_pairs;
    Instance reduced;
};

// Throws InvalidInput unless {a,b} is an acceptable pair of inst.
FixingContext fixing_deletions(const Instance& inst, const AgentId& a, const AgentId& b);

struct PartitionDiagnosis {
    StablePartition partition;  // of the reduced instance
    std::size_t odd_count_r = 0;
    std::vector<AgentId> forbidden_singletons;  // singleton parties inside a_star or b_star
};

PartitionDiagnosis diagnose(const FixingContext& ctx);

// Minimum number of agent deletions (never a or b) after which some stable
// matching contains the target. The yes-witness is checked before it is
// returned; a failed check throws InternalError.
ControlOutcome solve_delag_mp(const Instance& inst, const Pair& target, std::size_t budget);

// Minimum of solve_delag_mp over the acceptable partners of the target,
// ties broken by partner id. No acceptable partner means no optimum.
ControlOutcome solve_delag_ma(const Instance& inst, const AgentId& target, std::size_t budget);

// The blocking pairs of m are exactly the acceptability deletions needed.
ControlOutcome solve_delacc_ms(const Instance& inst, const Matching& m, std::size_t budget);

// True iff some stable matching of inst contains p. False when p is not an
// acceptable pair of inst.
bool pair_in_some_stable_matching(const Instance& inst, const Pair& p);

bool has_poly_solver(Action action, GoalKind goal);
// Dispatches a validated query. Throws InvalidInput if no polynomial solver
// exists for its problem.
ControlOutcome solve_poly(const ControlQuery& q);

}  // namespace stablectl
