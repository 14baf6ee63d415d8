#pragma once

// Control problems: an action type (add agents, delete agents, delete
// acceptability), a goal, a budget, and the evaluation of a goal on a
// controlled instance.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "stablectl/instance.hpp"

namespace stablectl {

enum class Action { AddAg, DelAg, DelAcc };

enum class GoalKind {
    MatchAgent,           // ma: the target agent is matched in some stable matching
    MatchPair,            // mp: the target pair is in some stable matching
    MatchSet,             // ms: the target matching contains / is a stable matching
    ExistsStable,         // esm
    ExistsPerfectStable,  // epsm
};

struct Goal {
    GoalKind kind = GoalKind::ExistsStable;
    AgentId agent;      // MatchAgent
    Pair pair;          // MatchPair
    Matching matching;  // MatchSet

    static Goal match_agent(AgentId a) { return {GoalKind::MatchAgent, std::move(a), {}, {}}; }
    static Goal match_pair(Pair p) { return {GoalKind::MatchPair, {}, std::move(p), {}}; }
    static Goal match_set(Matching m) { return {GoalKind::MatchSet, {}, {}, std::move(m)}; }
    static Goal exists_stable() { return {GoalKind::ExistsStable, {}, {}, {}}; }
    static Goal exists_perfect_stable() { return {GoalKind::ExistsPerfectStable, {}, {}, {}}; }
};

// Agents for AddAg/DelAg, pairs for DelAcc.
struct ActionSet {
    std::vector<AgentId> agents;
    std::vector<Pair> pairs;

    std::size_t size() const { return agents.size() + pairs.size(); }
    bool empty() const { return size() == 0; }
    bool operator==(const ActionSet&) const = default;
};

struct ControlQuery {
    Instance instance;
    Action action = Action::DelAg;
    Goal goal;
    std::size_t budget = 0;
};

struct ControlOutcome {
    bool yes = false;
    std::optional<std::size_t> optimum;  // minimum number of actions; absent if infeasible or not computed
    std::optional<ActionSet> witness;    // present for "yes" answers
};

std::string to_token(Action action);
std::string to_token(GoalKind goal);
// "delag-mp" -> {DelAg, MatchPair}
std::pair<Action, GoalKind> parse_problem(std::string_view token);

// Throws InvalidInput describing the first broken query invariant.
void validate_query(const ControlQuery& q);

// Everything the controller may touch, in lexicographic order. Goal targets
// (the MA agent, the MP endpoints, the MP pair itself) are never candidates.
ActionSet candidate_actions(const ControlQuery& q);

// The controlled instance. Throws InvalidInput for actions outside
// candidate_actions(q).
Instance apply_actions(const ControlQuery& q, const ActionSet& actions);

// Goal evaluation on an already controlled instance. The action selects the
// MS convention: for AddAg/DelAg some stable M' must be a subset of the
// target's surviving pairs, for DelAcc the target itself must be stable.
bool goal_holds(const Instance& inst, const Goal& goal, Action action);

// Same predicate decided by enumerating stable matchings (and subsets of the
// MS target). Throws CapExceeded above `cap` pairs.
bool goal_holds_by_enumeration(const Instance& inst, const Goal& goal, Action action, std::size_t cap);

// Query sidecar text: `problem:`, `budget:`, `target-agent:`, `target-pair:`
// lines and `match <id> <id>` lines for an MS target.
std::string serialize_query_descriptor(const ControlQuery& q);
ControlQuery parse_query_descriptor(std::string_view text, Instance instance);

std::string render_actions(const ActionSet& actions);
std::string render_outcome(const ControlOutcome& outcome);

}  // namespace stablectl
