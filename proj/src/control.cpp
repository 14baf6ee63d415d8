#include "stablectl/control.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "stablectl/classic.hpp"
#include "stablectl/errors.hpp"
#include "stablectl/poly_solvers.hpp"
#include "stablectl/stability.hpp"
#include "text_util.hpp"

namespace stablectl {

std::string to_token(Action action)
{
    switch (action) {
    case Action::AddAg: return "addag";
    case Action::DelAg: return "delag";
    case Action::DelAcc: return "delacc";
    }
    return "?";
}

std::string to_token(GoalKind goal)
{
    switch (goal) {
    case GoalKind::MatchAgent: return "ma";
    case GoalKind::MatchPair: return "mp";
    case GoalKind::MatchSet: return "ms";
    case GoalKind::ExistsStable: return "esm";
    case GoalKind::ExistsPerfectStable: return "epsm";
    }
    return "?";
}

std::pair<Action, GoalKind> parse_problem(std::string_view token)
{
    const auto dash = token.find('-');
    if (dash == std::string_view::npos) throw InvalidInput("problem must look like <action>-<goal>, got '" + std::string(token) + "'");
    const auto a = token.substr(0, dash);
    const auto g = token.substr(dash + 1);
    Action action;
    if (a == "addag") action = Action::AddAg;
    else if (a == "delag") action = Action::DelAg;
    else if (a == "delacc") action = Action::DelAcc;
    else throw InvalidInput("unknown control action '" + std::string(a) + "'");
    GoalKind goal;
    if (g == "ma") goal = GoalKind::MatchAgent;
    else if (g == "mp") goal = GoalKind::MatchPair;
    else if (g == "ms") goal = GoalKind::MatchSet;
    else if (g == "esm") goal = GoalKind::ExistsStable;
    else if (g == "epsm") goal = GoalKind::ExistsPerfectStable;
    else throw InvalidInput("unknown control goal '" + std::string(g) + "'");
    return {action, goal};
}

void validate_query(const ControlQuery& q)
{
    const auto& inst = q.instance;
    const auto violations = validate(inst);
    if (!violations.empty()) throw InvalidInput("invalid instance: " + violations.front());

    if (q.action == Action::AddAg && !inst.has_addable()) throw InvalidInput("addag needs at least one addable agent");
    if (q.action != Action::AddAg && inst.has_addable())
        throw InvalidInput(to_token(q.action) + " queries must not mark agents addable");

    auto require_original = [&](const AgentId& id) {
        const auto u = inst.find(id);
        if (!u) throw InvalidInput("target agent " + id + " is not in the instance");
        if (inst.addable(*u)) throw InvalidInput("target agent " + id + " must be an original agent");
    };

    switch (q.goal.kind) {
    case GoalKind::MatchAgent:
        require_original(q.goal.agent);
        break;
    case GoalKind::MatchPair:
        require_original(q.goal.pair.first);
        require_original(q.goal.pair.second);
        if (!inst.acceptable(q.goal.pair)) throw InvalidInput("target pair {" + to_string(q.goal.pair) + "} is not acceptable");
        break;
    case GoalKind::MatchSet:
        check_matching(inst, q.goal.matching);
        if (q.action != Action::DelAcc && !is_perfect(inst, q.goal.matching))
            throw InvalidInput(to_token(q.action) + "-ms needs a perfect target matching");
        break;
    case GoalKind::ExistsStable:
    case GoalKind::ExistsPerfectStable:
        break;
    }
}

ActionSet candidate_actions(const ControlQuery& q)
{
    ActionSet out;
    const auto& inst = q.instance;
    switch (q.action) {
    case Action::AddAg:
        out.agents = inst.addable_agents();
        break;
    case Action::DelAg:
        for (const auto& id : inst.agents()) {
            if (q.goal.kind == GoalKind::MatchAgent && id == q.goal.agent) continue;
            if (q.goal.kind == GoalKind::MatchPair && q.goal.pair.contains(id)) continue;
            out.agents.push_back(id);
        }
        break;
    case Action::DelAcc:
        for (auto& p : inst.acceptable_pairs()) {
            if (q.goal.kind == GoalKind::MatchPair && p == q.goal.pair) continue;
            out.pairs.push_back(std::move(p));
        }
        break;
    }
    return out;
}

Instance apply_actions(const ControlQuery& q, const ActionSet& actions)
{
    const auto universe = candidate_actions(q);
    if (q.action == Action::DelAcc) {
        if (!actions.agents.empty()) throw InvalidInput("delacc actions are pairs, not agents");
        std::set<Pair> seen;
        for (const auto& p : actions.pairs) {
            if (!std::binary_search(universe.pairs.begin(), universe.pairs.end(), p))
                throw InvalidInput("pair {" + to_string(p) + "} cannot be deleted in this query");
            if (!seen.insert(p).second) throw InvalidInput("pair {" + to_string(p) + "} listed twice");
        }
        return delete_pairs(q.instance, actions.pairs);
    }

    if (!actions.pairs.empty()) throw InvalidInput(to_token(q.action) + " actions are agents, not pairs");
    std::set<AgentId> chosen;
    for (const auto& id : actions.agents) {
        if (!std::binary_search(universe.agents.begin(), universe.agents.end(), id))
            throw InvalidInput("agent " + id + " is not a candidate for " + to_token(q.action));
        if (!chosen.insert(id).second) throw InvalidInput("agent " + id + " listed twice");
    }
    return q.action == Action::AddAg ? induce_with_added(q.instance, chosen) : delete_agents(q.instance, chosen);
}

namespace {

// Pairs of m whose endpoints both survive and are still acceptable.
std::vector<Pair> surviving_pairs(const Instance& inst, const Matching& m)
{
    std::vector<Pair> out;
    for (const auto& p : m.pairs())
        if (inst.acceptable(p)) out.push_back(p);
    return out;
}

bool match_set_holds(const Instance& inst, const Matching& target, Action action)
{
    if (action == Action::DelAcc) {
        for (const auto& p : target.pairs())
            if (!inst.acceptable(p)) return false;
        return is_stable(inst, target);
    }

    // Every stable matching covers the same agents, so a stable M' inside the
    // target has to be exactly the surviving target pairs over that set.
    const auto reference = irving_stable_matching(inst);
    if (!reference) return false;
    std::vector<Pair> chosen;
    for (auto& p : surviving_pairs(inst, target)) {
        if (reference->covers(p.first) && reference->covers(p.second)) chosen.push_back(std::move(p));
    }
    if (chosen.size() != reference->size()) return false;
    return is_stable(inst, Matching(std::move(chosen)));
}

}  // namespace

bool goal_holds(const Instance& inst, const Goal& goal, Action action)
{
    switch (goal.kind) {
    case GoalKind::ExistsStable:
        return irving_stable_matching(inst).has_value();
    case GoalKind::ExistsPerfectStable: {
        const auto m = irving_stable_matching(inst);
        return m && 2 * m->size() == inst.size();
    }
    case GoalKind::MatchAgent: {
        if (!inst.has_agent(goal.agent)) return false;
        const auto m = irving_stable_matching(inst);
        return m && m->covers(goal.agent);
    }
    case GoalKind::MatchPair:
        return pair_in_some_stable_matching(inst, goal.pair);
    case GoalKind::MatchSet:
        return match_set_holds(inst, goal.matching, action);
    }
    return false;
}

bool goal_holds_by_enumeration(const Instance& inst, const Goal& goal, Action action, std::size_t cap)
{
    if (goal.kind == GoalKind::MatchSet) {
        if (action == Action::DelAcc) {
            for (const auto& p : goal.matching.pairs())
                if (!inst.acceptable(p)) return false;
            return is_stable(inst, goal.matching);
        }
        const auto pairs = surviving_pairs(inst, goal.matching);
        if (pairs.size() > cap) throw CapExceeded(pairs.size(), cap);
        for (std::size_t mask = 0; mask < (std::size_t{1} << pairs.size()); ++mask) {
            std::vector<Pair> subset;
            for (std::size_t i = 0; i < pairs.size(); ++i)
                if (mask >> i & 1) subset.push_back(pairs[i]);
            if (is_stable(inst, Matching(std::move(subset)))) return true;
        }
        return false;
    }

    if (goal.kind == GoalKind::MatchAgent && !inst.has_agent(goal.agent)) return false;
    if (goal.kind == GoalKind::MatchPair && !inst.acceptable(goal.pair)) return false;
    bool found = false;
    for_each_matching(inst, cap, [&](const PartnerTable& partner) {
        if (!is_stable(inst, partner)) return true;
        switch (goal.kind) {
        case GoalKind::ExistsStable:
            found = true;
            break;
        case GoalKind::ExistsPerfectStable:
            found = std::none_of(partner.begin(), partner.end(), [](AgentIndex p) { return p == kNoAgent; });
            break;
        case GoalKind::MatchAgent:
            found = partner[inst.index_of(goal.agent)] != kNoAgent;
            break;
        case GoalKind::MatchPair:
            found = partner[inst.index_of(goal.pair.first)] == inst.index_of(goal.pair.second);
            break;
        case GoalKind::MatchSet:
            break;
        }
        return !found;
    });
    return found;
}

std::string serialize_query_descriptor(const ControlQuery& q)
{
    std::ostringstream out;
    out << "problem: " << to_token(q.action) << '-' << to_token(q.goal.kind) << '\n';
    out << "budget: " << q.budget << '\n';
    if (q.goal.kind == GoalKind::MatchAgent) out << "target-agent: " << q.goal.agent << '\n';
    if (q.goal.kind == GoalKind::MatchPair) out << "target-pair: " << to_string(q.goal.pair) << '\n';
    if (q.goal.kind == GoalKind::MatchSet) out << serialize_matching(q.goal.matching);
    return out.str();
}

ControlQuery parse_query_descriptor(std::string_view text, Instance instance)
{
    ControlQuery q;
    q.instance = std::move(instance);
    std::optional<std::pair<Action, GoalKind>> problem;
    std::optional<AgentId> agent;
    std::optional<Pair> pair;
    std::size_t lineno = 0;
    for (auto raw : detail::split_lines(text)) {
        ++lineno;
        auto line = detail::trim(detail::strip_comment(raw));
        if (line.empty() || line.starts_with("match ")) continue;
        const auto colon = line.find(':');
        if (colon == std::string_view::npos) throw ParseError(lineno, "expected 'key: value'");
        const auto key = detail::trim(line.substr(0, colon));
        const auto value = detail::trim(line.substr(colon + 1));
        try {
            if (key == "problem") {
                problem = parse_problem(value);
            } else if (key == "budget") {
                std::size_t used = 0;
                const auto b = std::stoll(std::string(value), &used);
                if (used != value.size() || b < 0) throw ParseError(lineno, "budget must be a non-negative integer");
                q.budget = static_cast<std::size_t>(b);
            } else if (key == "target-agent") {
                agent = AgentId(value);
            } else if (key == "target-pair") {
                pair = parse_pair(value);
            } else {
                throw ParseError(lineno, "unknown key '" + std::string(key) + "'");
            }
        } catch (const InvalidInput& e) {
            throw ParseError(lineno, e.what());
        } catch (const std::logic_error&) {
            throw ParseError(lineno, "malformed value for '" + std::string(key) + "'");
        }
    }
    if (!problem) throw ParseError(lineno == 0 ? 1 : lineno, "query descriptor lacks 'problem:'");
    q.action = problem->first;
    q.goal.kind = problem->second;
    switch (q.goal.kind) {
    case GoalKind::MatchAgent:
        if (!agent) throw InvalidInput("ma goal needs target-agent");
        q.goal.agent = *agent;
        break;
    case GoalKind::MatchPair:
        if (!pair) throw InvalidInput("mp goal needs target-pair");
        q.goal.pair = *pair;
        break;
    case GoalKind::MatchSet:
        q.goal.matching = parse_matching(text);
        break;
    default:
        break;
    }
    return q;
}

std::string render_actions(const ActionSet& actions)
{
    std::string out;
    for (const auto& a : actions.agents) out += (out.empty() ? "" : " ") + a;
    for (const auto& p : actions.pairs) out += (out.empty() ? "" : " ") + to_string(p);
    return out;
}

std::string render_outcome(const ControlOutcome& outcome)
{
    std::ostringstream out;
    out << "verdict: " << (outcome.yes ? "yes" : "no") << '\n';
    out << "optimum: ";
    if (outcome.optimum) out << *outcome.optimum;
    else out << "unknown";
    out << '\n';
    out << "actions:";
    if (outcome.witness && !outcome.witness->empty()) out << ' ' << render_actions(*outcome.witness);
    out << '\n';
    return out.str();
}

}  // namespace stablectl
