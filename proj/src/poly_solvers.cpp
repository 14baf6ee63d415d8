#include "stablectl/poly_solvers.hpp"

#include <algorithm>
#include <set>

#include "stablectl/errors.hpp"
#include "stablectl/stability.hpp"

namespace stablectl {

FixingContext fixing_deletions(const Instance& inst, const AgentId& a, const AgentId& b)
{
    const Pair target(a, b);
    if (!inst.has_agent(a) || !inst.has_agent(b) || !inst.acceptable(target))
        throw InvalidInput("target pair {" + to_string(target) + "} is not acceptable");

    FixingContext ctx;
    ctx.a = a;
    ctx.b = b;
    const auto ia = inst.index_of(a);
    const auto ib = inst.index_of(b);

    std::set<Pair> fixing;
    auto collect = [&](AgentIndex owner, AgentIndex partner, std::vector<AgentId>& star) {
        for (AgentIndex x : inst.prefs(owner)) {
            if (x == partner) break;
            if (!inst.lists(x, owner)) continue;
            star.push_back(inst.id(x));
            // x loses owner and everything it ranks below owner.
            const auto cut = static_cast<std::size_t>(inst.rank(x, owner));
            const auto xs = inst.prefs(x);
            for (std::size_t i = cut; i < xs.size(); ++i) {
                if (inst.acceptable(x, xs[i])) fixing.emplace(inst.id(x), inst.id(xs[i]));
            }
        }
        std::sort(star.begin(), star.end());
    };
    collect(ia, ib, ctx.a_star);
    collect(ib, ia, ctx.b_star);

    ctx.fixing_pairs.assign(fixing.begin(), fixing.end());
    ctx.reduced = delete_pairs(inst, ctx.fixing_pairs);
    return ctx;
}

PartitionDiagnosis diagnose(const FixingContext& ctx)
{
    PartitionDiagnosis d;
    d.partition = tan_stable_partition(ctx.reduced);
    d.odd_count_r = d.partition.odd_party_count();
    for (const auto& s : d.partition.singletons()) {
        if (std::binary_search(ctx.a_star.begin(), ctx.a_star.end(), s) ||
            std::binary_search(ctx.b_star.begin(), ctx.b_star.end(), s))
            d.forbidden_singletons.push_back(s);
    }
    return d;
}

namespace {

std::vector<AgentId> deletion_witness(const PartitionDiagnosis& d)
{
    std::vector<AgentId> out = d.forbidden_singletons;
    for (const auto& party : d.partition.parties()) {
        if (party.odd()) out.push_back(party.members.front());
    }
    std::sort(out.begin(), out.end());
    return out;
}

void verify_delag_mp(const Instance& inst, const FixingContext& ctx, const std::vector<AgentId>& witness)
{
    const std::set<AgentId> removed(witness.begin(), witness.end());
    const auto reduced = delete_agents(ctx.reduced, removed);
    const auto partition = tan_stable_partition(reduced);
    const Pair target(ctx.a, ctx.b);
    const auto fail = [&](const std::string& why) {
        throw InternalError("delag-mp witness check failed for {" + to_string(target) + "}: " + why);
    };
    if (partition.odd_party_count() != 0) fail("odd party survives the deletions");
    const auto m = partition_to_matching(reduced, partition).matching;
    if (!m.contains(target)) fail("target pair not matched");
    const auto controlled = delete_agents(inst, removed);
    if (!is_stable(controlled, m)) fail("matching is not stable in the controlled instance");
}

}  // namespace

ControlOutcome solve_delag_mp(const Instance& inst, const Pair& target, std::size_t budget)
{
    const auto ctx = fixing_deletions(inst, target.first, target.second);
    const auto d = diagnose(ctx);

    ControlOutcome out;
    out.optimum = d.odd_count_r + d.forbidden_singletons.size();
    out.yes = *out.optimum <= budget;
    if (out.yes) {
        auto witness = deletion_witness(d);
        verify_delag_mp(inst, ctx, witness);
        out.witness = ActionSet{std::move(witness), {}};
    }
    return out;
}

ControlOutcome solve_delag_ma(const Instance& inst, const AgentId& target, std::size_t budget)
{
    const auto a = inst.index_of(target);
    std::optional<std::size_t> best;
    AgentId best_partner;
    for (AgentIndex b : inst.prefs(a)) {
        if (!inst.lists(b, a)) continue;
        const auto r = solve_delag_mp(inst, Pair(target, inst.id(b)), 0);
        if (!best || *r.optimum < *best || (*r.optimum == *best && inst.id(b) < best_partner)) {
            best = r.optimum;
            best_partner = inst.id(b);
        }
    }

    ControlOutcome out;
    if (!best) return out;
    out = solve_delag_mp(inst, Pair(target, best_partner), budget);
    return out;
}

ControlOutcome solve_delacc_ms(const Instance& inst, const Matching& m, std::size_t budget)
{
    auto blocking = blocking_pairs(inst, m);
    ControlOutcome out;
    out.optimum = blocking.size();
    out.yes = blocking.size() <= budget;
    if (out.yes) out.witness = ActionSet{{}, std::move(blocking)};
    return out;
}

bool pair_in_some_stable_matching(const Instance& inst, const Pair& p)
{
    if (!inst.has_agent(p.first) || !inst.has_agent(p.second) || !inst.acceptable(p)) return false;
    const auto d = diagnose(fixing_deletions(inst, p.first, p.second));
    return d.odd_count_r == 0 && d.forbidden_singletons.empty();
}

bool has_poly_solver(Action action, GoalKind goal)
{
    return (action == Action::DelAg && (goal == GoalKind::MatchPair || goal == GoalKind::MatchAgent)) ||
           (action == Action::DelAcc && goal == GoalKind::MatchSet);
}

ControlOutcome solve_poly(const ControlQuery& q)
{
    if (!has_poly_solver(q.action, q.goal.kind))
        throw InvalidInput("no polynomial solver for " + to_token(q.action) + "-" + to_token(q.goal.kind));
    validate_query(q);
    switch (q.goal.kind) {
    case GoalKind::MatchPair: return solve_delag_mp(q.instance, q.goal.pair, q.budget);
    case GoalKind::MatchAgent: return solve_delag_ma(q.instance, q.goal.agent, q.budget);
    default: return solve_delacc_ms(q.instance, q.goal.matching, q.budget);
    }
}

}  // namespace stablectl
