#include "doctest.h"
#include "stablectl/classic.hpp"
#include "stablectl/errors.hpp"
#include "stablectl/exact_solvers.hpp"
#include "stablectl/generators.hpp"
#include "stablectl/reductions.hpp"
#include "stablectl/stability.hpp"
#include "support.hpp"

using namespace stablectl;
using namespace testing;

TEST_SUITE("exact_solvers") {

TEST_CASE("budget zero answers the goal on the base instance")
{
    Rng rng(61);
    for (int t = 0; t < 100; ++t) {
        const auto inst = sr(random_prefs(rng, 1 + rng.below(6), 0.6));
        for (auto goal : {GoalKind::ExistsStable, GoalKind::MatchAgent, GoalKind::MatchPair}) {
            ControlQuery q;
            try {
                q = random_query(inst, Action::DelAg, goal, rng.next());
            } catch (const InvalidInput&) {
                continue;
            }
            q.budget = 0;
            CHECK(solve_exact(q).yes == goal_holds(q.instance, q.goal, q.action));
        }
    }
}

TEST_CASE("deleting one agent from the three-cycle")
{
    // Deleting any single agent leaves a mutual pair; a is first.
    for (const auto& x : {"a", "b", "c"})
        CHECK_FALSE(oracle::stable_matchings(oracle::remove_agents(three_cycle_prefs(), {x})).empty());
    const auto r = solve_exact(ControlQuery{three_cycle(), Action::DelAg, Goal::exists_stable(), 1});
    CHECK(r.yes);
    CHECK(r.optimum == 1u);
    CHECK(r.witness->agents == std::vector<AgentId>{"a"});
}

TEST_CASE("adding one endpoint of a single edge gadget")
{
    const auto g = is_to_csr_addag_existssm(UndirectedGraph({"u", "v"}, {{"u", "v"}}), 1, GoalKind::ExistsStable);
    const auto added = induce_with_added(g.query.instance, {"u"});
    CHECK(oracle::blocking(prefs_of(added), {{"u", "s_1"}, {"s_1", "u"}, {"ai_1", "bi_1"}, {"bi_1", "ai_1"}}).empty());
    const auto r = solve_exact(g.query);
    CHECK(r.yes);
    CHECK(r.witness->agents == std::vector<AgentId>{"u"});
}

TEST_CASE("min_control_cost: examples")
{
    const auto mp = ControlQuery{three_cycle(), Action::DelAg, Goal::match_pair(Pair("a", "b")), 0};
    CHECK(min_control_cost(mp) == 1u);
    CHECK(oracle::min_deletions(three_cycle_prefs(), {"a", "b"}, [](const Prefs& p) {
              return oracle::pair_in_some_stable(p, "a", "b");
          }) == 1u);

    const auto ms = ControlQuery{mutual_pair(), Action::DelAcc, Goal::match_set(Matching({Pair("a", "b")})), 0};
    CHECK(min_control_cost(ms) == 0u);

    const auto lone = sr({{"a", {"b"}}, {"b", {"a"}}, {"z", {}}});
    CHECK_FALSE(min_control_cost(ControlQuery{lone, Action::DelAg, Goal::match_agent("z"), 0}).has_value());
}

TEST_CASE("no answers still report the optimum")
{
    const auto r = solve_exact(ControlQuery{three_cycle(), Action::DelAg, Goal::exists_stable(), 0});
    CHECK_FALSE(r.yes);
    CHECK(r.optimum == 1u);
    CHECK_FALSE(r.witness.has_value());
}

TEST_CASE("cap and validation")
{
    Rng rng(62);
    const auto big = sr(random_prefs(rng, 22, 0.3));
    CHECK_THROWS_AS(solve_exact(ControlQuery{big, Action::DelAg, Goal::exists_stable(), 1}), CapExceeded);
    CHECK_NOTHROW(solve_exact(ControlQuery{big, Action::DelAg, Goal::exists_stable(), 0}, 22));
    CHECK_THROWS_AS(solve_exact(ControlQuery{three_cycle(), Action::AddAg, Goal::exists_stable(), 1}), InvalidInput);
}

TEST_CASE("property: witnesses are valid, minimal and deterministic")
{
    Rng rng(63);
    const Action actions[] = {Action::AddAg, Action::DelAg, Action::DelAcc};
    const GoalKind goals[] = {GoalKind::MatchAgent, GoalKind::MatchPair, GoalKind::MatchSet, GoalKind::ExistsStable,
                              GoalKind::ExistsPerfectStable};
    int solved = 0;
    for (int t = 0; t < 400; ++t) {
        const auto inst = sr(random_prefs(rng, 2 + rng.below(5), 0.6));
        ControlQuery q;
        try {
            q = random_query(inst, actions[t % 3], goals[(t / 3) % 5], rng.next());
        } catch (const InvalidInput&) {
            continue;
        }
        if (candidate_actions(q).size() > 12) continue;
        const auto r = solve_exact(q);
        const auto again = solve_exact(q);
        CHECK(r.yes == again.yes);
        CHECK(r.optimum == again.optimum);
        CHECK(r.witness == again.witness);
        if (r.yes) {
            ++solved;
            CHECK(r.witness->size() == *r.optimum);
            CHECK(r.witness->size() <= q.budget);
            const auto after = apply_actions(q, *r.witness);
            CHECK(goal_holds(after, q.goal, q.action));
            CHECK(goal_holds_by_enumeration(after, q.goal, q.action, 64));
        }
        if (r.optimum && *r.optimum > 0) {
            // nothing smaller works: the base instance fails
            CHECK_FALSE(goal_holds(apply_actions(q, ActionSet{}), q.goal, q.action));
        }
    }
    CHECK(solved > 50);
}

}
