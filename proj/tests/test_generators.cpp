#include "doctest.h"
#include "stablectl/errors.hpp"
#include "stablectl/generators.hpp"
#include "stablectl/stability.hpp"
#include "support.hpp"

using namespace stablectl;
using namespace testing;

TEST_SUITE("generators") {

TEST_CASE("random_sr: examples")
{
    CHECK(random_sr(0, 0.5, 1).empty());
    const auto full = random_sr(6, 1.0, 2);
    for (const auto& id : full.agents()) CHECK(full.pref_ids(id).size() == 5);
    const auto none = random_sr(6, 0.0, 3);
    CHECK(none.size() == 6);
    CHECK(none.acceptable_pairs().empty());
    CHECK(full.agents().front() == "u01");
    CHECK_THROWS_AS(random_sr(3, 1.5, 1), InvalidInput);
    CHECK_THROWS_AS(random_sr(3, -0.1, 1), InvalidInput);
}

TEST_CASE("random_sm: examples")
{
    const auto full = random_sm(2, 2, 1.0, 4);
    CHECK(full.kind() == Kind::Marriage);
    CHECK(full.acceptable_pairs().size() == 4);
    const auto b_only = random_sm(0, 3, 0.5, 5);
    CHECK(b_only.size() == 3);
    for (AgentIndex u = 0; u < b_only.size(); ++u) CHECK(b_only.side(u) == Side::B);
    CHECK(random_sm(3, 3, 0.0, 6).acceptable_pairs().empty());
    CHECK_THROWS_AS(random_sm(1, 1, 2.0, 1), InvalidInput);
}

TEST_CASE("random_query: examples")
{
    const auto ms = random_query(mutual_pair(), Action::DelAcc, GoalKind::MatchSet, 7);
    CHECK((ms.goal.matching == Matching({Pair("a", "b")}) || ms.goal.matching.empty()));

    const auto mp = random_query(three_cycle(), Action::DelAg, GoalKind::MatchPair, 8);
    const auto pairs = three_cycle().acceptable_pairs();
    CHECK(std::find(pairs.begin(), pairs.end(), mp.goal.pair) != pairs.end());

    CHECK_THROWS_AS(random_query(parse_instance("problem: sr\n"), Action::DelAg, GoalKind::MatchAgent, 9),
                    InvalidInput);
}

TEST_CASE("random_query: perfect targets get fillers")
{
    const auto q = random_query(three_cycle(), Action::DelAg, GoalKind::MatchSet, 10);
    CHECK(q.instance.size() == 4);
    CHECK(is_perfect(q.instance, q.goal.matching));
    const auto sm_q = random_query(random_sm(2, 3, 0.5, 11), Action::AddAg, GoalKind::MatchSet, 12);
    CHECK(validate(sm_q.instance).empty());
    CHECK(is_perfect(sm_q.instance, sm_q.goal.matching));
}

TEST_CASE("property: same seed, same output; outputs validate")
{
    const Action actions[] = {Action::AddAg, Action::DelAg, Action::DelAcc};
    const GoalKind goals[] = {GoalKind::MatchAgent, GoalKind::MatchPair, GoalKind::MatchSet, GoalKind::ExistsStable,
                              GoalKind::ExistsPerfectStable};
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const auto n = seed % 9;
        const auto a = random_sr(n, 0.5, seed);
        CHECK(a == random_sr(n, 0.5, seed));
        CHECK(validate(a).empty());
        const auto b = random_sm(n / 2, n - n / 2, 0.5, seed);
        CHECK(b == random_sm(n / 2, n - n / 2, 0.5, seed));
        CHECK(validate(b).empty());
        for (const auto action : actions)
            for (const auto goal : goals) {
                try {
                    const auto q = random_query(a, action, goal, seed);
                    const auto again = random_query(a, action, goal, seed);
                    CHECK(q.instance == again.instance);
                    CHECK(q.budget == again.budget);
                    CHECK(q.budget <= 3);
                    CHECK_NOTHROW(validate_query(q));
                } catch (const InvalidInput&) {
                    // no legal target, e.g. no acceptable pair for mp
                }
            }
    }
}

}
