#include "stablectl/generators.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "stablectl/errors.hpp"

namespace stablectl {

namespace {

std::string padded(char prefix, std::size_t i, std::size_t n)
{
    const auto digits = std::max<std::size_t>(2, std::to_string(n).size());
    auto num = std::to_string(i);
    return std::string(1, prefix) + std::string(digits - num.size(), '0') + num;
}

void check_density(double density)
{
    if (!(density >= 0.0 && density <= 1.0)) throw InvalidInput("density must lie in [0,1]");
}

Instance random_instance(Kind kind, const std::vector<AgentDecl>& decls, double density, std::mt19937_64& rng)
{
    std::bernoulli_distribution coin(density);
    std::map<AgentId, std::vector<AgentId>> prefs;
    for (const auto& d : decls) prefs[d.id];
    for (std::size_t i = 0; i < decls.size(); ++i) {
        for (std::size_t j = i + 1; j < decls.size(); ++j) {
            if (kind == Kind::Marriage && decls[i].side == decls[j].side) continue;
            if (!coin(rng)) continue;
            prefs[decls[i].id].push_back(decls[j].id);
            prefs[decls[j].id].push_back(decls[i].id);
        }
    }
    for (auto& [id, list] : prefs) std::shuffle(list.begin(), list.end(), rng);
    return Instance::build(kind, decls, prefs);
}

template <typename T>
const T& choose(const std::vector<T>& items, std::mt19937_64& rng)
{
    if (items.empty()) throw InvalidInput("no legal target exists");
    return items[std::uniform_int_distribution<std::size_t>(0, items.size() - 1)(rng)];
}

}  // namespace

Instance random_sr(std::size_t n, double density, std::uint64_t seed)
{
    check_density(density);
    std::mt19937_64 rng(seed);
    std::vector<AgentDecl> decls;
    for (std::size_t i = 1; i <= n; ++i) decls.push_back({padded('u', i, n), std::nullopt, false});
    return random_instance(Kind::Roommates, decls, density, rng);
}

Instance random_sm(std::size_t na, std::size_t nb, double density, std::uint64_t seed)
{
    check_density(density);
    std::mt19937_64 rng(seed);
    std::vector<AgentDecl> decls;
    for (std::size_t i = 1; i <= na; ++i) decls.push_back({padded('a', i, na), Side::A, false});
    for (std::size_t i = 1; i <= nb; ++i) decls.push_back({padded('b', i, nb), Side::B, false});
    return random_instance(Kind::Marriage, decls, density, rng);
}

ControlQuery random_query(const Instance& base, Action action, GoalKind goal, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::bernoulli_distribution half(0.5);
    ControlQuery q;
    q.action = action;
    q.goal.kind = goal;
    Instance inst = with_addable(base, {});

    if (goal == GoalKind::MatchSet) {
        auto pairs = inst.acceptable_pairs();
        std::shuffle(pairs.begin(), pairs.end(), rng);
        std::set<AgentId> used;
        std::vector<Pair> chosen;
        for (const auto& p : pairs) {
            if (used.contains(p.first) || used.contains(p.second)) continue;
            used.insert(p.first);
            used.insert(p.second);
            chosen.push_back(p);
        }
        if (action != Action::DelAcc && used.size() < inst.size()) {
            auto decls = inst.declarations();
            std::map<AgentId, std::vector<AgentId>> prefs;
            for (const auto& id : inst.agents()) prefs[id] = inst.pref_ids(id);
            for (const auto& id : inst.agents()) {
                if (used.contains(id)) continue;
                AgentId filler = "f_" + id;
                while (prefs.contains(filler)) filler += "_";
                std::optional<Side> side;
                if (const auto s = inst.side(inst.index_of(id))) side = *s == Side::A ? Side::B : Side::A;
                decls.push_back({filler, side, false});
                prefs[id].push_back(filler);
                prefs[filler] = {id};
                chosen.emplace_back(id, filler);
            }
            inst = Instance::build(inst.kind(), decls, prefs);
        }
        q.goal.matching = Matching(std::move(chosen));
    }

    // Targets are sampled before the addable marks so they stay original.
    std::set<AgentId> reserved;
    if (goal == GoalKind::MatchAgent) {
        q.goal.agent = choose(inst.agents(), rng);
        reserved.insert(q.goal.agent);
    } else if (goal == GoalKind::MatchPair) {
        q.goal.pair = choose(inst.acceptable_pairs(), rng);
        reserved.insert(q.goal.pair.first);
        reserved.insert(q.goal.pair.second);
    }

    if (action == Action::AddAg) {
        std::vector<AgentId> pool;
        for (const auto& id : inst.agents())
            if (!reserved.contains(id)) pool.push_back(id);
        if (pool.empty()) throw InvalidInput("no agent left to mark addable");
        std::set<AgentId> addable;
        for (const auto& id : pool)
            if (half(rng)) addable.insert(id);
        if (addable.empty()) addable.insert(choose(pool, rng));
        inst = with_addable(inst, addable);
    }

    q.instance = std::move(inst);
    q.budget = std::uniform_int_distribution<std::size_t>(0, 3)(rng);
    validate_query(q);
    return q;
}

}  // namespace stablectl
