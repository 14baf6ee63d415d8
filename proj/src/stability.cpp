#include "stablectl/stability.hpp"

#include <algorithm>

#include "stablectl/errors.hpp"

namespace stablectl {

void check_matching(const Instance& inst, const Matching& m)
{
    for (const auto& p : m.pairs()) {
        if (!inst.has_agent(p.first) || !inst.has_agent(p.second))
            throw InvalidInput("matching pair {" + to_string(p) + "} names an agent outside the instance");
        if (!inst.acceptable(p)) throw InvalidInput("matching pair {" + to_string(p) + "} is not acceptable");
    }
}

PartnerTable partner_table(const Instance& inst, const Matching& m)
{
    check_matching(inst, m);
    PartnerTable partner(inst.size(), kNoAgent);
    for (const auto& p : m.pairs()) {
        const auto u = inst.index_of(p.first);
        const auto v = inst.index_of(p.second);
        partner[u] = v;
        partner[v] = u;
    }
    return partner;
}

Matching to_matching(const Instance& inst, const PartnerTable& partner)
{
    std::vector<Pair> pairs;
    for (AgentIndex u = 0; u < partner.size(); ++u) {
        if (partner[u] != kNoAgent && u < partner[u]) pairs.emplace_back(inst.id(u), inst.id(partner[u]));
    }
    return Matching(std::move(pairs));
}

namespace {

template <typename F>
void visit_blocking(const Instance& inst, const PartnerTable& partner, F&& on_pair)
{
    for (AgentIndex u = 0; u < inst.size(); ++u) {
        for (AgentIndex v : inst.prefs(u)) {
            if (v <= u || !inst.lists(v, u)) continue;
            if (partner[u] == v) continue;
            if (inst.prefers(u, v, partner[u]) && inst.prefers(v, u, partner[v])) {
                if (!on_pair(u, v)) return;
            }
        }
    }
}

}  // namespace

std::vector<Pair> blocking_pairs(const Instance& inst, const Matching& m)
{
    const auto partner = partner_table(inst, m);
    std::vector<Pair> out;
    visit_blocking(inst, partner, [&](AgentIndex u, AgentIndex v) {
        out.emplace_back(inst.id(u), inst.id(v));
        return true;
    });
    std::sort(out.begin(), out.end());
    return out;
}

std::size_t count_blocking_pairs(const Instance& inst, const PartnerTable& partner)
{
    std::size_t count = 0;
    visit_blocking(inst, partner, [&](AgentIndex, AgentIndex) {
        ++count;
        return true;
    });
    return count;
}

bool is_stable(const Instance& inst, const PartnerTable& partner)
{
    bool stable = true;
    visit_blocking(inst, partner, [&](AgentIndex, AgentIndex) { return stable = false; });
    return stable;
}

bool is_stable(const Instance& inst, const Matching& m) { return is_stable(inst, partner_table(inst, m)); }

bool is_perfect(const Instance& inst, const Matching& m)
{
    check_matching(inst, m);
    return 2 * m.size() == inst.size();
}

std::vector<AgentId> covered_agents(const Matching& m)
{
    std::vector<AgentId> out;
    for (const auto& p : m.pairs()) {
        out.push_back(p.first);
        out.push_back(p.second);
    }
    std::sort(out.begin(), out.end());
    return out;
}

void for_each_matching(const Instance& inst, std::size_t cap,
                       const std::function<bool(const PartnerTable&)>& visit)
{
    std::vector<std::pair<AgentIndex, AgentIndex>> edges;
    for (const auto& p : inst.acceptable_pairs()) edges.emplace_back(inst.index_of(p.first), inst.index_of(p.second));
    if (edges.size() > cap) throw CapExceeded(edges.size(), cap);

    PartnerTable partner(inst.size(), kNoAgent);
    bool stop = false;
    auto recurse = [&](auto&& self, std::size_t i) -> void {
        if (stop) return;
        if (i == edges.size()) {
            if (!visit(partner)) stop = true;
            return;
        }
        self(self, i + 1);
        const auto [u, v] = edges[i];
        if (partner[u] == kNoAgent && partner[v] == kNoAgent) {
            partner[u] = v;
            partner[v] = u;
            self(self, i + 1);
            partner[u] = kNoAgent;
            partner[v] = kNoAgent;
        }
    };
    recurse(recurse, 0);
}

std::vector<Matching> enumerate_matchings(const Instance& inst, std::size_t cap)
{
    std::vector<Matching> out;
    for_each_matching(inst, cap, [&](const PartnerTable& partner) {
        out.push_back(to_matching(inst, partner));
        return true;
    });
    return out;
}

std::vector<Matching> enumerate_stable_matchings(const Instance& inst, std::size_t cap)
{
    std::vector<Matching> out;
    for_each_matching(inst, cap, [&](const PartnerTable& partner) {
        if (is_stable(inst, partner)) out.push_back(to_matching(inst, partner));
        return true;
    });
    return out;
}

}  // namespace stablectl
